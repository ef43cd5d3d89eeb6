//! The `spherand` command line: argument parsing, input loading, reports
//! and exit codes.
//!
//! Exit codes: 0 success, 1 input or configuration error, 2 internal
//! invariant violation, 3 the fuzzer found torsion.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use crate::chords::{realize_wedge, ChordDiagram, ChordError};
use crate::complexes::{independence_complex, SimplicialComplex};
use crate::graphs::Graph;
use crate::homology::{reduced_homology, HomologyTable};
use crate::homotopy::{classify, classify_with, homology_of_expr, EngineOptions, HomotopyExpr, ReductionTrace};
use crate::knots::{
    diagram_from_chords, extreme_khovanov, extreme_khovanov_oracle, parse_braid, torus_braid, KhovanovSummary,
    PlanarDiagram, ORACLE_LIMIT,
};

pub mod fuzz;

pub use fuzz::{run_fuzz, FuzzConfig, FuzzMode, FuzzReport, TorsionFinding};

/// Environment variable overriding the fuzz seed.
pub const SEED_ENV: &str = "SPHERAND_SEED";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Config(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "spherand", version, about = "Independence complexes of circle graphs and extreme Khovanov homology")]
pub struct Cli {
    /// JSON output (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    /// Plain text output.
    #[arg(long, global = true)]
    pub text: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The graph of an input, with basic structure.
    Graph(Source),
    /// The independence complex.
    Complex(ComplexSource),
    /// Reduced integral homology of the independence complex.
    Homology(ComplexSource),
    /// Homotopy type from the reduction engine, with its trace.
    Homotopy {
        #[command(flatten)]
        source: Source,
        /// Disable the path and cycle closed forms.
        #[arg(long)]
        no_closed_forms: bool,
        /// Disable the general structure move.
        #[arg(long)]
        no_structure: bool,
    },
    /// Extreme Khovanov homology through the Lando graph.
    Khovanov {
        #[command(flatten)]
        source: KnotSource,
        /// Strand count for `--braid`.
        #[arg(long)]
        strands: Option<usize>,
    },
    /// A permutation diagram realising a wedge of spheres.
    Realize {
        /// Sphere dimensions.
        #[arg(required = true, allow_negative_numbers = true)]
        dims: Vec<i64>,
    },
    /// Seeded random search for torsion.
    Fuzz {
        #[arg(long, env = SEED_ENV, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 14)]
        max_chords: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value = "random-matching")]
        mode: String,
        /// Also write the JSON report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Inline chord word, e.g. "a b a b".
    #[arg(long)]
    pub chord: Option<String>,
    /// File holding a chord word.
    #[arg(long)]
    pub chord_file: Option<PathBuf>,
    /// Graph file, text or JSON.
    #[arg(long)]
    pub graph: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct ComplexSource {
    #[arg(long)]
    pub chord: Option<String>,
    #[arg(long)]
    pub chord_file: Option<PathBuf>,
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Complex file in JSON.
    #[arg(long)]
    pub complex: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct KnotSource {
    /// The torus link `T(p, q)` as the closure of `(σ_{p-1}...σ_1)^q`.
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    pub torus: Option<Vec<usize>>,
    /// Braid word such as "1 -2 1"; needs `--strands`.
    #[arg(long, requires = "strands", allow_hyphen_values = true)]
    pub braid: Option<String>,
    /// PD code file, text or JSON.
    #[arg(long)]
    pub pd: Option<PathBuf>,
    /// Chord word with bipartite circle graph; the diagram whose all-B
    /// state is that chord diagram.
    #[arg(long)]
    pub chord: Option<String>,
}

/// A loaded input.
#[derive(Clone, Debug)]
pub enum Input {
    Chord(ChordDiagram),
    Graph(Graph),
    Complex(SimplicialComplex),
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Parses a chord word, locating a malformed token in the text.
pub fn parse_chord(text: &str) -> Result<ChordDiagram, CliError> {
    ChordDiagram::parse(text).map_err(|e| match &e {
        ChordError::Malformed { token, .. } => {
            let at = text.lines().enumerate().find_map(|(ln, line)| {
                let body = line.split('#').next().unwrap_or("");
                locate(body, token).map(|c| (ln + 1, c))
            });
            match at {
                Some((line, column)) => CliError::Input(format!("line {line}, column {column}: {e}")),
                None => CliError::Input(e.to_string()),
            }
        }
        _ => CliError::Input(e.to_string()),
    })
}

fn locate(line: &str, token: &str) -> Option<usize> {
    let mut col = 0;
    for piece in line.split_inclusive(char::is_whitespace) {
        if piece.trim_end() == token {
            return Some(col + 1);
        }
        col += piece.chars().count();
    }
    None
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    Graph::parse_any(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

impl Source {
    pub fn load(&self) -> Result<Input, CliError> {
        if let Some(w) = &self.chord {
            return parse_chord(w).map(Input::Chord);
        }
        if let Some(p) = &self.chord_file {
            return parse_chord(&read(p)?).map(Input::Chord);
        }
        match &self.graph {
            Some(p) => load_graph(p).map(Input::Graph),
            None => Err(CliError::Input("no input given".into())),
        }
    }
}

impl ComplexSource {
    pub fn load(&self) -> Result<Input, CliError> {
        if let Some(p) = &self.complex {
            let text = read(p)?;
            return serde_json::from_str(&text)
                .map(Input::Complex)
                .map_err(|e| CliError::Input(format!("{}: line {}, column {}: {e}", p.display(), e.line(), e.column())));
        }
        Source { chord: self.chord.clone(), chord_file: self.chord_file.clone(), graph: self.graph.clone() }.load()
    }
}

impl Input {
    pub fn graph(&self) -> Option<Graph> {
        match self {
            Input::Chord(d) => Some(d.intersection_graph()),
            Input::Graph(g) => Some(g.clone()),
            Input::Complex(_) => None,
        }
    }

    pub fn complex(&self) -> Result<SimplicialComplex, CliError> {
        match self {
            Input::Complex(k) => Ok(k.clone()),
            other => {
                let g = other.graph().expect("graph input");
                independence_complex(&g).map_err(|e| CliError::Input(e.to_string()))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChordInfo {
    pub word: String,
    pub canonical: String,
    pub chords: usize,
    pub permutation: bool,
    pub non_nested: bool,
}

impl ChordInfo {
    fn of(d: &ChordDiagram) -> Self {
        ChordInfo {
            word: d.to_string(),
            canonical: d.canonical().to_string(),
            chords: d.chord_count(),
            permutation: d.is_permutation().is_some(),
            non_nested: d.is_non_nested(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chord: Option<ChordInfo>,
    pub graph: Graph,
    pub vertices: usize,
    pub edges: usize,
    pub loops: usize,
    pub components: usize,
    pub bipartite: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexReport {
    pub complex: SimplicialComplex,
    pub dim: i64,
    pub f_vector: Vec<u64>,
    pub reduced_euler_characteristic: i64,
    pub flag: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyReport {
    pub homology: HomologyTable,
    pub torsion_free: bool,
    pub sphere_dims: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomotopyReport {
    pub expression: HomotopyExpr,
    pub text: String,
    pub resolved: bool,
    pub sphere_dims: Option<Vec<i64>>,
    pub homology: HomologyTable,
    pub trace: ReductionTrace,
}

#[derive(Clone, Debug, Serialize)]
pub struct KhovanovReport {
    #[serde(flatten)]
    pub summary: KhovanovSummary,
    pub crossings: usize,
    /// Agreement with the enhanced-state computation, for small diagrams.
    pub oracle_agrees: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizeReport {
    pub dims: Vec<i64>,
    pub word: String,
    pub chords: usize,
    pub expression: HomotopyExpr,
    pub text: String,
    pub homology: HomologyTable,
    pub verified: bool,
}

/// Any command's result.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Report {
    Graph(GraphReport),
    Complex(ComplexReport),
    Homology(HomologyReport),
    Homotopy(HomotopyReport),
    Khovanov(KhovanovReport),
    Realize(RealizeReport),
    Fuzz(FuzzReport),
}

pub fn cmd_graph(input: &Input) -> Result<GraphReport, CliError> {
    let g = input.graph().ok_or_else(|| CliError::Input("graph needs a chord or graph input".into()))?;
    Ok(GraphReport {
        chord: match input {
            Input::Chord(d) => Some(ChordInfo::of(d)),
            _ => None,
        },
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        loops: g.loops().len(),
        components: g.components().len(),
        bipartite: g.is_bipartite(),
        graph: g,
    })
}

pub fn cmd_complex(input: &Input) -> Result<ComplexReport, CliError> {
    let k = input.complex()?;
    Ok(ComplexReport {
        dim: k.dim(),
        f_vector: k.f_vector(),
        reduced_euler_characteristic: k.reduced_euler_characteristic(),
        flag: k.is_flag(),
        complex: k,
    })
}

pub fn cmd_homology(input: &Input) -> Result<HomologyReport, CliError> {
    let t = reduced_homology(&input.complex()?);
    Ok(HomologyReport { torsion_free: t.is_torsion_free(), sphere_dims: t.sphere_dims(), homology: t })
}

pub fn cmd_homotopy(input: &Input, opts: EngineOptions) -> Result<HomotopyReport, CliError> {
    let g = input.graph().ok_or_else(|| CliError::Input("homotopy needs a chord or graph input".into()))?;
    let (expr, trace) = classify_with(&g, opts);
    Ok(HomotopyReport {
        text: expr.to_string(),
        resolved: !expr.has_unknown(),
        sphere_dims: expr.sphere_dims(),
        homology: homology_of_expr(&expr),
        expression: expr,
        trace,
    })
}

/// Loads a knot input as a planar diagram.
pub fn load_knot(src: &KnotSource, strands: Option<usize>) -> Result<PlanarDiagram, CliError> {
    let input = |e: crate::knots::KnotError| CliError::Input(e.to_string());
    if let Some(pq) = &src.torus {
        return Ok(torus_braid(pq[0], pq[1]).map_err(input)?.closure());
    }
    if let Some(w) = &src.braid {
        let s = strands.ok_or_else(|| CliError::Input("--braid needs --strands".into()))?;
        return Ok(parse_braid(w, s).map_err(input)?.closure());
    }
    if let Some(p) = &src.pd {
        return PlanarDiagram::parse(&read(p)?).map_err(|e| CliError::Input(format!("{}: {e}", p.display())));
    }
    match &src.chord {
        Some(w) => diagram_from_chords(&parse_chord(w)?).map_err(input),
        None => Err(CliError::Input("no knot input given".into())),
    }
}

pub fn cmd_khovanov(d: &PlanarDiagram) -> Result<KhovanovReport, CliError> {
    let summary = extreme_khovanov(d).map_err(|e| CliError::Internal(e.to_string()))?;
    let oracle_agrees = (d.crossing_count() <= ORACLE_LIMIT)
        .then(|| extreme_khovanov_oracle(d).map(|o| o == summary.groups))
        .transpose()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    if oracle_agrees == Some(false) {
        return Err(CliError::Internal("Lando graph disagrees with the enhanced-state computation".into()));
    }
    Ok(KhovanovReport { summary, crossings: d.crossing_count(), oracle_agrees })
}

pub fn cmd_realize(dims: &[i64]) -> Result<RealizeReport, CliError> {
    let d = realize_wedge(dims).map_err(|e| CliError::Input(e.to_string()))?;
    let g = d.intersection_graph();
    let (expr, _) = classify(&g);
    let mut want = dims.to_vec();
    want.sort_unstable();
    let homology = reduced_homology(&independence_complex(&g).map_err(|e| CliError::Input(e.to_string()))?);
    let verified = d.is_permutation().is_some()
        && expr.sphere_dims().map(|mut v| {
            v.sort_unstable();
            v
        }) == Some(want.clone())
        && homology == HomologyTable::of_spheres(&want);
    if !verified {
        return Err(CliError::Internal(format!("realisation of {dims:?} failed verification: {expr}")));
    }
    Ok(RealizeReport {
        dims: want,
        word: d.to_string(),
        chords: d.chord_count(),
        text: expr.to_string(),
        expression: expr,
        homology,
        verified,
    })
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        match self {
            Report::Graph(r) => {
                if let Some(c) = &r.chord {
                    let _ = writeln!(s, "word: {}\ncanonical: {}", c.word, c.canonical);
                    let _ = writeln!(s, "permutation: {}  non-nested: {}", c.permutation, c.non_nested);
                }
                let _ = writeln!(
                    s,
                    "vertices: {}  edges: {}  loops: {}  components: {}  bipartite: {}",
                    r.vertices, r.edges, r.loops, r.components, r.bipartite
                );
                s.push_str(&r.graph.to_text());
            }
            Report::Complex(r) => {
                let _ = writeln!(s, "facets: {}", r.complex);
                let _ = writeln!(s, "dim: {}  f-vector: {:?}  flag: {}", r.dim, r.f_vector, r.flag);
                let _ = writeln!(s, "reduced Euler characteristic: {}", r.reduced_euler_characteristic);
            }
            Report::Homology(r) => {
                let _ = writeln!(s, "{}", r.homology);
            }
            Report::Homotopy(r) => {
                let _ = writeln!(s, "{}", r.text);
                let _ = writeln!(s, "homology: {}", r.homology);
                for st in &r.trace.steps {
                    let _ = writeln!(s, "  #{} {} {:?} -> {:?}", st.problem, st.rule, st.vertices, st.children);
                }
            }
            Report::Khovanov(r) => {
                let k = &r.summary.indices;
                let _ = writeln!(
                    s,
                    "crossings: {}  p: {}  n: {}  w: {}  circles: {}  j_max: {}",
                    r.crossings, k.p, k.n, k.w, k.circles, k.j_max
                );
                let _ = writeln!(
                    s,
                    "Lando graph: {} vertices, {} edges; I ~ {}",
                    r.summary.lando_vertices, r.summary.lando_edges, r.summary.expression
                );
                if r.summary.groups.is_empty() {
                    let _ = writeln!(s, "H^(i, j_max) = 0 for all i");
                }
                for (i, g) in &r.summary.groups {
                    let _ = writeln!(s, "H^({i}, {}) = {g}", k.j_max);
                }
            }
            Report::Realize(r) => {
                let _ = writeln!(s, "{}", r.word);
                let _ = writeln!(s, "{}", r.text);
            }
            Report::Fuzz(r) => {
                let _ = writeln!(s, "mode {}  seed {}  samples {}  max chords {}", r.mode, r.seed, r.samples, r.max_chords);
                let _ = writeln!(s, "resolved by the engine: {}/{}", r.resolved, r.samples);
                let _ = writeln!(s, "torsion findings: {}", r.torsion_findings.len());
                for f in &r.torsion_findings {
                    let _ = writeln!(s, "  #{} {}: {}", f.index, f.word, f.homology);
                }
                for m in &r.engine_mismatches {
                    let _ = writeln!(s, "  mismatch {m}");
                }
                let hist: Vec<String> = r.degree_histogram.iter().map(|(d, c)| format!("{d}:{c}")).collect();
                let _ = writeln!(s, "degrees: {}", hist.join(" "));
            }
        }
        s
    }
}

/// Executes a parsed command line.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Graph(src) => cmd_graph(&src.load()?).map(Report::Graph),
        Command::Complex(src) => cmd_complex(&src.load()?).map(Report::Complex),
        Command::Homology(src) => cmd_homology(&src.load()?).map(Report::Homology),
        Command::Homotopy { source, no_closed_forms, no_structure } => {
            let opts = EngineOptions { closed_forms: !no_closed_forms, structure_complex: !no_structure };
            cmd_homotopy(&source.load()?, opts).map(Report::Homotopy)
        }
        Command::Khovanov { source, strands } => cmd_khovanov(&load_knot(source, *strands)?).map(Report::Khovanov),
        Command::Realize { dims } => cmd_realize(dims).map(Report::Realize),
        Command::Fuzz { seed, max_chords, samples, mode, report } => {
            let cfg = FuzzConfig { seed: *seed, max_chords: *max_chords, samples: *samples, mode: mode.parse()? };
            let r = run_fuzz(&cfg)?;
            if !r.engine_mismatches.is_empty() {
                return Err(CliError::Internal(r.engine_mismatches.join("; ")));
            }
            let out = Report::Fuzz(r);
            if let Some(p) = report {
                std::fs::write(p, out.to_json() + "\n")
                    .map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
            }
            Ok(out)
        }
    }
}

/// Result of a full run: what to print and the exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (program name first), runs the command and renders the
/// output.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let code = match &report {
                Report::Fuzz(r) if r.found_torsion() => 3,
                _ => 0,
            };
            let stdout = if cli.text { report.to_text() } else { report.to_json() + "\n" };
            Outcome { stdout, stderr: String::new(), code }
        }
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.exit_code() },
    }
}
