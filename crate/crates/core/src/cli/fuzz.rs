//! The seeded conjecture fuzzer: random chord diagrams, exact homology of
//! the independence complex of their circle graphs, and engine coverage.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::CliError;
use crate::chords::ChordDiagram;
use crate::complexes::independence_complex;
use crate::graphs::Graph;
use crate::homology::{predicted_betti_mod_p, reduced_betti_mod_p, reduced_homology, HomologyTable};
use crate::homotopy::{classify, homology_of_expr};

/// Attempts at rejection sampling a permutation diagram before drawing
/// one directly from a random permutation.
pub const PERMUTATION_RETRIES: usize = 1000;
/// Largest diagram the fuzzer accepts.
pub const MAX_CHORDS: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FuzzMode {
    RandomMatching,
    RandomBipartite,
    RandomPermutation,
}

impl FromStr for FuzzMode {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "random-matching" => Ok(FuzzMode::RandomMatching),
            "random-bipartite" => Ok(FuzzMode::RandomBipartite),
            "random-permutation" => Ok(FuzzMode::RandomPermutation),
            other => Err(CliError::Config(format!(
                "unknown mode `{other}`, expected random-matching, random-bipartite or random-permutation"
            ))),
        }
    }
}

impl fmt::Display for FuzzMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FuzzMode::RandomMatching => "random-matching",
            FuzzMode::RandomBipartite => "random-bipartite",
            FuzzMode::RandomPermutation => "random-permutation",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    pub seed: u64,
    pub max_chords: usize,
    pub samples: usize,
    pub mode: FuzzMode,
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.samples == 0 {
            return Err(CliError::Config("samples must be at least 1".into()));
        }
        if self.max_chords == 0 || self.max_chords > MAX_CHORDS {
            return Err(CliError::Config(format!("max_chords must lie in 1..={MAX_CHORDS}")));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionFinding {
    pub index: usize,
    /// Canonical word, replayable with `homology --chord`.
    pub word: String,
    pub homology: HomologyTable,
    /// Whether direct computations over `Z/2` and `Z/3` confirm the table.
    pub verified_mod_2: bool,
    pub verified_mod_3: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub mode: FuzzMode,
    pub max_chords: usize,
    pub samples: usize,
    /// Samples whose engine expression has no unresolved residual.
    pub resolved: usize,
    pub resolution_rate: f64,
    pub torsion_findings: Vec<TorsionFinding>,
    /// Samples where the engine disagreed with direct homology.
    pub engine_mismatches: Vec<String>,
    /// Number of samples by chord count.
    pub chord_histogram: BTreeMap<usize, u64>,
    /// Number of samples with non-zero reduced homology in each degree.
    pub degree_histogram: BTreeMap<i64, u64>,
}

impl FuzzReport {
    pub fn found_torsion(&self) -> bool {
        !self.torsion_findings.is_empty()
    }
}

/// A uniform perfect matching on `2n` circle points.
pub fn random_matching(rng: &mut impl Rng, n: usize) -> ChordDiagram {
    let mut points: Vec<usize> = (0..2 * n).collect();
    points.shuffle(rng);
    let mut word = vec![0; 2 * n];
    for (c, pair) in points.chunks(2).enumerate() {
        word[pair[0]] = c;
        word[pair[1]] = c;
    }
    ChordDiagram::from_indices(&word).expect("a matching is a chord diagram")
}

/// Keeps chords of a uniform matching in order while the circle graph
/// stays bipartite.
pub fn random_bipartite(rng: &mut impl Rng, n: usize) -> ChordDiagram {
    let d = random_matching(rng, n);
    let mut kept: Vec<usize> = Vec::new();
    for c in 0..d.chord_count() {
        kept.push(c);
        if !restrict(&d, &kept).intersection_graph().is_bipartite() {
            kept.pop();
        }
    }
    restrict(&d, &kept)
}

/// A uniform matching conditioned on being a permutation diagram, by
/// rejection; after [`PERMUTATION_RETRIES`] failures the diagram of a
/// uniform random permutation is returned.
pub fn random_permutation(rng: &mut impl Rng, n: usize) -> ChordDiagram {
    for _ in 0..PERMUTATION_RETRIES {
        let d = random_matching(rng, n);
        if d.is_permutation().is_some() {
            return d;
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let word: Vec<usize> = (0..n).chain(perm.into_iter().rev()).collect();
    ChordDiagram::from_indices(&word).expect("each index twice")
}

fn restrict(d: &ChordDiagram, keep: &[usize]) -> ChordDiagram {
    let tokens: Vec<&str> = d.word().iter().filter(|c| keep.contains(c)).map(|&c| d.labels()[c].as_str()).collect();
    ChordDiagram::from_tokens(&tokens).expect("subset of chords")
}

/// The diagram for sample `index`; independent of every other sample.
pub fn sample(cfg: &FuzzConfig, index: usize) -> ChordDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let n = rng.gen_range(1..=cfg.max_chords);
    match cfg.mode {
        FuzzMode::RandomMatching => random_matching(&mut rng, n),
        FuzzMode::RandomBipartite => random_bipartite(&mut rng, n),
        FuzzMode::RandomPermutation => random_permutation(&mut rng, n),
    }
}

struct Outcome {
    chords: usize,
    resolved: bool,
    homology: HomologyTable,
    torsion: Option<TorsionFinding>,
    mismatch: Option<String>,
}

fn evaluate(cfg: &FuzzConfig, index: usize) -> Outcome {
    let d = sample(cfg, index);
    let g: Graph = d.intersection_graph();
    let k = independence_complex(&g).expect("at most 128 chords");
    let homology = reduced_homology(&k);
    let (expr, _) = classify(&g);
    let canonical = d.canonical().to_string();
    let mismatch = (homology_of_expr(&expr) != homology)
        .then(|| format!("sample {index}: `{canonical}` engine gives {expr}, homology is {homology}"));
    let torsion = (!homology.is_torsion_free()).then(|| {
        let check = |p| reduced_betti_mod_p(&k, p) == predicted_betti_mod_p(&homology, k.dim(), p);
        TorsionFinding {
            index,
            word: canonical.clone(),
            homology: homology.clone(),
            verified_mod_2: check(2),
            verified_mod_3: check(3),
        }
    });
    Outcome { chords: d.chord_count(), resolved: !expr.has_unknown(), homology, torsion, mismatch }
}

/// Runs the fuzzer. Samples are evaluated in parallel and assembled in
/// index order, so the report depends only on the configuration.
pub fn run_fuzz(cfg: &FuzzConfig) -> Result<FuzzReport, CliError> {
    cfg.validate()?;
    let outcomes: Vec<Outcome> = (0..cfg.samples).into_par_iter().map(|i| evaluate(cfg, i)).collect();
    let mut report = FuzzReport {
        seed: cfg.seed,
        mode: cfg.mode,
        max_chords: cfg.max_chords,
        samples: cfg.samples,
        resolved: 0,
        resolution_rate: 0.0,
        torsion_findings: Vec::new(),
        engine_mismatches: Vec::new(),
        chord_histogram: BTreeMap::new(),
        degree_histogram: BTreeMap::new(),
    };
    for o in outcomes {
        report.resolved += o.resolved as usize;
        *report.chord_histogram.entry(o.chords).or_insert(0) += 1;
        for (&d, g) in o.homology.degrees() {
            if !g.is_zero() {
                *report.degree_histogram.entry(d).or_insert(0) += 1;
            }
        }
        report.torsion_findings.extend(o.torsion);
        report.engine_mismatches.extend(o.mismatch);
    }
    report.resolution_rate = report.resolved as f64 / cfg.samples as f64;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(mode: FuzzMode, samples: usize) -> FuzzConfig {
        FuzzConfig { seed: 1, max_chords: 8, samples, mode }
    }

    #[test]
    fn samples_are_reproducible_and_well_formed() {
        for mode in [FuzzMode::RandomMatching, FuzzMode::RandomBipartite, FuzzMode::RandomPermutation] {
            let c = cfg(mode, 1);
            for i in 0..30 {
                let d = sample(&c, i);
                assert_eq!(d, sample(&c, i));
                assert!(d.chord_count() <= 8);
                match mode {
                    FuzzMode::RandomBipartite => assert!(d.intersection_graph().is_bipartite()),
                    FuzzMode::RandomPermutation => assert!(d.is_permutation().is_some()),
                    FuzzMode::RandomMatching => assert!(d.chord_count() >= 1),
                }
            }
        }
    }

    #[test]
    fn small_run() {
        let r = run_fuzz(&cfg(FuzzMode::RandomMatching, 100)).unwrap();
        assert!(r.torsion_findings.is_empty());
        assert!(r.engine_mismatches.is_empty());
        assert_eq!(r.chord_histogram.values().sum::<u64>(), 100);
        let r = run_fuzz(&cfg(FuzzMode::RandomPermutation, 100)).unwrap();
        assert_eq!(r.resolved, 100);
    }

    #[test]
    fn config_errors() {
        assert!(run_fuzz(&cfg(FuzzMode::RandomMatching, 0)).is_err());
        let mut c = cfg(FuzzMode::RandomMatching, 1);
        c.max_chords = 0;
        assert!(run_fuzz(&c).is_err());
        assert!("sideways".parse::<FuzzMode>().is_err());
    }
}
