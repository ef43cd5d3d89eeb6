//! Acceptance run: one PASS/FAIL line per criterion. Every comparison is
//! exact; the only numeric threshold is the engine resolution rate.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spherand::chords::{build_gap1, build_gap2, realize_wedge, ChordDiagram};
use spherand::cli::fuzz::random_matching;
use spherand::cli::{run_fuzz, FuzzConfig, FuzzMode};
use spherand::complexes::independence_complex;
use spherand::graphs::{connected_graphs, is_isomorphic, Graph, Vertex};
use spherand::homology::{reduced_homology, HomologyGroup, HomologyTable};
use spherand::homotopy::{classify, classify_permutation, homology_of_expr, HomotopyExpr};
use spherand::knots::{
    diagram_from_chords, extreme_khovanov, extreme_khovanov_oracle, lando_graph, parse_braid, torus_3q_expected,
    torus_braid, PlanarDiagram,
};

/// Required share of permutation samples resolved without a residual.
const PERMUTATION_RESOLUTION: f64 = 1.0;
const SEED: u64 = 2024;

/// Criteria that cannot hold as stated; they must still be reported, and
/// they must actually fail.
const KNOWN_FAILURES: &[&str] = &["9"];

struct Run {
    results: Vec<(String, bool)>,
}

impl Run {
    fn check(&mut self, id: &str, title: &str, f: impl FnOnce() -> Result<String, String>) {
        let t = Instant::now();
        let (ok, detail) = match f() {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("{verdict} {id:>3} {title}: {detail} [{:.1}s]", t.elapsed().as_secs_f64());
        self.results.push((id.to_string(), ok));
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn homology(g: &Graph) -> HomologyTable {
    reduced_homology(&independence_complex(g).expect("small graph"))
}

fn sorted(mut v: Vec<i64>) -> Vec<i64> {
    v.sort_unstable();
    v
}

/// Path with `n` edges: contractible when `3 | n`, else `S^{floor(n/3)}`.
fn path_expected(n: i64) -> Option<Vec<i64>> {
    (n % 3 != 0).then(|| vec![n / 3])
}

/// Cycle on `n` vertices: `S^{k-1} v S^{k-1}` for `n = 3k`, `S^{k-1}` for
/// `n = 3k + 1`, `S^k` for `n = 3k + 2`.
fn cycle_expected(n: i64) -> Vec<i64> {
    let k = n / 3;
    match n % 3 {
        0 => vec![k - 1, k - 1],
        1 => vec![k - 1],
        _ => vec![k],
    }
}

fn criterion_1() -> Result<String, String> {
    for n in 0..=30i64 {
        let g = Graph::path(n as u32);
        let (e, _) = classify(&g);
        match path_expected(n) {
            None => ensure(e == HomotopyExpr::Point, || format!("L_{n}: {e}"))?,
            Some(d) => ensure(e.sphere_dims() == Some(d.clone()), || format!("L_{n}: {e}, want {d:?}"))?,
        }
        if n <= 15 {
            let want = path_expected(n).map_or_else(HomologyTable::new, |d| HomologyTable::of_spheres(&d));
            ensure(homology(&g) == want, || format!("L_{n} homology"))?;
        }
    }
    for n in 3..=30i64 {
        let g = Graph::cycle(n as u32);
        let (e, _) = classify(&g);
        let want = cycle_expected(n);
        ensure(e.sphere_dims().map(sorted) == Some(want.clone()), || format!("C_{n}: {e}, want {want:?}"))?;
        if n <= 15 {
            ensure(homology(&g) == HomologyTable::of_spheres(&want), || format!("C_{n} homology"))?;
        }
    }
    Ok("L_0..L_30 and C_3..C_30 exact, homology agrees up to 15".into())
}

fn random_circle_graphs(count: usize, max_chords: usize) -> Vec<ChordDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_chords);
            random_matching(&mut rng, n)
        })
        .collect()
}

fn corpus() -> Vec<Graph> {
    let mut gs: Vec<Graph> = connected_graphs(8).into_iter().flatten().collect();
    gs.extend(random_circle_graphs(1000, 14).iter().map(ChordDiagram::intersection_graph));
    gs
}

fn criterion_2(corpus: &[Graph]) -> Result<String, String> {
    for g in corpus {
        let (e, _) = classify(g);
        let h = homology(g);
        ensure(homology_of_expr(&e) == h, || format!("{} gives {e}, homology {h}", g.to_text().replace('\n', "; ")))?;
    }
    Ok(format!("{} graphs agree degree by degree", corpus.len()))
}

fn criterion_3(corpus: &[Graph]) -> Result<String, String> {
    let (mut deg2, mut general) = (0, 0);
    for g in corpus {
        let h = homology(g);
        for v in g.vertices() {
            if let Ok(m) = g.structure_move_deg2(v) {
                deg2 += 1;
                ensure(homology(&m).shifted(1) == h, || format!("degree-2 move at {v}"))?;
            }
            if let Ok(k) = g.structure_complex(v) {
                general += 1;
                ensure(reduced_homology(&k).shifted(1) == h, || format!("structure complex at {v}"))?;
            }
        }
    }
    Ok(format!("{deg2} degree-2 moves and {general} structure complexes shift homology by one"))
}

fn criterion_4() -> Result<String, String> {
    let hex = Graph::cycle(6);
    let g = hex.wedge(Vertex(0), &hex, Vertex(0)).map_err(|e| e.to_string())?;
    let (e, _) = classify(&g);
    ensure(e.sphere_dims().map(sorted) == Some(vec![2, 3]), || format!("two hexagons: {e}"))?;
    let mut b = Graph::triangle_bouquet(2);
    for (u, v) in [(0, 1), (1, 2), (0, 3), (3, 4)] {
        b = b.subdivide_edge_x4(Vertex(u), Vertex(v)).map_err(|e| e.to_string())?.0;
    }
    let h = homology(&b);
    ensure(h == HomologyTable::of_spheres(&[4, 5]), || format!("subdivided bouquet: {h}"))?;
    Ok(format!("hexagons {e}; subdivided bouquet {h} on {} vertices", b.vertex_count()))
}

fn criterion_5() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let mut targets = vec![vec![3, 2, 1]];
    for _ in 0..50 {
        let k = rng.gen_range(1..=5);
        targets.push((0..k).map(|_| rng.gen_range(0..=6)).collect());
    }
    for dims in &targets {
        let d = realize_wedge(dims).map_err(|e| e.to_string())?;
        let want = sorted(dims.clone());
        let h = homology(&d.intersection_graph());
        ensure(h == HomologyTable::of_spheres(&want), || format!("{dims:?}: homology {h}"))?;
        let (e, _) = classify_permutation(&d).map_err(|e| e.to_string())?;
        ensure(e.sphere_dims().map(sorted) == Some(want.clone()), || format!("{dims:?}: {e}"))?;
    }
    Ok(format!("{} targets realised and verified", targets.len()))
}

/// Largest complex, in faces, whose homology is computed directly in criterion 6.
const DIRECT_FACES: u64 = 200_000;

/// Whether `g` has more than `limit` independent sets, stopping early.
fn independent_sets_exceed(g: &Graph, limit: u64) -> bool {
    let vs: Vec<Vertex> = g.vertices().collect();
    let conflicts: Vec<u128> = vs
        .iter()
        .map(|&v| g.neighbors(v).iter().map(|u| 1u128 << vs.iter().position(|w| w == u).unwrap()).fold(0, |a, b| a | b))
        .collect();
    fn go(i: usize, blocked: u128, conflicts: &[u128], count: &mut u64, limit: u64) -> bool {
        if i == conflicts.len() {
            *count += 1;
            return *count > limit;
        }
        go(i + 1, blocked, conflicts, count, limit)
            || (blocked >> i & 1 == 0 && go(i + 1, blocked | conflicts[i], conflicts, count, limit))
    }
    go(0, 0, &conflicts, &mut 0, limit)
}

/// Checks `g` against `want` through the engine, and directly when small enough.
fn gap_member(g: &Graph, want: &HomologyTable) -> Result<bool, String> {
    let (e, _) = classify(g);
    if homology_of_expr(&e) != *want {
        return Err(format!("engine gives {e}"));
    }
    if independent_sets_exceed(g, DIRECT_FACES) {
        return Ok(false);
    }
    let k = independence_complex(g).map_err(|e| e.to_string())?;
    if reduced_homology(&k) != *want {
        return Err("direct homology differs".into());
    }
    Ok(true)
}

fn criterion_6() -> Result<String, String> {
    let (mut count, mut direct) = (0, 0);
    for n in 1..=4i64 {
        for k in 0..=2i64 {
            let (d, g) = build_gap1(n as usize, k as usize).map_err(|e| e.to_string())?;
            ensure(is_isomorphic(&d.intersection_graph(), &g), || format!("gap1({n},{k}) diagram"))?;
            let want = HomologyTable::of_spheres(&[n + k, 2 * n - 1 + k]);
            direct += gap_member(&g, &want).map_err(|e| format!("gap1({n},{k}): {e}"))? as usize;
            count += 1;
        }
    }
    for m in 1..=3i64 {
        for n in 1..=3i64 {
            for k in 0..=1i64 {
                let (d, g) = build_gap2(m as usize, n as usize, k as usize).map_err(|e| e.to_string())?;
                ensure(is_isomorphic(&d.intersection_graph(), &g), || format!("gap2({m},{n},{k}) diagram"))?;
                let want = HomologyTable::of_spheres(&[2 * m + 2 * n + k, m + 2 * n + 1 + k, m + n + 1 + k]);
                direct += gap_member(&g, &want).map_err(|e| format!("gap2({m},{n},{k}): {e}"))? as usize;
                count += 1;
            }
        }
    }
    Ok(format!("{count} family members match, {direct} of them also by direct homology"))
}

fn criterion_7() -> Result<String, String> {
    for q in 2..=7 {
        let d = torus_braid(3, q).map_err(|e| e.to_string())?.closure();
        let g = lando_graph(&d).map_err(|e| e.to_string())?;
        ensure(is_isomorphic(&g, &Graph::cycle(2 * q as u32)), || format!("T(3,{q}) Lando graph"))?;
        let s = extreme_khovanov(&d).map_err(|e| e.to_string())?;
        ensure(s.groups == torus_3q_expected(q).map_err(|e| e.to_string())?, || format!("T(3,{q}) groups"))?;
    }
    for q in 2..=7 {
        let d = torus_braid(2, q).map_err(|e| e.to_string())?.closure();
        ensure(lando_graph(&d).map_err(|e| e.to_string())?.is_empty(), || format!("T(2,{q}) Lando graph"))?;
        let s = extreme_khovanov(&d).map_err(|e| e.to_string())?;
        let want = BTreeMap::from([(q as i64, HomologyGroup::free(1))]);
        ensure(s.groups == want, || format!("T(2,{q}) groups {:?}", s.groups))?;
    }
    Ok("T(3,2..7) give C_2q and the closed form; T(2,2..7) give Z at i = q".into())
}

fn knot_corpus() -> Vec<PlanarDiagram> {
    let mut ds = Vec::new();
    for p in 2..=4 {
        for q in 1..=8 {
            if (p - 1) * q <= 8 {
                ds.push(torus_braid(p, q).unwrap().closure());
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    for _ in 0..60 {
        let strands = rng.gen_range(2..=5usize);
        let len = rng.gen_range(1..=8);
        let letters: Vec<String> = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..strands as i32);
                (if rng.gen_bool(0.5) { i } else { -i }).to_string()
            })
            .collect();
        ds.push(parse_braid(&letters.join(" "), strands).unwrap().closure());
    }
    for w in ["a a", "a b a b", "a b a c b c", "a b b a c c", "a b a c b d c d", "a b c b c a d d"] {
        ds.push(diagram_from_chords(&ChordDiagram::parse(w).unwrap()).unwrap());
    }
    let mirrors: Vec<PlanarDiagram> = ds.iter().map(PlanarDiagram::mirror).collect();
    ds.extend(mirrors);
    ds
}

fn criterion_8() -> Result<String, String> {
    let ds = knot_corpus();
    for d in &ds {
        let s = extreme_khovanov(d).map_err(|e| e.to_string())?;
        let o = extreme_khovanov_oracle(d).map_err(|e| e.to_string())?;
        ensure(s.groups == o, || format!("{}: Lando {:?}, oracle {o:?}", d.to_text().replace('\n', " "), s.groups))?;
    }
    Ok(format!("{} diagrams with at most 8 crossings agree", ds.len()))
}

const D5: &str = "2 1 3 2 4 3 5 4 6 5 5 6 4 5 3 4 2 3 1 2 1 1 1 1 1 1";
const D32: &str = "-5 3 4 2 3 1 2 2 1 3 2 4 3 4 4 -5 4 4 4 4 6 5 4 7 6 5 5 6 -7 4 5 -6";

fn describe(s: &spherand::knots::KhovanovSummary) -> String {
    format!("j_max {} with groups at {:?}", s.indices.j_max, s.groups.keys().collect::<Vec<_>>())
}

/// The braid closures are other diagrams of the same links, so their own
/// extreme gradings lie above the one the gap groups live in.
fn criterion_9() -> Result<String, String> {
    let d5 = extreme_khovanov(&parse_braid(D5, 7).map_err(|e| e.to_string())?.closure()).map_err(|e| e.to_string())?;
    let d32 = extreme_khovanov(&parse_braid(D32, 8).map_err(|e| e.to_string())?.closure()).map_err(|e| e.to_string())?;
    let want5 = BTreeMap::from([(16, HomologyGroup::free(1)), (20, HomologyGroup::free(1))]);
    let keys: Vec<i64> = d32.groups.keys().copied().collect();
    let pattern = keys.len() == 3 && keys[1] - keys[0] == 2 && keys[2] - keys[1] == 2;
    let detail = format!("7-strand braid: {}; 8-strand braid: {}", describe(&d5), describe(&d32));
    ensure(d5.groups == want5 && pattern && d32.groups.values().all(|g| g.torsion.is_empty()), || detail.clone())?;
    Ok(detail)
}

/// The gap diagrams themselves, built from their all-B chord diagrams.
fn criterion_9b() -> Result<String, String> {
    let (c5, _) = build_gap1(5, 0).map_err(|e| e.to_string())?;
    let d5 = diagram_from_chords(&c5).map_err(|e| e.to_string())?;
    let s5 = extreme_khovanov(&d5).map_err(|e| e.to_string())?;
    let want5 = BTreeMap::from([(16, HomologyGroup::free(1)), (20, HomologyGroup::free(1))]);
    ensure(d5.positive() == 26 && s5.groups == want5, || format!("D_5: {}", describe(&s5)))?;
    let (c32, _) = build_gap2(3, 2, 0).map_err(|e| e.to_string())?;
    let d32 = diagram_from_chords(&c32).map_err(|e| e.to_string())?;
    let s32 = extreme_khovanov(&d32).map_err(|e| e.to_string())?;
    let want32: BTreeMap<i64, HomologyGroup> = [16, 18, 20].map(|i| (i, HomologyGroup::free(1))).into();
    ensure((d32.positive(), d32.negative()) == (27, 3) && s32.groups == want32, || format!("D_3,2: {}", describe(&s32)))?;
    Ok(format!("D_5 (26 positive crossings): {}; D_3,2 (27+, 3-): {}", describe(&s5), describe(&s32)))
}

fn criterion_10() -> Result<String, String> {
    let cfg = FuzzConfig { seed: SEED, max_chords: 14, samples: 10_000, mode: FuzzMode::RandomMatching };
    let r = run_fuzz(&cfg).map_err(|e| e.to_string())?;
    ensure(r.torsion_findings.is_empty(), || {
        let words: Vec<&str> = r.torsion_findings.iter().map(|f| f.word.as_str()).collect();
        format!("torsion found: {words:?}")
    })?;
    ensure(r.engine_mismatches.is_empty(), || r.engine_mismatches.join("; "))?;
    let cfg = FuzzConfig { mode: FuzzMode::RandomPermutation, samples: 2000, ..cfg };
    let p = run_fuzz(&cfg).map_err(|e| e.to_string())?;
    ensure(p.resolution_rate >= PERMUTATION_RESOLUTION, || format!("permutation resolution {}", p.resolution_rate))?;
    Ok(format!(
        "10000 matchings torsion-free ({:.1}% resolved by rules); permutation mode {}/{} resolved",
        100.0 * r.resolution_rate,
        p.resolved,
        p.samples
    ))
}

fn main() {
    let mut run = Run { results: Vec::new() };
    run.check("1", "path and cycle closed forms", criterion_1);
    let corpus = corpus();
    run.check("2", "engine against direct homology", || criterion_2(&corpus));
    run.check("3", "structure moves shift homology", || criterion_3(&corpus));
    run.check("4", "two hexagons and the subdivided bouquet", criterion_4);
    run.check("5", "wedge realisation round trip", criterion_5);
    run.check("6", "gap families", criterion_6);
    run.check("7", "torus links", criterion_7);
    run.check("8", "Lando graph against enhanced states", criterion_8);
    run.check("9", "gap knots from the braid words", criterion_9);
    run.check("9b", "gap knots from their chord diagrams", criterion_9b);
    run.check("10", "conjecture fuzz", criterion_10);
    println!("NOTE  11 full Khovanov tables and torus-link torsion are out of scope; nothing to check");

    let unexpected: Vec<&str> = run
        .results
        .iter()
        .filter(|(id, ok)| *ok == KNOWN_FAILURES.contains(&id.as_str()))
        .map(|(id, _)| id.as_str())
        .collect();
    let failed = run.results.iter().filter(|(_, ok)| !ok).count();
    println!("{} passed, {failed} failed ({} known)", run.results.len() - failed, KNOWN_FAILURES.len());
    if !unexpected.is_empty() {
        println!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
