//! Random circle graphs: no torsion in their independence complexes.
//!
//! Run with `cargo run --release --example conjecture_fuzz -- 2000`.

use spherand::cli::{run_fuzz, FuzzConfig, FuzzMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let samples = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(500);
    for mode in [FuzzMode::RandomMatching, FuzzMode::RandomBipartite, FuzzMode::RandomPermutation] {
        let r = run_fuzz(&FuzzConfig { seed: 7, max_chords: 16, samples, mode })?;
        println!(
            "{mode}: {}/{} resolved by rules, {} with torsion, {} engine mismatches",
            r.resolved,
            r.samples,
            r.torsion_findings.len(),
            r.engine_mismatches.len()
        );
        println!("  homology degree histogram: {:?}", r.degree_histogram);
    }
    Ok(())
}
