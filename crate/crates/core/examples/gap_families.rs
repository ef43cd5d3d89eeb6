//! The two families of circle graphs whose homology has large gaps.
//!
//! Run with `cargo run --release --example gap_families`.

use spherand::chords::{build_gap1, build_gap2};
use spherand::homotopy::classify;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 1..=5 {
        let (d, g) = build_gap1(n, 0)?;
        println!("gap1({n}): {} chords, I ~ {}", d.chord_count(), classify(&g).0);
    }
    for (m, n) in [(1, 1), (2, 1), (1, 2), (3, 2), (2, 3)] {
        for k in 0..=1 {
            let (d, g) = build_gap2(m, n, k)?;
            println!("gap2({m},{n},{k}): {} chords, I ~ {}", d.chord_count(), classify(&g).0);
        }
    }
    Ok(())
}
