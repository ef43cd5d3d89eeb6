//! Chord words, their circle graphs and the chord-level operations.
//!
//! Run with `cargo run --example chord_diagrams`.

use spherand::homotopy::{classify, classify_permutation};
use spherand::ChordDiagram;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = ChordDiagram::parse("a b c a b c")?;
    let g = d.intersection_graph();
    println!("{d}: {} vertices, {} edges, canonical {}", g.vertex_count(), g.edge_count(), d.canonical());
    println!("  rotated by 2: {}", d.rotated(2));
    println!("  permutation layout: {:?}", d.is_permutation());
    let (e, trace) = classify_permutation(&d)?;
    println!("  I ~ {e} in {} steps", trace.len());

    // Gluing two diagrams along a chord wedges their circle graphs.
    let other = ChordDiagram::parse("x y x y")?;
    let w = d.wedge("a", &other, "x")?;
    println!("wedge: {w}, I ~ {}", classify(&w.intersection_graph()).0);

    // Replacing a chord by three parallel ones suspends the complex.
    let (big, names) = d.csorba_expand("a", "b")?;
    println!("csorba on a-b: {big} (new chords {names:?}), I ~ {}", classify(&big.intersection_graph()).0);

    let free = d.with_free_pairs(2, "f");
    println!("two free crossing pairs: {free}, I ~ {}", classify(&free.intersection_graph()).0);
    Ok(())
}
