//! A permutation chord diagram whose independence complex is a given wedge
//! of spheres.
//!
//! Run with `cargo run --example realize_wedge -- 3 2 1`.

use spherand::chords::realize_wedge;
use spherand::complexes::independence_complex;
use spherand::homology::reduced_homology;
use spherand::homotopy::classify_permutation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut dims: Vec<i64> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    if dims.is_empty() {
        dims = vec![3, 2, 1];
    }
    let d = realize_wedge(&dims)?;
    println!("{} chords: {d}", d.chord_count());
    println!("permutation layout: {:?}", d.is_permutation());
    let (e, _) = classify_permutation(&d)?;
    println!("I ~ {e}");
    let g = d.intersection_graph();
    if g.vertex_count() <= 18 {
        println!("direct homology: {}", reduced_homology(&independence_complex(&g)?));
    }
    Ok(())
}
