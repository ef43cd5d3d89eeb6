//! Independence complexes of paths and cycles, from the closed forms and
//! from a direct homology computation.
//!
//! Run with `cargo run --example cycles_and_paths`.

use spherand::complexes::independence_complex;
use spherand::homology::reduced_homology;
use spherand::homotopy::{cycle_closed_form, path_closed_form};
use spherand::Graph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 1..=10 {
        let e = path_closed_form(n);
        let h = reduced_homology(&independence_complex(&Graph::path(n))?);
        println!("L_{n:<2} I ~ {e:<12} H = {h}");
    }
    for n in 3..=12 {
        let e = cycle_closed_form(n);
        let h = reduced_homology(&independence_complex(&Graph::cycle(n))?);
        println!("C_{n:<2} I ~ {e:<12} H = {h}");
    }
    Ok(())
}
