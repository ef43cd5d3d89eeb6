//! Links whose extreme Khovanov groups are separated by long gaps.
//!
//! The diagrams are drawn from the gap chord diagrams, so the all-B state
//! is one circle and the Lando graph is the circle graph. The braid words
//! describe other diagrams of these links; their closures have a different
//! `j_max` and trivial extreme groups, which is printed for comparison.
//!
//! Run with `cargo run --release --example gap_knots`.

use spherand::chords::{build_gap1, build_gap2};
use spherand::knots::{diagram_from_chords, extreme_khovanov, parse_braid, PlanarDiagram};

const D5: &str = "2 1 3 2 4 3 5 4 6 5 5 6 4 5 3 4 2 3 1 2 1 1 1 1 1 1";
const D32: &str = "-5 3 4 2 3 1 2 2 1 3 2 4 3 4 4 -5 4 4 4 4 6 5 4 7 6 5 5 6 -7 4 5 -6";

fn show(name: &str, d: &PlanarDiagram) -> Result<(), Box<dyn std::error::Error>> {
    let s = extreme_khovanov(d)?;
    println!(
        "{name}: p={}, n={}, {} B-circles, j_max={}, Lando graph {}v/{}e, I ~ {}",
        s.indices.p, s.indices.n, s.indices.circles, s.indices.j_max, s.lando_vertices, s.lando_edges, s.expression
    );
    for (i, h) in &s.groups {
        println!("  H^({i}, {}) = {h}", s.indices.j_max);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    show("D_5 from chords", &diagram_from_chords(&build_gap1(5, 0)?.0)?)?;
    show("D_3,2 from chords", &diagram_from_chords(&build_gap2(3, 2, 0)?.0)?)?;
    show("D_5 braid closure", &parse_braid(D5, 7)?.closure())?;
    show("D_3,2 braid closure", &parse_braid(D32, 8)?.closure())?;
    Ok(())
}
