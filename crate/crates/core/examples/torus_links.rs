//! Extreme Khovanov groups of torus links T(2, q) and T(3, q).
//!
//! Run with `cargo run --example torus_links`.

use spherand::knots::{extreme_khovanov, extreme_khovanov_oracle, torus_braid, ORACLE_LIMIT};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for p in [2, 3] {
        for q in 2..=7 {
            let d = torus_braid(p, q)?.closure();
            let s = extreme_khovanov(&d)?;
            let groups: Vec<String> = s.groups.iter().map(|(i, h)| format!("H^{i} = {h}")).collect();
            let check = if d.crossing_count() <= ORACLE_LIMIT {
                if extreme_khovanov_oracle(&d)? == s.groups { " (states agree)" } else { " (states DISAGREE)" }
            } else {
                ""
            };
            println!(
                "T({p},{q}): Lando graph {}v/{}e, j_max = {}, {}{check}",
                s.lando_vertices,
                s.lando_edges,
                s.indices.j_max,
                groups.join(", ")
            );
        }
    }
    Ok(())
}
