//! Structure moves: each one suspends the independence complex.
//!
//! Run with `cargo run --example structure_theorem`.

use spherand::complexes::independence_complex;
use spherand::homology::reduced_homology;
use spherand::homotopy::classify;
use spherand::{Graph, Vertex};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = Graph::cycle(7);
    let v = Vertex(0);
    let h = g.structure_move_deg2(v)?;
    println!("C_7: I ~ {}", classify(&g).0);
    println!("after the degree-2 move at {v}: {} vertices, I ~ {}", h.vertex_count(), classify(&h).0);

    // The cube: every link is independent, so the general move applies.
    let cube = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4), (1, 5), (2, 6), (3, 7)];
    let g = Graph::from_edges(8, &cube)?;
    for v in g.vertices().take(2) {
        let Ok(k) = g.structure_complex(v) else { continue };
        println!(
            "cube at {v}: H(I_G) = {}, H(K(G, v)) = {}",
            reduced_homology(&independence_complex(&g)?),
            reduced_homology(&k)
        );
    }

    // Subdividing an edge three times is another suspension.
    let b = Graph::triangle_bouquet(2);
    let (s, _) = b.subdivide_edge_x4(Vertex(0), Vertex(1))?;
    println!("bouquet: I ~ {}, with an edge subdivided: I ~ {}", classify(&b).0, classify(&s).0);
    Ok(())
}
