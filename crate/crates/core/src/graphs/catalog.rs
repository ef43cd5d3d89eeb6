//! Exhaustive catalog of small connected graphs up to isomorphism.

use std::collections::HashMap;

use super::iso::{invariant, is_isomorphic};
use super::{Graph, Vertex};

/// Number of connected graphs on `n` vertices, `n = 1..=8`.
pub fn connected_graph_counts() -> [usize; 8] {
    [1, 1, 2, 6, 21, 112, 853, 11117]
}

/// All connected simple graphs on `1..=max_n` vertices, one per
/// isomorphism class, grouped by vertex count.
///
/// Every connected graph has a vertex whose removal keeps it connected,
/// so extending each class on `n - 1` vertices by a new vertex with every
/// non-empty neighbourhood reaches all classes on `n` vertices.
pub fn connected_graphs(max_n: u32) -> Vec<Vec<Graph>> {
    let mut levels: Vec<Vec<Graph>> = Vec::new();
    if max_n == 0 {
        return levels;
    }
    levels.push(vec![Graph::path(0)]);
    for n in 2..=max_n {
        let prev = levels.last().expect("level");
        let mut buckets: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
        let mut found: Vec<Graph> = Vec::new();
        for g in prev {
            for subset in 1u32..(1 << (n - 1)) {
                let mut h = g.clone();
                let v = Vertex(n - 1);
                h.insert_vertex(v);
                for i in 0..n - 1 {
                    if subset & (1 << i) != 0 {
                        h.add_edge(Vertex(i), v).expect("present");
                    }
                }
                let key = invariant(&h);
                let bucket = buckets.entry(key).or_default();
                if bucket.iter().any(|&i| is_isomorphic(&found[i], &h)) {
                    continue;
                }
                bucket.push(found.len());
                found.push(h);
            }
        }
        levels.push(found);
    }
    levels
}
