//! Graph isomorphism by colour refinement followed by backtracking.

use std::collections::BTreeMap;

use super::{Graph, Vertex};

/// Dense view of a graph: adjacency lists over `0..n` plus loop flags.
struct Dense {
    adj: Vec<Vec<usize>>,
    looped: Vec<bool>,
}

impl Dense {
    fn new(g: &Graph) -> Dense {
        let index: BTreeMap<Vertex, usize> = g.vertices().enumerate().map(|(i, v)| (v, i)).collect();
        let adj = g
            .vertices()
            .map(|v| g.neighbors(v).iter().map(|u| index[u]).collect())
            .collect();
        let looped = g.vertices().map(|v| g.has_loop(v)).collect();
        Dense { adj, looped }
    }

    fn n(&self) -> usize {
        self.adj.len()
    }

    fn has(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }
}

/// Stable colour refinement. Colours are canonical: they depend only on
/// the isomorphism class, so two graphs can be refined independently and
/// compared.
fn refine(d: &Dense) -> Vec<u64> {
    let n = d.n();
    let mut color: Vec<u64> = (0..n).map(|i| ((d.adj[i].len() as u64) << 1) | d.looped[i] as u64).collect();
    let mut classes = count_classes(&color);
    loop {
        let sigs: Vec<(u64, Vec<u64>)> = (0..n)
            .map(|i| {
                let mut nb: Vec<u64> = d.adj[i].iter().map(|&j| color[j]).collect();
                nb.sort_unstable();
                (color[i], nb)
            })
            .collect();
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        let next: Vec<u64> = sigs
            .iter()
            .map(|s| sorted.binary_search(s).expect("present") as u64)
            .collect();
        let c = count_classes(&next);
        color = next;
        if c == classes {
            return color;
        }
        classes = c;
    }
}

fn count_classes(c: &[u64]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// True iff the graphs are isomorphic (loops respected, labels ignored).
pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() || g.loops.len() != h.loops.len() {
        return false;
    }
    let a = Dense::new(g);
    let b = Dense::new(h);
    let ca = refine(&a);
    let cb = refine(&b);
    let mut ha = ca.clone();
    let mut hb = cb.clone();
    ha.sort_unstable();
    hb.sort_unstable();
    if ha != hb {
        return false;
    }
    let mut class_size: BTreeMap<u64, usize> = BTreeMap::new();
    for &c in &ca {
        *class_size.entry(c).or_default() += 1;
    }
    // Greedy order: most already-placed neighbours first, then smallest
    // colour class, so adjacency constraints prune early.
    let n = a.n();
    let mut placed = vec![false; n];
    let mut hits = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let x = (0..n)
            .filter(|&i| !placed[i])
            .min_by_key(|&i| (std::cmp::Reverse(hits[i]), class_size[&ca[i]], i))
            .expect("unplaced vertex");
        placed[x] = true;
        order.push(x);
        for &y in &a.adj[x] {
            hits[y] += 1;
        }
    }
    let mut map = vec![usize::MAX; a.n()];
    let mut used = vec![false; b.n()];
    extend(&a, &b, &ca, &cb, &order, 0, &mut map, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &Dense,
    b: &Dense,
    ca: &[u64],
    cb: &[u64],
    order: &[usize],
    k: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if k == order.len() {
        return true;
    }
    let x = order[k];
    for y in 0..b.n() {
        if used[y] || cb[y] != ca[x] {
            continue;
        }
        let ok = order[..k].iter().all(|&p| a.has(x, p) == b.has(y, map[p]));
        if !ok {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if extend(a, b, ca, cb, order, k + 1, map, used) {
            return true;
        }
        used[y] = false;
        map[x] = usize::MAX;
    }
    false
}

/// An isomorphism invariant: sorted refined colours, then sorted degrees
/// and the loop count. Isomorphic graphs always agree.
pub fn invariant(g: &Graph) -> Vec<u64> {
    let d = Dense::new(g);
    let mut c = refine(&d);
    c.sort_unstable();
    let mut deg: Vec<u64> = d.adj.iter().map(|a| a.len() as u64).collect();
    deg.sort_unstable();
    c.push(u64::MAX);
    c.extend(deg);
    c.push(d.looped.iter().filter(|&&l| l).count() as u64);
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_and_paths() {
        assert!(is_isomorphic(&Graph::cycle(6), &Graph::cycle(6)));
        assert!(!is_isomorphic(&Graph::cycle(6), &Graph::path(5)));
        let (two_triangles, _) = Graph::cycle(3).disjoint_union(&Graph::cycle(3));
        assert!(!is_isomorphic(&Graph::cycle(6), &two_triangles));
    }

    #[test]
    fn relabelled_graph_is_isomorphic() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]).unwrap();
        let h = Graph::from_edges(5, &[(4, 3), (3, 2), (2, 1), (1, 4), (1, 0)]).unwrap();
        assert!(is_isomorphic(&g, &h));
        assert_eq!(invariant(&g), invariant(&h));
    }

    #[test]
    fn loops_matter() {
        let mut g = Graph::path(1);
        let h = g.clone();
        g.add_edge(Vertex(0), Vertex(0)).unwrap();
        assert!(!is_isomorphic(&g, &h));
    }

    #[test]
    fn regular_non_isomorphic_pair() {
        // Two 3-regular graphs on 6 vertices: the prism and K_{3,3}.
        let prism = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap();
        let k33 = Graph::from_edges(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap();
        assert!(!is_isomorphic(&prism, &k33));
    }
}
