use std::collections::{BTreeMap, BTreeSet};

use super::{Graph, GraphError, Vertex};
use crate::bits::bit;
use crate::complexes::{independence_complex_with_ids, SimplicialComplex};

impl Graph {
    /// Replaces the edge `u v` by a path of length four through three fresh
    /// vertices, returned in path order from `u`.
    pub fn subdivide_edge_x4(&self, u: Vertex, v: Vertex) -> Result<(Graph, [Vertex; 3]), GraphError> {
        if u == v {
            return Err(GraphError::LoopEdge(u));
        }
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u, v));
        }
        let mut g = self.clone();
        g.remove_edge(u, v)?;
        let a = g.fresh_vertex();
        let b = g.fresh_vertex();
        let c = g.fresh_vertex();
        for (x, y) in [(u, a), (a, b), (b, c), (c, v)] {
            g.add_edge(x, y)?;
        }
        Ok((g, [a, b, c]))
    }

    /// Neighbours of a degree-2 vertex, provided the degree-2 structure
    /// move applies at `v`.
    pub fn deg2_move_applies(&self, v: Vertex) -> Result<(Vertex, Vertex), GraphError> {
        let nb = self.link(v)?;
        if nb.len() != 2 {
            return Err(GraphError::NotApplicable(format!("vertex {v} has degree {}", nb.len())));
        }
        let mut it = nb.iter().copied();
        let (v1, v2) = (it.next().expect("two"), it.next().expect("two"));
        if self.has_edge(v1, v2) {
            return Err(GraphError::NotApplicable(format!("neighbours {v1} and {v2} are adjacent")));
        }
        if [v, v1, v2].iter().any(|&x| self.has_loop(x)) {
            return Err(GraphError::NotApplicable(format!("loop near vertex {v}")));
        }
        Ok((v1, v2))
    }

    /// The degree-2 structure move at `v`. With `v1, v2` the neighbours of
    /// `v`, returns `G - st(v)` with every vertex of `lk(v1) - v` joined to
    /// every vertex of `lk(v2) - v`; common vertices receive a loop.
    /// Then `I_G` is homotopy equivalent to the suspension of `I_H`.
    pub fn structure_move_deg2(&self, v: Vertex) -> Result<Graph, GraphError> {
        let (v1, v2) = self.deg2_move_applies(v)?;
        let w1: BTreeSet<Vertex> = self.adj[&v1].iter().copied().filter(|&x| x != v).collect();
        let w2: BTreeSet<Vertex> = self.adj[&v2].iter().copied().filter(|&x| x != v).collect();
        let mut h = self.delete_star(v)?;
        for &a in &w1 {
            for &b in &w2 {
                h.add_edge(a, b)?;
            }
        }
        Ok(h)
    }

    /// Sets `W_i = lk(v_i) - v` over the neighbours `v_i` of `v`, provided
    /// the general structure move applies.
    pub fn structure_sets(&self, v: Vertex) -> Result<Vec<BTreeSet<Vertex>>, GraphError> {
        let nb = self.link(v)?;
        if nb.is_empty() {
            return Err(GraphError::NotApplicable(format!("vertex {v} is isolated")));
        }
        if self.has_loop(v) || nb.iter().any(|&x| self.has_loop(x)) {
            return Err(GraphError::NotApplicable(format!("loop near vertex {v}")));
        }
        for &a in &nb {
            if self.adj[&a].iter().any(|b| nb.contains(b)) {
                return Err(GraphError::NotApplicable(format!("link of {v} is not independent")));
            }
        }
        Ok(nb.iter().map(|&x| self.adj[&x].iter().copied().filter(|&y| y != v).collect()).collect())
    }

    /// The complex `K(G, v)`: the independence complex of `G - st(v)` with
    /// every simplex that meets all sets `W_i` removed. `I_G` is homotopy
    /// equivalent to its suspension.
    pub fn structure_complex(&self, v: Vertex) -> Result<SimplicialComplex, GraphError> {
        self.structure_complex_with_ids(v).map(|(k, _)| k)
    }

    /// `K(G, v)` with the graph vertex behind each complex vertex index.
    pub fn structure_complex_with_ids(&self, v: Vertex) -> Result<(SimplicialComplex, Vec<Vertex>), GraphError> {
        let ws = self.structure_sets(v)?;
        let rest = self.delete_star(v)?;
        let (base, ids) = independence_complex_with_ids(&rest)?;
        let masks: Vec<u128> = ws
            .iter()
            .map(|w| {
                ids.iter()
                    .enumerate()
                    .filter(|(_, x)| w.contains(x))
                    .fold(0u128, |m, (i, _)| m | bit(i))
            })
            .collect();
        let k = base.filter_simplices(|s| !masks.iter().all(|&m| s & m != 0))?;
        let by_name: BTreeMap<&str, Vertex> =
            base.vertices().iter().map(String::as_str).zip(ids.iter().copied()).collect();
        let kept = k.vertices().iter().map(|n| by_name[n.as_str()]).collect();
        Ok((k, kept))
    }
}

#[cfg(test)]
mod tests {
    use super::super::is_isomorphic;
    use super::*;

    #[test]
    fn subdivide_single_edge_gives_l4() {
        let (g, mid) = Graph::path(1).subdivide_edge_x4(Vertex(0), Vertex(1)).unwrap();
        assert!(is_isomorphic(&g, &Graph::path(4)));
        assert_eq!(g.label(mid[0]), Some("~2"));
        assert!(matches!(
            Graph::path(1).subdivide_edge_x4(Vertex(0), Vertex(0)),
            Err(GraphError::LoopEdge(_))
        ));
        assert!(Graph::path(2).subdivide_edge_x4(Vertex(0), Vertex(2)).is_err());
    }

    #[test]
    fn subdivide_triangle_gives_hexagon() {
        let (g, _) = Graph::cycle(3).subdivide_edge_x4(Vertex(0), Vertex(1)).unwrap();
        assert!(is_isomorphic(&g, &Graph::cycle(6)));
    }

    #[test]
    fn deg2_move_examples() {
        let h = Graph::path(3).structure_move_deg2(Vertex(1)).unwrap();
        assert_eq!(h.vertex_count(), 1);
        assert_eq!(h.edge_count(), 0);

        let h = Graph::cycle(6).structure_move_deg2(Vertex(0)).unwrap();
        assert!(is_isomorphic(&h, &Graph::cycle(3)));

        let h = Graph::path(4).structure_move_deg2(Vertex(2)).unwrap();
        assert!(is_isomorphic(&h, &Graph::path(1)));
    }

    #[test]
    fn deg2_move_creates_loop_on_common_neighbour() {
        // v = 0 with neighbours 1, 2 which share the neighbour 3.
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let h = g.structure_move_deg2(Vertex(0)).unwrap();
        assert!(h.has_loop(Vertex(3)));
    }

    #[test]
    fn deg2_move_rejects_adjacent_neighbours() {
        assert!(matches!(
            Graph::cycle(3).structure_move_deg2(Vertex(0)),
            Err(GraphError::NotApplicable(_))
        ));
        assert!(Graph::star(3).structure_move_deg2(Vertex(0)).is_err());
    }

    #[test]
    fn structure_complex_of_spider_is_simplex_boundary() {
        for n in 2..=5 {
            let k = Graph::spider(n, 2).structure_complex(Vertex(0)).unwrap();
            assert_eq!(k.vertex_count(), n as usize);
            assert_eq!(k.facets().len(), n as usize);
            assert!(k.facets().iter().all(|f| f.count_ones() == n - 1));
        }
    }

    #[test]
    fn structure_complex_rejects_dependent_link() {
        assert!(Graph::cycle(3).structure_complex(Vertex(0)).is_err());
        let mut g = Graph::new();
        g.add_vertex();
        assert!(g.structure_complex(Vertex(0)).is_err());
    }
}
