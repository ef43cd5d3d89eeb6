//! Finite undirected graphs with optional loops, and the graph moves
//! used by the reduction rules.
//!
//! Vertex ids are never reused: deleting a vertex and adding a new one
//! produces a fresh id. Vertices created by moves carry labels of the form
//! `~<id>`, a namespace the text parser refuses, so reduction traces stay
//! unambiguous.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

mod catalog;
mod format;
mod iso;
mod moves;
mod tree;

pub use catalog::{connected_graphs, connected_graph_counts};
pub use format::ParseError;
pub use iso::{invariant, is_isomorphic};
pub use tree::{classify_tree, contractible_criterion, sphere_criterion};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub u32);

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("no edge between {0} and {1}")]
    MissingEdge(Vertex, Vertex),
    #[error("edge {0}-{0} is a loop")]
    LoopEdge(Vertex),
    #[error("move not applicable: {0}")]
    NotApplicable(String),
    #[error("graph contains a cycle")]
    NotAForest,
    #[error(transparent)]
    Complex(#[from] crate::complexes::ComplexError),
}

/// A finite graph. Multi-edges collapse; loops are kept as a flag per
/// vertex. A looped vertex never belongs to an independent set.
#[derive(Clone, Default)]
pub struct Graph {
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
    loops: BTreeSet<Vertex>,
    labels: BTreeMap<Vertex, String>,
    next_id: u32,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj && self.loops == other.loops && self.labels == other.labels
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a vertex with a fresh id.
    pub fn add_vertex(&mut self) -> Vertex {
        let v = Vertex(self.next_id);
        self.next_id += 1;
        self.adj.insert(v, BTreeSet::new());
        v
    }

    /// Adds a vertex with a fresh id and a label.
    pub fn add_labeled_vertex(&mut self, label: impl Into<String>) -> Vertex {
        let v = self.add_vertex();
        self.labels.insert(v, label.into());
        v
    }

    /// Inserts a vertex with a chosen id. Returns false if it already exists.
    pub fn insert_vertex(&mut self, v: Vertex) -> bool {
        self.next_id = self.next_id.max(v.0 + 1);
        if self.adj.contains_key(&v) {
            return false;
        }
        self.adj.insert(v, BTreeSet::new());
        true
    }

    /// Adds an edge; `u == v` sets a loop.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            self.loops.insert(u);
        } else {
            self.adj.get_mut(&u).expect("checked").insert(v);
            self.adj.get_mut(&v).expect("checked").insert(u);
        }
        Ok(())
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u, v));
        }
        if u == v {
            self.loops.remove(&u);
        } else {
            self.adj.get_mut(&u).expect("edge").remove(&v);
            self.adj.get_mut(&v).expect("edge").remove(&u);
        }
        Ok(())
    }

    pub fn set_label(&mut self, v: Vertex, label: impl Into<String>) -> Result<(), GraphError> {
        self.check(v)?;
        self.labels.insert(v, label.into());
        Ok(())
    }

    pub fn label(&self, v: Vertex) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    /// Display name: the label if present, otherwise the numeric id.
    pub fn name(&self, v: Vertex) -> String {
        match self.labels.get(&v) {
            Some(l) => l.clone(),
            None => v.0.to_string(),
        }
    }

    /// Finds a vertex by its display name.
    pub fn find(&self, name: &str) -> Option<Vertex> {
        if let Some((&v, _)) = self.labels.iter().find(|(_, l)| l.as_str() == name) {
            return Some(v);
        }
        let v = Vertex(name.parse().ok()?);
        (self.contains(v) && !self.labels.contains_key(&v)).then_some(v)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    fn check(&self, v: Vertex) -> Result<(), GraphError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.adj.keys().copied().collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Non-loop edges plus loops.
    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2 + self.loops.len()
    }

    /// All edges as ordered pairs `(u, v)` with `u <= v`; loops have `u == v`.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for (&u, nb) in &self.adj {
            if self.loops.contains(&u) {
                out.push((u, u));
            }
            for &v in nb.range(u..) {
                out.push((u, v));
            }
        }
        out.sort();
        out
    }

    /// Neighbours of `v` excluding `v` itself. Panics on unknown vertices.
    pub fn neighbors(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.adj[&v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        if u == v {
            self.loops.contains(&u)
        } else {
            self.adj.get(&u).is_some_and(|nb| nb.contains(&v))
        }
    }

    pub fn has_loop(&self, v: Vertex) -> bool {
        self.loops.contains(&v)
    }

    pub fn loops(&self) -> &BTreeSet<Vertex> {
        &self.loops
    }

    /// The link `lk(v)`: neighbours without `v`, even when `v` is looped.
    pub fn link(&self, v: Vertex) -> Result<BTreeSet<Vertex>, GraphError> {
        self.check(v)?;
        Ok(self.adj[&v].clone())
    }

    /// Removes a vertex in place.
    pub fn remove_vertex(&mut self, v: Vertex) -> Result<(), GraphError> {
        let nb = self.adj.remove(&v).ok_or(GraphError::UnknownVertex(v))?;
        for u in nb {
            self.adj.get_mut(&u).expect("symmetric").remove(&v);
        }
        self.loops.remove(&v);
        self.labels.remove(&v);
        Ok(())
    }

    /// `G - v`.
    pub fn delete_vertex(&self, v: Vertex) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        g.remove_vertex(v)?;
        Ok(g)
    }

    /// `G - st(v)`: removes `v` and all its neighbours.
    pub fn delete_star(&self, v: Vertex) -> Result<Graph, GraphError> {
        let nb = self.link(v)?;
        let mut g = self.clone();
        g.remove_vertex(v)?;
        for u in nb {
            g.remove_vertex(u)?;
        }
        Ok(g)
    }

    /// Removes a set of vertices, ignoring ids not present.
    pub fn without(&self, set: &BTreeSet<Vertex>) -> Graph {
        let mut g = self.clone();
        for &v in set {
            let _ = g.remove_vertex(v);
        }
        g
    }

    /// Induced subgraph on `set` (ids outside the graph are ignored).
    pub fn induced(&self, set: &BTreeSet<Vertex>) -> Graph {
        let mut g = Graph { next_id: self.next_id, ..Graph::default() };
        for &v in set {
            if let Some(nb) = self.adj.get(&v) {
                g.adj.insert(v, nb.intersection(set).copied().collect());
                if self.loops.contains(&v) {
                    g.loops.insert(v);
                }
                if let Some(l) = self.labels.get(&v) {
                    g.labels.insert(v, l.clone());
                }
            }
        }
        g
    }

    /// True iff `v` dominates `w`: `lk(w) ∪ {w, v} ⊆ lk(v) ∪ {v, w}`.
    pub fn dominates(&self, v: Vertex, w: Vertex) -> Result<bool, GraphError> {
        self.check(v)?;
        self.check(w)?;
        if v == w {
            return Ok(false);
        }
        let lv = &self.adj[&v];
        Ok(self.adj[&w].iter().all(|&u| u == v || lv.contains(&u)))
    }

    /// Connected components as vertex sets, ordered by their smallest vertex.
    pub fn components(&self) -> Vec<BTreeSet<Vertex>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for v in self.vertices() {
            if seen.contains(&v) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([v]);
            seen.insert(v);
            while let Some(u) = queue.pop_front() {
                comp.insert(u);
                for &x in &self.adj[&u] {
                    if seen.insert(x) {
                        queue.push_back(x);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// A proper 2-colouring if the graph is bipartite. Loops make a graph
    /// non-bipartite.
    pub fn two_coloring(&self) -> Option<BTreeMap<Vertex, bool>> {
        if !self.loops.is_empty() {
            return None;
        }
        let mut color = BTreeMap::new();
        for v in self.vertices() {
            if color.contains_key(&v) {
                continue;
            }
            color.insert(v, false);
            let mut queue = VecDeque::from([v]);
            while let Some(u) = queue.pop_front() {
                let cu = color[&u];
                for &x in &self.adj[&u] {
                    match color.get(&x) {
                        Some(&cx) if cx == cu => return None,
                        Some(_) => {}
                        None => {
                            color.insert(x, !cu);
                            queue.push_back(x);
                        }
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// True iff the graph has no loops and no cycles.
    pub fn is_forest(&self) -> bool {
        self.loops.is_empty() && self.edge_count() + self.components().len() == self.vertex_count()
    }

    /// Disjoint union; vertices of `other` get fresh ids. Returns the id map
    /// for `other`.
    pub fn disjoint_union(&self, other: &Graph) -> (Graph, BTreeMap<Vertex, Vertex>) {
        let mut g = self.clone();
        let map = g.absorb(other);
        (g, map)
    }

    /// Copies `other` into `self` with fresh ids; returns the id map.
    pub fn absorb(&mut self, other: &Graph) -> BTreeMap<Vertex, Vertex> {
        let map: BTreeMap<Vertex, Vertex> = other.vertices().map(|v| (v, self.add_vertex())).collect();
        for (&v, &nv) in &map {
            if let Some(l) = other.labels.get(&v) {
                self.labels.insert(nv, l.clone());
            }
        }
        for (u, v) in other.edges() {
            self.add_edge(map[&u], map[&v]).expect("mapped");
        }
        map
    }

    /// One-point union identifying `v` in `self` with `w` in `other`.
    pub fn wedge(&self, v: Vertex, other: &Graph, w: Vertex) -> Result<Graph, GraphError> {
        self.check(v)?;
        other.check(w)?;
        let mut g = self.clone();
        let mut map = BTreeMap::new();
        for u in other.vertices() {
            if u == w {
                map.insert(u, v);
            } else {
                let nu = g.add_vertex();
                if let Some(l) = other.labels.get(&u) {
                    g.labels.insert(nu, l.clone());
                }
                map.insert(u, nu);
            }
        }
        for (a, b) in other.edges() {
            g.add_edge(map[&a], map[&b])?;
        }
        Ok(g)
    }

    /// Renumbers vertices to `0..n` in id order, keeping labels.
    pub fn compact(&self) -> Graph {
        let map: BTreeMap<Vertex, Vertex> =
            self.vertices().enumerate().map(|(i, v)| (v, Vertex(i as u32))).collect();
        let mut g = Graph::new();
        for &nv in map.values() {
            g.insert_vertex(nv);
        }
        for (v, l) in &self.labels {
            g.labels.insert(map[v], l.clone());
        }
        for (u, v) in self.edges() {
            g.add_edge(map[&u], map[&v]).expect("mapped");
        }
        g
    }

    /// Builds a graph on vertices `0..n` from an edge list.
    pub fn from_edges(n: u32, edges: &[(u32, u32)]) -> Result<Graph, GraphError> {
        let mut g = Graph::new();
        for i in 0..n {
            g.insert_vertex(Vertex(i));
        }
        for &(a, b) in edges {
            g.add_edge(Vertex(a), Vertex(b))?;
        }
        Ok(g)
    }

    /// The path `L_n`: `n + 1` vertices joined by `n` edges.
    pub fn path(n: u32) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n + 1, &edges).expect("valid path")
    }

    /// The cycle `C_n`. Panics if `n < 3`.
    pub fn cycle(n: u32) -> Graph {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("valid cycle")
    }

    /// A cycle whose vertices carry the given labels in cyclic order.
    pub fn cycle_named(names: &[&str]) -> Graph {
        let mut g = Graph::cycle(names.len() as u32);
        for (i, n) in names.iter().enumerate() {
            g.labels.insert(Vertex(i as u32), n.to_string());
        }
        g
    }

    /// `K_n`.
    pub fn complete(n: u32) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Graph::from_edges(n, &edges).expect("valid complete graph")
    }

    /// A centre (vertex 0) with `rays` paths of `len` edges hanging off it.
    pub fn spider(rays: u32, len: u32) -> Graph {
        let mut g = Graph::new();
        let c = g.add_vertex();
        for _ in 0..rays {
            let mut prev = c;
            for _ in 0..len {
                let x = g.add_vertex();
                g.add_edge(prev, x).expect("fresh");
                prev = x;
            }
        }
        g
    }

    /// The star with `n` rays of length one.
    pub fn star(n: u32) -> Graph {
        Graph::spider(n, 1)
    }

    /// `n` triangles sharing vertex 0.
    pub fn triangle_bouquet(n: u32) -> Graph {
        let mut g = Graph::new();
        let c = g.add_vertex();
        for _ in 0..n {
            let a = g.add_vertex();
            let b = g.add_vertex();
            g.add_edge(c, a).expect("fresh");
            g.add_edge(c, b).expect("fresh");
            g.add_edge(a, b).expect("fresh");
        }
        g
    }

    pub(crate) fn fresh_vertex(&mut self) -> Vertex {
        let v = self.add_vertex();
        self.labels.insert(v, format!("~{}", v.0));
        v
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.vertices().map(|v| self.name(v)).collect();
        let edges: Vec<(String, String)> =
            self.edges().into_iter().map(|(u, v)| (self.name(u), self.name(v))).collect();
        f.debug_struct("Graph").field("vertices", &names).field("edges", &edges).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[u32]) -> BTreeSet<Vertex> {
        vs.iter().map(|&v| Vertex(v)).collect()
    }

    #[test]
    fn link_basics() {
        let g = Graph::path(1);
        assert_eq!(g.link(Vertex(0)).unwrap(), set(&[1]));
        let c = Graph::cycle(6);
        assert_eq!(c.link(Vertex(0)).unwrap(), set(&[1, 5]));
        let mut h = Graph::new();
        let v = h.add_vertex();
        h.add_edge(v, v).unwrap();
        assert!(h.link(v).unwrap().is_empty());
        assert_eq!(h.link(Vertex(9)), Err(GraphError::UnknownVertex(Vertex(9))));
    }

    #[test]
    fn hexagon_deletions() {
        let c = Graph::cycle(6);
        let g = c.delete_vertex(Vertex(0)).unwrap();
        assert!(is_isomorphic(&g, &Graph::path(4)));
        let h = c.delete_star(Vertex(0)).unwrap();
        assert!(is_isomorphic(&h, &Graph::path(2)));
        let single = Graph::path(0).delete_vertex(Vertex(0)).unwrap();
        assert!(single.is_empty());
    }

    #[test]
    fn domination_examples() {
        let e = Graph::path(1);
        assert!(e.dominates(Vertex(0), Vertex(1)).unwrap());
        let s = Graph::star(3);
        for leaf in 1..=3 {
            assert!(s.dominates(Vertex(0), Vertex(leaf)).unwrap());
            assert!(!s.dominates(Vertex(leaf), Vertex(0)).unwrap());
        }
        let c = Graph::cycle(6);
        assert!(!c.dominates(Vertex(0), Vertex(3)).unwrap());
    }

    #[test]
    fn delete_star_matches_iterated_deletion() {
        let g = Graph::triangle_bouquet(2);
        let a = g.delete_star(Vertex(1)).unwrap();
        let mut b = g.clone();
        for v in [Vertex(0), Vertex(2), Vertex(1)] {
            b.remove_vertex(v).unwrap();
        }
        assert_eq!(a, b);
    }

    #[test]
    fn components_and_bipartite() {
        let (g, _) = Graph::cycle(5).disjoint_union(&Graph::path(2));
        assert_eq!(g.components().len(), 2);
        assert!(!g.is_bipartite());
        assert!(Graph::cycle(6).is_bipartite());
        assert!(Graph::spider(3, 2).is_forest());
        assert!(!Graph::cycle(4).is_forest());
    }

    #[test]
    fn wedge_of_two_triangles() {
        let t = Graph::cycle(3);
        let w = t.wedge(Vertex(0), &t, Vertex(0)).unwrap();
        assert!(is_isomorphic(&w, &Graph::triangle_bouquet(2)));
    }

    #[test]
    fn ids_are_not_reused() {
        let mut g = Graph::path(2);
        g.remove_vertex(Vertex(2)).unwrap();
        assert_eq!(g.add_vertex(), Vertex(3));
    }

    #[test]
    fn find_by_name() {
        let g = Graph::cycle_named(&["x", "y", "z"]);
        assert_eq!(g.find("y"), Some(Vertex(1)));
        assert_eq!(g.find("1"), None);
        assert_eq!(Graph::path(3).find("2"), Some(Vertex(2)));
    }
}
