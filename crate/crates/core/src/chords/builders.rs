//! Constructive diagrams: wedges of spheres realised by permutation
//! diagrams, and the two gap families.

use super::{label_name, ChordDiagram, ChordError};
use crate::graphs::{Graph, Vertex};

/// A permutation diagram drawn as chords between a top and a bottom row.
/// Two chords cross exactly when their orders on the two rows disagree.
/// The circular word reads the top row left to right, then the bottom row
/// right to left.
#[derive(Clone, Debug, Default)]
pub struct PermutationLayout {
    top: Vec<String>,
    bottom: Vec<String>,
}

impl PermutationLayout {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn chord_count(&self) -> usize {
        self.top.len()
    }

    /// A chord from the top-left corner to the bottom-right corner,
    /// crossing every chord present.
    pub fn move_one(&mut self, label: impl Into<String>) {
        let l = label.into();
        self.top.insert(0, l.clone());
        self.bottom.push(l);
    }

    /// Two chords crossing each other, to the right of every chord present.
    pub fn move_two(&mut self, a: impl Into<String>, b: impl Into<String>) {
        let (a, b) = (a.into(), b.into());
        self.top.push(a.clone());
        self.top.push(b.clone());
        self.bottom.push(b);
        self.bottom.push(a);
    }

    pub fn to_diagram(&self) -> ChordDiagram {
        let tokens: Vec<&str> = self.top.iter().chain(self.bottom.iter().rev()).map(String::as_str).collect();
        ChordDiagram::from_tokens(&tokens).expect("each chord meets both rows once")
    }
}

/// A permutation diagram whose independence complex is the wedge of
/// spheres of the given dimensions.
///
/// Dimensions are sorted in decreasing order. One crossing pair gives
/// `S^0`; between consecutive dimensions the gap is closed by crossing
/// pairs (suspensions) and a new summand `S^0` is added by a chord crossing
/// everything; the smallest dimension is reached by final suspensions.
pub fn realize_wedge(dims: &[i64]) -> Result<ChordDiagram, ChordError> {
    if let Some(&d) = dims.iter().find(|&&d| d < 0) {
        return Err(ChordError::NegativeDimension(d));
    }
    if dims.is_empty() {
        return Err(ChordError::EmptyDims);
    }
    let mut ds = dims.to_vec();
    ds.sort_unstable_by(|a, b| b.cmp(a));
    let mut lay = PermutationLayout::new();
    let mut next = 0;
    let mut fresh = || {
        next += 1;
        label_name(next - 1)
    };
    let (a, b) = (fresh(), fresh());
    lay.move_two(a, b);
    for w in ds.windows(2) {
        for _ in 0..w[0] - w[1] {
            let (a, b) = (fresh(), fresh());
            lay.move_two(a, b);
        }
        lay.move_one(fresh());
    }
    for _ in 0..*ds.last().expect("non-empty") {
        let (a, b) = (fresh(), fresh());
        lay.move_two(a, b);
    }
    Ok(lay.to_diagram())
}

fn add_edges(g: &mut Graph, k: usize) {
    for i in 1..=k {
        let p = g.add_labeled_vertex(format!("p{i}"));
        let q = g.add_labeled_vertex(format!("q{i}"));
        g.add_edge(p, q).expect("fresh vertices");
    }
}

/// The first gap family: `n` hexagons sharing one vertex plus `k`
/// disjoint edges, with independence complex `S^{n+k} ∨ S^{2n-1+k}`.
/// The diagram wedges `n` triangle diagrams at a common chord, expands the
/// outer pair of every triangle into a path of length four, and appends
/// `k` crossing pairs.
pub fn build_gap1(n: usize, k: usize) -> Result<(ChordDiagram, Graph), ChordError> {
    if n == 0 {
        return Err(ChordError::NotApplicable("gap family needs n >= 1".into()));
    }
    let triangle = |i: usize| {
        let (b, c) = (format!("b{i}"), format!("c{i}"));
        ChordDiagram::from_tokens(&["o", &b, &c, "o", &b, &c]).expect("triangle word")
    };
    let mut d = triangle(1);
    for i in 2..=n {
        d = d.wedge("o", &triangle(i), "o")?;
    }
    for i in 1..=n {
        d = d.csorba_expand(&format!("b{i}"), &format!("c{i}"))?.0;
    }
    let d = d.with_free_pairs(k, "p");

    let mut g = Graph::new();
    let o = g.add_labeled_vertex("o");
    for i in 1..=n {
        let b = g.add_labeled_vertex(format!("b{i}"));
        let c = g.add_labeled_vertex(format!("c{i}"));
        g.add_edge(o, b).expect("fresh");
        g.add_edge(o, c).expect("fresh");
        g.add_edge(b, c).expect("fresh");
        g = g.subdivide_edge_x4(b, c).map_err(|e| ChordError::NotApplicable(e.to_string()))?.0;
    }
    add_edges(&mut g, k);
    Ok((d, g))
}

/// The core of the second family: an apex joined to every vertex of `m`
/// triangles sharing a centre and `n` disjoint edges, with its permutation
/// diagram. Its independence complex is `S^0 ∨ S^n ∨ S^{m+n-1}`.
pub fn gap2_core(m: usize, n: usize) -> (ChordDiagram, Graph) {
    let mut lay = PermutationLayout::new();
    for i in 1..=m {
        lay.move_two(format!("b{i}"), format!("c{i}"));
    }
    lay.move_one("o");
    for j in 1..=n {
        lay.move_two(format!("e{j}"), format!("f{j}"));
    }
    lay.move_one("u");

    let mut g = Graph::new();
    let u = g.add_labeled_vertex("u");
    let o = g.add_labeled_vertex("o");
    g.add_edge(u, o).expect("fresh");
    for i in 1..=m {
        let b = g.add_labeled_vertex(format!("b{i}"));
        let c = g.add_labeled_vertex(format!("c{i}"));
        for (x, y) in [(u, b), (u, c), (o, b), (o, c), (b, c)] {
            g.add_edge(x, y).expect("fresh");
        }
    }
    for j in 1..=n {
        let e = g.add_labeled_vertex(format!("e{j}"));
        let f = g.add_labeled_vertex(format!("f{j}"));
        for (x, y) in [(u, e), (u, f), (e, f)] {
            g.add_edge(x, y).expect("fresh");
        }
    }
    (lay.to_diagram(), g)
}

/// The second gap family: the core with the apex-centre edge, the outer
/// edge of every triangle and every disjoint edge expanded into paths of
/// length four, plus `k` disjoint edges. The independence complex is
/// `S^{2m+2n+k} ∨ S^{m+2n+1+k} ∨ S^{m+n+1+k}`.
pub fn build_gap2(m: usize, n: usize, k: usize) -> Result<(ChordDiagram, Graph), ChordError> {
    if m == 0 || n == 0 {
        return Err(ChordError::NotApplicable("gap family needs m, n >= 1".into()));
    }
    let (mut d, mut g) = gap2_core(m, n);
    let mut pairs = vec![("u".to_string(), "o".to_string())];
    pairs.extend((1..=m).map(|i| (format!("b{i}"), format!("c{i}"))));
    pairs.extend((1..=n).map(|j| (format!("e{j}"), format!("f{j}"))));
    for (a, b) in &pairs {
        d = d.csorba_expand(a, b)?.0;
        let (va, vb) = (find(&g, a), find(&g, b));
        g = g.subdivide_edge_x4(va, vb).map_err(|e| ChordError::NotApplicable(e.to_string()))?.0;
    }
    let d = d.with_free_pairs(k, "p");
    add_edges(&mut g, k);
    Ok((d, g))
}

fn find(g: &Graph, name: &str) -> Vertex {
    g.find(name).expect("builder vertex")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::independence_complex;
    use crate::graphs::is_isomorphic;
    use crate::homology::{reduced_homology, HomologyTable};

    fn homology(g: &Graph) -> HomologyTable {
        reduced_homology(&independence_complex(g).unwrap())
    }

    #[test]
    fn realize_small_targets() {
        let d = realize_wedge(&[0]).unwrap();
        assert_eq!(d.to_string(), "a b a b");
        let d = realize_wedge(&[3, 2, 1]).unwrap();
        assert_eq!(d.chord_count(), 10);
        assert!(d.is_permutation().is_some());
        assert_eq!(homology(&d.intersection_graph()), HomologyTable::of_spheres(&[3, 2, 1]));
        let d = realize_wedge(&[1, 1]).unwrap();
        assert_eq!(homology(&d.intersection_graph()), HomologyTable::of_spheres(&[1, 1]));
        let d = realize_wedge(&[1]).unwrap();
        assert_eq!(homology(&d.intersection_graph()), HomologyTable::of_spheres(&[1]));
        assert!(realize_wedge(&[-1]).is_err());
        assert!(realize_wedge(&[]).is_err());
    }

    #[test]
    fn moves_act_on_the_graph() {
        let mut lay = PermutationLayout::new();
        lay.move_two("a", "b");
        lay.move_one("c");
        let g = lay.to_diagram().intersection_graph();
        assert!(is_isomorphic(&g, &Graph::cycle(3)));
        lay.move_two("d", "e");
        let g = lay.to_diagram().intersection_graph();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.components().len(), 2);
    }

    #[test]
    fn gap1_small_cases() {
        let (d, g) = build_gap1(1, 0).unwrap();
        assert!(is_isomorphic(&g, &Graph::cycle(6)));
        assert!(is_isomorphic(&d.intersection_graph(), &g));
        assert_eq!(homology(&g), HomologyTable::of_spheres(&[1, 1]));
        let (d, g) = build_gap1(2, 0).unwrap();
        assert!(is_isomorphic(&d.intersection_graph(), &g));
        assert_eq!(homology(&g), HomologyTable::of_spheres(&[3, 2]));
        let (d, g) = build_gap1(2, 1).unwrap();
        assert!(is_isomorphic(&d.intersection_graph(), &g));
        assert_eq!(homology(&g), HomologyTable::of_spheres(&[4, 3]));
        assert!(g.is_bipartite());
    }

    #[test]
    fn gap2_core_and_family() {
        let (d, g) = gap2_core(2, 1);
        assert!(is_isomorphic(&d.intersection_graph(), &g));
        assert!(d.is_permutation().is_some());
        assert_eq!(homology(&g), HomologyTable::of_spheres(&[2, 1, 0]));
        let (d, g) = build_gap2(1, 1, 0).unwrap();
        assert!(is_isomorphic(&d.intersection_graph(), &g));
        assert!(g.is_bipartite());
        assert_eq!(homology(&g), HomologyTable::of_spheres(&[4, 4, 3]));
    }
}
