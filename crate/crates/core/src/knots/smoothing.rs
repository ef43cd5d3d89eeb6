use std::collections::BTreeMap;

use serde::Serialize;

use super::{KnotError, PlanarDiagram};
use crate::chords::ChordDiagram;
use crate::graphs::{Graph, Vertex};

/// A marker point: the middle of one of the two local arcs left by
/// smoothing a crossing. `side` 0 is the arc through slot `a`, 1 the other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Marker {
    pub crossing: usize,
    pub side: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothingChord {
    pub crossing: usize,
    /// `(circle, position)` of the two markers.
    pub ends: [(usize, usize); 2],
    pub admissible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothingResult {
    /// Cyclic marker sequences; free circles of the diagram are empty.
    pub circles: Vec<Vec<Marker>>,
    /// One chord per crossing, in crossing order.
    pub chords: Vec<SmoothingChord>,
}

/// Slot partner of `k` under the smoothing: B joins 0-3 and 1-2, A joins
/// 0-1 and 2-3.
fn partner(k: usize, b: bool) -> usize {
    match (b, k) {
        (true, 0) => 3,
        (true, 3) => 0,
        (true, 1) => 2,
        (true, _) => 1,
        (false, 0) => 1,
        (false, 1) => 0,
        (false, 2) => 3,
        (false, _) => 2,
    }
}

/// Traces the circles of the state with `b_label(i)` telling whether
/// crossing `i` is B-smoothed. Returns marker cycles, free circles last.
pub fn smoothing_circles(d: &PlanarDiagram, b_label: impl Fn(usize) -> bool) -> Vec<Vec<Marker>> {
    let mut occ: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, x) in d.crossings.iter().enumerate() {
        for (k, &a) in x.arcs.iter().enumerate() {
            occ.entry(a).or_default().push((i, k));
        }
    }
    let along_arc = |i: usize, k: usize| -> (usize, usize) {
        let v = &occ[&d.crossings[i].arcs[k]];
        if v[0] == (i, k) {
            v[1]
        } else {
            v[0]
        }
    };
    let mut seen = vec![[false; 4]; d.crossings.len()];
    let mut circles = Vec::new();
    for i0 in 0..d.crossings.len() {
        for k0 in 0..4 {
            if seen[i0][k0] {
                continue;
            }
            let mut circle = Vec::new();
            let (mut i, mut k) = (i0, k0);
            while !seen[i][k] {
                let b = b_label(i);
                let k2 = partner(k, b);
                seen[i][k] = true;
                seen[i][k2] = true;
                let side = if k.min(k2) == 0 { 0 } else { 1 };
                circle.push(Marker { crossing: i, side });
                (i, k) = along_arc(i, k2);
            }
            circles.push(circle);
        }
    }
    circles.extend((0..d.loops).map(|_| Vec::new()));
    circles
}

/// The all-B state with its chords.
pub fn b_state_smoothing(d: &PlanarDiagram) -> SmoothingResult {
    let circles = smoothing_circles(d, |_| true);
    let mut at: BTreeMap<Marker, (usize, usize)> = BTreeMap::new();
    for (c, circle) in circles.iter().enumerate() {
        for (p, m) in circle.iter().enumerate() {
            at.insert(*m, (c, p));
        }
    }
    let chords = (0..d.crossings.len())
        .map(|i| {
            let e0 = at[&Marker { crossing: i, side: 0 }];
            let e1 = at[&Marker { crossing: i, side: 1 }];
            SmoothingChord { crossing: i, ends: [e0, e1], admissible: e0.0 == e1.0 }
        })
        .collect();
    SmoothingResult { circles, chords }
}

impl SmoothingResult {
    /// The chord diagram of admissible chords on each circle; chord labels
    /// are crossing indices.
    pub fn circle_diagrams(&self) -> Vec<ChordDiagram> {
        let admissible: Vec<bool> = self.chords.iter().map(|c| c.admissible).collect();
        self.circles
            .iter()
            .map(|circle| {
                let tokens: Vec<String> = circle
                    .iter()
                    .filter(|m| admissible[m.crossing])
                    .map(|m| m.crossing.to_string())
                    .collect();
                ChordDiagram::from_tokens(&tokens).expect("admissible chords have both ends on the circle")
            })
            .collect()
    }
}

/// The Lando graph: interlacement of admissible chords of the all-B state,
/// over all circles. Vertex `i` is crossing `i`.
pub fn lando_graph(d: &PlanarDiagram) -> Result<Graph, KnotError> {
    let s = b_state_smoothing(d);
    let mut g = Graph::new();
    for c in s.chords.iter().filter(|c| c.admissible) {
        g.insert_vertex(Vertex(c.crossing as u32));
    }
    for cd in s.circle_diagrams() {
        let h = cd.intersection_graph();
        for (u, v) in h.edges() {
            let cu: u32 = cd.labels()[u.0 as usize].parse().expect("crossing label");
            let cv: u32 = cd.labels()[v.0 as usize].parse().expect("crossing label");
            g.add_edge(Vertex(cu), Vertex(cv)).expect("admissible vertices");
        }
    }
    if !g.is_bipartite() {
        return Err(KnotError::InvariantViolation("Lando graph is not bipartite".into()));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::is_isomorphic;
    use crate::knots::{parse_braid, torus_braid};

    #[test]
    fn trefoil_b_state() {
        let d = torus_braid(2, 3).unwrap().closure();
        let s = b_state_smoothing(&d);
        assert_eq!(s.circles.len(), 3);
        assert_eq!(s.chords.len(), 3);
        assert!(s.chords.iter().all(|c| !c.admissible));
        assert!(lando_graph(&d).unwrap().is_empty());
    }

    #[test]
    fn kink_has_one_circle_and_an_admissible_chord() {
        let d = torus_braid(2, 1).unwrap().closure();
        let s = b_state_smoothing(&d);
        assert_eq!(s.circles.len(), 1);
        assert!(s.chords[0].admissible);
        assert_eq!(lando_graph(&d).unwrap().vertex_count(), 1);
        // The A state is the oriented one: two circles.
        assert_eq!(smoothing_circles(&d, |_| false).len(), 2);
    }

    #[test]
    fn torus_3q_lando_is_a_cycle() {
        for q in 2..=5 {
            let g = lando_graph(&torus_braid(3, q).unwrap().closure()).unwrap();
            assert!(is_isomorphic(&g, &Graph::cycle(2 * q as u32)), "q = {q}");
        }
    }

    #[test]
    fn free_circles_count() {
        let d = parse_braid("1", 3).unwrap().closure();
        assert_eq!(b_state_smoothing(&d).circles.len(), 2);
    }
}
