use super::{Crossing, KnotError, PlanarDiagram};
use crate::chords::ChordDiagram;
use crate::graphs::Vertex;

/// Largest number of components whose orientations are searched.
pub const ORIENTATION_LIMIT: usize = 20;

/// A link diagram whose all-B state is a single circle carrying the chords
/// of `cd`, so its Lando graph is the circle graph of `cd`.
///
/// The circle graph must be bipartite: one colour class is drawn inside the
/// circle, the other outside, and every chord is shrunk to a crossing.
/// Among all orientations of the components the one with most positive
/// crossings is kept (the first such in a fixed order).
pub fn diagram_from_chords(cd: &ChordDiagram) -> Result<PlanarDiagram, KnotError> {
    let n = cd.chord_count();
    if n == 0 {
        return Ok(PlanarDiagram { crossings: Vec::new(), loops: 1 });
    }
    let colour = cd
        .intersection_graph()
        .two_coloring()
        .ok_or_else(|| KnotError::BadParameter("circle graph is not bipartite".into()))?;
    let len = 2 * n;
    // Arc k runs from endpoint k to endpoint k + 1.
    let after = |p: usize| p;
    let before = |p: usize| (p + len - 1) % len;
    let ends: Vec<(usize, usize)> = (0..n).map(|c| cd.endpoints(c)).collect();
    let mut chord_at = vec![0; len];
    for (c, &(p, q)) in ends.iter().enumerate() {
        chord_at[p] = c;
        chord_at[q] = c;
    }

    // Components: a strand entering endpoint m along `before m` leaves along
    // `before m'` backwards, and symmetrically for `after`.
    let partner = |m: usize| {
        let (p, q) = ends[chord_at[m]];
        if m == p {
            q
        } else {
            p
        }
    };
    // dir[k]: component of arc k and whether it is traversed k -> k + 1.
    let mut dir: Vec<Option<(usize, bool)>> = vec![None; len];
    let mut components = 0;
    for k0 in 0..len {
        if dir[k0].is_some() {
            continue;
        }
        let (mut k, mut fwd) = (k0, true);
        while dir[k].is_none() {
            dir[k] = Some((components, fwd));
            if fwd {
                let m = partner((k + 1) % len);
                (k, fwd) = (before(m), false);
            } else {
                let m = partner(k);
                (k, fwd) = (after(m), true);
            }
        }
        components += 1;
    }
    if components > ORIENTATION_LIMIT {
        return Err(KnotError::TooLarge { crossings: components, limit: ORIENTATION_LIMIT });
    }

    let build = |flip: u32| -> Vec<Crossing> {
        // Whether arc k meets endpoint m as an incoming end.
        let enters = |k: usize, m: usize| {
            let (c, f) = dir[k].expect("every arc traced");
            (f ^ (flip >> c & 1 == 1)) == (m == (k + 1) % len)
        };
        ends.iter()
            .enumerate()
            .map(|(c, &(p, q))| {
                let (ap, bp, aq, bq) = ((after(p), p), (before(p), p), (after(q), q), (before(q), q));
                // Counterclockwise order with the under strand on slots 0 and 2.
                let ring = if colour[&Vertex(c as u32)] { [bp, aq, bq, ap] } else { [ap, bq, aq, bp] };
                let start = if enters(ring[0].0, ring[0].1) { 0 } else { 2 };
                let slots = [0, 1, 2, 3].map(|i| ring[(start + i) % 4]);
                let sign = if enters(slots[3].0, slots[3].1) { 1 } else { -1 };
                Crossing { arcs: slots.map(|(a, _)| a as u32 + 1), sign }
            })
            .collect()
    };
    let mut best = build(0);
    for flip in 1..1u32 << components {
        let xs = build(flip);
        if xs.iter().filter(|x| x.sign > 0).count() > best.iter().filter(|x| x.sign > 0).count() {
            best = xs;
        }
    }
    PlanarDiagram::new(best, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chords::build_gap1;
    use crate::graphs::is_isomorphic;
    use crate::homology::HomologyGroup;
    use crate::knots::{b_state_smoothing, extreme_khovanov, extreme_khovanov_oracle, lando_graph};

    #[test]
    fn single_circle_b_state() {
        for w in ["a a", "a b a b", "a b c b c a d d", "a b a c b d c d", "a b a c b c", "a b b a c c"] {
            let cd = ChordDiagram::parse(w).unwrap();
            let d = diagram_from_chords(&cd).unwrap();
            assert_eq!(b_state_smoothing(&d).circles.len(), 1, "{w}");
            assert!(is_isomorphic(&lando_graph(&d).unwrap(), &cd.intersection_graph()), "{w}");
            assert_eq!(extreme_khovanov(&d).unwrap().groups, extreme_khovanov_oracle(&d).unwrap(), "{w}");
        }
    }

    #[test]
    fn rejects_odd_cycles() {
        assert!(diagram_from_chords(&ChordDiagram::parse("a b c a b c").unwrap()).is_err());
    }

    #[test]
    fn first_gap_diagram() {
        let (cd, _) = build_gap1(5, 0).unwrap();
        let d = diagram_from_chords(&cd).unwrap();
        assert_eq!(d.positive(), 26);
        let s = extreme_khovanov(&d).unwrap();
        let expected = [(16, HomologyGroup::free(1)), (20, HomologyGroup::free(1))];
        assert_eq!(s.groups, expected.into_iter().collect());
    }
}
