//! Reduction order for permutation diagrams. With chords ordered by their
//! endpoint on one arc of the split, the first two chords always give a
//! domination, so no residual is left.

use std::collections::BTreeMap;

use super::engine::{base_rules, domination_plan, solve, Plan};
use super::{HomotopyExpr, ReductionTrace};
use crate::chords::{ChordDiagram, ChordError};
use crate::graphs::{Graph, Vertex};

/// Classifies the independence complex of a permutation diagram's circle
/// graph. Every step is a generic engine rule, so the trace replays with
/// [`super::replay`] on [`ChordDiagram::intersection_graph`].
pub fn classify_permutation(d: &ChordDiagram) -> Result<(HomotopyExpr, ReductionTrace), ChordError> {
    let (start, end) =
        d.is_permutation().ok_or_else(|| ChordError::NotApplicable("diagram has no permutation split".into()))?;
    let mut order: BTreeMap<Vertex, usize> = BTreeMap::new();
    for (p, &c) in d.word()[start..end].iter().enumerate() {
        order.insert(Vertex(c as u32), p);
    }
    let g = d.intersection_graph();
    let mut trace = ReductionTrace::default();
    let mut next = 1;
    let e = solve(&g, 0, &mut next, &mut trace, &|h| plan(h, &order));
    Ok((e.normalize(), trace))
}

fn plan(g: &Graph, order: &BTreeMap<Vertex, usize>) -> Plan {
    if let Some(p) = base_rules(g) {
        return p;
    }
    let mut vs: Vec<Vertex> = g.vertices().collect();
    vs.sort_by_key(|v| order[v]);
    let (s1, s2) = (vs[0], vs[1]);
    let p = if g.has_edge(s1, s2) { domination_plan(g, s1, s2) } else { domination_plan(g, s2, s1) };
    p.expect("the leftmost chords of a permutation diagram give a domination")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chords::realize_wedge;
    use crate::homotopy::{replay, Rule};

    #[test]
    fn small_diagrams() {
        let (e, _) = classify_permutation(&ChordDiagram::parse("a b a b").unwrap()).unwrap();
        assert_eq!(e, HomotopyExpr::sphere(0));
        let (e, _) = classify_permutation(&ChordDiagram::parse("a b b a").unwrap()).unwrap();
        assert_eq!(e, HomotopyExpr::Point);
        let (e, _) = classify_permutation(&ChordDiagram::empty()).unwrap();
        assert_eq!(e, HomotopyExpr::sphere(-1));
        assert!(classify_permutation(&ChordDiagram::parse("a a b b c c").unwrap()).is_err());
    }

    #[test]
    fn realized_wedge_and_replay() {
        let d = realize_wedge(&[3, 2, 1]).unwrap();
        let (e, t) = classify_permutation(&d).unwrap();
        assert_eq!(e, HomotopyExpr::spheres(&[3, 2, 1]));
        assert!(t.steps.iter().all(|s| s.rule != Rule::Fallback));
        assert_eq!(replay(&d.intersection_graph(), &t).unwrap(), e);
    }
}
