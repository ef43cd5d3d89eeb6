//! The reduction engine. Each rule rewrites a graph problem into smaller
//! subproblems and a combinator; the first applicable rule in [`Rule`]
//! order wins, with ties broken by the smallest vertex id.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::expr::HomotopyExpr;
use crate::complexes::SimplicialComplex;
use crate::graphs::{Graph, Vertex};

/// Reduction rules in priority order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// Looped vertices never lie in an independent set: delete them.
    Loops,
    /// Disconnected graphs: the complex is the join over components.
    Components,
    /// The empty graph gives `S^-1`.
    Empty,
    /// An isolated vertex is a cone point: contractible.
    IsolatedVertex,
    /// Closed form for paths.
    Path,
    /// Closed form for cycles.
    Cycle,
    /// Two leaves joined by a path of length three: contractible.
    LeafPath3,
    /// A leaf `w` with preleaf `v`: suspension of `G - st(v)`.
    Leaf,
    /// `v` dominates a non-neighbour `w`: delete `v`.
    DominationDelete,
    /// `v` dominates a neighbour `w`: `I_{G-v} ∨ Σ I_{G-st(v)}`.
    DominationSplit,
    /// Degree-2 structure move: suspension of the contracted graph.
    Degree2Move,
    /// General structure move: suspension of `K(G, v)`.
    StructureComplex,
    /// Nothing applies; the graph is kept for homology.
    Fallback,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).ok().and_then(|v| v.as_str().map(str::to_string));
        write!(f, "{}", s.unwrap_or_default())
    }
}

/// One rule application. `problem` and `children` are subproblem ids
/// numbered in depth-first order, the root being 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub problem: usize,
    pub rule: Rule,
    pub vertices: Vec<u32>,
    pub children: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
}

impl ReductionTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Number of applications of each rule.
    pub fn rule_counts(&self) -> std::collections::BTreeMap<Rule, usize> {
        let mut m = std::collections::BTreeMap::new();
        for s in &self.steps {
            *m.entry(s.rule).or_insert(0) += 1;
        }
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineOptions {
    /// Use the path and cycle closed forms.
    pub closed_forms: bool,
    /// Try the general structure move before giving up.
    pub structure_complex: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { closed_forms: true, structure_complex: true }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReplayError {
    #[error("trace ended before problem {0} was reduced")]
    Truncated(usize),
    #[error("step {step} reduces problem {found}, expected {expected}")]
    OutOfOrder { step: usize, expected: usize, found: usize },
    #[error("step {step}: rule {rule} does not apply: {reason}")]
    Inapplicable { step: usize, rule: Rule, reason: String },
    #[error("{0} unused trailing steps")]
    Trailing(usize),
}

/// A planned reduction: the combinator and the child graphs.
pub(crate) struct Plan {
    pub rule: Rule,
    pub vertices: Vec<Vertex>,
    pub children: Vec<Graph>,
    pub combine: Combine,
    pub note: Option<String>,
}

pub(crate) enum Combine {
    /// The expression is fixed; no children.
    Leaf(HomotopyExpr),
    /// The single child, unchanged.
    Same,
    /// Suspension of the single child.
    Susp,
    /// Join over all children.
    Join,
    /// `child0 ∨ Σ child1`.
    SplitWedge,
}

impl Combine {
    pub(crate) fn apply(&self, mut kids: Vec<HomotopyExpr>) -> HomotopyExpr {
        match self {
            Combine::Leaf(e) => e.clone(),
            Combine::Same => kids.pop().expect("one child"),
            Combine::Susp => HomotopyExpr::susp(kids.pop().expect("one child"), 1),
            Combine::Join => HomotopyExpr::join(kids),
            Combine::SplitWedge => {
                let star = kids.pop().expect("two children");
                let del = kids.pop().expect("two children");
                HomotopyExpr::wedge(vec![del, HomotopyExpr::susp(star, 1)])
            }
        }
    }
}

/// Classifies `I_G` with the default options.
pub fn classify(g: &Graph) -> (HomotopyExpr, ReductionTrace) {
    classify_with(g, EngineOptions::default())
}

pub fn classify_with(g: &Graph, opts: EngineOptions) -> (HomotopyExpr, ReductionTrace) {
    let mut trace = ReductionTrace::default();
    let mut next = 1;
    let e = solve(g, 0, &mut next, &mut trace, &|g| plan(g, opts));
    (e.normalize(), trace)
}

pub(crate) fn solve(
    g: &Graph,
    id: usize,
    next: &mut usize,
    trace: &mut ReductionTrace,
    planner: &dyn Fn(&Graph) -> Plan,
) -> HomotopyExpr {
    let p = planner(g);
    debug_assert!(p.children.iter().all(|c| c.vertex_count() < g.vertex_count()), "rule {:?} must shrink", p.rule);
    let ids: Vec<usize> = (0..p.children.len()).map(|i| *next + i).collect();
    *next += p.children.len();
    trace.steps.push(ReductionStep {
        problem: id,
        rule: p.rule,
        vertices: p.vertices.iter().map(|v| v.0).collect(),
        children: ids.clone(),
        note: p.note.clone(),
    });
    let kids = p
        .children
        .iter()
        .zip(&ids)
        .map(|(c, &cid)| solve(c, cid, next, trace, planner))
        .collect();
    p.combine.apply(kids)
}

fn plan(g: &Graph, opts: EngineOptions) -> Plan {
    if let Some(p) = base_rules(g) {
        return p;
    }
    if opts.closed_forms {
        if let Some(p) = path_rule(g).or_else(|| cycle_rule(g)) {
            return p;
        }
    }
    if let Some(p) = leaf_path3_rule(g)
        .or_else(|| leaf_rule(g))
        .or_else(|| domination_rule(g, false))
        .or_else(|| domination_rule(g, true))
        .or_else(|| degree2_rule(g))
    {
        return p;
    }
    if opts.structure_complex {
        if let Some(p) = structure_rule(g) {
            return p;
        }
    }
    Plan {
        rule: Rule::Fallback,
        vertices: Vec::new(),
        children: Vec::new(),
        combine: Combine::Leaf(HomotopyExpr::unknown_graph(g.clone())),
        note: None,
    }
}

fn simple(rule: Rule, vertices: Vec<Vertex>, children: Vec<Graph>, combine: Combine) -> Plan {
    Plan { rule, vertices, children, combine, note: None }
}

/// Loops, components, the empty graph and isolated vertices.
pub(crate) fn base_rules(g: &Graph) -> Option<Plan> {
    if !g.loops().is_empty() {
        let looped: BTreeSet<Vertex> = g.loops().clone();
        return Some(simple(Rule::Loops, looped.iter().copied().collect(), vec![g.without(&looped)], Combine::Same));
    }
    let comps = g.components();
    if comps.len() > 1 {
        let children = comps.iter().map(|c| g.induced(c)).collect();
        return Some(simple(Rule::Components, Vec::new(), children, Combine::Join));
    }
    if g.is_empty() {
        return Some(simple(Rule::Empty, Vec::new(), Vec::new(), Combine::Leaf(HomotopyExpr::sphere(-1))));
    }
    if let Some(v) = g.vertices().find(|&v| g.degree(v) == 0) {
        return Some(simple(Rule::IsolatedVertex, vec![v], Vec::new(), Combine::Leaf(HomotopyExpr::Point)));
    }
    None
}

/// `I_{L_n}` for the path with `n` edges.
pub fn path_closed_form(n: u32) -> HomotopyExpr {
    if n % 3 == 0 {
        HomotopyExpr::Point
    } else {
        HomotopyExpr::sphere((n / 3) as i64)
    }
}

/// `I_{C_n}` for `n >= 3`.
pub fn cycle_closed_form(n: u32) -> HomotopyExpr {
    let k = ((n + 1) / 3) as i64;
    if n % 3 == 0 {
        HomotopyExpr::spheres(&[k - 1, k - 1])
    } else if n % 3 == 1 {
        HomotopyExpr::sphere((n as i64 - 1) / 3 - 1)
    } else {
        HomotopyExpr::sphere(k - 1)
    }
}

fn path_rule(g: &Graph) -> Option<Plan> {
    let n = g.vertex_count();
    if n < 2 || g.edge_count() != n - 1 || g.vertices().any(|v| g.degree(v) > 2) {
        return None;
    }
    let ends = g.vertices().filter(|&v| g.degree(v) == 1).collect();
    Some(simple(Rule::Path, ends, Vec::new(), Combine::Leaf(path_closed_form(n as u32 - 1))))
}

fn cycle_rule(g: &Graph) -> Option<Plan> {
    let n = g.vertex_count();
    if n < 3 || g.vertices().any(|v| g.degree(v) != 2) {
        return None;
    }
    Some(simple(Rule::Cycle, Vec::new(), Vec::new(), Combine::Leaf(cycle_closed_form(n as u32))))
}

fn leaf_path3_rule(g: &Graph) -> Option<Plan> {
    for w1 in g.vertices().filter(|&v| g.degree(v) == 1) {
        let v1 = *g.neighbors(w1).iter().next()?;
        for &v2 in g.neighbors(v1) {
            if v2 == w1 {
                continue;
            }
            if let Some(&w2) = g.neighbors(v2).iter().find(|&&x| x != v1 && x != w1 && g.degree(x) == 1) {
                return Some(simple(
                    Rule::LeafPath3,
                    vec![w1, v1, v2, w2],
                    Vec::new(),
                    Combine::Leaf(HomotopyExpr::Point),
                ));
            }
        }
    }
    None
}

pub(crate) fn leaf_plan(g: &Graph, w: Vertex) -> Option<Plan> {
    if g.degree(w) != 1 {
        return None;
    }
    let v = *g.neighbors(w).iter().next()?;
    Some(simple(Rule::Leaf, vec![w, v], vec![g.delete_star(v).ok()?], Combine::Susp))
}

fn leaf_rule(g: &Graph) -> Option<Plan> {
    let w = g.vertices().find(|&v| g.degree(v) == 1)?;
    leaf_plan(g, w)
}

/// Plan for `v` dominating `w`, provided it holds.
pub(crate) fn domination_plan(g: &Graph, v: Vertex, w: Vertex) -> Option<Plan> {
    if !g.dominates(v, w).ok()? {
        return None;
    }
    if g.has_edge(v, w) {
        let children = vec![g.delete_vertex(v).ok()?, g.delete_star(v).ok()?];
        Some(simple(Rule::DominationSplit, vec![v, w], children, Combine::SplitWedge))
    } else {
        Some(simple(Rule::DominationDelete, vec![v, w], vec![g.delete_vertex(v).ok()?], Combine::Same))
    }
}

fn domination_rule(g: &Graph, adjacent: bool) -> Option<Plan> {
    for v in g.vertices() {
        for w in g.vertices() {
            if v == w || g.has_edge(v, w) != adjacent {
                continue;
            }
            // Cheap filter before the subset test.
            if g.degree(w) > g.degree(v) + adjacent as usize {
                continue;
            }
            if let Some(p) = domination_plan(g, v, w) {
                return Some(p);
            }
        }
    }
    None
}

pub(crate) fn degree2_plan(g: &Graph, v: Vertex) -> Option<Plan> {
    let (v1, v2) = g.deg2_move_applies(v).ok()?;
    let h = g.structure_move_deg2(v).ok()?;
    Some(simple(Rule::Degree2Move, vec![v, v1, v2], vec![h], Combine::Susp))
}

fn degree2_rule(g: &Graph) -> Option<Plan> {
    g.vertices().filter(|&v| g.degree(v) == 2).find_map(|v| degree2_plan(g, v))
}

/// The general structure move at `v`. When `K(G, v)` is a flag complex it
/// is the independence complex of the complement of its 1-skeleton, which
/// becomes a new graph problem; otherwise `K(G, v)` is kept for homology.
pub(crate) fn structure_plan(g: &Graph, v: Vertex) -> Option<Plan> {
    let (k, ids) = g.structure_complex_with_ids(v).ok()?;
    let mut vertices = vec![v];
    vertices.extend(g.neighbors(v).iter().copied());
    if k.is_flag() {
        let h = complement_of_skeleton(g, &k, &ids)?;
        return Some(Plan {
            rule: Rule::StructureComplex,
            vertices,
            children: vec![h],
            combine: Combine::Susp,
            note: Some("flag".into()),
        });
    }
    Some(Plan {
        rule: Rule::StructureComplex,
        vertices,
        children: Vec::new(),
        combine: Combine::Leaf(HomotopyExpr::susp(HomotopyExpr::unknown_complex(k), 1)),
        note: Some("non-flag".into()),
    })
}

fn structure_rule(g: &Graph) -> Option<Plan> {
    g.vertices().find_map(|v| structure_plan(g, v))
}

/// The graph on the vertices of `k` (`ids[i]` behind complex vertex `i`)
/// whose edges are the pairs that are not edges of `k`.
fn complement_of_skeleton(g: &Graph, k: &SimplicialComplex, ids: &[Vertex]) -> Option<Graph> {
    let set: BTreeSet<Vertex> = ids.iter().copied().collect();
    let mut h = g.induced(&set);
    for (u, w) in h.edges() {
        h.remove_edge(u, w).ok()?;
    }
    let skel = k.one_skeleton();
    for i in 0..ids.len() {
        for j in i + 1..ids.len() {
            if skel[i] & (1u128 << j) == 0 {
                h.add_edge(ids[i], ids[j]).ok()?;
            }
        }
    }
    Some(h)
}

/// Replays a trace on `g`, checking each rule's preconditions, and returns
/// the resulting normalised expression.
pub fn replay(g: &Graph, trace: &ReductionTrace) -> Result<HomotopyExpr, ReplayError> {
    let mut pos = 0;
    let e = replay_node(g, 0, trace, &mut pos)?;
    if pos != trace.steps.len() {
        return Err(ReplayError::Trailing(trace.steps.len() - pos));
    }
    Ok(e.normalize())
}

fn replay_node(g: &Graph, id: usize, trace: &ReductionTrace, pos: &mut usize) -> Result<HomotopyExpr, ReplayError> {
    let step_no = *pos;
    let step = trace.steps.get(step_no).ok_or(ReplayError::Truncated(id))?;
    if step.problem != id {
        return Err(ReplayError::OutOfOrder { step: step_no, expected: id, found: step.problem });
    }
    *pos += 1;
    let bad = |reason: &str| ReplayError::Inapplicable { step: step_no, rule: step.rule, reason: reason.to_string() };
    let vs: Vec<Vertex> = step.vertices.iter().map(|&v| Vertex(v)).collect();
    let plan = rebuild(g, step.rule, &vs).ok_or_else(|| bad("preconditions fail"))?;
    if plan.children.len() != step.children.len() {
        return Err(bad("child count differs"));
    }
    let mut kids = Vec::with_capacity(plan.children.len());
    for (c, &cid) in plan.children.iter().zip(&step.children) {
        kids.push(replay_node(c, cid, trace, pos)?);
    }
    Ok(plan.combine.apply(kids))
}

fn rebuild(g: &Graph, rule: Rule, vs: &[Vertex]) -> Option<Plan> {
    let base = || base_rules(g).filter(|p| p.rule == rule);
    match rule {
        Rule::Loops | Rule::Components | Rule::Empty => base(),
        Rule::IsolatedVertex => {
            let v = *vs.first()?;
            (g.contains(v) && g.degree(v) == 0 && g.loops().is_empty())
                .then(|| simple(Rule::IsolatedVertex, vec![v], Vec::new(), Combine::Leaf(HomotopyExpr::Point)))
        }
        Rule::Path => path_rule(g).filter(|_| g.loops().is_empty()),
        Rule::Cycle => cycle_rule(g).filter(|_| g.loops().is_empty()),
        Rule::LeafPath3 => {
            let [w1, v1, v2, w2] = <[Vertex; 4]>::try_from(vs).ok()?;
            let ok = g.loops().is_empty()
                && g.degree(w1) == 1
                && g.degree(w2) == 1
                && g.has_edge(w1, v1)
                && g.has_edge(v1, v2)
                && g.has_edge(v2, w2)
                && w1 != w2;
            ok.then(|| simple(Rule::LeafPath3, vs.to_vec(), Vec::new(), Combine::Leaf(HomotopyExpr::Point)))
        }
        Rule::Leaf => {
            let p = leaf_plan(g, *vs.first()?)?;
            (g.loops().is_empty() && p.vertices == vs).then_some(p)
        }
        Rule::DominationDelete | Rule::DominationSplit => {
            let [v, w] = <[Vertex; 2]>::try_from(vs).ok()?;
            if !g.loops().is_empty() {
                return None;
            }
            domination_plan(g, v, w).filter(|p| p.rule == rule)
        }
        Rule::Degree2Move => degree2_plan(g, *vs.first()?),
        Rule::StructureComplex => structure_plan(g, *vs.first()?),
        Rule::Fallback => Some(simple(Rule::Fallback, Vec::new(), Vec::new(), Combine::Leaf(HomotopyExpr::unknown_graph(g.clone())))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy::homology_of_expr;

    #[test]
    fn hexagon_is_two_circles() {
        let (e, t) = classify(&Graph::cycle(6));
        assert_eq!(e, HomotopyExpr::spheres(&[1, 1]));
        assert_eq!(t.steps[0].rule, Rule::Cycle);
        let (e, _) = classify_with(&Graph::cycle(6), EngineOptions { closed_forms: false, structure_complex: true });
        assert_eq!(e, HomotopyExpr::spheres(&[1, 1]));
    }

    #[test]
    fn triangle_bouquet() {
        let (e, _) = classify(&Graph::triangle_bouquet(2));
        assert_eq!(e, HomotopyExpr::spheres(&[1, 0]));
    }

    #[test]
    fn two_hexagons() {
        let h = Graph::cycle(6);
        let g = h.wedge(Vertex(0), &h, Vertex(0)).unwrap();
        let (e, t) = classify(&g);
        assert_eq!(e, HomotopyExpr::spheres(&[3, 2]));
        assert_eq!(replay(&g, &t).unwrap(), e);
    }

    #[test]
    fn path_with_pendant() {
        // L_6 on 0..=6 with a pendant vertex 7 attached to the middle vertex.
        let mut edges: Vec<(u32, u32)> = (0..6).map(|i| (i, i + 1)).collect();
        edges.push((3, 7));
        let g = Graph::from_edges(8, &edges).unwrap();
        assert_eq!(classify(&g).0, HomotopyExpr::sphere(2));
    }

    #[test]
    fn macroscopic_cases() {
        assert_eq!(classify(&Graph::new()).0, HomotopyExpr::sphere(-1));
        assert_eq!(classify(&Graph::path(0)).0, HomotopyExpr::Point);
        let mut g = Graph::path(1);
        g.add_edge(Vertex(0), Vertex(0)).unwrap();
        assert_eq!(classify(&g).0, HomotopyExpr::Point);
    }

    #[test]
    fn closed_forms_match_rules() {
        let off = EngineOptions { closed_forms: false, structure_complex: false };
        for n in 0..20 {
            assert_eq!(classify_with(&Graph::path(n), off).0, path_closed_form(n), "path {n}");
        }
        for n in 3..20 {
            assert_eq!(classify_with(&Graph::cycle(n), off).0, cycle_closed_form(n), "cycle {n}");
        }
    }

    #[test]
    fn replay_rejects_tampering() {
        let g = Graph::spider(3, 2);
        let (_, mut t) = classify(&g);
        t.steps[0].vertices = vec![0, 1];
        assert!(replay(&g, &t).is_err());
        let (_, mut t) = classify(&g);
        t.steps.pop();
        assert!(replay(&g, &t).is_err());
    }

    #[test]
    fn structure_complex_on_petersen_like_graph() {
        // The Petersen graph has no leaf, no domination and no degree-2
        // vertex, so only the general move or the fallback applies.
        let outer: Vec<(u32, u32)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let spokes: Vec<(u32, u32)> = (0..5).map(|i| (i, i + 5)).collect();
        let inner: Vec<(u32, u32)> = (0..5).map(|i| (i + 5, (i + 2) % 5 + 5)).collect();
        let edges = [outer, spokes, inner].concat();
        let g = Graph::from_edges(10, &edges).unwrap();
        let (e, t) = classify(&g);
        assert!(t.steps.iter().any(|s| s.rule == Rule::StructureComplex));
        let k = crate::complexes::independence_complex(&g).unwrap();
        assert_eq!(homology_of_expr(&e), crate::homology::reduced_homology(&k));
        assert_eq!(replay(&g, &t).unwrap(), e);
    }
}
