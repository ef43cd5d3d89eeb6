use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complexes::{independence_complex, SimplicialComplex};
use crate::graphs::Graph;
use crate::homology::{reduced_homology, HomologyTable};

/// A residual the rewrite rules could not resolve; only its homology is
/// known, computed on demand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum Residual {
    /// Stands for the independence complex of the graph.
    Graph(Graph),
    Complex(SimplicialComplex),
}

impl Residual {
    pub fn vertex_count(&self) -> usize {
        match self {
            Residual::Graph(g) => g.vertex_count(),
            Residual::Complex(k) => k.vertex_count(),
        }
    }

    pub fn homology(&self) -> HomologyTable {
        match self {
            Residual::Graph(g) => match independence_complex(g) {
                Ok(k) => reduced_homology(&k),
                Err(e) => panic!("residual graph too large for homology: {e}"),
            },
            Residual::Complex(k) => reduced_homology(k),
        }
    }
}

/// Expressions over spheres built with wedge, join and suspension.
/// `Sphere { dim: -1 }` is the empty space, the unit for joins.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum HomotopyExpr {
    Sphere { dim: i64 },
    Point,
    Wedge { args: Vec<HomotopyExpr> },
    Join { args: Vec<HomotopyExpr> },
    Susp { arg: Box<HomotopyExpr>, count: u32 },
    Unknown { residual: Residual },
}

impl HomotopyExpr {
    pub fn sphere(dim: i64) -> Self {
        HomotopyExpr::Sphere { dim }
    }

    pub fn wedge(args: Vec<HomotopyExpr>) -> Self {
        HomotopyExpr::Wedge { args }
    }

    pub fn join(args: Vec<HomotopyExpr>) -> Self {
        HomotopyExpr::Join { args }
    }

    pub fn susp(arg: HomotopyExpr, count: u32) -> Self {
        HomotopyExpr::Susp { arg: Box::new(arg), count }
    }

    pub fn unknown_graph(g: Graph) -> Self {
        HomotopyExpr::Unknown { residual: Residual::Graph(g) }
    }

    pub fn unknown_complex(k: SimplicialComplex) -> Self {
        HomotopyExpr::Unknown { residual: Residual::Complex(k) }
    }

    /// A wedge of spheres with the given dimensions, normalised.
    pub fn spheres(dims: &[i64]) -> Self {
        HomotopyExpr::wedge(dims.iter().map(|&d| HomotopyExpr::sphere(d)).collect()).normalize()
    }

    pub fn has_unknown(&self) -> bool {
        match self {
            HomotopyExpr::Sphere { .. } | HomotopyExpr::Point => false,
            HomotopyExpr::Wedge { args } | HomotopyExpr::Join { args } => args.iter().any(Self::has_unknown),
            HomotopyExpr::Susp { arg, .. } => arg.has_unknown(),
            HomotopyExpr::Unknown { .. } => true,
        }
    }

    /// Sphere dimensions of a normalised expression without unknowns, in
    /// descending order; empty for a point.
    pub fn sphere_dims(&self) -> Option<Vec<i64>> {
        match self.normalize() {
            HomotopyExpr::Point => Some(Vec::new()),
            HomotopyExpr::Sphere { dim } => Some(vec![dim]),
            HomotopyExpr::Wedge { args } => args
                .iter()
                .map(|a| match a {
                    HomotopyExpr::Sphere { dim } => Some(*dim),
                    _ => None,
                })
                .collect(),
            _ => None,
        }
    }

    /// Rewrites to a normal form: spheres are combined by
    /// `S^a * S^b = S^{a+b+1}`, joins distribute over wedges, points are
    /// absorbed by wedges and absorb joins, `S^-1` is the join unit and is
    /// dropped from wedges with other summands. Wedge summands are spheres
    /// in descending dimension followed by unresolved parts in their
    /// original order. Idempotent.
    pub fn normalize(&self) -> HomotopyExpr {
        from_terms(terms(self))
    }
}

/// A normal form as a sum of wedge summands; `None` means a point.
/// Each summand is a sphere or an unresolved part with a suspension count.
#[derive(Clone, Debug)]
enum Term {
    Sphere(i64),
    /// `Susp^count(Join(atoms))`, with `atoms` non-empty unknowns.
    Other { atoms: Vec<HomotopyExpr>, count: u32 },
}

/// `None` is the point; `Some(vec![])` never occurs.
type Terms = Option<Vec<Term>>;

fn terms(e: &HomotopyExpr) -> Terms {
    match e {
        HomotopyExpr::Point => None,
        HomotopyExpr::Sphere { dim } => Some(vec![Term::Sphere(*dim)]),
        HomotopyExpr::Unknown { .. } => Some(vec![Term::Other { atoms: vec![e.clone()], count: 0 }]),
        HomotopyExpr::Susp { arg, count } => terms(arg).map(|ts| ts.into_iter().map(|t| shift(t, *count)).collect()),
        HomotopyExpr::Wedge { args } => wedge_terms(args.iter().map(terms)),
        HomotopyExpr::Join { args } => {
            let mut acc: Terms = Some(vec![Term::Sphere(-1)]);
            for a in args {
                acc = join_terms(acc, terms(a));
            }
            acc
        }
    }
}

fn shift(t: Term, k: u32) -> Term {
    match t {
        Term::Sphere(d) => Term::Sphere(d + k as i64),
        Term::Other { atoms, count } => Term::Other { atoms, count: count + k },
    }
}

fn wedge_terms(parts: impl Iterator<Item = Terms>) -> Terms {
    let mut all: Vec<Term> = parts.flatten().flatten().collect();
    if all.is_empty() {
        return None;
    }
    if all.iter().any(|t| !matches!(t, Term::Sphere(-1))) {
        all.retain(|t| !matches!(t, Term::Sphere(-1)));
    } else {
        all.truncate(1);
    }
    Some(all)
}

fn join_terms(a: Terms, b: Terms) -> Terms {
    let (a, b) = (a?, b?);
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in &a {
        for y in &b {
            out.push(join_term(x, y));
        }
    }
    wedge_terms(std::iter::once(Some(out)))
}

fn join_term(x: &Term, y: &Term) -> Term {
    match (x, y) {
        (Term::Sphere(a), Term::Sphere(b)) => Term::Sphere(a + b + 1),
        (Term::Sphere(a), Term::Other { atoms, count }) | (Term::Other { atoms, count }, Term::Sphere(a)) => {
            Term::Other { atoms: atoms.clone(), count: (*count as i64 + a + 1) as u32 }
        }
        (Term::Other { atoms: p, count: c }, Term::Other { atoms: q, count: d }) => {
            let mut atoms = p.clone();
            atoms.extend(q.iter().cloned());
            Term::Other { atoms, count: c + d }
        }
    }
}

fn from_terms(t: Terms) -> HomotopyExpr {
    let Some(ts) = t else { return HomotopyExpr::Point };
    let mut dims: Vec<i64> = ts
        .iter()
        .filter_map(|t| match t {
            Term::Sphere(d) => Some(*d),
            Term::Other { .. } => None,
        })
        .collect();
    dims.sort_unstable_by(|a, b| b.cmp(a));
    let mut args: Vec<HomotopyExpr> = dims.into_iter().map(HomotopyExpr::sphere).collect();
    for t in ts {
        if let Term::Other { atoms, count } = t {
            let inner = if atoms.len() == 1 {
                atoms.into_iter().next().expect("one atom")
            } else {
                HomotopyExpr::Join { args: atoms }
            };
            args.push(if count == 0 { inner } else { HomotopyExpr::susp(inner, count) });
        }
    }
    if args.len() == 1 {
        args.pop().expect("one summand")
    } else {
        HomotopyExpr::Wedge { args }
    }
}

/// Reduced homology of an expression. Resolved parts are counted;
/// unresolved parts are computed from their residuals and combined by the
/// Künneth formula for joins and direct sums for wedges.
pub fn homology_of_expr(e: &HomotopyExpr) -> HomologyTable {
    match e.normalize() {
        HomotopyExpr::Point => HomologyTable::new(),
        n => table(&n),
    }
}

fn table(e: &HomotopyExpr) -> HomologyTable {
    match e {
        HomotopyExpr::Point => HomologyTable::new(),
        HomotopyExpr::Sphere { dim } => HomologyTable::of_spheres(&[*dim]),
        HomotopyExpr::Wedge { args } => {
            let mut out = HomologyTable::new();
            for a in args {
                out = out.wedge(&table(a));
            }
            out
        }
        HomotopyExpr::Join { args } => {
            let mut out = HomologyTable::of_spheres(&[-1]);
            for a in args {
                out = out.join(&table(a));
            }
            out
        }
        HomotopyExpr::Susp { arg, count } => table(arg).shifted(*count as i64),
        HomotopyExpr::Unknown { residual } => residual.homology(),
    }
}

impl fmt::Display for HomotopyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomotopyExpr::Point => write!(f, "pt"),
            HomotopyExpr::Sphere { dim } => write!(f, "S{dim}"),
            HomotopyExpr::Wedge { args } => write_list(f, args, " v "),
            HomotopyExpr::Join { args } => write_list(f, args, " * "),
            HomotopyExpr::Susp { arg, count } => {
                if *count == 1 {
                    write!(f, "Susp({arg})")
                } else {
                    write!(f, "Susp^{count}({arg})")
                }
            }
            HomotopyExpr::Unknown { residual } => match residual {
                Residual::Graph(g) => write!(f, "?graph({})", g.vertex_count()),
                Residual::Complex(k) => write!(f, "?complex({})", k.vertex_count()),
            },
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, args: &[HomotopyExpr], sep: &str) -> fmt::Result {
    if args.is_empty() {
        return write!(f, "{}", if sep == " v " { "pt" } else { "S-1" });
    }
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            write!(f, "{sep}")?;
        }
        match a {
            HomotopyExpr::Wedge { .. } | HomotopyExpr::Join { .. } => write!(f, "({a})")?,
            _ => write!(f, "{a}")?,
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use HomotopyExpr as E;

    fn s(d: i64) -> E {
        E::sphere(d)
    }

    #[test]
    fn sphere_arithmetic() {
        assert_eq!(E::join(vec![s(1), s(1)]).normalize(), s(3));
        assert_eq!(E::susp(E::wedge(vec![s(1), s(0)]), 1).normalize(), E::wedge(vec![s(2), s(1)]));
        assert_eq!(E::wedge(vec![E::Point, s(2)]).normalize(), s(2));
        assert_eq!(E::join(vec![s(4), s(-1)]).normalize(), s(4));
        assert_eq!(E::join(vec![s(4), E::Point]).normalize(), E::Point);
        assert_eq!(E::wedge(vec![s(-1), s(0)]).normalize(), s(0));
        assert_eq!(E::wedge(vec![]).normalize(), E::Point);
        assert_eq!(E::join(vec![]).normalize(), s(-1));
    }

    #[test]
    fn join_distributes_over_wedge() {
        let e = E::join(vec![E::wedge(vec![s(0), s(1)]), s(1)]);
        assert_eq!(e.normalize(), E::wedge(vec![s(3), s(2)]));
        let e = E::join(vec![E::wedge(vec![s(0), s(0)]), E::wedge(vec![s(0), s(0)])]);
        assert_eq!(e.normalize().sphere_dims(), Some(vec![1, 1, 1, 1]));
    }

    #[test]
    fn unknowns_are_kept_in_order() {
        let u = E::unknown_graph(Graph::cycle(7));
        let v = E::unknown_graph(Graph::cycle(8));
        let e = E::wedge(vec![E::susp(u.clone(), 1), s(2), E::join(vec![s(0), v.clone()])]);
        let n = e.normalize();
        assert_eq!(n, E::wedge(vec![s(2), E::susp(u.clone(), 1), E::susp(v.clone(), 1)]));
        assert_eq!(n.normalize(), n);
        let j = E::join(vec![u.clone(), E::susp(v.clone(), 2)]).normalize();
        assert_eq!(j, E::susp(E::join(vec![u, v]), 2));
        assert_eq!(j.normalize(), j);
    }

    #[test]
    fn display() {
        assert_eq!(E::spheres(&[1, 3, 2]).to_string(), "S3 v S2 v S1");
        assert_eq!(E::Point.to_string(), "pt");
        assert_eq!(s(-1).to_string(), "S-1");
        let u = E::susp(E::unknown_graph(Graph::cycle(4)), 2);
        assert_eq!(u.to_string(), "Susp^2(?graph(4))");
    }

    #[test]
    fn homology_counts_spheres() {
        assert_eq!(homology_of_expr(&E::spheres(&[1, 1])), HomologyTable::of_spheres(&[1, 1]));
        assert_eq!(homology_of_expr(&s(-1)), HomologyTable::of_spheres(&[-1]));
        assert!(homology_of_expr(&E::Point).is_trivial());
    }

    #[test]
    fn homology_of_unknown_residual() {
        let e = E::susp(E::unknown_graph(Graph::cycle(6)), 1);
        assert_eq!(homology_of_expr(&e), HomologyTable::of_spheres(&[2, 2]));
    }

    #[test]
    fn json_shape() {
        let e = E::wedge(vec![s(1), E::susp(E::Point, 2)]);
        let j = serde_json::to_string(&e).unwrap();
        assert_eq!(
            j,
            r#"{"op":"wedge","args":[{"op":"sphere","dim":1},{"op":"susp","arg":{"op":"point"},"count":2}]}"#
        );
        let back: E = serde_json::from_str(&j).unwrap();
        assert_eq!(back, e);
    }
}
