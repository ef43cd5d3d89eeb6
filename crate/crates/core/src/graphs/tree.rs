//! Trees and forests: classification by the leaf rule and two sufficient
//! divisibility criteria.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{Graph, GraphError, Vertex};
use crate::homotopy::HomotopyExpr;

/// Homotopy type of the independence complex of a forest: a point or a
/// single sphere. Repeatedly removes the closed star of a preleaf, which
/// suspends the complex, until the graph is empty or has an isolated
/// vertex.
pub fn classify_tree(t: &Graph) -> Result<HomotopyExpr, GraphError> {
    if !t.is_forest() {
        return Err(GraphError::NotAForest);
    }
    let mut g = t.clone();
    let mut suspensions: i64 = 0;
    loop {
        if g.is_empty() {
            return Ok(HomotopyExpr::Sphere { dim: suspensions - 1 });
        }
        if g.vertices().any(|v| g.degree(v) == 0) {
            return Ok(HomotopyExpr::Point);
        }
        let leaf = g.vertices().find(|&v| g.degree(v) == 1).expect("a forest without isolated vertices has a leaf");
        let pre = *g.neighbors(leaf).iter().next().expect("degree one");
        g = g.delete_star(pre)?;
        suspensions += 1;
    }
}

fn distances(g: &Graph, from: Vertex) -> BTreeMap<Vertex, usize> {
    let mut dist = BTreeMap::from([(from, 0)]);
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        let d = dist[&u];
        for &x in g.neighbors(u) {
            if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(x) {
                e.insert(d + 1);
                queue.push_back(x);
            }
        }
    }
    dist
}

fn leaves(g: &Graph, comp: &BTreeSet<Vertex>) -> Vec<Vertex> {
    comp.iter().copied().filter(|&v| g.degree(v) == 1).collect()
}

/// True when no path between two distinct leaves of the same component
/// has length divisible by three and no component is a single vertex.
/// Such forests have a sphere as independence complex.
pub fn sphere_criterion(t: &Graph) -> Result<bool, GraphError> {
    if !t.is_forest() {
        return Err(GraphError::NotAForest);
    }
    for comp in t.components() {
        if comp.len() == 1 {
            return Ok(false);
        }
        let ls = leaves(t, &comp);
        for (i, &a) in ls.iter().enumerate() {
            let d = distances(t, a);
            if ls[i + 1..].iter().any(|b| d[b] % 3 == 0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True when some component has a vertex whose distance to every leaf of
/// its component is divisible by three. A single vertex counts as its own
/// leaf. Such forests have a contractible independence complex.
pub fn contractible_criterion(t: &Graph) -> Result<bool, GraphError> {
    if !t.is_forest() {
        return Err(GraphError::NotAForest);
    }
    for comp in t.components() {
        if comp.len() == 1 {
            return Ok(true);
        }
        let ls = leaves(t, &comp);
        for &x in &comp {
            let d = distances(t, x);
            if ls.iter().all(|l| d[l] % 3 == 0) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
