//! Finite abstract simplicial complexes stored by their facets.
//!
//! Every complex contains the empty simplex. The complex whose only simplex
//! is the empty one is the empty complex, written `S^-1`. Vertices are kept
//! in a fixed order; that order is the global vertex order used for
//! boundary signs in [`crate::homology`].

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::bits::{bit, maximal_cliques, ones, Mask};
use crate::graphs::{Graph, Vertex};

/// A simplex as a bitmask over the vertex indices of its complex.
pub type Simplex = u128;

/// Largest vertex count a complex can hold.
pub const MAX_VERTICES: usize = 128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("complex would have {0} vertices, at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("vertex {0:?} is not in the complex")]
    MissingVertex(String),
    #[error("facet refers to vertex index {0} out of range")]
    BadIndex(usize),
    #[error("duplicate vertex name {0:?}")]
    DuplicateVertex(String),
}

#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    facets: Vec<Simplex>,
}

/// A vertex renamed while combining two complexes with clashing names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rename {
    pub from: String,
    pub to: String,
}

impl SimplicialComplex {
    /// The empty complex `S^-1`.
    pub fn empty() -> Self {
        SimplicialComplex { vertices: Vec::new(), facets: vec![0] }
    }

    /// The one-vertex complex.
    pub fn point(name: impl Into<String>) -> Self {
        SimplicialComplex { vertices: vec![name.into()], facets: vec![1] }
    }

    /// Two isolated vertices.
    pub fn sphere0(a: impl Into<String>, b: impl Into<String>) -> Self {
        SimplicialComplex { vertices: vec![a.into(), b.into()], facets: vec![1, 2] }
    }

    /// Boundary of the simplex on `n + 2` vertices, a triangulated `S^n`.
    pub fn sphere_boundary(n: usize, prefix: &str) -> Result<Self, ComplexError> {
        let k = n + 2;
        let names = (0..k).map(|i| format!("{prefix}{i}")).collect();
        let full = (0..k).fold(0u128, |m, i| m | bit(i));
        let facets = (0..k).map(|i| full & !bit(i)).collect();
        Self::from_masks(names, facets)
    }

    /// Builds a complex from vertex names and facets given as index lists.
    /// Non-maximal facets are discarded and unused vertices dropped.
    pub fn from_facets(vertices: Vec<String>, facets: &[Vec<usize>]) -> Result<Self, ComplexError> {
        if vertices.len() > MAX_VERTICES {
            return Err(ComplexError::TooManyVertices(vertices.len()));
        }
        let mut masks = Vec::with_capacity(facets.len());
        for f in facets {
            let mut m = 0u128;
            for &i in f {
                if i >= vertices.len() {
                    return Err(ComplexError::BadIndex(i));
                }
                m |= bit(i);
            }
            masks.push(m);
        }
        Self::from_masks(vertices, masks)
    }

    /// Builds a complex from facets given by vertex names. The vertex order
    /// is the order of first appearance.
    pub fn from_named_facets<S: AsRef<str>>(facets: &[Vec<S>]) -> Result<Self, ComplexError> {
        let mut names: Vec<String> = Vec::new();
        let mut index: BTreeMap<String, usize> = BTreeMap::new();
        let mut idx_facets = Vec::with_capacity(facets.len());
        for f in facets {
            let mut ids = Vec::with_capacity(f.len());
            for v in f {
                let v = v.as_ref();
                let i = *index.entry(v.to_string()).or_insert_with(|| {
                    names.push(v.to_string());
                    names.len() - 1
                });
                ids.push(i);
            }
            idx_facets.push(ids);
        }
        Self::from_facets(names, &idx_facets)
    }

    pub(crate) fn from_masks(vertices: Vec<String>, facets: Vec<Simplex>) -> Result<Self, ComplexError> {
        if vertices.len() > MAX_VERTICES {
            return Err(ComplexError::TooManyVertices(vertices.len()));
        }
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(ComplexError::DuplicateVertex(v.clone()));
            }
        }
        let maximal = maximal_only(facets);
        let used = maximal.iter().fold(0u128, |m, f| m | f);
        let n = vertices.len();
        if used == low_mask(n) {
            return Ok(SimplicialComplex { vertices, facets: maximal });
        }
        // Drop unused vertices and reindex.
        let keep: Vec<usize> = ones(used).collect();
        let mut remap = vec![usize::MAX; n];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new;
        }
        let names = keep.iter().map(|&i| vertices[i].clone()).collect();
        let facets = maximal
            .into_iter()
            .map(|f| ones(f).fold(0u128, |m, i| m | bit(remap[i])))
            .collect();
        Ok(SimplicialComplex { vertices: names, facets: maximal_only(facets) })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn is_empty_complex(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Dimension; `-1` for the empty complex.
    pub fn dim(&self) -> i64 {
        self.facets.iter().map(|f| f.count_ones() as i64).max().unwrap_or(0) - 1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    /// Names of the vertices of a simplex, in vertex order.
    pub fn simplex_names(&self, s: Simplex) -> Vec<&str> {
        ones(s).map(|i| self.vertices[i].as_str()).collect()
    }

    /// Facets as sets of names, independent of the vertex order.
    pub fn facet_name_sets(&self) -> BTreeSet<BTreeSet<String>> {
        self.facets
            .iter()
            .map(|&f| ones(f).map(|i| self.vertices[i].clone()).collect())
            .collect()
    }

    pub fn contains_simplex(&self, s: Simplex) -> bool {
        self.facets.iter().any(|&f| f & s == s)
    }

    /// All simplices grouped by dimension: entry `d + 1` holds the
    /// `d`-simplices in increasing mask order, entry 0 the empty simplex.
    pub fn simplices(&self) -> Vec<Vec<Simplex>> {
        let top = (self.dim() + 2) as usize;
        let mut seen: HashSet<Simplex> = HashSet::new();
        for &f in &self.facets {
            let mut sub = f;
            loop {
                seen.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f;
            }
        }
        let mut levels = vec![Vec::new(); top];
        for s in seen {
            levels[s.count_ones() as usize].push(s);
        }
        for l in &mut levels {
            l.sort_unstable();
        }
        levels
    }

    /// Face counts `f_{-1}, f_0, f_1, ...`.
    pub fn f_vector(&self) -> Vec<u64> {
        self.simplices().iter().map(|l| l.len() as u64).collect()
    }

    /// `sum_{d >= 0} (-1)^d f_d - 1`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 1 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// The 1-skeleton as adjacency masks.
    pub fn one_skeleton(&self) -> Vec<Mask> {
        let mut adj = vec![0u128; self.vertices.len()];
        for &f in &self.facets {
            for i in ones(f) {
                adj[i] |= f & !bit(i);
            }
        }
        adj
    }

    /// True iff every clique of the 1-skeleton spans a simplex, i.e. all
    /// minimal non-faces have two vertices.
    pub fn is_flag(&self) -> bool {
        maximal_cliques(&self.one_skeleton()).into_iter().all(|c| self.contains_simplex(c))
    }

    /// Join, renaming clashing vertices of `other`.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex, ComplexError> {
        self.join_renamed(other).map(|(k, _)| k)
    }

    /// Join together with the list of renamings applied to `other`.
    pub fn join_renamed(&self, other: &SimplicialComplex) -> Result<(SimplicialComplex, Vec<Rename>), ComplexError> {
        let n1 = self.vertices.len();
        let total = n1 + other.vertices.len();
        if total > MAX_VERTICES {
            return Err(ComplexError::TooManyVertices(total));
        }
        let (names, renames) = merge_names(&self.vertices, &other.vertices);
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for &f in &self.facets {
            for &g in &other.facets {
                facets.push(f | (g << n1));
            }
        }
        Ok((SimplicialComplex::from_masks(names, facets)?, renames))
    }

    pub fn cone(&self, apex: &str) -> Result<SimplicialComplex, ComplexError> {
        self.join(&SimplicialComplex::point(apex))
    }

    pub fn suspension(&self) -> Result<SimplicialComplex, ComplexError> {
        self.join(&SimplicialComplex::sphere0("N", "S"))
    }

    /// One-point union identifying `v1` in `self` with `v2` in `other`.
    pub fn wedge_at(&self, v1: &str, other: &SimplicialComplex, v2: &str) -> Result<SimplicialComplex, ComplexError> {
        let base1 = self.index_of(v1).ok_or_else(|| ComplexError::MissingVertex(v1.to_string()))?;
        let base2 = other.index_of(v2).ok_or_else(|| ComplexError::MissingVertex(v2.to_string()))?;
        let rest: Vec<String> = other
            .vertices
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != base2)
            .map(|(_, v)| v.clone())
            .collect();
        let n1 = self.vertices.len();
        let total = n1 + rest.len();
        if total > MAX_VERTICES {
            return Err(ComplexError::TooManyVertices(total));
        }
        let (names, _) = merge_names(&self.vertices, &rest);
        let map = |i: usize| -> usize {
            match i.cmp(&base2) {
                std::cmp::Ordering::Equal => base1,
                std::cmp::Ordering::Less => n1 + i,
                std::cmp::Ordering::Greater => n1 + i - 1,
            }
        };
        let mut facets = self.facets.clone();
        for &g in &other.facets {
            facets.push(ones(g).fold(0u128, |m, i| m | bit(map(i))));
        }
        SimplicialComplex::from_masks(names, facets)
    }

    /// Disjoint union.
    pub fn disjoint_union(&self, other: &SimplicialComplex) -> Result<SimplicialComplex, ComplexError> {
        let n1 = self.vertices.len();
        let total = n1 + other.vertices.len();
        if total > MAX_VERTICES {
            return Err(ComplexError::TooManyVertices(total));
        }
        let (names, _) = merge_names(&self.vertices, &other.vertices);
        let mut facets: Vec<Simplex> = self.facets.iter().copied().filter(|&f| f != 0).collect();
        facets.extend(other.facets.iter().filter(|&&g| g != 0).map(|&g| g << n1));
        if facets.is_empty() {
            facets.push(0);
        }
        SimplicialComplex::from_masks(names, facets)
    }

    /// The subcomplex of all simplices for which `keep` holds. `keep` must
    /// be closed under taking faces for the result to mean anything.
    pub fn filter_simplices(&self, keep: impl Fn(Simplex) -> bool) -> Result<SimplicialComplex, ComplexError> {
        let kept: Vec<Simplex> = self.simplices().into_iter().flatten().filter(|&s| keep(s)).collect();
        let facets = if kept.is_empty() { vec![0] } else { kept };
        SimplicialComplex::from_masks(self.vertices.clone(), facets)
    }
}

/// Independence complex: simplices are the independent sets of `g` after
/// discarding looped vertices. Vertex order follows vertex ids.
pub fn independence_complex(g: &Graph) -> Result<SimplicialComplex, ComplexError> {
    independence_complex_with_ids(g).map(|(k, _)| k)
}

/// Independence complex together with the graph vertex behind each complex
/// vertex index. Vertex names are display names, or plain ids when display
/// names collide.
pub fn independence_complex_with_ids(g: &Graph) -> Result<(SimplicialComplex, Vec<Vertex>), ComplexError> {
    let live: Vec<_> = g.vertices().filter(|&v| !g.has_loop(v)).collect();
    if live.len() > MAX_VERTICES {
        return Err(ComplexError::TooManyVertices(live.len()));
    }
    let index: BTreeMap<_, _> = live.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let full = low_mask(live.len());
    let mut non_adj = vec![0u128; live.len()];
    for (i, &v) in live.iter().enumerate() {
        let mut nb = 0u128;
        for u in g.neighbors(v) {
            if let Some(&j) = index.get(u) {
                nb |= bit(j);
            }
        }
        non_adj[i] = full & !nb & !bit(i);
    }
    let facets = maximal_cliques(&non_adj);
    let mut names: Vec<String> = live.iter().map(|&v| g.name(v)).collect();
    if names.iter().collect::<HashSet<_>>().len() != names.len() {
        names = live.iter().map(|v| v.0.to_string()).collect();
    }
    // Every live vertex lies in a maximal independent set, so indices are kept.
    Ok((SimplicialComplex::from_masks(names, facets)?, live))
}

fn low_mask(n: usize) -> Mask {
    if n >= 128 {
        Mask::MAX
    } else {
        bit(n) - 1
    }
}

fn maximal_only(mut facets: Vec<Simplex>) -> Vec<Simplex> {
    facets.sort_unstable_by(|a, b| b.count_ones().cmp(&a.count_ones()).then(a.cmp(b)));
    facets.dedup();
    let mut kept: Vec<Simplex> = Vec::with_capacity(facets.len());
    for f in facets {
        if !kept.iter().any(|&k| k & f == f) {
            kept.push(f);
        }
    }
    if kept.is_empty() {
        kept.push(0);
    }
    kept.sort_unstable();
    kept
}

fn merge_names(first: &[String], second: &[String]) -> (Vec<String>, Vec<Rename>) {
    let mut taken: HashSet<String> = first.iter().cloned().collect();
    let mut names = first.to_vec();
    let mut renames = Vec::new();
    for v in second {
        let mut name = v.clone();
        while taken.contains(&name) {
            name.push('\'');
        }
        if &name != v {
            renames.push(Rename { from: v.clone(), to: name.clone() });
        }
        taken.insert(name.clone());
        names.push(name);
    }
    (names, renames)
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let facets: Vec<Vec<&str>> = self.facets.iter().map(|&s| self.simplex_names(s)).collect();
        f.debug_struct("SimplicialComplex").field("facets", &facets).finish()
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, &s) in self.facets.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[{}]", self.simplex_names(s).join(" "))?;
        }
        write!(f, "}}")
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    facets: Vec<Vec<String>>,
}

impl Serialize for SimplicialComplex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let facets = self
            .facets
            .iter()
            .map(|&s| self.simplex_names(s).into_iter().map(String::from).collect())
            .collect();
        ComplexJson { facets }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = ComplexJson::deserialize(deserializer)?;
        if raw.facets.is_empty() {
            return Err(serde::de::Error::custom("a complex needs at least the empty facet"));
        }
        SimplicialComplex::from_named_facets(&raw.facets).map_err(serde::de::Error::custom)
    }
}
