//! Exact integral reduced simplicial homology.
//!
//! Chain groups run from degree `-1` (the empty simplex) upward, so the
//! empty complex has `H̃_{-1} = Z` and every non-empty complex has
//! `H̃_{-1} = 0`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::de::{self, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::bits::ones;
use crate::complexes::{Simplex, SimplicialComplex};

mod matrix;
mod modp;
mod snf;

pub use matrix::IntegerMatrix;
pub use modp::{rank_mod_p, rank_over_q};
pub use snf::{invariant_factors_i64, normalize_diagonal, smith_normal_form};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("degree {degree} is outside -1..={dim}")]
    DegreeOutOfRange { degree: i64, dim: i64 },
}

/// One homology group `Z^rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k` with `t_i | t_{i+1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub rank: u64,
    #[serde(serialize_with = "ser_torsion", deserialize_with = "de_torsion")]
    pub torsion: Vec<BigUint>,
}

impl HomologyGroup {
    pub fn free(rank: u64) -> Self {
        HomologyGroup { rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Reduced homology by degree; only non-zero groups are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyTable {
    degrees: BTreeMap<i64, HomologyGroup>,
}

impl HomologyTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Homology of a wedge of spheres with the given dimensions, where
    /// `-1` stands for the empty complex.
    pub fn of_spheres(dims: &[i64]) -> Self {
        let mut t = HomologyTable::new();
        for &d in dims {
            t.add_free(d, 1);
        }
        t
    }

    pub fn insert(&mut self, degree: i64, group: HomologyGroup) {
        if group.is_zero() {
            self.degrees.remove(&degree);
        } else {
            self.degrees.insert(degree, group);
        }
    }

    pub fn add_free(&mut self, degree: i64, rank: u64) {
        if rank > 0 {
            self.degrees.entry(degree).or_default().rank += rank;
        }
    }

    pub fn get(&self, degree: i64) -> HomologyGroup {
        self.degrees.get(&degree).cloned().unwrap_or_default()
    }

    pub fn rank(&self, degree: i64) -> u64 {
        self.degrees.get(&degree).map_or(0, |g| g.rank)
    }

    pub fn degrees(&self) -> &BTreeMap<i64, HomologyGroup> {
        &self.degrees
    }

    /// True when all groups vanish (a contractible complex, say).
    pub fn is_trivial(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.degrees.values().all(|g| g.torsion.is_empty())
    }

    /// `Σ (-1)^d rank H̃_d`; equals the reduced Euler characteristic.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .map(|(&d, g)| if d.rem_euclid(2) == 0 { g.rank as i64 } else { -(g.rank as i64) })
            .sum()
    }

    /// Homology of the `k`-fold suspension.
    pub fn shifted(&self, k: i64) -> Self {
        HomologyTable { degrees: self.degrees.iter().map(|(&d, g)| (d + k, g.clone())).collect() }
    }

    /// Sphere dimensions with multiplicity, if the table is torsion-free.
    pub fn sphere_dims(&self) -> Option<Vec<i64>> {
        if !self.is_torsion_free() {
            return None;
        }
        let mut out = Vec::new();
        for (&d, g) in self.degrees.iter().rev() {
            out.extend(std::iter::repeat_n(d, g.rank as usize));
        }
        Some(out)
    }

    /// Homology of a one-point union of non-empty complexes: degreewise
    /// direct sum, ignoring degree `-1`.
    pub fn wedge(&self, other: &HomologyTable) -> HomologyTable {
        let mut out = HomologyTable::new();
        for t in [self, other] {
            for (&d, g) in &t.degrees {
                if d < 0 {
                    continue;
                }
                let e = out.degrees.entry(d).or_default();
                e.rank += g.rank;
                e.torsion.extend(g.torsion.iter().cloned());
            }
        }
        for g in out.degrees.values_mut() {
            g.torsion = normalize_torsion(std::mem::take(&mut g.torsion));
        }
        out
    }

    /// Homology of a join via the Künneth formula for reduced homology:
    /// `H̃_{n+1}(A * B) = ⊕_{i+j=n} H̃_i(A) ⊗ H̃_j(B) ⊕ ⊕_{i+j=n-1} Tor(H̃_i(A), H̃_j(B))`.
    pub fn join(&self, other: &HomologyTable) -> HomologyTable {
        let mut acc: BTreeMap<i64, (u64, Vec<BigUint>)> = BTreeMap::new();
        for (&i, a) in &self.degrees {
            for (&j, b) in &other.degrees {
                let tensor = acc.entry(i + j + 1).or_default();
                tensor.0 += a.rank * b.rank;
                for t in &a.torsion {
                    tensor.1.extend(std::iter::repeat_n(t.clone(), b.rank as usize));
                }
                for t in &b.torsion {
                    tensor.1.extend(std::iter::repeat_n(t.clone(), a.rank as usize));
                }
                for s in &a.torsion {
                    for t in &b.torsion {
                        tensor.1.push(s.gcd(t));
                    }
                }
                let tor = acc.entry(i + j + 2).or_default();
                for s in &a.torsion {
                    for t in &b.torsion {
                        tor.1.push(s.gcd(t));
                    }
                }
            }
        }
        let mut out = HomologyTable::new();
        for (d, (rank, torsion)) in acc {
            out.insert(d, HomologyGroup { rank, torsion: normalize_torsion(torsion) });
        }
        out
    }
}

fn normalize_torsion(t: Vec<BigUint>) -> Vec<BigUint> {
    normalize_diagonal(t).into_iter().filter(|x| !x.is_one()).collect()
}

impl fmt::Display for HomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degrees.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.degrees.iter().map(|(d, g)| format!("H{d} = {g}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl Serialize for HomologyTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Degrees<'a>(&'a BTreeMap<i64, HomologyGroup>);
        impl Serialize for Degrees<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut m = serializer.serialize_map(Some(self.0.len()))?;
                for (d, g) in self.0 {
                    m.serialize_entry(&d.to_string(), g)?;
                }
                m.end()
            }
        }
        let mut m = serializer.serialize_map(Some(1))?;
        m.serialize_entry("degrees", &Degrees(&self.degrees))?;
        m.end()
    }
}

impl<'de> Deserialize<'de> for HomologyTable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            degrees: BTreeMap<String, HomologyGroup>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let mut t = HomologyTable::new();
        for (k, g) in raw.degrees {
            let d: i64 = k.parse().map_err(|_| de::Error::custom(format!("degree key {k:?} is not an integer")))?;
            if d < -1 {
                return Err(de::Error::custom(format!("degree {d} below -1")));
            }
            t.insert(d, g);
        }
        Ok(t)
    }
}

fn ser_torsion<S: Serializer>(t: &[BigUint], serializer: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut s = serializer.serialize_seq(Some(t.len()))?;
    for x in t {
        match x.to_u64() {
            Some(v) => s.serialize_element(&v)?,
            None => s.serialize_element(&x.to_string())?,
        }
    }
    s.end()
}

fn de_torsion<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Vec<BigUint>, D::Error> {
    struct V;
    impl<'de> Visitor<'de> for V {
        type Value = Vec<BigUint>;
        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            write!(f, "a list of integers > 1 (numbers or decimal strings)")
        }
        fn visit_seq<A: de::SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
            #[derive(Deserialize)]
            #[serde(untagged)]
            enum Num {
                N(u64),
                S(String),
            }
            let mut out = Vec::new();
            while let Some(n) = seq.next_element::<Num>()? {
                let v = match n {
                    Num::N(v) => BigUint::from(v),
                    Num::S(s) => s.parse().map_err(|_| de::Error::custom(format!("bad integer {s:?}")))?,
                };
                if v <= BigUint::one() {
                    return Err(de::Error::custom("torsion factors must exceed 1"));
                }
                out.push(v);
            }
            Ok(out)
        }
    }
    deserializer.deserialize_seq(V)
}

/// Sparse boundary columns of `∂_d` over the given simplex levels, where
/// `levels[d + 1]` lists the `d`-simplices. `∂_0` is the augmentation.
fn boundary_columns(levels: &[Vec<Simplex>], d: i64) -> (usize, Vec<Vec<(usize, i64)>>) {
    if d < 0 {
        return (0, vec![Vec::new(); levels.first().map_or(0, Vec::len)]);
    }
    let d = d as usize;
    let rows = &levels[d];
    let cols = &levels[d + 1];
    let index: HashMap<Simplex, usize> = rows.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let columns = cols
        .iter()
        .map(|&s| {
            let mut c: Vec<(usize, i64)> = ones(s)
                .enumerate()
                .map(|(pos, v)| {
                    let face = s & !(1u128 << v);
                    (index[&face], if pos % 2 == 0 { 1 } else { -1 })
                })
                .collect();
            c.sort_unstable();
            c
        })
        .collect();
    (rows.len(), columns)
}

/// The boundary matrix `∂_d : C_d → C_{d-1}` for `-1 <= d <= dim`, with
/// simplices in the order of [`SimplicialComplex::simplices`].
pub fn boundary_matrix(k: &SimplicialComplex, d: i64) -> Result<IntegerMatrix, HomologyError> {
    if d < -1 || d > k.dim() {
        return Err(HomologyError::DegreeOutOfRange { degree: d, dim: k.dim() });
    }
    let levels = k.simplices();
    let (nrows, cols) = boundary_columns(&levels, d);
    Ok(IntegerMatrix::from_i64_columns(nrows, cols))
}

/// Reduced integral homology of a complex.
pub fn reduced_homology(k: &SimplicialComplex) -> HomologyTable {
    let levels = k.simplices();
    let top = levels.len() as i64 - 2;
    // Invariant factors of ∂_d for d = 0..=top, computed in parallel.
    let factors: Vec<Vec<BigUint>> = (0..=top)
        .into_par_iter()
        .map(|d| {
            let (nrows, cols) = boundary_columns(&levels, d);
            snf::invariant_factors_i64(nrows, &cols)
        })
        .collect();
    let rank = |d: i64| -> u64 {
        if d < 0 || d > top {
            0
        } else {
            factors[d as usize].len() as u64
        }
    };
    let mut t = HomologyTable::new();
    for d in -1..=top {
        let f = levels[(d + 1) as usize].len() as u64;
        let free = f - rank(d) - rank(d + 1);
        let torsion = if d < top {
            factors[(d + 1) as usize].iter().filter(|x| !x.is_one()).cloned().collect()
        } else {
            Vec::new()
        };
        t.insert(d, HomologyGroup { rank: free, torsion });
    }
    t
}

/// Dimensions of `H̃_d(K; Z/p)` for `d = -1..=dim`, indexed by `d + 1`.
pub fn reduced_betti_mod_p(k: &SimplicialComplex, p: u64) -> Vec<u64> {
    let levels = k.simplices();
    let top = levels.len() as i64 - 2;
    let ranks: Vec<u64> = (0..=top)
        .into_par_iter()
        .map(|d| {
            let (nrows, cols) = boundary_columns(&levels, d);
            rank_mod_p(nrows, &cols, p)
        })
        .collect();
    let rank = |d: i64| if d < 0 || d > top { 0 } else { ranks[d as usize] };
    (-1..=top).map(|d| levels[(d + 1) as usize].len() as u64 - rank(d) - rank(d + 1)).collect()
}

/// Mod-`p` Betti numbers predicted by the universal coefficient theorem.
pub fn predicted_betti_mod_p(t: &HomologyTable, dim: i64, p: u64) -> Vec<u64> {
    let divisible = |d: i64| -> u64 {
        t.get(d).torsion.iter().filter(|x| (*x % p).is_zero()).count() as u64
    };
    (-1..=dim).map(|d| t.rank(d) + divisible(d) + divisible(d - 1)).collect()
}

/// Checks an integral table against direct computations over `Z/2` and `Z/3`.
pub fn cross_check_mod_p(k: &SimplicialComplex, t: &HomologyTable) -> bool {
    [2u64, 3].iter().all(|&p| reduced_betti_mod_p(k, p) == predicted_betti_mod_p(t, k.dim(), p))
}

pub fn is_torsion_free(t: &HomologyTable) -> bool {
    t.is_torsion_free()
}
