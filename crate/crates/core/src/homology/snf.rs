//! Smith normal form invariant factors of sparse integer matrices.
//!
//! Elimination runs over checked `i64` first; any overflow restarts the
//! whole computation over `BigInt`, so results are always exact.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::IntegerMatrix;

/// Integer arithmetic used by the elimination. Every fallible operation
/// returns `None` on overflow.
pub(crate) trait Entry: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// `self - f * x`.
    fn sub_mul(&self, f: &Self, x: &Self) -> Option<Self>;
    /// Truncated quotient.
    fn quot(&self, d: &Self) -> Option<Self>;
    fn cmp_abs(&self, other: &Self) -> Ordering;
    fn abs_big(&self) -> BigUint;
}

#[derive(Debug)]
pub(crate) struct Overflow;

impl Entry for i64 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn sub_mul(&self, f: &Self, x: &Self) -> Option<Self> {
        self.checked_sub(f.checked_mul(*x)?)
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        self.checked_div(*d)
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn abs_big(&self) -> BigUint {
        BigUint::from(self.unsigned_abs())
    }
}

impl Entry for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn sub_mul(&self, f: &Self, x: &Self) -> Option<Self> {
        Some(self - f * x)
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        Some(self / d)
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn abs_big(&self) -> BigUint {
        self.magnitude().clone()
    }
}

/// Sparse column, sorted by row.
type Col<T> = Vec<(usize, T)>;

/// Invariant factors `d_1 | d_2 | ... | d_r` of a matrix given as sparse
/// columns of `i64` entries, in increasing order. Their count is the rank.
pub fn invariant_factors_i64(nrows: usize, cols: &[Vec<(usize, i64)>]) -> Vec<BigUint> {
    match eliminate::<i64>(nrows, cols.to_vec()) {
        Ok(d) => d,
        Err(Overflow) => {
            let big: Vec<Col<BigInt>> = cols
                .iter()
                .map(|c| c.iter().map(|(r, v)| (*r, BigInt::from(*v))).collect())
                .collect();
            eliminate::<BigInt>(nrows, big).expect("big integers do not overflow")
        }
    }
}

/// Invariant factors of an [`IntegerMatrix`].
pub fn smith_normal_form(m: &IntegerMatrix) -> Vec<BigUint> {
    if let Some(small) = m.to_i64_columns() {
        return invariant_factors_i64(m.nrows(), &small);
    }
    eliminate::<BigInt>(m.nrows(), m.columns().to_vec()).expect("big integers do not overflow")
}

fn eliminate<T: Entry>(nrows: usize, mut cols: Vec<Col<T>>) -> Result<Vec<BigUint>, Overflow> {
    for c in &mut cols {
        c.retain(|(_, v)| !v.is_zero());
        c.sort_by_key(|(r, _)| *r);
    }
    let mut diag: Vec<BigUint> = Vec::new();
    let units = unit_phase(nrows, &mut cols)?;
    diag.extend(std::iter::repeat_n(BigUint::one(), units));
    diag.extend(dense_phase(nrows, &cols)?);
    Ok(normalize_diagonal(diag))
}

/// Eliminates unit pivots while the matrix is sparse. Pivot rows and
/// columns are emptied; returns the number of pivots.
fn unit_phase<T: Entry>(nrows: usize, cols: &mut [Col<T>]) -> Result<usize, Overflow> {
    let mut row_cols: Vec<Vec<usize>> = vec![Vec::new(); nrows];
    for (j, c) in cols.iter().enumerate() {
        for (r, _) in c {
            row_cols[*r].push(j);
        }
    }
    let mut row_live = vec![true; nrows];
    let mut pivots = 0;
    loop {
        let mut progress = false;
        for j in 0..cols.len() {
            if cols[j].is_empty() {
                continue;
            }
            // Unit entry in this column whose row is least occupied.
            let pick = cols[j]
                .iter()
                .filter(|(r, v)| v.is_unit() && row_live[*r])
                .min_by_key(|(r, _)| row_cols[*r].len())
                .map(|(r, v)| (*r, v.clone()));
            let Some((r, p)) = pick else { continue };
            let pivot_col = std::mem::take(&mut cols[j]);
            let others: Vec<usize> = row_cols[r].iter().copied().filter(|&k| k != j).collect();
            for k in others {
                let Some(pos) = cols[k].iter().position(|(rr, _)| *rr == r) else { continue };
                // f = a / p with p = ±1.
                let f = cols[k][pos].1.quot(&p).ok_or(Overflow)?;
                let merged = axpy(&cols[k], &f, &pivot_col)?;
                update_rows(&mut row_cols, k, &cols[k], &merged);
                cols[k] = merged;
            }
            for (rr, _) in &pivot_col {
                row_cols[*rr].retain(|&x| x != j);
            }
            row_live[r] = false;
            pivots += 1;
            progress = true;
        }
        if !progress {
            return Ok(pivots);
        }
    }
}

/// `a - f * b` for sorted sparse columns.
fn axpy<T: Entry>(a: &Col<T>, f: &T, b: &Col<T>) -> Result<Col<T>, Overflow> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut k) = (0, 0);
    while i < a.len() || k < b.len() {
        let ra = a.get(i).map_or(usize::MAX, |e| e.0);
        let rb = b.get(k).map_or(usize::MAX, |e| e.0);
        match ra.cmp(&rb) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                let v = T::zero().sub_mul(f, &b[k].1).ok_or(Overflow)?;
                out.push((rb, v));
                k += 1;
            }
            Ordering::Equal => {
                let v = a[i].1.sub_mul(f, &b[k].1).ok_or(Overflow)?;
                if !v.is_zero() {
                    out.push((ra, v));
                }
                i += 1;
                k += 1;
            }
        }
    }
    Ok(out)
}

fn update_rows<T>(row_cols: &mut [Vec<usize>], k: usize, old: &Col<T>, new: &Col<T>) {
    let old_rows: Vec<usize> = old.iter().map(|e| e.0).collect();
    let new_rows: Vec<usize> = new.iter().map(|e| e.0).collect();
    for r in &old_rows {
        if new_rows.binary_search(r).is_err() {
            row_cols[*r].retain(|&x| x != k);
        }
    }
    for r in &new_rows {
        if old_rows.binary_search(r).is_err() {
            row_cols[*r].push(k);
        }
    }
}

/// Diagonalises whatever survived the unit phase with a dense
/// minimum-magnitude pivot strategy; returns the non-zero diagonal.
fn dense_phase<T: Entry>(nrows: usize, cols: &[Col<T>]) -> Result<Vec<BigUint>, Overflow> {
    let live_cols: Vec<usize> = (0..cols.len()).filter(|&j| !cols[j].is_empty()).collect();
    if live_cols.is_empty() {
        return Ok(Vec::new());
    }
    let mut row_index = vec![usize::MAX; nrows];
    let mut m_rows = 0;
    for &j in &live_cols {
        for (r, _) in &cols[j] {
            if row_index[*r] == usize::MAX {
                row_index[*r] = m_rows;
                m_rows += 1;
            }
        }
    }
    let n_cols = live_cols.len();
    let mut a: Vec<Vec<T>> = vec![vec![T::zero(); n_cols]; m_rows];
    for (jj, &j) in live_cols.iter().enumerate() {
        for (r, v) in &cols[j] {
            a[row_index[*r]][jj] = v.clone();
        }
    }
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m_rows.min(n_cols) {
        let Some((pi, pj)) = min_entry(&a, t) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t].clone();
            let mut dirty = false;
            for i in t + 1..m_rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].quot(&p).ok_or(Overflow)?;
                for j in t..n_cols {
                    if !a[t][j].is_zero() {
                        a[i][j] = a[i][j].sub_mul(&q, &a[t][j]).ok_or(Overflow)?;
                    }
                }
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..n_cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].quot(&p).ok_or(Overflow)?;
                for row in a.iter_mut().skip(t) {
                    if !row[t].is_zero() {
                        row[j] = row[j].sub_mul(&q, &row[t]).ok_or(Overflow)?;
                    }
                }
                dirty |= !a[t][j].is_zero();
            }
            if !dirty {
                break;
            }
            // A remainder smaller than the pivot survived; move it there.
            let mut best: Option<(usize, usize)> = None;
            for i in t + 1..m_rows {
                if !a[i][t].is_zero() && best.is_none_or(|(bi, bj)| a[i][t].cmp_abs(&a[bi][bj]) == Ordering::Less) {
                    best = Some((i, t));
                }
            }
            for j in t + 1..n_cols {
                if !a[t][j].is_zero() && best.is_none_or(|(bi, bj)| a[t][j].cmp_abs(&a[bi][bj]) == Ordering::Less) {
                    best = Some((t, j));
                }
            }
            let (bi, bj) = best.expect("dirty implies a remainder");
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
        }
        diag.push(a[t][t].abs_big());
        t += 1;
    }
    Ok(diag)
}

fn min_entry<T: Entry>(a: &[Vec<T>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            if v.is_unit() {
                return Some((i, j));
            }
            if best.is_none_or(|(bi, bj)| v.cmp_abs(&a[bi][bj]) == Ordering::Less) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Turns a list of non-zero diagonal entries into invariant factors by
/// pairwise gcd/lcm exchanges; the product and the group they present are
/// unchanged.
pub fn normalize_diagonal(mut d: Vec<BigUint>) -> Vec<BigUint> {
    d.retain(|x| !x.is_zero());
    d.sort();
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            if (&d[j] % &d[i]).is_zero() {
                continue;
            }
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d.sort();
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn dense(rows: &[&[i64]]) -> (usize, Vec<Vec<(usize, i64)>>) {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        let cols = (0..m)
            .map(|j| (0..n).filter(|&i| rows[i][j] != 0).map(|i| (i, rows[i][j])).collect())
            .collect();
        (n, cols)
    }

    fn factors(rows: &[&[i64]]) -> Vec<u64> {
        let (n, cols) = dense(rows);
        invariant_factors_i64(n, &cols).iter().map(|x| x.to_u64().unwrap()).collect()
    }

    #[test]
    fn identity_and_diagonal() {
        assert_eq!(factors(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), vec![1, 1, 1]);
        assert_eq!(factors(&[&[2, 0], &[0, 0]]), vec![2]);
        assert_eq!(factors(&[&[2, 0], &[0, 3]]), vec![1, 6]);
    }

    #[test]
    fn hollow_triangle_boundary() {
        // Edges 01, 02, 12 over vertices 0, 1, 2.
        assert_eq!(factors(&[&[-1, -1, 0], &[1, 0, -1], &[0, 1, 1]]), vec![1, 1]);
    }

    #[test]
    fn classic_example() {
        assert_eq!(factors(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), vec![2, 6, 12]);
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = i64::MAX / 2;
        let f = factors(&[&[big, big - 1], &[big - 1, big - 2]]);
        assert_eq!(f, vec![1, 1]);
        let (n, cols) = dense(&[&[big, 0], &[0, big]]);
        let out = invariant_factors_i64(n, &cols);
        assert_eq!(out[1], BigUint::from(big as u64));
    }

    #[test]
    fn normalize_pairs() {
        let d = normalize_diagonal(vec![BigUint::from(4u32), BigUint::from(6u32), BigUint::from(1u32)]);
        assert_eq!(d, vec![BigUint::from(1u32), BigUint::from(2u32), BigUint::from(12u32)]);
    }
}
