//! Ranks over prime fields and over the rationals, used as independent
//! checks on the integral computation.

use num_bigint::BigInt;
use num_traits::Zero;

use super::IntegerMatrix;

/// Rank over `Z/p` of a matrix given as sparse `i64` columns.
pub fn rank_mod_p(nrows: usize, cols: &[Vec<(usize, i64)>], p: u64) -> u64 {
    let p = p as i128;
    // pivot_of[row] = reduced column whose lowest non-zero row is `row`.
    let mut pivot_of: Vec<Option<Vec<(usize, i128)>>> = vec![None; nrows];
    let mut rank = 0;
    for c in cols {
        let mut col: Vec<(usize, i128)> = c
            .iter()
            .map(|&(r, v)| (r, (v as i128).rem_euclid(p)))
            .filter(|&(_, v)| v != 0)
            .collect();
        loop {
            let Some(&(low, lv)) = col.last() else { break };
            let Some(piv) = &pivot_of[low] else {
                // Normalise so the pivot entry is 1.
                let inv = inverse(lv, p);
                for e in col.iter_mut() {
                    e.1 = e.1 * inv % p;
                }
                pivot_of[low] = Some(col);
                rank += 1;
                break;
            };
            col = sub_scaled(&col, lv, piv, p);
        }
    }
    rank
}

fn sub_scaled(a: &[(usize, i128)], f: i128, b: &[(usize, i128)], p: i128) -> Vec<(usize, i128)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut k) = (0, 0);
    while i < a.len() || k < b.len() {
        let ra = a.get(i).map_or(usize::MAX, |e| e.0);
        let rb = b.get(k).map_or(usize::MAX, |e| e.0);
        if ra < rb {
            out.push(a[i]);
            i += 1;
        } else if rb < ra {
            out.push((rb, (-f * b[k].1).rem_euclid(p)));
            k += 1;
        } else {
            let v = (a[i].1 - f * b[k].1).rem_euclid(p);
            if v != 0 {
                out.push((ra, v));
            }
            i += 1;
            k += 1;
        }
    }
    out
}

fn inverse(a: i128, p: i128) -> i128 {
    // Fermat; p is prime and small.
    let mut result = 1;
    let mut base = a.rem_euclid(p);
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
pub fn rank_over_q(m: &IntegerMatrix) -> u64 {
    let mut a = m.to_dense();
    let rows = a.len();
    let cols = m.ncols();
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r as u64
}
