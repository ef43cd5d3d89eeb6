use std::collections::BTreeMap;

use num_traits::One;
use serde::Serialize;

use super::smoothing::{b_state_smoothing, lando_graph, smoothing_circles};
use super::{KnotError, PlanarDiagram};
use crate::homology::{invariant_factors_i64, HomologyGroup};
use crate::homotopy::{classify, homology_of_expr, HomotopyExpr, ReductionTrace};

/// Largest diagram the enhanced-state oracle accepts.
pub const ORACLE_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KhovanovIndices {
    pub p: usize,
    pub n: usize,
    pub w: i64,
    /// Circles of the all-B state.
    pub circles: usize,
    pub j_max: i64,
}

/// Crossing counts, writhe, all-B circle count and the maximal grading
/// `j_max = w + p + |s_B|`.
pub fn khovanov_indices(d: &PlanarDiagram) -> KhovanovIndices {
    let (p, n, w) = (d.positive(), d.negative(), d.writhe());
    let circles = b_state_smoothing(d).circles.len();
    KhovanovIndices { p, n, w, circles, j_max: w + p as i64 + circles as i64 }
}

#[derive(Clone, Debug, Serialize)]
pub struct KhovanovSummary {
    #[serde(flatten)]
    pub indices: KhovanovIndices,
    /// Non-zero groups `H^{i, j_max}` by `i`.
    pub groups: BTreeMap<i64, HomologyGroup>,
    pub lando_vertices: usize,
    pub lando_edges: usize,
    pub expression: HomotopyExpr,
    pub trace: ReductionTrace,
}

/// Extreme Khovanov homology from the Lando graph:
/// `H^{i, j_max} = H̃_{p-i-1}(I_G)`.
pub fn extreme_khovanov(d: &PlanarDiagram) -> Result<KhovanovSummary, KnotError> {
    let indices = khovanov_indices(d);
    let g = lando_graph(d)?;
    let (expression, trace) = classify(&g);
    let table = homology_of_expr(&expression);
    let groups = table
        .degrees()
        .iter()
        .filter(|(_, h)| !h.is_zero())
        .map(|(&deg, h)| (indices.p as i64 - 1 - deg, h.clone()))
        .collect();
    Ok(KhovanovSummary {
        indices,
        groups,
        lando_vertices: g.vertex_count(),
        lando_edges: g.edge_count(),
        expression,
        trace,
    })
}

/// Smallest and largest `j` over all enhanced states.
pub fn j_range(d: &PlanarDiagram) -> Result<(i64, i64), KnotError> {
    let c = d.crossing_count();
    if c > ORACLE_LIMIT {
        return Err(KnotError::TooLarge { crossings: c, limit: ORACLE_LIMIT });
    }
    let (n, w) = (d.negative() as i64, d.writhe());
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for mask in 0u32..1 << c {
        let circles = smoothing_circles(d, |x| mask >> x & 1 == 1).len() as i64;
        let i = mask.count_ones() as i64 - n;
        lo = lo.min(w + i - circles);
        hi = hi.max(w + i + circles);
    }
    Ok((lo, hi))
}

/// `H^{i, j_max}` computed directly from enhanced states. At `j_max` the
/// generators are the states with `|s| = |s_B| + #A` and every circle
/// positive; `d` turns one A-label into a B-label, merging two circles,
/// with sign `(-1)^k` for `k` B-labels on later crossings.
pub fn extreme_khovanov_oracle(d: &PlanarDiagram) -> Result<BTreeMap<i64, HomologyGroup>, KnotError> {
    let c = d.crossing_count();
    if c > ORACLE_LIMIT {
        return Err(KnotError::TooLarge { crossings: c, limit: ORACLE_LIMIT });
    }
    let sb = b_state_smoothing(d).circles.len();
    let full = (1u32 << c) - 1;
    let circles = |mask: u32| smoothing_circles(d, |x| mask >> x & 1 == 1).len();
    // Generators grouped by the number of B-labels.
    let mut by_b: Vec<Vec<u32>> = vec![Vec::new(); c + 1];
    for mask in 0..=full {
        let a = c - mask.count_ones() as usize;
        if circles(mask) == sb + a {
            by_b[mask.count_ones() as usize].push(mask);
        }
    }
    let index: Vec<BTreeMap<u32, usize>> =
        by_b.iter().map(|v| v.iter().enumerate().map(|(i, &m)| (m, i)).collect()).collect();
    // Coboundary from b to b + 1 labels, as sparse columns.
    let coboundary = |b: usize| -> (usize, Vec<Vec<(usize, i64)>>) {
        if b >= c {
            return (0, vec![Vec::new(); by_b.get(b).map_or(0, Vec::len)]);
        }
        let cols = by_b[b]
            .iter()
            .map(|&s| {
                let mut col: Vec<(usize, i64)> = (0..c)
                    .filter(|&x| s >> x & 1 == 0)
                    .filter_map(|x| {
                        let t = s | 1 << x;
                        let later = (s >> (x + 1)).count_ones();
                        index[b + 1].get(&t).map(|&r| (r, if later % 2 == 0 { 1 } else { -1 }))
                    })
                    .collect();
                col.sort_unstable();
                col
            })
            .collect();
        (by_b[b + 1].len(), cols)
    };
    let factors: Vec<Vec<num_bigint::BigUint>> = (0..=c)
        .map(|b| {
            let (rows, cols) = coboundary(b);
            invariant_factors_i64(rows, &cols)
        })
        .collect();
    let n = d.negative() as i64;
    let mut out = BTreeMap::new();
    for b in 0..=c {
        let rank_out = factors[b].len() as u64;
        let rank_in = if b == 0 { 0 } else { factors[b - 1].len() as u64 };
        let free = by_b[b].len() as u64 - rank_out - rank_in;
        let torsion = if b == 0 { Vec::new() } else { factors[b - 1].iter().filter(|f| !f.is_one()).cloned().collect() };
        let g = HomologyGroup { rank: free, torsion };
        if !g.is_zero() {
            out.insert(b as i64 - n, g);
        }
    }
    Ok(out)
}

/// Extreme groups of `T(3, q)` from the cycle `C_{2q}`: with `k` the
/// integer nearest to `2q/3`, a single group at `i = 2q - k`, which is
/// `Z^2` when `2q = 3k` and `Z` otherwise.
pub fn torus_3q_expected(q: usize) -> Result<BTreeMap<i64, HomologyGroup>, KnotError> {
    if q < 2 {
        return Err(KnotError::BadParameter("q >= 2".into()));
    }
    let two_q = 2 * q as i64;
    let k = (two_q + 1) / 3;
    let rank = if two_q == 3 * k { 2 } else { 1 };
    Ok(BTreeMap::from([(two_q - k, HomologyGroup::free(rank))]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knots::{parse_braid, torus_braid};

    #[test]
    fn trefoil_indices_and_groups() {
        let d = torus_braid(2, 3).unwrap().closure();
        let k = khovanov_indices(&d);
        assert_eq!((k.p, k.n, k.w, k.circles, k.j_max), (3, 0, 3, 3, 9));
        assert_eq!(j_range(&d).unwrap().1, 9);
        let s = extreme_khovanov(&d).unwrap();
        assert_eq!(s.groups, BTreeMap::from([(3, HomologyGroup::free(1))]));
        assert_eq!(extreme_khovanov_oracle(&d).unwrap(), s.groups);
    }

    #[test]
    fn kink_has_no_extreme_homology() {
        let d = torus_braid(2, 1).unwrap().closure();
        let k = khovanov_indices(&d);
        assert_eq!((k.p, k.n, k.w, k.circles, k.j_max), (1, 0, 1, 1, 3));
        assert_eq!(j_range(&d).unwrap().1, 3);
        assert!(extreme_khovanov(&d).unwrap().groups.is_empty());
        assert!(extreme_khovanov_oracle(&d).unwrap().is_empty());
    }

    #[test]
    fn torus_three_strands() {
        for q in 2..=4 {
            let d = torus_braid(3, q).unwrap().closure();
            let expected = torus_3q_expected(q).unwrap();
            assert_eq!(extreme_khovanov(&d).unwrap().groups, expected, "q = {q}");
            assert_eq!(extreme_khovanov_oracle(&d).unwrap(), expected, "q = {q}");
        }
        assert_eq!(torus_3q_expected(5).unwrap(), BTreeMap::from([(7, HomologyGroup::free(1))]));
    }

    #[test]
    fn mirror_negates_extreme_grading() {
        for w in ["1 1 1", "1 -2 1 -2", "1 2 -1 2 2"] {
            let d = parse_braid(w, 3).unwrap().closure();
            assert_eq!(j_range(&d.mirror()).unwrap().0, -khovanov_indices(&d).j_max, "{w}");
        }
    }

    #[test]
    fn oracle_limit() {
        let d = torus_braid(2, 13).unwrap().closure();
        assert!(matches!(extreme_khovanov_oracle(&d), Err(KnotError::TooLarge { .. })));
    }
}
