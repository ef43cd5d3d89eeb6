//! Bitmask helpers for vertex sets of at most 128 elements.

pub(crate) type Mask = u128;

#[inline]
pub(crate) fn bit(i: usize) -> Mask {
    1u128 << i
}

/// Iterates the set bit positions of `m` in increasing order.
pub(crate) fn ones(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// Maximal cliques of the graph given by adjacency masks (Bron–Kerbosch with pivoting).
pub(crate) fn maximal_cliques(adj: &[Mask]) -> Vec<Mask> {
    let n = adj.len();
    let all = if n == 128 { Mask::MAX } else { bit(n) - 1 };
    let mut out = Vec::new();
    expand(adj, 0, all, 0, &mut out);
    out
}

fn expand(adj: &[Mask], clique: Mask, mut cand: Mask, mut excl: Mask, out: &mut Vec<Mask>) {
    if cand == 0 {
        if excl == 0 {
            out.push(clique);
        }
        return;
    }
    let pivot = ones(cand | excl)
        .max_by_key(|&u| (cand & adj[u]).count_ones())
        .expect("non-empty");
    let mut todo = cand & !adj[pivot];
    while todo != 0 {
        let v = todo.trailing_zeros() as usize;
        todo &= todo - 1;
        expand(adj, clique | bit(v), cand & adj[v], excl & adj[v], out);
        cand &= !bit(v);
        excl |= bit(v);
    }
}
