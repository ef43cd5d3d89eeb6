use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// Sparse integer matrix stored by columns; each column is sorted by row
/// and holds no zero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    nrows: usize,
    cols: Vec<Vec<(usize, BigInt)>>,
}

impl IntegerMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        IntegerMatrix { nrows, cols: vec![Vec::new(); ncols] }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let cols = (0..ncols)
            .map(|j| {
                (0..nrows)
                    .filter(|&i| rows[i][j] != 0)
                    .map(|i| (i, BigInt::from(rows[i][j])))
                    .collect()
            })
            .collect();
        IntegerMatrix { nrows, cols }
    }

    pub(crate) fn from_i64_columns(nrows: usize, cols: Vec<Vec<(usize, i64)>>) -> Self {
        let cols = cols
            .into_iter()
            .map(|c| c.into_iter().map(|(r, v)| (r, BigInt::from(v))).collect())
            .collect();
        IntegerMatrix { nrows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[Vec<(usize, BigInt)>] {
        &self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.cols[c]
            .binary_search_by_key(&r, |e| e.0)
            .map(|i| self.cols[c][i].1.clone())
            .unwrap_or_else(|_| BigInt::zero())
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        assert!(r < self.nrows, "row out of range");
        let col = &mut self.cols[c];
        match col.binary_search_by_key(&r, |e| e.0) {
            Ok(i) if v.is_zero() => {
                col.remove(i);
            }
            Ok(i) => col[i].1 = v,
            Err(_) if v.is_zero() => {}
            Err(i) => col.insert(i, (r, v)),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.ncols()]; self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for (r, v) in c {
                out[*r][j] = v.clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.ncols(), other.nrows, "dimension mismatch");
        let mut out = IntegerMatrix::zeros(self.nrows, other.ncols());
        for (j, oc) in other.cols.iter().enumerate() {
            let mut acc = vec![BigInt::zero(); self.nrows];
            for (k, b) in oc {
                for (i, a) in &self.cols[*k] {
                    acc[*i] += a * b;
                }
            }
            out.cols[j] = acc.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
        }
        out
    }

    pub(crate) fn to_i64_columns(&self) -> Option<Vec<Vec<(usize, i64)>>> {
        self.cols
            .iter()
            .map(|c| c.iter().map(|(r, v)| v.to_i64().map(|x| (*r, x))).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn get_set_and_product() {
        let mut m = IntegerMatrix::zeros(2, 2);
        m.set(0, 1, BigInt::from(3));
        m.set(1, 0, BigInt::from(-2));
        assert_eq!(m.get(0, 1), BigInt::from(3));
        assert_eq!(m.get(0, 0), BigInt::zero());
        let sq = m.mul(&m);
        assert_eq!(sq.get(0, 0), BigInt::from(-6));
        assert_eq!(sq.get(1, 1), BigInt::from(-6));
        m.set(0, 1, BigInt::zero());
        assert_eq!(m.nnz(), 1);
    }
}
