use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::HomologyError;

/// Sparse integer matrix in triplet form; entries are sorted by `(row, col)`,
/// duplicates are summed and zeros dropped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SparseMatrixJson", into = "SparseMatrixJson")]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, i64)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SparseMatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, i64)>,
}

impl TryFrom<SparseMatrixJson> for SparseMatrix {
    type Error = HomologyError;
    fn try_from(j: SparseMatrixJson) -> Result<Self, HomologyError> {
        SparseMatrix::new(j.rows, j.cols, j.entries)
    }
}

impl From<SparseMatrix> for SparseMatrixJson {
    fn from(m: SparseMatrix) -> Self {
        SparseMatrixJson {
            rows: m.rows,
            cols: m.cols,
            entries: m.entries,
        }
    }
}

impl SparseMatrix {
    pub fn new(
        rows: usize,
        cols: usize,
        mut entries: Vec<(usize, usize, i64)>,
    ) -> Result<Self, HomologyError> {
        if let Some(&(r, c, _)) = entries.iter().find(|&&(r, c, _)| r >= rows || c >= cols) {
            return Err(HomologyError::Shape(format!(
                "entry ({r},{c}) outside a {rows}x{cols} matrix"
            )));
        }
        entries.sort_by_key(|&(r, c, _)| (r, c));
        let mut merged: Vec<(usize, usize, i64)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == r && last.1 == c => {
                    last.2 = last
                        .2
                        .checked_add(v)
                        .ok_or_else(|| HomologyError::Shape("entry overflow".into()))?
                }
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|e| e.2 != 0);
        Ok(SparseMatrix {
            rows,
            cols,
            entries: merged,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, i64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn reduce_mod2(&self) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .filter(|e| e.2 % 2 != 0)
                .map(|&(r, c, _)| (r, c, 1))
                .collect(),
        }
    }

    /// `self · other` with exact 128-bit accumulation.
    pub fn mul(&self, other: &SparseMatrix) -> Result<Vec<(usize, usize, i128)>, HomologyError> {
        if self.cols != other.rows {
            return Err(HomologyError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut by_row: Vec<Vec<(usize, i64)>> = vec![Vec::new(); other.rows];
        for &(r, c, v) in &other.entries {
            by_row[r].push((c, v));
        }
        let mut acc: std::collections::BTreeMap<(usize, usize), i128> = Default::default();
        for &(r, mid, v) in &self.entries {
            for &(c, w) in &by_row[mid] {
                *acc.entry((r, c)).or_default() += v as i128 * w as i128;
            }
        }
        Ok(acc
            .into_iter()
            .filter(|(_, v)| *v != 0)
            .map(|((r, c), v)| (r, c, v))
            .collect())
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for &(r, c, v) in &self.entries {
            m.data[r][c] = BigInt::from(v);
        }
        m
    }

    pub fn transpose(&self) -> SparseMatrix {
        let entries = self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect();
        SparseMatrix::new(self.cols, self.rows, entries).expect("transpose keeps bounds")
    }
}

/// Dense matrix of big integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    pub(crate) data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self, HomologyError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(HomologyError::Shape("ragged rows".into()));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows
                .into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r][c]
    }

    pub fn row_vecs(&self) -> &[Vec<BigInt>] {
        &self.data
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for (k, a) in self.data[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        self.data
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, v)| i == j || v.is_zero()))
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self.data[i][i].clone())
            .collect()
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v.div_floor(&prev);
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        for row in &mut self.data {
            row.swap(a, b);
        }
    }

    /// `row[dst] -= q · row[src]`.
    pub(crate) fn row_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let src_row = self.data[src].clone();
        for (d, s) in self.data[dst].iter_mut().zip(&src_row) {
            if !s.is_zero() {
                *d -= q * s;
            }
        }
    }

    /// `col[dst] -= q · col[src]`.
    pub(crate) fn col_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for row in &mut self.data {
            if !row[src].is_zero() {
                let delta = q * &row[src];
                row[dst] -= delta;
            }
        }
    }

    pub(crate) fn negate_row(&mut self, r: usize) {
        for v in &mut self.data[r] {
            *v = -std::mem::take(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_normalizes() {
        let m = SparseMatrix::new(2, 2, vec![(1, 0, 2), (0, 1, 1), (1, 0, -2), (0, 1, 3)]).unwrap();
        assert_eq!(m.entries(), &[(0, 1, 4)]);
        assert!(SparseMatrix::new(1, 1, vec![(1, 0, 1)]).is_err());
    }

    #[test]
    fn determinants() {
        let m = IntMatrix::from_rows(vec![vec![2, 4], vec![6, 8]]).unwrap();
        assert_eq!(m.determinant(), BigInt::from(-8));
        let p = IntMatrix::from_rows(vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]).unwrap();
        assert_eq!(p.determinant(), BigInt::from(1));
        let s = IntMatrix::from_rows(vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]).unwrap();
        assert_eq!(s.determinant(), BigInt::from(-3));
        assert_eq!(IntMatrix::zeros(0, 0).determinant(), BigInt::from(1));
    }

    #[test]
    fn sparse_product() {
        let a = SparseMatrix::new(1, 2, vec![(0, 0, 1), (0, 1, 1)]).unwrap();
        let b = SparseMatrix::new(2, 1, vec![(0, 0, 1), (1, 0, -1)]).unwrap();
        assert!(a.mul(&b).unwrap().is_empty());
    }
}
