//! Smith normal form over ℤ.
//!
//! [`smith_normal_form`] tracks the unimodular transforms; the homology path
//! uses [`invariant_factors`], which first eliminates unit pivots on the sparse
//! matrix (boundary matrices are mostly ±1) and only runs the dense algorithm on
//! what is left.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntMatrix, SparseMatrix};

/// `U · M · V = S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// The non-zero diagonal entries `d_1 | d_2 | …`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.s
            .diagonal()
            .into_iter()
            .filter(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    reduce(&mut s, Some((&mut u, &mut v)));
    SmithForm { u, s, v }
}

/// Invariant factors of a sparse matrix, without transforms.
pub fn invariant_factors(m: &SparseMatrix) -> Vec<BigInt> {
    let (units, residual) = eliminate_unit_pivots(m);
    let mut s = residual;
    reduce(&mut s, None);
    let mut out = vec![BigInt::one(); units];
    out.extend(s.diagonal().into_iter().filter(|d| !d.is_zero()));
    out
}

pub fn rank_over_q(m: &SparseMatrix) -> usize {
    invariant_factors(m).len()
}

fn reduce(a: &mut IntMatrix, mut track: Option<(&mut IntMatrix, &mut IntMatrix)>) {
    let rows = a.rows();
    let cols = a.cols();
    for t in 0..rows.min(cols) {
        let Some((pr, pc)) = min_abs_entry(a, t, t..rows, t..cols) else {
            break;
        };
        move_pivot(a, &mut track, t, pr, pc);
        loop {
            // clear column t and row t
            for i in t + 1..rows {
                if !a.get(i, t).is_zero() {
                    let q = a.get(i, t).div_floor(a.get(t, t));
                    a.row_sub(i, t, &q);
                    if let Some((u, _)) = track.as_mut() {
                        u.row_sub(i, t, &q);
                    }
                }
            }
            for j in t + 1..cols {
                if !a.get(t, j).is_zero() {
                    let q = a.get(t, j).div_floor(a.get(t, t));
                    a.col_sub(j, t, &q);
                    if let Some((_, v)) = track.as_mut() {
                        v.col_sub(j, t, &q);
                    }
                }
            }
            let leftover = (t + 1..rows)
                .find(|&i| !a.get(i, t).is_zero())
                .map(|i| (i, t))
                .or_else(|| {
                    (t + 1..cols)
                        .find(|&j| !a.get(t, j).is_zero())
                        .map(|j| (t, j))
                });
            if leftover.is_some() {
                // a remainder smaller than the pivot survived; make it the pivot
                let (pr, pc) = min_abs_entry_cross(a, t).expect("non-zero entry exists");
                move_pivot(a, &mut track, t, pr, pc);
                continue;
            }
            let pivot = a.get(t, t).clone();
            let bad =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    // row t += row i, then keep reducing
                    let minus_one = -BigInt::one();
                    a.row_sub(t, i, &minus_one);
                    if let Some((u, _)) = track.as_mut() {
                        u.row_sub(t, i, &minus_one);
                    }
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            if let Some((u, _)) = track.as_mut() {
                u.negate_row(t);
            }
        }
    }
}

fn move_pivot(
    a: &mut IntMatrix,
    track: &mut Option<(&mut IntMatrix, &mut IntMatrix)>,
    t: usize,
    pr: usize,
    pc: usize,
) {
    if pr != t {
        a.swap_rows(t, pr);
        if let Some((u, _)) = track.as_mut() {
            u.swap_rows(t, pr);
        }
    }
    if pc != t {
        a.swap_cols(t, pc);
        if let Some((_, v)) = track.as_mut() {
            v.swap_cols(t, pc);
        }
    }
}

fn min_abs_entry(
    a: &IntMatrix,
    _t: usize,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in rows {
        for j in cols.clone() {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            let abs = v.abs();
            if best.as_ref().is_none_or(|b| abs < b.2) {
                let unit = abs.is_one();
                best = Some((i, j, abs));
                if unit {
                    return best.map(|(i, j, _)| (i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn min_abs_entry_cross(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let col = min_abs_entry(a, t, t..a.rows(), t..t + 1);
    let row = min_abs_entry(a, t, t..t + 1, t..a.cols());
    match (col, row) {
        (Some(c), Some(r)) => {
            if a.get(c.0, c.1).abs() <= a.get(r.0, r.1).abs() {
                Some(c)
            } else {
                Some(r)
            }
        }
        (c, r) => c.or(r),
    }
}

/// Repeatedly pivots on ±1 entries of the sparse matrix. Returns the number of
/// pivots and the dense Schur complement that remains.
fn eliminate_unit_pivots(m: &SparseMatrix) -> (usize, IntMatrix) {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); m.rows()];
    for &(r, c, v) in m.entries() {
        rows[r].insert(c, BigInt::from(v));
    }
    let mut alive_rows: Vec<bool> = vec![true; m.rows()];
    let mut alive_cols: Vec<bool> = vec![true; m.cols()];
    let mut pivots = 0;
    loop {
        let found = rows
            .iter()
            .enumerate()
            .filter(|(r, _)| alive_rows[*r])
            .find_map(|(r, row)| {
                row.iter()
                    .find(|(_, v)| v.abs().is_one())
                    .map(|(&c, v)| (r, c, v.clone()))
            });
        let Some((pr, pc, pv)) = found else { break };
        let pivot_row = std::mem::take(&mut rows[pr]);
        for (r, row) in rows.iter_mut().enumerate() {
            if !alive_rows[r] || r == pr {
                continue;
            }
            let Some(a) = row.get(&pc).cloned() else {
                continue;
            };
            // row_r -= (a / pv) · pivot_row, with 1/pv = pv for units
            let factor = &a * &pv;
            for (&c, w) in &pivot_row {
                let e = row.entry(c).or_insert_with(BigInt::zero);
                *e -= &factor * w;
                if e.is_zero() {
                    row.remove(&c);
                }
            }
        }
        alive_rows[pr] = false;
        alive_cols[pc] = false;
        pivots += 1;
    }
    let row_idx: Vec<usize> = (0..m.rows()).filter(|&r| alive_rows[r]).collect();
    let col_idx: Vec<usize> = (0..m.cols()).filter(|&c| alive_cols[c]).collect();
    let col_pos: BTreeMap<usize, usize> =
        col_idx.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut dense = IntMatrix::zeros(row_idx.len(), col_idx.len());
    for (i, &r) in row_idx.iter().enumerate() {
        for (c, v) in &rows[r] {
            if let Some(&j) = col_pos.get(c) {
                dense.data[i][j] = v.clone();
            }
        }
    }
    (pivots, dense)
}
