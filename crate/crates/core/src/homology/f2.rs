use std::collections::BTreeMap;

use super::matrix::SparseMatrix;

const DENSE_COLS: usize = 200;

/// Rank over F₂. Narrow matrices go through packed bit rows, wide ones
/// through sparse column elimination.
pub fn rank_mod2(m: &SparseMatrix) -> usize {
    if m.cols() < DENSE_COLS {
        dense_rank(m)
    } else {
        sparse_rank(m)
    }
}

fn dense_rank(m: &SparseMatrix) -> usize {
    let words = m.cols().div_ceil(64);
    let mut rows = vec![vec![0u64; words]; m.rows()];
    for &(r, c, v) in m.entries() {
        if v % 2 != 0 {
            rows[r][c / 64] ^= 1 << (c % 64);
        }
    }
    let mut rank = 0;
    for c in 0..m.cols() {
        let (w, bit) = (c / 64, 1u64 << (c % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] & bit != 0 {
                for (a, b) in row.iter_mut().zip(&pivot) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Each column is a sorted list of row indices; columns are reduced against
/// earlier pivots keyed by their lowest row.
fn sparse_rank(m: &SparseMatrix) -> usize {
    let mut cols: Vec<Vec<usize>> = vec![Vec::new(); m.cols()];
    for &(r, c, v) in m.entries() {
        if v % 2 != 0 {
            cols[c].push(r);
        }
    }
    let mut pivots: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for mut col in cols {
        col.sort_unstable();
        while let Some(&low) = col.last() {
            match pivots.get(&low) {
                Some(p) => col = xor_sorted(&col, p),
                None => {
                    pivots.insert(low, col);
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn xor_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
