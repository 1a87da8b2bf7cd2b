//! Fox–Neuwirth cells for unordered configurations in ℝ^d.
//!
//! Sort the points lexicographically and record, between neighbours `i` and
//! `i+1`, the number `a_i` of leading coordinates they share. The sequences
//! `a ∈ {0..d-1}^{n-1}` index the open cells of the one-point compactification
//! of `C_n(ℝ^d)`; cell `a` has dimension `nd - Σ a_i`. Equivalently a cell is a
//! planar tree of height `d` with `n` leaves, a node at level `j` being a
//! shared prefix of length `j`.
//!
//! A codimension-one face makes two adjacent sibling nodes at level `j < d`
//! agree in coordinate `j`: they merge, and their children interleave in every
//! possible way. Counting the interleavings mod 2 gives the F₂ cellular
//! boundary. Mod-2 Poincaré duality turns the cochains of the compactification
//! into chains of the manifold, so the complex returned here puts cell `a` in
//! degree `Σ a_i` and uses the transposed boundary.

use std::collections::{BTreeMap, HashMap};

use super::complex::{homology, ChainComplex, Coefficients};
use super::matrix::SparseMatrix;
use super::HomologyError;

pub const MAX_CONF_POINTS: usize = 8;
pub const MAX_CONF_DIM: usize = 4;

pub fn config_complex(n: usize, d: usize) -> Result<ChainComplex, HomologyError> {
    check_range(n, d)?;
    let top = (d - 1) * (n - 1);
    let mut cells: Vec<Vec<Vec<u8>>> = vec![Vec::new(); top + 1];
    for a in sequences(n - 1, d) {
        let deg = a.iter().map(|&x| x as usize).sum::<usize>();
        cells[deg].push(a);
    }
    let index: Vec<HashMap<&[u8], usize>> = cells
        .iter()
        .map(|cs| {
            cs.iter()
                .enumerate()
                .map(|(i, a)| (a.as_slice(), i))
                .collect()
        })
        .collect();

    let mut boundaries = vec![SparseMatrix::zeros(0, cells[0].len())];
    for deg in 1..=top {
        let mut entries = Vec::new();
        for (row, a) in cells[deg - 1].iter().enumerate() {
            for (face, count) in fn_boundary(a, d) {
                if count % 2 == 1 {
                    let col = index[deg][face.as_slice()];
                    entries.push((row, col, 1));
                }
            }
        }
        boundaries.push(SparseMatrix::new(
            cells[deg - 1].len(),
            cells[deg].len(),
            entries,
        )?);
    }
    let labels = cells
        .iter()
        .map(|cs| cs.iter().map(|a| label(a)).collect())
        .collect();
    ChainComplex::new(Coefficients::F2, labels, boundaries)
}

/// `dim H_i(C_n(ℝ^d); F₂)` for `i = 0..=(d-1)(n-1)`.
pub fn config_homology(n: usize, d: usize) -> Result<Vec<usize>, HomologyError> {
    Ok(homology(&config_complex(n, d)?).betti)
}

/// Faces of cell `a` in the compactification, with the number of
/// interleavings landing on each.
pub fn fn_boundary(a: &[u8], d: usize) -> BTreeMap<Vec<u8>, usize> {
    let mut out = BTreeMap::new();
    for t in 0..a.len() {
        let j = a[t] + 1;
        if j as usize >= d {
            // merging leaves is a collision, which lies at infinity
            continue;
        }
        let mut s = t;
        while s > 0 && a[s - 1] >= j {
            s -= 1;
        }
        let mut u = t + 1;
        while u < a.len() && a[u] >= j {
            u += 1;
        }
        // left node spans a[s..t], right node spans a[t+1..u]
        let left = children(&a[s..t], j);
        let right = children(&a[t + 1..u], j);
        let mut merged = Vec::with_capacity(left.len() + right.len());
        shuffles(&left, &right, &mut merged, &mut |blocks| {
            let mut face = a[..s].to_vec();
            for (i, block) in blocks.iter().enumerate() {
                if i > 0 {
                    face.push(j);
                }
                face.extend_from_slice(block);
            }
            face.extend_from_slice(&a[u..]);
            *out.entry(face).or_insert(0) += 1;
        });
    }
    out
}

fn check_range(n: usize, d: usize) -> Result<(), HomologyError> {
    if n == 0 || n > MAX_CONF_POINTS {
        return Err(HomologyError::OutOfRange {
            what: "n",
            value: n,
            range: "1..=8",
        });
    }
    if d == 0 || d > MAX_CONF_DIM {
        return Err(HomologyError::OutOfRange {
            what: "d",
            value: d,
            range: "1..=4",
        });
    }
    Ok(())
}

fn sequences(len: usize, d: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s| {
                (0..d as u8).map(move |x| {
                    let mut t = s.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Splits the internal depths of a level-`j` node into its children.
fn children(inner: &[u8], j: u8) -> Vec<&[u8]> {
    inner.split(|&x| x == j).collect()
}

fn shuffles<'a>(
    left: &[&'a [u8]],
    right: &[&'a [u8]],
    acc: &mut Vec<&'a [u8]>,
    emit: &mut impl FnMut(&[&'a [u8]]),
) {
    if left.is_empty() && right.is_empty() {
        emit(acc);
        return;
    }
    if let Some((first, rest)) = left.split_first() {
        acc.push(first);
        shuffles(rest, right, acc, emit);
        acc.pop();
    }
    if let Some((first, rest)) = right.split_first() {
        acc.push(first);
        shuffles(left, rest, acc, emit);
        acc.pop();
    }
}

fn label(a: &[u8]) -> String {
    let parts: Vec<String> = a.iter().map(u8::to_string).collect();
    format!("({})", parts.join(","))
}
