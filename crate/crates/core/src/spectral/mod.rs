//! First page of the rank filtration, the Dyer–Lashof count it is checked
//! against, and the cell structure in the `m = 1` case.
//!
//! Row `p` of the first page is the reduced F₂-homology of the Thom space of
//! `kφ_{m,p}`: filtration stage `p` differs from stage `p-1` by a tubular
//! neighbourhood of the locus where `p` points share an `I^k`-coordinate, whose
//! normal bundle is `kφ_{m,p}`, so excision identifies the relative homology
//! with that of the Thom space.

mod dyer_lashof;

use std::collections::BTreeMap;

use serde::Serialize;

pub use dyer_lashof::{config_dims_from_dl, dl_basis, dl_degree_totals, dl_generators, DLMonomial};

use crate::homology::{thom_dims, HomologyError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct E1Entry {
    pub p: usize,
    pub q: i64,
    pub total: usize,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct E1Page {
    pub k: usize,
    pub m: usize,
    pub max_rank: usize,
    pub max_degree: usize,
    /// Non-zero entries sorted by `(p, total)`.
    pub entries: Vec<E1Entry>,
}

impl E1Page {
    pub fn dim(&self, p: usize, total: usize) -> usize {
        self.entries
            .iter()
            .find(|e| e.p == p && e.total == total)
            .map_or(0, |e| e.dim)
    }

    pub fn row(&self, p: usize) -> BTreeMap<usize, usize> {
        self.entries
            .iter()
            .filter(|e| e.p == p)
            .map(|e| (e.total, e.dim))
            .collect()
    }
}

pub fn e1_page(k: usize, m: usize, p_max: usize, d_max: usize) -> Result<E1Page, HomologyError> {
    if p_max == 0 {
        return Err(HomologyError::InvalidParameter(
            "max rank must be at least 1".into(),
        ));
    }
    let mut entries = Vec::new();
    for p in 1..=p_max {
        // rows whose support starts above d_max need no homology computation
        if k * (p - 1) > d_max {
            break;
        }
        let t = thom_dims(k, m, p, d_max)?;
        for (&total, &dim) in &t.dims {
            entries.push(E1Entry {
                p,
                q: total as i64 - p as i64,
                total,
                dim,
            });
        }
    }
    Ok(E1Page {
        k,
        m,
        max_rank: p_max,
        max_degree: d_max,
        entries,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SnaithRow {
    pub degree: usize,
    /// `Σ_p dim H̃_{degree-k}(Th(kφ_{m,p}))`.
    pub thom: usize,
    /// Dyer–Lashof count on a degree-`k` class.
    pub dyer_lashof: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SnaithReport {
    pub k: usize,
    pub m: usize,
    pub max_degree: usize,
    pub rows: Vec<SnaithRow>,
    pub passed: bool,
}

/// Compares the suspended Thom spaces `Σ^k Th(kφ_{m,p})`, the stable summands
/// of `Ω^mΣ^m S^k`, with the Dyer–Lashof basis, degree by degree.
pub fn snaith_check(k: usize, m: usize, d_max: usize) -> Result<SnaithReport, HomologyError> {
    if k == 0 || m == 0 {
        return Err(HomologyError::InvalidParameter(format!(
            "k and m must be positive (got {k}, {m})"
        )));
    }
    let mut thom = vec![0usize; d_max + 1];
    if d_max >= k {
        // every weight unit costs at least k degrees
        for p in 1..=d_max / k {
            let t = thom_dims(k, m, p, d_max - k)?;
            for (&q, &dim) in &t.dims {
                thom[q + k] += dim;
            }
        }
    }
    let dl = dl_degree_totals(m, k, d_max);
    let rows: Vec<SnaithRow> = (1..=d_max)
        .map(|degree| SnaithRow {
            degree,
            thom: thom[degree],
            dyer_lashof: dl[degree],
        })
        .collect();
    let passed = rows.iter().all(|r| r.thom == r.dyer_lashof);
    Ok(SnaithReport {
        k,
        m,
        max_degree: d_max,
        rows,
        passed,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub r: usize,
    /// Degrees of an F₂ basis of `H̃(Th(kφ_{m,r}))`, with repetition.
    pub generator_degrees: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellStructure {
    pub k: usize,
    pub m: usize,
    pub stages: Vec<Stage>,
}

impl CellStructure {
    /// For `m = 1`: stage `r` is a single cell of dimension `k(r-1)`.
    pub fn single_cells(&self) -> bool {
        self.stages
            .iter()
            .all(|s| s.generator_degrees == [self.k * (s.r - 1)])
    }
}

pub fn cell_report(
    k: usize,
    m: usize,
    r_max: usize,
    d_max: usize,
) -> Result<CellStructure, HomologyError> {
    if r_max == 0 {
        return Err(HomologyError::InvalidParameter(
            "r_max must be at least 1".into(),
        ));
    }
    let stages = (1..=r_max)
        .map(|r| {
            Ok(Stage {
                r,
                generator_degrees: thom_dims(k, m, r, d_max)?.degrees(),
            })
        })
        .collect::<Result<_, HomologyError>>()?;
    Ok(CellStructure { k, m, stages })
}
