use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::f2::rank_mod2;
use super::matrix::SparseMatrix;
use super::snf::invariant_factors;
use super::HomologyError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coefficients {
    #[serde(rename = "Z")]
    Integer,
    #[serde(rename = "F2")]
    F2,
}

/// Bounded chain complex `C_0 ← C_1 ← … ← C_top`. `boundary(d)` maps
/// `C_d → C_{d-1}`; `boundary(0)` is the zero map to the zero module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    coefficients: Coefficients,
    labels: Vec<Vec<String>>,
    boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// Validates shapes and `∂∘∂ = 0`; over F₂ entries are reduced mod 2.
    pub fn new(
        coefficients: Coefficients,
        labels: Vec<Vec<String>>,
        boundaries: Vec<SparseMatrix>,
    ) -> Result<Self, HomologyError> {
        if labels.len() != boundaries.len() {
            return Err(HomologyError::Shape(format!(
                "{} label lists but {} boundary matrices",
                labels.len(),
                boundaries.len()
            )));
        }
        let boundaries: Vec<SparseMatrix> = match coefficients {
            Coefficients::F2 => boundaries.iter().map(SparseMatrix::reduce_mod2).collect(),
            Coefficients::Integer => boundaries,
        };
        for (d, b) in boundaries.iter().enumerate() {
            let rows = if d == 0 { 0 } else { labels[d - 1].len() };
            if b.rows() != rows || b.cols() != labels[d].len() {
                return Err(HomologyError::Shape(format!(
                    "boundary in degree {d} is {}x{}, expected {rows}x{}",
                    b.rows(),
                    b.cols(),
                    labels[d].len()
                )));
            }
        }
        for d in 1..boundaries.len() {
            let prod = boundaries[d - 1].mul(&boundaries[d])?;
            let closed = match coefficients {
                Coefficients::Integer => prod.is_empty(),
                Coefficients::F2 => prod.iter().all(|e| e.2 % 2 == 0),
            };
            if !closed {
                return Err(HomologyError::BoundaryNotClosed { degree: d });
            }
        }
        Ok(ChainComplex {
            coefficients,
            labels,
            boundaries,
        })
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    /// Number of degrees stored, `top + 1`.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self, degree: usize) -> &[String] {
        self.labels.get(degree).map_or(&[], Vec::as_slice)
    }

    pub fn rank(&self, degree: usize) -> usize {
        self.labels(degree).len()
    }

    pub fn boundary(&self, degree: usize) -> Option<&SparseMatrix> {
        self.boundaries.get(degree)
    }

    pub fn to_json(&self) -> ChainComplexJson {
        ChainComplexJson {
            coefficients: self.coefficients,
            degrees: self
                .labels
                .iter()
                .zip(&self.boundaries)
                .enumerate()
                .map(|(degree, (labels, b))| DegreeJson {
                    degree,
                    labels: labels.clone(),
                    boundary: b
                        .entries()
                        .iter()
                        .map(|&(r, c, v)| [r as i64, c as i64, v])
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: ChainComplexJson) -> Result<Self, HomologyError> {
        let mut degrees = json.degrees;
        degrees.sort_by_key(|d| d.degree);
        if let Some((i, d)) = degrees.iter().enumerate().find(|(i, d)| d.degree != *i) {
            return Err(HomologyError::Shape(format!(
                "degree {} listed where degree {i} was expected",
                d.degree
            )));
        }
        let mut labels = Vec::with_capacity(degrees.len());
        let mut boundaries = Vec::with_capacity(degrees.len());
        for d in degrees {
            let rows = labels.last().map_or(0, |l: &Vec<String>| l.len());
            let mut entries = Vec::with_capacity(d.boundary.len());
            for [r, c, v] in d.boundary {
                if r < 0 || c < 0 {
                    return Err(HomologyError::Shape(format!(
                        "negative index in degree {}",
                        d.degree
                    )));
                }
                entries.push((r as usize, c as usize, v));
            }
            boundaries.push(SparseMatrix::new(rows, d.labels.len(), entries)?);
            labels.push(d.labels);
        }
        ChainComplex::new(json.coefficients, labels, boundaries)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainComplexJson {
    pub coefficients: Coefficients,
    pub degrees: Vec<DegreeJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeJson {
    pub degree: usize,
    pub labels: Vec<String>,
    /// `[row, col, value]` triples of the boundary out of this degree.
    #[serde(default)]
    pub boundary: Vec<[i64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyResult {
    pub coefficients: Coefficients,
    pub betti: Vec<usize>,
    /// Torsion divisors `> 1` per degree, in divisibility order; always empty
    /// over F₂.
    pub torsion: Vec<Vec<BigInt>>,
}

impl HomologyResult {
    pub fn betti(&self, degree: usize) -> usize {
        self.betti.get(degree).copied().unwrap_or(0)
    }

    /// Betti numbers with trailing zeros removed.
    pub fn trimmed_betti(&self) -> Vec<usize> {
        let end = self
            .betti
            .iter()
            .rposition(|&b| b != 0)
            .map_or(0, |i| i + 1);
        self.betti[..end].to_vec()
    }
}

pub fn homology(c: &ChainComplex) -> HomologyResult {
    let n = c.len();
    let mut ranks = vec![0usize; n + 1];
    let mut torsion = vec![Vec::new(); n];
    for d in 1..n {
        let b = &c.boundaries[d];
        match c.coefficients {
            Coefficients::F2 => ranks[d] = rank_mod2(b),
            Coefficients::Integer => {
                let factors = invariant_factors(b);
                ranks[d] = factors.len();
                torsion[d - 1] = factors.into_iter().filter(|f| !f.is_one()).collect();
            }
        }
    }
    let betti = (0..n)
        .map(|d| c.rank(d) - ranks[d] - ranks[d + 1])
        .collect();
    HomologyResult {
        coefficients: c.coefficients,
        betti,
        torsion,
    }
}
