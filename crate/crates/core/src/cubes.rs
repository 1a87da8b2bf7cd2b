//! The non-unital little k-cubes operad over exact rationals.
//!
//! A [`Cube`] is a rectilinear self-embedding of the open unit cube
//! `I^k = (0,1)^k`: a translation plus a positive dilation on every axis. It is
//! stored by its closed interval endpoints; two cubes are disjoint when their
//! open interiors are, so touching faces are allowed.
//!
//! # Symmetric group convention
//!
//! [`CubeTuple::permute`] is a *right* action: `permute(t, σ).cubes[i] =
//! t.cubes[σ(i)]`, so `permute(permute(t, σ), τ) = permute(t, σ ∘ τ)`. The
//! equivariance of composition under this convention is
//!
//! ```text
//! compose(permute(o, σ), inner)
//!     == permute(compose(o, [inner[σ⁻¹(j)] for j]), block_permutation(σ, sizes))
//! ```
//!
//! where `sizes[j] = inner[σ⁻¹(j)].len()`; see [`block_permutation`].

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::Permutation;
use crate::rational::{
    format_rational, in_open_unit, parse_rational, ParseRationalError, Rational,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ambient dimension must be positive")]
    ZeroDimension,
    #[error("interval on axis {axis} violates 0 <= lo < hi <= 1")]
    InvalidInterval { axis: usize },
    #[error("coordinate {axis} of the point is not in (0,1)")]
    PointOutside { axis: usize },
    #[error("E_k(0) is empty: a cube tuple needs at least one cube")]
    Empty,
    #[error("cubes {0} and {1} have overlapping interiors")]
    Overlap(usize, usize),
    #[error("expected {expected} entries, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Permutation(#[from] crate::perm::PermutationError),
    #[error(transparent)]
    Parse(#[from] ParseRationalError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn unit() -> Self {
        Interval {
            lo: Rational::zero(),
            hi: Rational::one(),
        }
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Image of `t ∈ [0,1]` under the affine map `[0,1] → [lo,hi]`.
    pub fn affine(&self, t: &Rational) -> Rational {
        &self.lo + self.length() * t
    }

    fn interiors_disjoint(&self, other: &Interval) -> bool {
        self.hi <= other.lo || other.hi <= self.lo
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CubeJson", into = "CubeJson")]
pub struct Cube {
    intervals: Vec<Interval>,
}

impl Cube {
    pub fn new(intervals: Vec<(Rational, Rational)>) -> Result<Self, CubeError> {
        if intervals.is_empty() {
            return Err(CubeError::ZeroDimension);
        }
        let zero = Rational::zero();
        let one = Rational::one();
        for (axis, (lo, hi)) in intervals.iter().enumerate() {
            if !(zero <= *lo && lo < hi && *hi <= one) {
                return Err(CubeError::InvalidInterval { axis });
            }
        }
        Ok(Cube {
            intervals: intervals
                .into_iter()
                .map(|(lo, hi)| Interval { lo, hi })
                .collect(),
        })
    }

    pub fn identity(k: usize) -> Self {
        assert!(k > 0, "identity cube needs k > 0");
        Cube {
            intervals: vec![Interval::unit(); k],
        }
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn apply_point(&self, p: &[Rational]) -> Result<Vec<Rational>, CubeError> {
        if p.len() != self.dim() {
            return Err(CubeError::DimensionMismatch {
                expected: self.dim(),
                found: p.len(),
            });
        }
        if let Some(axis) = p.iter().position(|c| !in_open_unit(c)) {
            return Err(CubeError::PointOutside { axis });
        }
        Ok(self
            .intervals
            .iter()
            .zip(p)
            .map(|(iv, c)| iv.affine(c))
            .collect())
    }

    pub fn center(&self) -> Vec<Rational> {
        let two = Rational::from_integer(2.into());
        self.intervals
            .iter()
            .map(|iv| (&iv.lo + &iv.hi) / &two)
            .collect()
    }

    /// `self ∘ inner` as embeddings: the image of `inner` under `self`.
    pub fn after(&self, inner: &Cube) -> Cube {
        debug_assert_eq!(self.dim(), inner.dim());
        Cube {
            intervals: self
                .intervals
                .iter()
                .zip(&inner.intervals)
                .map(|(o, i)| Interval {
                    lo: o.affine(&i.lo),
                    hi: o.affine(&i.hi),
                })
                .collect(),
        }
    }

    pub fn interiors_disjoint(&self, other: &Cube) -> bool {
        self.intervals
            .iter()
            .zip(&other.intervals)
            .any(|(a, b)| a.interiors_disjoint(b))
    }

    /// `e ↦ e × id_{I^m}`.
    pub fn stabilize(&self, m: usize) -> Cube {
        let mut intervals = self.intervals.clone();
        intervals.extend(std::iter::repeat_n(Interval::unit(), m));
        Cube { intervals }
    }

    /// True when `p` lies in the open cube.
    pub fn contains_open(&self, p: &[Rational]) -> bool {
        self.intervals
            .iter()
            .zip(p)
            .all(|(iv, c)| iv.lo < *c && *c < iv.hi)
    }
}

/// An operation of `E_k(n)`, `n ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CubeTupleJson", into = "CubeTupleJson")]
pub struct CubeTuple {
    k: usize,
    cubes: Vec<Cube>,
}

impl CubeTuple {
    pub fn new(cubes: Vec<Cube>) -> Result<Self, CubeError> {
        let k = cubes.first().ok_or(CubeError::Empty)?.dim();
        for c in &cubes {
            if c.dim() != k {
                return Err(CubeError::DimensionMismatch {
                    expected: k,
                    found: c.dim(),
                });
            }
        }
        let t = CubeTuple { k, cubes };
        if let Some((i, j)) = t.first_overlap() {
            return Err(CubeError::Overlap(i, j));
        }
        Ok(t)
    }

    pub fn identity(k: usize) -> Self {
        CubeTuple {
            k,
            cubes: vec![Cube::identity(k)],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    fn first_overlap(&self) -> Option<(usize, usize)> {
        for i in 0..self.cubes.len() {
            for j in i + 1..self.cubes.len() {
                if !self.cubes[i].interiors_disjoint(&self.cubes[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    fn checked(self, op: &str) -> Result<Self, CubeError> {
        match self.first_overlap() {
            None => Ok(self),
            Some((i, j)) => Err(CubeError::Internal(format!(
                "{op} produced overlapping cubes {i} and {j}"
            ))),
        }
    }

    /// Operad composition `γ(self; inner_0, …, inner_{n-1})`, in block order.
    pub fn compose(&self, inner: &[CubeTuple]) -> Result<CubeTuple, CubeError> {
        if inner.len() != self.len() {
            return Err(CubeError::SizeMismatch {
                expected: self.len(),
                found: inner.len(),
            });
        }
        if let Some(t) = inner.iter().find(|t| t.k != self.k) {
            return Err(CubeError::DimensionMismatch {
                expected: self.k,
                found: t.k,
            });
        }
        let cubes = self
            .cubes
            .iter()
            .zip(inner)
            .flat_map(|(outer, block)| block.cubes.iter().map(move |c| outer.after(c)))
            .collect();
        CubeTuple { k: self.k, cubes }.checked("compose")
    }

    /// Right action: `result.cubes[i] = self.cubes[σ(i)]`.
    pub fn permute(&self, sigma: &Permutation) -> Result<CubeTuple, CubeError> {
        if sigma.len() != self.len() {
            return Err(CubeError::SizeMismatch {
                expected: self.len(),
                found: sigma.len(),
            });
        }
        let cubes = (0..self.len())
            .map(|i| self.cubes[sigma.apply(i)].clone())
            .collect();
        CubeTuple { k: self.k, cubes }.checked("permute")
    }

    pub fn stabilize(&self, m: usize) -> CubeTuple {
        CubeTuple {
            k: self.k + m,
            cubes: self.cubes.iter().map(|c| c.stabilize(m)).collect(),
        }
    }

    pub fn centers(&self) -> Vec<Vec<Rational>> {
        self.cubes.iter().map(Cube::center).collect()
    }
}

/// The permutation of `Σ sizes` letters that moves whole blocks: result block
/// `i` is source block `σ(i)` (block `j` of the source has `sizes[j]` letters).
pub fn block_permutation(sigma: &Permutation, sizes: &[usize]) -> Permutation {
    assert_eq!(sigma.len(), sizes.len());
    let mut offsets = Vec::with_capacity(sizes.len());
    let mut acc = 0;
    for s in sizes {
        offsets.push(acc);
        acc += s;
    }
    let offsets = &offsets;
    let images = (0..sigma.len())
        .flat_map(|i| {
            let j = sigma.apply(i);
            (0..sizes[j]).map(move |a| offsets[j] + a)
        })
        .collect();
    Permutation::new(images).expect("block permutation is a bijection")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CubeJson {
    pub intervals: Vec<[String; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CubeTupleJson {
    pub k: usize,
    pub cubes: Vec<CubeJson>,
}

impl TryFrom<CubeJson> for Cube {
    type Error = CubeError;
    fn try_from(j: CubeJson) -> Result<Self, CubeError> {
        let intervals = j
            .intervals
            .iter()
            .map(|[lo, hi]| Ok((parse_rational(lo)?, parse_rational(hi)?)))
            .collect::<Result<Vec<_>, ParseRationalError>>()?;
        Cube::new(intervals)
    }
}

impl From<Cube> for CubeJson {
    fn from(c: Cube) -> Self {
        CubeJson {
            intervals: c
                .intervals
                .iter()
                .map(|iv| [format_rational(&iv.lo), format_rational(&iv.hi)])
                .collect(),
        }
    }
}

impl TryFrom<CubeTupleJson> for CubeTuple {
    type Error = CubeError;
    fn try_from(j: CubeTupleJson) -> Result<Self, CubeError> {
        let cubes = j
            .cubes
            .into_iter()
            .map(Cube::try_from)
            .collect::<Result<Vec<_>, _>>()?;
        let t = CubeTuple::new(cubes)?;
        if t.k != j.k {
            return Err(CubeError::DimensionMismatch {
                expected: j.k,
                found: t.k,
            });
        }
        Ok(t)
    }
}

impl From<CubeTuple> for CubeTupleJson {
    fn from(t: CubeTuple) -> Self {
        CubeTupleJson {
            k: t.k,
            cubes: t.cubes.into_iter().map(CubeJson::from).collect(),
        }
    }
}
