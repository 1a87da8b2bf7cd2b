//! Exact tubular neighbourhoods of the "all points over one `x`" locus.
//!
//! The normal bundle of `I^k × F_r(I^m)` inside `F_r(I^k × I^m)` is `k` copies of
//! the reduced permutation representation: a fiber vector is a `k × r` matrix
//! whose rows sum to zero. Column `j` of the matrix displaces the `x`-coordinate
//! of the `j`-th point; `y`-coordinates never move.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

use super::{ConfPoint, ConfigError, Configuration};
use crate::rational::{
    boundary_distance, format_vec, in_open_unit_cube, int, parse_vec, rat, sum_of_squares, Rational,
};

/// Rank of `kφ_{m,r}`, i.e. `k(r-1)`.
pub fn bundle_rank(k: usize, _m: usize, r: usize) -> Result<usize, ConfigError> {
    if r == 0 {
        return Err(ConfigError::ZeroRank);
    }
    Ok(k * (r - 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiskMembership {
    Interior,
    Boundary,
    Outside,
}

/// A point of the disk bundle `D(kφ_{m,r})`: base `(x, eta)` and fiber vector `w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TubularJson", into = "TubularJson")]
pub struct TubularPoint {
    k: usize,
    m: usize,
    x: Vec<Rational>,
    eta: Vec<Vec<Rational>>,
    /// `k` rows of length `r`, each summing to zero.
    w: Vec<Vec<Rational>>,
}

impl TubularPoint {
    pub fn new(
        k: usize,
        m: usize,
        x: Vec<Rational>,
        eta: Vec<Vec<Rational>>,
        w: Vec<Vec<Rational>>,
    ) -> Result<Self, ConfigError> {
        let r = eta.len();
        if r == 0 {
            return Err(ConfigError::ZeroRank);
        }
        if x.len() != k {
            return Err(ConfigError::DimensionMismatch {
                what: "x",
                expected: k,
                found: x.len(),
            });
        }
        if !in_open_unit_cube(&x) {
            return Err(ConfigError::PointOutside { index: 0 });
        }
        for (index, e) in eta.iter().enumerate() {
            if e.len() != m {
                return Err(ConfigError::DimensionMismatch {
                    what: "y",
                    expected: m,
                    found: e.len(),
                });
            }
            if !in_open_unit_cube(e) {
                return Err(ConfigError::PointOutside { index });
            }
        }
        for i in 0..r {
            if eta[i + 1..].contains(&eta[i]) {
                return Err(ConfigError::DegenerateEta);
            }
        }
        if w.len() != k {
            return Err(ConfigError::DimensionMismatch {
                what: "w row",
                expected: k,
                found: w.len(),
            });
        }
        for (row, wr) in w.iter().enumerate() {
            if wr.len() != r {
                return Err(ConfigError::DimensionMismatch {
                    what: "w column",
                    expected: r,
                    found: wr.len(),
                });
            }
            if !wr.iter().fold(Rational::zero(), |a, b| a + b).is_zero() {
                return Err(ConfigError::RowSumNonzero { row });
            }
        }
        Ok(TubularPoint { k, m, x, eta, w })
    }

    /// The zero vector over `(x, eta)`.
    pub fn zero_section(
        k: usize,
        m: usize,
        x: Vec<Rational>,
        eta: Vec<Vec<Rational>>,
    ) -> Result<Self, ConfigError> {
        let r = eta.len();
        TubularPoint::new(k, m, x, eta, vec![vec![Rational::zero(); r]; k])
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> usize {
        self.eta.len()
    }

    pub fn x(&self) -> &[Rational] {
        &self.x
    }

    pub fn eta(&self) -> &[Vec<Rational>] {
        &self.eta
    }

    pub fn w(&self) -> &[Vec<Rational>] {
        &self.w
    }

    pub fn is_zero(&self) -> bool {
        self.w.iter().flatten().all(Zero::is_zero)
    }

    pub fn norm_squared(&self) -> Rational {
        sum_of_squares(self.w.iter().flatten())
    }

    /// Squared radius of the sphere bundle over this base point.
    pub fn radius_squared(&self) -> Rational {
        let rho = boundary_distance(&self.x) / int(2);
        &rho * &rho
    }

    pub fn sphere_disk_membership(&self) -> DiskMembership {
        match self.norm_squared().cmp(&self.radius_squared()) {
            Ordering::Less => DiskMembership::Interior,
            Ordering::Equal => DiskMembership::Boundary,
            Ordering::Greater => DiskMembership::Outside,
        }
    }

    /// The flat exponential map: point `j` is `(x + w[·][j], eta_j)`.
    pub fn exp_tubular(&self) -> Result<Configuration, ConfigError> {
        if self.sphere_disk_membership() == DiskMembership::Outside {
            return Err(ConfigError::OutsideDisk);
        }
        let points = (0..self.r())
            .map(|j| {
                let x: Vec<Rational> = self
                    .x
                    .iter()
                    .zip(&self.w)
                    .map(|(xi, row)| xi + &row[j])
                    .collect();
                if !in_open_unit_cube(&x) {
                    return Err(ConfigError::Internal(
                        "exponential left the unit cube".into(),
                    ));
                }
                Ok(ConfPoint {
                    x,
                    y: self.eta[j].clone(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let c = Configuration::ordered(self.k, self.m, points)?;
        let mult = c.fiber_multiplicity();
        let expected_full = self.is_zero();
        if expected_full != (mult == self.r()) {
            return Err(ConfigError::Internal(format!(
                "exponential has multiplicity {mult} for r = {} (zero vector: {expected_full})",
                self.r()
            )));
        }
        Ok(c)
    }
}

fn random_zero_sum_row<R: Rng>(rng: &mut R, r: usize) -> Vec<Rational> {
    let mut row: Vec<Rational> = (0..r - 1)
        .map(|_| rat(rng.gen_range(-4..=4), rng.gen_range(1..=3)))
        .collect();
    let last = -row.iter().fold(Rational::zero(), |a, b| a + b);
    row.push(last);
    row
}

/// An exact point of the sphere bundle `S(kφ_{m,r})` over `(x, eta)`.
///
/// Starts from a zero-row-sum matrix of squared norm 4, reflects it through a
/// seeded random zero-row-sum direction (the second intersection of a rational
/// line with a quadric is rational) and rescales to radius `d(x, ∂I^k)/2`.
///
/// For `k = 1, r ∈ {2, 3}` the quadratic form `Σ w²` on zero-sum vectors takes
/// no non-zero square values (`2a²` and `2(a² + ab + b²)`), so no rational point
/// exists and an error is returned.
pub fn rational_sphere_point(
    k: usize,
    m: usize,
    r: usize,
    x: Vec<Rational>,
    eta: Vec<Vec<Rational>>,
    seed: u64,
) -> Result<TubularPoint, ConfigError> {
    if r < 2 {
        return Err(ConfigError::EmptySphere);
    }
    if k == 1 && r < 4 {
        return Err(ConfigError::NoRationalSpherePoint { r });
    }
    if eta.len() != r {
        return Err(ConfigError::DimensionMismatch {
            what: "eta",
            expected: r,
            found: eta.len(),
        });
    }
    let mut base = vec![vec![Rational::zero(); r]; k];
    if k >= 2 {
        for row in base.iter_mut().take(2) {
            row[0] = int(1);
            row[1] = int(-1);
        }
    } else {
        base[0][0] = int(1);
        base[0][1] = int(1);
        base[0][2] = int(-1);
        base[0][3] = int(-1);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dir: Vec<Vec<Rational>> = (0..k).map(|_| random_zero_sum_row(&mut rng, r)).collect();
    let q_dir = sum_of_squares(dir.iter().flatten());
    let w = if q_dir.is_positive() {
        let b: Rational = base
            .iter()
            .flatten()
            .zip(dir.iter().flatten())
            .map(|(a, b)| a * b)
            .sum();
        let lambda = -(b * int(2)) / q_dir;
        base.iter()
            .zip(&dir)
            .map(|(br, dr)| br.iter().zip(dr).map(|(a, d)| a + &lambda * d).collect())
            .collect()
    } else {
        base
    };
    // |w|^2 = 4, target radius d/2, so scale by d/4
    let scale = boundary_distance(&x) / int(4);
    let w = w
        .into_iter()
        .map(|row: Vec<Rational>| row.into_iter().map(|v| v * &scale).collect())
        .collect();
    let p = TubularPoint::new(k, m, x, eta, w)?;
    if p.sphere_disk_membership() != DiskMembership::Boundary {
        return Err(ConfigError::Internal(
            "sphere generator missed the boundary".into(),
        ));
    }
    Ok(p)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TubularJson {
    pub k: usize,
    pub m: usize,
    pub x: Vec<String>,
    pub eta: Vec<Vec<String>>,
    pub w: Vec<Vec<String>>,
}

impl TryFrom<TubularJson> for TubularPoint {
    type Error = ConfigError;
    fn try_from(j: TubularJson) -> Result<Self, ConfigError> {
        let eta = j
            .eta
            .iter()
            .map(|e| parse_vec(e))
            .collect::<Result<Vec<_>, _>>()?;
        let w =
            j.w.iter()
                .map(|e| parse_vec(e))
                .collect::<Result<Vec<_>, _>>()?;
        TubularPoint::new(j.k, j.m, parse_vec(&j.x)?, eta, w)
    }
}

impl From<TubularPoint> for TubularJson {
    fn from(p: TubularPoint) -> Self {
        TubularJson {
            k: p.k,
            m: p.m,
            x: format_vec(&p.x),
            eta: p.eta.iter().map(|e| format_vec(e)).collect(),
            w: p.w.iter().map(|e| format_vec(e)).collect(),
        }
    }
}
