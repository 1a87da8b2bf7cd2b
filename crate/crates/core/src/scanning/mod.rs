//! Scanning: comparing labelled configurations with relative configurations.
//!
//! `S^k` is modelled as `ℝ^k / (ℝ^k ∖ I^k)`, so a label is either a point of the
//! open cube or the basepoint. A relative configuration lives in
//! `ℝ^k × I^m` and forgets every point whose `ℝ^k`-coordinate leaves `I^k`.
//!
//! The scaling homotopy pushes points radially (sup-norm) away from the centre
//! `c = (1/2, …, 1/2)` of `I^k`, separately over each `y ∈ I^m`. With radius
//! `R = η(ξ)` the endpoint map `ψ_R` on sup-radii `s` is
//!
//! ```text
//! ψ_R(s) = s                                   s ≤ R/2
//!        = R/2 + (s - R/2)(1 - R)/R            R/2 < s ≤ R
//!        = s + 1/2 - R                         s > R
//! ```
//!
//! which is increasing, fixes the ball of radius `R/2`, never decreases a radius
//! and sends every `s > R` to a radius `> 1/2`, i.e. out of `I^k`. At time `t`
//! the radius is `s + t(ψ_R(s) - s)`. When `R ≥ 1/2` (or `η = ∞`) nothing moves.

mod bar;

pub use bar::{BarSimplex, GridWalls};

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::{ConfPoint, ConfigError, PointJson};
use crate::rational::{
    format_vec, half, in_open_unit_cube, int, parse_vec, sup_dist_from_center, ParseRationalError,
    Rational,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScanError {
    #[error("expected {what} of dimension {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("fiber coordinate {index} is not in the open cube")]
    FiberOutside { index: usize },
    #[error("two entries share the same point")]
    Duplicate,
    #[error("time {0} is not in [0,1]")]
    InvalidTime(String),
    #[error("walls on axis {axis} must be strictly increasing inside (1/4, 3/4)")]
    InvalidWalls { axis: usize },
    #[error("a configuration point lies on a wall slab (axis {axis}, wall {index})")]
    HitsWall { axis: usize, index: usize },
    #[error("a configuration point lies outside the window")]
    OutsideWindow,
    #[error("face index {index} out of range on axis {axis}")]
    FaceIndex { axis: usize, index: usize },
    #[error("axis {0} has a single wall; no face exists")]
    NoFace(usize),
    #[error("operation needs a {0} simplex")]
    WrongVariant(&'static str),
    #[error("simplex has points between the outer walls and the edge of [1/4,3/4]^k")]
    NotRetractable,
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Parse(#[from] ParseRationalError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Basepoint,
    Point(Vec<Rational>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledEntry {
    pub y: Vec<Rational>,
    pub label: Label,
}

/// A configuration in `I^m` with labels in `S^k`, kept canonical: entries
/// labelled by the basepoint (or by a point outside `I^k`) are dropped and the
/// rest are sorted by `y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SphereLabeledConfig {
    k: usize,
    m: usize,
    entries: Vec<LabeledEntry>,
}

impl SphereLabeledConfig {
    pub fn new(k: usize, m: usize, entries: Vec<LabeledEntry>) -> Result<Self, ScanError> {
        for (index, e) in entries.iter().enumerate() {
            if e.y.len() != m {
                return Err(ScanError::DimensionMismatch {
                    what: "fiber point",
                    expected: m,
                    found: e.y.len(),
                });
            }
            if !in_open_unit_cube(&e.y) {
                return Err(ScanError::FiberOutside { index });
            }
            if let Label::Point(x) = &e.label {
                if x.len() != k {
                    return Err(ScanError::DimensionMismatch {
                        what: "label",
                        expected: k,
                        found: x.len(),
                    });
                }
            }
        }
        let mut ys: Vec<&Vec<Rational>> = entries.iter().map(|e| &e.y).collect();
        ys.sort();
        if ys.windows(2).any(|w| w[0] == w[1]) {
            return Err(ScanError::Duplicate);
        }
        let mut entries: Vec<LabeledEntry> = entries
            .into_iter()
            .filter(|e| matches!(&e.label, Label::Point(x) if in_open_unit_cube(x)))
            .collect();
        entries.sort();
        Ok(SphereLabeledConfig { k, m, entries })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn entries(&self) -> &[LabeledEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A configuration in `(ℝ^k, ℝ^k ∖ I^k) × I^m`, stored by its canonical
/// representative: the points with `x ∈ I^k`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RelConfigJson", into = "RelConfigJson")]
pub struct RelConfig {
    k: usize,
    m: usize,
    points: Vec<ConfPoint>,
}

impl RelConfig {
    /// Accepts points anywhere in `ℝ^k × I^m`; those outside `I^k × I^m` vanish.
    pub fn new(
        k: usize,
        m: usize,
        points: Vec<(Vec<Rational>, Vec<Rational>)>,
    ) -> Result<Self, ScanError> {
        for (index, (x, y)) in points.iter().enumerate() {
            if x.len() != k {
                return Err(ScanError::DimensionMismatch {
                    what: "point",
                    expected: k,
                    found: x.len(),
                });
            }
            if y.len() != m {
                return Err(ScanError::DimensionMismatch {
                    what: "fiber point",
                    expected: m,
                    found: y.len(),
                });
            }
            if !in_open_unit_cube(y) {
                return Err(ScanError::FiberOutside { index });
            }
        }
        let mut all: Vec<&(Vec<Rational>, Vec<Rational>)> = points.iter().collect();
        all.sort();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(ScanError::Duplicate);
        }
        let mut kept: Vec<ConfPoint> = points
            .into_iter()
            .filter(|(x, _)| in_open_unit_cube(x))
            .map(|(x, y)| ConfPoint::new(x, y))
            .collect::<Result<_, _>>()?;
        kept.sort();
        Ok(RelConfig { k, m, points: kept })
    }

    pub(crate) fn from_canonical(k: usize, m: usize, mut points: Vec<ConfPoint>) -> Self {
        points.sort();
        RelConfig { k, m, points }
    }

    pub fn empty(k: usize, m: usize) -> Self {
        RelConfig {
            k,
            m,
            points: Vec::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn points(&self) -> &[ConfPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Largest number of points over one `x ∈ ℝ^k` (the filtration index).
    pub fn fiber_multiplicity(&self) -> usize {
        max_group(self.points.iter().map(|p| p.x()))
    }

    /// Largest number of points over one `y ∈ I^m`.
    pub fn max_points_per_y(&self) -> usize {
        max_group(self.points.iter().map(|p| p.y()))
    }

    pub fn is_subset_of(&self, other: &RelConfig) -> bool {
        self.points
            .iter()
            .all(|p| other.points.binary_search(p).is_ok())
    }
}

fn max_group<'a>(keys: impl Iterator<Item = &'a [Rational]>) -> usize {
    let mut counts: BTreeMap<&[Rational], usize> = BTreeMap::new();
    for key in keys {
        *counts.entry(key).or_default() += 1;
    }
    counts.into_values().max().unwrap_or(0)
}

/// `ρ`: each labelled entry `(y, x)` becomes the point `(x, y)`.
pub fn rho(lambda: &SphereLabeledConfig) -> RelConfig {
    let points = lambda
        .entries
        .iter()
        .map(|e| match &e.label {
            Label::Point(x) => {
                ConfPoint::new(x.clone(), e.y.clone()).expect("canonical labels lie in I^k")
            }
            Label::Basepoint => unreachable!("canonical form has no basepoint entries"),
        })
        .collect();
    RelConfig::from_canonical(lambda.k, lambda.m, points)
}

/// Half the second-smallest distance to the centre, minimised over the
/// `y`-fibers holding at least two points; `None` stands for `+∞`.
pub fn eta(xi: &RelConfig) -> Option<Rational> {
    let mut fibers: BTreeMap<&[Rational], Vec<Rational>> = BTreeMap::new();
    for p in &xi.points {
        fibers
            .entry(p.y())
            .or_default()
            .push(sup_dist_from_center(p.x()));
    }
    fibers
        .into_values()
        .filter(|d| d.len() >= 2)
        .map(|mut d| {
            d.sort();
            &d[1] / int(2)
        })
        .min()
}

fn psi(radius: &Rational, s: &Rational) -> Rational {
    let half_r = radius / int(2);
    if *s <= half_r {
        s.clone()
    } else if s <= radius {
        &half_r + (s - &half_r) * (Rational::one() - radius) / radius
    } else {
        s + half() - radius
    }
}

/// `φ^R_t` applied to one point of `ℝ^k`.
pub fn radial_push(t: &Rational, radius: Option<&Rational>, x: &[Rational]) -> Vec<Rational> {
    let radius = match radius {
        Some(r) if *r < half() => r,
        _ => return x.to_vec(),
    };
    let s = sup_dist_from_center(x);
    if s.is_zero() {
        return x.to_vec();
    }
    let target = &s + t * (psi(radius, &s) - &s);
    let factor = target / &s;
    let c = half();
    x.iter().map(|xi| &c + (xi - &c) * &factor).collect()
}

fn check_time(t: &Rational) -> Result<(), ScanError> {
    if *t < Rational::zero() || *t > Rational::one() {
        return Err(ScanError::InvalidTime(crate::rational::format_rational(t)));
    }
    Ok(())
}

/// `H(t, ξ)`: push every point with `φ^{η(ξ)}_t` and drop what leaves `I^k`.
pub fn scan_homotopy(t: &Rational, xi: &RelConfig) -> Result<RelConfig, ScanError> {
    check_time(t)?;
    let radius = eta(xi);
    let points = xi
        .points
        .iter()
        .map(|p| (radial_push(t, radius.as_ref(), p.x()), p.y().to_vec()))
        .collect();
    let out = RelConfig::new(xi.k, xi.m, points)
        .map_err(|e| ScanError::Internal(format!("scan homotopy: {e}")))?;
    if out.fiber_multiplicity() > xi.fiber_multiplicity() {
        return Err(ScanError::Internal(
            "scan homotopy raised the filtration index".into(),
        ));
    }
    Ok(out)
}

/// `h`: the endpoint of the scaling homotopy, read as a labelled configuration.
pub fn collapse(xi: &RelConfig) -> Result<SphereLabeledConfig, ScanError> {
    let end = scan_homotopy(&Rational::one(), xi)?;
    if end.max_points_per_y() > 1 {
        return Err(ScanError::Internal(
            "collapse left two points over one fiber".into(),
        ));
    }
    let entries = end
        .points
        .into_iter()
        .map(|p| LabeledEntry {
            y: p.y().to_vec(),
            label: Label::Point(p.x().to_vec()),
        })
        .collect();
    SphereLabeledConfig::new(xi.k, xi.m, entries)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelConfigJson {
    pub k: usize,
    pub m: usize,
    pub points: Vec<PointJson>,
}

impl TryFrom<RelConfigJson> for RelConfig {
    type Error = ScanError;
    fn try_from(j: RelConfigJson) -> Result<Self, ScanError> {
        let points = j
            .points
            .iter()
            .map(|p| Ok((parse_vec(&p.x)?, parse_vec(&p.y)?)))
            .collect::<Result<Vec<_>, ParseRationalError>>()?;
        RelConfig::new(j.k, j.m, points)
    }
}

impl From<RelConfig> for RelConfigJson {
    fn from(c: RelConfig) -> Self {
        RelConfigJson {
            k: c.k,
            m: c.m,
            points: c
                .points
                .iter()
                .map(|p| PointJson {
                    x: format_vec(p.x()),
                    y: format_vec(p.y()),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn entry(y: (i64, i64), x: Option<(i64, i64)>) -> LabeledEntry {
        LabeledEntry {
            y: vec![rat(y.0, y.1)],
            label: x.map_or(Label::Basepoint, |(p, q)| Label::Point(vec![rat(p, q)])),
        }
    }

    type Frac = (i64, i64);

    fn rel(points: &[(Frac, Frac)]) -> RelConfig {
        RelConfig::new(
            1,
            1,
            points
                .iter()
                .map(|&((a, b), (c, d))| (vec![rat(a, b)], vec![rat(c, d)]))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rho_examples() {
        let all_base =
            SphereLabeledConfig::new(1, 1, vec![entry((1, 3), None), entry((1, 2), None)]).unwrap();
        assert!(all_base.is_empty());
        assert!(rho(&all_base).is_empty());

        let one = SphereLabeledConfig::new(1, 1, vec![entry((1, 2), Some((1, 3)))]).unwrap();
        assert_eq!(rho(&one), rel(&[((1, 3), (1, 2))]));
    }

    #[test]
    fn labels_outside_cube_are_basepoint() {
        let a = SphereLabeledConfig::new(
            1,
            1,
            vec![entry((1, 2), Some((3, 2))), entry((1, 3), Some((1, 3)))],
        )
        .unwrap();
        let b = SphereLabeledConfig::new(1, 1, vec![entry((1, 3), Some((1, 3)))]).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            SphereLabeledConfig::new(1, 1, vec![entry((1, 2), None), entry((1, 2), Some((1, 3)))]),
            Err(ScanError::Duplicate)
        );
    }

    #[test]
    fn rel_config_canonical() {
        let c = RelConfig::new(
            1,
            1,
            vec![
                (vec![rat(5, 4)], vec![rat(1, 2)]),
                (vec![rat(1, 3)], vec![rat(1, 2)]),
            ],
        )
        .unwrap();
        assert_eq!(c, rel(&[((1, 3), (1, 2))]));
        assert!(RelConfig::new(1, 1, vec![(vec![rat(1, 3)], vec![rat(1, 1)])]).is_err());
    }

    #[test]
    fn eta_values() {
        assert_eq!(eta(&rel(&[((1, 3), (1, 2)), ((1, 3), (1, 4))])), None);
        // distances 0 and 1/5 over y = 1/2
        assert_eq!(
            eta(&rel(&[((1, 2), (1, 2)), ((7, 10), (1, 2))])),
            Some(rat(1, 10))
        );
    }

    #[test]
    fn homotopy_identity_at_zero() {
        let xi = rel(&[((1, 2), (1, 2)), ((7, 10), (1, 2)), ((1, 5), (1, 3))]);
        assert_eq!(scan_homotopy(&Rational::zero(), &xi).unwrap(), xi);
        assert!(scan_homotopy(&rat(3, 2), &xi).is_err());
    }

    #[test]
    fn singleton_fibers_do_not_move() {
        let xi = rel(&[((1, 5), (1, 2)), ((4, 5), (1, 3))]);
        assert_eq!(scan_homotopy(&Rational::one(), &xi).unwrap(), xi);
    }

    #[test]
    fn far_point_leaves_the_cube() {
        // R = 1/10; the point at distance 1/5 goes to radius 1/5 + 1/2 - 1/10 = 3/5.
        let xi = rel(&[((1, 2), (1, 2)), ((7, 10), (1, 2))]);
        assert_eq!(
            radial_push(&Rational::one(), Some(&rat(1, 10)), &[rat(7, 10)]),
            vec![rat(11, 10)]
        );
        assert_eq!(
            scan_homotopy(&Rational::one(), &xi).unwrap(),
            rel(&[((1, 2), (1, 2))])
        );
        let mid = scan_homotopy(&rat(1, 2), &xi).unwrap();
        assert_eq!(mid, rel(&[((1, 2), (1, 2)), ((9, 10), (1, 2))]));
    }

    #[test]
    fn psi_is_continuous_and_exits() {
        let r = rat(1, 5);
        assert_eq!(psi(&r, &rat(1, 10)), rat(1, 10));
        assert_eq!(psi(&r, &r), half());
        assert!(psi(&r, &rat(21, 100)) > half());
        assert_eq!(psi(&r, &rat(3, 20)), rat(1, 10) + rat(1, 20) * rat(4, 1));
    }

    #[test]
    fn collapse_examples() {
        assert!(collapse(&RelConfig::empty(1, 1)).unwrap().is_empty());
        let two = rel(&[((1, 2), (1, 2)), ((7, 10), (1, 2))]);
        let h = collapse(&two).unwrap();
        assert_eq!(h.len(), 1);
        let lambda = SphereLabeledConfig::new(
            1,
            1,
            vec![entry((1, 2), Some((1, 3))), entry((1, 4), Some((4, 5)))],
        )
        .unwrap();
        assert_eq!(collapse(&rho(&lambda)).unwrap(), lambda);
    }
}
