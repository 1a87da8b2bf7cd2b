//! Configurations of points in `I^k × I^m` and the fiberwise filtration.
//!
//! A configuration lies in the `r`-th filtration stage when no vertical fiber
//! `{x} × I^m` contains more than `r` of its points. Little `k`-cubes act on the
//! `I^k` factor only, which is why that action preserves every stage.

mod tubular;

pub use tubular::{bundle_rank, rational_sphere_point, DiskMembership, TubularJson, TubularPoint};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cubes::{CubeError, CubeTuple};
use crate::rational::{format_vec, in_open_unit_cube, parse_vec, ParseRationalError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("point has {found} {what}-coordinates, expected {expected}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("point {index} has a coordinate outside (0,1)")]
    PointOutside { index: usize },
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("ordered configuration spaces are empty for n = 0")]
    EmptyOrdered,
    #[error("part {0} of the module action is empty")]
    EmptyPart(usize),
    #[error("bundle rank needs r >= 1")]
    ZeroRank,
    #[error("displacement row {row} does not sum to zero")]
    RowSumNonzero { row: usize },
    #[error("the fiber points eta are not pairwise distinct")]
    DegenerateEta,
    #[error("displacement too long: |w|^2 exceeds (d(x, boundary)/2)^2")]
    OutsideDisk,
    #[error("the sphere bundle is empty for r < 2")]
    EmptySphere,
    #[error("no rational point lies on this sphere (k = 1, r = {r})")]
    NoRationalSpherePoint { r: usize },
    #[error(transparent)]
    Cube(#[from] CubeError),
    #[error(transparent)]
    Parse(#[from] ParseRationalError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// A point `(x, y) ∈ I^k × I^m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConfPoint {
    x: Vec<Rational>,
    y: Vec<Rational>,
}

impl ConfPoint {
    pub fn new(x: Vec<Rational>, y: Vec<Rational>) -> Result<Self, ConfigError> {
        if !in_open_unit_cube(&x) || !in_open_unit_cube(&y) {
            return Err(ConfigError::PointOutside { index: 0 });
        }
        Ok(ConfPoint { x, y })
    }

    pub fn x(&self) -> &[Rational] {
        &self.x
    }

    pub fn y(&self) -> &[Rational] {
        &self.y
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FiltrationIndex(pub usize);

/// A finite configuration in `I^k × I^m`.
///
/// Unordered configurations are kept sorted lexicographically, so `==` decides
/// equality in `C_n`. Ordered ones keep their list order and have `n ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ConfigurationJson", into = "ConfigurationJson")]
pub struct Configuration {
    k: usize,
    m: usize,
    points: Vec<ConfPoint>,
    ordered: bool,
}

impl Configuration {
    pub fn ordered(k: usize, m: usize, points: Vec<ConfPoint>) -> Result<Self, ConfigError> {
        if points.is_empty() {
            return Err(ConfigError::EmptyOrdered);
        }
        Self::validated(k, m, points, true)
    }

    pub fn unordered(k: usize, m: usize, mut points: Vec<ConfPoint>) -> Result<Self, ConfigError> {
        points.sort();
        Self::validated(k, m, points, false)
    }

    pub fn empty(k: usize, m: usize) -> Self {
        Configuration {
            k,
            m,
            points: Vec::new(),
            ordered: false,
        }
    }

    fn validated(
        k: usize,
        m: usize,
        points: Vec<ConfPoint>,
        ordered: bool,
    ) -> Result<Self, ConfigError> {
        for (index, p) in points.iter().enumerate() {
            if p.x.len() != k {
                return Err(ConfigError::DimensionMismatch {
                    what: "x",
                    expected: k,
                    found: p.x.len(),
                });
            }
            if p.y.len() != m {
                return Err(ConfigError::DimensionMismatch {
                    what: "y",
                    expected: m,
                    found: p.y.len(),
                });
            }
            if !in_open_unit_cube(&p.x) || !in_open_unit_cube(&p.y) {
                return Err(ConfigError::PointOutside { index });
            }
        }
        let c = Configuration {
            k,
            m,
            points,
            ordered,
        };
        if let Some((i, j)) = c.first_duplicate() {
            return Err(ConfigError::DuplicatePoint(i, j));
        }
        Ok(c)
    }

    fn first_duplicate(&self) -> Option<(usize, usize)> {
        let mut seen: BTreeMap<&ConfPoint, usize> = BTreeMap::new();
        for (i, p) in self.points.iter().enumerate() {
            if let Some(&j) = seen.get(p) {
                return Some((j, i));
            }
            seen.insert(p, i);
        }
        None
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_ordered(&self) -> bool {
        self.ordered
    }

    pub fn points(&self) -> &[ConfPoint] {
        &self.points
    }

    /// The image in `C_n`: forget the order and canonicalize.
    pub fn to_unordered(&self) -> Configuration {
        let mut points = self.points.clone();
        points.sort();
        Configuration {
            k: self.k,
            m: self.m,
            points,
            ordered: false,
        }
    }

    /// Points kept by `keep`, in the same model (ordered stays ordered unless
    /// nothing survives, in which case the empty unordered value is returned).
    pub fn retain(&self, mut keep: impl FnMut(&ConfPoint) -> bool) -> Configuration {
        let points: Vec<ConfPoint> = self.points.iter().filter(|p| keep(p)).cloned().collect();
        let ordered = self.ordered && !points.is_empty();
        Configuration {
            k: self.k,
            m: self.m,
            points,
            ordered,
        }
    }

    /// The largest number of points sharing one `x` value; 0 when empty.
    pub fn fiber_multiplicity(&self) -> usize {
        let mut counts: BTreeMap<&[Rational], usize> = BTreeMap::new();
        for p in &self.points {
            *counts.entry(&p.x).or_default() += 1;
        }
        counts.into_values().max().unwrap_or(0)
    }

    pub fn in_filtration(&self, r: FiltrationIndex) -> bool {
        self.fiber_multiplicity() <= r.0
    }

    /// The left `E_k`-module structure: part `i` is pushed through cube `i` on
    /// the `I^k` factor and the images are united, in block order.
    pub fn act(op: &CubeTuple, parts: &[Configuration]) -> Result<Configuration, ConfigError> {
        if parts.len() != op.len() {
            return Err(CubeError::SizeMismatch {
                expected: op.len(),
                found: parts.len(),
            }
            .into());
        }
        let k = op.k();
        let m = parts[0].m;
        let mut points = Vec::new();
        for (i, (cube, part)) in op.cubes().iter().zip(parts).enumerate() {
            if part.k != k {
                return Err(ConfigError::DimensionMismatch {
                    what: "x",
                    expected: k,
                    found: part.k,
                });
            }
            if part.m != m {
                return Err(ConfigError::DimensionMismatch {
                    what: "y",
                    expected: m,
                    found: part.m,
                });
            }
            if part.is_empty() {
                return Err(ConfigError::EmptyPart(i));
            }
            for p in &part.points {
                points.push(ConfPoint {
                    x: cube.apply_point(&p.x)?,
                    y: p.y.clone(),
                });
            }
        }
        let ordered = parts.iter().all(|p| p.ordered);
        if !ordered {
            points.sort();
        }
        let c = Configuration {
            k,
            m,
            points,
            ordered,
        };
        if let Some((i, j)) = c.first_duplicate() {
            return Err(ConfigError::Internal(format!(
                "act produced coincident points {i} and {j}"
            )));
        }
        Ok(c)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointJson {
    pub x: Vec<String>,
    pub y: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigurationJson {
    pub k: usize,
    pub m: usize,
    pub points: Vec<PointJson>,
    #[serde(default)]
    pub ordered: bool,
}

impl TryFrom<ConfigurationJson> for Configuration {
    type Error = ConfigError;
    fn try_from(j: ConfigurationJson) -> Result<Self, ConfigError> {
        let points = j
            .points
            .iter()
            .map(|p| {
                Ok(ConfPoint {
                    x: parse_vec(&p.x)?,
                    y: parse_vec(&p.y)?,
                })
            })
            .collect::<Result<Vec<_>, ConfigError>>()?;
        if j.ordered {
            Configuration::ordered(j.k, j.m, points)
        } else {
            Configuration::unordered(j.k, j.m, points)
        }
    }
}

impl From<Configuration> for ConfigurationJson {
    fn from(c: Configuration) -> Self {
        ConfigurationJson {
            k: c.k,
            m: c.m,
            points: c
                .points
                .iter()
                .map(|p| PointJson {
                    x: format_vec(&p.x),
                    y: format_vec(&p.y),
                })
                .collect(),
            ordered: c.ordered,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubes::Cube;
    use crate::rational::rat;

    fn pt(x: &[(i64, i64)], y: &[(i64, i64)]) -> ConfPoint {
        ConfPoint::new(
            x.iter().map(|&(p, q)| rat(p, q)).collect(),
            y.iter().map(|&(p, q)| rat(p, q)).collect(),
        )
        .unwrap()
    }

    /// Eight points over three vertical lines with 2, 4 and 2 points.
    fn figure_one() -> Configuration {
        let pts = vec![
            pt(&[(1, 8)], &[(1, 4)]),
            pt(&[(1, 8)], &[(3, 8)]),
            pt(&[(3, 8)], &[(1, 13)]),
            pt(&[(3, 8)], &[(3, 8)]),
            pt(&[(3, 8)], &[(19, 40)]),
            pt(&[(3, 8)], &[(31, 40)]),
            pt(&[(5, 8)], &[(2, 5)]),
            pt(&[(5, 8)], &[(5, 8)]),
        ];
        Configuration::unordered(1, 1, pts).unwrap()
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(Configuration::empty(1, 1).fiber_multiplicity(), 0);
        assert_eq!(figure_one().fiber_multiplicity(), 4);
        let distinct = Configuration::ordered(
            1,
            1,
            vec![pt(&[(1, 3)], &[(1, 2)]), pt(&[(2, 3)], &[(1, 2)])],
        )
        .unwrap();
        assert_eq!(distinct.fiber_multiplicity(), 1);
    }

    #[test]
    fn filtration_examples() {
        let f = figure_one();
        assert!(f.in_filtration(FiltrationIndex(4)));
        assert!(!f.in_filtration(FiltrationIndex(3)));
        assert!(f.in_filtration(FiltrationIndex(8)));
        let same_fiber = Configuration::unordered(
            1,
            1,
            vec![pt(&[(1, 3)], &[(1, 4)]), pt(&[(1, 3)], &[(1, 2)])],
        )
        .unwrap();
        assert!(!same_fiber.in_filtration(FiltrationIndex(1)));
    }

    #[test]
    fn constructor_errors() {
        assert_eq!(
            Configuration::ordered(1, 1, vec![]),
            Err(ConfigError::EmptyOrdered)
        );
        let p = pt(&[(1, 3)], &[(1, 2)]);
        assert_eq!(
            Configuration::ordered(1, 1, vec![p.clone(), p.clone()]),
            Err(ConfigError::DuplicatePoint(0, 1))
        );
        assert!(matches!(
            Configuration::unordered(2, 1, vec![p]),
            Err(ConfigError::DimensionMismatch { .. })
        ));
        assert!(ConfPoint::new(vec![rat(1, 1)], vec![]).is_err());
    }

    #[test]
    fn act_examples() {
        let single = Configuration::ordered(1, 1, vec![pt(&[(1, 2)], &[(1, 3)])]).unwrap();
        assert_eq!(
            Configuration::act(&CubeTuple::identity(1), std::slice::from_ref(&single)).unwrap(),
            single
        );

        let op = CubeTuple::new(vec![
            Cube::new(vec![(rat(0, 1), rat(1, 2))]).unwrap(),
            Cube::new(vec![(rat(1, 2), rat(1, 1))]).unwrap(),
        ])
        .unwrap();
        let out = Configuration::act(&op, &[single.clone(), single]).unwrap();
        let xs: Vec<_> = out.points().iter().map(|p| p.x()[0].clone()).collect();
        assert_eq!(xs, vec![rat(1, 4), rat(3, 4)]);
        assert_eq!(out.fiber_multiplicity(), 1);
    }

    #[test]
    fn act_keeps_filtration() {
        let op = CubeTuple::new(vec![
            Cube::new(vec![(rat(0, 1), rat(1, 2))]).unwrap(),
            Cube::new(vec![(rat(1, 2), rat(1, 1))]).unwrap(),
        ])
        .unwrap();
        let f = figure_one();
        let out = Configuration::act(&op, &[f.clone(), f]).unwrap();
        assert_eq!(out.len(), 16);
        assert_eq!(out.fiber_multiplicity(), 4);
        assert!(Configuration::act(&op, &[Configuration::empty(1, 1), figure_one()]).is_err());
    }

    #[test]
    fn json_schema() {
        let s = r#"{"k":1,"m":1,"points":[{"x":["1/3"],"y":["1/2"]},{"x":["1/4"],"y":["1/2"]}]}"#;
        let c: Configuration = serde_json::from_str(s).unwrap();
        assert!(!c.is_ordered());
        assert_eq!(c.points()[0].x(), &[rat(1, 4)]);
        let out = serde_json::to_string(&c).unwrap();
        assert_eq!(
            out,
            r#"{"k":1,"m":1,"points":[{"x":["1/4"],"y":["1/2"]},{"x":["1/3"],"y":["1/2"]}],"ordered":false}"#
        );
    }
}
