//! Grids of walls and the two multi-semi-simplicial models of the `k`-fold bar
//! construction: the *window* simplices, whose configuration sits between the
//! outer walls, and the *relative* simplices, whose configuration lives in
//! `(ℝ^k, ℝ^k ∖ I^k) × I^m` and only has to avoid the wall slabs.

use num_traits::{One, Zero};

use super::{RelConfig, ScanError};
use crate::config::{ConfPoint, Configuration};
use crate::rational::{half, rat, Rational};

fn quarter() -> Rational {
    rat(1, 4)
}

fn three_quarters() -> Rational {
    rat(3, 4)
}

fn in_middle_closed(v: &Rational) -> bool {
    quarter() <= *v && *v <= three_quarters()
}

/// Per-axis walls `1/4 < t_0 < … < t_p < 3/4`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridWalls {
    walls: Vec<Vec<Rational>>,
}

impl GridWalls {
    pub fn new(walls: Vec<Vec<Rational>>) -> Result<Self, ScanError> {
        if walls.is_empty() {
            return Err(ScanError::DimensionMismatch {
                what: "grid",
                expected: 1,
                found: 0,
            });
        }
        let lo = quarter();
        let hi = three_quarters();
        for (axis, ts) in walls.iter().enumerate() {
            let ok = !ts.is_empty()
                && ts.iter().all(|t| lo < *t && *t < hi)
                && ts.windows(2).all(|w| w[0] < w[1]);
            if !ok {
                return Err(ScanError::InvalidWalls { axis });
            }
        }
        Ok(GridWalls { walls })
    }

    pub fn k(&self) -> usize {
        self.walls.len()
    }

    /// Simplicial degree `p_j` on axis `j`.
    pub fn degree(&self, axis: usize) -> usize {
        self.walls[axis].len() - 1
    }

    pub fn axis(&self, axis: usize) -> &[Rational] {
        &self.walls[axis]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.k()).map(|j| self.degree(j)).collect()
    }

    fn forget(&self, axis: usize, index: usize) -> Result<GridWalls, ScanError> {
        if axis >= self.k() {
            return Err(ScanError::FaceIndex { axis, index });
        }
        if self.degree(axis) == 0 {
            return Err(ScanError::NoFace(axis));
        }
        if index > self.degree(axis) {
            return Err(ScanError::FaceIndex { axis, index });
        }
        let mut walls = self.walls.clone();
        walls[axis].remove(index);
        Ok(GridWalls { walls })
    }

    /// `x ∈ ∏_j [t^j_0, t^j_{p_j}]`.
    pub fn in_window(&self, x: &[Rational]) -> bool {
        self.walls
            .iter()
            .zip(x)
            .all(|(ts, xi)| ts[0] <= *xi && xi <= ts.last().unwrap())
    }

    /// First wall slab `[1/4,3/4]^{j-1} × {t^j_i} × [1/4,3/4]^{k-j}` containing `x`.
    pub fn wall_hit(&self, x: &[Rational]) -> Option<(usize, usize)> {
        for (axis, ts) in self.walls.iter().enumerate() {
            let others_inside = x
                .iter()
                .enumerate()
                .all(|(l, v)| l == axis || in_middle_closed(v));
            if !others_inside {
                continue;
            }
            if let Some(index) = ts.iter().position(|t| *t == x[axis]) {
                return Some((axis, index));
            }
        }
        None
    }

    /// Points of the relative model that are neither in the window nor have a
    /// coordinate outside `[1/4, 3/4]` block the outward retraction.
    fn in_collar(&self, x: &[Rational]) -> bool {
        (0..self.k()).any(|j| {
            let others_inside = x
                .iter()
                .enumerate()
                .all(|(l, v)| l == j || in_middle_closed(v));
            let ts = &self.walls[j];
            let v = &x[j];
            others_inside
                && ((quarter() <= *v && *v <= ts[0])
                    || (ts.last().unwrap() <= v && *v <= three_quarters()))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BarSimplex {
    /// A simplex of the bar construction of `C^{[r]}(I^k × I^m)`.
    Window {
        walls: GridWalls,
        config: Configuration,
    },
    /// A simplex of the augmented resolution of the relative configuration space.
    Relative { walls: GridWalls, config: RelConfig },
}

impl BarSimplex {
    pub fn window(walls: GridWalls, config: Configuration) -> Result<Self, ScanError> {
        if config.k() != walls.k() {
            return Err(ScanError::DimensionMismatch {
                what: "configuration",
                expected: walls.k(),
                found: config.k(),
            });
        }
        for p in config.points() {
            if !walls.in_window(p.x()) {
                return Err(ScanError::OutsideWindow);
            }
            if let Some((axis, index)) = walls.wall_hit(p.x()) {
                return Err(ScanError::HitsWall { axis, index });
            }
        }
        Ok(BarSimplex::Window {
            walls,
            config: config.to_unordered(),
        })
    }

    pub fn relative(walls: GridWalls, config: RelConfig) -> Result<Self, ScanError> {
        if config.k() != walls.k() {
            return Err(ScanError::DimensionMismatch {
                what: "configuration",
                expected: walls.k(),
                found: config.k(),
            });
        }
        for p in config.points() {
            if let Some((axis, index)) = walls.wall_hit(p.x()) {
                return Err(ScanError::HitsWall { axis, index });
            }
        }
        Ok(BarSimplex::Relative { walls, config })
    }

    pub fn walls(&self) -> &GridWalls {
        match self {
            BarSimplex::Window { walls, .. } | BarSimplex::Relative { walls, .. } => walls,
        }
    }

    pub fn is_window(&self) -> bool {
        matches!(self, BarSimplex::Window { .. })
    }

    pub fn fiber_multiplicity(&self) -> usize {
        match self {
            BarSimplex::Window { config, .. } => config.fiber_multiplicity(),
            BarSimplex::Relative { config, .. } => config.fiber_multiplicity(),
        }
    }

    /// The `index`-th face in direction `axis`. Outer faces of window simplices
    /// delete the particles beyond the new outer wall.
    pub fn face(&self, axis: usize, index: usize) -> Result<BarSimplex, ScanError> {
        let walls = self.walls().forget(axis, index)?;
        match self {
            BarSimplex::Relative { config, .. } => Ok(BarSimplex::Relative {
                walls,
                config: config.clone(),
            }),
            BarSimplex::Window { walls: old, config } => {
                let p = old.degree(axis);
                let ts = old.axis(axis);
                let config = if index == 0 {
                    config.retain(|q| q.x()[axis] >= ts[1])
                } else if index == p {
                    config.retain(|q| q.x()[axis] <= ts[p - 1])
                } else {
                    config.clone()
                };
                BarSimplex::window(walls, config)
                    .map_err(|e| ScanError::Internal(format!("face: {e}")))
            }
        }
    }

    /// `f`: keep the points inside the window.
    pub fn map_f(&self) -> Result<BarSimplex, ScanError> {
        let BarSimplex::Relative { walls, config } = self else {
            return Err(ScanError::WrongVariant("relative"));
        };
        let kept: Vec<ConfPoint> = config
            .points()
            .iter()
            .filter(|p| walls.in_window(p.x()))
            .cloned()
            .collect();
        let config = Configuration::unordered(config.k(), config.m(), kept)?;
        BarSimplex::window(walls.clone(), config)
    }

    /// `g`: regard a window configuration as a relative one.
    pub fn map_g(&self) -> Result<BarSimplex, ScanError> {
        let BarSimplex::Window { walls, config } = self else {
            return Err(ScanError::WrongVariant("window"));
        };
        let rel = RelConfig::from_canonical(config.k(), config.m(), config.points().to_vec());
        Ok(BarSimplex::Relative {
            walls: walls.clone(),
            config: rel,
        })
    }

    /// `ε`: forget the walls.
    pub fn augment(&self) -> Result<RelConfig, ScanError> {
        match self {
            BarSimplex::Relative { config, .. } => Ok(config.clone()),
            BarSimplex::Window { .. } => Err(ScanError::WrongVariant("relative")),
        }
    }

    /// Whether every point is in the window or has a coordinate outside
    /// `[1/4, 3/4]`: the subspace on which the outward retraction is defined.
    pub fn is_retractable(&self) -> bool {
        match self {
            BarSimplex::Relative { walls, config } => {
                config.points().iter().all(|p| !walls.in_collar(p.x()))
            }
            BarSimplex::Window { .. } => false,
        }
    }

    /// Homotopy from the identity (`t = 0`) to `g ∘ f` (`t = 1`): window points
    /// stay, the others move along `x ↦ c + (1 + t)(x - c)`.
    pub fn retract_outward(&self, t: &Rational) -> Result<BarSimplex, ScanError> {
        let BarSimplex::Relative { walls, config } = self else {
            return Err(ScanError::WrongVariant("relative"));
        };
        if *t < Rational::zero() || *t > Rational::one() {
            return Err(ScanError::InvalidTime(crate::rational::format_rational(t)));
        }
        if !self.is_retractable() {
            return Err(ScanError::NotRetractable);
        }
        let c = half();
        let factor = Rational::one() + t;
        let points = config
            .points()
            .iter()
            .map(|p| {
                let x = if walls.in_window(p.x()) {
                    p.x().to_vec()
                } else {
                    p.x().iter().map(|v| &c + (v - &c) * &factor).collect()
                };
                (x, p.y().to_vec())
            })
            .collect();
        let moved = RelConfig::new(config.k(), config.m(), points)
            .map_err(|e| ScanError::Internal(format!("retraction: {e}")))?;
        BarSimplex::relative(walls.clone(), moved)
            .map_err(|e| ScanError::Internal(format!("retraction: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn walls1(ts: &[(i64, i64)]) -> GridWalls {
        GridWalls::new(vec![ts.iter().map(|&(p, q)| rat(p, q)).collect()]).unwrap()
    }

    fn conf1(xs: &[(i64, i64)]) -> Configuration {
        let pts = xs
            .iter()
            .enumerate()
            .map(|(i, &(p, q))| {
                ConfPoint::new(vec![rat(p, q)], vec![rat(i as i64 + 1, 10)]).unwrap()
            })
            .collect();
        Configuration::unordered(1, 1, pts).unwrap()
    }

    fn rel1(xs: &[(i64, i64)]) -> RelConfig {
        let pts = xs
            .iter()
            .enumerate()
            .map(|(i, &(p, q))| (vec![rat(p, q)], vec![rat(i as i64 + 1, 10)]))
            .collect();
        RelConfig::new(1, 1, pts).unwrap()
    }

    #[test]
    fn walls_validation() {
        assert!(GridWalls::new(vec![vec![rat(1, 4)]]).is_err());
        assert!(GridWalls::new(vec![vec![rat(1, 2), rat(1, 3)]]).is_err());
        assert!(GridWalls::new(vec![vec![]]).is_err());
        assert_eq!(walls1(&[(3, 10), (1, 2), (7, 10)]).degrees(), vec![2]);
    }

    #[test]
    fn window_validation() {
        let w = walls1(&[(3, 10), (7, 10)]);
        assert_eq!(
            BarSimplex::window(w.clone(), conf1(&[(4, 5)])),
            Err(ScanError::OutsideWindow)
        );
        assert_eq!(
            BarSimplex::window(w.clone(), conf1(&[(3, 10)])),
            Err(ScanError::HitsWall { axis: 0, index: 0 })
        );
        assert!(BarSimplex::window(w, conf1(&[(2, 5)])).is_ok());
    }

    #[test]
    fn face_examples() {
        let s = BarSimplex::window(walls1(&[(3, 10), (1, 2), (7, 10)]), conf1(&[(2, 5)])).unwrap();
        let inner = s.face(0, 1).unwrap();
        assert_eq!(
            inner,
            BarSimplex::window(walls1(&[(3, 10), (7, 10)]), conf1(&[(2, 5)])).unwrap()
        );
        let last = s.face(0, 2).unwrap();
        assert_eq!(
            last,
            BarSimplex::window(walls1(&[(3, 10), (1, 2)]), conf1(&[(2, 5)])).unwrap()
        );
        let first = s.face(0, 0).unwrap();
        assert_eq!(
            first,
            BarSimplex::window(walls1(&[(1, 2), (7, 10)]), Configuration::empty(1, 1)).unwrap()
        );
        assert_eq!(
            s.face(0, 3),
            Err(ScanError::FaceIndex { axis: 0, index: 3 })
        );
        let bottom = BarSimplex::window(walls1(&[(1, 2)]), Configuration::empty(1, 1)).unwrap();
        assert_eq!(bottom.face(0, 0), Err(ScanError::NoFace(0)));
    }

    #[test]
    fn f_and_g() {
        let w = walls1(&[(3, 10), (7, 10)]);
        let x = BarSimplex::relative(w.clone(), rel1(&[(2, 5), (9, 10)])).unwrap();
        let fx = x.map_f().unwrap();
        assert_eq!(fx, BarSimplex::window(w.clone(), conf1(&[(2, 5)])).unwrap());
        assert_eq!(fx.map_g().unwrap().map_f().unwrap(), fx);
        assert_eq!(fx.map_g().unwrap().walls(), &w);
        assert!(x.map_g().is_err());
        assert!(fx.map_f().is_err());
    }

    #[test]
    fn retraction_endpoints() {
        let w = walls1(&[(3, 10), (7, 10)]);
        let x = BarSimplex::relative(w.clone(), rel1(&[(2, 5), (9, 10), (1, 10)])).unwrap();
        assert!(x.is_retractable());
        assert_eq!(x.retract_outward(&Rational::zero()).unwrap(), x);
        assert_eq!(
            x.retract_outward(&Rational::one()).unwrap(),
            x.map_f().unwrap().map_g().unwrap()
        );
        let collar = BarSimplex::relative(w, rel1(&[(7, 25)])).unwrap();
        assert!(!collar.is_retractable());
        assert_eq!(
            collar.retract_outward(&rat(1, 2)),
            Err(ScanError::NotRetractable)
        );
    }

    #[test]
    fn augment_forgets_walls() {
        let w = walls1(&[(3, 10), (1, 2), (7, 10)]);
        let xi = rel1(&[(2, 5), (9, 10)]);
        let x = BarSimplex::relative(w, xi.clone()).unwrap();
        assert_eq!(x.augment().unwrap(), xi);
        assert_eq!(x.face(0, 1).unwrap().augment().unwrap(), xi);
        let gf = x.map_f().unwrap().map_g().unwrap().augment().unwrap();
        assert!(gf.is_subset_of(&xi));
    }
}
