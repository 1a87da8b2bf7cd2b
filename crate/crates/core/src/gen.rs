//! Seeded random inputs for property checks. Everything is exact; denominators
//! are kept small so the arithmetic stays cheap.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::config::{rational_sphere_point, ConfPoint, Configuration, TubularPoint};
use crate::cubes::{Cube, CubeTuple};
use crate::homology::SparseMatrix;
use crate::rational::{boundary_distance, int, rat, Rational};
use crate::scanning::{BarSimplex, GridWalls, Label, LabeledEntry, RelConfig, SphereLabeledConfig};

/// A rational `p/q` with `lo < p/q < hi`, drawn from the grid of step `1/q`.
pub fn open_rational<R: Rng + ?Sized>(rng: &mut R, lo: i64, hi: i64, q: i64) -> Rational {
    rat(rng.gen_range(lo * q + 1..hi * q), q)
}

pub fn open_unit_point<R: Rng + ?Sized>(rng: &mut R, dim: usize, q: i64) -> Vec<Rational> {
    (0..dim).map(|_| open_rational(rng, 0, 1, q)).collect()
}

/// `n` cubes with disjoint interiors: repeatedly split a random box along a
/// random axis, then shrink each box a little and shuffle.
pub fn cube_tuple<R: Rng + ?Sized>(rng: &mut R, k: usize, n: usize) -> CubeTuple {
    if n == 0 {
        return CubeTuple::new(Vec::new()).expect("empty tuple");
    }
    let mut boxes: Vec<Vec<(Rational, Rational)>> = vec![vec![(int(0), int(1)); k]];
    while boxes.len() < n {
        let i = rng.gen_range(0..boxes.len());
        let axis = rng.gen_range(0..k);
        let (lo, hi) = boxes[i][axis].clone();
        let cut = &lo + (&hi - &lo) * rat(rng.gen_range(1..8), 8);
        let mut other = boxes[i].clone();
        boxes[i][axis] = (lo, cut.clone());
        other[axis] = (cut, hi);
        boxes.push(other);
    }
    let mut cubes: Vec<Cube> = boxes
        .into_iter()
        .map(|b| {
            let intervals = b
                .into_iter()
                .map(|(lo, hi)| {
                    let len = &hi - &lo;
                    let a = &lo + &len * rat(rng.gen_range(0..4), 16);
                    let z = &hi - &len * rat(rng.gen_range(0..4), 16);
                    (a, z)
                })
                .collect();
            Cube::new(intervals).expect("shrunken box is a cube")
        })
        .collect();
    cubes.shuffle(rng);
    CubeTuple::new(cubes).expect("split boxes are disjoint")
}

/// `n` points in `I^k × I^m` whose `x`-coordinates come from a pool of
/// `pool` values, so that several points can share a fiber.
pub fn configuration<R: Rng + ?Sized>(
    rng: &mut R,
    k: usize,
    m: usize,
    n: usize,
    pool: usize,
) -> Configuration {
    let xs: Vec<Vec<Rational>> = (0..pool.max(1))
        .map(|_| open_unit_point(rng, k, 16))
        .collect();
    let mut points: Vec<ConfPoint> = Vec::with_capacity(n);
    while points.len() < n {
        let x = xs[rng.gen_range(0..xs.len())].clone();
        let y = open_unit_point(rng, m, 16);
        let p = ConfPoint::new(x, y).expect("points in the open cube");
        if !points.contains(&p) {
            points.push(p);
        }
    }
    Configuration::unordered(k, m, points).expect("distinct points")
}

/// A point of the disk bundle: the zero vector about a third of the time,
/// otherwise a random zero-sum matrix scaled into the open disk.
pub fn tubular_point<R: Rng + ?Sized>(rng: &mut R, k: usize, m: usize, r: usize) -> TubularPoint {
    let x = open_unit_point(rng, k, 16);
    let eta = distinct_points(rng, m, r, 16);
    if rng.gen_range(0..3) == 0 {
        return TubularPoint::zero_section(k, m, x, eta).expect("valid base");
    }
    let mut w: Vec<Vec<Rational>> = (0..k)
        .map(|_| {
            let mut row: Vec<Rational> = (0..r - 1).map(|_| int(rng.gen_range(-3..=3))).collect();
            let last = -row.iter().sum::<Rational>();
            row.push(last);
            row
        })
        .collect();
    if w.iter().flatten().all(|v| *v == int(0)) && r >= 2 {
        w[0][0] = int(1);
        w[0][1] = int(-1);
    }
    // Σ w² ≤ (Σ|w|)², so dividing by 2Σ|w| + 1 lands strictly inside radius d/2
    let l1: Rational = w
        .iter()
        .flatten()
        .map(|v| if *v < int(0) { -v } else { v.clone() })
        .sum();
    let scale = boundary_distance(&x) / (l1 * int(2) + int(1));
    let w = w
        .into_iter()
        .map(|row| row.into_iter().map(|v| v * &scale).collect())
        .collect();
    TubularPoint::new(k, m, x, eta, w).expect("scaled vector has zero row sums")
}

/// A sphere point, for the `(k, r)` that admit one (`r ≥ 4` when `k = 1`).
pub fn sphere_point<R: Rng + ?Sized>(rng: &mut R, k: usize, m: usize, r: usize) -> TubularPoint {
    let x = open_unit_point(rng, k, 16);
    let eta = distinct_points(rng, m, r, 16);
    rational_sphere_point(k, m, r, x, eta, rng.gen()).expect("rational sphere point exists")
}

pub fn distinct_points<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    n: usize,
    q: i64,
) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = Vec::with_capacity(n);
    while out.len() < n {
        let p = open_unit_point(rng, dim, q);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Walls `a/40` with `10 < a < 30`, i.e. inside `(1/4, 3/4)`.
pub fn grid_walls<R: Rng + ?Sized>(rng: &mut R, degrees: &[usize]) -> GridWalls {
    let walls = degrees
        .iter()
        .map(|&p| {
            let mut pool: Vec<i64> = (11..30).collect();
            pool.shuffle(rng);
            let mut chosen: Vec<i64> = pool.into_iter().take(p + 1).collect();
            chosen.sort_unstable();
            chosen.into_iter().map(|a| rat(a, 40)).collect()
        })
        .collect();
    GridWalls::new(walls).expect("walls inside (1/4, 3/4)")
}

fn window_is_thin(walls: &GridWalls) -> bool {
    walls.degrees().contains(&0)
}

/// A point of the window whose coordinates have denominator 83, which no wall
/// shares.
fn window_point<R: Rng + ?Sized>(rng: &mut R, walls: &GridWalls) -> Vec<Rational> {
    (0..walls.k())
        .map(|j| {
            let ts = walls.axis(j);
            let (lo, hi) = (&ts[0], ts.last().unwrap());
            loop {
                let v = rat(rng.gen_range(1..83), 83);
                if *lo < v && v < *hi {
                    break v;
                }
            }
        })
        .collect()
}

/// With a single wall on some axis the window is a wall, so it holds no points
/// and `n` is ignored.
pub fn window_simplex<R: Rng + ?Sized>(
    rng: &mut R,
    walls: GridWalls,
    m: usize,
    n: usize,
) -> BarSimplex {
    let n = if window_is_thin(&walls) { 0 } else { n };
    let ys = distinct_points(rng, m, n, 16);
    let points = ys
        .into_iter()
        .map(|y| ConfPoint::new(window_point(rng, &walls), y).unwrap())
        .collect();
    let config = Configuration::unordered(walls.k(), m, points).expect("distinct fibers");
    BarSimplex::window(walls, config).expect("points avoid the walls")
}

/// A relative simplex on which the outward retraction is defined: each point
/// is in the window or has some coordinate outside `[1/4, 3/4]`.
pub fn retractable_simplex<R: Rng + ?Sized>(
    rng: &mut R,
    walls: GridWalls,
    m: usize,
    n: usize,
) -> BarSimplex {
    let thin = window_is_thin(&walls);
    let ys = distinct_points(rng, m, n, 16);
    let points = ys
        .into_iter()
        .map(|y| {
            let x = if !thin && rng.gen_bool(0.5) {
                window_point(rng, &walls)
            } else {
                loop {
                    let x: Vec<Rational> = (0..walls.k())
                        .map(|_| rat(rng.gen_range(-20..60), 40))
                        .collect();
                    if x.iter().any(|v| *v < rat(1, 4) || *v > rat(3, 4)) {
                        break x;
                    }
                }
            };
            (x, y)
        })
        .collect();
    let config = RelConfig::new(walls.k(), m, points).expect("distinct fibers");
    BarSimplex::relative(walls, config).expect("points avoid the walls")
}

/// Labels are points of `I^k`, the basepoint, or points outside `I^k` (which
/// also name the basepoint).
pub fn labeled_config<R: Rng + ?Sized>(
    rng: &mut R,
    k: usize,
    m: usize,
    n: usize,
) -> SphereLabeledConfig {
    let entries = distinct_points(rng, m, n, 16)
        .into_iter()
        .map(|y| {
            let label = match rng.gen_range(0..5) {
                0 => Label::Basepoint,
                1 => Label::Point((0..k).map(|_| rat(rng.gen_range(40..80), 40)).collect()),
                _ => Label::Point(open_unit_point(rng, k, 32)),
            };
            LabeledEntry { y, label }
        })
        .collect();
    SphereLabeledConfig::new(k, m, entries).expect("distinct fibers")
}

/// A relative configuration with crowded fibers: `y` comes from a small pool
/// and `x` from `(-1/2, 3/2)^k`, some values repeated.
pub fn rel_config<R: Rng + ?Sized>(rng: &mut R, k: usize, m: usize, n: usize) -> RelConfig {
    let ys = distinct_points(rng, m, (n / 2).max(1), 8);
    let mut xs: Vec<Vec<Rational>> = (0..n.max(1))
        .map(|_| (0..k).map(|_| rat(rng.gen_range(-15..46), 30)).collect())
        .collect();
    xs.sort();
    xs.dedup();
    let mut points: Vec<(Vec<Rational>, Vec<Rational>)> = Vec::with_capacity(n);
    while points.len() < n {
        let p = (
            xs[rng.gen_range(0..xs.len())].clone(),
            ys[rng.gen_range(0..ys.len())].clone(),
        );
        if !points.contains(&p) {
            points.push(p);
        }
        if points.len() == xs.len() * ys.len() {
            break;
        }
    }
    RelConfig::new(k, m, points).expect("distinct points")
}

/// Sparse integer matrix of size at most `max × max`.
pub fn sparse_matrix<R: Rng + ?Sized>(rng: &mut R, max: usize) -> SparseMatrix {
    let rows = rng.gen_range(1..=max);
    let cols = rng.gen_range(1..=max);
    let nnz = rng.gen_range(0..=(rows * cols / 4).max(1));
    let entries = (0..nnz)
        .map(|_| {
            (
                rng.gen_range(0..rows),
                rng.gen_range(0..cols),
                rng.gen_range(-5..=5),
            )
        })
        .collect();
    SparseMatrix::new(rows, cols, entries).expect("entries in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn generators_are_deterministic() {
        let a = cube_tuple(&mut rand_chacha::ChaCha8Rng::seed_from_u64(1), 2, 4);
        let b = cube_tuple(&mut rand_chacha::ChaCha8Rng::seed_from_u64(1), 2, 4);
        assert_eq!(a, b);
        assert_eq!(a.len(), 4);
    }

    #[test]
    fn tubular_points_stay_in_the_disk() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let p = tubular_point(&mut rng, 2, 1, 3);
            assert!(p.exp_tubular().is_ok());
        }
    }

    #[test]
    fn simplices_are_valid() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let w = grid_walls(&mut rng, &[2, 1]);
            assert!(retractable_simplex(&mut rng, w.clone(), 1, 3).is_retractable());
            assert!(window_simplex(&mut rng, w, 2, 3).is_window());
        }
    }
}
