//! Exact rational helpers shared by every geometric module.
//!
//! All coordinates in this crate are [`BigRational`]s so that operad axioms and
//! filtration predicates are decided by exact equality. On the wire a rational
//! is always the string `"p/q"` (integers are accepted as `"p"` on input).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {input:?} as a rational (expected \"p/q\")")]
pub struct ParseRationalError {
    pub input: String,
}

/// `p/q` as a rational. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    BigRational::from_integer(BigInt::from(p))
}

pub fn half() -> Rational {
    rat(1, 2)
}

pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError {
        input: s.to_string(),
    };
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let p: BigInt = num.parse().map_err(|_| err())?;
    let q: BigInt = den.parse().map_err(|_| err())?;
    if q.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(p, q))
}

/// Always `p/q` in lowest terms with positive denominator, including `"0/1"`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn format_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn parse_vec(v: &[String]) -> Result<Vec<Rational>, ParseRationalError> {
    v.iter().map(|s| parse_rational(s)).collect()
}

/// Strictly inside the open unit interval.
pub fn in_open_unit(r: &Rational) -> bool {
    r.is_positive() && *r < Rational::one()
}

pub fn in_open_unit_cube(p: &[Rational]) -> bool {
    p.iter().all(in_open_unit)
}

/// Sup-norm distance from the centre `(1/2, …, 1/2)`.
pub fn sup_dist_from_center(p: &[Rational]) -> Rational {
    let c = half();
    p.iter()
        .map(|x| (x - &c).abs())
        .max()
        .unwrap_or_else(Rational::zero)
}

/// `min_i min(x_i, 1 - x_i)`; for a point of the open cube this is its Euclidean
/// distance to the boundary.
pub fn boundary_distance(x: &[Rational]) -> Rational {
    x.iter()
        .map(|xi| {
            let other = Rational::one() - xi;
            if *xi < other {
                xi.clone()
            } else {
                other
            }
        })
        .min()
        .unwrap_or_else(Rational::zero)
}

pub fn sum_of_squares<'a>(it: impl IntoIterator<Item = &'a Rational>) -> Rational {
    it.into_iter().fold(Rational::zero(), |acc, v| acc + v * v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert_eq!(parse_rational(" -3 ").unwrap(), int(-3));
        assert_eq!(format_rational(&rat(6, -4)), "-3/2");
        assert_eq!(format_rational(&int(0)), "0/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn distances() {
        assert_eq!(boundary_distance(&[rat(1, 3), rat(9, 10)]), rat(1, 10));
        assert_eq!(sup_dist_from_center(&[rat(1, 4), rat(9, 10)]), rat(2, 5));
        assert!(in_open_unit_cube(&[rat(1, 3)]));
        assert!(!in_open_unit_cube(&[int(1)]));
    }
}
