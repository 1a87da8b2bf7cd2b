use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use super::fox_neuwirth::config_homology;
use super::matrix::IntMatrix;
use super::HomologyError;
use crate::config::bundle_rank;
use crate::perm::Permutation;

/// Reduced F₂-homology of the Thom space of `kφ_{m,r}` over `C_r(I^m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThomDims {
    pub k: usize,
    pub m: usize,
    pub r: usize,
    /// Non-zero dimensions only, by degree.
    pub dims: BTreeMap<usize, usize>,
}

impl ThomDims {
    pub fn dim(&self, degree: usize) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.dims
            .iter()
            .flat_map(|(&q, &n)| std::iter::repeat_n(q, n))
            .collect()
    }
}

/// By the F₂ Thom isomorphism, `H̃_q(Th) = H_{q - k(r-1)}(C_r(ℝ^m))`.
pub fn thom_dims(k: usize, m: usize, r: usize, d_max: usize) -> Result<ThomDims, HomologyError> {
    if k == 0 || m == 0 || r == 0 {
        return Err(HomologyError::InvalidParameter(format!(
            "k, m, r must be positive (got {k}, {m}, {r})"
        )));
    }
    let shift = bundle_rank(k, m, r).map_err(|e| HomologyError::InvalidParameter(e.to_string()))?;
    let mut dims = BTreeMap::new();
    if shift <= d_max {
        let betti = config_homology(r, m)?;
        for (i, &b) in betti.iter().enumerate() {
            if b > 0 && shift + i <= d_max {
                dims.insert(shift + i, b);
            }
        }
    }
    Ok(ThomDims { k, m, r, dims })
}

/// Whether `kφ_{m,r}` is orientable. A loop in `C_r(ℝ^m)` swapping two points
/// exists once `m ≥ 2` and acts on the fiber by `(-1)^k`.
pub fn orientable(k: usize, m: usize, r: usize) -> bool {
    k.is_multiple_of(2) || r <= 1 || m == 1
}

/// Determinant of `σ` acting on `(ℝ^{r-1})^k`, the `k`-fold sum of the
/// standard representation, computed in the basis `e_i - e_{r-1}`.
pub fn monodromy_sign(k: usize, sigma: &Permutation) -> i32 {
    let r = sigma.len();
    if r <= 1 {
        return 1;
    }
    let n = r - 1;
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        // σ(e_i - e_last) = (e_σi - e_last) - (e_σlast - e_last)
        let (a, b) = (sigma.apply(i), sigma.apply(n));
        if a < n {
            m.data[a][i] += 1;
        }
        if b < n {
            m.data[b][i] -= 1;
        }
    }
    let det = m.determinant();
    debug_assert!(det.abs().is_one());
    let base = if det == BigInt::one() { 1 } else { -1 };
    if k.is_multiple_of(2) {
        1
    } else {
        base
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thom_examples() {
        assert_eq!(thom_dims(1, 1, 3, 10).unwrap().degrees(), vec![2]);
        for k in 1..=3 {
            assert_eq!(thom_dims(k, 3, 1, 10).unwrap().degrees(), vec![0]);
        }
        assert_eq!(thom_dims(1, 2, 2, 10).unwrap().degrees(), vec![1, 2]);
        // truncation
        assert_eq!(thom_dims(1, 2, 2, 1).unwrap().degrees(), vec![1]);
        assert!(thom_dims(1, 2, 0, 4).is_err());
    }

    #[test]
    fn support_window() {
        for k in 1..=2 {
            for m in 1..=3 {
                for r in 1..=4 {
                    let t = thom_dims(k, m, r, 100).unwrap();
                    let lo = k * (r - 1);
                    let hi = lo + (m - 1) * (r - 1);
                    assert!(t.dims.keys().all(|&q| q >= lo && q <= hi), "{k} {m} {r}");
                }
            }
        }
    }

    #[test]
    fn orientability() {
        assert!(orientable(2, 3, 5));
        assert!(orientable(1, 1, 4));
        assert!(!orientable(1, 3, 2));
        assert_eq!(monodromy_sign(1, &Permutation::identity(4)), 1);
        assert_eq!(monodromy_sign(1, &Permutation::transposition(4, 0, 3)), -1);
        assert_eq!(monodromy_sign(1, &Permutation::transposition(4, 1, 2)), -1);
        assert_eq!(monodromy_sign(2, &Permutation::transposition(4, 1, 2)), 1);
    }

    #[test]
    fn monodromy_is_sign_power() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for r in 1..=6 {
            for _ in 0..10 {
                let s = Permutation::random(r, &mut rng);
                assert_eq!(monodromy_sign(1, &s), s.sign());
                assert_eq!(monodromy_sign(3, &s), s.sign());
                assert_eq!(monodromy_sign(2, &s), 1);
            }
        }
    }
}
