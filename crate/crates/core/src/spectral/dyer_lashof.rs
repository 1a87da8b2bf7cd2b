//! Free graded-commutative F₂-algebra on admissible Dyer–Lashof monomials,
//! counting `H̃_*(Ω^mΣ^m S^n; F₂)` by degree and weight.

use std::collections::BTreeMap;

use serde::Serialize;

/// `Q^{a_1} Q^{a_2} … Q^{a_s} x` with `|x| = n`, outermost operation first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DLMonomial {
    pub n: usize,
    pub upper: Vec<usize>,
}

impl DLMonomial {
    /// Builds the monomial from lower indices `Q_{i_1} … Q_{i_s} x`, where
    /// `Q_i y = Q^{|y|+i} y` has degree `2|y| + i`.
    pub fn from_lower(n: usize, lower: &[usize]) -> Self {
        let mut upper = vec![0; lower.len()];
        let mut deg = n;
        for (j, &i) in lower.iter().enumerate().rev() {
            upper[j] = deg + i;
            deg = 2 * deg + i;
        }
        DLMonomial { n, upper }
    }

    pub fn lower(&self) -> Vec<usize> {
        let mut lower = vec![0; self.upper.len()];
        let mut deg = self.n;
        for (j, &a) in self.upper.iter().enumerate().rev() {
            lower[j] = a - deg;
            deg += a;
        }
        lower
    }

    pub fn degree(&self) -> usize {
        self.n + self.upper.iter().sum::<usize>()
    }

    pub fn weight(&self) -> usize {
        1 << self.upper.len()
    }

    /// Each operation lies in `|y| < a ≤ |y| + m - 1` and the lower indices
    /// weakly increase from the outside in.
    pub fn is_admissible(&self, m: usize) -> bool {
        let mut deg = self.n;
        for &a in self.upper.iter().rev() {
            if a <= deg || a + 1 > deg + m {
                return false;
            }
            deg += a;
        }
        self.lower().windows(2).all(|w| w[0] <= w[1])
    }
}

/// Admissible monomials on a degree-`n` class with degree `≤ d_max` and
/// weight `≤ weight_max`.
pub fn dl_generators(m: usize, n: usize, weight_max: usize, d_max: usize) -> Vec<DLMonomial> {
    let mut out = Vec::new();
    let mut lower = Vec::new();
    extend(m, n, n, 1, weight_max, d_max, &mut lower, &mut out);
    out.sort_by_key(|g| (g.degree(), g.weight(), g.upper.clone()));
    out
}

/// Grows the sequence from the inside: a new outermost index may not exceed
/// the current outermost one.
#[allow(clippy::too_many_arguments)]
fn extend(
    m: usize,
    n: usize,
    deg: usize,
    weight: usize,
    weight_max: usize,
    d_max: usize,
    lower: &mut Vec<usize>,
    out: &mut Vec<DLMonomial>,
) {
    if deg > d_max || weight > weight_max {
        return;
    }
    out.push(DLMonomial::from_lower(n, lower));
    let cap = lower.first().copied().unwrap_or(m.saturating_sub(1));
    for i in 1..=cap {
        lower.insert(0, i);
        extend(m, n, 2 * deg + i, 2 * weight, weight_max, d_max, lower, out);
        lower.remove(0);
    }
}

/// Dimensions of the reduced polynomial algebra on [`dl_generators`], keyed by
/// `(degree, weight)`.
pub fn dl_basis(
    m: usize,
    n: usize,
    weight_max: usize,
    d_max: usize,
) -> BTreeMap<(usize, usize), usize> {
    let mut table = vec![vec![0usize; weight_max + 1]; d_max + 1];
    if n == 0 {
        return BTreeMap::new();
    }
    table[0][0] = 1;
    for g in dl_generators(m, n, weight_max, d_max) {
        let (gd, gw) = (g.degree(), g.weight());
        // unbounded knapsack: powers of g are allowed
        for d in gd..=d_max {
            for w in gw..=weight_max {
                table[d][w] += table[d - gd][w - gw];
            }
        }
    }
    let mut out = BTreeMap::new();
    for (d, row) in table.iter().enumerate() {
        for (w, &count) in row.iter().enumerate() {
            if count > 0 && (d, w) != (0, 0) {
                out.insert((d, w), count);
            }
        }
    }
    out
}

/// Collapses [`dl_basis`] to total dimension per degree, `0..=d_max`.
pub fn dl_degree_totals(m: usize, n: usize, d_max: usize) -> Vec<usize> {
    let weight_max = d_max / n.max(1);
    let mut totals = vec![0; d_max + 1];
    for ((d, _), c) in dl_basis(m, n, weight_max, d_max) {
        totals[d] += c;
    }
    totals
}

/// `dim H_i(C_p(ℝ^m); F₂)` read off the weight-`p` part on a degree-1 class:
/// the weight-`p` quotient is the Thom space of `p` copies of the permutation
/// representation, so degree `p + i` carries `H_i`.
pub fn config_dims_from_dl(p: usize, m: usize) -> Vec<usize> {
    let top = (m - 1) * (p - 1);
    let basis = dl_basis(m, 1, p, p + top);
    (0..=top)
        .map(|i| basis.get(&(p + i, p)).copied().unwrap_or(0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lower_upper_round_trip() {
        let g = DLMonomial::from_lower(1, &[1, 1]);
        assert_eq!(g.upper, vec![4, 2]);
        assert_eq!(g.degree(), 7);
        assert_eq!(g.weight(), 4);
        assert_eq!(g.lower(), vec![1, 1]);
        assert!(g.is_admissible(2));
        assert!(!DLMonomial::from_lower(1, &[2, 1]).is_admissible(3));
        assert!(DLMonomial::from_lower(1, &[1, 2]).is_admissible(3));
    }

    #[test]
    fn generators_for_double_loops() {
        let degrees: Vec<usize> = dl_generators(2, 1, 64, 40)
            .iter()
            .map(DLMonomial::degree)
            .collect();
        assert_eq!(degrees, vec![1, 3, 7, 15, 31]);
        assert_eq!(dl_generators(1, 3, 64, 40).len(), 1);
        assert!(dl_generators(4, 2, 16, 30)
            .iter()
            .all(|g| g.is_admissible(4)));
    }

    #[test]
    fn james_construction() {
        // m = 1: one class x^p in degree pn for each p
        let b = dl_basis(1, 2, 10, 12);
        let expected: BTreeMap<_, _> = (1..=6).map(|p| ((2 * p, p), 1)).collect();
        assert_eq!(b, expected);
    }

    #[test]
    fn weight_two() {
        for m in 1..=4 {
            for n in 1..=3 {
                let b = dl_basis(m, n, 2, 4 * n + m);
                let w2: Vec<usize> = b
                    .iter()
                    .filter(|((_, w), _)| *w == 2)
                    .map(|((d, _), c)| *d * 100 + c)
                    .collect();
                let want: Vec<usize> = (2 * n..2 * n + m).map(|d| d * 100 + 1).collect();
                assert_eq!(w2, want, "m={m} n={n}");
                assert_eq!(b.get(&(n, 1)), Some(&1));
            }
        }
    }

    #[test]
    fn degree_at_least_weight_times_n() {
        for ((d, w), _) in dl_basis(3, 2, 16, 30) {
            assert!(d >= w * 2);
        }
    }

    #[test]
    fn braid_counts() {
        // F₂-homology of C_p(ℝ²): (1), (1,1), (1,1,0), (1,1,1,1)
        assert_eq!(config_dims_from_dl(1, 2), vec![1]);
        assert_eq!(config_dims_from_dl(2, 2), vec![1, 1]);
        assert_eq!(config_dims_from_dl(3, 2), vec![1, 1, 0]);
        assert_eq!(config_dims_from_dl(4, 2), vec![1, 1, 1, 1]);
    }
}
