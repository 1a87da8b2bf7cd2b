//! Library results against independent computations written out here.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};

use loopcell::homology::{
    config_homology, homology, smith_normal_form, thom_dims, ChainComplex, IntMatrix,
};
use loopcell::spectral::{dl_basis, e1_page};

/// `d_1 ⋯ d_i` is the gcd of the `i × i` minors.
fn minors_oracle(m: &[Vec<i64>]) -> Vec<BigInt> {
    let (rows, cols) = (m.len(), m[0].len());
    let mut products: Vec<BigInt> = Vec::new();
    for size in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, size) {
            for cs in subsets(cols, size) {
                let sub: Vec<Vec<i64>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| m[r][c]).collect())
                    .collect();
                g = g.gcd(&BigInt::from(det_cofactor(&sub)));
            }
        }
        if g.is_zero() {
            break;
        }
        products.push(g);
    }
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for p in products {
        out.push(&p / &prev);
        prev = p;
    }
    out
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

fn det_cofactor(m: &[Vec<i64>]) -> i64 {
    if m.len() == 1 {
        return m[0][0];
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, v)| *v)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det_cofactor(&minor)
        })
        .sum()
}

#[test]
fn smith_form_matches_minors() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let m: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(-6..=6)).collect())
            .collect();
        let f = smith_normal_form(&IntMatrix::from_rows(m.clone()).unwrap());
        let got: Vec<BigInt> = f.invariant_factors();
        let want: Vec<BigInt> = minors_oracle(&m).into_iter().map(|d| d.abs()).collect();
        assert_eq!(got, want, "{m:?}");
    }
}

#[test]
fn integral_homology_of_lens_like_complex() {
    // C_0 = ℤ ← C_1 = ℤ² ← C_2 = ℤ with ∂_1 = 0 and ∂_2 = (3, 6): H_1 = ℤ ⊕ ℤ/3
    let json = r#"{"coefficients":"Z","degrees":[
        {"degree":0,"labels":["v"],"boundary":[]},
        {"degree":1,"labels":["a","b"],"boundary":[]},
        {"degree":2,"labels":["f"],"boundary":[[0,0,3],[1,0,6]]}]}"#;
    let c = ChainComplex::from_json(serde_json::from_str(json).unwrap()).unwrap();
    let h = homology(&c);
    assert_eq!(h.betti, vec![1, 1, 0]);
    assert_eq!(h.torsion[1], vec![BigInt::from(3)]);
}

/// `C_2(ℝ^d) ≃ ℝP^{d-1}` by sending a pair to the line through it.
#[test]
fn two_point_configurations() {
    for d in 1..=4 {
        assert_eq!(config_homology(2, d).unwrap(), vec![1; d]);
    }
}

/// Total F₂-Betti number of `C_n(ℝ²)`: monomials of weight `n` in the
/// generators `x, Q₁x, Q₁Q₁x` of weights 1, 2, 4 (Fuks).
#[test]
fn braid_group_totals() {
    let weights = [1usize, 2, 4];
    for n in 1..=6 {
        // number of ways to write n with parts 1, 2, 4
        let mut ways = vec![0usize; n + 1];
        ways[0] = 1;
        for w in weights {
            for t in w..=n {
                ways[t] += ways[t - w];
            }
        }
        let total: usize = config_homology(n, 2).unwrap().iter().sum();
        assert_eq!(total, ways[n], "n = {n}");
    }
}

#[test]
fn thom_rows_match_dyer_lashof_weights() {
    // weight p on a degree-k class sits in degree k + H̃(Th(kφ_{m,p}))
    for (k, m) in [(1usize, 2usize), (2, 2), (1, 3), (3, 2)] {
        for p in 1..=4 {
            let t = thom_dims(k, m, p, 40).unwrap();
            let dl = dl_basis(m, k, p, 40);
            for d in 0..=40 {
                let thom = if d >= k { t.dim(d - k) } else { 0 };
                assert_eq!(
                    thom,
                    dl.get(&(d, p)).copied().unwrap_or(0),
                    "k={k} m={m} p={p} d={d}"
                );
            }
        }
    }
}

#[test]
fn e1_page_round_trips_through_json() {
    let page = e1_page(1, 2, 4, 8).unwrap();
    let text = serde_json::to_string(&page).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let entries = value["entries"].as_array().unwrap();
    assert_eq!(entries.len(), page.entries.len());
    for (e, v) in page.entries.iter().zip(entries) {
        assert_eq!(v["dim"].as_u64().unwrap() as usize, e.dim);
        assert_eq!(v["p"].as_u64().unwrap() as usize, e.p);
        assert_eq!(v["q"].as_i64().unwrap(), e.q);
    }
}
