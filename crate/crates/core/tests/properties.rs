use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use loopcell::config::{Configuration, FiltrationIndex};
use loopcell::cubes::CubeTuple;
use loopcell::gen;
use loopcell::homology::{invariant_factors, rank_mod2, smith_normal_form};
use loopcell::perm::Permutation;
use loopcell::rational::rat;
use loopcell::scanning::{collapse, eta, rho, scan_homotopy};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative(seed in any::<u64>(), k in 1usize..=3, n in 1usize..=3) {
        let mut r = rng(seed);
        let a = gen::cube_tuple(&mut r, k, n);
        let b: Vec<CubeTuple> = (0..n).map(|i| gen::cube_tuple(&mut r, k, 1 + i % 3)).collect();
        let total: usize = b.iter().map(CubeTuple::len).sum();
        let c: Vec<CubeTuple> = (0..total).map(|i| gen::cube_tuple(&mut r, k, 1 + i % 2)).collect();
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let mut off = 0;
        let inner: Vec<CubeTuple> = b.iter().map(|bi| {
            let out = bi.compose(&c[off..off + bi.len()]).unwrap();
            off += bi.len();
            out
        }).collect();
        prop_assert_eq!(left, a.compose(&inner).unwrap());
    }

    #[test]
    fn permutation_is_a_right_action(seed in any::<u64>(), k in 1usize..=3, n in 1usize..=5) {
        let mut r = rng(seed);
        let a = gen::cube_tuple(&mut r, k, n);
        let s = Permutation::random(n, &mut r);
        let t = Permutation::random(n, &mut r);
        let stepwise = a.permute(&s).unwrap().permute(&t).unwrap();
        prop_assert_eq!(stepwise, a.permute(&s.compose(&t)).unwrap());
        prop_assert_eq!(a.permute(&Permutation::identity(n)).unwrap(), a);
    }

    #[test]
    fn stabilization_commutes_with_composition(seed in any::<u64>(), k in 1usize..=2, m in 1usize..=2, n in 1usize..=3) {
        let mut r = rng(seed);
        let a = gen::cube_tuple(&mut r, k, n);
        let b: Vec<CubeTuple> = (0..n).map(|_| gen::cube_tuple(&mut r, k, 2)).collect();
        let stable_b: Vec<CubeTuple> = b.iter().map(|t| t.stabilize(m)).collect();
        prop_assert_eq!(a.compose(&b).unwrap().stabilize(m), a.stabilize(m).compose(&stable_b).unwrap());
    }

    #[test]
    fn act_preserves_the_filtration(seed in any::<u64>(), k in 1usize..=3, m in 1usize..=2, n in 1usize..=4) {
        let mut r = rng(seed);
        let op = gen::cube_tuple(&mut r, k, n);
        let parts: Vec<Configuration> = (0..n).map(|i| gen::configuration(&mut r, k, m, 1 + i, 1 + i / 2)).collect();
        let worst = parts.iter().map(Configuration::fiber_multiplicity).max().unwrap();
        let out = Configuration::act(&op, &parts).unwrap();
        prop_assert_eq!(out.fiber_multiplicity(), worst);
        prop_assert!(out.in_filtration(FiltrationIndex(worst)));
        if worst > 1 {
            prop_assert!(!out.in_filtration(FiltrationIndex(worst - 1)));
        }
    }

    #[test]
    fn faces_satisfy_simplicial_identities(seed in any::<u64>(), p in 2usize..=3, n in 0usize..=4) {
        let mut r = rng(seed);
        let walls = gen::grid_walls(&mut r, &[p, 1]);
        let s = gen::window_simplex(&mut r, walls.clone(), 1, n);
        let rel = gen::retractable_simplex(&mut r, walls, 1, n);
        for x in [&s, &rel] {
            for j in 0..=p {
                for i in 0..j {
                    prop_assert_eq!(x.face(0, j).unwrap().face(0, i).unwrap(), x.face(0, i).unwrap().face(0, j - 1).unwrap());
                }
                for i in 0..=1 {
                    prop_assert_eq!(x.face(0, j).unwrap().face(1, i).unwrap(), x.face(1, i).unwrap().face(0, j).unwrap());
                }
            }
        }
        prop_assert_eq!(s.map_g().unwrap().map_f().unwrap(), s);
    }

    #[test]
    fn scanning_round_trip(seed in any::<u64>(), k in 1usize..=3, m in 1usize..=2, n in 0usize..=5) {
        let mut r = rng(seed);
        let lambda = gen::labeled_config(&mut r, k, m, n);
        let image = rho(&lambda);
        prop_assert!(image.max_points_per_y() <= 1);
        prop_assert_eq!(eta(&image), None);
        prop_assert_eq!(collapse(&image).unwrap(), lambda);
    }

    #[test]
    fn scan_homotopy_is_monotone(seed in any::<u64>(), k in 1usize..=2, m in 1usize..=2, n in 1usize..=6) {
        let mut r = rng(seed);
        let xi = gen::rel_config(&mut r, k, m, n);
        prop_assert_eq!(scan_homotopy(&rat(0, 1), &xi).unwrap(), xi.clone());
        for step in 1..=8 {
            let h = scan_homotopy(&rat(step, 8), &xi).unwrap();
            prop_assert!(h.fiber_multiplicity() <= xi.fiber_multiplicity());
            prop_assert!(h.len() <= xi.len());
        }
        let end = collapse(&xi).unwrap();
        prop_assert!(rho(&end).max_points_per_y() <= 1);
    }

    #[test]
    fn smith_form_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = gen::sparse_matrix(&mut r, 12);
        let dense = m.to_dense();
        let f = smith_normal_form(&dense);
        prop_assert_eq!(f.u.mul(&dense).mul(&f.v), f.s.clone());
        prop_assert!(f.u.is_unimodular() && f.v.is_unimodular());
        prop_assert_eq!(f.invariant_factors(), invariant_factors(&m));
        // the mod-2 rank counts the odd invariant factors
        let odd = f.invariant_factors().iter().filter(|d| (*d % 2u32) != 0u32.into()).count();
        prop_assert_eq!(rank_mod2(&m), odd);
    }
}
