use npj_core::decomp::{decompose, hom_dim, is_isomorphic, SearchBudget};
use npj_core::engine::random_modules;
use npj_core::gallery;
use npj_core::linalg::FpMatrix;
use npj_core::rep::{omega, radical, Answer, GroupSpec, Module};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn budget() -> SearchBudget {
    SearchBudget::default()
}

fn random_invertible(p: u32, n: usize, rng: &mut ChaCha8Rng) -> FpMatrix {
    loop {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(0..p as i64)).collect())
            .collect();
        let s = FpMatrix::from_rows(p, &rows);
        if s.inverse().is_some() {
            return s;
        }
    }
}

#[test]
fn sums_of_known_indecomposables() {
    let a = gallery::uniserial_3x3();
    let b = omega(&a);
    let g = a.group();
    let m = Module::direct_sum(&[a.clone(), b.clone(), a.clone(), Module::free_module(g, 1)]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let m = m.change_basis(&random_invertible(3, m.dim(), &mut rng)).unwrap();
    let d = decompose(&m, &budget());
    assert_eq!(d.free_rank, 1);
    let mut got: Vec<(usize, usize)> = d.summands.iter().map(|s| (s.module.dim(), s.multiplicity)).collect();
    got.sort_unstable();
    assert_eq!(got, vec![(3, 2), (b.dim(), 1)]);
}

#[test]
fn example_tensor_square() {
    let m = gallery::m4_zigzag();
    let d = decompose(&m.tensor(&m).unwrap(), &budget());
    assert_eq!(d.dims(), vec![1, 5, 10]);
    assert_eq!(d.free_rank, 0);
}

#[test]
fn non_isomorphic_modules_of_equal_dimension() {
    let a = gallery::uniserial_3x3();
    let b = gallery::soc2_3x3();
    assert_eq!(is_isomorphic(&a, &b, &budget()), Answer::No);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn conjugates_are_isomorphic(seed in 0u64..500) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for m in random_modules(3, 2, 5, 4, seed) {
            let s = random_invertible(3, m.dim(), &mut rng);
            let n = m.change_basis(&s).unwrap();
            prop_assert_eq!(is_isomorphic(&m, &n, &budget()), Answer::Yes);
        }
    }

    #[test]
    fn hom_from_trivial_is_fixed_points(seed in 0u64..500) {
        for m in random_modules(2, 2, 5, 4, seed) {
            let k = Module::trivial(m.group(), 1);
            let xs = m.nilpotents();
            let fixed = xs[0].vstack(&xs[1]).kernel_basis().len();
            prop_assert_eq!(hom_dim(&k, &m).unwrap(), fixed);
            prop_assert_eq!(hom_dim(&m, &k).unwrap(), m.dim() - radical(&m).dim());
        }
    }

    #[test]
    fn decomposition_accounts_for_dimension(seed in 0u64..500) {
        for m in random_modules(3, 2, 5, 3, seed) {
            let d = decompose(&m, &budget());
            prop_assert_eq!(d.total_dim(), m.dim());
            for s in &d.summands {
                prop_assert!(s.module.validate().is_empty());
            }
        }
    }

    #[test]
    fn free_module_hom_dimension(t in 1usize..3) {
        let g = GroupSpec::new(2, 2).unwrap();
        let f = Module::free_module(g, t);
        let k = Module::trivial(g, 1);
        prop_assert_eq!(hom_dim(&k, &f).unwrap(), t);
    }
}
