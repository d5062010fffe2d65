use num_bigint::BigInt;
use num_rational::BigRational;
use npj_core::linalg::{
    berlekamp_massey_rational, charpoly_int, largest_real_root, real_roots, FpMatrix, IntMatrix, IntPolynomial,
};
use proptest::prelude::*;

/// Rank by brute force: largest `k` with a nonzero `k × k` minor (tiny matrices only).
fn rank_by_minors(a: &[Vec<i64>], p: i64) -> usize {
    let n = a.len();
    let m = a[0].len();
    let subsets = |len: usize, k: usize| -> Vec<Vec<usize>> {
        (0u32..1 << len)
            .filter(|s| s.count_ones() as usize == k)
            .map(|s| (0..len).filter(|i| s >> i & 1 == 1).collect())
            .collect()
    };
    (1..=n.min(m))
        .rev()
        .find(|&k| {
            subsets(n, k).iter().any(|rows| {
                subsets(m, k).iter().any(|cols| {
                    let sub: Vec<Vec<i64>> = rows.iter().map(|&r| cols.iter().map(|&c| a[r][c]).collect()).collect();
                    det_mod(sub, p) != 0
                })
            })
        })
        .unwrap_or(0)
}

/// Laplace expansion mod `p`.
fn det_mod(a: Vec<Vec<i64>>, p: i64) -> i64 {
    let n = a.len();
    if n == 1 {
        return a[0][0].rem_euclid(p);
    }
    let mut acc = 0;
    for j in 0..n {
        let minor: Vec<Vec<i64>> = a[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
            .collect();
        let s = if j % 2 == 0 { 1 } else { -1 };
        acc = (acc + s * a[0][j] * det_mod(minor, p)).rem_euclid(p);
    }
    acc
}

/// Exact integer determinant by Laplace expansion.
fn det_int(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut acc = BigInt::from(0);
    for j in 0..n {
        let minor: Vec<Vec<BigInt>> = a[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let t = &a[0][j] * det_int(&minor);
        if j % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    acc
}

fn small_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(0i64..5, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_matches_minors(a in small_matrix(4)) {
        let m = FpMatrix::from_rows(5, &a);
        prop_assert_eq!(m.rank(), rank_by_minors(&a, 5));
    }

    #[test]
    fn kernel_is_exact(a in small_matrix(5)) {
        let m = FpMatrix::from_rows(3, &a);
        let ker = m.kernel_basis();
        prop_assert_eq!(ker.len() + m.rank(), m.cols());
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn inverse_round_trip(a in prop::collection::vec(prop::collection::vec(0i64..7, 4), 4)) {
        let m = FpMatrix::from_rows(7, &a);
        match m.inverse() {
            Some(inv) => prop_assert!(inv.mul(&m).is_identity()),
            None => prop_assert!(det_mod(a.clone(), 7) == 0),
        }
    }

    #[test]
    fn charpoly_matches_determinants(a in prop::collection::vec(prop::collection::vec(-3i64..4, 4), 4)) {
        let cp = charpoly_int(&IntMatrix::from_rows(&a));
        for x in -2i64..=2 {
            let shifted: Vec<Vec<BigInt>> = (0..4)
                .map(|i| (0..4).map(|j| BigInt::from(if i == j { x } else { 0 } - a[i][j])).collect())
                .collect();
            let want = BigRational::from_integer(det_int(&shifted));
            prop_assert_eq!(cp.eval_rational(&BigRational::from_integer(x.into())), want);
        }
    }

    #[test]
    fn roots_of_products(roots in prop::collection::vec(-6i64..7, 1..5)) {
        let f = roots.iter().fold(IntPolynomial::from_i64(&[1]), |acc, &r| acc.mul(&IntPolynomial::from_i64(&[-r, 1])));
        let top = *roots.iter().max().unwrap() as f64;
        prop_assert_eq!(largest_real_root(&f, 1e-12), Some(top));
        let mut distinct = roots.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let got = real_roots(&f, 1e-10);
        prop_assert_eq!(got.len(), distinct.len());
        for (g, d) in got.iter().zip(&distinct) {
            prop_assert!((g - *d as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn recovers_linear_recurrences(a1 in -3i64..4, a2 in -3i64..4, s0 in 0i64..5, s1 in 0i64..5) {
        prop_assume!(a2 != 0);
        let mut s = vec![s0, s1];
        for n in 2..14 {
            s.push(-a1 * s[n - 1] - a2 * s[n - 2]);
        }
        let seq: Vec<BigRational> = s.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        let r = berlekamp_massey_rational(&seq).expect("a fit exists");
        prop_assert!(r.degree() <= 2);
        prop_assert!(r.holds_on(&seq, 0));
    }
}

#[test]
fn golden_ratio_root() {
    let f = IntPolynomial::from_i64(&[-1, -1, 1]);
    let r = largest_real_root(&f, 1e-13).unwrap();
    assert!((r - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
}

#[test]
fn kron_mixed_product() {
    let a = FpMatrix::from_rows(5, &[vec![1, 2], vec![3, 4]]);
    let b = FpMatrix::from_rows(5, &[vec![0, 1], vec![1, 1]]);
    let c = FpMatrix::from_rows(5, &[vec![2, 0], vec![1, 3]]);
    let d = FpMatrix::from_rows(5, &[vec![4, 4], vec![0, 1]]);
    assert_eq!(a.kron(&b).mul(&c.kron(&d)), a.mul(&c).kron(&b.mul(&d)));
}

#[test]
fn large_prime_arithmetic() {
    let p = 65521;
    let a = FpMatrix::from_rows(p, &[vec![65520, 2], vec![3, 65519]]);
    let inv = a.inverse().unwrap();
    assert!(a.mul(&inv).is_identity());
}
