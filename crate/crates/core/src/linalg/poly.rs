//! Exact integer polynomials, characteristic polynomials and real root isolation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Polynomial with integer coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, o: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || o.is_zero() {
            return IntPolynomial::new(vec![]);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Exact quotient by `d` when `d` divides `self` over the integers.
    pub fn div_exact(&self, d: &IntPolynomial) -> Option<IntPolynomial> {
        let (q, r) = divmod_rational(&to_rational(self), &to_rational(d));
        if !r.is_empty() {
            return None;
        }
        let mut out = Vec::with_capacity(q.len());
        for c in q {
            if !c.is_integer() {
                return None;
            }
            out.push(c.to_integer());
        }
        Some(IntPolynomial::new(out))
    }

    pub fn divides(&self, f: &IntPolynomial) -> bool {
        f.div_exact(self).is_some()
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Square matrix with integer entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![BigInt::zero(); n * n],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), n, "IntMatrix must be square");
            for (j, &v) in r.iter().enumerate() {
                m.data[i * n + j] = BigInt::from(v);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.n + j] = v;
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).to_i64().unwrap_or(i64::MAX)).collect())
            .collect()
    }

    pub fn principal_submatrix(&self, idx: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

/// Characteristic polynomial `det(xI - A)` by Berkowitz's division-free recursion.
pub fn charpoly_int(a: &IntMatrix) -> IntPolynomial {
    let n = a.dim();
    // highest degree first while building
    let mut cp: Vec<BigInt> = vec![BigInt::one()];
    for r in 0..n {
        // A_{r+1} = [[A_r, S], [R, a_rr]]
        let arr = a.get(r, r).clone();
        let s: Vec<BigInt> = (0..r).map(|i| a.get(i, r).clone()).collect();
        let row: Vec<BigInt> = (0..r).map(|j| a.get(r, j).clone()).collect();
        // first column of the Toeplitz matrix: 1, -a_rr, -R S, -R A S, ...
        let mut col = vec![BigInt::one(), -arr];
        let mut v = s;
        for _ in 0..r {
            let dot: BigInt = row.iter().zip(&v).map(|(x, y)| x * y).sum();
            col.push(-dot);
            v = (0..r)
                .map(|i| (0..r).map(|j| a.get(i, j) * &v[j]).sum())
                .collect();
        }
        let mut next = vec![BigInt::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, c) in cp.iter().enumerate() {
                if i >= j && i - j < col.len() {
                    *slot += &col[i - j] * c;
                }
            }
        }
        cp = next;
    }
    cp.reverse();
    IntPolynomial::new(cp)
}

fn to_rational(p: &IntPolynomial) -> Vec<BigRational> {
    p.coeffs
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn divmod_rational(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "division by zero polynomial");
    if r.len() < b.len() {
        return (vec![], r);
    }
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] / &lead;
        for (i, bi) in b.iter().enumerate() {
            r[k + i] = &r[k + i] - &c * bi;
        }
        q[k] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn gcd_rational(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divmod_rational(&x, &y);
        x = y;
        y = r;
    }
    x
}

fn derivative(a: &[BigRational]) -> Vec<BigRational> {
    let mut d: Vec<BigRational> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    trim(&mut d);
    d
}

fn eval(a: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in a.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

struct Sturm {
    seq: Vec<Vec<BigRational>>,
}

impl Sturm {
    fn new(f: &[BigRational]) -> Self {
        let mut seq = vec![f.to_vec(), derivative(f)];
        while !seq.last().unwrap().is_empty() {
            let n = seq.len();
            let (_, r) = divmod_rational(&seq[n - 2], &seq[n - 1]);
            seq.push(r.into_iter().map(|c| -c).collect());
        }
        seq.pop();
        Sturm { seq }
    }

    fn variations(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.seq {
            let v = eval(p, x);
            let s = if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            };
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct roots in `(a, b]`.
    fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

fn squarefree(f: &IntPolynomial) -> Vec<BigRational> {
    let fr = to_rational(f);
    let g = gcd_rational(&fr, &derivative(&fr));
    if g.len() <= 1 {
        return fr;
    }
    divmod_rational(&fr, &g).0
}

fn cauchy_bound(f: &[BigRational]) -> BigRational {
    let lead = f.last().unwrap().abs();
    let m = f[..f.len() - 1]
        .iter()
        .map(|c| c.abs() / &lead)
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    BigRational::from_integer((m + BigRational::one()).ceil().to_integer() + 1)
}

fn rational_tol(tol: f64) -> BigRational {
    BigRational::from_float(tol.max(1e-300)).unwrap_or_else(|| BigRational::new(1.into(), BigInt::from(10u64.pow(12))))
}

/// Largest real root of `f` to within `tol`, or `None` when `f` has no real root.
pub fn largest_real_root(f: &IntPolynomial, tol: f64) -> Option<f64> {
    if f.degree().unwrap_or(0) == 0 {
        return None;
    }
    let g = squarefree(f);
    let st = Sturm::new(&g);
    let b = cauchy_bound(&g);
    let mut lo = -b.clone();
    let mut hi = b;
    if st.count(&lo, &hi) == 0 {
        return None;
    }
    let tol = rational_tol(tol);
    let two = BigRational::from_integer(2.into());
    while &hi - &lo > tol {
        let mid = (&lo + &hi) / &two;
        let above = st.count(&mid, &hi);
        if above == 0 {
            if eval(&g, &mid).is_zero() {
                return mid.to_f64();
            }
            hi = mid;
        } else {
            lo = mid;
        }
    }
    // snap to an integer root when there is one in the final interval
    let r = BigRational::from_integer(((&lo + &hi) / &two).round().to_integer());
    if r > lo && r <= hi && eval(&g, &r).is_zero() {
        return r.to_f64();
    }
    ((lo + hi) / two).to_f64()
}

/// All distinct real roots of `f`, ascending, each to within `tol`.
pub fn real_roots(f: &IntPolynomial, tol: f64) -> Vec<f64> {
    if f.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let g = squarefree(f);
    let st = Sturm::new(&g);
    let b = cauchy_bound(&g);
    let tol = rational_tol(tol);
    let two = BigRational::from_integer(2.into());
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let k = st.count(&lo, &hi);
        if k == 0 {
            continue;
        }
        if k == 1 && &hi - &lo <= tol {
            out.push(((&lo + &hi) / &two).to_f64().unwrap_or(f64::NAN));
            continue;
        }
        let mid = (&lo + &hi) / &two;
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn det_by_permutations(m: &[Vec<i64>]) -> i64 {
        // Leibniz expansion, fine for n <= 5
        let n = m.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = 0i64;
        fn rec(k: usize, perm: &mut Vec<usize>, m: &[Vec<i64>], total: &mut i64) {
            let n = perm.len();
            if k == n {
                let mut sign = 1i64;
                for i in 0..n {
                    for j in i + 1..n {
                        if perm[i] > perm[j] {
                            sign = -sign;
                        }
                    }
                }
                *total += sign * (0..n).map(|i| m[i][perm[i]]).product::<i64>();
                return;
            }
            for i in k..n {
                perm.swap(k, i);
                rec(k + 1, perm, m, total);
                perm.swap(k, i);
            }
        }
        rec(0, &mut perm, m, &mut total);
        total
    }

    #[test]
    fn charpoly_small_examples() {
        let a = IntMatrix::from_rows(&[vec![2, 1, 0], vec![0, 0, 1], vec![2, 0, 2]]);
        assert_eq!(charpoly_int(&a), IntPolynomial::from_i64(&[-2, 4, -4, 1]));
        let b = IntMatrix::from_rows(&[vec![1, 1, 1], vec![1, 1, 1], vec![0, 0, 3]]);
        // x(x-2)(x-3) = x^3 - 5x^2 + 6x
        assert_eq!(charpoly_int(&b), IntPolynomial::from_i64(&[0, 6, -5, 1]));
        assert_eq!(charpoly_int(&IntMatrix::zeros(0)), IntPolynomial::from_i64(&[1]));
    }

    #[test]
    fn display() {
        let f = IntPolynomial::from_i64(&[-2, 4, -4, 1]);
        assert_eq!(f.to_string(), "x^3 - 4x^2 + 4x - 2");
    }

    #[test]
    fn roots() {
        let f = IntPolynomial::from_i64(&[-2, 4, -4, 1]);
        let r = largest_real_root(&f, 1e-12).unwrap();
        assert!((r - 2.839286755214161).abs() < 1e-9);
        // x^2 - 3x + 1 has largest root 1 + golden ratio
        let g = IntPolynomial::from_i64(&[1, -3, 1]);
        let r = largest_real_root(&g, 1e-12).unwrap();
        assert!((r - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-9);
        assert_eq!(largest_real_root(&IntPolynomial::from_i64(&[1, 0, 1]), 1e-9), None);
        // exact rational root hit by bisection, with a repeated factor
        let h = IntPolynomial::from_i64(&[0, 0, 1]).mul(&IntPolynomial::from_i64(&[-2, 1]));
        assert!((largest_real_root(&h, 1e-9).unwrap() - 2.0).abs() < 1e-9);
        let rr = real_roots(&IntPolynomial::from_i64(&[0, 6, -5, 1]), 1e-10);
        assert_eq!(rr.len(), 3);
        for (a, b) in rr.iter().zip([0.0, 2.0, 3.0]) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn exact_division() {
        let f = IntPolynomial::from_i64(&[1, -3, 1]).mul(&IntPolynomial::from_i64(&[-1, 0, 0, -4, 0, 0, 1]));
        assert!(IntPolynomial::from_i64(&[1, -3, 1]).divides(&f));
        assert!(!IntPolynomial::from_i64(&[1, 1]).divides(&f));
    }

    proptest! {
        #[test]
        fn charpoly_constant_term_is_signed_det(entries in proptest::collection::vec(-4i64..5, 16)) {
            let rows: Vec<Vec<i64>> = entries.chunks(4).map(|c| c.to_vec()).collect();
            let cp = charpoly_int(&IntMatrix::from_rows(&rows));
            let det = det_by_permutations(&rows);
            let c0 = cp.coeffs().first().cloned().unwrap_or_default();
            prop_assert_eq!(c0, BigInt::from(det));
            // trace appears in the x^{n-1} coefficient
            let tr: i64 = (0..4).map(|i| rows[i][i]).sum();
            prop_assert_eq!(cp.coeffs()[3].clone(), BigInt::from(-tr));
        }

        #[test]
        fn largest_root_of_product_of_linears(rs in proptest::collection::vec(-20i64..20, 1..6)) {
            let mut f = IntPolynomial::from_i64(&[1]);
            for &r in &rs {
                f = f.mul(&IntPolynomial::from_i64(&[-r, 1]));
            }
            let got = largest_real_root(&f, 1e-10).unwrap();
            let want = *rs.iter().max().unwrap() as f64;
            prop_assert!((got - want).abs() < 1e-9);
        }
    }
}
