//! Berlekamp–Massey over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A linear relation `s(n) + a_1 s(n-1) + ... + a_d s(n-d) = 0`, asserted for
/// every `n >= offset + d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRecurrence {
    pub offset: usize,
    /// `a_1, ..., a_d`.
    pub coeffs: Vec<BigRational>,
}

impl RationalRecurrence {
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// First index at which the relation is asserted.
    pub fn start(&self) -> usize {
        self.offset + self.coeffs.len()
    }

    /// Checks the relation on `seq[from..]` (indices below `start()` are skipped).
    pub fn holds_on(&self, seq: &[BigRational], from: usize) -> bool {
        (from.max(self.start())..seq.len()).all(|n| {
            let mut acc = seq[n].clone();
            for (i, a) in self.coeffs.iter().enumerate() {
                acc += a * &seq[n - 1 - i];
            }
            acc.is_zero()
        })
    }
}

/// Shortest linear recurrence of the whole slice, as `(a_1..a_L)`.
pub fn berlekamp_massey(s: &[BigRational]) -> Vec<BigRational> {
    let mut c: Vec<BigRational> = vec![BigRational::one()];
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = BigRational::one();
    for n in 0..s.len() {
        let mut d = s[n].clone();
        for i in 1..=l {
            if i < c.len() {
                d += &c[i] * &s[n - i];
            }
        }
        if d.is_zero() {
            m += 1;
            continue;
        }
        let coef = &d / &bd;
        let old = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, BigRational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + m] -= &coef * bi;
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = old;
            bd = d;
            m = 1;
        } else {
            m += 1;
        }
    }
    c.resize(l + 1, BigRational::zero());
    c.into_iter().skip(1).collect()
}

/// Every admissible fit, one per start offset, ordered by (degree, offset).
/// A fit from offset `o` is admissible when twice its degree is at most the
/// number of terms it was fitted on.
pub fn recurrence_candidates(seq: &[BigRational]) -> Vec<RationalRecurrence> {
    let mut out = Vec::new();
    for o in 0..=seq.len() / 2 {
        let sub = &seq[o..];
        if sub.is_empty() {
            break;
        }
        let coeffs = berlekamp_massey(sub);
        if 2 * coeffs.len() <= sub.len() {
            out.push(RationalRecurrence { offset: o, coeffs });
        }
    }
    out.sort_by_key(|r| (r.degree(), r.offset));
    out
}

/// Minimal (degree, offset) recurrence fitting `seq`, if any.
pub fn berlekamp_massey_rational(seq: &[BigRational]) -> Option<RationalRecurrence> {
    recurrence_candidates(seq).into_iter().next()
}

pub fn to_rationals(seq: &[u64]) -> Vec<BigRational> {
    seq.iter()
        .map(|&v| BigRational::from_integer(BigInt::from(v)))
        .collect()
}
