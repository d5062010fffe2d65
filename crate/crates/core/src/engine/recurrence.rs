//! Eventual linear recurrences of core-dimension sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::recurrence::{recurrence_candidates, to_rationals, RationalRecurrence};
use crate::linalg::{largest_real_root, IntPolynomial};

pub const DEFAULT_HOLDOUT: usize = 3;

/// `s(n) + a_1 s(n-1) + ... + a_d s(n-d) = 0` for every `n >= start`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recurrence {
    pub start: usize,
    /// `a_1..a_d`, with `a_d != 0`.
    #[serde(with = "big_list")]
    pub coeffs: Vec<BigInt>,
    /// `z^d + a_1 z^{d-1} + ... + a_d`.
    pub charpoly: IntPolynomial,
    /// Indices `[from, to)` on which the relation was checked.
    pub verified: (usize, usize),
}

pub(crate) mod big_list {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|b| b.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        v.iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

impl Recurrence {
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Largest real root of the characteristic polynomial (0 for the zero recurrence).
    pub fn value(&self) -> f64 {
        largest_real_root(&self.charpoly, 1e-13).unwrap_or(0.0).max(0.0)
    }

    pub fn holds_on(&self, values: &[u64]) -> bool {
        (self.start..values.len()).all(|n| {
            let mut acc = BigInt::from(values[n]);
            for (i, a) in self.coeffs.iter().enumerate() {
                acc += a * BigInt::from(values[n - 1 - i]);
            }
            acc.is_zero()
        })
    }

    /// `s(n) = c_1 s(n-1) + ...` in human form.
    pub fn describe(&self) -> String {
        let mut terms = Vec::new();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let c = -a;
            let lag = i + 1;
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            let body = if mag == BigInt::from(1) {
                format!("cc[n-{lag}]")
            } else {
                format!("{mag}*cc[n-{lag}]")
            };
            terms.push((sign, body));
        }
        let mut s = format!("cc[n] = ");
        if terms.is_empty() {
            s.push('0');
        }
        for (k, (sign, body)) in terms.into_iter().enumerate() {
            if k == 0 {
                if sign == "-" {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            s.push_str(&body);
        }
        format!("{s} for n >= {}", self.start)
    }
}

/// Outcome of a recurrence search: the accepted relation and the fits that
/// matched the prefix but failed on the held-out terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceSearch {
    pub recurrence: Option<Recurrence>,
    pub rejected: Vec<Recurrence>,
}

fn to_integer(r: &RationalRecurrence) -> Option<Recurrence> {
    if !r.coeffs.iter().all(|c| c.is_integer()) {
        return None;
    }
    let mut coeffs: Vec<BigInt> = r.coeffs.iter().map(BigRational::to_integer).collect();
    let start = r.start();
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    let d = coeffs.len();
    let mut cp = vec![BigInt::zero(); d + 1];
    cp[d] = BigInt::from(1);
    for (i, a) in coeffs.iter().enumerate() {
        cp[d - 1 - i] = a.clone();
    }
    Some(Recurrence {
        start,
        coeffs,
        charpoly: IntPolynomial::new(cp),
        verified: (start, start),
    })
}

/// Fits integer recurrences on all but the last `holdout` values and keeps the
/// first, by (degree, start), that also holds on the held-out values.
pub fn detect_recurrence(values: &[u64], holdout: usize) -> RecurrenceSearch {
    let mut out = RecurrenceSearch::default();
    if values.len() < 2 * holdout.max(1) {
        return out;
    }
    let prefix = &values[..values.len() - holdout];
    for cand in recurrence_candidates(&to_rationals(prefix)) {
        let Some(mut rec) = to_integer(&cand) else {
            continue;
        };
        if rec.start >= prefix.len() {
            continue;
        }
        rec.verified = (rec.start, values.len());
        if rec.holds_on(values) {
            out.recurrence = Some(rec);
            break;
        }
        if !out.rejected.contains(&rec) {
            out.rejected.push(rec);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_period_three() {
        let s = [1, 3, 9, 27, 36, 72, 216, 288, 576, 1728, 2304, 4608, 13824];
        let r = detect_recurrence(&s, 3).recurrence.unwrap();
        assert_eq!(r.start, 5);
        assert_eq!(r.coeffs, vec![BigInt::zero(), BigInt::zero(), BigInt::from(-8)]);
        assert_eq!(r.charpoly, IntPolynomial::from_i64(&[-8, 0, 0, 1]));
        assert!((r.value() - 2.0).abs() < 1e-12);
        assert_eq!(r.describe(), "cc[n] = 8*cc[n-3] for n >= 5");
    }

    #[test]
    fn constant_sequence() {
        let r = detect_recurrence(&[1; 8], 3).recurrence.unwrap();
        assert_eq!(r.degree(), 1);
        assert!((r.value() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn projective_tail() {
        let r = detect_recurrence(&[1, 0, 0, 0, 0, 0, 0], 3).recurrence.unwrap();
        assert_eq!(r.degree(), 0);
        assert_eq!(r.value(), 0.0);
    }

    #[test]
    fn holdout_rejects_a_false_fit() {
        // powers of two, then a break in the last terms
        let s = [1, 2, 4, 8, 16, 32, 64, 128, 255, 511, 1023];
        let res = detect_recurrence(&s, 3);
        assert!(res.rejected.iter().any(|r| r.coeffs == vec![BigInt::from(-2)]));
        if let Some(r) = res.recurrence {
            assert!(r.holds_on(&s));
        }
    }

    #[test]
    fn too_short() {
        assert!(detect_recurrence(&[1, 2, 4], 3).recurrence.is_none());
    }
}
