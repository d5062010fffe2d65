//! Finite-`n` checks of the structural laws satisfied by `cc`.

use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::decomp::{is_isomorphic, SearchBudget};
use crate::linalg::FpMatrix;
use crate::rep::{core, omega, Answer, GroupSpec, Module};

use super::cc::{cc_sequence, CcConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Law {
    /// `cc_n(M*) = cc_n(M)`
    DualInvariance,
    /// `cc_{m+n} <= cc_m cc_n`
    Submultiplicative,
    /// `cc_n(M ⊗ N) <= cc_n(M) cc_n(N)`
    TensorBound,
    /// `cc_n(k ⊕ M) = Σ C(n,i) cc_i(M)`
    TrivialSummand,
    /// `cc_n(M^{⊕m}) = m^n cc_n(M)`
    Multiples,
    /// `core(Ωk ⊗ M) ≅ ΩM`
    SyzygyShift,
    /// `core(M*) ≅ core(M)*`
    DualCore,
    /// `cc_n(M ⊕ N) >= max(cc_n(M), cc_n(N))`
    SumLowerBound,
}

pub const ALL_LAWS: [Law; 8] = [
    Law::DualInvariance,
    Law::Submultiplicative,
    Law::TensorBound,
    Law::TrivialSummand,
    Law::Multiples,
    Law::SyzygyShift,
    Law::DualCore,
    Law::SumLowerBound,
];

impl Law {
    pub fn letter(self) -> char {
        (b'a' + ALL_LAWS.iter().position(|&l| l == self).expect("listed") as u8) as char
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub law: Law,
    /// Indices into the module list.
    pub modules: Vec<usize>,
    pub n: Option<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarnessReport {
    pub modules: usize,
    pub n_max: usize,
    /// `(law, checks made, failures)`.
    pub tally: Vec<(Law, usize, usize)>,
    pub failures: Vec<Failure>,
    /// Isomorphism checks that came back undecided (counted as failures).
    pub undecided: usize,
    /// `cc` computations cut short by a budget; their laws are skipped.
    pub truncated: usize,
}

impl HarnessReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, law: Law, ok: bool, failure: impl FnOnce() -> Failure) {
        let slot = self
            .tally
            .iter_mut()
            .find(|t| t.0 == law)
            .expect("all laws tallied");
        slot.1 += 1;
        if !ok {
            slot.2 += 1;
            self.failures.push(failure());
        }
    }
}

fn binom(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

/// `cc_0..cc_n_max`, or `None` when truncated.
fn cc(m: &Module, n_max: usize) -> Option<Vec<u64>> {
    let s = cc_sequence(
        m,
        &CcConfig {
            n_max,
            ..CcConfig::default()
        },
    );
    (s.values.len() == n_max + 1).then_some(s.values)
}

/// Checks laws (a)-(h) on every module (and on consecutive pairs for the
/// two-module laws) for `n <= n_max`.
pub fn invariant_harness(modules: &[Module], n_max: usize, budget: &SearchBudget) -> HarnessReport {
    let mut rep = HarnessReport {
        modules: modules.len(),
        n_max,
        tally: ALL_LAWS.iter().map(|&l| (l, 0, 0)).collect(),
        ..Default::default()
    };
    if modules.is_empty() {
        return rep;
    }
    let g = modules[0].group();
    let k = Module::trivial(g, 1);
    let omega_k = omega(&k);
    let mut seqs: Vec<Option<Vec<u64>>> = Vec::with_capacity(modules.len());
    for m in modules {
        seqs.push(cc(m, n_max));
    }
    let iso = |a: &Module, b: &Module, rep: &mut HarnessReport| match is_isomorphic(a, b, budget) {
        Answer::Yes => true,
        Answer::No => false,
        Answer::Unknown => {
            rep.undecided += 1;
            false
        }
    };

    for (i, m) in modules.iter().enumerate() {
        let Some(s) = seqs[i].clone() else {
            rep.truncated += 1;
            continue;
        };
        // (a)
        match cc(&m.dual(), n_max) {
            Some(d) => rep.record(Law::DualInvariance, d == s, || Failure {
                law: Law::DualInvariance,
                modules: vec![i],
                n: (0..=n_max).find(|&n| d[n] != s[n]),
                detail: format!("cc(M*) = {d:?}, cc(M) = {s:?}"),
            }),
            None => rep.truncated += 1,
        }
        // (b)
        for a in 0..=n_max {
            for b in 0..=n_max - a {
                rep.record(Law::Submultiplicative, s[a + b] <= s[a] * s[b], || Failure {
                    law: Law::Submultiplicative,
                    modules: vec![i],
                    n: Some(a + b),
                    detail: format!("cc_{} = {} > cc_{a} cc_{b} = {}", a + b, s[a + b], s[a] * s[b]),
                });
            }
        }
        // (d)
        let km = k.sum_with(m).expect("same group");
        match cc(&km, n_max) {
            Some(t) => {
                for n in 0..=n_max {
                    let expect: u64 = (0..=n).map(|j| binom(n, j) * s[j]).sum();
                    rep.record(Law::TrivialSummand, t[n] == expect, || Failure {
                        law: Law::TrivialSummand,
                        modules: vec![i],
                        n: Some(n),
                        detail: format!("cc_n(k+M) = {}, binomial sum = {expect}", t[n]),
                    });
                }
            }
            None => rep.truncated += 1,
        }
        // (e)
        match cc(&m.multiple(2), n_max) {
            Some(t) => {
                for n in 0..=n_max {
                    let expect = (1u64 << n) * s[n];
                    rep.record(Law::Multiples, t[n] == expect, || Failure {
                        law: Law::Multiples,
                        modules: vec![i],
                        n: Some(n),
                        detail: format!("cc_n(2M) = {}, 2^n cc_n(M) = {expect}", t[n]),
                    });
                }
            }
            None => rep.truncated += 1,
        }
        // (f)
        let lhs = core(&omega_k.tensor(m).expect("same group")).core;
        let rhs = omega(m);
        let ok = iso(&lhs, &rhs, &mut rep);
        rep.record(Law::SyzygyShift, ok, || Failure {
            law: Law::SyzygyShift,
            modules: vec![i],
            n: None,
            detail: format!("core(Ωk ⊗ M) has dim {}, ΩM has dim {}", lhs.dim(), rhs.dim()),
        });
        // (g)
        let a = core(&m.dual()).core;
        let b = core(m).core.dual();
        let ok = iso(&a, &b, &mut rep);
        rep.record(Law::DualCore, ok, || Failure {
            law: Law::DualCore,
            modules: vec![i],
            n: None,
            detail: format!("core(M*) has dim {}, core(M)* has dim {}", a.dim(), b.dim()),
        });
    }

    for i in 0..modules.len().saturating_sub(1) {
        let j = i + 1;
        let (Some(s), Some(t)) = (seqs[i].clone(), seqs[j].clone()) else {
            continue;
        };
        // (c)
        match cc(&modules[i].tensor(&modules[j]).expect("same group"), n_max) {
            Some(u) => {
                for n in 0..=n_max {
                    rep.record(Law::TensorBound, u[n] <= s[n] * t[n], || Failure {
                        law: Law::TensorBound,
                        modules: vec![i, j],
                        n: Some(n),
                        detail: format!("cc_n(M⊗N) = {} > {}", u[n], s[n] * t[n]),
                    });
                }
            }
            None => rep.truncated += 1,
        }
        // (h)
        match cc(&modules[i].sum_with(&modules[j]).expect("same group"), n_max) {
            Some(u) => {
                for n in 0..=n_max {
                    rep.record(Law::SumLowerBound, u[n] >= s[n].max(t[n]), || Failure {
                        law: Law::SumLowerBound,
                        modules: vec![i, j],
                        n: Some(n),
                        detail: format!("cc_n(M⊕N) = {} < {}", u[n], s[n].max(t[n])),
                    });
                }
            }
            None => rep.truncated += 1,
        }
    }
    rep
}

/// A random module of dimension `1..=max_dim` for `(Z/p)^r`, built from
/// commuting strictly upper triangular matrices with `x^p = 0`.
pub fn random_module<R: Rng>(p: u32, r: usize, max_dim: usize, rng: &mut R) -> Module {
    let g = GroupSpec::new(p, r).expect("valid group");
    let d = rng.gen_range(1..=max_dim.max(1));
    'retry: loop {
        let mut xs: Vec<FpMatrix> = Vec::with_capacity(r);
        for _ in 0..r {
            // random element of the strictly upper triangular centralizer of the earlier x's
            let idx: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
            let basis: Vec<FpMatrix> = if xs.is_empty() {
                idx.iter()
                    .map(|&(i, j)| {
                        let mut e = FpMatrix::zeros(p, d, d);
                        e.set(i, j, 1);
                        e
                    })
                    .collect()
            } else {
                centralizer_basis(p, d, &idx, &xs)
            };
            let mut y = FpMatrix::zeros(p, d, d);
            for b in &basis {
                if rng.gen_bool(0.5) {
                    y.add_scaled_assign(rng.gen_range(1..p), b);
                }
            }
            if !y.pow(p as u64).is_zero() {
                continue 'retry;
            }
            xs.push(y);
        }
        return Module::from_nilpotents(g, xs);
    }
}

/// `count` modules from [`random_module`] seeded by `seed`.
pub fn random_modules(p: u32, r: usize, max_dim: usize, count: usize, seed: u64) -> Vec<Module> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_module(p, r, max_dim, &mut rng)).collect()
}

/// Strictly upper triangular matrices commuting with every `x` in `xs`.
fn centralizer_basis(p: u32, d: usize, idx: &[(usize, usize)], xs: &[FpMatrix]) -> Vec<FpMatrix> {
    let f = crate::linalg::Fp::new(p).expect("prime");
    let n = idx.len();
    let mut sys = FpMatrix::zeros(p, xs.len() * d * d, n);
    for (t, x) in xs.iter().enumerate() {
        for (v, &(i, j)) in idx.iter().enumerate() {
            // E_ij: (x E)[a][j] = x[a][i], (E x)[i][b] = x[j][b]
            for a in 0..d {
                let row = t * d * d + a * d + j;
                sys.set(row, v, f.add(sys.get(row, v), x.get(a, i)));
            }
            for b in 0..d {
                let row = t * d * d + i * d + b;
                sys.set(row, v, f.sub(sys.get(row, v), x.get(j, b)));
            }
        }
    }
    sys.kernel_basis()
        .into_iter()
        .map(|c| {
            let mut e = FpMatrix::zeros(p, d, d);
            for (v, &(i, j)) in idx.iter().enumerate() {
                e.set(i, j, c[v]);
            }
            e
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_modules_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [2, 3] {
            for _ in 0..20 {
                let m = random_module(p, 2, 5, &mut rng);
                assert!(m.validate().is_empty());
                assert!(m.dim() >= 1 && m.dim() <= 5);
            }
        }
    }

    #[test]
    fn letters() {
        assert_eq!(Law::DualInvariance.letter(), 'a');
        assert_eq!(Law::SumLowerBound.letter(), 'h');
    }

    #[test]
    fn empty_list() {
        let r = invariant_harness(&[], 5, &SearchBudget::default());
        assert!(r.passed());
        assert_eq!(r.modules, 0);
    }

    #[test]
    fn gallery_modules_pass() {
        let ms = [gallery::uniserial_3x3(), gallery::soc2_3x3()];
        let r = invariant_harness(&ms, 4, &SearchBudget::default());
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.undecided, 0);
        assert!(r.tally.iter().all(|t| t.1 > 0));
    }
}
