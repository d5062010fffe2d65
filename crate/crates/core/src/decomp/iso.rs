//! Isomorphism invariants and the isomorphism test.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::{Echelon, FpMatrix};
use crate::rep::{kg, norm_rank, radical_series, socle_series, Answer, Module};

use super::hom::{end_basis, hom_basis};
use super::SearchBudget;

/// `(dim, radical layers, socle layers, dim End, norm rank)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    pub dim: usize,
    pub radical_layers: Vec<usize>,
    pub socle_layers: Vec<usize>,
    pub end_dim: usize,
    pub norm_rank: usize,
}

pub fn canonical_signature(m: &Module) -> Signature {
    Signature {
        dim: m.dim(),
        radical_layers: radical_series(m),
        socle_layers: socle_series(m),
        end_dim: end_basis(m).dim(),
        norm_rank: norm_rank(m),
    }
}

/// Invariants that add up over direct sums, used to rule out summands cheaply.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AdditiveInvariants {
    pub dim: usize,
    pub norm_rank: usize,
    pub radical_layers: Vec<usize>,
    pub socle_layers: Vec<usize>,
    /// For each cyclic subgroup `<Π g_i^{u_i}>`, counts of Jordan blocks of sizes 1..=p.
    pub jordan: Vec<Vec<usize>>,
}

/// Representatives `u` (first nonzero entry 1) of the cyclic subgroups of `(Z/p)^r`.
pub fn cyclic_subgroup_words(p: u32, r: usize) -> Vec<Vec<u32>> {
    let q = (p as usize).pow(r as u32);
    (1..q)
        .map(|i| kg::exponents(i, p, r))
        .filter(|w| w.iter().find(|&&e| e != 0) == Some(&1))
        .map(|w| w.into_iter().map(|e| e as u32).collect())
        .collect()
}

impl AdditiveInvariants {
    pub fn of(m: &Module) -> Self {
        let p = m.p() as usize;
        let id = FpMatrix::identity(m.p(), m.dim());
        let jordan = cyclic_subgroup_words(m.p(), m.group().rank())
            .iter()
            .map(|w| {
                let x = m.group_element(w).sub(&id);
                let mut counts = vec![0; p];
                for s in x.nilpotent_profile().expect("unipotent") {
                    counts[s - 1] += 1;
                }
                counts
            })
            .collect();
        AdditiveInvariants {
            dim: m.dim(),
            norm_rank: norm_rank(m),
            radical_layers: radical_series(m),
            socle_layers: socle_series(m),
            jordan,
        }
    }

    /// Componentwise `self <= o`; necessary for `self` to be a summand of `o`.
    pub fn fits_in(&self, o: &AdditiveInvariants) -> bool {
        fn le(a: &[usize], b: &[usize]) -> bool {
            a.iter()
                .enumerate()
                .all(|(i, &x)| x <= b.get(i).copied().unwrap_or(0))
        }
        self.dim <= o.dim
            && self.norm_rank <= o.norm_rank
            && le(&self.radical_layers, &o.radical_layers)
            && le(&self.socle_layers, &o.socle_layers)
            && self.jordan.iter().zip(&o.jordan).all(|(a, b)| le(a, b))
    }

    /// `self - o`, assuming `o` fits in `self`.
    pub fn minus(&self, o: &AdditiveInvariants) -> AdditiveInvariants {
        fn sub(a: &[usize], b: &[usize]) -> Vec<usize> {
            let mut v: Vec<usize> = a
                .iter()
                .enumerate()
                .map(|(i, &x)| x - b.get(i).copied().unwrap_or(0))
                .collect();
            while v.last() == Some(&0) {
                v.pop();
            }
            v
        }
        AdditiveInvariants {
            dim: self.dim - o.dim,
            norm_rank: self.norm_rank - o.norm_rank,
            radical_layers: sub(&self.radical_layers, &o.radical_layers),
            socle_layers: sub(&self.socle_layers, &o.socle_layers),
            jordan: self
                .jordan
                .iter()
                .zip(&o.jordan)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
                .collect(),
        }
    }
}

/// Largest `p^{dim Hom}` searched exhaustively.
const EXHAUSTIVE_LIMIT: u64 = 4096;
/// Largest number of basis products formed for the ideal certificate.
const PRODUCT_LIMIT: usize = 4096;

pub fn is_isomorphic(m: &Module, n: &Module, budget: &SearchBudget) -> Answer {
    if m.group() != n.group() || m.dim() != n.dim() {
        return Answer::No;
    }
    if m.dim() == 0 {
        return Answer::Yes;
    }
    if m == n {
        return Answer::Yes;
    }
    if AdditiveInvariants::of(m) != AdditiveInvariants::of(n) {
        return Answer::No;
    }
    iso_search(m, n, budget)
}

/// The Hom-based part of the test, for modules whose cheap invariants agree.
pub fn iso_search(m: &Module, n: &Module, budget: &SearchBudget) -> Answer {
    if m == n {
        return Answer::Yes;
    }
    let dim = m.dim();
    let h = hom_basis(m, n).expect("same group");
    let hb = hom_basis(n, m).expect("same group");
    if h.dim() != hb.dim() || h.dim() == 0 {
        return Answer::No;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for _ in 0..budget.trials {
        if h.random_element(&mut rng).rank() == dim {
            return Answer::Yes;
        }
    }
    // If M ≅ N then Hom(N,M)∘Hom(M,N) = End(M); a smaller span certifies "no".
    let end_dim = end_basis(m).dim();
    if end_dim != h.dim() {
        return Answer::No;
    }
    if h.dim() * hb.dim() <= PRODUCT_LIMIT {
        let mut span = Echelon::new(m.p(), dim * dim);
        'outer: for psi in hb.basis() {
            for phi in h.basis() {
                span.insert(psi.mul(phi).data().to_vec());
                if span.dim() == end_dim {
                    break 'outer;
                }
            }
        }
        if span.dim() < end_dim {
            return Answer::No;
        }
    }
    let p = m.p() as u64;
    let total = p.checked_pow(h.dim() as u32).unwrap_or(u64::MAX);
    if total <= EXHAUSTIVE_LIMIT {
        for code in 1..total {
            let coeffs: Vec<u32> = (0..h.dim())
                .map(|i| ((code / p.pow(i as u32)) % p) as u32)
                .collect();
            if h.combination(&coeffs).rank() == dim {
                return Answer::Yes;
            }
        }
        return Answer::No;
    }
    Answer::Unknown
}
