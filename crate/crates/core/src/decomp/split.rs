//! Splitting modules into indecomposable summands.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::linalg::FpMatrix;
use crate::rep::{core, Answer, GroupSpec, Module, Subspace};

use super::hom::{end_basis, hom_basis, HomSpace};
use super::iso::{iso_search, AdditiveInvariants};
use super::SearchBudget;

/// Smallest `k` with `2^k >= n`.
fn doubling_exponent(n: usize) -> u32 {
    usize::BITS - n.saturating_sub(1).leading_zeros()
}

/// Projection onto the stable image of `t` along its stable kernel.
fn fitting_projection(t: &FpMatrix) -> Option<FpMatrix> {
    let n = t.rows();
    let mut pw = t.clone();
    for _ in 0..doubling_exponent(n) {
        pw = pw.mul(&pw);
    }
    let image = Subspace::from_columns(&pw);
    let r = image.dim();
    if r == 0 || r == n {
        return None;
    }
    let (kernel, _) = pw.kernel_matrix();
    let b = image.basis_matrix().hstack(&kernel);
    let inv = b.inverse().expect("Fitting decomposition is direct");
    let mut d = FpMatrix::zeros(t.p(), n, n);
    for i in 0..r {
        d.set(i, i, 1);
    }
    Some(b.mul(&d).mul(&inv))
}

/// Looks for an idempotent `e` in the endomorphism space with `0 < rank e < dim`.
///
/// Each trial draws a random `θ`; for every `λ` with `θ - λ` singular the
/// Fitting projection of `θ - λ` is tried.
pub fn find_splitting_idempotent<R: Rng>(e: &HomSpace, trials: usize, rng: &mut R) -> Option<FpMatrix> {
    let n = e.source().dim();
    if n <= 1 || e.dim() <= 1 {
        return None;
    }
    let p = e.source().p();
    let id = FpMatrix::identity(p, n);
    for _ in 0..trials {
        let theta = e.random_element(rng);
        for lam in 0..p.min(64) {
            let t = theta.sub(&id.scale(lam));
            if t.rank() == n {
                continue;
            }
            if let Some(proj) = fitting_projection(&t) {
                return Some(proj);
            }
        }
    }
    None
}

/// An indecomposable piece and the number of failed splitting trials behind
/// that verdict (0 when indecomposability is certain, e.g. `dim End = 1`).
#[derive(Clone, Debug)]
pub struct Piece {
    pub module: Module,
    pub trials: usize,
}

/// Splits a module without free summands into indecomposable pieces.
pub fn split_indecomposables(m: &Module, budget: &SearchBudget, rng: &mut ChaCha8Rng) -> Vec<Piece> {
    let mut out = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(x) = stack.pop() {
        if x.dim() == 0 {
            continue;
        }
        if x.dim() == 1 {
            out.push(Piece { module: x, trials: 0 });
            continue;
        }
        let e = end_basis(&x);
        if e.dim() == 1 {
            out.push(Piece { module: x, trials: 0 });
            continue;
        }
        match find_splitting_idempotent(&e, budget.trials, rng) {
            Some(proj) => {
                let id = FpMatrix::identity(x.p(), x.dim());
                let a = x.submodule(&Subspace::from_columns(&proj));
                let b = x.submodule(&Subspace::from_columns(&id.sub(&proj)));
                stack.push(b);
                stack.push(a);
            }
            None => out.push(Piece {
                module: x,
                trials: budget.trials,
            }),
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct Summand {
    pub module: Module,
    pub multiplicity: usize,
    /// Splitting trials that failed on this summand (0 = certainly indecomposable).
    pub trials: usize,
}

/// Indecomposable non-projective summands with multiplicities, plus the free rank.
#[derive(Clone, Debug, Serialize)]
pub struct SummandMultiset {
    pub group: GroupSpec,
    pub summands: Vec<Summand>,
    pub free_rank: usize,
    /// Pairs of pieces whose isomorphism could not be decided; kept apart.
    pub undecided_pairs: usize,
}

impl SummandMultiset {
    pub fn total_dim(&self) -> usize {
        self.summands
            .iter()
            .map(|s| s.multiplicity * s.module.dim())
            .sum::<usize>()
            + self.free_rank * self.group.order()
    }

    /// Dimensions of the non-projective summands, with repetition, ascending.
    pub fn dims(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .summands
            .iter()
            .flat_map(|s| std::iter::repeat(s.module.dim()).take(s.multiplicity))
            .collect();
        d.sort_unstable();
        d
    }

    pub fn core_dim(&self) -> usize {
        self.summands.iter().map(|s| s.multiplicity * s.module.dim()).sum()
    }
}

/// Full decomposition: strip the free part, split, then group isomorphic pieces.
pub fn decompose(m: &Module, budget: &SearchBudget) -> SummandMultiset {
    let c = core(m);
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let pieces = split_indecomposables(&c.core, budget, &mut rng);
    let mut catalog = Catalog::new(*budget);
    let mut summands: Vec<Summand> = Vec::new();
    for piece in pieces {
        match catalog.find(&piece.module) {
            Some(i) => summands[i].multiplicity += 1,
            None => {
                catalog.push(piece.module.clone());
                summands.push(Summand {
                    module: piece.module,
                    multiplicity: 1,
                    trials: piece.trials,
                });
            }
        }
    }
    let mut order: Vec<usize> = (0..summands.len()).collect();
    order.sort_by(|&a, &b| {
        catalog.invariants[a]
            .cmp(&catalog.invariants[b])
            .then(a.cmp(&b))
    });
    let summands = order.into_iter().map(|i| summands[i].clone()).collect();
    SummandMultiset {
        group: m.group(),
        summands,
        free_rank: c.free_rank,
        undecided_pairs: catalog.undecided,
    }
}

/// A list of pairwise non-isomorphic modules with cached invariants.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub modules: Vec<Module>,
    pub invariants: Vec<AdditiveInvariants>,
    budget: SearchBudget,
    /// Isomorphism questions answered "unknown" (treated as non-isomorphic).
    pub undecided: usize,
}

impl Catalog {
    pub fn new(budget: SearchBudget) -> Self {
        Catalog {
            modules: Vec::new(),
            invariants: Vec::new(),
            budget,
            undecided: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn push(&mut self, m: Module) -> usize {
        self.invariants.push(AdditiveInvariants::of(&m));
        self.modules.push(m);
        self.modules.len() - 1
    }

    pub fn find(&mut self, m: &Module) -> Option<usize> {
        let inv = AdditiveInvariants::of(m);
        self.find_with(m, &inv)
    }

    pub fn find_with(&mut self, m: &Module, inv: &AdditiveInvariants) -> Option<usize> {
        for i in 0..self.modules.len() {
            if &self.invariants[i] != inv {
                continue;
            }
            match iso_search(&self.modules[i], m, &self.budget) {
                Answer::Yes => return Some(i),
                Answer::No => {}
                Answer::Unknown => self.undecided += 1,
            }
        }
        None
    }

    pub fn find_or_insert(&mut self, m: &Module) -> (usize, bool) {
        let inv = AdditiveInvariants::of(m);
        match self.find_with(m, &inv) {
            Some(i) => (i, false),
            None => {
                self.invariants.push(inv);
                self.modules.push(m.clone());
                (self.modules.len() - 1, true)
            }
        }
    }
}

/// Decomposition of a module relative to a list of known indecomposables.
#[derive(Clone, Debug)]
pub struct KnownDecomposition {
    pub free_rank: usize,
    /// Multiplicity of each catalog entry.
    pub known: Vec<usize>,
    /// Summands not isomorphic to any catalog entry.
    pub others: Vec<Piece>,
}

/// Decomposes `m`, first peeling off copies of catalog modules with random
/// split monomorphisms, then splitting the remainder and matching its pieces
/// against the catalog.
pub fn decompose_with_known(m: &Module, catalog: &mut Catalog, peel: &[usize], rng: &mut ChaCha8Rng) -> KnownDecomposition {
    let c = core(m);
    let mut rest = c.core;
    let mut known = vec![0; catalog.len()];
    let mut inv_rest = AdditiveInvariants::of(&rest);
    let budget = catalog.budget;
    for &idx in peel {
        loop {
            if rest.dim() == 0 || !catalog.invariants[idx].fits_in(&inv_rest) {
                break;
            }
            let s = &catalog.modules[idx];
            match peel_once(s, &rest, budget.peel_trials, rng) {
                Some(next) => {
                    rest = next;
                    inv_rest = inv_rest.minus(&catalog.invariants[idx]);
                    known[idx] += 1;
                }
                None => break,
            }
        }
    }
    let mut others = Vec::new();
    for piece in split_indecomposables(&rest, &budget, rng) {
        match catalog.find(&piece.module) {
            Some(i) => known[i] += 1,
            None => others.push(piece),
        }
    }
    KnownDecomposition {
        free_rank: c.free_rank,
        known,
        others,
    }
}

/// If `s` is found as a summand of `n`, returns a complement.
fn peel_once(s: &Module, n: &Module, trials: usize, rng: &mut ChaCha8Rng) -> Option<Module> {
    let into = hom_basis(s, n).expect("same group");
    if into.dim() == 0 {
        return None;
    }
    let back = hom_basis(n, s).expect("same group");
    if back.dim() == 0 {
        return None;
    }
    for _ in 0..trials {
        let phi = into.random_element(rng);
        let psi = back.random_element(rng);
        if psi.mul(&phi).rank() == s.dim() {
            let (kernel, _) = psi.kernel_matrix();
            return Some(n.submodule(&Subspace::from_columns(&kernel)));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{omega, GroupSpec};

    fn ex210() -> Module {
        Module::from_int_rows(
            3,
            &[
                vec![vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]],
                vec![vec![1, 0, 1], vec![0, 1, 0], vec![0, 0, 1]],
            ],
        )
        .unwrap()
    }

    #[test]
    fn doubling() {
        assert_eq!(doubling_exponent(1), 0);
        assert_eq!(doubling_exponent(2), 1);
        assert_eq!(doubling_exponent(5), 3);
        assert_eq!(doubling_exponent(8), 3);
    }

    #[test]
    fn idempotents() {
        let g = GroupSpec::new(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let kk = Module::trivial(g, 2);
        let e = find_splitting_idempotent(&end_basis(&kk), 64, &mut rng).unwrap();
        assert_eq!(e.mul(&e), e);
        assert_eq!(e.rank(), 1);
        assert!(find_splitting_idempotent(&end_basis(&ex210()), 64, &mut rng).is_none());
        let mf = ex210().sum_with(&Module::free_module(g, 1)).unwrap();
        let e = find_splitting_idempotent(&end_basis(&mf), 64, &mut rng).unwrap();
        assert_eq!(e.mul(&e), e);
        assert!(HomSpace::is_homomorphism(&mf, &mf, &e));
    }

    #[test]
    fn decompositions() {
        let b = SearchBudget::default();
        let g = GroupSpec::new(3, 2).unwrap();
        let d = decompose(&Module::free_module(g, 2), &b);
        assert!(d.summands.is_empty());
        assert_eq!(d.free_rank, 2);
        let m = ex210();
        let mm = m.tensor(&m).unwrap();
        let d = decompose(&mm, &b);
        assert_eq!(d.total_dim(), 9);
        // M ⊗ M ≅ M* ⊕ ΩM* for this module: core dims 3 + 6
        assert_eq!(d.dims(), vec![3, 6]);
        let big = Module::direct_sum(&[m.clone(), m.dual(), m.clone(), omega(&m)]).unwrap();
        let d = decompose(&big, &b);
        assert_eq!(d.dims(), vec![3, 3, 3, 6]);
        assert_eq!(d.summands.len(), 3);
    }

    #[test]
    fn peeling_known_summands() {
        let m = ex210();
        let g = m.group();
        let mut cat = Catalog::new(SearchBudget::default());
        cat.push(m.clone());
        cat.push(m.dual());
        let n = Module::direct_sum(&[m.clone(), Module::free_module(g, 1), m.dual(), m.clone(), Module::trivial(g, 1)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let kd = decompose_with_known(&n, &mut cat, &[0, 1], &mut rng);
        assert_eq!(kd.free_rank, 1);
        assert_eq!(kd.known, vec![2, 1]);
        assert_eq!(kd.others.len(), 1);
        assert_eq!(kd.others[0].module.dim(), 1);
    }
}
