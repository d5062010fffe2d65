//! Modules over elementary abelian p-groups given by generator matrices.
//!
//! A module for `G = (Z/p)^r` is `r` commuting unipotent matrices acting on
//! column vectors. The nilpotent elements `x_i = X_i - I` generate the group
//! algebra `kG = F_p[x_1..x_r]/(x_i^p)`, whose monomials `x^a` are indexed by
//! `a_0 + a_1 p + ... + a_{r-1} p^{r-1}`.

mod splitting;
pub mod kg;
mod subspace;
mod syzygy;

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{is_prime, FpMatrix, MAX_PRIME};

pub use splitting::{core, norm_matrix, norm_rank, CoreResult};
pub use kg::GroupAlgebra;
pub use subspace::Subspace;
pub use syzygy::{omega, omega_inv, radical, radical_series, socle, socle_series, top_lifts};

/// The group `(Z/p)^rank`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupSpec {
    p: u32,
    rank: usize,
}

impl GroupSpec {
    pub fn new(p: u32, rank: usize) -> Result<Self> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(Error::InvalidPrime(p));
        }
        if rank == 0 {
            return Err(Error::Precondition("group rank must be at least 1".into()));
        }
        Ok(GroupSpec { p, rank })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `p^rank`, the dimension of the regular module.
    pub fn order(&self) -> usize {
        (self.p as usize).pow(self.rank as u32)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank == 1 {
            write!(f, "Z/{}", self.p)
        } else {
            write!(f, "(Z/{})^{}", self.p, self.rank)
        }
    }
}

/// Yes/no answer that may also be undecided within a budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl Answer {
    pub fn is_yes(self) -> bool {
        self == Answer::Yes
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Unknown => "unknown",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Module {
    group: GroupSpec,
    dim: usize,
    gens: Vec<FpMatrix>,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module({}, dim {})", self.group, self.dim)
    }
}

impl Module {
    /// Builds a module and checks the commuting and unipotence conditions.
    pub fn new(group: GroupSpec, gens: Vec<FpMatrix>) -> Result<Self> {
        let dim = gens.first().map_or(0, |g| g.rows());
        let m = Module { group, dim, gens };
        let violations = m.validate();
        if violations.is_empty() {
            Ok(m)
        } else {
            Err(Error::InvalidModule(violations))
        }
    }

    pub(crate) fn new_unchecked(group: GroupSpec, dim: usize, gens: Vec<FpMatrix>) -> Self {
        debug_assert_eq!(gens.len(), group.rank);
        Module { group, dim, gens }
    }

    /// Convenience constructor from integer rows, reduced mod p.
    pub fn from_int_rows(p: u32, gens: &[Vec<Vec<i64>>]) -> Result<Self> {
        let group = GroupSpec::new(p, gens.len())?;
        let mats = gens.iter().map(|g| FpMatrix::from_rows(p, g)).collect();
        Module::new(group, mats)
    }

    /// Module built from the nilpotent parts `x_i` instead of `X_i`.
    pub(crate) fn from_nilpotents(group: GroupSpec, xs: Vec<FpMatrix>) -> Self {
        let dim = xs.first().map_or(0, |x| x.rows());
        let id = FpMatrix::identity(group.p, dim);
        let gens = xs.into_iter().map(|x| x.add(&id)).collect();
        Module::new_unchecked(group, dim, gens)
    }

    pub fn group(&self) -> GroupSpec {
        self.group
    }

    pub fn p(&self) -> u32 {
        self.group.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[FpMatrix] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// `x_i = X_i - I`.
    pub fn nilpotents(&self) -> Vec<FpMatrix> {
        let id = FpMatrix::identity(self.p(), self.dim);
        self.gens.iter().map(|g| g.sub(&id)).collect()
    }

    /// Lists every violated module invariant; empty means valid.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.gens.len() != self.group.rank {
            out.push(format!(
                "expected {} generators, found {}",
                self.group.rank,
                self.gens.len()
            ));
        }
        for (i, g) in self.gens.iter().enumerate() {
            if g.p() != self.group.p {
                out.push(format!("generator {i} is over GF({}), not GF({})", g.p(), self.group.p));
            }
            if g.rows() != self.dim || g.cols() != self.dim {
                out.push(format!(
                    "generator {i} has shape {}x{}, expected {}x{}",
                    g.rows(),
                    g.cols(),
                    self.dim,
                    self.dim
                ));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (i, x) in self.nilpotents().iter().enumerate() {
            if !x.pow(self.group.p as u64).is_zero() {
                out.push(format!("generator {i}: (X-I)^p != 0"));
            }
        }
        for i in 0..self.gens.len() {
            for j in i + 1..self.gens.len() {
                if self.gens[i].mul(&self.gens[j]) != self.gens[j].mul(&self.gens[i]) {
                    out.push(format!("non-commuting pair ({i},{j})"));
                }
            }
        }
        out
    }

    fn check_group(&self, o: &Module) -> Result<()> {
        if self.group != o.group {
            return Err(Error::GroupMismatch(self.group.to_string(), o.group.to_string()));
        }
        Ok(())
    }

    /// The zero module.
    pub fn zero(group: GroupSpec) -> Self {
        Module::new_unchecked(group, 0, vec![FpMatrix::zeros(group.p, 0, 0); group.rank])
    }

    /// The trivial module `k^d` (all generators act as the identity).
    pub fn trivial(group: GroupSpec, d: usize) -> Self {
        Module::new_unchecked(group, d, vec![FpMatrix::identity(group.p, d); group.rank])
    }

    /// `t` copies of the regular module, with group elements `g^b` as basis
    /// (index of `b` as for monomials) and generators acting by translation.
    pub fn free_module(group: GroupSpec, t: usize) -> Self {
        let q = group.order();
        let p = group.p as usize;
        let mut gens = Vec::with_capacity(group.rank);
        for i in 0..group.rank {
            let stride = p.pow(i as u32);
            let mut m = FpMatrix::zeros(group.p, q, q);
            for b in 0..q {
                let digit = (b / stride) % p;
                let target = if digit + 1 == p { b - digit * stride } else { b + stride };
                m.set(target, b, 1 % group.p);
            }
            let blocks = vec![&m; t];
            gens.push(FpMatrix::block_diag(group.p, &blocks));
        }
        Module::new_unchecked(group, q * t, gens)
    }

    pub fn tensor(&self, o: &Module) -> Result<Module> {
        self.check_group(o)?;
        let gens = self
            .gens
            .iter()
            .zip(&o.gens)
            .map(|(a, b)| a.kron(b))
            .collect();
        Ok(Module::new_unchecked(self.group, self.dim * o.dim, gens))
    }

    pub fn dual(&self) -> Module {
        let gens = self
            .gens
            .iter()
            .map(|g| g.inverse().expect("unipotent matrices are invertible").transpose())
            .collect();
        Module::new_unchecked(self.group, self.dim, gens)
    }

    pub fn direct_sum(ms: &[Module]) -> Result<Module> {
        let Some(first) = ms.first() else {
            return Err(Error::Precondition("direct_sum of an empty list".into()));
        };
        for m in ms {
            first.check_group(m)?;
        }
        let group = first.group;
        let gens = (0..group.rank)
            .map(|i| {
                let blocks: Vec<&FpMatrix> = ms.iter().map(|m| &m.gens[i]).collect();
                FpMatrix::block_diag(group.p, &blocks)
            })
            .collect();
        Ok(Module::new_unchecked(group, ms.iter().map(|m| m.dim).sum(), gens))
    }

    pub fn sum_with(&self, o: &Module) -> Result<Module> {
        Module::direct_sum(&[self.clone(), o.clone()])
    }

    /// `m` copies of this module.
    pub fn multiple(&self, m: usize) -> Module {
        if m == 0 {
            return Module::zero(self.group);
        }
        Module::direct_sum(&vec![self.clone(); m]).expect("same group")
    }

    /// `M^{⊗n}`, with `M^{⊗0} = k`.
    pub fn tensor_power(&self, n: usize) -> Module {
        let mut acc = Module::trivial(self.group, 1);
        for _ in 0..n {
            acc = acc.tensor(self).expect("same group");
        }
        acc
    }

    /// Element `Π_i X_i^{w_i}` of the group action.
    pub fn group_element(&self, w: &[u32]) -> FpMatrix {
        let mut acc = FpMatrix::identity(self.p(), self.dim);
        for (g, &e) in self.gens.iter().zip(w) {
            if e % self.p() != 0 {
                acc = acc.mul(&g.pow((e % self.p()) as u64));
            }
        }
        acc
    }

    /// Restriction to the subgroup generated by the elements `Π X_i^{w_i}`.
    pub fn restrict(&self, words: &[Vec<u32>]) -> Result<Module> {
        let p = self.p();
        if words.is_empty() {
            return Err(Error::Precondition("restriction needs at least one word".into()));
        }
        for w in words {
            if w.len() != self.group.rank {
                return Err(Error::Shape(format!(
                    "word of length {} for a group of rank {}",
                    w.len(),
                    self.group.rank
                )));
            }
        }
        let wm = FpMatrix::from_row_vecs(
            p,
            self.group.rank,
            &words.iter().map(|w| w.iter().map(|&e| e % p).collect()).collect::<Vec<_>>(),
        );
        if wm.rank() < words.len() {
            return Err(Error::DependentWords);
        }
        let group = GroupSpec::new(p, words.len())?;
        let gens = words.iter().map(|w| self.group_element(w)).collect();
        Ok(Module::new_unchecked(group, self.dim, gens))
    }

    /// The same module over `(Z/p)^{rank + extra}`, new generators acting trivially.
    pub fn inflate(&self, extra: usize) -> Module {
        let group = GroupSpec {
            p: self.p(),
            rank: self.group.rank + extra,
        };
        let mut gens = self.gens.clone();
        gens.extend(std::iter::repeat(FpMatrix::identity(self.p(), self.dim)).take(extra));
        Module::new_unchecked(group, self.dim, gens)
    }

    /// Whether no element of order p acts trivially. Scans the
    /// `(p^r - 1)/(p - 1)` cyclic subgroups; `Unknown` when that exceeds `budget`.
    pub fn p_faithful(&self, budget: usize) -> Answer {
        let p = self.p() as usize;
        let r = self.group.rank;
        let classes = (self.group.order() - 1) / (p - 1);
        if classes > budget {
            return Answer::Unknown;
        }
        for idx in 1..self.group.order() {
            let w = kg::exponents(idx, self.p(), r);
            // one representative per line: first nonzero coordinate equal to 1
            if w.iter().find(|&&e| e != 0) != Some(&1) {
                continue;
            }
            if self.group_element(&w.iter().map(|&e| e as u32).collect::<Vec<_>>()).is_identity() {
                return Answer::No;
            }
        }
        Answer::Yes
    }

    /// Submodule spanned by a stable subspace, with the induced action.
    pub fn submodule(&self, s: &Subspace) -> Module {
        let gens = self.gens.iter().map(|g| s.induced(g)).collect();
        Module::new_unchecked(self.group, s.dim(), gens)
    }

    /// Quotient by a stable subspace, on the non-pivot coordinates.
    pub fn quotient(&self, s: &Subspace) -> Module {
        let gens = self.gens.iter().map(|g| s.quotient_action(g)).collect();
        Module::new_unchecked(self.group, self.dim - s.dim(), gens)
    }

    /// Whether the subspace is stable under every generator.
    pub fn is_stable(&self, s: &Subspace) -> bool {
        self.gens
            .iter()
            .all(|g| s.rows().iter().all(|v| s.contains(&g.mul_vec(v))))
    }

    /// Conjugate `S^{-1} X S` of every generator (change of basis by the columns of `S`).
    pub fn change_basis(&self, s: &FpMatrix) -> Option<Module> {
        let inv = s.inverse()?;
        let gens = self.gens.iter().map(|g| inv.mul(g).mul(s)).collect();
        Some(Module::new_unchecked(self.group, self.dim, gens))
    }
}
