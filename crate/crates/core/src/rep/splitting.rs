//! Splitting off the free part of a module.

use crate::linalg::FpMatrix;

use super::{GroupAlgebra, Module, Subspace};

/// `N = Π_i x_i^{p-1}`, the action of the norm element.
pub fn norm_matrix(m: &Module) -> FpMatrix {
    let mut acc = FpMatrix::identity(m.p(), m.dim());
    for x in m.nilpotents() {
        acc = x.pow(m.p() as u64 - 1).mul(&acc);
    }
    acc
}

/// Number of free summands of `m`.
pub fn norm_rank(m: &Module) -> usize {
    if m.dim() == 0 {
        return 0;
    }
    norm_matrix(m).rank()
}

/// `m = core ⊕ free^{free_rank}`, with the basis realizing the splitting.
#[derive(Clone, Debug)]
pub struct CoreResult {
    pub core: Module,
    pub free_rank: usize,
    /// Columns: the free part (generator-major, monomial-minor), then the core basis.
    witness: FpMatrix,
}

impl CoreResult {
    pub fn witness(&self) -> &FpMatrix {
        &self.witness
    }

    /// Checks that the witness basis is invertible and block-diagonalizes
    /// every generator of `m`, with `core`'s generators on the core block.
    pub fn verify(&self, m: &Module) -> bool {
        let n = m.dim();
        let f = n - self.core.dim();
        let Some(inv) = self.witness.inverse() else {
            return n == 0;
        };
        for (g, cg) in m.gens().iter().zip(self.core.gens()) {
            let z = inv.mul(g).mul(&self.witness);
            for i in 0..n {
                for j in 0..n {
                    let v = z.get(i, j);
                    let ok = match (i < f, j < f) {
                        (true, true) => true,
                        (false, false) => v == cg.get(i - f, j - f),
                        _ => v == 0,
                    };
                    if !ok {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Strips the free summands off `m`.
///
/// Picks `m_j = e_c` for the pivot columns `c` of the norm matrix, so the
/// `x^a m_j` span a free submodule `F`, then builds an equivariant projection
/// onto `F` from the functionals dual to the socle vectors `x^top m_j`.
pub fn core(m: &Module) -> CoreResult {
    let n = m.dim();
    let p = m.p();
    let nm = norm_matrix(m);
    let pivots = if n == 0 { Vec::new() } else { nm.rref().1 };
    if pivots.is_empty() {
        return CoreResult {
            core: m.clone(),
            free_rank: 0,
            witness: FpMatrix::identity(p, n),
        };
    }
    let ka = GroupAlgebra::new(m.group());
    let q = ka.dim();
    let xs = m.nilpotents();
    let mut free_vecs: Vec<Vec<u32>> = Vec::with_capacity(pivots.len() * q);
    for &c in &pivots {
        let mut e = vec![0; n];
        e[c] = 1;
        free_vecs.extend(ka.orbit(&xs, &e));
    }
    let free_span = Subspace::span(p, n, &free_vecs);
    let comp = free_span.non_pivots();

    let mut basis_cols = free_vecs.clone();
    for &c in &comp {
        let mut e = vec![0; n];
        e[c] = 1;
        basis_cols.push(e);
    }
    let b = FpMatrix::from_columns(p, n, &basis_cols);
    let s = pivots.len();
    let mut rhs = FpMatrix::zeros(p, n, s);
    for j in 0..s {
        rhs.set(j * q + ka.top(), j, 1);
    }
    let lam = b
        .transpose()
        .solve(&rhs)
        .expect("free vectors and complement form a basis");

    let f = m.gens()[0].field();
    // w[j][a] = λ_j x^a
    let w: Vec<Vec<Vec<u32>>> = (0..s).map(|j| ka.orbit_rows(&xs, &lam.column(j))).collect();
    let mut kernel_vecs = Vec::with_capacity(comp.len());
    for &c in &comp {
        let mut v = vec![0; n];
        v[c] = 1;
        for (j, wj) in w.iter().enumerate() {
            for a in 0..q {
                let coeff = wj[ka.complement(a)][c];
                if coeff != 0 {
                    f.axpy(&mut v, f.neg(coeff), &free_vecs[j * q + a]);
                }
            }
        }
        kernel_vecs.push(v);
    }
    let core_space = Subspace::span(p, n, &kernel_vecs);
    let core = m.submodule(&core_space);
    let witness = FpMatrix::from_columns(p, n, &free_vecs).hstack(&core_space.basis_matrix());
    CoreResult {
        core,
        free_rank: s,
        witness,
    }
}
