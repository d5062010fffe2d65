//! Radical and socle series, projective covers and syzygies.

use crate::linalg::FpMatrix;

use super::{core, GroupAlgebra, Module, Subspace};

/// `rad M = Σ_i im(x_i)`.
pub fn radical(m: &Module) -> Subspace {
    Subspace::sum_of_images(m.p(), m.dim(), &m.nilpotents())
}

/// Dimensions of the layers `rad^k M / rad^{k+1} M`, top first.
pub fn radical_series(m: &Module) -> Vec<usize> {
    let xs = m.nilpotents();
    let mut layers = Vec::new();
    let mut cur = Subspace::whole(m.p(), m.dim());
    while cur.dim() > 0 {
        let b = cur.basis_matrix();
        let imgs: Vec<FpMatrix> = xs.iter().map(|x| x.mul(&b)).collect();
        let next = Subspace::sum_of_images(m.p(), m.dim(), &imgs);
        layers.push(cur.dim() - next.dim());
        cur = next;
    }
    layers
}

/// `soc M = ∩_i ker(x_i)`.
pub fn socle(m: &Module) -> Subspace {
    preimage_of(m, &Subspace::zero(m.p(), m.dim()))
}

/// `{v : x_i v ∈ s for all i}`.
fn preimage_of(m: &Module, s: &Subspace) -> Subspace {
    let n = m.dim();
    if n == 0 {
        return Subspace::zero(m.p(), 0);
    }
    let q = s.quotient_map();
    let mut stacked: Option<FpMatrix> = None;
    for x in m.nilpotents() {
        let qx = q.mul(&x);
        stacked = Some(match stacked {
            None => qx,
            Some(acc) => acc.vstack(&qx),
        });
    }
    let stacked = stacked.expect("rank >= 1");
    if stacked.rows() == 0 {
        return Subspace::whole(m.p(), n);
    }
    Subspace::from_columns(&stacked.kernel_matrix().0)
}

/// Dimensions of the layers `soc^{k+1} M / soc^k M`, bottom first.
pub fn socle_series(m: &Module) -> Vec<usize> {
    let mut layers = Vec::new();
    let mut cur = Subspace::zero(m.p(), m.dim());
    while cur.dim() < m.dim() {
        let next = preimage_of(m, &cur);
        layers.push(next.dim() - cur.dim());
        cur = next;
    }
    layers
}

/// Standard basis vectors completing `rad M` to `M`; they generate `M` minimally.
pub fn top_lifts(m: &Module) -> Vec<Vec<u32>> {
    radical(m)
        .non_pivots()
        .into_iter()
        .map(|c| {
            let mut e = vec![0; m.dim()];
            e[c] = 1;
            e
        })
        .collect()
}

/// `Ω M`: kernel of the projective cover of the core of `m`.
pub fn omega(m: &Module) -> Module {
    let c = core(m).core;
    if c.dim() == 0 {
        return Module::zero(m.group());
    }
    let ka = GroupAlgebra::new(m.group());
    let q = ka.dim();
    let xs = c.nilpotents();
    let tops = top_lifts(&c);
    let mut cols = Vec::with_capacity(tops.len() * q);
    for v in &tops {
        cols.extend(ka.orbit(&xs, v));
    }
    let phi = FpMatrix::from_columns(m.p(), c.dim(), &cols);
    let (k, free) = phi.kernel_matrix();
    let kd = free.len();
    let ys = (0..m.group().rank())
        .map(|i| {
            let mut y = FpMatrix::zeros(m.p(), kd, kd);
            for (l, &fl) in free.iter().enumerate() {
                let (j, b) = (fl / q, fl % q);
                if let Some(pb) = ka.unshift(b, i) {
                    y.row_mut(l).copy_from_slice(k.row(j * q + pb));
                }
            }
            y
        })
        .collect();
    Module::from_nilpotents(m.group(), ys)
}

/// `Ω^{-1} M = (Ω M*)*`.
pub fn omega_inv(m: &Module) -> Module {
    omega(&m.dual()).dual()
}
