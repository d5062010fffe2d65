//! The truncated polynomial algebra `kG = F_p[x_1..x_r]/(x_i^p)` in its monomial basis.

use crate::linalg::{Fp, FpMatrix};

use super::{GroupSpec, Module};

/// Exponent vector of monomial index `idx`.
pub fn exponents(idx: usize, p: u32, r: usize) -> Vec<usize> {
    let p = p as usize;
    let mut a = Vec::with_capacity(r);
    let mut x = idx;
    for _ in 0..r {
        a.push(x % p);
        x /= p;
    }
    a
}

pub fn index(a: &[usize], p: u32) -> usize {
    a.iter().rev().fold(0, |acc, &e| acc * p as usize + e)
}

#[derive(Clone, Debug)]
pub struct GroupAlgebra {
    f: Fp,
    r: usize,
    q: usize,
    exps: Vec<Vec<usize>>,
}

impl GroupAlgebra {
    pub fn new(g: GroupSpec) -> Self {
        let q = g.order();
        GroupAlgebra {
            f: Fp::new_unchecked(g.p()),
            r: g.rank(),
            q,
            exps: (0..q).map(|i| exponents(i, g.p(), g.rank())).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.q
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn p(&self) -> u32 {
        self.f.p()
    }

    pub fn exps(&self, idx: usize) -> &[usize] {
        &self.exps[idx]
    }

    /// Total degree of a monomial.
    pub fn degree(&self, idx: usize) -> usize {
        self.exps[idx].iter().sum()
    }

    /// Index of `x^{(p-1,...,p-1)}`.
    pub fn top(&self) -> usize {
        self.q - 1
    }

    /// Index of `x^{top - a}`.
    pub fn complement(&self, idx: usize) -> usize {
        self.q - 1 - idx
    }

    /// Index of `x_i * x^a`, or `None` when it vanishes.
    pub fn shift(&self, idx: usize, i: usize) -> Option<usize> {
        let p = self.f.p() as usize;
        (self.exps[idx][i] + 1 < p).then(|| idx + p.pow(i as u32))
    }

    /// Index of `x^a / x_i`, or `None` when `a_i = 0`.
    pub fn unshift(&self, idx: usize, i: usize) -> Option<usize> {
        let p = self.f.p() as usize;
        (self.exps[idx][i] > 0).then(|| idx - p.pow(i as u32))
    }

    /// Index of `x^{a+b}`, or `None` when some exponent reaches p.
    pub fn mul_monomials(&self, a: usize, b: usize) -> Option<usize> {
        let p = self.f.p() as usize;
        let (ea, eb) = (&self.exps[a], &self.exps[b]);
        if ea.iter().zip(eb).any(|(x, y)| x + y >= p) {
            return None;
        }
        Some(a + b)
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.q];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                if let Some(k) = self.mul_monomials(i, j) {
                    out[k] = self.f.add(out[k], self.f.mul(ai, bj));
                }
            }
        }
        out
    }

    /// Monomials in an order where every `x^a` comes after some `x^{a - e_i}`,
    /// paired with that predecessor and the generator used.
    pub fn build_order(&self) -> Vec<(usize, Option<(usize, usize)>)> {
        let mut order: Vec<usize> = (0..self.q).collect();
        order.sort_by_key(|&i| (self.degree(i), i));
        order
            .into_iter()
            .map(|idx| {
                let prev = (0..self.r).find_map(|i| self.unshift(idx, i).map(|pi| (pi, i)));
                (idx, prev)
            })
            .collect()
    }

    /// All `x^a v`, indexed by monomial.
    pub fn orbit(&self, xs: &[FpMatrix], v: &[u32]) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> = vec![Vec::new(); self.q];
        for (idx, prev) in self.build_order() {
            out[idx] = match prev {
                None => v.to_vec(),
                Some((pi, i)) => xs[i].mul_vec(&out[pi]),
            };
        }
        out
    }

    /// All row vectors `w x^a`, indexed by monomial.
    pub fn orbit_rows(&self, xs: &[FpMatrix], w: &[u32]) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> = vec![Vec::new(); self.q];
        for (idx, prev) in self.build_order() {
            out[idx] = match prev {
                None => w.to_vec(),
                Some((pi, i)) => xs[i].vec_mul(&out[pi]),
            };
        }
        out
    }

    /// Matrices `x^a` acting on a module, indexed by monomial.
    pub fn monomial_matrices(&self, m: &Module) -> Vec<FpMatrix> {
        let xs = m.nilpotents();
        let mut out: Vec<FpMatrix> = vec![FpMatrix::zeros(m.p(), 0, 0); self.q];
        for (idx, prev) in self.build_order() {
            out[idx] = match prev {
                None => FpMatrix::identity(m.p(), m.dim()),
                Some((pi, i)) => xs[i].mul(&out[pi]),
            };
        }
        out
    }

    /// Action of an algebra element given precomputed monomial matrices.
    pub fn act(&self, mono: &[FpMatrix], elem: &[u32]) -> FpMatrix {
        let n = mono[0].rows();
        let mut acc = FpMatrix::zeros(self.f.p(), n, n);
        for (a, &c) in elem.iter().enumerate() {
            if c != 0 {
                acc.add_scaled_assign(c, &mono[a]);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_indexing() {
        let g = GroupSpec::new(3, 2).unwrap();
        let a = GroupAlgebra::new(g);
        assert_eq!(exponents(5, 3, 2), vec![2, 1]);
        assert_eq!(index(&[2, 1], 3), 5);
        assert_eq!(a.shift(5, 0), None);
        assert_eq!(a.shift(5, 1), Some(8));
        assert_eq!(a.complement(0), 8);
        assert_eq!(a.mul_monomials(1, 1), Some(2));
        assert_eq!(a.mul_monomials(2, 1), None);
    }

    #[test]
    fn orbit_matches_monomial_matrices() {
        let g = GroupSpec::new(3, 2).unwrap();
        let a = GroupAlgebra::new(g);
        let m = Module::free_module(g, 1);
        let mono = a.monomial_matrices(&m);
        let orb = a.orbit(&m.nilpotents(), &[1, 0, 0, 0, 0, 0, 0, 0, 0]);
        for idx in 0..9 {
            assert_eq!(mono[idx].column(0), orb[idx]);
        }
        // the top monomial is the norm element, of rank one on the regular module
        assert_eq!(mono[a.top()].rank(), 1);
    }
}
