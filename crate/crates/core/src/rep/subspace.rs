use crate::linalg::echelon;
use crate::linalg::{Fp, FpMatrix};

/// A subspace of GF(p)^n held as its RREF row basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    p: u32,
    n: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u32, n: usize) -> Self {
        Subspace {
            p,
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn whole(p: u32, n: usize) -> Self {
        Self::from_columns(&FpMatrix::identity(p, n))
    }

    pub fn span(p: u32, n: usize, vs: &[Vec<u32>]) -> Self {
        let (rows, pivots) = echelon::span(p, n, vs);
        Subspace { p, n, rows, pivots }
    }

    pub fn from_columns(m: &FpMatrix) -> Self {
        let (rows, pivots) = echelon::column_space(m);
        Subspace {
            p: m.p(),
            n: m.rows(),
            rows,
            pivots,
        }
    }

    /// Span of the columns of several matrices with the same row count.
    pub fn sum_of_images(p: u32, n: usize, ms: &[FpMatrix]) -> Self {
        if ms.is_empty() || n == 0 {
            return Self::zero(p, n);
        }
        let mut stacked = ms[0].transpose();
        for m in &ms[1..] {
            stacked = stacked.vstack(&m.transpose());
        }
        let piv = stacked.rref_in_place();
        let rows = (0..piv.len()).map(|i| stacked.row(i).to_vec()).collect();
        Subspace { p, n, rows, pivots: piv }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the columns of an `n x dim` matrix.
    pub fn basis_matrix(&self) -> FpMatrix {
        FpMatrix::from_columns(self.p, self.n, &self.rows)
    }

    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_p = vec![false; self.n];
        for &c in &self.pivots {
            is_p[c] = true;
        }
        (0..self.n).filter(|&c| !is_p[c]).collect()
    }

    /// Coordinates of `v` in the RREF basis, assuming `v` lies in the span.
    pub fn coords(&self, v: &[u32]) -> Vec<u32> {
        self.pivots.iter().map(|&c| v[c]).collect()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let f = Fp::new_unchecked(self.p);
        let mut w = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let a = w[c];
            if a != 0 {
                f.axpy(&mut w, f.neg(a), row);
            }
        }
        w.iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, o: &Subspace) -> bool {
        o.rows.iter().all(|v| self.contains(v))
    }

    pub fn join(&self, o: &Subspace) -> Subspace {
        let mut vs = self.rows.clone();
        vs.extend(o.rows.iter().cloned());
        Subspace::span(self.p, self.n, &vs)
    }

    /// Matrix of `g` restricted to the subspace, in the RREF basis.
    pub fn induced(&self, g: &FpMatrix) -> FpMatrix {
        let img = g.mul(&self.basis_matrix());
        img.select_rows(&self.pivots)
    }

    /// Matrix `Q` (`(n - dim) x n`) of the quotient map onto the non-pivot coordinates.
    pub fn quotient_map(&self) -> FpMatrix {
        let f = Fp::new_unchecked(self.p);
        let np = self.non_pivots();
        let mut q = FpMatrix::zeros(self.p, np.len(), self.n);
        for (m, &c) in np.iter().enumerate() {
            q.set(m, c, 1 % self.p);
            for (l, &pc) in self.pivots.iter().enumerate() {
                let r = self.rows[l][c];
                if r != 0 {
                    q.set(m, pc, f.neg(r));
                }
            }
        }
        q
    }

    /// Matrix of `g` on the quotient by this subspace.
    pub fn quotient_action(&self, g: &FpMatrix) -> FpMatrix {
        let np = self.non_pivots();
        let q = self.quotient_map();
        q.mul(&g.select_cols(&np))
    }
}
