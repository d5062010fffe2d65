use super::fp::{Fp, FpMatrix};

/// Incrementally built, fully reduced row-echelon basis of a subspace of GF(p)^n.
#[derive(Clone, Debug)]
pub struct Echelon {
    f: Fp,
    n: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(p: u32, n: usize) -> Self {
        Echelon {
            f: Fp::new_unchecked(p),
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors<'a>(p: u32, n: usize, vs: impl IntoIterator<Item = &'a Vec<u32>>) -> Self {
        let mut e = Self::new(p, n);
        for v in vs {
            e.insert(v.clone());
        }
        e
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

    /// Reduces `v` in place against the basis and returns the coefficients
    /// used, so that `v_original = Σ coeff[i] * rows[i] + v_reduced`.
    pub fn reduce(&self, v: &mut [u32]) -> Vec<u32> {
        let mut coeffs = vec![0; self.rows.len()];
        for (i, (row, &pc)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let a = v[pc];
            if a != 0 {
                coeffs[i] = a;
                self.f.axpy(v, self.f.neg(a), row);
            }
        }
        coeffs
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns false when it was already contained.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        self.reduce(&mut v);
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.f.inv(v[pc]);
        self.f.scale(&mut v, inv);
        for row in self.rows.iter_mut() {
            let a = row[pc];
            if a != 0 {
                self.f.axpy(row, self.f.neg(a), &v);
            }
        }
        self.rows.push(v);
        self.pivots.push(pc);
        true
    }

    /// Canonical basis: rows sorted by pivot column (this is the RREF of the span).
    pub fn canonical(&self) -> (Vec<Vec<u32>>, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        (
            order.iter().map(|&i| self.rows[i].clone()).collect(),
            order.iter().map(|&i| self.pivots[i]).collect(),
        )
    }

    /// Standard basis indices completing this subspace to the whole space.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_p = vec![false; self.n];
        for &c in &self.pivots {
            is_p[c] = true;
        }
        (0..self.n).filter(|&c| !is_p[c]).collect()
    }
}

/// RREF basis (rows) and pivots of the column space of `m`.
pub fn column_space(m: &FpMatrix) -> (Vec<Vec<u32>>, Vec<usize>) {
    let (r, piv) = m.transpose().rref();
    ((0..piv.len()).map(|i| r.row(i).to_vec()).collect(), piv)
}

/// RREF basis (rows) and pivots of the span of the given vectors.
pub fn span(p: u32, n: usize, vs: &[Vec<u32>]) -> (Vec<Vec<u32>>, Vec<usize>) {
    if vs.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let (r, piv) = FpMatrix::from_row_vecs(p, n, vs).rref();
    ((0..piv.len()).map(|i| r.row(i).to_vec()).collect(), piv)
}
