//! Spaces of module homomorphisms.
//!
//! A homomorphism `M -> N` is fixed by the images `u_i` of a minimal generating
//! set `v_i` of `M`. Generators are added one at a time: the elements `κ` of kG
//! with `κ v_i` inside the span of the earlier generators give linear conditions
//! `κ u_i = Σ_j β_j u_j` on the new image, and only a minimal generating set of
//! that ideal of conditions is imposed.

use std::cell::OnceCell;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Fp, FpMatrix};
use crate::rep::{socle, top_lifts, GroupAlgebra, Module};

/// A basis of `Hom(M, N)`, kept as images of spin vectors and turned into
/// matrices on demand.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: Module,
    target: Module,
    coords: Coords,
    basis: OnceCell<Vec<FpMatrix>>,
}

/// Basis elements of a spun hom space `A -> B`: row `k` of `img` holds the
/// images of the spin vectors, and the matrix is `[img_k] · s_inv`. When
/// `transposed`, the actual maps are the transposes (`A = N*`, `B = M*`).
#[derive(Clone, Debug)]
struct Coords {
    img: Vec<Vec<u32>>,
    s_inv: FpMatrix,
    rows: usize,
    transposed: bool,
}

impl Coords {
    fn materialize(&self, row: &[u32]) -> FpMatrix {
        let p = self.s_inv.p();
        let cols: Vec<Vec<u32>> = row.chunks(self.rows).map(|c| c.to_vec()).collect();
        let phi = FpMatrix::from_columns(p, self.rows, &cols).mul(&self.s_inv);
        if self.transposed {
            phi.transpose()
        } else {
            phi
        }
    }
}

impl HomSpace {
    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn basis(&self) -> &[FpMatrix] {
        self.basis
            .get_or_init(|| self.coords.img.iter().map(|row| self.coords.materialize(row)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.img.len()
    }

    pub fn combination(&self, coeffs: &[u32]) -> FpMatrix {
        if self.dim() == 0 {
            return FpMatrix::zeros(self.target.p(), self.target.dim(), self.source.dim());
        }
        let f = Fp::new_unchecked(self.target.p());
        let mut acc = vec![0; self.coords.img[0].len()];
        for (&c, row) in coeffs.iter().zip(&self.coords.img) {
            f.axpy(&mut acc, c, row);
        }
        self.coords.materialize(&acc)
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> FpMatrix {
        let p = self.target.p();
        let coeffs: Vec<u32> = (0..self.dim()).map(|_| rng.gen_range(0..p)).collect();
        self.combination(&coeffs)
    }

    /// Whether `phi` intertwines the two actions.
    pub fn is_homomorphism(source: &Module, target: &Module, phi: &FpMatrix) -> bool {
        source
            .gens()
            .iter()
            .zip(target.gens())
            .all(|(a, b)| phi.mul(a) == b.mul(phi))
    }
}

/// Basis of `Hom_kG(m, n)`.
pub fn hom_basis(m: &Module, n: &Module) -> Result<HomSpace> {
    if m.group() != n.group() {
        return Err(Error::GroupMismatch(m.group().to_string(), n.group().to_string()));
    }
    let coords = if m.dim() == 0 || n.dim() == 0 {
        Coords {
            img: Vec::new(),
            s_inv: FpMatrix::zeros(m.p(), 0, 0),
            rows: n.dim(),
            transposed: false,
        }
    } else {
        // Hom(M, N) ≅ Hom(N*, M*) by transposition; spin from the side with
        // fewer generators relative to the target size.
        let direct = top_lifts(m).len() * n.dim();
        let dual = socle(n).dim() * m.dim();
        if dual < direct {
            let (img, s_inv) = spin_hom(&n.dual(), &m.dual());
            Coords {
                img,
                s_inv,
                rows: m.dim(),
                transposed: true,
            }
        } else {
            let (img, s_inv) = spin_hom(m, n);
            Coords {
                img,
                s_inv,
                rows: n.dim(),
                transposed: false,
            }
        }
    };
    Ok(HomSpace {
        source: m.clone(),
        target: n.clone(),
        coords,
        basis: OnceCell::new(),
    })
}

pub fn end_basis(m: &Module) -> HomSpace {
    hom_basis(m, m).expect("same group")
}

pub fn hom_dim(m: &Module, n: &Module) -> Result<usize> {
    Ok(hom_basis(m, n)?.dim())
}

/// Row-echelon basis that remembers each row as a combination of inserted vectors.
struct Tracked {
    f: Fp,
    rows: Vec<Vec<u32>>,
    combos: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    inserted: usize,
    cap: usize,
}

impl Tracked {
    fn new(p: u32, cap: usize) -> Self {
        Tracked {
            f: Fp::new_unchecked(p),
            rows: Vec::new(),
            combos: Vec::new(),
            pivots: Vec::new(),
            inserted: 0,
            cap,
        }
    }

    /// Reduces `w`; returns the residue and `w - residue` as a combination of inserted vectors.
    fn reduce(&self, w: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let f = self.f;
        let mut v = w.to_vec();
        let mut combo = vec![0; self.cap];
        for ((row, cmb), &pc) in self.rows.iter().zip(&self.combos).zip(&self.pivots) {
            let a = v[pc];
            if a != 0 {
                f.axpy(&mut v, f.neg(a), row);
                f.axpy(&mut combo, a, cmb);
            }
        }
        (v, combo)
    }

    /// Inserts the vector whose reduction was `(residue, combo)`; it becomes
    /// inserted vector number `self.inserted`.
    fn insert(&mut self, mut residue: Vec<u32>, combo: Vec<u32>) {
        let f = self.f;
        let pc = residue.iter().position(|&x| x != 0).expect("nonzero residue");
        let inv = f.inv(residue[pc]);
        f.scale(&mut residue, inv);
        // residue = w - combo, with w the new inserted vector
        let mut c: Vec<u32> = combo.iter().map(|&x| f.neg(x)).collect();
        c[self.inserted] = f.add(c[self.inserted], 1);
        f.scale(&mut c, inv);
        self.rows.push(residue);
        self.combos.push(c);
        self.pivots.push(pc);
        self.inserted += 1;
    }
}

struct Relation {
    kappa: Vec<u32>,
    /// `(spin vector s, c_s)` over spin vectors of earlier generators.
    earlier: Vec<(usize, u32)>,
}

fn spin_hom(m: &Module, n: &Module) -> (Vec<Vec<u32>>, FpMatrix) {
    let p = m.p();
    let f = Fp::new_unchecked(p);
    let ka = GroupAlgebra::new(m.group());
    let q = ka.dim();
    let order = ka.build_order();
    let xs_m = m.nilpotents();
    let mono_n = ka.monomial_matrices(n);
    let mono_nt: Vec<FpMatrix> = mono_n.iter().map(|x| x.transpose()).collect();
    let tops = top_lifts(m);
    let dm = m.dim();
    let dn = n.dim();

    let mut tracked = Tracked::new(p, dm);
    let mut spin: Vec<(usize, usize)> = Vec::with_capacity(dm);
    let mut spin_vecs: Vec<Vec<u32>> = Vec::with_capacity(dm);
    // img[k][s*dn..(s+1)*dn] = image of spin vector s under basis hom k
    let mut img: Vec<Vec<u32>> = Vec::new();

    for (i, v) in tops.iter().enumerate() {
        let orbit = ka.orbit(&xs_m, v);
        let spin_before = spin.len();
        let mut relations = Vec::new();
        for &(a, _) in &order {
            let w = &orbit[a];
            let (res, combo) = tracked.reduce(w);
            if res.iter().any(|&x| x != 0) {
                tracked.insert(res, combo);
                spin.push((i, a));
                spin_vecs.push(w.clone());
                continue;
            }
            // x^a v = Σ c_s w_s: split into this generator's orbit and earlier spin vectors
            let mut kappa = vec![0; q];
            kappa[a] = 1;
            let mut earlier = Vec::new();
            for (s, &c) in combo.iter().enumerate().take(spin.len()) {
                if c == 0 {
                    continue;
                }
                if s >= spin_before {
                    let b = spin[s].1;
                    kappa[b] = f.sub(kappa[b], c);
                } else {
                    earlier.push((s, c));
                }
            }
            relations.push(Relation { kappa, earlier });
        }
        let relations = minimal_generators(&ka, relations);

        let d = img.len();
        let cols = dn + d;
        // columns: the new image u first, then the coefficients of the old homs,
        // so that pivots fall on u and most kernel vectors touch one old hom
        let z = if relations.is_empty() {
            FpMatrix::identity(p, cols)
        } else {
            let mut sys = FpMatrix::zeros(p, relations.len() * dn, cols);
            for (ri, rel) in relations.iter().enumerate() {
                let kmat = ka.act(&mono_n, &rel.kappa);
                for r in 0..dn {
                    sys.row_mut(ri * dn + r)[..dn].copy_from_slice(kmat.row(r));
                }
                for (k, row) in img.iter().enumerate() {
                    let mut rhs = vec![0; dn];
                    for &(s, c) in &rel.earlier {
                        f.axpy(&mut rhs, c, &row[s * dn..(s + 1) * dn]);
                    }
                    for (r, &val) in rhs.iter().enumerate() {
                        if val != 0 {
                            sys.set(ri * dn + r, dn + k, f.neg(val));
                        }
                    }
                }
            }
            sys.kernel_matrix().0
        };

        // New images. A kernel vector that is a single old hom plus a new image
        // reuses that hom's row; the rest are formed as combinations.
        let h = z.cols();
        let new_len = spin.len() * dn;
        let mut support: Vec<Vec<(usize, u32)>> = vec![Vec::new(); h];
        for k in 0..d {
            for (l, &c) in z.row(dn + k).iter().enumerate() {
                if c != 0 {
                    support[l].push((k, c));
                }
            }
        }
        let mut taken = vec![false; d];
        let moves: Vec<Option<usize>> = support
            .iter()
            .map(|sup| match sup.as_slice() {
                [(k, 1)] if !taken[*k] => {
                    taken[*k] = true;
                    Some(*k)
                }
                _ => None,
            })
            .collect();
        let mut next: Vec<Vec<u32>> = support
            .iter()
            .zip(&moves)
            .map(|(sup, mv)| {
                if mv.is_some() {
                    return Vec::new();
                }
                let mut out = Vec::with_capacity(dm * dn);
                out.resize(spin_before * dn, 0);
                for &(k, c) in sup {
                    f.axpy(&mut out, c, &img[k]);
                }
                out
            })
            .collect();
        let mut old: Vec<Option<Vec<u32>>> = img.into_iter().map(Some).collect();
        for (l, mv) in moves.iter().enumerate() {
            if let Some(k) = mv {
                next[l] = old[*k].take().expect("moved once");
            }
        }
        let ut = z.select_rows(&(0..dn).collect::<Vec<_>>()).transpose();
        for row in next.iter_mut() {
            row.reserve(new_len.saturating_sub(row.len()));
        }
        for s in spin_before..spin.len() {
            let block = ut.mul(&mono_nt[spin[s].1]);
            for (l, row) in next.iter_mut().enumerate() {
                row.extend_from_slice(block.row(l));
            }
        }
        img = next;
    }
    debug_assert_eq!(spin.len(), dm);

    let s_inv = FpMatrix::from_columns(p, dm, &spin_vecs)
        .inverse()
        .expect("spin vectors form a basis");
    (img, s_inv)
}

/// Keeps relations whose κ are not in `rad(kG)·I + (earlier kept κ)`, where
/// `I` is spanned by all the κ.
fn minimal_generators(ka: &GroupAlgebra, rels: Vec<Relation>) -> Vec<Relation> {
    let q = ka.dim();
    let p = ka.p();
    let f = Fp::new_unchecked(p);
    let mut span = Echelon::new(p, q);
    for rel in &rels {
        for var in 0..ka.rank() {
            let mut shifted = vec![0; q];
            for (a, &c) in rel.kappa.iter().enumerate() {
                if c != 0 {
                    if let Some(b) = ka.shift(a, var) {
                        shifted[b] = f.add(shifted[b], c);
                    }
                }
            }
            span.insert(shifted);
        }
    }
    rels.into_iter()
        .filter(|rel| span.insert(rel.kappa.clone()))
        .collect()
}
