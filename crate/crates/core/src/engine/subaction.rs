//! Lower bounds from a family of indecomposables closed up to leftovers: if
//! `M ⊗ S_i ≅ ⊕_j a_ij S_j ⊕ Y_i` then the spectral radius of `(a_ij)` is at
//! most `npj(M)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::decomp::{decompose, decompose_with_known, Catalog, SearchBudget};
use crate::linalg::{charpoly_int, largest_real_root, IntMatrix, IntPolynomial};
use crate::rep::Module;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubactionConfig {
    /// Rounds of tensoring with `M`.
    pub depth: usize,
    /// Classes above this dimension are kept but not expanded.
    pub dim_cap: usize,
    pub budget: SearchBudget,
}

impl Default for SubactionConfig {
    fn default() -> Self {
        SubactionConfig {
            depth: 2,
            dim_cap: 2000,
            budget: SearchBudget::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubactionBound {
    pub value: f64,
    pub matrix: IntMatrix,
    pub charpoly: IntPolynomial,
    pub dims: Vec<usize>,
    /// Whether row `i` was computed; unexpanded rows are zero.
    pub expanded: Vec<bool>,
    pub undecided: usize,
}

/// Largest real eigenvalue of a nonnegative integer matrix (0 when empty).
pub fn matrix_lower_bound(a: &IntMatrix) -> (f64, IntPolynomial) {
    let cp = charpoly_int(a);
    let v = largest_real_root(&cp, 1e-13).unwrap_or(0.0).max(0.0);
    (v, cp)
}

pub fn subaction_lower_bound(m: &Module, seeds: &[Module], cfg: &SubactionConfig) -> SubactionBound {
    let mut catalog = Catalog::new(cfg.budget);
    for s in seeds {
        for piece in decompose(s, &cfg.budget).summands {
            catalog.find_or_insert(&piece.module);
        }
    }
    let mut rows: Vec<Option<Vec<u64>>> = Vec::new();
    let mut frontier: Vec<usize> = (0..catalog.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.budget.seed);
    for _ in 0..cfg.depth {
        let mut next = Vec::new();
        for i in frontier {
            rows.resize(catalog.len(), None);
            let s = catalog.modules[i].clone();
            if s.dim() * m.dim() > cfg.dim_cap {
                continue;
            }
            let x = s.tensor(m).expect("same group");
            let order: Vec<usize> = (0..catalog.len()).collect();
            let kd = decompose_with_known(&x, &mut catalog, &order, &mut rng);
            let mut row = kd.known.iter().map(|&c| c as u64).collect::<Vec<_>>();
            for piece in kd.others {
                let (j, new) = catalog.find_or_insert(&piece.module);
                if new {
                    next.push(j);
                }
                row.resize(catalog.len(), 0);
                row[j] += 1;
            }
            rows.resize(catalog.len(), None);
            rows[i] = Some(row);
        }
        frontier = next;
    }
    let d = catalog.len();
    rows.resize(d, None);
    let mut a = IntMatrix::zeros(d);
    for (i, row) in rows.iter().enumerate() {
        if let Some(row) = row {
            for (j, &c) in row.iter().enumerate() {
                a.set(i, j, c.into());
            }
        }
    }
    let (value, charpoly) = matrix_lower_bound(&a);
    SubactionBound {
        value,
        matrix: a,
        charpoly,
        dims: catalog.modules.iter().map(Module::dim).collect(),
        expanded: rows.iter().map(Option::is_some).collect(),
        undecided: catalog.undecided,
    }
}
