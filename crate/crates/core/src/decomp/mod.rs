//! Homomorphism spaces, decomposition into indecomposables, isomorphism
//! testing and syzygy-orbit classification.
//!
//! Indecomposability is decided by random search: a piece is reported
//! indecomposable after a fixed number of random endomorphisms produced no
//! splitting idempotent, and that number travels with the result.

mod hom;
mod iso;
mod omega_class;
mod split;

use serde::{Deserialize, Serialize};

pub use hom::{end_basis, hom_basis, hom_dim, HomSpace};
pub use iso::{canonical_signature, cyclic_subgroup_words, is_isomorphic, iso_search, AdditiveInvariants, Signature};
pub use omega_class::{OmegaClass, OmegaClassRegistry, OmegaMatch};
pub use split::{
    decompose, decompose_with_known, find_splitting_idempotent, split_indecomposables, Catalog, KnownDecomposition,
    Piece, Summand, SummandMultiset,
};

/// Randomized search settings shared by the budgeted operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Random endomorphisms tried before a module is declared indecomposable,
    /// and random homomorphisms tried when looking for an isomorphism.
    pub trials: usize,
    /// Random attempts at splitting off one copy of a known summand.
    pub peel_trials: usize,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            trials: 64,
            peel_trials: 16,
            seed: 0,
        }
    }
}

impl SearchBudget {
    pub fn with_seed(seed: u64) -> Self {
        SearchBudget {
            seed,
            ..Self::default()
        }
    }
}
