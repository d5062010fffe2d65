//! Modular representations of elementary abelian p-groups and the growth of
//! the non-projective parts of their tensor powers.

pub mod error;
pub mod linalg;
pub mod rep;
pub mod decomp;
pub mod engine;
pub mod gallery;

pub use error::{Error, Result};
