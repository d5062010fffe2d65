//! Exact linear algebra: GF(p) matrices, echelon forms, integer polynomials.

pub mod echelon;
pub mod fp;
pub mod poly;
pub mod recurrence;

pub use echelon::Echelon;
pub use fp::{is_prime, kernel_basis, kron, nilpotent_profile, rank, solve_affine, Fp, FpMatrix, MAX_PRIME};
pub use poly::{charpoly_int, largest_real_root, real_roots, IntMatrix, IntPolynomial};
pub use recurrence::{berlekamp_massey_rational, RationalRecurrence};
