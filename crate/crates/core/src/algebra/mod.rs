//! Exact scalars and matrices over `Q` and `F_p`, plus a packed `F_2` path.

mod bits;
mod matrix;
mod primes;
mod scalar;

pub use bits::BitMatrix;
pub use matrix::{exact_rank, modular_rank, nullspace_basis, rank_and_rref, ExactMatrix};
pub use primes::{is_prime, random_prime};
pub use scalar::{Field, FieldScalar};
pub(crate) use scalar::pow_mod;
