//! Mod-p congruences between elliptic curves over Q: traces of Frobenius,
//! congruence sieving, residual Galois images and symplectic type.

pub mod arith;
pub mod curve;
pub mod error;
pub mod frobenius;
pub mod galois;
pub mod isogeny;
pub mod poly;
pub mod reducible;
pub mod sieve;
pub mod tate;
pub mod twist;

pub use curve::RationalEC;
pub use error::{Error, Result};
