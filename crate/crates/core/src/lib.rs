//! Exact computations around quantum tori `F A`, `F = Q(q_1, ..., q_s)`:
//! Delta-sets of cyclic one-relator modules as rational polyhedral fans,
//! local cones and trailing-coefficient (initial form) fans, and symplectic
//! bases of alternating forms together with the group-theoretic report built
//! on top of them.
//!
//! Everything is computed over `BigInt` / `BigRational`; there is no floating
//! point anywhere in the crate.

pub mod delta;
pub mod error;
pub mod groups;
pub mod lattice;
pub mod polyhedral;
pub mod random;
pub mod seed;
pub mod symplectic;
pub mod torus;
pub mod wire;

pub use delta::{Character, OneRelatorModule};
pub use error::{Error, Result};
pub use lattice::{hnf, Sublattice, Subspace};
pub use polyhedral::{Cone, Fan};
pub use seed::Seed;
pub use symplectic::{AlternatingMapQ, SymplecticBase};
pub use torus::{AlternatingFormZ, CocycleForm, Laurent, QTorusElement};

pub type Int = num_bigint::BigInt;
pub type Rat = num_rational::BigRational;

/// Shorthand for an integral rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}
