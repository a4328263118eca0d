//! Semi-pointed partition posets and their invariants.
//!
//! Everything is exact: integers are [`num_bigint::BigInt`] and rationals
//! are [`Rational`].

pub mod characters;
pub mod charpoly;
pub mod cycle_index;
pub mod egf;
pub mod error;
pub mod homology;
pub mod hopf;
pub mod invariants;
pub mod linalg;
pub mod partition;
pub mod poly;
pub mod poset;
pub mod series;
pub mod spp_poset;
pub mod verify;

pub use error::{Error, Result};
pub use partition::{enumerate_spp, leq, Block, GroundSet, SemiPointedPartition};
pub use poly::Poly;
pub use poset::FinitePoset;
pub use spp_poset::{build_poset, interval_factorization, IntervalClass, PosetVariant, SppPoset};

pub type Rational = num_rational::BigRational;
