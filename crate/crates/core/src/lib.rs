//! Matrix semigroups over commutative bipotent semirings, computed exactly.

pub mod constructions;
pub mod error;
pub mod matrix;
pub mod permutability;
pub mod quotients;
pub mod rational;
pub mod semiring;
pub mod suite;
pub mod trunc_iso;

pub use error::{Error, Result};
pub use rational::Rational;
pub use semiring::{Scalar, Semiring};
