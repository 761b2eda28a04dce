//! Exact multiplicative orders, `x -> b x mod 1` orbits, effective density
//! bounds for `S`-integers, and enumeration of the rationals inside
//! generalized Cantor sets.

pub mod bounds;
pub mod cantor;
pub mod cli;
pub mod error;
pub mod fraction;
pub mod numtheory;
pub mod orbit;
pub mod orders;
pub mod verify;

pub use cantor::DigitSet;
pub use error::{Error, Result};
pub use fraction::ReducedFraction;
pub use orders::OrderProfile;
