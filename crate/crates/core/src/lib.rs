//! Exact computations in hopfological algebra.

pub mod bmod;
pub mod comod;
pub mod corpus;
pub mod derived;
pub mod error;
pub mod exactlin;
pub mod hopf;
pub mod report;
pub mod scalar;
pub mod stable;

#[cfg(test)]
mod properties;

pub use error::{Error, Result};
pub use exactlin::FieldMatrix;
pub use num_traits::{One, Zero};
pub use scalar::{Fp, Rational, Scalar};

pub type Gf2 = Fp<2>;
pub type Gf3 = Fp<3>;
pub type Gf5 = Fp<5>;
pub type Gf7 = Fp<7>;
