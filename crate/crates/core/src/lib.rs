//! Generalized and unraveling Reed-Solomon codes over GF(2^b): construction,
//! encoding, the family of URS decoders, and reliability analysis.
//!
//! Blocks are slices of [`gf::Gf`] in column-major order: device column i
//! occupies positions i·ℓ..(i+1)·ℓ.

pub mod decoders;
pub mod error;
pub mod gf;
pub mod grs;
pub mod hex;
pub mod presets;
pub mod reliability;
pub mod urs;

pub use error::{Error, Result};

/// Floating-point probabilities.
pub type Prob = f64;

/// Exact rational probabilities.
pub type ExactProb = num_rational::BigRational;
