//! Exact truncated q-series over Q(ζ₅) and verification of level-five theta identities.

pub mod arithfn;
pub mod error;
pub mod exact;
pub mod identities;
pub mod numeric;
pub mod parallel;
pub mod qseries;
pub mod theta;

pub use error::{Error, Result};
pub use exact::{BigRat, CycloQ5, Phase};
pub use qseries::FracSeries;
pub use theta::ThetaChar;
