//! p-adic Weierstrass zeta and sigma functions of ordinary (possibly nodal)
//! short Weierstrass curves, with the identities they satisfy checked at
//! finite p-adic and t-adic precision.

pub mod error;
pub mod scalar;
pub mod series;
pub mod poly;
pub mod curve;
pub mod sigma;
pub mod verify;
pub mod pipeline;
pub mod quotient;

pub use error::{Result, SigmaError};
