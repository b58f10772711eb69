//! Angular and skew-angular distances in finite-dimensional real normed
//! spaces, the triangle-inequality refinements built on them, and a
//! counterexample search that tells inner-product norms apart from the rest.

pub mod cli;
pub mod detector;
pub mod error;
pub mod functionals;
pub mod norm;

pub use error::{Error, Result};
