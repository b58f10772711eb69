//! Vectors, norm descriptors, norm evaluation and seeded sampling.

mod parse;
mod sample;
mod spec;
mod vector;

pub use parse::{parse_gram_matrix, parse_norm_spec, parse_vector, read_gram_file};
pub use sample::{sample_vector, RadiusRange, RngSeed};
pub use spec::{norm, validate_spec, Norm, NormSpec, SYMMETRY_RTOL};
pub use vector::Vector;

/// Norms at or below this are treated as zero wherever a formula divides by them.
pub const NEAR_ZERO_NORM: f64 = 1e-150;
