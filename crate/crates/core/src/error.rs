use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series did not converge within {max_terms} terms (a = {a}, c = {c}, z = {z})")]
    NonConvergence {
        a: f64,
        c: f64,
        z: f64,
        max_terms: usize,
    },

    #[error(
        "q0 = {q0} lies outside the closed-form range [0, {max}]; use the finite-difference oracle"
    )]
    UnsupportedRange { q0: f64, max: f64 },

    #[error("root for level {n} not found at q0 = {q0}: {reason}")]
    RootNotFound { n: usize, q0: f64, reason: String },

    #[error("q = {q} lies behind the wall at -q0 = {wall}")]
    DomainError { q: f64, wall: f64 },

    #[error("overlap matrix is ill-conditioned (condition number {condition:.3e} > {limit:.1e})")]
    IllConditioned { condition: f64, limit: f64 },

    #[error("finite-difference grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("H_{n} has no zero with index {index}")]
    InvalidZeroIndex { n: usize, index: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
