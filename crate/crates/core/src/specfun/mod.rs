//! Special functions needed by the closed-form solution of the walled
//! oscillator: reciprocal gamma, the error function, Kummer's confluent
//! hypergeometric series, the parabolic cylinder (Weber) function
//! `D_m(z)`, Hermite polynomials and half-line Gaussian moments.

mod gamma;
mod kummer;
mod moments;
mod weber;

pub use gamma::{erf, recip_gamma};
pub use kummer::{kummer_m, SeriesControl};
pub use moments::{half_gaussian_moment, half_gaussian_moments, hermite};
pub use weber::{
    weber_d, weber_d_prime, weber_d_prime_series, weber_d_series, WeberTable, SERIES_MAX_Z,
};
