pub mod cli;
pub mod error;
pub mod identities;
pub mod oracle;
pub mod physical;
pub mod quadrature;
pub mod specfun;
pub mod spectrum;
pub mod variational;

pub use error::{Error, Result};
