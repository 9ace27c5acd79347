//! Reproducing kernels of the Laguerre, Hermite and Legendre systems, the Laguerre Fock space,
//! truncated Toeplitz calculus, the squeeze operator and Berezin-transform asymptotics.

pub mod berezin;
pub mod convergence;
pub mod error;
pub mod fock;
pub mod kernels;
pub mod quadrature;
pub mod report;
pub mod specfun;
pub mod squeeze;
pub mod suites;
pub mod toeplitz;

pub use error::{Error, Result};
