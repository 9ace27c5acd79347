//! Classifiers for coefficient sequences, polynomial envelopes and Legendre non-extension tools.

mod classify;
mod envelope;
mod legendre;

pub use classify::*;
pub use envelope::{
    hermite_envelope, laguerre_envelope, legendre_bound, legendre_growth, Envelope, CRAMER_CONSTANT,
    ENVELOPE_FIT_END, ENVELOPE_FIT_START, ENVELOPE_SAFETY,
};
pub use legendre::*;
