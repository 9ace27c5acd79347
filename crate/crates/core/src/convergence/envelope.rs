use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::specfun::{eval_poly_all_real, hermite_normalized_all, PolyFamily};

/// Multiplier applied to fitted envelope constants.
pub const ENVELOPE_SAFETY: f64 = 2.0;
/// Fitting window for the `n^{−1/4}` envelopes.
pub const ENVELOPE_FIT_START: usize = 50;
pub const ENVELOPE_FIT_END: usize = 200;
/// Cramér's constant: `|H_n(x)| e^{−x²/2} ≤ k √(2ⁿ n!)`.
pub const CRAMER_CONSTANT: f64 = 1.086435;

/// Pointwise bound `|b_n(x)| ≤ bound(n)` for one family at one point.
///
/// Beyond `fit_start` the bound is `min(constant·n^{exponent}, cap)`; before it only `cap` is used.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub constant: f64,
    pub exponent: f64,
    pub fit_start: usize,
    pub cap: f64,
}

impl Envelope {
    pub fn bound(&self, n: usize) -> f64 {
        if n >= self.fit_start && n > 0 {
            (self.constant * (n as f64).powf(self.exponent)).min(self.cap)
        } else {
            self.cap
        }
    }
}

fn fit_quarter_power(values: &[f64], start: usize, end: usize) -> f64 {
    (start..=end).map(|n| (n as f64).powf(0.25) * values[n].abs()).fold(0.0, f64::max)
}

/// Envelope of the orthonormal Hermite polynomials `H_n/√(2ⁿn!√π)` at a real point.
pub fn hermite_envelope(x: f64) -> Envelope {
    let vals = hermite_normalized_all(ENVELOPE_FIT_END, x);
    // Fitted on the Hermite functions p̂_n e^{−x²/2}, whose decay is n^{−1/4}.
    let damp = (-x * x / 2.0).exp();
    let weighted: Vec<f64> = vals.iter().map(|v| v * damp).collect();
    let fitted = ENVELOPE_SAFETY * fit_quarter_power(&weighted, ENVELOPE_FIT_START, ENVELOPE_FIT_END);
    Envelope {
        constant: fitted / damp,
        exponent: -0.25,
        fit_start: ENVELOPE_FIT_START,
        cap: CRAMER_CONSTANT * std::f64::consts::PI.powf(-0.25) / damp,
    }
}

/// Envelope of `L_n(x)`, `x ≥ 0`, fitted on `[50, fit_end]`; the cap is `e^{x/2}`.
pub fn laguerre_envelope(x: f64, fit_end: usize) -> Result<Envelope> {
    if x < 0.0 {
        return Err(invalid(format!("Laguerre envelope needs x ≥ 0, got {x}")));
    }
    if fit_end < 2 * ENVELOPE_FIT_START {
        return Err(invalid(format!(
            "envelope fit needs at least {} terms, got {fit_end}",
            2 * ENVELOPE_FIT_START
        )));
    }
    let vals = eval_poly_all_real(PolyFamily::Laguerre { order: 0.0 }, fit_end, x)?;
    Ok(Envelope {
        constant: ENVELOPE_SAFETY * fit_quarter_power(&vals, ENVELOPE_FIT_START, fit_end),
        exponent: -0.25,
        fit_start: ENVELOPE_FIT_START,
        cap: (x / 2.0).exp(),
    })
}

/// `max |x ± √(x²−1)|`; `|P_n(x)| ≤ ρ^n` by the Laplace integral.
pub fn legendre_growth(x: Complex64) -> f64 {
    let s = (x * x - 1.0).sqrt();
    (x + s).norm().max((x - s).norm())
}

/// Envelope of `P_n(x)`: exactly `ρ(x)^n`, equal to 1 on `[−1, 1]`.
pub fn legendre_bound(x: Complex64, n: usize) -> f64 {
    legendre_growth(x).powi(n as i32)
}
