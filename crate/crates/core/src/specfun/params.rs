use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{invalid, Error, Result};

/// Semiclassical parameter bundle derived from `epsilon`.
///
/// `c = ε/(1−ε)`, `alpha_scale = 2√ε/(1−ε)`, `hbar = 1−ε`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantParams {
    pub epsilon: f64,
    pub c: f64,
    pub alpha_scale: f64,
    pub hbar: f64,
}

impl QuantParams {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(invalid(format!("epsilon must lie in (0,1), got {epsilon}")));
        }
        let hbar = 1.0 - epsilon;
        Ok(Self {
            epsilon,
            c: epsilon / hbar,
            alpha_scale: 2.0 * epsilon.sqrt() / hbar,
            hbar,
        })
    }

    /// Recovers ε from the large parameter α = 2√ε/(1−ε).
    pub fn from_alpha_scale(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(invalid(format!("alpha scale must be positive, got {alpha}")));
        }
        // √ε solves α s² + 2 s − α = 0.
        let s = 2.0 / (1.0 + (1.0 + alpha * alpha).sqrt()) * (alpha / 2.0);
        let s = s.min(1.0 - f64::EPSILON);
        Self::new(s * s)
    }

    /// Argument scale of the Bessel-K weight, `2√ε/(1−ε)`.
    pub fn bessel_scale(&self) -> f64 {
        self.alpha_scale
    }

    /// Kernel argument scale `ε/(1−ε)²`, so that the Fock kernel is a function of `a·z·w̄`.
    pub fn kernel_scale(&self) -> f64 {
        self.epsilon / (self.hbar * self.hbar)
    }

    /// λ = α|z|.
    pub fn lambda(&self, modulus: f64) -> f64 {
        self.alpha_scale * modulus
    }
}

/// One of the three classical orthogonal systems.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PolyFamily {
    /// Physicists' Hermite polynomials, weight `e^{−x²}` on ℝ.
    Hermite,
    /// Generalized Laguerre polynomials, weight `x^α e^{−x}` on (0,∞).
    Laguerre { order: f64 },
    /// Legendre polynomials, weight 1 on (−1,1).
    Legendre,
}

impl PolyFamily {
    pub fn laguerre(order: f64) -> Result<Self> {
        let fam = PolyFamily::Laguerre { order };
        fam.validate()?;
        Ok(fam)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            PolyFamily::Laguerre { order } if !(order > -1.0) || !order.is_finite() => {
                Err(Error::InvalidOrder(order))
            }
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PolyFamily::Hermite => "hermite",
            PolyFamily::Laguerre { .. } => "laguerre",
            PolyFamily::Legendre => "legendre",
        }
    }

    pub fn domain(&self) -> (f64, f64) {
        match self {
            PolyFamily::Hermite => (f64::NEG_INFINITY, f64::INFINITY),
            PolyFamily::Laguerre { .. } => (0.0, f64::INFINITY),
            PolyFamily::Legendre => (-1.0, 1.0),
        }
    }

    pub fn weight(&self, x: f64) -> f64 {
        match *self {
            PolyFamily::Hermite => (-x * x).exp(),
            PolyFamily::Laguerre { order } => {
                if x <= 0.0 {
                    0.0
                } else {
                    x.powf(order) * (-x).exp()
                }
            }
            PolyFamily::Legendre => {
                if x.abs() <= 1.0 {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// Total mass of the weight.
    pub fn total_mass(&self) -> f64 {
        match *self {
            PolyFamily::Hermite => std::f64::consts::PI.sqrt(),
            PolyFamily::Laguerre { order } => ln_gamma(order + 1.0).exp(),
            PolyFamily::Legendre => 2.0,
        }
    }

    /// Squared weighted L² norm of the standard (unnormalized) n-th polynomial.
    pub fn norm_sq(&self, n: usize) -> f64 {
        let nf = n as f64;
        match *self {
            PolyFamily::Hermite => {
                (nf * std::f64::consts::LN_2 + ln_gamma(nf + 1.0)).exp() * std::f64::consts::PI.sqrt()
            }
            PolyFamily::Laguerre { order } => (ln_gamma(nf + order + 1.0) - ln_gamma(nf + 1.0)).exp(),
            PolyFamily::Legendre => 1.0 / (nf + 0.5),
        }
    }

    /// Eigenvalue of the operator `A` on the n-th basis function.
    pub fn a_eigenvalue(&self, n: usize) -> f64 {
        n as f64
    }

    /// Recurrence coefficients of the orthonormal family: `x p̂_k = b_{k+1} p̂_{k+1} + a_k p̂_k + b_k p̂_{k−1}`.
    ///
    /// For Laguerre the off-diagonal is negative so that `p̂_n` carries the sign of `L_n^α`.
    pub fn jacobi_coefficients(&self, n: usize) -> (Vec<f64>, Vec<f64>) {
        let diag: Vec<f64> = (0..n)
            .map(|k| match *self {
                PolyFamily::Laguerre { order } => 2.0 * k as f64 + order + 1.0,
                _ => 0.0,
            })
            .collect();
        let off: Vec<f64> = (1..n)
            .map(|k| {
                let kf = k as f64;
                match *self {
                    PolyFamily::Hermite => (kf / 2.0).sqrt(),
                    PolyFamily::Laguerre { order } => -(kf * (kf + order)).sqrt(),
                    PolyFamily::Legendre => kf / (4.0 * kf * kf - 1.0).sqrt(),
                }
            })
            .collect();
        (diag, off)
    }
}
