//! Parameters, orthogonal polynomials and modified Bessel functions.

mod bessel;
mod params;
mod poly;

pub use bessel::{
    asym_coeff, asym_coeff_exact, bessel_i, bessel_i_scaled, bessel_k, bessel_k_scaled,
    hankel_coefficients, iota, iota_scaled, AsymCoeff, BESSEL_I_CROSSOVER,
};
pub use params::{PolyFamily, QuantParams};
pub use poly::{
    eval_poly, eval_poly_all, eval_poly_all_real, eval_weighted_laguerre, explicit_coefficients,
    hermite_normalized_all, laguerre_generating,
};

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// `Γ(x)`.
pub fn gamma(x: f64) -> f64 {
    statrs::function::gamma::gamma(x)
}

/// `ln n!`.
pub fn ln_factorial(n: usize) -> f64 {
    ln_gamma(n as f64 + 1.0)
}
