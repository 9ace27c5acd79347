use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};

/// Below this modulus `I_ν` is summed from its power series, above it from the large-argument expansion.
pub const BESSEL_I_CROSSOVER: f64 = 20.0;

/// Largest real part for which `e^{x}` is representable.
const EXP_LIMIT: f64 = 709.0;

/// Entire function `ι_ν(u) = Σ_k u^k / (k! Γ(k+ν+1)) = u^{−ν/2} I_ν(2√u)`.
pub fn iota(order: f64, u: Complex64) -> Result<Complex64> {
    check_order(order)?;
    let s = 2.0 * u.norm().sqrt();
    if s <= BESSEL_I_CROSSOVER {
        return Ok(iota_series(order, u));
    }
    let root = u.sqrt();
    let two_root = 2.0 * root;
    if two_root.re > EXP_LIMIT {
        return Err(Error::Overflow(format!("ι_{order} at |u| = {}", u.norm())));
    }
    Ok(bessel_i_asymptotic(order, two_root, false) * root.powf(-order))
}

/// `e^{−2√u} ι_ν(u)` for real `u ≥ 0`; never overflows.
pub fn iota_scaled(order: f64, u: f64) -> Result<f64> {
    check_order(order)?;
    if u < 0.0 {
        return Err(Error::Domain(format!("scaled ι needs u ≥ 0, got {u}")));
    }
    let s = 2.0 * u.sqrt();
    if s <= BESSEL_I_CROSSOVER {
        return Ok(iota_series(order, Complex64::new(u, 0.0)).re * (-s).exp());
    }
    let scaled = bessel_i_asymptotic(order, Complex64::new(s, 0.0), true).re;
    Ok(scaled * u.powf(-order / 2.0))
}

fn iota_series(order: f64, u: Complex64) -> Complex64 {
    let mut term = Complex64::new(1.0 / gamma(order + 1.0), 0.0);
    let mut sum = term;
    let umag = u.norm();
    let mut k = 0.0;
    loop {
        term *= u / ((k + 1.0) * (k + order + 1.0));
        sum += term;
        k += 1.0;
        if k * (k + order) > umag && term.norm() <= 1e-17 * sum.norm() {
            break;
        }
        if k > 10_000.0 {
            break;
        }
    }
    sum
}

fn check_order(order: f64) -> Result<()> {
    if !(order > -1.0) || !order.is_finite() {
        return Err(Error::InvalidOrder(order));
    }
    Ok(())
}

/// Modified Bessel function of the first kind `I_ν(x)` with principal branch.
pub fn bessel_i(order: f64, x: Complex64) -> Result<Complex64> {
    check_order(order)?;
    if x.norm() <= BESSEL_I_CROSSOVER {
        if x == Complex64::new(0.0, 0.0) {
            return Ok(Complex64::new(if order == 0.0 { 1.0 } else { 0.0 }, 0.0));
        }
        let half = x / 2.0;
        return Ok(half.powf(order) * iota_series(order, half * half));
    }
    if x.re.abs() > EXP_LIMIT {
        return Err(Error::Overflow(format!("I_{order} at |x| = {}", x.norm())));
    }
    let v = bessel_i_asymptotic(order, x, false);
    Ok(if x.im == 0.0 && x.re > 0.0 { Complex64::new(v.re, 0.0) } else { v })
}

/// `e^{−x} I_ν(x)` for real `x ≥ 0`.
pub fn bessel_i_scaled(order: f64, x: f64) -> Result<f64> {
    check_order(order)?;
    if x < 0.0 {
        return Err(Error::Domain(format!("scaled I needs x ≥ 0, got {x}")));
    }
    if x <= BESSEL_I_CROSSOVER {
        return Ok(bessel_i(order, Complex64::new(x, 0.0))?.re * (-x).exp());
    }
    Ok(bessel_i_asymptotic(order, Complex64::new(x, 0.0), true).re)
}

/// Coefficients `a_k(ν) = Π_{j≤k} (4ν² − (2j−1)²) / (k! 8^k)` of the large-argument expansion.
pub fn hankel_coefficients(order: f64, k_max: usize) -> Vec<f64> {
    let mu = 4.0 * order * order;
    let mut out = Vec::with_capacity(k_max + 1);
    out.push(1.0);
    for k in 1..=k_max {
        let j = (2 * k - 1) as f64;
        out.push(out[k - 1] * (mu - j * j) / (8.0 * k as f64));
    }
    out
}

/// Optimally truncated two-exponential expansion. With `scaled` the result is multiplied by `e^{−z}`.
fn bessel_i_asymptotic(order: f64, z: Complex64, scaled: bool) -> Complex64 {
    let mu = 4.0 * order * order;
    let inv = 1.0 / z;
    let mut growing = Complex64::new(1.0, 0.0);
    let mut decaying = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut last = f64::INFINITY;
    for k in 1..400 {
        let j = (2 * k - 1) as f64;
        let next = term * (mu - j * j) / (8.0 * k as f64) * inv;
        let mag = next.norm();
        if mag >= last || mag == 0.0 {
            break;
        }
        last = mag;
        term = next;
        decaying += term;
        growing += if k % 2 == 1 { -term } else { term };
        if mag < 1e-17 {
            break;
        }
    }
    let pref = (2.0 * std::f64::consts::PI * z).sqrt();
    let sign = if z.im >= 0.0 { 1.0 } else { -1.0 };
    let rot = Complex64::new(0.0, sign) * Complex64::new(0.0, sign * order * std::f64::consts::PI).exp();
    if scaled {
        (growing + rot * (-2.0 * z).exp() * decaying) / pref
    } else {
        (z.exp() * growing + rot * (-z).exp() * decaying) / pref
    }
}

/// Modified Bessel function of the third kind `K_ν(x)` for real `x > 0`.
pub fn bessel_k(order: f64, x: f64) -> Result<f64> {
    Ok(bessel_k_scaled(order, x)? * (-x).exp())
}

/// `e^{x} K_ν(x)` from the trapezoidal rule on `∫₀^∞ exp(−2x sinh²(t/2)) cosh(νt) dt`.
///
/// The integrand is analytic in a strip, so the rule converges geometrically in `1/h`.
pub fn bessel_k_scaled(order: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("K_ν needs x > 0, got {x}")));
    }
    if !order.is_finite() {
        return Err(Error::InvalidOrder(order));
    }
    let nu = order.abs();
    let h = 0.1f64.min(0.5 / x.sqrt());
    let f = |t: f64| {
        let s = (t / 2.0).sinh();
        (-2.0 * x * s * s).exp() * (nu * t).cosh()
    };
    let peak = (nu / x).asinh();
    let mut sum = 0.5 * f(0.0);
    let mut k = 1usize;
    loop {
        let t = k as f64 * h;
        let v = f(t);
        sum += v;
        if t > peak + 1.0 && v <= 1e-18 * sum {
            break;
        }
        if k > 200_000 {
            return Err(Error::NonConvergence {
                what: format!("K_{order}({x}) trapezoid"),
                achieved: v / sum,
                requested: 1e-18,
            });
        }
        k += 1;
    }
    Ok(sum * h)
}

/// Coefficient of the `I_0` large-argument expansion, `c_m = ((½)_m)² / (m! 2^m)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymCoeff {
    pub m: usize,
    pub value: f64,
}

pub fn asym_coeff(m: usize) -> AsymCoeff {
    AsymCoeff { m, value: asym_coeff_exact(m).to_f64().unwrap_or(f64::NAN) }
}

/// Exact rational `c_m`.
pub fn asym_coeff_exact(m: usize) -> BigRational {
    let mut c = BigRational::one();
    for k in 0..m {
        // c_{k+1}/c_k = (k+½)² / (2(k+1)) = (2k+1)² / (8(k+1)).
        let num = BigInt::from((2 * k + 1) * (2 * k + 1));
        let den = BigInt::from(8 * (k + 1));
        c *= BigRational::new(num, den);
    }
    c
}
