//! Poisson kernels of the Laguerre, Hermite and Legendre systems and the Laguerre Fock kernel.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::convergence::{hermite_envelope, legendre_growth};
use crate::error::{invalid, Error, Result};
use crate::specfun::{hermite_normalized_all, iota, iota_scaled, ln_gamma, PolyFamily, QuantParams};

/// Hard cap on the number of series terms.
pub const MAX_TERMS: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoissonKernelSpec {
    pub family: PolyFamily,
    pub params: QuantParams,
}

/// Series value with certified tail and, where available, the closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelValue {
    pub series_value: Complex64,
    pub closed_value: Option<Complex64>,
    pub tail_bound: f64,
    pub terms_used: usize,
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("tolerance must be positive, got {tol}")))
    }
}

fn check_order(order: f64) -> Result<()> {
    if order > -1.0 && order.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidOrder(order))
    }
}

/// `(1−ε)^{−α−1} e^{−c(x+ȳ)} ι_α(ε x ȳ/(1−ε)²)`, entire in `x` and `ȳ`.
pub fn laguerre_kernel_closed(params: &QuantParams, order: f64, x: Complex64, y: Complex64) -> Result<Complex64> {
    check_order(order)?;
    let yb = y.conj();
    let u = x * yb * params.kernel_scale();
    let pref = params.hbar.powf(-order - 1.0);
    Ok(pref * (-params.c * (x + yb)).exp() * iota(order, u)?)
}

/// Partial sum of `Σ εⁿ n!/Γ(n+α+1) L_n^α(x) L_n^α(ȳ)`.
///
/// The tail is bounded with the Cauchy estimate `rⁿ|L_n^α(x)| ≤ (1−r)^{−α−1} e^{|x| r/(1−r)}`
/// optimized over `r ∈ (√ε, 1)`.
pub fn laguerre_kernel_series(params: &QuantParams, order: f64, x: Complex64, y: Complex64, tol: f64) -> Result<KernelValue> {
    check_order(order)?;
    check_tol(tol)?;
    let eps = params.epsilon;
    let yb = y.conj();
    let spread = x.norm() + y.norm();
    let one = Complex64::new(1.0, 0.0);
    let (mut lx_prev, mut lx) = (one, one);
    let (mut ly_prev, mut ly) = (one, one);
    // ln(n!/Γ(n+α+1)) and ln εⁿ.
    let mut ln_ratio = -ln_gamma(order + 1.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        if n > 0 {
            let next = |cur: Complex64, prev: Complex64, t: Complex64| {
                ((2.0 * nf - 1.0 + order - t) * cur - (nf - 1.0 + order) * prev) / nf
            };
            let (nx, ny) = if n == 1 {
                (one * (1.0 + order) - x, one * (1.0 + order) - yb)
            } else {
                (next(lx, lx_prev, x), next(ly, ly_prev, yb))
            };
            lx_prev = lx;
            lx = nx;
            ly_prev = ly;
            ly = ny;
            ln_ratio += (nf / (nf + order)).ln();
        }
        sum += lx * ly * (ln_ratio + nf * eps.ln()).exp();
        if n % 4 == 3 {
            let tail = laguerre_tail(eps, order, spread, n, ln_ratio + ((nf + 1.0) / (nf + 1.0 + order)).ln());
            if tail < tol {
                let closed = laguerre_kernel_closed(params, order, x, y)?;
                return Ok(KernelValue { series_value: sum, closed_value: Some(closed), tail_bound: tail, terms_used: n + 1 });
            }
        }
    }
    Err(Error::NonConvergence { what: "Laguerre kernel series".into(), achieved: f64::INFINITY, requested: tol })
}

/// Bound on `Σ_{n>N}` of the normalized Laguerre series; `ln_ratio_next` is `ln((N+1)!/Γ(N+α+2))`.
fn laguerre_tail(eps: f64, order: f64, spread: f64, big_n: usize, ln_ratio_next: f64) -> f64 {
    let nf = big_n as f64;
    // Ratio growth factor of n!/Γ(n+α+1) beyond N+1.
    let rho = ((nf + 2.0) / (nf + 2.0 + order)).max(1.0);
    let root = eps.sqrt();
    let mut best = f64::INFINITY;
    for j in 1..256 {
        let r = root + (1.0 - root) * j as f64 / 256.0;
        let q = eps / (r * r) * rho;
        if q >= 1.0 {
            continue;
        }
        let ln_c = -(2.0 * order + 2.0) * (1.0 - r).ln() + spread * r / (1.0 - r);
        let ln_t = ln_ratio_next + ln_c + (nf + 1.0) * (eps / (r * r)).ln() - (1.0 - q).ln();
        best = best.min(ln_t.exp());
    }
    best
}

/// `e^{−(x+y)/2} L_ε(x, y)` for `x, y ≥ 0` (order 0), evaluated without overflow.
pub fn weighted_laguerre_kernel(params: &QuantParams, x: f64, y: f64) -> Result<f64> {
    if x < 0.0 || y < 0.0 {
        return Err(Error::Domain(format!("weighted kernel needs x, y ≥ 0, got ({x}, {y})")));
    }
    let u = params.kernel_scale() * x * y;
    let s = 2.0 * u.sqrt();
    let expo = s - (params.c + 0.5) * (x + y);
    Ok(iota_scaled(0.0, u)? * expo.exp() / params.hbar)
}

/// Partial sum of `Σ εⁿ H_n(x)H_n(y)/(n! 2ⁿ √π)` with an envelope-certified tail.
pub fn hermite_kernel_series(eps: f64, x: f64, y: f64, tol: f64) -> Result<KernelValue> {
    QuantParams::new(eps)?;
    check_tol(tol)?;
    let ex = hermite_envelope(x);
    let ey = hermite_envelope(y);
    let mut n_max = 256;
    loop {
        let hx = hermite_normalized_all(n_max, x);
        let hy = hermite_normalized_all(n_max, y);
        let mut sum = 0.0;
        let mut pow = 1.0;
        for n in 0..=n_max {
            sum += pow * hx[n] * hy[n];
            pow *= eps;
            // Envelopes are non-increasing from `n+1` on, so the tail is a geometric majorant.
            let tail = ex.bound(n + 1) * ey.bound(n + 1) * pow / (1.0 - eps);
            if tail < tol {
                return Ok(KernelValue {
                    series_value: Complex64::new(sum, 0.0),
                    closed_value: None,
                    tail_bound: tail,
                    terms_used: n + 1,
                });
            }
        }
        if n_max >= MAX_TERMS {
            return Err(Error::NonConvergence { what: "Hermite kernel series".into(), achieved: f64::INFINITY, requested: tol });
        }
        n_max *= 4;
    }
}

/// Whether the Legendre series converges at `(x, y)`: `ε ρ(x) ρ(y) < 1`.
pub fn legendre_series_converges(eps: f64, x: Complex64, y: Complex64) -> bool {
    eps * legendre_growth(x) * legendre_growth(y) < 1.0
}

/// Partial sum of `Σ εⁿ (n+½) P_n(x) P_n(ȳ)`, tail bounded by `|P_n| ≤ ρⁿ`.
pub fn legendre_kernel_series(eps: f64, x: Complex64, y: Complex64, tol: f64) -> Result<KernelValue> {
    QuantParams::new(eps)?;
    check_tol(tol)?;
    let yb = y.conj();
    let q = eps * legendre_growth(x) * legendre_growth(y);
    if q >= 1.0 {
        return Err(Error::Domain(format!("Legendre kernel series diverges at ({x}, {y}) for ε = {eps}")));
    }
    let one = Complex64::new(1.0, 0.0);
    let (mut px_prev, mut px) = (one, one);
    let (mut py_prev, mut py) = (one, one);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut pow = 1.0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        if n > 0 {
            let (nx, ny) = if n == 1 {
                (x, yb)
            } else {
                (
                    ((2.0 * nf - 1.0) * x * px - (nf - 1.0) * px_prev) / nf,
                    ((2.0 * nf - 1.0) * yb * py - (nf - 1.0) * py_prev) / nf,
                )
            };
            px_prev = px;
            px = nx;
            py_prev = py;
            py = ny;
        }
        sum += (nf + 0.5) * pow * px * py;
        pow *= eps;
        // Σ_{n≥M} (n+½) qⁿ = q^M [(M+½)/(1−q) + q/(1−q)²].
        let m = nf + 1.0;
        let tail = q.powf(m) * ((m + 0.5) / (1.0 - q) + q / ((1.0 - q) * (1.0 - q)));
        if tail < tol {
            let closed = match (x.im == 0.0, y.im == 0.0) {
                (true, true) if x.re.abs() <= 1.0 && y.re.abs() <= 1.0 => Some(Complex64::new(
                    legendre_kernel_closed(eps, x.re.acos() / 2.0, y.re.acos() / 2.0, tol)?,
                    0.0,
                )),
                _ => None,
            };
            return Ok(KernelValue { series_value: sum, closed_value: closed, tail_bound: tail, terms_used: n + 1 });
        }
    }
    Err(Error::NonConvergence { what: "Legendre kernel series".into(), achieved: f64::INFINITY, requested: tol })
}

/// Appell-type double series for the Legendre kernel at `(cos 2φ, cos 2θ)`.
///
/// Truncated to `m, n ≤ S`; every omitted term has total degree `s > S`, and the terms of
/// degree `s` sum to at most `(3/2)_s/s! · (√X+√Y)^{2s}`.
pub fn legendre_kernel_closed(eps: f64, phi: f64, theta: f64, tol: f64) -> Result<f64> {
    Ok(legendre_f4_sum(eps, phi, theta, tol)?.0)
}

/// Returns `(value, tail bound, truncation S)`.
pub fn legendre_f4_sum(eps: f64, phi: f64, theta: f64, tol: f64) -> Result<(f64, f64, usize)> {
    if !(eps >= 0.0 && eps < 1.0) {
        return Err(invalid(format!("epsilon must lie in [0,1), got {eps}")));
    }
    check_tol(tol)?;
    let d = (1.0 + eps) * (1.0 + eps);
    let big_x = 4.0 * eps * (phi.sin() * theta.sin()).powi(2) / d;
    let big_y = 4.0 * eps * (phi.cos() * theta.cos()).powi(2) / d;
    let q = (big_x.sqrt() + big_y.sqrt()).powi(2);
    if q >= 1.0 {
        return Err(Error::Domain(format!("double series diverges: (√X+√Y)² = {q}")));
    }
    let pref = (1.0 - eps) / (2.0 * d);
    // Smallest S whose total-degree tail is below tol.
    let mut t = 1.0; // (3/2)_s/s! q^s at s = 0
    let mut s = 0usize;
    let tail = loop {
        let sf = s as f64;
        let next = t * (sf + 1.5) / (sf + 1.0) * q;
        let ratio = q * (sf + 2.5) / (sf + 2.0);
        if ratio < 1.0 {
            let bound = pref * next / (1.0 - ratio);
            if bound < tol {
                break bound;
            }
        }
        t = next;
        s += 1;
        if s > 1_000_000 {
            return Err(Error::NonConvergence { what: "Legendre double series".into(), achieved: f64::INFINITY, requested: tol });
        }
    };
    let big_s = s;
    let mut total = 0.0;
    // T_{m,0} by recurrence in m, then T_{m,n} by recurrence in n.
    let mut row_head = 1.0;
    for m in 0..=big_s {
        let mf = m as f64;
        if m > 0 {
            row_head *= (mf + 0.5) / mf * big_x;
        }
        let mut term = row_head;
        for n in 0..=big_s {
            total += term;
            let nf = n as f64;
            term *= (mf + nf + 1.0) * (mf + nf + 1.5) / ((nf + 1.0) * (nf + 1.0)) * big_y;
            if term == 0.0 {
                break;
            }
        }
        if row_head == 0.0 {
            break;
        }
    }
    Ok((pref * total, tail, big_s))
}

/// Reproducing kernel of the Laguerre Fock space: `(1−ε)^{−α−1} ι_α(ε z w̄/(1−ε)²)`.
pub fn fock_kernel(params: &QuantParams, order: f64, z: Complex64, w: Complex64) -> Result<Complex64> {
    check_order(order)?;
    let u = z * w.conj() * params.kernel_scale();
    Ok(params.hbar.powf(-order - 1.0) * iota(order, u)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn laguerre_origin() {
        let p = QuantParams::new(0.5).unwrap();
        assert_relative_eq!(laguerre_kernel_closed(&p, 0.0, c(0.0), c(0.0)).unwrap().re, 2.0, max_relative = 1e-14);
        let v = laguerre_kernel_series(&p, 0.0, c(0.0), c(0.0), 1e-12).unwrap();
        assert!((v.series_value - c(2.0)).norm() < 1e-12);
    }

    #[test]
    fn laguerre_series_vs_closed() {
        let p = QuantParams::new(0.5).unwrap();
        for (x, y) in [(c(1.0), c(1.0)), (c(2.0), c(3.0)), (Complex64::new(1.0, 1.0), Complex64::new(1.0, -1.0))] {
            let v = laguerre_kernel_series(&p, 0.0, x, y, 1e-10).unwrap();
            assert!((v.series_value - v.closed_value.unwrap()).norm() < 1e-9, "{x} {y}");
        }
        let v = laguerre_kernel_series(&p, 1.5, Complex64::new(0.5, 2.0), c(1.2), 1e-11).unwrap();
        assert!((v.series_value - v.closed_value.unwrap()).norm() < 1e-10);
    }

    #[test]
    fn laguerre_order_at_zero_argument() {
        // Only the n=0 term of ι survives: (1−ε)^{−α−1} e^{−c ȳ} / Γ(α+1).
        let p = QuantParams::new(0.3).unwrap();
        let y = c(0.8);
        let v = laguerre_kernel_closed(&p, 1.0, c(0.0), y).unwrap();
        let expect = p.hbar.powi(-2) * (-p.c * 0.8).exp();
        assert_relative_eq!(v.re, expect, max_relative = 1e-14);
        let s = laguerre_kernel_series(&p, 1.0, c(0.0), y, 1e-13).unwrap();
        assert_relative_eq!(s.series_value.re, expect, max_relative = 1e-12);
    }

    #[test]
    fn weighted_kernel() {
        let p = QuantParams::new(0.4).unwrap();
        assert_relative_eq!(weighted_laguerre_kernel(&p, 0.0, 0.0).unwrap(), 1.0 / 0.6, max_relative = 1e-14);
        let a = weighted_laguerre_kernel(&p, 1.3, 4.0).unwrap();
        let b = weighted_laguerre_kernel(&p, 4.0, 1.3).unwrap();
        assert_eq!(a, b);
        let closed = laguerre_kernel_closed(&p, 0.0, c(1.3), c(4.0)).unwrap().re * (-(1.3 + 4.0) / 2.0f64).exp();
        assert_relative_eq!(a, closed, max_relative = 1e-13);
        // Very large arguments stay finite.
        assert!(weighted_laguerre_kernel(&p, 2000.0, 2100.0).unwrap().is_finite());
    }

    #[test]
    fn hermite_origin() {
        for eps in [0.2, 0.5, 0.8] {
            let v = hermite_kernel_series(eps, 0.0, 0.0, 1e-12).unwrap();
            let expect = (1.0 - eps * eps).powf(-0.5) / std::f64::consts::PI.sqrt();
            assert!((v.series_value.re - expect).abs() < 1e-11);
        }
        let a = hermite_kernel_series(0.6, 0.3, -1.1, 1e-12).unwrap();
        let b = hermite_kernel_series(0.6, -1.1, 0.3, 1e-12).unwrap();
        assert!((a.series_value - b.series_value).norm() < 1e-14);
    }

    /// Mehler's formula, used only as an independent check.
    fn mehler(eps: f64, x: f64, y: f64) -> f64 {
        let d = 1.0 - eps * eps;
        (std::f64::consts::PI * d).powf(-0.5) * ((2.0 * x * y * eps - (x * x + y * y) * eps * eps) / d).exp()
    }

    #[test]
    fn hermite_vs_mehler() {
        for (x, y) in [(0.5, 0.5), (1.5, -0.7), (2.5, 2.0)] {
            let v = hermite_kernel_series(0.7, x, y, 1e-12).unwrap();
            assert!((v.series_value.re - mehler(0.7, x, y)).abs() < 1e-11 + v.tail_bound);
        }
    }

    #[test]
    fn legendre_endpoints() {
        for eps in [0.3, 0.5, 0.8] {
            let v = legendre_kernel_series(eps, c(1.0), c(1.0), 1e-12).unwrap();
            let expect = (1.0 + eps) / (2.0 * (1.0 - eps) * (1.0 - eps));
            assert_relative_eq!(v.series_value.re, expect, max_relative = 1e-11);
            assert_relative_eq!(v.closed_value.unwrap().re, expect, max_relative = 1e-11);
            let v = legendre_kernel_series(eps, c(1.0), c(-1.0), 1e-12).unwrap();
            let expect = (1.0 - eps) / (2.0 * (1.0 + eps) * (1.0 + eps));
            assert_relative_eq!(v.series_value.re, expect, max_relative = 1e-11);
        }
    }

    #[test]
    fn legendre_closed_matches_series() {
        let v = legendre_kernel_series(0.5, c(0.0), c(0.0), 1e-12).unwrap();
        assert!((v.series_value - v.closed_value.unwrap()).norm() < 1e-10);
        let q = std::f64::consts::FRAC_PI_4;
        let closed = legendre_kernel_closed(0.3, q, q, 1e-13).unwrap();
        let series = legendre_kernel_series(0.3, c(0.0), c(0.0), 1e-13).unwrap();
        assert!((closed - series.series_value.re).abs() < 1e-11);
        assert_relative_eq!(legendre_kernel_closed(0.0, 0.3, 1.1, 1e-14).unwrap(), 0.5);
    }

    #[test]
    fn legendre_outside_domain() {
        assert!(legendre_kernel_series(0.5, c(2.0), c(2.0), 1e-8).is_err());
        assert!(legendre_kernel_series(0.05, c(2.0), c(2.0), 1e-8).is_ok());
    }

    #[test]
    fn fock_kernel_basics() {
        let p = QuantParams::new(0.5).unwrap();
        assert_relative_eq!(fock_kernel(&p, 0.0, c(0.0), Complex64::new(1.0, 3.0)).unwrap().re, 2.0, max_relative = 1e-14);
        let z = Complex64::new(0.4, -1.2);
        let w = Complex64::new(2.0, 0.5);
        let a = fock_kernel(&p, 0.5, z, w).unwrap();
        let b = fock_kernel(&p, 0.5, w, z).unwrap();
        assert!((a - b.conj()).norm() < 1e-14 * a.norm());
        // Multiplication-map relation with the Laguerre kernel.
        let lag = laguerre_kernel_closed(&p, 0.5, z, w).unwrap();
        let lifted = (p.c * z).exp() * lag * (p.c * w.conj()).exp();
        assert!((lifted - a).norm() < 1e-13 * a.norm());
    }
}
