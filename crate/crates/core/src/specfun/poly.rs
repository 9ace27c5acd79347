use num_complex::Complex64;
use statrs::function::gamma::ln_gamma;

use super::params::PolyFamily;
use crate::error::{Error, Result};

/// Values `p_0(x), …, p_{n_max}(x)` of the standard polynomials by forward recurrence.
pub fn eval_poly_all(family: PolyFamily, n_max: usize, x: Complex64) -> Result<Vec<Complex64>> {
    family.validate()?;
    let mut out = Vec::with_capacity(n_max + 1);
    let one = Complex64::new(1.0, 0.0);
    out.push(one);
    if n_max == 0 {
        return Ok(out);
    }
    let p1 = match family {
        PolyFamily::Hermite => 2.0 * x,
        PolyFamily::Laguerre { order } => one * (1.0 + order) - x,
        PolyFamily::Legendre => x,
    };
    out.push(p1);
    for n in 1..n_max {
        let nf = n as f64;
        let (pn, pm) = (out[n], out[n - 1]);
        let next = match family {
            PolyFamily::Hermite => 2.0 * x * pn - 2.0 * nf * pm,
            PolyFamily::Laguerre { order } => {
                ((2.0 * nf + 1.0 + order - x) * pn - (nf + order) * pm) / (nf + 1.0)
            }
            PolyFamily::Legendre => ((2.0 * nf + 1.0) * x * pn - nf * pm) / (nf + 1.0),
        };
        out.push(next);
    }
    Ok(out)
}

/// `H_n`, `L_n^α` or `P_n` at a complex point.
pub fn eval_poly(family: PolyFamily, n: usize, x: Complex64) -> Result<Complex64> {
    Ok(*eval_poly_all(family, n, x)?.last().expect("non-empty"))
}

/// Real-argument variant of [`eval_poly_all`].
pub fn eval_poly_all_real(family: PolyFamily, n_max: usize, x: f64) -> Result<Vec<f64>> {
    family.validate()?;
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(1.0);
    if n_max == 0 {
        return Ok(out);
    }
    out.push(match family {
        PolyFamily::Hermite => 2.0 * x,
        PolyFamily::Laguerre { order } => 1.0 + order - x,
        PolyFamily::Legendre => x,
    });
    for n in 1..n_max {
        let nf = n as f64;
        let (pn, pm) = (out[n], out[n - 1]);
        out.push(match family {
            PolyFamily::Hermite => 2.0 * x * pn - 2.0 * nf * pm,
            PolyFamily::Laguerre { order } => {
                ((2.0 * nf + 1.0 + order - x) * pn - (nf + order) * pm) / (nf + 1.0)
            }
            PolyFamily::Legendre => ((2.0 * nf + 1.0) * x * pn - nf * pm) / (nf + 1.0),
        });
    }
    Ok(out)
}

/// Orthonormal Hermite polynomials `H_n(x)/√(2ⁿ n! √π)` for `n ≤ n_max`.
///
/// Uses the normalized recurrence, which stays in range for large `n`.
pub fn hermite_normalized_all(n_max: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(std::f64::consts::PI.powf(-0.25));
    if n_max == 0 {
        return out;
    }
    out.push(std::f64::consts::SQRT_2 * x * out[0]);
    for n in 1..n_max {
        let nf = n as f64;
        let next = (2.0 / (nf + 1.0)).sqrt() * x * out[n] - (nf / (nf + 1.0)).sqrt() * out[n - 1];
        out.push(next);
    }
    out
}

/// Weighted normalized Laguerre function `e^{−x/2} x^{α/2} L_n^α(x) / √(Γ(n+α+1)/n!)`.
pub fn eval_weighted_laguerre(order: f64, n: usize, x: f64) -> Result<f64> {
    if !(order > -1.0) {
        return Err(Error::InvalidOrder(order));
    }
    if x < 0.0 {
        return Err(Error::Domain(format!("weighted Laguerre needs x ≥ 0, got {x}")));
    }
    let ln = eval_poly_all_real(PolyFamily::Laguerre { order }, n, x)?[n];
    let nf = n as f64;
    let log_norm = 0.5 * (ln_gamma(nf + order + 1.0) - ln_gamma(nf + 1.0));
    let power = if order == 0.0 { 1.0 } else { x.powf(order / 2.0) };
    Ok(ln * power * (-x / 2.0 - log_norm).exp())
}

/// Laguerre generating function `(1−z)^{−α−1} exp(xz/(z−1))` for `|z| < 1`.
pub fn laguerre_generating(order: f64, x: Complex64, z: Complex64) -> Result<Complex64> {
    if !(order > -1.0) {
        return Err(Error::InvalidOrder(order));
    }
    if z.norm() >= 1.0 {
        return Err(Error::Domain(format!("generating function needs |z| < 1, got {}", z.norm())));
    }
    let one = Complex64::new(1.0, 0.0);
    Ok((one - z).powf(-order - 1.0) * (x * z / (z - one)).exp())
}

/// Coefficients (ascending powers) of the standard polynomial of degree `n`, as exact rationals.
///
/// Obtained from the explicit sums, independently of the recurrences.
pub fn explicit_coefficients(
    family: PolyFamily,
    n: usize,
) -> Result<Vec<num_rational::BigRational>> {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    family.validate()?;
    let fact = |k: usize| -> BigInt { (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i)) };
    let binom = |a: usize, b: usize| fact(a) / (fact(b) * fact(a - b));
    let mut c = vec![BigRational::zero(); n + 1];
    match family {
        PolyFamily::Hermite => {
            // H_n = n! Σ_m (−1)^m (2x)^{n−2m} / (m!(n−2m)!).
            for m in 0..=n / 2 {
                let deg = n - 2 * m;
                let mut v = BigRational::new(
                    fact(n) * BigInt::from(2).pow(deg as u32),
                    fact(m) * fact(deg),
                );
                if m % 2 == 1 {
                    v = -v;
                }
                c[deg] = v;
            }
        }
        PolyFamily::Laguerre { order } => {
            if order.fract() != 0.0 || order < 0.0 {
                return Err(Error::Unsupported(
                    "exact Laguerre coefficients need a non-negative integer order".into(),
                ));
            }
            let a = order as usize;
            // L_n^a = Σ_k (−1)^k C(n+a, n−k) x^k / k!.
            for k in 0..=n {
                let mut v = BigRational::new(binom(n + a, n - k), fact(k));
                if k % 2 == 1 {
                    v = -v;
                }
                c[k] = v;
            }
        }
        PolyFamily::Legendre => {
            // P_n = 2^{−n} Σ_k (−1)^k C(n,k) C(2n−2k, n) x^{n−2k}.
            for k in 0..=n / 2 {
                let mut v = BigRational::new(
                    binom(n, k) * binom(2 * n - 2 * k, n),
                    BigInt::from(2).pow(n as u32),
                );
                if k % 2 == 1 {
                    v = -v;
                }
                c[n - 2 * k] = v;
            }
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_traits::ToPrimitive;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn spot_values() {
        let lag = PolyFamily::Laguerre { order: 0.0 };
        assert_eq!(eval_poly(lag, 0, c(3.7)).unwrap(), c(1.0));
        assert_relative_eq!(eval_poly(lag, 1, c(2.0)).unwrap().re, -1.0);
        assert_relative_eq!(eval_poly(PolyFamily::Legendre, 5, c(1.0)).unwrap().re, 1.0, epsilon = 1e-15);
        assert_relative_eq!(eval_poly(PolyFamily::Hermite, 2, c(0.0)).unwrap().re, -2.0);
    }

    #[test]
    fn invalid_order_rejected() {
        assert_eq!(
            eval_poly(PolyFamily::Laguerre { order: -1.0 }, 2, c(0.0)),
            Err(Error::InvalidOrder(-1.0))
        );
    }

    #[test]
    fn recurrences_match_explicit_sums() {
        for fam in [PolyFamily::Hermite, PolyFamily::Laguerre { order: 0.0 }, PolyFamily::Laguerre { order: 2.0 }, PolyFamily::Legendre] {
            for x in [-1.3, -0.4, 0.0, 0.7, 2.5] {
                let vals = eval_poly_all_real(fam, 12, x).unwrap();
                for (n, v) in vals.iter().enumerate() {
                    let coeffs = explicit_coefficients(fam, n).unwrap();
                    let direct: f64 = coeffs
                        .iter()
                        .enumerate()
                        .map(|(k, q)| q.to_f64().unwrap() * x.powi(k as i32))
                        .sum();
                    let scale = coeffs.iter().enumerate().map(|(k, q)| q.to_f64().unwrap().abs() * x.abs().powi(k as i32)).sum::<f64>();
                    assert!((v - direct).abs() <= 1e-13 * scale.max(1.0), "{fam:?} n={n} x={x}");
                }
            }
        }
    }

    #[test]
    fn laguerre_at_origin_is_binomial() {
        let v = eval_poly_all_real(PolyFamily::Laguerre { order: 0.0 }, 30, 0.0).unwrap();
        assert!(v.iter().all(|&t| (t - 1.0).abs() < 1e-14));
        let v = eval_poly_all_real(PolyFamily::Laguerre { order: 2.0 }, 5, 0.0).unwrap();
        assert_relative_eq!(v[5], 21.0, epsilon = 1e-13);
    }

    #[test]
    fn weighted_laguerre_values() {
        assert_relative_eq!(eval_weighted_laguerre(0.0, 0, 0.0).unwrap(), 1.0);
        // L_3(1) = 1 − 3 + 3/2 − 1/6 = −2/3.
        let expect = (-0.5f64).exp() * (-2.0 / 3.0);
        assert_relative_eq!(eval_weighted_laguerre(0.0, 3, 1.0).unwrap(), expect, epsilon = 1e-15);
    }

    #[test]
    fn normalized_hermite_matches_standard() {
        let h = eval_poly_all_real(PolyFamily::Hermite, 20, 0.8).unwrap();
        let hn = hermite_normalized_all(20, 0.8);
        for n in 0..=20 {
            let norm = PolyFamily::Hermite.norm_sq(n).sqrt();
            assert_relative_eq!(h[n] / norm, hn[n], max_relative = 1e-12);
        }
    }

    #[test]
    fn generating_function_partial_sums() {
        assert_relative_eq!(laguerre_generating(0.0, c(0.4), c(0.0)).unwrap().re, 1.0);
        assert_relative_eq!(laguerre_generating(0.0, c(0.0), c(0.5)).unwrap().re, 2.0);
        let z = c(0.3);
        let vals = eval_poly_all(PolyFamily::Laguerre { order: 0.0 }, 60, c(1.0)).unwrap();
        let closed = laguerre_generating(0.0, c(1.0), z).unwrap();
        let partial: Complex64 = vals.iter().take(21).enumerate().map(|(n, l)| l * z.powu(n as u32)).sum();
        assert!((partial - closed).norm() < 1e-10);
        assert!(laguerre_generating(0.0, c(1.0), c(1.0)).is_err());
    }

    #[test]
    fn generating_function_complex_order() {
        let z = Complex64::new(0.2, 0.35);
        let x = Complex64::new(1.5, -0.5);
        let vals = eval_poly_all(PolyFamily::Laguerre { order: 1.5 }, 80, x).unwrap();
        let sum: Complex64 = vals.iter().enumerate().map(|(n, l)| l * z.powu(n as u32)).sum();
        let closed = laguerre_generating(1.5, x, z).unwrap();
        assert!((sum - closed).norm() < 1e-12 * closed.norm());
    }
}
