//! Numerical Berezin transform and the asymptotic-fit harness.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::symbolic::{i0_coefficients, q_series, r_operator_scaled, rat_to_f64, DiffOpPoly, FormalOpSeries};
use super::SymbolPoly;
use crate::error::{invalid, Error, Result};
use crate::fock::FockMeasure;
use crate::quadrature::{integrate_plane, PlaneIntegral, RadialDensity};
use crate::specfun::{bessel_i_scaled, iota, ln_gamma, QuantParams};

/// Terms below this fraction of the running sum end the moment series.
const MOMENT_SERIES_CUT: f64 = 1e-18;

/// `B(w^p w̄^q)(z)` by the moment series.
///
/// `|K(z,w)|²` expands in `z^j z̄^k w̄^j w^k / (N_j N_k)` and only `p+k = q+j` survives integration, giving
/// `e^{i(p−q)θ} Σ_{J ≥ max(p,q)} r^{2J−p−q} ε^{J−p−q} (1−ε)^{2(p+q−J)} J!²/((J−q)!²(J−p)!²) / ι_0(a r²)`.
pub fn berezin_monomial(params: &QuantParams, p: u32, q: u32, z: Complex64) -> f64 {
    let r = z.norm();
    let eps = params.epsilon;
    let h = params.hbar;
    let (pf, qf) = (p as f64, q as f64);
    if r == 0.0 {
        if p != q {
            return 0.0;
        }
        return (pf * (h * h / eps).ln() + 2.0 * ln_gamma(pf + 1.0)).exp();
    }
    let s = params.alpha_scale * r;
    let ln_iota = s + bessel_i_scaled(0.0, s).map(f64::ln).unwrap_or(f64::NAN);
    let j0 = p.max(q) as usize;
    let jf = j0 as f64;
    let mut ln_t = (2.0 * jf - pf - qf) * r.ln() + (jf - pf - qf) * eps.ln() + 2.0 * (pf + qf - jf) * h.ln()
        + 2.0 * (ln_gamma(jf + 1.0) - ln_gamma(jf - qf + 1.0) - ln_gamma(jf - pf + 1.0))
        - ln_iota;
    // ln of r² ε/(1−ε)², the J-independent part of the term ratio.
    let ln_step = 2.0 * r.ln() + eps.ln() - 2.0 * h.ln();
    let mut sum = 0.0;
    let mut j = j0;
    loop {
        let t = ln_t.exp();
        sum += t;
        let jn = (j + 1) as f64;
        let ratio_ln = ln_step + 2.0 * (jn.ln() - (jn - qf).ln() - (jn - pf).ln());
        if t < MOMENT_SERIES_CUT * sum && ratio_ln < 0.0 {
            break;
        }
        ln_t += ratio_ln;
        j += 1;
        if j > 10_000_000 {
            break;
        }
    }
    sum
}

/// Moment-series Berezin transform of a polynomial symbol.
pub fn berezin_moment(params: &QuantParams, f: &SymbolPoly, z: Complex64) -> Complex64 {
    let phase = z.arg();
    f.coefficients
        .iter()
        .map(|(&(p, q), &c)| c * Complex64::from_polar(berezin_monomial(params, p, q, z), (p as f64 - q as f64) * phase))
        .sum()
}

/// `B f(z)` by plane quadrature of `f(w)|K(z,w)|²/K(z,z)` against the measure.
pub fn berezin_quadrature(params: &QuantParams, f: &SymbolPoly, z: Complex64, tol: f64) -> Result<PlaneIntegral> {
    let measure = FockMeasure::new(*params, 0.0)?;
    let a = params.kernel_scale();
    let b = params.alpha_scale;
    let r = z.norm();
    let s = b * r;
    // 1/K(z,z) with the exponential part of ι_0 split off to keep both factors finite.
    let ln_kzz = s + bessel_i_scaled(0.0, s)?.ln() - params.hbar.ln();
    let profile = move |t: f64| measure.radial(t);
    let density = RadialDensity::new(&profile, b)
        .with_degree(f.degree())
        .with_sqrt_growth(2.0 * b * r.sqrt())
        .with_angular(s, b);
    let h2 = params.hbar * params.hbar;
    integrate_plane(
        &density,
        |w| {
            let k = iota(0.0, a * z * w.conj()).unwrap_or(Complex64::new(f64::NAN, 0.0));
            f.eval(w) * (k.norm_sqr().ln() - h2.ln() - ln_kzz).exp()
        },
        tol,
    )
}

/// Both evaluation paths of the Berezin transform.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BerezinValue {
    pub moment: Complex64,
    pub quadrature: Complex64,
    pub quadrature_error: f64,
}

/// Moment-series value cross-checked against plane quadrature.
pub fn berezin_numeric(params: &QuantParams, f: &SymbolPoly, z: Complex64, tol: f64) -> Result<BerezinValue> {
    let moment = berezin_moment(params, f, z);
    let quad = berezin_quadrature(params, f, z, tol)?;
    let gap = (moment - quad.value).norm();
    if gap > quad.error_bound + tol * quad.abs_scale.max(moment.norm()) {
        return Err(Error::Mismatch(format!(
            "Berezin paths disagree at z = {z}: moment {moment}, quadrature {} (gap {gap:.3e})",
            quad.value
        )));
    }
    Ok(BerezinValue { moment, quadrature: quad.value, quadrature_error: quad.error_bound })
}

/// `Σ_{j ≤ J} α^{−2j} Δ^j f(0)`; only balanced monomials contribute, `Δ^j (w^j w̄^j) = 4^j j!²`.
pub fn berezin_origin(params: &QuantParams, f: &SymbolPoly, j_max: usize) -> Complex64 {
    let alpha = params.alpha_scale;
    f.coefficients
        .iter()
        .filter(|(&(p, q), _)| p == q && (p as usize) <= j_max)
        .map(|(&(p, _), &c)| {
            let pf = p as f64;
            c * (pf * (4.0 / (alpha * alpha)).ln() + 2.0 * ln_gamma(pf + 1.0)).exp()
        })
        .sum()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

/// Residuals of the truncated expansion against the moment series and their fitted decay.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub order: usize,
    pub z: Complex64,
    pub alphas: Vec<f64>,
    pub residuals: Vec<f64>,
    pub slope: f64,
    pub target_slope: f64,
    pub pass: bool,
}

/// Slope tolerance of the asymptotic fit.
pub const FIT_SLOPE_TOL: f64 = 0.15;

/// `|B_α f(z) − Σ_{m≤M} α^{−m} Q_m f(z)|` for each `α`.
pub fn expansion_residuals(f: &SymbolPoly, z: Complex64, m: usize, alphas: &[f64]) -> Result<Vec<f64>> {
    let q = q_series(m)?;
    alphas
        .iter()
        .map(|&alpha| {
            let params = QuantParams::from_alpha_scale(alpha)?;
            Ok((berezin_moment(&params, f, z) - q.eval_partial(f, z, 1.0 / alpha, m)?).norm())
        })
        .collect()
}

/// Fits `|B_α f(z) − Σ_{m≤M} α^{−m} Q_m f(z)|` against `α`; the slope should be `−(M+1)`.
pub fn asymptotic_fit(f: &SymbolPoly, z: Complex64, m: usize, alpha_grid: &[f64]) -> Result<FitReport> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("the expansion in α⁻¹ holds only for z ≠ 0".into()));
    }
    if alpha_grid.len() < 4 || alpha_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("alpha grid must be increasing with at least 4 points"));
    }
    let residuals = expansion_residuals(f, z, m, alpha_grid)?;
    if residuals.iter().any(|&r| !(r > 0.0)) {
        return Err(Error::NonConvergence { what: "asymptotic fit (zero or undefined residual)".into(), achieved: 0.0, requested: 0.0 });
    }
    let slope = log_log_slope(alpha_grid, &residuals);
    let target_slope = -(m as f64 + 1.0);
    Ok(FitReport { order: m, z, alphas: alpha_grid.to_vec(), residuals, slope, target_slope, pass: (slope - target_slope).abs() <= FIT_SLOPE_TOL })
}

/// Estimate of `Q_m f(z)` from `α^m (B_α f − Σ_{k<m} α^{−k} Q_k f)`, extrapolated linearly in `1/α`.
pub fn numeric_q_coefficient(series: &FormalOpSeries, f: &SymbolPoly, z: Complex64, m: usize, alphas: (f64, f64)) -> Result<Complex64> {
    let est = |alpha: f64| -> Result<Complex64> {
        let params = QuantParams::from_alpha_scale(alpha)?;
        let b = berezin_moment(&params, f, z);
        let lower = if m == 0 { Complex64::new(0.0, 0.0) } else { series.eval_partial(f, z, 1.0 / alpha, m - 1)? };
        Ok((b - lower) * alpha.powi(m as i32))
    };
    let (a1, a2) = alphas;
    let (e1, e2) = (est(a1)?, est(a2)?);
    // Linear in h = 1/α through (h1, e1), (h2, e2), evaluated at h = 0.
    let (h1, h2) = (1.0 / a1, 1.0 / a2);
    Ok((e2 * h1 - e1 * h2) / (h1 - h2))
}

/// The `z ≠ 0` expansion near the origin against the numeric transform and the origin formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StokesReport {
    pub alpha: f64,
    pub z_small: Complex64,
    pub numeric_small: Complex64,
    pub expansion_small: Complex64,
    pub numeric_origin: Complex64,
    pub origin_formula: Complex64,
}

impl StokesReport {
    pub fn expansion_gap(&self) -> f64 {
        (self.expansion_small - self.numeric_small).norm()
    }

    pub fn origin_gap(&self) -> f64 {
        (self.origin_formula - self.numeric_origin).norm()
    }
}

pub fn stokes_demo(f: &SymbolPoly, alpha: f64, z_small: Complex64, m: usize) -> Result<StokesReport> {
    let params = QuantParams::from_alpha_scale(alpha)?;
    let q = q_series(m)?;
    Ok(StokesReport {
        alpha,
        z_small,
        numeric_small: berezin_moment(&params, f, z_small),
        expansion_small: q.eval_partial(f, z_small, 1.0 / alpha, m)?,
        numeric_origin: berezin_moment(&params, f, Complex64::new(0.0, 0.0)),
        origin_formula: berezin_origin(&params, f, f.degree() as usize),
    })
}

/// Exact and numeric checks of `I_0(λ) √(2πλ) e^{−λ} ~ Σ c_m λ^{−m}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct I0Report {
    pub coefficients: Vec<f64>,
    /// `2√2 R_m(1) = c_m` exactly, per `m`.
    pub symbolic_match: Vec<bool>,
    pub lambdas: Vec<f64>,
    pub residuals: Vec<f64>,
    pub slope: f64,
}

pub fn i0_asymptotic_check(m: usize, lambda_grid: &[f64]) -> Result<I0Report> {
    if lambda_grid.iter().any(|&l| !(10.0..=200.0).contains(&l)) {
        return Err(invalid("λ grid must lie in [10, 200]"));
    }
    let c = i0_coefficients(m);
    let symbolic_match = (0..=m)
        .map(|k| Ok(r_operator_scaled(k)?.apply_to_one() == DiffOpPoly::scalar(c[k].clone())))
        .collect::<Result<Vec<_>>>()?;
    let cf: Vec<f64> = c.iter().map(rat_to_f64).collect();
    let mut residuals = Vec::with_capacity(lambda_grid.len());
    for &l in lambda_grid {
        let lhs = bessel_i_scaled(0.0, l)? * (2.0 * std::f64::consts::PI * l).sqrt();
        let rhs: f64 = cf.iter().enumerate().map(|(k, v)| v * l.powi(-(k as i32))).sum();
        residuals.push((lhs - rhs).abs());
    }
    let slope = if lambda_grid.len() >= 2 && residuals.iter().all(|&r| r > 0.0) {
        log_log_slope(lambda_grid, &residuals)
    } else {
        f64::NAN
    };
    Ok(I0Report { coefficients: cf, symbolic_match, lambdas: lambda_grid.to_vec(), residuals, slope })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64, y: f64) -> Complex64 {
        Complex64::new(x, y)
    }

    #[test]
    fn constant_and_holomorphic() {
        let p = QuantParams::new(0.5).unwrap();
        for z in [c(0.0, 0.0), c(1.0, 0.0), c(-0.4, 2.0)] {
            assert!((berezin_moment(&p, &SymbolPoly::constant(1.0), z) - 1.0).norm() < 1e-13);
        }
        let w = SymbolPoly::monomial(1, 0, c(1.0, 0.0));
        assert!((berezin_moment(&p, &w, c(1.0, 0.0)) - 1.0).norm() < 1e-13);
        let w3 = SymbolPoly::monomial(3, 0, c(1.0, 0.0));
        let z = c(0.7, -1.1);
        assert!((berezin_moment(&p, &w3, z) - z.powu(3)).norm() < 1e-12);
    }

    #[test]
    fn origin_values() {
        let p = QuantParams::new(0.5).unwrap();
        let f = SymbolPoly::monomial(1, 1, c(1.0, 0.0));
        assert!((berezin_moment(&p, &f, c(0.0, 0.0)).re - 0.5).abs() < 1e-14);
        assert!((berezin_origin(&p, &f, 4).re - 0.5).abs() < 1e-14);
        let g = SymbolPoly::parse("1:2,2:2:0.3").unwrap();
        let p = QuantParams::new(0.7).unwrap();
        assert!((berezin_origin(&p, &g, 4) - berezin_moment(&p, &g, c(0.0, 0.0))).norm() < 1e-13);
    }

    #[test]
    fn paths_agree() {
        let p = QuantParams::new(0.6).unwrap();
        let f = SymbolPoly::parse("1:1,2:1:0.5:-0.2").unwrap();
        for z in [c(0.0, 0.0), c(0.8, 0.3), c(-1.0, 1.0)] {
            let v = berezin_numeric(&p, &f, z, 1e-10).unwrap();
            assert!((v.moment - v.quadrature).norm() < 1e-8 * v.moment.norm().max(1.0), "{z}: {v:?}");
        }
    }

    #[test]
    fn q2_matches_numeric() {
        let q = q_series(3).unwrap();
        for (spec, z) in [("1:1", c(1.0, 0.0)), ("2:1", c(1.0, 0.0)), ("1:1", c(1.0, 1.0))] {
            let f = SymbolPoly::parse(spec).unwrap();
            let exact = q.coeffs[2].eval(&f, z).unwrap();
            let num = numeric_q_coefficient(&q, &f, z, 2, (400.0, 800.0)).unwrap();
            assert!((exact - num).norm() < 0.01 * exact.norm(), "{spec} {z}: {exact} vs {num}");
        }
    }

    #[test]
    fn fit_slopes() {
        let grid = [40.0, 80.0, 160.0, 320.0];
        for spec in ["1:1", "2:1"] {
            let f = SymbolPoly::parse(spec).unwrap();
            for z in [c(1.0, 0.0), c(1.0, 1.0)] {
                for m in 0..=2 {
                    let rep = asymptotic_fit(&f, z, m, &grid).unwrap();
                    assert!(rep.pass, "{spec} {z} M={m}: slope {}", rep.slope);
                }
            }
        }
        assert!(asymptotic_fit(&SymbolPoly::constant(1.0), c(0.0, 0.0), 1, &grid).is_err());
    }

    #[test]
    fn i0_check() {
        let rep = i0_asymptotic_check(2, &[20.0, 40.0, 80.0, 160.0]).unwrap();
        assert!(rep.symbolic_match.iter().all(|&b| b));
        assert_eq!(rep.coefficients[..3], [1.0, 0.125, 9.0 / 128.0]);
        assert!((rep.slope + 3.0).abs() < 0.15);
    }
}
