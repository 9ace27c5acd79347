//! The Laguerre Fock space: Bessel-K measure, monomial norms, orthogonality and the multiplication map.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::kernels::fock_kernel;
use crate::quadrature::{integrate_plane, integrate_plane_multi, PlaneIntegral, RadialDensity};
use crate::specfun::{bessel_k, ln_gamma, QuantParams};

/// Extra power of `ħ = 1−ε` in the monomial norms beyond `2j + α`.
///
/// `‖z^j‖² = (1−ε)^{2j+α+1} j! Γ(j+α+1) / ε^j`; the value is pinned by the moment,
/// quadrature and reproducing-kernel checks, which agree only for this offset.
pub const MONOMIAL_NORM_HBAR_OFFSET: i32 = 1;

/// The measure `dν_ε^{(α)} = (2ε^{1+α/2}/((1−ε)π)) |z|^α K_α(2√ε|z|/(1−ε)) dA`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FockMeasure {
    pub params: QuantParams,
    pub order: f64,
}

impl FockMeasure {
    pub fn new(params: QuantParams, order: f64) -> Result<Self> {
        if !(order > -0.5) || !order.is_finite() {
            return Err(Error::InvalidOrder(order));
        }
        Ok(Self { params, order })
    }

    pub fn prefactor(&self) -> f64 {
        let eps = self.params.epsilon;
        2.0 * eps.powf(1.0 + self.order / 2.0) / (self.params.hbar * PI)
    }

    /// Density as a function of `r = |z|`.
    pub fn radial(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        let k = bessel_k(self.order, self.params.bessel_scale() * r).unwrap_or(0.0);
        self.prefactor() * r.powf(self.order) * k
    }

    pub fn density(&self, z: Complex64) -> f64 {
        self.radial(z.norm())
    }

    /// `ln ‖z^j‖²`.
    pub fn ln_monomial_norm(&self, j: usize) -> f64 {
        let eps = self.params.epsilon;
        let jf = j as f64;
        (2.0 * jf + self.order + MONOMIAL_NORM_HBAR_OFFSET as f64) * self.params.hbar.ln()
            + ln_gamma(jf + 1.0)
            + ln_gamma(jf + self.order + 1.0)
            - jf * eps.ln()
    }

    pub fn monomial_norm(&self, j: usize) -> f64 {
        self.ln_monomial_norm(j).exp()
    }
}

pub fn measure_density(measure: &FockMeasure, z: Complex64) -> f64 {
    measure.density(z)
}

pub fn monomial_norm(measure: &FockMeasure, j: usize) -> f64 {
    measure.monomial_norm(j)
}

/// Table of `‖z^j‖²` for `j ≤ j_max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonomialNorms {
    pub params: QuantParams,
    pub order: f64,
    pub norms: Vec<f64>,
}

impl MonomialNorms {
    pub fn new(measure: &FockMeasure, j_max: usize) -> Self {
        Self {
            params: measure.params,
            order: measure.order,
            norms: (0..=j_max).map(|j| measure.monomial_norm(j)).collect(),
        }
    }
}

/// `∫ |z|^{2j} dν` by plane quadrature.
pub fn plane_monomial_norm(measure: &FockMeasure, j: usize, tol: f64) -> Result<PlaneIntegral> {
    let m = *measure;
    let profile = move |r: f64| m.radial(r);
    let d = RadialDensity::new(&profile, m.params.bessel_scale()).with_degree(2 * j as u32 + m.order.ceil().max(0.0) as u32);
    integrate_plane(&d, |w| Complex64::new(w.norm_sqr().powi(j as i32), 0.0), tol)
}

/// Closed-form diagonal `((1−ε)π/(2ε^{1+α/2})) Γ(n+α+1)/n! ε^{−n}` of the orthogonality matrix.
pub fn orthogonality_target(params: &QuantParams, order: f64, n: usize) -> f64 {
    let eps = params.epsilon;
    let nf = n as f64;
    let ln = (params.hbar * PI / 2.0).ln() - (1.0 + order / 2.0) * eps.ln() + ln_gamma(nf + order + 1.0)
        - ln_gamma(nf + 1.0)
        - nf * eps.ln();
    ln.exp()
}

/// `G_{nm} = ∫ L_n^α(z) conj(L_m^α(z)) e^{c(z+z̄)} |z|^α K_α(2√ε|z|/(1−ε)) dA(z)` for `n, m < size`.
pub fn orthogonality_matrix(params: &QuantParams, order: f64, size: usize, tol: f64) -> Result<DMatrix<Complex64>> {
    let measure = FockMeasure::new(*params, order)?;
    if size == 0 {
        return Err(invalid("matrix size must be positive"));
    }
    let b = params.bessel_scale();
    let c = params.c;
    let profile = move |r: f64| if r <= 0.0 { 0.0 } else { r.powf(order) * bessel_k(order, b * r).unwrap_or(0.0) };
    let degree = 2 * (size as u32 - 1) + order.ceil().max(0.0) as u32;
    let d = RadialDensity::new(&profile, b - 2.0 * c)
        .with_degree(degree)
        .with_angular(0.0, 3.0 * c);
    let _ = measure;
    let vals = integrate_plane_multi(
        &d,
        size * size,
        |w, buf| {
            let l = laguerre_values(order, size, w);
            let e = (2.0 * c * w.re).exp();
            for n in 0..size {
                for m in 0..size {
                    buf[n * size + m] = l[n] * l[m].conj() * e;
                }
            }
        },
        tol,
    )?;
    Ok(DMatrix::from_fn(size, size, |n, m| vals[n * size + m].value))
}

fn laguerre_values(order: f64, size: usize, x: Complex64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(size);
    out.push(Complex64::new(1.0, 0.0));
    if size > 1 {
        out.push(Complex64::new(1.0 + order, 0.0) - x);
    }
    for n in 1..size.saturating_sub(1) {
        let nf = n as f64;
        let next = ((2.0 * nf + 1.0 + order - x) * out[n] - (nf + order) * out[n - 1]) / (nf + 1.0);
        out.push(next);
    }
    out
}

/// Gram matrix in the Fock space of `ε^{n/2} √(n!/Γ(n+α+1)) e^{cz} L_n^α(z)`; the identity when the map is unitary.
pub fn ml_unitarity_gram(params: &QuantParams, order: f64, size: usize, tol: f64) -> Result<DMatrix<Complex64>> {
    let g = orthogonality_matrix(params, order, size, tol)?;
    let measure = FockMeasure::new(*params, order)?;
    let pref = measure.prefactor();
    let scale: Vec<f64> = (0..size)
        .map(|n| {
            let nf = n as f64;
            (0.5 * (nf * params.epsilon.ln() + ln_gamma(nf + 1.0) - ln_gamma(nf + order + 1.0))).exp()
        })
        .collect();
    Ok(DMatrix::from_fn(size, size, |n, m| g[(n, m)] * pref * scale[n] * scale[m]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Multiplication map `f ↦ e^{±cz} f` between the Laguerre space and the Fock space.
pub fn apply_ml<'a>(
    params: &QuantParams,
    f: impl Fn(Complex64) -> Complex64 + 'a,
    direction: Direction,
) -> Box<dyn Fn(Complex64) -> Complex64 + 'a> {
    let c = match direction {
        Direction::Forward => params.c,
        Direction::Inverse => -params.c,
    };
    Box::new(move |z| (c * z).exp() * f(z))
}

/// `|Σ_{j≤J} z^j w̄^j / ‖z^j‖² − K(z, w)|`.
pub fn rk_consistency(params: &QuantParams, order: f64, z: Complex64, w: Complex64, j_max: usize) -> Result<f64> {
    let measure = FockMeasure::new(*params, order)?;
    let u = z * w.conj();
    let mut term = Complex64::new(1.0 / measure.monomial_norm(0), 0.0);
    let mut sum = term;
    for j in 0..j_max {
        let jf = j as f64;
        term *= u * params.kernel_scale() / ((jf + 1.0) * (jf + 1.0 + order));
        sum += term;
    }
    Ok((sum - fock_kernel(params, order, z, w)?).norm())
}
