//! Browser bindings: a Laguerre Poisson-kernel heatmap, one squeeze-operator column against its
//! closed form, and Berezin expansion residuals against the large parameter.
//!
//! Each exported function returns a flat `Float64Array`; the layout is stated on the function.

use lagfock::berezin::{expansion_residuals, SymbolPoly};
use lagfock::kernels::weighted_laguerre_kernel;
use lagfock::specfun::QuantParams;
use lagfock::squeeze::{squeeze_matrix, target_coeffs, SqueezeParams};
use num_complex::Complex64;
use wasm_bindgen::prelude::*;

/// Largest grid side accepted by [`kernel_heatmap`].
pub const MAX_GRID: usize = 400;
/// Largest truncation accepted by [`squeeze_column`].
pub const MAX_SQUEEZE_SIZE: usize = 160;

fn to_js(e: lagfock::Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}

/// Row-major `side×side` values of `e^{−(x+y)/2} L_ε(x,y)` on `[0, extent]²`, `x` along rows.
pub fn kernel_heatmap_values(eps: f64, side: usize, extent: f64) -> lagfock::Result<Vec<f64>> {
    if !(2..=MAX_GRID).contains(&side) || !(extent > 0.0 && extent.is_finite()) {
        return Err(lagfock::Error::InvalidParameter(format!("grid side must lie in 2..={MAX_GRID} and extent must be positive")));
    }
    let p = QuantParams::new(eps)?;
    let h = extent / (side - 1) as f64;
    let mut out = Vec::with_capacity(side * side);
    for i in 0..side {
        for j in 0..side {
            out.push(weighted_laguerre_kernel(&p, i as f64 * h, j as f64 * h)?);
        }
    }
    Ok(out)
}

/// `[U_ε e_n; E_{ε,n}]`: the first `size` coefficients of the squeezed basis vector, then the closed form.
pub fn squeeze_column_values(eps: f64, n: usize, size: usize) -> lagfock::Result<Vec<f64>> {
    if !(2..=MAX_SQUEEZE_SIZE).contains(&size) || n >= size / 2 {
        return Err(lagfock::Error::InvalidParameter(format!("need 2 <= size <= {MAX_SQUEEZE_SIZE} and n < size/2")));
    }
    let u = squeeze_matrix(SqueezeParams::new(eps)?, size)?;
    let mut out: Vec<f64> = u.matrix.column(n).iter().copied().collect();
    out.extend(target_coeffs(eps, n, size)?.iter());
    Ok(out)
}

/// `[α_0, r_0, α_1, r_1, ...]`: residual `|B_α f(z) − Σ_{m≤M} α^{−m} Q_m f(z)|` on a log grid of `points` values in `[α_lo, α_hi]`.
pub fn berezin_residual_values(symbol: &str, re: f64, im: f64, order: usize, alpha_lo: f64, alpha_hi: f64, points: usize) -> lagfock::Result<Vec<f64>> {
    if !(alpha_lo > 0.0 && alpha_hi > alpha_lo && alpha_hi.is_finite()) || !(2..=200).contains(&points) {
        return Err(lagfock::Error::InvalidParameter("need 0 < alpha_lo < alpha_hi and 2 <= points <= 200".into()));
    }
    let f = SymbolPoly::parse(symbol)?;
    let step = (alpha_hi / alpha_lo).ln() / (points - 1) as f64;
    let alphas: Vec<f64> = (0..points).map(|k| alpha_lo * (step * k as f64).exp()).collect();
    let res = expansion_residuals(&f, Complex64::new(re, im), order, &alphas)?;
    Ok(alphas.iter().zip(&res).flat_map(|(&a, &r)| [a, r]).collect())
}

#[wasm_bindgen]
pub fn kernel_heatmap(eps: f64, side: usize, extent: f64) -> Result<Vec<f64>, JsValue> {
    kernel_heatmap_values(eps, side, extent).map_err(to_js)
}

#[wasm_bindgen]
pub fn squeeze_column(eps: f64, n: usize, size: usize) -> Result<Vec<f64>, JsValue> {
    squeeze_column_values(eps, n, size).map_err(to_js)
}

#[wasm_bindgen]
pub fn berezin_residuals(symbol: &str, re: f64, im: f64, order: usize, alpha_lo: f64, alpha_hi: f64, points: usize) -> Result<Vec<f64>, JsValue> {
    berezin_residual_values(symbol, re, im, order, alpha_lo, alpha_hi, points).map_err(to_js)
}
