//! Truncated Toeplitz operators `T̃_f = ε^A M_f` in the Laguerre and Legendre bases.

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::quadrature::{gauss_rule, golub_welsch, jacobi_matrix, GolubWelsch};
use crate::specfun::{eval_poly_all_real, PolyFamily, QuantParams};

type Callable = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// Symbol of a Toeplitz operator.
#[derive(Clone)]
pub enum SymbolFn {
    /// Coefficients in ascending powers of `x`.
    Polynomial(Vec<Complex64>),
    /// Bounded function with a caller-certified `sup |f|`.
    Callable { f: Callable, sup_bound: f64 },
}

impl fmt::Debug for SymbolFn {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolFn::Polynomial(c) => fm.debug_tuple("Polynomial").field(c).finish(),
            SymbolFn::Callable { sup_bound, .. } => fm.debug_struct("Callable").field("sup_bound", sup_bound).finish(),
        }
    }
}

impl SymbolFn {
    pub fn polynomial(coeffs: &[f64]) -> Self {
        SymbolFn::Polynomial(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn callable(f: impl Fn(f64) -> Complex64 + Send + Sync + 'static, sup_bound: f64) -> Self {
        SymbolFn::Callable { f: Arc::new(f), sup_bound }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        match self {
            SymbolFn::Polynomial(c) => c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * x + a),
            SymbolFn::Callable { f, .. } => f(x),
        }
    }

    pub fn degree(&self) -> Option<usize> {
        match self {
            SymbolFn::Polynomial(c) => Some(c.iter().rposition(|a| *a != Complex64::new(0.0, 0.0)).unwrap_or(0)),
            SymbolFn::Callable { .. } => None,
        }
    }

    pub fn conj(&self) -> SymbolFn {
        match self {
            SymbolFn::Polynomial(c) => SymbolFn::Polynomial(c.iter().map(|a| a.conj()).collect()),
            SymbolFn::Callable { f, sup_bound } => {
                let f = f.clone();
                SymbolFn::Callable { f: Arc::new(move |x| f(x).conj()), sup_bound: *sup_bound }
            }
        }
    }

    /// Upper bound for `sup |f|` on the family's domain; infinite for non-constant polynomials on unbounded domains.
    pub fn sup_bound(&self, basis: PolyFamily) -> f64 {
        match self {
            SymbolFn::Callable { sup_bound, .. } => *sup_bound,
            SymbolFn::Polynomial(c) => match (basis, self.degree()) {
                (_, Some(0)) => c.first().map_or(0.0, |a| a.norm()),
                (PolyFamily::Legendre, _) => c.iter().map(|a| a.norm()).sum(),
                _ => f64::INFINITY,
            },
        }
    }
}

/// `N×N` matrix of an operator in the first `N` basis functions.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncOp {
    pub matrix: DMatrix<Complex64>,
    pub basis: PolyFamily,
    pub params: QuantParams,
    pub n: usize,
}

impl TruncOp {
    /// Spectral norm.
    pub fn op_norm(&self) -> f64 {
        spectral_norm(&self.matrix)
    }

    pub fn adjoint(&self) -> TruncOp {
        TruncOp { matrix: self.matrix.adjoint(), ..self.clone() }
    }
}

pub fn spectral_norm(m: &DMatrix<Complex64>) -> f64 {
    m.clone().svd(false, false).singular_values.iter().fold(0.0, |a: f64, &b| a.max(b))
}

fn check_basis(basis: PolyFamily) -> Result<()> {
    basis.validate()?;
    if matches!(basis, PolyFamily::Hermite) {
        return Err(Error::Unsupported("Toeplitz operators are built in the Laguerre and Legendre bases".into()));
    }
    Ok(())
}

/// Gram matrices of bounded symbols by Gauss quadrature with a fixed node set.
///
/// `G = V_N diag(f(x_i)) V_Nᵀ` where `V_N` holds the first `N` rows of the Jacobi eigenvectors,
/// so `‖G‖ ≤ max_i |f(x_i)|` holds exactly for the discrete matrix.
pub struct GramEngine {
    gw: GolubWelsch,
    n: usize,
}

impl GramEngine {
    pub fn new(basis: PolyFamily, n: usize, nodes: usize) -> Result<Self> {
        check_basis(basis)?;
        if nodes < n {
            return Err(Error::InsufficientDegree { required: 2 * n - 1, available: 2 * nodes - 1 });
        }
        Ok(Self { gw: golub_welsch(basis, nodes)?, n })
    }

    /// Default node count `2N + 32`.
    pub fn with_default_nodes(basis: PolyFamily, n: usize) -> Result<Self> {
        Self::new(basis, n, 2 * n + 32)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.gw.rule.nodes
    }

    pub fn gram(&self, f: &SymbolFn) -> DMatrix<Complex64> {
        let q = self.gw.rule.len();
        let vals: Vec<Complex64> = self.gw.rule.nodes.iter().map(|&x| f.eval(x)).collect();
        let v = self.gw.vectors.rows(0, self.n);
        let mut scaled = DMatrix::<Complex64>::zeros(self.n, q);
        for i in 0..q {
            for k in 0..self.n {
                scaled[(k, i)] = vals[i] * v[(k, i)];
            }
        }
        let vc = v.map(|x| Complex64::new(x, 0.0));
        scaled * vc.transpose()
    }

    /// `max_i |f(x_i)|` over the quadrature nodes.
    pub fn node_sup(&self, f: &SymbolFn) -> f64 {
        self.gw.rule.nodes.iter().map(|&x| f.eval(x).norm()).fold(0.0, f64::max)
    }
}

/// `G_{nm} = ⟨f b_m, b_n⟩` for `n, m < size`.
///
/// Polynomial symbols are exact: `f(J)` for the Jacobi matrix `J` of order `size + deg f`.
/// Bounded symbols use [`GramEngine`] with `2N + 32` nodes.
pub fn gram(f: &SymbolFn, basis: PolyFamily, size: usize) -> Result<DMatrix<Complex64>> {
    check_basis(basis)?;
    if size == 0 {
        return Err(invalid("basis size must be positive"));
    }
    match f {
        SymbolFn::Polynomial(c) => {
            let deg = f.degree().unwrap_or(0);
            let m = size + deg;
            let j = jacobi_matrix(basis, m).map(|x| Complex64::new(x, 0.0));
            let mut acc = DMatrix::<Complex64>::zeros(m, m);
            for &a in c[..=deg].iter().rev() {
                acc = &acc * &j;
                for i in 0..m {
                    acc[(i, i)] += a;
                }
            }
            Ok(acc.view((0, 0), (size, size)).into_owned())
        }
        SymbolFn::Callable { .. } => Ok(GramEngine::with_default_nodes(basis, size)?.gram(f)),
    }
}

/// Maximal entry change of a bounded-symbol Gram matrix between `2N+32` and `3N+48` nodes.
pub fn gram_quadrature_error(f: &SymbolFn, basis: PolyFamily, size: usize) -> Result<f64> {
    let a = GramEngine::new(basis, size, 2 * size + 32)?.gram(f);
    let b = GramEngine::new(basis, size, 3 * size + 48)?.gram(f);
    Ok((a - b).iter().fold(0.0, |m: f64, z| m.max(z.norm())))
}

fn eps_powers(params: &QuantParams, n: usize) -> Vec<f64> {
    (0..n).map(|k| params.epsilon.powi(k as i32)).collect()
}

/// `diag(εⁿ) · G`.
pub fn toeplitz_from_gram(params: &QuantParams, g: &DMatrix<Complex64>, basis: PolyFamily) -> TruncOp {
    let n = g.nrows();
    let pw = eps_powers(params, n);
    let mut m = g.clone();
    for (i, mut row) in m.row_iter_mut().enumerate() {
        row *= Complex64::new(pw[i], 0.0);
    }
    TruncOp { matrix: m, basis, params: *params, n }
}

pub fn toeplitz_matrix(params: &QuantParams, f: &SymbolFn, basis: PolyFamily, size: usize) -> Result<TruncOp> {
    Ok(toeplitz_from_gram(params, &gram(f, basis, size)?, basis))
}

/// A vector in one of the two representations on which `A` acts.
#[derive(Debug, Clone, PartialEq)]
pub enum AVector {
    /// Coefficients in the orthonormal basis; `A` is `diag(n)`.
    Coefficients(DVector<Complex64>),
    /// `u = e^{−x/2} p(x)` with `p` in ascending powers (order-0 Laguerre only).
    WeightedPolynomial(Vec<f64>),
}

/// Applies `A`. In x-space, `A(e^{−x/2}p) = e^{−x/2}(−x p'' + (x−1) p')`.
pub fn apply_a(basis: PolyFamily, u: &AVector) -> Result<AVector> {
    match u {
        AVector::Coefficients(c) => Ok(AVector::Coefficients(DVector::from_fn(c.len(), |n, _| {
            c[n] * basis.a_eigenvalue(n)
        }))),
        AVector::WeightedPolynomial(p) => {
            match basis {
                PolyFamily::Laguerre { order } if order == 0.0 => {}
                PolyFamily::Legendre => {
                    return Err(Error::Unsupported("A is defined spectrally in the Legendre basis".into()))
                }
                _ => return Err(Error::Unsupported("x-space A needs the order-0 Laguerre basis".into())),
            }
            let d1 = poly_derivative(p);
            let d2 = poly_derivative(&d1);
            let mut out = vec![0.0; p.len().max(1)];
            for (k, &a) in d2.iter().enumerate() {
                out[k + 1] -= a;
            }
            for (k, &a) in d1.iter().enumerate() {
                out[k + 1] += a;
                out[k] -= a;
            }
            Ok(AVector::WeightedPolynomial(out))
        }
    }
}

pub(crate) fn poly_derivative(p: &[f64]) -> Vec<f64> {
    p.iter().enumerate().skip(1).map(|(k, &a)| k as f64 * a).collect()
}

pub(crate) fn poly_eval(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

/// How the truncated expansion of `εⁿ` is formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExpansionVariable {
    /// `Σ_{k≤K} (n log ε)^k / k!`.
    LogEpsilon,
    /// `Σ_{k≤K} C(n,k) (−(1−ε))^k`.
    OneMinusEpsilon,
}

fn truncated_power(eps: f64, n: usize, k_max: usize, var: ExpansionVariable) -> f64 {
    match var {
        ExpansionVariable::LogEpsilon => {
            let l = n as f64 * eps.ln();
            let mut term = 1.0;
            let mut sum = 1.0;
            for k in 1..=k_max {
                term *= l / k as f64;
                sum += term;
            }
            sum
        }
        ExpansionVariable::OneMinusEpsilon => {
            let h = 1.0 - eps;
            let mut term = 1.0;
            let mut sum = 1.0;
            for k in 1..=k_max.min(n) {
                term *= -h * (n + 1 - k) as f64 / k as f64;
                sum += term;
            }
            sum
        }
    }
}

fn support_len(u: &DVector<Complex64>) -> usize {
    u.iter().rposition(|z| *z != Complex64::new(0.0, 0.0)).map_or(0, |i| i + 1)
}

/// `‖T̃_f u − Σ_{k≤K} (log ε)^k/k! A^k(f u)‖` for each ε, computed in coefficient space.
pub fn expansion_residual(
    params_list: &[QuantParams],
    f: &SymbolFn,
    u: &DVector<Complex64>,
    k_max: usize,
    basis: PolyFamily,
    var: ExpansionVariable,
) -> Result<Vec<f64>> {
    let deg = f.degree().ok_or_else(|| Error::Unsupported("expansion residuals need a polynomial symbol".into()))?;
    let m = support_len(u).max(1) + deg;
    let g = gram(f, basis, m)?;
    let mut uu = DVector::zeros(m);
    uu.rows_mut(0, u.len().min(m)).copy_from(&u.rows(0, u.len().min(m)));
    if support_len(u) > m {
        return Err(Error::Unsupported("vector support exceeds the truncation".into()));
    }
    let fu = g * uu;
    Ok(params_list
        .iter()
        .map(|p| {
            (0..m)
                .map(|n| (p.epsilon.powi(n as i32) - truncated_power(p.epsilon, n, k_max, var)) * fu[n])
                .map(|z| z.norm_sqr())
                .sum::<f64>()
                .sqrt()
        })
        .collect())
}

/// Relative gap between `T̃_f u` and the fully summed series `Σ_k (log ε)^k/k! A^k(f u)`.
pub fn spectral_identity_residual(params: &QuantParams, f: &SymbolFn, u: &DVector<Complex64>, basis: PolyFamily) -> Result<f64> {
    let deg = f.degree().ok_or_else(|| Error::Unsupported("spectral identity needs a polynomial symbol".into()))?;
    let m = support_len(u).max(1) + deg;
    let mut uu = DVector::zeros(m);
    uu.rows_mut(0, u.len().min(m)).copy_from(&u.rows(0, u.len().min(m)));
    let g = gram(f, basis, m)?;
    let lhs = toeplitz_from_gram(params, &g, basis).matrix * &uu;
    let mut term = AVector::Coefficients(g * &uu);
    let AVector::Coefficients(first) = &term else { unreachable!() };
    let mut sum = first.clone();
    let l = params.epsilon.ln();
    for k in 1..2000 {
        term = apply_a(basis, &term)?;
        let AVector::Coefficients(v) = &mut term else { unreachable!() };
        *v *= Complex64::new(l / k as f64, 0.0);
        sum += &*v;
        if v.norm() <= 1e-18 * sum.norm() {
            break;
        }
    }
    Ok((lhs.clone() - sum).norm() / lhs.norm().max(f64::MIN_POSITIVE))
}

/// Leading commutator data: `[T̃_f, T̃_g]/(1−ε)` extrapolated to `ε → 1`, against `s·(M_f A M_g − M_g A M_f)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CommutatorReport {
    pub extrapolated: DMatrix<Complex64>,
    /// `M_f A M_g − M_g A M_f` in the basis.
    pub bracket: DMatrix<Complex64>,
    /// Fitted sign `s ∈ {+1, −1}`.
    pub sign: i8,
    /// `max |C − s B| / max(|B|, 1e−9 max|B|)` over all entries.
    pub max_rel_deviation: f64,
    pub h_nodes: Vec<f64>,
}

/// `max |a − b| / max(|b|, 1e−9 max|b|)` over all entries.
pub fn entrywise_deviation(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    let bmax = b.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    a.iter().zip(b.iter()).fold(0.0f64, |w, (x, y)| w.max((x - y).norm() / y.norm().max(1e-9 * bmax)))
}

/// Lagrange extrapolation of samples at `h_i` to `h = 0`.
pub fn extrapolate_to_zero(h: &[f64], values: &[DMatrix<Complex64>]) -> DMatrix<Complex64> {
    let mut out = DMatrix::zeros(values[0].nrows(), values[0].ncols());
    for (i, v) in values.iter().enumerate() {
        let mut w = 1.0;
        for (j, &hj) in h.iter().enumerate() {
            if j != i {
                w *= hj / (hj - h[i]);
            }
        }
        out += v * Complex64::new(w, 0.0);
    }
    out
}

pub fn commutator_leading(
    params_list: &[QuantParams],
    f: &SymbolFn,
    g: &SymbolFn,
    basis: PolyFamily,
    size: usize,
) -> Result<CommutatorReport> {
    let (df, dg) = match (f.degree(), g.degree()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::Unsupported("commutator expansion needs polynomial symbols".into())),
    };
    if params_list.len() < 2 {
        return Err(invalid("Richardson extrapolation needs at least two values of ε"));
    }
    // Bandwidths make the N×N block of every product exact at this size.
    let m = size + df + dg;
    let gf = gram(f, basis, m)?;
    let gg = gram(g, basis, m)?;
    let mut samples = Vec::with_capacity(params_list.len());
    let mut h_nodes = Vec::with_capacity(params_list.len());
    for p in params_list {
        let tf = toeplitz_from_gram(p, &gf, basis).matrix;
        let tg = toeplitz_from_gram(p, &gg, basis).matrix;
        let c = (&tf * &tg - &tg * &tf) / Complex64::new(p.hbar, 0.0);
        samples.push(c.view((0, 0), (size, size)).into_owned());
        h_nodes.push(p.hbar);
    }
    let extrapolated = extrapolate_to_zero(&h_nodes, &samples);
    let lam = DMatrix::from_fn(m, m, |i, j| Complex64::new(if i == j { basis.a_eigenvalue(i) } else { 0.0 }, 0.0));
    let b_full = &gf * &lam * &gg - &gg * &lam * &gf;
    let bracket = b_full.view((0, 0), (size, size)).into_owned();
    let overlap: f64 = extrapolated.iter().zip(bracket.iter()).map(|(a, b)| (a * b.conj()).re).sum();
    let sign: i8 = if overlap >= 0.0 { 1 } else { -1 };
    let worst = entrywise_deviation(&extrapolated, &(&bracket * Complex64::new(sign as f64, 0.0)));
    Ok(CommutatorReport { extrapolated, bracket, sign, max_rel_deviation: worst, h_nodes })
}

/// `D u = (xW)' u + 2xW u'` with `W = f g' − g f'`, as a matrix in the order-0 Laguerre basis.
///
/// Built in x-space from Laguerre values and derivatives and projected with Gauss–Laguerre quadrature.
pub fn laguerre_bracket_xspace(f: &[f64], g: &[f64], size: usize) -> Result<DMatrix<f64>> {
    let w = poly_sub(&poly_mul(f, &poly_derivative(g)), &poly_mul(g, &poly_derivative(f)));
    let xw = poly_mul(&[0.0, 1.0], &w);
    let dxw = poly_derivative(&xw);
    let nodes = size + xw.len() / 2 + 2;
    let rule = gauss_rule(PolyFamily::Laguerre { order: 0.0 }, nodes)?;
    let lag = PolyFamily::Laguerre { order: 0.0 };
    let lag1 = PolyFamily::Laguerre { order: 1.0 };
    let mut out = DMatrix::zeros(size, size);
    for &x in &rule.nodes {
        // Christoffel weight 1/Σ_{k<n} L_k(x)²: relatively accurate where the eigenvector weight is not.
        let all = eval_poly_all_real(lag, nodes - 1, x)?;
        let wt = 1.0 / all.iter().map(|v| v * v).sum::<f64>();
        let l = &all[..=size.min(nodes - 1)];
        let l1 = eval_poly_all_real(lag1, size, x)?;
        let (a, b) = (poly_eval(&dxw, x), 2.0 * poly_eval(&xw, x));
        for mcol in 0..size {
            // L_m' = −L_{m−1}^{(1)}.
            let dl = if mcol == 0 { 0.0 } else { -l1[mcol - 1] };
            let q = a * l[mcol] + b * (dl - 0.5 * l[mcol]);
            for k in 0..size {
                out[(k, mcol)] += wt * q * l[k];
            }
        }
    }
    Ok(out)
}

pub(crate) fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len().max(b.len());
    (0..n).map(|k| a.get(k).copied().unwrap_or(0.0) - b.get(k).copied().unwrap_or(0.0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn lag() -> PolyFamily {
        PolyFamily::Laguerre { order: 0.0 }
    }

    fn unit(n: usize, k: usize) -> DVector<Complex64> {
        DVector::from_fn(n, |i, _| Complex64::new(if i == k { 1.0 } else { 0.0 }, 0.0))
    }

    #[test]
    fn gram_of_one_and_x() {
        let g = gram(&SymbolFn::polynomial(&[1.0]), lag(), 6).unwrap();
        assert!((g - DMatrix::identity(6, 6)).norm() < 1e-14);
        let g = gram(&SymbolFn::polynomial(&[0.0, 1.0]), lag(), 6).unwrap();
        for n in 0..6 {
            assert_relative_eq!(g[(n, n)].re, 2.0 * n as f64 + 1.0);
            if n + 1 < 6 {
                assert_relative_eq!(g[(n, n + 1)].re, -(n as f64 + 1.0));
            }
        }
        let g = gram(&SymbolFn::polynomial(&[0.0, 1.0]), PolyFamily::Legendre, 6).unwrap();
        assert!((0..6).all(|n| g[(n, n)].norm() < 1e-15));
    }

    #[test]
    fn polynomial_gram_matches_quadrature() {
        let f = SymbolFn::polynomial(&[0.5, -1.0, 0.25, 0.1]);
        for basis in [lag(), PolyFamily::Legendre, PolyFamily::Laguerre { order: 1.5 }] {
            let exact = gram(&f, basis, 8).unwrap();
            let quad = GramEngine::new(basis, 8, 20).unwrap().gram(&f);
            assert!((exact - quad).norm() < 1e-9, "{basis:?}");
        }
    }

    #[test]
    fn toeplitz_of_one_is_eps_power() {
        let p = QuantParams::new(0.7).unwrap();
        let t = toeplitz_matrix(&p, &SymbolFn::polynomial(&[1.0]), lag(), 5).unwrap();
        for n in 0..5 {
            assert_relative_eq!(t.matrix[(n, n)].re, 0.7f64.powi(n as i32), max_relative = 1e-14);
        }
    }

    #[test]
    fn contraction_for_bounded_symbol() {
        let f = SymbolFn::callable(|x| Complex64::new(x.sin() / (1.0 + x), 0.0), 1.0);
        let engine = GramEngine::with_default_nodes(lag(), 200).unwrap();
        let sup = (0..200_000).map(|i| { let x = i as f64 * 0.001; (x.sin() / (1.0 + x)).abs() }).fold(0.0, f64::max);
        let p = QuantParams::new(0.9).unwrap();
        let t = toeplitz_from_gram(&p, &engine.gram(&f), lag());
        assert!(t.op_norm() <= sup);
    }

    #[test]
    fn adjoint_is_conjugate_symbol() {
        let p = QuantParams::new(0.6).unwrap();
        let f = SymbolFn::Polynomial(vec![Complex64::new(0.0, 1.0), Complex64::new(0.5, -0.2)]);
        let t = toeplitz_matrix(&p, &f, lag(), 7).unwrap();
        let tc = toeplitz_matrix(&p, &f.conj(), lag(), 7).unwrap();
        // The Gram matrix is Hermitian in f ↦ f̄; ε^A sits on the left, so compare G parts.
        let g = gram(&f, lag(), 7).unwrap();
        let gc = gram(&f.conj(), lag(), 7).unwrap();
        assert!((g.adjoint() - gc).norm() < 1e-13);
        assert_eq!(t.n, tc.n);
    }

    #[test]
    fn a_in_x_space() {
        let AVector::WeightedPolynomial(a0) = apply_a(lag(), &AVector::WeightedPolynomial(vec![1.0])).unwrap() else { panic!() };
        assert!(a0.iter().all(|&c| c == 0.0));
        // L_3 = 1 − 3x + 3x²/2 − x³/6.
        let l3 = vec![1.0, -3.0, 1.5, -1.0 / 6.0];
        let AVector::WeightedPolynomial(a3) = apply_a(lag(), &AVector::WeightedPolynomial(l3.clone())).unwrap() else { panic!() };
        for i in 0..50 {
            let x = 0.2 * i as f64;
            let w = (-x / 2.0).exp();
            assert!((w * poly_eval(&a3, x) - 3.0 * w * poly_eval(&l3, x)).abs() < 1e-9);
        }
        let AVector::Coefficients(c) = apply_a(PolyFamily::Legendre, &AVector::Coefficients(unit(8, 5))).unwrap() else { panic!() };
        assert_eq!(c[5].re, 5.0);
        assert!(apply_a(PolyFamily::Legendre, &AVector::WeightedPolynomial(vec![1.0])).is_err());
    }

    #[test]
    fn residuals() {
        let ps: Vec<_> = [0.9, 0.95].iter().map(|&e| QuantParams::new(e).unwrap()).collect();
        let r = expansion_residual(&ps, &SymbolFn::polynomial(&[1.0]), &unit(1, 0), 0, lag(), ExpansionVariable::LogEpsilon).unwrap();
        assert!(r.iter().all(|&v| v == 0.0));
        let p = QuantParams::new(0.93).unwrap();
        let e = spectral_identity_residual(&p, &SymbolFn::polynomial(&[0.0, 1.0, 0.3]), &unit(3, 1), lag()).unwrap();
        assert!(e < 1e-12);
    }

    #[test]
    fn commutator_trivial_and_antisymmetric() {
        let ps: Vec<_> = [0.99, 0.995, 0.9975].iter().map(|&e| QuantParams::new(e).unwrap()).collect();
        let f = SymbolFn::polynomial(&[0.0, 1.0]);
        let g = SymbolFn::polynomial(&[0.0, 0.0, 1.0]);
        let same = commutator_leading(&ps, &f, &f, lag(), 10).unwrap();
        assert!(same.extrapolated.norm() < 1e-12);
        let a = commutator_leading(&ps, &f, &g, lag(), 10).unwrap();
        let b = commutator_leading(&ps, &g, &f, lag(), 10).unwrap();
        assert!((&a.extrapolated + &b.extrapolated).norm() < 1e-9 * a.extrapolated.norm());
    }

    #[test]
    fn x_space_bracket_matches_composition() {
        let f = [0.0, 1.0];
        let g = [0.0, 0.0, 1.0];
        let d = laguerre_bracket_xspace(&f, &g, 12).unwrap();
        let ps: Vec<_> = [0.996, 0.998, 0.999].iter().map(|&e| QuantParams::new(e).unwrap()).collect();
        let rep = commutator_leading(&ps, &SymbolFn::polynomial(&f), &SymbolFn::polynomial(&g), lag(), 12).unwrap();
        for i in 0..12 {
            for j in 0..12 {
                assert!((d[(i, j)] + rep.bracket[(i, j)].re).abs() < 1e-8 * (1.0 + d[(i, j)].abs()), "{i},{j}");
            }
        }
    }
}
