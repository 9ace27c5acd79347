//! Verification suites and asymptotic-fit tables, each producing report rows.
//!
//! Every suite is deterministic: random inputs come from fixed ChaCha seeds and rows are sorted
//! on output, so identical configurations give identical reports.

use std::f64::consts::PI;

use nalgebra::DVector;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::berezin::{
    antisymmetrized_c1, asymptotic_fit, berezin_moment, berezin_origin, berezin_quadrature, c_series,
    correspondence_constant, expansion_residuals, flat_antisymmetrized_c1, i0_asymptotic_check, i0_coefficients,
    log_log_slope, metric_constant, numeric_q_coefficient, q_series, r_operator_scaled, star_coefficient,
    stokes_demo, BiDiffOp, DiffOpPoly, SymbolPoly,
};
use crate::convergence::{
    canonical_sequences, classify, diagonal_convergence, ellipse_contains, hermite_envelope, kernel_partial_sum,
    laguerre_envelope, legendre_radius, legendre_radius_estimate, nonextension_witness, partial_sum_evidence,
    CoeffSeq, Truth, ENVELOPE_FIT_END,
};
use crate::error::{invalid, Result};
use crate::fock::{monomial_norm, orthogonality_matrix, orthogonality_target, plane_monomial_norm, FockMeasure, MONOMIAL_NORM_HBAR_OFFSET};
use crate::kernels::{
    fock_kernel, hermite_kernel_series, laguerre_kernel_closed, laguerre_kernel_series, legendre_f4_sum,
    legendre_kernel_series, legendre_series_converges,
};
use crate::quadrature::radial_k_moment;
use crate::report::{Check, Provenance, ReportRow};
use crate::specfun::{eval_poly_all_real, gamma, hermite_normalized_all, PolyFamily, QuantParams};
use crate::squeeze::{eigenrelation_residual, squeeze_column_deviation_truncated, squeeze_column_deviations, squeeze_matrix, SqueezeParams};
use crate::toeplitz::{
    commutator_leading, entrywise_deviation, expansion_residual, laguerre_bracket_xspace, spectral_identity_residual,
    ExpansionVariable, GramEngine, SymbolFn,
};

use Provenance::{Derived, Paper, Trivial};

/// Verification suites; the `k`-th entry covers acceptance criterion `k` for `k ≤ 12`.
pub const SUITES: &[&str] = &[
    "moments",
    "orthogonality",
    "normalization",
    "kernels",
    "toeplitz-contraction",
    "spectral",
    "commutator",
    "squeeze",
    "berezin",
    "correspondence",
    "legendre",
    "classifiers",
    "fock",
];

/// Tables of asymptotic fits.
pub const TABLES: &[&str] = &["berezin-slopes", "expansion-slopes"];

/// Suite covering acceptance criterion `k` (1-based).
pub fn criterion_suite(k: usize) -> Option<&'static str> {
    (1..=12).contains(&k).then(|| SUITES[k - 1])
}

/// Optional overrides; `None` selects each suite's own defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SuiteConfig {
    pub eps: Option<Vec<f64>>,
    pub order: Option<f64>,
    pub n: Option<usize>,
    pub m: Option<usize>,
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(list) = &self.eps {
            if list.is_empty() {
                return Err(invalid("epsilon list is empty"));
            }
            for &e in list {
                QuantParams::new(e)?;
            }
        }
        if let Some(a) = self.order {
            if !(a > -0.5 && a.is_finite()) {
                return Err(crate::Error::InvalidOrder(a));
            }
        }
        if let Some(n) = self.n {
            if n < 2 {
                return Err(invalid(format!("truncation N must be at least 2, got {n}")));
            }
        }
        Ok(())
    }

    fn eps_or(&self, default: &[f64]) -> Vec<f64> {
        self.eps.clone().unwrap_or_else(|| default.to_vec())
    }

    fn orders_or(&self, default: &[f64]) -> Vec<f64> {
        self.order.map(|a| vec![a]).unwrap_or_else(|| default.to_vec())
    }
}

/// Runs one suite, or every suite for `"all"`.
pub fn run_suite(id: &str, cfg: &SuiteConfig) -> Result<Vec<ReportRow>> {
    cfg.validate()?;
    match id {
        "all" => run_all(cfg),
        "moments" => moments(cfg),
        "orthogonality" => orthogonality(cfg),
        "normalization" => normalization(cfg),
        "kernels" => kernels(cfg),
        "toeplitz-contraction" => toeplitz_contraction(cfg),
        "spectral" => spectral(cfg),
        "commutator" => commutator(cfg),
        "squeeze" => squeeze(cfg),
        "berezin" => berezin(cfg),
        "correspondence" => correspondence(cfg),
        "legendre" => legendre(cfg),
        "classifiers" => classifiers(cfg),
        "fock" => fock(cfg),
        _ => Err(invalid(format!("unknown suite `{id}`; expected one of {} or all", SUITES.join(", ")))),
    }
}

/// Suites run on separate threads; the report is sorted on output, so order is irrelevant.
fn run_all(cfg: &SuiteConfig) -> Result<Vec<ReportRow>> {
    let results: Vec<Result<Vec<ReportRow>>> = std::thread::scope(|s| {
        let handles: Vec<_> = SUITES.iter().map(|id| s.spawn(move || run_suite(id, cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    let mut rows = Vec::new();
    for r in results {
        rows.extend(r?);
    }
    Ok(rows)
}

/// Builds one asymptotic-fit table.
pub fn run_table(id: &str, cfg: &SuiteConfig) -> Result<Vec<ReportRow>> {
    cfg.validate()?;
    match id {
        "berezin-slopes" => berezin_slopes_table(cfg),
        "expansion-slopes" => expansion_slopes_table(cfg),
        _ => Err(invalid(format!("unknown table `{id}`; expected one of {}", TABLES.join(", ")))),
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn fmt_z(z: Complex64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

fn lag0() -> PolyFamily {
    PolyFamily::Laguerre { order: 0.0 }
}

fn unit(n: usize, k: usize) -> DVector<Complex64> {
    DVector::from_fn(n, |i, _| c(if i == k { 1.0 } else { 0.0 }, 0.0))
}

/// Data row without a check: `computed ≤ +∞` always holds.
fn data_row(suite: &str, quantity: String, computed: f64, prov: Provenance) -> ReportRow {
    ReportRow::new(suite, quantity, computed, f64::INFINITY, prov, 0.0, Check::AtMost)
}

// ---------------------------------------------------------------------------------------------
// Criterion 1: radial moments.

/// Quadrature tolerance of the moment integrals.
const MOMENT_QUAD_TOL: f64 = 1e-12;

fn moments(_cfg: &SuiteConfig) -> Result<Vec<ReportRow>> {
    const S: &str = "moments";
    let mut rows = Vec::new();
    let mut fact = 1.0;
    for k in 0..=10usize {
        if k > 0 {
            fact *= k as f64;
        }
        let v = radial_k_moment(0.0, 2.0, k, MOMENT_QUAD_TOL)?.value;
        rows.push(ReportRow::new(S, format!("order=0 k={k:02} int 2t^k K_0(2sqrt t) dt vs k!^2"), v, fact * fact, Paper, 1e-8, Check::Relative));
    }
    for order in [0.5, 1.0, 2.5] {
        let mut fact = 1.0;
        for k in 0..=6usize {
            if k > 0 {
                fact *= k as f64;
            }
            let v = radial_k_moment(order, 2.0, k, MOMENT_QUAD_TOL)?.value;
            let target = fact * gamma(k as f64 + order + 1.0);
            rows.push(ReportRow::new(
                S,
                format!("order={order} k={k:02} int 2t^(k+a/2) K_a(2sqrt t) dt vs k! Gamma(k+a+1)"),
                v,
                target,
                Paper,
                1e-7,
                Check::Relative,
            ));
        }
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------------------------
// Criterion 2 and the `fock` suite: complex orthogonality.

/// Plane-quadrature tolerance, relative to `∫|integrand|`.
const ORTHO_QUAD_TOL: f64 = 1e-11;

fn orthogonality_rows(suite: &str, eps_list: &[f64], orders: &[f64], size: usize) -> Result<Vec<ReportRow>> {
    let mut rows = Vec::new();
    for &eps in eps_list {
        let params = QuantParams::new(eps)?;
        for &order in orders {
            let g = orthogonality_matrix(&params, order, size, ORTHO_QUAD_TOL)?;
            let prov = if order == 0.0 { Paper } else { Derived };
            let mut ln_sum = 0.0;
            for n in 0..size {
                // Order 0 uses the direct form π/(2c) ε^{−n}.
                let target = if order == 0.0 {
                    PI / (2.0 * params.c) * eps.powi(-(n as i32))
                } else {
                    orthogonality_target(&params, order, n)
                };
                rows.push(ReportRow::new(
                    suite,
                    format!("eps={eps} order={order} diagonal n={n}"),
                    g[(n, n)].re,
                    target,
                    prov,
                    1e-7,
                    Check::Relative,
                ));
                rows.push(ReportRow::new(
                    suite,
                    format!("eps={eps} order={order} diagonal n={n} imaginary part / real part"),
                    (g[(n, n)].im / g[(n, n)].re).abs(),
                    0.0,
                    Trivial,
                    1e-7,
                    Check::AtMost,
                ));
                ln_sum += g[(n, n)].re.abs().ln();
            }
            let geomean = (ln_sum / size as f64).exp();
            let off = (0..size)
                .flat_map(|i| (0..size).map(move |j| (i, j)))
                .filter(|(i, j)| i != j)
                .map(|(i, j)| g[(i, j)].norm())
                .fold(0.0, f64::max);
            rows.push(ReportRow::new(
                suite,
                format!("eps={eps} order={order} max off-diagonal / geometric mean of diagonal (N={size})"),
                off / geomean,
                0.0,
                prov,
                1e-7,
                Check::AtMost,
            ));
        }
    }
    Ok(rows)
}

fn orthogonality(cfg: &SuiteConfig) -> Result<Vec<ReportRow>> {
    orthogonality_rows("orthogonality", &cfg.eps_or(&[0.3, 0.6]), &cfg.orders_or(&[0.0, 1.0]), cfg.n.unwrap_or(8))
}

fn fock(cfg: &SuiteConfig) -> Result<Vec<ReportRow>> {
    const S: &str = "fock";
    let eps_list = cfg.eps_or(&[0.5]);
    let orders = cfg.orders_or(&[0.0]);
    let mut rows = orthogonality_rows(S, &eps_list, &orders, cfg.n.unwrap_or(4).min(8))?;
    for &eps in &eps_list {
        for &order in &orders {
            let measure = FockMeasure::new(QuantParams::new(eps)?, order)?;
            for j in 0..=4 {
                let quad = plane_monomial_norm(&measure, j, 1e-12)?.value.re;
                rows.push(ReportRow::new(
                    S,
                    format!("eps={eps} order={order} monomial norm j={j} closed form vs quadrature"),
                    monomial_norm(&measure, j),
                    quad,
                    Derived,
                    1e-9,
                    Check::Relative,
                ));
            }
        }
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------------------------
// Criterion 3: monomial norms three ways.

/// `1/‖z^j‖²` as the `j`-th Taylor coefficient of `z ↦ K(z, 1)`, by the trapezoid rule on `|z| = ρ`.
///
/// `ρ = max(j,1)²/a` puts the circle where term `j` of `ι_0(a z)` dominates, so cancellation is mild;
/// aliasing from terms `j ± 64` is far below double precision.
fn kernel_taylor_coefficient(params: &QuantParams, j: usize) -> Result<f64> {
    const POINTS: usize = 64;
    let rho = (j.max(1) as f64).powi(2) / params.kernel_scale();
    let mut acc = c(0.0, 0.0);
    for k in 0..POINTS {
        let t = 2.0 * PI * k as f64 / POINTS as f64;
        let z = Complex64::from_polar(rho, t);
        acc += fock_kernel(params, 0.0, z, c(1.0, 0.0))? * Complex64::from_polar(1.0, -(j as f64) * t);
    }
    Ok(acc.re / POINTS as f64 / rho.powi(j as i32))
}

fn normalization(cfg: &SuiteConfig) -> Result<Vec<ReportRow>> {
    const S: &str = "normalization";
    let mut rows = Vec::new();
    for eps in cfg.eps_or(&[0.4, 0.7]) {
        let params = QuantParams::new(eps)?;
        let measure = FockMeasure::new(params, 0.0)?;
        let ln_hbar = params.hbar.ln();
        let mut offsets = Vec::new();
        let mut printed_gap: f64 = f64::INFINITY;
        for j in 0..=8usize {
            let closed = monomial_norm(&measure, j);
            let quad = plane_monomial_norm(&measure, j, 1e-12)?.value.re;
            let rk = 1.0 / kernel_taylor_coefficient(&params, j)?;
            let q = |a: &str, b: &str| format!("eps={eps} j={j} monomial norm {a} vs {b}");
            rows.push(ReportRow::new(S, q("closed form", "quadrature"), closed, quad, Derived, 1e-9, Check::Relative));
            rows.push(ReportRow::new(S, q("closed form", "kernel coefficient"), closed, rk, Derived, 1e-9, Check::Relative));
            rows.push(ReportRow::new(S, q("quadrature", "kernel coefficient"), quad, rk, Derived, 1e-9, Check::Relative));
            // Offset implied by the quadrature value alone.
            let without = closed.ln() - MONOMIAL_NORM_HBAR_OFFSET as f64 * ln_hbar;
            offsets.push((quad.ln() - without) / ln_hbar);
            printed_gap = printed_gap.min((quad / without.exp() - 1.0).abs());
        }
        let fitted = offsets.iter().sum::<f64>() / offsets.len() as f64;
        rows.push(ReportRow::new(
            S,
            format!("eps={eps} fitted extra (1-eps) power in monomial norms (printed display: 0)"),
            fitted,
            1.0,
            Derived,
            1e-6,
            Check::Absolute,
        ));
        rows.push(ReportRow::flag(
            S,
            format!("eps={eps} norms without the extra (1-eps) factor rejected by quadrature"),
            printed_gap > 1e-3,
            Derived,
        ));
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------------------------
// Criterion 4: kernel series against closed forms.

fn kernels(cfg: &SuiteConfig) -> Result<Vec<ReportRow>> {
    const S: &str = "kernels";
    let mut rows = Vec::new();
    // First-quadrant points keep arg(x ȳ) in [−π/4, π/4], away from zeros of ι_α.
    let grid: Vec<Complex64> =
        (0..10).map(|k| Complex64::from_polar(0.3 + 0.3 * k as f64, PI / 4.0 * k as f64 / 9.0)).collect();
    for eps in cfg.eps_or(&[0.3, 0.5]) {
        let params = QuantParams::new(eps)?;
        for order in cfg.orders_or(&[0.0, 1.5]) {
            let mut worst: f64 = 0.0;
            for &x in &grid {
                for &y in &grid {
                    let closed = laguerre_kernel_closed(&params, order, x, y)?;
                    let series = laguerre_kernel_series(&params, order, x, y, 1e-14 * closed.norm())?.series_value;
                    worst = worst.max((series - closed).norm() / closed.norm());
                }
            }
            rows.push(ReportRow::new(
                S,
                format!("laguerre eps={eps} order={order} max relative series vs closed form (10x10 complex grid)"),
                worst,
                0.0,
                Paper,
                1e-9,
                Check::AtMost,
            ));
        }
        let mut worst: f64 = 0.0;
        let angles: Vec<f64> = (0..10).map(|i| (i as f64 + 0.5) * PI / 20.0).collect();
        for &phi in &angles {
            for &theta in &angles {
                let (x, y) = ((2.0 * phi).cos(), (2.0 * theta).cos());
                let closed = legendre_f4_sum(eps, phi, theta, 1e-15)?.0;
                let series = legendre_kernel_series(eps, c(x, 0.0), c(y, 0.0), 1e-15)?.series_value.re;
                worst = worst.max((series - closed).abs() / closed.abs());
            }
        }
        rows.push(ReportRow::new(
            S,
            format!("legendre eps={eps} max relative series vs F4 closed form (10x10 grid)"),
            worst,
            0.0,
            Paper,
            1e-8,
            Check::AtMost,
        ));
        rows.push(ReportRow::flag(
            S,
            format!("legendre eps={eps} printed prefactor (1-eps)/(2(1+eps)^2) confirmed"),
            worst <= 1e-8,
            Paper,
        ));
        // Mehler's formula for the orthonormal Hermite system.
        let mut worst: f64 = 0.0;
        for &x in &[-1.5, -0.3, 0.0, 0.8, 2.0] {
            for &y in &[-1.0, 0.0, 0.4, 1.7] {
                let series = hermite_kernel_series(eps, x, y, 1e-15)?.series_value.re;
                let mehler = (PI * (1.0 - eps * eps)).sqrt().recip()
                    * ((2.0 * eps * x * y - eps * eps * (x * x + y * y)) / (1.0 - eps * eps)).exp();
                worst = worst.max((series - mehler).abs() / mehler.abs());
            }
        }
        rows.push(ReportRow::new(
            S,
            format!("hermite eps={eps} max relative series vs Mehler form with 1/sqrt(pi)"),
            worst,
            0.0,
            Derived,
            1e-10,
            Check::AtMost,
        ));
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------------------------
// Criterion 5: contraction of truncated Toeplitz operators.

const CONTRACTION_SEED: u64 = 0x5eed_0005;
const CONTRACTION_SYMBOLS: usize = 20;

/// `f(x) = Σ_k a_k e^{iω_k x} / (1 + β_k x)`, bounded on `[0, ∞)` and on `[−1, 1]`.
#[derive(Debug, Clone)]
struct RandomSymbol {
    terms: Vec<(Complex64, f64, f64)>,
}

impl RandomSymbol {
    fn sample(rng: &mut ChaCha8Rng) -> Self {
        let terms = (0..3)
            .map(|_| {
                let a = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                (a, rng.gen_range(0.0..3.0), rng.gen_range(0.05..0.9))
            })
            .collect();
        Self { terms }
    }

    fn eval(&self, x: f64) -> Complex64 {
        self.terms.iter().map(|&(a, w, b)| a * Complex64::from_polar(1.0, w * x) / (1.0 + b * x)).sum()
    }

    /// Sampled supremum over a dense grid plus the quadrature nodes; never above the true supremum.
    fn sampled_sup(&self, basis: PolyFamily, nodes: &[f64]) -> f64 {
        let (lo, hi) = match basis {
            PolyFamily::Legendre => (-1.0, 1.0),
            _ => (0.0, nodes.iter().cloned().fold(0.0, f64::max) * 1.01),
        };
        let samples = 50_000;
        let grid = (0..=samples).map(|k| lo + (hi - lo) * k as f64 / samples as f64);
        grid.chain(nodes.iter().cloned()).map(|x| self.eval(x).norm()).fold(0.0, f64::max)
    }

    fn symbol(&self, sup: f64) -> SymbolFn {
        let s = self.clone();
        SymbolFn::callable(move |x| s.eval(x), sup)
    }
}

fn toeplitz_contraction(cfg: &SuiteConfig) -> Result<Vec<ReportRow>> {
    const S: &str = "toeplitz-contraction";
    let size = cfg.n.unwrap_or(200);
    let eps_list = cfg.eps_or(&[0.5, 0.9, 0.99]);
    let mut rng = ChaCha8Rng::seed_from_u64(CONTRACTION_SEED);
    let symbols: Vec<RandomSymbol> = (0..CONTRACTION_SYMBOLS).map(|_| RandomSymbol::sample(&mut rng)).collect();
    let mut rows = Vec::new();
    for basis in [lag0(), PolyFamily::Legendre] {
        let engine = GramEngine::with_default_nodes(basis, size)?;
        let grams: Vec<_> = symbols
            .iter()
            .map(|s| {
                let sup = s.sampled_sup(basis, engine.nodes());
                (engine.gram(&s.symbol(sup)), sup)
            })
            .collect();
        for &eps in &eps_list {
            let params = QuantParams::new(eps)?;
            let mut violations = 0usize;
            let mut worst: f64 = 0.0;
            for (g, sup) in &grams {
                let norm = crate::toeplitz::toeplitz_from_gram(&params, g, basis).op_norm();
                if norm > sup * (1.0 + 1e-12) {
                    violations += 1;
                }
                worst = worst.max(norm / sup);
            }
            let name = basis.name();
            rows.push(ReportRow::new(
                S,
                format!("{name} eps={eps} N={size} violations of norm <= sup|f| ({CONTRACTION_SYMBOLS} random symbols)"),
                violations as f64,
                0.0,
                Paper,
                0.0,
                Check::Absolute,
            ));
            rows.push(ReportRow::new(
                S,
                format!("{name} eps={eps} N={size} max norm / sup|f|"),
                worst,
                1.0,
                Paper,
                1e-12,
                Check::AtMost,
            ));
        }
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------------------------
// Criterion 6: spectral identity and truncated expansions.

const EXPANSION_EPS: [f64; 4] = [0.9, 0.95, 0.975, 0.9875];

fn var_name(v: ExpansionVariable) -> &'static str {
    match v {
        ExpansionVariable::LogEpsilon => "log-eps",
        ExpansionVariable::OneMinusEpsilon => "one-minus-eps",
    }
}

/// Residual slopes of the `K`-term expansion in `1−ε`, plus the residuals as data rows.
fn expansion_slope_rows(suite: &str, eps_list: &[f64], k_max: usize, with_data: bool) -> Result<Vec<ReportRow>> {
    let params: Vec<QuantParams> = eps_list.iter().map(|&e| QuantParams::new(e)).collect::<Result<_>>()?;
    let hs: Vec<f64> = params.iter().map(|p| p.hbar).collect();
    let f = SymbolFn::polynomial(&[0.0, 1.0]);
    let mut rows = Vec::new();
    for basis in [lag0(), PolyFamily::Legendre] {
        for (var, u, uname) in [(ExpansionVariable::LogEpsilon, unit(2, 1), "e_1"), (ExpansionVariable::OneMinusEpsilon, unit(4, 3), "e_3")] {
            for k in 0..=k_max {
                let res = expansion_residual(&params, &f, &u, k, basis, var)?;
                let tag = format!("{} {} f=x u={uname} K={k}", basis.name(), var_name(var));
                if with_data {
                    for (h, r) in hs.iter().zip(&res) {
                        rows.push(data_row(suite, format!("{tag} residual at 1-eps={h}"), *r, Derived));
                    }
                }
                rows.push(ReportRow::new(
                    suite,
                    format!("{tag} residual slope in 1-eps"),
                    log_log_slope(&hs, &res),
                    (k + 1) as f64,
                    Paper,
                    0.1,
                    Check::Absolute,
                ));
            }
        }
    }
    Ok(rows)
}

fn spectral(cfg: &SuiteConfig) -> Result<Vec<ReportRow>> {
    const S: &str = "spectral";
    let mut rows = Vec::new();
    let symbols: [(&str, Vec<f64>); 3] = [("x", vec![0.0, 1.0]), ("1+x^2", vec![1.0, 0.0, 1.0]), ("x^3-2x", vec![0.0, -2.0, 0.0, 1.0])];
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let vectors: [(&str, DVector<Complex64>); 2] = [("e_2", unit(4, 2)), ("(e_1+e_3)/sqrt2", (unit(4, 1) + unit(4, 3)) * c(s, 0.0))];
    for basis in [lag0(), PolyFamily::Legendre] {
        for eps in cfg.eps_or(&[0.5, 0.9, 0.95]) {
            let params = QuantParams::new(eps)?;
            for (fname, coeffs) in &symbols {
                for (uname, u) in &vectors {
                    let r = spectral_identity_residual(&params, &SymbolFn::polynomial(coeffs), u, basis)?;
                    rows.push(ReportRow::new(
                        S,
                        format!("{} eps={eps} f={fname} u={uname} relative spectral identity residual", basis.name()),
                        r,
                        0.0,
                        Paper,
                        1e-10,
                        Check::AtMost,
                    ));
                }
            }
        }
    }
    rows.extend(expansion_slope_rows(S, &EXPANSION_EPS, cfg.m.unwrap_or(2), false)?);
    Ok(rows)
}

// ---------------------------------------------------------------------------------------------
// Criterion 7: leading commutator term.

/// Values of `1−ε` for the extrapolation to `ε = 1`.
const COMMUTATOR_H: [f64; 3] = [0.004, 0.002, 0.001];

fn commutator(cfg: &SuiteConfig) -> Result<Vec<ReportRow>> {
    const S: &str = "commutator";
    let size = cfg.n.unwrap_or(60);
    let params: Vec<QuantParams> = COMMUTATOR_H.iter().map(|h| QuantParams::new(1.0 - h)).collect::<Result<_>>()?;
    let pairs: [(&str, Vec<f64>, &str, Vec<f64>); 2] =
        [("x", vec![0.0, 1.0], "x^2", vec![0.0, 0.0, 1.0]), ("1+x/2", vec![1.0, 0.5], "x^3/5-x", vec![0.0, -1.0, 0.0, 0.2])];
    let mut rows = Vec::new();
    for basis in [lag0(), PolyFamily::Legendre] {
        for (fname, f, gname, g) in &pairs {
            let rep = commutator_leading(&params, &SymbolFn::polynomial(f), &SymbolFn::polynomial(g), basis, size)?;
            let tag = format!("{} N={size} f={fname} g={gname}", basis.name());
            rows.push(ReportRow::new(
                S,
                format!("{tag} fitted sign s in lim [T_f,T_g]/(1-eps) = s(M_f A M_g - M_g A M_f) (printed form: +1)"),
                rep.sign as f64,
                -1.0,
                Derived,
                0.0,
                Check::Absolute,
            ));
            rows.push(ReportRow::new(
                S,
                format!("{tag} max entrywise relative deviation from s(M_f A M_g - M_g A M_f)"),
                rep.max_rel_deviation,
                0.0,
                Derived,
                0.02,
                Check::AtMost,
            ));
            if basis == lag0() {
                let d = laguerre_bracket_xspace(f, g, size)?.map(|v| c(v, 0.0));
                rows.push(ReportRow::new(
                    S,
                    format!("{tag} max entrywise relative deviation from (xW)'u + 2xWu', W = fg' - gf'"),
                    entrywise_deviation(&rep.extrapolated, &d),
                    0.0,
                    Derived,
                    0.02,
                    Check::AtMost,
                ));
            }
        }
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------------------------
// Criterion 8: squeeze operator.

fn squeeze(cfg: &SuiteConfig) -> Result<Vec<ReportRow>> {
    const S: &str = "squeeze";
    let size = cfg.n.unwrap_or(80);
    let mut rows = Vec::new();
    let columns: Vec<usize> = (0..=10).collect();
    for eps in cfg.eps_or(&[0.04, 0.25, 0.5]) {
        let devs = squeeze_column_deviations(eps, &columns, size)?;
        rows.push(ReportRow::new(
            S,
            format!("eps={eps} N={size} max over n<=10 of |U e_n - E_n|"),
            devs.iter().cloned().fold(0.0, f64::max),
            0.0,
            Paper,
            1e-6,
            Check::AtMost,
        ));
        // Informational: the plain NxN exponential reflects mass at the truncation edge.
        let plain = columns.iter().map(|&n| squeeze_column_deviation_truncated(eps, n, size)).collect::<Result<Vec<_>>>()?;
        rows.push(ReportRow::new(
            S,
            format!("eps={eps} N={size} max over n<=10 of |U e_n - E_n| with the plain NxN exponential (no width doubling)"),
            plain.iter().cloned().fold(0.0, f64::max),
            f64::INFINITY,
            Derived,
            0.0,
            Check::AtMost,
        ));
    }
    for n in 0..=6 {
        rows.push(ReportRow::new(
            S,
            format!("Q eigenrelation residual n={n} N=120 eigenvalue 2n+1"),
            eigenrelation_residual(n, 120)?,
            0.0,
            Paper,
            1e-7,
            Check::AtMost,
        ));
    }
    let (t1, t2) = (0.4, 0.7);
    let u = |t: f64| -> Result<_> { Ok(squeeze_matrix(SqueezeParams::from_theta(t)?, size)?.matrix) };
    let (a, b, ab) = (u(t1)?, u(t2)?, u(t1 + t2)?);
    let prod = &a * &b;
    let block = 20.min(size / 4).max(1);
    let gap = (0..block).flat_map(|i| (0..block).map(move |j| (i, j))).map(|(i, j)| (prod[(i, j)] - ab[(i, j)]).abs()).fold(0.0, f64::max);
    rows.push(ReportRow::new(
        S,
        format!("group law U(0.4)U(0.7) = U(1.1) on the leading {block}x{block} block"),
        gap,
        0.0,
        Trivial,
        1e-9,
        Check::AtMost,
    ));
    Ok(rows)
}

// ---------------------------------------------------------------------------------------------
// Criterion 9: Berezin transform expansion.

const BEREZIN_ALPHAS: [f64; 4] = [40.0, 80.0, 160.0, 320.0];
const TRIANGLE_SEED: u64 = 0x5eed_0009;

fn test_symbols() -> Vec<(&'static str, SymbolPoly)> {
    vec![("|w|^2", SymbolPoly::monomial(1, 1, c(1.0, 0.0))), ("w^2 conj(w)", SymbolPoly::monomial(2, 1, c(1.0, 0.0)))]
}

fn random_symbol(rng: &mut ChaCha8Rng) -> SymbolPoly {
    let mut f = SymbolPoly::default();
    for _ in 0..3 {
        f.add(rng.gen_range(0..=2), rng.gen_range(0..=2), c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    }
    f
}

fn berezin(cfg: &SuiteConfig) -> Result<Vec<ReportRow>> {
    const S: &str = "berezin";
    let mut rows = Vec::new();
    let q = q_series(3)?;
    rows.push(ReportRow::flag(S, "Q_0 = identity (exact rational)", q.coeffs[0] == DiffOpPoly::identity(), Paper));
    rows.push(ReportRow::flag(S, "Q_1 = |z| Laplacian (exact rational)", q.coeffs[1] == DiffOpPoly::laplacian().radial_shift(1), Paper));
    rows.push(ReportRow::flag(S, "Q_2 regular at z=0 (exact rational)", q.coeffs[2].regular_at_origin(), Derived));
    rows.push(ReportRow::flag(S, "Q_3 singular at z=0 (exact rational)", !q.coeffs[3].regular_at_origin(), Derived));
    let cm = i0_coefficients(4);
    for (m, cm) in cm.iter().enumerate() {
        let r1 = r_operator_scaled(m)?.apply_to_one();
        rows.push(ReportRow::flag(S, format!("2 sqrt2 R_{m}(1) = c_{m} (exact rational)"), r1 == DiffOpPoly::scalar(cm.clone()), Paper));
    }
    let r1 = r_operator_scaled(1)?;
    let r1_expected = DiffOpPoly::scalar(cm[1].clone()).add(&DiffOpPoly::laplacian().radial_shift(2));
    rows.push(ReportRow::flag(S, "2 sqrt2 R_1 = 1/8 + |z|^2 Laplacian (printed form: |z| Laplacian)", r1 == r1_expected, Derived));

    for m in 0..=2 {
        for (fname, f) in test_symbols() {
            for z in [c(1.0, 0.0), c(1.0, 1.0)] {
                let fit = asymptotic_fit(&f, z, m, &BEREZIN_ALPHAS)?;
                rows.push(ReportRow::new(
                    S,
                    format!("M={m} f={fname} z={} fitted residual slope in alpha", fmt_z(z)),
                    fit.slope,
                    -((m + 1) as f64),
                    Paper,
                    0.15,
                    Check::Absolute,
                ));
            }
        }
    }

    // Origin formula against plane quadrature.
    let origin_symbols = [
        ("|w|^2", SymbolPoly::monomial(1, 1, c(1.0, 0.0))),
        ("|w|^4+1/2", {
            let mut f = SymbolPoly::monomial(2, 2, c(1.0, 0.0));
            f.add(0, 0, c(0.5, 0.0));
            f
        }),
        ("w^2 conj(w)^2 - i w conj(w)", {
            let mut f = SymbolPoly::monomial(2, 2, c(1.0, 0.0));
            f.add(1, 1, c(0.0, -1.0));
            f
        }),
    ];
    let zero = c(0.0, 0.0);
    for eps in cfg.eps_or(&[0.5, 0.8]) {
        let params = QuantParams::new(eps)?;
        for (fname, f) in &origin_symbols {
            let quad = berezin_quadrature(&params, f, zero, 1e-12)?;
            let origin = berezin_origin(&params, f, f.degree() as usize);
            rows.push(ReportRow::new(
                S,
                format!("eps={eps} f={fname} origin formula vs quadrature at z=0 (relative)"),
                (origin - quad.value).norm() / quad.value.norm(),
                0.0,
                Paper,
                1e-7,
                Check::AtMost,
            ));
        }
    }

    // Numeric second-order coefficient.
    let q2 = q_series(2)?;
    for (fname, f) in [("|w|^4", SymbolPoly::monomial(2, 2, c(1.0, 0.0))), ("w^2 conj(w)", SymbolPoly::monomial(2, 1, c(1.0, 0.0)))] {
        for z in [c(1.0, 0.0), c(1.0, 1.0)] {
            let sym = q2.coeffs[2].eval(&f, z)?;
            let num = numeric_q_coefficient(&q2, &f, z, 2, (400.0, 800.0))?;
            rows.push(ReportRow::new(
                S,
                format!("f={fname} z={} Q_2 f symbolic vs extrapolated numeric (relative)", fmt_z(z)),
                (num - sym).norm() / sym.norm(),
                0.0,
                Derived,
                0.01,
                Check::AtMost,
            ));
        }
    }

    // Oracle triangle: moment expansion against plane quadrature.
    let mut rng = ChaCha8Rng::seed_from_u64(TRIANGLE_SEED);
    for case in 0..12 {
        let f = random_symbol(&mut rng);
        let z = Complex64::from_polar(rng.gen_range(0.1..1.5), rng.gen_range(0.0..2.0 * PI));
        let eps = rng.gen_range(0.2..0.8);
        let params = QuantParams::new(eps)?;
        let moment = berezin_moment(&params, &f, z);
        let quad = berezin_quadrature(&params, &f, z, 1e-12)?;
        rows.push(ReportRow::new(
            S,
            format!("oracle triangle case {case:02}: moment series vs quadrature, relative to int |f| dmu"),
            (moment - quad.value).norm() / quad.abs_scale,
            0.0,
            Derived,
            1e-8,
            Check::AtMost,
        ));
    }

    // Holomorphic symbols are fixed by the transform.
    let params = QuantParams::new(0.6)?;
    let f = SymbolPoly::monomial(3, 0, c(1.0, -0.5));
    let z = c(0.7, -0.4);
    rows.push(ReportRow::new(S, "B f = f for f holomorphic (relative)", (berezin_moment(&params, &f, z) - f.eval(z)).norm() / f.eval(z).norm(), 0.0, Trivial, 1e-12, Check::AtMost));

    let i0 = i0_asymptotic_check(3, &[10.0, 20.0, 40.0, 80.0, 160.0])?;
    rows.push(ReportRow::new(S, "I_0 asymptotic series through c_3: residual slope in lambda", i0.slope, -4.0, Derived, 0.15, Check::Absolute));

    let f4 = SymbolPoly::monomial(2, 2, c(1.0, 0.0));
    let stokes = stokes_demo(&f4, 100.0, c(0.01, 0.0), 3)?;
    let quad0 = berezin_quadrature(&QuantParams::from_alpha_scale(100.0)?, &f4, zero, 1e-12)?.value;
    rows.push(ReportRow::new(
        S,
        "|w|^4 alpha=100: origin formula vs plane quadrature at z=0 (relative)",
        (stokes.origin_formula - quad0).norm() / quad0.norm(),
        0.0,
        Derived,
        1e-10,
        Check::AtMost,
    ));
    rows.push(ReportRow::flag(
        S,
        "|w|^4 alpha=100: z!=0 expansion through Q_3 at |z|=0.01 misses the numeric transform by more than 1e3x the origin formula",
        stokes.expansion_gap() > 1e3 * (stokes.origin_formula - quad0).norm(),
        Derived,
    ));
    Ok(rows)
}

// ---------------------------------------------------------------------------------------------
// Criterion 10: correspondence principle.

fn correspondence(_cfg: &SuiteConfig) -> Result<Vec<ReportRow>> {
    const S: &str = "correspondence";
    let mut rows = Vec::new();
    let kappa = correspondence_constant()?;
    rows.push(ReportRow::flag(
        S,
        "C_1(f,g) - C_1(g,f) exactly proportional to |z|(df dbar g - dbar f dg)",
        kappa.is_some(),
        Paper,
    ));
    let metric = metric_constant()?;
    rows.push(ReportRow::new(
        S,
        "metric constant: antisymmetrized C_1 / (|z| x flat Fock antisymmetrized C_1), exact",
        metric.as_ref().and_then(|q| q.to_f64()).unwrap_or(f64::NAN),
        2.0,
        Paper,
        0.0,
        Check::Absolute,
    ));
    let k = kappa.as_ref().and_then(|q| q.to_f64()).unwrap_or(f64::NAN);
    rows.push(ReportRow::new(S, "|kappa| in C_1(f,g) - C_1(g,f) = kappa |z|(df dbar g - dbar f dg), exact", k.abs(), 2.0, Paper, 0.0, Check::Absolute));
    rows.push(ReportRow::new(S, "sign of kappa (printed display: +1; hyponormality of T_z forces -1)", k.signum(), -1.0, Derived, 0.0, Check::Absolute));
    rows.push(ReportRow::new(
        S,
        "flat Fock C_1(f,g) - C_1(g,f) = kappa_0 (df dbar g - dbar f dg): kappa_0, exact",
        flat_antisymmetrized_c1()?.radial_shift(1).ratio_to(&BiDiffOp::poisson_form()).and_then(|q| q.to_f64()).unwrap_or(f64::NAN),
        -1.0,
        Trivial,
        0.0,
        Check::Absolute,
    ));

    // C_j(f, g) = 0 for holomorphic g: every term differentiates g antiholomorphically.
    let cs = c_series(3)?;
    rows.push(ReportRow::flag(S, "C_0(f,g) = fg (exact)", cs.coeffs[0] == DiffOpPoly::identity(), Trivial));
    for j in 1..=3 {
        let op = star_coefficient(&cs, j);
        let ok = op.terms().all(|(key, _)| key.g.1 >= 1);
        rows.push(ReportRow::flag(S, format!("C_{j}(f,g) vanishes for holomorphic g (exact)"), ok, Paper));
    }
    let anti = antisymmetrized_c1()?;
    let (f, g) = (SymbolPoly::monomial(1, 0, c(1.0, 0.0)), SymbolPoly::monomial(0, 1, c(1.0, 0.0)));
    let z = c(1.0, 0.0);
    rows.push(ReportRow::new(S, "C_1(w,conj w) - C_1(conj w,w) at z=1", anti.eval(&f, &g, z)?.re, -2.0, Derived, 1e-14, Check::Absolute));

    // Hyponormality: with N_j = ‖z^j‖², ⟨[T_z, T_z̄] e_j, e_j⟩ = N_j/N_{j−1} − N_{j+1}/N_j < 0.
    for eps in [0.9, 0.99, 0.999] {
        let measure = FockMeasure::new(QuantParams::new(eps)?, 0.0)?;
        let ln: Vec<f64> = (0..=202).map(|j| measure.ln_monomial_norm(j)).collect();
        let d = |j: usize| (ln[j] - ln[j - 1]).exp() - (ln[j + 1] - ln[j]).exp();
        let all_negative = (1..=200).all(|j| d(j) < 0.0);
        rows.push(ReportRow::flag(S, format!("eps={eps} diagonal of T_z T_zbar - T_zbar T_z negative for 1<=j<=200"), all_negative, Derived));
    }
    let eps = 0.9999;
    let params = QuantParams::new(eps)?;
    let measure = FockMeasure::new(params, 0.0)?;
    let j = 2000;
    let ln: Vec<f64> = (j - 1..=j + 1).map(|k| measure.ln_monomial_norm(k)).collect();
    let dj = (ln[1] - ln[0]).exp() - (ln[2] - ln[1]).exp();
    let r = (0.5 * (ln[1] - ln[0])).exp();
    rows.push(ReportRow::new(
        S,
        format!("eps={eps} j={j}: commutator diagonal / (-2 hbar |z|) with |z|^2 = N_j/N_(j-1)"),
        dj / (-2.0 * params.hbar * r),
        1.0,
        Derived,
        0.01,
        Check::Absolute,
    ));
    Ok(rows)
}

// ---------------------------------------------------------------------------------------------
// Criterion 11: Legendre non-extension.

fn legendre(cfg: &SuiteConfig) -> Result<Vec<ReportRow>> {
    const S: &str = "legendre";
    let mut rows = Vec::new();
    for k in 0..20 {
        let x = Complex64::from_polar(0.5 + 0.15 * k as f64, 0.3 + 0.29 * k as f64);
        rows.push(ReportRow::new(
            S,
            format!("radius of sum P_n(x) t^n at x={:.4}{:+.4}i: root test vs closed form", x.re, x.im),
            legendre_radius_estimate(x),
            legendre_radius(x),
            Derived,
            0.01,
            Check::Relative,
        ));
    }
    let ratios = [0.5, 0.9, 0.98, 1.02, 1.1, 2.0];
    for x in [1.2, 1.5, 2.0] {
        let xc = c(x, 0.0);
        let threshold = legendre_radius(xc).powi(2);
        let grid: Vec<f64> = ratios.iter().map(|r| r * threshold).filter(|e| *e < 1.0).collect();
        for row in nonextension_witness(&grid, xc)? {
            rows.push(ReportRow::flag(
                S,
                format!(
                    "x={x} eps/threshold={:.2}: diagonal series {} as predicted",
                    row.epsilon / threshold,
                    if row.predicted_divergent { "diverges" } else { "converges" }
                ),
                row.consistent(),
                Paper,
            ));
        }
    }
    for eps in cfg.eps_or(&[0.25, 0.5]) {
        let rho = 1.0 / eps.sqrt();
        for scale in [0.98, 1.02] {
            let r = rho * scale;
            let inside = scale < 1.0;
            let mut mismatches = 0usize;
            for k in 0..12 {
                let t = PI * k as f64 / 6.0 + 0.1;
                let x = c((r + 1.0 / r) / 2.0 * t.cos(), (r - 1.0 / r) / 2.0 * t.sin());
                let ok = ellipse_contains(eps, x) == inside
                    && diagonal_convergence(eps, x) == Truth::from_bool(inside)
                    && legendre_series_converges(eps, x, x) == inside;
                if !ok {
                    mismatches += 1;
                }
            }
            rows.push(ReportRow::new(
                S,
                format!("eps={eps} ellipse scale={scale}: membership vs numeric diagonal convergence mismatches (12 points)"),
                mismatches as f64,
                0.0,
                Derived,
                0.0,
                Check::Absolute,
            ));
        }
    }
    rows.push(ReportRow::flag(S, "eps=0.25: x=1.2 inside the ellipse", ellipse_contains(0.25, c(1.2, 0.0)), Paper));
    rows.push(ReportRow::flag(S, "eps=0.25: x=1.3 outside the ellipse", !ellipse_contains(0.25, c(1.3, 0.0)), Paper));
    Ok(rows)
}

// ---------------------------------------------------------------------------------------------
// Criterion 12: convergence classifiers.

/// Hand-derived `(rkhs, entire)` per canonical sequence for Legendre, Laguerre and Hermite.
fn ground_truth(name: &str) -> [(bool, bool); 3] {
    const TT: (bool, bool) = (true, true);
    const TF: (bool, bool) = (true, false);
    const FF: (bool, bool) = (false, false);
    match name {
        "geometric-0.5" | "geometric-0.9" => [TF, TT, TT],
        "constant" | "power-0.4" => [FF, FF, FF],
        "power-0.75" | "power-1" => [FF, FF, TF],
        "power-2" | "exp-sqrt" | "exp-n0.25" => [TF, TF, TF],
        "exp-n0.75" | "exp-n-over-log" => [TF, TT, TT],
        "exp-n1.5" => [TT, TT, TT],
        _ => unreachable!("no ground truth for `{name}`"),
    }
}

fn classifiers(_cfg: &SuiteConfig) -> Result<Vec<ReportRow>> {
    const S: &str = "classifiers";
    let mut rows = Vec::new();
    let families = [PolyFamily::Legendre, lag0(), PolyFamily::Hermite];
    for (name, seq) in canonical_sequences() {
        let truth = ground_truth(name);
        for (family, (rkhs, entire)) in families.iter().zip(truth) {
            let v = classify(*family, &seq)?;
            let fam = family.name();
            rows.push(ReportRow::flag(
                S,
                format!("{fam} {name}: analytic verdict rkhs={rkhs} entire={entire}"),
                v.rkhs == Truth::from_bool(rkhs) && v.entire_extension == Truth::from_bool(entire),
                Paper,
            ));
            let (er, ee) = partial_sum_evidence(*family, &seq);
            rows.push(ReportRow::flag(
                S,
                format!("{fam} {name}: partial-sum evidence rkhs={rkhs} entire={entire}"),
                er == Truth::from_bool(rkhs) && ee == Truth::from_bool(entire),
                Derived,
            ));
        }
    }
    // Two-series condition for Hermite.
    let cases = [
        ("evenodd:geometric:0.5/power:-0.4", false),
        ("evenodd:power:-2/power:-1", true),
        ("evenodd:power:-0.75/power:-0.4", false),
        ("evenodd:power:-0.4/power:-2", false),
        ("evenodd:power:-1/power:-1", true),
    ];
    for (spec, expected) in cases {
        let v = classify(PolyFamily::Hermite, &CoeffSeq::parse(spec)?)?;
        rows.push(ReportRow::flag(S, format!("hermite {spec}: rkhs={expected}"), v.rkhs == Truth::from_bool(expected), Paper));
    }
    let v = classify(PolyFamily::Hermite, &CoeffSeq::parse("power:-0.5")?)?;
    rows.push(ReportRow::flag(S, "hermite power:-0.5: rkhs=false", v.rkhs == Truth::False, Trivial));

    // Certified partial sums exist exactly when the coefficients are summable.
    for (spec, finite) in [("power:-1", true), ("power:-0.4", false)] {
        let p = kernel_partial_sum(PolyFamily::Hermite, &CoeffSeq::parse(spec)?, 0.0, 0.0, 500)?;
        rows.push(ReportRow::flag(S, format!("hermite {spec} diagonal at 0: finite certified tail = {finite}"), p.tail_bound.is_finite() == finite, Derived));
    }
    for x in [0.0, 1.7, 3.0] {
        let env = hermite_envelope(x);
        let ok = hermite_normalized_all(1000, x).iter().enumerate().all(|(n, v)| v.abs() <= env.bound(n));
        rows.push(ReportRow::flag(S, format!("hermite envelope holds at x={x} for n<=1000"), ok, Derived));
    }
    for x in [0.5, 3.0] {
        let env = laguerre_envelope(x, ENVELOPE_FIT_END)?;
        let ok = eval_poly_all_real(lag0(), 1000, x)?.iter().enumerate().all(|(n, v)| v.abs() <= env.bound(n));
        rows.push(ReportRow::flag(S, format!("laguerre envelope holds at x={x} for n<=1000"), ok, Derived));
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------------------------
// Tables.

fn berezin_slopes_table(cfg: &SuiteConfig) -> Result<Vec<ReportRow>> {
    const S: &str = "berezin-slopes";
    let eps_list = cfg.eps_or(&EXPANSION_EPS);
    if eps_list.len() < 2 {
        return Err(invalid("a slope needs at least two values of epsilon"));
    }
    let alphas: Vec<f64> = eps_list.iter().map(|&e| Ok(QuantParams::new(e)?.alpha_scale)).collect::<Result<_>>()?;
    let m = cfg.m.unwrap_or(2);
    let mut rows = Vec::new();
    for (fname, f) in test_symbols() {
        for z in [c(1.0, 0.0), c(1.0, 1.0)] {
            let res = expansion_residuals(&f, z, m, &alphas)?;
            let tag = format!("M={m} f={fname} z={}", fmt_z(z));
            for (a, r) in alphas.iter().zip(&res) {
                rows.push(data_row(S, format!("{tag} residual at alpha={a}"), *r, Derived));
            }
            rows.push(ReportRow::new(S, format!("{tag} fitted slope in alpha"), log_log_slope(&alphas, &res), -((m + 1) as f64), Derived, 0.15, Check::Absolute));
        }
    }
    Ok(rows)
}

fn expansion_slopes_table(cfg: &SuiteConfig) -> Result<Vec<ReportRow>> {
    let eps_list = cfg.eps_or(&EXPANSION_EPS);
    if eps_list.len() < 2 {
        return Err(invalid("a slope needs at least two values of epsilon"));
    }
    expansion_slope_rows("expansion-slopes", &eps_list, cfg.m.unwrap_or(2), true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_criterion_maps_to_a_suite() {
        for k in 1..=12 {
            assert!(SUITES.contains(&criterion_suite(k).unwrap()));
        }
        assert!(criterion_suite(0).is_none() && criterion_suite(13).is_none());
    }

    #[test]
    fn config_validation() {
        assert!(run_suite("moments", &SuiteConfig { eps: Some(vec![1.5]), ..Default::default() }).is_err());
        assert!(run_suite("moments", &SuiteConfig { n: Some(1), ..Default::default() }).is_err());
        assert!(run_suite("nope", &SuiteConfig::default()).is_err());
        assert!(run_table("berezin-slopes", &SuiteConfig { eps: Some(vec![0.9]), ..Default::default() }).is_err());
    }

    #[test]
    fn ground_truth_covers_canonical_sequences() {
        for (name, _) in canonical_sequences() {
            let _ = ground_truth(name);
        }
    }

    #[test]
    fn kernel_coefficient_recovers_norms() {
        let p = QuantParams::new(0.4).unwrap();
        let m = FockMeasure::new(p, 0.0).unwrap();
        for j in [0, 3, 8] {
            let rk = 1.0 / kernel_taylor_coefficient(&p, j).unwrap();
            assert!((rk / monomial_norm(&m, j) - 1.0).abs() < 1e-12);
        }
    }
}
