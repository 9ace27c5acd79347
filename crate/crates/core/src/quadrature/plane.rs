use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gauss::{gauss_rule, legendre_on, QuadRule};
use crate::error::{invalid, Error, Result};
use crate::specfun::{bessel_k, PolyFamily};

/// Points per Gauss–Legendre panel.
const PANEL_POINTS: usize = 20;
/// Split point between the logarithmic and the linear radial maps.
const INNER_RADIUS: f64 = 1.0;
/// `[0, 1]` is covered by `r = e^{−s}`, `s ∈ [0, LOG_SPAN]`.
const LOG_SPAN: f64 = 40.0;
/// Dynamic range discarded at the tail cut.
const TAIL_LOG_RANGE: f64 = 48.0;

fn panel_rule() -> &'static QuadRule {
    static RULE: OnceLock<QuadRule> = OnceLock::new();
    RULE.get_or_init(|| gauss_rule(PolyFamily::Legendre, PANEL_POINTS).expect("fixed rule"))
}

/// One-dimensional radial integral with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialIntegral {
    pub value: f64,
    pub error_bound: f64,
    pub nodes_used: usize,
}

/// Plane integral with error estimate and `∫|f| dν` as the natural scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneIntegral {
    pub value: Complex64,
    pub error_bound: f64,
    pub abs_scale: f64,
    pub nodes_used: usize,
}

/// Radially symmetric density together with the growth data that drives the node layout.
///
/// The integrand `f·density` is assumed bounded by `r^poly_degree · exp(−decay_rate·r + sqrt_growth·√r)`
/// up to a constant, and its angular bandwidth at radius `r` by `angular_offset + angular_rate·r`.
pub struct RadialDensity<'a> {
    pub profile: &'a (dyn Fn(f64) -> f64 + Sync),
    pub decay_rate: f64,
    pub sqrt_growth: f64,
    pub poly_degree: u32,
    pub angular_rate: f64,
    pub angular_offset: f64,
    pub panel_width: f64,
}

impl<'a> RadialDensity<'a> {
    pub fn new(profile: &'a (dyn Fn(f64) -> f64 + Sync), decay_rate: f64) -> Self {
        Self {
            profile,
            decay_rate,
            sqrt_growth: 0.0,
            poly_degree: 0,
            angular_rate: 0.0,
            angular_offset: 0.0,
            panel_width: 1.0,
        }
    }

    pub fn with_degree(mut self, degree: u32) -> Self {
        self.poly_degree = degree;
        self
    }

    pub fn with_angular(mut self, offset: f64, rate: f64) -> Self {
        self.angular_offset = offset;
        self.angular_rate = rate;
        self
    }

    pub fn with_sqrt_growth(mut self, growth: f64) -> Self {
        self.sqrt_growth = growth;
        self
    }

    pub fn with_panel_width(mut self, width: f64) -> Self {
        self.panel_width = width;
        self
    }

    fn grid(&self) -> RadialGrid {
        RadialGrid {
            decay: self.decay_rate,
            sqrt_growth: self.sqrt_growth,
            degree: self.poly_degree as f64 + 1.0,
            panel_width: self.panel_width,
        }
    }

    fn angular_nodes(&self, r: f64, refine: bool) -> usize {
        let base = 4 * self.poly_degree as usize + 32;
        let extra = (self.angular_offset + self.angular_rate * r).max(0.0).ceil() as usize;
        let n = base + extra;
        if refine {
            n + n / 2
        } else {
            n
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct RadialGrid {
    decay: f64,
    sqrt_growth: f64,
    degree: f64,
    panel_width: f64,
}

impl RadialGrid {
    fn log_envelope(&self, r: f64) -> f64 {
        self.degree * r.ln() - self.decay * r + self.sqrt_growth * r.sqrt()
    }

    /// Log-derivative bound `κ` with `env(r) ≤ env(R) e^{−κ(r−R)}` for `r ≥ R`.
    fn tail_rate(&self, r: f64) -> f64 {
        self.decay - self.degree / r - self.sqrt_growth / (2.0 * r.sqrt())
    }

    fn cutoff(&self) -> Result<f64> {
        if !(self.decay > 0.0) {
            return Err(invalid(format!("radial decay rate must be positive, got {}", self.decay)));
        }
        let mut r = INNER_RADIUS;
        let mut peak = self.log_envelope(r);
        loop {
            r += 0.25 * self.panel_width.min(1.0 / self.decay).max(1e-3);
            let v = self.log_envelope(r);
            peak = peak.max(v);
            if v < peak - TAIL_LOG_RANGE && self.tail_rate(r) > 0.5 * self.decay {
                return Ok(r);
            }
            if r > 1e6 {
                return Err(invalid("radial envelope does not decay"));
            }
        }
    }

    /// Nodes and weights for `∫₀^R g(r) dr`; `refine` halves every panel.
    fn nodes(&self, cutoff: f64, refine: bool) -> Vec<(f64, f64)> {
        let rule = panel_rule();
        let mut out = Vec::new();
        let log_panel = if refine { 1.0 } else { 2.0 };
        let mut s0 = 0.0;
        while s0 < LOG_SPAN {
            let s1 = (s0 + log_panel).min(LOG_SPAN);
            for (s, w) in legendre_on(rule, s0, s1) {
                let r = (-s).exp();
                out.push((r, w * r));
            }
            s0 = s1;
        }
        let width = if refine { self.panel_width / 2.0 } else { self.panel_width };
        let panels = ((cutoff - INNER_RADIUS) / width).ceil().max(1.0) as usize;
        let h = (cutoff - INNER_RADIUS) / panels as f64;
        for p in 0..panels {
            let a = INNER_RADIUS + p as f64 * h;
            out.extend(legendre_on(rule, a, a + h));
        }
        out
    }
}

/// `∫₀^∞ g(r) dr` for `g` bounded by `r^degree e^{−decay·r}` at infinity, with a log-friendly map near 0.
pub fn integrate_radial(
    g: impl Fn(f64) -> f64,
    decay: f64,
    degree: u32,
    tol: f64,
) -> Result<RadialIntegral> {
    let grid = RadialGrid { decay, sqrt_growth: 0.0, degree: degree as f64, panel_width: 1.0 };
    let cutoff = grid.cutoff()?;
    let run = |refine: bool| {
        let nodes = grid.nodes(cutoff, refine);
        let mut sum = 0.0;
        let mut abs = 0.0;
        for &(r, w) in &nodes {
            let v = w * g(r);
            sum += v;
            abs += v.abs();
        }
        (sum, abs, nodes.len())
    };
    let (coarse, _, n0) = run(false);
    let (fine, abs, n1) = run(true);
    let tail = g(cutoff).abs() / grid.tail_rate(cutoff);
    let error_bound = (fine - coarse).abs() + tail + 1e-15 * abs;
    let out = RadialIntegral { value: fine, error_bound, nodes_used: n0 + n1 };
    if error_bound > tol * fine.abs().max(f64::MIN_POSITIVE) {
        return Err(Error::NonConvergence {
            what: "radial quadrature".into(),
            achieved: error_bound / fine.abs(),
            requested: tol,
        });
    }
    Ok(out)
}

/// `∫₀^∞ 4 r^{2k+ν+1} K_ν(a r) dr`; for `a = 2` this is `k! Γ(k+ν+1)`.
///
/// With `t = r²` this is `∫₀^∞ 2 t^{k+ν/2} K_ν(a√t) dt`.
pub fn radial_k_moment(order: f64, a: f64, k: usize, tol: f64) -> Result<RadialIntegral> {
    if !(a > 0.0) {
        return Err(invalid(format!("Bessel scale must be positive, got {a}")));
    }
    if !(order > -0.5 || order == 0.0) {
        return Err(Error::InvalidOrder(order));
    }
    let p = 2.0 * k as f64 + order + 1.0;
    let g = |r: f64| 4.0 * r.powf(p) * bessel_k(order, a * r).unwrap_or(0.0);
    integrate_radial(g, a, (p.ceil() as u32).max(1), tol)
}

/// Closed form of [`radial_k_moment`]: `(2/a)^{2k+ν+2} k! Γ(k+ν+1)`.
pub fn radial_k_moment_exact(order: f64, a: f64, k: usize) -> f64 {
    let kf = k as f64;
    let ln = (2.0 * kf + order + 2.0) * (2.0 / a).ln()
        + crate::specfun::ln_gamma(kf + 1.0)
        + crate::specfun::ln_gamma(kf + order + 1.0);
    ln.exp()
}

/// `∫_ℂ f(w) density(|w|) dA(w)` by a polar product rule.
pub fn integrate_plane(
    density: &RadialDensity<'_>,
    f: impl Fn(Complex64) -> Complex64 + Sync,
    tol: f64,
) -> Result<PlaneIntegral> {
    let out = integrate_plane_multi(density, 1, |w, buf| buf[0] = f(w), tol)?;
    Ok(out[0])
}

/// Vector-valued [`integrate_plane`]: `f` writes `dim` outputs per point into its buffer.
///
/// Every component must meet `error_bound ≤ tol · abs_scale`.
pub fn integrate_plane_multi(
    density: &RadialDensity<'_>,
    dim: usize,
    f: impl Fn(Complex64, &mut [Complex64]) + Sync,
    tol: f64,
) -> Result<Vec<PlaneIntegral>> {
    if !(tol > 0.0) {
        return Err(invalid("tolerance must be positive"));
    }
    let grid = density.grid();
    let cutoff = grid.cutoff()?;
    let coarse = plane_pass(density, &grid, cutoff, dim, &f, false);
    let fine = plane_pass(density, &grid, cutoff, dim, &f, true);
    let rate = grid.tail_rate(cutoff);
    let mut out = Vec::with_capacity(dim);
    let mut worst: f64 = 0.0;
    for k in 0..dim {
        let tail = fine.edge[k] / rate;
        let error_bound = (fine.sum[k] - coarse.sum[k]).norm() + tail + 1e-14 * fine.abs[k];
        let scale = fine.abs[k].max(f64::MIN_POSITIVE);
        worst = worst.max(error_bound / scale);
        out.push(PlaneIntegral {
            value: fine.sum[k],
            error_bound,
            abs_scale: fine.abs[k],
            nodes_used: coarse.nodes + fine.nodes,
        });
    }
    if worst > tol {
        return Err(Error::NonConvergence {
            what: "plane quadrature".into(),
            achieved: worst,
            requested: tol,
        });
    }
    Ok(out)
}

struct Pass {
    sum: Vec<Complex64>,
    abs: Vec<f64>,
    /// Angular integral of |f·density|·r at the outermost node.
    edge: Vec<f64>,
    nodes: usize,
}

fn plane_pass(
    density: &RadialDensity<'_>,
    grid: &RadialGrid,
    cutoff: f64,
    dim: usize,
    f: &(impl Fn(Complex64, &mut [Complex64]) + Sync),
    refine: bool,
) -> Pass {
    let radial = grid.nodes(cutoff, refine);
    let r_edge = radial.iter().fold(0.0f64, |m, &(r, _)| m.max(r));
    let threads = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(16);
    let chunk = radial.len().div_ceil(threads);
    // Each chunk reduces locally; chunks are combined in index order.
    let partials: Vec<Pass> = std::thread::scope(|scope| {
        let handles: Vec<_> = radial
            .chunks(chunk)
            .map(|nodes| {
                scope.spawn(move || {
                    let mut p = Pass {
                        sum: vec![Complex64::new(0.0, 0.0); dim],
                        abs: vec![0.0; dim],
                        edge: vec![0.0; dim],
                        nodes: 0,
                    };
                    let mut buf = vec![Complex64::new(0.0, 0.0); dim];
                    for &(r, wr) in nodes {
                        let dens = (density.profile)(r);
                        if dens == 0.0 {
                            continue;
                        }
                        let n_theta = density.angular_nodes(r, refine);
                        let wt = wr * r * dens * 2.0 * PI / n_theta as f64;
                        for j in 0..n_theta {
                            let theta = 2.0 * PI * j as f64 / n_theta as f64;
                            f(Complex64::from_polar(r, theta), &mut buf);
                            for k in 0..dim {
                                p.sum[k] += buf[k] * wt;
                                p.abs[k] += buf[k].norm() * wt.abs();
                                if r == r_edge {
                                    p.edge[k] += buf[k].norm() * r * dens * 2.0 * PI / n_theta as f64;
                                }
                            }
                        }
                        p.nodes += n_theta;
                    }
                    p
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("quadrature worker")).collect()
    });
    let mut total = Pass {
        sum: vec![Complex64::new(0.0, 0.0); dim],
        abs: vec![0.0; dim],
        edge: vec![0.0; dim],
        nodes: 0,
    };
    for p in partials {
        for k in 0..dim {
            total.sum[k] += p.sum[k];
            total.abs[k] += p.abs[k];
            total.edge[k] += p.edge[k];
        }
        total.nodes += p.nodes;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn k0_first_moment() {
        // ∫₀^∞ x K_0(x) dx = 1.
        let r = integrate_radial(|x| x * bessel_k(0.0, x).unwrap(), 1.0, 1, 1e-12).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
        assert!(r.error_bound < 1e-10);
    }

    #[test]
    fn canonical_moments() {
        let v = radial_k_moment(0.0, 2.0, 0, 1e-10).unwrap();
        assert_relative_eq!(v.value, 1.0, max_relative = 1e-10);
        let v = radial_k_moment(0.0, 2.0, 3, 1e-10).unwrap();
        assert_relative_eq!(v.value, 36.0, max_relative = 1e-10);
        let v = radial_k_moment(1.0, 2.0, 2, 1e-10).unwrap();
        assert_relative_eq!(v.value, 12.0, max_relative = 1e-10);
        assert_relative_eq!(radial_k_moment_exact(1.0, 2.0, 2), 12.0, max_relative = 1e-13);
    }

    #[test]
    fn noncanonical_scale() {
        let a = 2.0 * 2f64.sqrt();
        for k in 0..5 {
            let v = radial_k_moment(0.0, a, k, 1e-10).unwrap();
            assert_relative_eq!(v.value, radial_k_moment_exact(0.0, a, k), max_relative = 1e-10);
        }
    }

    #[test]
    fn angular_exactness() {
        let prof = |r: f64| (-r).exp();
        let d = RadialDensity::new(&prof, 1.0).with_degree(6);
        for (j, k) in [(1, 0), (2, 1), (0, 3), (3, 1)] {
            let v = integrate_plane(&d, |w| w.powu(j) * w.conj().powu(k), 1e-6).unwrap();
            assert!(v.value.norm() <= 1e-12 * v.abs_scale, "{j},{k}");
        }
        // ∫ |w|² e^{−r} dA = 2π·3! .
        let v = integrate_plane(&d, |w| Complex64::new(w.norm_sqr(), 0.0), 1e-10).unwrap();
        assert_relative_eq!(v.value.re, 12.0 * PI, max_relative = 1e-12);
    }

    #[test]
    fn refinement_bound_is_honest() {
        let prof = |r: f64| (-2.0 * r).exp() * (1.0 + r.cos() * 0.5);
        let d = RadialDensity::new(&prof, 2.0).with_degree(2);
        let v = integrate_plane(&d, |w| Complex64::new(1.0 + w.norm_sqr(), 0.0), 1e-8).unwrap();
        // ∫ rⁿ e^{−2r} cos r dr = Re n!/(2−i)^{n+1}.
        let z = Complex64::new(2.0, -1.0);
        let osc = (1.0 / z.powu(2) + 6.0 / z.powu(4)).re;
        let exact = 2.0 * PI * (0.25 + 6.0 / 16.0 + 0.5 * osc);
        assert_relative_eq!(v.value.re, exact, max_relative = 1e-12);
        assert!(v.error_bound < 1e-8 * v.abs_scale);
    }
}
