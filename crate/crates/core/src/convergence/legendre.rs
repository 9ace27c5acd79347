//! Legendre radius of convergence, the ellipse `Ω_ε` and divergence witnesses outside `[−1, 1]`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::classify::{doubling_verdict, Truth, EVIDENCE_DOUBLINGS};
use crate::error::{invalid, Result};

/// Degree used by the empirical radius estimate.
pub const RADIUS_PROBE_DEGREE: usize = 4000;
/// Trailing window over which `ln|P_n|/n` is maximised.
pub const RADIUS_PROBE_WINDOW: usize = 200;
/// First window of the divergence witness.
pub const WITNESS_START: usize = 250;

/// `ln |P_n(x)|` for `n ≤ n_max`, with running rescaling so large degrees cannot overflow.
pub fn legendre_log_abs_all(x: Complex64, n_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut shift = 0.0;
    let mut prev = Complex64::new(1.0, 0.0);
    out.push(0.0);
    if n_max == 0 {
        return out;
    }
    let mut cur = x;
    out.push(cur.norm().ln());
    for n in 1..n_max {
        let nf = n as f64;
        let next = ((2.0 * nf + 1.0) * x * cur - nf * prev) / (nf + 1.0);
        prev = cur;
        cur = next;
        let m = cur.norm().max(prev.norm());
        if m > 1e100 || (m < 1e-100 && m > 0.0) {
            shift += m.ln();
            cur /= m;
            prev /= m;
        }
        out.push(cur.norm().ln() + shift);
    }
    out
}

/// `min |x ± √(x²−1)|`, the radius of `Σ P_n(x) tⁿ`.
pub fn legendre_radius(x: Complex64) -> f64 {
    let s = (x * x - 1.0).sqrt();
    (x + s).norm().min((x - s).norm())
}

/// Root-test estimate `1 / max_{n in window} |P_n(x)|^{1/n}` near degree [`RADIUS_PROBE_DEGREE`].
pub fn legendre_radius_estimate(x: Complex64) -> f64 {
    let logs = legendre_log_abs_all(x, RADIUS_PROBE_DEGREE);
    let growth = (RADIUS_PROBE_DEGREE - RADIUS_PROBE_WINDOW..=RADIUS_PROBE_DEGREE)
        .map(|n| logs[n] / n as f64)
        .fold(f64::NEG_INFINITY, f64::max);
    (-growth).exp()
}

/// Membership in `Ω_ε = {x : |1−x| + |1+x| < (1+ε)/√ε}`.
pub fn ellipse_contains(epsilon: f64, x: Complex64) -> bool {
    (1.0 - x).norm() + (1.0 + x).norm() < (1.0 + epsilon) / epsilon.sqrt()
}

/// `|(1−x)(1−y)|^{1/2} + |(1+x)(1+y)|^{1/2} < ε^{1/2} + ε^{−1/2}`.
pub fn legendre_domain_inequality(epsilon: f64, x: Complex64, y: Complex64) -> bool {
    ((1.0 - x) * (1.0 - y)).norm().sqrt() + ((1.0 + x) * (1.0 + y)).norm().sqrt() < epsilon.sqrt() + 1.0 / epsilon.sqrt()
}

/// Log increments of `Σ (n+½) εⁿ |P_n(x)|²` over doubling windows starting at `start`.
pub fn diagonal_increments(epsilon: f64, x: Complex64, start: usize) -> Vec<f64> {
    let top = start << (EVIDENCE_DOUBLINGS + 1);
    let logs = legendre_log_abs_all(x, top);
    let le = epsilon.ln();
    (0..=EVIDENCE_DOUBLINGS)
        .map(|k| {
            let lo = start << k;
            let terms: Vec<f64> = (lo..2 * lo).map(|n| (n as f64 + 0.5).ln() + n as f64 * le + 2.0 * logs[n]).collect();
            let m = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            if m == f64::NEG_INFINITY {
                return m;
            }
            m + terms.iter().map(|t| (t - m).exp()).sum::<f64>().ln()
        })
        .collect()
}

/// Convergence of the diagonal Legendre kernel series at `x`, read from partial sums.
pub fn diagonal_convergence(epsilon: f64, x: Complex64) -> Truth {
    doubling_verdict(&diagonal_increments(epsilon, x, WITNESS_START))
}

/// One row of a non-extension witness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessRow {
    pub epsilon: f64,
    /// `radius(x)²`; the diagonal series diverges for `ε` above it.
    pub threshold: f64,
    pub predicted_divergent: bool,
    pub detected: Truth,
    /// Largest log-ratio of successive window increments.
    pub max_log_ratio: f64,
}

impl WitnessRow {
    pub fn consistent(&self) -> bool {
        self.detected == Truth::from_bool(!self.predicted_divergent)
    }
}

pub fn nonextension_witness(epsilon_grid: &[f64], x_outside: Complex64) -> Result<Vec<WitnessRow>> {
    if x_outside.im == 0.0 && x_outside.re.abs() <= 1.0 {
        return Err(invalid("witness point must lie outside [−1, 1]"));
    }
    let threshold = legendre_radius(x_outside).powi(2);
    epsilon_grid
        .iter()
        .map(|&eps| {
            if !(eps > 0.0 && eps < 1.0) {
                return Err(invalid(format!("epsilon must lie in (0,1), got {eps}")));
            }
            let inc = diagonal_increments(eps, x_outside, WITNESS_START);
            let max_log_ratio = inc.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max);
            Ok(WitnessRow {
                epsilon: eps,
                threshold,
                predicted_divergent: eps > threshold,
                detected: doubling_verdict(&inc),
                max_log_ratio,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64, y: f64) -> Complex64 {
        Complex64::new(x, y)
    }

    #[test]
    fn radius_examples() {
        assert!((legendre_radius(c(0.0, 0.0)) - 1.0).abs() < 1e-15);
        assert!((legendre_radius(c(0.5, 0.0)) - 1.0).abs() < 1e-15);
        assert!((legendre_radius(c(2.0, 0.0)) - (2.0 - 3f64.sqrt())).abs() < 1e-15);
        for x in [c(2.0, 0.0), c(0.3, 0.0), c(0.5, 0.7), c(-1.5, -0.2)] {
            let est = legendre_radius_estimate(x);
            assert!((est / legendre_radius(x) - 1.0).abs() < 0.01, "{x}: {est}");
        }
    }

    #[test]
    fn ellipse_examples() {
        assert!(ellipse_contains(0.25, c(1.2, 0.0)));
        assert!(!ellipse_contains(0.25, c(1.3, 0.0)));
        assert!(!ellipse_contains(0.999, c(1.05, 0.0)));
        assert!(legendre_domain_inequality(0.25, c(1.2, 0.0), c(1.2, 0.0)));
    }

    #[test]
    fn witness_examples() {
        let rows = nonextension_witness(&[0.1, 0.9], c(1.5, 0.0)).unwrap();
        assert_eq!(rows[0].detected, Truth::True);
        assert_eq!(rows[1].detected, Truth::False);
        assert!(rows.iter().all(|r| r.consistent()));
        assert_eq!(diagonal_convergence(0.95, c(0.9, 0.0)), Truth::True);
        assert!(nonextension_witness(&[0.5], c(0.5, 0.0)).is_err());
    }
}
