use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::specfun::{eval_poly_all_real, PolyFamily};

/// Gauss rule for one of the classical weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub family: PolyFamily,
    /// Polynomials of degree `≤ exactness` are integrated exactly.
    pub exactness: usize,
}

impl QuadRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ w_i f(x_i)`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Nodes, weights and the orthogonal eigenvector matrix of the Jacobi matrix.
///
/// Column `i` of `vectors` is `(p̂_k(x_i) √w_i)_k` with `p̂_0 > 0`, sorted by node.
pub struct GolubWelsch {
    pub rule: QuadRule,
    pub vectors: DMatrix<f64>,
}

pub fn jacobi_matrix(family: PolyFamily, n: usize) -> DMatrix<f64> {
    let (diag, off) = family.jacobi_coefficients(n);
    let mut j = DMatrix::zeros(n, n);
    for k in 0..n {
        j[(k, k)] = diag[k];
    }
    for (k, &b) in off.iter().enumerate() {
        j[(k, k + 1)] = b;
        j[(k + 1, k)] = b;
    }
    j
}

pub fn golub_welsch(family: PolyFamily, n: usize) -> Result<GolubWelsch> {
    family.validate()?;
    if n == 0 {
        return Err(invalid("Gauss rule needs at least one node"));
    }
    let eig = SymmetricEigen::new(jacobi_matrix(family, n));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mass = family.total_mass();
    let mut vectors = DMatrix::zeros(n, n);
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for (col, &i) in order.iter().enumerate() {
        let v = eig.eigenvectors.column(i);
        let sign = if v[0] < 0.0 { -1.0 } else { 1.0 };
        for k in 0..n {
            vectors[(k, col)] = sign * v[k];
        }
        nodes.push(eig.eigenvalues[i]);
        weights.push(mass * v[0] * v[0]);
    }
    let rule = QuadRule { nodes, weights, family, exactness: 2 * n - 1 };
    Ok(GolubWelsch { rule, vectors })
}

/// N-point Gauss rule, exact through degree `2N−1`.
pub fn gauss_rule(family: PolyFamily, n: usize) -> Result<QuadRule> {
    Ok(golub_welsch(family, n)?.rule)
}

/// Largest `|p_N(x_i)| / max_k |p_k(x_i)|` over the nodes; near zero for a correct rule.
pub fn node_residual(rule: &QuadRule) -> Result<f64> {
    let n = rule.len();
    let mut worst: f64 = 0.0;
    for &x in &rule.nodes {
        let vals = eval_poly_all_real(rule.family, n, x)?;
        let scale = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        worst = worst.max(vals[n].abs() / scale);
    }
    Ok(worst)
}

/// Gauss–Legendre rule mapped to `[a, b]`.
pub(crate) fn legendre_on(rule: &QuadRule, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    rule.nodes.iter().zip(&rule.weights).map(move |(&x, &w)| (mid + half * x, half * w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use crate::specfun::gamma;

    #[test]
    fn small_rules() {
        let r = gauss_rule(PolyFamily::Legendre, 1).unwrap();
        assert!(r.nodes[0].abs() < 1e-15);
        assert_relative_eq!(r.weights[0], 2.0);
        let r = gauss_rule(PolyFamily::Laguerre { order: 0.0 }, 2).unwrap();
        assert_relative_eq!(r.integrate(|x| x.powi(3)), 6.0, max_relative = 1e-13);
        let r = gauss_rule(PolyFamily::Hermite, 3).unwrap();
        let expect = 3.0 * std::f64::consts::PI.sqrt() / 4.0;
        assert_relative_eq!(r.integrate(|x| x.powi(4)), expect, max_relative = 1e-13);
        assert!(gauss_rule(PolyFamily::Legendre, 0).is_err());
    }

    #[test]
    fn weights_sum_to_mass() {
        for fam in [PolyFamily::Hermite, PolyFamily::Laguerre { order: 0.0 }, PolyFamily::Laguerre { order: 2.5 }, PolyFamily::Legendre] {
            let r = gauss_rule(fam, 40).unwrap();
            let s: f64 = r.weights.iter().sum();
            assert_relative_eq!(s, fam.total_mass(), max_relative = 1e-12);
            assert!(r.weights.iter().all(|&w| w > 0.0));
        }
    }

    #[test]
    fn moments_up_to_exactness() {
        let n = 10;
        let r = gauss_rule(PolyFamily::Laguerre { order: 1.5 }, n).unwrap();
        for k in 0..2 * n {
            let exact = gamma(k as f64 + 2.5);
            assert_relative_eq!(r.integrate(|x| x.powi(k as i32)), exact, max_relative = 1e-12);
        }
        let r = gauss_rule(PolyFamily::Legendre, n).unwrap();
        for k in 0..2 * n {
            let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
            assert!((r.integrate(|x| x.powi(k as i32)) - exact).abs() < 1e-14);
        }
        let r = gauss_rule(PolyFamily::Hermite, n).unwrap();
        for k in (0..2 * n).step_by(2) {
            let exact = gamma((k as f64 + 1.0) / 2.0);
            assert_relative_eq!(r.integrate(|x| x.powi(k as i32)), exact, max_relative = 1e-12);
        }
    }

    #[test]
    fn nodes_are_roots() {
        for fam in [PolyFamily::Hermite, PolyFamily::Laguerre { order: 0.0 }, PolyFamily::Legendre] {
            for n in [5, 20, 60] {
                let r = gauss_rule(fam, n).unwrap();
                assert!(node_residual(&r).unwrap() < 1e-9, "{fam:?} {n}");
            }
        }
    }

    #[test]
    fn eigenvectors_are_weighted_orthonormal_polynomials() {
        let fam = PolyFamily::Laguerre { order: 0.0 };
        let gw = golub_welsch(fam, 12).unwrap();
        for (i, &x) in gw.rule.nodes.iter().enumerate() {
            let vals = eval_poly_all_real(fam, 11, x).unwrap();
            for k in 0..12 {
                let expect = vals[k] * gw.rule.weights[i].sqrt();
                assert!((gw.vectors[(k, i)] - expect).abs() < 1e-10, "k={k} i={i}");
            }
        }
    }
}
