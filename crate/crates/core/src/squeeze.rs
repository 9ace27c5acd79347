//! Squeeze operator `U_ε = exp((θ/2) Q)` on the `e_n` basis and the map `e_n ↦ E_{ε,n}`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Block change below which a doubled working width is accepted.
pub const SQUEEZE_BLOCK_TOL: f64 = 1e-12;
/// Working width cap as a multiple of the requested size.
pub const SQUEEZE_MAX_WIDTH_FACTOR: usize = 16;

/// Skew-symmetric ladder matrix with `Q_{n+1,n} = −(n+1)` and `Q_{n−1,n} = n`.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderMatrix {
    pub n: usize,
    pub entries: DMatrix<f64>,
}

pub fn q_matrix(n: usize) -> Result<LadderMatrix> {
    if n < 2 {
        return Err(invalid("ladder matrix needs N ≥ 2"));
    }
    let entries = DMatrix::from_fn(n, n, |i, j| {
        if i == j + 1 {
            -(i as f64)
        } else if j == i + 1 {
            j as f64
        } else {
            0.0
        }
    });
    Ok(LadderMatrix { n, entries })
}

impl LadderMatrix {
    /// Banded product `Q v`.
    pub fn apply(&self, v: &DVector<f64>) -> DVector<f64> {
        DVector::from_fn(self.n, |i, _| {
            let mut s = 0.0;
            if i > 0 {
                s -= i as f64 * v[i - 1];
            }
            if i + 1 < self.n {
                s += (i + 1) as f64 * v[i + 1];
            }
            s
        })
    }
}

/// `θ = log((1+√ε)/(1−√ε))`, so `tanh(θ/2) = √ε`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SqueezeParams {
    pub epsilon: f64,
    pub theta: f64,
}

impl SqueezeParams {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidParameter(format!("epsilon must lie in (0,1), got {epsilon}")));
        }
        let s = epsilon.sqrt();
        Ok(Self { epsilon, theta: ((1.0 + s) / (1.0 - s)).ln() })
    }

    pub fn from_theta(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta.is_finite()) {
            return Err(Error::InvalidParameter(format!("theta must be positive, got {theta}")));
        }
        Ok(Self { epsilon: (theta / 2.0).tanh().powi(2), theta })
    }
}

/// `exp((θ/2) Q_N)` with no width control.
pub fn truncated_squeeze_matrix(theta: f64, n: usize) -> Result<DMatrix<f64>> {
    Ok((q_matrix(n)?.entries * (theta / 2.0)).exp())
}

/// Squeeze matrix restricted to the first `n` rows and columns, with the working width chosen by doubling.
#[derive(Debug, Clone, PartialEq)]
pub struct SqueezeMatrix {
    pub matrix: DMatrix<f64>,
    pub width: usize,
    /// Max entry change of the interior block between the last two widths.
    pub block_change: f64,
}

/// Doubles the working width from `n` until the interior block (all rows, columns `< n/2`) changes by less
/// than [`SQUEEZE_BLOCK_TOL`], then returns the `n×n` block of the wide exponential.
pub fn squeeze_matrix(sq: SqueezeParams, n: usize) -> Result<SqueezeMatrix> {
    let interior = (n / 2).max(1);
    let mut width = n;
    let mut prev = truncated_squeeze_matrix(sq.theta, width)?;
    loop {
        let next_width = 2 * width;
        if next_width > SQUEEZE_MAX_WIDTH_FACTOR * n {
            let change = 1.0;
            return Err(Error::Leakage { leakage: change, tol: SQUEEZE_BLOCK_TOL });
        }
        let next = truncated_squeeze_matrix(sq.theta, next_width)?;
        let change = (0..n)
            .flat_map(|i| (0..interior).map(move |j| (i, j)))
            .map(|(i, j)| (next[(i, j)] - prev[(i, j)]).abs())
            .fold(0.0, f64::max);
        if change < SQUEEZE_BLOCK_TOL {
            return Ok(SqueezeMatrix { matrix: next.view((0, 0), (n, n)).into_owned(), width: next_width, block_change: change });
        }
        prev = next;
        width = next_width;
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Coefficients `a_m` of `E_{ε,n} = Σ_m a_m e_m` for `m < size`.
///
/// Cauchy product of `e^{√ε z/2}` with `L_n((1−ε)z/(2√ε))`, converted through `e_m = (−z)^m/(m! 2^m √(2π))`:
/// `a_m = √(1−ε) (−1)^m Σ_k (−1)^k C(n,k) C(m,k) (1−ε)^k ε^{(n+m)/2−k}`.
pub fn target_coeffs(epsilon: f64, n: usize, size: usize) -> Result<DVector<f64>> {
    if n >= size {
        return Err(invalid(format!("index {n} must be below the truncation {size}")));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon must lie in (0,1), got {epsilon}")));
    }
    let h = 1.0 - epsilon;
    let le = epsilon.ln();
    Ok(DVector::from_fn(size, |m, _| {
        let s: f64 = (0..=n.min(m))
            .map(|k| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign * binomial(n, k) * binomial(m, k) * h.powi(k as i32) * (((n + m) as f64 / 2.0 - k as f64) * le).exp()
            })
            .sum();
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        sign * h.sqrt() * s
    }))
}

/// `‖U_ε e_n − E_{ε,n}‖` in the first `size` coefficients.
pub fn squeeze_column_deviation(epsilon: f64, n: usize, size: usize) -> Result<f64> {
    let u = squeeze_matrix(SqueezeParams::new(epsilon)?, size)?;
    column_deviation(&u.matrix, epsilon, n, size)
}

/// Deviations for several columns sharing one squeeze matrix.
pub fn squeeze_column_deviations(epsilon: f64, ns: &[usize], size: usize) -> Result<Vec<f64>> {
    let u = squeeze_matrix(SqueezeParams::new(epsilon)?, size)?;
    ns.iter().map(|&n| column_deviation(&u.matrix, epsilon, n, size)).collect()
}

/// Same deviation with the plain `size×size` exponential.
pub fn squeeze_column_deviation_truncated(epsilon: f64, n: usize, size: usize) -> Result<f64> {
    let u = truncated_squeeze_matrix(SqueezeParams::new(epsilon)?.theta, size)?;
    column_deviation(&u, epsilon, n, size)
}

fn column_deviation(u: &DMatrix<f64>, epsilon: f64, n: usize, size: usize) -> Result<f64> {
    let t = target_coeffs(epsilon, n, size)?;
    Ok((u.column(n) - t).norm())
}

/// Coefficients of `e^{−z/2} L_n(z)` in the `e_m` basis: `√(2π) Σ_k C(n,k) C(m,k) 2^k`.
pub fn laguerre_exponential_coeffs(n: usize, size: usize) -> DVector<f64> {
    let r = (2.0 * std::f64::consts::PI).sqrt();
    DVector::from_fn(size, |m, _| r * (0..=n.min(m)).map(|k| binomial(n, k) * binomial(m, k) * 2f64.powi(k as i32)).sum::<f64>())
}

/// `‖Q v − (2n+1) v‖ / ‖v‖` over rows `m < size − 1`, where the band of `Q` is complete.
pub fn eigenrelation_residual(n: usize, size: usize) -> Result<f64> {
    let q = q_matrix(size)?;
    let v = laguerre_exponential_coeffs(n, size);
    let qv = q.apply(&v);
    let lam = 2.0 * n as f64 + 1.0;
    let rows = size - 1;
    let num: f64 = (0..rows).map(|m| (qv[m] - lam * v[m]).powi(2)).sum::<f64>().sqrt();
    let den: f64 = (0..rows).map(|m| v[m].powi(2)).sum::<f64>().sqrt();
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_shape() {
        let q = q_matrix(3).unwrap();
        let expect = DMatrix::from_row_slice(3, 3, &[0.0, 1.0, 0.0, -1.0, 0.0, 2.0, 0.0, -2.0, 0.0]);
        assert_eq!(q.entries, expect);
        assert_eq!(&q.entries + q.entries.transpose(), DMatrix::zeros(3, 3));
        let e0 = DVector::from_vec(vec![1.0, 0.0, 0.0]);
        assert_eq!(q.apply(&e0), DVector::from_vec(vec![0.0, -1.0, 0.0]));
        assert!(q_matrix(1).is_err());
    }

    #[test]
    fn params_identity() {
        let sq = SqueezeParams::new(0.3).unwrap();
        assert!(((sq.theta / 2.0).tanh() - 0.3f64.sqrt()).abs() < 1e-15);
        let back = SqueezeParams::from_theta(sq.theta).unwrap();
        assert!((back.epsilon - 0.3).abs() < 1e-14);
    }

    #[test]
    fn column_zero_closed_form() {
        let u = squeeze_matrix(SqueezeParams::new(0.25).unwrap(), 80).unwrap();
        for m in 0..40 {
            let expect = 0.75f64.sqrt() * (-0.5f64).powi(m as i32);
            assert!((u.matrix[(m, 0)] - expect).abs() < 1e-12);
        }
        let t = target_coeffs(0.25, 0, 80).unwrap();
        assert!((t.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn target_matches_cauchy_product() {
        // Direct route: Taylor coefficients b_m, then a_m = b_m (−1)^m m! 2^m √(2π).
        let (eps, n) = (0.3f64, 4usize);
        let beta = (1.0 - eps) / (2.0 * eps.sqrt());
        let lag: Vec<f64> = (0..=n).map(|k| binomial(n, k) * (-beta).powi(k as i32) / (1..=k).product::<usize>() as f64).collect();
        let pre = ((1.0 - eps) / (2.0 * std::f64::consts::PI)).sqrt() * eps.powf(n as f64 / 2.0);
        let t = target_coeffs(eps, n, 20).unwrap();
        let mut fact = 1.0;
        for m in 0..20 {
            if m > 0 {
                fact *= m as f64;
            }
            let b: f64 = (0..=n.min(m))
                .map(|k| lag[k] * (eps.sqrt() / 2.0).powi((m - k) as i32) / (1..=m - k).product::<usize>() as f64)
                .sum::<f64>()
                * pre;
            let a = b * (-1f64).powi(m as i32) * fact * 2f64.powi(m as i32) * (2.0 * std::f64::consts::PI).sqrt();
            assert!((a - t[m]).abs() < 1e-12 * (1.0 + a.abs()), "{m}");
        }
    }

    #[test]
    fn target_norms_and_limit() {
        for (eps, size) in [(0.04, 80), (0.25, 80), (0.5, 200)] {
            for n in [0, 3, 10] {
                let t = target_coeffs(eps, n, size).unwrap();
                assert!((1.0 - t.norm_squared()).abs() < 1e-10);
            }
        }
        // At ε = 0.5 the column E_{ε,10} still carries mass beyond m = 80.
        let t = target_coeffs(0.5, 10, 80).unwrap();
        assert!(1.0 - t.norm_squared() > 1e-5);
        let t = target_coeffs(1e-12, 3, 10).unwrap();
        assert!((t[3].abs() - 1.0).abs() < 1e-5);
        assert!(target_coeffs(0.5, 10, 10).is_err());
    }

    #[test]
    fn squeeze_column_examples() {
        assert!(squeeze_column_deviation(0.25, 0, 80).unwrap() < 1e-8);
        assert!(squeeze_column_deviation(0.25, 5, 80).unwrap() < 1e-6);
        assert!(squeeze_column_deviation(0.01, 3, 80).unwrap() < 1e-9);
    }

    #[test]
    fn orthogonal_interior() {
        let u = truncated_squeeze_matrix(SqueezeParams::new(0.5).unwrap().theta, 80).unwrap();
        let g = u.transpose() * &u;
        for i in 0..70 {
            for j in 0..70 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((g[(i, j)] - e).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn eigenrelation() {
        for n in 0..=6 {
            assert!(eigenrelation_residual(n, 120).unwrap() < 1e-7, "{n}");
        }
    }

    #[test]
    fn group_law() {
        let (t1, t2) = (0.4, 0.7);
        let a = truncated_squeeze_matrix(t1, 120).unwrap();
        let b = truncated_squeeze_matrix(t2, 120).unwrap();
        let c = truncated_squeeze_matrix(t1 + t2, 120).unwrap();
        let d = a * b - c;
        assert!(d.view((0, 0), (40, 40)).iter().all(|x| x.abs() < 1e-8));
    }
}
