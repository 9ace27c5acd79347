//! Exact operator algebra for the Berezin expansion.
//!
//! Coefficient monomials are `|z|^s e^{idθ} = z^{(s+d)/2} z̄^{(s−d)/2}`, so that `∂` sends `(d, s)` to
//! `(s+d)/2 · (d−1, s−1)` and `∂̄` sends it to `(s−d)/2 · (d+1, s−1)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::SymbolPoly;
use crate::error::{Error, Result};
use crate::specfun::asym_coeff_exact;

/// Largest order for which `R_m` is built.
pub const MAX_R_ORDER: usize = 6;
/// Largest order of the `ħ` star-product series.
pub const MAX_C_ORDER: usize = 4;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn rat_to_f64(q: &BigRational) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

fn factorial(n: usize) -> BigRational {
    (1..=n as i64).fold(BigRational::one(), |acc, k| acc * rat(k))
}

fn binomial(n: i64, k: i64) -> BigRational {
    if k < 0 || k > n {
        return BigRational::zero();
    }
    (0..k).fold(BigRational::one(), |acc, i| acc * ratio(n - i, i + 1))
}

/// `|z|^s e^{idθ} ∂^a ∂̄^b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OpKey {
    pub d: i64,
    pub s: i64,
    pub a: u32,
    pub b: u32,
}

/// Differential operator `Σ q · |z|^s e^{idθ} ∂^a ∂̄^b` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiffOpPoly {
    terms: BTreeMap<OpKey, BigRational>,
}

/// Applies `∂^i ∂̄^k` to the monomial `(d, s)`.
fn monomial_derivative(d: i64, s: i64, i: u32, k: u32) -> (BigRational, i64, i64) {
    let mut c = BigRational::one();
    let (mut d, mut s) = (d, s);
    for _ in 0..i {
        c *= ratio(s + d, 2);
        d -= 1;
        s -= 1;
    }
    for _ in 0..k {
        c *= ratio(s - d, 2);
        d += 1;
        s -= 1;
    }
    (c, d, s)
}

impl DiffOpPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::scalar(BigRational::one())
    }

    pub fn scalar(q: BigRational) -> Self {
        Self::term(q, OpKey { d: 0, s: 0, a: 0, b: 0 })
    }

    pub fn term(q: BigRational, key: OpKey) -> Self {
        let mut out = Self::zero();
        out.add_term(key, q);
        out
    }

    /// `Δ = 4 ∂∂̄`.
    pub fn laplacian() -> Self {
        Self::term(rat(4), OpKey { d: 0, s: 0, a: 1, b: 1 })
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OpKey, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: OpKey) -> BigRational {
        self.terms.get(&key).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: OpKey, q: BigRational) {
        if q.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(BigRational::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, q) in &other.terms {
            out.add_term(*k, q.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, c * q);
        }
        out
    }

    /// Left multiplication by `|z|^k`.
    pub fn radial_shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(key, q)| (OpKey { s: key.s + k, ..*key }, q.clone())).collect() }
    }

    /// `self ∘ other` by the Leibniz rule.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (k1, q1) in &self.terms {
            for (k2, q2) in &other.terms {
                for i in 0..=k1.a {
                    for k in 0..=k1.b {
                        let (c, d, s) = monomial_derivative(k2.d, k2.s, i, k);
                        if c.is_zero() {
                            continue;
                        }
                        let coef = q1 * q2 * c * binomial(k1.a as i64, i as i64) * binomial(k1.b as i64, k as i64);
                        let key = OpKey { d: k1.d + d, s: k1.s + s, a: k1.a - i + k2.a, b: k1.b - k + k2.b };
                        out.add_term(key, coef);
                    }
                }
            }
        }
        out
    }

    /// The function `self(1)`, kept as an operator of order zero.
    pub fn apply_to_one(&self) -> Self {
        Self { terms: self.terms.iter().filter(|(k, _)| k.a == 0 && k.b == 0).map(|(k, q)| (*k, q.clone())).collect() }
    }

    /// Whether every coefficient is continuous at the origin.
    pub fn regular_at_origin(&self) -> bool {
        self.terms.keys().all(|k| k.s > 0 || (k.s == 0 && k.d == 0))
    }

    /// `(self f)(z)`; refuses `z = 0` when a coefficient is singular there.
    pub fn eval(&self, f: &SymbolPoly, z: Complex64) -> Result<Complex64> {
        let r = z.norm();
        if r == 0.0 && !self.regular_at_origin() {
            return Err(Error::Domain("asymptotic operator carries negative powers of |z| and is undefined at z = 0".into()));
        }
        let theta = z.arg();
        let mut sum = Complex64::new(0.0, 0.0);
        for (k, q) in &self.terms {
            let mono = if k.s == 0 && k.d == 0 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::from_polar(r.powi(k.s as i32), k.d as f64 * theta)
            };
            sum += rat_to_f64(q) * mono * f.derivative(k.a, k.b).eval(z);
        }
        Ok(sum)
    }

    /// Highest total derivative order.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|k| k.a + k.b).max().unwrap_or(0)
    }
}

impl fmt::Display for DiffOpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, q)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " {} ", if q.is_negative() { "-" } else { "+" })?;
            } else if q.is_negative() {
                write!(f, "-")?;
            }
            write!(f, "{}", q.abs())?;
            if k.s != 0 {
                write!(f, "·|z|^{}", k.s)?;
            }
            if k.d != 0 {
                write!(f, "·e^({}iθ)", k.d)?;
            }
            if k.a > 0 {
                write!(f, "·∂^{}", k.a)?;
            }
            if k.b > 0 {
                write!(f, "·∂̄^{}", k.b)?;
            }
        }
        Ok(())
    }
}

/// Expansion variable of a [`FormalOpSeries`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeriesVar {
    LambdaInv,
    AlphaInv,
    Hbar,
}

/// `Σ_m x^m · coeffs[m]` truncated at `coeffs.len() − 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalOpSeries {
    pub var: SeriesVar,
    pub coeffs: Vec<DiffOpPoly>,
}

impl FormalOpSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// `Σ_{m ≤ M} x^m (coeffs[m] f)(z)`.
    /// The `α⁻¹` and `λ⁻¹` expansions hold only off the origin and refuse `z = 0`.
    pub fn eval_partial(&self, f: &SymbolPoly, z: Complex64, x: f64, m_max: usize) -> Result<Complex64> {
        if self.var != SeriesVar::Hbar && z == Complex64::new(0.0, 0.0) {
            return Err(Error::Domain("the α⁻¹ expansion is not valid at z = 0".into()));
        }
        let mut sum = Complex64::new(0.0, 0.0);
        for (m, op) in self.coeffs.iter().enumerate().take(m_max + 1) {
            sum += op.eval(f, z)? * x.powi(m as i32);
        }
        Ok(sum)
    }

    /// Inverse in the sense of formal power series; needs the identity in degree zero.
    pub fn inverse(&self) -> Result<FormalOpSeries> {
        if self.coeffs.first() != Some(&DiffOpPoly::identity()) {
            return Err(Error::Domain("series inversion needs the identity as leading coefficient".into()));
        }
        let mut inv = vec![DiffOpPoly::identity()];
        for j in 1..self.coeffs.len() {
            let mut acc = DiffOpPoly::zero();
            for i in 1..=j {
                acc = acc.add(&self.coeffs[i].compose(&inv[j - i]));
            }
            inv.push(acc.scale(&rat(-1)));
        }
        Ok(FormalOpSeries { var: self.var, coeffs: inv })
    }
}

/// `c_m`, the coefficients of `I_0(λ) √(2πλ) e^{−λ} ~ Σ c_m λ^{−m}`.
pub fn i0_coefficients(m_max: usize) -> Vec<BigRational> {
    (0..=m_max).map(asym_coeff_exact).collect()
}

/// `κ_{n,p,a} = (n!/a!) [yⁿ] (1+y)^{−p} (2y + y²)^a`.
fn kappa(n: usize, p: usize, a: usize) -> BigRational {
    if a > n {
        return BigRational::zero();
    }
    let mut sum = BigRational::zero();
    // (2y+y²)^a = Σ_i C(a,i) 2^{a−i} y^{a+i}; (1+y)^{−p} = Σ_t (−1)^t C(p+t−1, t) y^t.
    for i in 0..=a {
        if a + i > n {
            break;
        }
        let t = n - a - i;
        let neg = if p == 0 {
            if t == 0 { BigRational::one() } else { BigRational::zero() }
        } else {
            let sign = if t % 2 == 0 { 1 } else { -1 };
            binomial((p + t - 1) as i64, t as i64) * rat(sign)
        };
        sum += binomial(a as i64, i as i64) * rat(1i64 << (a - i)) * neg;
    }
    sum * factorial(n) / factorial(a)
}

/// `√8 R_m` as an exact operator.
///
/// `R_m f = Σ_{j+k+l+n=m} c_j c_k (−1)^l c_l/(n! √8) ∂_y^n ∂_ȳ^n [f((1+y)²z) (1+y)^{−j−l} (1+ȳ)^{−k−l}]` at `y = 0`,
/// and the Taylor expansion of `f((1+y)²z)` turns each `y`-derivative into `Σ_a κ_{n,p,a} z^a ∂^a`.
pub fn r_operator_scaled(m: usize) -> Result<DiffOpPoly> {
    if m > MAX_R_ORDER {
        return Err(Error::Unsupported(format!("R_m is built for m ≤ {MAX_R_ORDER}, got {m}")));
    }
    let c = i0_coefficients(m);
    let mut out = DiffOpPoly::zero();
    for n in 0..=m {
        for j in 0..=m - n {
            for k in 0..=m - n - j {
                let l = m - n - j - k;
                let sign = if l % 2 == 0 { 1 } else { -1 };
                let pre = &c[j] * &c[k] * &c[l] * rat(sign) / factorial(n);
                for a in 0..=n {
                    let ka = kappa(n, j + l, a);
                    if ka.is_zero() {
                        continue;
                    }
                    for b in 0..=n {
                        let kb = kappa(n, k + l, b);
                        if kb.is_zero() {
                            continue;
                        }
                        let key = OpKey { d: a as i64 - b as i64, s: (a + b) as i64, a: a as u32, b: b as u32 };
                        out.add_term(key, &pre * &ka * kb);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `R_m` itself: exact `√8 R_m` carried with the irrational factor `2^{−3/2}` kept apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ROperator {
    pub m: usize,
    /// `2√2 · R_m`.
    pub scaled: DiffOpPoly,
}

impl ROperator {
    pub const SCALE: f64 = std::f64::consts::FRAC_1_SQRT_2 / 2.0;

    /// `(R_m f)(z)` in floating point.
    pub fn eval(&self, f: &SymbolPoly, z: Complex64) -> Result<Complex64> {
        Ok(self.scaled.eval(f, z)? * Self::SCALE)
    }
}

pub fn r_operator(m: usize) -> Result<ROperator> {
    Ok(ROperator { m, scaled: r_operator_scaled(m)? })
}

/// `Q_m` for `m ≤ M`: `Q̃ = (Σ λ^{−m} √8R_m)/(Σ c_m λ^{−m})`, then `Q_m = |z|^{−m} Q̃_m` from `λ = α|z|`.
pub fn q_series(m_max: usize) -> Result<FormalOpSeries> {
    let c = i0_coefficients(m_max);
    // Scalar reciprocal of Σ c_m x^m.
    let mut inv = vec![BigRational::one()];
    for m in 1..=m_max {
        let mut acc = BigRational::zero();
        for i in 1..=m {
            acc += &c[i] * &inv[m - i];
        }
        inv.push(-acc);
    }
    let rs: Vec<DiffOpPoly> = (0..=m_max).map(r_operator_scaled).collect::<Result<_>>()?;
    let coeffs = (0..=m_max)
        .map(|m| {
            let mut acc = DiffOpPoly::zero();
            for i in 0..=m {
                acc = acc.add(&rs[i].scale(&inv[m - i]));
            }
            acc.radial_shift(-(m as i64))
        })
        .collect();
    Ok(FormalOpSeries { var: SeriesVar::AlphaInv, coeffs })
}

/// `(m/2)_k / k!`.
fn half_pochhammer_over_factorial(m: usize, k: usize) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..k {
        acc *= ratio(m as i64 + 2 * i as i64, 2);
        acc /= rat(i as i64 + 1);
    }
    acc
}

/// The Berezin series re-expanded in `ħ = 1−ε`, using `α^{−1} = ħ/(2√(1−ħ))`.
///
/// `B_j = Σ_{m+k=j} 2^{−m} (m/2)_k/k! · Q_m`.
pub fn berezin_hbar_series(m_max: usize) -> Result<FormalOpSeries> {
    let q = q_series(m_max)?;
    let coeffs = (0..=m_max)
        .map(|j| {
            let mut acc = DiffOpPoly::zero();
            for m in 0..=j {
                let w = half_pochhammer_over_factorial(m, j - m) / rat(1i64 << m);
                acc = acc.add(&q.coeffs[m].scale(&w));
            }
            acc
        })
        .collect();
    Ok(FormalOpSeries { var: SeriesVar::Hbar, coeffs })
}

/// Inverse of the `ħ`-Berezin series; its coefficient `ℛ_j` yields `C_j(f,g) = Σ q·mono·(∂^a f)(∂̄^b g)`.
pub fn c_series(m_max: usize) -> Result<FormalOpSeries> {
    if m_max > MAX_C_ORDER {
        return Err(Error::Unsupported(format!("star-product series is built up to order {MAX_C_ORDER}, got {m_max}")));
    }
    berezin_hbar_series(m_max)?.inverse()
}

/// `|z|^s e^{idθ} (∂^{af} ∂̄^{bf} f)(∂^{ag} ∂̄^{bg} g)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BiKey {
    pub d: i64,
    pub s: i64,
    pub f: (u32, u32),
    pub g: (u32, u32),
}

/// Bidifferential operator with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiDiffOp {
    terms: BTreeMap<BiKey, BigRational>,
}

impl BiDiffOp {
    fn add_term(&mut self, key: BiKey, q: BigRational) {
        if q.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(BigRational::zero);
        *e += q;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `Σ q·mono·∂^a∂̄^b  ↦  Σ q·mono·(∂^a f)(∂̄^b g)`.
    pub fn from_split(op: &DiffOpPoly) -> Self {
        let mut out = Self::default();
        for (k, q) in op.terms() {
            out.add_term(BiKey { d: k.d, s: k.s, f: (k.a, 0), g: (0, k.b) }, q.clone());
        }
        out
    }

    /// `(f, g) ↦ (g, f)`.
    pub fn swap(&self) -> Self {
        let mut out = Self::default();
        for (k, q) in &self.terms {
            out.add_term(BiKey { f: k.g, g: k.f, ..*k }, q.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, q) in &other.terms {
            out.add_term(*k, -q.clone());
        }
        out
    }

    /// Multiplies every term by `|z|^k`.
    pub fn radial_shift(&self, k: i64) -> Self {
        let mut out = Self::default();
        for (key, q) in &self.terms {
            out.add_term(BiKey { s: key.s + k, ..*key }, q.clone());
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BiKey, &BigRational)> {
        self.terms.iter()
    }

    /// `|z| (∂f ∂̄g − ∂̄f ∂g)`.
    pub fn poisson_form() -> Self {
        let mut out = Self::default();
        out.add_term(BiKey { d: 0, s: 1, f: (1, 0), g: (0, 1) }, BigRational::one());
        out.add_term(BiKey { d: 0, s: 1, f: (0, 1), g: (1, 0) }, rat(-1));
        out
    }

    /// `q` with `self = q · other` exactly, if it exists.
    pub fn ratio_to(&self, other: &Self) -> Option<BigRational> {
        let (k0, q0) = other.terms.iter().next()?;
        let q = self.terms.get(k0)? / q0;
        (self.terms.len() == other.terms.len()
            && other.terms.iter().all(|(k, v)| self.terms.get(k) == Some(&(v * &q))))
        .then_some(q)
    }

    pub fn eval(&self, f: &SymbolPoly, g: &SymbolPoly, z: Complex64) -> Result<Complex64> {
        let r = z.norm();
        if r == 0.0 && !self.terms.keys().all(|k| k.s > 0 || (k.s == 0 && k.d == 0)) {
            return Err(Error::Domain("bidifferential operator is singular at z = 0".into()));
        }
        let mut sum = Complex64::new(0.0, 0.0);
        for (k, q) in &self.terms {
            let mono = Complex64::from_polar(r.powi(k.s as i32), k.d as f64 * z.arg());
            sum += rat_to_f64(q) * mono * f.derivative(k.f.0, k.f.1).eval(z) * g.derivative(k.g.0, k.g.1).eval(z);
        }
        Ok(sum)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Berezin series `Σ_m ħ^m (∂∂̄)^m / m!` of the flat Fock space with weight `e^{−|z|²/ħ}`.
pub fn flat_fock_berezin_series(m_max: usize) -> FormalOpSeries {
    let mut coeffs = Vec::with_capacity(m_max + 1);
    let mut fact = BigRational::one();
    for m in 0..=m_max {
        if m > 0 {
            fact *= rat(m as i64);
        }
        coeffs.push(DiffOpPoly::term(BigRational::one() / fact.clone(), OpKey { d: 0, s: 0, a: m as u32, b: m as u32 }));
    }
    FormalOpSeries { var: SeriesVar::Hbar, coeffs }
}

/// `C_1(f,g) − C_1(g,f)` for the Laguerre Fock space.
pub fn antisymmetrized_c1() -> Result<BiDiffOp> {
    let c1 = star_coefficient(&c_series(1)?, 1);
    Ok(c1.sub(&c1.swap()))
}

/// `C_1(f,g) − C_1(g,f)` for the flat Fock space, `−(∂f∂̄g − ∂̄f∂g)`.
pub fn flat_antisymmetrized_c1() -> Result<BiDiffOp> {
    let c1 = star_coefficient(&flat_fock_berezin_series(1).inverse()?, 1);
    Ok(c1.sub(&c1.swap()))
}

/// Exact `κ_rel` with `C_1^{Lag}(f,g) − C_1^{Lag}(g,f) = κ_rel |z| (C_1^{flat}(f,g) − C_1^{flat}(g,f))`.
///
/// Both sides use one bracket convention, so `κ_rel` is the inverse-metric factor of `dz dz̄/(2|z|)`.
pub fn metric_constant() -> Result<Option<BigRational>> {
    Ok(antisymmetrized_c1()?.ratio_to(&flat_antisymmetrized_c1()?.radial_shift(1)))
}

/// `C_j(f,g)` as a bidifferential operator.
pub fn star_coefficient(series: &FormalOpSeries, j: usize) -> BiDiffOp {
    BiDiffOp::from_split(&series.coeffs[j])
}

/// Exact scalar `κ` with `C_1(f,g) − C_1(g,f) = κ |z|(∂f∂̄g − ∂̄f∂g)`.
pub fn correspondence_constant() -> Result<Option<BigRational>> {
    Ok(antisymmetrized_c1()?.ratio_to(&BiDiffOp::poisson_form()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(d: i64, s: i64, a: u32, b: u32) -> OpKey {
        OpKey { d, s, a, b }
    }

    #[test]
    fn kappa_small() {
        // n=1: (1+y)^{−p}(2y+y²)^a, coefficient of y.
        assert_eq!(kappa(1, 0, 1), rat(2));
        assert_eq!(kappa(1, 3, 0), rat(-3));
        assert_eq!(kappa(2, 0, 2), rat(4));
        assert_eq!(kappa(2, 0, 1), rat(2));
    }

    #[test]
    fn r0_and_r1() {
        assert_eq!(r_operator_scaled(0).unwrap(), DiffOpPoly::identity());
        let r1 = r_operator_scaled(1).unwrap();
        let expect = DiffOpPoly::scalar(ratio(1, 8)).add(&DiffOpPoly::term(rat(4), key(0, 2, 1, 1)));
        assert_eq!(r1, expect);
    }

    #[test]
    fn r_at_one_reproduces_i0_coefficients() {
        let c = i0_coefficients(4);
        for m in 0..=4 {
            assert_eq!(r_operator_scaled(m).unwrap().apply_to_one(), DiffOpPoly::scalar(c[m].clone()), "m={m}");
        }
        assert!(r_operator_scaled(MAX_R_ORDER + 1).is_err());
    }

    #[test]
    fn q0_q1_exact() {
        let q = q_series(2).unwrap();
        assert_eq!(q.coeffs[0], DiffOpPoly::identity());
        assert_eq!(q.coeffs[1], DiffOpPoly::laplacian().radial_shift(1));
        assert!(q.coeffs[2].apply_to_one().is_zero());
    }

    #[test]
    fn composition_leibniz() {
        // ∂ ∘ (z̄ z) = z z̄ ∂ + z̄.
        let d = DiffOpPoly::term(rat(1), key(0, 0, 1, 0));
        let zz = DiffOpPoly::term(rat(1), key(0, 2, 0, 0));
        let got = d.compose(&zz);
        let expect = DiffOpPoly::term(rat(1), key(0, 2, 1, 0)).add(&DiffOpPoly::term(rat(1), key(-1, 1, 0, 0)));
        assert_eq!(got, expect);
    }

    #[test]
    fn inverse_roundtrip() {
        let b = berezin_hbar_series(3).unwrap();
        let inv = b.inverse().unwrap();
        for j in 1..=3 {
            let mut acc = DiffOpPoly::zero();
            for i in 0..=j {
                acc = acc.add(&b.coeffs[i].compose(&inv.coeffs[j - i]));
            }
            assert!(acc.is_zero(), "order {j}");
        }
    }

    #[test]
    fn correspondence() {
        assert_eq!(correspondence_constant().unwrap(), Some(rat(-2)));
        assert_eq!(flat_antisymmetrized_c1().unwrap().radial_shift(1).ratio_to(&BiDiffOp::poisson_form()), Some(rat(-1)));
        assert_eq!(metric_constant().unwrap(), Some(rat(2)));
        let c = c_series(2).unwrap();
        assert_eq!(c.coeffs[0], DiffOpPoly::identity());
    }

    #[test]
    fn singular_at_origin_refused() {
        // Q_2 is still regular at 0; Q_3 carries |z|^{−1}.
        let q = q_series(3).unwrap();
        let f = SymbolPoly::monomial(1, 1, Complex64::new(1.0, 0.0));
        assert!(q.coeffs[3].eval(&f, Complex64::new(0.0, 0.0)).is_err());
        assert!(q.coeffs[2].eval(&f, Complex64::new(0.0, 0.0)).is_ok());
        assert!(!q.coeffs[3].regular_at_origin());
        assert!(q.eval_partial(&f, Complex64::new(0.0, 0.0), 0.1, 1).is_err());
    }
}
