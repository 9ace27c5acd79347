//! Three-state classification of coefficient sequences and certified kernel partial sums.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::envelope::{hermite_envelope, laguerre_envelope, ENVELOPE_FIT_END, ENVELOPE_FIT_START};
use crate::error::{invalid, Error, Result};
use crate::specfun::{eval_poly_all_real, hermite_normalized_all, PolyFamily};

/// Starting index of the doubling windows used for partial-sum evidence.
pub const EVIDENCE_START: usize = 1000;
/// Number of successive doublings inspected.
pub const EVIDENCE_DOUBLINGS: usize = 4;
/// Window-increment ratios above this are read as divergence.
pub const DIVERGENT_RATIO: f64 = 0.95;
/// Window-increment ratios below this are read as convergence.
pub const CONVERGENT_RATIO: f64 = 0.9;
/// Growth factor per doubling that counts as unbounded growth of the entire-extension quantity.
pub const UNBOUNDED_GROWTH: f64 = 1.05;

/// Three-valued outcome; finite computation cannot always decide an exact dichotomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Truth {
    True,
    False,
    Indeterminate,
}

impl Truth {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }

    pub fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::False, _) | (_, Truth::False) => Truth::False,
            (Truth::True, Truth::True) => Truth::True,
            _ => Truth::Indeterminate,
        }
    }
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Truth::True => "true",
            Truth::False => "false",
            Truth::Indeterminate => "indeterminate",
        })
    }
}

/// Closed-form sub-geometric decay.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SubGeometric {
    /// `exp(−rate·n^power)`, `power > 0`.
    StretchedExp { rate: f64, power: f64 },
    /// `exp(−rate·n/ln(n+2))`.
    NOverLog { rate: f64 },
}

/// Positive coefficient sequence `c_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum CoeffSeq {
    /// `εⁿ`.
    Geometric(f64),
    /// `(n+1)^p`.
    PowerLaw(f64),
    SubGeometric(SubGeometric),
    /// Explicit values with an optional bound `c_n ≤ tail_constant · tail(n)` beyond the table.
    Tabulated { values: Vec<f64>, tail: Option<(f64, Box<CoeffSeq>)> },
    /// Different laws on even and odd indices.
    EvenOdd { even: Box<CoeffSeq>, odd: Box<CoeffSeq> },
}

impl CoeffSeq {
    /// Parses `geometric:ε`, `power:p`, `stretched:rate:power`, `nlog:rate` or `evenodd:<seq>/<seq>`.
    pub fn parse(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("evenodd:") {
            let (e, o) = rest.split_once('/').ok_or_else(|| invalid("evenodd needs `even/odd`"))?;
            return Ok(CoeffSeq::EvenOdd { even: Box::new(Self::parse(e)?), odd: Box::new(Self::parse(o)?) });
        }
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize| -> Result<f64> {
            parts.get(i).ok_or_else(|| invalid(format!("sequence `{s}` is missing a parameter")))?.trim().parse::<f64>().map_err(|_| invalid(format!("bad number in `{s}`")))
        };
        let seq = match parts[0] {
            "geometric" => CoeffSeq::Geometric(num(1)?),
            "power" => CoeffSeq::PowerLaw(num(1)?),
            "stretched" => CoeffSeq::SubGeometric(SubGeometric::StretchedExp { rate: num(1)?, power: num(2)? }),
            "nlog" => CoeffSeq::SubGeometric(SubGeometric::NOverLog { rate: num(1)? }),
            other => return Err(invalid(format!("unknown sequence kind `{other}`"))),
        };
        seq.validate()?;
        Ok(seq)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            CoeffSeq::Geometric(e) if !(*e > 0.0 && e.is_finite()) => Err(invalid(format!("geometric ratio must be positive, got {e}"))),
            CoeffSeq::PowerLaw(p) if !p.is_finite() => Err(invalid("power must be finite")),
            CoeffSeq::SubGeometric(SubGeometric::StretchedExp { rate, power }) if !(*rate > 0.0 && *power > 0.0) => {
                Err(invalid("stretched exponential needs positive rate and power"))
            }
            CoeffSeq::SubGeometric(SubGeometric::NOverLog { rate }) if !(*rate > 0.0) => Err(invalid("rate must be positive")),
            CoeffSeq::Tabulated { values, .. } if values.iter().any(|v| !(*v > 0.0)) => Err(invalid("tabulated coefficients must be positive")),
            CoeffSeq::EvenOdd { even, odd } => {
                even.validate()?;
                odd.validate()
            }
            _ => Ok(()),
        }
    }

    /// `ln c_n`; `None` past the end of a table.
    pub fn ln_term(&self, n: usize) -> Option<f64> {
        let nf = n as f64;
        match self {
            CoeffSeq::Geometric(e) => Some(nf * e.ln()),
            CoeffSeq::PowerLaw(p) => Some(p * (nf + 1.0).ln()),
            CoeffSeq::SubGeometric(SubGeometric::StretchedExp { rate, power }) => Some(-rate * nf.powf(*power)),
            CoeffSeq::SubGeometric(SubGeometric::NOverLog { rate }) => Some(-rate * nf / (nf + 2.0).ln()),
            CoeffSeq::Tabulated { values, .. } => values.get(n).map(|v| v.ln()),
            CoeffSeq::EvenOdd { even, odd } => {
                if n % 2 == 0 {
                    even.ln_term(n)
                } else {
                    odd.ln_term(n)
                }
            }
        }
    }

    pub fn term(&self, n: usize) -> Option<f64> {
        self.ln_term(n).map(f64::exp)
    }

    /// `Σ_{n>n0} c_n (n+1)^s` bounded from above; infinite when the series diverges or no bound is known.
    pub fn tail_bound(&self, n0: usize, s: f64) -> f64 {
        let m = (n0 + 1) as f64;
        match self {
            CoeffSeq::Geometric(e) => {
                if *e >= 1.0 {
                    return f64::INFINITY;
                }
                // Term ratios are at most e·((m+2)/(m+1))^s from n0+1 on.
                let q = e * ((m + 2.0) / (m + 1.0)).powf(s.max(0.0));
                if q >= 1.0 {
                    return f64::INFINITY;
                }
                (m * e.ln() + s * (m + 1.0).ln()).exp() / (1.0 - q)
            }
            CoeffSeq::PowerLaw(p) => {
                let q = p + s;
                if q >= -1.0 {
                    return f64::INFINITY;
                }
                // Σ_{k ≥ m+1} k^q ≤ ∫_m^∞ x^q dx with k = n+1.
                (m).powf(q + 1.0) / (-q - 1.0)
            }
            CoeffSeq::SubGeometric(SubGeometric::StretchedExp { rate, power }) => stretched_tail(*rate, *power, n0, s),
            CoeffSeq::SubGeometric(SubGeometric::NOverLog { rate }) => {
                // n/ln(n+2) ≥ √n for n ≥ 4.
                let head: f64 = (n0 + 1..4).map(|n| self.term(n).unwrap() * ((n + 1) as f64).powf(s)).sum();
                head + stretched_tail(*rate, 0.5, n0.max(3), s)
            }
            CoeffSeq::Tabulated { values, tail } => {
                let head: f64 = values.iter().enumerate().skip(n0 + 1).map(|(n, v)| v * ((n + 1) as f64).powf(s)).sum();
                match tail {
                    Some((c, law)) => head + c * law.tail_bound(n0.max(values.len().saturating_sub(1)), s),
                    None => f64::INFINITY,
                }
            }
            CoeffSeq::EvenOdd { even, odd } => even.tail_bound(n0, s) + odd.tail_bound(n0, s),
        }
    }
}

/// `Σ_{n>n0} e^{−a n^β} (n+1)^s` by explicit summation to a cut-off plus an integral remainder.
///
/// Past the cut-off `M` the terms decrease and `∫_M^∞ e^{−a x^β} dx ≤ 2 e^{−aM^β} M^{1−β}/(aβ)` once `aM^β ≥ 2/β`.
/// For `s > 0` half of the exponent absorbs the polynomial factor.
fn stretched_tail(a: f64, beta: f64, n0: usize, s: f64) -> f64 {
    let mut sum = 0.0;
    let mut n = n0 + 1;
    loop {
        let nf = n as f64;
        let x = a * nf.powf(beta);
        sum += (-x + s * (nf + 1.0).ln()).exp();
        if x > 60.0 + 2.0 * s.abs() * (nf + 1.0).ln() && x > 8.0 / beta {
            let rem = if s <= 0.0 {
                2.0 * (-x).exp() * nf.powf(1.0 - beta) / (a * beta)
            } else {
                4.0 * (nf + 1.0).powf(s) * (-x / 2.0).exp() * nf.powf(1.0 - beta) / (a * beta)
            };
            return sum + rem;
        }
        n += 1;
        if n > 50_000_000 {
            return f64::INFINITY;
        }
    }
}

impl fmt::Display for CoeffSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffSeq::Geometric(e) => write!(f, "geometric:{e}"),
            CoeffSeq::PowerLaw(p) => write!(f, "power:{p}"),
            CoeffSeq::SubGeometric(SubGeometric::StretchedExp { rate, power }) => write!(f, "stretched:{rate}:{power}"),
            CoeffSeq::SubGeometric(SubGeometric::NOverLog { rate }) => write!(f, "nlog:{rate}"),
            CoeffSeq::Tabulated { values, tail } => write!(f, "tabulated[{}]{}", values.len(), if tail.is_some() { "+tail" } else { "" }),
            CoeffSeq::EvenOdd { even, odd } => write!(f, "evenodd:{even}/{odd}"),
        }
    }
}

/// Classification result with the decisive quantities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub rkhs: Truth,
    pub entire_extension: Truth,
    pub evidence: Evidence,
}

/// Numbers behind a verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    /// Weighted sum `Σ w_n c_n` when known to be finite; infinite when it diverges.
    pub weighted_sum: Option<f64>,
    /// `−ln c_n / √n` (Laguerre, Hermite) or `−ln c_n / n` (Legendre) at the largest inspected index.
    pub extension_quantity: Option<f64>,
    pub note: String,
}

/// Weight exponent `s` in `Σ (n+1)^s c_n`: `−1/2` for Hermite, `0` otherwise.
pub fn summability_exponent(family: PolyFamily) -> f64 {
    match family {
        PolyFamily::Hermite => -0.5,
        _ => 0.0,
    }
}

fn extension_scale(family: PolyFamily, n: f64) -> f64 {
    match family {
        PolyFamily::Legendre => n,
        _ => n.sqrt(),
    }
}

/// Exact summability for closed-form laws.
fn analytic_summable(c: &CoeffSeq, s: f64) -> Truth {
    match c {
        CoeffSeq::Geometric(e) => Truth::from_bool(*e < 1.0),
        CoeffSeq::PowerLaw(p) => Truth::from_bool(p + s < -1.0),
        CoeffSeq::SubGeometric(_) => Truth::True,
        CoeffSeq::Tabulated { tail: None, .. } => Truth::Indeterminate,
        // A majorant can only prove convergence.
        CoeffSeq::Tabulated { tail: Some((_, law)), .. } => match analytic_summable(law, s) {
            Truth::True => Truth::True,
            _ => Truth::Indeterminate,
        },
        CoeffSeq::EvenOdd { even, odd } => analytic_summable(even, s).and(analytic_summable(odd, s)),
    }
}

/// Exact entire-extension test: `−ln c_n / √n → ∞` (Laguerre, Hermite) or `−ln c_n / n → ∞` (Legendre).
fn analytic_entire(c: &CoeffSeq, family: PolyFamily) -> Truth {
    let legendre = matches!(family, PolyFamily::Legendre);
    match c {
        CoeffSeq::Geometric(e) => Truth::from_bool(!legendre && *e < 1.0),
        CoeffSeq::PowerLaw(_) => Truth::False,
        CoeffSeq::SubGeometric(SubGeometric::StretchedExp { power, .. }) => {
            Truth::from_bool(if legendre { *power > 1.0 } else { *power > 0.5 })
        }
        CoeffSeq::SubGeometric(SubGeometric::NOverLog { .. }) => Truth::from_bool(!legendre),
        CoeffSeq::Tabulated { tail: None, .. } => Truth::Indeterminate,
        CoeffSeq::Tabulated { tail: Some((_, law)), .. } => match analytic_entire(law, family) {
            Truth::True => Truth::True,
            _ => Truth::Indeterminate,
        },
        CoeffSeq::EvenOdd { even, odd } => analytic_entire(even, family).and(analytic_entire(odd, family)),
    }
}

/// RKHS and entire-extension verdicts.
///
/// Legendre and Laguerre need `Σ c_n < ∞`; Hermite needs both `Σ c_{2n} n^{−1/2}` and `Σ c_{2n+1} n^{−1/2}`
/// finite, which for one sequence is `Σ n^{−1/2} c_n < ∞`.
pub fn classify(family: PolyFamily, c: &CoeffSeq) -> Result<Verdict> {
    family.validate()?;
    c.validate()?;
    let s = summability_exponent(family);
    let rkhs = analytic_summable(c, s);
    let mut entire_extension = analytic_entire(c, family);
    // The extension criterion presupposes the space exists.
    if rkhs == Truth::False {
        entire_extension = Truth::False;
    }
    let weighted_sum = match rkhs {
        Truth::True => {
            let head_len = 64usize;
            let head: f64 = (0..=head_len).map(|n| c.term(n).unwrap_or(0.0) * ((n + 1) as f64).powf(s)).sum();
            Some(head + c.tail_bound(head_len, s))
        }
        Truth::False => Some(f64::INFINITY),
        Truth::Indeterminate => None,
    };
    let probe = EVIDENCE_START << EVIDENCE_DOUBLINGS;
    let extension_quantity = c.ln_term(probe).map(|l| -l / extension_scale(family, probe as f64));
    let note = match c {
        CoeffSeq::Tabulated { tail: None, .. } => "tabulated sequence without tail envelope".to_string(),
        _ => String::new(),
    };
    Ok(Verdict { rkhs, entire_extension, evidence: Evidence { weighted_sum, extension_quantity, note } })
}

/// Reads convergence from window increments `d_k = S(2^{k+1}N₀) − S(2^k N₀)` given in log form.
pub fn doubling_verdict(ln_increments: &[f64]) -> Truth {
    let ratios: Vec<f64> = ln_increments.windows(2).map(|w| w[1] - w[0]).collect();
    if ln_increments.iter().all(|&v| v == f64::NEG_INFINITY) {
        return Truth::True;
    }
    if ratios.iter().all(|&r| r.is_nan() || r > DIVERGENT_RATIO.ln()) && ratios.iter().any(|r| !r.is_nan()) {
        return Truth::False;
    }
    if ratios.iter().all(|&r| r.is_nan() || r < CONVERGENT_RATIO.ln()) {
        return Truth::True;
    }
    Truth::Indeterminate
}

fn ln_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let m = a.max(b);
    m + ((a - m).exp() + (b - m).exp()).ln()
}

/// Log window increments of `Σ (n+1)^s c_n` over successive doublings from [`EVIDENCE_START`].
pub fn summability_increments(c: &CoeffSeq, s: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(EVIDENCE_DOUBLINGS + 1);
    for k in 0..=EVIDENCE_DOUBLINGS {
        let lo = EVIDENCE_START << k;
        let hi = lo * 2;
        let mut acc = f64::NEG_INFINITY;
        for n in lo..hi {
            if let Some(l) = c.ln_term(n) {
                acc = ln_add(acc, l + s * ((n + 1) as f64).ln());
            }
        }
        out.push(acc);
    }
    out
}

/// Direct partial-sum evidence, independent of the analytic rules.
pub fn partial_sum_evidence(family: PolyFamily, c: &CoeffSeq) -> (Truth, Truth) {
    let s = summability_exponent(family);
    let rkhs = match c {
        CoeffSeq::EvenOdd { even, odd } => doubling_verdict(&summability_increments(even, s)).and(doubling_verdict(&summability_increments(odd, s))),
        _ => doubling_verdict(&summability_increments(c, s)),
    };
    let q: Vec<f64> = (0..=EVIDENCE_DOUBLINGS)
        .map(|k| {
            let n = EVIDENCE_START << k;
            // Both parities must grow; take the slower one.
            let a = c.ln_term(n).unwrap_or(f64::NAN);
            let b = c.ln_term(n + 1).unwrap_or(f64::NAN);
            -a.max(b) / extension_scale(family, n as f64)
        })
        .collect();
    let grows = q.iter().all(|&v| v > 0.0) && q.windows(2).all(|w| w[1] > UNBOUNDED_GROWTH * w[0]);
    let entire = if rkhs == Truth::False { Truth::False } else { Truth::from_bool(grows) };
    (rkhs, entire)
}

/// Partial kernel sum with a certified tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartialSum {
    pub value: f64,
    /// Bound on the omitted tail; infinite when no finite bound is available.
    pub tail_bound: f64,
    pub terms: usize,
}

/// `Σ_{n≤N} c_n b_n(x) b_n(y)` for orthonormal `b_n`, written for Legendre as `(n+½) P_n(x) P_n(y)`.
///
/// Tails use the family envelopes: `n^{−1/4}` for Laguerre and normalized Hermite values, and
/// `|P_n| ≤ 1` with Bernstein's `√(2/(πn)) (1−x²)^{−1/4}` inside `(−1, 1)` for Legendre.
pub fn kernel_partial_sum(family: PolyFamily, c: &CoeffSeq, x: f64, y: f64, n: usize) -> Result<PartialSum> {
    family.validate()?;
    c.validate()?;
    let count = n + 1;
    let coeffs: Vec<f64> = (0..count).map(|k| c.term(k).ok_or_else(|| invalid(format!("sequence has no term {k}")))).collect::<Result<_>>()?;
    match family {
        PolyFamily::Legendre => {
            if x.abs() > 1.0 || y.abs() > 1.0 {
                return Err(Error::Domain("Legendre partial sums are certified on [−1, 1]".into()));
            }
            let px = eval_poly_all_real(family, n, x)?;
            let py = eval_poly_all_real(family, n, y)?;
            let value = (0..count).map(|k| coeffs[k] * (k as f64 + 0.5) * px[k] * py[k]).sum();
            let n0 = n.max(1);
            let bern = |t: f64| (2.0 / std::f64::consts::PI).sqrt() * (1.0 - t * t).powf(-0.25);
            let (scale, s) = match (x.abs() < 1.0, y.abs() < 1.0) {
                (true, true) => (bern(x) * bern(y) * (1.0 + 0.5 / n0 as f64), 0.0),
                (true, false) | (false, true) => {
                    let t = if x.abs() < 1.0 { x } else { y };
                    (bern(t) * (1.0 + 1.0 / (4.0 * (n0 * (n0 + 1)) as f64)).sqrt(), 0.5)
                }
                (false, false) => (1.0, 1.0),
            };
            Ok(PartialSum { value, tail_bound: scale * c.tail_bound(n, s), terms: count })
        }
        PolyFamily::Laguerre { order } => {
            if order != 0.0 {
                return Err(Error::Unsupported("Laguerre envelopes are fitted for order 0".into()));
            }
            if x < 0.0 || y < 0.0 {
                return Err(Error::Domain("Laguerre partial sums need x, y ≥ 0".into()));
            }
            let px = eval_poly_all_real(family, n, x)?;
            let py = eval_poly_all_real(family, n, y)?;
            let value = (0..count).map(|k| coeffs[k] * px[k] * py[k]).sum();
            let ex = laguerre_envelope(x, ENVELOPE_FIT_END)?;
            let ey = laguerre_envelope(y, ENVELOPE_FIT_END)?;
            Ok(PartialSum { value, tail_bound: envelope_tail(c, n, ex.cap * ey.cap, ex.constant * ey.constant), terms: count })
        }
        PolyFamily::Hermite => {
            let px = hermite_normalized_all(n, x);
            let py = hermite_normalized_all(n, y);
            let value = (0..count).map(|k| coeffs[k] * px[k] * py[k]).sum();
            let ex = hermite_envelope(x);
            let ey = hermite_envelope(y);
            Ok(PartialSum { value, tail_bound: envelope_tail(c, n, ex.cap * ey.cap, ex.constant * ey.constant), terms: count })
        }
    }
}

/// Tail `Σ_{k>N} c_k B_k` with `B_k ≤ cap` before the fit window and `B_k ≤ constant·k^{−1/2}` inside it.
fn envelope_tail(c: &CoeffSeq, n: usize, cap: f64, constant: f64) -> f64 {
    let start = ENVELOPE_FIT_START;
    let head: f64 = (n + 1..start).map(|k| c.term(k).unwrap_or(f64::INFINITY) * cap).sum();
    let n0 = n.max(start - 1);
    // k^{−1/2} ≤ (1 + 1/k)^{1/2} (k+1)^{−1/2}.
    let factor = (1.0 + 1.0 / (n0 + 1) as f64).sqrt();
    head + constant * factor * c.tail_bound(n0, -0.5)
}

/// The twelve reference sequences used by the classifier suite.
pub fn canonical_sequences() -> Vec<(&'static str, CoeffSeq)> {
    use SubGeometric::*;
    vec![
        ("geometric-0.5", CoeffSeq::Geometric(0.5)),
        ("geometric-0.9", CoeffSeq::Geometric(0.9)),
        ("constant", CoeffSeq::PowerLaw(0.0)),
        ("power-0.4", CoeffSeq::PowerLaw(-0.4)),
        ("power-0.75", CoeffSeq::PowerLaw(-0.75)),
        ("power-1", CoeffSeq::PowerLaw(-1.0)),
        ("power-2", CoeffSeq::PowerLaw(-2.0)),
        ("exp-sqrt", CoeffSeq::SubGeometric(StretchedExp { rate: 1.0, power: 0.5 })),
        ("exp-n0.25", CoeffSeq::SubGeometric(StretchedExp { rate: 1.0, power: 0.25 })),
        ("exp-n0.75", CoeffSeq::SubGeometric(StretchedExp { rate: 1.0, power: 0.75 })),
        ("exp-n-over-log", CoeffSeq::SubGeometric(NOverLog { rate: 1.0 })),
        ("exp-n1.5", CoeffSeq::SubGeometric(StretchedExp { rate: 0.1, power: 1.5 })),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    const LAG: PolyFamily = PolyFamily::Laguerre { order: 0.0 };

    #[test]
    fn documented_examples() {
        for fam in [PolyFamily::Legendre, LAG, PolyFamily::Hermite] {
            let v = classify(fam, &CoeffSeq::Geometric(0.5)).unwrap();
            assert_eq!(v.rkhs, Truth::True);
            let expect = if matches!(fam, PolyFamily::Legendre) { Truth::False } else { Truth::True };
            assert_eq!(v.entire_extension, expect);
        }
        assert_eq!(classify(PolyFamily::Hermite, &CoeffSeq::PowerLaw(-0.5)).unwrap().rkhs, Truth::False);
        let v = classify(PolyFamily::Legendre, &CoeffSeq::PowerLaw(-2.0)).unwrap();
        assert_eq!((v.rkhs, v.entire_extension), (Truth::True, Truth::False));
        let t = CoeffSeq::Tabulated { values: vec![1.0, 0.5, 0.25], tail: None };
        let v = classify(LAG, &t).unwrap();
        assert_eq!((v.rkhs, v.entire_extension), (Truth::Indeterminate, Truth::Indeterminate));
        let t = CoeffSeq::Tabulated { values: vec![1.0, 0.5, 0.25], tail: Some((1.0, Box::new(CoeffSeq::Geometric(0.5)))) };
        assert_eq!(classify(LAG, &t).unwrap().rkhs, Truth::True);
    }

    #[test]
    fn evidence_agrees_with_rules() {
        for fam in [PolyFamily::Legendre, LAG, PolyFamily::Hermite] {
            for (name, c) in canonical_sequences() {
                let v = classify(fam, &c).unwrap();
                let (r, e) = partial_sum_evidence(fam, &c);
                assert_eq!(v.rkhs, r, "{fam:?} {name}");
                assert_eq!(v.entire_extension, e, "{fam:?} {name}");
            }
        }
    }

    #[test]
    fn tail_bounds_dominate() {
        for (name, c) in canonical_sequences() {
            for s in [-0.5, 0.0] {
                let bound = c.tail_bound(20, s);
                if bound.is_finite() {
                    let direct: f64 = (21..200_000).map(|n| c.term(n).unwrap() * ((n + 1) as f64).powf(s)).sum();
                    assert!(direct <= bound * (1.0 + 1e-12), "{name} s={s}: {direct} > {bound}");
                }
            }
        }
    }

    #[test]
    fn legendre_endpoint_sum() {
        let eps: f64 = 0.6;
        let p = kernel_partial_sum(PolyFamily::Legendre, &CoeffSeq::Geometric(eps), 1.0, 1.0, 80).unwrap();
        let exact = (1.0 + eps) / (2.0 * (1.0 - eps).powi(2));
        assert!((p.value - exact).abs() <= p.tail_bound + 1e-12);
        assert!(p.tail_bound < 1e-12);
    }

    #[test]
    fn hermite_diagonal_at_zero() {
        // Odd Hermite values vanish at 0, so only the even series matters.
        let inc = |c: &CoeffSeq| -> Vec<f64> {
            (0..=EVIDENCE_DOUBLINGS)
                .map(|k| {
                    let lo = 500 << k;
                    let p = hermite_normalized_all(2 * lo, 0.0);
                    (lo..2 * lo).map(|n| c.term(n).unwrap() * p[n] * p[n]).sum::<f64>().ln()
                })
                .collect()
        };
        assert_eq!(doubling_verdict(&inc(&CoeffSeq::PowerLaw(-1.0))), Truth::True);
        assert_eq!(doubling_verdict(&inc(&CoeffSeq::PowerLaw(-0.5))), Truth::False);
    }

    #[test]
    fn two_series_condition() {
        let good = CoeffSeq::PowerLaw(-1.0);
        let bad = CoeffSeq::PowerLaw(-0.5);
        let mixed = CoeffSeq::EvenOdd { even: Box::new(good.clone()), odd: Box::new(bad.clone()) };
        assert_eq!(classify(PolyFamily::Hermite, &good).unwrap().rkhs, Truth::True);
        assert_eq!(classify(PolyFamily::Hermite, &mixed).unwrap().rkhs, Truth::False);
        assert_eq!(partial_sum_evidence(PolyFamily::Hermite, &mixed).0, Truth::False);
        let both = CoeffSeq::EvenOdd { even: Box::new(good), odd: Box::new(CoeffSeq::Geometric(0.3)) };
        assert_eq!(classify(PolyFamily::Hermite, &both).unwrap().rkhs, Truth::True);
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["geometric:0.5", "power:-0.5", "stretched:1:0.75", "nlog:2", "evenodd:power:-1/geometric:0.3"] {
            let c = CoeffSeq::parse(s).unwrap();
            assert_eq!(CoeffSeq::parse(&c.to_string()).unwrap(), c);
        }
        assert!(CoeffSeq::parse("bogus:1").is_err());
        assert!(CoeffSeq::parse("geometric:-1").is_err());
    }

    #[test]
    fn partial_sums_certified() {
        let c = CoeffSeq::Geometric(0.5);
        for fam in [LAG, PolyFamily::Hermite] {
            let a = kernel_partial_sum(fam, &c, 1.3, 0.4, 30).unwrap();
            let b = kernel_partial_sum(fam, &c, 1.3, 0.4, 200).unwrap();
            assert!((a.value - b.value).abs() <= a.tail_bound, "{fam:?}");
        }
        let c = CoeffSeq::PowerLaw(-2.0);
        let a = kernel_partial_sum(LAG, &c, 2.0, 2.0, 60).unwrap();
        let b = kernel_partial_sum(LAG, &c, 2.0, 2.0, 3000).unwrap();
        assert!((a.value - b.value).abs() <= a.tail_bound);
    }
}
