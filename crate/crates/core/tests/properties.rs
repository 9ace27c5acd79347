//! Property tests of structural invariants.

use lagfock::berezin::{berezin_moment, SymbolPoly};
use lagfock::convergence::{classify, ellipse_contains, legendre_radius, CoeffSeq, Truth};
use lagfock::fock::FockMeasure;
use lagfock::kernels::{laguerre_kernel_closed, legendre_series_converges};
use lagfock::report::{render, Check, Format, Provenance, ReportRow};
use lagfock::specfun::{PolyFamily, QuantParams};
use lagfock::squeeze::truncated_squeeze_matrix;
use lagfock::toeplitz::{gram, toeplitz_matrix, SymbolFn};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

fn cplx() -> impl Strategy<Value = Complex64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| Complex64::new(a, b))
}

fn symbol_poly() -> impl Strategy<Value = SymbolPoly> {
    prop::collection::vec((0u32..4, 0u32..4, cplx()), 1..5).prop_map(|terms| {
        let mut f = SymbolPoly::default();
        for (p, q, c) in terms {
            f.add(p, q, c);
        }
        f
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn derivative_is_linear(f in symbol_poly(), g in symbol_poly(), a in 0u32..3, b in 0u32..3, z in cplx()) {
        let mut sum = f.clone();
        for (&(p, q), &c) in &g.coefficients {
            sum.add(p, q, c);
        }
        let lhs = sum.derivative(a, b).eval(z);
        let rhs = f.derivative(a, b).eval(z) + g.derivative(a, b).eval(z);
        prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
    }

    #[test]
    fn holomorphic_symbols_are_fixed(coeffs in prop::collection::vec(cplx(), 1..4), z in cplx(), eps in 0.1..0.9f64) {
        let mut f = SymbolPoly::default();
        for (p, c) in coeffs.iter().enumerate() {
            f.add(p as u32, 0, *c);
        }
        let params = QuantParams::new(eps).unwrap();
        let b = berezin_moment(&params, &f, z);
        prop_assert!((b - f.eval(z)).norm() <= 1e-9 * (1.0 + f.eval(z).norm()));
    }

    #[test]
    fn toeplitz_contraction(amps in prop::collection::vec((cplx(), 0.0..4.0f64), 1..4), eps in 0.05..0.995f64, legendre in any::<bool>()) {
        let sup: f64 = amps.iter().map(|(a, _)| a.norm()).sum();
        let terms = amps.clone();
        let f = SymbolFn::callable(move |x| terms.iter().map(|&(a, w)| a * Complex64::from_polar(1.0, w * x)).sum(), sup);
        let basis = if legendre { PolyFamily::Legendre } else { PolyFamily::Laguerre { order: 0.0 } };
        let t = toeplitz_matrix(&QuantParams::new(eps).unwrap(), &f, basis, 24).unwrap();
        prop_assert!(t.op_norm() <= sup * (1.0 + 1e-12));
    }

    #[test]
    fn real_symbol_gram_is_symmetric(coeffs in prop::collection::vec(-2.0..2.0f64, 1..5), legendre in any::<bool>()) {
        let basis = if legendre { PolyFamily::Legendre } else { PolyFamily::Laguerre { order: 0.0 } };
        let g = gram(&SymbolFn::polynomial(&coeffs), basis, 12).unwrap();
        let scale = g.iter().fold(1.0f64, |m, z| m.max(z.norm()));
        prop_assert!((&g - g.adjoint()).iter().all(|z| z.norm() <= 1e-12 * scale));
    }

    #[test]
    fn squeeze_exponential_is_orthogonal(theta in 0.05..2.0f64) {
        let u = truncated_squeeze_matrix(theta, 30).unwrap();
        let gap = (&u * u.transpose() - DMatrix::<f64>::identity(30, 30)).abs().max();
        prop_assert!(gap < 1e-10);
    }

    #[test]
    fn laguerre_kernel_is_hermitian(x in cplx(), y in cplx(), eps in 0.1..0.9f64, order in 0.0..2.0f64) {
        let p = QuantParams::new(eps).unwrap();
        let a = laguerre_kernel_closed(&p, order, x, y).unwrap();
        let b = laguerre_kernel_closed(&p, order, y, x).unwrap().conj();
        prop_assert!((a - b).norm() <= 1e-12 * (1.0 + a.norm()));
    }

    #[test]
    fn monomial_norm_ratio(eps in 0.05..0.95f64, order in 0.0..3.0f64, j in 0usize..40) {
        let m = FockMeasure::new(QuantParams::new(eps).unwrap(), order).unwrap();
        let ratio = (m.ln_monomial_norm(j + 1) - m.ln_monomial_norm(j)).exp();
        let expected = (1.0 - eps).powi(2) * (j as f64 + 1.0) * (j as f64 + order + 1.0) / eps;
        prop_assert!((ratio / expected - 1.0).abs() < 1e-10);
    }

    #[test]
    fn ellipse_matches_series_domain(x in cplx(), eps in 0.05..0.95f64) {
        // Skip a thin shell around the boundary where rounding decides.
        let margin = (legendre_radius(x).powi(2) * eps - 1.0).abs();
        prop_assume!(margin > 1e-9);
        prop_assert_eq!(ellipse_contains(eps, x), legendre_series_converges(eps, x, x));
    }

    #[test]
    fn power_law_rkhs_threshold(p in -3.0..0.5f64) {
        prop_assume!((p + 1.0).abs() > 1e-9 && (p + 0.5).abs() > 1e-9);
        let seq = CoeffSeq::PowerLaw(p);
        let lag = classify(PolyFamily::Laguerre { order: 0.0 }, &seq).unwrap();
        let her = classify(PolyFamily::Hermite, &seq).unwrap();
        prop_assert_eq!(lag.rkhs, Truth::from_bool(p < -1.0));
        prop_assert_eq!(her.rkhs, Truth::from_bool(p < -0.5));
    }

    #[test]
    fn report_is_deterministic_and_consistent(vals in prop::collection::vec((0usize..4, -1e3..1e3f64, -1e3..1e3f64), 1..20)) {
        let rows: Vec<ReportRow> = vals
            .iter()
            .enumerate()
            .map(|(i, &(s, a, b))| ReportRow::new(&format!("s{s}"), format!("q{:03}", (i * 7919) % 1000), a, b, Provenance::Derived, 1.0, Check::Absolute))
            .collect();
        let mut reversed = rows.clone();
        reversed.reverse();
        let csv = render(&rows, Format::Csv).unwrap();
        prop_assert_eq!(&csv, &render(&reversed, Format::Csv).unwrap());
        let json: serde_json::Value = serde_json::from_str(&render(&rows, Format::Json).unwrap()).unwrap();
        prop_assert_eq!(json.as_array().unwrap().len(), csv.lines().count() - 1);
    }
}
