//! `lagfock`: verification suites, asymptotic-fit tables and point evaluations.
//!
//! Exit status: 0 when every report row passes, 1 when a row fails or a computation fails,
//! 2 on usage or configuration errors. A failing report is still written in full.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use lagfock::berezin::{berezin_moment, berezin_origin, berezin_quadrature, q_series, SymbolPoly};
use lagfock::convergence::{classify, partial_sum_evidence, CoeffSeq, Truth};
use lagfock::kernels::{hermite_kernel_series, laguerre_kernel_closed, laguerre_kernel_series, legendre_kernel_closed, legendre_kernel_series};
use lagfock::report::{render, Check, Format, Provenance, ReportRow};
use lagfock::specfun::{PolyFamily, QuantParams};
use lagfock::squeeze::{squeeze_matrix, squeeze_column_deviations, SqueezeParams};
use lagfock::suites::{run_suite, run_table, SuiteConfig, SUITES, TABLES};
use lagfock::Error;
use num_complex::Complex64;

const DEFAULT_EPS: f64 = 0.5;
const DEFAULT_N: usize = 80;
const DEFAULT_M: usize = 2;
const DEFAULT_TOL: f64 = 1e-8;

#[derive(Parser, Debug)]
#[command(name = "lagfock", version, about = "Laguerre Fock space, Poisson kernels, Toeplitz calculus and Berezin asymptotics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Comma-separated epsilon values in (0,1) [default: 0.5; verify/table: per-suite acceptance values]
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    eps: Option<Vec<f64>>,
    /// Laguerre order alpha > -1/2 [default: 0; verify: per-suite acceptance values]
    #[arg(long, allow_hyphen_values = true)]
    order: Option<f64>,
    /// Truncation N >= 2 [default: 80; verify: per-suite acceptance values]
    #[arg(long)]
    n: Option<usize>,
    /// Expansion order M [default: 2]
    #[arg(long = "order-m")]
    order_m: Option<usize>,
    /// Numerical tolerance > 0 for point evaluations [default: 1e-8]
    #[arg(long)]
    tol: Option<f64>,
    /// Output format: csv or json
    #[arg(long, default_value = "csv", value_parser = parse_format)]
    format: Format,
    /// Output file; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification suite (or `all`); suite k covers acceptance criterion k
    Verify {
        /// moments, orthogonality, normalization, kernels, toeplitz-contraction, spectral, commutator,
        /// squeeze, berezin, correspondence, legendre, classifiers, fock or all
        #[arg(long)]
        suite: String,
        #[command(flatten)]
        common: Common,
    },
    /// Emit an asymptotic-fit table: berezin-slopes or expansion-slopes
    Table {
        #[arg(long)]
        suite: String,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate a Poisson kernel by its series and compare with the closed form
    Kernel {
        /// laguerre, hermite or legendre
        #[arg(long)]
        family: String,
        /// First point, e.g. 1.5 or 0.3+0.2i
        #[arg(short = 'x', long = "x", allow_hyphen_values = true, value_parser = parse_complex)]
        x: Complex64,
        /// Second point
        #[arg(short = 'y', long = "y", allow_hyphen_values = true, value_parser = parse_complex)]
        y: Complex64,
        #[command(flatten)]
        common: Common,
    },
    /// Classify a coefficient sequence: RKHS property and entire extension
    Classify {
        /// laguerre, hermite or legendre
        #[arg(long)]
        family: String,
        /// geometric:e, power:p, stretched:rate:power, nlog:rate or evenodd:<seq>/<seq>
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
        #[command(flatten)]
        common: Common,
    },
    /// Squeeze-operator columns against their closed form for n <= 10
    Squeeze {
        #[command(flatten)]
        common: Common,
    },
    /// Berezin transform of a polynomial symbol and its asymptotic expansion at one point
    Berezin {
        /// Terms p:q[:re[:im]] separated by commas, meaning sum of c w^p conj(w)^q
        #[arg(long, allow_hyphen_values = true)]
        symbol: String,
        /// Evaluation point, e.g. 1+1i
        #[arg(short = 'z', long = "z", allow_hyphen_values = true, value_parser = parse_complex)]
        z: Complex64,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Parses `a`, `bi`, `a+bi` or `a-bi`.
fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim().replace(' ', "");
    let bad = || format!("cannot parse complex number `{s}`");
    if let Some(body) = t.strip_suffix('i') {
        // Split at the last sign that is not part of an exponent or the leading sign.
        let bytes = body.as_bytes();
        let split = (1..bytes.len()).rev().find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            other => other,
        };
        Ok(Complex64::new(re.parse().map_err(|_| bad())?, im.parse().map_err(|_| bad())?))
    } else {
        Ok(Complex64::new(t.parse().map_err(|_| bad())?, 0.0))
    }
}

fn parse_family(s: &str, order: f64) -> lagfock::Result<PolyFamily> {
    let family = match s {
        "laguerre" => PolyFamily::Laguerre { order },
        "hermite" => PolyFamily::Hermite,
        "legendre" => PolyFamily::Legendre,
        other => return Err(Error::InvalidParameter(format!("unknown family `{other}`; expected laguerre, hermite or legendre"))),
    };
    family.validate()?;
    Ok(family)
}

/// Outcome of a command: rows to write, or an error with its exit class.
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidOrder(_) | Error::InvalidParameter(_) | Error::Domain(_) | Error::Unsupported(_) => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

impl Common {
    fn eps_list(&self) -> Vec<f64> {
        self.eps.clone().unwrap_or_else(|| vec![DEFAULT_EPS])
    }

    fn tol(&self) -> Result<f64, Failure> {
        let tol = self.tol.unwrap_or(DEFAULT_TOL);
        if tol > 0.0 && tol.is_finite() {
            Ok(tol)
        } else {
            Err(Failure::Usage(format!("tolerance must be positive, got {tol}")))
        }
    }

    fn suite_config(&self) -> SuiteConfig {
        SuiteConfig { eps: self.eps.clone(), order: self.order, n: self.n, m: self.order_m }
    }

    fn params(&self) -> Result<Vec<QuantParams>, Failure> {
        self.eps_list().into_iter().map(|e| QuantParams::new(e).map_err(Failure::from)).collect()
    }
}

fn data(suite: &str, quantity: String, value: f64) -> ReportRow {
    ReportRow::new(suite, quantity, value, f64::INFINITY, Provenance::Derived, 0.0, Check::AtMost)
}

fn fmt_z(z: Complex64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

fn kernel_rows(family: &str, x: Complex64, y: Complex64, common: &Common) -> Result<Vec<ReportRow>, Failure> {
    const S: &str = "kernel";
    let tol = common.tol()?;
    let order = common.order.unwrap_or(0.0);
    let family = parse_family(family, order)?;
    let mut rows = Vec::new();
    for p in common.params()? {
        let eps = p.epsilon;
        let tag = format!("{} eps={eps} x={} y={}", family.name(), fmt_z(x), fmt_z(y));
        let (series, closed) = match family {
            PolyFamily::Laguerre { order } => {
                let s = laguerre_kernel_series(&p, order, x, y, tol)?.series_value;
                (s, Some(laguerre_kernel_closed(&p, order, x, y)?))
            }
            PolyFamily::Hermite => {
                if x.im != 0.0 || y.im != 0.0 {
                    return Err(Failure::Usage("the Hermite kernel is evaluated at real points".into()));
                }
                let s = hermite_kernel_series(eps, x.re, y.re, tol)?.series_value;
                let e2 = eps * eps;
                let mehler = ((2.0 * eps * x.re * y.re - e2 * (x.re * x.re + y.re * y.re)) / (1.0 - e2)).exp() / (std::f64::consts::PI * (1.0 - e2)).sqrt();
                (s, Some(Complex64::new(mehler, 0.0)))
            }
            PolyFamily::Legendre => {
                let s = legendre_kernel_series(eps, x, y, tol)?.series_value;
                let real_inside = x.im == 0.0 && y.im == 0.0 && x.re.abs() <= 1.0 && y.re.abs() <= 1.0;
                let closed = if real_inside {
                    Some(Complex64::new(legendre_kernel_closed(eps, x.re.acos() / 2.0, y.re.acos() / 2.0, tol)?, 0.0))
                } else {
                    None
                };
                (s, closed)
            }
        };
        rows.push(data(S, format!("{tag} series real part"), series.re));
        rows.push(data(S, format!("{tag} series imaginary part"), series.im));
        if let Some(c) = closed {
            rows.push(ReportRow::new(S, format!("{tag} |series - closed form|"), (series - c).norm(), 0.0, Provenance::Paper, tol * (1.0 + c.norm()), Check::AtMost));
        }
    }
    Ok(rows)
}

fn truth_value(t: Truth) -> f64 {
    match t {
        Truth::True => 1.0,
        Truth::False => 0.0,
        Truth::Indeterminate => 0.5,
    }
}

fn classify_rows(family: &str, seq: &str, common: &Common) -> Result<Vec<ReportRow>, Failure> {
    const S: &str = "classify";
    let family = parse_family(family, common.order.unwrap_or(0.0))?;
    let c = CoeffSeq::parse(seq)?;
    let v = classify(family, &c)?;
    let tag = format!("{} {seq}", family.name());
    let mut rows = vec![
        data(S, format!("{tag} rkhs (1 true, 0 false, 0.5 indeterminate)"), truth_value(v.rkhs)),
        data(S, format!("{tag} entire extension (1 true, 0 false, 0.5 indeterminate)"), truth_value(v.entire_extension)),
    ];
    if let Some(w) = v.evidence.weighted_sum {
        rows.push(data(S, format!("{tag} weighted coefficient sum"), w));
    }
    if let Some(q) = v.evidence.extension_quantity {
        rows.push(data(S, format!("{tag} extension quantity at the largest inspected index"), q));
    }
    let (er, ee) = partial_sum_evidence(family, &c);
    if er != Truth::Indeterminate {
        rows.push(ReportRow::flag(S, format!("{tag} partial-sum evidence agrees on rkhs"), er == v.rkhs, Provenance::Derived));
    }
    if ee != Truth::Indeterminate && v.rkhs == Truth::True {
        rows.push(ReportRow::flag(S, format!("{tag} partial-sum evidence agrees on entire extension"), ee == v.entire_extension, Provenance::Derived));
    }
    Ok(rows)
}

fn squeeze_rows(common: &Common) -> Result<Vec<ReportRow>, Failure> {
    const S: &str = "squeeze";
    let tol = common.tol()?;
    let n = common.n.unwrap_or(DEFAULT_N);
    if n < 2 {
        return Err(Failure::Usage(format!("truncation N must be at least 2, got {n}")));
    }
    let columns: Vec<usize> = (0..=10.min(n - 1)).collect();
    let mut rows = Vec::new();
    for eps in common.eps_list() {
        let devs = squeeze_column_deviations(eps, &columns, n)?;
        for (k, d) in columns.iter().zip(&devs) {
            rows.push(ReportRow::new(S, format!("eps={eps} N={n} |U e_{k:02} - E_{k:02}|"), *d, 0.0, Provenance::Paper, tol, Check::AtMost));
        }
        let u = squeeze_matrix(SqueezeParams::new(eps)?, n)?;
        rows.push(data(S, format!("eps={eps} N={n} working width"), u.width as f64));
        rows.push(data(S, format!("eps={eps} N={n} interior block change at the final width"), u.block_change));
    }
    Ok(rows)
}

fn berezin_rows(symbol: &str, z: Complex64, common: &Common) -> Result<Vec<ReportRow>, Failure> {
    const S: &str = "berezin";
    let tol = common.tol()?;
    let f = SymbolPoly::parse(symbol)?;
    let m = common.order_m.unwrap_or(DEFAULT_M);
    let q = q_series(m)?;
    let mut rows = Vec::new();
    for p in common.params()? {
        let tag = format!("f={symbol} eps={} alpha={} z={}", p.epsilon, p.alpha_scale, fmt_z(z));
        let moment = berezin_moment(&p, &f, z);
        let quad = berezin_quadrature(&p, &f, z, tol.min(1e-10))?;
        rows.push(data(S, format!("{tag} B f real part"), moment.re));
        rows.push(data(S, format!("{tag} B f imaginary part"), moment.im));
        rows.push(ReportRow::new(S, format!("{tag} moment series vs quadrature, relative to int |f|"), (moment - quad.value).norm() / quad.abs_scale, 0.0, Provenance::Derived, tol, Check::AtMost));
        if z == Complex64::new(0.0, 0.0) {
            let origin = berezin_origin(&p, &f, f.degree() as usize);
            rows.push(ReportRow::new(S, format!("{tag} origin formula vs moment series"), (origin - moment).norm(), 0.0, Provenance::Paper, tol * (1.0 + moment.norm()), Check::AtMost));
        } else {
            let e = q.eval_partial(&f, z, 1.0 / p.alpha_scale, m)?;
            rows.push(data(S, format!("{tag} M={m} expansion real part"), e.re));
            rows.push(data(S, format!("{tag} M={m} expansion imaginary part"), e.im));
            rows.push(data(S, format!("{tag} M={m} |B f - expansion|"), (moment - e).norm()));
        }
    }
    Ok(rows)
}

fn run(cli: Cli) -> Result<(Vec<ReportRow>, Common), Failure> {
    let common = match &cli.command {
        Command::Verify { common, .. }
        | Command::Table { common, .. }
        | Command::Kernel { common, .. }
        | Command::Classify { common, .. }
        | Command::Squeeze { common }
        | Command::Berezin { common, .. } => common,
    };
    common.tol()?;
    common.suite_config().validate()?;
    match cli.command {
        Command::Verify { suite, common } => {
            if suite != "all" && !SUITES.contains(&suite.as_str()) {
                return Err(Failure::Usage(format!("unknown suite `{suite}`; expected one of {} or all", SUITES.join(", "))));
            }
            Ok((run_suite(&suite, &common.suite_config())?, common))
        }
        Command::Table { suite, common } => {
            if !TABLES.contains(&suite.as_str()) {
                return Err(Failure::Usage(format!("unknown table `{suite}`; expected one of {}", TABLES.join(", "))));
            }
            Ok((run_table(&suite, &common.suite_config())?, common))
        }
        Command::Kernel { family, x, y, common } => Ok((kernel_rows(&family, x, y, &common)?, common)),
        Command::Classify { family, seq, common } => Ok((classify_rows(&family, &seq, &common)?, common)),
        Command::Squeeze { common } => Ok((squeeze_rows(&common)?, common)),
        Command::Berezin { symbol, z, common } => Ok((berezin_rows(&symbol, z, &common)?, common)),
    }
}

fn write_report(rows: &[ReportRow], common: &Common) -> anyhow::Result<()> {
    let text = render(rows, common.format)?;
    match &common.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((rows, common)) => {
            if let Err(e) = write_report(&rows, &common) {
                eprintln!("error: {e:#}");
                return ExitCode::from(1);
            }
            let failed = rows.iter().filter(|r| !r.pass).count();
            if failed == 0 {
                ExitCode::SUCCESS
            } else {
                eprintln!("{failed} of {} rows failed", rows.len());
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("1.5").unwrap(), Complex64::new(1.5, 0.0));
        assert_eq!(parse_complex("1+1i").unwrap(), Complex64::new(1.0, 1.0));
        assert_eq!(parse_complex("-0.5-2i").unwrap(), Complex64::new(-0.5, -2.0));
        assert_eq!(parse_complex("i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("1e-3+2e-1i").unwrap(), Complex64::new(1e-3, 0.2));
        assert!(parse_complex("abc").is_err());
    }
}
