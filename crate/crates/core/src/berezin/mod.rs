//! Berezin transform on the order-0 Laguerre Fock space and its semiclassical expansion.

mod numeric;
mod symbolic;

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

pub use numeric::*;
pub use symbolic::*;

/// Polynomial symbol `Σ coeff(p,q) w^p w̄^q`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SymbolPoly {
    pub coefficients: BTreeMap<(u32, u32), Complex64>,
}

impl SymbolPoly {
    pub fn monomial(p: u32, q: u32, c: Complex64) -> Self {
        let mut out = Self::default();
        out.add(p, q, c);
        out
    }

    pub fn constant(c: f64) -> Self {
        Self::monomial(0, 0, Complex64::new(c, 0.0))
    }

    pub fn add(&mut self, p: u32, q: u32, c: Complex64) {
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        let e = self.coefficients.entry((p, q)).or_insert(Complex64::new(0.0, 0.0));
        *e += c;
        if *e == Complex64::new(0.0, 0.0) {
            self.coefficients.remove(&(p, q));
        }
    }

    /// Parses `p:q[:re[:im]]` terms separated by commas, e.g. `1:1` for `|w|²` or `2:1:0.5` for `w²w̄/2`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut out = Self::default();
        for term in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let parts: Vec<&str> = term.split(':').collect();
            if !(2..=4).contains(&parts.len()) {
                return Err(invalid(format!("symbol term `{term}` must read p:q[:re[:im]]")));
            }
            let int = |x: &str| x.trim().parse::<u32>().map_err(|_| invalid(format!("bad power `{x}` in `{term}`")));
            let num = |x: &str| x.trim().parse::<f64>().map_err(|_| invalid(format!("bad coefficient `{x}` in `{term}`")));
            let re = if parts.len() > 2 { num(parts[2])? } else { 1.0 };
            let im = if parts.len() > 3 { num(parts[3])? } else { 0.0 };
            out.add(int(parts[0])?, int(parts[1])?, Complex64::new(re, im));
        }
        if out.coefficients.is_empty() {
            return Err(invalid("symbol has no terms"));
        }
        Ok(out)
    }

    pub fn eval(&self, w: Complex64) -> Complex64 {
        self.coefficients
            .iter()
            .map(|(&(p, q), &c)| c * w.powu(p) * w.conj().powu(q))
            .sum()
    }

    /// `∂^a ∂̄^b` of the symbol.
    pub fn derivative(&self, a: u32, b: u32) -> SymbolPoly {
        let mut out = Self::default();
        for (&(p, q), &c) in &self.coefficients {
            if p < a || q < b {
                continue;
            }
            let fp: f64 = (p - a + 1..=p).map(f64::from).product();
            let fq: f64 = (q - b + 1..=q).map(f64::from).product();
            out.add(p - a, q - b, c * fp * fq);
        }
        out
    }

    pub fn conj(&self) -> SymbolPoly {
        let mut out = Self::default();
        for (&(p, q), &c) in &self.coefficients {
            out.add(q, p, c.conj());
        }
        out
    }

    pub fn is_real(&self) -> bool {
        self.coefficients.iter().all(|(&(p, q), &c)| self.coefficients.get(&(q, p)).copied() == Some(c.conj()))
    }

    pub fn degree(&self) -> u32 {
        self.coefficients.keys().map(|&(p, q)| p + q).max().unwrap_or(0)
    }

    pub fn is_holomorphic(&self) -> bool {
        self.coefficients.keys().all(|&(_, q)| q == 0)
    }
}

impl fmt::Display for SymbolPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coefficients
            .iter()
            .map(|(&(p, q), c)| {
                if c.im == 0.0 {
                    format!("{p}:{q}:{}", c.re)
                } else {
                    format!("{p}:{q}:{}:{}", c.re, c.im)
                }
            })
            .collect();
        write!(f, "{}", parts.join(","))
    }
}
