//! Truncated generalized log-Puiseux series.
//!
//! A series here is a finite jet of Σ_k g_k(log x)·x^(±k/q), where the g_k are
//! real polynomials ("log-polynomials"), q is the ramification and the sign of
//! the exponent is fixed by the direction of expansion (towards 0 or towards
//! infinity). The constant coefficient g_0 is required to be constant by the
//! ring definition; the degrees of the g_k for k ≥ 1 are bounded by the
//! logarithmic power p. The subgroup p = −1 consists of the constants alone.
//!
//! Truncation is explicit: terms with index above `truncation_order` are
//! *unknown*, not zero. All arithmetic propagates the truncation honestly.
//!
//! Coefficients are double-precision floats; exponents are exact fractions
//! k/q, so that exponent comparisons (in particular the resonance tests of the
//! expansion engines) are exact integer arithmetic. Series indices start at
//! k = 0; unbounded germs with negative starting index are not representable.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::neumaier_sum;

/// Coefficients with absolute value below this are treated as exact zeros.
/// Kept extremely small on purpose: genuinely tiny coefficients occur.
const COEFF_CLEANUP: f64 = 1e-300;

/// Side of the positive axis a series expands towards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Exponents x^(k/q): germ at 0.
    AtZero,
    /// Exponents x^(−k/q): germ at infinity.
    AtInfinity,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::AtZero => write!(f, "at_zero"),
            Direction::AtInfinity => write!(f, "at_infinity"),
        }
    }
}

/// A real polynomial g(T) standing for g(log x).
///
/// `coeffs[j]` multiplies T^j. The representation is normalized: trailing
/// zeros are trimmed, so the degree is `coeffs.len() - 1` (empty = zero
/// polynomial).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LogPolynomial {
    coeffs: Vec<f64>,
}

impl LogPolynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        for c in coeffs.iter_mut() {
            if c.abs() < COEFF_CLEANUP {
                *c = 0.0;
            }
        }
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        LogPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        LogPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// Monomial c·T^j.
    pub fn monomial(c: f64, j: usize) -> Self {
        let mut coeffs = vec![0.0; j + 1];
        coeffs[j] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of T^j (zero beyond the stored degree).
    pub fn coeff(&self, j: usize) -> f64 {
        self.coeffs.get(j).copied().unwrap_or(0.0)
    }

    /// Horner evaluation of g(T) at T = ln_x.
    pub fn eval_at_log(&self, ln_x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * ln_x + c)
    }

    /// Evaluates g(log x); the log forces x > 0.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !x.is_finite() || x <= 0.0 {
            return Err(Error::Domain(format!(
                "log-polynomial evaluation requires x > 0, got {x}"
            )));
        }
        Ok(self.eval_at_log(x.ln()))
    }

    pub fn add(&self, other: &LogPolynomial) -> LogPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|j| self.coeff(j) + other.coeff(j)).collect();
        LogPolynomial::new(coeffs)
    }

    pub fn scale(&self, factor: f64) -> LogPolynomial {
        LogPolynomial::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn mul(&self, other: &LogPolynomial) -> LogPolynomial {
        if self.is_zero() || other.is_zero() {
            return LogPolynomial::zero();
        }
        let mut coeffs = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LogPolynomial::new(coeffs)
    }
}

/// Result of a membership check against the ring invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MembershipCheck {
    /// Whether the stored bound and the g_0-constant requirement hold.
    pub ok: bool,
    /// Smallest valid logarithmic-power bound: max deg(g_k) over k ≥ 1,
    /// or −1 when no term beyond the constant is present.
    pub p_effective: i32,
}

/// Serialized form shared with the set-description and expansion files.
#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    direction: Direction,
    q: u32,
    p: i32,
    terms: Vec<TermRepr>,
    truncation_order: u64,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    k: u64,
    coeffs: Vec<f64>,
}

/// A truncated log-Puiseux series Σ_{k ≤ K} g_k(log x)·x^(±k/q).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "SeriesRepr", try_from = "SeriesRepr")]
pub struct LogPuiseuxSeries {
    direction: Direction,
    q: u32,
    /// Logarithmic-power bound p ≥ −1. p = −1 admits constants only.
    p: i32,
    terms: BTreeMap<u64, LogPolynomial>,
    truncation_order: u64,
}

impl From<LogPuiseuxSeries> for SeriesRepr {
    fn from(s: LogPuiseuxSeries) -> Self {
        SeriesRepr {
            direction: s.direction,
            q: s.q,
            p: s.p,
            terms: s
                .terms
                .into_iter()
                .map(|(k, g)| TermRepr {
                    k,
                    coeffs: g.coeffs,
                })
                .collect(),
            truncation_order: s.truncation_order,
        }
    }
}

impl TryFrom<SeriesRepr> for LogPuiseuxSeries {
    type Error = Error;

    fn try_from(r: SeriesRepr) -> Result<Self> {
        if r.q == 0 {
            return Err(Error::Parse(
                "series ramification q must be positive".into(),
            ));
        }
        if r.p < -1 {
            return Err(Error::Parse(format!(
                "logarithmic-power bound must be >= -1, got {}",
                r.p
            )));
        }
        let mut terms = BTreeMap::new();
        for t in r.terms {
            if terms.insert(t.k, LogPolynomial::new(t.coeffs)).is_some() {
                return Err(Error::Parse(format!("duplicate series term k = {}", t.k)));
            }
        }
        Ok(LogPuiseuxSeries::new(
            r.direction,
            r.q,
            r.p,
            terms,
            r.truncation_order,
        ))
    }
}

impl LogPuiseuxSeries {
    /// Builds a series and normalizes the representation: zero terms are
    /// dropped, terms beyond the truncation order are discarded, and the
    /// ramification is reduced to its minimal value.
    ///
    /// The ring invariants (constant g_0, deg g_k ≤ p) are *not* enforced
    /// here; [`validate`](Self::validate) reports on them.
    pub fn new(
        direction: Direction,
        q: u32,
        p: i32,
        terms: BTreeMap<u64, LogPolynomial>,
        truncation_order: u64,
    ) -> Self {
        assert!(q > 0, "ramification must be positive");
        assert!(p >= -1, "logarithmic-power bound must be >= -1");
        let mut s = LogPuiseuxSeries {
            direction,
            q,
            p,
            terms,
            truncation_order,
        };
        s.normalize();
        s
    }

    /// Builds a series with p set to the smallest valid bound.
    pub fn with_inferred_bound(
        direction: Direction,
        q: u32,
        terms: BTreeMap<u64, LogPolynomial>,
        truncation_order: u64,
    ) -> Self {
        let mut s = Self::new(direction, q, 0, terms, truncation_order);
        s.p = s.validate().p_effective;
        s
    }

    /// The zero jet, known to (a conventionally large) order.
    pub fn zero(direction: Direction) -> Self {
        Self::new(direction, 1, -1, BTreeMap::new(), u64::MAX)
    }

    pub fn constant(direction: Direction, c: f64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(0, LogPolynomial::constant(c));
        Self::new(direction, 1, -1, terms, u64::MAX)
    }

    /// Single term g(log x)·x^(±k/q), known exactly (all other terms zero).
    pub fn single_term(direction: Direction, q: u32, k: u64, g: LogPolynomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(k, g);
        Self::with_inferred_bound(direction, q, terms, u64::MAX)
    }

    fn normalize(&mut self) {
        self.terms
            .retain(|k, g| *k <= self.truncation_order && !g.is_zero());
        // Minimal ramification: divide out gcd of the live indices and q.
        let mut g = self.q as u64;
        for &k in self.terms.keys() {
            g = g.gcd(&k);
        }
        if g > 1 {
            self.terms = std::mem::take(&mut self.terms)
                .into_iter()
                .map(|(k, poly)| (k / g, poly))
                .collect();
            self.q = (self.q as u64 / g) as u32;
            self.truncation_order /= g;
        }
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// Ramification q of the stored representation (minimal).
    pub fn ramification(&self) -> u32 {
        self.q
    }

    /// Declared logarithmic-power bound.
    pub fn log_power_bound(&self) -> i32 {
        self.p
    }

    pub fn truncation_order(&self) -> u64 {
        self.truncation_order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient polynomial g_k (zero polynomial if absent and k is
    /// within the known range).
    pub fn term(&self, k: u64) -> LogPolynomial {
        self.terms
            .get(&k)
            .cloned()
            .unwrap_or_else(LogPolynomial::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &LogPolynomial)> {
        self.terms.iter().map(|(k, g)| (*k, g))
    }

    /// Constant term g_0(0) = g_0 (g_0 is constant for valid series).
    pub fn constant_term(&self) -> f64 {
        self.term(0).coeff(0)
    }

    /// Checks the ring invariants and reports the smallest valid bound.
    pub fn validate(&self) -> MembershipCheck {
        let g0_constant = self
            .terms
            .get(&0)
            .map(|g| g.degree().unwrap_or(0) == 0)
            .unwrap_or(true);
        let p_effective = self
            .terms
            .iter()
            .filter(|(k, _)| **k >= 1)
            .map(|(_, g)| g.degree().unwrap_or(0) as i32)
            .max()
            .unwrap_or(-1);
        let bound_ok = if self.p == -1 {
            p_effective == -1
        } else {
            p_effective <= self.p
        };
        MembershipCheck {
            ok: g0_constant && bound_ok,
            p_effective,
        }
    }

    fn check_direction(&self, other: &LogPuiseuxSeries, op: &str) -> Result<()> {
        if self.direction != other.direction {
            return Err(Error::Usage(format!(
                "cannot {op} series with different directions ({} vs {})",
                self.direction, other.direction
            )));
        }
        Ok(())
    }

    /// Termwise sum after ramification alignment. The result is known to the
    /// smaller of the two truncation orders.
    pub fn try_add(&self, other: &LogPuiseuxSeries) -> Result<LogPuiseuxSeries> {
        self.check_direction(other, "add")?;
        let q = (self.q as u64).lcm(&(other.q as u64));
        let (fa, fb) = (q / self.q as u64, q / other.q as u64);
        let trunc = self
            .truncation_order
            .saturating_mul(fa)
            .min(other.truncation_order.saturating_mul(fb));
        let mut terms: BTreeMap<u64, LogPolynomial> = BTreeMap::new();
        for (k, g) in &self.terms {
            terms.insert(k * fa, g.clone());
        }
        for (k, g) in &other.terms {
            let key = k * fb;
            let entry = terms.entry(key).or_insert_with(LogPolynomial::zero);
            *entry = entry.add(g);
        }
        Ok(LogPuiseuxSeries::new(
            self.direction,
            q as u32,
            self.p.max(other.p),
            terms,
            trunc,
        ))
    }

    pub fn scale(&self, factor: f64) -> LogPuiseuxSeries {
        LogPuiseuxSeries::new(
            self.direction,
            self.q,
            self.p,
            self.terms
                .iter()
                .map(|(k, g)| (*k, g.scale(factor)))
                .collect(),
            self.truncation_order,
        )
    }

    /// Cauchy product with polynomial multiplication of the log parts,
    /// truncated to the smaller aligned order.
    pub fn try_mul(&self, other: &LogPuiseuxSeries) -> Result<LogPuiseuxSeries> {
        self.check_direction(other, "multiply")?;
        let q = (self.q as u64).lcm(&(other.q as u64));
        let (fa, fb) = (q / self.q as u64, q / other.q as u64);
        let trunc = self
            .truncation_order
            .saturating_mul(fa)
            .min(other.truncation_order.saturating_mul(fb));
        let mut terms: BTreeMap<u64, LogPolynomial> = BTreeMap::new();
        for (ka, ga) in &self.terms {
            for (kb, gb) in &other.terms {
                let Some(k) = (ka * fa).checked_add(kb * fb) else {
                    continue;
                };
                if k > trunc {
                    continue;
                }
                let prod = ga.mul(gb);
                let entry = terms.entry(k).or_insert_with(LogPolynomial::zero);
                *entry = entry.add(&prod);
            }
        }
        let p = if self.p == -1 && other.p == -1 {
            -1
        } else {
            self.p.max(0) + other.p.max(0)
        };
        Ok(LogPuiseuxSeries::new(
            self.direction,
            q as u32,
            p,
            terms,
            trunc,
        ))
    }

    /// Partial sum S_N(x) = Σ_{k ≤ N} g_k(log x)·x^(±k/q), summed from the
    /// smallest-magnitude term upward with compensated summation.
    ///
    /// N is counted in units of the stored (minimal) ramification.
    pub fn partial_sum(&self, x: f64, order: u64) -> Result<f64> {
        if !x.is_finite() || x <= 0.0 {
            return Err(Error::Domain(format!(
                "partial sum requires x > 0, got {x}"
            )));
        }
        if order > self.truncation_order {
            return Err(Error::InsufficientTruncation {
                requested: order,
                available: self.truncation_order,
            });
        }
        let ln_x = x.ln();
        let sign = match self.direction {
            Direction::AtZero => 1.0,
            Direction::AtInfinity => -1.0,
        };
        let mut values: Vec<f64> = self
            .terms
            .range(..=order)
            .map(|(k, g)| {
                let exponent = sign * (*k as f64) / (self.q as f64);
                g.eval_at_log(ln_x) * (exponent * ln_x).exp()
            })
            .collect();
        values.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
        Ok(neumaier_sum(values.iter().copied()))
    }

    /// Partial sum using every stored term.
    pub fn eval_all_terms(&self, x: f64) -> Result<f64> {
        let last = self.terms.keys().next_back().copied().unwrap_or(0);
        self.partial_sum(x, last.min(self.truncation_order))
    }
}

impl Add for &LogPuiseuxSeries {
    type Output = LogPuiseuxSeries;

    fn add(self, rhs: &LogPuiseuxSeries) -> LogPuiseuxSeries {
        self.try_add(rhs)
            .expect("series addition: direction mismatch")
    }
}

impl Mul for &LogPuiseuxSeries {
    type Output = LogPuiseuxSeries;

    fn mul(self, rhs: &LogPuiseuxSeries) -> LogPuiseuxSeries {
        self.try_mul(rhs)
            .expect("series multiplication: direction mismatch")
    }
}

impl fmt::Display for LogPuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 + O(...)");
        }
        let mut first = true;
        for (k, g) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "(")?;
            let mut first_c = true;
            for (j, c) in g.coeffs().iter().enumerate() {
                if *c == 0.0 {
                    continue;
                }
                if !first_c {
                    write!(f, " + ")?;
                }
                first_c = false;
                match j {
                    0 => write!(f, "{c}")?,
                    1 => write!(f, "{c}*L")?,
                    _ => write!(f, "{c}*L^{j}")?,
                }
            }
            write!(f, ")")?;
            if *k != 0 {
                match self.direction {
                    Direction::AtZero => write!(f, "*x^({k}/{})", self.q)?,
                    Direction::AtInfinity => write!(f, "*x^(-{k}/{})", self.q)?,
                }
            }
        }
        Ok(())
    }
}
