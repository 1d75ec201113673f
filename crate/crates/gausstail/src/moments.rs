//! Gaussian log-moments ∫ e^(−s²) s^a (log μs)^j ds.
//!
//! Complete moments reduce to derivatives of the Gamma function: substituting
//! σ = s² and differentiating under the integral with respect to the exponent
//! gives
//!
//! ```text
//! ∫₀^∞ e^(−s²) s^a (log s)^j ds = 2^(−(j+1)) · Γ^(j)((a+1)/2),   a > −1.
//! ```
//!
//! Γ^(j) is evaluated through the complete Bell recurrence over polygamma
//! values (Γ' = Γψ, Γ'' = Γ(ψ² + ψ′), ...), with ψ^(m) computed by upward
//! recurrence into the Bernoulli asymptotic region. The identity above is not
//! taken on faith: the test suite cross-validates it against the adaptive
//! quadrature route on a grid of (a, j).
//!
//! Upper-incomplete moments are adaptive quadrature with an analytic tail cut.
//! The lower tail ∫_ε^1 admits a symbolic ε → 0 expansion by termwise
//! integration of e^(−s²) = Σ (−1)^i s^(2i)/i!; the exponent b = a + 2i is
//! tracked in exact rational arithmetic because the resonance b = −1 produces
//! logarithms instead of powers — the mechanism that injects the extra log t
//! into the large-time expansion of Φ.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::numeric::{binomial, factorial, neumaier_sum};
use crate::quad;
use crate::series::LogPolynomial;
use crate::Rational;

/// Largest Gamma-derivative order supported by the Bell/polygamma route.
pub const MAX_GAMMA_DERIV: usize = 6;

/// Internal quadrature tolerance for incomplete moments.
const MOMENT_TOL: f64 = 1e-11;

// --- Gamma and polygamma -------------------------------------------------

/// Lanczos coefficients (Pugh's analysis, g ≈ 10.9), accurate to ~16 digits.
const LANCZOS_DK: [f64; 11] = [
    2.485_740_891_387_535_5e-5,
    1.051_423_785_817_219_7,
    -3.456_870_972_220_162_5,
    4.512_277_094_668_948,
    -2.982_852_253_235_766_4,
    1.056_397_115_771_267,
    -1.954_287_731_916_458_7e-1,
    1.709_705_434_044_412e-2,
    -5.719_261_174_043_057e-4,
    4.633_994_733_599_057e-6,
    -2.719_949_084_886_077_2e-9,
];
const LANCZOS_R: f64 = 10.900511;
const TWO_SQRT_E_OVER_PI: f64 = 1.860_382_734_205_265_7;

/// Γ(x) for x > 0 (reflection handles x < 0.5 internally).
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        let s = LANCZOS_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(LANCZOS_DK[0], |s, (i, d)| s + d / (i as f64 - x));
        std::f64::consts::PI
            / ((std::f64::consts::PI * x).sin()
                * s
                * TWO_SQRT_E_OVER_PI
                * ((0.5 - x + LANCZOS_R) / std::f64::consts::E).powf(0.5 - x))
    } else {
        let s = LANCZOS_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(LANCZOS_DK[0], |s, (i, d)| s + d / (x + i as f64 - 1.0));
        s * TWO_SQRT_E_OVER_PI * ((x - 0.5 + LANCZOS_R) / std::f64::consts::E).powf(x - 0.5)
    }
}

/// B_{2k}/(2k) for the digamma asymptotic series, k = 1..7.
const DIGAMMA_ASYMP: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

/// B_{2k} for k = 1..7.
const BERNOULLI: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

/// Shift point for the asymptotic expansions.
const POLYGAMMA_SHIFT: f64 = 14.0;

/// ψ^(m)(x) for x > 0, m ≤ 6: recurrence up to the asymptotic region, then
/// the Bernoulli series.
pub fn polygamma(order: usize, x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!("polygamma requires x > 0, got {x}")));
    }
    if order > MAX_GAMMA_DERIV {
        return Err(Error::UnsupportedOrder {
            requested: order,
            max: MAX_GAMMA_DERIV,
        });
    }
    // ψ^(m)(x) = ψ^(m)(x + N) − Σ_{i<N} d^m/dx^m (x + i)^(−1)
    let mut shift = 0.0;
    let mut xx = x;
    let m = order as i32;
    while xx < POLYGAMMA_SHIFT {
        // d^m/dx^m 1/x = (−1)^m m! x^(−m−1)
        let sign = if order.is_multiple_of(2) { 1.0 } else { -1.0 };
        shift += sign * factorial(order) * xx.powi(-m - 1);
        xx += 1.0;
    }

    let tail = if order == 0 {
        let inv2 = 1.0 / (xx * xx);
        let mut term = inv2;
        let mut acc = xx.ln() - 0.5 / xx;
        for &c in &DIGAMMA_ASYMP {
            acc -= c * term;
            term *= inv2;
        }
        acc
    } else {
        let sign = if order.is_multiple_of(2) { -1.0 } else { 1.0 };
        let mut acc = factorial(order - 1) * xx.powi(-m) + factorial(order) / 2.0 * xx.powi(-m - 1);
        for (k, &b2k) in BERNOULLI.iter().enumerate() {
            let two_k = 2 * (k + 1);
            let num = factorial(two_k + order - 1) / factorial(two_k);
            acc += b2k * num * xx.powi(-(two_k as i32) - m);
        }
        sign * acc
    };
    Ok(tail - shift)
}

/// j-th derivative of the Gamma function at ν > 0.
///
/// Uses the complete Bell recurrence over cumulant values κ_i = ψ^(i−1)(ν):
/// Γ^(j) = Γ · B_j(κ_1, …, κ_j).
pub fn gamma_deriv(j: usize, nu: f64) -> Result<f64> {
    if !nu.is_finite() || nu <= 0.0 {
        return Err(Error::Domain(format!(
            "gamma_deriv requires nu > 0, got {nu}"
        )));
    }
    if j > MAX_GAMMA_DERIV {
        return Err(Error::UnsupportedOrder {
            requested: j,
            max: MAX_GAMMA_DERIV,
        });
    }
    let mut kappa = [0.0f64; MAX_GAMMA_DERIV + 1];
    for (i, slot) in kappa.iter_mut().enumerate().take(j) {
        *slot = polygamma(i, nu)?;
    }
    let mut bell = [0.0f64; MAX_GAMMA_DERIV + 1];
    bell[0] = 1.0;
    for n in 0..j {
        // B_{n+1} = Σ_i C(n, i) B_{n−i} κ_{i+1}
        let mut acc = 0.0;
        for i in 0..=n {
            acc += binomial(n, i) * bell[n - i] * kappa[i];
        }
        bell[n + 1] = acc;
    }
    Ok(gamma(nu) * bell[j])
}

// --- Complete and shifted moments ----------------------------------------

/// ∫₀^∞ e^(−s²) s^a (log s)^j ds = 2^(−(j+1)) Γ^(j)((a+1)/2), for a > −1.
pub fn complete_log_moment(a: f64, j: usize) -> Result<f64> {
    if !a.is_finite() || a <= -1.0 {
        return Err(Error::DivergentMoment(format!(
            "complete moment needs a > -1, got a = {a}"
        )));
    }
    Ok(2f64.powi(-(j as i32) - 1) * gamma_deriv(j, (a + 1.0) / 2.0)?)
}

/// ∫₀^∞ e^(−s²) s^a (log μs)^j ds via the binomial expansion of
/// (log μ + log s)^j over complete moments.
pub fn shifted_log_moment(a: f64, j: usize, mu: f64) -> Result<f64> {
    if !mu.is_finite() || mu <= 0.0 {
        return Err(Error::Domain(format!(
            "log shift requires mu > 0, got {mu}"
        )));
    }
    let ln_mu = mu.ln();
    let mut acc = 0.0;
    for i in 0..=j {
        acc += binomial(j, i) * ln_mu.powi(i as i32) * complete_log_moment(a, j - i)?;
    }
    Ok(acc)
}

// --- Upper-incomplete moments --------------------------------------------

/// Antiderivative-based ∫_lo^hi s^b (log μs)^m ds, stable across the
/// resonance b = −1 (exact log form) and near it (η-series in b + 1).
fn power_log_integral(b: f64, m: usize, mu: f64, lo: f64, hi: f64) -> f64 {
    let eta = b + 1.0;
    if eta == 0.0 {
        // ∫ s^(−1) (log μs)^m ds = (log μs)^(m+1)/(m+1)
        let f = |s: f64| (mu * s).ln().powi(m as i32 + 1) / (m as f64 + 1.0);
        return f(hi) - (if lo > 0.0 { f(lo) } else { 0.0 });
    }
    if eta.abs() < 1e-4 && lo > 0.0 {
        // s^b = s^(−1) e^(η log s); expanding the exponential avoids the
        // 1/η^(m+1) cancellation between the endpoint evaluations.
        let antideriv = |s: f64| {
            let w = s.ln();
            let mut acc = 0.0;
            let mut eta_term = 1.0; // η^i / i!
            for i in 0..40usize {
                let mut inner = 0.0;
                for v in 0..=m {
                    inner +=
                        binomial(m, v) * mu.ln().powi((m - v) as i32) * w.powi((i + v + 1) as i32)
                            / (i + v + 1) as f64;
                }
                let contrib = eta_term * inner;
                acc += contrib;
                eta_term *= eta / (i + 1) as f64;
                if contrib.abs() < 1e-18 * acc.abs().max(1.0) && i > m {
                    break;
                }
            }
            acc
        };
        return antideriv(hi) - antideriv(lo);
    }
    // A(s) = s^(b+1) Σ_u c_u (log μs)^u with c_m = 1/η, c_u = −(u+1)c_{u+1}/η
    let mut c = vec![0.0; m + 1];
    c[m] = 1.0 / eta;
    for u in (0..m).rev() {
        c[u] = -((u + 1) as f64) * c[u + 1] / eta;
    }
    let eval = |s: f64| -> f64 {
        if s == 0.0 {
            return 0.0; // valid for b > −1 only; callers respect that
        }
        let lms = (mu * s).ln();
        let mut acc = 0.0;
        for u in (0..=m).rev() {
            acc = acc * lms + c[u];
        }
        // Horner gave Σ c_u lms^u
        s.powf(eta) * acc
    };
    eval(hi) - eval(lo)
}

/// ∫_ε^∞ e^(−s²) s^a (log μs)^j ds by adaptive quadrature with an analytic
/// tail cut; the discarded tail is bounded and folded into the tolerance
/// check. For a > −1 the limit ε = 0 is admitted (the endpoint singularity is
/// integrated by a termwise series on an inner interval).
pub fn upper_incomplete_log_moment(a: f64, j: usize, mu: f64, eps: f64) -> Result<f64> {
    if !mu.is_finite() || mu <= 0.0 {
        return Err(Error::Domain(format!(
            "log shift requires mu > 0, got {mu}"
        )));
    }
    if eps.is_nan() || eps < 0.0 {
        return Err(Error::Domain(format!(
            "lower limit must be nonnegative, got {eps}"
        )));
    }
    if eps == 0.0 && a <= -1.0 {
        return Err(Error::DivergentMoment(format!(
            "moment with a = {a} <= -1 diverges at the origin"
        )));
    }

    // Tail cut: beyond s_max the integrand is below tolerance. Bound the
    // discarded part via e^(−s²) ≤ e^(−s_max²/2) e^(−s²/2) and, for
    // s ≥ s_max ≥ 2 + log μ, |log μs|^j ≤ (2s)^j.
    let s_max = 8f64
        .max((1.0 / MOMENT_TOL).ln().sqrt() + a.max(0.0) + j as f64)
        .max(2.0 + mu.max(1.0).ln())
        .max(eps + 5.0);
    let b_tail = (a + j as f64).max(0.0);
    let tail_bound = (-s_max * s_max / 2.0).exp()
        * 2f64.powi(j as i32)
        * 2f64.powf((b_tail - 1.0) / 2.0)
        * gamma((b_tail + 1.0) / 2.0);

    // Inner series piece for small lower limits: on [lo, delta] expand
    // e^(−s²) termwise; each term has a closed-form antiderivative.
    let delta: f64 = 0.25;
    let mut inner = 0.0;
    let mut quad_lo = eps;
    if eps < delta {
        let mut outer = 1.0; // (−1)^i / i!
        let mut terms = Vec::new();
        let mut scale = 0.0f64;
        for i in 0..60usize {
            let b = a + 2.0 * i as f64;
            let t = outer * power_log_integral(b, j, mu, eps, delta);
            terms.push(t);
            scale = scale.max(t.abs());
            if t.abs() < 1e-18 * scale.max(1e-300) && i > 4 {
                break;
            }
            outer = -outer / (i + 1) as f64;
        }
        inner = neumaier_sum(terms);
        quad_lo = delta;
    }

    let out = quad::adaptive(
        &|s: f64| (-s * s).exp() * s.powf(a) * (mu * s).ln().powi(j as i32),
        &[(quad_lo, s_max)],
        MOMENT_TOL * 0.1,
        MOMENT_TOL * 0.1,
        4000,
    )?;
    let total_err = out.abs_err + tail_bound;
    let value = inner + out.value;
    if total_err > MOMENT_TOL.max(MOMENT_TOL * value.abs()) * 10.0 {
        return Err(Error::AccuracyFailure {
            value,
            err: total_err,
            tol: MOMENT_TOL,
        });
    }
    Ok(value)
}

// --- Symbolic lower-tail expansion ----------------------------------------

/// The ε → 0 structure of ∫_ε^1 e^(−s²) s^a (log s)^j ds:
/// a constant, pure powers of log ε (from resonant exponents), and power
/// terms ε^e · (polynomial in log ε).
#[derive(Debug, Clone)]
pub struct LowerTailExpansion {
    /// The ε-independent part (the only non-vanishing piece as ε → 0 apart
    /// from resonant logarithms).
    pub constant: f64,
    /// Coefficient of (log ε)^u at index u (index 0 is unused and zero).
    pub log_coeffs: Vec<f64>,
    /// Terms ε^e · g(log ε), sorted by exponent; e may be negative when
    /// a < −1 (those terms blow up as ε → 0, as the integral does).
    pub powers: Vec<(Rational, LogPolynomial)>,
    /// Number of exponential-series terms kept (i ranges over 0..=terms).
    pub exp_terms: usize,
}

impl LowerTailExpansion {
    /// Coefficient of (log(1/ε))^u, the sign-adjusted view of `log_coeffs`.
    pub fn log_inv_coeff(&self, u: usize) -> f64 {
        let c = self.log_coeffs.get(u).copied().unwrap_or(0.0);
        if u.is_multiple_of(2) {
            c
        } else {
            -c
        }
    }

    /// Coefficient polynomial (in log ε) of ε^e, if present.
    pub fn power_term(&self, e: Rational) -> Option<&LogPolynomial> {
        self.powers
            .iter()
            .find(|(exp, _)| *exp == e)
            .map(|(_, g)| g)
    }

    /// Numeric evaluation of the truncated expansion at a concrete ε.
    pub fn eval(&self, eps: f64) -> f64 {
        let ln_eps = eps.ln();
        let mut acc = self.constant;
        for (u, c) in self.log_coeffs.iter().enumerate().skip(1) {
            acc += c * ln_eps.powi(u as i32);
        }
        for (e, g) in &self.powers {
            let ef = *e.numer() as f64 / *e.denom() as f64;
            acc += (ef * ln_eps).exp() * g.eval_at_log(ln_eps);
        }
        acc
    }
}

/// Symbolic ε → 0 expansion of ∫_ε^1 e^(−s²) s^a (log s)^j ds, truncated
/// after the s^(2·terms) term of the exponential series.
///
/// The exponent a is an exact rational so that the resonance b = a + 2i = −1
/// is detected exactly; a float comparison would silently misclassify and
/// lose log terms.
pub fn lower_tail_expansion(a: Rational, j: usize, terms: usize) -> Result<LowerTailExpansion> {
    let minus_one = Ratio::from_integer(-1);
    let mut constant = 0.0;
    let mut log_coeffs = vec![0.0; j + 2];
    let mut powers: Vec<(Rational, LogPolynomial)> = Vec::new();

    let mut sign = 1.0;
    let mut inv_fact = 1.0;
    for i in 0..=terms {
        let b = a + Ratio::from_integer(2 * i as i64);
        let outer = sign * inv_fact; // (−1)^i / i!
        if b == minus_one {
            // ∫_ε^1 s^(−1)(log s)^j ds = −(log ε)^(j+1)/(j+1)
            log_coeffs[j + 1] += -outer / (j as f64 + 1.0);
        } else {
            // A(s) = s^(b+1) Σ_u c_u (log s)^u, value = A(1) − A(ε)
            let eta = b + Ratio::from_integer(1);
            let eta_f = *eta.numer() as f64 / *eta.denom() as f64;
            let mut c = vec![0.0; j + 1];
            c[j] = 1.0 / eta_f;
            for u in (0..j).rev() {
                c[u] = -((u + 1) as f64) * c[u + 1] / eta_f;
            }
            constant += outer * c[0];
            let poly = LogPolynomial::new(c.iter().map(|cu| -outer * cu).collect());
            if !poly.is_zero() {
                match powers.binary_search_by(|(e, _)| e.cmp(&eta)) {
                    Ok(pos) => {
                        let merged = powers[pos].1.add(&poly);
                        powers[pos].1 = merged;
                    }
                    Err(pos) => powers.insert(pos, (eta, poly)),
                }
            }
        }
        sign = -sign;
        inv_fact /= (i + 1) as f64;
    }
    powers.retain(|(_, g)| !g.is_zero());
    Ok(LowerTailExpansion {
        constant,
        log_coeffs,
        powers,
        exp_terms: terms,
    })
}
