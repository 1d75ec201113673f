//! Independent numerical oracles for Φ_A(t).
//!
//! Four routes that never share coefficients with the expansion engines:
//! the error function (own implementation: Maclaurin series inside [−2, 2],
//! Laplace continued fraction outside, saturation beyond |x| = 6), the exact
//! univariate formulas, adaptive quadrature of the radial integral, and
//! Monte Carlo over a counter-based seeded generator (samples are indexed,
//! not stream-drawn, so estimates are bit-identical for any thread count).

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rayon::prelude::*;
use std::f64::consts::FRAC_2_SQRT_PI;

use crate::error::{Error, Result};
use crate::quad;
use crate::setmodel::SetModel;

/// erf(x) = (2/√π) ∫₀^x e^(−s²) ds.
///
/// Odd by construction; |x| ≥ 6 saturates to ±1 (the complement is below
/// 2e-17 there). Accuracy ~1e-15 absolute on [−6, 6].
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let ax = x.abs();
    let value = if ax >= 6.0 {
        1.0
    } else if ax <= 2.0 {
        erf_maclaurin(ax)
    } else {
        1.0 - erfc_continued_fraction(ax)
    };
    if x.is_sign_negative() {
        -value
    } else {
        value
    }
}

/// Σ (−1)^k x^(2k+1)/(k!(2k+1)) · 2/√π; fine up to |x| = 2.
fn erf_maclaurin(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x; // (−1)^k x^(2k+1)/k!
    let mut sum = 0.0;
    let mut k = 0u32;
    loop {
        let contrib = term / (2 * k + 1) as f64;
        sum += contrib;
        if contrib.abs() < 1e-18 * sum.abs() {
            break;
        }
        k += 1;
        term *= -x2 / k as f64;
        if k > 200 {
            break;
        }
    }
    FRAC_2_SQRT_PI * sum
}

/// erfc(x) = e^(−x²)/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + …)))) for
/// x > 0, by the modified Lentz algorithm.
fn erfc_continued_fraction(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut f = tiny;
    let mut c = f;
    let mut d = 0.0;
    for n in 1..200 {
        let (a_n, b_n) = if n == 1 {
            (1.0, x)
        } else {
            ((n as f64 - 1.0) / 2.0, x)
        };
        d = b_n + a_n * d;
        if d == 0.0 {
            d = tiny;
        }
        c = b_n + a_n / c;
        if c == 0.0 {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / std::f64::consts::PI.sqrt() * f
}

/// Exact Φ for a finite union of disjoint intervals, Brownian motion started
/// at `start`: ½ Σ (erf((d−a)/√(2t)) − erf((c−a)/√(2t))).
pub fn phi_univariate(intervals: &[(f64, f64)], start: f64, t: f64) -> Result<f64> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::Domain(format!("time must be positive, got {t}")));
    }
    let mut sorted: Vec<(f64, f64)> = intervals.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    for w in sorted.windows(2) {
        if w[0].1 > w[1].0 {
            return Err(Error::Usage(format!(
                "overlapping intervals ({}, {}) and ({}, {})",
                w[0].0, w[0].1, w[1].0, w[1].1
            )));
        }
    }
    let scale = (2.0 * t).sqrt();
    let mut acc = 0.0;
    for (c, d) in &sorted {
        acc += 0.5 * (erf((d - start) / scale) - erf((c - start) / scale));
    }
    Ok(acc.clamp(0.0, 1.0))
}

/// The t → 0 limit of Φ for interval sets: 0, ½ or 1, by whether the origin
/// is adjacent to interior on the right and/or the left.
pub fn univariate_limit_at_zero(intervals: &[(f64, f64)]) -> f64 {
    let right = intervals.iter().any(|(c, d)| *c <= 0.0 && 0.0 < *d);
    let left = intervals.iter().any(|(c, d)| *c < 0.0 && 0.0 <= *d);
    0.5 * (right as u8 as f64) + 0.5 * (left as u8 as f64)
}

/// Quadrature evaluation of Φ with its error estimate.
#[derive(Debug, Clone, Copy, serde::Serialize, serde::Deserialize)]
pub struct QuadEval {
    pub value: f64,
    pub err: f64,
}

/// Φ_A(t) = (2πt)^(−n/2) ∫₀^∞ e^(−r²/2t) r^(n−1) Δ(r) dr by adaptive
/// quadrature after the substitution s = r/√(2t); panels split at the model
/// seams and the Gaussian tail is cut with an analytic bound folded into the
/// error. Refuses (with the partial result) rather than silently returning
/// on non-convergence.
pub fn phi_quadrature(model: &SetModel, t: f64, tol: f64) -> Result<QuadEval> {
    if model.is_univariate() {
        return Err(Error::Usage(
            "use phi_univariate for dimension-one models".into(),
        ));
    }
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::Domain(format!("time must be positive, got {t}")));
    }
    if !tol.is_finite() || tol < 1e-12 {
        return Err(Error::Usage(format!(
            "tolerance must be at least 1e-12, got {tol}"
        )));
    }
    let n = model.dimension();
    let scale = (2.0 * t).sqrt();

    const S_MAX: f64 = 8.5;
    // Δ ≤ ω_n and e^(−s²) ≤ e^(−S_MAX²/2) e^(−s²/2) beyond the cut, so the
    // discarded tail of the normalized integral is below 2^(n/2) e^(−S_MAX²/2).
    let tail_bound = 2f64.powf(n as f64 / 2.0) * (-S_MAX * S_MAX / 2.0).exp();

    let mut cuts = vec![0.0];
    for seam in [model.alpha()? / scale, model.beta()? / scale] {
        if seam > 0.0 && seam < S_MAX {
            cuts.push(seam);
        }
    }
    cuts.push(S_MAX);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let segments: Vec<(f64, f64)> = cuts.windows(2).map(|w| (w[0], w[1])).collect();

    let integrand = |s: f64| {
        if s <= 0.0 {
            return 0.0;
        }
        let r = s * scale;
        let d = model.delta(r).unwrap_or(f64::NAN);
        (-s * s).exp() * s.powi(n as i32 - 1) * d
    };

    let norm = std::f64::consts::PI.powf(-(n as f64) / 2.0);
    match quad::adaptive(&integrand, &segments, 1e-300, tol, 40_000) {
        Ok(out) => Ok(QuadEval {
            value: norm * out.value,
            err: norm * out.abs_err + tail_bound,
        }),
        Err(Error::AccuracyFailure { value, err, tol }) => Err(Error::AccuracyFailure {
            value: norm * value,
            err: norm * err + tail_bound,
            tol,
        }),
        Err(other) => Err(other),
    }
}

/// Monte Carlo estimate of Φ with its standard error.
#[derive(Debug, Clone, Copy, serde::Serialize, serde::Deserialize)]
pub struct MonteCarloEval {
    pub estimate: f64,
    pub stderr: f64,
    pub hits: u64,
    pub samples: u64,
}

/// Minimum sample count the estimator contract asks for.
pub const MC_MIN_SAMPLES: u64 = 10_000;

/// Unbiased Monte Carlo estimate of Φ_A(t): B_t ~ √t · N(0, I), so each
/// indexed sample draws a standard normal point through Box–Muller on its
/// own ChaCha stream and tests membership. Deterministic for a fixed seed
/// under any parallel schedule.
pub fn phi_montecarlo(model: &SetModel, t: f64, samples: u64, seed: u64) -> Result<MonteCarloEval> {
    if !model.has_membership() {
        return Err(Error::Unsupported(
            "Monte Carlo needs a membership predicate".into(),
        ));
    }
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::Domain(format!("time must be positive, got {t}")));
    }
    if samples < MC_MIN_SAMPLES {
        return Err(Error::Usage(format!(
            "Monte Carlo needs at least {MC_MIN_SAMPLES} samples, got {samples}"
        )));
    }
    let n = model.dimension() as usize;
    let sqrt_t = t.sqrt();
    let base = ChaCha8Rng::seed_from_u64(seed);

    const BLOCK: u64 = 1 << 14;
    let blocks: Vec<(u64, u64)> = (0..samples.div_ceil(BLOCK))
        .map(|b| (b * BLOCK, ((b + 1) * BLOCK).min(samples)))
        .collect();

    let hits: u64 = blocks
        .par_iter()
        .map(|&(lo, hi)| {
            let mut point = vec![0.0f64; n];
            let mut count = 0u64;
            for i in lo..hi {
                let mut rng = base.clone();
                rng.set_stream(i + 1);
                gaussian_point(&mut rng, &mut point);
                for x in point.iter_mut() {
                    *x *= sqrt_t;
                }
                if model.contains(&point).unwrap_or(false) {
                    count += 1;
                }
            }
            count
        })
        .sum();

    let estimate = hits as f64 / samples as f64;
    let stderr = (estimate * (1.0 - estimate) / samples as f64).sqrt();
    Ok(MonteCarloEval {
        estimate,
        stderr,
        hits,
        samples,
    })
}

/// Fills `point` with independent standard normals via Box–Muller.
fn gaussian_point(rng: &mut ChaCha8Rng, point: &mut [f64]) {
    let mut i = 0;
    while i < point.len() {
        let u1 = ((rng.next_u64() >> 11) as f64 + 1.0) / (1u64 << 53) as f64;
        let u2 = ((rng.next_u64() >> 11) as f64 + 1.0) / (1u64 << 53) as f64;
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = std::f64::consts::TAU * u2;
        point[i] = radius * angle.cos();
        i += 1;
        if i < point.len() {
            point[i] = radius * angle.sin();
            i += 1;
        }
    }
}
