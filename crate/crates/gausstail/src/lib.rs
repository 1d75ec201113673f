//! Gaussian probabilities of tame sets and their log-Puiseux asymptotics.
//!
//! `gausstail` evaluates Φ_A(t) — the probability that a standard Brownian
//! motion at time t lies in a set A ⊂ ℝⁿ described by its radial profile —
//! and computes the asymptotic expansions of Φ_A as t → 0 and t → ∞ as
//! truncated log-Puiseux series, with independent numerical oracles
//! (adaptive quadrature, Monte Carlo, closed forms in dimension one)
//! checking every expansion.
//!
//! Start with the runnable examples, one per capability:
//!
//! ```bash
//! cargo run --example series_arithmetic   # log-Puiseux series ring operations
//! cargo run --example gaussian_moments    # Gamma derivatives and log-moments
//! cargo run --example set_models          # radial profiles, membership, builtins
//! cargo run --example evaluate_phi        # quadrature vs Monte Carlo vs closed form
//! cargo run --example expand_small_time   # expansion at t -> 0 with provenance
//! cargo run --example expand_large_time   # expansion at t -> infinity (log resonance)
//! cargo run --example verify_remainder    # remainder-decay verification reports
//! ```
//!
//! A thin batch CLI over the same library ships as the `gausstail` binary
//! (`expand`, `eval`, `verify` subcommands).
//!
//! The whole pipeline in a few lines — expand, evaluate, compare:
//!
//! ```
//! use gausstail::setmodel::SetModel;
//! use gausstail::{evaluator, expansion};
//!
//! let model = SetModel::parse_shorthand("ex39")?;
//! let result = expansion::expand_at_zero(&model, 4)?;
//! let t = 1e-3;
//! let phi = evaluator::phi_quadrature(&model, t, 1e-11)?.value;
//! let partial = result.series.partial_sum(t, 1)?;
//! assert!((phi - partial).abs() < 1e-8);
//! # Ok::<(), gausstail::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod evaluator;
pub mod expansion;
pub mod moments;
pub mod series;
pub mod setmodel;

mod numeric;
mod quad;

pub use error::{Error, Result};
pub use series::{Direction, LogPolynomial, LogPuiseuxSeries, MembershipCheck};

/// Exact rational exponents (resonance detection requires exact arithmetic).
pub type Rational = num_rational::Ratio<i64>;
