//! Concrete models of tame sets through their radial profile Δ.
//!
//! For A ⊂ ℝⁿ (n ≥ 2), polar coordinates split the Gaussian integral into a
//! radial part against Δ(r) = ∫_{B_r} C_n(θ) d(φ,θ): the angular mass of the
//! slice of A at radius r, weighted by the polar Jacobian
//! C_n(θ) = Π_{j=1}^{n−2} (cos θ_j)^j.
//!
//! Δ is stored in three pieces: a log-Puiseux germ at 0 valid on (0, α], a
//! germ at ∞ valid on [β, ∞), and a closed-form piecewise evaluator on
//! [α, β]. At the seams the series branch wins. An optional polar membership
//! predicate ties the model to the set itself (used by the Monte Carlo
//! oracle). Dimension one is represented directly by a finite union of
//! intervals instead of Δ data.
//!
//! Polar convention (fixed here; Φ is invariant under orthogonal changes):
//!
//! ```text
//! x₁ = r cos φ Π cos θ_j,  x₂ = r sin φ Π cos θ_j,
//! x_{j+2} = r sin θ_j Π_{i>j} cos θ_i,   φ ∈ (−π, π), θ_j ∈ (−π/2, π/2),
//! ```
//!
//! whose Jacobian is exactly r^(n−1) C_n(θ).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moments::gamma;
use crate::series::{Direction, LogPolynomial, LogPuiseuxSeries};

/// Seam agreement tolerance between the series germs and the mid evaluator.
const SEAM_TOL: f64 = 1e-8;

/// Closed-form expression in the polar variables (r, φ, θ₁, …).
///
/// Mid evaluators only use `R`; membership predicates may use all variables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expr {
    Const(f64),
    R,
    Phi,
    /// θ_j, zero-indexed: `Theta(0)` is θ₁.
    Theta(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Log(Box<Expr>),
    Exp(Box<Expr>),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
    Arcsin(Box<Expr>),
}

impl Expr {
    pub fn constant(c: f64) -> Expr {
        Expr::Const(c)
    }

    /// Evaluates with coords = [r, φ, θ₁, …]; out-of-domain produces NaN,
    /// which comparisons treat as false.
    pub fn eval(&self, coords: &[f64]) -> f64 {
        match self {
            Expr::Const(c) => *c,
            Expr::R => coords[0],
            Expr::Phi => coords.get(1).copied().unwrap_or(f64::NAN),
            Expr::Theta(j) => coords.get(2 + j).copied().unwrap_or(f64::NAN),
            Expr::Add(a, b) => a.eval(coords) + b.eval(coords),
            Expr::Sub(a, b) => a.eval(coords) - b.eval(coords),
            Expr::Mul(a, b) => a.eval(coords) * b.eval(coords),
            Expr::Div(a, b) => a.eval(coords) / b.eval(coords),
            Expr::Pow(a, b) => a.eval(coords).powf(b.eval(coords)),
            Expr::Log(a) => a.eval(coords).ln(),
            Expr::Exp(a) => a.eval(coords).exp(),
            Expr::Sin(a) => a.eval(coords).sin(),
            Expr::Cos(a) => a.eval(coords).cos(),
            Expr::Arcsin(a) => a.eval(coords).asin(),
        }
    }

    pub fn eval_radial(&self, r: f64) -> f64 {
        self.eval(&[r])
    }

    fn add_expr(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }
}

/// Polar predicate tree over (r, φ, θ…). Conjunction and disjunction
/// short-circuit left to right, so guarded expressions (like arcsin of a
/// ratio) are only evaluated where earlier conjuncts hold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    True,
    Lt(Expr, Expr),
    And(Vec<Predicate>),
    Or(Vec<Predicate>),
    Not(Box<Predicate>),
}

impl Predicate {
    pub fn eval(&self, coords: &[f64]) -> bool {
        match self {
            Predicate::True => true,
            Predicate::Lt(a, b) => a.eval(coords) < b.eval(coords),
            Predicate::And(ps) => ps.iter().all(|p| p.eval(coords)),
            Predicate::Or(ps) => ps.iter().any(|p| p.eval(coords)),
            Predicate::Not(p) => !p.eval(coords),
        }
    }

    fn lt(a: Expr, b: Expr) -> Predicate {
        Predicate::Lt(a, b)
    }

    fn band(lo: f64, var: Expr, hi: f64) -> Predicate {
        Predicate::And(vec![
            Predicate::lt(Expr::Const(lo), var.clone()),
            Predicate::lt(var, Expr::Const(hi)),
        ])
    }
}

/// One piece of the mid evaluator: a closed form valid on [lo, hi].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MidPiece {
    pub lo: f64,
    pub hi: f64,
    pub expr: Expr,
}

/// Interval endpoint in ℝ ∪ {±∞}; infinities serialize as "inf"/"-inf".
#[derive(Debug, Clone, Copy, PartialEq)]
struct Endpoint(f64);

impl Serialize for Endpoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0 == f64::INFINITY {
            s.serialize_str("inf")
        } else if self.0 == f64::NEG_INFINITY {
            s.serialize_str("-inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Endpoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(Endpoint(x)),
            Raw::Str(s) => match s.as_str() {
                "inf" | "+inf" => Ok(Endpoint(f64::INFINITY)),
                "-inf" => Ok(Endpoint(f64::NEG_INFINITY)),
                other => Err(serde::de::Error::custom(format!(
                    "bad interval endpoint {other:?}"
                ))),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Body {
    Univariate {
        intervals: Vec<(f64, f64)>,
    },
    Radial {
        alpha: f64,
        beta: f64,
        delta_zero: LogPuiseuxSeries,
        delta_infinity: LogPuiseuxSeries,
        delta_mid: Vec<MidPiece>,
        membership: Option<Predicate>,
    },
}

/// A tame subset of ℝⁿ, represented by its radial profile (n ≥ 2) or by a
/// finite union of intervals (n = 1). Immutable after construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "ModelRepr", try_from = "ModelRepr")]
pub struct SetModel {
    n: u32,
    body: Body,
}

#[derive(Serialize, Deserialize)]
struct ModelRepr {
    n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    intervals: Option<Vec<(Endpoint, Endpoint)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta_zero: Option<LogPuiseuxSeries>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta_infinity: Option<LogPuiseuxSeries>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta_mid: Option<Vec<MidPiece>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    membership: Option<Predicate>,
}

impl From<SetModel> for ModelRepr {
    fn from(m: SetModel) -> Self {
        match m.body {
            Body::Univariate { intervals } => ModelRepr {
                n: m.n,
                intervals: Some(
                    intervals
                        .into_iter()
                        .map(|(a, b)| (Endpoint(a), Endpoint(b)))
                        .collect(),
                ),
                alpha: None,
                beta: None,
                delta_zero: None,
                delta_infinity: None,
                delta_mid: None,
                membership: None,
            },
            Body::Radial {
                alpha,
                beta,
                delta_zero,
                delta_infinity,
                delta_mid,
                membership,
            } => ModelRepr {
                n: m.n,
                intervals: None,
                alpha: Some(alpha),
                beta: Some(beta),
                delta_zero: Some(delta_zero),
                delta_infinity: Some(delta_infinity),
                delta_mid: Some(delta_mid),
                membership,
            },
        }
    }
}

impl TryFrom<ModelRepr> for SetModel {
    type Error = Error;

    fn try_from(r: ModelRepr) -> Result<Self> {
        if let Some(intervals) = r.intervals {
            return SetModel::univariate(intervals.into_iter().map(|(a, b)| (a.0, b.0)).collect());
        }
        let missing = |what: &str| Error::Parse(format!("set description missing {what}"));
        SetModel::radial(
            r.n,
            r.alpha.ok_or_else(|| missing("alpha"))?,
            r.beta.ok_or_else(|| missing("beta"))?,
            r.delta_zero.ok_or_else(|| missing("delta_zero"))?,
            r.delta_infinity.ok_or_else(|| missing("delta_infinity"))?,
            r.delta_mid.unwrap_or_default(),
            r.membership,
        )
    }
}

/// Jacobian factor C_n(θ) = Π_{j=1}^{n−2} (cos θ_j)^j; the empty product for
/// n = 2.
pub fn angular_weight(n: u32, angles: &[f64]) -> Result<f64> {
    if n < 2 {
        return Err(Error::Usage(format!(
            "angular weight needs n >= 2, got {n}"
        )));
    }
    if angles.len() != (n - 2) as usize {
        return Err(Error::Usage(format!(
            "expected {} angles for n = {n}, got {}",
            n - 2,
            angles.len()
        )));
    }
    let mut w = 1.0;
    for (j, th) in angles.iter().enumerate() {
        if !th.is_finite() || th.abs() >= std::f64::consts::FRAC_PI_2 {
            return Err(Error::Domain(format!(
                "theta_{} = {th} outside (-pi/2, pi/2)",
                j + 1
            )));
        }
        w *= th.cos().powi(j as i32 + 1);
    }
    Ok(w)
}

/// Total angular mass 2π^{n/2}/Γ(n/2): the surface measure of S^{n−1}.
pub fn total_angular_mass(n: u32) -> f64 {
    2.0 * std::f64::consts::PI.powf(n as f64 / 2.0) / gamma(n as f64 / 2.0)
}

/// Converts a Cartesian point to the polar coordinates of this module's
/// convention: [r, φ, θ₁, …, θ_{n−2}].
pub fn to_polar(point: &[f64]) -> Vec<f64> {
    let n = point.len();
    let r = point.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut coords = vec![0.0; n];
    coords[0] = r;
    if r == 0.0 {
        return coords;
    }
    let mut rho = r;
    for j in (0..n.saturating_sub(2)).rev() {
        let ratio = (point[j + 2] / rho).clamp(-1.0, 1.0);
        let theta = ratio.asin();
        coords[2 + j] = theta;
        rho *= theta.cos();
        if rho == 0.0 {
            rho = f64::MIN_POSITIVE;
        }
    }
    if n >= 2 {
        coords[1] = point[1].atan2(point[0]);
    }
    coords
}

impl SetModel {
    /// A set in dimension one: a finite union of disjoint intervals.
    pub fn univariate(mut intervals: Vec<(f64, f64)>) -> Result<SetModel> {
        intervals.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in intervals.windows(2) {
            if w[0].1 > w[1].0 {
                return Err(Error::Usage(format!(
                    "overlapping intervals ({}, {}) and ({}, {})",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        for (a, b) in &intervals {
            if a.is_nan() || b.is_nan() || a >= b {
                return Err(Error::Usage(format!(
                    "empty or inverted interval ({a}, {b})"
                )));
            }
        }
        Ok(SetModel {
            n: 1,
            body: Body::Univariate { intervals },
        })
    }

    /// A radial model from its three-piece Δ data; validates the structural
    /// invariants (directions, log-power bounds p ≤ n−2, seam agreement).
    pub fn radial(
        n: u32,
        alpha: f64,
        beta: f64,
        delta_zero: LogPuiseuxSeries,
        delta_infinity: LogPuiseuxSeries,
        delta_mid: Vec<MidPiece>,
        membership: Option<Predicate>,
    ) -> Result<SetModel> {
        if n < 2 {
            return Err(Error::Usage(format!(
                "radial models need n >= 2 (got {n}); use the interval representation"
            )));
        }
        if !alpha.is_finite() || !beta.is_finite() || alpha <= 0.0 || beta < alpha {
            return Err(Error::InvalidSet(format!(
                "need 0 < alpha <= beta, got alpha = {alpha}, beta = {beta}"
            )));
        }
        if delta_zero.direction() != Direction::AtZero {
            return Err(Error::InvalidSet("delta_zero must expand at 0".into()));
        }
        if delta_infinity.direction() != Direction::AtInfinity {
            return Err(Error::InvalidSet(
                "delta_infinity must expand at infinity".into(),
            ));
        }
        let p_cap = n as i32 - 2;
        for (name, s) in [
            ("delta_zero", &delta_zero),
            ("delta_infinity", &delta_infinity),
        ] {
            let check = s.validate();
            if !check.ok || check.p_effective > p_cap {
                return Err(Error::InvalidSet(format!(
                    "{name} violates the profile invariants (log power {} > {p_cap} or malformed g_0)",
                    check.p_effective
                )));
            }
        }
        if beta > alpha {
            if delta_mid.is_empty() {
                return Err(Error::InvalidSet(
                    "beta > alpha requires a mid evaluator".into(),
                ));
            }
            let mut cursor = alpha;
            for piece in &delta_mid {
                if (piece.lo - cursor).abs() > 1e-12 * (1.0 + cursor.abs()) || piece.hi <= piece.lo
                {
                    return Err(Error::InvalidSet(format!(
                        "mid pieces must tile [alpha, beta]; got a piece [{}, {}] at cursor {cursor}",
                        piece.lo, piece.hi
                    )));
                }
                cursor = piece.hi;
            }
            if (cursor - beta).abs() > 1e-12 * (1.0 + beta.abs()) {
                return Err(Error::InvalidSet(format!(
                    "mid pieces end at {cursor}, expected beta = {beta}"
                )));
            }
            // Seam agreement where both branches are in use.
            let mid_at = |r: f64, pieces: &[MidPiece]| -> f64 {
                pieces
                    .iter()
                    .find(|p| p.lo <= r && r <= p.hi)
                    .map(|p| p.expr.eval_radial(r))
                    .unwrap_or(f64::NAN)
            };
            let zero_at_alpha = delta_zero.eval_all_terms(alpha)?;
            let mid_alpha = mid_at(alpha, &delta_mid);
            if (zero_at_alpha - mid_alpha).abs() > SEAM_TOL * (1.0 + mid_alpha.abs()) {
                return Err(Error::InvalidSet(format!(
                    "seam mismatch at alpha: series {zero_at_alpha} vs mid {mid_alpha}"
                )));
            }
            let inf_at_beta = delta_infinity.eval_all_terms(beta)?;
            let mid_beta = mid_at(beta, &delta_mid);
            if (inf_at_beta - mid_beta).abs() > SEAM_TOL * (1.0 + mid_beta.abs()) {
                return Err(Error::InvalidSet(format!(
                    "seam mismatch at beta: series {inf_at_beta} vs mid {mid_beta}"
                )));
            }
        }
        Ok(SetModel {
            n,
            body: Body::Radial {
                alpha,
                beta,
                delta_zero,
                delta_infinity,
                delta_mid,
                membership,
            },
        })
    }

    pub fn dimension(&self) -> u32 {
        self.n
    }

    pub fn is_univariate(&self) -> bool {
        matches!(self.body, Body::Univariate { .. })
    }

    pub fn intervals(&self) -> Result<&[(f64, f64)]> {
        match &self.body {
            Body::Univariate { intervals } => Ok(intervals),
            _ => Err(Error::Usage(
                "interval data exists only for univariate models".into(),
            )),
        }
    }

    pub fn alpha(&self) -> Result<f64> {
        self.radial_ref().map(|(a, ..)| a)
    }

    pub fn beta(&self) -> Result<f64> {
        self.radial_ref().map(|(_, b, ..)| b)
    }

    pub fn delta_zero(&self) -> Result<&LogPuiseuxSeries> {
        match &self.body {
            Body::Radial { delta_zero, .. } => Ok(delta_zero),
            _ => Err(Error::Usage("univariate models carry no profile".into())),
        }
    }

    pub fn delta_infinity(&self) -> Result<&LogPuiseuxSeries> {
        match &self.body {
            Body::Radial { delta_infinity, .. } => Ok(delta_infinity),
            _ => Err(Error::Usage("univariate models carry no profile".into())),
        }
    }

    pub fn delta_mid(&self) -> Result<&[MidPiece]> {
        match &self.body {
            Body::Radial { delta_mid, .. } => Ok(delta_mid),
            _ => Err(Error::Usage("univariate models carry no profile".into())),
        }
    }

    fn radial_ref(&self) -> Result<(f64, f64)> {
        match &self.body {
            Body::Radial { alpha, beta, .. } => Ok((*alpha, *beta)),
            _ => Err(Error::Usage("univariate models carry no profile".into())),
        }
    }

    pub fn has_membership(&self) -> bool {
        match &self.body {
            Body::Univariate { .. } => true,
            Body::Radial { membership, .. } => membership.is_some(),
        }
    }

    /// Δ(r): series partial sum on (0, α], mid evaluator on (α, β), series
    /// on [β, ∞). At the seams the series branch wins.
    pub fn delta(&self, r: f64) -> Result<f64> {
        if !r.is_finite() || r <= 0.0 {
            return Err(Error::Domain(format!("delta requires r > 0, got {r}")));
        }
        match &self.body {
            Body::Univariate { .. } => Err(Error::Usage(
                "dimension-one models use the interval API, not delta".into(),
            )),
            Body::Radial {
                alpha,
                beta,
                delta_zero,
                delta_infinity,
                delta_mid,
                ..
            } => {
                if r <= *alpha {
                    delta_zero.eval_all_terms(r)
                } else if r >= *beta {
                    delta_infinity.eval_all_terms(r)
                } else {
                    delta_mid
                        .iter()
                        .find(|p| p.lo <= r && r <= p.hi)
                        .map(|p| Ok(p.expr.eval_radial(r)))
                        .unwrap_or_else(|| {
                            Err(Error::InvalidSet(format!(
                                "mid evaluator has a gap at r = {r}"
                            )))
                        })
                }
            }
        }
    }

    /// Point membership through the polar predicate.
    pub fn contains(&self, point: &[f64]) -> Result<bool> {
        if point.len() != self.n as usize {
            return Err(Error::Usage(format!(
                "point dimension {} does not match model dimension {}",
                point.len(),
                self.n
            )));
        }
        match &self.body {
            Body::Univariate { intervals } => {
                let x = point[0];
                Ok(intervals.iter().any(|(a, b)| *a < x && x < *b))
            }
            Body::Radial { membership, .. } => match membership {
                Some(pred) => Ok(pred.eval(&to_polar(point))),
                None => Err(Error::Unsupported(
                    "model has no membership predicate".into(),
                )),
            },
        }
    }

    pub fn membership(&self) -> Option<&Predicate> {
        match &self.body {
            Body::Radial { membership, .. } => membership.as_ref(),
            _ => None,
        }
    }

    // --- Builtins ---------------------------------------------------------

    /// Builds one of the named models. Parameters: `n` where the dimension is
    /// free, `R` (radius, default 1) for `ball`, `angle` (half-angle,
    /// default π/4) for `cone`.
    pub fn builtin(name: &str, params: &BTreeMap<String, f64>) -> Result<SetModel> {
        let dim = |def: Option<u32>| -> Result<u32> {
            match params.get("n") {
                Some(v) if *v >= 2.0 && v.fract() == 0.0 && *v <= 16.0 => Ok(*v as u32),
                Some(v) => Err(Error::Usage(format!("bad dimension n = {v}"))),
                None => def.ok_or_else(|| Error::Usage(format!("builtin {name} needs n"))),
            }
        };
        match name {
            "full" => constant_profile_model(dim(None)?, 1.0, Predicate::True),
            "halfspace" => {
                let n = dim(None)?;
                constant_profile_model(
                    n,
                    0.5,
                    Predicate::band(
                        -std::f64::consts::FRAC_PI_2,
                        Expr::Phi,
                        std::f64::consts::FRAC_PI_2,
                    ),
                )
            }
            "cone" => {
                let n = dim(None)?;
                let psi = params
                    .get("angle")
                    .copied()
                    .unwrap_or(std::f64::consts::FRAC_PI_4);
                if !psi.is_finite() || psi <= 0.0 || psi > std::f64::consts::PI {
                    return Err(Error::Usage(format!(
                        "cone half-angle must lie in (0, pi], got {psi}"
                    )));
                }
                let frac = cone_mass_fraction(n, psi)?;
                let membership = if n == 2 {
                    Predicate::band(-psi, Expr::Phi, psi)
                } else {
                    // angle to the last axis below ψ: sin θ_{n−2} > cos ψ
                    Predicate::lt(
                        Expr::Const(psi.cos()),
                        Expr::Sin(Box::new(Expr::Theta(n as usize - 3))),
                    )
                };
                constant_profile_model(n, frac, membership)
            }
            "ball" => {
                let n = dim(None)?;
                let radius = params.get("R").copied().unwrap_or(1.0);
                if !radius.is_finite() || radius <= 0.0 {
                    return Err(Error::Usage(format!(
                        "ball radius must be positive, got {radius}"
                    )));
                }
                let mass = total_angular_mass(n);
                SetModel::radial(
                    n,
                    radius,
                    radius,
                    LogPuiseuxSeries::constant(Direction::AtZero, mass),
                    LogPuiseuxSeries::zero(Direction::AtInfinity),
                    Vec::new(),
                    Some(Predicate::lt(Expr::R, Expr::Const(radius))),
                )
            }
            "ex34" => {
                // {r > 1, 0 < φ < 1/r²} in the plane: Δ = 1/r² past 1, 0 before.
                let inv_r2 = Expr::Div(
                    Box::new(Expr::Const(1.0)),
                    Box::new(Expr::Mul(Box::new(Expr::R), Box::new(Expr::R))),
                );
                SetModel::radial(
                    2,
                    1.0,
                    1.0,
                    LogPuiseuxSeries::zero(Direction::AtZero),
                    LogPuiseuxSeries::single_term(
                        Direction::AtInfinity,
                        1,
                        2,
                        LogPolynomial::constant(1.0),
                    ),
                    Vec::new(),
                    Some(Predicate::And(vec![
                        Predicate::lt(Expr::Const(1.0), Expr::R),
                        Predicate::lt(Expr::Const(0.0), Expr::Phi),
                        Predicate::lt(Expr::Phi, inv_r2),
                    ])),
                )
            }
            "ex38" => {
                // {r < ½, 0 < φ < r/(1−r²)}: Δ = Σ_{j≥0} r^(2j+1) near 0.
                let bound = Expr::Div(
                    Box::new(Expr::R),
                    Box::new(Expr::Sub(
                        Box::new(Expr::Const(1.0)),
                        Box::new(Expr::Mul(Box::new(Expr::R), Box::new(Expr::R))),
                    )),
                );
                let terms = (0..=20)
                    .map(|j| (2 * j + 1, LogPolynomial::constant(1.0)))
                    .collect();
                SetModel::radial(
                    2,
                    0.5,
                    0.5,
                    LogPuiseuxSeries::with_inferred_bound(Direction::AtZero, 1, terms, 41),
                    LogPuiseuxSeries::zero(Direction::AtInfinity),
                    Vec::new(),
                    Some(Predicate::And(vec![
                        Predicate::lt(Expr::R, Expr::Const(0.5)),
                        Predicate::lt(Expr::Const(0.0), Expr::Phi),
                        Predicate::lt(Expr::Phi, bound),
                    ])),
                )
            }
            "ex39" => {
                // {r < 1, r < φ < 1, 0 < θ < arcsin(r/φ)} in ℝ³: Δ = −r log r.
                let ratio = Expr::Div(Box::new(Expr::R), Box::new(Expr::Phi));
                SetModel::radial(
                    3,
                    1.0,
                    1.0,
                    LogPuiseuxSeries::single_term(
                        Direction::AtZero,
                        1,
                        1,
                        LogPolynomial::new(vec![0.0, -1.0]),
                    ),
                    LogPuiseuxSeries::zero(Direction::AtInfinity),
                    Vec::new(),
                    Some(Predicate::And(vec![
                        Predicate::lt(Expr::R, Expr::Const(1.0)),
                        Predicate::lt(Expr::R, Expr::Phi),
                        Predicate::lt(Expr::Phi, Expr::Const(1.0)),
                        Predicate::lt(Expr::Const(0.0), Expr::Theta(0)),
                        Predicate::lt(Expr::Theta(0), Expr::Arcsin(Box::new(ratio))),
                    ])),
                )
            }
            other => Err(Error::Usage(format!("unknown builtin set {other:?}"))),
        }
    }

    /// Parses the CLI shorthand `name:key=val,...`, e.g. `ball:n=2,R=1`.
    pub fn parse_shorthand(spec: &str) -> Result<SetModel> {
        let (name, rest) = match spec.split_once(':') {
            Some((n, r)) => (n, r),
            None => (spec, ""),
        };
        let mut params = BTreeMap::new();
        for part in rest.split(',').filter(|p| !p.is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(|| {
                Error::Parse(format!("bad builtin parameter {part:?} (expected key=val)"))
            })?;
            let value: f64 = value
                .parse()
                .map_err(|_| Error::Parse(format!("bad numeric value in {part:?}")))?;
            params.insert(key.trim().to_string(), value);
        }
        SetModel::builtin(name.trim(), &params).map_err(|e| match e {
            Error::Usage(msg) => Error::Parse(msg),
            other => other,
        })
    }

    /// Assembles a planar model from angular bound pairs: Δ(r) is the sum of
    /// (φ_hi − φ_lo)(r) over the sectors containing r, so sectors are
    /// expected to be pairwise disjoint in angle. Germs at 0 and ∞ are
    /// derived from the bounds' own expansions.
    pub fn sector2d(sectors: &[AngularSector]) -> Result<SetModel> {
        if sectors.is_empty() {
            return Err(Error::InvalidSet(
                "sector2d needs at least one sector".into(),
            ));
        }
        for s in sectors {
            s.validate()?;
        }

        let mut breaks: Vec<f64> = sectors
            .iter()
            .flat_map(|s| [s.r_lo, s.r_hi])
            .filter(|r| r.is_finite() && *r > 0.0)
            .collect();
        breaks.sort_by(f64::total_cmp);
        breaks.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (1.0 + b.abs()));

        let zero_series = sum_germs(sectors, Germ::Zero)?;
        let inf_series = sum_germs(sectors, Germ::Infinity)?;

        let (alpha, beta) = match (breaks.first(), breaks.last()) {
            (Some(first), Some(last)) => (*first, *last),
            _ => (1.0, 1.0),
        };

        let mut mid = Vec::new();
        for w in breaks.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let midpoint = 0.5 * (lo + hi);
            let mut expr: Option<Expr> = None;
            for s in sectors {
                if s.r_lo <= lo && hi <= s.r_hi && s.contains_radius(midpoint) {
                    let width = Expr::Sub(
                        Box::new(s.phi_hi.expr.clone()),
                        Box::new(s.phi_lo.expr.clone()),
                    );
                    expr = Some(match expr {
                        None => width,
                        Some(e) => Expr::add_expr(e, width),
                    });
                }
            }
            mid.push(MidPiece {
                lo,
                hi,
                expr: expr.unwrap_or(Expr::Const(0.0)),
            });
        }

        let membership = Predicate::Or(
            sectors
                .iter()
                .map(|s| {
                    let mut parts = Vec::new();
                    if s.r_lo > 0.0 {
                        parts.push(Predicate::lt(Expr::Const(s.r_lo), Expr::R));
                    }
                    if s.r_hi.is_finite() {
                        parts.push(Predicate::lt(Expr::R, Expr::Const(s.r_hi)));
                    }
                    parts.push(Predicate::lt(s.phi_lo.expr.clone(), Expr::Phi));
                    parts.push(Predicate::lt(Expr::Phi, s.phi_hi.expr.clone()));
                    Predicate::And(parts)
                })
                .collect(),
        );

        SetModel::radial(
            2,
            alpha,
            beta,
            zero_series,
            inf_series,
            mid,
            Some(membership),
        )
    }
}

/// Radial function used as an angular bound: a closed form plus optional
/// series germs where its sector touches 0 or ∞.
#[derive(Debug, Clone)]
pub struct RadialBound {
    pub expr: Expr,
    pub germ_zero: Option<LogPuiseuxSeries>,
    pub germ_infinity: Option<LogPuiseuxSeries>,
}

impl RadialBound {
    pub fn constant(c: f64) -> RadialBound {
        RadialBound {
            expr: Expr::Const(c),
            germ_zero: Some(LogPuiseuxSeries::constant(Direction::AtZero, c)),
            germ_infinity: Some(LogPuiseuxSeries::constant(Direction::AtInfinity, c)),
        }
    }
}

/// One sector: angular bounds valid for r in (r_lo, r_hi).
#[derive(Debug, Clone)]
pub struct AngularSector {
    pub r_lo: f64,
    pub r_hi: f64,
    pub phi_lo: RadialBound,
    pub phi_hi: RadialBound,
}

impl AngularSector {
    fn contains_radius(&self, r: f64) -> bool {
        self.r_lo < r && r < self.r_hi
    }

    fn validate(&self) -> Result<()> {
        if self.r_lo.is_nan() || self.r_hi.is_nan() || self.r_lo < 0.0 || self.r_hi <= self.r_lo {
            return Err(Error::InvalidSet(format!(
                "bad sector radius range ({}, {})",
                self.r_lo, self.r_hi
            )));
        }
        // Pointwise bound check on a probe grid of the sector's interior.
        let hi_probe = if self.r_hi.is_finite() {
            self.r_hi
        } else {
            (self.r_lo + 1.0) * 16.0
        };
        let lo_probe = if self.r_lo > 0.0 {
            self.r_lo
        } else {
            hi_probe * 1e-6
        };
        for i in 0..=32 {
            let u = i as f64 / 32.0;
            let r = lo_probe * (hi_probe / lo_probe).powf(u);
            if !self.contains_radius(r) {
                continue;
            }
            let lo = self.phi_lo.expr.eval_radial(r);
            let hi = self.phi_hi.expr.eval_radial(r);
            let pi = std::f64::consts::PI;
            if lo.is_nan() || hi.is_nan() || lo >= hi || lo < -pi - 1e-12 || hi > pi + 1e-12 {
                return Err(Error::InvalidSet(format!(
                    "angular bounds cross or leave (-pi, pi) at r = {r}: lo = {lo}, hi = {hi}"
                )));
            }
        }
        Ok(())
    }
}

enum Germ {
    Zero,
    Infinity,
}

fn sum_germs(sectors: &[AngularSector], which: Germ) -> Result<LogPuiseuxSeries> {
    let (direction, mut acc) = match which {
        Germ::Zero => (Direction::AtZero, LogPuiseuxSeries::zero(Direction::AtZero)),
        Germ::Infinity => (
            Direction::AtInfinity,
            LogPuiseuxSeries::zero(Direction::AtInfinity),
        ),
    };
    for s in sectors {
        let touches = match which {
            Germ::Zero => s.r_lo == 0.0,
            Germ::Infinity => s.r_hi == f64::INFINITY,
        };
        if !touches {
            continue;
        }
        let pick = |b: &RadialBound| match which {
            Germ::Zero => b.germ_zero.clone(),
            Germ::Infinity => b.germ_infinity.clone(),
        };
        let (lo, hi) = (pick(&s.phi_lo), pick(&s.phi_hi));
        let (lo, hi) = match (lo, hi) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => {
                return Err(Error::InvalidSet(format!(
                    "sector touching {} must carry germs on both bounds",
                    match which {
                        Germ::Zero => "0",
                        Germ::Infinity => "infinity",
                    }
                )))
            }
        };
        if lo.direction() != direction || hi.direction() != direction {
            return Err(Error::InvalidSet("germ direction mismatch".into()));
        }
        acc = acc.try_add(&hi.try_add(&lo.scale(-1.0))?)?;
    }
    Ok(acc)
}

/// Model with Δ ≡ fraction · ω_n: used by full space, halfspace and cones.
/// Exercises all three representation pieces (series at 0, closed-form mid,
/// series at ∞).
fn constant_profile_model(n: u32, fraction: f64, membership: Predicate) -> Result<SetModel> {
    let mass = fraction * total_angular_mass(n);
    SetModel::radial(
        n,
        1.0,
        2.0,
        LogPuiseuxSeries::constant(Direction::AtZero, mass),
        LogPuiseuxSeries::constant(Direction::AtInfinity, mass),
        vec![MidPiece {
            lo: 1.0,
            hi: 2.0,
            expr: Expr::Const(mass),
        }],
        Some(membership),
    )
}

/// Fraction of the total angular mass cut out by a cone of half-angle ψ
/// about an axis, in dimension n ∈ {2, 3, 4}.
fn cone_mass_fraction(n: u32, psi: f64) -> Result<f64> {
    let mass = total_angular_mass(n);
    let cut = match n {
        2 => 2.0 * psi,
        3 => 2.0 * std::f64::consts::PI * (1.0 - psi.cos()),
        4 => std::f64::consts::PI * (2.0 * psi - (2.0 * psi).sin()),
        other => {
            return Err(Error::Usage(format!(
                "cone builtin supports n in {{2, 3, 4}}, got {other}"
            )))
        }
    };
    Ok(cut / mass)
}

impl fmt::Display for SetModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.body {
            Body::Univariate { intervals } => {
                write!(f, "union of {} interval(s) in R", intervals.len())
            }
            Body::Radial { alpha, beta, .. } => write!(
                f,
                "radial model in R^{} (alpha = {alpha}, beta = {beta})",
                self.n
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn params(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn angular_weight_examples() {
        assert_eq!(angular_weight(2, &[]).unwrap(), 1.0);
        assert_eq!(angular_weight(3, &[0.0]).unwrap(), 1.0);
        let w = angular_weight(
            4,
            &[std::f64::consts::FRAC_PI_4, std::f64::consts::FRAC_PI_3],
        )
        .unwrap();
        #[allow(clippy::excessive_precision)]
        let expected = 0.176_776_695_296_636_88;
        assert_relative_eq!(w, expected, max_relative = 1e-12);
        assert!(angular_weight(3, &[2.0]).is_err());
        assert!(angular_weight(3, &[0.0, 0.0]).is_err());
    }

    #[test]
    fn total_mass_known_dimensions() {
        assert_relative_eq!(
            total_angular_mass(2),
            std::f64::consts::TAU,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            total_angular_mass(3),
            4.0 * std::f64::consts::PI,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            total_angular_mass(4),
            2.0 * std::f64::consts::PI.powi(2),
            max_relative = 1e-14
        );
    }

    #[test]
    fn builtin_profiles() {
        let full = SetModel::builtin("full", &params(&[("n", 2.0)])).unwrap();
        for r in [0.01, 0.5, 1.5, 7.0] {
            assert_relative_eq!(
                full.delta(r).unwrap(),
                std::f64::consts::TAU,
                max_relative = 1e-12
            );
        }

        let full3 = SetModel::builtin("full", &params(&[("n", 3.0)])).unwrap();
        assert_relative_eq!(
            full3.delta(0.3).unwrap(),
            4.0 * std::f64::consts::PI,
            max_relative = 1e-12
        );

        let half = SetModel::builtin("halfspace", &params(&[("n", 2.0)])).unwrap();
        assert_relative_eq!(
            half.delta(3.0).unwrap(),
            std::f64::consts::PI,
            max_relative = 1e-12
        );

        let ex34 = SetModel::builtin("ex34", &params(&[])).unwrap();
        assert_eq!(ex34.delta(0.5).unwrap(), 0.0);
        assert_relative_eq!(ex34.delta(2.0).unwrap(), 0.25, max_relative = 1e-12);

        let ex39 = SetModel::builtin("ex39", &params(&[])).unwrap();
        assert_relative_eq!(
            ex39.delta(0.5).unwrap(),
            0.346_573_590_279_972_64,
            max_relative = 1e-12
        );
        let check = ex39.delta_zero().unwrap().validate();
        assert_eq!(check.p_effective, 1); // = n − 2

        let ex38 = SetModel::builtin("ex38", &params(&[])).unwrap();
        // Δ(0.3) = 0.3/(1 − 0.09)
        assert_relative_eq!(ex38.delta(0.3).unwrap(), 0.3 / 0.91, max_relative = 1e-10);

        assert!(matches!(
            SetModel::builtin("nonesuch", &params(&[])),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn delta_bounded_by_total_mass() {
        let builtins: Vec<SetModel> = vec![
            SetModel::builtin("full", &params(&[("n", 2.0)])).unwrap(),
            SetModel::builtin("full", &params(&[("n", 4.0)])).unwrap(),
            SetModel::builtin("halfspace", &params(&[("n", 3.0)])).unwrap(),
            SetModel::builtin("cone", &params(&[("n", 3.0), ("angle", 0.7)])).unwrap(),
            SetModel::builtin("ball", &params(&[("n", 2.0), ("R", 1.0)])).unwrap(),
            SetModel::builtin("ex34", &params(&[])).unwrap(),
            SetModel::builtin("ex38", &params(&[])).unwrap(),
            SetModel::builtin("ex39", &params(&[])).unwrap(),
        ];
        for model in &builtins {
            let mass = total_angular_mass(model.dimension());
            for i in 0..=40 {
                let r = 10f64.powf(-3.0 + 6.0 * i as f64 / 40.0);
                let d = model.delta(r).unwrap();
                assert!(
                    (-1e-9..=mass + 1e-9).contains(&d),
                    "delta out of range for {model}: delta({r}) = {d}"
                );
            }
        }
    }

    #[test]
    fn membership_examples() {
        let full = SetModel::builtin("full", &params(&[("n", 3.0)])).unwrap();
        assert!(full.contains(&[0.3, -2.0, 5.0]).unwrap());

        let ball = SetModel::builtin("ball", &params(&[("n", 2.0), ("R", 1.0)])).unwrap();
        assert!(!ball.contains(&[2.0, 0.0]).unwrap());
        assert!(ball.contains(&[0.3, 0.4]).unwrap());

        // ex34 at polar (r = 2, φ = 0.1): 0.1 < 1/4 so the point is inside
        let ex34 = SetModel::builtin("ex34", &params(&[])).unwrap();
        let p = [2.0 * 0.1f64.cos(), 2.0 * 0.1f64.sin()];
        assert!(ex34.contains(&p).unwrap());
        let p_out = [2.0 * 0.3f64.cos(), 2.0 * 0.3f64.sin()];
        assert!(!ex34.contains(&p_out).unwrap());
    }

    #[test]
    fn polar_round_trip() {
        // point -> polar -> point under the fixed convention
        let pts: Vec<Vec<f64>> = vec![
            vec![1.0, 2.0],
            vec![-0.3, 0.4, 1.2],
            vec![0.5, -0.1, 0.7, -2.0],
        ];
        for p in pts {
            let n = p.len();
            let polar = to_polar(&p);
            let (r, phi) = (polar[0], polar[1]);
            let mut cos_prod = 1.0;
            for j in 0..n.saturating_sub(2) {
                cos_prod *= polar[2 + j].cos();
            }
            let mut rebuilt = vec![r * phi.cos() * cos_prod, r * phi.sin() * cos_prod];
            for j in 0..n - 2 {
                let mut tail = polar[2 + j].sin() * r;
                for i in (j + 1)..(n - 2) {
                    tail *= polar[2 + i].cos();
                }
                rebuilt.push(tail);
            }
            for (a, b) in p.iter().zip(rebuilt.iter()) {
                assert_relative_eq!(a, b, max_relative = 1e-12, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn sector_models() {
        // Full disk as a single sector
        let disk = SetModel::sector2d(&[AngularSector {
            r_lo: 0.0,
            r_hi: f64::INFINITY,
            phi_lo: RadialBound::constant(-std::f64::consts::PI),
            phi_hi: RadialBound::constant(std::f64::consts::PI),
        }])
        .unwrap();
        assert_relative_eq!(
            disk.delta(0.2).unwrap(),
            std::f64::consts::TAU,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            disk.delta(9.0).unwrap(),
            std::f64::consts::TAU,
            max_relative = 1e-12
        );

        // ex34-shaped sector via bounds (0, 1/r²) for r > 1
        let inv_r2 = Expr::Div(
            Box::new(Expr::Const(1.0)),
            Box::new(Expr::Mul(Box::new(Expr::R), Box::new(Expr::R))),
        );
        let tail = SetModel::sector2d(&[AngularSector {
            r_lo: 1.0,
            r_hi: f64::INFINITY,
            phi_lo: RadialBound {
                expr: Expr::Const(0.0),
                germ_zero: None,
                germ_infinity: Some(LogPuiseuxSeries::zero(Direction::AtInfinity)),
            },
            phi_hi: RadialBound {
                expr: inv_r2,
                germ_zero: None,
                germ_infinity: Some(LogPuiseuxSeries::single_term(
                    Direction::AtInfinity,
                    1,
                    2,
                    LogPolynomial::constant(1.0),
                )),
            },
        }])
        .unwrap();
        assert_eq!(tail.delta(0.5).unwrap(), 0.0);
        assert_relative_eq!(tail.delta(3.0).unwrap(), 1.0 / 9.0, max_relative = 1e-12);

        // Δ equals the direct sum of bound widths on random radii
        let two = SetModel::sector2d(&[
            AngularSector {
                r_lo: 0.0,
                r_hi: f64::INFINITY,
                phi_lo: RadialBound::constant(-1.0),
                phi_hi: RadialBound::constant(-0.25),
            },
            AngularSector {
                r_lo: 0.0,
                r_hi: f64::INFINITY,
                phi_lo: RadialBound::constant(0.5),
                phi_hi: RadialBound::constant(2.0),
            },
        ])
        .unwrap();
        let mut state = 0x2545F4914F6CDD1Du64;
        for _ in 0..50 {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let r = 1e-2 * ((state >> 11) as f64 / (1u64 << 53) as f64 * 4.0).exp();
            assert_relative_eq!(two.delta(r).unwrap(), 0.75 + 1.5, max_relative = 1e-12);
        }

        // Crossing bounds are rejected
        let crossing = SetModel::sector2d(&[AngularSector {
            r_lo: 0.0,
            r_hi: f64::INFINITY,
            phi_lo: RadialBound::constant(1.0),
            phi_hi: RadialBound::constant(0.5),
        }]);
        assert!(matches!(crossing, Err(Error::InvalidSet(_))));
    }

    #[test]
    fn univariate_models() {
        let m = SetModel::univariate(vec![(0.0, 1.0), (2.0, f64::INFINITY)]).unwrap();
        assert!(m.contains(&[0.5]).unwrap());
        assert!(!m.contains(&[1.5]).unwrap());
        assert!(m.contains(&[100.0]).unwrap());
        assert!(matches!(
            SetModel::univariate(vec![(0.0, 2.0), (1.0, 3.0)]),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn seam_validation() {
        // Mid disagrees with the zero germ at alpha
        let bad = SetModel::radial(
            2,
            1.0,
            2.0,
            LogPuiseuxSeries::constant(Direction::AtZero, 1.0),
            LogPuiseuxSeries::constant(Direction::AtInfinity, 5.0),
            vec![MidPiece {
                lo: 1.0,
                hi: 2.0,
                expr: Expr::Const(5.0),
            }],
            None,
        );
        assert!(matches!(bad, Err(Error::InvalidSet(_))));
    }

    #[test]
    fn serialization_round_trip_is_byte_identical() {
        let models = vec![
            SetModel::builtin("ex39", &params(&[])).unwrap(),
            SetModel::builtin("ex38", &params(&[])).unwrap(),
            SetModel::builtin("ball", &params(&[("n", 4.0), ("R", 2.5)])).unwrap(),
            SetModel::builtin("cone", &params(&[("n", 3.0), ("angle", 0.5)])).unwrap(),
            SetModel::univariate(vec![(f64::NEG_INFINITY, 0.0), (1.0, 2.0)]).unwrap(),
        ];
        for m in models {
            let text = serde_json::to_string(&m).unwrap();
            let parsed: SetModel = serde_json::from_str(&text).unwrap();
            assert_eq!(parsed, m);
            assert_eq!(serde_json::to_string(&parsed).unwrap(), text);
        }
    }

    #[test]
    fn shorthand_parsing() {
        assert!(SetModel::parse_shorthand("ball:n=2,R=1").is_ok());
        assert!(SetModel::parse_shorthand("full:n=3").is_ok());
        assert!(SetModel::parse_shorthand("ex39").is_ok());
        assert!(matches!(
            SetModel::parse_shorthand("ball:n"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            SetModel::parse_shorthand("wat:n=2"),
            Err(Error::Parse(_))
        ));
    }

    /// Uniform directions on the sphere tie Δ to the membership predicate:
    /// the hit fraction at radius r estimates Δ(r)/ω_n.
    #[test]
    fn monte_carlo_angular_mass_consistency() {
        use rand_chacha::rand_core::{RngCore, SeedableRng};
        use rand_chacha::ChaCha8Rng;

        let cases: Vec<(SetModel, f64)> = vec![
            (
                SetModel::builtin("halfspace", &params(&[("n", 2.0)])).unwrap(),
                1.0,
            ),
            (
                SetModel::builtin("cone", &params(&[("n", 3.0), ("angle", 0.8)])).unwrap(),
                2.0,
            ),
            (SetModel::builtin("ex34", &params(&[])).unwrap(), 3.0),
            (SetModel::builtin("ex39", &params(&[])).unwrap(), 0.4),
        ];
        let samples = 200_000u64;
        for (model, r) in cases {
            let n = model.dimension() as usize;
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            let mut hits = 0u64;
            for _ in 0..samples {
                // isotropic direction via normalized Gaussians (Box-Muller)
                let mut dir = Vec::with_capacity(n);
                while dir.len() < n {
                    let u1 = ((rng.next_u64() >> 11) as f64 + 1.0) / (1u64 << 53) as f64;
                    let u2 = ((rng.next_u64() >> 11) as f64 + 1.0) / (1u64 << 53) as f64;
                    let m = (-2.0 * u1.ln()).sqrt();
                    dir.push(m * (std::f64::consts::TAU * u2).cos());
                    dir.push(m * (std::f64::consts::TAU * u2).sin());
                }
                dir.truncate(n);
                let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
                let point: Vec<f64> = dir.iter().map(|x| r * x / norm).collect();
                if model.contains(&point).unwrap() {
                    hits += 1;
                }
            }
            let p_hat = hits as f64 / samples as f64;
            let expected = model.delta(r).unwrap() / total_angular_mass(model.dimension());
            let stderr = (p_hat * (1.0 - p_hat) / samples as f64).sqrt().max(1e-6);
            assert!(
                (p_hat - expected).abs() <= 4.0 * stderr,
                "{model}: empirical {p_hat} vs delta-based {expected} (stderr {stderr})"
            );
        }
    }
}
