//! Shared helpers for the integration suites. Each suite uses a subset,
//! so the unused-code lint is off.
#![allow(dead_code)]

use std::collections::BTreeMap;

use gausstail::setmodel::SetModel;

pub fn builtin(name: &str, pairs: &[(&str, f64)]) -> SetModel {
    let params: BTreeMap<String, f64> = pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    SetModel::builtin(name, &params).unwrap()
}

/// Every builtin with a membership predicate, across the dimensions the
/// structural criteria exercise.
pub fn membership_builtins() -> Vec<(String, SetModel)> {
    let mut out = Vec::new();
    for n in [2.0, 3.0, 4.0] {
        out.push((format!("full:n={n}"), builtin("full", &[("n", n)])));
        out.push((
            format!("halfspace:n={n}"),
            builtin("halfspace", &[("n", n)]),
        ));
        out.push((
            format!("ball:n={n}"),
            builtin("ball", &[("n", n), ("R", 1.0)]),
        ));
        out.push((
            format!("cone:n={n}"),
            builtin("cone", &[("n", n), ("angle", 0.8)]),
        ));
    }
    out.push(("ex34".into(), builtin("ex34", &[])));
    out.push(("ex38".into(), builtin("ex38", &[])));
    out.push(("ex39".into(), builtin("ex39", &[])));
    out
}

/// Positive-term series oracle for erf: (2/√π) e^(−x²) Σ 2^k x^(2k+1)/(2k+1)!!.
/// All terms share a sign, so no cancellation occurs anywhere on [−6, 6].
pub fn erf_oracle(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = 0.0;
    for k in 0..2000 {
        sum += term;
        term *= 2.0 * x2 / (2.0 * k as f64 + 3.0);
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    2.0 / std::f64::consts::PI.sqrt() * (-x2).exp() * sum
}
