//! Log-Puiseux series: construction, ring arithmetic, partial sums and
//! membership validation.
//!
//! ```bash
//! cargo run --example series_arithmetic
//! ```

use std::collections::BTreeMap;

use gausstail::{Direction, LogPolynomial, LogPuiseuxSeries};

fn main() -> gausstail::Result<()> {
    // (1 + log x)·x^(1/2): a single term with a degree-one log part
    let mut terms = BTreeMap::new();
    terms.insert(1, LogPolynomial::new(vec![1.0, 1.0]));
    let f = LogPuiseuxSeries::with_inferred_bound(Direction::AtZero, 2, terms, 8);
    println!("f      = {f}");
    println!("f(0.25) through order 1 = {}", f.partial_sum(0.25, 1)?);

    // geometric jet 1 + x + x² + x³, truncated at order 3
    let g = LogPuiseuxSeries::with_inferred_bound(
        Direction::AtZero,
        1,
        (0..=3).map(|k| (k, LogPolynomial::constant(1.0))).collect(),
        3,
    );
    println!("g      = {g}");
    println!("g(1/2) = {}", g.partial_sum(0.5, 3)?);

    // ring operations align ramifications and track truncation honestly
    let sum = f.try_add(&g)?;
    let product = f.try_mul(&g)?;
    println!("f + g  = {sum}");
    println!(
        "f * g  = {product} (known through order {})",
        product.truncation_order()
    );

    // membership diagnostics: the smallest valid logarithmic-power bound
    let check = product.validate();
    println!(
        "f * g: well-formed = {}, effective log power = {}",
        check.ok, check.p_effective
    );

    // the same series written with ramification 4 normalizes back to 2
    let doubled = LogPuiseuxSeries::with_inferred_bound(
        Direction::AtZero,
        4,
        f.terms().map(|(k, g)| (2 * k, g.clone())).collect(),
        16,
    );
    println!(
        "redundant ramification normalizes: q = {} (same series: {})",
        doubled.ramification(),
        doubled == f
    );

    // shared structured-text format
    println!(
        "serialized: {}",
        serde_json::to_string(&f).expect("series serializes")
    );
    Ok(())
}
