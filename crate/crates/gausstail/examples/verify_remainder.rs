//! Remainder verification: the partial sums must approximate Φ with an
//! error that vanishes faster than the last kept scale along a grid.
//!
//! ```bash
//! cargo run --example verify_remainder
//! ```

use gausstail::expansion::{expand_at_infinity, expand_at_zero, verify_remainder};
use gausstail::setmodel::SetModel;

fn report(name: &str, r: &gausstail::expansion::EvalReport) {
    println!("{name}:");
    println!(
        "{:>10} {:>20} {:>20} {:>14}",
        "t", "Phi", "partial sum", "ratio"
    );
    for i in 0..r.grid.len() {
        println!(
            "{:>10.1e} {:>20.12e} {:>20.12e} {:>14.4e}",
            r.grid[i], r.phi_values[i], r.partial_sums[i], r.remainder_ratios[i]
        );
    }
    println!(
        "  verdict: pass = {}, non-monotone steps = {}, decay factor = {:.3e}\n",
        r.verdict.pass, r.verdict.increases, r.verdict.decay_factor
    );
}

fn main() -> gausstail::Result<()> {
    // small time: the remainder past the sqrt(t) term of the cusp set
    let ex39 = SetModel::parse_shorthand("ex39")?;
    let expansion = expand_at_zero(&ex39, 4)?;
    let grid = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6];
    report(
        "ex39 at zero, N = 1",
        &verify_remainder(&ex39, &expansion, 1, &grid)?,
    );

    // large time: two orders of the resonant tail set
    let ex34 = SetModel::parse_shorthand("ex34")?;
    let expansion = expand_at_infinity(&ex34, 4)?;
    let grid = [1e2, 1e3, 1e4, 1e5, 1e6];
    report(
        "ex34 at infinity, N = 2",
        &verify_remainder(&ex34, &expansion, 2, &grid)?,
    );

    // a thin set: Phi is exponentially small, the zero series verifies at
    // the absolute floor
    let expansion = expand_at_zero(&ex34, 4)?;
    report(
        "ex34 at zero (thin set), N = 2",
        &verify_remainder(&ex34, &expansion, 2, &[1e-2, 1e-3, 1e-4])?,
    );
    Ok(())
}
