//! Small-time expansion with a logarithm: the cusp-like set in R³ whose
//! profile is Δ(r) = −r log r, giving Φ(t) ~ (E₀ + E₁ log t)·√t.
//!
//! ```bash
//! cargo run --example expand_small_time
//! ```

use gausstail::evaluator::phi_quadrature;
use gausstail::expansion::expand_at_zero;
use gausstail::setmodel::SetModel;

fn main() -> gausstail::Result<()> {
    let model = SetModel::parse_shorthand("ex39")?;
    let result = expand_at_zero(&model, 4)?;

    println!("Expansion of Phi at t -> 0 (x stands for t):");
    println!("  {}", result.series);
    println!(
        "  claimed remainder scale: t^({})",
        result.claimed_remainder_exponent
    );

    let g = result.series.term(1);
    println!("\nCoefficients of the sqrt(t) term:");
    println!("  E0 = {:+.15}", g.coeff(0));
    println!(
        "  E1 = {:+.15}   (magnitude sqrt(2)/(4 pi^(3/2)) = {:.15})",
        g.coeff(1),
        std::f64::consts::SQRT_2 / (4.0 * std::f64::consts::PI.powf(1.5))
    );

    println!("\nProvenance (C and D factors per term):");
    for entry in &result.provenance {
        println!(
            "  k={} p={} l={}  C = {:+.8e}  D = {:+.8e}",
            entry.k, entry.p, entry.l, entry.c_factor, entry.d_factor
        );
    }

    println!("\nPartial sum against the quadrature oracle:");
    println!(
        "{:>10} {:>22} {:>22} {:>12}",
        "t", "Phi (quadrature)", "S(t)", "gap"
    );
    for t in [1e-2, 1e-3, 1e-4, 1e-5] {
        let phi = phi_quadrature(&model, t, 1e-11)?.value;
        let s = result.series.partial_sum(t, 1)?;
        println!(
            "{t:>10.0e} {phi:>22.15} {s:>22.15} {:>12.3e}",
            (phi - s).abs()
        );
    }
    Ok(())
}
