//! Large-time expansion with a resonance logarithm: the planar tail set
//! with Δ(r) = 1/r² past r = 1, where Φ(t) ~ (log t)/(4πt) + c₀/t + ….
//!
//! ```bash
//! cargo run --example expand_large_time
//! ```

use gausstail::evaluator::phi_quadrature;
use gausstail::expansion::expand_at_infinity;
use gausstail::setmodel::SetModel;

fn main() -> gausstail::Result<()> {
    let model = SetModel::parse_shorthand("ex34")?;
    let result = expand_at_infinity(&model, 8)?;

    println!("Expansion of Phi at t -> infinity (x stands for t):");
    println!("  {}", result.series);

    let q = result.series.ramification() as u64;
    let g1 = result.series.term(q);
    println!("\nThe 1/t term carries the resonance logarithm:");
    println!(
        "  log t coefficient = {:+.15}   (1/(4 pi) = {:.15})",
        g1.coeff(1),
        1.0 / (4.0 * std::f64::consts::PI)
    );
    println!("  constant          = {:+.15}", g1.coeff(0));

    // The combination 2 pi t Phi(t) - (log t)/2 isolates the constant.
    println!("\n2 pi t Phi(t) - (log t)/2 converges to 2 pi * (1/t constant):");
    println!("{:>10} {:>22}", "t", "value");
    for t in [1e2, 1e3, 1e4, 1e5, 1e6] {
        let phi = phi_quadrature(&model, t, 1e-11)?.value;
        let value = 2.0 * std::f64::consts::PI * t * phi - 0.5 * t.ln();
        println!("{t:>10.0e} {value:>22.15}");
    }
    println!(
        "{:>10} {:>22.15}",
        "limit",
        2.0 * std::f64::consts::PI * g1.coeff(0)
    );
    Ok(())
}
