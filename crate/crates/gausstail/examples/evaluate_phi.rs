//! Evaluating Φ_A(t) three independent ways: adaptive quadrature of the
//! radial integral, seeded Monte Carlo over the membership predicate, and a
//! closed form where one exists.
//!
//! ```bash
//! cargo run --example evaluate_phi
//! ```

use gausstail::evaluator::{phi_montecarlo, phi_quadrature, phi_univariate};
use gausstail::setmodel::SetModel;

fn main() -> gausstail::Result<()> {
    let ball = SetModel::parse_shorthand("ball:n=2,R=1")?;
    println!("Unit disk in the plane: Phi(t) = 1 - exp(-1/(2t))");
    println!(
        "{:>8} {:>22} {:>22} {:>22}",
        "t", "quadrature", "monte carlo", "closed form"
    );
    for t in [0.1, 0.5, 2.0, 10.0] {
        let quad = phi_quadrature(&ball, t, 1e-11)?;
        let mc = phi_montecarlo(&ball, t, 400_000, 7)?;
        let exact = 1.0 - (-1.0 / (2.0 * t)).exp();
        println!(
            "{t:>8} {:>22.15} {:>22.15} {:>22.15}",
            quad.value, mc.estimate, exact
        );
        assert!((quad.value - exact).abs() <= 1e-9);
        assert!((mc.estimate - exact).abs() <= 4.0 * mc.stderr);
    }

    println!("\nDimension one is exact through the error function:");
    let intervals = [(0.0, 1.0), (2.0, f64::INFINITY)];
    for t in [0.05, 0.5, 5.0] {
        println!(
            "  Phi((0,1) u (2,inf), t={t}) = {:.15}",
            phi_univariate(&intervals, 0.0, t)?
        );
    }

    println!("\nMonte Carlo is deterministic for a fixed seed:");
    let a = phi_montecarlo(&ball, 0.5, 200_000, 42)?;
    let b = phi_montecarlo(&ball, 0.5, 200_000, 42)?;
    println!(
        "  seed 42 twice: {} and {} (hits {} = {})",
        a.estimate, b.estimate, a.hits, b.hits
    );
    Ok(())
}
