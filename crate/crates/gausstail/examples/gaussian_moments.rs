//! Gaussian log-moments ∫ e^(−s²) s^a (log μs)^j ds: the Gamma-derivative
//! route, incomplete moments, and the symbolic lower-tail expansion with its
//! b = −1 resonance.
//!
//! ```bash
//! cargo run --example gaussian_moments
//! ```

use gausstail::moments::{
    complete_log_moment, gamma_deriv, lower_tail_expansion, shifted_log_moment,
    upper_incomplete_log_moment,
};
use gausstail::Rational;

fn main() -> gausstail::Result<()> {
    println!("Gamma derivatives via the Bell/polygamma recurrence:");
    for j in 0..=3 {
        println!("  Gamma^({j})(2) = {:+.15}", gamma_deriv(j, 2.0)?);
    }

    println!("\nComplete moments 2^(-(j+1)) Gamma^(j)((a+1)/2):");
    for (a, j) in [(1.0, 0usize), (3.0, 0), (3.0, 1), (2.0, 2)] {
        println!(
            "  int e^(-s^2) s^{a} (log s)^{j} ds = {:+.15}",
            complete_log_moment(a, j)?
        );
    }
    println!(
        "  with shift mu = sqrt(2), a=3 j=1:     {:+.15}",
        shifted_log_moment(3.0, 1, std::f64::consts::SQRT_2)?
    );

    println!("\nUpper-incomplete moments (adaptive quadrature, tail cut):");
    println!(
        "  int_1^inf e^(-s^2)/s ds              = {:+.15}",
        upper_incomplete_log_moment(-1.0, 0, 1.0, 1.0)?
    );
    println!(
        "  int_2^inf e^(-s^2) ds                = {:+.15}",
        upper_incomplete_log_moment(0.0, 0, 1.0, 2.0)?
    );

    // The resonant case a = -1: termwise integration of the Gaussian series
    // hits the exponent b = a + 2i = -1 at i = 0 and produces a pure
    // logarithm; every other term contributes a power of eps.
    println!("\nLower tail int_eps^1 e^(-s^2) s^(-1) ds as eps -> 0:");
    let lte = lower_tail_expansion(Rational::from_integer(-1), 0, 6)?;
    println!("  constant term          = {:+.15}", lte.constant);
    println!("  log(1/eps) coefficient = {:+.15}", lte.log_inv_coeff(1));
    for (e, poly) in &lte.powers {
        println!("  eps^({e}) coefficient    = {:+.15}", poly.coeff(0));
    }
    for eps in [0.3, 0.1, 0.03] {
        let numeric = upper_incomplete_log_moment(-1.0, 0, 1.0, eps)?
            - upper_incomplete_log_moment(-1.0, 0, 1.0, 1.0)?;
        println!(
            "  eps = {eps:>4}: expansion {:+.12}  quadrature {:+.12}",
            lte.eval(eps),
            numeric
        );
    }
    Ok(())
}
