//! Set models: builtins, radial profiles, membership, and sector assembly.
//!
//! ```bash
//! cargo run --example set_models
//! ```

use gausstail::setmodel::{total_angular_mass, AngularSector, RadialBound, SetModel};

fn main() -> gausstail::Result<()> {
    println!("Radial profiles Delta(r) of the builtin sets:");
    let specs = [
        "full:n=2",
        "halfspace:n=3",
        "ball:n=2,R=1",
        "cone:n=3,angle=0.5",
        "ex34",
        "ex38",
        "ex39",
    ];
    print!("{:>20}", "r");
    for r in [0.25, 0.5, 2.0, 8.0] {
        print!("{r:>14}");
    }
    println!();
    for spec in specs {
        let model = SetModel::parse_shorthand(spec)?;
        print!("{spec:>20}");
        for r in [0.25, 0.5, 2.0, 8.0] {
            print!("{:>14.8}", model.delta(r)?);
        }
        println!("   (mass {:.6})", total_angular_mass(model.dimension()));
    }

    println!("\nMembership probes (Cartesian points through the polar predicate):");
    let ex34 = SetModel::parse_shorthand("ex34")?;
    for phi in [0.1, 0.3] {
        let p = [2.0 * f64::cos(phi), 2.0 * f64::sin(phi)];
        println!("  ex34 contains (r=2, phi={phi})? {}", ex34.contains(&p)?);
    }

    // custom planar set from angular bounds: phi in (0.3, 0.8) at all radii
    let wedge = SetModel::sector2d(&[AngularSector {
        r_lo: 0.0,
        r_hi: f64::INFINITY,
        phi_lo: RadialBound::constant(0.3),
        phi_hi: RadialBound::constant(0.8),
    }])?;
    println!("\nWedge sector: Delta = {} at every r", wedge.delta(3.0)?);

    // the structured-text description round-trips exactly
    let text = serde_json::to_string(&ex34).expect("model serializes");
    let reparsed: SetModel = serde_json::from_str(&text).expect("model parses");
    println!(
        "\nSerialized ex34 ({} bytes), byte-identical round trip: {}",
        text.len(),
        serde_json::to_string(&reparsed).expect("model serializes") == text
    );
    Ok(())
}
