//! Rational shifts give a quasi-periodic tiling; a float stand-in for an
//! irrational shift produces ever new close pairs of translates.
//!
//! cargo run --example irrational_demo

use fractopo::numeric::Rational;
use fractopo::quasi::{self, Eps};

fn main() -> fractopo::Result<()> {
    for eps in [
        Eps::Exact(Rational::one()),
        Eps::Exact(Rational::frac(2, 7)),
        Eps::DemoFloat(0.5),
        Eps::DemoFloat(2f64.sqrt()),
    ] {
        let report = quasi::is_quasi_periodic(3, &eps)?;
        println!(
            "{eps:?}: {:?} (certified: {})",
            report.verdict, report.certified
        );
    }
    for pair in quasi::irrational_witness_pairs(3, 1, 2f64.sqrt(), 6) {
        println!(
            "k={} dx={:.6} |t - t'|={:.6}",
            pair.k, pair.dx, pair.distance
        );
    }
    Ok(())
}
