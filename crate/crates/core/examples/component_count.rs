//! Interior component counts of the shifted-row tile, checked against the
//! strip adjacency graph where it is small enough to build.
//!
//! cargo run --example component_count -- 3

use fractopo::numeric::Rational;
use fractopo::shift::{self, ShiftParams};

fn main() -> fractopo::Result<()> {
    let p: i64 = std::env::args()
        .nth(1)
        .map_or(3, |s| s.parse().expect("p is an integer"));
    let q = p.abs();
    let samples = [
        Rational::frac(1, 2),
        Rational::from(q - 1),
        Rational::from(q),
        Rational::from(q + 1),
        Rational::from(q * q - 1),
        Rational::from(q * q),
        Rational::from(q * q + 1),
        Rational::from(-(q * q)),
        Rational::from(q * q * q),
    ];
    for eps in samples {
        let report = shift::component_count(&ShiftParams::new(p, eps)?)?;
        println!("{}", serde_json::to_string(&report).expect("serializable"));
    }
    Ok(())
}
