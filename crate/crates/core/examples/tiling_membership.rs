//! Locates rational points in the tiling by integer translates of the
//! shifted-row tile: the covering translate, or a boundary report.
//!
//! cargo run --example tiling_membership

use fractopo::numeric::{Point2, Rational};
use fractopo::shift::{self, Membership, ShiftParams};

fn main() -> fractopo::Result<()> {
    let params = ShiftParams::new(3, Rational::from(2))?;
    let points = [
        Point2::new(Rational::zero(), Rational::zero()),
        Point2::new(Rational::frac(1, 2), Rational::zero()),
        Point2::new(Rational::frac(7, 5), Rational::frac(-3, 7)),
        Point2::new(Rational::frac(-11, 6), Rational::frac(5, 4)),
        Point2::new(Rational::frac(1, 3), Rational::frac(1, 2)),
    ];
    for x in &points {
        match shift::tiling_membership(&params, x, 256) {
            Membership::Inside(t) => println!("{x}: inside T + {t}"),
            Membership::Boundary => println!("{x}: on a tile boundary"),
            Membership::Unresolved => println!("{x}: unresolved within the budget"),
        }
        println!(
            "    in T itself: {:?}",
            shift::tile_contains(&params, x, 256)
        );
    }
    Ok(())
}
