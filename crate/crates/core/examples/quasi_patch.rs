//! The translate patches `D_{eps,k}` of the shifted-row tiling: growth,
//! self-replication, the local finiteness census and a local isomorphism
//! witness.
//!
//! cargo run --example quasi_patch -- 2/5

use fractopo::numeric::{Point2, Rational};
use fractopo::quasi::{self, DEFAULT_PATCH_BUDGET};
use fractopo::shift::ShiftParams;

fn main() -> fractopo::Result<()> {
    let eps: Rational = std::env::args()
        .nth(1)
        .map_or(Ok(Rational::frac(2, 5)), |s| s.parse())?;
    let params = ShiftParams::new(3, eps.clone())?;
    for k in 1..=3 {
        let patch = quasi::dset_k(&params, k, DEFAULT_PATCH_BUDGET)?;
        let replicating = patch
            .points
            .iter()
            .all(|t| quasi::self_replication_check(&params, k, t).unwrap_or(false));
        println!(
            "k={k}: {} translates, self-replicating: {replicating}",
            patch.points.len()
        );
    }
    for c in [1, 2] {
        let rep = quasi::local_finiteness_census(&params, &Rational::from(c), 4)?;
        println!(
            "census c={c} k=4: {} classes, bound {}",
            rep.count, rep.bound
        );
    }
    let x = Point2::new(Rational::frac(13, 4), Rational::frac(-5, 7));
    let w = quasi::local_isomorphism_witness(&params, 1, &x, 256)?;
    println!(
        "x={x}: tile T + {}, reduced translate {}, R^2 <= {}, verified: {}",
        w.d_x,
        w.d_x_prime,
        w.radius_sq,
        w.verify(&params)?
    );
    print!(
        "{}",
        quasi::dset_k(&params, 1, DEFAULT_PATCH_BUDGET)?.export()
    );
    Ok(())
}
