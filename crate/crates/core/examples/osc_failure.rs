//! For `eps = l + k/p` two distinct words give the same map, so the open
//! set condition fails.
//!
//! cargo run --example osc_failure -- 5

use fractopo::diag::{self, DiagParams};
use fractopo::ifs::map_equal;
use fractopo::numeric::Rational;

fn main() -> fractopo::Result<()> {
    let p: i64 = std::env::args()
        .nth(1)
        .map_or(3, |s| s.parse().expect("p is an integer"));
    for n in 0..p * p {
        let eps = Rational::frac(n, p);
        let params = DiagParams::new(p, eps.clone())?;
        match diag::osc_failure_witness(&params) {
            Some(w) => {
                assert!(
                    map_equal(&w.pair.0, &w.pair.1)
                        && map_equal(&w.mirror_pair.0, &w.mirror_pair.1)
                );
                println!(
                    "eps={eps}: l={} k={}: f00 o f0,{} = f{},{} o f{},{}",
                    w.l,
                    w.k,
                    p - 1,
                    w.l,
                    w.l + 1,
                    w.k,
                    w.k - 1
                );
            }
            None => println!("eps={eps}: no coincidence"),
        }
    }
    Ok(())
}
