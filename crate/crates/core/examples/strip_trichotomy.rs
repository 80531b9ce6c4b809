//! Sibling strips meet in a segment, a point, or not at all, depending on
//! how `|eps|` compares with `|p|^(n+1)`.
//!
//! cargo run --example strip_trichotomy -- 3 9

use fractopo::numeric::Rational;
use fractopo::shift::{self, ShiftParams};

fn main() -> fractopo::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let p: i64 = args
        .first()
        .map_or(Ok(3), |s| s.parse())
        .expect("p is an integer");
    let eps: Rational = args.get(1).map_or(Ok(Rational::from(9)), |s| s.parse())?;
    let params = ShiftParams::new(p, eps.clone())?;
    for n in 0..4u32 {
        let closed = shift::classify_strip_intersection(&params, n);
        let edges = shift::sibling_intersection(&params, &vec![0; n as usize], 0, 1)?;
        let pair = shift::strip_interval_pair(&params, n);
        println!("p={p} eps={eps} n={n}: {closed:?}");
        println!(
            "    sections {:?} and {:?} at y = {}",
            pair.i1, pair.i2, pair.y_meet
        );
        assert_eq!(closed, edges, "closed form and edge sections disagree");
    }
    Ok(())
}
