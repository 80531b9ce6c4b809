//! Balanced base-p expansions of integers and the odd-digit indicator
//! `hat(n) = sum [d_t odd] p^t` that shears the tiling rows.
//!
//! cargo run --example balanced_digits -- 5

use fractopo::quasi;

fn main() -> fractopo::Result<()> {
    let p: i64 = std::env::args()
        .nth(1)
        .map_or(3, |s| s.parse().expect("p is an integer"));
    for n in -10..=10i128 {
        let d = quasi::balanced_digits(n, p)?;
        assert_eq!(d.value(), n);
        println!(
            "{n:>4} = {:?} (lowest first), hat = {}",
            d.digits,
            quasi::hat(n, p)?
        );
    }
    Ok(())
}
