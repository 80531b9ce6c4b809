//! Connectivity certificates for the diagonal-shift family, including the
//! mirrored certificates for negative `eps`.
//!
//! cargo run --example diag_certificate -- 3 7/3

use fractopo::diag::{self, DiagParams};
use fractopo::numeric::Rational;

fn main() -> fractopo::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let p: i64 = args
        .first()
        .map_or(3, |s| s.parse().expect("p is an integer"));
    let list: Vec<Rational> = match args.get(1) {
        Some(s) => vec![s.parse()?],
        None => [
            (0, 1),
            (1, 3),
            (4, 3),
            (7, 3),
            (3, 1),
            (10, 3),
            (-1, 1),
            (-10, 3),
        ]
        .into_iter()
        .map(|(n, d)| Rational::frac(n, d))
        .collect(),
    };
    for eps in list {
        let params = DiagParams::new(p, eps.clone())?;
        let cert = diag::connectivity_certificate(&params)?;
        cert.verify()?;
        println!(
            "eps={eps}: {}",
            serde_json::to_string(&cert).expect("serializable")
        );
    }
    let params = DiagParams::new(p, Rational::frac(7, 3))?;
    if let Some(w) = diag::adjacency_witness(&params, (1, 0), (0, 1)) {
        println!("pieces (1,0) and (0,1) share the point {w}");
    }
    Ok(())
}
