//! Strip adjacency graphs: edges tagged by the shape of the intersection,
//! and interior components from the segment edges alone.
//!
//! cargo run --example hata_graph -- 3 4

use fractopo::hata::EdgeTag;
use fractopo::numeric::Rational;
use fractopo::shift::{self, ShiftParams};

fn main() -> fractopo::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let p: i64 = args
        .first()
        .map_or(3, |s| s.parse().expect("p is an integer"));
    let eps: Rational = args.get(1).map_or(Ok(Rational::from(4)), |s| s.parse())?;
    let params = ShiftParams::new(p, eps.clone())?;
    let n = shift::cell_level(&params) as usize;
    let g = shift::strip_graph(&params, n)?;
    let (all, _) = g.components();
    let (interior, parts) = g.components_where(|e| e.tag == EdgeTag::Segment);
    println!(
        "p={p} eps={eps} level {n}: {} strips, {} edges",
        g.nodes().len(),
        g.edges().len()
    );
    println!(
        "connected as a set: {}, interior components: {interior}",
        all == 1
    );
    for part in parts {
        let labels: Vec<String> = part
            .iter()
            .map(|&i| format!("{:?}", g.nodes()[i]))
            .collect();
        println!("  {}", labels.join(" "));
    }
    let json = g.adjacency_json(|w| format!("{w:?}"));
    println!(
        "{}",
        serde_json::to_string_pretty(&json).expect("serializable")
    );
    Ok(())
}
