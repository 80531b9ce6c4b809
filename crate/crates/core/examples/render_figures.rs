//! Writes the figure set as PPM images and reports the number of
//! 4-connected black regions of each.
//!
//! cargo run --release --example render_figures -- /tmp/figures

use std::path::PathBuf;

use fractopo::diag::DiagParams;
use fractopo::numeric::Rational;
use fractopo::render;
use fractopo::shift::ShiftParams;

fn main() -> fractopo::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "figures".into()));
    std::fs::create_dir_all(&dir)?;
    for eps in [2, 3, 4, 8, 9, 10] {
        let img = render::shift_figure(&ShiftParams::new(3, Rational::from(eps))?, 7, 729, 243)?;
        let path = dir.join(format!("shift_p3_eps{eps}.ppm"));
        fractopo::cli::write_atomic(&path, &img.to_ppm())?;
        println!(
            "{}: {} regions",
            path.display(),
            render::flood_components(&img)
        );
    }
    for eps in [3, 4, 5] {
        let img = render::diag_figure(&DiagParams::new(3, Rational::from(eps))?, 7, 729, 729)?;
        let path = dir.join(format!("diag_p3_eps{eps}.ppm"));
        fractopo::cli::write_atomic(&path, &img.to_ppm())?;
        println!(
            "{}: {} regions",
            path.display(),
            render::flood_components(&img)
        );
    }
    Ok(())
}
