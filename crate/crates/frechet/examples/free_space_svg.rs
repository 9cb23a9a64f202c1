//! Render the free-space diagram of two curves as an SVG file, including
//! the subcell grid, shaded free space, and the boundary graph.

use frechet::curve::{PiecewiseCurve, PolynomialPiece};
use frechet::plot::render_svg;

fn main() -> anyhow::Result<()> {
    // A parabola against a straight segment: the single cell shows curved
    // boundary arcs with tangent-derived cuts.
    let a = PiecewiseCurve::new(vec![PolynomialPiece::from_control_points(&[
        vec![0.0, 0.0],
        vec![0.5, 1.0],
        vec![1.0, 0.0],
    ])?])?;
    let b = PiecewiseCurve::polyline(&[vec![0.0, 0.3], vec![1.0, 0.3]])?;

    let svg = render_svg(&a, &b, 0.45, 360.0)?;
    let path = std::env::temp_dir().join("free_space.svg");
    std::fs::write(&path, &svg)?;
    println!("wrote {} ({} bytes)", path.display(), svg.len());
    Ok(())
}
