//! Compute the Fréchet distance between two quadratic Bézier curves to a
//! tight tolerance and cross-check the result against dense sampling.

use frechet::curve::{NormConfig, PiecewiseCurve, PolynomialPiece};
use frechet::distance::compute;
use frechet::oracle::sampled_frechet_bounds;

fn main() -> anyhow::Result<()> {
    let a = PiecewiseCurve::new(vec![PolynomialPiece::from_control_points(&[
        vec![0.0, 0.0],
        vec![1.0, 1.6],
        vec![2.0, 0.0],
    ])?])?;
    let b = PiecewiseCurve::new(vec![PolynomialPiece::from_control_points(&[
        vec![0.0, 0.5],
        vec![1.0, -0.9],
        vec![2.0, 0.5],
    ])?])?;

    let res = compute(&a, &b, 1e-9, NormConfig::default())?;
    println!("d_F        = {:.12}", res.value);
    println!("bracket    = [{:.12}, {:.12}]", res.lo, res.hi);
    println!("from exact critical value: {}", res.exact_candidate);
    println!("decision calls: {}", res.decides);

    let (lo, hi) = sampled_frechet_bounds(&a, &b, 1e-3)?;
    println!("sampled oracle bracket: [{lo:.6}, {hi:.6}]");
    assert!(res.value >= lo - 1e-9 && res.value <= hi + 1e-9);
    Ok(())
}
