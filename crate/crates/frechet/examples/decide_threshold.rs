//! Decide d_F <= delta for two polylines over a range of thresholds and
//! print where the answer flips.

use frechet::curve::{NormConfig, PiecewiseCurve};
use frechet::decision::decide;

fn main() -> anyhow::Result<()> {
    let a = PiecewiseCurve::polyline(&[
        vec![0.0, 0.0],
        vec![1.0, 0.8],
        vec![2.0, -0.2],
        vec![3.0, 0.5],
    ])?;
    let b = PiecewiseCurve::polyline(&[
        vec![0.0, 0.4],
        vec![1.2, 1.0],
        vec![2.1, 0.3],
        vec![3.0, 0.9],
    ])?;

    let norm = NormConfig::default();
    for k in 1..=20 {
        let delta = 0.1 * k as f64;
        let d = decide(&a, &b, delta, norm)?;
        println!(
            "delta = {delta:4.2}  ->  {}  (cells processed: {})",
            if d.reachable { "yes" } else { "no " },
            d.cells - d.cells_skipped
        );
    }
    Ok(())
}
