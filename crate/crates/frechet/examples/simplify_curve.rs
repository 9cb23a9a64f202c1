//! Simplify a noisy polyline at several scales mu and verify the guarantee
//! d_F(curve, simplified) <= mu while every output piece has length >= mu.

use frechet::curve::{NormConfig, PiecewiseCurve};
use frechet::decision::decide;
use frechet::simplify::simplify;
use rand::{Rng, SeedableRng};

fn main() -> anyhow::Result<()> {
    // A jittered walk along the x axis.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    let mut pts = vec![vec![0.0, 0.0]];
    for i in 1..40 {
        pts.push(vec![
            0.1 * i as f64 + rng.gen_range(-0.03..0.03),
            rng.gen_range(-0.08..0.08),
        ]);
    }
    let curve = PiecewiseCurve::polyline(&pts)?;
    println!(
        "input: {} pieces, arc length {:.3}\n",
        curve.num_pieces(),
        curve.arc_length()
    );

    for mu in [0.1, 0.3, 0.8] {
        let res = simplify(&curve, mu)?;
        let within = decide(&curve, &res.curve, mu * (1.0 + 1e-6), NormConfig::default())?;
        println!(
            "mu = {mu}: {} pieces, {} replacements, d_F <= mu: {}",
            res.curve.num_pieces(),
            res.log.len(),
            within.reachable
        );
        assert!(within.reachable);
        for p in &res.curve.pieces {
            assert!(p.arc_length() >= mu * (1.0 - 1e-9) || res.curve.num_pieces() == 1);
        }
    }
    Ok(())
}
