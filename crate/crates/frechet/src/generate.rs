//! Seeded random curve generators for tests, examples, and the CLI.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::{PiecewiseCurve, PolynomialPiece};
use crate::error::{Error, Result};

/// A random piecewise Bézier curve: `pieces` chained pieces of the given
/// degree in R^dim, joined continuously, with control-point steps of
/// magnitude around one. Deterministic in the seed.
pub fn random_bezier(
    pieces: usize,
    degree: usize,
    dim: usize,
    seed: u64,
) -> Result<PiecewiseCurve> {
    if pieces == 0 || degree == 0 || dim == 0 {
        return Err(Error::InvalidCurve(
            "pieces, degree and dim must be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mut out = Vec::with_capacity(pieces);
    for _ in 0..pieces {
        let mut cps = vec![current.clone()];
        for _ in 0..degree {
            let next: Vec<f64> = cps
                .last()
                .unwrap()
                .iter()
                .map(|&x| x + rng.gen_range(-0.5..0.5f64) + 0.25 / degree as f64)
                .collect();
            cps.push(next);
        }
        current = cps.last().unwrap().clone();
        out.push(PolynomialPiece::from_control_points(&cps)?);
    }
    PiecewiseCurve::new(out)
}

/// A random polyline (degree-1 pieces) in R^dim.
pub fn random_polyline(pieces: usize, dim: usize, seed: u64) -> Result<PiecewiseCurve> {
    random_bezier(pieces, 1, dim, seed)
}

/// A planar zigzag that is c-packed up to constants: vertical strokes of
/// height about one, advancing by 2/c per stroke, so a ball of radius r
/// around the middle captures arc length close to c*r. Small seeded jitter
/// keeps the instances in general position.
pub fn cpacked_zigzag(pieces: usize, c: f64, seed: u64) -> Result<PiecewiseCurve> {
    if pieces == 0 {
        return Err(Error::InvalidCurve("pieces must be positive".into()));
    }
    if !(c >= 1.0) || !c.is_finite() {
        return Err(Error::ParamOutOfRange(c));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dx = 2.0 / c;
    let mut pts = Vec::with_capacity(pieces + 1);
    for k in 0..=pieces {
        let x = k as f64 * dx + rng.gen_range(-0.05..0.05) * dx;
        let y = if k % 2 == 0 { 0.0 } else { 1.0 } + rng.gen_range(-0.02..0.02f64);
        pts.push(vec![x, y]);
    }
    PiecewiseCurve::polyline(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplify::packedness_estimate;

    #[test]
    fn bezier_generator_is_deterministic() {
        let a = random_bezier(4, 3, 3, 7).unwrap();
        let b = random_bezier(4, 3, 3, 7).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        let c = random_bezier(4, 3, 3, 8).unwrap();
        assert_ne!(a.to_json(), c.to_json());
        assert_eq!(a.num_pieces(), 4);
        assert_eq!(a.max_degree(), 3);
        assert_eq!(a.dim, 3);
    }

    #[test]
    fn zigzag_packedness_tracks_c() {
        for c in [2.0, 4.0, 8.0] {
            let z = cpacked_zigzag(32, c, 5).unwrap();
            let c_hat = packedness_estimate(&z, 300, 13);
            assert!(
                c_hat >= 0.5 * c && c_hat <= 2.5 * c,
                "c {} estimated {}",
                c,
                c_hat
            );
        }
    }

    #[test]
    fn generators_reject_degenerate_parameters() {
        assert!(random_bezier(0, 3, 2, 1).is_err());
        assert!(cpacked_zigzag(4, 0.5, 1).is_err());
    }
}
