//! Curve simplification with a guaranteed Fréchet bound.
//!
//! A piece shorter than `mu` is contained in the ball of radius `mu` around
//! its start point. The simplification scans forward for the first point
//! where the curve genuinely exits that ball, replaces everything in between
//! with a straight segment of length exactly `mu`, and restarts at the exit
//! point. If the rest of the curve never leaves the ball, it is dropped. The
//! output stays within distance `mu` of the input, and every output piece
//! has arc length at least `mu`.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::{dist, piece_length, PiecewiseCurve, PolynomialPiece};
use crate::error::{Error, Result};
use crate::polysolve::curve_sphere_intersections;

/// Relative slack on arc-length comparisons; ties keep the piece.
const LENGTH_TOL: f64 = 1e-9;

/// One replacement performed by the simplification: the global-parameter
/// span of the input that was removed, and the segment inserted for it.
/// A truncation is recorded with `to == from`.
#[derive(Debug, Clone)]
pub struct Replacement {
    pub span: (f64, f64),
    pub from: Vec<f64>,
    pub to: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct SimplificationResult {
    pub curve: PiecewiseCurve,
    pub log: Vec<Replacement>,
}

struct Pending {
    piece: PolynomialPiece,
    g0: f64,
    g1: f64,
}

/// First parameter where the piece genuinely exits the ball, tracking
/// inside/outside state across the sphere crossings. Tangential touches do
/// not count as exits.
fn first_exit(piece: &PolynomialPiece, center: &[f64], mu: f64) -> Result<Option<f64>> {
    let hits = match curve_sphere_intersections(piece, center, mu) {
        Ok(h) => h,
        // A piece lying entirely on the sphere never departs from it.
        Err(Error::WholeArcAtDistance) => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut inside = dist(&piece.eval(0.0), center) <= mu;
    for h in hits {
        if h.tangency {
            continue;
        }
        if inside {
            return Ok(Some(h.t));
        }
        inside = true;
    }
    Ok(None)
}

/// Simplifies the curve with parameter `mu`. Pieces of arc length at least
/// `mu` are kept verbatim; shorter ones are replaced by straight segments of
/// length `mu` to the first genuine ball exit, or truncated away when the
/// remainder of the curve stays inside the ball.
pub fn simplify(curve: &PiecewiseCurve, mu: f64) -> Result<SimplificationResult> {
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(Error::ParamOutOfRange(mu));
    }
    let mut queue: VecDeque<Pending> = curve
        .pieces
        .iter()
        .enumerate()
        .map(|(i, p)| Pending {
            piece: p.clone(),
            g0: i as f64,
            g1: (i + 1) as f64,
        })
        .collect();
    let total = curve.num_pieces() as f64;
    let mut out: Vec<PolynomialPiece> = Vec::new();
    let mut log: Vec<Replacement> = Vec::new();

    while let Some(cur) = queue.pop_front() {
        if piece_length(&cur.piece) >= mu * (1.0 - LENGTH_TOL) {
            out.push(cur.piece);
            continue;
        }
        let center = cur.piece.eval(0.0);
        // A piece shorter than mu cannot leave the ball around its own
        // start, so the exit scan begins with the next piece.
        let mut exit: Option<(usize, f64)> = None;
        for (qi, pend) in queue.iter().enumerate() {
            if let Some(t) = first_exit(&pend.piece, &center, mu)? {
                exit = Some((qi, t));
                break;
            }
        }
        match exit {
            None => {
                log.push(Replacement {
                    span: (cur.g0, total),
                    from: center.clone(),
                    to: center.clone(),
                });
                queue.clear();
            }
            Some((qi, t)) => {
                for _ in 0..qi {
                    queue.pop_front();
                }
                let pend = queue.pop_front().unwrap();
                let p_exit = pend.piece.eval(t);
                let g_exit = pend.g0 + t * (pend.g1 - pend.g0);
                out.push(PolynomialPiece::from_control_points(&[
                    center.clone(),
                    p_exit.clone(),
                ])?);
                log.push(Replacement {
                    span: (cur.g0, g_exit),
                    from: center,
                    to: p_exit,
                });
                if t < 1.0 - 1e-12 {
                    queue.push_front(Pending {
                        piece: pend.piece.restrict(t, 1.0),
                        g0: g_exit,
                        g1: pend.g1,
                    });
                }
            }
        }
    }

    if out.is_empty() {
        // The whole curve fits inside the first ball: a single point remains.
        let p = curve.start();
        out.push(PolynomialPiece::from_control_points(&[p.clone(), p])?);
    }
    Ok(SimplificationResult {
        curve: PiecewiseCurve::new_relaxed(out)?,
        log,
    })
}

/// Dense polyline edges, shared by the ball-length estimates below.
fn dense_edges(curve: &PiecewiseCurve, per_piece: usize) -> Vec<(Vec<f64>, Vec<f64>)> {
    let mut edges = Vec::new();
    for piece in &curve.pieces {
        let mut prev = piece.eval(0.0);
        for k in 1..=per_piece {
            let t = k as f64 / per_piece as f64;
            let p = piece.eval(t);
            edges.push((prev, p.clone()));
            prev = p;
        }
    }
    edges
}

/// Exact length of the part of a straight edge inside the ball B(p, r).
fn edge_length_in_ball(a: &[f64], b: &[f64], p: &[f64], r: f64) -> f64 {
    let len2: f64 = a.iter().zip(b).map(|(x, y)| (y - x) * (y - x)).sum();
    if len2 == 0.0 {
        return 0.0;
    }
    // |a + s (b - a) - p|^2 <= r^2 as a quadratic in s.
    let bq: f64 = 2.0
        * a.iter()
            .zip(b)
            .zip(p)
            .map(|((x, y), z)| (x - z) * (y - x))
            .sum::<f64>();
    let cq: f64 = a.iter().zip(p).map(|(x, z)| (x - z) * (x - z)).sum::<f64>() - r * r;
    let disc = bq * bq - 4.0 * len2 * cq;
    if disc <= 0.0 {
        return 0.0;
    }
    let sq = disc.sqrt();
    let s0 = ((-bq - sq) / (2.0 * len2)).max(0.0);
    let s1 = ((-bq + sq) / (2.0 * len2)).min(1.0);
    if s1 <= s0 {
        0.0
    } else {
        (s1 - s0) * len2.sqrt()
    }
}

/// Arc length of the curve inside the ball B(p, r), computed on a dense
/// polyline with exact per-edge clipping.
pub fn length_in_ball(curve: &PiecewiseCurve, p: &[f64], r: f64) -> f64 {
    dense_edges(curve, 256)
        .iter()
        .map(|(a, b)| edge_length_in_ball(a, b, p, r))
        .sum()
}

/// Monte-Carlo lower bound on the packedness constant c: the largest sampled
/// ratio l(curve ∩ B(p, r)) / r over balls centered near the curve with
/// log-uniform radii.
pub fn packedness_estimate(curve: &PiecewiseCurve, trials: usize, seed: u64) -> f64 {
    assert!(trials >= 1);
    let total = curve.arc_length();
    if total <= 0.0 {
        return 0.0;
    }
    let edges = dense_edges(curve, 256);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (r_lo, r_hi) = ((1e-3 * total).ln(), (2.0 * total).ln());
    let mut best = 0.0f64;
    for _ in 0..trials {
        let center = edges[rng.gen_range(0..edges.len())].0.clone();
        let r = rng.gen_range(r_lo..r_hi).exp();
        let len: f64 = edges
            .iter()
            .map(|(a, b)| edge_length_in_ball(a, b, &center, r))
            .sum();
        best = best.max(len / r);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::NormConfig;
    use crate::decision::decide;

    #[test]
    fn long_pieces_kept_verbatim() {
        let c = PiecewiseCurve::polyline(&[
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
        ])
        .unwrap();
        let s = simplify(&c, 0.5).unwrap();
        assert_eq!(s.curve.num_pieces(), 2);
        assert!(s.log.is_empty());
        assert_eq!(s.curve.end(), c.end());
    }

    #[test]
    fn truncates_curve_inside_first_ball() {
        let c = PiecewiseCurve::polyline(&[
            vec![0.0, 0.0],
            vec![0.1, 0.0],
            vec![0.1, 0.1],
            vec![0.0, 0.1],
        ])
        .unwrap();
        let s = simplify(&c, 1.0).unwrap();
        assert!(s.curve.is_point(1e-12));
        assert_eq!(s.log.len(), 1);
        assert_eq!(s.log[0].from, s.log[0].to);
    }

    #[test]
    fn staircase_matches_hand_trace() {
        // Ten steps of size 0.1, mu = 0.35. The first short edge starts at
        // the origin; the staircase exits B(origin, 0.35) on the edge from
        // (0.2, 0.2) to (0.3, 0.2): the crossing solves x^2 + 0.2^2 = 0.35^2.
        let mut pts = vec![vec![0.0, 0.0]];
        for k in 0..10 {
            let last = pts.last().unwrap().clone();
            if k % 2 == 0 {
                pts.push(vec![last[0] + 0.1, last[1]]);
            } else {
                pts.push(vec![last[0], last[1] + 0.1]);
            }
        }
        let c = PiecewiseCurve::polyline(&pts).unwrap();
        let mu = 0.35;
        let s = simplify(&c, mu).unwrap();
        let first = s.curve.pieces[0].control_points();
        assert_eq!(first[0], vec![0.0, 0.0]);
        let x = (mu * mu - 0.04f64).sqrt();
        assert!((first[1][0] - x).abs() < 1e-9);
        assert!((first[1][1] - 0.2).abs() < 1e-9);
        // Every inserted segment has length exactly mu and every output
        // piece is at least mu long.
        for p in &s.curve.pieces {
            assert!(piece_length(p) >= mu * (1.0 - 1e-9));
        }
        for r in s.log.iter().filter(|r| r.from != r.to) {
            assert!((dist(&r.from, &r.to) - mu).abs() <= 1e-9 * mu);
        }
    }

    #[test]
    fn simplification_stays_mu_close() {
        let c = PiecewiseCurve::polyline(&[
            vec![0.0, 0.0],
            vec![0.3, 0.2],
            vec![0.5, 0.0],
            vec![0.6, 0.3],
            vec![1.2, 0.4],
            vec![1.3, 0.1],
            vec![2.0, 0.0],
        ])
        .unwrap();
        let mu = 0.45;
        let s = simplify(&c, mu).unwrap();
        let d = decide(&c, &s.curve, mu * (1.0 + 1e-6), NormConfig::default()).unwrap();
        assert!(d.reachable, "simplification drifted further than mu");
    }

    #[test]
    fn tangential_touch_does_not_exit() {
        // The middle piece is a quadratic loop from (0.1, 0) back to itself
        // that touches the sphere of radius 0.5 around the origin exactly at
        // (0.3, 0.4) without crossing it. The genuine exit is on the last
        // piece, at (0.5, 0).
        let short = PolynomialPiece::from_control_points(&[
            vec![0.0, 0.0],
            vec![0.1, 0.0],
        ])
        .unwrap();
        let loop_piece = PolynomialPiece::from_control_points(&[
            vec![0.1, 0.0],
            vec![0.5, 0.8],
            vec![0.1, 0.0],
        ])
        .unwrap();
        let tail = PolynomialPiece::from_control_points(&[
            vec![0.1, 0.0],
            vec![1.0, 0.0],
        ])
        .unwrap();
        let c = PiecewiseCurve::new_relaxed(vec![short, loop_piece, tail]).unwrap();
        let s = simplify(&c, 0.5).unwrap();
        assert_eq!(s.log.len(), 1);
        assert!((s.log[0].to[0] - 0.5).abs() < 1e-9, "exit {:?}", s.log[0].to);
        assert!(s.log[0].to[1].abs() < 1e-9);
    }

    #[test]
    fn segment_packedness_is_small() {
        let c = PiecewiseCurve::polyline(&[vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        let c_hat = packedness_estimate(&c, 200, 7);
        assert!(c_hat >= 1.0 - 1e-6 && c_hat <= 2.0 + 1e-6, "c_hat {}", c_hat);
    }

    #[test]
    fn folded_curve_packedness_grows() {
        // Fold back and forth over the same segment five times.
        let mut pts = vec![vec![0.0, 0.0]];
        for k in 0..5 {
            pts.push(vec![(k % 2) as f64, 1e-6 * (k + 1) as f64]);
        }
        let c = PiecewiseCurve::polyline(&pts).unwrap();
        let c_hat = packedness_estimate(&c, 400, 11);
        assert!(c_hat >= 4.0, "c_hat {}", c_hat);
    }

    #[test]
    fn length_in_ball_of_segment() {
        let c = PiecewiseCurve::polyline(&[vec![0.0, 0.0], vec![4.0, 0.0]]).unwrap();
        let l = length_in_ball(&c, &[2.0, 0.0], 1.0);
        assert!((l - 2.0).abs() < 0.05, "length {}", l);
    }

    #[test]
    fn rejects_bad_mu() {
        let c = PiecewiseCurve::polyline(&[vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        assert!(simplify(&c, 0.0).is_err());
        assert!(simplify(&c, f64::NAN).is_err());
    }
}
