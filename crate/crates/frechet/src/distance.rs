//! Computing the Fréchet distance itself.
//!
//! The distance is the smallest delta for which the decision procedure
//! answers yes. We enumerate a candidate set of critical delta values
//! (endpoint distances, singular values of the squared-distance surface,
//! and wall tangencies), binary-search it with the decision procedure, and
//! fall back to plain bisection inside the bracketing interval. Candidate
//! probes are offset multiplicatively by 1e-9 because the decision procedure
//! cannot run exactly at a critical value.

use crate::curve::{dist, NormConfig, PiecewiseCurve};
use crate::decision::decide;
use crate::error::{Error, Result};
use crate::oracle::sampled_frechet_bounds;
use crate::polysolve::{cross_dist_sq, dist_sq_poly, isolate_roots, solve_system};

/// Relative offset applied when probing the decision at a candidate value.
pub const PROBE_ETA: f64 = 1e-9;
/// Maximum bisection iterations once the answer is bracketed.
pub const BISECT_BUDGET: u32 = 60;
/// Singular-value enumeration is skipped above this many cell pairs; the
/// bisection phase still converges without those candidates.
const SINGULAR_CELL_CAP: usize = 400;

/// Where a candidate critical value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateKind {
    /// Distance between corresponding curve endpoints.
    Endpoint,
    /// Square root of the surface value at a singular point (both partial
    /// derivatives of the squared distance vanish).
    Singularity,
    /// Stationary value of the distance from a piece joint to a piece of the
    /// other curve: the boundary becomes tangent to a cell wall.
    WallTangency,
}

#[derive(Debug, Clone, Copy)]
pub struct Candidate {
    pub delta: f64,
    pub kind: CandidateKind,
}

/// Result of a distance computation: the returned `value` together with the
/// final bracket `[lo, hi]` certified by the decision procedure.
#[derive(Debug, Clone)]
pub struct ComputeResult {
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
    /// True when the value was pinned to an enumerated candidate.
    pub exact_candidate: bool,
    /// Number of decision calls spent.
    pub decides: u32,
}

fn curve_scale(c1: &PiecewiseCurve, c2: &PiecewiseCurve) -> f64 {
    let mut lo = vec![f64::INFINITY; c1.dim];
    let mut hi = vec![f64::NEG_INFINITY; c1.dim];
    for c in [c1, c2] {
        for p in &c.pieces {
            let (bl, bh) = p.bbox();
            for k in 0..c1.dim {
                lo[k] = lo[k].min(bl[k]);
                hi[k] = hi[k].max(bh[k]);
            }
        }
    }
    let diag: f64 = lo
        .iter()
        .zip(&hi)
        .map(|(a, b)| (b - a) * (b - a))
        .sum::<f64>()
        .sqrt();
    diag.max(1e-300)
}

/// Enumerates candidate critical values of delta, sorted ascending and
/// deduplicated at relative 1e-12.
pub fn critical_candidates(
    c1: &PiecewiseCurve,
    c2: &PiecewiseCurve,
) -> Result<Vec<Candidate>> {
    let mut out: Vec<Candidate> = Vec::new();
    out.push(Candidate {
        delta: dist(&c1.start(), &c2.start()),
        kind: CandidateKind::Endpoint,
    });
    out.push(Candidate {
        delta: dist(&c1.end(), &c2.end()),
        kind: CandidateKind::Endpoint,
    });

    // Wall tangencies: distance extrema from each joint of one curve to each
    // piece of the other, including the piece endpoints (corner events).
    let mut joints1: Vec<Vec<f64>> = vec![c1.start()];
    for p in &c1.pieces {
        joints1.push(p.eval(1.0));
    }
    let mut joints2: Vec<Vec<f64>> = vec![c2.start()];
    for p in &c2.pieces {
        joints2.push(p.eval(1.0));
    }
    let wall = |point: &[f64], curve: &PiecewiseCurve, out: &mut Vec<Candidate>| {
        for p in &curve.pieces {
            let g = dist_sq_poly(p, point);
            let mut vals = vec![g.eval(0.0), g.eval(1.0)];
            if let Ok(roots) = isolate_roots(&g.derivative()) {
                for r in roots {
                    vals.push(g.eval(r.t));
                }
            }
            for v in vals {
                if v >= 0.0 {
                    out.push(Candidate {
                        delta: v.sqrt(),
                        kind: CandidateKind::WallTangency,
                    });
                }
            }
        }
    };
    for j in &joints1 {
        wall(j, c2, &mut out);
    }
    for j in &joints2 {
        wall(j, c1, &mut out);
    }

    // Singular values of the squared-distance surface per cell pair.
    if c1.num_pieces() * c2.num_pieces() <= SINGULAR_CELL_CAP {
        for p1 in &c1.pieces {
            for p2 in &c2.pieces {
                let f = cross_dist_sq(p1, p2);
                let fu = f.du();
                let fv = f.dv();
                if fu.coeff_range() == (0.0, 0.0) || fv.coeff_range() == (0.0, 0.0) {
                    continue;
                }
                if let Ok(sols) = solve_system(&fu, &fv) {
                    for s in sols {
                        let val = f.eval(s.u, s.v);
                        if val >= 0.0 {
                            out.push(Candidate {
                                delta: val.sqrt(),
                                kind: CandidateKind::Singularity,
                            });
                        }
                    }
                }
            }
        }
    }

    out.sort_by(|a, b| a.delta.partial_cmp(&b.delta).unwrap());
    let mut dedup: Vec<Candidate> = Vec::with_capacity(out.len());
    for c in out {
        if let Some(last) = dedup.last() {
            if c.delta - last.delta <= 1e-12 * c.delta.max(1.0e-300) {
                continue;
            }
        }
        dedup.push(c);
    }
    Ok(dedup)
}

/// Probes the decision at `delta`. A persistently near-critical delta is
/// retried at two nearby values before the failure is propagated.
fn probe(
    c1: &PiecewiseCurve,
    c2: &PiecewiseCurve,
    delta: f64,
    norm: NormConfig,
    decides: &mut u32,
) -> Result<bool> {
    let mut last = Error::NearCritical { delta, retries: 0 };
    for jitter in [1.0, 1.0 + 2e-6, 1.0 - 2e-6] {
        *decides += 1;
        match decide(c1, c2, delta * jitter, norm) {
            Ok(d) => return Ok(d.reachable),
            Err(e @ Error::NearCritical { .. }) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

/// Computes the Fréchet distance to relative tolerance `tol` (clamped to
/// 1e-12 from below).
pub fn compute(
    c1: &PiecewiseCurve,
    c2: &PiecewiseCurve,
    tol: f64,
    norm: NormConfig,
) -> Result<ComputeResult> {
    norm.validate()?;
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::ParamOutOfRange(tol));
    }
    let tol = tol.max(1e-12);
    let scale = curve_scale(c1, c2);
    let mut decides = 0u32;

    if c1.same_geometry(c2) {
        return Ok(ComputeResult {
            value: 0.0,
            lo: 0.0,
            hi: 0.0,
            exact_candidate: true,
            decides,
        });
    }

    // The distance is at least the larger endpoint distance.
    let lb = dist(&c1.start(), &c2.start()).max(dist(&c1.end(), &c2.end()));

    // Deltas at the degenerate floor cannot be decided: curves sharing a
    // subpath make the free space positive-dimensional as delta goes to 0.
    let floor = 1e-12 * scale;
    let cands = critical_candidates(c1, c2)?;
    let above: Vec<&Candidate> = cands
        .iter()
        .filter(|c| c.delta >= lb * (1.0 - 1e-12) && c.delta > floor)
        .collect();

    // Binary search the candidate list for the first yes.
    let mut first_yes: Option<usize> = None;
    let mut lo_idx: Option<usize> = None;
    let mut a = 0usize;
    let mut b = above.len();
    while a < b {
        let mid = (a + b) / 2;
        let d = above[mid].delta;
        if probe(c1, c2, d * (1.0 + PROBE_ETA), norm, &mut decides)? {
            first_yes = Some(mid);
            b = mid;
        } else {
            lo_idx = Some(lo_idx.map_or(mid, |i: usize| i.max(mid)));
            a = mid + 1;
        }
    }

    let (mut lo, mut hi) = match first_yes {
        Some(k) => {
            let v = above[k].delta;
            // If the decision flips across the candidate, it is the answer.
            // A probe failure here just forfeits the shortcut.
            let below = if v == 0.0 {
                Some(false)
            } else {
                probe(c1, c2, v * (1.0 - PROBE_ETA), norm, &mut decides).ok()
            };
            if below == Some(false) {
                return Ok(ComputeResult {
                    value: v,
                    lo: v * (1.0 - PROBE_ETA),
                    hi: v * (1.0 + PROBE_ETA),
                    exact_candidate: true,
                    decides,
                });
            }
            let lo = lo_idx
                .map(|i| above[i].delta * (1.0 + PROBE_ETA))
                .unwrap_or(lb * (1.0 - PROBE_ETA))
                .max(0.0);
            (lo, v * (1.0 - PROBE_ETA))
        }
        None => {
            // All candidates answered no: bracket from above by sampling.
            let mut hi = above.last().map(|c| c.delta).unwrap_or(lb).max(lb);
            if hi <= 0.0 {
                hi = tol * scale;
            }
            let (_, ub) = sampled_frechet_bounds(c1, c2, (scale / 64.0).max(1e-6))?;
            hi = hi.max(ub * (1.0 + 1e-9));
            let mut guard = 0;
            while !probe(c1, c2, hi, norm, &mut decides)? {
                hi *= 2.0;
                guard += 1;
                if guard > 60 {
                    return Err(Error::InconsistentConfiguration(
                        "no reachable delta found while doubling the upper bound".into(),
                    ));
                }
            }
            let lo = above.last().map(|c| c.delta).unwrap_or(lb).max(0.0);
            (lo, hi)
        }
    };

    // Plain bisection down to the tolerance. If the midpoint turns out to
    // be un-decidably critical, alternate interior points are tried before
    // the bracket is accepted as-is.
    for _ in 0..BISECT_BUDGET {
        if hi - lo <= tol * hi || hi <= floor {
            break;
        }
        let mut moved = false;
        for frac in [0.5, 0.42, 0.58, 0.33, 0.67] {
            let mid = lo + frac * (hi - lo);
            if mid <= lo || mid >= hi {
                continue;
            }
            match probe(c1, c2, mid, norm, &mut decides) {
                Ok(true) => {
                    hi = mid;
                    moved = true;
                }
                Ok(false) => {
                    lo = mid;
                    moved = true;
                }
                Err(Error::NearCritical { .. }) => continue,
                Err(e) => return Err(e),
            }
            break;
        }
        if !moved {
            break;
        }
    }
    Ok(ComputeResult {
        value: hi,
        lo,
        hi,
        exact_candidate: false,
        decides,
    })
}
