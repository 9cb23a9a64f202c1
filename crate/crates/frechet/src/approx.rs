//! Approximate decision and distance computation for c-packed curves.
//!
//! Both curves are replaced by their mu-simplifications with mu = eps*delta/4
//! before running the exact decision. Since each simplification stays within
//! mu of its curve, a yes answer certifies d_F <= delta + 2 mu <= delta
//! (1 + eps) and a no answer certifies d_F >= delta - 2 mu >= delta (1 - eps).
//! For c-packed inputs the simplified diagram has O(c n / eps) non-empty
//! cells, which makes each probe run in linear time.

use crate::curve::{dist, NormConfig, PiecewiseCurve};
use crate::decision::decide;
use crate::error::{Error, Result};
use crate::simplify::simplify;

/// Result variant of an approximate query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ApproxVariant {
    /// v with d_F <= v <= (1 + eps) d_F.
    ValueApprox(f64),
    /// The distance is certified to be below this threshold.
    Below(f64),
    /// The distance is certified to be above this threshold.
    Above(f64),
}

#[derive(Debug, Clone, Copy)]
pub struct ApproxOutcome {
    pub variant: ApproxVariant,
    /// Number of free-space cells actually processed (not skipped) by the
    /// underlying decision runs; the empirical cell complexity.
    pub cells_touched: usize,
}

fn decide_simplified(
    c1: &PiecewiseCurve,
    c2: &PiecewiseCurve,
    delta: f64,
    eps: f64,
    norm: NormConfig,
) -> Result<(bool, usize)> {
    // A persistently near-critical delta is jittered by far less than the
    // eps slack before giving up, so the reported comparisons stay valid.
    let mut last = Error::NearCritical { delta, retries: 0 };
    for jitter in [1.0, 1.0 + 1e-5, 1.0 - 1e-5] {
        let d = delta * jitter;
        let mu = eps * d / 4.0;
        let s1 = simplify(c1, mu)?;
        let s2 = simplify(c2, mu)?;
        match decide(&s1.curve, &s2.curve, d, norm) {
            Ok(d) => return Ok((d.reachable, d.cells - d.cells_skipped)),
            Err(e @ Error::NearCritical { .. }) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

/// Approximate decision: compares d_F(c1, c2) against delta with a (1 +/- eps)
/// band of uncertainty. Any strict comparison in the returned outcome is
/// correct for the original (unsimplified) curves.
pub fn approx_decide(
    c1: &PiecewiseCurve,
    c2: &PiecewiseCurve,
    delta: f64,
    eps: f64,
    norm: NormConfig,
) -> Result<ApproxOutcome> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::ParamOutOfRange(delta));
    }
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::ParamOutOfRange(eps));
    }
    let (yes, cells) = decide_simplified(c1, c2, delta, eps, norm)?;
    let variant = if yes {
        ApproxVariant::Below(delta * (1.0 + eps))
    } else {
        ApproxVariant::Above(delta * (1.0 - eps))
    };
    Ok(ApproxOutcome {
        variant,
        cells_touched: cells,
    })
}

fn overall_scale(c1: &PiecewiseCurve, c2: &PiecewiseCurve) -> f64 {
    let mut s = 0.0f64;
    for c in [c1, c2] {
        for p in &c.pieces {
            let (lo, hi) = p.bbox();
            for k in 0..c.dim {
                s = s.max(lo[k].abs()).max(hi[k].abs());
            }
        }
    }
    s.max(1e-300)
}

/// (1+eps)-approximation of the Fréchet distance: doubling search for an
/// upper bound, then binary search, with every probe answered by
/// `approx_decide` at accuracy eps/4.
pub fn approx_compute(
    c1: &PiecewiseCurve,
    c2: &PiecewiseCurve,
    eps: f64,
    norm: NormConfig,
) -> Result<ApproxOutcome> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::ParamOutOfRange(eps));
    }
    let eps_in = eps / 4.0;
    let scale = overall_scale(c1, c2);
    let lb = dist(&c1.start(), &c2.start()).max(dist(&c1.end(), &c2.end()));
    let floor = 1e-12 * scale;
    // The decision cannot run near delta 0 on coinciding curves (the free
    // space degenerates to the diagonal), but that case is exactly zero.
    if c1.same_geometry(c2) {
        return Ok(ApproxOutcome {
            variant: ApproxVariant::ValueApprox(0.0),
            cells_touched: 0,
        });
    }
    let seed = lb.max(floor);
    let mut cells_max = 0usize;
    let probe = |delta: f64, cells_max: &mut usize| -> Result<bool> {
        let (yes, cells) = decide_simplified(c1, c2, delta, eps_in, norm)?;
        *cells_max = (*cells_max).max(cells);
        Ok(yes)
    };

    if probe(seed, &mut cells_max)? {
        let value = if lb <= floor {
            // Both endpoint gaps and the probe at the degenerate floor say
            // the curves are indistinguishable at this scale.
            0.0
        } else {
            seed * (1.0 + eps_in / 2.0)
        };
        return Ok(ApproxOutcome {
            variant: ApproxVariant::ValueApprox(value),
            cells_touched: cells_max,
        });
    }

    // Doubling phase: find a yes.
    let mut lo = seed;
    let mut hi = seed * 2.0;
    let mut guard = 0;
    while !probe(hi, &mut cells_max)? {
        lo = hi;
        hi *= 2.0;
        guard += 1;
        if guard > 200 {
            return Err(Error::InconsistentConfiguration(
                "no reachable delta found while doubling the upper bound".into(),
            ));
        }
    }

    // Binary search: lo answered no, hi answered yes.
    while hi > lo * (1.0 + eps / 4.0) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if probe(mid, &mut cells_max)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(ApproxOutcome {
        variant: ApproxVariant::ValueApprox(hi * (1.0 + eps_in / 2.0)),
        cells_touched: cells_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::compute;

    fn seg(a: [f64; 2], b: [f64; 2]) -> PiecewiseCurve {
        PiecewiseCurve::polyline(&[a.to_vec(), b.to_vec()]).unwrap()
    }

    #[test]
    fn identical_curves_are_below() {
        let c = PiecewiseCurve::polyline(&[vec![0.0, 0.0], vec![1.0, 0.3], vec![2.0, 0.0]])
            .unwrap();
        let o = approx_decide(&c, &c, 1.0, 0.5, NormConfig::default()).unwrap();
        assert!(matches!(o.variant, ApproxVariant::Below(v) if (v - 1.5).abs() < 1e-12));
    }

    #[test]
    fn constant_gap_is_above() {
        let c1 = seg([0.0, 0.0], [1.0, 0.0]);
        let c2 = seg([0.0, 1.0], [1.0, 1.0]);
        let o = approx_decide(&c1, &c2, 0.5, 0.1, NormConfig::default()).unwrap();
        assert!(matches!(o.variant, ApproxVariant::Above(v) if (v - 0.45).abs() < 1e-12));
    }

    #[test]
    fn approx_compute_constant_gap() {
        let c1 = seg([0.0, 0.0], [1.0, 0.0]);
        let c2 = seg([0.0, 1.0], [1.0, 1.0]);
        let o = approx_compute(&c1, &c2, 0.1, NormConfig::default()).unwrap();
        let ApproxVariant::ValueApprox(v) = o.variant else {
            panic!("expected a value");
        };
        assert!((1.0..=1.1).contains(&v), "value {}", v);
    }

    #[test]
    fn approx_compute_identical_is_zero() {
        let c = PiecewiseCurve::polyline(&[vec![0.0, 0.0], vec![1.0, 0.4], vec![2.0, 0.1]])
            .unwrap();
        let o = approx_compute(&c, &c, 0.5, NormConfig::default()).unwrap();
        assert!(matches!(o.variant, ApproxVariant::ValueApprox(v) if v == 0.0));
    }

    #[test]
    fn sandwich_against_exact_compute() {
        let c1 = PiecewiseCurve::polyline(&[
            vec![0.0, 0.0],
            vec![0.5, 0.6],
            vec![1.0, 0.1],
            vec![1.6, 0.7],
        ])
        .unwrap();
        let c2 = PiecewiseCurve::polyline(&[
            vec![0.0, 0.2],
            vec![0.6, -0.3],
            vec![1.1, 0.5],
            vec![1.7, 0.2],
        ])
        .unwrap();
        let exact = compute(&c1, &c2, 1e-9, NormConfig::default()).unwrap().value;
        for eps in [0.5, 0.2, 0.05] {
            let o = approx_compute(&c1, &c2, eps, NormConfig::default()).unwrap();
            let ApproxVariant::ValueApprox(v) = o.variant else {
                panic!("expected a value");
            };
            assert!(
                v >= exact * (1.0 - 1e-6) && v <= exact * (1.0 + eps) * (1.0 + 1e-6),
                "eps {} value {} exact {}",
                eps,
                v,
                exact
            );
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let c = seg([0.0, 0.0], [1.0, 0.0]);
        assert!(approx_decide(&c, &c, 0.0, 0.5, NormConfig::default()).is_err());
        assert!(approx_decide(&c, &c, 1.0, 0.0, NormConfig::default()).is_err());
        assert!(approx_decide(&c, &c, 1.0, 1.5, NormConfig::default()).is_err());
        assert!(approx_compute(&c, &c, 2.0, NormConfig::default()).is_err());
    }
}
