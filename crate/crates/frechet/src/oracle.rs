//! Slow reference implementations used to cross-check the exact machinery:
//! dense curve sampling, discrete Fréchet distance, and a marching-squares
//! trace of the free-space boundary inside one cell.

use crate::bernstein::BPoly2;
use crate::curve::{dist, PiecewiseCurve};
use crate::error::Result;

/// Samples the curve at parameter steps of at most `h` (global parameter).
pub fn sample(curve: &PiecewiseCurve, h: f64) -> Result<Vec<Vec<f64>>> {
    let total = curve.num_pieces() as f64;
    let n = (total / h).ceil() as usize;
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let t = total * i as f64 / n as f64;
        out.push(curve.eval(t)?);
    }
    Ok(out)
}

/// Discrete Fréchet distance between two point sequences (dynamic program,
/// O(len_a * len_b) time, O(min) rows of memory). The DP runs on squared
/// distances — min/max commute with the square root.
pub fn discrete_frechet(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    assert!(!a.is_empty() && !b.is_empty());
    let dim = a[0].len();
    let flat = |pts: &[Vec<f64>]| -> Vec<f64> {
        let mut out = Vec::with_capacity(pts.len() * dim);
        for p in pts {
            out.extend_from_slice(p);
        }
        out
    };
    let (fa, fb) = (flat(a), flat(b));
    match dim {
        2 => discrete_frechet_flat::<2>(&fa, &fb),
        3 => discrete_frechet_flat::<3>(&fa, &fb),
        _ => discrete_frechet_flat_dyn(&fa, &fb, dim),
    }
}

fn discrete_frechet_flat<const D: usize>(a: &[f64], b: &[f64]) -> f64 {
    let (na, nb) = (a.len() / D, b.len() / D);
    let dsq = |pa: &[f64], pb: &[f64]| -> f64 {
        let mut d = 0.0;
        for k in 0..D {
            let e = pa[k] - pb[k];
            d += e * e;
        }
        d
    };
    let mut prev = vec![0.0f64; nb];
    let mut cur = vec![0.0f64; nb];
    // First row: running maximum.
    let mut acc = 0.0f64;
    for j in 0..nb {
        acc = acc.max(dsq(&a[..D], &b[j * D..j * D + D]));
        prev[j] = acc;
    }
    for i in 1..na {
        let pa = &a[i * D..i * D + D];
        cur[0] = prev[0].max(dsq(pa, &b[..D]));
        for j in 1..nb {
            let d = dsq(pa, &b[j * D..j * D + D]);
            let m = prev[j].min(prev[j - 1]).min(cur[j - 1]);
            cur[j] = if d > m { d } else { m };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[nb - 1].sqrt()
}

fn discrete_frechet_flat_dyn(a: &[f64], b: &[f64], dim: usize) -> f64 {
    let (na, nb) = (a.len() / dim, b.len() / dim);
    let mut prev = vec![0.0f64; nb];
    let mut cur = vec![0.0f64; nb];
    for i in 0..na {
        let pa = &a[i * dim..(i + 1) * dim];
        for j in 0..nb {
            let pb = &b[j * dim..(j + 1) * dim];
            let mut d = 0.0;
            for k in 0..dim {
                let e = pa[k] - pb[k];
                d += e * e;
            }
            cur[j] = if i == 0 && j == 0 {
                d
            } else if i == 0 {
                d.max(cur[j - 1])
            } else if j == 0 {
                d.max(prev[0])
            } else {
                d.max(prev[j].min(prev[j - 1]).min(cur[j - 1]))
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[nb - 1].sqrt()
}

/// Upper and lower bounds on the continuous Fréchet distance obtained from
/// sampling at step `h`: the discrete value over the samples, minus/plus the
/// largest distance a curve can move within one step.
pub fn sampled_frechet_bounds(
    c1: &PiecewiseCurve,
    c2: &PiecewiseCurve,
    h: f64,
) -> Result<(f64, f64)> {
    let a = sample(c1, h)?;
    let b = sample(c2, h)?;
    let df = discrete_frechet(&a, &b);
    let slack = max_step(&a) + max_step(&b);
    Ok(((df - slack).max(0.0), df + slack))
}

fn max_step(pts: &[Vec<f64>]) -> f64 {
    pts.windows(2)
        .map(|w| dist(&w[0], &w[1]))
        .fold(0.0, f64::max)
}

/// A point on the zero set of `f` on the unit square, found by marching
/// squares, with the grid edge it was found on.
#[derive(Debug, Clone, Copy)]
pub struct BoundarySample {
    pub u: f64,
    pub v: f64,
}

/// Marching-squares trace of { f = 0 } on [0,1]^2 at the given grid
/// resolution. Returns one point per sign-changing grid edge, refined by
/// bisection along the edge.
pub fn march_boundary(f: &BPoly2, resolution: usize) -> Vec<BoundarySample> {
    let n = resolution;
    let mut vals = vec![0.0f64; (n + 1) * (n + 1)];
    for i in 0..=n {
        let u = i as f64 / n as f64;
        let section = f.section_u(u);
        for j in 0..=n {
            vals[i * (n + 1) + j] = section.eval(j as f64 / n as f64);
        }
    }
    let mut out = Vec::new();
    let refine = |a: (f64, f64), b: (f64, f64)| -> (f64, f64) {
        let (mut pa, mut pb) = (a, b);
        let mut fa = f.eval(pa.0, pa.1);
        for _ in 0..50 {
            let m = (0.5 * (pa.0 + pb.0), 0.5 * (pa.1 + pb.1));
            let fm = f.eval(m.0, m.1);
            if (fa < 0.0) == (fm < 0.0) {
                pa = m;
                fa = fm;
            } else {
                pb = m;
            }
        }
        (0.5 * (pa.0 + pb.0), 0.5 * (pa.1 + pb.1))
    };
    for i in 0..=n {
        for j in 0..=n {
            let u = i as f64 / n as f64;
            let v = j as f64 / n as f64;
            let fv = vals[i * (n + 1) + j];
            // horizontal edge to the right
            if i < n {
                let fr = vals[(i + 1) * (n + 1) + j];
                if fv * fr < 0.0 {
                    let (pu, pv) = refine((u, v), ((i + 1) as f64 / n as f64, v));
                    out.push(BoundarySample { u: pu, v: pv });
                }
            }
            // vertical edge upward
            if j < n {
                let fu2 = vals[i * (n + 1) + j + 1];
                if fv * fu2 < 0.0 {
                    let (pu, pv) = refine((u, v), (u, (j + 1) as f64 / n as f64));
                    out.push(BoundarySample { u: pu, v: pv });
                }
            }
        }
    }
    out
}

/// Combinatorial reconstruction of the boundary inside one cell, read off a
/// marching-squares trace: marked points (wall crossings, extrema, and
/// crossings with the cut lines through the extrema) and the monotone arcs
/// connecting them along the traced contours. Fully independent of the exact
/// machinery except for polynomial evaluation.
#[derive(Debug, Clone, Default)]
pub struct OracleGraph {
    pub nodes: Vec<(f64, f64)>,
    /// Node-index pairs of consecutive marked points along a contour.
    pub arcs: Vec<(usize, usize)>,
}

/// Grid edge identifier: (i, j, horizontal).
type EdgeId = (usize, usize, bool);

fn trace_contours(f: &BPoly2, n: usize) -> Vec<(Vec<(f64, f64)>, bool)> {
    let mut vals = vec![0.0f64; (n + 1) * (n + 1)];
    for i in 0..=n {
        let section = f.section_u(i as f64 / n as f64);
        for j in 0..=n {
            vals[i * (n + 1) + j] = section.eval(j as f64 / n as f64);
        }
    }
    // Exact zeros at grid vertices are counted as positive so every sample
    // has a definite side.
    let pos = |i: usize, j: usize| vals[i * (n + 1) + j] > 0.0 || vals[i * (n + 1) + j] == 0.0;
    let h = 1.0 / n as f64;
    let refine = |a: (f64, f64), b: (f64, f64)| -> (f64, f64) {
        let (mut pa, mut pb) = (a, b);
        let mut fa = f.eval(pa.0, pa.1);
        for _ in 0..50 {
            let mid = (0.5 * (pa.0 + pb.0), 0.5 * (pa.1 + pb.1));
            let fm = f.eval(mid.0, mid.1);
            if (fa <= 0.0) == (fm <= 0.0) {
                pa = mid;
                fa = fm;
            } else {
                pb = mid;
            }
        }
        (0.5 * (pa.0 + pb.0), 0.5 * (pa.1 + pb.1))
    };

    // Crossing points per sign-changing grid edge.
    let mut points: std::collections::HashMap<EdgeId, (f64, f64)> =
        std::collections::HashMap::new();
    for i in 0..=n {
        for j in 0..=n {
            if i < n && pos(i, j) != pos(i + 1, j) {
                let p = refine(
                    (i as f64 * h, j as f64 * h),
                    ((i + 1) as f64 * h, j as f64 * h),
                );
                points.insert((i, j, true), p);
            }
            if j < n && pos(i, j) != pos(i, j + 1) {
                let p = refine(
                    (i as f64 * h, j as f64 * h),
                    (i as f64 * h, (j + 1) as f64 * h),
                );
                points.insert((i, j, false), p);
            }
        }
    }

    // Per-cell segments between crossing edges; saddles are disambiguated by
    // the sign of f at the cell center.
    let mut adj: std::collections::HashMap<EdgeId, Vec<EdgeId>> =
        std::collections::HashMap::new();
    for i in 0..n {
        for j in 0..n {
            let bottom = (i, j, true);
            let top = (i, j + 1, true);
            let left = (i, j, false);
            let right = (i + 1, j, false);
            let crossed: Vec<EdgeId> = [bottom, right, top, left]
                .into_iter()
                .filter(|e| points.contains_key(e))
                .collect();
            let pairs: Vec<(EdgeId, EdgeId)> = match crossed.len() {
                2 => vec![(crossed[0], crossed[1])],
                4 => {
                    let center =
                        f.eval((i as f64 + 0.5) * h, (j as f64 + 0.5) * h) > 0.0;
                    if pos(i, j) == center {
                        vec![(left, top), (bottom, right)]
                    } else {
                        vec![(left, bottom), (top, right)]
                    }
                }
                _ => Vec::new(),
            };
            for (a, b) in pairs {
                adj.entry(a).or_default().push(b);
                adj.entry(b).or_default().push(a);
            }
        }
    }

    // Chain segments into contours: open paths first (starting from
    // degree-1 edges on the domain boundary), then the remaining cycles.
    let mut visited: std::collections::HashSet<EdgeId> = std::collections::HashSet::new();
    let mut contours = Vec::new();
    let walk = |start: EdgeId,
                    visited: &mut std::collections::HashSet<EdgeId>|
     -> Vec<EdgeId> {
        let mut path = vec![start];
        visited.insert(start);
        let mut cur = start;
        loop {
            let next = adj[&cur]
                .iter()
                .find(|e| !visited.contains(*e))
                .copied();
            match next {
                Some(e) => {
                    visited.insert(e);
                    path.push(e);
                    cur = e;
                }
                None => break,
            }
        }
        path
    };
    let mut starts: Vec<EdgeId> = adj
        .iter()
        .filter(|(_, v)| v.len() == 1)
        .map(|(k, _)| *k)
        .collect();
    starts.sort_unstable();
    for s in starts {
        if !visited.contains(&s) {
            let path = walk(s, &mut visited);
            contours.push((path.iter().map(|e| points[e]).collect(), false));
        }
    }
    let mut rest: Vec<EdgeId> = adj.keys().filter(|e| !visited.contains(*e)).copied().collect();
    rest.sort_unstable();
    for s in rest {
        if !visited.contains(&s) {
            let path = walk(s, &mut visited);
            contours.push((path.iter().map(|e| points[e]).collect(), true));
        }
    }
    contours
}

/// Position of a direction reversal refined by a parabola through the three
/// trace points around it; `flip_v` means the v-direction flipped (the arc
/// has a horizontal tangent there).
fn refine_extremum(pts: &[(f64, f64)], k: usize, flip_v: bool) -> (f64, f64) {
    let get = |i: usize| pts[i.min(pts.len() - 1)];
    let (p0, p1, p2) = (get(k.saturating_sub(1)), get(k), get(k + 1));
    // Fit dependent = a t^2 + b t + c over the independent coordinate.
    let (x0, y0, x1, y1, x2, y2) = if flip_v {
        (p0.0, p0.1, p1.0, p1.1, p2.0, p2.1)
    } else {
        (p0.1, p0.0, p1.1, p1.0, p2.1, p2.0)
    };
    let d01 = x1 - x0;
    let d12 = x2 - x1;
    let d02 = x2 - x0;
    if d01.abs() < 1e-15 || d12.abs() < 1e-15 || d02.abs() < 1e-15 {
        return p1;
    }
    let s01 = (y1 - y0) / d01;
    let s12 = (y2 - y1) / d12;
    let a = (s12 - s01) / d02;
    if a.abs() < 1e-12 {
        return p1;
    }
    // Vertex of the parabola.
    let xv = 0.5 * (x0 + x1) - 0.5 * s01 / a + 0.0; // from y' = 0
    let yv = y1 + s01 * (xv - x1) + a * (xv - x0) * (xv - x1);
    if flip_v {
        (xv, yv)
    } else {
        (yv, xv)
    }
}

/// Builds the oracle graph of { f = 0 } on [0,1]^2 at the given resolution.
pub fn march_cell_graph(f: &BPoly2, resolution: usize) -> Result<OracleGraph> {
    assert!(resolution >= 64);
    let contours = trace_contours(f, resolution);
    let tol = 2.0 / resolution as f64;

    // Pass 1: direction reversals along each contour give the extrema and
    // thereby the cut lines of the decomposition.
    // (contour idx, vertex idx, position, flip_v)
    let mut extrema: Vec<(usize, usize, (f64, f64), bool)> = Vec::new();
    for (ci, (pts, closed)) in contours.iter().enumerate() {
        let m = pts.len();
        if m < 3 {
            continue;
        }
        let seg_count = if *closed { m } else { m - 1 };
        let delta = |k: usize| {
            let a = pts[k % m];
            let b = pts[(k + 1) % m];
            (b.0 - a.0, b.1 - a.1)
        };
        let mut last_du = 0.0f64;
        let mut last_dv = 0.0f64;
        // For closed contours the scan wraps around to catch a reversal at
        // the seam.
        let scan = if *closed { seg_count + 1 } else { seg_count };
        for k in 0..scan {
            let (du, dv) = delta(k % seg_count);
            if du * last_du < 0.0 {
                extrema.push((ci, k % m, refine_extremum(pts, k % m, false), false));
            }
            if dv * last_dv < 0.0 {
                extrema.push((ci, k % m, refine_extremum(pts, k % m, true), true));
            }
            if du != 0.0 {
                last_du = du;
            }
            if dv != 0.0 {
                last_dv = dv;
            }
        }
    }
    // Horizontal-tangent points cut vertically at their u; vertical-tangent
    // points cut horizontally at their v.
    let v_cuts: Vec<f64> = extrema
        .iter()
        .filter(|e| e.3)
        .map(|e| e.2 .0)
        .collect();
    let h_cuts: Vec<f64> = extrema
        .iter()
        .filter(|e| !e.3)
        .map(|e| e.2 .1)
        .collect();

    // Pass 2: marked points along each contour: endpoints (wall crossings),
    // extrema, and crossings with the cut lines; arcs connect consecutive
    // marked points.
    let mut g = OracleGraph::default();
    let add_node = |nodes: &mut Vec<(f64, f64)>, p: (f64, f64)| -> usize {
        for (i, q) in nodes.iter().enumerate() {
            if (q.0 - p.0).abs() <= tol && (q.1 - p.1).abs() <= tol {
                return i;
            }
        }
        nodes.push(p);
        nodes.len() - 1
    };
    for (ci, (pts, closed)) in contours.iter().enumerate() {
        let m = pts.len();
        if m < 2 {
            continue;
        }
        // Marked positions as (fractional index along the contour, point).
        let mut marks: Vec<(f64, (f64, f64))> = Vec::new();
        if !*closed {
            marks.push((0.0, pts[0]));
            marks.push(((m - 1) as f64, pts[m - 1]));
        }
        for e in extrema.iter().filter(|e| e.0 == ci) {
            marks.push((e.1 as f64, e.2));
        }
        let seg_count = if *closed { m } else { m - 1 };
        for k in 0..seg_count {
            let a = pts[k];
            let b = pts[(k + 1) % m];
            for &cu in &v_cuts {
                if (a.0 - cu) * (b.0 - cu) < 0.0 {
                    let t = (cu - a.0) / (b.0 - a.0);
                    marks.push((k as f64 + t, (cu, a.1 + t * (b.1 - a.1))));
                }
            }
            for &cv in &h_cuts {
                if (a.1 - cv) * (b.1 - cv) < 0.0 {
                    let t = (cv - a.1) / (b.1 - a.1);
                    marks.push((k as f64 + t, (a.0 + t * (b.0 - a.0), cv)));
                }
            }
        }
        marks.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        // Merge marks that are the same point (an extremum sits on its own
        // cut line).
        let mut merged: Vec<(f64, (f64, f64))> = Vec::new();
        for mk in marks {
            if let Some(last) = merged.last() {
                if (last.1 .0 - mk.1 .0).abs() <= tol && (last.1 .1 - mk.1 .1).abs() <= tol {
                    continue;
                }
            }
            merged.push(mk);
        }
        if *closed && merged.len() >= 2 {
            let first = merged[0];
            let last = merged[merged.len() - 1];
            if (first.1 .0 - last.1 .0).abs() <= tol && (first.1 .1 - last.1 .1).abs() <= tol {
                merged.pop();
            }
        }
        let ids: Vec<usize> = merged
            .iter()
            .map(|mk| add_node(&mut g.nodes, mk.1))
            .collect();
        for w in ids.windows(2) {
            g.arcs.push((w[0].min(w[1]), w[0].max(w[1])));
        }
        if *closed && ids.len() >= 2 {
            let (a, b) = (ids[ids.len() - 1], ids[0]);
            g.arcs.push((a.min(b), a.max(b)));
        }
    }
    Ok(g)
}

/// Compares an exact boundary graph against the marching oracle: every node
/// must have a unique counterpart within `tol` (in global coordinates) and
/// the arc multisets must agree. Returns a description of the first
/// discrepancy.
pub fn graphs_match(
    g: &crate::freespace::BoundaryGraph,
    o: &OracleGraph,
    tol: f64,
) -> std::result::Result<(), String> {
    if g.nodes.len() != o.nodes.len() {
        return Err(format!(
            "node count: exact {} vs oracle {}",
            g.nodes.len(),
            o.nodes.len()
        ));
    }
    let mut taken = vec![false; o.nodes.len()];
    let mut map = vec![usize::MAX; g.nodes.len()];
    for (i, n) in g.nodes.iter().enumerate() {
        let p = (n.cell.0 as f64 + n.u, n.cell.1 as f64 + n.v);
        let mut best: Option<(usize, f64)> = None;
        for (j, q) in o.nodes.iter().enumerate() {
            if taken[j] {
                continue;
            }
            let d = (p.0 - q.0).abs().max((p.1 - q.1).abs());
            if d <= tol && best.map_or(true, |(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        match best {
            Some((j, _)) => {
                taken[j] = true;
                map[i] = j;
            }
            None => {
                return Err(format!(
                    "exact node ({:.6}, {:.6}) has no oracle counterpart",
                    p.0, p.1
                ))
            }
        }
    }
    let mut ga: Vec<(usize, usize)> = g
        .arcs
        .iter()
        .map(|a| {
            let (x, y) = (map[a.a], map[a.b]);
            (x.min(y), x.max(y))
        })
        .collect();
    let mut oa = o.arcs.clone();
    ga.sort_unstable();
    oa.sort_unstable();
    if ga != oa {
        return Err(format!(
            "arc sets differ: exact {:?} vs oracle {:?}",
            ga, oa
        ));
    }
    Ok(())
}
