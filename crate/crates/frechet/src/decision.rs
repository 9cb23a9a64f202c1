//! The decision procedure: is the Fréchet distance at most delta?
//!
//! A monotone path must cross the free-space diagram from (0,0) to (1,1) of
//! the last cell. Reachability is propagated cell by cell in lexicographic
//! order; within a cell, subcell by subcell along the cut grid. Each subcell
//! carries at most one reachable interval per free face on its top and right
//! edges, so the sweep stays linear in the number of subcells.

use crate::curve::{PiecewiseCurve, PolynomialPiece, NormConfig};
use crate::error::{Error, Result};
use crate::freespace::{
    bbox_min_dist, mark_cell, match_subcell, subcell_points, CaseCounts, CellGrid, EdgeKind,
    MatchPair, SubcellPoints, POINT_MERGE_TOL,
};
use crate::polysolve::{dist_sq_poly, isolate_roots, max_dist_to_point};

/// Interval-comparison tolerance; ties resolve toward reachable.
pub const REACH_TOL: f64 = 1e-12;

type Iv = (f64, f64);

fn touches(ivs: &[Iv], x: f64) -> bool {
    ivs.iter().any(|&(a, b)| a - REACH_TOL <= x && x <= b + REACH_TOL)
}

fn clip(ivs: &[Iv], a: f64, b: f64) -> Vec<Iv> {
    ivs.iter()
        .filter_map(|&(lo, hi)| {
            let l = lo.max(a);
            let h = hi.min(b);
            if l <= h + REACH_TOL {
                Some((l, h.max(l)))
            } else {
                None
            }
        })
        .collect()
}

fn merge(mut ivs: Vec<Iv>) -> Vec<Iv> {
    ivs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let mut out: Vec<Iv> = Vec::with_capacity(ivs.len());
    for iv in ivs {
        if let Some(last) = out.last_mut() {
            if iv.0 <= last.1 + REACH_TOL {
                last.1 = last.1.max(iv.1);
                continue;
            }
        }
        out.push(iv);
    }
    out
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

/// Reachability leaving a subcell.
#[derive(Debug, Clone, Default)]
pub struct SubcellOutput {
    pub top: Vec<Iv>,
    pub right: Vec<Iv>,
    /// The top-right grid vertex is reachable (for diagonal continuation).
    pub tr_reach: bool,
}

#[derive(Clone, Copy, PartialEq)]
enum Edge {
    B,
    L,
    T,
    R,
}

/// Propagates reachable intervals through one subcell.
///
/// The free faces of the subcell are reconstructed from the matched arcs and
/// the free/forbidden status of the boundary segments between marked points.
/// Within a face, a monotone path exists from a to b whenever b dominates a,
/// so each face maps its entering intervals to at most one exit interval per
/// outgoing edge.
pub fn propagate_subcell(
    grid: &CellGrid,
    ix: usize,
    iy: usize,
    sp: &SubcellPoints,
    pairs: &[MatchPair],
    bottom_in: &[Iv],
    left_in: &[Iv],
    bl_reach: bool,
) -> SubcellOutput {
    let (x0, x1) = (grid.xs[ix], grid.xs[ix + 1]);
    let (y0, y1) = (grid.ys[iy], grid.ys[iy + 1]);

    // Partition each edge at its interior marked points.
    let part = |pts: &[crate::freespace::EdgePoint], a: f64, b: f64| -> Vec<f64> {
        let mut v = vec![a];
        v.extend(pts.iter().filter(|p| !p.corner).map(|p| p.pos));
        v.push(b);
        v
    };
    let bx = part(&sp.b, x0, x1);
    let lx = part(&sp.l, y0, y1);
    let tx = part(&sp.t, x0, x1);
    let rx = part(&sp.r, y0, y1);

    // Global segment table: (edge, lo, hi, free).
    let mut segs: Vec<(Edge, f64, f64, bool)> = Vec::new();
    let mut base = [0usize; 4];
    for (k, (edge, pts)) in [(Edge::B, &bx), (Edge::L, &lx), (Edge::T, &tx), (Edge::R, &rx)]
        .into_iter()
        .enumerate()
    {
        base[k] = segs.len();
        for w in pts.windows(2) {
            let mid = 0.5 * (w[0] + w[1]);
            let (u, v) = match edge {
                Edge::B => (mid, y0),
                Edge::L => (x0, mid),
                Edge::T => (mid, y1),
                Edge::R => (x1, mid),
            };
            let free = grid.f.eval(u, v) <= 0.0;
            segs.push((edge, w[0], w[1], free));
        }
    }
    let (b0, l0, t0, r0) = (base[0], base[1], base[2], base[3]);
    let (nb, nl, nt, nr) = (bx.len() - 1, lx.len() - 1, tx.len() - 1, rx.len() - 1);
    let mut dsu = Dsu::new(segs.len());

    // Corner adjacencies: when no arc passes through a corner, the two edge
    // stubs meeting there belong to the same face.
    let corner_cross = |edge_pts: &[crate::freespace::EdgePoint], pos: f64| {
        edge_pts.iter().any(|p| p.corner && (p.pos - pos).abs() <= POINT_MERGE_TOL)
    };
    let corners = [
        // (seg a, seg b, crossing?)
        (b0, l0, corner_cross(&sp.l, y0)),                    // bl
        (b0 + nb - 1, r0, corner_cross(&sp.b, x1)),           // br
        (l0 + nl - 1, t0, corner_cross(&sp.l, y1)),           // tl
        (t0 + nt - 1, r0 + nr - 1, corner_cross(&sp.t, x1)),  // tr
    ];
    for &(sa, sb, crossing) in &corners {
        if !crossing && segs[sa].3 && segs[sb].3 {
            dsu.union(sa, sb);
        }
    }

    // Arc adjacencies: the free segments flanking the two endpoints of an
    // arc bound the same face.
    let free_segs_at = |point: (EdgeKind, f64)| -> Vec<usize> {
        let (ek, pos) = point;
        // corner endpoints by convention
        let corner_pair: Option<(usize, usize)> = match ek {
            EdgeKind::Left if (pos - y0).abs() <= POINT_MERGE_TOL => Some((b0, l0)),
            EdgeKind::Left if (pos - y1).abs() <= POINT_MERGE_TOL => Some((l0 + nl - 1, t0)),
            EdgeKind::Bottom if (pos - x1).abs() <= POINT_MERGE_TOL => Some((b0 + nb - 1, r0)),
            EdgeKind::Top if (pos - x1).abs() <= POINT_MERGE_TOL => {
                Some((t0 + nt - 1, r0 + nr - 1))
            }
            _ => None,
        };
        if let Some((sa, sb)) = corner_pair {
            return [sa, sb].into_iter().filter(|&s| segs[s].3).collect();
        }
        let (pts, b) = match ek {
            EdgeKind::Bottom => (&bx, b0),
            EdgeKind::Left => (&lx, l0),
            EdgeKind::Top => (&tx, t0),
            EdgeKind::Right => (&rx, r0),
        };
        let idx = pts
            .iter()
            .position(|&p| (p - pos).abs() <= POINT_MERGE_TOL)
            .unwrap_or(0);
        let mut out = Vec::new();
        if idx >= 1 && segs[b + idx - 1].3 {
            out.push(b + idx - 1);
        }
        if idx < pts.len() - 1 && segs[b + idx].3 {
            out.push(b + idx);
        }
        out
    };
    for pr in pairs {
        let mut adj = free_segs_at(pr.from);
        adj.extend(free_segs_at(pr.to));
        for w in adj.windows(2) {
            dsu.union(w[0], w[1]);
        }
    }

    // Per-face entering information.
    use std::collections::HashMap;
    #[derive(Default, Clone, Copy)]
    struct Face {
        p_min: Option<f64>,  // leftmost reachable bottom point
        q_min: Option<f64>,  // lowest reachable left point
        corner: bool,        // reached through the bottom-left vertex
        top: Option<Iv>,     // free span on the top edge
        right: Option<Iv>,
    }
    let mut faces: HashMap<usize, Face> = HashMap::new();
    for s in 0..segs.len() {
        let (edge, a, b, free) = segs[s];
        if !free {
            continue;
        }
        let root = dsu.find(s);
        let f = faces.entry(root).or_default();
        match edge {
            Edge::B => {
                for iv in bottom_in {
                    let lo = iv.0.max(a);
                    if lo <= iv.1.min(b) + REACH_TOL {
                        f.p_min = Some(f.p_min.map_or(lo, |m: f64| m.min(lo)));
                    }
                }
            }
            Edge::L => {
                for iv in left_in {
                    let lo = iv.0.max(a);
                    if lo <= iv.1.min(b) + REACH_TOL {
                        f.q_min = Some(f.q_min.map_or(lo, |m: f64| m.min(lo)));
                    }
                }
            }
            Edge::T => {
                f.top = Some(match f.top {
                    None => (a, b),
                    Some((ta, tb)) => (ta.min(a), tb.max(b)),
                });
            }
            Edge::R => {
                f.right = Some(match f.right {
                    None => (a, b),
                    Some((ra, rb)) => (ra.min(a), rb.max(b)),
                });
            }
        }
    }
    if bl_reach {
        for s in [b0, l0] {
            if segs[s].3 {
                let root = dsu.find(s);
                faces.entry(root).or_default().corner = true;
            }
        }
    }

    let mut out = SubcellOutput::default();
    for f in faces.values() {
        let entered = f.corner || f.p_min.is_some() || f.q_min.is_some();
        if !entered {
            continue;
        }
        if let Some((ta, tb)) = f.top {
            // From the left edge or the corner, the whole top span is
            // reachable; from a bottom point only the part to its right.
            let mut lo = f64::INFINITY;
            if f.corner || f.q_min.is_some() {
                lo = ta;
            }
            if let Some(p) = f.p_min {
                lo = lo.min(ta.max(p));
            }
            if lo <= tb + REACH_TOL {
                out.top.push((lo.min(tb), tb));
            }
        }
        if let Some((ra, rb)) = f.right {
            let mut lo = f64::INFINITY;
            if f.corner || f.p_min.is_some() {
                lo = ra;
            }
            if let Some(q) = f.q_min {
                lo = lo.min(ra.max(q));
            }
            if lo <= rb + REACH_TOL {
                out.right.push((lo.min(rb), rb));
            }
        }
    }
    out.top = merge(out.top);
    out.right = merge(out.right);
    out.tr_reach = touches(&out.top, x1) || touches(&out.right, y1);
    out
}

/// Reachability leaving one cell.
#[derive(Debug, Clone, Default)]
struct CellOutput {
    top: Vec<Iv>,
    right: Vec<Iv>,
    tr_reach: bool,
}

fn sweep_cell(
    grid: &CellGrid,
    bottom_in: &[Iv],
    left_in: &[Iv],
    bl_reach: bool,
    cases: &mut CaseCounts,
) -> Result<CellOutput> {
    let np = grid.xs.len() - 1;
    let nq = grid.ys.len() - 1;
    // vertex_reach[ix][iy] for grid vertices
    let mut vreach = vec![vec![false; nq + 1]; np + 1];
    for (ix, &x) in grid.xs.iter().enumerate() {
        vreach[ix][0] = touches(bottom_in, x);
    }
    for (iy, &y) in grid.ys.iter().enumerate() {
        vreach[0][iy] = vreach[0][iy] || touches(left_in, y);
    }
    vreach[0][0] = vreach[0][0] || bl_reach;

    let mut col_top: Vec<Vec<Iv>> = (0..np)
        .map(|ix| clip(bottom_in, grid.xs[ix], grid.xs[ix + 1]))
        .collect();
    let mut right_out = Vec::new();
    for iy in 0..nq {
        let mut row_left = clip(left_in, grid.ys[iy], grid.ys[iy + 1]);
        for ix in 0..np {
            let sp = subcell_points(grid, ix, iy)?;
            let (pairs, counts) = match_subcell(&sp.b, &sp.l, &sp.t, &sp.r)?;
            cases.absorb(&counts);
            if sp.b.iter().chain(&sp.l).chain(&sp.t).any(|p| p.corner) {
                cases.corner_rule += 1;
            }
            let o = propagate_subcell(
                grid,
                ix,
                iy,
                &sp,
                &pairs,
                &col_top[ix],
                &row_left,
                vreach[ix][iy],
            );
            vreach[ix + 1][iy + 1] = vreach[ix + 1][iy + 1] || o.tr_reach;
            col_top[ix] = o.top;
            row_left = o.right;
        }
        right_out.extend(row_left);
    }
    let mut top_out = Vec::new();
    for t in col_top {
        top_out.extend(t);
    }
    Ok(CellOutput {
        top: merge(top_out),
        right: merge(right_out),
        tr_reach: vreach[np][nq],
    })
}

/// Reachable prefix of a diagram wall: the largest initial portion of each
/// cell wall that a path hugging the boundary can cover.
fn wall_prefixes(
    pieces: &[PolynomialPiece],
    point: &[f64],
    delta: f64,
) -> Result<Vec<Vec<Iv>>> {
    let mut out = Vec::with_capacity(pieces.len());
    let mut alive = true;
    for piece in pieces {
        if !alive {
            out.push(Vec::new());
            continue;
        }
        let g = dist_sq_poly(piece, point).shift(-delta * delta);
        let roots = match isolate_roots(&g) {
            Ok(r) => r,
            Err(Error::IdenticallyZero) => {
                // the whole wall sits at distance exactly delta: free
                out.push(vec![(0.0, 1.0)]);
                continue;
            }
            Err(e) => return Err(e),
        };
        let first = roots.first().map(|r| r.t).unwrap_or(1.0);
        let probe = if roots.is_empty() { 0.5 } else { 0.5 * first.max(REACH_TOL) };
        let free_start = g.eval(probe) <= 0.0;
        if !free_start {
            alive = false;
            if g.eval(0.0).abs() <= 1e-12 * g.max_abs() {
                out.push(vec![(0.0, 0.0)]);
            } else {
                out.push(Vec::new());
            }
            continue;
        }
        if roots.is_empty() {
            out.push(vec![(0.0, 1.0)]);
        } else {
            out.push(vec![(0.0, first)]);
            alive = first >= 1.0 - REACH_TOL;
        }
    }
    Ok(out)
}

/// Outcome of a decision query.
#[derive(Debug, Clone)]
pub struct Decision {
    /// True when the Fréchet distance is at most delta.
    pub reachable: bool,
    /// The delta actually decided, after any perturbation.
    pub delta_used: f64,
    /// Number of perturbation retries that were needed.
    pub retries: u32,
    pub cases: CaseCounts,
    pub cells: usize,
    pub cells_skipped: usize,
    /// Total subcells processed across all swept cells (fully free cells
    /// count as one).
    pub subcells: usize,
}

fn decide_raw(c1: &PiecewiseCurve, c2: &PiecewiseCurve, delta: f64) -> Result<Decision> {
    let m = c1.num_pieces();
    let n = c2.num_pieces();
    let mut dec = Decision {
        reachable: false,
        delta_used: delta,
        retries: 0,
        cases: CaseCounts::default(),
        cells: m * n,
        cells_skipped: 0,
        subcells: 0,
    };
    // Wall prefixes along the diagram bottom and left boundary.
    let bottom0 = wall_prefixes(&c1.pieces, &c2.start(), delta)?;
    let left0 = wall_prefixes(&c2.pieces, &c1.start(), delta)?;

    let mut bottom_frontier: Vec<Vec<Iv>> = bottom0;
    let mut prev_row_tr: Vec<bool> = vec![false; m];
    for j in 0..n {
        let mut left_in: Vec<Iv> = left0[j].clone();
        let mut row_tr = vec![false; m];
        for i in 0..m {
            let bl = if i > 0 && j > 0 {
                prev_row_tr[i - 1]
            } else {
                false
            };
            let bottom_in = std::mem::take(&mut bottom_frontier[i]);
            if bottom_in.is_empty() && left_in.is_empty() && !bl {
                dec.cells_skipped += 1;
                left_in = Vec::new();
                continue;
            }
            let p1 = &c1.pieces[i];
            let p2 = &c2.pieces[j];
            if bbox_min_dist(p1, p2) > delta {
                dec.cells_skipped += 1;
                left_in = Vec::new();
                continue;
            }
            let grid = mark_cell(p1, p2, delta)?;
            let (lo, hi) = grid.f.coeff_range();
            let out = if hi <= 0.0 {
                dec.subcells += 1;
                // entirely free cell: one face covering the square
                let p_min = bottom_in.first().map(|iv| iv.0);
                let q_min = left_in.first().map(|iv| iv.0);
                let mut o = CellOutput::default();
                if bl || q_min.is_some() {
                    o.top = vec![(0.0, 1.0)];
                } else if let Some(p) = p_min {
                    o.top = vec![(p, 1.0)];
                }
                if bl || p_min.is_some() {
                    o.right = vec![(0.0, 1.0)];
                } else if let Some(q) = q_min {
                    o.right = vec![(q, 1.0)];
                }
                o.tr_reach = !o.top.is_empty() || !o.right.is_empty();
                o
            } else if lo > 0.0 {
                dec.cells_skipped += 1;
                CellOutput::default()
            } else {
                dec.subcells += (grid.xs.len() - 1) * (grid.ys.len() - 1);
                sweep_cell(&grid, &bottom_in, &left_in, bl, &mut dec.cases)?
            };
            row_tr[i] = out.tr_reach;
            bottom_frontier[i] = out.top;
            left_in = out.right;
        }
        prev_row_tr = row_tr;
    }
    dec.reachable = prev_row_tr[m - 1];
    Ok(dec)
}

fn retryable(e: &Error) -> bool {
    matches!(
        e,
        Error::CriticalDelta(_)
            | Error::AmbiguousProbe
            | Error::ClusterUnresolved(_)
            | Error::InconsistentConfiguration(_)
            | Error::WholeArcAtDistance
    )
}

/// Decides whether the Fréchet distance between the curves is at most delta.
///
/// Degenerate configurations (delta at or extremely near a critical value of
/// the free-space topology) are resolved by retrying with delta perturbed
/// multiplicatively by 1e-9, alternating sign, then by 1e-6; a decision at a
/// perturbed delta is reported through `delta_used`/`retries`. If both signs
/// of the large perturbation still fail, `NearCritical` is returned.
pub fn decide(
    c1: &PiecewiseCurve,
    c2: &PiecewiseCurve,
    delta: f64,
    norm: NormConfig,
) -> Result<Decision> {
    norm.validate()?;
    if delta < 0.0 || !delta.is_finite() {
        return Err(Error::ParamOutOfRange(delta));
    }
    // Point curves make the squared-distance surface degenerate in one
    // variable; their Fréchet distance is a maximum over the other curve.
    if c1.is_point(REACH_TOL) || c2.is_point(REACH_TOL) {
        let d = if c1.is_point(REACH_TOL) {
            max_dist_to_point(c2, &c1.start())
        } else {
            max_dist_to_point(c1, &c2.start())
        };
        return Ok(Decision {
            reachable: d <= delta * (1.0 + REACH_TOL) + REACH_TOL,
            delta_used: delta,
            retries: 0,
            cases: CaseCounts::default(),
            cells: 0,
            cells_skipped: 0,
            subcells: 0,
        });
    }
    let mut retries = 0;
    match decide_raw(c1, c2, delta) {
        Ok(dec) => return Ok(dec),
        Err(e) if retryable(&e) => retries += 1,
        Err(e) => return Err(e),
    }
    // delta sits at or near a critical value: probe both sides. The
    // reachability predicate is monotone in delta, so a NO above or a YES
    // below already decides; if the two sides disagree, delta brackets the
    // distance itself and the tie resolves toward reachable (the free space
    // is closed).
    for eta in [1e-9, 1e-6] {
        let lo = delta * (1.0 - eta);
        let hi = delta * (1.0 + eta);
        let r_hi = decide_raw(c1, c2, hi);
        let r_lo = decide_raw(c1, c2, lo);
        for r in [&r_hi, &r_lo] {
            if let Err(e) = r {
                if !retryable(e) {
                    return Err(Error::InconsistentConfiguration(format!(
                        "perturbed decision failed: {e}"
                    )));
                }
                retries += 1;
            }
        }
        match (r_hi, r_lo) {
            (Ok(h), Ok(l)) => {
                let reachable = if h.reachable == l.reachable {
                    h.reachable
                } else {
                    true
                };
                let mut dec = h;
                dec.reachable = reachable;
                dec.delta_used = delta;
                dec.retries = retries;
                return Ok(dec);
            }
            (Ok(h), Err(_)) if !h.reachable => {
                let mut dec = h;
                dec.retries = retries;
                return Ok(dec);
            }
            (Err(_), Ok(l)) if l.reachable => {
                let mut dec = l;
                dec.retries = retries;
                return Ok(dec);
            }
            _ => {}
        }
    }
    Err(Error::NearCritical { delta, retries })
}
