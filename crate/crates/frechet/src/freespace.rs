//! Free-space analysis inside one cell (one pair of polynomial pieces).
//!
//! For a threshold delta, the forbidden region in the (u,v) parameter square
//! of a piece pair is { F(u,v) > delta^2 } with F the squared-distance
//! surface. The boundary { F = delta^2 } is cut into monotone arcs by
//! vertical lines through the horizontal-tangent points of the boundary and
//! horizontal lines through the vertical-tangent points. Within each subcell
//! of the resulting grid, the arcs can be reconstructed combinatorially from
//! the crossing points on the subcell edges and the arc directions on the
//! bottom and left edges alone; `match_subcell` implements that case
//! analysis and `build_graph` assembles the whole boundary graph.

use crate::bernstein::BPoly2;
use crate::curve::{PiecewiseCurve, PolynomialPiece};
use crate::error::{Error, Result};
use crate::polysolve::{cross_dist_sq, isolate_roots, solve_system};

/// Positional tolerance: marked points closer than this are one point.
pub const POINT_MERGE_TOL: f64 = 1e-12;
/// Cut lines or extrema closer than this to a wall (or to each other,
/// without coinciding) make the configuration degenerate.
pub const WALL_TOL: f64 = 1e-10;
/// |F - delta^2| below this (relative to scale) marks a grid corner.
pub const CORNER_TOL_REL: f64 = 1e-10;
/// A line crossing within this distance of a grid corner is the corner.
pub const CORNER_SNAP: f64 = 1e-9;

/// Direction of a boundary arc: increasing means dv/du > 0 along the arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slope {
    Inc,
    Dec,
}

/// Everything known about one cell at a given delta: the shifted surface
/// f = F - delta^2, the cut grid, and the boundary crossings on every grid
/// line.
#[derive(Debug, Clone)]
pub struct CellGrid {
    pub f: BPoly2,
    pub scale: f64,
    /// Vertical cut coordinates, including the walls 0 and 1.
    pub xs: Vec<f64>,
    /// Horizontal cut coordinates, including the walls 0 and 1.
    pub ys: Vec<f64>,
    /// Boundary crossings on each vertical grid line x = xs[i] (v-coords, sorted).
    pub vlines: Vec<Vec<f64>>,
    /// Boundary crossings on each horizontal grid line y = ys[j] (u-coords, sorted).
    pub hlines: Vec<Vec<f64>>,
    /// corner_on[i][j]: the boundary passes through grid vertex (xs[i], ys[j]).
    pub corner_on: Vec<Vec<bool>>,
}

/// Lower bound on the distance between two pieces from control-point boxes.
pub fn bbox_min_dist(p1: &PolynomialPiece, p2: &PolynomialPiece) -> f64 {
    let (lo1, hi1) = p1.bbox();
    let (lo2, hi2) = p2.bbox();
    let mut s = 0.0;
    for j in 0..p1.dim {
        let gap = (lo1[j] - hi2[j]).max(lo2[j] - hi1[j]).max(0.0);
        s += gap * gap;
    }
    s.sqrt()
}

fn merged_cuts(mut cuts: Vec<f64>, delta: f64) -> Result<Vec<f64>> {
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut out: Vec<f64> = vec![0.0];
    for c in cuts {
        if c < WALL_TOL || c > 1.0 - WALL_TOL {
            return Err(Error::CriticalDelta(delta));
        }
        let last = *out.last().unwrap();
        if c - last <= POINT_MERGE_TOL {
            continue;
        }
        if c - last <= WALL_TOL && last > 0.0 {
            return Err(Error::CriticalDelta(delta));
        }
        out.push(c);
    }
    out.push(1.0);
    Ok(out)
}

/// Analyzes one cell: builds f = F - delta^2, finds the tangent-extremum
/// points, lays the cut grid through them, and solves for the boundary
/// crossings on every grid line.
///
/// Degenerate configurations (boundary tangent to a grid line, extremum on a
/// wall, singular boundary point) fail with `CriticalDelta`; the caller
/// perturbs delta and retries.
pub fn mark_cell(p1: &PolynomialPiece, p2: &PolynomialPiece, delta: f64) -> Result<CellGrid> {
    let big_f = cross_dist_sq(p1, p2);
    let scale = big_f.max_abs().max(delta * delta).max(1e-300);
    let f = big_f.shift(-delta * delta);
    let fu = f.du();
    let fv = f.dv();
    let grad_tol = 1e-8 * scale;

    // Horizontal-tangent points of the boundary: F = delta^2, Fu = 0.
    // Each one gets a vertical cut through its u-coordinate.
    let mut xcuts = Vec::new();
    match solve_system(&f, &fu) {
        Ok(sols) => {
            for s in sols {
                if s.positive_dimensional {
                    return Err(Error::CriticalDelta(delta));
                }
                if fv.eval(s.u, s.v).abs() <= grad_tol {
                    // singular point of the level set
                    return Err(Error::CriticalDelta(delta));
                }
                xcuts.push(s.u);
            }
        }
        Err(Error::IdenticallyZero) => return Err(Error::CriticalDelta(delta)),
        Err(e) => return Err(e),
    }
    // Vertical-tangent points: F = delta^2, Fv = 0; horizontal cuts.
    let mut ycuts = Vec::new();
    match solve_system(&f, &fv) {
        Ok(sols) => {
            for s in sols {
                if s.positive_dimensional {
                    return Err(Error::CriticalDelta(delta));
                }
                if fu.eval(s.u, s.v).abs() <= grad_tol {
                    return Err(Error::CriticalDelta(delta));
                }
                ycuts.push(s.v);
            }
        }
        Err(Error::IdenticallyZero) => return Err(Error::CriticalDelta(delta)),
        Err(e) => return Err(e),
    }
    let xs = merged_cuts(xcuts, delta)?;
    let ys = merged_cuts(ycuts, delta)?;

    // Corners first, so line crossings can be snapped onto them.
    let ctol = CORNER_TOL_REL * scale;
    let corner_on: Vec<Vec<bool>> = xs
        .iter()
        .map(|&x| ys.iter().map(|&y| f.eval(x, y).abs() <= ctol).collect())
        .collect();

    let solve_line = |section: crate::bernstein::BPoly,
                      grid_coords: &[f64],
                      corner_marked: &dyn Fn(usize) -> bool|
     -> Result<Vec<f64>> {
        let roots = match isolate_roots(&section) {
            Ok(r) => r,
            Err(Error::IdenticallyZero) => return Err(Error::CriticalDelta(delta)),
            Err(e) => return Err(e),
        };
        let mut out = Vec::new();
        'next: for r in roots {
            if r.tangency {
                return Err(Error::CriticalDelta(delta));
            }
            for (k, &g) in grid_coords.iter().enumerate() {
                if (r.t - g).abs() <= CORNER_SNAP {
                    if corner_marked(k) {
                        continue 'next; // the corner, handled structurally
                    }
                    return Err(Error::CriticalDelta(delta));
                }
            }
            out.push(r.t);
        }
        Ok(out)
    };

    let mut vlines = Vec::with_capacity(xs.len());
    for (i, &x) in xs.iter().enumerate() {
        vlines.push(solve_line(f.section_u(x), &ys, &|j| corner_on[i][j])?);
    }
    let mut hlines = Vec::with_capacity(ys.len());
    for (j, &y) in ys.iter().enumerate() {
        hlines.push(solve_line(f.section_v(y), &xs, &|i| corner_on[i][j])?);
    }

    Ok(CellGrid {
        f,
        scale,
        xs,
        ys,
        vlines,
        hlines,
        corner_on,
    })
}

/// Which grid line a marked point lives on.
#[derive(Debug, Clone, Copy)]
pub enum LineRef {
    /// Horizontal line y = ys[j].
    H(usize),
    /// Vertical line x = xs[i].
    V(usize),
}

fn point_status(f: &BPoly2, scale: f64, u: f64, v: f64) -> Result<bool> {
    let val = f.eval(u, v);
    if val.abs() <= 1e-14 * scale {
        return Err(Error::AmbiguousProbe);
    }
    Ok(val > 0.0) // true = forbidden
}

/// Determines the direction of the boundary arc through the crossing point
/// at `pos` on the given grid line, by probing the sign of f at three test
/// points: two along the line on either side of the crossing and one
/// perpendicular to it (above for horizontal lines, to the right for
/// vertical ones). Probe offsets are half the gap to the nearest other
/// crossing, so no probe lands beyond a different arc.
pub fn slope_info(grid: &CellGrid, line: LineRef, pos: f64) -> Result<Slope> {
    let f = &grid.f;
    let (crossings, line_coord) = match line {
        LineRef::H(j) => (&grid.hlines[j], grid.ys[j]),
        LineRef::V(i) => (&grid.vlines[i], grid.xs[i]),
    };
    // Corner-marked grid vertices on this line are boundary points too, even
    // though they are kept out of the crossing list; the probe gaps must not
    // reach past them.
    let corners_on_line: Vec<f64> = match line {
        LineRef::H(j) => grid
            .xs
            .iter()
            .enumerate()
            .filter(|(i, _)| grid.corner_on[*i][j])
            .map(|(_, &x)| x)
            .collect(),
        LineRef::V(i) => grid
            .ys
            .iter()
            .enumerate()
            .filter(|(j, _)| grid.corner_on[i][*j])
            .map(|(_, &y)| y)
            .collect(),
    };
    let mut prev = 0.0f64;
    let mut next = 1.0f64;
    for &c in crossings.iter().chain(&corners_on_line) {
        if c < pos - POINT_MERGE_TOL && c > prev {
            prev = c;
        }
        if c > pos + POINT_MERGE_TOL && c < next {
            next = c;
        }
    }
    let hl = 0.5 * (pos - prev);
    let hr = 0.5 * (next - pos);
    if hl < POINT_MERGE_TOL || hr < POINT_MERGE_TOL {
        return Err(Error::AmbiguousProbe);
    }
    // Perpendicular offset: half the gap to the nearest crossing on the
    // perpendicular line through the point, solved on demand.
    let perp_section = match line {
        LineRef::H(_) => f.section_u(pos),
        LineRef::V(_) => f.section_v(pos),
    };
    let roots = match isolate_roots(&perp_section) {
        Ok(r) => r,
        Err(Error::IdenticallyZero) => return Err(Error::AmbiguousProbe),
        Err(e) => return Err(e),
    };
    // The probed point is itself a root of the perpendicular section, but
    // its slight positional error displaces that root (amplified by the arc
    // slope, and possibly split into a straddling pair). Every root within
    // the self-image band is therefore ignored when sizing the offset; a
    // genuine distinct arc that close to the line moves with delta, so a
    // wrong jump here still gets resolved by the perturbation ladder.
    const SELF_IMAGE_TOL: f64 = 1e-5;
    let mut perp_next = 1.0f64;
    for r in roots {
        if r.t > line_coord + SELF_IMAGE_TOL && r.t < perp_next {
            perp_next = r.t;
        }
    }
    let hp = 0.5 * (perp_next - line_coord);
    if hp < POINT_MERGE_TOL {
        return Err(Error::AmbiguousProbe);
    }

    let (s1, s2, s3) = match line {
        LineRef::H(_) => (
            point_status(f, grid.scale, pos - hl, line_coord)?,
            point_status(f, grid.scale, pos + hr, line_coord)?,
            point_status(f, grid.scale, pos, line_coord + hp)?,
        ),
        LineRef::V(_) => (
            point_status(f, grid.scale, line_coord, pos - hl)?,
            point_status(f, grid.scale, line_coord, pos + hr)?,
            point_status(f, grid.scale, line_coord + hp, pos)?,
        ),
    };
    if s1 == s2 {
        // Same status on both sides along the line: a touch, not a crossing.
        return Err(Error::AmbiguousProbe);
    }
    if s1 == s3 {
        Ok(Slope::Inc)
    } else {
        Ok(Slope::Dec)
    }
}

/// One crossing point on a subcell edge, as input to the matching.
#[derive(Debug, Clone, Copy)]
pub struct EdgePoint {
    pub pos: f64,
    /// Known for bottom/left points; assigned by the matching elsewhere.
    pub slope: Option<Slope>,
    /// True when the point sits on a subcell corner.
    pub corner: bool,
}

/// Edges of a subcell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    Bottom,
    Left,
    Top,
    Right,
}

/// A matched pair: one boundary arc of the subcell with its two endpoints
/// and its direction.
#[derive(Debug, Clone, Copy)]
pub struct MatchPair {
    pub from: (EdgeKind, f64),
    pub to: (EdgeKind, f64),
    pub dir: Slope,
}

/// Which rule of the case analysis produced each arc; the counters make the
/// coverage of the reconstruction auditable.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CaseCounts {
    /// Drain step: only top/right points remain.
    pub drain_tr: u64,
    /// First bottom point increasing, last decreasing: topmost-left to leftmost-top.
    pub case1a: u64,
    /// First left point increasing, last decreasing: rightmost-bottom to bottommost-right.
    pub case1b: u64,
    /// Both first points decreasing: they bound one arc.
    pub case2: u64,
    /// First bottom point decreasing, left points all increasing.
    pub case3a: u64,
    /// First left point decreasing, bottom points all increasing.
    pub case3b: u64,
    /// All sentinels increasing and the counts balance: left-top goes right.
    pub last_balanced: u64,
    /// All sentinels increasing, counts do not balance: left-top goes up.
    pub last_default: u64,
    /// Bottom edge empty branches.
    pub b_empty: u64,
    /// Left edge empty branches.
    pub l_empty: u64,
    /// Subcells whose corner rule (parity balance) fired.
    pub corner_rule: u64,
}

impl CaseCounts {
    pub fn absorb(&mut self, o: &CaseCounts) {
        self.drain_tr += o.drain_tr;
        self.case1a += o.case1a;
        self.case1b += o.case1b;
        self.case2 += o.case2;
        self.case3a += o.case3a;
        self.case3b += o.case3b;
        self.last_balanced += o.last_balanced;
        self.last_default += o.last_default;
        self.b_empty += o.b_empty;
        self.l_empty += o.l_empty;
        self.corner_rule += o.corner_rule;
    }
}

fn incons(msg: &str) -> Error {
    Error::InconsistentConfiguration(msg.into())
}

/// Reconstructs the arcs of a subcell from its edge crossing points.
///
/// `b` and `l` (sorted by position) must carry directions; `t` and `r` are
/// positions only. Every point is paired with exactly one other point; the
/// pairing follows the direction case analysis, repeatedly peeling one arc.
pub fn match_subcell(
    b: &[EdgePoint],
    l: &[EdgePoint],
    t: &[EdgePoint],
    r: &[EdgePoint],
) -> Result<(Vec<MatchPair>, CaseCounts)> {
    let mut counts = CaseCounts::default();
    let total = b.len() + l.len() + t.len() + r.len();
    if total % 2 != 0 {
        return Err(incons("odd number of boundary points in subcell"));
    }
    let slope_of = |p: &EdgePoint| -> Result<Slope> {
        p.slope.ok_or_else(|| incons("missing direction on bottom/left point"))
    };
    let mut bq: Vec<(f64, Slope)> = b
        .iter()
        .map(|p| Ok((p.pos, slope_of(p)?)))
        .collect::<Result<_>>()?;
    let mut lq: Vec<(f64, Slope)> = l
        .iter()
        .map(|p| Ok((p.pos, slope_of(p)?)))
        .collect::<Result<_>>()?;
    let mut tq: Vec<f64> = t.iter().map(|p| p.pos).collect();
    let mut rq: Vec<f64> = r.iter().map(|p| p.pos).collect();
    let mut pairs = Vec::with_capacity(total / 2);

    let take = |q: &mut Vec<f64>, idx: usize, what: &str| -> Result<f64> {
        if idx >= q.len() {
            return Err(incons(what));
        }
        Ok(q.remove(idx))
    };

    for _ in 0..total / 2 {
        if bq.is_empty() && lq.is_empty() {
            // Only top/right points remain: nested decreasing arcs pair the
            // rightmost top point with the topmost right point, and so on.
            if tq.len() != rq.len() {
                return Err(incons("unbalanced top/right residue"));
            }
            while let (Some(tp), Some(rp)) = (tq.pop(), rq.pop()) {
                counts.drain_tr += 1;
                pairs.push(MatchPair {
                    from: (EdgeKind::Top, tp),
                    to: (EdgeKind::Right, rp),
                    dir: Slope::Dec,
                });
            }
            break;
        }
        if !bq.is_empty() && !lq.is_empty() {
            let zlb = bq[0].1; // leftmost bottom
            let zrb = bq[bq.len() - 1].1; // rightmost bottom
            let zbl = lq[0].1; // bottommost left
            let ztl = lq[lq.len() - 1].1; // topmost left
            if zlb == Slope::Inc && zrb == Slope::Dec {
                counts.case1a += 1;
                let (lp, s) = lq.pop().unwrap();
                let tp = take(&mut tq, 0, "case 1a needs a top point")?;
                pairs.push(MatchPair {
                    from: (EdgeKind::Left, lp),
                    to: (EdgeKind::Top, tp),
                    dir: s,
                });
            } else if zbl == Slope::Inc && ztl == Slope::Dec {
                counts.case1b += 1;
                let (bp, s) = bq.pop().unwrap();
                let rp = take(&mut rq, 0, "case 1b needs a right point")?;
                pairs.push(MatchPair {
                    from: (EdgeKind::Bottom, bp),
                    to: (EdgeKind::Right, rp),
                    dir: s,
                });
            } else if zlb == Slope::Dec && zbl == Slope::Dec {
                counts.case2 += 1;
                let (bp, s) = bq.remove(0);
                let (lp, _) = lq.remove(0);
                pairs.push(MatchPair {
                    from: (EdgeKind::Bottom, bp),
                    to: (EdgeKind::Left, lp),
                    dir: s,
                });
            } else if zlb == Slope::Dec {
                // left points all increasing: the decreasing bottom arc
                // passes over all of them and lands on the top edge just
                // after their landing spots.
                counts.case3a += 1;
                let k_l = lq.len();
                let (bp, s) = bq.remove(0);
                let tp = take(&mut tq, k_l, "case 3a index out of range")?;
                pairs.push(MatchPair {
                    from: (EdgeKind::Bottom, bp),
                    to: (EdgeKind::Top, tp),
                    dir: s,
                });
            } else if zbl == Slope::Dec {
                counts.case3b += 1;
                let k_b = bq.len();
                let (lp, s) = lq.remove(0);
                let rp = take(&mut rq, k_b, "case 3b index out of range")?;
                pairs.push(MatchPair {
                    from: (EdgeKind::Left, lp),
                    to: (EdgeKind::Right, rp),
                    dir: s,
                });
            } else {
                // every sentinel increasing
                let (k_l, k_b, k_t, k_r) = (lq.len(), bq.len(), tq.len(), rq.len());
                if k_l + k_b + k_t == k_r {
                    counts.last_balanced += 1;
                    let (lp, s) = lq.pop().unwrap();
                    let rp = take(&mut rq, k_r - 1 - k_t, "balanced case index")?;
                    pairs.push(MatchPair {
                        from: (EdgeKind::Left, lp),
                        to: (EdgeKind::Right, rp),
                        dir: s,
                    });
                } else {
                    counts.last_default += 1;
                    let (lp, s) = lq.pop().unwrap();
                    let tp = take(&mut tq, 0, "default case needs a top point")?;
                    pairs.push(MatchPair {
                        from: (EdgeKind::Left, lp),
                        to: (EdgeKind::Top, tp),
                        dir: s,
                    });
                }
            }
        } else if bq.is_empty() {
            counts.b_empty += 1;
            if lq[0].1 == Slope::Dec {
                let (lp, s) = lq.remove(0);
                let rp = take(&mut rq, 0, "empty-bottom decreasing needs right point")?;
                pairs.push(MatchPair {
                    from: (EdgeKind::Left, lp),
                    to: (EdgeKind::Right, rp),
                    dir: s,
                });
            } else if lq.len() + tq.len() == rq.len() {
                let (lp, s) = lq.pop().unwrap();
                let idx = rq.len() - 1 - tq.len();
                let rp = take(&mut rq, idx, "empty-bottom balanced index")?;
                pairs.push(MatchPair {
                    from: (EdgeKind::Left, lp),
                    to: (EdgeKind::Right, rp),
                    dir: s,
                });
            } else {
                let (lp, s) = lq.pop().unwrap();
                let tp = take(&mut tq, 0, "empty-bottom default needs top point")?;
                pairs.push(MatchPair {
                    from: (EdgeKind::Left, lp),
                    to: (EdgeKind::Top, tp),
                    dir: s,
                });
            }
        } else {
            // lq empty, bq not
            counts.l_empty += 1;
            if bq[0].1 == Slope::Dec {
                let (bp, s) = bq.remove(0);
                let tp = take(&mut tq, 0, "empty-left decreasing needs top point")?;
                pairs.push(MatchPair {
                    from: (EdgeKind::Bottom, bp),
                    to: (EdgeKind::Top, tp),
                    dir: s,
                });
            } else if bq.len() + rq.len() == tq.len() {
                let (bp, s) = bq.pop().unwrap();
                let idx = tq.len() - 1 - rq.len();
                let tp = take(&mut tq, idx, "empty-left balanced index")?;
                pairs.push(MatchPair {
                    from: (EdgeKind::Bottom, bp),
                    to: (EdgeKind::Top, tp),
                    dir: s,
                });
            } else {
                let (bp, s) = bq.pop().unwrap();
                let rp = take(&mut rq, 0, "empty-left default needs right point")?;
                pairs.push(MatchPair {
                    from: (EdgeKind::Bottom, bp),
                    to: (EdgeKind::Right, rp),
                    dir: s,
                });
            }
        }
    }
    if !(bq.is_empty() && lq.is_empty() && tq.is_empty() && rq.is_empty()) {
        return Err(incons("boundary points left unmatched"));
    }
    Ok((pairs, counts))
}

/// The edge points of one subcell, corners already folded in by convention:
/// bottom-left and top-left corners join the left list, bottom-right joins
/// the bottom list, top-right joins the top list (when the parity rule says
/// the boundary passes through it).
#[derive(Debug, Clone, Default)]
pub struct SubcellPoints {
    pub b: Vec<EdgePoint>,
    pub l: Vec<EdgePoint>,
    pub t: Vec<EdgePoint>,
    pub r: Vec<EdgePoint>,
}

/// Collects the edge points of subcell (ix, iy) of a marked cell and probes
/// the directions of the bottom and left points. Corner crossings get their
/// directions structurally: an arc into the square from the bottom-left
/// corner must increase, from the other two probe-free corners decrease.
pub fn subcell_points(grid: &CellGrid, ix: usize, iy: usize) -> Result<SubcellPoints> {
    let (x0, x1) = (grid.xs[ix], grid.xs[ix + 1]);
    let (y0, y1) = (grid.ys[iy], grid.ys[iy + 1]);
    let interior = |list: &[f64], a: f64, b: f64| -> Vec<f64> {
        list.iter()
            .copied()
            .filter(|&p| p > a + POINT_MERGE_TOL && p < b - POINT_MERGE_TOL)
            .collect()
    };
    let mut sp = SubcellPoints::default();
    for pos in interior(&grid.hlines[iy], x0, x1) {
        let s = slope_info(grid, LineRef::H(iy), pos)?;
        sp.b.push(EdgePoint { pos, slope: Some(s), corner: false });
    }
    for pos in interior(&grid.vlines[ix], y0, y1) {
        let s = slope_info(grid, LineRef::V(ix), pos)?;
        sp.l.push(EdgePoint { pos, slope: Some(s), corner: false });
    }
    for pos in interior(&grid.hlines[iy + 1], x0, x1) {
        sp.t.push(EdgePoint { pos, slope: None, corner: false });
    }
    for pos in interior(&grid.vlines[ix + 1], y0, y1) {
        sp.r.push(EdgePoint { pos, slope: None, corner: false });
    }

    // Corners. A marked corner is a genuine crossing when the boundary
    // separates the two adjacent edge stubs; probing the stubs decides for
    // bl/tl/br. The top-right corner is decided by parity instead: the total
    // point count of the subcell must be even.
    let probe_stub = |edge_pts: &[EdgePoint], along_h: bool, line: f64, corner: f64, toward: f64| -> Result<bool> {
        // status of f just inside the edge from the corner
        let mut bound = toward;
        for p in edge_pts {
            if (p.pos - corner).abs() > POINT_MERGE_TOL
                && (p.pos - corner).abs() < (bound - corner).abs()
            {
                bound = p.pos;
            }
        }
        let q = corner + 0.5 * (bound - corner);
        let (u, v) = if along_h { (q, line) } else { (line, q) };
        point_status(&grid.f, grid.scale, u, v)
    };

    if grid.corner_on[ix][iy] {
        // bottom-left: crossing iff the bottom stub and left stub disagree
        let sb = probe_stub(&sp.b, true, y0, x0, x1)?;
        let sl = probe_stub(&sp.l, false, x0, y0, y1)?;
        if sb != sl {
            sp.l.insert(
                0,
                EdgePoint { pos: y0, slope: Some(Slope::Inc), corner: true },
            );
        }
    }
    if grid.corner_on[ix][iy + 1] {
        // top-left
        let st = probe_stub(&sp.t, true, y1, x0, x1)?;
        let sl = probe_stub(&sp.l, false, x0, y1, y0)?;
        if st != sl {
            sp.l.push(EdgePoint { pos: y1, slope: Some(Slope::Dec), corner: true });
        }
    }
    if grid.corner_on[ix + 1][iy] {
        // bottom-right
        let sb = probe_stub(&sp.b, true, y0, x1, x0)?;
        let sr = probe_stub(&sp.r, false, x1, y0, y1)?;
        if sb != sr {
            sp.b.push(EdgePoint { pos: x1, slope: Some(Slope::Dec), corner: true });
        }
    }
    if grid.corner_on[ix + 1][iy + 1] {
        // top-right by parity
        let count = sp.b.len() + sp.l.len() + sp.t.len() + sp.r.len();
        if count % 2 == 1 {
            sp.t.push(EdgePoint { pos: x1, slope: None, corner: true });
        }
    }
    Ok(sp)
}

/// One node of the boundary graph: a marked point in a cell.
#[derive(Debug, Clone, Copy)]
pub struct GraphNode {
    pub cell: (usize, usize),
    pub u: f64,
    pub v: f64,
}

/// One arc of the boundary graph, between two node indices.
#[derive(Debug, Clone, Copy)]
pub struct GraphArc {
    pub a: usize,
    pub b: usize,
    pub dir: Slope,
}

/// The combinatorial boundary graph of the whole free-space diagram at one
/// delta: every marked point of every cell, and every monotone boundary arc
/// with its direction.
#[derive(Debug, Clone, Default)]
pub struct BoundaryGraph {
    pub nodes: Vec<GraphNode>,
    pub arcs: Vec<GraphArc>,
    pub cases: CaseCounts,
    pub cells: usize,
    pub cells_skipped: usize,
}

/// Builds the boundary graph for a pair of curves at a given delta. Cells
/// whose pieces stay further apart than delta contribute nothing and are
/// skipped via a bounding-box test.
pub fn build_graph(c1: &PiecewiseCurve, c2: &PiecewiseCurve, delta: f64) -> Result<BoundaryGraph> {
    let mut g = BoundaryGraph::default();
    for (i, p1) in c1.pieces.iter().enumerate() {
        for (j, p2) in c2.pieces.iter().enumerate() {
            g.cells += 1;
            if bbox_min_dist(p1, p2) > delta {
                g.cells_skipped += 1;
                continue;
            }
            let grid = mark_cell(p1, p2, delta)?;
            let mut node_of = std::collections::HashMap::new();
            for ix in 0..grid.xs.len() - 1 {
                for iy in 0..grid.ys.len() - 1 {
                    let sp = subcell_points(&grid, ix, iy)?;
                    let (pairs, counts) = match_subcell(&sp.b, &sp.l, &sp.t, &sp.r)?;
                    g.cases.absorb(&counts);
                    if sp.b.iter().chain(&sp.l).chain(&sp.t).any(|p| p.corner) {
                        g.cases.corner_rule += 1;
                    }
                    for pr in pairs {
                        let to_uv = |(e, pos): (EdgeKind, f64)| -> (f64, f64) {
                            match e {
                                EdgeKind::Bottom => (pos, grid.ys[iy]),
                                EdgeKind::Top => (pos, grid.ys[iy + 1]),
                                EdgeKind::Left => (grid.xs[ix], pos),
                                EdgeKind::Right => (grid.xs[ix + 1], pos),
                            }
                        };
                        let mut node_id = |uv: (f64, f64)| -> usize {
                            let key = (
                                (uv.0 / POINT_MERGE_TOL).round() as i64,
                                (uv.1 / POINT_MERGE_TOL).round() as i64,
                            );
                            *node_of.entry(key).or_insert_with(|| {
                                g.nodes.push(GraphNode { cell: (i, j), u: uv.0, v: uv.1 });
                                g.nodes.len() - 1
                            })
                        };
                        let a = node_id(to_uv(pr.from));
                        let b = node_id(to_uv(pr.to));
                        g.arcs.push(GraphArc { a, b, dir: pr.dir });
                    }
                }
            }
        }
    }
    Ok(g)
}
