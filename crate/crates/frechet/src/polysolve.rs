//! Root finding on Bernstein polynomials: univariate isolation by sign
//! variations, and bivariate systems by box subdivision with convex-hull
//! exclusion plus Newton polishing.

use crate::bernstein::{BPoly, BPoly2};
use crate::curve::PolynomialPiece;
use crate::error::{Error, Result};

/// Width to which isolated roots are refined.
pub const ROOT_WIDTH: f64 = 1e-12;
/// Two roots closer than this are merged.
pub const MERGE_TOL: f64 = 1e-12;
/// Polished bivariate solutions closer than this are one solution.
pub const CLUSTER_TOL: f64 = 1e-10;
/// Relative residual accepted for a polished solution.
pub const RESIDUAL_REL: f64 = 1e-9;

/// One isolated root of a univariate polynomial on [0,1].
#[derive(Debug, Clone, Copy)]
pub struct Root {
    pub t: f64,
    /// True when the polynomial does not change sign across the root
    /// (even multiplicity, e.g. a tangency).
    pub tangency: bool,
}

/// All roots of `p` on [0,1], refined to width `ROOT_WIDTH` and merged.
///
/// Fails with `IdenticallyZero` when every coefficient vanishes: the caller
/// must treat that case structurally, not numerically.
pub fn isolate_roots(p: &BPoly) -> Result<Vec<Root>> {
    let scale = p.max_abs();
    if scale == 0.0 {
        return Err(Error::IdenticallyZero);
    }
    let tol = 1e-14 * scale;
    let mut found: Vec<f64> = Vec::new();
    // (restricted poly, interval)
    let mut stack: Vec<(BPoly, f64, f64)> = vec![(p.clone(), 0.0, 1.0)];
    while let Some((q, a, b)) = stack.pop() {
        let v = q.variations(tol);
        let all_small = q.max_abs() <= tol;
        if all_small {
            // The polynomial is numerically zero on a sub-interval; report
            // the midpoint as a (tangential) root rather than a continuum.
            found.push(0.5 * (a + b));
            continue;
        }
        if v == 0 {
            // There can still be a root pinned exactly at the endpoints
            // (end coefficients treated as zero); catch those.
            if q.c[0].abs() <= tol {
                found.push(a);
            }
            if q.c[q.c.len() - 1].abs() <= tol {
                found.push(b);
            }
            continue;
        }
        let fa = q.c[0];
        let fb = q.c[q.c.len() - 1];
        if v == 1 && fa * fb < 0.0 && fa.abs() > tol && fb.abs() > tol {
            found.push(bisect(&q, a, b));
            continue;
        }
        if b - a <= ROOT_WIDTH {
            found.push(0.5 * (a + b));
            continue;
        }
        let (l, r) = q.split(0.5);
        let m = 0.5 * (a + b);
        stack.push((l, a, m));
        stack.push((r, m, b));
    }
    found.sort_by(|x, y| x.partial_cmp(y).unwrap());
    found.dedup_by(|x, y| (*x - *y).abs() <= MERGE_TOL);
    let roots = found
        .into_iter()
        .map(|t| Root {
            t,
            tangency: is_tangency(p, t, scale),
        })
        .collect();
    Ok(roots)
}

fn bisect(q: &BPoly, a: f64, b: f64) -> f64 {
    // Bisection in the original parameter; q is the restriction to [a,b].
    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut flo = q.eval(0.0);
    for _ in 0..60 {
        if (hi - lo) * (b - a) <= ROOT_WIDTH {
            break;
        }
        let m = 0.5 * (lo + hi);
        let fm = q.eval(m);
        if fm == 0.0 {
            return a + (b - a) * m;
        }
        if (flo < 0.0) == (fm < 0.0) {
            lo = m;
            flo = fm;
        } else {
            hi = m;
        }
    }
    a + (b - a) * 0.5 * (lo + hi)
}

fn is_tangency(p: &BPoly, t: f64, scale: f64) -> bool {
    let h = 1e-7;
    let a = p.eval((t - h).max(0.0));
    let b = p.eval((t + h).min(1.0));
    // Same sign on both sides, and both clearly nonzero relative to how far
    // the polynomial can move over h: no crossing.
    if a * b > 0.0 {
        return true;
    }
    if a * b < 0.0 {
        return false;
    }
    // One side is exactly zero (flat or boundary); fall back to derivative.
    let d = p.derivative();
    d.eval(t).abs() <= 1e-7 * d.max_abs().max(scale)
}

/// An intersection of a curve piece with the sphere of radius `delta`
/// around `center`.
#[derive(Debug, Clone, Copy)]
pub struct SphereHit {
    pub t: f64,
    pub tangency: bool,
}

/// Squared distance from a piece to a fixed point, as a Bernstein polynomial.
pub fn dist_sq_poly(piece: &PolynomialPiece, point: &[f64]) -> BPoly {
    assert_eq!(piece.dim, point.len());
    let mut acc: Option<BPoly> = None;
    for (c, &p) in piece.coords.iter().zip(point) {
        let d = c.shift(-p);
        let sq = d.mul(&d);
        acc = Some(match acc {
            Some(a) => a.add(&sq),
            None => sq,
        });
    }
    acc.unwrap()
}

/// Parameters where the piece meets the sphere |x - center| = delta.
pub fn curve_sphere_intersections(
    piece: &PolynomialPiece,
    center: &[f64],
    delta: f64,
) -> Result<Vec<SphereHit>> {
    let g = dist_sq_poly(piece, center).shift(-delta * delta);
    match isolate_roots(&g) {
        Ok(roots) => Ok(roots
            .into_iter()
            .map(|r| SphereHit {
                t: r.t,
                tangency: r.tangency,
            })
            .collect()),
        Err(Error::IdenticallyZero) => Err(Error::WholeArcAtDistance),
        Err(e) => Err(e),
    }
}

/// Largest distance from any point of the curve to a fixed point, computed
/// exactly from the stationary points of the squared distance per piece.
pub fn max_dist_to_point(curve: &crate::curve::PiecewiseCurve, p: &[f64]) -> f64 {
    curve
        .pieces
        .iter()
        .map(|piece| {
            let d = dist_sq_poly(piece, p);
            let mut best = d.eval(0.0).max(d.eval(1.0));
            if let Ok(roots) = isolate_roots(&d.derivative()) {
                for r in roots {
                    best = best.max(d.eval(r.t));
                }
            }
            best
        })
        .fold(0.0f64, f64::max)
        .sqrt()
}

/// The squared-distance surface F(u,v) = |gamma1(u) - gamma2(v)|^2 between
/// two pieces, as a tensor Bernstein polynomial of bidegree (2k1, 2k2).
pub fn cross_dist_sq(p1: &PolynomialPiece, p2: &PolynomialPiece) -> BPoly2 {
    assert_eq!(p1.dim, p2.dim);
    let k1 = p1.degree();
    let k2 = p2.degree();
    let mut acc = BPoly2::zero(2 * k1, 2 * k2);
    let cols = k2 + 1;
    for j in 0..p1.dim {
        // X_j(u) - Y_j(v) at bidegree (k1, k2): coefficient (a,b) = x_a - y_b.
        let mut c = vec![0.0; (k1 + 1) * cols];
        for a in 0..=k1 {
            for b in 0..=k2 {
                c[a * cols + b] = p1.coords[j].c[a] - p2.coords[j].c[b];
            }
        }
        let diff = BPoly2::new(k1, k2, c);
        acc.add_assign(&diff.mul(&diff));
    }
    acc
}

/// A solution of a bivariate polynomial system on [0,1]^2.
#[derive(Debug, Clone, Copy)]
pub struct PlanarSolution {
    pub u: f64,
    pub v: f64,
    pub residual: f64,
    /// Set when the solution stands in for a positive-dimensional component
    /// (a whole curve of solutions collapsed to one representative).
    pub positive_dimensional: bool,
}

struct SystemCtx<'a> {
    p: &'a BPoly2,
    q: &'a BPoly2,
    pu: BPoly2,
    pv: BPoly2,
    qu: BPoly2,
    qv: BPoly2,
    scale: f64,
}

impl<'a> SystemCtx<'a> {
    fn new(p: &'a BPoly2, q: &'a BPoly2) -> Self {
        let scale = p.max_abs().max(q.max_abs()).max(1e-300);
        SystemCtx {
            pu: p.du(),
            pv: p.dv(),
            qu: q.du(),
            qv: q.dv(),
            p,
            q,
            scale,
        }
    }

    fn residual(&self, u: f64, v: f64) -> f64 {
        self.p.eval(u, v).abs().max(self.q.eval(u, v).abs())
    }

    fn newton(&self, mut u: f64, mut v: f64) -> Option<(f64, f64)> {
        for _ in 0..60 {
            let f = self.p.eval(u, v);
            let g = self.q.eval(u, v);
            let a = self.pu.eval(u, v);
            let b = self.pv.eval(u, v);
            let c = self.qu.eval(u, v);
            let d = self.qv.eval(u, v);
            let det = a * d - b * c;
            if det.abs() < 1e-14 * self.scale * self.scale {
                return self.gradient_fallback(u, v);
            }
            let du = (f * d - g * b) / det;
            let dv = (a * g - c * f) / det;
            u -= du;
            v -= dv;
            if !u.is_finite() || !v.is_finite() || !(-0.5..=1.5).contains(&u) || !(-0.5..=1.5).contains(&v)
            {
                return None;
            }
            if du.abs().max(dv.abs()) < 1e-15 {
                break;
            }
        }
        Some((u, v))
    }

    /// Alternating scalar Newton along each equation's gradient. Converges
    /// onto positive-dimensional solution sets where the Jacobian is singular.
    fn gradient_fallback(&self, mut u: f64, mut v: f64) -> Option<(f64, f64)> {
        for _ in 0..200 {
            let mut moved = 0.0f64;
            for (h, hu, hv) in [(self.p, &self.pu, &self.pv), (self.q, &self.qu, &self.qv)] {
                let f = h.eval(u, v);
                let gu = hu.eval(u, v);
                let gv = hv.eval(u, v);
                let n2 = gu * gu + gv * gv;
                if n2 < 1e-20 * self.scale * self.scale {
                    continue;
                }
                let s = f / n2;
                u -= s * gu;
                v -= s * gv;
                moved = moved.max((s * gu).abs().max((s * gv).abs()));
            }
            if !u.is_finite() || !v.is_finite() || !(-0.5..=1.5).contains(&u) || !(-0.5..=1.5).contains(&v)
            {
                return None;
            }
            if moved < 1e-15 {
                break;
            }
        }
        Some((u, v))
    }
}

#[derive(Clone, Copy)]
struct GridBox {
    i: u32,
    j: u32,
}

/// Solves P = Q = 0 on the unit square.
///
/// Isolated roots are polished with Newton; solution components of positive
/// dimension are reported through a single representative each. Fails with
/// `IdenticallyZero` if either polynomial vanishes identically and with
/// `ClusterUnresolved` if a surviving cluster cannot be polished to the
/// residual target.
pub fn solve_system(p: &BPoly2, q: &BPoly2) -> Result<Vec<PlanarSolution>> {
    let scale = p.max_abs().max(q.max_abs());
    if p.max_abs() <= 1e-300 || q.max_abs() <= 1e-300 {
        return Err(Error::IdenticallyZero);
    }
    let ctx = SystemCtx::new(p, q);
    let tol = 1e-14 * scale;

    const DEPTH: u32 = 10; // boxes of side 2^-10
    let n = 1u32 << DEPTH;
    let mut boxes: Vec<GridBox> = Vec::new();
    // (i, j, depth) with polynomials restricted to the box.
    let mut stack: Vec<(u32, u32, u32, BPoly2, BPoly2)> = vec![(0, 0, 0, p.clone(), q.clone())];
    while let Some((i, j, d, pr, qr)) = stack.pop() {
        let (plo, phi) = pr.coeff_range();
        if plo > tol || phi < -tol {
            continue;
        }
        let (qlo, qhi) = qr.coeff_range();
        if qlo > tol || qhi < -tol {
            continue;
        }
        if d == DEPTH {
            boxes.push(GridBox { i, j });
            continue;
        }
        for (di, dj) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let (a0, a1) = (0.5 * di as f64, 0.5 * (di + 1) as f64);
            let (b0, b1) = (0.5 * dj as f64, 0.5 * (dj + 1) as f64);
            stack.push((
                2 * i + di,
                2 * j + dj,
                d + 1,
                pr.restrict(a0, a1, b0, b1),
                qr.restrict(a0, a1, b0, b1),
            ));
        }
    }
    if boxes.is_empty() {
        return Ok(Vec::new());
    }

    let clusters = cluster(&boxes);
    let mut out: Vec<PlanarSolution> = Vec::new();
    for cl in clusters {
        let sols = resolve_cluster(&ctx, &cl, n)?;
        out.extend(sols);
    }
    // Merge representatives that coincide across clusters.
    out.sort_by(|a, b| (a.u, a.v).partial_cmp(&(b.u, b.v)).unwrap());
    out.dedup_by(|a, b| (a.u - b.u).abs() <= CLUSTER_TOL && (a.v - b.v).abs() <= CLUSTER_TOL);
    Ok(out)
}

/// 8-connected components of the surviving grid boxes.
fn cluster(boxes: &[GridBox]) -> Vec<Vec<GridBox>> {
    use std::collections::HashMap;
    let idx: HashMap<(u32, u32), usize> =
        boxes.iter().enumerate().map(|(k, b)| ((b.i, b.j), k)).collect();
    let mut parent: Vec<usize> = (0..boxes.len()).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (k, b) in boxes.iter().enumerate() {
        for di in -1i64..=1 {
            for dj in -1i64..=1 {
                let ni = b.i as i64 + di;
                let nj = b.j as i64 + dj;
                if ni < 0 || nj < 0 {
                    continue;
                }
                if let Some(&m) = idx.get(&(ni as u32, nj as u32)) {
                    let a = find(&mut parent, k);
                    let c = find(&mut parent, m);
                    parent[a] = c;
                }
            }
        }
    }
    let mut groups: HashMap<usize, Vec<GridBox>> = HashMap::new();
    for (k, b) in boxes.iter().enumerate() {
        let r = find(&mut parent, k);
        groups.entry(r).or_default().push(*b);
    }
    groups.into_values().collect()
}

fn resolve_cluster(ctx: &SystemCtx, cl: &[GridBox], n: u32) -> Result<Vec<PlanarSolution>> {
    let h = 1.0 / n as f64;
    let tol = RESIDUAL_REL * ctx.scale;
    // Polish from up to 25 box centers spread across the cluster.
    let step = (cl.len() / 25).max(1);
    let mut points: Vec<(f64, f64)> = Vec::new();
    let mut best_res = f64::INFINITY;
    for b in cl.iter().step_by(step) {
        let u0 = (b.i as f64 + 0.5) * h;
        let v0 = (b.j as f64 + 0.5) * h;
        if let Some((u, v)) = ctx.newton(u0, v0) {
            let uc = u.clamp(0.0, 1.0);
            let vc = v.clamp(0.0, 1.0);
            if (u - uc).abs() > 1e-6 || (v - vc).abs() > 1e-6 {
                continue; // converged outside the square
            }
            let r = ctx.residual(uc, vc);
            best_res = best_res.min(r);
            if r <= tol {
                points.push((uc, vc));
            }
        }
    }
    if points.is_empty() {
        // Nothing converged to the residual target. Compare against the
        // cluster centroid too (flat positive-dimensional sets can defeat
        // Newton), then decide whether the cluster is a near-miss — boxes
        // survive the convex-hull test while the system value stays bounded
        // away from zero along the whole cluster — or truly ambiguous.
        let (mut cu, mut cv) = (0.0, 0.0);
        for b in cl {
            cu += (b.i as f64 + 0.5) * h;
            cv += (b.j as f64 + 0.5) * h;
        }
        cu /= cl.len() as f64;
        cv /= cl.len() as f64;
        let r_c = ctx.residual(cu, cv);
        if r_c <= tol {
            return Ok(vec![PlanarSolution {
                u: cu,
                v: cv,
                residual: r_c,
                positive_dimensional: cl.len() > 4,
            }]);
        }
        let best = best_res.min(r_c);
        if best > 100.0 * tol {
            return Ok(Vec::new()); // clearly no solution in this cluster
        }
        return Err(Error::ClusterUnresolved(best / ctx.scale));
    }
    // Group coincident polished points.
    let mut groups: Vec<(f64, f64, usize)> = Vec::new();
    'outer: for (u, v) in points {
        for g in &mut groups {
            if (g.0 - u).abs() <= CLUSTER_TOL && (g.1 - v).abs() <= CLUSTER_TOL {
                g.2 += 1;
                continue 'outer;
            }
        }
        groups.push((u, v, 1));
    }
    if groups.len() == 1 {
        let (u, v, _) = groups[0];
        return Ok(vec![PlanarSolution {
            u,
            v,
            residual: ctx.residual(u, v),
            positive_dimensional: false,
        }]);
    }
    // Heuristic: several distinct polished points inside one connected box
    // cluster. A cluster hugging a 1-dimensional solution set spans many
    // boxes per polished point; separate isolated roots that merely share a
    // cluster at this resolution do not.
    let span = cl.len() as f64 / groups.len() as f64;
    if span > 8.0 {
        // positive-dimensional: representative nearest the group centroid
        let cu = groups.iter().map(|g| g.0).sum::<f64>() / groups.len() as f64;
        let cv = groups.iter().map(|g| g.1).sum::<f64>() / groups.len() as f64;
        let (u, v, _) = groups
            .iter()
            .cloned()
            .min_by(|a, b| {
                let da = (a.0 - cu).powi(2) + (a.1 - cv).powi(2);
                let db = (b.0 - cu).powi(2) + (b.1 - cv).powi(2);
                da.partial_cmp(&db).unwrap()
            })
            .unwrap();
        return Ok(vec![PlanarSolution {
            u,
            v,
            residual: ctx.residual(u, v),
            positive_dimensional: true,
        }]);
    }
    Ok(groups
        .into_iter()
        .map(|(u, v, _)| PlanarSolution {
            u,
            v,
            residual: ctx.residual(u, v),
            positive_dimensional: false,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernstein::BPoly;

    /// Oracle: dense sign scan finds every sign change of p on [0,1].
    fn sign_scan_roots(p: &BPoly, n: usize) -> Vec<f64> {
        let mut out = Vec::new();
        let mut prev = p.eval(0.0);
        for i in 1..=n {
            let t = i as f64 / n as f64;
            let cur = p.eval(t);
            if prev == 0.0 {
                out.push((i - 1) as f64 / n as f64);
            } else if prev * cur < 0.0 {
                // refine by bisection for the oracle too
                let (mut a, mut b) = ((i - 1) as f64 / n as f64, t);
                for _ in 0..60 {
                    let m = 0.5 * (a + b);
                    if p.eval(a) * p.eval(m) <= 0.0 {
                        b = m;
                    } else {
                        a = m;
                    }
                }
                out.push(0.5 * (a + b));
            }
            prev = cur;
        }
        out
    }

    fn from_monomial(mono: &[f64]) -> BPoly {
        // inverse of to_monomial: b_i = sum_k mono_k * C(i,k)/C(n,k)
        let n = mono.len() - 1;
        let c = (0..=n)
            .map(|i| {
                (0..=i)
                    .map(|k| mono[k] * crate::bernstein::binomial(i, k) / crate::bernstein::binomial(n, k))
                    .sum()
            })
            .collect();
        BPoly::new(c)
    }

    #[test]
    fn isolates_simple_roots() {
        // (t-0.2)(t-0.5)(t-0.9)
        let mono = [
            -0.2 * 0.5 * 0.9,
            0.2 * 0.5 + 0.2 * 0.9 + 0.5 * 0.9,
            -(0.2 + 0.5 + 0.9),
            1.0,
        ];
        let p = from_monomial(&mono);
        let roots = isolate_roots(&p).unwrap();
        let expect = [0.2, 0.5, 0.9];
        assert_eq!(roots.len(), 3);
        for (r, e) in roots.iter().zip(expect) {
            assert!((r.t - e).abs() < 1e-11);
            assert!(!r.tangency);
        }
        let oracle = sign_scan_roots(&p, 10_000);
        assert_eq!(oracle.len(), 3);
        for (r, o) in roots.iter().zip(oracle) {
            assert!((r.t - o).abs() < 1e-9);
        }
    }

    #[test]
    fn flags_double_root_as_tangency() {
        // (t-0.3)^2 (t-0.8)
        let a = from_monomial(&[0.09, -0.6, 1.0]);
        let b = from_monomial(&[-0.8, 1.0]);
        let p = a.mul(&b);
        let roots = isolate_roots(&p).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0].t - 0.3).abs() < 1e-6);
        assert!(roots[0].tangency);
        assert!((roots[1].t - 0.8).abs() < 1e-11);
        assert!(!roots[1].tangency);
    }

    #[test]
    fn endpoint_roots_found() {
        // t(1-t): roots exactly at 0 and 1
        let p = BPoly::new(vec![0.0, 0.5, 0.0]);
        let roots = isolate_roots(&p).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].t.abs() < 1e-11 && (roots[1].t - 1.0).abs() < 1e-11);
    }

    #[test]
    fn zero_poly_rejected() {
        assert!(matches!(
            isolate_roots(&BPoly::new(vec![0.0, 0.0, 0.0])),
            Err(Error::IdenticallyZero)
        ));
    }

    #[test]
    fn sphere_intersections_on_segment() {
        // segment (0,0)->(4,0), unit circle at (2,0): hits at t=0.25 and 0.75
        let piece =
            PolynomialPiece::from_control_points(&[vec![0.0, 0.0], vec![4.0, 0.0]]).unwrap();
        let hits = curve_sphere_intersections(&piece, &[2.0, 0.0], 1.0).unwrap();
        assert_eq!(hits.len(), 2);
        assert!((hits[0].t - 0.25).abs() < 1e-11);
        assert!((hits[1].t - 0.75).abs() < 1e-11);
        // tangent circle
        let hits = curve_sphere_intersections(&piece, &[2.0, 1.0], 1.0).unwrap();
        assert_eq!(hits.len(), 1);
        assert!((hits[0].t - 0.5).abs() < 1e-6);
        assert!(hits[0].tangency);
    }

    #[test]
    fn cross_dist_matches_direct() {
        let p1 = PolynomialPiece::from_control_points(&[
            vec![0.0, 0.0],
            vec![1.0, 2.0],
            vec![2.0, 0.0],
        ])
        .unwrap();
        let p2 =
            PolynomialPiece::from_control_points(&[vec![0.0, 1.0], vec![2.0, 1.0]]).unwrap();
        let f = cross_dist_sq(&p1, &p2);
        for i in 0..=8 {
            for j in 0..=8 {
                let (u, v) = (i as f64 / 8.0, j as f64 / 8.0);
                let d = crate::curve::dist_sq(&p1.eval(u), &p2.eval(v));
                assert!((f.eval(u, v) - d).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn solves_isolated_bivariate_roots() {
        // P = u^2 + v^2 - 0.5, Q = u - v: roots at u=v=0.5
        let u11 = BPoly2::new(1, 1, vec![0.0, 0.0, 1.0, 1.0]);
        let v11 = BPoly2::new(1, 1, vec![0.0, 1.0, 0.0, 1.0]);
        let mut p = u11.mul(&u11);
        p.add_assign(&v11.mul(&v11));
        let p = p.shift(-0.5);
        let q = BPoly2::new(1, 1, vec![0.0, -1.0, 1.0, 0.0]); // u - v
        let sols = solve_system(&p, &q).unwrap();
        assert_eq!(sols.len(), 1);
        assert!((sols[0].u - 0.5).abs() < 1e-10);
        assert!((sols[0].v - 0.5).abs() < 1e-10);
        assert!(!sols[0].positive_dimensional);
    }

    #[test]
    fn solves_two_separate_roots() {
        // P = (u-0.25)(u-0.75) in u only; Q = v - 0.5
        let pu = from_monomial(&[0.25 * 0.75, -1.0, 1.0]);
        let p = BPoly2::new(2, 0, pu.c.clone());
        let q = BPoly2::new(0, 1, vec![-0.5, 0.5]);
        let mut sols = solve_system(&p, &q).unwrap();
        sols.sort_by(|a, b| a.u.partial_cmp(&b.u).unwrap());
        assert_eq!(sols.len(), 2);
        assert!((sols[0].u - 0.25).abs() < 1e-10 && (sols[0].v - 0.5).abs() < 1e-10);
        assert!((sols[1].u - 0.75).abs() < 1e-10 && (sols[1].v - 0.5).abs() < 1e-10);
    }

    #[test]
    fn collapses_positive_dimensional_component() {
        // P = Q = u - v: the whole diagonal solves the system.
        let q = BPoly2::new(1, 1, vec![0.0, -1.0, 1.0, 0.0]);
        let sols = solve_system(&q, &q.clone()).unwrap();
        assert_eq!(sols.len(), 1);
        assert!(sols[0].positive_dimensional);
        assert!((sols[0].u - sols[0].v).abs() < 1e-9);
    }

    #[test]
    fn empty_when_no_roots() {
        let p = BPoly2::new(1, 1, vec![1.0, 1.5, 2.0, 1.2]); // strictly positive
        let q = BPoly2::new(1, 1, vec![0.0, -1.0, 1.0, 0.0]);
        assert!(solve_system(&p, &q).unwrap().is_empty());
    }
}
