//! Piecewise polynomial curves in R^d with Bernstein control points,
//! plus the JSON interchange format.

use crate::bernstein::BPoly;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// One polynomial piece, parameterized over [0,1].
#[derive(Debug, Clone)]
pub struct PolynomialPiece {
    pub dim: usize,
    /// One Bernstein polynomial per coordinate, all of the same degree.
    pub coords: Vec<BPoly>,
}

impl PolynomialPiece {
    pub fn from_control_points(points: &[Vec<f64>]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidCurve("piece has no control points".into()));
        }
        let dim = points[0].len();
        if dim == 0 {
            return Err(Error::InvalidCurve("zero-dimensional control point".into()));
        }
        for p in points {
            if p.len() != dim {
                return Err(Error::InvalidCurve(
                    "inconsistent control point dimension".into(),
                ));
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidCurve("non-finite control point".into()));
            }
        }
        let coords = (0..dim)
            .map(|j| BPoly::new(points.iter().map(|p| p[j]).collect()))
            .collect();
        Ok(PolynomialPiece { dim, coords })
    }

    pub fn degree(&self) -> usize {
        self.coords[0].degree()
    }

    pub fn eval(&self, t: f64) -> Vec<f64> {
        self.coords.iter().map(|c| c.eval(t)).collect()
    }

    pub fn derivative_at(&self, t: f64) -> Vec<f64> {
        self.coords.iter().map(|c| c.derivative().eval(t)).collect()
    }

    pub fn control_points(&self) -> Vec<Vec<f64>> {
        let n = self.degree();
        (0..=n)
            .map(|i| self.coords.iter().map(|c| c.c[i]).collect())
            .collect()
    }

    /// The piece reparametrized to the sub-interval [a, b].
    pub fn restrict(&self, a: f64, b: f64) -> PolynomialPiece {
        PolynomialPiece {
            dim: self.dim,
            coords: self.coords.iter().map(|c| c.restrict(a, b)).collect(),
        }
    }

    /// Axis-aligned bounding box from the convex-hull property.
    /// Arc length by adaptive Simpson on the speed.
    pub fn arc_length(&self) -> f64 {
        piece_length(self)
    }

    pub fn bbox(&self) -> (Vec<f64>, Vec<f64>) {
        let lo = self
            .coords
            .iter()
            .map(|c| c.c.iter().cloned().fold(f64::INFINITY, f64::min))
            .collect();
        let hi = self
            .coords
            .iter()
            .map(|c| c.c.iter().cloned().fold(f64::NEG_INFINITY, f64::max))
            .collect();
        (lo, hi)
    }
}

/// The norm used for the free space. Only the Euclidean case is supported:
/// the boundary of the free space is algebraic only for p = 2.
#[derive(Debug, Clone, Copy)]
pub struct NormConfig {
    pub p: f64,
}

impl Default for NormConfig {
    fn default() -> Self {
        NormConfig { p: 2.0 }
    }
}

impl NormConfig {
    pub fn validate(&self) -> Result<()> {
        if (self.p - 2.0).abs() > 0.0 {
            return Err(Error::UnsupportedNorm(self.p));
        }
        Ok(())
    }
}

/// A piecewise polynomial curve. The global parameter runs over [0, n]
/// where n is the number of pieces; piece i covers [i, i+1].
#[derive(Debug, Clone)]
pub struct PiecewiseCurve {
    pub dim: usize,
    pub pieces: Vec<PolynomialPiece>,
}

/// How strictly to validate pieces on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Strictness {
    /// Reject non-finite data, dimension mismatches, and C^0 breaks.
    Full,
    /// Same, but allow constant (single-point) pieces. Simplification can
    /// legitimately produce these.
    AllowDegenerate,
}

impl PiecewiseCurve {
    pub fn new(pieces: Vec<PolynomialPiece>) -> Result<Self> {
        Self::build(pieces, Strictness::Full)
    }

    pub(crate) fn new_relaxed(pieces: Vec<PolynomialPiece>) -> Result<Self> {
        Self::build(pieces, Strictness::AllowDegenerate)
    }

    fn build(pieces: Vec<PolynomialPiece>, strict: Strictness) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidCurve("curve has no pieces".into()));
        }
        let dim = pieces[0].dim;
        for p in &pieces {
            if p.dim != dim {
                return Err(Error::InvalidCurve("inconsistent piece dimension".into()));
            }
            if strict == Strictness::Full && p.degree() == 0 {
                return Err(Error::InvalidCurve("constant piece".into()));
            }
        }
        // C^0 continuity at joints, up to 1e-12 (absolute).
        for w in pieces.windows(2) {
            let a = w[0].eval(1.0);
            let b = w[1].eval(0.0);
            let gap = dist(&a, &b);
            if gap > 1e-12 {
                return Err(Error::InvalidCurve(format!(
                    "C0 break at joint: gap {gap:.3e} exceeds 1e-12"
                )));
            }
        }
        Ok(PiecewiseCurve { dim, pieces })
    }

    /// Polyline helper: one linear piece per segment.
    pub fn polyline(points: &[Vec<f64>]) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidCurve("polyline needs >= 2 points".into()));
        }
        let pieces = points
            .windows(2)
            .map(|w| PolynomialPiece::from_control_points(&[w[0].clone(), w[1].clone()]))
            .collect::<Result<Vec<_>>>()?;
        PiecewiseCurve::new(pieces)
    }

    pub fn num_pieces(&self) -> usize {
        self.pieces.len()
    }

    /// Splits global parameter t in [0, n] into (piece index, local parameter).
    pub fn locate(&self, t: f64) -> Result<(usize, f64)> {
        let n = self.pieces.len() as f64;
        if !(0.0..=n).contains(&t) || !t.is_finite() {
            return Err(Error::ParamOutOfRange(t));
        }
        let i = (t.floor() as usize).min(self.pieces.len() - 1);
        Ok((i, t - i as f64))
    }

    pub fn eval(&self, t: f64) -> Result<Vec<f64>> {
        let (i, s) = self.locate(t)?;
        Ok(self.pieces[i].eval(s))
    }

    /// Derivative with respect to the global parameter. At joints, the
    /// right-piece derivative is reported.
    pub fn derivative(&self, t: f64) -> Result<Vec<f64>> {
        let (i, s) = self.locate(t)?;
        Ok(self.pieces[i].derivative_at(s))
    }

    pub fn start(&self) -> Vec<f64> {
        self.pieces[0].eval(0.0)
    }

    pub fn end(&self) -> Vec<f64> {
        self.pieces[self.pieces.len() - 1].eval(1.0)
    }

    /// True if every piece is a single point (within tol).
    pub fn is_point(&self, tol: f64) -> bool {
        let p0 = self.start();
        self.pieces.iter().all(|p| {
            p.control_points()
                .iter()
                .all(|q| dist(q, &p0) <= tol)
        })
    }

    /// Arc length by adaptive Simpson on |gamma'|, piece by piece.
    pub fn arc_length(&self) -> f64 {
        self.pieces.iter().map(piece_length).sum()
    }

    /// True when the two curves have bitwise-identical pieces, which makes
    /// their Fréchet distance exactly zero.
    pub fn same_geometry(&self, other: &PiecewiseCurve) -> bool {
        self.dim == other.dim
            && self.pieces.len() == other.pieces.len()
            && self
                .pieces
                .iter()
                .zip(&other.pieces)
                .all(|(a, b)| {
                    a.coords.len() == b.coords.len()
                        && a.coords.iter().zip(&b.coords).all(|(x, y)| x.c == y.c)
                })
    }

    pub fn max_degree(&self) -> usize {
        self.pieces.iter().map(|p| p.degree()).max().unwrap_or(0)
    }
}

pub fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    dist_sq(a, b).sqrt()
}

fn speed(p: &PolynomialPiece, t: f64) -> f64 {
    p.derivative_at(t).iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub(crate) fn piece_length(p: &PolynomialPiece) -> f64 {
    adaptive_simpson(&|t| speed(p, t), 0.0, 1.0)
}

/// Adaptive Simpson quadrature, relative tolerance 1e-10.
fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), fm)
    }
    fn rec(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        fm: f64,
        whole: f64,
        eps: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (left, flm) = simpson(f, a, fa, m, fm);
        let (right, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * eps {
            left + right + delta / 15.0
        } else {
            rec(f, a, fa, m, fm, flm, left, 0.5 * eps, depth - 1)
                + rec(f, m, fm, b, fb, frm, right, 0.5 * eps, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let (whole, fm) = simpson(f, a, fa, b, fb);
    let eps = 1e-10 * whole.abs().max(1e-3);
    rec(f, a, fa, b, fb, fm, whole, eps, 40)
}

// ---------------------------------------------------------------------------
// JSON interchange format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct PieceJson {
    degree: usize,
    basis: String,
    control_points: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct CurveJson {
    dim: usize,
    pieces: Vec<PieceJson>,
}

impl PiecewiseCurve {
    pub fn from_json(text: &str) -> Result<Self> {
        let cj: CurveJson = serde_json::from_str(text)?;
        let pieces = cj
            .pieces
            .iter()
            .map(|pj| {
                if pj.basis != "bernstein" {
                    return Err(Error::InvalidCurve(format!(
                        "unsupported basis {:?}",
                        pj.basis
                    )));
                }
                if pj.control_points.len() != pj.degree + 1 {
                    return Err(Error::InvalidCurve(format!(
                        "degree {} piece has {} control points",
                        pj.degree,
                        pj.control_points.len()
                    )));
                }
                let p = PolynomialPiece::from_control_points(&pj.control_points)?;
                if p.dim != cj.dim {
                    return Err(Error::InvalidCurve(format!(
                        "piece dimension {} does not match curve dim {}",
                        p.dim, cj.dim
                    )));
                }
                Ok(p)
            })
            .collect::<Result<Vec<_>>>()?;
        PiecewiseCurve::new(pieces)
    }

    pub fn to_json(&self) -> String {
        let cj = CurveJson {
            dim: self.dim,
            pieces: self
                .pieces
                .iter()
                .map(|p| PieceJson {
                    degree: p.degree(),
                    basis: "bernstein".into(),
                    control_points: p.control_points(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&cj).expect("curve serialization cannot fail")
    }

    pub fn read_file(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write_file(&self, path: &std::path::Path) -> Result<()> {
        Ok(std::fs::write(path, self.to_json())?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quadratic_piece() -> PolynomialPiece {
        PolynomialPiece::from_control_points(&[
            vec![0.0, 0.0],
            vec![1.0, 2.0],
            vec![2.0, 0.0],
        ])
        .unwrap()
    }

    #[test]
    fn eval_matches_bezier_formula() {
        let p = quadratic_piece();
        for i in 0..=10 {
            let t = i as f64 / 10.0;
            let b = [(1.0 - t) * (1.0 - t), 2.0 * t * (1.0 - t), t * t];
            let x = b[1] + 2.0 * b[2];
            let y = 2.0 * b[1];
            let q = p.eval(t);
            assert!((q[0] - x).abs() < 1e-12 && (q[1] - y).abs() < 1e-12);
        }
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let p = quadratic_piece();
        for i in 1..10 {
            let t = i as f64 / 10.0;
            let h = 1e-6;
            let a = p.eval(t - h);
            let b = p.eval(t + h);
            let d = p.derivative_at(t);
            for j in 0..2 {
                assert!((d[j] - (b[j] - a[j]) / (2.0 * h)).abs() < 1e-5);
            }
        }
    }

    #[test]
    fn c0_break_rejected() {
        let p1 = PolynomialPiece::from_control_points(&[vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        let p2 = PolynomialPiece::from_control_points(&[vec![1.0, 1e-6], vec![2.0, 0.0]]).unwrap();
        assert!(matches!(
            PiecewiseCurve::new(vec![p1, p2]),
            Err(Error::InvalidCurve(_))
        ));
    }

    #[test]
    fn global_param_and_bounds() {
        let c = PiecewiseCurve::polyline(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0]])
            .unwrap();
        assert_eq!(c.eval(0.5).unwrap(), vec![0.5, 0.0]);
        assert_eq!(c.eval(1.5).unwrap(), vec![1.0, 0.5]);
        assert_eq!(c.eval(2.0).unwrap(), vec![1.0, 1.0]);
        assert!(matches!(c.eval(2.1), Err(Error::ParamOutOfRange(_))));
        assert!(matches!(c.eval(-0.1), Err(Error::ParamOutOfRange(_))));
    }

    #[test]
    fn arc_length_of_known_curves() {
        // straight polyline
        let c = PiecewiseCurve::polyline(&[vec![0.0, 0.0], vec![3.0, 4.0]]).unwrap();
        assert!((c.arc_length() - 5.0).abs() < 1e-9);
        // quadratic y = x^2 over x in [0,1]:
        // length = integral sqrt(1+4x^2) dx = (2*sqrt(5) + asinh(2))/4
        let p = PolynomialPiece::from_control_points(&[
            vec![0.0, 0.0],
            vec![0.5, 0.0],
            vec![1.0, 1.0],
        ])
        .unwrap();
        let c = PiecewiseCurve::new(vec![p]).unwrap();
        let exact = (2.0 * 5.0f64.sqrt() + 2.0f64.asinh()) / 4.0;
        assert!((c.arc_length() - exact).abs() < 1e-9);
    }

    #[test]
    fn json_roundtrip() {
        let c = PiecewiseCurve::new(vec![quadratic_piece()]).unwrap();
        let text = c.to_json();
        let c2 = PiecewiseCurve::from_json(&text).unwrap();
        for i in 0..=10 {
            let t = i as f64 / 10.0;
            assert_eq!(c.eval(t).unwrap(), c2.eval(t).unwrap());
        }
    }

    #[test]
    fn json_rejects_bad_input() {
        let bad = r#"{"dim": 2, "pieces": [{"degree": 2, "basis": "monomial",
            "control_points": [[0,0],[1,1],[2,0]]}]}"#;
        assert!(PiecewiseCurve::from_json(bad).is_err());
        let bad2 = r#"{"dim": 2, "pieces": [{"degree": 1, "basis": "bernstein",
            "control_points": [[0,0],[1,1],[2,0]]}]}"#;
        assert!(PiecewiseCurve::from_json(bad2).is_err());
    }

    #[test]
    fn norm_config_rejects_non_euclidean() {
        assert!(NormConfig { p: 2.0 }.validate().is_ok());
        assert!(matches!(
            NormConfig { p: 1.0 }.validate(),
            Err(Error::UnsupportedNorm(_))
        ));
    }
}
