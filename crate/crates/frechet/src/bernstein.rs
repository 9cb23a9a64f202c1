//! Bernstein-basis polynomials on [0,1], univariate and tensor-product bivariate.
//!
//! Everything downstream (root isolation, the free-space systems, arc length)
//! runs on these. Coefficients are kept in the Bernstein basis throughout; the
//! convex-hull property of the coefficients is what drives the subdivision
//! solvers.

const MAX_BINOM: usize = 40;

fn binom_table() -> &'static [[f64; MAX_BINOM + 1]; MAX_BINOM + 1] {
    use std::sync::OnceLock;
    static TABLE: OnceLock<Box<[[f64; MAX_BINOM + 1]; MAX_BINOM + 1]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Box::new([[0.0; MAX_BINOM + 1]; MAX_BINOM + 1]);
        for n in 0..=MAX_BINOM {
            t[n][0] = 1.0;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1] + if k <= n - 1 { t[n - 1][k] } else { 0.0 };
            }
        }
        t
    })
}

pub fn binomial(n: usize, k: usize) -> f64 {
    debug_assert!(n <= MAX_BINOM && k <= n);
    binom_table()[n][k]
}

/// Univariate polynomial in Bernstein form on [0,1]; `c` holds degree+1 coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct BPoly {
    pub c: Vec<f64>,
}

impl BPoly {
    pub fn new(c: Vec<f64>) -> Self {
        assert!(!c.is_empty());
        BPoly { c }
    }

    pub fn degree(&self) -> usize {
        self.c.len() - 1
    }

    /// de Casteljau evaluation.
    pub fn eval(&self, t: f64) -> f64 {
        let mut w = self.c.clone();
        let n = w.len();
        for r in 1..n {
            for i in 0..n - r {
                w[i] += t * (w[i + 1] - w[i]);
            }
        }
        w[0]
    }

    pub fn derivative(&self) -> BPoly {
        let n = self.degree();
        if n == 0 {
            return BPoly::new(vec![0.0]);
        }
        let k = n as f64;
        BPoly::new(
            (0..n)
                .map(|i| k * (self.c[i + 1] - self.c[i]))
                .collect(),
        )
    }

    /// Splits at parameter `t` into the polynomials on [0,t] and [t,1],
    /// each reparameterized to [0,1].
    pub fn split(&self, t: f64) -> (BPoly, BPoly) {
        let n = self.c.len();
        let mut w = self.c.clone();
        let mut left = Vec::with_capacity(n);
        let mut right = vec![0.0; n];
        left.push(w[0]);
        right[n - 1] = w[n - 1];
        for r in 1..n {
            for i in 0..n - r {
                w[i] += t * (w[i + 1] - w[i]);
            }
            left.push(w[0]);
            right[n - 1 - r] = w[n - 1 - r];
        }
        (BPoly::new(left), BPoly::new(right))
    }

    /// Restriction to [a,b] ⊆ [0,1], reparameterized to [0,1].
    pub fn restrict(&self, a: f64, b: f64) -> BPoly {
        let right = if a > 0.0 { self.split(a).1 } else { self.clone() };
        if b < 1.0 {
            let local = (b - a) / (1.0 - a);
            right.split(local).0
        } else {
            right
        }
    }

    pub fn elevate_to(&self, target: usize) -> BPoly {
        let n = self.degree();
        assert!(target >= n);
        if target == n {
            return self.clone();
        }
        let r = target - n;
        let mut out = vec![0.0; target + 1];
        for (k, o) in out.iter_mut().enumerate() {
            let lo = k.saturating_sub(r);
            let hi = k.min(n);
            let mut s = 0.0;
            for i in lo..=hi {
                s += binomial(n, i) * binomial(r, k - i) * self.c[i];
            }
            *o = s / binomial(target, k);
        }
        BPoly::new(out)
    }

    pub fn mul(&self, other: &BPoly) -> BPoly {
        let p = self.degree();
        let q = other.degree();
        let mut out = vec![0.0; p + q + 1];
        for (k, o) in out.iter_mut().enumerate() {
            let lo = k.saturating_sub(q);
            let hi = k.min(p);
            let mut s = 0.0;
            for i in lo..=hi {
                s += binomial(p, i) * binomial(q, k - i) * self.c[i] * other.c[k - i];
            }
            *o = s / binomial(p + q, k);
        }
        BPoly::new(out)
    }

    pub fn add(&self, other: &BPoly) -> BPoly {
        let n = self.degree().max(other.degree());
        let a = self.elevate_to(n);
        let b = other.elevate_to(n);
        BPoly::new(a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect())
    }

    pub fn shift(&self, v: f64) -> BPoly {
        BPoly::new(self.c.iter().map(|x| x + v).collect())
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    /// Sign variations of the coefficient sequence, treating |c| <= tol as zero.
    pub fn variations(&self, tol: f64) -> usize {
        let mut count = 0;
        let mut last = 0i32;
        for &x in &self.c {
            let s = if x > tol {
                1
            } else if x < -tol {
                -1
            } else {
                0
            };
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Monomial coefficients (ascending powers). Test-oracle use only.
    pub fn to_monomial(&self) -> Vec<f64> {
        let n = self.degree();
        let mut out = vec![0.0; n + 1];
        for (k, o) in out.iter_mut().enumerate() {
            let mut s = 0.0;
            for i in 0..=k {
                let sign = if (k - i) % 2 == 0 { 1.0 } else { -1.0 };
                s += sign * binomial(n, k) * binomial(k, i) * self.c[i];
            }
            *o = s;
        }
        out
    }
}

/// Tensor-product bivariate Bernstein polynomial on [0,1]^2.
///
/// Coefficient (a,b) multiplies B_a^{nu}(u) B_b^{nv}(v); stored row-major
/// with the v index contiguous.
#[derive(Debug, Clone)]
pub struct BPoly2 {
    pub nu: usize,
    pub nv: usize,
    pub c: Vec<f64>,
}

impl BPoly2 {
    pub fn new(nu: usize, nv: usize, c: Vec<f64>) -> Self {
        assert_eq!(c.len(), (nu + 1) * (nv + 1));
        BPoly2 { nu, nv, c }
    }

    pub fn zero(nu: usize, nv: usize) -> Self {
        BPoly2::new(nu, nv, vec![0.0; (nu + 1) * (nv + 1)])
    }

    #[inline]
    pub fn at(&self, a: usize, b: usize) -> f64 {
        self.c[a * (self.nv + 1) + b]
    }

    pub fn eval(&self, u: f64, v: f64) -> f64 {
        // de Casteljau along v per row, then along u.
        let cols = self.nv + 1;
        let mut row = vec![0.0; self.nu + 1];
        let mut w = vec![0.0; cols];
        for a in 0..=self.nu {
            w.copy_from_slice(&self.c[a * cols..(a + 1) * cols]);
            for r in 1..cols {
                for i in 0..cols - r {
                    w[i] += v * (w[i + 1] - w[i]);
                }
            }
            row[a] = w[0];
        }
        let n = row.len();
        for r in 1..n {
            for i in 0..n - r {
                row[i] += u * (row[i + 1] - row[i]);
            }
        }
        row[0]
    }

    pub fn du(&self) -> BPoly2 {
        if self.nu == 0 {
            return BPoly2::zero(0, self.nv);
        }
        let cols = self.nv + 1;
        let k = self.nu as f64;
        let mut c = vec![0.0; self.nu * cols];
        for a in 0..self.nu {
            for b in 0..cols {
                c[a * cols + b] = k * (self.c[(a + 1) * cols + b] - self.c[a * cols + b]);
            }
        }
        BPoly2::new(self.nu - 1, self.nv, c)
    }

    pub fn dv(&self) -> BPoly2 {
        if self.nv == 0 {
            return BPoly2::zero(self.nu, 0);
        }
        let cols = self.nv + 1;
        let k = self.nv as f64;
        let mut c = vec![0.0; (self.nu + 1) * self.nv];
        for a in 0..=self.nu {
            for b in 0..self.nv {
                c[a * self.nv + b] = k * (self.c[a * cols + b + 1] - self.c[a * cols + b]);
            }
        }
        BPoly2::new(self.nu, self.nv - 1, c)
    }

    /// Restriction to [a0,a1]x[b0,b1], reparameterized to the unit square.
    pub fn restrict(&self, a0: f64, a1: f64, b0: f64, b1: f64) -> BPoly2 {
        let mut out = self.clone();
        if a0 > 0.0 || a1 < 1.0 {
            out = out.restrict_u(a0, a1);
        }
        if b0 > 0.0 || b1 < 1.0 {
            out = out.restrict_v(b0, b1);
        }
        out
    }

    fn restrict_u(&self, a: f64, b: f64) -> BPoly2 {
        let cols = self.nv + 1;
        let mut out = self.clone();
        let mut col = vec![0.0; self.nu + 1];
        for bidx in 0..cols {
            for (a_i, cv) in col.iter_mut().enumerate() {
                *cv = self.c[a_i * cols + bidx];
            }
            let restricted = BPoly::new(col.clone()).restrict(a, b);
            for (a_i, cv) in restricted.c.iter().enumerate() {
                out.c[a_i * cols + bidx] = *cv;
            }
        }
        out
    }

    fn restrict_v(&self, a: f64, b: f64) -> BPoly2 {
        let cols = self.nv + 1;
        let mut out = self.clone();
        for a_i in 0..=self.nu {
            let row = BPoly::new(self.c[a_i * cols..(a_i + 1) * cols].to_vec()).restrict(a, b);
            out.c[a_i * cols..(a_i + 1) * cols].copy_from_slice(&row.c);
        }
        out
    }

    /// The univariate polynomial v -> p(u0, v).
    pub fn section_u(&self, u0: f64) -> BPoly {
        let cols = self.nv + 1;
        let mut rows: Vec<Vec<f64>> = (0..=self.nu)
            .map(|a| self.c[a * cols..(a + 1) * cols].to_vec())
            .collect();
        let n = rows.len();
        for r in 1..n {
            for i in 0..n - r {
                let (head, tail) = rows.split_at_mut(i + 1);
                let lo = &mut head[i];
                let hi = &tail[0];
                for b in 0..cols {
                    lo[b] += u0 * (hi[b] - lo[b]);
                }
            }
        }
        BPoly::new(rows.swap_remove(0))
    }

    /// The univariate polynomial u -> p(u, v0).
    pub fn section_v(&self, v0: f64) -> BPoly {
        let cols = self.nv + 1;
        let c: Vec<f64> = (0..=self.nu)
            .map(|a| BPoly::new(self.c[a * cols..(a + 1) * cols].to_vec()).eval(v0))
            .collect();
        BPoly::new(c)
    }

    pub fn mul(&self, other: &BPoly2) -> BPoly2 {
        let (p1, q1) = (self.nu, self.nv);
        let (p2, q2) = (other.nu, other.nv);
        let nu = p1 + p2;
        let nv = q1 + q2;
        let mut out = BPoly2::zero(nu, nv);
        let cols = nv + 1;
        for a1 in 0..=p1 {
            for a2 in 0..=p2 {
                let wu = binomial(p1, a1) * binomial(p2, a2) / binomial(nu, a1 + a2);
                for b1 in 0..=q1 {
                    let c1 = self.at(a1, b1);
                    if c1 == 0.0 {
                        continue;
                    }
                    for b2 in 0..=q2 {
                        let wv = binomial(q1, b1) * binomial(q2, b2) / binomial(nv, b1 + b2);
                        out.c[(a1 + a2) * cols + (b1 + b2)] += wu * wv * c1 * other.at(a2, b2);
                    }
                }
            }
        }
        out
    }

    pub fn add_assign(&mut self, other: &BPoly2) {
        assert_eq!(self.nu, other.nu);
        assert_eq!(self.nv, other.nv);
        for (a, b) in self.c.iter_mut().zip(&other.c) {
            *a += b;
        }
    }

    pub fn shift(&self, v: f64) -> BPoly2 {
        let mut out = self.clone();
        for c in &mut out.c {
            *c += v;
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    pub fn coeff_range(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &x in &self.c {
            lo = lo.min(x);
            hi = hi.max(x);
        }
        (lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn horner(mono: &[f64], t: f64) -> f64 {
        mono.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    #[test]
    fn eval_matches_monomial_horner() {
        let p = BPoly::new(vec![0.3, -1.2, 2.5, 0.7, -0.1]);
        let mono = p.to_monomial();
        for i in 0..=20 {
            let t = i as f64 / 20.0;
            assert!((p.eval(t) - horner(&mono, t)).abs() < 1e-12);
        }
    }

    #[test]
    fn split_agrees_with_eval() {
        let p = BPoly::new(vec![1.0, -2.0, 0.5, 3.0]);
        let (l, r) = p.split(0.3);
        for i in 0..=10 {
            let s = i as f64 / 10.0;
            assert!((l.eval(s) - p.eval(0.3 * s)).abs() < 1e-12);
            assert!((r.eval(s) - p.eval(0.3 + 0.7 * s)).abs() < 1e-12);
        }
    }

    #[test]
    fn restrict_agrees_with_eval() {
        let p = BPoly::new(vec![1.0, -2.0, 0.5, 3.0, 1.1]);
        let q = p.restrict(0.2, 0.7);
        for i in 0..=10 {
            let s = i as f64 / 10.0;
            assert!((q.eval(s) - p.eval(0.2 + 0.5 * s)).abs() < 1e-12);
        }
    }

    #[test]
    fn product_and_derivative() {
        let p = BPoly::new(vec![1.0, 2.0, -1.0]);
        let q = BPoly::new(vec![0.5, 1.5]);
        let r = p.mul(&q);
        let d = p.derivative();
        for i in 0..=10 {
            let t = i as f64 / 10.0;
            assert!((r.eval(t) - p.eval(t) * q.eval(t)).abs() < 1e-12);
            let h = 1e-6;
            let fd = (p.eval(t + h) - p.eval(t - h)) / (2.0 * h);
            assert!((d.eval(t) - fd).abs() < 1e-5);
        }
    }

    #[test]
    fn bivariate_eval_sections_partials() {
        // p(u,v) = (u - v)^2 + u*v as tensor Bernstein, built by hand.
        let xu = BPoly2::new(1, 0, vec![0.0, 1.0]); // u
        let yv = BPoly2::new(0, 1, vec![0.0, 1.0]); // v
        // u - v at common bidegree (1,1)
        let u11 = BPoly2::new(1, 1, vec![0.0, 0.0, 1.0, 1.0]);
        let v11 = BPoly2::new(1, 1, vec![0.0, 1.0, 0.0, 1.0]);
        let diff = BPoly2::new(1, 1, u11.c.iter().zip(&v11.c).map(|(a, b)| a - b).collect());
        let mut p = diff.mul(&diff);
        let uv = xu.mul(&yv); // bidegree (1,1); elevate to (2,2) by multiplying with one
        let one = BPoly2::new(1, 1, vec![1.0; 4]);
        p.add_assign(&uv.mul(&one));
        let f = |u: f64, v: f64| (u - v) * (u - v) + u * v;
        for i in 0..=5 {
            for j in 0..=5 {
                let (u, v) = (i as f64 / 5.0, j as f64 / 5.0);
                assert!((p.eval(u, v) - f(u, v)).abs() < 1e-12, "eval mismatch");
                assert!((p.section_u(u).eval(v) - f(u, v)).abs() < 1e-12);
                assert!((p.section_v(v).eval(u) - f(u, v)).abs() < 1e-12);
                let du = 2.0 * (u - v) + v;
                let dv = -2.0 * (u - v) + u;
                assert!((p.du().eval(u, v) - du).abs() < 1e-12);
                assert!((p.dv().eval(u, v) - dv).abs() < 1e-12);
            }
        }
        let q = p.restrict(0.25, 0.75, 0.1, 0.9);
        for i in 0..=4 {
            for j in 0..=4 {
                let (s, t) = (i as f64 / 4.0, j as f64 / 4.0);
                let (u, v) = (0.25 + 0.5 * s, 0.1 + 0.8 * t);
                assert!((q.eval(s, t) - f(u, v)).abs() < 1e-12);
            }
        }
    }
}
