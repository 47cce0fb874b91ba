//! Dense real polynomials with Sturm-sequence root counting.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// Polynomial with coefficients in ascending order of degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == S::zero() {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(S::zero());
        }
        Self { coeffs }
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// `alpha^2 + (x - b)^2`.
    pub fn shifted_square(alpha: S, b: S) -> Self {
        Self::new(vec![alpha * alpha + b * b, -(b + b), S::one()])
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> S {
        *self.coeffs.last().unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == S::zero()
    }

    pub fn max_abs(&self) -> S {
        self.coeffs.iter().fold(S::zero(), |m, c| m.max(c.abs()))
    }

    pub fn eval(&self, x: S) -> S {
        self.coeffs.iter().rev().fold(S::zero(), |acc, &c| acc * x + c)
    }

    pub fn scale(&self, k: S) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.degree() == 0 {
            return Self::constant(S::zero());
        }
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * S::from_usize_lossy(k)).collect())
    }

    /// Drops leading coefficients below `tol` in absolute value.
    pub fn trimmed(&self, tol: S) -> Self {
        let mut c = self.coeffs.clone();
        while c.len() > 1 && c.last().unwrap().abs() <= tol {
            c.pop();
        }
        if c.len() == 1 && c[0].abs() <= tol {
            c[0] = S::zero();
        }
        Self::new(c)
    }

    /// Synthetic division by `x - r`: the quotient and the remainder `p(r)`.
    pub fn deflate(&self, r: S) -> (Self, S) {
        let n = self.degree();
        if n == 0 {
            return (Self::constant(S::zero()), self.coeffs[0]);
        }
        let mut q = vec![S::zero(); n];
        let mut acc = self.coeffs[n];
        for k in (0..n).rev() {
            q[k] = acc;
            acc = acc * r + self.coeffs[k];
        }
        (Self::new(q), acc)
    }

    /// Euclidean division `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dn = d.degree();
        let lead = d.leading();
        let mut r = self.coeffs.clone();
        if self.degree() < dn {
            return (Self::constant(S::zero()), self.clone());
        }
        let mut q = vec![S::zero(); self.degree() - dn + 1];
        for k in (0..q.len()).rev() {
            let c = r[k + dn] / lead;
            q[k] = c;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j] - c * dc;
            }
            r[k + dn] = S::zero();
        }
        r.truncate(dn.max(1));
        (Self::new(q), Self::new(r))
    }

    /// Sign of the value at `-inf` (`at_plus = false`) or `+inf`.
    fn sign_at_infinity(&self, at_plus: bool) -> S {
        let s = self.leading().signum();
        if at_plus || self.degree() % 2 == 0 {
            s
        } else {
            -s
        }
    }
}

impl<S: Scalar> Add for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn add(self, o: &Polynomial<S>) -> Polynomial<S> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let get = |p: &Polynomial<S>, k: usize| p.coeffs.get(k).copied().unwrap_or(S::zero());
        Polynomial::new((0..n).map(|k| get(self, k) + get(o, k)).collect())
    }
}

impl<S: Scalar> Sub for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn sub(self, o: &Polynomial<S>) -> Polynomial<S> {
        self + &(-o)
    }
}

impl<S: Scalar> Neg for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn neg(self) -> Polynomial<S> {
        self.scale(-S::one())
    }
}

impl<S: Scalar> Mul for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn mul(self, o: &Polynomial<S>) -> Polynomial<S> {
        let mut c = vec![S::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                c[i + j] = c[i + j] + a * b;
            }
        }
        Polynomial::new(c)
    }
}

impl<S: Scalar> fmt::Display for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.coeffs.iter().enumerate().rev().map(|(k, c)| format!("{c:+} x^{k}")).collect();
        write!(f, "{}", terms.join(" "))
    }
}

/// Sturm chain of a polynomial, each member normalised to unit max-norm.
///
/// Remainders whose coefficients all fall below `rel_tol` (relative to the
/// dividend) are treated as zero, which ends the chain at the numerical gcd.
#[derive(Debug, Clone)]
pub struct SturmChain<S> {
    chain: Vec<Polynomial<S>>,
}

fn normalised<S: Scalar>(p: &Polynomial<S>) -> Polynomial<S> {
    let m = p.max_abs();
    if m > S::zero() {
        p.scale(m.recip())
    } else {
        p.clone()
    }
}

impl<S: Scalar> SturmChain<S> {
    pub fn new(p: &Polynomial<S>, rel_tol: S) -> Self {
        let mut chain = vec![normalised(p)];
        if p.degree() == 0 {
            return Self { chain };
        }
        chain.push(normalised(&p.derivative()));
        loop {
            let n = chain.len();
            if chain[n - 1].degree() == 0 {
                break;
            }
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            let r = r.trimmed(rel_tol);
            if r.is_zero() {
                break;
            }
            chain.push(normalised(&-&r));
        }
        Self { chain }
    }

    fn variations(&self, signs: impl Iterator<Item = S>) -> usize {
        let mut last = S::zero();
        let mut count = 0;
        for s in signs {
            if s == S::zero() {
                continue;
            }
            if last != S::zero() && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn variations_at(&self, x: S) -> usize {
        self.variations(self.chain.iter().map(|p| p.eval(x).signum()))
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: S, hi: S) -> usize {
        self.variations_at(lo).saturating_sub(self.variations_at(hi))
    }

    /// Number of distinct real roots on the whole line.
    pub fn count_real(&self) -> usize {
        let lo = self.variations(self.chain.iter().map(|p| p.sign_at_infinity(false)));
        let hi = self.variations(self.chain.iter().map(|p| p.sign_at_infinity(true)));
        lo.saturating_sub(hi)
    }

    /// Isolates the distinct real roots in `(lo, hi]` by bisection down to
    /// width `tol`; returns their midpoints in increasing order.
    pub fn isolate(&self, lo: S, hi: S, tol: S) -> Vec<S> {
        let mut out = Vec::new();
        self.isolate_into(lo, hi, tol, 0, &mut out);
        out
    }

    fn isolate_into(&self, lo: S, hi: S, tol: S, depth: u32, out: &mut Vec<S>) {
        let k = self.count(lo, hi);
        if k == 0 {
            return;
        }
        if hi - lo <= tol || depth > 200 {
            out.push((lo + hi) * S::lit(0.5));
            return;
        }
        let mid = (lo + hi) * S::lit(0.5);
        self.isolate_into(lo, mid, tol, depth + 1, out);
        self.isolate_into(mid, hi, tol, depth + 1, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_roots(roots: &[f64]) -> Polynomial<f64> {
        roots.iter().fold(Polynomial::constant(1.0), |p, &r| &p * &Polynomial::new(vec![-r, 1.0]))
    }

    #[test]
    fn arithmetic() {
        let p = Polynomial::new(vec![1.0, 2.0, 3.0]);
        let q = Polynomial::new(vec![-1.0, 1.0]);
        assert_eq!((&p * &q).coeffs(), &[-1.0, -1.0, -1.0, 3.0]);
        assert_eq!(p.eval(2.0), 17.0);
        assert_eq!(p.derivative().coeffs(), &[2.0, 6.0]);
        let (quo, rem) = (&p * &q).div_rem(&q);
        assert_eq!(quo, p);
        assert!(rem.is_zero());
        let (quo, r) = p.deflate(1.0);
        assert_eq!(r, 6.0);
        assert_eq!(quo.coeffs(), &[5.0, 3.0]);
        assert_eq!((&p - &p).degree(), 0);
    }

    #[test]
    fn sturm_counts_distinct_roots() {
        let p = from_roots(&[-2.0, -0.5, 0.25, 3.0]);
        let s = SturmChain::new(&p, 1e-12);
        assert_eq!(s.count(-1.0, 1.0), 2);
        assert_eq!(s.count(-10.0, 10.0), 4);
        assert_eq!(s.count_real(), 4);
        let roots = s.isolate(-10.0, 10.0, 1e-13);
        for (r, want) in roots.iter().zip([-2.0, -0.5, 0.25, 3.0]) {
            assert!((r - want).abs() < 1e-12, "{roots:?}");
        }
        // x^2 + 1 has none; (x - 1)^2 (x + 1) has two distinct
        let c = Polynomial::new(vec![1.0, 0.0, 1.0]);
        assert_eq!(SturmChain::new(&c, 1e-12).count_real(), 0);
        let d = from_roots(&[1.0, 1.0, -1.0]);
        assert_eq!(SturmChain::new(&d, 1e-12).count_real(), 2);
    }

    #[test]
    fn sturm_against_eigenvalues() {
        // companion-matrix eigenvalues as an independent oracle
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let deg = rng.gen_range(2..8);
            let c: Vec<f64> = (0..deg).map(|_| rng.gen_range(-3.0..3.0)).chain([1.0]).collect();
            let p = Polynomial::new(c.clone());
            let m = nalgebra::DMatrix::from_fn(deg, deg, |i, j| {
                if j == deg - 1 {
                    -c[i]
                } else if i == j + 1 {
                    1.0
                } else {
                    0.0
                }
            });
            let eig = m.complex_eigenvalues();
            let real: Vec<f64> = eig.iter().filter(|z| z.im.abs() < 1e-9).map(|z| z.re).collect();
            let s = SturmChain::new(&p, 1e-13);
            assert_eq!(s.count_real(), real.len(), "{p}");
            let inside = real.iter().filter(|&&r| r > -1.0 && r <= 1.0).count();
            assert_eq!(s.count(-1.0, 1.0), inside, "{p}");
        }
    }
}
