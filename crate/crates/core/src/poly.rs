//! Dense univariate polynomials with exact coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// `coeffs[i]` is the coefficient of `x^i`; trailing zeros are trimmed so the
/// zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `x`
    pub fn identity() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_int(i as i64))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut c = vec![T::zero()];
        c.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| a.clone() / T::from_int(i as i64 + 1)),
        );
        Self::new(c)
    }

    pub fn integrate(&self, lo: &T, hi: &T) -> T {
        let f = self.antiderivative();
        f.eval(hi) - f.eval(lo)
    }

    /// `x -> p(x + shift)`
    pub fn shift(&self, shift: &T) -> Self {
        let lin = Self::new(vec![shift.clone(), T::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * &lin) + &Self::constant(c.clone()))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(T::one()), |acc, _| &acc * self)
    }

    /// Unique polynomial of degree `< nodes.len()` through the given values
    /// (Newton divided differences). Nodes must be distinct.
    pub fn interpolate(nodes: &[T], values: &[T]) -> Self {
        assert_eq!(nodes.len(), values.len());
        let m = nodes.len();
        let mut dd = values.to_vec();
        for j in 1..m {
            for i in (j..m).rev() {
                dd[i] = (dd[i].clone() - dd[i - 1].clone())
                    / (nodes[i].clone() - nodes[i - j].clone());
            }
        }
        let mut result = Self::zero();
        for i in (0..m).rev() {
            let lin = Self::new(vec![-nodes[i].clone(), T::one()]);
            result = &(&result * &lin) + &Self::constant(dd[i].clone());
        }
        result
    }

    /// Remainder of division by a nonzero divisor.
    pub fn rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.leading();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let f = r.last().unwrap().clone() / lead.clone();
            for (i, c) in divisor.coeffs.iter().enumerate() {
                r[i + shift] = r[i + shift].clone() - f.clone() * c.clone();
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Self::new(r)
    }

    fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone(), self.derivative()];
        while !seq.last().unwrap().is_zero() {
            let n = seq.len();
            let r = -&seq[n - 2].rem(&seq[n - 1]);
            seq.push(r);
        }
        seq.pop();
        seq
    }

    fn sign_changes(seq: &[Self], x: &T) -> usize {
        let signs: Vec<T> = seq
            .iter()
            .map(|p| p.eval(x).signum())
            .filter(|s| !s.is_zero())
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count_roots(&self, lo: &T, hi: &T) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let seq = self.sturm_sequence();
        Self::sign_changes(&seq, lo).saturating_sub(Self::sign_changes(&seq, hi))
    }

    /// Rational points within `width` of every distinct root in the open
    /// interval `(lo, hi)`; exact where a root is found exactly.
    pub fn approximate_roots(&self, lo: &T, hi: &T, width: &T) -> Vec<T> {
        if self.is_zero() || self.degree() == Some(0) {
            return Vec::new();
        }
        if self.degree() == Some(1) {
            let x = -self.coeffs[0].clone() / self.coeffs[1].clone();
            return if &x > lo && &x < hi { vec![x] } else { Vec::new() };
        }
        let seq = self.sturm_sequence();
        let mut out = Vec::new();
        let mut stack = vec![(lo.clone(), hi.clone())];
        while let Some((a, b)) = stack.pop() {
            let count = Self::sign_changes(&seq, &a).saturating_sub(Self::sign_changes(&seq, &b));
            if count == 0 {
                continue;
            }
            if self.eval(&b).is_zero() && &b < hi {
                out.push(b.clone());
                if count == 1 {
                    continue;
                }
            }
            if count == 1 && b.clone() - a.clone() <= *width {
                out.push((a + b) * T::half());
                continue;
            }
            let mid = (a.clone() + b.clone()) * T::half();
            stack.push((mid.clone(), b));
            stack.push((a, mid));
        }
        out.sort();
        out.dedup();
        out
    }
}

impl<T: Scalar> Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                    let b = rhs.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                    a + b
                })
                .collect(),
        )
    }
}

impl<T: Scalar> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Scalar> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: Self) -> Polynomial<T> {
        self + &(-rhs)
    }
}

impl<T: Scalar> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: Self) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut c = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(c)
    }
}
