//! Dense polynomials in a single marker variable.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, SubAssign};

use num_traits::{One, Zero};

use crate::ring::{Field, Ring, Semiring};

/// A dense polynomial `c_0 + c_1 X + ... + c_d X^d` over a coefficient ring.
///
/// Trailing zero coefficients are never stored, so the zero polynomial has
/// an empty coefficient vector and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MarkerPolynomial<R> {
    coeffs: Vec<R>,
}

impl<R: Semiring> MarkerPolynomial<R> {
    pub fn new() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * X^degree`.
    pub fn monomial(c: R, degree: usize) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        let mut coeffs = vec![R::zero(); degree + 1];
        coeffs[degree] = c;
        Self { coeffs }
    }

    /// The marker variable itself.
    pub fn x() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `X^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// `self += other * X^shift`, without allocating per coefficient.
    pub fn add_shifted(&mut self, other: &Self, shift: usize) {
        if other.coeffs.is_empty() {
            return;
        }
        let needed = other.coeffs.len() + shift;
        if self.coeffs.len() < needed {
            self.coeffs.resize(needed, R::zero());
        }
        for (dst, src) in self.coeffs[shift..].iter_mut().zip(&other.coeffs) {
            *dst += src;
        }
        self.trim();
    }

    /// `self * X^k`.
    pub fn shifted(&self, k: usize) -> Self {
        if self.coeffs.is_empty() {
            return Self::new();
        }
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    /// Schoolbook product; zero coefficients of `self` are skipped.
    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &a.mul_ref(b);
            }
        }
        Self::from_coeffs(out)
    }

    /// Horner evaluation at `x`.
    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x);
            acc += c;
        }
        acc
    }

    /// Sum of the coefficients, i.e. the value at `X = 1`.
    pub fn coefficient_sum(&self) -> R {
        let mut acc = R::zero();
        for c in &self.coeffs {
            acc += c;
        }
        acc
    }

    /// Applies `f` to every coefficient, changing the ring.
    pub fn map<S: Semiring>(&self, f: impl Fn(&R) -> S) -> MarkerPolynomial<S> {
        MarkerPolynomial::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

impl<R: Ring> MarkerPolynomial<R> {
    pub fn sub_shifted(&mut self, other: &Self, shift: usize) {
        if other.coeffs.is_empty() {
            return;
        }
        let needed = other.coeffs.len() + shift;
        if self.coeffs.len() < needed {
            self.coeffs.resize(needed, R::zero());
        }
        for (dst, src) in self.coeffs[shift..].iter_mut().zip(&other.coeffs) {
            *dst -= src;
        }
        self.trim();
    }

    /// Re-expands `p(X)` as a polynomial in `Y = X - a`, i.e. returns `q`
    /// with `q(Y) = p(Y + a)`.
    ///
    /// With `a = -1` this converts a polynomial in `U = T - 1` to the `T` basis.
    pub fn compose_shift(&self, a: &R) -> Self {
        // Horner in the shifted variable: q = (...(c_d (Y + a) + c_{d-1})(Y + a) + ...)
        let mut acc: Vec<R> = Vec::with_capacity(self.coeffs.len());
        for c in self.coeffs.iter().rev() {
            // acc <- acc * (Y + a)
            acc.push(R::zero());
            for k in (0..acc.len()).rev() {
                let lower = if k > 0 { acc[k - 1].clone() } else { R::zero() };
                let scaled = acc[k].mul_ref(a);
                acc[k] = scaled;
                acc[k] += &lower;
            }
            acc[0] += c;
        }
        Self::from_coeffs(acc)
    }
}

impl<R: Field> MarkerPolynomial<R> {
    pub fn div_int(&self, d: i64) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.div_int(d)).collect())
    }
}

impl<R: Semiring> Default for MarkerPolynomial<R> {
    fn default() -> Self {
        Self::new()
    }
}

impl<R: Semiring + fmt::Display> fmt::Display for MarkerPolynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})X")?,
                _ => write!(f, "({c})X^{k}")?,
            }
        }
        Ok(())
    }
}

impl<R: Semiring> fmt::Debug for MarkerPolynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

impl<R: Semiring> Add for MarkerPolynomial<R> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.add_shifted(&rhs, 0);
        self
    }
}

impl<'a, R: Semiring> AddAssign<&'a MarkerPolynomial<R>> for MarkerPolynomial<R> {
    fn add_assign(&mut self, rhs: &'a Self) {
        self.add_shifted(rhs, 0);
    }
}

impl<'a, R: Ring> SubAssign<&'a MarkerPolynomial<R>> for MarkerPolynomial<R> {
    fn sub_assign(&mut self, rhs: &'a Self) {
        self.sub_shifted(rhs, 0);
    }
}

impl<R: Semiring> Mul for MarkerPolynomial<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<R: Ring> Neg for MarkerPolynomial<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<R: Semiring> Zero for MarkerPolynomial<R> {
    fn zero() -> Self {
        Self::new()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<R: Semiring> One for MarkerPolynomial<R> {
    fn one() -> Self {
        Self::constant(R::one())
    }
}

impl<R: Semiring> Semiring for MarkerPolynomial<R> {
    fn mul_ref(&self, other: &Self) -> Self {
        MarkerPolynomial::mul_ref(self, other)
    }
    fn from_u64(v: u64) -> Self {
        Self::constant(R::from_u64(v))
    }
}

impl<R: Ring> Ring for MarkerPolynomial<R> {
    fn from_i64(v: i64) -> Self {
        Self::constant(R::from_i64(v))
    }
}

impl<R: Field> Field for MarkerPolynomial<R> {
    fn div_int(&self, d: i64) -> Self {
        MarkerPolynomial::div_int(self, d)
    }
}
