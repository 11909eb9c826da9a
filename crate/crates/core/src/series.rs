//! Power series in `q` truncated at a fixed order.
//!
//! All factor operations work in place and touch coefficients in an order
//! that reads only not-yet-updated entries, so each product step costs one
//! pass over the series.

use rayon::prelude::*;

use crate::poly::MarkerPolynomial;
use crate::ring::{Field, Ring, Semiring};

/// Below this step size the blocked parallel pass is not worth scheduling.
const PARALLEL_MIN_STEP: usize = 48;

/// `sum_{m=0}^{order} c_m q^m`; everything above `q^order` is discarded.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<R> {
    coeffs: Vec<R>,
}

impl<R: Semiring> TruncatedSeries<R> {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![R::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = R::one();
        s
    }

    /// Builds a series from leading coefficients, padding or truncating to `order`.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<R>) -> Self {
        coeffs.resize(order + 1, R::zero());
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, m: usize) -> &R {
        &self.coeffs[m]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Truncated product. The result has the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = Self::zero(order);
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] += &a.mul_ref(b);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = Self::from_coeffs(order, self.coeffs[..=order].to_vec());
        for (dst, src) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *dst += src;
        }
        out
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &R) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a.mul_ref(c)).collect(),
        }
    }

    /// Multiplies by `1 + c q^step`.
    pub fn mul_one_plus(&mut self, step: usize, c: &R) {
        assert!(step > 0);
        for m in (step..self.coeffs.len()).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(m);
            let term = lo[m - step].mul_ref(c);
            hi[0] += &term;
        }
    }

    /// Multiplies by `1 + q^step`.
    pub fn mul_one_plus_q(&mut self, step: usize) {
        assert!(step > 0);
        for m in (step..self.coeffs.len()).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(m);
            hi[0] += &lo[m - step];
        }
    }

    /// Multiplies by `1 / (1 - c q^step)`.
    pub fn mul_inv_one_minus(&mut self, step: usize, c: &R) {
        assert!(step > 0);
        for m in step..self.coeffs.len() {
            let (lo, hi) = self.coeffs.split_at_mut(m);
            let term = lo[m - step].mul_ref(c);
            hi[0] += &term;
        }
    }

    /// Multiplies by `1 / (1 - q^step)`.
    pub fn mul_inv_one_minus_q(&mut self, step: usize) {
        assert!(step > 0);
        for m in step..self.coeffs.len() {
            let (lo, hi) = self.coeffs.split_at_mut(m);
            hi[0] += &lo[m - step];
        }
    }

    /// Substitutes `q -> q^k`, keeping the same order.
    pub fn dilate(&self, k: usize) -> Self {
        assert!(k > 0);
        let mut out = Self::zero(self.order());
        for (m, c) in self.coeffs.iter().enumerate() {
            if m * k > self.order() {
                break;
            }
            out.coeffs[m * k] = c.clone();
        }
        out
    }

    /// Applies `f` to every coefficient, changing the ring.
    pub fn map<S: Semiring>(&self, f: impl Fn(&R) -> S) -> TruncatedSeries<S> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl<R: Ring> TruncatedSeries<R> {
    /// Multiplies by `1 - c q^step`.
    pub fn mul_one_minus(&mut self, step: usize, c: &R) {
        assert!(step > 0);
        for m in (step..self.coeffs.len()).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(m);
            let term = lo[m - step].mul_ref(c);
            hi[0] -= &term;
        }
    }

    /// Multiplies by `1 - q^step`.
    pub fn mul_one_minus_q(&mut self, step: usize) {
        assert!(step > 0);
        for m in (step..self.coeffs.len()).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(m);
            hi[0] -= &lo[m - step];
        }
    }
}

impl<R: Field> TruncatedSeries<R> {
    /// Formal logarithm. Requires constant term one.
    pub fn log(&self) -> Self {
        assert!(self.coeffs[0].is_one(), "log needs constant term 1");
        let order = self.order();
        let mut g = Self::zero(order);
        // m f_m = sum_{k=1}^{m} k g_k f_{m-k}
        for m in 1..=order {
            let mut acc = R::zero();
            for k in 1..m {
                let term = R::from_i64(k as i64)
                    .mul_ref(&g.coeffs[k])
                    .mul_ref(&self.coeffs[m - k]);
                acc += &term;
            }
            let mut gm = self.coeffs[m].clone();
            gm -= &acc.div_int(m as i64);
            g.coeffs[m] = gm;
        }
        g
    }

    /// Formal exponential. Requires constant term zero.
    pub fn exp(&self) -> Self {
        assert!(self.coeffs[0].is_zero(), "exp needs constant term 0");
        let order = self.order();
        let mut f = Self::one(order);
        for m in 1..=order {
            let mut acc = R::zero();
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                let term = R::from_i64(k as i64)
                    .mul_ref(&self.coeffs[k])
                    .mul_ref(&f.coeffs[m - k]);
                acc += &term;
            }
            f.coeffs[m] = acc.div_int(m as i64);
        }
        f
    }
}

impl<R> TruncatedSeries<MarkerPolynomial<R>>
where
    R: Semiring + Send + Sync,
{
    /// Multiplies by `1 + X^power q^step` where `X` is the marker variable.
    ///
    /// Coefficients are processed in blocks of `step` from the top down; all
    /// reads within a block hit the (still untouched) block below it, so large
    /// steps are updated in parallel with a fixed per-element order.
    pub fn mul_one_plus_marked(&mut self, step: usize, power: usize) {
        assert!(step > 0);
        let len = self.coeffs.len();
        if step >= PARALLEL_MIN_STEP {
            let mut hi_end = len;
            while hi_end > step {
                let block_start = (hi_end - step).max(step);
                let (lo, hi) = self.coeffs.split_at_mut(block_start);
                let src = &lo[block_start - step..];
                hi[..hi_end - block_start]
                    .par_iter_mut()
                    .zip(src.par_iter())
                    .for_each(|(dst, s)| dst.add_shifted(s, power));
                hi_end = block_start;
            }
        } else {
            for m in (step..len).rev() {
                let (lo, hi) = self.coeffs.split_at_mut(m);
                hi[0].add_shifted(&lo[m - step], power);
            }
        }
    }

    /// Multiplies by `1 / (1 - X^power q^step)`.
    pub fn mul_inv_one_minus_marked(&mut self, step: usize, power: usize) {
        assert!(step > 0);
        for m in step..self.coeffs.len() {
            let (lo, hi) = self.coeffs.split_at_mut(m);
            hi[0].add_shifted(&lo[m - step], power);
        }
    }

    /// Multiplies by `1 + X^power q^step / (1 - q^step)`, a series with only
    /// nonnegative coefficients.
    pub fn mul_one_plus_marked_geometric(&mut self, step: usize, power: usize) {
        assert!(step > 0);
        let len = self.coeffs.len();
        // tail_m = sum_{i >= 1} c_{m - i*step}, accumulated upward
        let mut tail: Vec<MarkerPolynomial<R>> = vec![MarkerPolynomial::new(); len];
        for m in step..len {
            let (lo, hi) = tail.split_at_mut(m);
            hi[0] = lo[m - step].clone();
            hi[0].add_shifted(&self.coeffs[m - step], 0);
        }
        for (dst, t) in self.coeffs.iter_mut().zip(&tail).skip(step) {
            dst.add_shifted(t, power);
        }
    }

    /// Evaluates every coefficient at `x`, giving a scalar series.
    pub fn specialize(&self, x: &R) -> TruncatedSeries<R> {
        self.map(|p| p.eval(x))
    }
}
