//! Exact verification of the Nekrasov-Okounkov hook product identity and
//! Han's two-parameter extension, coefficient by coefficient in `q`.
//!
//! The sum side is expanded by enumerating partitions; the product side is
//! built from formal `log`/`exp` of truncated series so that non-integer
//! exponents such as `z - 1` are handled symbolically.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::enumerate_partitions;
use crate::poly::MarkerPolynomial;
use crate::ring::{Ring, Semiring};
use crate::series::TruncatedSeries;

/// Polynomials in `z` with rational coefficients.
pub type ZPoly = MarkerPolynomial<BigRational>;
/// Polynomials in `y` whose coefficients are polynomials in `z`.
pub type YZPoly = MarkerPolynomial<ZPoly>;

pub const MAX_NO_ORDER: usize = 14;
pub const MAX_HAN_ORDER: usize = 10;

/// Outcome of comparing two series coefficient by coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub order: usize,
    /// `matches[m]` is true when the `q^m` coefficients agree exactly.
    pub matches: Vec<bool>,
    /// Both sides of the first disagreeing coefficient, rendered as text.
    pub first_discrepancy: Option<(usize, String, String)>,
}

impl IdentityReport {
    fn compare<R: Semiring + std::fmt::Debug>(lhs: &TruncatedSeries<R>, rhs: &TruncatedSeries<R>) -> Self {
        let order = lhs.order().min(rhs.order());
        let mut matches = Vec::with_capacity(order + 1);
        let mut first_discrepancy = None;
        for m in 0..=order {
            let ok = lhs.coeff(m) == rhs.coeff(m);
            if !ok && first_discrepancy.is_none() {
                first_discrepancy =
                    Some((m, format!("{:?}", lhs.coeff(m)), format!("{:?}", rhs.coeff(m))));
            }
            matches.push(ok);
        }
        Self {
            order,
            matches,
            first_discrepancy,
        }
    }

    pub fn holds(&self) -> bool {
        self.first_discrepancy.is_none()
    }
}

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn zpoly_linear(c0: BigRational, c1: BigRational) -> ZPoly {
    MarkerPolynomial::from_coeffs(vec![c0, c1])
}

/// `sum_{|lambda| <= order} q^|lambda| prod_h (1 - z/h^2)`.
pub fn nekrasov_okounkov_sum_side(order: usize) -> TruncatedSeries<ZPoly> {
    let mut out = TruncatedSeries::<ZPoly>::zero(order);
    let mut coeffs = out.clone().into_coeffs();
    for (n, slot) in coeffs.iter_mut().enumerate() {
        for lambda in enumerate_partitions(n) {
            let mut prod = ZPoly::one();
            for h in lambda.hook_lengths().values() {
                let h2 = (*h as i64) * (*h as i64);
                prod = prod.mul_ref(&zpoly_linear(BigRational::one(), -rat(1, h2)));
            }
            *slot += &prod;
        }
    }
    out = TruncatedSeries::from_coeffs(order, coeffs);
    out
}

/// `prod_{n >= 1} (1 - q^n)^{z - 1}` via `exp((z - 1) log prod (1 - q^n))`.
pub fn nekrasov_okounkov_product_side(order: usize) -> TruncatedSeries<ZPoly> {
    let mut euler = TruncatedSeries::<ZPoly>::one(order);
    for n in 1..=order {
        euler.mul_one_minus_q(n);
    }
    let exponent = zpoly_linear(-BigRational::one(), BigRational::one());
    euler.log().scale(&exponent).exp()
}

/// Checks the Nekrasov-Okounkov identity exactly through `q^order`.
pub fn nekrasov_okounkov_check(order: usize) -> Result<IdentityReport> {
    if order > MAX_NO_ORDER {
        return Err(Error::ResourceGuard(format!(
            "identity check limited to order {MAX_NO_ORDER}, got {order}"
        )));
    }
    Ok(IdentityReport::compare(
        &nekrasov_okounkov_sum_side(order),
        &nekrasov_okounkov_product_side(order),
    ))
}

/// `sum_lambda q^|lambda| prod_{h in H_t(lambda)} (y - t y z / h^2)`.
pub fn han_sum_side(order: usize, t: usize) -> TruncatedSeries<YZPoly> {
    let mut coeffs = vec![YZPoly::zero(); order + 1];
    for (n, slot) in coeffs.iter_mut().enumerate() {
        for lambda in enumerate_partitions(n) {
            let mut zpart = ZPoly::one();
            let mut ypow = 0;
            for &h in lambda.hook_lengths().values() {
                if h % t != 0 {
                    continue;
                }
                ypow += 1;
                let h2 = (h as i64) * (h as i64);
                zpart = zpart.mul_ref(&zpoly_linear(BigRational::one(), -rat(t as i64, h2)));
            }
            *slot += &YZPoly::monomial(zpart, ypow);
        }
    }
    TruncatedSeries::from_coeffs(order, coeffs)
}

/// `prod_n (1 - q^{tn})^t / ((1 - (y q^t)^n)^{t - z} (1 - q^n))`.
pub fn han_product_side(order: usize, t: usize) -> TruncatedSeries<YZPoly> {
    // log prod_n (1 - y^n q^{tn})
    let mut marked = TruncatedSeries::<YZPoly>::one(order);
    for n in 1..=order / t {
        let y_n = YZPoly::monomial(ZPoly::one(), n);
        marked.mul_one_minus(t * n, &y_n);
    }
    // (1 - y^n q^{tn})^{z - t}
    let z_minus_t = YZPoly::constant(zpoly_linear(-BigRational::from_i64(t as i64), BigRational::one()));
    let marked_part = marked.log().scale(&z_minus_t).exp();

    let mut plain = TruncatedSeries::<YZPoly>::one(order);
    for n in 1..=order / t {
        for _ in 0..t {
            plain.mul_one_minus_q(t * n);
        }
    }
    for n in 1..=order {
        plain.mul_inv_one_minus_q(n);
    }
    marked_part.mul(&plain)
}

/// Checks Han's identity exactly through `q^order`.
pub fn han_yz_check(order: usize, t: usize) -> Result<IdentityReport> {
    if t == 0 {
        return Err(Error::Domain("t must be at least 1".into()));
    }
    if order > MAX_HAN_ORDER {
        return Err(Error::ResourceGuard(format!(
            "Han identity check limited to order {MAX_HAN_ORDER}, got {order}"
        )));
    }
    Ok(IdentityReport::compare(&han_sum_side(order, t), &han_product_side(order, t)))
}

/// Specializes a `(y, z)` series at `z = z0`, leaving a polynomial in `y`.
pub fn specialize_z(series: &TruncatedSeries<YZPoly>, z0: &BigRational) -> TruncatedSeries<ZPoly> {
    series.map(|p| p.map(|zp| zp.eval(z0)))
}
