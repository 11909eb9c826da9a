//! Coefficient extraction from the hook generating functions
//!
//! ```text
//! G_t(T;q)    = prod_{j>=1} (1 + (T-1) q^{tj})^t / (1 - q^j)
//! Ghat_t(T;q) = prod_{j>=1} (1 - q^{tj})^t / ((1 - (T q^t)^j)^t (1 - q^j))
//! ```
//!
//! Exact `t`-hook counts use the shifted marker `U = T - 1`: the product
//! `A(U; s) = prod_j (1 + U s^j)^t` in `s = q^t` has nonnegative coefficients
//! whose `U`-degree grows like `sqrt(m)`, and `P_t(n;T) = sum_m A_m(U) p(n - tm)`
//! is converted to the `T` basis once at the end.
//!
//! Both products share the factor `C_t(q) = prod (1 - q^{tj})^t / (1 - q^j)`,
//! the generating function of `t`-cores. Splitting it off leaves products
//! with nonnegative coefficients in `T`, which is what the floating-point
//! routes rely on:
//!
//! ```text
//! G_t    = C_t(q) * prod_j (1 + T s^j / (1 - s^j))^t
//! Ghat_t = C_t(q) * prod_j (1 - T^j s^j)^{-t}
//! ```

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::distribution::{ln_biguint, Flavor, FloatDistribution, HookDistribution};
use crate::error::{Error, Result};
use crate::logscale::LogValue;
use crate::poly::MarkerPolynomial;
use crate::series::TruncatedSeries;

/// Default ceiling on `n * (n / t)` for exact computations.
pub const DEFAULT_EXACT_WORK_CEILING: u64 = 50_000_000;

/// Largest `pi * sqrt(2n/3)` (roughly `ln p(n)`) the float routes accept.
const FLOAT_LN_CEILING: f64 = 650.0;

/// `p(0), ..., p(n)` by Euler's pentagonal recurrence.
pub fn partition_numbers(n: usize) -> Vec<BigUint> {
    let mut p: Vec<BigInt> = Vec::with_capacity(n + 1);
    p.push(BigInt::one());
    for m in 1..=n {
        let mut acc = BigInt::zero();
        for k in 1usize.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            if k % 2 == 1 {
                acc += &p[m - g1];
                if g2 <= m {
                    acc += &p[m - g2];
                }
            } else {
                acc -= &p[m - g1];
                if g2 <= m {
                    acc -= &p[m - g2];
                }
            }
        }
        p.push(acc);
    }
    p.into_iter()
        .map(|v| v.to_biguint().expect("p(n) is positive"))
        .collect()
}

/// Refuses exact work estimates above `ceiling`.
pub fn check_exact_work(n: usize, t: usize, ceiling: u64) -> Result<()> {
    let t = t.max(1);
    let work = n as u64 * (n / t) as u64;
    if work > ceiling {
        return Err(Error::ResourceGuard(format!(
            "exact computation for n = {n}, t = {t} needs ~{work} coefficient steps \
             (ceiling {ceiling}); use the float ring instead"
        )));
    }
    Ok(())
}

fn check_t(t: usize) -> Result<()> {
    if t == 0 {
        return Err(Error::Domain("t must be at least 1".into()));
    }
    Ok(())
}

/// `A(U; s) = prod_{j <= order} (1 + U s^j)^t`, truncated at `s^order`.
pub fn shifted_marker_product(order: usize, t: usize) -> TruncatedSeries<MarkerPolynomial<BigUint>> {
    let mut a = TruncatedSeries::one(order);
    for j in 1..=order {
        for _ in 0..t {
            a.mul_one_plus_marked(j, 1);
        }
    }
    a
}

/// `P_t(n; T)` in the `T` basis: coefficient `m` counts partitions of `n`
/// with exactly `m` hooks of length `t`.
pub fn thook_polynomial(n: usize, t: usize) -> Result<MarkerPolynomial<BigInt>> {
    check_t(t)?;
    let p = partition_numbers(n);
    let order = n / t;
    let a = shifted_marker_product(order, t);
    let mut in_u: MarkerPolynomial<BigUint> = MarkerPolynomial::new();
    for (m, am) in a.coeffs().iter().enumerate() {
        in_u += &am.scale(&p[n - t * m]);
    }
    let in_u: MarkerPolynomial<BigInt> = in_u.map(|c| BigInt::from(c.clone()));
    Ok(in_u.compose_shift(&BigInt::from(-1)))
}

/// Exact distribution of the number of hooks of length exactly `t`.
pub fn thook_distribution(n: usize, t: usize) -> Result<HookDistribution> {
    let poly = thook_polynomial(n, t)?;
    let dense = poly
        .into_coeffs()
        .into_iter()
        .map(|c| match c.sign() {
            Sign::Minus => Err(Error::Internal("negative t-hook count".into())),
            _ => Ok(c.magnitude().clone()),
        })
        .collect::<Result<Vec<_>>>()?;
    let d = HookDistribution::from_dense(n, t, Flavor::Equal, dense)?;
    check_total(&d)?;
    Ok(d)
}

/// Coefficients of `prod_{j <= order} (1 - s^j)^t`.
fn euler_power(order: usize, t: usize) -> TruncatedSeries<BigInt> {
    let mut e = TruncatedSeries::one(order);
    for j in 1..=order {
        for _ in 0..t {
            e.mul_one_minus_q(j);
        }
    }
    e
}

/// Number of `t`-multipartitions (coefficients of `prod (1 - s^j)^{-t}`).
pub fn multipartition_numbers(order: usize, t: usize) -> Vec<BigUint> {
    let mut c = TruncatedSeries::<BigUint>::one(order);
    for j in 1..=order {
        for _ in 0..t {
            c.mul_inv_one_minus_q(j);
        }
    }
    c.into_coeffs()
}

/// Numbers of `t`-core partitions of `n - t k` for `k = 0, ..., n / t`,
/// read off `C_t(q) = E(q^t) / prod (1 - q^j)`.
pub fn t_core_counts(n: usize, t: usize, partitions: &[BigUint]) -> Result<Vec<BigUint>> {
    check_t(t)?;
    let order = n / t;
    let e = euler_power(order, t);
    (0..=order)
        .map(|k| {
            let m = n - t * k;
            let mut acc = BigInt::zero();
            for i in 0..=m / t {
                let ei = e.coeff(i);
                if !ei.is_zero() {
                    acc += ei * BigInt::from(partitions[m - t * i].clone());
                }
            }
            acc.to_biguint()
                .ok_or_else(|| Error::Internal(format!("negative {t}-core count at {m}")))
        })
        .collect()
}

/// Exact distribution of the number of hooks divisible by `t`.
///
/// A partition with `k` such hooks has a `t`-core of size `n - tk`, so
/// the coefficient of `T^k` is (cores of `n - tk`) x (`t`-multipartitions of `k`).
pub fn tmult_distribution(n: usize, t: usize) -> Result<HookDistribution> {
    check_t(t)?;
    let p = partition_numbers(n);
    let cores = t_core_counts(n, t, &p)?;
    let multi = multipartition_numbers(n / t, t);
    let dense = cores.iter().zip(&multi).map(|(c, m)| c * m).collect();
    let d = HookDistribution::from_dense(n, t, Flavor::Multiple, dense)?;
    check_total(&d)?;
    Ok(d)
}

/// Exact distribution for either flavor.
pub fn exact_distribution(n: usize, t: usize, flavor: Flavor) -> Result<HookDistribution> {
    match flavor {
        Flavor::Equal => thook_distribution(n, t),
        Flavor::Multiple => tmult_distribution(n, t),
    }
}

fn check_total(d: &HookDistribution) -> Result<()> {
    let p = partition_numbers(d.n());
    if d.total() != &p[d.n()] {
        return Err(Error::Internal(format!(
            "counts for n = {} sum to {} instead of p(n) = {}",
            d.n(),
            d.total(),
            p[d.n()]
        )));
    }
    Ok(())
}

fn check_float_range(n: usize) -> Result<()> {
    let ln_pn = std::f64::consts::PI * (2.0 * n as f64 / 3.0).sqrt();
    if ln_pn > FLOAT_LN_CEILING {
        return Err(Error::ResourceGuard(format!(
            "n = {n} exceeds the double-precision range of the float distribution"
        )));
    }
    Ok(())
}

/// Distribution computed in double precision from the all-positive
/// factorization. Relative accuracy is a small multiple of `n * eps`.
pub fn float_distribution(n: usize, t: usize, flavor: Flavor) -> Result<FloatDistribution> {
    check_t(t)?;
    check_float_range(n)?;
    let p = partition_numbers(n);
    let cores: Vec<f64> = t_core_counts(n, t, &p)?
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
        .collect();
    let order = n / t;
    let weights: Vec<f64> = match flavor {
        Flavor::Equal => {
            let mut q = TruncatedSeries::<MarkerPolynomial<f64>>::one(order);
            for j in 1..=order {
                for _ in 0..t {
                    q.mul_one_plus_marked_geometric(j, 1);
                }
            }
            let mut acc = MarkerPolynomial::<f64>::new();
            for (m, qm) in q.coeffs().iter().enumerate() {
                if cores[m] != 0.0 {
                    acc += &qm.scale(&cores[m]);
                }
            }
            acc.into_coeffs()
        }
        Flavor::Multiple => {
            let mut c = TruncatedSeries::<f64>::one(order);
            for j in 1..=order {
                for _ in 0..t {
                    c.mul_inv_one_minus_q(j);
                }
            }
            c.coeffs().iter().zip(&cores).map(|(a, b)| a * b).collect()
        }
    };
    let total: f64 = weights.iter().sum();
    let probabilities = weights
        .iter()
        .enumerate()
        .filter(|(_, w)| **w > 0.0)
        .map(|(m, w)| (m, w / total))
        .collect();
    Ok(FloatDistribution {
        n,
        t,
        flavor,
        ln_total: total.ln(),
        probabilities,
    })
}

/// A scalar series with a shared exponent, renormalized as it grows.
struct ScaledSeries {
    coeffs: TruncatedSeries<f64>,
    ln_scale: f64,
}

impl ScaledSeries {
    const LIMIT: f64 = 1e250;

    fn one(order: usize) -> Self {
        Self {
            coeffs: TruncatedSeries::one(order),
            ln_scale: 0.0,
        }
    }

    fn renormalize(&mut self) {
        let max = self.coeffs.coeffs().iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        if max > Self::LIMIT {
            let scaled = self.coeffs.scale(&(1.0 / max));
            self.coeffs = scaled;
            self.ln_scale += max.ln();
        }
    }

    fn ln_coeff(&self, m: usize) -> LogValue {
        LogValue::from_f64(*self.coeffs.coeff(m)).mul(LogValue::from_ln(self.ln_scale))
    }
}

/// Numeric value of `P_t(n; x)` (equal flavor) or `Phat_t(n; x)` (multiple
/// flavor) for `x > 0`, with the marker specialized before any products
/// are formed. The result is log-scaled and never overflows.
pub fn evaluate_p(n: usize, t: usize, flavor: Flavor, x: f64) -> Result<LogValue> {
    check_t(t)?;
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain(format!("marker value must be positive, got {x}")));
    }
    let p = partition_numbers(n);
    let cores = t_core_counts(n, t, &p)?;
    let order = n / t;
    let mut series = ScaledSeries::one(order);
    match flavor {
        Flavor::Equal => {
            for j in 1..=order {
                for _ in 0..t {
                    mul_geometric_scalar(&mut series.coeffs, j, x);
                }
                series.renormalize();
            }
        }
        Flavor::Multiple => {
            // prod (1 - x^j s^j)^{-t} = prod (1 - (x s)^j)^{-t}; the x^k factor
            // is applied in log space below
            for j in 1..=order {
                for _ in 0..t {
                    series.coeffs.mul_inv_one_minus_q(j);
                }
                series.renormalize();
            }
        }
    }
    let mut acc = LogValue::ZERO;
    for (k, core) in cores.iter().enumerate() {
        if core.is_zero() {
            continue;
        }
        let mut term = series.ln_coeff(k).mul(LogValue::from_ln(ln_biguint(core)));
        if flavor == Flavor::Multiple {
            term = term.mul(LogValue::from_ln(k as f64 * x.ln()));
        }
        acc = acc.add(term);
    }
    Ok(acc)
}

/// Multiplies a scalar series by `1 + x s^step / (1 - s^step)`.
fn mul_geometric_scalar(series: &mut TruncatedSeries<f64>, step: usize, x: f64) {
    let len = series.order() + 1;
    let mut tail = vec![0.0; len];
    for m in step..len {
        tail[m] = tail[m - step] + series.coeff(m - step);
    }
    let mut out = series.coeffs().to_vec();
    for m in step..len {
        out[m] += x * tail[m];
    }
    *series = TruncatedSeries::from_coeffs(len - 1, out);
}

/// Evaluates an exact `T`-basis polynomial at a positive float, log-scaled.
pub fn eval_exact_polynomial(poly: &MarkerPolynomial<BigInt>, x: f64) -> LogValue {
    let mut acc = LogValue::ZERO;
    for (k, c) in poly.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = LogValue::from_ln(ln_biguint(c.magnitude()) + k as f64 * x.ln());
        let signed = if c.is_negative() {
            LogValue { sign: -1.0, ..mag }
        } else {
            mag
        };
        acc = acc.add(signed);
    }
    acc
}
