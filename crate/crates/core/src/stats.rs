//! Cumulative distributions, moments, moment generating functions and
//! distances to the limiting laws.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::asymptotics::{theorem1_params, theorem2_params, TheoremParams};
use crate::distribution::{ln_biguint, Flavor, HookDistribution};
use crate::error::{domain, Result};
use crate::special::LimitModel;

fn ratio(num: &BigUint, den: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

/// Exact `ratio` to `f64`, accurate even when both sides overflow.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let (n, d) = (r.numer(), r.denom());
    let sign = if n < &BigInt::zero() { -1.0 } else { 1.0 };
    sign * (ln_biguint(n.magnitude()) - ln_biguint(d.magnitude())).exp()
}

/// `D(k; n)`: the proportion of partitions whose statistic is at most `floor(k)`.
pub fn cumulative(dist: &HookDistribution, k: f64) -> BigRational {
    if k.is_nan() || k < 0.0 {
        return BigRational::zero();
    }
    let mut acc = BigUint::zero();
    if k.is_infinite() {
        acc = dist.total().clone();
    } else {
        let kmax = k.floor();
        for (&m, c) in dist.counts() {
            if m as f64 > kmax {
                break;
            }
            acc += c;
        }
    }
    ratio(&acc, dist.total())
}

/// Exact mean and variance, and the smallest most frequent value.
#[derive(Clone, Debug, PartialEq)]
pub struct Moments {
    pub mean: BigRational,
    pub variance: BigRational,
    pub mode: usize,
}

impl Moments {
    pub fn mean_f64(&self) -> f64 {
        rational_to_f64(&self.mean)
    }

    pub fn variance_f64(&self) -> f64 {
        rational_to_f64(&self.variance)
    }
}

pub fn exact_moments(dist: &HookDistribution) -> Moments {
    let mut s1 = BigUint::zero();
    let mut s2 = BigUint::zero();
    let mut mode = (0usize, BigUint::zero());
    for (&m, c) in dist.counts() {
        let mb = BigUint::from(m);
        s1 += &mb * c;
        s2 += &mb * &mb * c;
        if c > &mode.1 {
            mode = (m, c.clone());
        }
    }
    let mean = ratio(&s1, dist.total());
    let variance = ratio(&s2, dist.total()) - &mean * &mean;
    Moments {
        mean,
        variance,
        mode: mode.0,
    }
}

/// `(1/p(n)) sum_m count[m] exp((m - center) r / spread)`, accumulated in
/// log space.
pub fn mgf(dist: &HookDistribution, center: f64, spread: f64, r: f64) -> Result<f64> {
    if !(spread > 0.0) {
        return domain(format!("spread must be positive, got {spread}"));
    }
    if r == 0.0 {
        return Ok(1.0);
    }
    let ln_total = ln_biguint(dist.total());
    let logs: Vec<f64> = dist
        .counts()
        .iter()
        .map(|(&m, c)| ln_biguint(c) - ln_total + (m as f64 - center) * r / spread)
        .collect();
    let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let s: f64 = logs.iter().map(|l| (l - max).exp()).sum();
    Ok((max + s.ln()).exp())
}

/// A distribution moved to `x_m = (m - center) / spread`.
#[derive(Clone, Debug, PartialEq)]
pub struct StandardizedDistribution {
    pub source: HookDistribution,
    pub center: f64,
    pub spread: f64,
    /// `(x_m, probability)`, increasing in `x_m`.
    pub support: Vec<(f64, f64)>,
}

impl StandardizedDistribution {
    /// Empirical CDF at `x` (right-continuous).
    pub fn cdf(&self, x: f64) -> f64 {
        self.support
            .iter()
            .take_while(|(xm, _)| *xm <= x)
            .map(|(_, p)| p)
            .sum::<f64>()
            .min(1.0)
    }
}

pub fn standardize_with(dist: &HookDistribution, center: f64, spread: f64) -> Result<StandardizedDistribution> {
    if !(spread > 0.0 && spread.is_finite()) {
        return domain(format!("spread must be positive, got {spread}"));
    }
    let support = dist
        .probabilities()
        .into_iter()
        .map(|(m, p)| ((m as f64 - center) / spread, p))
        .collect();
    Ok(StandardizedDistribution {
        source: dist.clone(),
        center,
        spread,
        support,
    })
}

/// Standardizes with the asymptotic mean and deviation.
pub fn standardize(dist: &HookDistribution, params: &TheoremParams) -> Result<StandardizedDistribution> {
    standardize_with(dist, params.mean, params.sigma())
}

/// Supremum of `|F - G|` over the step points of `F`, using both one-sided
/// limits of `F`. `G` is assumed continuous.
pub fn ks_distance_with(std: &StandardizedDistribution, g: impl Fn(f64) -> f64) -> f64 {
    let mut below = 0.0;
    let mut worst: f64 = 0.0;
    for &(x, p) in &std.support {
        let gx = g(x);
        let above = (below + p).min(1.0);
        worst = worst.max((below - gx).abs()).max((above - gx).abs());
        below = above;
    }
    worst
}

pub fn ks_distance(std: &StandardizedDistribution, model: &LimitModel) -> f64 {
    ks_distance_with(std, |x| model.cdf(x))
}

/// Theorem parameters matching the flavor: the normal law for `t`-hooks,
/// the shifted Gamma law for multiples of `t`.
pub fn params_for(n: usize, t: usize, flavor: Flavor) -> Result<TheoremParams> {
    match flavor {
        Flavor::Equal => theorem1_params(n, t),
        Flavor::Multiple => theorem2_params(n, t),
    }
}

/// One row of a cumulative-distribution table.
#[derive(Clone, Debug, PartialEq)]
pub struct TableRow {
    pub x: f64,
    /// `floor(mean + sigma x)`, clamped below at `-1` (empty sum).
    pub k: i64,
    pub d_exact: BigRational,
    pub d: f64,
    pub limit: f64,
    /// `d / limit`.
    pub ratio: f64,
}

/// `D(floor(k_{t,n}(x)); n)` next to the limit CDF at `x`.
pub fn table_row(dist: &HookDistribution, params: &TheoremParams, x: f64) -> TableRow {
    let k = params.k_of_x(x).floor().max(-1.0);
    let d_exact = cumulative(dist, k);
    let d = rational_to_f64(&d_exact);
    let limit = params.limit_model().cdf(x);
    TableRow {
        x,
        k: k as i64,
        d_exact,
        d,
        limit,
        ratio: d / limit,
    }
}
