//! Special functions for the limiting laws.
//!
//! Targets are 1e-12 absolute accuracy on the real axis, which is all the
//! limit laws need.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{domain, Result};

const PI2_6: f64 = PI * PI / 6.0;
const EPS: f64 = 1e-16;
const MAX_ITER: usize = 10_000;

/// Error function.
pub fn erf(x: f64) -> f64 {
    if x < 0.0 {
        return -erf(-x);
    }
    if x < 2.5 {
        erf_series(x)
    } else {
        1.0 - erfc_cf(x)
    }
}

/// Complementary error function `1 - erf(x)`.
pub fn erfc(x: f64) -> f64 {
    if x < 2.5 {
        1.0 - erf(x)
    } else {
        erfc_cf(x)
    }
}

// erf(x) = 2/sqrt(pi) e^{-x^2} sum_n 2^n x^{2n+1} / (1*3*...*(2n+1)); positive terms
fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    loop {
        n += 1.0;
        term *= 2.0 * x2 / (2.0 * n + 1.0);
        sum += term;
        if term <= EPS * sum {
            break;
        }
    }
    2.0 / PI.sqrt() * (-x2).exp() * sum
}

// Modified Lentz evaluation of erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
fn erfc_cf(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for k in 1..MAX_ITER {
        let a = k as f64 / 2.0;
        d = x + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < EPS {
            break;
        }
    }
    (-x * x).exp() / PI.sqrt() / f
}

/// Standard normal CDF, `E(x)`.
pub fn normal_cdf(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 - 0.5 * erfc(x * FRAC_1_SQRT_2)
    } else {
        0.5 * erfc(-x * FRAC_1_SQRT_2)
    }
}

/// Real dilogarithm `Li2(x) = -int_0^x log(1-u)/u du` for `x <= 1`.
pub fn dilog(x: f64) -> Result<f64> {
    if !(x <= 1.0) {
        return domain(format!("dilogarithm is real only for x <= 1, got {x}"));
    }
    Ok(dilog_real(x))
}

fn dilog_real(x: f64) -> f64 {
    if x == 1.0 {
        PI2_6
    } else if x > 0.5 {
        // reflection
        PI2_6 - x.ln() * (1.0 - x).ln() - dilog_series(1.0 - x)
    } else if x >= -0.5 {
        dilog_series(x)
    } else if x >= -1.0 {
        // Landen: x/(x-1) lies in [1/3, 1/2]
        let y = x / (x - 1.0);
        let l = (1.0 - x).ln();
        -dilog_series(y) - 0.5 * l * l
    } else {
        // inversion
        let l = (-x).ln();
        -PI2_6 - 0.5 * l * l - dilog_real(1.0 / x)
    }
}

fn dilog_series(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut pow = x;
    for k in 1..200 {
        let term = pow / (k * k) as f64;
        sum += term;
        if term.abs() < EPS * sum.abs().max(1e-300) {
            break;
        }
        pow *= x;
    }
    sum
}

/// `c(T) = sqrt(pi^2/6 - Li2(1 - T))`, the exponential growth rate of
/// `P_t(n; T)` in `sqrt(n)`.
pub fn c_of_t(t_value: f64) -> Result<f64> {
    if !(t_value > 0.0) || !t_value.is_finite() {
        return domain(format!("c(T) requires T > 0, got {t_value}"));
    }
    Ok((PI2_6 - dilog_real(1.0 - t_value)).sqrt())
}

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Gamma(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

pub fn gamma(x: f64) -> f64 {
    ln_gamma(x).exp()
}

/// Regularized lower incomplete gamma `P(s, x) = gamma(s, x) / Gamma(s)`.
pub fn regularized_lower_gamma(s: f64, x: f64) -> Result<f64> {
    if !(s > 0.0) {
        return domain(format!("incomplete gamma requires s > 0, got {s}"));
    }
    if !(x >= 0.0) {
        return domain(format!("incomplete gamma requires x >= 0, got {x}"));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(1.0);
    }
    if x < s + 1.0 {
        Ok(lower_series(s, x))
    } else {
        Ok(1.0 - upper_cf(s, x))
    }
}

/// Lower incomplete gamma `gamma(s, x) = int_0^x u^{s-1} e^{-u} du`.
pub fn lower_incomplete_gamma(s: f64, x: f64) -> Result<f64> {
    Ok(regularized_lower_gamma(s, x)? * gamma(s))
}

fn lower_series(s: f64, x: f64) -> f64 {
    let mut ap = s;
    let mut term = 1.0 / s;
    let mut sum = term;
    for _ in 0..MAX_ITER {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if term.abs() < sum.abs() * EPS {
            break;
        }
    }
    sum * (-x + s * x.ln() - ln_gamma(s)).exp()
}

// Q(s, x) by Lentz's continued fraction
fn upper_cf(s: f64, x: f64) -> f64 {
    let tiny = 1e-300;
    let mut b = x + 1.0 - s;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - s);
        b += 2.0;
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    (-x + s * x.ln() - ln_gamma(s)).exp() * h
}

fn check_gamma_params(shape: f64, scale: f64) -> Result<()> {
    if !(shape > 0.0) || !(scale > 0.0) {
        return domain(format!("Gamma law needs shape > 0 and scale > 0, got ({shape}, {scale})"));
    }
    Ok(())
}

/// Density of the Gamma law with the given shape and scale.
pub fn gamma_pdf(shape: f64, scale: f64, x: f64) -> Result<f64> {
    check_gamma_params(shape, scale)?;
    if x <= 0.0 {
        return Ok(0.0);
    }
    Ok(((shape - 1.0) * x.ln() - x / scale - ln_gamma(shape) - shape * scale.ln()).exp())
}

/// CDF of the Gamma law, `P(shape, x / scale)`.
pub fn gamma_cdf(shape: f64, scale: f64, x: f64) -> Result<f64> {
    check_gamma_params(shape, scale)?;
    if x <= 0.0 {
        return Ok(0.0);
    }
    regularized_lower_gamma(shape, x / scale)
}

/// A limiting law with an evaluatable CDF.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LimitModel {
    Normal { mean: f64, variance: f64 },
    /// The law of `a X + b` with `X ~ Gamma(shape, scale)`, `a != 0`.
    ShiftedGamma { shape: f64, scale: f64, a: f64, b: f64 },
}

impl LimitModel {
    pub fn normal(mean: f64, variance: f64) -> Result<Self> {
        if !(variance > 0.0) {
            return domain(format!("variance must be positive, got {variance}"));
        }
        Ok(LimitModel::Normal { mean, variance })
    }

    pub fn standard_normal() -> Self {
        LimitModel::Normal {
            mean: 0.0,
            variance: 1.0,
        }
    }

    pub fn shifted_gamma(shape: f64, scale: f64, a: f64, b: f64) -> Result<Self> {
        check_gamma_params(shape, scale)?;
        if a == 0.0 || !a.is_finite() {
            return domain("affine factor must be nonzero");
        }
        Ok(LimitModel::ShiftedGamma { shape, scale, a, b })
    }

    pub fn cdf(&self, x: f64) -> f64 {
        limit_cdf(self, x)
    }

    pub fn mean(&self) -> f64 {
        match *self {
            LimitModel::Normal { mean, .. } => mean,
            LimitModel::ShiftedGamma { shape, scale, a, b } => a * shape * scale + b,
        }
    }

    pub fn variance(&self) -> f64 {
        match *self {
            LimitModel::Normal { variance, .. } => variance,
            LimitModel::ShiftedGamma { shape, scale, a, .. } => a * a * shape * scale * scale,
        }
    }
}

/// CDF of a [`LimitModel`] at `x`.
pub fn limit_cdf(model: &LimitModel, x: f64) -> f64 {
    match *model {
        LimitModel::Normal { mean, variance } => normal_cdf((x - mean) / variance.sqrt()),
        LimitModel::ShiftedGamma { shape, scale, a, b } => {
            let y = (x - b) / a;
            let g = |v: f64| if v <= 0.0 { 0.0 } else { regularized_lower_gamma(shape, v / scale).unwrap_or(1.0) };
            if a > 0.0 {
                g(y)
            } else {
                1.0 - g(y)
            }
        }
    }
}
