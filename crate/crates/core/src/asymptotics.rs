//! Saddle-point apparatus: Euler-Maclaurin sums, saddle solvers, main terms
//! for `P_t(n;T)` and `Phat_t(n;T_n)`, and the limiting-law parameters.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::logscale::LogValue;
use crate::special::{c_of_t, dilog, LimitModel};

const SQRT6: f64 = 2.449_489_742_783_178;
const SUM_REL_TOL: f64 = 1e-18;
const BISECTION_REL_TOL: f64 = 1e-13;

/// Sums `sum_{j >= 1} f(j)` where `f(j)` decays like `exp(-rate * j)` once
/// `j * rate` is large; stops when the terms are negligible.
fn sum_decaying(rate: f64, f: impl Fn(f64) -> f64) -> f64 {
    let mut sum = 0.0;
    let mut j = 1u64;
    loop {
        let x = j as f64;
        let term = f(x);
        sum += term;
        if x * rate > 50.0 && term.abs() <= SUM_REL_TOL * sum.abs() {
            return sum;
        }
        if !term.is_finite() {
            return term;
        }
        j += 1;
    }
}

/// A directly summed series next to its closed-form main terms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SumPair {
    pub sum: f64,
    pub main: f64,
}

impl SumPair {
    pub fn error(&self) -> f64 {
        self.sum - self.main
    }
}

/// The four sums of the dilogarithm estimates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmSums {
    /// `sum log(1 - e^{-j alpha})` vs `-pi^2/(6 alpha) - log(alpha / 2pi)/2`.
    pub a0: SumPair,
    /// `sum t^2 j (T-1) / (T - 1 + e^{t j alpha})` vs `-Li2(1-T)/alpha^2`.
    pub a: SumPair,
    /// `sum log(1 + (T-1) e^{-t j alpha})` vs `-Li2(1-T)/(t alpha) - log(T)/2`.
    pub b: SumPair,
    /// `sum t^3 j^2 e^{-t j alpha} / (1 + (T-1) e^{-t j alpha})^2` vs
    /// `-(2/alpha^3) Li2(1-T)/(T-1)`.
    pub c: SumPair,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return domain(format!("alpha must lie in (0, 1), got {alpha}"));
    }
    Ok(())
}

fn check_marker(t_value: f64) -> Result<()> {
    if !(t_value > 0.0 && t_value.is_finite()) {
        return domain(format!("T must be positive, got {t_value}"));
    }
    Ok(())
}

fn check_t(t: usize) -> Result<()> {
    if t == 0 {
        return domain("t must be at least 1");
    }
    Ok(())
}

/// `Li2(w)/w`, continuous at `w = 0`.
fn dilog_over_arg(w: f64) -> f64 {
    if w.abs() < 1e-6 {
        1.0 + w / 4.0 + w * w / 9.0
    } else {
        dilog(w).expect("argument 1 - T <= 1 for T > 0") / w
    }
}

fn saddle_sum_g(alpha: f64, t: usize, t_value: f64) -> f64 {
    let tf = t as f64;
    let u = t_value - 1.0;
    let marked = if u == 0.0 {
        0.0
    } else {
        sum_decaying(tf * alpha, |j| tf * tf * j * u / (u + (tf * j * alpha).exp()))
    };
    marked + partition_moment_sum(alpha)
}

// sum j / (e^{j alpha} - 1)
fn partition_moment_sum(alpha: f64) -> f64 {
    sum_decaying(alpha, |j| j / (j * alpha).exp_m1())
}

/// Evaluates the four sums at `(alpha, t, T)` alongside their main terms.
pub fn em_sums(alpha: f64, t: usize, t_value: f64) -> Result<EmSums> {
    check_alpha(alpha)?;
    check_t(t)?;
    check_marker(t_value)?;
    let tf = t as f64;
    let u = t_value - 1.0;
    let li = dilog(1.0 - t_value)?;

    let a0 = SumPair {
        sum: sum_decaying(alpha, |j| (-(-j * alpha).exp_m1()).ln()),
        main: -PI * PI / (6.0 * alpha) - 0.5 * (alpha / (2.0 * PI)).ln(),
    };
    let a = SumPair {
        sum: saddle_sum_g(alpha, t, t_value) - partition_moment_sum(alpha),
        main: -li / (alpha * alpha),
    };
    let b = SumPair {
        sum: sum_decaying(tf * alpha, |j| (u * (-tf * j * alpha).exp()).ln_1p()),
        main: -li / (tf * alpha) - 0.5 * t_value.ln(),
    };
    let c = SumPair {
        sum: sum_decaying(tf * alpha, |j| {
            let e = (-tf * j * alpha).exp();
            let d = 1.0 + u * e;
            tf.powi(3) * j * j * e / (d * d)
        }),
        main: 2.0 / alpha.powi(3) * dilog_over_arg(1.0 - t_value),
    };
    Ok(EmSums { a0, a, b, c })
}

/// The two auxiliary sums `sum j/(e^{j alpha} - 1)` and
/// `sum j^2 e^{-j alpha}/(1 - e^{-j alpha})^2`.
pub fn aux_sums(alpha: f64) -> Result<(SumPair, SumPair)> {
    check_alpha(alpha)?;
    let first = SumPair {
        sum: partition_moment_sum(alpha),
        main: PI * PI / (6.0 * alpha * alpha) - 1.0 / (2.0 * alpha),
    };
    let second = SumPair {
        sum: sum_decaying(alpha, |j| {
            let e = (-j * alpha).exp();
            let d = -(-j * alpha).exp_m1();
            j * j * e / (d * d)
        }),
        main: PI * PI / (3.0 * alpha.powi(3)) - 1.0 / (2.0 * alpha * alpha),
    };
    Ok((first, second))
}

/// A solved saddle point `z = e^{-alpha}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SaddleSolution {
    pub n: usize,
    pub t: usize,
    /// `T` for the `t`-hook generating function, `alpha(T)` for the multiples one.
    pub marker: f64,
    pub alpha: f64,
    /// Saddle equation left side minus `n` at `alpha`.
    pub residual: f64,
    /// The closed-form approximation of `alpha`.
    pub expansion_value: f64,
}

/// Root of a strictly decreasing `f` on `(lo, inf)` with `f(lo+) > 0`.
fn bisect_decreasing(lo: f64, start: f64, f: impl Fn(f64) -> f64) -> Result<f64> {
    let mut hi = start.max(lo * 2.0);
    let mut tries = 0;
    while f(hi) > 0.0 {
        hi *= 2.0;
        tries += 1;
        if tries > 200 {
            return Err(Error::Solver("could not bracket the saddle from above".into()));
        }
    }
    if !(f(lo) > 0.0) {
        return Err(Error::Solver("could not bracket the saddle from below".into()));
    }
    let mut lo = lo;
    while hi - lo > BISECTION_REL_TOL * hi {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn check_residual(residual: f64, n: usize, tol: f64) -> Result<()> {
    if !(residual.abs() <= tol * n as f64) {
        return Err(Error::Solver(format!(
            "saddle residual {residual:e} exceeds tolerance {:e}",
            tol * n as f64
        )));
    }
    Ok(())
}

/// Solves `sum t^2 j (T-1)/(T-1+e^{t j alpha}) + sum j/(e^{j alpha}-1) = n`.
pub fn solve_saddle_g(n: usize, t: usize, t_value: f64, tol: f64) -> Result<SaddleSolution> {
    check_t(t)?;
    check_marker(t_value)?;
    if n == 0 {
        return domain("n must be at least 1");
    }
    if !(tol > 0.0) {
        return domain("tolerance must be positive");
    }
    let nf = n as f64;
    let f = |a: f64| saddle_sum_g(a, t, t_value) - nf;
    let alpha = bisect_decreasing(1.0 / (4.0 * nf), 1.0, f)?;
    let residual = f(alpha);
    check_residual(residual, n, tol)?;
    let c = c_of_t(t_value)?;
    Ok(SaddleSolution {
        n,
        t,
        marker: t_value,
        alpha,
        residual,
        expansion_value: c / nf.sqrt() - 0.25 / nf,
    })
}

/// Solves the saddle equation of the multiples generating function at
/// `T_n = e^{alpha_t / sqrt(n)}`.
pub fn solve_saddle_ghat(n: usize, t: usize, alpha_t: f64, tol: f64) -> Result<SaddleSolution> {
    check_t(t)?;
    if n == 0 {
        return domain("n must be at least 1");
    }
    if !(tol > 0.0) {
        return domain("tolerance must be positive");
    }
    let tf = t as f64;
    if !(PI * tf + SQRT6 * alpha_t > 0.0) {
        return domain(format!(
            "need pi t + sqrt(6) alpha(T) > 0, got t = {t}, alpha(T) = {alpha_t}"
        ));
    }
    let nf = n as f64;
    let ln_tn = alpha_t / nf.sqrt();
    let f = |beta: f64| {
        let gap = tf * beta - ln_tn;
        let marked = sum_decaying(gap.min(tf * beta), |j| {
            tf * tf * j * (1.0 / (j * gap).exp_m1() - 1.0 / (tf * j * beta).exp_m1())
        });
        marked + partition_moment_sum(beta) - nf
    };
    // the left side blows up as t beta falls to max(ln T_n, 0)
    let lo = (ln_tn.max(0.0) + 1.0 / (4.0 * nf)) / tf;
    let beta = bisect_decreasing(lo, 1.0, f)?;
    let residual = f(beta);
    check_residual(residual, n, tol)?;
    Ok(SaddleSolution {
        n,
        t,
        marker: alpha_t,
        alpha: beta,
        residual,
        expansion_value: (PI / SQRT6 + alpha_t / tf) / nf.sqrt(),
    })
}

/// Main term of `P_t(n;T)`:
/// `c(T) / (2 sqrt2 pi n T^{t/2}) * exp(c(T) (2 sqrt n - 1/sqrt n))`.
pub fn prop1_main_term(n: usize, t: usize, t_value: f64) -> Result<LogValue> {
    check_t(t)?;
    if n == 0 {
        return domain("n must be at least 1");
    }
    let c = c_of_t(t_value)?;
    let nf = n as f64;
    let ln = c.ln() - (2.0 * 2f64.sqrt() * PI * nf).ln() - 0.5 * t as f64 * t_value.ln()
        + c * (2.0 * nf.sqrt() - 1.0 / nf.sqrt());
    Ok(LogValue::from_ln(ln))
}

/// Main term of `Phat_t(n; T_n)` with `T_n = e^{(alpha + eps)/sqrt n}`.
pub fn prop2_main_term(n: usize, t: usize, alpha_t: f64, eps_t: f64) -> Result<LogValue> {
    check_t(t)?;
    if n == 0 {
        return domain("n must be at least 1");
    }
    let tf = t as f64;
    let s = alpha_t + eps_t;
    if !(PI * tf + SQRT6 * s > 0.0) {
        return domain(format!("need pi t + sqrt(6)(alpha + eps) > 0, got t = {t}, alpha + eps = {s}"));
    }
    let nf = n as f64;
    let ln = -(2f64.powf(1.75) * 3f64.powf(0.25) * nf).ln()
        + 0.5 * (1.0 / SQRT6 + s / (PI * tf)).ln()
        + 0.5 * tf * (PI * tf / (PI * tf + SQRT6 * s)).ln()
        + PI * nf.sqrt() * ((2.0f64 / 3.0).sqrt() + s / (PI * tf));
    Ok(LogValue::from_ln(ln))
}

/// Constants of the shifted Gamma law `a X_{k, theta} + b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GammaConstants {
    pub shape: f64,
    pub scale: f64,
    pub a: f64,
    pub b: f64,
}

/// Asymptotic mean, variance (and mode) of a hook statistic, with the
/// limiting law in standardized coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TheoremParams {
    pub n: usize,
    pub t: usize,
    pub mean: f64,
    pub variance: f64,
    pub mode: Option<f64>,
    /// Present for the multiples statistic.
    pub gamma: Option<GammaConstants>,
}

impl TheoremParams {
    pub fn sigma(&self) -> f64 {
        self.variance.sqrt()
    }

    /// `k_{t,n}(x) = mean + sigma x`.
    pub fn k_of_x(&self, x: f64) -> f64 {
        self.mean + self.sigma() * x
    }

    /// The limit CDF of the standardized statistic as stated for the
    /// cumulative distribution: the standard normal, or
    /// `gamma(k; sqrt(k) x + k) / Gamma(k)`.
    pub fn limit_model(&self) -> LimitModel {
        match self.gamma {
            None => LimitModel::standard_normal(),
            Some(g) => LimitModel::ShiftedGamma {
                shape: g.shape,
                scale: g.scale,
                a: 1.0,
                b: -g.shape * g.scale,
            },
        }
    }

    /// The law `a X_{k,theta} + b` whose moment generating function is
    /// matched in the convergence argument.
    pub fn mgf_limit_model(&self) -> LimitModel {
        match self.gamma {
            None => LimitModel::standard_normal(),
            Some(g) => LimitModel::ShiftedGamma {
                shape: g.shape,
                scale: g.scale,
                a: g.a,
                b: g.b,
            },
        }
    }

    /// Limiting moment generating function of the standardized statistic.
    pub fn limit_mgf(&self, r: f64) -> f64 {
        match self.gamma {
            None => (r * r / 2.0).exp(),
            Some(g) => (g.b * r).exp() / (1.0 - g.scale * g.a * r).powf(g.shape),
        }
    }
}

/// Mean `sqrt(6n)/pi - t/2`, variance `(pi^2 - 6) sqrt(6n) / (2 pi^3)`.
pub fn theorem1_params(n: usize, t: usize) -> Result<TheoremParams> {
    check_t(t)?;
    if n == 0 {
        return domain("n must be at least 1");
    }
    let r = (6.0 * n as f64).sqrt();
    Ok(TheoremParams {
        n,
        t,
        mean: r / PI - t as f64 / 2.0,
        variance: (PI * PI - 6.0) * r / (2.0 * PI.powi(3)),
        mode: None,
        gamma: None,
    })
}

/// Mean, mode and variance of the multiples statistic, `t >= 4`.
pub fn theorem2_params(n: usize, t: usize) -> Result<TheoremParams> {
    if t < 4 {
        return domain(format!(
            "the shifted Gamma limit needs t >= 4 (shape (t-1)/2 > 1); \
             for t in {{2, 3}} there is no continuous limiting distribution, got t = {t}"
        ));
    }
    if n == 0 {
        return domain("n must be at least 1");
    }
    let (nf, tf) = (n as f64, t as f64);
    let r = (6.0 * nf).sqrt();
    Ok(TheoremParams {
        n,
        t,
        mean: nf / tf - (tf - 1.0) * r / (2.0 * PI * tf),
        variance: 3.0 * (tf - 1.0) * nf / (PI * PI * tf * tf),
        mode: Some(nf / tf - (tf - 3.0) * r / (2.0 * PI * tf)),
        gamma: Some(GammaConstants {
            shape: (tf - 1.0) / 2.0,
            scale: (2.0 / (tf - 1.0)).sqrt(),
            a: -1.0,
            b: (2.0 * (tf - 1.0)).sqrt() / 2.0,
        }),
    })
}
