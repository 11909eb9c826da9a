//! Property suites behind `hookdist verify`.

use std::fmt::Write;

use clap::ValueEnum;
use hookdist::asymptotics::{em_sums, prop1_main_term, prop2_main_term, solve_saddle_g, EmSums, SumPair};
use hookdist::engine::evaluate_p;
use hookdist::identities::{han_yz_check, nekrasov_okounkov_check};
use hookdist::partition::brute_force_distribution;
use hookdist::stats::{exact_moments, ks_distance, mgf, standardize};
use hookdist::{exact_distribution, theorem1_params, theorem2_params, Flavor, Result};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Suite {
    Identities,
    Asymptotics,
    Convergence,
}

pub struct Item {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Default)]
pub struct Report {
    pub items: Vec<Item>,
}

impl Report {
    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.items.push(Item {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for i in &self.items {
            let tag = if i.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{tag} {}: {}", i.name, i.detail);
        }
        let failed = self.items.iter().filter(|i| !i.passed).count();
        let _ = writeln!(out, "{} checks, {} failed", self.items.len(), failed);
        out
    }
}

pub fn run(suite: Suite, order: usize, brute_force_guard: usize) -> Result<Report> {
    let mut r = Report::default();
    match suite {
        Suite::Identities => identities(&mut r, order, brute_force_guard)?,
        Suite::Asymptotics => asymptotic(&mut r)?,
        Suite::Convergence => convergence(&mut r)?,
    }
    Ok(r)
}

fn identities(r: &mut Report, order: usize, guard: usize) -> Result<()> {
    let no = nekrasov_okounkov_check(order)?;
    let detail = match &no.first_discrepancy {
        None => format!("exact through q^{order}"),
        Some((m, l, rr)) => format!("q^{m}: sum side {l} vs product side {rr}"),
    };
    r.check("nekrasov-okounkov", no.holds(), detail);

    let han_order = order.min(8);
    for t in [2usize, 3] {
        let h = han_yz_check(han_order, t)?;
        let detail = match &h.first_discrepancy {
            None => format!("exact through q^{han_order}"),
            Some((m, l, rr)) => format!("q^{m}: {l} vs {rr}"),
        };
        r.check(format!("han t={t}"), h.holds(), detail);
    }

    let mut mismatch = None;
    'outer: for n in 0..=guard {
        for t in 1..=5 {
            for flavor in [Flavor::Equal, Flavor::Multiple] {
                let brute = brute_force_distribution(n, t, flavor, guard)?;
                if brute != exact_distribution(n, t, flavor)? {
                    mismatch = Some(format!("n={n} t={t} {flavor}"));
                    break 'outer;
                }
            }
        }
    }
    r.check(
        "engine vs enumeration",
        mismatch.is_none(),
        mismatch.unwrap_or_else(|| format!("n <= {guard}, t <= 5, both flavors")),
    );
    Ok(())
}

fn halving_ratios(pick: fn(&EmSums) -> SumPair, t: usize, tv: f64) -> Result<(Vec<f64>, bool)> {
    let pairs: Vec<SumPair> = [0.1, 0.05, 0.025]
        .iter()
        .map(|&a| em_sums(a, t, tv).map(|s| pick(&s)))
        .collect::<Result<_>>()?;
    // an error at rounding level means the first-order term vanishes
    let negligible = pairs.iter().all(|p| p.error().abs() < 1e-12 * p.main.abs());
    let ratios = pairs.windows(2).map(|w| w[0].error().abs() / w[1].error().abs()).collect();
    Ok((ratios, negligible))
}

fn asymptotic(r: &mut Report) -> Result<()> {
    for &tv in &[0.5, 1.0, 2.0] {
        for t in [1usize, 2, 5] {
            let mut scaled = Vec::new();
            for n in [100usize, 1000, 10000] {
                let s = solve_saddle_g(n, t, tv, 1e-10)?;
                scaled.push((s.alpha - s.expansion_value).abs() * (n as f64).powf(1.5));
            }
            let ok = scaled.iter().all(|v| *v <= 3.0 * scaled[0] + 0.05);
            r.check(
                format!("saddle expansion T={tv} t={t}"),
                ok,
                format!("|alpha - expansion| n^1.5 = {:.4} {:.4} {:.4}", scaled[0], scaled[1], scaled[2]),
            );
        }
    }

    let picks: [(&str, fn(&EmSums) -> SumPair); 3] = [("a0", |s| s.a0), ("b", |s| s.b), ("c", |s| s.c)];
    for &tv in &[0.5, 2.0] {
        for t in [1usize, 2] {
            for (name, pick) in picks {
                let (ratios, negligible) = halving_ratios(pick, t, tv)?;
                let ok = negligible || ratios.iter().all(|q| (1.4..=2.6).contains(q));
                let detail = if negligible {
                    "error at rounding level for every alpha".to_string()
                } else {
                    format!("error ratios {:.3} {:.3}", ratios[0], ratios[1])
                };
                r.check(format!("lemma eq {name} T={tv} t={t}"), ok, detail);
            }
            let worst = [0.1, 0.05, 0.025]
                .iter()
                .map(|&a| em_sums(a, t, tv).map(|s| s.a.error().abs()))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            r.check(format!("lemma eq a T={tv} t={t}"), worst < 1.0, format!("max |error| {worst:.4}"));
        }
    }

    for &tv in &[0.5, 1.0, 2.0] {
        for t in [1usize, 2] {
            let gaps = [400usize, 1600, 6400]
                .iter()
                .map(|&n| {
                    let exact = evaluate_p(n, t, Flavor::Equal, tv)?;
                    let main = prop1_main_term(n, t, tv)?;
                    Ok(((exact.ln_abs - main.ln_abs).exp() - 1.0).abs())
                })
                .collect::<Result<Vec<f64>>>()?;
            let ok = gaps[0] > gaps[1] && gaps[1] > gaps[2] && gaps[2] < 0.5;
            r.check(
                format!("main term P T={tv} t={t}"),
                ok,
                format!("|ratio - 1| = {:.4} {:.4} {:.4}", gaps[0], gaps[1], gaps[2]),
            );
        }
    }
    for &a in &[0.0, 1.0] {
        for t in [1usize, 2] {
            let gaps = [400usize, 1600, 6400]
                .iter()
                .map(|&n| {
                    let tn = (a / (n as f64).sqrt()).exp();
                    let exact = evaluate_p(n, t, Flavor::Multiple, tn)?;
                    let main = prop2_main_term(n, t, a, 0.0)?;
                    Ok(((exact.ln_abs - main.ln_abs).exp() - 1.0).abs())
                })
                .collect::<Result<Vec<f64>>>()?;
            let ok = gaps[0] > gaps[1] && gaps[1] > gaps[2] && gaps[2] < 0.5;
            r.check(
                format!("main term Phat alpha={a} t={t}"),
                ok,
                format!("|ratio - 1| = {:.4} {:.4} {:.4}", gaps[0], gaps[1], gaps[2]),
            );
        }
    }
    Ok(())
}

fn convergence(r: &mut Report) -> Result<()> {
    let ladder = [500usize, 1000, 2000, 4000];
    let rs = [-1.0, 0.5, 1.0];
    let mut ks = Vec::new();
    let mut mgf_gaps = Vec::new();
    let mut last = None;
    for &n in &ladder {
        let d = exact_distribution(n, 2, Flavor::Equal)?;
        let p = theorem1_params(n, 2)?;
        let s = standardize(&d, &p)?;
        ks.push(ks_distance(&s, &p.limit_model()));
        let gaps = rs
            .iter()
            .map(|&x| mgf(&d, p.mean, p.sigma(), x).map(|m| (m - p.limit_mgf(x)).abs()))
            .collect::<Result<Vec<_>>>()?;
        mgf_gaps.push(gaps);
        last = Some((d, p));
    }
    let decreasing = ks.windows(2).all(|w| w[1] < w[0]);
    r.check(
        "KS to normal decreasing",
        decreasing,
        format!("{:.4} {:.4} {:.4} {:.4}", ks[0], ks[1], ks[2], ks[3]),
    );
    for (i, x) in rs.iter().enumerate() {
        let g: Vec<f64> = mgf_gaps.iter().map(|v| v[i]).collect();
        let ok = g.windows(2).all(|w| w[1] < w[0]);
        r.check(
            format!("MGF gap decreasing r={x}"),
            ok,
            format!("{:.4} {:.4} {:.4} {:.4}", g[0], g[1], g[2], g[3]),
        );
    }
    let (d, p) = last.expect("ladder is nonempty");
    let m = exact_moments(&d);
    let mean_gap = (m.mean_f64() - p.mean).abs() / p.mean;
    r.check("mean n=4000 t=2", mean_gap < 0.05, format!("relative gap {mean_gap:.4}"));
    let var_ratio = m.variance_f64() / p.variance;
    r.check(
        "variance n=4000 t=2",
        (0.8..=1.2).contains(&var_ratio),
        format!("exact / asymptotic {var_ratio:.4}"),
    );

    let d = exact_distribution(1000, 11, Flavor::Multiple)?;
    let p = theorem2_params(1000, 11)?;
    let m = exact_moments(&d);
    let rel = |a: f64, b: f64| (a - b).abs() / b;
    let gaps = [
        rel(m.mean_f64(), p.mean),
        rel(m.mode as f64, p.mode.unwrap_or(f64::NAN)),
        rel(m.variance_f64(), p.variance),
    ];
    r.check(
        "moments n=1000 t=11",
        gaps[0] < 0.10 && gaps[1] < 0.10 && gaps[2] < 0.15,
        format!("relative gaps mean {:.4} mode {:.4} variance {:.4}", gaps[0], gaps[1], gaps[2]),
    );
    let m_half = mgf(&d, p.mean, p.sigma(), 0.5)?;
    let target = p.limit_mgf(0.5);
    r.check(
        "MGF n=1000 t=11 r=0.5",
        rel(m_half, target) < 0.15,
        format!("{m_half:.4} vs limit {target:.4}"),
    );
    Ok(())
}
