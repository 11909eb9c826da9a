//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use hookdist::asymptotics::{
    em_sums, prop1_main_term, prop2_main_term, solve_saddle_g, theorem1_params, theorem2_params, EmSums, SumPair,
};
use hookdist::engine::evaluate_p;
use hookdist::identities::{han_yz_check, nekrasov_okounkov_check};
use hookdist::partition::{brute_force_distribution, DEFAULT_BRUTE_FORCE_GUARD};
use hookdist::special::{dilog, normal_cdf};
use hookdist::stats::{exact_moments, ks_distance, mgf, standardize};
use hookdist::{exact_distribution, Flavor};
use num_bigint::BigUint;
use num_traits::{One, Zero};

struct Outcome {
    passed: bool,
    lines: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            passed: true,
            lines: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, line: String) {
        self.passed &= ok;
        self.lines.push(format!("{} {line}", if ok { "ok  " } else { "FAIL" }));
    }

    fn note(&mut self, line: String) {
        self.lines.push(format!("     {line}"));
    }
}

fn sci(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.3e}")).collect::<Vec<_>>().join(", ")
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hookdist"))
}

fn run_cli(args: &[&str]) -> (String, Duration) {
    let start = Instant::now();
    let out = bin().args(args).output().expect("binary runs");
    let elapsed = start.elapsed();
    assert!(out.status.success(), "hookdist {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    (String::from_utf8(out.stdout).expect("utf8"), elapsed)
}

/// Peak resident memory of finished child processes, in bytes.
fn children_max_rss() -> u64 {
    let mut usage: libc::rusage = unsafe { std::mem::zeroed() };
    unsafe { libc::getrusage(libc::RUSAGE_CHILDREN, &mut usage) };
    usage.ru_maxrss as u64 * 1024
}

/// p(0..=n) by the parts-bounded recurrence, independent of the engine.
fn partition_counts_by_parts(n: usize) -> Vec<BigUint> {
    let mut p = vec![BigUint::zero(); n + 1];
    p[0] = BigUint::one();
    for part in 1..=n {
        for m in part..=n {
            let add = p[m - part].clone();
            p[m] += add;
        }
    }
    p
}

fn parse_counts(json: &str) -> (BigUint, Vec<(usize, BigUint)>) {
    let v: serde_json::Value = serde_json::from_str(json).expect("json record");
    let total: BigUint = v["total"].as_str().unwrap().parse().unwrap();
    let counts = v["counts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e[0].as_u64().unwrap() as usize, e[1].as_str().unwrap().parse().unwrap()))
        .collect();
    (total, counts)
}

fn table_csv(table: &str) -> (Vec<[f64; 4]>, Duration) {
    let path = std::env::temp_dir().join(format!("hookdist-acceptance-table{table}.csv"));
    let (_, elapsed) = run_cli(&["table", "--table", table, "--output", path.to_str().unwrap()]);
    let text = std::fs::read_to_string(&path).unwrap();
    let rows = text
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<f64> = l.split(',').map(|v| v.parse().unwrap()).collect();
            [f[0], f[2], f[3], f[4]]
        })
        .collect();
    (rows, elapsed)
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    let (out, elapsed) = run_cli(&["dist", "--n", "19", "--t", "2", "--flavor", "multiple"]);
    let (total, counts) = parse_counts(&out);
    let expected: Vec<(usize, BigUint)> = [(2usize, 5u32), (8, 185), (9, 300)]
        .into_iter()
        .map(|(m, c)| (m, BigUint::from(c)))
        .collect();
    o.check(counts == expected, format!("counts {:?}", counts.iter().map(|(m, c)| format!("{m}:{c}")).collect::<Vec<_>>()));
    o.check(total == BigUint::from(490u32), format!("total {total}"));
    o.check(elapsed < Duration::from_secs(1), format!("runtime {:.3} s < 1 s", elapsed.as_secs_f64()));
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    let (out, elapsed) = run_cli(&["dist", "--n", "5000", "--t", "2", "--flavor", "equal", "--ring", "exact"]);
    let rss = children_max_rss();
    let (total, counts) = parse_counts(&out);
    let get = |m: usize| counts.iter().find(|(k, _)| *k == m).map(|(_, c)| c.to_string()).unwrap_or_default();
    for (m, want) in [(1usize, "704"), (2, "9211712"), (98, "1805943379138"), (99, "2")] {
        o.check(get(m) == want, format!("counts[{m}] = {} (want {want})", get(m)));
    }
    let sum: BigUint = counts.iter().map(|(_, c)| c).sum();
    let p = partition_counts_by_parts(5000);
    o.check(sum == p[5000] && total == p[5000], "sum of counts = p(5000) (parts-recurrence oracle)".into());
    o.check(
        elapsed <= Duration::from_secs(15 * 60),
        format!("runtime {:.2} s <= 900 s", elapsed.as_secs_f64()),
    );
    o.check(
        rss <= 4 << 30,
        format!("peak child memory {:.1} MiB <= 4096 MiB", rss as f64 / (1 << 20) as f64),
    );
    o
}

fn table_criterion(table: &str, printed_d: [f64; 4], printed_limit: [f64; 4], budget: Option<Duration>) -> Outcome {
    let mut o = Outcome::new();
    let (rows, elapsed) = table_csv(table);
    o.check(rows.len() == 4, format!("{} rows", rows.len()));
    for (i, row) in rows.iter().enumerate().take(4) {
        let [x, d, limit, ratio] = *row;
        let ok_d = (d - printed_d[i]).abs() <= 2e-3;
        let ok_l = (limit - printed_limit[i]).abs() <= 1e-4;
        o.check(
            ok_d && ok_l,
            format!(
                "x = {x:>5}: D = {d:.5} (printed {:.4}, tol 2e-3)  limit = {limit:.5} (printed {:.4}, tol 1e-4)  ratio {ratio:.4}",
                printed_d[i], printed_limit[i]
            ),
        );
    }
    if let Some(b) = budget {
        o.check(elapsed <= b, format!("runtime {:.2} s <= {} s", elapsed.as_secs_f64(), b.as_secs()));
    }
    o
}

fn criterion_3() -> Outcome {
    table_criterion("1", [0.0658, 0.5055, 0.8246, 0.9685], [0.0668, 0.5000, 0.8413, 0.9772], None)
}

fn criterion_4() -> Outcome {
    table_criterion(
        "2",
        [0.1319, 0.7410, 0.8226, 0.8872],
        [0.1467, 0.7954, 0.8474, 0.8880],
        Some(Duration::from_secs(120)),
    )
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let mut cases = 0;
    for n in 0..=25 {
        for t in 1..=5 {
            for flavor in [Flavor::Equal, Flavor::Multiple] {
                cases += 1;
                let brute = brute_force_distribution(n, t, flavor, DEFAULT_BRUTE_FORCE_GUARD).unwrap();
                if brute != exact_distribution(n, t, flavor).unwrap() {
                    mismatches.push(format!("n={n} t={t} {flavor}"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    o.check(mismatches.is_empty(), format!("{cases} cases equal to enumeration; mismatches {mismatches:?}"));
    o.check(elapsed < Duration::from_secs(120), format!("runtime {:.2} s < 120 s", elapsed.as_secs_f64()));
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let no = nekrasov_okounkov_check(10).unwrap();
    let e = start.elapsed();
    o.check(
        no.holds() && e < Duration::from_secs(60),
        format!("Nekrasov-Okounkov exact through q^10 ({:.2} s)", e.as_secs_f64()),
    );
    for t in [2usize, 3] {
        let start = Instant::now();
        let h = han_yz_check(8, t).unwrap();
        let e = start.elapsed();
        o.check(
            h.holds() && e < Duration::from_secs(60),
            format!("Han (y, z) identity, t = {t}, exact through q^8 ({:.2} s)", e.as_secs_f64()),
        );
    }
    o
}

fn decreasing_below(gaps: &[f64], bound: f64) -> bool {
    gaps.windows(2).all(|w| w[1] < w[0]) && gaps[gaps.len() - 1] < bound
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    let ladder = [400usize, 1600, 6400];
    for &tv in &[0.5, 1.0, 2.0] {
        for t in [1usize, 2] {
            let gaps: Vec<f64> = ladder
                .iter()
                .map(|&n| {
                    let exact = evaluate_p(n, t, Flavor::Equal, tv).unwrap();
                    let main = prop1_main_term(n, t, tv).unwrap();
                    ((exact.ln_abs - main.ln_abs).exp() - 1.0).abs()
                })
                .collect();
            o.check(
                decreasing_below(&gaps, 0.5),
                format!("P_t(n;T)   T = {tv}, t = {t}: |exact/main - 1| = {gaps:.4?}"),
            );
        }
    }
    for &a in &[0.0, 1.0] {
        for t in [1usize, 2] {
            let gaps: Vec<f64> = ladder
                .iter()
                .map(|&n| {
                    let tn = (a / (n as f64).sqrt()).exp();
                    let exact = evaluate_p(n, t, Flavor::Multiple, tn).unwrap();
                    let main = prop2_main_term(n, t, a, 0.0).unwrap();
                    ((exact.ln_abs - main.ln_abs).exp() - 1.0).abs()
                })
                .collect();
            o.check(
                decreasing_below(&gaps, 0.5),
                format!("Phat_t(n;T_n) alpha = {a}, t = {t}: |exact/main - 1| = {gaps:.4?}"),
            );
        }
    }
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    for &tv in &[0.5, 1.0, 2.0] {
        for t in [1usize, 2, 5] {
            let scaled: Vec<f64> = [100usize, 1000, 10000]
                .iter()
                .map(|&n| {
                    let s = solve_saddle_g(n, t, tv, 1e-10).unwrap();
                    (s.alpha - s.expansion_value).abs() * (n as f64).powf(1.5)
                })
                .collect();
            let ok = scaled.iter().all(|v| *v <= 3.0 * scaled[0] && *v >= scaled[0] / 3.0);
            o.check(ok, format!("T = {tv}, t = {t}: |alpha - expansion| n^(3/2) = {scaled:.4?}"));
        }
    }
    o
}

fn criterion_9() -> Outcome {
    let mut o = Outcome::new();
    let alphas = [0.1, 0.05, 0.025];
    let picks: [(&str, fn(&EmSums) -> SumPair); 3] = [("a0", |s| s.a0), ("b", |s| s.b), ("c", |s| s.c)];
    for &tv in &[0.5, 2.0] {
        for t in [1usize, 2] {
            let sums: Vec<EmSums> = alphas.iter().map(|&a| em_sums(a, t, tv).unwrap()).collect();
            for (name, pick) in picks {
                let errs: Vec<f64> = sums.iter().map(|s| pick(s).error().abs()).collect();
                let ratios = [errs[0] / errs[1], errs[1] / errs[2]];
                let ok = ratios.iter().all(|r| (1.4..=2.6).contains(r));
                o.check(ok, format!("eq {name:<2} T = {tv}, t = {t}: |error| = [{}], halving ratios {ratios:.3?}", sci(&errs)));
                if !ok {
                    let main = pick(&sums[2]).main;
                    o.note(format!(
                        "the error is at the rounding floor (|error| / main = {:.1e}): at T = 2 the summand is \
                         even in j, so every Euler-Maclaurin correction vanishes",
                        errs[2] / main
                    ));
                }
            }
            let errs: Vec<f64> = sums.iter().map(|s| s.a.error().abs()).collect();
            o.check(
                errs.iter().all(|e| *e <= 1.0),
                format!("eq a  T = {tv}, t = {t}: |error| = {errs:.4?} bounded by 1"),
            );
        }
    }
    o
}

fn criterion_10() -> Outcome {
    let mut o = Outcome::new();
    let ladder = [500usize, 1000, 2000, 4000];
    let mut ks = Vec::new();
    let mut last = None;
    for &n in &ladder {
        let d = exact_distribution(n, 2, Flavor::Equal).unwrap();
        let p = theorem1_params(n, 2).unwrap();
        let s = standardize(&d, &p).unwrap();
        let jump = s.support.iter().map(|x| x.1).fold(0.0, f64::max);
        ks.push((ks_distance(&s, &p.limit_model()), jump));
        last = Some((d, p));
    }
    let values: Vec<f64> = ks.iter().map(|k| k.0).collect();
    o.check(values.windows(2).all(|w| w[1] < w[0]), format!("KS(Y_2(n), normal) decreasing over {ladder:?}: {values:.4?}"));
    o.check(values[3] < 0.05, format!("KS at n = 4000: {:.4} < 0.05", values[3]));
    if values[3] >= 0.05 {
        o.note(format!(
            "lower bound from the lattice: the largest single jump is {:.4}, so any continuous CDF is at least {:.4} away",
            ks[3].1,
            ks[3].1 / 2.0
        ));
    }
    let (d, p) = last.unwrap();
    for r in [-1.0, 0.5, 1.0] {
        let m = mgf(&d, p.mean, p.sigma(), r).unwrap();
        let target = (r * r / 2.0f64).exp();
        o.check(
            (m - target).abs() < 0.1,
            format!("M(Y_2(4000); {r}) = {m:.4} vs e^(r^2/2) = {target:.4}, gap {:.4} < 0.1", (m - target).abs()),
        );
    }
    o
}

fn criterion_11() -> Outcome {
    let mut o = Outcome::new();
    let d = exact_distribution(1000, 11, Flavor::Multiple).unwrap();
    let p = theorem2_params(1000, 11).unwrap();
    let s = standardize(&d, &p).unwrap();
    // the stated limit gamma(5; sqrt(5) x + 5) / 24, evaluated independently
    let stated = |x: f64| {
        let y = 5f64.sqrt() * x + 5.0;
        if y <= 0.0 {
            return 0.0;
        }
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..5 {
            term *= y / k as f64;
            sum += term;
        }
        1.0 - (-y).exp() * sum
    };
    let ks = hookdist::stats::ks_distance_with(&s, stated);
    o.check(ks < 0.08, format!("KS(Yhat_11(1000), gamma(5; sqrt5 x + 5)/24) = {ks:.4} < 0.08"));
    if ks >= 0.08 {
        let reflected = ks_distance(&s, &p.mgf_limit_model());
        o.note(format!(
            "KS to the law a X + b with a = -1, b = sqrt(2(t-1))/2 (the law whose MGF the convergence argument matches) = {reflected:.4}"
        ));
        o.note("the data are left-skewed (mode above mean); the stated CDF is the law of +X - k theta, which is right-skewed".into());
    }
    let m = exact_moments(&d);
    let rel = |a: f64, b: f64| (a - b).abs() / b;
    let mode = p.mode.unwrap();
    o.check(
        rel(m.mean_f64(), p.mean) < 0.10,
        format!("mean {:.4} vs {:.4} (within 10%)", m.mean_f64(), p.mean),
    );
    o.check(rel(m.mode as f64, mode) < 0.10, format!("mode {} vs {mode:.4} (within 10%)", m.mode));
    o.check(
        rel(m.variance_f64(), p.variance) < 0.15,
        format!("variance {:.4} vs {:.4} (within 15%)", m.variance_f64(), p.variance),
    );
    o
}

fn criterion_12() -> Outcome {
    let mut o = Outcome::new();
    let e2 = normal_cdf(2.0);
    o.check((e2 - 0.9772).abs() <= 1e-4, format!("E(2.0) = {e2:.6}"));
    let p = theorem2_params(1000, 11).unwrap().limit_model();
    for (x, printed) in [(-1.0, 0.1467), (0.75, 0.7954), (1.0, 0.8474), (1.25, 0.8880)] {
        let v = p.cdf(x);
        o.check((v - printed).abs() <= 1e-4, format!("Ehat_11({x}) = {v:.6} (printed {printed})"));
    }
    let worst = (1..=100)
        .map(|i| {
            let x = i as f64 / 101.0;
            let lhs = dilog(x).unwrap() + dilog(1.0 - x).unwrap();
            (lhs - (PI * PI / 6.0 - x.ln() * (1.0 - x).ln())).abs()
        })
        .fold(0.0, f64::max);
    o.check(worst < 1e-10, format!("Li2 reflection residual {worst:.2e} < 1e-10 on 100 points"));
    o
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("exact vector n = 19", criterion_1),
        ("exact vector n = 5000", criterion_2),
        ("table 1 reproduction", criterion_3),
        ("table 2 reproduction", criterion_4),
        ("oracle equivalence", criterion_5),
        ("identity suites", criterion_6),
        ("asymptotic sanity", criterion_7),
        ("saddle expansion", criterion_8),
        ("lemma error scaling", criterion_9),
        ("convergence, normal limit", criterion_10),
        ("convergence, shifted Gamma limit", criterion_11),
        ("special functions", criterion_12),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let tag = if outcome.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2}: {tag}  {name} ({:.2} s)", i + 1, start.elapsed().as_secs_f64());
        for l in &outcome.lines {
            println!("    {l}");
        }
        if !outcome.passed {
            failed.push(i + 1);
        }
    }
    println!();
    if failed.is_empty() {
        println!("acceptance: all 12 criteria pass");
    } else {
        println!("acceptance: {} of 12 criteria fail: {failed:?}", failed.len());
        std::process::exit(1);
    }
}
