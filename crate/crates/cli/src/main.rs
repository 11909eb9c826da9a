use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use hookdist::engine::{check_exact_work, evaluate_p, DEFAULT_EXACT_WORK_CEILING};
use hookdist::stats::{params_for, rational_to_f64, table_row};
use hookdist::{asymptotics, exact_distribution, float_distribution, Error, Flavor, HookDistribution};
use num_bigint::BigUint;
use num_rational::BigRational;

mod verify;

#[derive(Parser)]
#[command(name = "hookdist", version, about = "Hook-length statistics over integer partitions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Equal,
    Multiple,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::Equal => Flavor::Equal,
            FlavorArg::Multiple => Flavor::Multiple,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Ring {
    Exact,
    Float,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the distribution of a hook statistic over partitions of n
    Dist {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value = "multiple")]
        flavor: FlavorArg,
        #[arg(long, value_enum, default_value = "exact")]
        ring: Ring,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Write to this file instead of stdout
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Largest n * (n / t) accepted by the exact ring
        #[arg(long, default_value_t = DEFAULT_EXACT_WORK_CEILING)]
        work_ceiling: u64,
    },
    /// Compare the cumulative distribution with its limit on a grid of x
    Table {
        /// 1: n = 5000, t = 2, hooks equal to t; 2: n = 1000, t = 11, hooks in tN
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        table: Option<u8>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, value_enum)]
        flavor: Option<FlavorArg>,
        /// Comma-separated grid, e.g. "-1,0,1"; an empty string gives no rows
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        /// CSV output file
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_EXACT_WORK_CEILING)]
        work_ceiling: u64,
    },
    /// Run a property suite and report pass/fail per item
    Verify {
        #[arg(long, value_enum)]
        suite: verify::Suite,
        /// q-order for the identity checks
        #[arg(long, default_value_t = 10)]
        order: usize,
        /// Largest n compared against brute-force enumeration
        #[arg(long, default_value_t = 16)]
        brute_force_guard: usize,
    },
    /// Evaluate the main-term asymptotics at one point
    Asym {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        prop: u8,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        /// Marker value T (--prop 1)
        #[arg(long = "T", default_value_t = 1.0)]
        marker: f64,
        /// alpha(T) with T_n = exp(alpha(T)/sqrt(n)) (--prop 2)
        #[arg(long = "alphaT", default_value_t = 0.0, allow_negative_numbers = true)]
        alpha_t: f64,
        #[arg(long = "epsT", default_value_t = 0.0, allow_negative_numbers = true)]
        eps_t: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_EXACT_WORK_CEILING)]
        work_ceiling: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = match e.downcast_ref::<Error>() {
                Some(Error::ResourceGuard(_)) => 3,
                Some(Error::Domain(_)) => 2,
                Some(_) => 1,
                None => 2,
            };
            ExitCode::from(code)
        }
    }
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("HOOKDIST_THREADS") {
        let k: usize = v
            .parse()
            .map_err(|_| anyhow!("HOOKDIST_THREADS must be a positive integer, got '{v}'"))?;
        rayon::ThreadPoolBuilder::new().num_threads(k).build_global()?;
    }
    Ok(())
}

fn emit(output: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn exact(n: usize, t: usize, flavor: Flavor, ceiling: u64) -> hookdist::Result<HookDistribution> {
    if t == 0 {
        return Err(Error::Domain("t must be at least 1".into()));
    }
    check_exact_work(n, t, ceiling)?;
    exact_distribution(n, t, flavor)
}

fn probability(count: &BigUint, total: &BigUint) -> f64 {
    rational_to_f64(&BigRational::new(count.clone().into(), total.clone().into()))
}

fn run(command: Command) -> anyhow::Result<u8> {
    match command {
        Command::Dist {
            n,
            t,
            flavor,
            ring,
            format,
            output,
            work_ceiling,
        } => {
            let flavor = Flavor::from(flavor);
            let text = match ring {
                Ring::Exact => {
                    let d = exact(n, t, flavor, work_ceiling)?;
                    match format {
                        Format::Json => d.to_record().to_json() + "\n",
                        Format::Csv => {
                            let mut s = String::from("m,count,probability\n");
                            for (m, c) in d.counts() {
                                s += &format!("{m},{c},{:.16e}\n", probability(c, d.total()));
                            }
                            s
                        }
                    }
                }
                Ring::Float => {
                    let d = float_distribution(n, t, flavor)?;
                    match format {
                        Format::Json => d.to_record().to_json() + "\n",
                        Format::Csv => {
                            let mut s = String::from("m,count,probability\n");
                            for &(m, p) in &d.probabilities {
                                s += &format!("{m},{:.16e},{p:.16e}\n", d.approx_count(m));
                            }
                            s
                        }
                    }
                }
            };
            emit(&output, &text)?;
            Ok(0)
        }
        Command::Table {
            table,
            n,
            t,
            flavor,
            x,
            output,
            work_ceiling,
        } => {
            let (dn, dt, dflavor, dgrid): (usize, usize, Flavor, &[f64]) = match table {
                Some(1) => (5000, 2, Flavor::Equal, &[-1.5, 0.0, 1.0, 2.0]),
                Some(2) => (1000, 11, Flavor::Multiple, &[-1.0, 0.75, 1.0, 1.25]),
                _ => match (n, t) {
                    (Some(n), Some(t)) => (n, t, Flavor::Equal, &[]),
                    _ => return Err(Error::Domain("give --table 1|2, or --n and --t".into()).into()),
                },
            };
            let n = n.unwrap_or(dn);
            let t = t.unwrap_or(dt);
            let flavor = flavor.map(Flavor::from).unwrap_or(dflavor);
            let grid = match x {
                Some(s) => parse_grid(&s)?,
                None => dgrid.to_vec(),
            };
            let params = params_for(n, t, flavor)?;
            let d = exact(n, t, flavor, work_ceiling)?;
            let mut csv = String::from("x,k,D,limit,ratio\n");
            println!("n = {n}, t = {t}, flavor = {flavor}");
            println!("{:>8} {:>6} {:>10} {:>10} {:>10}", "x", "k", "D", "limit", "ratio");
            for &x in &grid {
                let r = table_row(&d, &params, x);
                println!("{:>8.4} {:>6} {:>10.6} {:>10.6} {:>10.6}", r.x, r.k, r.d, r.limit, r.ratio);
                csv += &format!("{},{},{:.16e},{:.16e},{:.16e}\n", r.x, r.k, r.d, r.limit, r.ratio);
            }
            if let Some(path) = &output {
                fs::write(path, csv).with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(0)
        }
        Command::Verify {
            suite,
            order,
            brute_force_guard,
        } => {
            let report = verify::run(suite, order, brute_force_guard)?;
            print!("{}", report.render());
            Ok(if report.all_passed() { 0 } else { 1 })
        }
        Command::Asym {
            prop,
            n,
            t,
            marker,
            alpha_t,
            eps_t,
            tol,
            work_ceiling,
        } => {
            let (main, saddle, value) = if prop == 1 {
                let main = asymptotics::prop1_main_term(n, t, marker)?;
                let saddle = asymptotics::solve_saddle_g(n, t, marker, tol)?;
                (main, saddle, marker)
            } else {
                let main = asymptotics::prop2_main_term(n, t, alpha_t, eps_t)?;
                let saddle = asymptotics::solve_saddle_ghat(n, t, alpha_t + eps_t, tol)?;
                (main, saddle, ((alpha_t + eps_t) / (n as f64).sqrt()).exp())
            };
            println!("proposition     {prop}");
            println!("n, t            {n}, {t}");
            println!("T               {value:.12e}");
            println!("main term       {main}");
            println!("ln main term    {:.12}", main.ln_abs);
            println!("saddle          {:.15e}", saddle.alpha);
            println!("expansion       {:.15e}", saddle.expansion_value);
            println!("residual        {:.3e}", saddle.residual);
            if check_exact_work(n, t, work_ceiling).is_ok() {
                let flavor = if prop == 1 { Flavor::Equal } else { Flavor::Multiple };
                let exact = evaluate_p(n, t, flavor, value)?;
                println!("ln coefficient  {:.12}", exact.ln_abs);
                println!("ratio           {:.12}", (exact.ln_abs - main.ln_abs).exp());
            } else {
                println!("ratio           (skipped: above work ceiling)");
            }
            Ok(0)
        }
    }
}

fn parse_grid(s: &str) -> anyhow::Result<Vec<f64>> {
    s.split(',')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .map(|v| {
            v.parse::<f64>()
                .map_err(|_| anyhow::Error::new(Error::Domain(format!("bad grid value '{v}'"))))
        })
        .collect()
}
