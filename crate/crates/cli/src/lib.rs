//! The `hecke-signs` command line as a library, so it can be driven in-process.

mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use hecke_signs::angles::{angle, relation_search, AngleSequence};
use hecke_signs::equidist::{
    pair_st_from_angles, pair_st_gof, prime_sign_density, sign_product_proportion_nu, synthetic_pairs,
    weyl_orbit_stats, UnitBox,
};
use hecke_signs::halfint::{epsilon_containment, halfint_sign_density, HalfIntForm, HalfIntegralSpec};
use hecke_signs::measures::{epsilon_interval_union, product_measure, sign_interval_union, st_measure, Sign};
use hecke_signs::newforms::{
    build_table, spec_from_table_file, CoefficientCache, EigenvalueTable, NewformSpec, Source, CACHE_DIR_ENV,
};
use hecke_signs::report::{sign_density_csv, write_file, Check, Report};
use hecke_signs::verify::{run_all, summary, write_outcomes, Tables, VerifyConfig};

use config::{pick, pick_list, require, FileConfig};

const DEFAULT_CACHE_DIR: &str = "hecke-cache";
const DEFAULT_VERIFY_DIR: &str = "hecke-reports";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] hecke_signs::Error),
    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
}

#[derive(Parser)]
#[command(name = "hecke-signs", version, about = "Sign changes of newform coefficients and Sato-Tate statistics")]
struct Cli {
    /// JSON file supplying defaults for any flag
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for JSON/CSV reports
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Coefficient cache directory (overrides $HECKE_SIGNS_CACHE)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Fail on a cache miss instead of computing the table
    #[arg(long, global = true)]
    no_build: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// p, a_p, λ(p) and θ_p for primes up to --limit
    Coeffs(FormArgs),
    /// Sato-Tate angles θ_p for primes up to --limit
    Angles(FormArgs),
    /// Search for integer relations between θ₁(p)/2π and θ₂(p)/2π
    RelationScreen(PairAtPrime),
    /// Sato-Tate measure of a sign union, or the product of two
    Measure(MeasureArgs),
    /// Weyl orbit of (νθ₁/2π, νθ₂/2π) mod 1: box proportions and discrepancy
    Weyl(PairAtPrime),
    /// Signs of λ₁(p^ν)λ₂(p^ν) along ν at a fixed prime
    NuDensity(PairAtPrime),
    /// Signs of λ₁(p^ν)λ₂(p^ν) over primes, odd ν
    PrimeDensity(PrimeArgs),
    /// Histogram of (θ₁(p), θ₂(p)) against the product Sato-Tate measure
    PairSt(PrimeArgs),
    /// Signs of synthesized half-integral coefficients a(tp^{2ν}) over primes
    HalfintDensity(PrimeArgs),
    /// Run every acceptance experiment and print a pass/fail table
    VerifyAll,
}

#[derive(Args)]
struct FormArgs {
    /// Preset label (delta, ec11, ec37) or path to a `p,a_p` table
    #[arg(long)]
    form: Option<String>,
    #[arg(long)]
    limit: Option<u64>,
}

#[derive(Args)]
struct PairAtPrime {
    #[arg(long)]
    f1: Option<String>,
    #[arg(long)]
    f2: Option<String>,
    #[arg(long)]
    p: Option<u64>,
    /// Number of terms ν = 1..x
    #[arg(long)]
    x: Option<u64>,
    #[arg(long)]
    height: Option<u32>,
    #[arg(long)]
    tolerance: Option<f64>,
    /// Box u1,v1,u2,v2 (repeatable, weyl only)
    #[arg(long = "box", value_parser = parse_box)]
    boxes: Vec<[f64; 4]>,
    /// Fail unless the positive proportion lies in LO,HI
    #[arg(long, value_parser = parse_band)]
    band: Option<(f64, f64)>,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Class {
    Pos,
    Neg,
}

impl From<Class> for Sign {
    fn from(c: Class) -> Self {
        match c {
            Class::Pos => Sign::Positive,
            Class::Neg => Sign::Negative,
        }
    }
}

#[derive(Args)]
struct MeasureArgs {
    #[arg(long)]
    nu: Option<u32>,
    #[arg(long, value_enum)]
    class: Option<Class>,
    /// Second factor of a product measure
    #[arg(long, value_enum)]
    class2: Option<Class>,
    /// Shrink to I_ε (pos) or I'_ε (neg)
    #[arg(long)]
    epsilon: Option<f64>,
}

#[derive(Args)]
struct PrimeArgs {
    #[arg(long)]
    f1: Option<String>,
    #[arg(long)]
    f2: Option<String>,
    /// Half-integral spec: delta-half, ec11-half or a JSON file
    #[arg(long)]
    s1: Option<String>,
    #[arg(long)]
    s2: Option<String>,
    /// Odd ν (repeatable)
    #[arg(long)]
    nu: Vec<u32>,
    /// Prime bound X
    #[arg(long)]
    limit: Option<u64>,
    #[arg(long)]
    bins: Option<usize>,
    /// ε for containment witnesses (repeatable)
    #[arg(long)]
    epsilon: Vec<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Also sample this many synthetic pairs (pair-st)
    #[arg(long)]
    synthetic: Option<usize>,
    #[arg(long, value_parser = parse_band)]
    band: Option<(f64, f64)>,
    #[arg(long)]
    zero_max: Option<f64>,
    #[arg(long)]
    max_deviation: Option<f64>,
    #[arg(long)]
    ks_max: Option<f64>,
}

fn parse_floats(s: &str, n: usize) -> Result<Vec<f64>, String> {
    let v: Vec<f64> =
        s.split(',').map(|x| x.trim().parse::<f64>().map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
    if v.len() != n {
        return Err(format!("expected {n} comma-separated numbers"));
    }
    Ok(v)
}

fn parse_box(s: &str) -> Result<[f64; 4], String> {
    let v = parse_floats(s, 4)?;
    Ok([v[0], v[1], v[2], v[3]])
}

fn parse_band(s: &str) -> Result<(f64, f64), String> {
    let v = parse_floats(s, 2)?;
    Ok((v[0], v[1]))
}

struct Context {
    file: FileConfig,
    out_dir: Option<PathBuf>,
    cache: CoefficientCache,
}

impl Context {
    fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let file = match &cli.config {
            Some(path) => FileConfig::read(path)?,
            None => FileConfig::default(),
        };
        let allow_build = !(cli.no_build || file.no_build.unwrap_or(false));
        let cache = match (&cli.cache_dir, std::env::var_os(CACHE_DIR_ENV).filter(|v| !v.is_empty())) {
            (Some(dir), _) => CoefficientCache::new(dir, allow_build),
            (None, Some(dir)) => CoefficientCache::new(dir, allow_build),
            (None, None) => {
                CoefficientCache::new(file.cache_dir.clone().unwrap_or_else(|| DEFAULT_CACHE_DIR.into()), allow_build)
            }
        };
        let out_dir = cli.out_dir.clone().or_else(|| file.out_dir.clone());
        Ok(Self { file, out_dir, cache })
    }

    fn form(&self, name: &str) -> Result<NewformSpec, CliError> {
        match NewformSpec::preset(name) {
            Ok(spec) => Ok(spec),
            Err(_) if Path::new(name).is_file() => Ok(spec_from_table_file(Path::new(name))?),
            Err(e) => Err(e.into()),
        }
    }

    fn table(&self, spec: &NewformSpec, limit: u64) -> Result<EigenvalueTable, CliError> {
        Ok(match spec.source {
            Source::ExplicitTable(_) => build_table(spec, limit)?,
            _ => self.cache.load_or_build(spec, limit)?,
        })
    }

    fn form_table(&self, name: &str, limit: u64) -> Result<EigenvalueTable, CliError> {
        self.table(&self.form(name)?, limit)
    }

    /// Writes the report and artifacts when an output directory is set.
    fn emit(&self, name: &str, report: &Report, artifacts: &[(String, String)]) -> Result<(), CliError> {
        if let Some(dir) = &self.out_dir {
            report.write_json(&dir.join(format!("{name}.json")))?;
            for (file, contents) in artifacts {
                write_file(&dir.join(file), contents)?;
            }
        }
        Ok(())
    }
}

fn coeffs(out: &mut dyn Write, ctx: &Context, args: &FormArgs, with_coefficients: bool) -> Result<bool, CliError> {
    let f = &ctx.file;
    let form = require(args.form.clone(), f.form.clone(), "form")?;
    let limit = pick(args.limit, f.limit, 100);
    let table = ctx.form_table(&form, limit)?;
    let angles = AngleSequence::from_table(&table)?;
    let mut csv = String::from(if with_coefficients { "p,a_p,lambda,theta\n" } else { "p,theta\n" });
    for (e, (_, theta)) in table.entries().iter().zip(&angles.entries) {
        if with_coefficients {
            csv.push_str(&format!("{},{},{},{}\n", e.p, e.ap, e.lambda, theta));
        } else {
            csv.push_str(&format!("{},{}\n", e.p, theta));
        }
    }
    write!(out, "{csv}")?;
    let name = if with_coefficients { "coeffs" } else { "angles" };
    let config = json!({"command": name, "form": form, "limit": limit});
    let report =
        Report::new(name, &config, json!({"form": table.label(), "primes": table.len()}))?.with_config(&config)?;
    ctx.emit(name, &report, &[(format!("{name}.csv"), csv)])?;
    Ok(true)
}

struct Pair {
    f1: String,
    f2: String,
    t1: EigenvalueTable,
    t2: EigenvalueTable,
}

fn pair(ctx: &Context, f1: &Option<String>, f2: &Option<String>, limit: u64) -> Result<Pair, CliError> {
    let f1 = require(f1.clone(), ctx.file.f1.clone(), "f1")?;
    let f2 = require(f2.clone(), ctx.file.f2.clone(), "f2")?;
    let t1 = ctx.form_table(&f1, limit)?;
    let t2 = ctx.form_table(&f2, limit)?;
    Ok(Pair { f1, f2, t1, t2 })
}

fn thetas(pair: &Pair, p: u64) -> Result<(f64, f64), CliError> {
    Ok((angle(pair.t1.lambda(p)?)?, angle(pair.t2.lambda(p)?)?))
}

fn relation_screen(out: &mut dyn Write, ctx: &Context, args: &PairAtPrime) -> Result<bool, CliError> {
    let f = &ctx.file;
    let p = pick(args.p, f.p, 5);
    let height = pick(args.height, f.height, 1_000);
    let tol = pick(args.tolerance, f.tolerance, 1e-9);
    let pair = pair(ctx, &args.f1, &args.f2, p)?;
    let (t1, t2) = thetas(&pair, p)?;
    let r = relation_search(t1, t2, height, tol)?;
    writeln!(out, "{}", r.summary())?;
    let config =
        json!({"command": "relation-screen", "f1": pair.f1, "f2": pair.f2, "p": p, "height": height, "tolerance": tol});
    let report =
        Report::new("relation-screen", &config, json!({"theta": [t1, t2], "screen": r}))?.with_config(&config)?;
    ctx.emit("relation-screen", &report, &[])?;
    Ok(true)
}

fn parse_class(s: &str) -> Result<Class, CliError> {
    Class::from_str(s, true).map_err(|e| CliError::Usage(format!("class: {e}")))
}

fn measure(out: &mut dyn Write, ctx: &Context, args: &MeasureArgs) -> Result<bool, CliError> {
    let f = &ctx.file;
    let nu = require(args.nu, f.nu.as_ref().and_then(|v| v.first().copied()), "nu")?;
    let class = match (args.class, &f.class) {
        (Some(c), _) => c,
        (None, Some(s)) => parse_class(s)?,
        (None, None) => Class::Pos,
    };
    let class2 = match (args.class2, &f.class2) {
        (Some(c), _) => Some(c),
        (None, Some(s)) => Some(parse_class(s)?),
        (None, None) => None,
    };
    let epsilon = args.epsilon.or_else(|| f.epsilon.as_ref().and_then(|v| v.first().copied()));
    let union = |c: Class| match epsilon {
        Some(eps) => epsilon_interval_union(nu, eps, matches!(c, Class::Neg)),
        None => sign_interval_union(nu, c.into()),
    };
    let u1 = union(class)?;
    let value = match class2 {
        Some(c2) => product_measure(&u1, &union(c2)?),
        None => st_measure(&u1),
    };
    writeln!(out, "{value}")?;
    let config = json!({"command": "measure", "nu": nu, "class": class, "class2": class2, "epsilon": epsilon});
    let report = Report::new("measure", &config, json!({"measure": value, "intervals": u1}))?.with_config(&config)?;
    ctx.emit("measure", &report, &[])?;
    Ok(true)
}

fn weyl(out: &mut dyn Write, ctx: &Context, args: &PairAtPrime) -> Result<bool, CliError> {
    let f = &ctx.file;
    let p = pick(args.p, f.p, 5);
    let x = pick(args.x, f.x, 1_000_000);
    let boxes = pick_list(args.boxes.clone(), f.boxes.clone(), vec![[0.0, 0.5, 0.0, 0.5]]);
    let unit_boxes = boxes.iter().map(|b| UnitBox::new(b[0], b[1], b[2], b[3])).collect::<Result<Vec<_>, _>>()?;
    let pair = pair(ctx, &args.f1, &args.f2, p)?;
    let (t1, t2) = thetas(&pair, p)?;
    let stats = weyl_orbit_stats(t1, t2, x, &unit_boxes)?;
    for b in &stats.boxes {
        let u = b.unit_box;
        writeln!(out, "box [{},{}]x[{},{}]: proportion {} (area {})", u.u1, u.v1, u.u2, u.v2, b.proportion, b.area)?;
    }
    writeln!(out, "discrepancy (64x64 anchored grid): {}", stats.discrepancy)?;
    let config = json!({"command": "weyl", "f1": pair.f1, "f2": pair.f2, "p": p, "x": x, "boxes": boxes});
    let report = Report::new("weyl", &config, &stats)?.with_config(&config)?;
    ctx.emit("weyl", &report, &[])?;
    Ok(true)
}

fn nu_density(out: &mut dyn Write, ctx: &Context, args: &PairAtPrime) -> Result<bool, CliError> {
    let f = &ctx.file;
    let p = pick(args.p, f.p, 5);
    let x = pick(args.x, f.x, 1_000_000);
    let height = pick(args.height, f.height, 1_000);
    let tol = pick(args.tolerance, f.tolerance, 1e-9);
    let band = args.band.or(f.band);
    let pair = pair(ctx, &args.f1, &args.f2, p)?;
    let r = sign_product_proportion_nu(&pair.t1, &pair.t2, p, x)?;
    let screen = relation_search(r.theta[0], r.theta[1], height, tol)?;
    let d = &r.report.densities;
    writeln!(out, "theta = ({}, {})", r.theta[0], r.theta[1])?;
    writeln!(out, "positive {} negative {} zero {} (of x = {x})", d.positive, d.negative, d.zero)?;
    if let Some(nz) = &r.report.nonzero_densities {
        writeln!(out, "among nonzero terms: positive {} negative {}", nz.positive, nz.negative)?;
    }
    writeln!(out, "{}", screen.summary())?;
    let config = json!({"command": "nu-density", "f1": pair.f1, "f2": pair.f2, "p": p, "x": x,
                        "height": height, "tolerance": tol, "band": band});
    let mut report = Report::new(
        "nu-density",
        &config,
        json!({"sign": r, "independence_screen": screen.summary(), "screen": screen}),
    )?
    .with_config(&config)?;
    if let Some((lo, hi)) = band {
        report.check(Check::zero("relations found by screen", screen.found as u64)).check(Check::within(
            "positive proportion",
            d.positive,
            lo,
            hi,
        ));
    }
    ctx.emit("nu-density", &report, &[("nu-density.csv".into(), sign_density_csv(&r.report))])?;
    Ok(report.passed)
}

fn prime_density(out: &mut dyn Write, ctx: &Context, args: &PrimeArgs) -> Result<bool, CliError> {
    let f = &ctx.file;
    let limit = pick(args.limit, f.limit, 100_000);
    let nus = pick_list(args.nu.clone(), f.nu.clone(), vec![1]);
    let band = args.band.or(f.band);
    let zero_max = args.zero_max.or(f.zero_max);
    let pair = pair(ctx, &args.f1, &args.f2, limit)?;
    let mut runs = Vec::new();
    let mut artifacts = Vec::new();
    let mut checks = Vec::new();
    for &nu in &nus {
        let r = prime_sign_density(&pair.t1, &pair.t2, nu, limit)?;
        let d = &r.report.densities;
        writeln!(
            out,
            "nu={nu}: positive {} negative {} zero {} (of {} primes)",
            d.positive, d.negative, d.zero, r.report.denominator
        )?;
        if let Some((lo, hi)) = band {
            checks.push(Check::within(format!("nu={nu} positive density"), d.positive, lo, hi));
            checks.push(Check::within(format!("nu={nu} negative density"), d.negative, lo, hi));
        }
        if let Some(z) = zero_max {
            checks.push(Check::at_most(format!("nu={nu} zero density"), d.zero, z));
        }
        artifacts.push((format!("prime-density-nu{nu}.csv"), sign_density_csv(&r.report)));
        runs.push(r);
    }
    let config = json!({"command": "prime-density", "f1": pair.f1, "f2": pair.f2, "limit": limit, "nu": nus,
                        "band": band, "zero_max": zero_max});
    let mut report = Report::new("prime-density", &config, json!({"runs": runs}))?.with_config(&config)?;
    for c in checks {
        report.check(c);
    }
    ctx.emit("prime-density", &report, &artifacts)?;
    Ok(report.passed)
}

fn pair_st(out: &mut dyn Write, ctx: &Context, args: &PrimeArgs) -> Result<bool, CliError> {
    let f = &ctx.file;
    let limit = pick(args.limit, f.limit, 100_000);
    let bins = pick(args.bins, f.bins, 8);
    let seed = pick(args.seed, f.seed, 1);
    let synthetic = pick(args.synthetic, f.synthetic, 0);
    let max_dev = args.max_deviation.or(f.max_deviation);
    let ks_max = args.ks_max.or(f.ks_max);
    let pair = pair(ctx, &args.f1, &args.f2, limit)?;
    let r = pair_st_gof(&pair.t1, &pair.t2, limit, bins)?;
    writeln!(out, "primes {} chi-square {} (dof {})", r.histogram.total, r.chi_square, bins * bins - 1)?;
    writeln!(out, "KS {} {}", r.ks[0], r.ks[1])?;
    writeln!(out, "max cell relative deviation {} (min expected count {})", r.max_relative_deviation, r.min_expected)?;
    let synth = if synthetic > 0 {
        let s = pair_st_from_angles(&synthetic_pairs(synthetic, seed), bins, 0)?;
        writeln!(out, "synthetic ({synthetic} samples) KS {} {}", s.ks[0], s.ks[1])?;
        Some(s)
    } else {
        None
    };
    let config = json!({"command": "pair-st", "f1": pair.f1, "f2": pair.f2, "limit": limit, "bins": bins,
                        "seed": seed, "synthetic": synthetic, "max_deviation": max_dev, "ks_max": ks_max});
    let mut report = Report::new(
        "pair-st",
        &config,
        json!({"chi_square": r.chi_square, "ks": r.ks, "max_relative_deviation": r.max_relative_deviation,
               "min_expected": r.min_expected, "primes": r.histogram.total,
               "synthetic_ks": synth.as_ref().map(|s| s.ks)}),
    )?
    .with_config(&config)?;
    if let Some(m) = max_dev {
        report.check(Check::at_most("max cell relative deviation", r.max_relative_deviation, m));
    }
    if let Some(k) = ks_max {
        report.check(Check::at_most("KS theta_1", r.ks[0], k)).check(Check::at_most("KS theta_2", r.ks[1], k));
    }
    ctx.emit("pair-st", &report, &[("pair-histogram.csv".into(), r.histogram.to_csv())])?;
    Ok(report.passed)
}

fn halfint_density(out: &mut dyn Write, ctx: &Context, args: &PrimeArgs) -> Result<bool, CliError> {
    let f = &ctx.file;
    let limit = pick(args.limit, f.limit, 100_000);
    let nus = pick_list(args.nu.clone(), f.nu.clone(), vec![1]);
    let epsilons = pick_list(args.epsilon.clone(), f.epsilon.clone(), vec![0.5, 0.1, 0.01]);
    let band = args.band.or(f.band);
    let s1 = HalfIntegralSpec::resolve(&require(args.s1.clone(), f.s1.clone(), "s1")?)?;
    let s2 = HalfIntegralSpec::resolve(&require(args.s2.clone(), f.s2.clone(), "s2")?)?;
    let t1 = ctx.table(&s1.underlying, limit)?;
    let t2 = ctx.table(&s2.underlying, limit)?;
    let f1 = HalfIntForm::new(&s1, &t1)?;
    let f2 = HalfIntForm::new(&s2, &t2)?;
    let mut runs = Vec::new();
    let mut witnesses = Vec::new();
    let mut checks = Vec::new();
    let mut artifacts = Vec::new();
    for &nu in &nus {
        let r = halfint_sign_density(f1, f2, nu, limit)?;
        let d = &r.report.densities;
        writeln!(
            out,
            "nu={nu}: positive {} negative {} zero {} (of {} primes)",
            d.positive, d.negative, d.zero, r.report.denominator
        )?;
        if let Some((lo, hi)) = band {
            checks.push(Check::within(format!("nu={nu} positive density"), d.positive, lo, hi));
        }
        for &eps in &epsilons {
            let w = epsilon_containment(f1, f2, nu, eps, limit)?;
            writeln!(
                out,
                "  eps={eps}: {} + {} primes in I x I, I' x I'; {} counterexamples",
                w.in_i,
                w.in_i_prime,
                w.counterexamples.len()
            )?;
            checks.push(Check::zero(
                format!("nu={nu} eps={eps} containment counterexamples"),
                w.counterexamples.len() as u64,
            ));
            witnesses.push(w);
        }
        artifacts.push((format!("halfint-density-nu{nu}.csv"), sign_density_csv(&r.report)));
        runs.push(r);
    }
    let config = json!({"command": "halfint-density", "s1": s1, "s2": s2, "limit": limit, "nu": nus,
                        "epsilon": epsilons, "band": band});
    let mut report = Report::new("halfint-density", &config, json!({"runs": runs, "containment": witnesses}))?
        .with_config(&config)?;
    for c in checks {
        report.check(c);
    }
    ctx.emit("halfint-density", &report, &artifacts)?;
    Ok(report.passed)
}

fn verify_all(out: &mut dyn Write, ctx: &Context) -> Result<bool, CliError> {
    let cfg: VerifyConfig = ctx.file.verify.clone().unwrap_or_default();
    let tables = Tables::load(&cfg, |spec, limit| ctx.cache.load_or_build(spec, limit))?;
    let outcomes = run_all(&cfg, &tables)?;
    let dir = ctx.out_dir.clone().unwrap_or_else(|| DEFAULT_VERIFY_DIR.into());
    write_outcomes(&dir, &outcomes)?;
    write!(out, "{}", summary(&outcomes))?;
    Ok(outcomes.iter().all(|o| o.passed()))
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    let ctx = Context::from_cli(cli)?;
    match &cli.command {
        Command::Coeffs(a) => coeffs(out, &ctx, a, true),
        Command::Angles(a) => coeffs(out, &ctx, a, false),
        Command::RelationScreen(a) => relation_screen(out, &ctx, a),
        Command::Measure(a) => measure(out, &ctx, a),
        Command::Weyl(a) => weyl(out, &ctx, a),
        Command::NuDensity(a) => nu_density(out, &ctx, a),
        Command::PrimeDensity(a) => prime_density(out, &ctx, a),
        Command::PairSt(a) => pair_st(out, &ctx, a),
        Command::HalfintDensity(a) => halfint_density(out, &ctx, a),
        Command::VerifyAll => verify_all(out, &ctx),
    }
}

/// Runs the command line `args` (program name first), writing normal output
/// to `out` and diagnostics to stderr. Returns the process exit code: 0 when
/// every requested check passed, 1 when one failed, 2 on any error.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprint!("{}", e.render().ansi());
            return 2;
        }
        Err(e) => return if write!(out, "{}", e.render()).is_ok() { 0 } else { 2 },
    };
    match dispatch(&cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
