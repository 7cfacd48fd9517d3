//! Command-line surface: evaluate bounds, solve and print the model
//! parameters, run the forward/inverse approximation, emit plot-ready CSV
//! curves, and validate code tables.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use coderate::approx;
use coderate::bounds::{self, BoundFamily, BoundKind, NormalizedDistance, Rate, Regime};
use coderate::codetable;

#[derive(Parser)]
#[command(
    name = "coderate",
    version,
    about = "Rate-versus-minimum-distance bounds and approximations for binary codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a classical bound at a point
    Bound(BoundArgs),
    /// Print the solved approximation parameters for a code length
    Params {
        /// Code length (n >= 2)
        #[arg(short)]
        n: u64,
    },
    /// Approximate maximum rate at (n, d) or (n, delta)
    Approx {
        /// Code length
        #[arg(short)]
        n: u64,
        /// Minimum distance
        #[arg(short)]
        d: Option<u64>,
        /// Normalized minimum distance d/n
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Invert the approximation: predicted distance at (n, k) or (n, rate)
    Invert {
        /// Code length
        #[arg(short)]
        n: u64,
        /// Information length (real-valued)
        #[arg(short)]
        k: Option<f64>,
        /// Code rate k/n
        #[arg(long)]
        rate: Option<f64>,
    },
    /// Emit CSV curve data on standard output
    Curve(CurveArgs),
    /// Validate a code table against the approximation
    Validate {
        /// Path to the table (lines of `n,k,d_lower,d_upper` or `n,k,d`)
        table: PathBuf,
        /// Only report the exact-entry statistics; skip the listing of
        /// entries whose optimal distance is an unresolved range
        #[arg(long)]
        exact_only: bool,
    },
}

#[derive(Args)]
struct BoundArgs {
    /// Bound family
    kind: KindArg,
    /// Use the finite-length form
    #[arg(long)]
    finite: bool,
    /// Use the asymptotic form
    #[arg(long)]
    asymptotic: bool,
    /// Code length (finite forms)
    #[arg(short)]
    n: Option<u64>,
    /// Minimum distance (finite Gilbert-Varshamov and Hamming forms)
    #[arg(short)]
    d: Option<u64>,
    /// Normalized minimum distance d/n (Plotkin and asymptotic forms)
    #[arg(long)]
    delta: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    /// Gilbert-Varshamov lower bound
    Gv,
    /// Hamming (sphere-packing) upper bound
    Hamming,
    /// Plotkin upper bound (finite length only)
    Plotkin,
    /// MRRW linear-programming upper bound (asymptotic only)
    Mrrw,
    /// Quadratic model (2 delta - 1)^2 (asymptotic only)
    Quadratic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CurveMode {
    /// Rate versus delta in the n -> infinity limit
    Asymptotic,
    /// Rate versus delta at a fixed code length
    Finite,
    /// Predicted distance versus code length at a fixed rate
    DminVsN,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SeriesArg {
    Gv,
    Hamming,
    Plotkin,
    Mrrw,
    Quadratic,
    Approx,
}

impl SeriesArg {
    fn name(self) -> &'static str {
        match self {
            SeriesArg::Gv => "gv",
            SeriesArg::Hamming => "hamming",
            SeriesArg::Plotkin => "plotkin",
            SeriesArg::Mrrw => "mrrw",
            SeriesArg::Quadratic => "quadratic",
            SeriesArg::Approx => "approx",
        }
    }
}

#[derive(Args)]
struct CurveArgs {
    /// Curve family
    #[arg(value_enum)]
    mode: CurveMode,
    /// Code length (finite mode)
    #[arg(short)]
    n: Option<u64>,
    /// Code rate (dmin-vs-n mode)
    #[arg(long)]
    rate: Option<f64>,
    /// Comma-separated series list; defaults to every series the mode supports
    #[arg(long, value_delimiter = ',')]
    series: Vec<SeriesArg>,
    /// Number of delta samples (delta-axis modes)
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// First delta sample (default: 0.01 asymptotic, 1/n finite)
    #[arg(long)]
    delta_min: Option<f64>,
    /// Last delta sample (default: 0.99 asymptotic, 1 finite)
    #[arg(long)]
    delta_max: Option<f64>,
    /// First code length (dmin-vs-n mode)
    #[arg(long, default_value_t = 16)]
    n_min: u64,
    /// Last code length (dmin-vs-n mode)
    #[arg(long, default_value_t = 256)]
    n_max: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Bound(args) => cmd_bound(args)?,
        Command::Params { n } => cmd_params(n)?,
        Command::Approx { n, d, delta } => cmd_approx(n, d, delta)?,
        Command::Invert { n, k, rate } => cmd_invert(n, k, rate)?,
        Command::Curve(args) => cmd_curve(args)?,
        Command::Validate { table, exact_only } => return cmd_validate(&table, exact_only),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bound(args: BoundArgs) -> Result<()> {
    if args.finite && args.asymptotic {
        bail!("--finite and --asymptotic are mutually exclusive");
    }
    let value = match args.kind {
        KindArg::Gv | KindArg::Hamming => {
            let finite = if args.finite {
                true
            } else if args.asymptotic {
                false
            } else {
                // infer the regime from the arguments that were supplied
                match (args.n.is_some() || args.d.is_some(), args.delta.is_some()) {
                    (true, false) => true,
                    (false, true) => false,
                    _ => bail!("pass --finite with -n/-d, or --asymptotic with --delta"),
                }
            };
            if finite {
                if args.delta.is_some() {
                    bail!("the finite form takes -n and -d, not --delta");
                }
                let n = args.n.context("the finite form requires -n")?;
                let d = args.d.context("the finite form requires -d")?;
                match args.kind {
                    KindArg::Gv => bounds::gilbert_finite(n, d)?.value(),
                    _ => bounds::hamming_finite(n, d)?.value(),
                }
            } else {
                if args.n.is_some() || args.d.is_some() {
                    bail!("the asymptotic form takes --delta only");
                }
                let delta = parse_delta(args.delta.context("the asymptotic form requires --delta")?)?;
                let family = match args.kind {
                    KindArg::Gv => BoundFamily::GilbertVarshamov,
                    _ => BoundFamily::Hamming,
                };
                bounds::asymptotic_bound(BoundKind::new(family, Regime::Asymptotic)?, delta)?
                    .value()
            }
        }
        KindArg::Plotkin => {
            if args.asymptotic {
                bail!("the Plotkin bound has no asymptotic form");
            }
            if args.d.is_some() {
                bail!("the Plotkin bound takes --delta, not -d");
            }
            let n = args.n.context("the Plotkin bound requires -n")?;
            let delta = parse_delta(args.delta.context("the Plotkin bound requires --delta")?)?;
            bounds::plotkin_finite(n, delta)?.value()
        }
        KindArg::Mrrw | KindArg::Quadratic => {
            if args.finite {
                bail!("this bound has no finite-length form");
            }
            if args.n.is_some() || args.d.is_some() {
                bail!("asymptotic bounds take --delta only");
            }
            let delta = parse_delta(args.delta.context("asymptotic bounds require --delta")?)?;
            let family = match args.kind {
                KindArg::Mrrw => BoundFamily::Mrrw,
                _ => BoundFamily::QuadraticModel,
            };
            bounds::asymptotic_bound(BoundKind::new(family, Regime::Asymptotic)?, delta)?.value()
        }
    };
    println!("{value:.6}");
    Ok(())
}

fn parse_delta(value: f64) -> Result<NormalizedDistance> {
    NormalizedDistance::new(value).map_err(Into::into)
}

fn cmd_params(n: u64) -> Result<()> {
    let p = approx::solve_params(n)?;
    println!("n={}", p.n);
    println!("a={:.6}", p.a);
    println!("b={:.6}", p.b);
    println!("c={:.6}", p.c);
    println!("offset={:.6}", p.offset);
    println!("delta1={:.6}", p.delta1);
    println!("delta2={:.6}", p.delta2);
    println!("delta3={:.6}", p.delta3);
    println!("r1={:.6}", p.r1);
    println!("r2={:.6}", p.r2);
    println!("r3={:.6}", p.r3);
    Ok(())
}

fn cmd_approx(n: u64, d: Option<u64>, delta: Option<f64>) -> Result<()> {
    let rate = match (d, delta) {
        (Some(d), None) => approx::rate_from_dmin(n, d)?,
        (None, Some(x)) => approx::rate_from_delta(n, parse_delta(x)?)?,
        _ => bail!("pass exactly one of -d or --delta"),
    };
    println!("{:.6}", rate.value());
    Ok(())
}

fn cmd_invert(n: u64, k: Option<f64>, rate: Option<f64>) -> Result<()> {
    let rate = match (k, rate) {
        (Some(k), None) => approx::CodeParams::new(n, k)?.rate(),
        (None, Some(r)) => Rate::new(r)?,
        _ => bail!("pass exactly one of -k or --rate"),
    };
    let delta = approx::delta_from_rate(n, rate)?.value();
    println!("d={:.6}", n as f64 * delta);
    println!("delta={delta:.6}");
    Ok(())
}

/// x_i on [lo, hi] with both endpoints hit exactly.
fn grid_point(lo: f64, hi: f64, i: usize, count: usize) -> f64 {
    if count == 1 {
        return lo;
    }
    let t = (count - 1 - i) as f64;
    let u = i as f64;
    (lo * t + hi * u) / (count - 1) as f64
}

fn push_field(row: &mut String, value: Option<f64>) {
    row.push(',');
    if let Some(v) = value {
        write!(row, "{v}").expect("string write");
    }
}

fn cmd_curve(args: CurveArgs) -> Result<()> {
    match args.mode {
        CurveMode::Asymptotic => curve_asymptotic(&args),
        CurveMode::Finite => curve_finite(&args),
        CurveMode::DminVsN => curve_dmin_vs_n(&args),
    }
}

fn resolve_series(requested: &[SeriesArg], allowed: &[SeriesArg], mode: &str) -> Result<Vec<SeriesArg>> {
    if requested.is_empty() {
        return Ok(allowed.to_vec());
    }
    for s in requested {
        if !allowed.contains(s) {
            bail!("series `{}` is not available in {mode} mode", s.name());
        }
    }
    Ok(requested.to_vec())
}

fn print_header(x_name: &str, series: &[SeriesArg]) {
    let mut header = String::from(x_name);
    for s in series {
        header.push(',');
        header.push_str(s.name());
    }
    println!("{header}");
}

fn curve_asymptotic(args: &CurveArgs) -> Result<()> {
    if args.n.is_some() || args.rate.is_some() {
        bail!("asymptotic mode takes no -n or --rate");
    }
    if args.samples < 1 {
        bail!("--samples must be at least 1");
    }
    let series = resolve_series(
        &args.series,
        &[
            SeriesArg::Gv,
            SeriesArg::Hamming,
            SeriesArg::Mrrw,
            SeriesArg::Quadratic,
        ],
        "asymptotic",
    )?;
    let lo = args.delta_min.unwrap_or(0.01);
    let hi = args.delta_max.unwrap_or(0.99);
    if !(lo > 0.0 && lo <= hi) {
        bail!("need 0 < --delta-min <= --delta-max");
    }
    print_header("delta", &series);
    for i in 0..args.samples {
        let x = grid_point(lo, hi, i, args.samples);
        let mut row = format!("{x}");
        for s in &series {
            let family = match s {
                SeriesArg::Gv => BoundFamily::GilbertVarshamov,
                SeriesArg::Hamming => BoundFamily::Hamming,
                SeriesArg::Mrrw => BoundFamily::Mrrw,
                SeriesArg::Quadratic => BoundFamily::QuadraticModel,
                _ => unreachable!(),
            };
            let value = NormalizedDistance::new(x).ok().and_then(|d| {
                bounds::asymptotic_bound(
                    BoundKind::new(family, Regime::Asymptotic).expect("asymptotic kinds"),
                    d,
                )
                .ok()
            });
            push_field(&mut row, value.map(Rate::value));
        }
        println!("{row}");
    }
    Ok(())
}

fn curve_finite(args: &CurveArgs) -> Result<()> {
    let n = args.n.context("finite mode requires -n")?;
    if args.rate.is_some() {
        bail!("finite mode takes no --rate");
    }
    if n < 1 {
        bail!("-n must be positive");
    }
    if args.samples < 1 {
        bail!("--samples must be at least 1");
    }
    let series = resolve_series(
        &args.series,
        &[
            SeriesArg::Gv,
            SeriesArg::Hamming,
            SeriesArg::Plotkin,
            SeriesArg::Approx,
        ],
        "finite",
    )?;
    let nf = n as f64;
    let lo = args.delta_min.unwrap_or(1.0 / nf);
    let hi = args.delta_max.unwrap_or(1.0);
    if !(lo > 0.0 && lo <= hi) {
        bail!("need 0 < --delta-min <= --delta-max");
    }
    print_header("delta", &series);
    for i in 0..args.samples {
        let x = grid_point(lo, hi, i, args.samples);
        // smallest integer distance covering this delta; the slack keeps a
        // grid point that is meant to be d/n from ceiling up to d+1
        let implied_d = ((x * nf - 1e-9).ceil().max(1.0)) as u64;
        let mut row = format!("{x}");
        for s in &series {
            let value = match s {
                SeriesArg::Gv => bounds::gilbert_finite(n, implied_d).ok().map(Rate::value),
                SeriesArg::Hamming => bounds::hamming_finite(n, implied_d).ok().map(Rate::value),
                SeriesArg::Plotkin => NormalizedDistance::new(x)
                    .ok()
                    .and_then(|d| bounds::plotkin_finite(n, d).ok())
                    .map(Rate::value),
                SeriesArg::Approx => NormalizedDistance::new(x)
                    .ok()
                    .and_then(|d| approx::rate_from_delta(n, d).ok())
                    .map(Rate::value),
                _ => unreachable!(),
            };
            push_field(&mut row, value);
        }
        println!("{row}");
    }
    Ok(())
}

fn curve_dmin_vs_n(args: &CurveArgs) -> Result<()> {
    let rate = args.rate.context("dmin-vs-n mode requires --rate")?;
    if args.n.is_some() {
        bail!("dmin-vs-n mode takes no -n (use --n-min/--n-max)");
    }
    if !(rate > 0.0 && rate <= 1.0) {
        bail!("--rate must lie in (0, 1]");
    }
    if args.n_min < 1 || args.n_min > args.n_max {
        bail!("need 1 <= --n-min <= --n-max");
    }
    let series = resolve_series(
        &args.series,
        &[SeriesArg::Gv, SeriesArg::Hamming, SeriesArg::Approx],
        "dmin-vs-n",
    )?;
    print_header("n", &series);
    for n in args.n_min..=args.n_max {
        let mut row = format!("{n}");
        for s in &series {
            match s {
                SeriesArg::Gv => {
                    let d = implied_distance(n, rate, |n, d| {
                        bounds::gilbert_finite(n, d).expect("d in range").value()
                    });
                    row.push(',');
                    write!(row, "{d}").expect("string write");
                }
                SeriesArg::Hamming => {
                    let d = implied_distance(n, rate, |n, d| {
                        bounds::hamming_finite(n, d).expect("d in range").value()
                    });
                    row.push(',');
                    write!(row, "{d}").expect("string write");
                }
                SeriesArg::Approx => {
                    let value = Rate::new(rate)
                        .ok()
                        .and_then(|r| approx::delta_from_rate(n, r).ok())
                        .map(|delta| n as f64 * delta.value());
                    push_field(&mut row, value);
                }
                _ => unreachable!(),
            }
        }
        println!("{row}");
    }
    Ok(())
}

/// Largest d in [1, n] whose bound value still reaches `rate`. The bounds
/// are nonincreasing in d, so binary search applies; d = 1 always
/// qualifies because both bounds equal 1 there.
fn implied_distance(n: u64, rate: f64, bound: impl Fn(u64, u64) -> f64) -> u64 {
    let (mut lo, mut hi) = (1u64, n);
    while lo < hi {
        let mid = lo + (hi - lo + 1) / 2;
        if bound(n, mid) >= rate {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

fn cmd_validate(table: &PathBuf, exact_only: bool) -> Result<ExitCode> {
    let text =
        fs::read_to_string(table).with_context(|| format!("reading {}", table.display()))?;
    let entries = codetable::parse_table(&text)?;
    let report = codetable::validate(&entries)?;
    print!("{report}");
    if !exact_only {
        let ranges: Vec<_> = entries.iter().filter(|e| !e.is_exact()).collect();
        if !ranges.is_empty() {
            println!("# entries with unresolved optimal distance, predicted d and signed offsets to each bound:");
            for e in ranges {
                let d = approx::dmin(e.n, e.k as f64).expect("entry invariants");
                println!(
                    "# {},{}: d={:.3} vs_lower={:+.3} vs_upper={:+.3}",
                    e.n,
                    e.k,
                    d,
                    d - e.d_lower as f64,
                    d - e.d_upper as f64
                );
            }
        }
    }
    Ok(if report.frac_within_2 == 1.0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
