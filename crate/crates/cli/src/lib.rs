//! Command-line surface over the pricing library: single-option pricing,
//! curve and surface emitters (CSV/SVG), verification suites, and the
//! delta-hedging experiment.
//!
//! Exit codes: 0 on success, 1 for domain or suite failures, 2 for usage
//! errors. All commands are deterministic given their flags.

pub mod output;
pub mod suites;
pub mod svg;

use std::path::PathBuf;

use bsx_core::fd::{self, GridSpec, Scheme};
use bsx_core::heat::{self, QuadratureConfig};
use bsx_core::hedge::{delta_hedge, PathConfig};
use bsx_core::{closed_form, MarketParams, OptionKind, OptionSpec, Quote};
use clap::{Args, Parser, Subcommand, ValueEnum};
use output::{fmt_f64, sink, write_row};

#[derive(Parser)]
#[command(
    name = "bsx",
    version,
    about = "European option pricing toolkit",
    allow_negative_numbers = true
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Price one option and print value, d+/d-, and delta
    Price(PriceArgs),
    /// Emit value against spot at a fixed tenor (CSV or SVG)
    Curve(CurveArgs),
    /// Emit value over a (spot, tenor) grid (CSV or SVG)
    Surface(SurfaceArgs),
    /// Run the verification suites
    Verify(VerifyArgs),
    /// Run the discrete delta-hedging experiment (CSV)
    Hedge(HedgeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Call,
    Put,
}

impl From<KindArg> for OptionKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Call => OptionKind::Call,
            KindArg::Put => OptionKind::Put,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    /// Analytic formula
    Closed,
    /// Heat-kernel quadrature
    Heat,
    /// Crank-Nicolson grid
    Fd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Svg,
}

#[derive(Args)]
struct PriceArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long, allow_negative_numbers = true)]
    spot: f64,
    #[arg(long, allow_negative_numbers = true)]
    strike: f64,
    /// Interest rate per year as a decimal (0.5 means 50%)
    #[arg(long, allow_negative_numbers = true)]
    rate: f64,
    /// Volatility per sqrt-year as a decimal
    #[arg(long, allow_negative_numbers = true)]
    vol: f64,
    /// Time to expiry in years
    #[arg(long, allow_negative_numbers = true)]
    tenor: f64,
    #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
    method: MethodArg,
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long, default_value_t = 100.0)]
    strike: f64,
    #[arg(long, default_value_t = 0.5)]
    rate: f64,
    #[arg(long, default_value_t = 0.3)]
    vol: f64,
    #[arg(long, default_value_t = 1.0)]
    tenor: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    spot_min: f64,
    #[arg(long)]
    spot_max: Option<f64>,
    /// Number of spot samples
    #[arg(long, default_value_t = 201)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SurfaceArgs {
    #[arg(long, value_enum, default_value_t = KindArg::Call)]
    kind: KindArg,
    #[arg(long, default_value_t = 100.0)]
    strike: f64,
    #[arg(long, default_value_t = 0.5)]
    rate: f64,
    #[arg(long, default_value_t = 0.3)]
    vol: f64,
    /// Largest time-to-expiry on the tenor axis
    #[arg(long, default_value_t = 1.0)]
    tenor: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    spot_min: f64,
    #[arg(long)]
    spot_max: Option<f64>,
    /// Number of spot samples
    #[arg(long, default_value_t = 41)]
    samples: usize,
    /// Number of tenor samples (includes tenor 0)
    #[arg(long, default_value_t = 11)]
    tenor_samples: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite: all, parity, oracle, dominance, residual, heat, boundary, hedge
    #[arg(long, default_value = "all")]
    suite: String,
    /// Sample count override (0 = suite default)
    #[arg(long, default_value_t = 0)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Override the dominance pair: sigma1 (with --vol2)
    #[arg(long, requires = "vol2")]
    vol: Option<f64>,
    /// Override the dominance pair: sigma2 (with --vol)
    #[arg(long, requires = "vol")]
    vol2: Option<f64>,
}

#[derive(Args)]
struct HedgeArgs {
    #[arg(long, value_enum, default_value_t = KindArg::Call)]
    kind: KindArg,
    #[arg(long, default_value_t = 100.0)]
    spot: f64,
    #[arg(long, default_value_t = 100.0)]
    strike: f64,
    #[arg(long, default_value_t = 0.05)]
    rate: f64,
    #[arg(long, default_value_t = 0.2)]
    vol: f64,
    /// Horizon and option expiry in years
    #[arg(long, default_value_t = 1.0)]
    tenor: f64,
    /// Real-world drift of the simulated paths
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    mu: f64,
    #[arg(long, default_value_t = 256)]
    steps: usize,
    #[arg(long, default_value_t = 1000)]
    paths: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Top-level driver; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Price(args) => cmd_price(args),
        Command::Curve(args) => cmd_curve(args),
        Command::Surface(args) => cmd_surface(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Hedge(args) => cmd_hedge(args),
    };
    match result {
        Ok(code) => code,
        Err(CmdError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
        Err(CmdError::Domain(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(CmdError::Pipe) => 0,
    }
}

enum CmdError {
    Usage(String),
    Domain(String),
    /// Downstream reader went away; not an error for a pipeline producer.
    Pipe,
}

impl From<bsx_core::Error> for CmdError {
    fn from(e: bsx_core::Error) -> Self {
        CmdError::Domain(e.to_string())
    }
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            CmdError::Pipe
        } else {
            CmdError::Domain(format!("io: {e}"))
        }
    }
}

type CmdResult = Result<i32, CmdError>;

fn market(rate: f64, vol: f64) -> Result<MarketParams, CmdError> {
    Ok(MarketParams::new(rate, vol)?)
}

fn cmd_price(args: PriceArgs) -> CmdResult {
    let params = market(args.rate, args.vol)?;
    let spec = OptionSpec::new(args.kind.into(), args.strike, args.tenor)?;
    let quote = Quote::new(args.spot, 0.0)?;
    let analytic = closed_form::price(&quote, &spec, &params)?;
    let value = match args.method {
        MethodArg::Closed => analytic.value,
        MethodArg::Heat => {
            if args.tenor == 0.0 || args.spot == 0.0 {
                // Singular limits short-circuit to the exact closed form.
                analytic.value
            } else {
                heat::price_via_heat_kernel(&quote, &spec, &params, &QuadratureConfig::default())?
            }
        }
        MethodArg::Fd => {
            if args.tenor == 0.0 {
                analytic.value
            } else {
                fd_price(&spec, &params, args.spot)?
            }
        }
    };
    println!("value {value:.6}");
    println!("d_plus {:.6}", analytic.d_plus);
    println!("d_minus {:.6}", analytic.d_minus);
    println!("delta {:.6}", analytic.delta);
    Ok(0)
}

/// One Crank-Nicolson solve sized for the query: strike lands on a grid node
/// and the boundary sits at 4x the larger of strike and spot.
fn fd_price(spec: &OptionSpec, params: &MarketParams, spot: f64) -> Result<f64, CmdError> {
    let ds = spec.strike() / 100.0;
    let reach = 4.0 * spec.strike().max(spot);
    let intervals = (reach / ds).ceil() as usize;
    let s_max = intervals as f64 * ds;
    let grid = GridSpec::new(s_max, intervals + 1, 400, Scheme::CrankNicolson)?;
    let surface = fd::solve(spec, params, &grid)?;
    Ok(surface.value_at_spot(0, spot)?)
}

fn spot_axis(min: f64, max: f64, samples: usize) -> Result<Vec<f64>, CmdError> {
    if samples == 0 {
        return Err(CmdError::Usage("at least one sample is required".into()));
    }
    if !(min.is_finite() && max.is_finite()) || min < 0.0 || max <= min {
        return Err(CmdError::Usage(format!(
            "empty or invalid spot range [{min}, {max}]"
        )));
    }
    let step = (max - min) / (samples.max(2) - 1) as f64;
    Ok((0..samples).map(|i| min + i as f64 * step).collect())
}

fn cmd_curve(args: CurveArgs) -> CmdResult {
    let params = market(args.rate, args.vol)?;
    let kind: OptionKind = args.kind.into();
    let spec = OptionSpec::new(kind, args.strike, args.tenor)?;
    let spot_max = args.spot_max.unwrap_or(2.0 * args.strike);
    let spots = spot_axis(args.spot_min, spot_max, args.samples)?;

    let mut rows = Vec::with_capacity(spots.len());
    for &s in &spots {
        let value = closed_form::price(&Quote::new(s, 0.0)?, &spec, &params)?.value;
        rows.push((s, value, spec.payoff(s)));
    }

    let mut out = sink(args.out.as_deref())?;
    match args.format {
        FormatArg::Csv => {
            write_row(&mut out, &["spot", "value", "payoff"])?;
            for (s, v, p) in rows {
                write_row(&mut out, &[&fmt_f64(s), &fmt_f64(v), &fmt_f64(p)])?;
            }
        }
        FormatArg::Svg => {
            let y_max = rows.iter().map(|r| r.1.max(r.2)).fold(0.0f64, f64::max);
            let mut plot = svg::Plot::new((args.spot_min, spot_max), (0.0, y_max));
            let payoff: Vec<_> = rows.iter().map(|r| (r.0, r.2)).collect();
            let curve: Vec<_> = rows.iter().map(|r| (r.0, r.1)).collect();
            plot.polyline(&payoff, "#888888", true);
            plot.polyline(&curve, "#1f77b4", false);
            out.write_all(plot.render("spot", "value").as_bytes())?;
        }
    }
    Ok(0)
}

fn cmd_surface(args: SurfaceArgs) -> CmdResult {
    let params = market(args.rate, args.vol)?;
    let kind: OptionKind = args.kind.into();
    let spot_max = args.spot_max.unwrap_or(2.0 * args.strike);
    let spots = spot_axis(args.spot_min, spot_max, args.samples)?;
    if args.tenor_samples == 0 {
        return Err(CmdError::Usage(
            "at least one tenor sample is required".into(),
        ));
    }
    if !(args.tenor.is_finite() && args.tenor > 0.0) {
        return Err(CmdError::Usage(format!("invalid tenor {}", args.tenor)));
    }
    let tenor_step = args.tenor / (args.tenor_samples.max(2) - 1) as f64;
    let tenors: Vec<f64> = (0..args.tenor_samples)
        .map(|i| i as f64 * tenor_step)
        .collect();

    // One row per (tenor, spot), tenor-major.
    let mut rows = Vec::with_capacity(tenors.len() * spots.len());
    for &tenor in &tenors {
        let spec = OptionSpec::new(kind, args.strike, tenor)?;
        for &s in &spots {
            let value = closed_form::price(&Quote::new(s, 0.0)?, &spec, &params)?.value;
            rows.push((s, tenor, value));
        }
    }

    let mut out = sink(args.out.as_deref())?;
    match args.format {
        FormatArg::Csv => {
            write_row(&mut out, &["spot", "tenor", "value"])?;
            for (s, tenor, v) in rows {
                write_row(&mut out, &[&fmt_f64(s), &fmt_f64(tenor), &fmt_f64(v)])?;
            }
        }
        FormatArg::Svg => {
            let y_max = rows.iter().map(|r| r.2).fold(0.0f64, f64::max);
            let mut plot = svg::Plot::new((args.spot_min, spot_max), (0.0, y_max));
            for (ti, &tenor) in tenors.iter().enumerate() {
                let slice: Vec<_> = rows
                    .iter()
                    .filter(|r| r.1 == tenor)
                    .map(|r| (r.0, r.2))
                    .collect();
                // Terminal slice (the payoff) dashed, later tenors darker.
                if ti == 0 {
                    plot.polyline(&slice, "#888888", true);
                } else {
                    let shade = 40 + (160 * ti / tenors.len().max(1)) as u8;
                    plot.polyline(&slice, &format!("#1f4b{shade:02x}"), false);
                }
            }
            out.write_all(plot.render("spot", "value").as_bytes())?;
        }
    }
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let forced = match (args.vol, args.vol2) {
        (Some(v1), Some(v2)) => Some((v1, v2)),
        _ => None,
    };
    let Some(checks) = suites::run_suite(&args.suite, args.samples, args.seed, forced) else {
        return Err(CmdError::Usage(format!(
            "unknown suite '{}' (expected all, parity, oracle, dominance, residual, heat, \
             boundary, or hedge)",
            args.suite
        )));
    };
    let mut failed = Vec::new();
    for check in &checks {
        println!(
            "{} {}: {}",
            if check.passed { "PASS" } else { "FAIL" },
            check.name,
            check.detail
        );
        if !check.passed {
            failed.push(check.name);
        }
    }
    println!(
        "verify: {} passed, {} failed",
        checks.len() - failed.len(),
        failed.len()
    );
    if failed.is_empty() {
        Ok(0)
    } else {
        println!("failed checks: {}", failed.join(", "));
        Ok(1)
    }
}

fn cmd_hedge(args: HedgeArgs) -> CmdResult {
    let params = market(args.rate, args.vol)?;
    let spec = OptionSpec::new(args.kind.into(), args.strike, args.tenor)?;
    let cfg = PathConfig::new(args.spot, args.mu, params, args.steps, args.tenor, args.seed)?;
    let report = delta_hedge(&cfg, &spec, args.paths)?;

    let mut out = sink(args.out.as_deref())?;
    write_row(&mut out, &["record", "index", "value"])?;
    let scalars = [
        ("premium", report.premium),
        ("paths", report.paths as f64),
        ("steps", args.steps as f64),
        ("dt", report.dt),
        ("mean_error", report.mean_error),
        ("rms_error", report.rms_error),
        ("std_error", report.std_error),
    ];
    for (name, value) in scalars {
        write_row(&mut out, &[name, "0", &fmt_f64(value)])?;
    }
    for (i, err) in report.terminal_errors.iter().enumerate() {
        write_row(
            &mut out,
            &["terminal_error", &i.to_string(), &fmt_f64(*err)],
        )?;
    }
    Ok(0)
}
