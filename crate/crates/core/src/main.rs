use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use focklab::carleson::{analyze, DiscreteMeasure, SweepSettings};
use focklab::report::write_carleson;
use focklab::spaces::SpaceParams;
use focklab::verify::{run_suite, Suite, SUITE_NAMES};
use focklab::{Config, Error};

/// Numerical laboratory for Fock–Sobolev spaces.
#[derive(Parser)]
#[command(name = "focklab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and write `<out>.json` and `<out>.txt`.
    Verify(VerifyArgs),
    /// Analyze a discrete measure and write `<out>.json` and `<out>.txt`.
    Carleson(CarlesonArgs),
}

#[derive(Args)]
struct Common {
    /// TOML configuration file; missing keys keep their defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Report path without extension.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    radial_degree: Option<usize>,
    #[arg(long)]
    angular_count: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITE_NAMES), conflicts_with = "suite_flag")]
    suite: Option<String>,
    #[arg(long = "suite", value_parser = clap::builder::PossibleValuesParser::new(SUITE_NAMES))]
    suite_flag: Option<String>,
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    seed: Option<u64>,
    /// Tolerance of the quadrature-level identities.
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Args)]
struct CarlesonArgs {
    /// Measure file: `x y mass` lines or a JSON document with `atoms`.
    #[arg(long)]
    measure: PathBuf,
    #[arg(long)]
    m: usize,
    /// Exponent; `inf` is rejected.
    #[arg(long)]
    p: f64,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    window: Option<f64>,
    #[arg(long)]
    spacing: Option<f64>,
    #[command(flatten)]
    common: Common,
}

fn load_config(common: &Common) -> Result<Config, Error> {
    let mut config = Config::load(common.config.as_deref())?;
    if let Some(n) = common.radial_degree {
        config.radial_degree = n;
    }
    if let Some(n) = common.angular_count {
        config.angular_count = n;
    }
    Ok(config)
}

fn verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let mut config = load_config(&args.common)?;
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(t) = args.tolerance {
        config.tolerance = t;
    }
    config.validate()?;
    let name = args
        .suite
        .or(args.suite_flag)
        .unwrap_or_else(|| "all".into());
    let suite: Suite = name.parse()?;
    let report = run_suite(suite, &config)?;
    let stem = args
        .common
        .out
        .unwrap_or_else(|| PathBuf::from(format!("verify-{name}")));
    let (json, text) = report.write(&stem)?;
    print!("{}", report.to_text());
    println!("reports: {} {}", json.display(), text.display());
    if report.pass {
        return Ok(ExitCode::SUCCESS);
    }
    for record in report.failures() {
        eprintln!(
            "failed: {} ({} {} {})",
            record.name,
            record.value,
            record.relation.symbol(),
            record.threshold
        );
    }
    Ok(ExitCode::from(1))
}

fn carleson(args: CarlesonArgs) -> Result<ExitCode, Error> {
    let mut config = load_config(&args.common)?;
    config.r = args.r.unwrap_or(config.r);
    config.window = args.window.or(config.window);
    config.spacing = args.spacing.or(config.spacing);
    config.validate()?;
    if args.p.is_infinite() {
        return Err(Error::Domain(
            "p = ∞ is not supported by the Carleson analysis".into(),
        ));
    }
    let params = SpaceParams::new(args.p, args.m)?;
    let measure = DiscreteMeasure::read(&args.measure)?;
    let settings = SweepSettings {
        r: config.r,
        window: config.window,
        spacing: config.spacing,
        growth_factor: config.growth_factor,
    };
    let report = analyze(&measure, params, settings, config.resolution())?;
    let stem = args.common.out.unwrap_or_else(|| PathBuf::from("carleson"));
    let (json, text) = write_carleson(&report, &stem)?;
    println!("verdict: {}", report.verdict.as_str());
    println!("sup ratio: {:e}", report.sup_ratio);
    println!("embedding verdict: {}", report.embedding_verdict.as_str());
    println!("vanishing: {}", report.vanishing);
    println!("reports: {} {}", json.display(), text.display());
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(args) => verify(args),
        Command::Carleson(args) => carleson(args),
    };
    outcome.unwrap_or_else(|err| {
        eprintln!("error: {err}");
        ExitCode::from(2)
    })
}
