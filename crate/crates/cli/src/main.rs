//! `hdvol` — experiment runner for log-volume fluctuations of random convex
//! bodies in high dimension.
//!
//! Exit codes: 0 success, 1 validation error, 2 runtime/I-O error,
//! 3 self-test failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hdvol::geometry::CenteringMode;
use hdvol::harness::{
    run_experiment, run_selftest, run_table1, BodyKind, ExperimentConfig, ExperimentKind, Threads,
};
use hdvol::sampling::EntryDistribution;
use hdvol::Error;

#[derive(Parser)]
#[command(
    name = "hdvol",
    version,
    about = "Monte Carlo experiments on log-volumes of random convex bodies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment from a JSON config file and/or flags (flags win)
    Run(RunArgs),
    /// Run the module-invariant self-test suite
    Selftest(SelftestArgs),
    /// Print the standardized KS values of the four body rows
    /// (simplex, cube, symcube, crosspolytope) on shared point sets
    Table1(Table1Args),
}

#[derive(Args)]
struct RunArgs {
    /// Flat JSON config file mirroring the flag names
    #[arg(long)]
    config: Option<PathBuf>,
    /// det-clt | pinned-simplex | full-simplex | body | lp-body |
    /// normal-vector | hyperplane-distance | selftest
    #[arg(long)]
    experiment: Option<ExperimentKind>,
    /// Comma-separated dimensions, e.g. 50,100,200
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<usize>>,
    #[arg(long)]
    trials: Option<u64>,
    /// rademacher | uniform | gaussian | laplace | pgauss:<p>
    #[arg(long)]
    dist: Option<EntryDistribution>,
    /// simplex | cube | symcube | crosspolytope
    #[arg(long)]
    body: Option<BodyKind>,
    /// lp-ball exponent (lp-body)
    #[arg(long)]
    p: Option<f64>,
    /// lp-ball shape parameter (lp-body)
    #[arg(long)]
    m: Option<f64>,
    /// exact | paper
    #[arg(long)]
    centering: Option<CenteringMode>,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker count or "auto"
    #[arg(long)]
    threads: Option<Threads>,
    #[arg(long)]
    out_csv: Option<PathBuf>,
    #[arg(long)]
    out_summary: Option<PathBuf>,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct Table1Args {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "gaussian")]
    dist: EntryDistribution,
    #[arg(long, default_value = "exact")]
    centering: CenteringMode,
    #[arg(long, default_value = "auto")]
    threads: Threads,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Selftest(args) => cmd_selftest(args),
        Command::Table1(args) => cmd_table1(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_validation() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn cmd_run(args: RunArgs) -> Result<ExitCode, Error> {
    let mut cfg = match &args.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(v) = args.experiment {
        cfg.experiment = v;
    }
    if let Some(v) = args.n {
        cfg.n_list = v;
    }
    if let Some(v) = args.trials {
        cfg.trials = v;
    }
    if let Some(v) = args.dist {
        cfg.dist = v;
    }
    if let Some(v) = args.body {
        cfg.body = v;
    }
    if let Some(v) = args.p {
        cfg.lp_p = v;
    }
    if let Some(v) = args.m {
        cfg.lp_m = v;
    }
    if let Some(v) = args.centering {
        cfg.centering_mode = v;
    }
    if let Some(v) = args.seed {
        cfg.master_seed = v;
    }
    if let Some(v) = args.threads {
        cfg.threads = v;
    }
    if let Some(v) = args.out_csv {
        cfg.out_csv = Some(v);
    }
    if let Some(v) = args.out_summary {
        cfg.out_summary = Some(v);
    }

    if cfg.experiment == ExperimentKind::Selftest {
        return cmd_selftest(SelftestArgs { seed: cfg.master_seed });
    }

    let output = run_experiment(&cfg)?;
    let report = output.report()?;
    for record in &report.per_n {
        let ks = match (record.ks_to_normal, record.ks_to_half_normal) {
            (Some(ks), _) => format!("ks_to_normal={ks:.5}"),
            (_, Some(ks)) => format!("ks_to_half_normal={ks:.5}"),
            _ => "ks=undefined".to_string(),
        };
        println!(
            "n={} trials={} excluded={} {} mean={} variance={} wall={:.3}s",
            record.n,
            record.trials_requested,
            record.trials_excluded,
            ks,
            record.sample_mean.map_or("undefined".into(), |v| format!("{v:.5}")),
            record.sample_variance.map_or("undefined".into(), |v| format!("{v:.5}")),
            record.wall_time_seconds,
        );
    }
    if let Some(path) = &cfg.out_csv {
        output.emit_csv(path)?;
    }
    if let Some(path) = &cfg.out_summary {
        output.emit_summary(path)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_selftest(args: SelftestArgs) -> Result<ExitCode, Error> {
    let report = run_selftest(args.seed);
    print!("{}", report.render());
    if report.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(3))
    }
}

fn cmd_table1(args: Table1Args) -> Result<ExitCode, Error> {
    let cfg = ExperimentConfig {
        experiment: ExperimentKind::Body,
        n_list: vec![args.n],
        trials: args.trials,
        dist: args.dist,
        centering_mode: args.centering,
        master_seed: args.seed,
        threads: args.threads,
        ..ExperimentConfig::default()
    };
    let rows = run_table1(&cfg, args.n)?;
    println!("body           ks_to_normal");
    for row in rows {
        println!("{:<14} {:.6}", row.body, row.ks_to_normal);
    }
    Ok(ExitCode::SUCCESS)
}
