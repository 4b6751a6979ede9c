//! Thin command-line front end; all logic lives in the library's `cli`
//! module.
//!
//! Exit codes: 0 success, 2 usage, 3 parse error, 4 domain/data error,
//! 5 non-convergence, 6 I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use loglogistic_dpd::cli::{
    self, Command as RunCommand, InfluenceTarget, RunConfig,
};
use loglogistic_dpd::influence::GridScale;
use loglogistic_dpd::Error;

#[derive(Parser)]
#[command(
    name = "loglogistic-dpd",
    about = "Robust log-logistic parameter estimation by density power divergence",
    version
)]
struct CliArgs {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Args)]
struct CommonArgs {
    /// Tuning parameters (repeatable or comma-separated); 0 = MLE.
    #[arg(long = "tau", value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
    tau: Option<Vec<f64>>,

    /// Output format: text, csv or json.
    #[arg(long, default_value = "text")]
    format: String,

    /// Write output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Fit MDPDE estimates (with standard errors) to a dataset.
    Fit {
        #[command(flatten)]
        common: CommonArgs,
        /// Input data file (delimited text; '#' comments allowed).
        #[arg(long)]
        data: Option<PathBuf>,
        /// Builtin dataset name (flood-scotland).
        #[arg(long)]
        builtin: Option<String>,
    },
    /// Run the Monte-Carlo bias/RMSE study.
    Simulate {
        #[command(flatten)]
        common: CommonArgs,
        /// Truth scale parameter.
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Truth shape parameters (comma list runs a grid).
        #[arg(long = "beta", value_delimiter = ',', num_args = 1.., default_values_t = [1.5, 2.5, 5.0, 10.0])]
        beta: Vec<f64>,
        /// Sample sizes (comma list runs a grid).
        #[arg(long = "n", value_delimiter = ',', num_args = 1.., default_values_t = [10usize, 25, 50, 75, 100])]
        n: Vec<usize>,
        /// Replications per scenario.
        #[arg(long, default_value_t = 1000)]
        reps: usize,
        /// Contamination case 1-5.
        #[arg(long, default_value_t = 1)]
        case: u8,
        /// Master seed.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Worker threads (default: available parallelism).
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Tabulate influence functions on an x-grid, one column per tau.
    Influence {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value_t = 2.0)]
        beta: f64,
        /// Which parameter's influence to tabulate: alpha or beta.
        #[arg(long, default_value = "alpha")]
        target: String,
        #[arg(long = "x-min", default_value_t = 1e-2)]
        x_min: f64,
        #[arg(long = "x-max", default_value_t = 1e4)]
        x_max: f64,
        /// Number of grid points.
        #[arg(long, default_value_t = 201)]
        points: usize,
        /// Grid spacing: linear or log.
        #[arg(long, default_value = "log")]
        scale: String,
    },
    /// Print the asymptotic J, K, xi and sandwich covariance.
    Asymptotics {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value_t = 2.0)]
        beta: f64,
    },
}

fn main() -> ExitCode {
    let args = CliArgs::parse();
    match run(args) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse { .. } => 3,
        Error::Domain(_)
        | Error::Data { .. }
        | Error::MomentUndefined { .. }
        | Error::DegenerateSample(_)
        | Error::IllConditioned(_)
        | Error::Config(_) => 4,
        Error::Io(_) => 6,
    }
}

fn emit(common: &CommonArgs, rendered: String) -> Result<(), Error> {
    match &common.out {
        Some(path) => std::fs::write(path, rendered).map_err(Error::Io),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn base_config(command: RunCommand, common: &CommonArgs) -> Result<RunConfig, Error> {
    let mut cfg = RunConfig::new(command);
    if let Some(taus) = &common.tau {
        cfg.taus = taus.clone();
    }
    cfg.format = common.format.parse()?;
    Ok(cfg)
}

fn run(args: CliArgs) -> Result<ExitCode, Error> {
    match args.command {
        CliCommand::Fit { common, data, builtin } => {
            let mut cfg = base_config(RunCommand::Fit, &common)?;
            cfg.data = data;
            cfg.builtin = builtin;
            let report = cli::run_fit_command(&cfg)?;
            let ok = report.all_converged();
            emit(&common, report.render(cfg.format))?;
            if ok {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("error: one or more fits did not converge");
                Ok(ExitCode::from(5))
            }
        }
        CliCommand::Simulate { common, alpha, beta, n, reps, case, seed, workers } => {
            let mut cfg = base_config(RunCommand::Simulate, &common)?;
            cfg.alpha = alpha;
            cfg.beta_values = beta;
            cfg.n_values = n;
            cfg.replications = reps;
            cfg.case = case;
            cfg.seed = seed;
            cfg.workers = workers;
            let report = cli::run_simulate_command(&cfg)?;
            emit(&common, report.render(cfg.format))?;
            Ok(ExitCode::SUCCESS)
        }
        CliCommand::Influence { common, alpha, beta, target, x_min, x_max, points, scale } => {
            let mut cfg = base_config(RunCommand::Influence, &common)?;
            cfg.alpha = alpha;
            cfg.beta_values = vec![beta];
            cfg.target = target.parse::<InfluenceTarget>()?;
            cfg.x_min = x_min;
            cfg.x_max = x_max;
            cfg.points = points;
            cfg.scale = scale.parse::<GridScale>()?;
            // A full τ sweep makes sense for fit/simulate tables; a grid
            // export defaults to the single MLE curve.
            if common.tau.is_none() {
                cfg.taus = vec![0.0];
            }
            let report = cli::run_influence_command(&cfg)?;
            emit(&common, report.render(cfg.format))?;
            Ok(ExitCode::SUCCESS)
        }
        CliCommand::Asymptotics { common, alpha, beta } => {
            let mut cfg = base_config(RunCommand::Asymptotics, &common)?;
            cfg.alpha = alpha;
            cfg.beta_values = vec![beta];
            let report = cli::run_asymptotics_command(&cfg)?;
            emit(&common, report.render(cfg.format))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
