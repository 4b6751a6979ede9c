//! Command-layer operations behind the binary: data ingestion, the bundled
//! flood dataset, and the fit / simulate / influence / asymptotics runs
//! with text, CSV and JSON rendering.
//!
//! Everything here is a plain function from a [`RunConfig`] to a report
//! value, so the whole surface is testable without spawning a process; the
//! binary is a thin flag parser around it.

use std::path::PathBuf;

use serde::Serialize;

use crate::asymptotics;
use crate::dpd::Tau;
use crate::error::{Error, Result};
use crate::fit::{fit_joint, FitOptions};
use crate::influence::{self, GridScale};
use crate::loglogistic::{Params, Sample};
use crate::simulation::{self, CaseId, EstimatorKind, MetricsRow, ScenarioSpec};
use crate::OutputFormat;

/// Scotland's annual maximum flood series (m³/s), 1952–1982. Bundled so
/// reference runs need no fixtures.
pub const FLOOD_SCOTLAND: [f64; 31] = [
    89.8, 109.1, 202.2, 146.3, 212.3, 116.7, 109.1, 80.7, 127.4, 138.8, 283.5, 85.6, 105.5, 118.0,
    387.8, 80.7, 165.7, 111.6, 134.4, 131.5, 102.0, 104.3, 242.5, 214.8, 144.6, 114.2, 98.3, 102.8,
    104.3, 196.2, 143.7,
];

/// Name accepted by `--builtin` and by [`ingest`].
pub const FLOOD_SCOTLAND_NAME: &str = "flood-scotland";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Fit,
    Simulate,
    Influence,
    Asymptotics,
}

/// Which parameter's influence function the influence command tabulates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InfluenceTarget {
    Alpha,
    Beta,
}

impl std::str::FromStr for InfluenceTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alpha" => Ok(InfluenceTarget::Alpha),
            "beta" => Ok(InfluenceTarget::Beta),
            other => Err(Error::Config(format!("unknown influence target {other:?}; use alpha or beta"))),
        }
    }
}

/// Run configuration shared by all commands; each command reads the fields
/// it needs.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    /// Input file for `fit`.
    pub data: Option<PathBuf>,
    /// Builtin dataset name for `fit`.
    pub builtin: Option<String>,
    /// Tuning parameters; τ = 0 means MLE.
    pub taus: Vec<f64>,
    pub format: OutputFormat,
    pub seed: u64,
    /// Sample sizes for `simulate`.
    pub n_values: Vec<usize>,
    /// Truth scale for `simulate`, and the evaluation point for
    /// `influence`/`asymptotics`.
    pub alpha: f64,
    /// Truth shapes for `simulate` (first entry used elsewhere).
    pub beta_values: Vec<f64>,
    pub replications: usize,
    pub case: u8,
    /// Worker threads for `simulate`; default is the available parallelism.
    pub workers: Option<usize>,
    /// Influence grid range, point count, spacing, and target parameter.
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
    pub scale: GridScale,
    pub target: InfluenceTarget,
}

impl RunConfig {
    /// Baseline configuration for a command; field defaults mirror the
    /// reference study (α = 1, β ∈ {1.5, 2.5, 5, 10}, n ∈ {10, 25, 50,
    /// 75, 100}, 1000 replications, τ grid 0, 0.1, …, 1).
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            data: None,
            builtin: None,
            taus: default_tau_grid(),
            format: OutputFormat::Text,
            seed: 42,
            n_values: vec![10, 25, 50, 75, 100],
            alpha: 1.0,
            beta_values: vec![1.5, 2.5, 5.0, 10.0],
            replications: 1000,
            case: 1,
            workers: None,
            x_min: 1e-2,
            x_max: 1e4,
            points: 201,
            scale: GridScale::Log,
            target: InfluenceTarget::Alpha,
        }
    }

    fn tau_list(&self) -> Result<Vec<Tau>> {
        if self.taus.is_empty() {
            return Err(Error::Config("at least one tau value is required".to_string()));
        }
        self.taus.iter().map(|&t| Tau::new(t)).collect()
    }

    fn single_beta(&self) -> Result<f64> {
        match self.beta_values.as_slice() {
            [b] => Ok(*b),
            other => Err(Error::Config(format!(
                "this command takes exactly one --beta value, got {}",
                other.len()
            ))),
        }
    }
}

/// The default τ sweep 0, 0.1, …, 1.0.
pub fn default_tau_grid() -> Vec<f64> {
    (0..=10).map(|i| i as f64 / 10.0).collect()
}

/// Loads a sample from a file path or a builtin dataset name.
///
/// Files are delimited text: one or more values per line, separated by
/// commas and/or whitespace; blank lines and lines starting with `#` are
/// skipped. Errors carry 1-based line numbers.
pub fn ingest(source: &str) -> Result<Sample> {
    if source == FLOOD_SCOTLAND_NAME {
        return Sample::new(FLOOD_SCOTLAND.to_vec());
    }
    let text = std::fs::read_to_string(source)?;
    parse_delimited(&text)
}

/// Parses delimited text into a sample (the file format of [`ingest`]).
pub fn parse_delimited(text: &str) -> Result<Sample> {
    let mut values = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        for token in trimmed.split(|c: char| c == ',' || c.is_whitespace()) {
            if token.is_empty() {
                continue;
            }
            let v: f64 = token.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("{token:?} is not a number"),
            })?;
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::Data {
                    line: line_no,
                    message: format!("observations must be finite and > 0, got {v}"),
                });
            }
            values.push(v);
        }
    }
    if values.is_empty() {
        return Err(Error::Data { line: 1, message: "no observations found".to_string() });
    }
    Sample::new(values)
}

fn resolve_source(cfg: &RunConfig) -> Result<(String, Sample)> {
    match (&cfg.data, &cfg.builtin) {
        (Some(path), None) => {
            let name = path.display().to_string();
            Ok((name.clone(), ingest(&name)?))
        }
        (None, Some(name)) => {
            if name != FLOOD_SCOTLAND_NAME {
                return Err(Error::Config(format!(
                    "unknown builtin dataset {name:?}; available: {FLOOD_SCOTLAND_NAME}"
                )));
            }
            Ok((name.clone(), ingest(name)?))
        }
        (None, None) => Err(Error::Config("provide --data <file> or --builtin <name>".to_string())),
        (Some(_), Some(_)) => {
            Err(Error::Config("--data and --builtin are mutually exclusive".to_string()))
        }
    }
}

/// One fitted row of the fit report.
#[derive(Debug, Clone, Serialize)]
pub struct FitRow {
    pub tau: f64,
    pub alpha_hat: f64,
    pub beta_hat: f64,
    /// Plug-in standard errors √(sandwich diagonal / n) at the fit.
    pub se_alpha: f64,
    pub se_beta: f64,
    pub objective: f64,
    pub converged: bool,
    pub iterations: usize,
    pub gradient_norm: f64,
    pub start_used: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct FitReport {
    pub source: String,
    pub n: usize,
    pub rows: Vec<FitRow>,
}

impl FitReport {
    pub fn all_converged(&self) -> bool {
        self.rows.iter().all(|r| r.converged)
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => {
                let mut out = format!("# source: {} (n = {})\n", self.source, self.n);
                out.push_str(&format!(
                    "{:<8} {:>12} {:>12} {:>12} {:>12} {:>12} {:>6}\n",
                    "tau", "alpha_hat", "beta_hat", "se_alpha", "se_beta", "objective", "conv"
                ));
                for r in &self.rows {
                    out.push_str(&format!(
                        "{:<8.2} {:>12.5} {:>12.5} {:>12.5} {:>12.5} {:>12.5} {:>6}\n",
                        r.tau, r.alpha_hat, r.beta_hat, r.se_alpha, r.se_beta, r.objective,
                        if r.converged { "yes" } else { "NO" }
                    ));
                }
                out
            }
            OutputFormat::Csv => {
                let mut out = String::from(
                    "tau,alpha_hat,beta_hat,se_alpha,se_beta,objective,converged,iterations,gradient_norm,start_used\n",
                );
                for r in &self.rows {
                    out.push_str(&format!(
                        "{},{},{},{},{},{},{},{},{},{}\n",
                        r.tau, r.alpha_hat, r.beta_hat, r.se_alpha, r.se_beta, r.objective,
                        r.converged, r.iterations, r.gradient_norm, r.start_used
                    ));
                }
                out
            }
            OutputFormat::Json => json(self),
        }
    }
}

/// Fits the configured data for every τ in the list.
pub fn run_fit_command(cfg: &RunConfig) -> Result<FitReport> {
    let (source, sample) = resolve_source(cfg)?;
    let opts = FitOptions::default();
    let n = sample.len();
    let mut rows = Vec::new();
    for tau in cfg.tau_list()? {
        let fit = fit_joint(&sample, tau, &opts)?;
        let m = asymptotics::sandwich(&fit.params_hat, tau)?;
        rows.push(FitRow {
            tau: tau.value(),
            alpha_hat: fit.params_hat.alpha(),
            beta_hat: fit.params_hat.beta(),
            se_alpha: (m.sandwich[0][0] / n as f64).sqrt(),
            se_beta: (m.sandwich[1][1] / n as f64).sqrt(),
            objective: fit.objective_value,
            converged: fit.converged,
            iterations: fit.iterations,
            gradient_norm: fit.gradient_norm,
            start_used: fit.start_used,
        });
    }
    Ok(FitReport { source, n, rows })
}

/// One scenario block of the simulate report.
#[derive(Debug, Clone, Serialize)]
pub struct ScenarioBlock {
    pub alpha: f64,
    pub beta: f64,
    pub n: usize,
    pub case: u8,
    pub replications: usize,
    pub seed: u64,
    pub rows: Vec<MetricsRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimulateReport {
    pub blocks: Vec<ScenarioBlock>,
}

impl SimulateReport {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => {
                let mut out = String::new();
                for b in &self.blocks {
                    out.push_str(&format!(
                        "# alpha = {}, beta = {}, n = {}, case = {}, reps = {}, seed = {}\n",
                        b.alpha, b.beta, b.n, b.case, b.replications, b.seed
                    ));
                    out.push_str(&simulation::emit_table(&b.rows, OutputFormat::Text));
                    out.push('\n');
                }
                out
            }
            OutputFormat::Csv => {
                let mut out = String::from(
                    "alpha,beta,n,case,estimator,bias,rmse,alpha_hat,beta_hat,n_failed\n",
                );
                for b in &self.blocks {
                    for r in &b.rows {
                        out.push_str(&format!(
                            "{},{},{},{},{},{},{},{},{},{}\n",
                            b.alpha, b.beta, b.n, b.case, r.estimator, r.mean_bias, r.rmse,
                            r.mean_alpha_hat, r.mean_beta_hat, r.n_failed
                        ));
                    }
                }
                out
            }
            OutputFormat::Json => json(self),
        }
    }
}

/// Builds the estimator list for a τ sweep: MDPDE per τ plus the RM/SM/HL
/// comparators.
pub fn estimators_for_taus(taus: &[Tau]) -> Vec<EstimatorKind> {
    let mut list: Vec<EstimatorKind> = taus.iter().map(|&t| EstimatorKind::Mdpde(t)).collect();
    list.extend([
        EstimatorKind::RepeatedMedian,
        EstimatorKind::SampleMedian,
        EstimatorKind::HodgesLehmann,
    ]);
    list
}

/// Runs the Monte-Carlo study over the configured (β, n) grid.
pub fn run_simulate_command(cfg: &RunConfig) -> Result<SimulateReport> {
    let case = CaseId::try_from(cfg.case)?;
    let taus = cfg.tau_list()?;
    let estimators = estimators_for_taus(&taus);

    let mut scenarios = Vec::new();
    for &beta in &cfg.beta_values {
        for &n in &cfg.n_values {
            scenarios.push(ScenarioSpec {
                truth: Params::new(cfg.alpha, beta)?,
                n,
                replications: cfg.replications,
                contamination: case,
                estimators: estimators.clone(),
                seed: cfg.seed,
            });
        }
    }

    let run_all = || -> Result<Vec<ScenarioBlock>> {
        scenarios
            .iter()
            .map(|spec| {
                Ok(ScenarioBlock {
                    alpha: spec.truth.alpha(),
                    beta: spec.truth.beta(),
                    n: spec.n,
                    case: spec.contamination.number(),
                    replications: spec.replications,
                    seed: spec.seed,
                    rows: simulation::replicate_metrics(spec)?,
                })
            })
            .collect()
    };

    let blocks = match cfg.workers {
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .map_err(|e| Error::Config(format!("cannot build worker pool: {e}")))?;
            pool.install(run_all)?
        }
        None => run_all()?,
    };
    Ok(SimulateReport { blocks })
}

#[derive(Debug, Clone, Serialize)]
pub struct InfluenceReport {
    pub alpha: f64,
    pub beta: f64,
    pub target: InfluenceTarget,
    pub taus: Vec<f64>,
    pub x: Vec<f64>,
    /// One column of influence values per τ, aligned with `x`.
    pub columns: Vec<Vec<f64>>,
}

impl InfluenceReport {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text | OutputFormat::Csv => {
                let sep = if format == OutputFormat::Csv { "," } else { "\t" };
                let mut out = String::from("x");
                for t in &self.taus {
                    out.push_str(sep);
                    out.push_str(&format!("tau_{t}"));
                }
                out.push('\n');
                for (i, &x) in self.x.iter().enumerate() {
                    out.push_str(&format!("{x}"));
                    for col in &self.columns {
                        out.push_str(sep);
                        out.push_str(&format!("{}", col[i]));
                    }
                    out.push('\n');
                }
                out
            }
            OutputFormat::Json => json(self),
        }
    }
}

/// Tabulates the influence function of the configured parameter on an
/// x-grid, one column per τ.
pub fn run_influence_command(cfg: &RunConfig) -> Result<InfluenceReport> {
    let params = Params::new(cfg.alpha, cfg.single_beta()?)?;
    let taus = cfg.tau_list()?;
    let xs = influence::grid_points(cfg.x_min, cfg.x_max, cfg.points, cfg.scale)?;
    let mut columns = Vec::with_capacity(taus.len());
    for &tau in &taus {
        let col: Result<Vec<f64>> = xs
            .iter()
            .map(|&x| match cfg.target {
                InfluenceTarget::Alpha => influence::if_alpha(&params, tau, x),
                InfluenceTarget::Beta => influence::if_beta(&params, tau, x),
            })
            .collect();
        columns.push(col?);
    }
    Ok(InfluenceReport {
        alpha: params.alpha(),
        beta: params.beta(),
        target: cfg.target,
        taus: taus.iter().map(|t| t.value()).collect(),
        x: xs,
        columns,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticsRow {
    pub tau: f64,
    pub j: [[f64; 2]; 2],
    pub k: [[f64; 2]; 2],
    pub xi: [f64; 2],
    pub sandwich: [[f64; 2]; 2],
}

#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticsReport {
    pub alpha: f64,
    pub beta: f64,
    pub rows: Vec<AsymptoticsRow>,
}

impl AsymptoticsReport {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => {
                let mut out = format!("# alpha = {}, beta = {}\n", self.alpha, self.beta);
                out.push_str(&format!(
                    "{:<8} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12}\n",
                    "tau", "J_aa", "J_ab", "J_bb", "K_aa", "K_bb", "xi_a", "xi_b", "var_a/var_b"
                ));
                for r in &self.rows {
                    out.push_str(&format!(
                        "{:<8.2} {:>12.5} {:>12.5} {:>12.5} {:>12.5} {:>12.5} {:>12.5} {:>12.5} {:>12.5}/{:.5}\n",
                        r.tau, r.j[0][0], r.j[0][1], r.j[1][1], r.k[0][0], r.k[1][1], r.xi[0],
                        r.xi[1], r.sandwich[0][0], r.sandwich[1][1]
                    ));
                }
                out
            }
            OutputFormat::Csv => {
                let mut out = String::from(
                    "tau,j_aa,j_ab,j_bb,k_aa,k_ab,k_bb,xi_a,xi_b,sw_aa,sw_ab,sw_bb\n",
                );
                for r in &self.rows {
                    out.push_str(&format!(
                        "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                        r.tau, r.j[0][0], r.j[0][1], r.j[1][1], r.k[0][0], r.k[0][1], r.k[1][1],
                        r.xi[0], r.xi[1], r.sandwich[0][0], r.sandwich[0][1], r.sandwich[1][1]
                    ));
                }
                out
            }
            OutputFormat::Json => json(self),
        }
    }
}

/// Evaluates the asymptotic matrices at the configured parameter point for
/// every τ.
pub fn run_asymptotics_command(cfg: &RunConfig) -> Result<AsymptoticsReport> {
    let params = Params::new(cfg.alpha, cfg.single_beta()?)?;
    let mut rows = Vec::new();
    for tau in cfg.tau_list()? {
        let m = asymptotics::sandwich(&params, tau)?;
        rows.push(AsymptoticsRow {
            tau: tau.value(),
            j: m.j,
            k: m.k,
            xi: m.xi,
            sandwich: m.sandwich,
        });
    }
    Ok(AsymptoticsReport { alpha: params.alpha(), beta: params.beta(), rows })
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes") + "\n"
}
