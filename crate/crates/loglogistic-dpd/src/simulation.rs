//! Monte-Carlo harness: contamination scenarios, estimator sweeps and
//! Bias/RMSE aggregation.
//!
//! Per replication the harness draws `n` observations from the truth,
//! applies the contamination case, and runs every requested estimator on
//! the same data. Per-replication error measures are
//! `Bias = |α̂−α| + |β̂−β|` and `MSE = (α̂−α)² + (β̂−β)²`; the table reports
//! their mean and `√mean` respectively.
//!
//! Replications run in parallel, each on its own counter-derived ChaCha
//! stream of the master seed, so results are bitwise reproducible and
//! independent of the worker count, and the generated data do not depend
//! on which estimators are requested.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::competitors;
use crate::dpd::Tau;
use crate::error::{Error, Result};
use crate::fit::{fit_joint, FitOptions};
use crate::loglogistic::{Params, Sample};
use crate::OutputFormat;

/// The five contamination schemes: case 1 leaves the sample untouched,
/// cases 2–5 replace the first three observations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseId {
    Case1,
    Case2,
    Case3,
    Case4,
    Case5,
}

impl CaseId {
    pub fn number(&self) -> u8 {
        match self {
            CaseId::Case1 => 1,
            CaseId::Case2 => 2,
            CaseId::Case3 => 3,
            CaseId::Case4 => 4,
            CaseId::Case5 => 5,
        }
    }
}

impl TryFrom<u8> for CaseId {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self> {
        match value {
            1 => Ok(CaseId::Case1),
            2 => Ok(CaseId::Case2),
            3 => Ok(CaseId::Case3),
            4 => Ok(CaseId::Case4),
            5 => Ok(CaseId::Case5),
            other => Err(Error::domain(format!("unknown contamination case {other}; valid cases are 1-5"))),
        }
    }
}

/// An estimator participating in the sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EstimatorKind {
    /// MDPDE with the given tuning parameter; τ = 0 is the MLE.
    Mdpde(Tau),
    RepeatedMedian,
    SampleMedian,
    HodgesLehmann,
}

impl EstimatorKind {
    pub fn label(&self) -> String {
        match self {
            EstimatorKind::Mdpde(tau) if tau.is_zero() => "MLE".to_string(),
            EstimatorKind::Mdpde(tau) => {
                let t = tau.value();
                if (t * 10.0).fract() == 0.0 {
                    format!("DPD_{t:.1}")
                } else {
                    format!("DPD_{t}")
                }
            }
            EstimatorKind::RepeatedMedian => "RM".to_string(),
            EstimatorKind::SampleMedian => "SM".to_string(),
            EstimatorKind::HodgesLehmann => "HL".to_string(),
        }
    }
}

/// Full description of one Monte-Carlo scenario.
#[derive(Debug, Clone)]
pub struct ScenarioSpec {
    pub truth: Params,
    pub n: usize,
    pub replications: usize,
    pub contamination: CaseId,
    pub estimators: Vec<EstimatorKind>,
    pub seed: u64,
}

impl ScenarioSpec {
    fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(Error::Config("replications must be at least 1".to_string()));
        }
        if self.n < 2 {
            return Err(Error::Config("sample size must be at least 2".to_string()));
        }
        if self.contamination != CaseId::Case1 && self.n < 4 {
            return Err(Error::Config(format!(
                "contamination case {} replaces the first three observations and needs n >= 4, got n = {}",
                self.contamination.number(),
                self.n
            )));
        }
        if self.estimators.is_empty() {
            return Err(Error::Config("at least one estimator is required".to_string()));
        }
        Ok(())
    }

    /// The estimator list used throughout the reference tables: MLE, the
    /// DPD grid τ = 0.1 … 1.0, and the RM/SM/HL comparators.
    pub fn standard_estimators() -> Vec<EstimatorKind> {
        let mut list = vec![EstimatorKind::Mdpde(Tau::ZERO)];
        for i in 1..=10 {
            list.push(EstimatorKind::Mdpde(Tau::new(i as f64 / 10.0).expect("valid tau")));
        }
        list.extend([
            EstimatorKind::RepeatedMedian,
            EstimatorKind::SampleMedian,
            EstimatorKind::HodgesLehmann,
        ]);
        list
    }
}

/// One aggregated row of the output table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub estimator: String,
    pub mean_bias: f64,
    pub rmse: f64,
    pub mean_alpha_hat: f64,
    pub mean_beta_hat: f64,
    pub n_failed: usize,
}

/// Applies a contamination case to a sample. Cases 2–5 replace the first
/// three observations: draws from log-logistic (1, 0.2), from
/// log-logistic (4, 10), from uniform (0, 20), or the constant 50.
pub fn contaminate<R: Rng + ?Sized>(s: &Sample, case: CaseId, rng: &mut R) -> Result<Sample> {
    if case == CaseId::Case1 {
        return Ok(s.clone());
    }
    if s.len() < 4 {
        return Err(Error::domain(format!(
            "contamination case {} needs at least 4 observations, got {}",
            case.number(),
            s.len()
        )));
    }
    let replacement: Vec<f64> = match case {
        CaseId::Case1 => unreachable!(),
        CaseId::Case2 => {
            let outlier = Params::new(1.0, 0.2).expect("static params");
            (0..3).map(|_| outlier.draw(rng)).collect()
        }
        CaseId::Case3 => {
            let outlier = Params::new(4.0, 10.0).expect("static params");
            (0..3).map(|_| outlier.draw(rng)).collect()
        }
        CaseId::Case4 => (0..3)
            .map(|_| loop {
                let u: f64 = rng.random();
                if u > 0.0 {
                    break 20.0 * u;
                }
            })
            .collect(),
        CaseId::Case5 => vec![50.0; 3],
    };
    Ok(s.replace_prefix(&replacement))
}

/// The independent per-replication generator: stream `index + 1` of the
/// master seed.
pub fn replication_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index + 1);
    rng
}

fn run_estimator(kind: EstimatorKind, s: &Sample, opts: &FitOptions) -> Option<(f64, f64)> {
    match kind {
        EstimatorKind::Mdpde(tau) => match fit_joint(s, tau, opts) {
            Ok(r) if r.converged => Some((r.params_hat.alpha(), r.params_hat.beta())),
            _ => None,
        },
        EstimatorKind::RepeatedMedian => competitors::estimate_rm(s)
            .ok()
            .map(|e| (e.alpha_hat, e.beta_hat)),
        EstimatorKind::SampleMedian => competitors::estimate_sm(s)
            .ok()
            .map(|e| (e.alpha_hat, e.beta_hat)),
        EstimatorKind::HodgesLehmann => competitors::estimate_hl(s)
            .ok()
            .map(|e| (e.alpha_hat, e.beta_hat)),
    }
}

/// Runs the full scenario and aggregates one [`MetricsRow`] per estimator,
/// in the order requested. Failed fits are excluded from the averages and
/// counted in `n_failed` rather than silently polluting the comparison.
pub fn replicate_metrics(spec: &ScenarioSpec) -> Result<Vec<MetricsRow>> {
    spec.validate()?;
    let opts = FitOptions::default();

    // rep-major table of per-estimator outcomes, computed in parallel but
    // reduced sequentially in replication order.
    let per_rep: Vec<Vec<Option<(f64, f64)>>> = (0..spec.replications as u64)
        .into_par_iter()
        .map(|rep| {
            let mut rng = replication_rng(spec.seed, rep);
            let clean = spec
                .truth
                .sample(spec.n, &mut rng)
                .expect("scenario validated n >= 2");
            let data = contaminate(&clean, spec.contamination, &mut rng)
                .expect("scenario validated n >= 4 for contaminated cases");
            spec.estimators
                .iter()
                .map(|&kind| run_estimator(kind, &data, &opts))
                .collect()
        })
        .collect();

    let truth_alpha = spec.truth.alpha();
    let truth_beta = spec.truth.beta();
    let rows = spec
        .estimators
        .iter()
        .enumerate()
        .map(|(col, kind)| {
            let mut bias = KahanSum::default();
            let mut mse = KahanSum::default();
            let mut alpha_sum = KahanSum::default();
            let mut beta_sum = KahanSum::default();
            let mut ok = 0usize;
            for rep in &per_rep {
                if let Some((a, b)) = rep[col] {
                    bias.add((a - truth_alpha).abs() + (b - truth_beta).abs());
                    mse.add((a - truth_alpha).powi(2) + (b - truth_beta).powi(2));
                    alpha_sum.add(a);
                    beta_sum.add(b);
                    ok += 1;
                }
            }
            let denom = ok.max(1) as f64;
            MetricsRow {
                estimator: kind.label(),
                mean_bias: bias.value() / denom,
                rmse: (mse.value() / denom).sqrt(),
                mean_alpha_hat: alpha_sum.value() / denom,
                mean_beta_hat: beta_sum.value() / denom,
                n_failed: spec.replications - ok,
            }
        })
        .collect();
    Ok(rows)
}

/// Compensated accumulator; keeps the aggregation deterministic to the
/// last bit regardless of magnitude spread.
#[derive(Default)]
struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    fn add(&mut self, v: f64) {
        let y = v - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum
    }
}

const TABLE_COLUMNS: [&str; 6] = ["estimator", "bias", "rmse", "alpha_hat", "beta_hat", "n_failed"];

/// Renders rows in the table layout of the reference results: estimator,
/// Bias, RMSE, mean α̂, mean β̂, plus the failure count. Text uses five
/// decimals; CSV and JSON keep full precision.
pub fn emit_table(rows: &[MetricsRow], format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => {
            let mut out = format!(
                "{:<10} {:>12} {:>12} {:>12} {:>12} {:>9}\n",
                "estimator", "Bias", "RMSE", "alpha_hat", "beta_hat", "n_failed"
            );
            for r in rows {
                out.push_str(&format!(
                    "{:<10} {:>12.5} {:>12.5} {:>12.5} {:>12.5} {:>9}\n",
                    r.estimator, r.mean_bias, r.rmse, r.mean_alpha_hat, r.mean_beta_hat, r.n_failed
                ));
            }
            out
        }
        OutputFormat::Csv => {
            let mut out = TABLE_COLUMNS.join(",");
            out.push('\n');
            for r in rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.estimator, r.mean_bias, r.rmse, r.mean_alpha_hat, r.mean_beta_hat, r.n_failed
                ));
            }
            out
        }
        OutputFormat::Json => {
            serde_json::to_string_pretty(rows).expect("metrics rows serialize") + "\n"
        }
    }
}

/// Parses a table produced by [`emit_table`] with [`OutputFormat::Csv`]
/// back into rows; `emit → parse` is lossless.
pub fn parse_table_csv(text: &str) -> Result<Vec<MetricsRow>> {
    let mut lines = text.lines().enumerate();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse { line: 1, message: "empty table".to_string() })?;
    if header.1.trim() != TABLE_COLUMNS.join(",") {
        return Err(Error::Parse {
            line: 1,
            message: format!("unexpected header {:?}", header.1),
        });
    }
    let mut rows = Vec::new();
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != TABLE_COLUMNS.len() {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("expected {} fields, got {}", TABLE_COLUMNS.len(), fields.len()),
            });
        }
        let num = |i: usize| -> Result<f64> {
            fields[i].parse().map_err(|_| Error::Parse {
                line: idx + 1,
                message: format!("bad number {:?}", fields[i]),
            })
        };
        rows.push(MetricsRow {
            estimator: fields[0].to_string(),
            mean_bias: num(1)?,
            rmse: num(2)?,
            mean_alpha_hat: num(3)?,
            mean_beta_hat: num(4)?,
            n_failed: fields[5].parse().map_err(|_| Error::Parse {
                line: idx + 1,
                message: format!("bad count {:?}", fields[5]),
            })?,
        });
    }
    Ok(rows)
}
