//! Numerical maximization of the DPD objective: joint `(α, β)` fits and
//! profile fits with one parameter held fixed.
//!
//! The search runs in `(ln α, ln β)` coordinates — a derivative-free
//! simplex pass for basin robustness under contamination, then a damped
//! Newton polish on the analytic gradient for tight stationarity. Several
//! robust starting points are tried and the best objective wins.

use serde::Serialize;

use crate::competitors;
use crate::dpd::{self, Tau};
use crate::error::{Error, Result};
use crate::loglogistic::{Params, Sample};
use crate::optim::{nelder_mead, newton_polish};

/// A starting point for the optimizer.
#[derive(Debug, Clone, PartialEq)]
pub enum StartPoint {
    /// Hodges–Lehmann/Shamos estimate of `(α, β)`.
    HodgesLehmann,
    /// Sample-median estimate of `(α, β)`.
    SampleMedian,
    /// `(sample median, 2·ln 3 / IQR of logs)` — a quartile-matching start.
    MomentStyle,
    /// A caller-supplied point.
    Fixed(Params),
}

impl StartPoint {
    fn label(&self, index: usize) -> String {
        match self {
            StartPoint::HodgesLehmann => "hl".to_string(),
            StartPoint::SampleMedian => "sm".to_string(),
            StartPoint::MomentStyle => "moment".to_string(),
            StartPoint::Fixed(_) => format!("fixed#{index}"),
        }
    }
}

/// Optimizer settings.
#[derive(Debug, Clone)]
pub struct FitOptions {
    /// Termination tolerance on the relative parameter change of the
    /// simplex stage.
    pub tolerance: f64,
    /// Iteration cap per stage per start.
    pub max_iterations: usize,
    /// Gradient magnitude (in original coordinates) below which a fit is
    /// declared converged.
    pub gradient_tolerance: f64,
    /// Starting points, tried in order; ties in the final objective are
    /// broken toward the earliest start.
    pub starts: Vec<StartPoint>,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            tolerance: 1e-9,
            max_iterations: 500,
            gradient_tolerance: 1e-7,
            starts: vec![
                StartPoint::HodgesLehmann,
                StartPoint::SampleMedian,
                StartPoint::MomentStyle,
            ],
        }
    }
}

impl FitOptions {
    fn validate(&self) -> Result<()> {
        if !self.tolerance.is_finite() || self.tolerance <= 0.0 {
            return Err(Error::Config(format!("tolerance must be > 0, got {}", self.tolerance)));
        }
        if self.max_iterations == 0 {
            return Err(Error::Config("max_iterations must be at least 1".to_string()));
        }
        if self.starts.is_empty() {
            return Err(Error::Config("at least one start point is required".to_string()));
        }
        Ok(())
    }
}

/// Outcome of a fit.
#[derive(Debug, Clone, Serialize)]
pub struct FitResult {
    pub params_hat: Params,
    pub tau: Tau,
    pub objective_value: f64,
    /// True when the gradient of the free parameters at `params_hat` is
    /// below the gradient tolerance. A `false` here is an honest
    /// non-convergence report, never a silent success.
    pub converged: bool,
    pub iterations: usize,
    /// Norm of the objective gradient over the free parameters, in
    /// original `(α, β)` coordinates.
    pub gradient_norm: f64,
    /// Which start produced the returned optimum.
    pub start_used: String,
}

/// Which parameters the optimizer moves.
#[derive(Clone, Copy)]
enum FreeParams {
    Both,
    AlphaOnly { beta: f64 },
    BetaOnly { alpha: f64 },
}

impl FreeParams {
    fn to_params(self, z: &[f64]) -> Result<Params> {
        match self {
            FreeParams::Both => Params::new(z[0].exp(), z[1].exp()),
            FreeParams::AlphaOnly { beta } => Params::new(z[0].exp(), beta),
            FreeParams::BetaOnly { alpha } => Params::new(alpha, z[0].exp()),
        }
    }

    fn project(self, p: Params) -> Vec<f64> {
        match self {
            FreeParams::Both => vec![p.alpha().ln(), p.beta().ln()],
            FreeParams::AlphaOnly { .. } => vec![p.alpha().ln()],
            FreeParams::BetaOnly { .. } => vec![p.beta().ln()],
        }
    }

    /// Gradient of the objective in the free log-coordinates.
    fn gradient_z(self, s: &Sample, p: &Params, tau: Tau) -> Option<Vec<f64>> {
        let (ga, gb) = dpd::gradient(s, p, tau).ok()?;
        Some(match self {
            FreeParams::Both => vec![ga * p.alpha(), gb * p.beta()],
            FreeParams::AlphaOnly { .. } => vec![ga * p.alpha()],
            FreeParams::BetaOnly { .. } => vec![gb * p.beta()],
        })
    }

    /// Gradient over the free parameters in original coordinates.
    fn gradient_original(self, s: &Sample, p: &Params, tau: Tau) -> Option<Vec<f64>> {
        let (ga, gb) = dpd::gradient(s, p, tau).ok()?;
        Some(match self {
            FreeParams::Both => vec![ga, gb],
            FreeParams::AlphaOnly { .. } => vec![ga],
            FreeParams::BetaOnly { .. } => vec![gb],
        })
    }
}

/// Maximizes the DPD objective over both parameters.
pub fn fit_joint(s: &Sample, tau: Tau, opts: &FitOptions) -> Result<FitResult> {
    fit_free(s, tau, opts, FreeParams::Both)
}

/// Maximizes over `α` with the shape held at `beta_known`.
pub fn fit_alpha_known(s: &Sample, beta_known: f64, tau: Tau, opts: &FitOptions) -> Result<FitResult> {
    if !beta_known.is_finite() || beta_known <= 0.0 {
        return Err(Error::domain(format!("beta_known must be finite and > 0, got {beta_known}")));
    }
    if beta_known * (1.0 + tau.value()) <= tau.value() {
        return Err(Error::domain(format!(
            "objective undefined for beta_known = {beta_known} at tau = {}: requires beta·(tau+1) > tau",
            tau.value()
        )));
    }
    fit_free(s, tau, opts, FreeParams::AlphaOnly { beta: beta_known })
}

/// Maximizes over `β` with the scale held at `alpha_known`.
pub fn fit_beta_known(s: &Sample, alpha_known: f64, tau: Tau, opts: &FitOptions) -> Result<FitResult> {
    if !alpha_known.is_finite() || alpha_known <= 0.0 {
        return Err(Error::domain(format!("alpha_known must be finite and > 0, got {alpha_known}")));
    }
    fit_free(s, tau, opts, FreeParams::BetaOnly { alpha: alpha_known })
}

fn fit_free(s: &Sample, tau: Tau, opts: &FitOptions, free: FreeParams) -> Result<FitResult> {
    opts.validate()?;
    if s.len() < 2 {
        return Err(Error::DegenerateSample(
            "fitting requires at least 2 observations".to_string(),
        ));
    }
    if s.is_degenerate() {
        return Err(Error::DegenerateSample(
            "all observations are identical; the shape is unidentifiable".to_string(),
        ));
    }

    let objective_z = |z: &[f64]| -> f64 {
        match free.to_params(z) {
            Ok(p) => match dpd::objective(s, &p, tau) {
                Ok(v) => -v,
                Err(_) => f64::INFINITY,
            },
            Err(_) => f64::INFINITY,
        }
    };
    let value_z = |z: &[f64]| -objective_z(z);
    let grad_z = |z: &[f64]| -> Option<Vec<f64>> {
        let p = free.to_params(z).ok()?;
        free.gradient_z(s, &p, tau)
    };

    let mut best: Option<(FitResult, f64)> = None;
    for (index, start) in opts.starts.iter().enumerate() {
        let Some(p0) = start_params(start, s) else {
            continue;
        };
        let z0 = free.project(clamp_into_domain(p0, tau));
        // A start may still walk into the region where the objective is
        // undefined and die there; that disqualifies the start, not the fit.
        let Ok(outcome) = run_one_start(s, tau, opts, free, &z0, &objective_z, &value_z, &grad_z)
        else {
            continue;
        };
        let candidate_value = outcome.objective_value;
        let replace = match &best {
            None => true,
            // Ties below 1e-12 keep the earlier start for determinism.
            Some((_, incumbent)) => candidate_value > incumbent + 1e-12,
        };
        if replace {
            let mut r = outcome;
            r.start_used = start.label(index);
            best = Some((r, candidate_value));
        }
    }

    // Every named start can degenerate on heavily tied data; fall back to
    // the sample median with unit shape.
    if best.is_none() {
        let med = median(s.values());
        if let Ok(p0) = Params::new(med, 1.0) {
            let z0 = free.project(clamp_into_domain(p0, tau));
            let mut r = run_one_start(s, tau, opts, free, &z0, &objective_z, &value_z, &grad_z)?;
            r.start_used = "fallback".to_string();
            let value = r.objective_value;
            best = Some((r, value));
        }
    }

    best.map(|(r, _)| r)
        .ok_or_else(|| Error::DegenerateSample("no usable starting point".to_string()))
}

#[allow(clippy::too_many_arguments)]
fn run_one_start<FO, FV, FG>(
    s: &Sample,
    tau: Tau,
    opts: &FitOptions,
    free: FreeParams,
    z0: &[f64],
    objective_z: &FO,
    value_z: &FV,
    grad_z: &FG,
) -> Result<FitResult>
where
    FO: Fn(&[f64]) -> f64,
    FV: Fn(&[f64]) -> f64,
    FG: Fn(&[f64]) -> Option<Vec<f64>>,
{
    let simplex = nelder_mead(objective_z, z0, 0.25, opts.tolerance, opts.max_iterations);
    let polish = newton_polish(value_z, grad_z, &simplex.x, 1e-11, 40);

    let params_hat = free.to_params(&polish.x)?;
    let objective_value = dpd::objective(s, &params_hat, tau)?;
    let (gradient_norm, converged) = match free.gradient_original(s, &params_hat, tau) {
        Some(g) => {
            let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
            (norm, norm <= opts.gradient_tolerance)
        }
        None => (f64::INFINITY, false),
    };

    Ok(FitResult {
        params_hat,
        tau,
        objective_value,
        converged,
        iterations: simplex.iterations + polish.iterations,
        gradient_norm,
        start_used: String::new(),
    })
}

/// The objective exists only for `β(1+τ) > τ`; a start below that bound
/// (possible for the robust estimates on tiny heavy-tailed samples) is
/// lifted just inside the domain. The bound repels the maximizer, so this
/// cannot move a start past an optimum.
fn clamp_into_domain(p: Params, tau: Tau) -> Params {
    let t = tau.value();
    let bound = t / (t + 1.0);
    if p.beta() > 1.05 * bound {
        p
    } else {
        Params::new(p.alpha(), 1.1 * bound).expect("clamped shape is positive")
    }
}

fn start_params(start: &StartPoint, s: &Sample) -> Option<Params> {
    match start {
        StartPoint::HodgesLehmann => competitors::estimate_hl(s)
            .ok()
            .and_then(|e| Params::new(e.alpha_hat, e.beta_hat).ok()),
        StartPoint::SampleMedian => competitors::estimate_sm(s)
            .ok()
            .and_then(|e| Params::new(e.alpha_hat, e.beta_hat).ok()),
        StartPoint::MomentStyle => {
            let mut logs: Vec<f64> = s.values().iter().map(|v| v.ln()).collect();
            logs.sort_by(f64::total_cmp);
            let iqr = quantile_sorted(&logs, 0.75) - quantile_sorted(&logs, 0.25);
            if iqr <= 0.0 {
                return None;
            }
            // For ln X logistic with scale 1/β, the IQR is 2·ln 3/β.
            let beta = 2.0 * 3f64.ln() / iqr;
            Params::new(median(s.values()), beta).ok()
        }
        StartPoint::Fixed(p) => Some(*p),
    }
}

fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let w = pos - lo as f64;
    sorted[lo] * (1.0 - w) + sorted[hi] * w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::FLOOD_SCOTLAND;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn flood() -> Sample {
        Sample::new(FLOOD_SCOTLAND.to_vec()).unwrap()
    }

    fn tau(v: f64) -> Tau {
        Tau::new(v).unwrap()
    }

    #[test]
    fn flood_mle_matches_reference() {
        let r = fit_joint(&flood(), Tau::ZERO, &FitOptions::default()).unwrap();
        assert!(r.converged, "gradient_norm = {}", r.gradient_norm);
        assert!((r.params_hat.alpha() - 128.59299).abs() / 128.59299 < 1e-3, "{:?}", r.params_hat);
        assert!((r.params_hat.beta() - 4.81482).abs() / 4.81482 < 1e-3, "{:?}", r.params_hat);
    }

    #[test]
    fn flood_dpd_half_matches_reference() {
        let r = fit_joint(&flood(), tau(0.5), &FitOptions::default()).unwrap();
        assert!(r.converged);
        assert!((r.params_hat.alpha() - 118.73857).abs() / 118.73857 < 1e-3);
        assert!((r.params_hat.beta() - 5.88462).abs() / 5.88462 < 1e-3);
    }

    #[test]
    fn stationarity_at_returned_point() {
        for &t in &[0.0, 0.3, 1.0] {
            let r = fit_joint(&flood(), tau(t), &FitOptions::default()).unwrap();
            let (ga, gb) = dpd::gradient(&flood(), &r.params_hat, tau(t)).unwrap();
            assert!(ga.abs() <= 1e-7 && gb.abs() <= 1e-7, "tau {t}: ({ga}, {gb})");
        }
    }

    #[test]
    fn scale_equivariance() {
        let base = fit_joint(&flood(), tau(0.2), &FitOptions::default()).unwrap();
        for &c in &[0.1, 10.0] {
            let scaled: Vec<f64> = FLOOD_SCOTLAND.iter().map(|v| c * v).collect();
            let r = fit_joint(&Sample::new(scaled).unwrap(), tau(0.2), &FitOptions::default()).unwrap();
            let rel_a = (r.params_hat.alpha() - c * base.params_hat.alpha()).abs()
                / (c * base.params_hat.alpha());
            let rel_b = (r.params_hat.beta() - base.params_hat.beta()).abs() / base.params_hat.beta();
            assert!(rel_a < 1e-6, "c = {c}: {rel_a}");
            assert!(rel_b < 1e-6, "c = {c}: {rel_b}");
        }
    }

    #[test]
    fn profile_fit_recovers_joint_optimum() {
        let joint = fit_joint(&flood(), Tau::ZERO, &FitOptions::default()).unwrap();
        let prof = fit_alpha_known(&flood(), joint.params_hat.beta(), Tau::ZERO, &FitOptions::default())
            .unwrap();
        assert!(prof.converged);
        let rel = (prof.params_hat.alpha() - joint.params_hat.alpha()).abs() / joint.params_hat.alpha();
        assert!(rel < 1e-6, "{rel}");
        assert_eq!(prof.params_hat.beta(), joint.params_hat.beta());

        let prof_b =
            fit_beta_known(&flood(), joint.params_hat.alpha(), Tau::ZERO, &FitOptions::default())
                .unwrap();
        assert!(prof_b.converged);
        let rel_b = (prof_b.params_hat.beta() - joint.params_hat.beta()).abs() / joint.params_hat.beta();
        assert!(rel_b < 1e-6, "{rel_b}");
    }

    #[test]
    fn profile_fit_rejects_bad_fixed_parameter() {
        assert!(fit_alpha_known(&flood(), 0.0, Tau::ZERO, &FitOptions::default()).is_err());
        assert!(fit_alpha_known(&flood(), -3.0, Tau::ZERO, &FitOptions::default()).is_err());
        assert!(fit_beta_known(&flood(), 0.0, Tau::ZERO, &FitOptions::default()).is_err());
    }

    #[test]
    fn profile_fit_continuous_in_tau_at_zero() {
        let a = fit_beta_known(&flood(), 128.0, Tau::ZERO, &FitOptions::default()).unwrap();
        let b = fit_beta_known(&flood(), 128.0, tau(1e-7), &FitOptions::default()).unwrap();
        assert!((a.params_hat.beta() - b.params_hat.beta()).abs() < 1e-4);
    }

    #[test]
    fn consistency_on_quantile_spaced_sample() {
        // Deterministic "ideal" sample: quantiles at (i − 1/2)/n.
        let truth = Params::new(1.0, 2.0).unwrap();
        let n = 10_000;
        let values: Vec<f64> = (1..=n)
            .map(|i| truth.quantile((i as f64 - 0.5) / n as f64).unwrap())
            .collect();
        let s = Sample::new(values).unwrap();
        for &t in &[0.0, 0.5] {
            let r = fit_joint(&s, tau(t), &FitOptions::default()).unwrap();
            // 3·SE bands at n = 10⁴: SE(α̂) ≈ √3·α/(β√n), SE(β̂) ≈ 3β/√((3+π²)n).
            assert!((r.params_hat.alpha() - 1.0).abs() < 3.0 * 0.00866, "{:?}", r.params_hat);
            assert!((r.params_hat.beta() - 2.0).abs() < 3.0 * 0.0167, "{:?}", r.params_hat);
        }
    }

    #[test]
    fn degenerate_samples_rejected() {
        let one = Sample::new(vec![3.0]).unwrap();
        assert!(matches!(
            fit_joint(&one, Tau::ZERO, &FitOptions::default()),
            Err(Error::DegenerateSample(_))
        ));
        let all_equal = Sample::new(vec![2.0; 10]).unwrap();
        assert!(matches!(
            fit_joint(&all_equal, Tau::ZERO, &FitOptions::default()),
            Err(Error::DegenerateSample(_))
        ));
    }

    #[test]
    fn objective_not_below_any_start_point() {
        let s = flood();
        let t = tau(0.4);
        let r = fit_joint(&s, t, &FitOptions::default()).unwrap();
        for start in &FitOptions::default().starts {
            if let Some(p0) = start_params(start, &s) {
                let at_start = dpd::objective(&s, &p0, t).unwrap();
                assert!(r.objective_value >= at_start - 1e-12, "start {start:?}");
            }
        }
    }

    #[test]
    fn custom_start_is_honored_and_labeled() {
        let opts = FitOptions {
            starts: vec![StartPoint::Fixed(Params::new(100.0, 5.0).unwrap())],
            ..FitOptions::default()
        };
        let r = fit_joint(&flood(), Tau::ZERO, &opts).unwrap();
        assert_eq!(r.start_used, "fixed#0");
        assert!((r.params_hat.alpha() - 128.59299).abs() / 128.59299 < 1e-3);
    }

    #[test]
    fn heavily_tied_sample_still_fits_via_fallback() {
        let s = Sample::new(vec![1.0, 1.0, 1.0, 1.0, 2.0]).unwrap();
        let r = fit_joint(&s, Tau::ZERO, &FitOptions::default()).unwrap();
        assert_eq!(r.start_used, "fallback");
        assert!(r.params_hat.alpha() > 0.0 && r.params_hat.beta() > 0.0);
    }

    #[test]
    fn mle_equals_tiny_tau_fit() {
        let r0 = fit_joint(&flood(), Tau::ZERO, &FitOptions::default()).unwrap();
        let r1 = fit_joint(&flood(), tau(1e-7), &FitOptions::default()).unwrap();
        let rel_a = (r0.params_hat.alpha() - r1.params_hat.alpha()).abs() / r0.params_hat.alpha();
        let rel_b = (r0.params_hat.beta() - r1.params_hat.beta()).abs() / r0.params_hat.beta();
        assert!(rel_a < 1e-4 && rel_b < 1e-4, "({rel_a}, {rel_b})");
    }

    #[test]
    fn start_below_domain_bound_is_lifted_not_fatal() {
        // Extreme log-spread drives every robust shape start far below the
        // β > τ/(τ+1) bound at τ = 1; the fit must still succeed.
        let s = Sample::new(vec![1e-8, 1e-3, 0.5, 2.0, 1e3, 1e8]).unwrap();
        let hl = crate::competitors::estimate_hl(&s).unwrap();
        assert!(hl.beta_hat < 0.5, "start β̂ = {}", hl.beta_hat);
        let r = fit_joint(&s, tau(1.0), &FitOptions::default()).unwrap();
        assert!(r.objective_value.is_finite());
        assert!(r.params_hat.beta() > 0.5, "{:?}", r.params_hat);
    }

    #[test]
    fn profile_alpha_fit_rejects_out_of_domain_fixed_shape() {
        // β(1+τ) ≤ τ leaves the objective undefined everywhere in α.
        assert!(fit_alpha_known(&flood(), 0.4, tau(1.0), &FitOptions::default()).is_err());
    }

    #[test]
    fn consistency_under_random_sampling() {
        let truth = Params::new(1.0, 2.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let s = truth.sample(5000, &mut rng).unwrap();
        let r = fit_joint(&s, Tau::ZERO, &FitOptions::default()).unwrap();
        assert!((r.params_hat.alpha() - 1.0).abs() < 3.0 * 0.0123, "{:?}", r.params_hat);
        assert!((r.params_hat.beta() - 2.0).abs() < 3.0 * 0.0236, "{:?}", r.params_hat);
    }
}
