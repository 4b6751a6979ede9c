//! Influence functions of the MDPDE for `α` and `β`: the per-observation
//! estimating function scaled by the inverse of the corresponding
//! information scalar, `IF(x, θ, τ) = ψ_θ(x) / J_τ(θ)`.
//!
//! At τ = 0 this is the score over the Fisher information; the β influence
//! diverges like `−(β²/(3+π²)) ln x` as `x → ∞`, while for any τ > 0 both
//! influence functions are bounded in `x` — the local-robustness property
//! the positive tuning parameter buys.

use serde::Serialize;

use crate::asymptotics;
use crate::dpd::{self, Tau};
use crate::error::{Error, Result};
use crate::loglogistic::Params;

/// One evaluated influence point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IfPoint {
    pub x: f64,
    pub value: f64,
}

/// Grid spacing for [`if_grid`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GridScale {
    Linear,
    Log,
}

fn check_point(x: f64) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::domain(format!("contamination point must be finite and > 0, got {x}")));
    }
    Ok(())
}

/// Influence of a contamination at `x` on the MDPDE of `α`.
pub fn if_alpha(p: &Params, tau: Tau, x: f64) -> Result<f64> {
    check_point(x)?;
    let (psi_alpha, _) = dpd::score(p, tau, x)?;
    Ok(psi_alpha / asymptotics::j_alpha(p, tau)?)
}

/// Influence of a contamination at `x` on the MDPDE of `β`.
pub fn if_beta(p: &Params, tau: Tau, x: f64) -> Result<f64> {
    check_point(x)?;
    let (_, psi_beta) = dpd::score(p, tau, x)?;
    Ok(psi_beta / asymptotics::j_beta(p, tau)?)
}

/// Evaluates both influence functions on an `n`-point grid over
/// `[x_min, x_max]`, linearly or logarithmically spaced. Returns the
/// `α`-influence; pair with [`if_beta`] via [`if_grid_with`] for custom
/// targets.
pub fn if_grid(
    p: &Params,
    tau: Tau,
    x_min: f64,
    x_max: f64,
    n: usize,
    scale: GridScale,
) -> Result<Vec<IfPoint>> {
    if_grid_with(p, tau, x_min, x_max, n, scale, if_alpha)
}

/// Grid evaluation of an arbitrary influence target (`if_alpha` or
/// `if_beta`).
pub fn if_grid_with(
    p: &Params,
    tau: Tau,
    x_min: f64,
    x_max: f64,
    n: usize,
    scale: GridScale,
    target: impl Fn(&Params, Tau, f64) -> Result<f64>,
) -> Result<Vec<IfPoint>> {
    grid_points(x_min, x_max, n, scale)?
        .into_iter()
        .map(|x| Ok(IfPoint { x, value: target(p, tau, x)? }))
        .collect()
}

/// The evaluation abscissae used by [`if_grid`].
pub fn grid_points(x_min: f64, x_max: f64, n: usize, scale: GridScale) -> Result<Vec<f64>> {
    if !x_min.is_finite() || !x_max.is_finite() || x_min <= 0.0 || x_min >= x_max {
        return Err(Error::domain(format!(
            "grid requires 0 < x_min < x_max, got [{x_min}, {x_max}]"
        )));
    }
    if n < 2 {
        return Err(Error::domain(format!("grid needs at least 2 points, got {n}")));
    }
    let steps = (n - 1) as f64;
    Ok((0..n)
        .map(|i| {
            let w = i as f64 / steps;
            match scale {
                GridScale::Linear => x_min + w * (x_max - x_min),
                GridScale::Log => (x_min.ln() + w * (x_max.ln() - x_min.ln())).exp(),
            }
        })
        .collect())
}
