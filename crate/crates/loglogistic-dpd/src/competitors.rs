//! Robust comparator estimators of `(α, β)` built on log-transformed data:
//! the repeated median (RM), the sample median/MAD (SM), and the
//! Hodges–Lehmann/Shamos pair (HL).
//!
//! With `zᵢ = ln xᵢ`, the log-logistic model makes `z` logistic with
//! location `ln α` and scale `1/β`, so location estimates exponentiate to
//! `α̂` and scale estimates invert to `β̂`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::loglogistic::Sample;

/// `Φ⁻¹(3/4)`: the MAD-to-standard-deviation consistency constant.
pub const PROBIT_THREE_QUARTERS: f64 = 0.674489750196082;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    Rm,
    Sm,
    Hl,
}

impl Method {
    pub fn label(&self) -> &'static str {
        match self {
            Method::Rm => "RM",
            Method::Sm => "SM",
            Method::Hl => "HL",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompetitorEstimate {
    pub alpha_hat: f64,
    pub beta_hat: f64,
    pub method: Method,
}

/// Median with the even-length convention of averaging the two central
/// order statistics.
fn median_in_place(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn median_of(values: impl Iterator<Item = f64>) -> f64 {
    let mut v: Vec<f64> = values.collect();
    median_in_place(&mut v)
}

/// Repeated-median regression of the empirical logit on the log data,
/// using plotting position `F̂(x₍ᵢ₎) = i/(n+1)`, which keeps every
/// response finite.
pub fn estimate_rm(s: &Sample) -> Result<CompetitorEstimate> {
    let n = s.len();
    if n < 3 {
        return Err(Error::DegenerateSample(format!(
            "repeated median needs at least 3 observations, got {n}"
        )));
    }
    let mut sorted = s.values().to_vec();
    sorted.sort_by(f64::total_cmp);
    let z: Vec<f64> = sorted.iter().map(|v| v.ln()).collect();
    let y: Vec<f64> = (1..=n)
        .map(|i| {
            let f = i as f64 / (n + 1) as f64;
            (f / (1.0 - f)).ln()
        })
        .collect();

    let mut outer = Vec::with_capacity(n);
    for i in 0..n {
        let mut slopes = Vec::with_capacity(n - 1);
        for j in 0..n {
            // Tied order statistics give no slope; skip the pair.
            if j == i || z[i] == z[j] {
                continue;
            }
            slopes.push((y[i] - y[j]) / (z[i] - z[j]));
        }
        if slopes.is_empty() {
            return Err(Error::DegenerateSample(format!(
                "observation {} has no distinct partner for a slope",
                i + 1
            )));
        }
        outer.push(median_in_place(&mut slopes));
    }
    let b1 = median_in_place(&mut outer);
    if b1 <= 0.0 || !b1.is_finite() {
        return Err(Error::DegenerateSample(format!(
            "repeated-median slope {b1} does not define a positive shape"
        )));
    }
    let b0 = median_of((0..n).map(|i| y[i] - b1 * z[i]));
    Ok(CompetitorEstimate {
        alpha_hat: (-b0 / b1).exp(),
        beta_hat: b1,
        method: Method::Rm,
    })
}

/// Sample-median location with MAD scale.
pub fn estimate_sm(s: &Sample) -> Result<CompetitorEstimate> {
    if s.len() < 2 {
        return Err(Error::DegenerateSample("SM needs at least 2 observations".to_string()));
    }
    let z: Vec<f64> = s.values().iter().map(|v| v.ln()).collect();
    let mu = median_of(z.iter().copied());
    let mad = median_of(z.iter().map(|zi| (zi - mu).abs()));
    if mad == 0.0 {
        return Err(Error::DegenerateSample(
            "median absolute deviation is zero; scale is unidentifiable".to_string(),
        ));
    }
    let s_hat = mad / PROBIT_THREE_QUARTERS;
    Ok(CompetitorEstimate {
        alpha_hat: mu.exp(),
        beta_hat: 1.0 / s_hat,
        method: Method::Sm,
    })
}

/// Hodges–Lehmann location (median of pairwise means over `i < j`) with
/// the Shamos scale (median of pairwise absolute differences).
pub fn estimate_hl(s: &Sample) -> Result<CompetitorEstimate> {
    let n = s.len();
    if n < 2 {
        return Err(Error::DegenerateSample("HL needs at least 2 observations".to_string()));
    }
    let z: Vec<f64> = s.values().iter().map(|v| v.ln()).collect();
    let mut means = Vec::with_capacity(n * (n - 1) / 2);
    let mut diffs = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            means.push(0.5 * (z[i] + z[j]));
            diffs.push((z[i] - z[j]).abs());
        }
    }
    let mu = median_in_place(&mut means);
    let d = median_in_place(&mut diffs);
    if d == 0.0 {
        return Err(Error::DegenerateSample(
            "all pairwise log differences are zero; scale is unidentifiable".to_string(),
        ));
    }
    let s_hat = d / (std::f64::consts::SQRT_2 * PROBIT_THREE_QUARTERS);
    Ok(CompetitorEstimate {
        alpha_hat: mu.exp(),
        beta_hat: 1.0 / s_hat,
        method: Method::Hl,
    })
}
