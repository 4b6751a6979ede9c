//! Closed-form asymptotic variance machinery for the MDPDE: the
//! information-type scalars `J_τ`, the centering terms `ξ_τ`, the variance
//! terms `K_τ = J_{2τ} − ξ_τ²`, and the joint sandwich covariance
//! `J⁻¹ K J⁻¹`.
//!
//! Everything here is a closed form in beta/digamma/trigamma functions of
//! `a = τ+1+τ/β` and `b = τ+1−τ/β`; no quadrature is performed. At τ = 0
//! the scalars reduce to the Fisher information: `J_0(α) = β²/(3α²)`,
//! `J_0(β) = (3+π²)/(9β²)`, and the cross term vanishes.

use serde::Serialize;

use crate::dpd::{beta_args, Tau};
use crate::error::{Error, Result};
use crate::loglogistic::Params;
use crate::specfun::{digamma_raw, ln_beta_raw, trigamma_raw};

/// 2×2 matrix in row-major order.
pub type Matrix2 = [[f64; 2]; 2];

/// The matrices entering the asymptotic law of the joint MDPDE.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AsymptoticMatrices {
    /// Information-type matrix `J_τ`.
    pub j: Matrix2,
    /// Variance-type matrix `K_τ = J_{2τ} − ξ_τ ξ_τᵀ`.
    pub k: Matrix2,
    /// Centering vector `(ξ_τ(α), ξ_τ(β))`; zero at τ = 0.
    pub xi: [f64; 2],
    /// Sandwich covariance `J_τ⁻¹ K_τ J_τ⁻¹`.
    pub sandwich: Matrix2,
}

struct Terms {
    a: f64,
    b: f64,
    /// `B(a, b)`
    beta_ab: f64,
}

fn terms(p: &Params, tau: f64) -> Result<Terms> {
    let (a, b) = beta_args(p.beta(), tau);
    if b <= 0.0 {
        return Err(Error::domain(format!(
            "asymptotic scalars undefined: beta·(tau+1) must exceed tau (beta = {}, tau = {tau})",
            p.beta()
        )));
    }
    Ok(Terms { a, b, beta_ab: ln_beta_raw(a, b).exp() })
}

/// `J_τ(α) = ∫ (∂ln f/∂α)² f^{τ+1} dx` in closed form.
pub fn j_alpha(p: &Params, tau: Tau) -> Result<f64> {
    let t = tau.value();
    let w = terms(p, t)?;
    let bracket = 1.0 - 2.0 * w.a * w.b / ((t + 1.0) * (2.0 * t + 3.0));
    Ok((p.beta() / p.alpha()).powf(t + 2.0) * w.beta_ab * bracket)
}

/// `ξ_τ(α) = ∫ (∂ln f/∂α) f^{τ+1} dx` in closed form; zero at τ = 0 and
/// strictly negative for τ > 0.
pub fn xi_alpha(p: &Params, tau: Tau) -> Result<f64> {
    let t = tau.value();
    let w = terms(p, t)?;
    Ok((p.beta() / p.alpha()).powf(t + 1.0) * w.beta_ab * (-t / (p.beta() * (1.0 + t))))
}

/// `K_τ(α) = J_{2τ}(α) − ξ_τ(α)²`; the Fisher information at τ = 0.
pub fn k_alpha(p: &Params, tau: Tau) -> Result<f64> {
    let xi = xi_alpha(p, tau)?;
    Ok(j_alpha(p, Tau::new(2.0 * tau.value())?)? - xi * xi)
}

/// `J_τ(β) = ∫ (∂ln f/∂β)² f^{τ+1} dx` as a six-term closed form.
pub fn j_beta(p: &Params, tau: Tau) -> Result<f64> {
    let t = tau.value();
    let w = terms(p, t)?;
    let (a, b) = (w.a, w.b);
    let prefactor = ((t - 2.0) * p.beta().ln() - t * p.alpha().ln()).exp();
    let (pa, pb) = (digamma_raw(a), digamma_raw(b));
    let (ta, tb) = (trigamma_raw(a), trigamma_raw(b));
    let (pb1, tb1) = (digamma_raw(b + 1.0), trigamma_raw(b + 1.0));
    let (pb2, tb2) = (digamma_raw(b + 2.0), trigamma_raw(b + 2.0));
    let beta_ab1 = ln_beta_raw(a, b + 1.0).exp();
    let beta_ab2 = ln_beta_raw(a, b + 2.0).exp();

    let n1 = w.beta_ab;
    let n2 = 2.0 * w.beta_ab * (pb - pa);
    let n3 = -4.0 * beta_ab1 * (pb1 - pa);
    let n4 = w.beta_ab * ((pb - pa).powi(2) + tb + ta);
    let n5 = -4.0 * beta_ab1 * ((pb1 - pa).powi(2) + tb1 + ta);
    let n6 = 4.0 * beta_ab2 * ((pb2 - pa).powi(2) + tb2 + ta);
    Ok(prefactor * (n1 + n2 + n3 + n4 + n5 + n6))
}

/// `ξ_τ(β) = ∫ (∂ln f/∂β) f^{τ+1} dx` in closed form; zero at τ = 0.
pub fn xi_beta(p: &Params, tau: Tau) -> Result<f64> {
    let t = tau.value();
    let w = terms(p, t)?;
    let prefactor = ((t - 1.0) * p.beta().ln() - t * p.alpha().ln()).exp();
    let correction = 1.0 + (digamma_raw(w.b) - digamma_raw(w.a)) / p.beta();
    Ok(prefactor * t / (t + 1.0) * w.beta_ab * correction)
}

/// `K_τ(β) = J_{2τ}(β) − ξ_τ(β)²`.
pub fn k_beta(p: &Params, tau: Tau) -> Result<f64> {
    let xi = xi_beta(p, tau)?;
    Ok(j_beta(p, Tau::new(2.0 * tau.value())?)? - xi * xi)
}

/// Off-diagonal information `J_τ^{12} = ∫ (∂ln f/∂α)(∂ln f/∂β) f^{τ+1} dx`
/// as a six-term closed form; zero at τ = 0.
pub fn j_cross(p: &Params, tau: Tau) -> Result<f64> {
    let t = tau.value();
    let w = terms(p, t)?;
    let (a, b) = (w.a, w.b);
    let prefactor = (t * p.beta().ln() - (t + 1.0) * p.alpha().ln()).exp();
    let (pa, pb) = (digamma_raw(a), digamma_raw(b));
    let pa1 = digamma_raw(a + 1.0);
    let pb1 = digamma_raw(b + 1.0);
    let beta_ab1 = ln_beta_raw(a, b + 1.0).exp();
    let beta_a1b = ln_beta_raw(a + 1.0, b).exp();
    let beta_a1b1 = ln_beta_raw(a + 1.0, b + 1.0).exp();

    let b1 = w.beta_ab;
    let b2 = w.beta_ab * (pb - pa);
    let b3 = -2.0 * beta_ab1 * (pb1 - pa);
    let b4 = -2.0 * beta_a1b;
    let b5 = -2.0 * beta_a1b * (pb - pa1);
    let b6 = 4.0 * beta_a1b1 * (pb1 - pa1);
    Ok(prefactor * (b1 + b2 + b3 + b4 + b5 + b6))
}

/// Assembles `J_τ`, `K_τ`, `ξ_τ` and the sandwich covariance
/// `J_τ⁻¹ K_τ J_τ⁻¹` at the given parameters.
pub fn sandwich(p: &Params, tau: Tau) -> Result<AsymptoticMatrices> {
    let tau2 = Tau::new(2.0 * tau.value())?;
    let j = sym(j_alpha(p, tau)?, j_cross(p, tau)?, j_beta(p, tau)?);
    let xi = [xi_alpha(p, tau)?, xi_beta(p, tau)?];
    let j2 = sym(j_alpha(p, tau2)?, j_cross(p, tau2)?, j_beta(p, tau2)?);
    let k = sym(
        j2[0][0] - xi[0] * xi[0],
        j2[0][1] - xi[0] * xi[1],
        j2[1][1] - xi[1] * xi[1],
    );

    let j_inv = invert_pd(&j)?;
    let ji_k = mul(&j_inv, &k);
    let mut sw = mul(&ji_k, &j_inv);
    // The product is symmetric in exact arithmetic; enforce it.
    let off = 0.5 * (sw[0][1] + sw[1][0]);
    sw[0][1] = off;
    sw[1][0] = off;

    Ok(AsymptoticMatrices { j, k, xi, sandwich: sw })
}

fn sym(d00: f64, off: f64, d11: f64) -> Matrix2 {
    [[d00, off], [off, d11]]
}

fn mul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn invert_pd(m: &Matrix2) -> Result<Matrix2> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let scale = m.iter().flatten().fold(0.0f64, |acc, &v| acc.max(v.abs()));
    if !det.is_finite() || det.abs() <= 1e-300 * scale.max(1.0) {
        return Err(Error::IllConditioned(format!("determinant {det} too small to invert")));
    }
    if m[0][0] <= 0.0 || det <= 0.0 {
        return Err(Error::IllConditioned(
            "information matrix is not positive definite".to_string(),
        ));
    }
    Ok([
        [m[1][1] / det, -m[0][1] / det],
        [-m[1][0] / det, m[0][0] / det],
    ])
}
