//! The two-parameter log-logistic distribution: density, distribution
//! function, quantile, inverse-transform sampling and raw moments.
//!
//! Density: `f(x) = β α^β x^{β−1} / (x^β + α^β)²` for `x > 0`, where `α > 0`
//! is the scale (and median) and `β > 0` the shape.
//!
//! All evaluation is done through the log-density, so large shapes
//! (β = 10 is routine here) cannot overflow.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun;

/// Validated `(α, β)` parameter pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Params {
    alpha: f64,
    beta: f64,
}

impl Params {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::domain(format!("scale alpha must be finite and > 0, got {alpha}")));
        }
        if !beta.is_finite() || beta <= 0.0 {
            return Err(Error::domain(format!("shape beta must be finite and > 0, got {beta}")));
        }
        Ok(Params { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `β·(ln x − ln α)`: the natural argument of the logistic kernel.
    #[inline]
    pub(crate) fn z(&self, x: f64) -> f64 {
        self.beta * (x.ln() - self.alpha.ln())
    }

    #[inline]
    pub(crate) fn log_pdf_unchecked(&self, x: f64) -> f64 {
        self.beta.ln() - self.beta * self.alpha.ln() + (self.beta - 1.0) * x.ln()
            - 2.0 * softplus(self.z(x))
    }

    #[inline]
    pub(crate) fn cdf_unchecked(&self, x: f64) -> f64 {
        logistic(self.z(x))
    }

    /// Log-density `ln f(x)`; `x` must be strictly positive.
    pub fn log_pdf(&self, x: f64) -> Result<f64> {
        check_support(x)?;
        Ok(self.log_pdf_unchecked(x))
    }

    /// Density `f(x)`; `x` must be strictly positive.
    ///
    /// Non-positive `x` is rejected rather than mapped to zero: the
    /// estimators in this crate require strictly positive data, and a
    /// silent zero would mask bad ingestion.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        Ok(self.log_pdf(x)?.exp())
    }

    /// Distribution function `F(x) = x^β / (x^β + α^β)`.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        check_support(x)?;
        Ok(self.cdf_unchecked(x))
    }

    /// Quantile `F⁻¹(u) = α (u/(1−u))^{1/β}` for `u ∈ (0, 1)`.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !u.is_finite() || u <= 0.0 || u >= 1.0 {
            return Err(Error::domain(format!("quantile level must lie in (0, 1), got {u}")));
        }
        Ok(self.alpha * ((u.ln() - (1.0 - u).ln()) / self.beta).exp())
    }

    /// Draws `n` i.i.d. observations by inverse transform; deterministic
    /// given the generator state.
    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<Sample> {
        if n == 0 {
            return Err(Error::domain("sample size must be at least 1".to_string()));
        }
        let values = (0..n).map(|_| self.draw(rng)).collect();
        Ok(Sample { values })
    }

    pub(crate) fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        loop {
            let u: f64 = rng.random();
            if u > 0.0 && u < 1.0 {
                return self.alpha * ((u.ln() - (1.0 - u).ln()) / self.beta).exp();
            }
        }
    }

    /// Raw moment `E[X^k] = α^k · B(1 − k/β, 1 + k/β)`, which exists only
    /// for `k < β`.
    pub fn raw_moment(&self, k: u32) -> Result<f64> {
        if k == 0 {
            return Err(Error::domain("moment order must be at least 1".to_string()));
        }
        let kf = f64::from(k);
        if kf >= self.beta {
            return Err(Error::MomentUndefined { order: k, beta: self.beta });
        }
        let r = kf / self.beta;
        Ok(self.alpha.powi(k as i32) * specfun::beta_fn(1.0 - r, 1.0 + r)?)
    }
}

fn check_support(x: f64) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::domain(format!("log-logistic support is x > 0, got {x}")));
    }
    Ok(())
}

/// `ln(1 + e^z)` without overflow.
#[inline]
fn softplus(z: f64) -> f64 {
    if z > 35.0 {
        z + (-z).exp()
    } else if z < -35.0 {
        z.exp()
    } else {
        z.exp().ln_1p()
    }
}

/// `1 / (1 + e^{−z})` without overflow.
#[inline]
fn logistic(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// A collection of strictly positive, finite observations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    values: Vec<f64>,
}

impl Sample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::domain("sample must contain at least one observation".to_string()));
        }
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::domain(format!(
                    "observation {} must be finite and > 0, got {v}",
                    i + 1
                )));
            }
        }
        Ok(Sample { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// True when every observation equals the first; such samples carry no
    /// shape information and are rejected by the estimators.
    pub fn is_degenerate(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }

    pub(crate) fn replace_prefix(&self, replacement: &[f64]) -> Sample {
        let mut values = self.values.clone();
        values[..replacement.len()].copy_from_slice(replacement);
        Sample { values }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn p(alpha: f64, beta: f64) -> Params {
        Params::new(alpha, beta).unwrap()
    }

    #[test]
    fn pdf_at_median_is_beta_over_four_alpha() {
        assert!((p(1.0, 2.0).pdf(1.0).unwrap() - 0.5).abs() < 1e-14);
        assert!((p(3.0, 7.0).pdf(3.0).unwrap() - 7.0 / 12.0).abs() < 1e-14);
    }

    #[test]
    fn pdf_direct_evaluation() {
        // f(2; 1, 2) = 2·1·2 / (4+1)² = 4/25
        assert!((p(1.0, 2.0).pdf(2.0).unwrap() - 0.16).abs() < 1e-14);
    }

    #[test]
    fn cdf_values() {
        assert_eq!(p(1.0, 2.0).cdf(1.0).unwrap(), 0.5);
        assert!((p(1.0, 1.0).cdf(3.0).unwrap() - 0.75).abs() < 1e-14);
        let tail = 1.0 - p(2.0, 3.0).cdf(1e12).unwrap();
        assert!(tail < 1e-30);
    }

    #[test]
    fn cdf_at_alpha_is_half_for_all_params() {
        for &(a, b) in &[(0.5, 1.5), (1.0, 2.5), (2.0, 5.0), (7.3, 10.0)] {
            assert_eq!(p(a, b).cdf(a).unwrap(), 0.5);
        }
    }

    #[test]
    fn quantile_values() {
        assert!((p(5.0, 4.0).quantile(0.5).unwrap() - 5.0).abs() < 1e-12);
        assert!((p(1.0, 1.0).quantile(0.75).unwrap() - 3.0).abs() < 1e-12);
        assert!((p(1.0, 2.0).quantile(0.9).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn quantile_inverts_cdf() {
        // Grid kept where cdf(x) ∈ [1e-6, 1−1e-6]: beyond that, 1−u itself
        // has fewer than 10 significant digits and no inverse can recover x.
        let pr = p(2.0, 3.5);
        for &x in &[0.05, 0.5, 1.9, 2.0, 2.1, 10.0, 50.0] {
            let u = pr.cdf(x).unwrap();
            let back = pr.quantile(u).unwrap();
            assert!((back - x).abs() <= 1e-10 * x, "x = {x}, back = {back}");
        }
    }

    #[test]
    fn pdf_integrates_to_one() {
        // Trapezoid in u = F(x) coordinates: ∫ f dx = ∫ du = 1 by
        // construction, so instead integrate f on a dense log grid.
        let mut grid = Vec::new();
        for &a in &[0.5, 1.0, 2.0] {
            for &b in &[1.5, 2.5, 5.0, 10.0] {
                grid.push((a, b));
            }
        }
        for &(a, b) in &grid {
            let pr = p(a, b);
            let (lo, hi) = (pr.quantile(1e-12).unwrap(), pr.quantile(1.0 - 1e-12).unwrap());
            let m = 200_000;
            let step = (hi.ln() - lo.ln()) / m as f64;
            let mut total = 0.0;
            for i in 0..=m {
                let x = (lo.ln() + i as f64 * step).exp();
                let w = if i == 0 || i == m { 0.5 } else { 1.0 };
                // ∫ f dx = ∫ f(x) x d(ln x)
                total += w * pr.pdf(x).unwrap() * x * step;
            }
            assert!((total - 1.0).abs() < 1e-8, "({a}, {b}): {total}");
        }
    }

    #[test]
    fn pdf_unimodal_for_beta_above_one() {
        for &(a, b) in &[(1.0, 1.5), (1.0, 2.5), (2.0, 5.0), (0.5, 10.0)] {
            let pr = p(a, b);
            let m = 4000;
            let mut sign_changes = 0;
            let mut prev_slope = f64::NAN;
            for i in 0..m {
                let x0 = pr.quantile((i as f64 + 0.5) / m as f64).unwrap();
                let x1 = pr.quantile((i as f64 + 1.5) / m as f64).unwrap_or(x0);
                let slope = pr.pdf(x1).unwrap() - pr.pdf(x0).unwrap();
                if prev_slope.is_finite() && slope * prev_slope < 0.0 {
                    sign_changes += 1;
                }
                if slope != 0.0 {
                    prev_slope = slope;
                }
            }
            assert_eq!(sign_changes, 1, "({a}, {b})");
        }
    }

    #[test]
    fn sampling_median_matches_scale() {
        let pr = p(2.5, 4.0);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s = pr.sample(100_000, &mut rng).unwrap();
        let mut v = s.values().to_vec();
        v.sort_by(f64::total_cmp);
        let med = 0.5 * (v[49_999] + v[50_000]);
        // SE of the sample median is 1/(2 f(α) √n) = 2α/(β√n).
        let se = 2.0 * 2.5 / (4.0 * (1e5f64).sqrt());
        assert!((med - 2.5).abs() < 3.0 * se, "median {med}, se {se}");
    }

    #[test]
    fn sampling_kolmogorov_distance_small() {
        let pr = p(1.0, 10.0);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let s = pr.sample(100_000, &mut rng).unwrap();
        let mut v = s.values().to_vec();
        v.sort_by(f64::total_cmp);
        let n = v.len() as f64;
        let mut ks: f64 = 0.0;
        for (i, &x) in v.iter().enumerate() {
            let f = pr.cdf(x).unwrap();
            let lo = i as f64 / n;
            let hi = (i + 1) as f64 / n;
            ks = ks.max((f - lo).abs()).max((hi - f).abs());
        }
        assert!(ks < 0.01, "KS distance {ks}");
    }

    #[test]
    fn sample_size_zero_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(p(1.0, 2.0).sample(0, &mut rng).is_err());
    }

    #[test]
    fn raw_moment_values() {
        // E[X] for (1, 2) is B(1/2, 3/2) = π/2, frozen from quadrature of
        // ∫ x f dx.
        let m1 = p(1.0, 2.0).raw_moment(1).unwrap();
        assert!((m1 - PI / 2.0).abs() < 1e-12, "{m1}");
        assert!(matches!(
            p(1.0, 2.0).raw_moment(2),
            Err(Error::MomentUndefined { order: 2, .. })
        ));
    }

    #[test]
    fn raw_moment_scale_family() {
        for &c in &[0.1, 3.0, 42.0] {
            for k in 1..=2u32 {
                let base = p(1.0, 3.5).raw_moment(k).unwrap();
                let scaled = p(c, 3.5).raw_moment(k).unwrap();
                assert!((scaled - c.powi(k as i32) * base).abs() <= 1e-12 * scaled.abs());
            }
        }
    }

    #[test]
    fn invalid_inputs_rejected() {
        assert!(Params::new(0.0, 1.0).is_err());
        assert!(Params::new(1.0, -2.0).is_err());
        assert!(Params::new(f64::NAN, 1.0).is_err());
        let pr = p(1.0, 2.0);
        assert!(pr.pdf(0.0).is_err());
        assert!(pr.pdf(-1.0).is_err());
        assert!(pr.cdf(0.0).is_err());
        assert!(pr.quantile(0.0).is_err());
        assert!(pr.quantile(1.0).is_err());
        assert!(Sample::new(vec![]).is_err());
        assert!(Sample::new(vec![1.0, -0.5]).is_err());
        assert!(Sample::new(vec![1.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn log_pdf_stable_at_extremes() {
        let pr = p(1.0, 10.0);
        for &x in &[1e-250, 1e-30, 1e30, 1e250] {
            let lf = pr.log_pdf(x).unwrap();
            assert!(lf.is_finite(), "log_pdf({x}) = {lf}");
        }
    }
}
