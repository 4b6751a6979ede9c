//! Shared test oracles. Everything here is written straight from the
//! defining formulas, independent of the library's closed-form code paths,
//! so a library bug cannot hide behind a matching oracle bug.

#![allow(dead_code)]

/// Double-exponential (exp-sinh) quadrature of `f` over `(0, ∞)`:
/// `t = exp((π/2)·sinh(s))` turns the integral into a trapezoid sum whose
/// error decays double-exponentially, so integrable endpoint singularities
/// (powers and logs) cost nothing. The step is halved until two successive
/// levels agree to a mixed 1e-11 tolerance.
///
/// Valid for integrands with `f(t) = O(t^{p})`, `p > -1` at zero and
/// `f(t) = O(t^{-q})`, `q > 1` at infinity — true of every integrand in
/// this suite. Values outside f64 range are treated as zero; they sit
/// under double-exponentially small weights.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(f: F) -> f64 {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let eval = |s: f64| -> f64 {
        let q = half_pi * s.sinh();
        if q.abs() > 700.0 {
            return 0.0;
        }
        let t = q.exp();
        let v = f(t) * t * half_pi * s.cosh();
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let s_max = 5.0;
    let mut h = 0.5;
    let mut k_max = (s_max / h) as i64;
    let mut total: f64 = (-k_max..=k_max).map(|k| eval(k as f64 * h)).sum::<f64>() * h;
    for _ in 0..10 {
        h *= 0.5;
        k_max = (s_max / h) as i64;
        let refined: f64 = (-k_max..=k_max).map(|k| eval(k as f64 * h)).sum::<f64>() * h;
        let converged = (refined - total).abs() <= 1e-11 * (1.0 + refined.abs());
        total = refined;
        if converged {
            break;
        }
    }
    total
}

/// Log-logistic density written directly from its definition.
pub fn pdf(x: f64, alpha: f64, beta: f64) -> f64 {
    beta * alpha.powf(beta) * x.powf(beta - 1.0) / (x.powf(beta) + alpha.powf(beta)).powi(2)
}

/// `∂ ln f / ∂α`, from the definition.
pub fn u_alpha(x: f64, alpha: f64, beta: f64) -> f64 {
    beta / alpha - 2.0 * beta * alpha.powf(beta - 1.0) / (x.powf(beta) + alpha.powf(beta))
}

/// `∂ ln f / ∂β`, from the definition.
pub fn u_beta(x: f64, alpha: f64, beta: f64) -> f64 {
    let r = (x / alpha).powf(beta);
    1.0 / beta + (x / alpha).ln() - 2.0 * r * (x / alpha).ln() / (1.0 + r)
}

/// `∫ w(x) f^{1+τ} dx` by quadrature, for weight functions built from the
/// log-density scores.
pub fn dpd_integral(alpha: f64, beta: f64, tau: f64, w: impl Fn(f64, f64, f64) -> f64) -> f64 {
    integrate_semi_infinite(|x| w(x, alpha, beta) * pdf(x, alpha, beta).powf(1.0 + tau))
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1e-300)
}

#[cfg(test)]
mod self_checks {
    use super::*;

    #[test]
    fn oracle_integrates_known_values() {
        // ∫ e^{−t} dt = 1
        assert!(rel_err(integrate_semi_infinite(|t| (-t).exp()), 1.0) < 1e-10);
        // ∫ 1/(1+t)² dt = 1
        assert!(rel_err(integrate_semi_infinite(|t| (1.0 + t).powi(-2)), 1.0) < 1e-10);
        // ∫ t/(1+t)⁴ dt = B(2,2) = 1/6
        assert!(rel_err(integrate_semi_infinite(|t| t / (1.0 + t).powi(4)), 1.0 / 6.0) < 1e-10);
        // ∫ (log t)² /(1+t)² dt = π²/3
        let v = integrate_semi_infinite(|t| t.ln().powi(2) / (1.0 + t).powi(2));
        assert!(rel_err(v, std::f64::consts::PI.powi(2) / 3.0) < 1e-10, "{v}");
        // Endpoint singularity: ∫ t^{-1/2}/(1+t)² dt = B(1/2, 3/2) = π/2
        let v = integrate_semi_infinite(|t| 1.0 / (t.sqrt() * (1.0 + t).powi(2)));
        assert!(rel_err(v, std::f64::consts::FRAC_PI_2) < 1e-10, "{v}");
    }

    #[test]
    fn oracle_density_normalizes() {
        for &(a, b) in &[(0.5, 1.5), (1.0, 2.5), (2.0, 10.0)] {
            assert!(rel_err(integrate_semi_infinite(|x| pdf(x, a, b)), 1.0) < 1e-10);
        }
    }
}
