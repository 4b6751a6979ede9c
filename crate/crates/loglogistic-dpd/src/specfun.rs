//! Special functions (log-gamma, beta, digamma, trigamma) and the three
//! integral identities on `(0, ∞)` used by the closed-form covariance
//! machinery:
//!
//! * `I1(m, s) = ∫ t^m / (1+t)^s dt              = B(s−m−1, m+1)`
//! * `I2(m, s) = ∫ (log t) · t^m / (1+t)^s dt    = I1 · {Ψ(m+1) − Ψ(s−m−1)}`
//! * `I3(m, s) = ∫ (log t)² · t^m / (1+t)^s dt   = I1 · {(Ψ(m+1) − Ψ(s−m−1))² + Ψ′(m+1) + Ψ′(s−m−1)}`
//!
//! All functions are pure and reentrant.

use crate::error::{Error, Result};

/// ln √(2π)
#[allow(clippy::excessive_precision)]
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_74;

// Lanczos approximation, g = 7, 9 coefficients. Good to ~1e-14 relative
// for positive real arguments.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn check_positive(name: &str, x: f64) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::domain(format!("{name} must be finite and > 0, got {x}")));
    }
    Ok(())
}

pub(crate) fn ln_gamma_raw(x: f64) -> f64 {
    if x < 0.5 {
        // ln Γ(x) = ln Γ(x+1) − ln x keeps the Lanczos sum well away from
        // its accuracy floor near the origin.
        return ln_gamma_raw(x + 1.0) - x.ln();
    }
    let z = x - 1.0;
    let mut a = LANCZOS[0];
    for (k, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + a.ln()
}

/// Natural logarithm of the gamma function, `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    check_positive("log_gamma argument", x)?;
    Ok(ln_gamma_raw(x))
}

pub(crate) fn ln_beta_raw(a: f64, b: f64) -> f64 {
    ln_gamma_raw(a) + ln_gamma_raw(b) - ln_gamma_raw(a + b)
}

/// Beta function `B(a, b)` for `a, b > 0`, evaluated in log space and
/// exponentiated last so large arguments do not overflow.
pub fn beta_fn(a: f64, b: f64) -> Result<f64> {
    check_positive("beta_fn first argument", a)?;
    check_positive("beta_fn second argument", b)?;
    Ok(ln_beta_raw(a, b).exp())
}

// Asymptotic tail coefficients B_{2k}/(2k) for Ψ(x), k = 1..7.
const DIGAMMA_TAIL: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

// Bernoulli numbers B_{2k} for Ψ′(x), k = 1..7.
const TRIGAMMA_TAIL: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

// Recurrence threshold: the asymptotic series reach ~1e-15 there.
const ASYMPTOTIC_CUTOFF: f64 = 8.0;

pub(crate) fn digamma_raw(x: f64) -> f64 {
    let mut w = x;
    let mut acc = 0.0;
    while w < ASYMPTOTIC_CUTOFF {
        acc -= 1.0 / w;
        w += 1.0;
    }
    let inv2 = 1.0 / (w * w);
    let mut tail = 0.0;
    let mut p = inv2;
    for c in DIGAMMA_TAIL {
        tail += c * p;
        p *= inv2;
    }
    acc + w.ln() - 0.5 / w - tail
}

/// Digamma function `Ψ(x)` for `x > 0`, via upward recurrence into the
/// asymptotic regime.
pub fn digamma(x: f64) -> Result<f64> {
    check_positive("digamma argument", x)?;
    Ok(digamma_raw(x))
}

pub(crate) fn trigamma_raw(x: f64) -> f64 {
    let mut w = x;
    let mut acc = 0.0;
    while w < ASYMPTOTIC_CUTOFF {
        acc += 1.0 / (w * w);
        w += 1.0;
    }
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let mut tail = 0.0;
    let mut p = inv2 * inv;
    for c in TRIGAMMA_TAIL {
        tail += c * p;
        p *= inv2;
    }
    acc + inv + 0.5 * inv2 + tail
}

/// Trigamma function `Ψ′(x)` for `x > 0`.
pub fn trigamma(x: f64) -> Result<f64> {
    check_positive("trigamma argument", x)?;
    Ok(trigamma_raw(x))
}

fn beta_args(m: f64, s: f64) -> Result<(f64, f64)> {
    let a = s - m - 1.0;
    let b = m + 1.0;
    if !a.is_finite() || !b.is_finite() || a <= 0.0 || b <= 0.0 {
        return Err(Error::domain(format!(
            "identity arguments require s - m - 1 > 0 and m + 1 > 0, got m = {m}, s = {s}"
        )));
    }
    Ok((a, b))
}

/// `∫₀^∞ t^m / (1+t)^s dt = B(s−m−1, m+1)`.
pub fn identity_i1(m: f64, s: f64) -> Result<f64> {
    let (a, b) = beta_args(m, s)?;
    Ok(ln_beta_raw(a, b).exp())
}

/// `∫₀^∞ (log t) · t^m / (1+t)^s dt`.
pub fn identity_i2(m: f64, s: f64) -> Result<f64> {
    let (a, b) = beta_args(m, s)?;
    Ok(ln_beta_raw(a, b).exp() * (digamma_raw(b) - digamma_raw(a)))
}

/// `∫₀^∞ (log t)² · t^m / (1+t)^s dt`.
pub fn identity_i3(m: f64, s: f64) -> Result<f64> {
    let (a, b) = beta_args(m, s)?;
    let d = digamma_raw(b) - digamma_raw(a);
    Ok(ln_beta_raw(a, b).exp() * (d * d + trigamma_raw(b) + trigamma_raw(a)))
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    // (x, ln Γ(x), Ψ(x), Ψ′(x)) frozen from a 30-digit reference evaluation.
    const REFERENCE: [(f64, f64, f64, f64); 13] = [
        (1.0e-3, 6.9071788853838537, -1000.5755719318103, 1000001.6425331958),
        (1.0e-2, 4.5994798780420217, -100.56088545786867, 10001.621213528313),
        (1.0e-1, 2.2527126517342059, -10.423754940411076, 101.43329915079275),
        (0.5, 0.57236494292470009, -1.9635100260214235, 4.9348022005446793),
        (1.0, 0.0, -0.57721566490153286, 1.6449340668482264),
        (1.5, -0.12078223763524522, 0.036489973978576521, 0.93480220054467931),
        (2.0, 0.0, 0.42278433509846714, 0.64493406684822644),
        (3.7, 1.4280723266653881, 1.1671535393615114, 0.31003785767003830),
        (8.0, 8.5251613610654143, 2.0156414779556100, 0.13313701469403143),
        (12.5, 18.734347511936446, 2.4851956512749120, 0.083285224601578370),
        (100.0, 359.13420536957540, 4.6001618527380874, 0.010050166663333571),
        (1.5e3, 9467.0929645306664, 7.3128870167199327, 0.00066688893827160055),
        (1.0e6, 12815504.569147612, 13.815510057964191, 1.0000005000001667e-6),
    ];

    fn assert_close(got: f64, want: f64, rel: f64) {
        let tol = rel * (1.0 + want.abs());
        assert!(
            (got - want).abs() <= tol,
            "got {got}, want {want} (tol {tol})"
        );
    }

    #[test]
    fn log_gamma_reference_values() {
        for &(x, lg, _, _) in &REFERENCE {
            assert_close(log_gamma(x).unwrap(), lg, 1e-12);
        }
    }

    #[test]
    fn log_gamma_small_integers() {
        assert_eq!(log_gamma(1.0).unwrap(), 0.0);
        assert_close(log_gamma(5.0).unwrap(), 24f64.ln(), 1e-14);
    }

    #[test]
    fn log_gamma_half_via_reflection() {
        // Γ(1/2)² = π by the reflection identity, so ln Γ(1/2) = ln(π)/2.
        assert_close(log_gamma(0.5).unwrap(), 0.5 * PI.ln(), 1e-14);
    }

    #[test]
    fn digamma_reference_values() {
        for &(x, _, dg, _) in &REFERENCE {
            assert_close(digamma(x).unwrap(), dg, 1e-10);
        }
    }

    /// Euler–Mascheroni constant via the harmonic-sum series with
    /// Euler–Maclaurin correction; independent of the digamma code path.
    fn euler_gamma_series() -> f64 {
        let n = 1000u64;
        let harmonic: f64 = (1..=n).map(|k| 1.0 / k as f64).sum();
        let nf = n as f64;
        harmonic - nf.ln() - 0.5 / nf + 1.0 / (12.0 * nf * nf)
    }

    #[test]
    fn digamma_at_one_is_minus_euler_gamma() {
        let gamma = euler_gamma_series();
        assert_close(digamma(1.0).unwrap(), -gamma, 1e-11);
        assert_close(digamma(2.0).unwrap(), -gamma + 1.0, 1e-11);
    }

    #[test]
    fn digamma_at_ten_via_harmonic_recurrence() {
        // Ψ(10) = −γ + Σ_{k=1}^{9} 1/k, independent of the asymptotic series.
        let expected = -euler_gamma_series() + (1..=9).map(|k| 1.0 / k as f64).sum::<f64>();
        assert_close(digamma(10.0).unwrap(), expected, 1e-10);
    }

    /// ζ(2) via Euler–Maclaurin-corrected partial sum.
    fn zeta2_series() -> f64 {
        let n = 2000u64;
        let partial: f64 = (1..=n).map(|k| 1.0 / (k * k) as f64).sum();
        let nf = n as f64;
        partial + 1.0 / nf - 0.5 / (nf * nf) + 1.0 / (6.0 * nf * nf * nf)
    }

    #[test]
    fn trigamma_special_points() {
        let zeta2 = zeta2_series();
        assert_close(trigamma(1.0).unwrap(), zeta2, 1e-12);
        assert_close(trigamma(2.0).unwrap(), zeta2 - 1.0, 1e-12);
        // Reflection: Ψ′(x) + Ψ′(1−x) = π²/sin²(πx); at x = 1/2, Ψ′(1/2) = π²/2.
        assert_close(trigamma(0.5).unwrap(), PI * PI / 2.0, 1e-12);
    }

    #[test]
    fn trigamma_reference_values() {
        for &(x, _, _, tg) in &REFERENCE {
            assert_close(trigamma(x).unwrap(), tg, 1e-10);
        }
    }

    #[test]
    fn recurrences_hold_at_random_points() {
        // Deterministic low-discrepancy sweep of [0.01, 100].
        let mut u = 0.5f64;
        for _ in 0..100 {
            u = (u + 0.618_033_988_749_894_9).fract();
            let x = 0.01 + 99.99 * u;
            let psi = digamma(x).unwrap();
            let psi1 = digamma(x + 1.0).unwrap();
            assert!((psi1 - psi - 1.0 / x).abs() <= 1e-12 * (1.0 + psi.abs()));
            let tri = trigamma(x).unwrap();
            let tri1 = trigamma(x + 1.0).unwrap();
            assert!((tri1 - tri + 1.0 / (x * x)).abs() <= 1e-12 * (1.0 + tri.abs()));
        }
    }

    #[test]
    fn beta_symmetry_and_values() {
        assert_close(beta_fn(1.0, 1.0).unwrap(), 1.0, 1e-14);
        assert_close(beta_fn(2.0, 3.0).unwrap(), 1.0 / 12.0, 1e-14);
        // B(1/2, 1/2) = Γ(1/2)² = π.
        assert_close(beta_fn(0.5, 0.5).unwrap(), PI, 1e-13);
        let mut u = 0.1f64;
        for _ in 0..20 {
            u = (u + 0.618_033_988_749_894_9).fract();
            let a = 0.05 + 10.0 * u;
            let b = 0.05 + 10.0 * (1.0 - u);
            let fwd = beta_fn(a, b).unwrap();
            let rev = beta_fn(b, a).unwrap();
            assert_close(fwd, rev, 1e-14);
            // B(a+1, b) = a/(a+b) · B(a, b)
            assert_close(beta_fn(a + 1.0, b).unwrap(), a / (a + b) * fwd, 1e-13);
        }
    }

    #[test]
    fn identities_match_frozen_quadrature() {
        // (m, s, I1, I2, I3) frozen from 30-digit quadrature of the
        // defining integrals.
        const CASES: [(f64, f64, f64, f64, f64); 4] = [
            (0.7, 3.2, 0.33220774686334751, 0.057158967586337584, 0.58390127603289114),
            (0.3, 2.5, 0.61987851109894121, 0.074291824465499396, 1.4976230270376921),
            (1.5, 4.0, 0.19634954084936208, 0.13089969389957472, 0.36709596572384214),
            (0.0, 3.0, 0.5, -0.5, 1.6449340668482264),
        ];
        for &(m, s, i1, i2, i3) in &CASES {
            assert_close(identity_i1(m, s).unwrap(), i1, 1e-12);
            assert_close(identity_i2(m, s).unwrap(), i2, 1e-12);
            assert_close(identity_i3(m, s).unwrap(), i3, 1e-12);
        }
    }

    #[test]
    fn identity_trivial_values() {
        assert_close(identity_i1(0.0, 2.0).unwrap(), 1.0, 1e-14);
        assert_close(identity_i1(1.0, 4.0).unwrap(), 1.0 / 6.0, 1e-14);
        // Symmetric beta arguments make the digamma difference vanish.
        assert!(identity_i2(1.0, 4.0).unwrap().abs() < 1e-15);
        // I2(0, 3) = B(2,1)·{Ψ(1) − Ψ(2)} = −1/2.
        assert_close(identity_i2(0.0, 3.0).unwrap(), -0.5, 1e-13);
        // I3(0, 2) = 2Ψ′(1) = π²/3.
        assert_close(identity_i3(0.0, 2.0).unwrap(), PI * PI / 3.0, 1e-13);
    }

    #[test]
    fn identity_i3_positive() {
        for &(m, s) in &[(0.0, 2.5), (0.3, 3.0), (0.7, 4.0), (1.5, 6.0)] {
            assert!(identity_i3(m, s).unwrap() > 0.0);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-1.0).is_err());
        assert!(log_gamma(f64::NAN).is_err());
        assert!(log_gamma(f64::INFINITY).is_err());
        assert!(digamma(-0.5).is_err());
        assert!(trigamma(0.0).is_err());
        assert!(beta_fn(1.0, 0.0).is_err());
        assert!(beta_fn(-2.0, 1.0).is_err());
        // s − m − 1 = 0
        assert!(identity_i1(1.5, 2.5).is_err());
        assert!(identity_i2(3.0, 2.0).is_err());
        assert!(identity_i3(-2.0, 4.0).is_err());
    }
}
