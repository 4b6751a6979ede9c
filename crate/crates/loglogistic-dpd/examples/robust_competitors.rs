//! The robust comparator estimators (repeated median, sample median/MAD,
//! Hodges-Lehmann/Shamos) side by side with the MDPDE sweep on clean and
//! contaminated data.
//!
//! Run with: cargo run --example robust_competitors

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use loglogistic_dpd::competitors::{estimate_hl, estimate_rm, estimate_sm, CompetitorEstimate};
use loglogistic_dpd::dpd::Tau;
use loglogistic_dpd::fit::{fit_joint, FitOptions};
use loglogistic_dpd::loglogistic::{Params, Sample};

fn main() -> loglogistic_dpd::Result<()> {
    let truth = Params::new(1.0, 10.0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let clean = truth.sample(25, &mut rng)?;

    // Replace the first three observations with a wild constant.
    let mut poisoned = clean.values().to_vec();
    poisoned[..3].copy_from_slice(&[50.0, 50.0, 50.0]);
    let poisoned = Sample::new(poisoned)?;

    let opts = FitOptions::default();
    println!("truth: (alpha, beta) = (1, 10), n = 25, three observations set to 50\n");
    println!("{:<10} {:>20} {:>20}", "estimator", "clean", "contaminated");
    for t in [0.0, 0.1, 0.2, 0.3, 0.5] {
        let tau = Tau::new(t)?;
        let a = fit_joint(&clean, tau, &opts)?.params_hat;
        let b = fit_joint(&poisoned, tau, &opts)?.params_hat;
        let label = if t == 0.0 { "MLE".to_string() } else { format!("DPD {t}") };
        println!(
            "{label:<10} ({:>8.4}, {:>7.3}) ({:>8.4}, {:>7.3})",
            a.alpha(), a.beta(), b.alpha(), b.beta()
        );
    }
    type Estimator = fn(&Sample) -> loglogistic_dpd::Result<CompetitorEstimate>;
    for (label, f) in [
        ("RM", estimate_rm as Estimator),
        ("SM", estimate_sm as Estimator),
        ("HL", estimate_hl as Estimator),
    ] {
        let a = f(&clean)?;
        let b = f(&poisoned)?;
        println!(
            "{label:<10} ({:>8.4}, {:>7.3}) ({:>8.4}, {:>7.3})",
            a.alpha_hat, a.beta_hat, b.alpha_hat, b.beta_hat
        );
    }
    println!("\nthe MLE shape collapses under contamination; moderate-tau MDPDE and RM hold up.");
    Ok(())
}
