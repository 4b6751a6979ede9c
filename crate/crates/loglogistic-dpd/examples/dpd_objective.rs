//! A look at the objective itself: the divergence surface a fit climbs,
//! its closed-form integral term, and the analytic gradient that the
//! optimizer's Newton polish consumes.
//!
//! Run with: cargo run --example dpd_objective

use loglogistic_dpd::dpd::{gradient, integral_term, objective, Tau};
use loglogistic_dpd::loglogistic::{Params, Sample};

fn main() -> loglogistic_dpd::Result<()> {
    let truth = Params::new(1.0, 2.0)?;
    // A deterministic quantile-spaced sample.
    let n = 400;
    let values: Vec<f64> = (1..=n)
        .map(|i| truth.quantile((i as f64 - 0.5) / n as f64))
        .collect::<Result<_, _>>()?;
    let s = Sample::new(values)?;

    println!("integral term (closed form of the density-power mass):");
    for t in [0.0, 0.25, 0.5, 1.0] {
        println!("  tau = {t:<5} -> {:.8}", integral_term(&truth, Tau::new(t)?)?);
    }

    let tau = Tau::new(0.5)?;
    println!("\nobjective surface slice through the truth (tau = 0.5):");
    println!("{:>8} {:>12} | {:>8} {:>12}", "alpha", "H", "beta", "H");
    for d in [-0.2f64, -0.1, 0.0, 0.1, 0.2] {
        let pa = Params::new(truth.alpha() * d.exp(), truth.beta())?;
        let pb = Params::new(truth.alpha(), truth.beta() * d.exp())?;
        println!(
            "{:>8.4} {:>12.7} | {:>8.4} {:>12.7}",
            pa.alpha(),
            objective(&s, &pa, tau)?,
            pb.beta(),
            objective(&s, &pb, tau)?
        );
    }

    let (ga, gb) = gradient(&s, &truth, tau)?;
    println!("\ngradient at the truth: ({ga:+.2e}, {gb:+.2e})  (near zero: the sample is ideal)");

    let off = Params::new(1.3, 1.7)?;
    let (ga, gb) = gradient(&s, &off, tau)?;
    println!("gradient at (1.3, 1.7): ({ga:+.5}, {gb:+.5})  (points back toward the truth)");

    // The objective family is continuous in tau at the likelihood end.
    let h0 = objective(&s, &truth, Tau::ZERO)?;
    let h_eps = objective(&s, &truth, Tau::new(1e-8)?)?;
    println!("\ntau -> 0 limit: H_0 = {h0:.10}, H_1e-8 = {h_eps:.10}");
    Ok(())
}
