//! The efficiency/robustness dial, quantified: asymptotic variances of the
//! MDPDE as τ grows. At τ = 0 the sandwich collapses to the inverse Fisher
//! matrix; every increase in τ pays a variance premium for robustness.
//!
//! Run with: cargo run --example asymptotic_variance

use loglogistic_dpd::asymptotics::{k_alpha, k_beta, sandwich};
use loglogistic_dpd::dpd::Tau;
use loglogistic_dpd::loglogistic::Params;

fn main() -> loglogistic_dpd::Result<()> {
    let p = Params::new(1.0, 2.0)?;
    println!("asymptotic variances at (alpha, beta) = (1, 2)\n");
    println!(
        "{:<6} {:>10} {:>10} {:>10} {:>10} {:>12} {:>12}",
        "tau", "var(a)", "var(b)", "K(a)", "K(b)", "eff(a) %", "eff(b) %"
    );
    let fisher = sandwich(&p, Tau::ZERO)?;
    for t in [0.0, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0] {
        let tau = Tau::new(t)?;
        let m = sandwich(&p, tau)?;
        println!(
            "{:<6.2} {:>10.5} {:>10.5} {:>10.5} {:>10.5} {:>12.1} {:>12.1}",
            t,
            m.sandwich[0][0],
            m.sandwich[1][1],
            k_alpha(&p, tau)?,
            k_beta(&p, tau)?,
            100.0 * fisher.sandwich[0][0] / m.sandwich[0][0],
            100.0 * fisher.sandwich[1][1] / m.sandwich[1][1],
        );
    }

    let t = Tau::new(0.3)?;
    let m = sandwich(&p, t)?;
    println!("\nfull matrices at tau = 0.3:");
    println!("J  = [{:.6} {:.6}; {:.6} {:.6}]", m.j[0][0], m.j[0][1], m.j[1][0], m.j[1][1]);
    println!("K  = [{:.6} {:.6}; {:.6} {:.6}]", m.k[0][0], m.k[0][1], m.k[1][0], m.k[1][1]);
    println!("xi = ({:.6}, {:.6})", m.xi[0], m.xi[1]);
    println!(
        "Cov = [{:.6} {:.6}; {:.6} {:.6}]   (x 1/n)",
        m.sandwich[0][0], m.sandwich[0][1], m.sandwich[1][0], m.sandwich[1][1]
    );
    Ok(())
}
