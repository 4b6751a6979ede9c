//! Distribution basics: density, CDF, quantiles, inverse-transform
//! sampling and raw moments.
//!
//! Run with: cargo run --example sampling_basics

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use loglogistic_dpd::loglogistic::Params;

fn main() -> loglogistic_dpd::Result<()> {
    let p = Params::new(2.0, 3.0)?;
    println!("log-logistic with scale alpha = {}, shape beta = {}", p.alpha(), p.beta());
    println!("the scale is the median: cdf(alpha) = {}", p.cdf(p.alpha())?);

    println!("\n x      pdf(x)    cdf(x)");
    for x in [0.5, 1.0, 2.0, 4.0, 8.0] {
        println!("{x:4} {:9.5} {:9.5}", p.pdf(x)?, p.cdf(x)?);
    }

    println!("\nquartiles: {:.5} / {:.5} / {:.5}", p.quantile(0.25)?, p.quantile(0.5)?, p.quantile(0.75)?);

    // Raw moments exist only below the shape parameter.
    println!("\nE[X]  = {:.6}", p.raw_moment(1)?);
    println!("E[X2] = {:.6}", p.raw_moment(2)?);
    match p.raw_moment(3) {
        Err(e) => println!("E[X3]: {e}"),
        Ok(_) => unreachable!("third moment needs beta > 3"),
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let s = p.sample(50_000, &mut rng)?;
    let mean = s.values().iter().sum::<f64>() / s.len() as f64;
    println!("\nsample mean over {} draws: {mean:.4} (population {:.4})", s.len(), p.raw_moment(1)?);
    Ok(())
}
