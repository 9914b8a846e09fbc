//! Fits BASN2 to the bundled athlete BMI data by moments and by maximum
//! likelihood, with standard errors and the normal-vs-BASN2 LR test.
//!
//! cargo run --example fit_bmi

use basn::inference::{lr_test_normal_vs_basn2, mle_fit, mom_fit, Dataset};

fn load() -> Result<Dataset, Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/bmi.csv");
    let mut rdr = csv::Reader::from_path(path)?;
    let mut values = Vec::new();
    for rec in rdr.records() {
        values.push(rec?[0].trim().parse::<f64>()?);
    }
    Ok(Dataset::new("bmi", values)?)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = load()?;
    println!("n = {}", data.len());

    let mom = mom_fit(&data)?;
    println!("\nmoments:");
    for (name, v) in mom.params.iter() {
        println!("  {name:>6} = {v:.6}");
    }
    println!("  loglik = {:.4}", mom.loglik);

    let mle = mle_fit(&data, None)?;
    let se = mle.std_errors().unwrap_or([f64::NAN; 3]);
    println!("\nmaximum likelihood (converged: {}):", mle.converged);
    for ((name, v), s) in mle.params.iter().zip(se) {
        println!("  {name:>6} = {v:.6}  (se {s:.4})");
    }
    println!("  loglik = {:.4}  AIC = {:.3}  BIC = {:.3}", mle.loglik, mle.aic, mle.bic);
    if let Some(v) = mle.vcov {
        println!("  vcov (alpha, mu, sigma):");
        for row in v {
            println!("    {:>10.5} {:>10.5} {:>10.5}", row[0], row[1], row[2]);
        }
    }

    let lr = lr_test_normal_vs_basn2(&data)?;
    println!(
        "\nLR statistic {:.3} vs {:.3}: {}",
        lr.statistic,
        lr.critical_1pct,
        if lr.reject_null { "normal rejected" } else { "normal not rejected" }
    );
    Ok(())
}
