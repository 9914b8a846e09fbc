//! Ranks BASN2 against normal, Laplace, logistic, SN and ASN fits by AIC on
//! a simulated bimodal sample and on the bundled BMI data.
//!
//! cargo run --release --example model_comparison

use basn::density::LocScaleParams;
use basn::inference::{compare_models, Dataset, Model};
use basn::sampling::{sample_locscale, SampleConfig};

fn show(data: &Dataset) -> basn::Result<()> {
    let rep = compare_models(data, &Model::ALL)?;
    println!("{} (n = {})", rep.dataset, rep.n);
    for row in &rep.rows {
        match &row.fit {
            Some(f) => println!(
                "  {:>2} {:<9} loglik {:>10.3}  AIC {:>9.3}  BIC {:>9.3}",
                row.rank.unwrap_or(0),
                row.model.name(),
                f.loglik,
                f.aic,
                f.bic
            ),
            None => println!("     {:<9} failed: {}", row.model.name(), row.error.as_deref().unwrap_or("")),
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = LocScaleParams::new(2.0, 10.0, 1.5)?;
    let sim = Dataset::new("simulated BASN2(2, 10, 1.5)", sample_locscale(p, SampleConfig::new(400, 3)?)?)?;
    show(&sim)?;

    let path = std::path::Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/data/bmi.csv"));
    let bmi = basn::cli::ingest_csv(path, None)?;
    println!();
    show(&bmi)?;
    Ok(())
}
