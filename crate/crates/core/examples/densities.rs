//! Density, cdf, quantile and mode structure of BASN2(alpha), its symmetric
//! component and the location-scale form.
//!
//! cargo run --example densities

use basn::density::{bn4_cdf, AlphaParam, Basn2, LocScaleBasn2, Scbasn2};

fn main() -> basn::Result<()> {
    println!("{:>6} {:>10} {:>10} {:>10} {:>10}", "z", "a=0", "a=0.5", "a=1", "a=2");
    let dists: Vec<Basn2> = [0.0, 0.5, 1.0, 2.0]
        .into_iter()
        .map(Basn2::with_alpha)
        .collect::<basn::Result<_>>()?;
    for i in -8..=8 {
        let z = 0.5 * i as f64;
        print!("{z:>6.1}");
        for d in &dists {
            print!(" {:>10.6}", d.pdf(z));
        }
        println!();
    }

    for a in [0.0, 0.5, 1.0, 2.0] {
        let d = Basn2::with_alpha(a)?;
        let r = d.mode_report();
        println!(
            "\nalpha = {a}: mean {:.5}, variance {:.5}, {} mode(s) at {:?}, median {:.5}",
            d.mean(),
            d.variance(),
            r.count,
            r.modes,
            d.quantile(0.5)?
        );
        println!("  P(Z <= 0) = {:.8}  P(Z > 3) = {:.3e}", d.cdf(0.0), d.sf(3.0));
    }

    let s = Scbasn2::new(AlphaParam::new(1.0)?);
    println!("\nsymmetric component at alpha = 1: pdf(1) = {:.8}, cdf(1) = {:.8}", s.pdf(1.0), s.cdf(1.0));

    // large alpha approaches the bimodal z^4 phi(z)/3 law
    let big = Basn2::with_alpha(1e6)?;
    println!("cdf(1) at alpha = 1e6: {:.8}  vs limit {:.8}", big.cdf(1.0), bn4_cdf(1.0));

    let y = LocScaleBasn2::from_parts(1.0, 26.5, 2.7)?;
    println!("\nBASN2(1, 26.5, 2.7): pdf(25) = {:.6}, 95% quantile = {:.4}", y.pdf(25.0), y.quantile(0.95)?);
    Ok(())
}
