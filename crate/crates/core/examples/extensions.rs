//! The extension families: bivariate, two-parameter, alpha-beta,
//! generalized and log forms, with their normalizing-constant audits.
//!
//! cargo run --example extensions

use basn::density::AlphaParam;
use basn::extensions::{
    limits, AlphaBetaParams, Babsn2, Bbasn2, BivariateParams, GenParams, Gbasn2, Lbasn2, Tpbasn2, TwoAlphaParams,
};

fn main() -> basn::Result<()> {
    let b = Bbasn2::new(BivariateParams::new(1.0, 2.0, 0.8)?)?;
    let tp = Tpbasn2::new(TwoAlphaParams::new(1.0, 2.0)?)?;
    let ab = Babsn2::new(AlphaBetaParams::new(1.0, 1.0)?)?;
    let g = Gbasn2::new(GenParams::new(1.0, 1.0)?)?;
    for audit in [b.audit(), tp.audit(), ab.audit(), g.audit()] {
        println!(
            "{:<8} closed form {:>14.6}  quadrature {:>14.6}  consistent {}",
            audit.family,
            audit.closed_form,
            audit.quadrature,
            audit.consistent()
        );
    }

    println!("\nbbasn2(0.5, -0.5) = {:.6}", b.pdf(0.5, -0.5));
    println!("tpbasn2(0.3)      = {:.6}", tp.pdf(0.3));
    println!("babsn2(0.3)       = {:.6}", ab.pdf(0.3));
    println!("gbasn2(0.3)       = {:.6}", g.pdf(0.3));
    let l = Lbasn2::new(AlphaParam::new(1.0)?);
    println!("lbasn2(1)         = {:.6}  (total mass {:.10})", l.pdf(1.0)?, l.total_mass()?);

    let huge = Tpbasn2::new(TwoAlphaParams::new(1e4, 1e4)?)?;
    println!("\ntpbasn2(1.5) at alpha1 = alpha2 = 1e4: {:.6}  limit z^8 phi/105: {:.6}", huge.pdf(1.5), limits::bn8(1.5));
    Ok(())
}
