//! Half-BASN2 lifetime model: density, survival, hazard and the shape of
//! the hazard curve as alpha varies.
//!
//! cargo run --example lifetime_hazard

use basn::density::AlphaParam;
use basn::lifetime::{hazard_shape, Hbasn2};

fn main() -> basn::Result<()> {
    let alphas = [-1.0, 0.0, 0.5, 1.0, 2.0];
    print!("{:>5}", "t");
    for a in alphas {
        print!(" {:>11}", format!("h(a={a})"));
    }
    println!();
    for i in 0..=12 {
        let t = 0.25 * i as f64;
        print!("{t:>5.2}");
        for a in alphas {
            print!(" {:>11.5}", Hbasn2::new(AlphaParam::new(a)?).hazard(t)?.rate);
        }
        println!();
    }

    println!();
    for a in [-1.0, 0.0, 0.3, 0.7, 1.0, 2.0] {
        let shape = hazard_shape(AlphaParam::new(a)?, 6.0)?;
        println!("alpha = {a:>4}: {:?}", shape.shape);
    }

    let h = Hbasn2::new(AlphaParam::new(1.0)?);
    println!("\nalpha = 1: f(1) = {:.6}, S(1) = {:.6}, h(1) = {:.6}", h.pdf(1.0)?, h.survival(1.0)?, h.hazard(1.0)?.rate);
    let far = h.hazard(60.0)?;
    println!("t = 60: hazard saturated = {}", far.saturated);
    Ok(())
}
