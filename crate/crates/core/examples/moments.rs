//! Moments, Pearson shape coefficients, their extremes over alpha, and the
//! moment generating function.
//!
//! cargo run --example moments

use basn::density::AlphaParam;
use basn::moments::{basn2_mgf, extremal_bounds, raw_moment, shape_summary, MomentOrder, ShapeQuantity};

fn main() -> basn::Result<()> {
    let a = AlphaParam::new(1.0)?;
    for n in 1..=6 {
        println!("E[Z^{n}] at alpha = 1: {:.10}", raw_moment(MomentOrder::new(n)?, a));
    }

    println!("\n{:>6} {:>10} {:>10} {:>10} {:>10}", "alpha", "mean", "var", "beta1", "beta2");
    for al in [-3.0, -1.0, -0.5, 0.0, 0.5, 1.0, 1.63, 3.0, 10.0] {
        let s = shape_summary(AlphaParam::new(al)?);
        println!("{al:>6.2} {:>10.5} {:>10.5} {:>10.5} {:>10.5}", s.mean, s.variance, s.beta1, s.beta2);
    }

    println!();
    for q in [ShapeQuantity::Mean, ShapeQuantity::Variance, ShapeQuantity::Beta1, ShapeQuantity::Beta2] {
        let b = extremal_bounds(q);
        println!(
            "{q:?}: min {:.6} at {:.5}{}, max {:.6} at {:.5}{}",
            b.min,
            b.argmin,
            if b.min_attained { "" } else { " (limit)" },
            b.max,
            b.argmax,
            if b.max_attained { "" } else { " (limit)" }
        );
    }

    for t in [-1.0, 0.5, 2.0] {
        println!("M({t}) at alpha = 1: {:.10}", basn2_mgf(t, a)?);
    }
    Ok(())
}
