//! Acceptance-rejection sampling from BASN2 with the symmetric component
//! as proposal, plus a quick Kolmogorov-Smirnov comparison.
//!
//! cargo run --release --example sampling

use basn::density::{AlphaParam, Basn2, LocScaleParams};
use basn::sampling::{envelope_bound, sample_basn2_with_stats, sample_locscale, SampleConfig};

fn ks_statistic(mut xs: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

fn main() -> basn::Result<()> {
    let n = 100_000;
    for a in [0.0, 1.0, -2.0] {
        let alpha = AlphaParam::new(a)?;
        let env = envelope_bound(alpha);
        let (xs, stats) = sample_basn2_with_stats(alpha, SampleConfig::new(n, 42)?);
        let d = Basn2::new(alpha);
        let mean = xs.iter().sum::<f64>() / n as f64;
        println!(
            "alpha = {a:>4}: delta {:.6}, acceptance {:.4} (expected {:.4}), mean {:.4} (exact {:.4}), KS {:.5}",
            env.delta,
            stats.acceptance_rate(),
            env.acceptance_rate_expected,
            mean,
            d.mean(),
            ks_statistic(xs, |z| d.cdf(z))
        );
    }
    println!("1% KS critical value at n = {n}: {:.5}", 1.628 / (n as f64).sqrt());

    let p = LocScaleParams::new(1.0, 26.5, 2.7)?;
    let ys = sample_locscale(p, SampleConfig::new(5, 7)?)?;
    println!("\nfive BASN2(1, 26.5, 2.7) draws with seed 7: {ys:.4?}");
    Ok(())
}
