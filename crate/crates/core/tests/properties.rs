use basn::density::{AlphaParam, Basn2, LocScaleParams};
use basn::inference::{basn2_loglik, obs_hessian, obs_score};
use basn::sampling::{sample_basn2, SampleConfig};
use proptest::prelude::*;

fn alpha() -> impl Strategy<Value = f64> {
    -20.0f64..20.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reflection(a in alpha(), z in -8.0f64..8.0) {
        let d = Basn2::new(AlphaParam::new(a).unwrap());
        let m = Basn2::new(AlphaParam::new(-a).unwrap());
        prop_assert!((d.pdf(z) - m.pdf(-z)).abs() < 1e-15);
        prop_assert!((d.cdf(z) - m.sf(-z)).abs() < 1e-14);
    }

    #[test]
    fn cdf_is_monotone_and_bounded(a in alpha(), z in -10.0f64..10.0, dz in 1e-6f64..2.0) {
        let d = Basn2::new(AlphaParam::new(a).unwrap());
        let (f0, f1) = (d.cdf(z), d.cdf(z + dz));
        prop_assert!((0.0..=1.0).contains(&f0));
        prop_assert!(f1 >= f0);
        prop_assert!((d.cdf(z) + d.sf(z) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn quantile_inverts_cdf(a in -5.0f64..5.0, p in 0.001f64..0.999) {
        let d = Basn2::new(AlphaParam::new(a).unwrap());
        let q = d.quantile(p).unwrap();
        prop_assert!((d.cdf(q) - p).abs() < 1e-10);
    }

    #[test]
    fn score_matches_finite_differences(a in -4.0f64..4.0, mu in -3.0f64..3.0, s in 0.3f64..3.0, y in -6.0f64..6.0) {
        let p = LocScaleParams::new(a, mu, s).unwrap();
        let g = obs_score(y, &p);
        let h = 1e-6;
        for k in 0..3 {
            let mut up = p.as_array();
            let mut dn = p.as_array();
            up[k] += h;
            dn[k] -= h;
            let f = |x: [f64; 3]| basn2_loglik(&[y], &LocScaleParams::new(x[0], x[1], x[2]).unwrap());
            let fd = (f(up) - f(dn)) / (2.0 * h);
            prop_assert!((fd - g[k]).abs() <= 1e-5 * (1.0 + g[k].abs()), "k={} fd={} g={}", k, fd, g[k]);
        }
        let hm = obs_hessian(y, &p);
        for i in 0..3 {
            for j in 0..3 {
                prop_assert!((hm[i][j] - hm[j][i]).abs() <= 1e-9 * (1.0 + hm[i][j].abs()));
            }
        }
    }

    #[test]
    fn loglik_equivariance(a in -3.0f64..3.0, shift in -10.0f64..10.0, scale in 0.1f64..10.0) {
        let y = [-1.3, -0.2, 0.0, 0.4, 1.1, 2.7];
        let p = LocScaleParams::new(a, 0.5, 1.2).unwrap();
        let q = LocScaleParams::new(a, shift + scale * 0.5, scale * 1.2).unwrap();
        let t: Vec<f64> = y.iter().map(|v| shift + scale * v).collect();
        let lhs = basn2_loglik(&t, &q);
        let rhs = basn2_loglik(&y, &p) - y.len() as f64 * scale.ln();
        prop_assert!((lhs - rhs).abs() < 1e-9 * (1.0 + rhs.abs()));
    }

    #[test]
    fn sampling_is_deterministic_per_seed(a in alpha(), seed in any::<u64>()) {
        let al = AlphaParam::new(a).unwrap();
        let x = sample_basn2(al, SampleConfig::new(50, seed).unwrap());
        let y = sample_basn2(al, SampleConfig::new(50, seed).unwrap());
        prop_assert_eq!(x, y);
    }
}
