//! Nelder-Mead simplex minimizer.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadOptions {
    pub max_iter: usize,
    /// Stop once the simplex diameter (max distance to the best vertex)
    /// falls below this.
    pub x_tol: f64,
    /// ... and the spread of function values falls below this.
    pub f_tol: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        NelderMeadOptions {
            max_iter: 20_000,
            x_tol: 1e-9,
            f_tol: 1e-13,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub fx: f64,
    pub iterations: usize,
    pub converged: bool,
}

fn eval<F: Fn(&[f64]) -> f64>(f: &F, x: &[f64]) -> f64 {
    let v = f(x);
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

/// Minimizes `f` from `x0` with an axis-aligned initial simplex of edge
/// lengths `steps`. NaN objective values are treated as `+inf`.
pub fn nelder_mead<F: Fn(&[f64]) -> f64>(
    f: F,
    x0: &[f64],
    steps: &[f64],
    opts: NelderMeadOptions,
) -> NelderMeadResult {
    let dim = x0.len();
    assert_eq!(dim, steps.len(), "one step per coordinate");
    let (alpha, gamma, rho, shrink) = (1.0, 2.0, 0.5, 0.5);

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    simplex.push(x0.to_vec());
    for i in 0..dim {
        let mut v = x0.to_vec();
        v[i] += steps[i];
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| eval(&f, v)).collect();

    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iter {
        // order vertices best to worst
        let mut idx: Vec<usize> = (0..=dim).collect();
        idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = idx.iter().map(|&i| simplex[i].clone()).collect();
        values = idx.iter().map(|&i| values[i]).collect();

        let diameter = simplex[1..]
            .iter()
            .map(|v| v.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        let spread = values[dim] - values[0];
        if diameter < opts.x_tol && spread.abs() < opts.f_tol.max(f64::EPSILON * values[0].abs()) {
            converged = true;
            break;
        }
        iterations += 1;

        let centroid: Vec<f64> = (0..dim)
            .map(|j| simplex[..dim].iter().map(|v| v[j]).sum::<f64>() / dim as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[dim])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let xr = along(alpha);
        let fr = eval(&f, &xr);
        if fr < values[0] {
            let xe = along(gamma);
            let fe = eval(&f, &xe);
            if fe < fr {
                simplex[dim] = xe;
                values[dim] = fe;
            } else {
                simplex[dim] = xr;
                values[dim] = fr;
            }
            continue;
        }
        if fr < values[dim - 1] {
            simplex[dim] = xr;
            values[dim] = fr;
            continue;
        }
        let (xc, fc) = if fr < values[dim] {
            let xc = along(rho * alpha);
            let fc = eval(&f, &xc);
            (xc, fc)
        } else {
            let xc = along(-rho);
            let fc = eval(&f, &xc);
            (xc, fc)
        };
        if fc < values[dim].min(fr) {
            simplex[dim] = xc;
            values[dim] = fc;
            continue;
        }
        for i in 1..=dim {
            let v: Vec<f64> = simplex[0]
                .iter()
                .zip(&simplex[i])
                .map(|(b, x)| b + shrink * (x - b))
                .collect();
            values[i] = eval(&f, &v);
            simplex[i] = v;
        }
    }

    let best = (0..=dim).min_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap();
    NelderMeadResult {
        x: simplex[best].clone(),
        fx: values[best],
        iterations,
        converged,
    }
}

/// Screens every start with a short run, then runs the `keep` most
/// promising to convergence and restarts each once from its end point.
pub(crate) fn minimize_from_starts<F: Fn(&[f64]) -> f64>(
    f: &F,
    starts: &[Vec<f64>],
    steps: &[f64],
    screen_iter: usize,
    keep: usize,
) -> Option<NelderMeadResult> {
    let screen = NelderMeadOptions {
        max_iter: screen_iter,
        ..Default::default()
    };
    let mut screened: Vec<NelderMeadResult> =
        starts.iter().map(|x0| nelder_mead(f, x0, steps, screen)).collect();
    screened.sort_by(|a, b| a.fx.total_cmp(&b.fx));
    screened
        .into_iter()
        .take(keep)
        .map(|s| {
            let first = nelder_mead(f, &s.x, steps, NelderMeadOptions::default());
            let second = nelder_mead(f, &first.x, steps, NelderMeadOptions::default());
            NelderMeadResult {
                iterations: s.iterations + first.iterations + second.iterations,
                ..if second.fx <= first.fx { second } else { first }
            }
        })
        .min_by(|a, b| a.fx.total_cmp(&b.fx))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rosenbrock() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let r = nelder_mead(f, &[-1.2, 1.0], &[0.5, 0.5], NelderMeadOptions::default());
        assert!(r.converged);
        assert!((r.x[0] - 1.0).abs() < 1e-7 && (r.x[1] - 1.0).abs() < 1e-7, "{:?}", r.x);
    }

    #[test]
    fn quadratic_3d() {
        let f = |x: &[f64]| (x[0] - 3.0).powi(2) + 2.0 * (x[1] + 1.0).powi(2) + 0.5 * x[2] * x[2];
        let r = nelder_mead(f, &[0.0, 0.0, 0.0], &[1.0, 1.0, 1.0], NelderMeadOptions::default());
        assert!(r.converged);
        for (got, want) in r.x.iter().zip([3.0, -1.0, 0.0]) {
            assert!((got - want).abs() < 1e-8);
        }
    }

    #[test]
    fn nan_is_rejected_region() {
        let f = |x: &[f64]| if x[0] < 0.0 { f64::NAN } else { (x[0] - 0.5).powi(2) };
        let r = nelder_mead(f, &[2.0], &[1.0], NelderMeadOptions::default());
        assert!((r.x[0] - 0.5).abs() < 1e-8);
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let opts = NelderMeadOptions {
            max_iter: 5,
            ..Default::default()
        };
        let r = nelder_mead(f, &[-1.2, 1.0], &[0.5, 0.5], opts);
        assert!(!r.converged);
        assert_eq!(r.iterations, 5);
    }
}
