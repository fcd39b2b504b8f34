//! Derivative-free minimizers with hard bounds.

/// Result of a bounded scalar minimization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarMin {
    pub x: f64,
    pub fx: f64,
    pub evaluations: usize,
    /// The minimizer sits on (within 1e-6 of) one of the bounds.
    pub at_bound: bool,
}

/// Brent's bounded minimizer: golden-section steps with parabolic
/// interpolation, absolute tolerance `xtol` on the argument.
///
/// Non-finite objective values are treated as `+inf`.
pub fn brent_min<F>(mut f: F, lo: f64, hi: f64, xtol: f64) -> ScalarMin
where
    F: FnMut(f64) -> f64,
{
    assert!(lo < hi, "empty bracket [{lo}, {hi}]");
    let mut eval = |x: f64| {
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let sqrt_eps = f64::EPSILON.sqrt();
    let golden = 0.5 * (3.0 - 5f64.sqrt());
    let (mut a, mut b) = (lo, hi);

    let mut fulc = a + golden * (b - a);
    let mut nfc = fulc;
    let mut xf = fulc;
    let mut rat: f64 = 0.0;
    let mut e: f64 = 0.0;
    let mut fx = eval(xf);
    let mut evaluations = 1;
    let mut ffulc = fx;
    let mut fnfc = fx;
    let mut xm = 0.5 * (a + b);
    let mut tol1 = sqrt_eps * xf.abs() + xtol / 3.0;
    let mut tol2 = 2.0 * tol1;

    while (xf - xm).abs() > tol2 - 0.5 * (b - a) && evaluations < 500 {
        let mut use_golden = true;
        if e.abs() > tol1 {
            use_golden = false;
            let mut r = (xf - nfc) * (fx - ffulc);
            let mut q = (xf - fulc) * (fx - fnfc);
            let mut p = (xf - fulc) * q - (xf - nfc) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            r = e;
            e = rat;
            if p.abs() < (0.5 * q * r).abs() && p > q * (a - xf) && p < q * (b - xf) {
                rat = p / q;
                let x = xf + rat;
                if (x - a) < tol2 || (b - x) < tol2 {
                    let si = if xm - xf >= 0.0 { 1.0 } else { -1.0 };
                    rat = tol1 * si;
                }
            } else {
                use_golden = true;
            }
        }
        if use_golden {
            e = if xf >= xm { a - xf } else { b - xf };
            rat = golden * e;
        }
        let si = if rat >= 0.0 { 1.0 } else { -1.0 };
        let x = xf + si * rat.abs().max(tol1);
        let fu = eval(x);
        evaluations += 1;

        if fu <= fx {
            if x >= xf {
                a = xf;
            } else {
                b = xf;
            }
            fulc = nfc;
            ffulc = fnfc;
            nfc = xf;
            fnfc = fx;
            xf = x;
            fx = fu;
        } else {
            if x < xf {
                a = x;
            } else {
                b = x;
            }
            if fu <= fnfc || nfc == xf {
                fulc = nfc;
                ffulc = fnfc;
                nfc = x;
                fnfc = fu;
            } else if fu <= ffulc || fulc == xf || fulc == nfc {
                fulc = x;
                ffulc = fu;
            }
        }
        xm = 0.5 * (a + b);
        tol1 = sqrt_eps * xf.abs() + xtol / 3.0;
        tol2 = 2.0 * tol1;
    }

    ScalarMin {
        x: xf,
        fx,
        evaluations,
        at_bound: (xf - lo).min(hi - xf) <= 1e-6,
    }
}

/// Result of a bounded simplex search.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexMin {
    pub x: Vec<f64>,
    pub fx: f64,
    pub evaluations: usize,
    /// Per-coordinate flag: the coordinate sits within 1e-4 of a bound.
    pub at_bound: Vec<bool>,
}

/// Nelder–Mead with every trial point projected into the box `[lo, hi]`.
pub fn nelder_mead_box<F>(
    mut f: F,
    start: &[f64],
    lo: &[f64],
    hi: &[f64],
    step: f64,
    xtol: f64,
    max_evals: usize,
) -> SimplexMin
where
    F: FnMut(&[f64]) -> f64,
{
    let n = start.len();
    assert!(lo.len() == n && hi.len() == n);
    let project = |x: &mut Vec<f64>| {
        for i in 0..n {
            x[i] = x[i].clamp(lo[i], hi[i]);
        }
    };
    let evaluations = std::cell::Cell::new(0usize);
    let mut eval = |x: &[f64]| {
        evaluations.set(evaluations.get() + 1);
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    let mut x0 = start.to_vec();
    project(&mut x0);
    simplex.push(x0.clone());
    for i in 0..n {
        let mut v = x0.clone();
        v[i] += step;
        if v[i] > hi[i] {
            v[i] = x0[i] - step;
        }
        project(&mut v);
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| eval(v)).collect();

    loop {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let size = simplex[1..]
            .iter()
            .flat_map(|v| v.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()))
            .fold(0.0f64, f64::max);
        let spread = (values[n] - values[0]).abs();
        if (size <= xtol && spread <= 1e-12 * (1.0 + values[0].abs())) || evaluations.get() >= max_evals {
            break;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|i| simplex[..n].iter().map(|v| v[i]).sum::<f64>() / n as f64)
            .collect();
        let toward = |coef: f64| {
            let mut p: Vec<f64> = (0..n)
                .map(|i| centroid[i] + coef * (simplex[n][i] - centroid[i]))
                .collect();
            project(&mut p);
            p
        };

        let reflected = toward(-1.0);
        let fr = eval(&reflected);
        if fr < values[0] {
            let expanded = toward(-2.0);
            let fe = eval(&expanded);
            if fe < fr {
                simplex[n] = expanded;
                values[n] = fe;
            } else {
                simplex[n] = reflected;
                values[n] = fr;
            }
            continue;
        }
        if fr < values[n - 1] {
            simplex[n] = reflected;
            values[n] = fr;
            continue;
        }
        let (contracted, fc) = if fr < values[n] {
            let c = toward(-0.5);
            let v = eval(&c);
            (c, v)
        } else {
            let c = toward(0.5);
            let v = eval(&c);
            (c, v)
        };
        if fc < values[n].min(fr) {
            simplex[n] = contracted;
            values[n] = fc;
            continue;
        }
        // shrink toward the best vertex
        for k in 1..=n {
            let mut v: Vec<f64> = (0..n)
                .map(|i| simplex[0][i] + 0.5 * (simplex[k][i] - simplex[0][i]))
                .collect();
            project(&mut v);
            values[k] = eval(&v);
            simplex[k] = v;
        }
    }

    let best = simplex[0].clone();
    let at_bound = (0..n)
        .map(|i| (best[i] - lo[i]).min(hi[i] - best[i]) <= 1e-4)
        .collect();
    SimplexMin {
        x: best,
        fx: values[0],
        evaluations: evaluations.get(),
        at_bound,
    }
}
