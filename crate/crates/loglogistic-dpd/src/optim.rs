//! Internal optimization machinery: Nelder–Mead simplex search followed by
//! a damped Newton polish on an analytic gradient. Works in 1 or 2
//! dimensions, which is all the fitting layer needs.

pub(crate) struct SimplexOutcome {
    pub x: Vec<f64>,
    /// Best objective value seen; diagnostic only.
    #[allow(dead_code)]
    pub value: f64,
    pub iterations: usize,
}

/// Minimizes `f` by the Nelder–Mead simplex method.
///
/// `xtol` bounds the simplex diameter at termination, `max_iter` the number
/// of reflection steps. Non-finite objective values are treated as +∞ so
/// the simplex retreats from invalid regions.
#[allow(clippy::needless_range_loop)]
pub(crate) fn nelder_mead<F>(
    f: F,
    x0: &[f64],
    step: f64,
    xtol: f64,
    max_iter: usize,
) -> SimplexOutcome
where
    F: Fn(&[f64]) -> f64,
{
    let n = x0.len();
    let eval = |x: &[f64]| {
        let v = f(x);
        if v.is_finite() {
            v
        } else {
            f64::INFINITY
        }
    };

    let mut pts: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    pts.push((x0.to_vec(), eval(x0)));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += step;
        let v = eval(&x);
        pts.push((x, v));
    }

    let (refl, expan, contr, shrink) = (1.0, 2.0, 0.5, 0.5);
    let mut iterations = 0;
    while iterations < max_iter {
        iterations += 1;
        pts.sort_by(|a, b| a.1.total_cmp(&b.1));

        let diameter = pts[1..]
            .iter()
            .flat_map(|(x, _)| x.iter().zip(&pts[0].0).map(|(a, b)| (a - b).abs()))
            .fold(0.0f64, f64::max);
        let fspread = (pts[n].1 - pts[0].1).abs();
        if diameter < xtol && fspread <= 1e-12 * (1.0 + pts[0].1.abs()) {
            break;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|j| pts[..n].iter().map(|(x, _)| x[j]).sum::<f64>() / n as f64)
            .collect();
        let worst = pts[n].clone();
        let at = |coef: f64| -> Vec<f64> {
            (0..n)
                .map(|j| centroid[j] + coef * (centroid[j] - worst.0[j]))
                .collect()
        };

        let xr = at(refl);
        let fr = eval(&xr);
        if fr < pts[0].1 {
            let xe = at(expan);
            let fe = eval(&xe);
            pts[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < pts[n - 1].1 {
            pts[n] = (xr, fr);
        } else {
            let (xc, fc) = if fr < worst.1 {
                let xc = at(contr);
                let fc = eval(&xc);
                (xc, fc)
            } else {
                let xc: Vec<f64> = (0..n)
                    .map(|j| centroid[j] - contr * (centroid[j] - worst.0[j]))
                    .collect();
                let fc = eval(&xc);
                (xc, fc)
            };
            if fc < worst.1.min(fr) {
                pts[n] = (xc, fc);
            } else {
                let best = pts[0].0.clone();
                for p in pts.iter_mut().skip(1) {
                    for j in 0..n {
                        p.0[j] = best[j] + shrink * (p.0[j] - best[j]);
                    }
                    p.1 = eval(&p.0);
                }
            }
        }
    }

    pts.sort_by(|a, b| a.1.total_cmp(&b.1));
    SimplexOutcome {
        x: pts[0].0.clone(),
        value: pts[0].1,
        iterations,
    }
}

pub(crate) struct PolishOutcome {
    pub x: Vec<f64>,
    /// Objective and gradient at `x`; diagnostic only.
    #[allow(dead_code)]
    pub value: f64,
    #[allow(dead_code)]
    pub gradient: Vec<f64>,
    pub iterations: usize,
}

/// Damped Newton refinement of a stationary point of a maximization
/// problem. `value` evaluates the objective, `grad` its analytic gradient;
/// the Hessian is formed by central differences of the gradient. Steps are
/// halved until they neither reduce the objective nor increase the
/// gradient norm; the polish never returns a point worse than its input.
pub(crate) fn newton_polish<V, G>(
    value: V,
    grad: G,
    x0: &[f64],
    gtol: f64,
    max_iter: usize,
) -> PolishOutcome
where
    V: Fn(&[f64]) -> f64,
    G: Fn(&[f64]) -> Option<Vec<f64>>,
{
    let n = x0.len();
    let mut x = x0.to_vec();
    let mut fx = value(&x);
    let mut g = match grad(&x) {
        Some(g) => g,
        None => {
            return PolishOutcome {
                x,
                value: fx,
                gradient: vec![f64::INFINITY; n],
                iterations: 0,
            }
        }
    };

    let inf_norm = |v: &[f64]| v.iter().fold(0.0f64, |m, &c| m.max(c.abs()));
    let mut iterations = 0;
    while iterations < max_iter && inf_norm(&g) > gtol {
        iterations += 1;
        let hess = match fd_jacobian(&grad, &x, n) {
            Some(h) => h,
            None => break,
        };
        let mut delta = match solve(&hess, &g, n) {
            // Newton step for the root of the gradient.
            Some(s) => s.iter().map(|v| -v).collect::<Vec<f64>>(),
            None => break,
        };
        // Cap wild steps; the optimization runs in log-coordinates where a
        // unit move already scales a parameter by e.
        let dn = inf_norm(&delta);
        if dn > 1.0 {
            for d in &mut delta {
                *d /= dn;
            }
        }

        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..12 {
            let trial: Vec<f64> = x.iter().zip(&delta).map(|(xi, di)| xi + lambda * di).collect();
            let ft = value(&trial);
            if ft.is_finite() {
                if let Some(gt) = grad(&trial) {
                    let better_obj = ft >= fx - 1e-13 * (1.0 + fx.abs());
                    let better_grad = inf_norm(&gt) < inf_norm(&g);
                    if better_obj && (better_grad || ft > fx) {
                        x = trial;
                        fx = ft;
                        g = gt;
                        accepted = true;
                        break;
                    }
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            break;
        }
    }

    PolishOutcome {
        x,
        value: fx,
        gradient: g,
        iterations,
    }
}

#[allow(clippy::needless_range_loop)]
fn fd_jacobian<G>(grad: &G, x: &[f64], n: usize) -> Option<Vec<Vec<f64>>>
where
    G: Fn(&[f64]) -> Option<Vec<f64>>,
{
    let h = 1e-5;
    let mut jac = vec![vec![0.0; n]; n];
    for j in 0..n {
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[j] += h;
        xm[j] -= h;
        let gp = grad(&xp)?;
        let gm = grad(&xm)?;
        for i in 0..n {
            jac[i][j] = (gp[i] - gm[i]) / (2.0 * h);
        }
    }
    // Symmetrize: the Hessian of a smooth objective is symmetric and the
    // differencing noise is not.
    for i in 0..n {
        for j in (i + 1)..n {
            let m = 0.5 * (jac[i][j] + jac[j][i]);
            jac[i][j] = m;
            jac[j][i] = m;
        }
    }
    Some(jac)
}

fn solve(a: &[Vec<f64>], b: &[f64], n: usize) -> Option<Vec<f64>> {
    match n {
        1 => {
            if a[0][0] == 0.0 || !a[0][0].is_finite() {
                return None;
            }
            Some(vec![b[0] / a[0][0]])
        }
        2 => {
            let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
            let scale = a.iter().flatten().fold(0.0f64, |m, &v| m.max(v.abs()));
            if !det.is_finite() || det.abs() <= 1e-14 * scale * scale {
                return None;
            }
            Some(vec![
                (b[0] * a[1][1] - b[1] * a[0][1]) / det,
                (b[1] * a[0][0] - b[0] * a[1][0]) / det,
            ])
        }
        _ => None,
    }
}
