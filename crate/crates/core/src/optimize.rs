//! Derivative-free minimisers used by the radius computations: Nelder–Mead
//! with restarts, and golden-section search for 1-D maximisation.

use crate::error::Result;

#[derive(Clone, Copy, Debug)]
pub struct NelderMeadOptions {
    /// Initial simplex edge length.
    pub step: f64,
    /// Stop when the simplex diameter falls below this.
    pub x_tol: f64,
    /// ... and the spread of objective values falls below this.
    pub f_tol: f64,
    pub max_evals: usize,
    /// Fresh-simplex restarts from the incumbent.
    pub max_restarts: usize,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            step: 0.25,
            x_tol: 1e-9,
            f_tol: 1e-13,
            max_evals: 4000,
            max_restarts: 8,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
    /// Final simplex diameter of the last run.
    pub diameter: f64,
    pub converged: bool,
}

fn diameter(simplex: &[Vec<f64>]) -> f64 {
    let mut d: f64 = 0.0;
    for a in simplex {
        for b in simplex {
            let s: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
            d = d.max(s.sqrt());
        }
    }
    d
}

/// One Nelder–Mead run with standard coefficients (1, 2, 1/2, 1/2).
pub fn nelder_mead<F>(mut f: F, x0: &[f64], opts: &NelderMeadOptions) -> Result<Minimum>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    let n = x0.len();
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += opts.step;
        simplex.push(v);
    }
    let mut values = Vec::with_capacity(n + 1);
    for v in &simplex {
        values.push(f(v)?);
    }
    let mut evals = n + 1;

    let point = |c: &[f64], w: &[f64], t: f64| -> Vec<f64> {
        c.iter().zip(w).map(|(ci, wi)| ci + t * (wi - ci)).collect()
    };

    loop {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let diam = diameter(&simplex);
        let spread = values[n] - values[0];
        if diam < opts.x_tol && spread <= opts.f_tol * (1.0 + values[0].abs()) {
            return Ok(Minimum {
                x: simplex[0].clone(),
                value: values[0],
                evals,
                diameter: diam,
                converged: true,
            });
        }
        if evals >= opts.max_evals || diam < 1e-15 {
            return Ok(Minimum {
                x: simplex[0].clone(),
                value: values[0],
                evals,
                diameter: diam,
                converged: diam < opts.x_tol,
            });
        }

        let mut centroid = vec![0.0; n];
        for v in &simplex[..n] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / n as f64;
            }
        }

        let reflected = point(&centroid, &simplex[n], -1.0);
        let fr = f(&reflected)?;
        evals += 1;
        if fr < values[0] {
            let expanded = point(&centroid, &simplex[n], -2.0);
            let fe = f(&expanded)?;
            evals += 1;
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
            let c = point(&centroid, &simplex[n], -0.5);
            let fc = f(&c)?;
            (c, fc)
        } else {
            let c = point(&centroid, &simplex[n], 0.5);
            let fc = f(&c)?;
            (c, fc)
        };
        evals += 1;
        if fc < values[n].min(fr) {
            simplex[n] = contracted;
            values[n] = fc;
            continue;
        }
        let best = simplex[0].clone();
        for i in 1..=n {
            simplex[i] = point(&best, &simplex[i], 0.5);
            values[i] = f(&simplex[i])?;
            evals += 1;
        }
    }
}

/// Repeats Nelder–Mead from the incumbent with a fresh simplex until a
/// restart no longer improves the value. Restarting guards against the
/// simplex collapsing at a kink of a non-smooth objective.
pub fn minimize<F>(mut f: F, x0: &[f64], opts: &NelderMeadOptions) -> Result<Minimum>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    let mut best = nelder_mead(&mut f, x0, opts)?;
    let mut step = opts.step;
    for _ in 0..opts.max_restarts {
        step = (step * 0.1).max(100.0 * opts.x_tol);
        let run_opts = NelderMeadOptions { step, ..*opts };
        let next = nelder_mead(&mut f, &best.x, &run_opts)?;
        let improved = best.value - next.value;
        let evals = best.evals + next.evals;
        if next.value <= best.value {
            best = Minimum { evals, ..next };
        } else {
            best.evals = evals;
        }
        if improved <= opts.f_tol * (1.0 + best.value.abs()) {
            break;
        }
    }
    Ok(best)
}

/// Maximises a unimodal `f` on `[a, b]` by golden-section search.
pub fn golden_max<F>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while (b - a).abs() > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc > fd { (c, fc) } else { (d, fd) })
}
