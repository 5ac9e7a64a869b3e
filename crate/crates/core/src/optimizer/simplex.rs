//! Nelder–Mead downhill simplex for small fixed dimensions.

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

#[derive(Clone, Copy, Debug)]
pub struct SimplexOutcome<const D: usize> {
    pub x: [f64; D],
    pub f: f64,
    pub iterations: usize,
    pub evaluations: usize,
    /// False when `max_iterations` ran out before the spread fell below tolerance.
    pub converged: bool,
}

/// Minimizes `f` starting from the simplex `x0, x0 + step_i e_i`. Stops once
/// the spread of objective values across the simplex is below `tol`.
pub fn nelder_mead<const D: usize, F>(
    mut f: F,
    x0: [f64; D],
    step: [f64; D],
    tol: f64,
    max_iterations: usize,
) -> SimplexOutcome<D>
where
    F: FnMut(&[f64; D]) -> f64,
{
    let mut evaluations = 0;
    let mut eval = |x: &[f64; D]| {
        evaluations += 1;
        f(x)
    };

    let mut pts: Vec<[f64; D]> = Vec::with_capacity(D + 1);
    pts.push(x0);
    for i in 0..D {
        let mut p = x0;
        p[i] += step[i];
        pts.push(p);
    }
    let mut vals: Vec<f64> = pts.iter().map(&mut eval).collect();

    let mut iterations = 0;
    let mut converged = false;
    loop {
        sort_simplex(&mut pts, &mut vals);
        if vals[D] - vals[0] < tol {
            converged = true;
            break;
        }
        if iterations >= max_iterations {
            break;
        }
        iterations += 1;

        let centroid: [f64; D] = std::array::from_fn(|k| {
            pts[..D].iter().map(|p| p[k]).sum::<f64>() / D as f64
        });
        let along = |t: f64| -> [f64; D] {
            std::array::from_fn(|k| centroid[k] + t * (pts[D][k] - centroid[k]))
        };

        let xr = along(-REFLECT);
        let fr = eval(&xr);
        if fr < vals[0] {
            let xe = along(-EXPAND);
            let fe = eval(&xe);
            if fe < fr {
                pts[D] = xe;
                vals[D] = fe;
            } else {
                pts[D] = xr;
                vals[D] = fr;
            }
            continue;
        }
        if fr < vals[D - 1] {
            pts[D] = xr;
            vals[D] = fr;
            continue;
        }
        let (xc, fc) = if fr < vals[D] {
            let xc = along(-CONTRACT);
            (xc, eval(&xc))
        } else {
            let xc = along(CONTRACT);
            (xc, eval(&xc))
        };
        if fc < vals[D].min(fr) {
            pts[D] = xc;
            vals[D] = fc;
            continue;
        }
        let best = pts[0];
        for i in 1..=D {
            pts[i] = std::array::from_fn(|k| best[k] + SHRINK * (pts[i][k] - best[k]));
            vals[i] = eval(&pts[i]);
        }
    }

    SimplexOutcome {
        x: pts[0],
        f: vals[0],
        iterations,
        evaluations,
        converged,
    }
}

fn sort_simplex<const D: usize>(pts: &mut [[f64; D]], vals: &mut [f64]) {
    let mut order: Vec<usize> = (0..vals.len()).collect();
    order.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]).then(i.cmp(&j)));
    let p: Vec<[f64; D]> = order.iter().map(|&i| pts[i]).collect();
    let v: Vec<f64> = order.iter().map(|&i| vals[i]).collect();
    pts.copy_from_slice(&p);
    vals.copy_from_slice(&v);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl() {
        let out = nelder_mead(
            |x: &[f64; 2]| (x[0] - 1.0).powi(2) + 3.0 * (x[1] + 0.5).powi(2),
            [0.0, 0.0],
            [0.5, 0.5],
            1e-14,
            2000,
        );
        assert!(out.converged);
        assert!((out.x[0] - 1.0).abs() < 1e-5);
        assert!((out.x[1] + 0.5).abs() < 1e-5);
    }

    #[test]
    fn rosenbrock() {
        let out = nelder_mead(
            |x: &[f64; 2]| 100.0 * (x[1] - x[0] * x[0]).powi(2) + (1.0 - x[0]).powi(2),
            [-1.2, 1.0],
            [0.1, 0.1],
            1e-16,
            5000,
        );
        assert!(out.f < 1e-10, "f = {}", out.f);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let out = nelder_mead(
            |x: &[f64; 4]| x.iter().map(|v| v * v).sum(),
            [1.0; 4],
            [0.1; 4],
            1e-30,
            5,
        );
        assert!(!out.converged);
        assert_eq!(out.iterations, 5);
    }

    #[test]
    fn kink_minimum() {
        let out = nelder_mead(
            |x: &[f64; 4]| x.iter().map(|v| (v - 0.3).abs()).sum(),
            [0.0; 4],
            [0.2; 4],
            1e-12,
            4000,
        );
        assert!(out.f < 1e-6, "f = {}", out.f);
    }
}
