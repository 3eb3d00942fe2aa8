//! Derivative-free simplex minimizer used by the discord optimizer.

use nalgebra::DVector;

pub(crate) struct NelderMead {
    pub max_iters: usize,
    pub tol: f64,
    pub initial_step: f64,
}

pub(crate) struct OptimOutcome {
    pub x: DVector<f64>,
    pub value: f64,
    pub converged: bool,
}

impl NelderMead {
    pub fn minimize<F>(&self, f: F, x0: &DVector<f64>) -> OptimOutcome
    where
        F: Fn(&DVector<f64>) -> f64,
    {
        let n = x0.len();
        let mut simplex: Vec<(DVector<f64>, f64)> = Vec::with_capacity(n + 1);
        simplex.push((x0.clone(), f(x0)));
        for i in 0..n {
            let mut x = x0.clone();
            x[i] += self.initial_step;
            let fx = f(&x);
            simplex.push((x, fx));
        }

        let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);
        let mut converged = false;
        for _ in 0..self.max_iters {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            if (simplex[n].1 - simplex[0].1).abs() <= self.tol {
                converged = true;
                break;
            }
            let mut centroid = DVector::zeros(n);
            for (x, _) in &simplex[..n] {
                centroid += x;
            }
            centroid /= n as f64;

            let reflected = &centroid + (&centroid - &simplex[n].0) * alpha;
            let f_r = f(&reflected);
            if f_r < simplex[0].1 {
                let expanded = &centroid + (&reflected - &centroid) * gamma;
                let f_e = f(&expanded);
                simplex[n] = if f_e < f_r {
                    (expanded, f_e)
                } else {
                    (reflected, f_r)
                };
            } else if f_r < simplex[n - 1].1 {
                simplex[n] = (reflected, f_r);
            } else {
                let contracted = if f_r < simplex[n].1 {
                    &centroid + (&reflected - &centroid) * rho
                } else {
                    &centroid + (&simplex[n].0 - &centroid) * rho
                };
                let f_c = f(&contracted);
                if f_c < simplex[n].1.min(f_r) {
                    simplex[n] = (contracted, f_c);
                } else {
                    let best = simplex[0].0.clone();
                    for entry in simplex.iter_mut().skip(1) {
                        let shrunk = &best + (&entry.0 - &best) * sigma;
                        entry.1 = f(&shrunk);
                        entry.0 = shrunk;
                    }
                }
            }
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        OptimOutcome {
            x: simplex[0].0.clone(),
            value: simplex[0].1,
            converged,
        }
    }
}
