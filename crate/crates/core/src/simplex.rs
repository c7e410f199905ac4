//! Bounded derivative-free simplex minimizer.
//!
//! Standard Nelder-Mead moves (reflect, expand, contract, shrink) with every
//! candidate projected onto the box bounds before evaluation. Fully
//! deterministic for a given start, and hard-capped on the number of
//! objective evaluations so optimization budgets are exact.

use crate::scalar::{real, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexOptions<T> {
    /// Hard cap on objective evaluations.
    pub max_evals: usize,
    /// Initial per-coordinate displacement, relative to the box width.
    pub initial_step: T,
    /// Absolute per-coordinate displacements overriding `initial_step`;
    /// useful when the box is much wider than the basin of interest.
    pub initial_steps_abs: Option<Vec<T>>,
    /// Relative function-value spread below which the search stops early.
    pub ftol: T,
}

impl<T: Scalar> Default for SimplexOptions<T> {
    fn default() -> Self {
        Self { max_evals: 400, initial_step: real(0.08), initial_steps_abs: None, ftol: real(1e-14) }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexResult<T> {
    pub x: Vec<T>,
    pub value: T,
    pub evals: usize,
}

fn project<T: Scalar>(x: &mut [T], bounds: &[(T, T)]) {
    for (xi, &(lo, hi)) in x.iter_mut().zip(bounds) {
        *xi = (*xi).max(lo).min(hi);
    }
}

/// Minimizes `f` over the box `bounds` starting from `x0` (projected).
pub fn minimize<T: Scalar, F>(
    mut f: F,
    x0: &[T],
    bounds: &[(T, T)],
    opts: &SimplexOptions<T>,
) -> SimplexResult<T>
where
    F: FnMut(&[T]) -> T,
{
    let n = x0.len();
    assert_eq!(bounds.len(), n, "one bound pair per coordinate");
    assert!(opts.max_evals >= 1);
    let mut evals = 0usize;
    let mut budget_left = opts.max_evals;
    let mut eval = |x: &[T], budget_left: &mut usize, evals: &mut usize| -> T {
        *budget_left -= 1;
        *evals += 1;
        f(x)
    };

    let mut start = x0.to_vec();
    project(&mut start, bounds);
    let f0 = eval(&start, &mut budget_left, &mut evals);
    let mut simplex: Vec<(Vec<T>, T)> = vec![(start.clone(), f0)];
    for i in 0..n {
        if budget_left == 0 {
            break;
        }
        let mut v = start.clone();
        let step = match &opts.initial_steps_abs {
            Some(steps) => steps[i],
            None => (bounds[i].1 - bounds[i].0) * opts.initial_step,
        };
        v[i] = if v[i] + step <= bounds[i].1 { v[i] + step } else { v[i] - step };
        project(&mut v, bounds);
        let fv = eval(&v, &mut budget_left, &mut evals);
        simplex.push((v, fv));
    }

    let (alpha, gamma, rho, sigma) =
        (T::one(), real::<T>(2.0), real::<T>(0.5), real::<T>(0.5));
    while budget_left > 0 && simplex.len() == n + 1 {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("finite objective"));
        let spread = (simplex[n].1 - simplex[0].1).abs()
            / (simplex[0].1.abs() + real::<T>(1e-30));
        if spread < opts.ftol {
            break;
        }

        // Centroid of all but the worst vertex.
        let mut centroid = vec![T::zero(); n];
        for (v, _) in simplex.iter().take(n) {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += *x;
            }
        }
        let inv = real::<T>(1.0 / n as f64);
        for c in centroid.iter_mut() {
            *c *= inv;
        }

        let worst = simplex[n].clone();
        let blend = |a: &[T], b: &[T], t: T| -> Vec<T> {
            let mut out: Vec<T> =
                a.iter().zip(b).map(|(&ai, &bi)| ai + (ai - bi) * t).collect();
            project(&mut out, bounds);
            out
        };

        let reflected = blend(&centroid, &worst.0, alpha);
        let fr = eval(&reflected, &mut budget_left, &mut evals);
        if fr < simplex[0].1 {
            if budget_left == 0 {
                simplex[n] = (reflected, fr);
                break;
            }
            let expanded = blend(&centroid, &worst.0, gamma);
            let fe = eval(&expanded, &mut budget_left, &mut evals);
            simplex[n] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
            continue;
        }
        if budget_left == 0 {
            if fr < simplex[n].1 {
                simplex[n] = (reflected, fr);
            }
            break;
        }
        // Outside contraction when the reflection at least beat the worst
        // vertex, inside contraction otherwise.
        let (contracted, against) = if fr < simplex[n].1 {
            (blend(&centroid, &worst.0, rho * alpha), fr)
        } else {
            (blend(&centroid, &worst.0, -rho), simplex[n].1)
        };
        let fc = eval(&contracted, &mut budget_left, &mut evals);
        if fc <= against {
            simplex[n] = (contracted, fc);
            continue;
        }
        if fr < simplex[n].1 {
            simplex[n] = (reflected.clone(), fr);
        }
        // Shrink toward the best vertex.
        let best = simplex[0].0.clone();
        for k in 1..=n {
            if budget_left == 0 {
                break;
            }
            let mut v: Vec<T> = simplex[k]
                .0
                .iter()
                .zip(&best)
                .map(|(&xi, &bi)| bi + (xi - bi) * sigma)
                .collect();
            project(&mut v, bounds);
            let fv = eval(&v, &mut budget_left, &mut evals);
            simplex[k] = (v, fv);
        }
    }

    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("finite objective"));
    let best = simplex.into_iter().next().expect("non-empty simplex");
    SimplexResult { x: best.0, value: best.1, evals }
}
