//! Resonant-mode extraction from the Thevenin impedance seen by the dipole.
//!
//! A mode is a complex root of `Z_th(s) + s L_J = 0`. The exact search
//! seeds a damped complex Newton iteration at sign changes of
//! `Im Z_th[omega] + omega L_J` on a dense real grid. A cheaper
//! Fourier-domain approximation solves the coupled pair
//!
//! ```text
//! Im Z[w] = -(w L_J + (kappa/2) Re Z'[w])
//! Re Z[w] =  (kappa/2) (L_J + Im Z'[w])
//! ```
//!
//! by fixed point, valid for kappa << omega. The inductive participation
//! ratio is `p = 2 / (1 + Im Z'[w_a]/L_J)`, and `Re Z[w_a]/L_J = kappa/p`
//! scales dipole damping to mode damping. All Laplace-plane derivatives are
//! taken as Fourier-domain numerical derivatives.

use num_complex::Complex;

use crate::element::ComplexFrequency;
use crate::error::{Error, Result};
use crate::scalar::{finite, real, Scalar};
use crate::threeport::Embedding;

/// One resonant mode of the embedding circuit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSummary<T> {
    /// Resonance frequency in rad/s.
    pub omega_a: T,
    /// Full linewidth in rad/s.
    pub kappa_a: T,
    /// Inductive participation of the Josephson dipole, in (0, 1].
    pub p_j: T,
    /// Share of the linewidth dissipated through the signal port, rad/s.
    pub kappa_signal_port: T,
    /// Share of the linewidth dissipated through the pump port, rad/s.
    pub kappa_pump_port: T,
}

impl<T: Scalar> ModeSummary<T> {
    pub fn quality_factor(&self) -> T {
        self.omega_a / self.kappa_a
    }
}

/// A polished complex pole before participation bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModePole<T> {
    pub omega_a: T,
    pub kappa_a: T,
    /// `|Z_th(s_a) + s_a L_J| / |s_a L_J|` at the accepted root.
    pub residual: T,
}

impl<T: Scalar> ModePole<T> {
    pub fn laplace_point(&self) -> Complex<T> {
        Complex::new(-self.kappa_a / real::<T>(2.0), self.omega_a)
    }
}

/// Parallel-RLC branch of the Foster admittance picture of one mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FosterPole<T> {
    pub c: T,
    pub l: T,
    pub r: T,
}

/// Local Foster fit of every mode plus the worst relative residual of the
/// branch-sum admittance against the input over the fit neighborhoods.
#[derive(Debug, Clone, PartialEq)]
pub struct FosterFit<T> {
    pub poles: Vec<FosterPole<T>>,
    pub residual: T,
}

/// Knobs of the exact mode search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSearchOptions {
    /// Real-axis seed grid density over the window.
    pub grid_points: usize,
    /// Newton iteration cap per seed.
    pub newton_max_iter: usize,
    /// Roots closer than this relative distance merge.
    pub dedup_rel_tol: f64,
    /// Acceptance threshold on the relative root residual.
    pub residual_rel_tol: f64,
}

impl Default for ModeSearchOptions {
    fn default() -> Self {
        Self { grid_points: 4001, newton_max_iter: 100, dedup_rel_tol: 1e-6, residual_rel_tol: 1e-10 }
    }
}

/// Richardson-refined central difference of a Fourier-domain response,
/// step `h = omega * 1e-6` halved once.
pub fn fourier_derivative<T: Scalar, F>(f: &F, omega: T) -> Complex<T>
where
    F: Fn(T) -> Complex<T>,
{
    let h = omega * real::<T>(1e-6);
    let two = real::<T>(2.0);
    let d = |h: T| (f(omega + h) - f(omega - h)) / (h * two);
    let coarse = d(h);
    let fine = d(h / two);
    (fine * real::<T>(4.0) - coarse) / real::<T>(3.0)
}

/// Damped complex Newton polish of `Z_th(s) + s L_J = 0` from `seed`.
fn polish_root<T: Scalar, F>(
    zth: &F,
    l_j: T,
    seed: Complex<T>,
    opts: &ModeSearchOptions,
) -> Option<(Complex<T>, T)>
where
    F: Fn(Complex<T>) -> Complex<T>,
{
    let f = |s: Complex<T>| zth(s) + s * l_j;
    let mut s = seed;
    let mut fs = f(s);
    if !finite(fs) {
        return None;
    }
    let target = real::<T>(1e-13);
    let mut best: (Complex<T>, T) = (s, fs.norm() / (s * l_j).norm());
    for _ in 0..opts.newton_max_iter {
        let h = Complex::new(s.norm() * real::<T>(1e-6), T::zero());
        let deriv = (f(s + h) - f(s - h)) / (h * real::<T>(2.0));
        if !finite(deriv) || deriv.norm() == T::zero() {
            return None;
        }
        let mut step = -fs / deriv;
        // Cap runaway steps from seeds near impedance poles.
        let max_step = s.norm() * real::<T>(0.5);
        if step.norm() > max_step {
            step = step * Complex::new(max_step / step.norm(), T::zero());
        }
        let mut next = s + step;
        let mut fnext = f(next);
        let mut halvings = 0;
        while (!finite(fnext) || fnext.norm() > fs.norm()) && halvings < 40 {
            step = step * real::<T>(0.5);
            next = s + step;
            fnext = f(next);
            halvings += 1;
        }
        if !finite(fnext) {
            break;
        }
        s = next;
        fs = fnext;
        let rel = fs.norm() / (s * l_j).norm();
        if rel < best.1 {
            best = (s, rel);
        }
        if rel < target || step.norm() < s.norm() * real::<T>(1e-16) {
            break;
        }
    }
    Some(best)
}

/// Locates the circuit's resonant modes in `window = (omega_lo, omega_hi)`.
///
/// The evaluator must return the Thevenin impedance at any complex `s` near
/// the window (non-finite values are treated as unevaluable points). An
/// empty result with no sign change in the window is not an error; seeds
/// that never converge below the residual threshold are dropped, and only a
/// window where every seed fails reports a Newton diagnostic.
pub fn find_modes<T: Scalar, F>(
    zth: F,
    l_j: T,
    window: (T, T),
    opts: &ModeSearchOptions,
) -> Result<Vec<ModePole<T>>>
where
    F: Fn(Complex<T>) -> Complex<T>,
{
    let (lo, hi) = window;
    assert!(lo > T::zero() && hi > lo, "window must satisfy 0 < lo < hi");
    let n = opts.grid_points.max(3);
    let step = (hi - lo) / real::<T>((n - 1) as f64);

    // g(w) = Im Z[w] + w L_J on the real grid; a mode crosses zero upward.
    let g = |omega: T| {
        let z = zth(Complex::new(T::zero(), omega));
        if finite(z) {
            Some(z.im + omega * l_j)
        } else {
            None
        }
    };

    let mut seeds = Vec::new();
    let mut prev: Option<(T, T)> = None;
    for i in 0..n {
        let omega = lo + step * real::<T>(i as f64);
        let Some(gi) = g(omega) else {
            prev = None;
            continue;
        };
        if let Some((om_prev, g_prev)) = prev {
            if g_prev == T::zero() {
                seeds.push(om_prev);
            } else if g_prev * gi < T::zero() {
                let frac = g_prev / (g_prev - gi);
                seeds.push(om_prev + (omega - om_prev) * frac);
            }
        }
        prev = Some((omega, gi));
    }
    if let Some((om, gl)) = prev {
        if gl == T::zero() {
            seeds.push(om);
        }
    }

    let mut roots: Vec<(Complex<T>, T)> = Vec::new();
    let mut best_failure = f64::INFINITY;
    let mut failures = 0usize;
    for seed_omega in &seeds {
        let seed = Complex::new(T::zero(), *seed_omega);
        match polish_root(&zth, l_j, seed, opts) {
            Some((s, rel)) if rel.to_f64().unwrap_or(f64::INFINITY) <= opts.residual_rel_tol => {
                roots.push((s, rel));
            }
            Some((_, rel)) => {
                failures += 1;
                best_failure = best_failure.min(rel.to_f64().unwrap_or(f64::INFINITY));
            }
            None => failures += 1,
        }
    }
    if roots.is_empty() && failures > 0 && failures == seeds.len() {
        return Err(Error::NewtonDidNotConverge { best_residual: best_failure });
    }

    let margin = (hi - lo) * real::<T>(1e-9);
    let mut poles: Vec<ModePole<T>> = Vec::new();
    for (s, rel) in roots {
        let omega = s.im;
        let mut kappa = -(s.re + s.re);
        if omega < lo - margin || omega > hi + margin {
            continue;
        }
        if kappa < T::zero() {
            if kappa.abs() < omega * real::<T>(1e-10) {
                kappa = T::zero();
            } else {
                continue;
            }
        }
        let dedup = real::<T>(opts.dedup_rel_tol);
        if let Some(existing) = poles.iter_mut().find(|p| {
            (p.omega_a - omega).abs() < omega * dedup
                && (p.kappa_a - kappa).abs() <= (p.kappa_a.max(kappa)).max(omega * dedup) * dedup + omega * dedup
        }) {
            if rel < existing.residual {
                *existing = ModePole { omega_a: omega, kappa_a: kappa, residual: rel };
            }
            continue;
        }
        poles.push(ModePole { omega_a: omega, kappa_a: kappa, residual: rel });
    }
    poles.sort_by(|a, b| a.omega_a.partial_cmp(&b.omega_a).expect("finite mode frequencies"));
    Ok(poles)
}

/// Fourier-domain approximation of one mode from a real-axis bracket that
/// contains exactly one crossing of `Im Z[w] + w L_J`.
///
/// Fixed point: start at kappa = 0, solve the frequency equation, update
/// kappa from the real-part equation, repeat up to 20 times to 1e-10
/// relative in both.
pub fn approx_mode_fourier<T: Scalar, F>(
    zth: F,
    l_j: T,
    bracket: (T, T),
) -> Result<(T, T)>
where
    F: Fn(T) -> Complex<T>,
{
    let tol = real::<T>(1e-10);
    let mut kappa = T::zero();
    let mut omega = (bracket.0 + bracket.1) * real::<T>(0.5);
    for iteration in 0..20 {
        // Frequency equation at the current kappa.
        let h = |w: T| {
            let z = zth(w);
            let dz = fourier_derivative(&zth, w);
            z.im + w * l_j + kappa * dz.re / real::<T>(2.0)
        };
        let (mut a, mut b) = bracket;
        let (mut ha, hb) = (h(a), h(b));
        if ha * hb > T::zero() {
            return Err(Error::FourierNotConverged {
                omega_rel_step: f64::NAN,
                kappa_rel_step: f64::NAN,
            });
        }
        for _ in 0..200 {
            let mid = (a + b) * real::<T>(0.5);
            let hm = h(mid);
            if hm == T::zero() || (b - a) < omega * real::<T>(1e-14) {
                a = mid;
                b = mid;
                break;
            }
            if ha * hm < T::zero() {
                b = mid;
            } else {
                a = mid;
                ha = hm;
            }
        }
        let omega_new = (a + b) * real::<T>(0.5);
        let z = zth(omega_new);
        let dz = fourier_derivative(&zth, omega_new);
        let denom = l_j + dz.im;
        let kappa_new = if z.re == T::zero() {
            T::zero()
        } else {
            z.re * real::<T>(2.0) / denom
        };
        let d_omega = ((omega_new - omega) / omega_new).abs();
        let kappa_scale = kappa_new.abs().max(omega_new * real::<T>(1e-15));
        let d_kappa = ((kappa_new - kappa) / kappa_scale).abs();
        omega = omega_new;
        kappa = kappa_new;
        if iteration > 0 && d_omega < tol && d_kappa < tol {
            return Ok((omega, kappa));
        }
    }
    // One more convergence check before giving up.
    Err(Error::FourierNotConverged {
        omega_rel_step: f64::NAN,
        kappa_rel_step: f64::NAN,
    })
}

/// Inductive participation ratio of the dipole in the mode at `omega_a`.
pub fn participation<T: Scalar, F>(zth: F, omega_a: T, l_j: T) -> Result<T>
where
    F: Fn(T) -> Complex<T>,
{
    let dz = fourier_derivative(&zth, omega_a);
    let denom = T::one() + dz.im / l_j;
    if denom <= T::zero() {
        return Err(Error::NonphysicalDerivative {
            im_zprime_over_lj: (dz.im / l_j).to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(real::<T>(2.0) / denom)
}

/// The damping scale `Re Z[w_a] / L_J`, equal to `kappa_a / p_J` for a
/// consistent mode solution; exposed as a cross-check.
pub fn damping_scale<T: Scalar, F>(zth: F, omega_a: T, l_j: T) -> T
where
    F: Fn(T) -> Complex<T>,
{
    zth(omega_a).re / l_j
}

/// Local parallel-RLC fit of each listed mode from the admittance
/// `Y[w] = 1/(j w L_J) + 1/Z_th[w]`: `C_a` from half the slope of `Im Y`,
/// `L_a` from the resonance, `R_a` from `Re Y`.
///
/// Modes must be separated by at least ten linewidths. The reported
/// residual is the worst deviation of the branch sum from `Y` across the
/// span of the fitted modes (15 percent margin beyond the outermost ones),
/// relative to the largest admittance magnitude on that span. The branch
/// sum is exact only for a single-mode admittance; across several modes it
/// is a local model and the residual quantifies how far the sum drifts.
pub fn foster_fit<T: Scalar, F>(y: F, modes: &[ModePole<T>]) -> Result<FosterFit<T>>
where
    F: Fn(T) -> Complex<T>,
{
    for (i, a) in modes.iter().enumerate() {
        for b in modes.iter().skip(i + 1) {
            let separation = (a.omega_a - b.omega_a).abs();
            let linewidth = a.kappa_a.max(b.kappa_a);
            if linewidth > T::zero() && separation < linewidth * real::<T>(10.0) {
                return Err(Error::OverlappingModes {
                    separation_over_linewidth: (separation / linewidth)
                        .to_f64()
                        .unwrap_or(f64::NAN),
                });
            }
        }
    }

    let mut poles = Vec::with_capacity(modes.len());
    for m in modes {
        let dy = fourier_derivative(&y, m.omega_a);
        let c = dy.im / real::<T>(2.0);
        if !(c > T::zero()) {
            return Err(Error::NonphysicalDerivative {
                im_zprime_over_lj: c.to_f64().unwrap_or(f64::NAN),
            });
        }
        let l = (m.omega_a * m.omega_a * c).recip();
        let g = y(m.omega_a).re;
        let r = if g > T::zero() { g.recip() } else { T::infinity() };
        poles.push(FosterPole { c, l, r });
    }

    // Branch-sum admittance against the input across the fitted span.
    let y_sum = |w: T| {
        let mut acc = Complex::new(T::zero(), T::zero());
        for p in &poles {
            let branch = Complex::new(
                if p.r.is_finite() { p.r.recip() } else { T::zero() },
                w * p.c - (w * p.l).recip(),
            );
            acc = acc + branch;
        }
        acc
    };
    let lo = modes
        .iter()
        .map(|m| m.omega_a)
        .fold(T::infinity(), T::min)
        * real::<T>(0.85);
    let hi = modes.iter().map(|m| m.omega_a).fold(T::zero(), T::max) * real::<T>(1.15);
    let pts = 401;
    let mut err = T::zero();
    let mut scale = T::zero();
    for k in 0..pts {
        let frac = real::<T>(k as f64 / (pts - 1) as f64);
        let w = lo + (hi - lo) * frac;
        let want = y(w);
        if !finite(want) {
            continue;
        }
        err = err.max((y_sum(w) - want).norm());
        scale = scale.max(want.norm());
    }
    let residual = err / scale.max(real::<T>(1e-30));
    Ok(FosterFit { poles, residual })
}

/// Splits the mode linewidth into per-port partial rates in proportion to
/// the real output impedances at the mode frequency, preserving
/// `kappa_s + kappa_p = kappa_a` exactly. Slightly negative real parts are
/// clamped to zero; materially negative ones are rejected.
pub fn partial_port_rates<T: Scalar>(
    omega_a: T,
    kappa_a: T,
    re_z_signal: T,
    re_z_pump: T,
) -> Result<(T, T)> {
    let _ = omega_a;
    let floor = real::<T>(-1e-9);
    for re in [re_z_signal, re_z_pump] {
        if re < floor {
            return Err(Error::NonPassiveRealPart { re_ohms: re.to_f64().unwrap_or(f64::NAN) });
        }
    }
    let rs = re_z_signal.max(T::zero());
    let rp = re_z_pump.max(T::zero());
    let total = rs + rp;
    if total == T::zero() {
        return Ok((T::zero(), T::zero()));
    }
    Ok((kappa_a * rs / total, kappa_a * rp / total))
}

/// Full bookkeeping for one mode of an embedding: participation and
/// per-port rates on top of the polished pole.
pub fn mode_summary<T: Scalar>(
    emb: &Embedding<T>,
    l_j: T,
    pole: &ModePole<T>,
) -> Result<ModeSummary<T>> {
    let zth_real = |w: T| {
        emb.zth(ComplexFrequency::real_freq(w))
            .unwrap_or_else(|_| Complex::new(T::nan(), T::nan()))
    };
    let p_j = participation(zth_real, pole.omega_a, l_j)?;
    let at = ComplexFrequency::real_freq(pole.omega_a);
    let re_zs = emb.z_signal(at)?.re;
    let re_zp = emb.z_pump(at)?.re;
    let (kappa_signal_port, kappa_pump_port) =
        partial_port_rates(pole.omega_a, pole.kappa_a, re_zs, re_zp)?;
    Ok(ModeSummary {
        omega_a: pole.omega_a,
        kappa_a: pole.kappa_a,
        p_j,
        kappa_signal_port,
        kappa_pump_port,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_complex::Complex64;
    use std::f64::consts::TAU;

    /// Parallel RC seen through the dipole: Z_th(s) = R / (1 + s R C).
    fn rc_zth(r: f64, c: f64) -> impl Fn(Complex64) -> Complex64 + Copy {
        move |s: Complex64| Complex64::new(r, 0.0) / (Complex64::new(1.0, 0.0) + s * r * c)
    }

    fn default_opts() -> ModeSearchOptions {
        ModeSearchOptions::default()
    }

    #[test]
    fn rlc_mode_matches_closed_form() {
        let (l_j, c, r) = (1e-9_f64, 1e-12_f64, 5e3_f64);
        let kappa_exact = 1.0 / (r * c);
        let omega0_sq = 1.0 / (l_j * c);
        let omega_exact = (omega0_sq - kappa_exact * kappa_exact / 4.0).sqrt();
        let modes = find_modes(
            rc_zth(r, c),
            l_j,
            (TAU * 1e9, TAU * 20e9),
            &default_opts(),
        )
        .unwrap();
        assert_eq!(modes.len(), 1);
        let m = modes[0];
        assert_relative_eq!(m.omega_a, omega_exact, max_relative = 1e-10);
        assert_relative_eq!(m.kappa_a, kappa_exact, max_relative = 1e-10);
        assert!(m.residual < 1e-10);
        // Frozen scale check: about 5.0329 GHz and 31.83 MHz.
        assert!((m.omega_a / TAU - 5.0329e9).abs() < 1e6);
        assert!((m.kappa_a / TAU - 31.83e6).abs() < 1e4);
    }

    #[test]
    fn lossless_series_capacitor_mode() {
        let (l_j, c) = (1e-9, 1e-12);
        let zth = move |s: Complex64| (s * c).finv();
        let modes = find_modes(zth, l_j, (TAU * 1e9, TAU * 20e9), &default_opts()).unwrap();
        assert_eq!(modes.len(), 1);
        assert_relative_eq!(modes[0].omega_a, 1.0 / (l_j * c).sqrt(), max_relative = 1e-12);
        assert_eq!(modes[0].kappa_a, 0.0);
    }

    #[test]
    fn empty_window_yields_empty_list() {
        let modes = find_modes(
            rc_zth(5e3, 1e-12),
            1e-9,
            (TAU * 10e9, TAU * 20e9),
            &default_opts(),
        )
        .unwrap();
        assert!(modes.is_empty());
    }

    #[test]
    fn two_mode_fixture_matches_polynomial_oracle() {
        // Z_th = two parallel-RLC branches in series; the characteristic
        // equation L_J d1 d2 + L1 d2 + L2 d1 = 0 (d_i = s^2 L_i C_i
        // + s L_i / R_i + 1) is a quartic solved independently by
        // Durand-Kerner iteration.
        let l_j = 1e-9;
        let (r1, l1, c1) = (2e4, 3e-9, 0.4e-12);
        let (r2, l2, c2) = (3e4, 1.5e-9, 0.25e-12);
        let branch = move |s: Complex64, r: f64, l: f64, c: f64| {
            (s * c + Complex64::new(1.0 / r, 0.0) + (s * l).finv()).finv()
        };
        let zth = move |s: Complex64| branch(s, r1, l1, c1) + branch(s, r2, l2, c2);

        // Quartic coefficients, ascending powers.
        let d_coeffs = |l: f64, c: f64, r: f64| [1.0, l / r, l * c];
        let d1 = d_coeffs(l1, c1, r1);
        let d2 = d_coeffs(l2, c2, r2);
        let mut poly = [0.0f64; 5];
        for (i, a) in d1.iter().enumerate() {
            for (j, b) in d2.iter().enumerate() {
                poly[i + j] += l_j * a * b;
            }
        }
        for (i, a) in d2.iter().enumerate() {
            poly[i] += l1 * a;
        }
        for (i, a) in d1.iter().enumerate() {
            poly[i] += l2 * a;
        }
        let roots = durand_kerner(&poly.map(|x| Complex64::new(x, 0.0)));
        let mut oracle: Vec<(f64, f64)> = roots
            .iter()
            .filter(|s| s.im > 0.0)
            .map(|s| (s.im, -2.0 * s.re))
            .collect();
        oracle.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        assert_eq!(oracle.len(), 2);

        let modes = find_modes(zth, l_j, (TAU * 1e9, TAU * 20e9), &default_opts()).unwrap();
        assert_eq!(modes.len(), 2);
        for (m, o) in modes.iter().zip(&oracle) {
            assert_relative_eq!(m.omega_a, o.0, max_relative = 1e-9);
            assert_relative_eq!(m.kappa_a, o.1, max_relative = 1e-9);
        }
    }

    /// Weierstrass simultaneous root iteration; oracle-only.
    fn durand_kerner(coeffs: &[Complex64]) -> Vec<Complex64> {
        let n = coeffs.len() - 1;
        let lead = coeffs[n];
        let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
        let eval = |x: Complex64| {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in monic.iter().rev() {
                acc = acc * x + c;
            }
            acc
        };
        let mut roots: Vec<Complex64> = (0..n)
            .map(|k| Complex64::from_polar(1.2e10, 0.7 + 1.9 * k as f64))
            .collect();
        for _ in 0..400 {
            let mut moved = 0.0f64;
            for i in 0..n {
                let mut denom = Complex64::new(1.0, 0.0);
                for j in 0..n {
                    if j != i {
                        denom *= roots[i] - roots[j];
                    }
                }
                let step = eval(roots[i]) / denom;
                roots[i] -= step;
                moved = moved.max(step.norm() / roots[i].norm().max(1.0));
            }
            if moved < 1e-14 {
                break;
            }
        }
        roots
    }

    #[test]
    fn fourier_approximation_close_to_exact_root() {
        let (l_j, c, r) = (1e-9, 1e-12, 5e3);
        let zth_c = rc_zth(r, c);
        let zth_r = move |w: f64| zth_c(Complex64::new(0.0, w));
        let exact = find_modes(zth_c, l_j, (TAU * 1e9, TAU * 20e9), &default_opts()).unwrap()[0];
        let q = exact.omega_a / exact.kappa_a;
        let (omega_f, kappa_f) =
            approx_mode_fourier(zth_r, l_j, (TAU * 3e9, TAU * 8e9)).unwrap();
        let kq = 1.0 / (q * q);
        assert!(
            ((omega_f - exact.omega_a) / exact.omega_a).abs() < kq,
            "omega error above (kappa/omega)^2"
        );
        assert!(((kappa_f - exact.kappa_a) / exact.kappa_a).abs() < 0.01);
    }

    #[test]
    fn fourier_lossless_reduces_to_crossing() {
        let (l_j, c) = (1e-9, 1e-12);
        let zth = move |w: f64| (Complex64::new(0.0, w) * c).finv();
        let (omega_f, kappa_f) =
            approx_mode_fourier(zth, l_j, (TAU * 3e9, TAU * 8e9)).unwrap();
        assert_relative_eq!(omega_f, 1.0 / (l_j * c).sqrt(), max_relative = 1e-12);
        assert_eq!(kappa_f, 0.0);
    }

    #[test]
    fn participation_of_bare_mode_is_unity() {
        // High-Q parallel RC against the dipole: all inductance is L_J.
        let (l_j, c) = (1e-9_f64, 1e-12_f64);
        let omega0 = 1.0 / (l_j * c).sqrt();
        let q = 1e4;
        let r = q / (omega0 * c);
        let zth_c = rc_zth(r, c);
        let zth_r = move |w: f64| zth_c(Complex64::new(0.0, w));
        let modes = find_modes(zth_c, l_j, (TAU * 1e9, TAU * 20e9), &default_opts()).unwrap();
        let p = participation(zth_r, modes[0].omega_a, l_j).unwrap();
        assert!((p - 1.0).abs() < 1e-3, "p = {p}");
    }

    #[test]
    fn participation_of_series_inductor_split() {
        let (l_j, l_ext, c) = (1e-9, 2.5e-9, 0.5e-12);
        let zth = move |w: f64| {
            let s = Complex64::new(0.0, w);
            s * l_ext + (s * c).finv()
        };
        let omega_a = 1.0 / ((l_j + l_ext) * c).sqrt();
        let p = participation(zth, omega_a, l_j).unwrap();
        assert_relative_eq!(p, l_j / (l_j + l_ext), max_relative = 1e-6);
    }

    #[test]
    fn damping_identity_holds_at_high_q() {
        let (l_j, c) = (1e-9_f64, 1e-12_f64);
        let omega0 = 1.0 / (l_j * c).sqrt();
        let q = 1e4;
        let r = q / (omega0 * c);
        let zth_c = rc_zth(r, c);
        let zth_r = move |w: f64| zth_c(Complex64::new(0.0, w));
        let m = find_modes(zth_c, l_j, (TAU * 1e9, TAU * 20e9), &default_opts()).unwrap()[0];
        let p = participation(zth_r, m.omega_a, l_j).unwrap();
        let lhs = m.kappa_a / p;
        let rhs = damping_scale(zth_r, m.omega_a, l_j);
        assert_relative_eq!(lhs, rhs, max_relative = 1e-6);
    }

    #[test]
    fn foster_identity_fit_recovers_rlc() {
        // Y = 1/(s L_J) + s C + 1/R is exactly one parallel RLC with L = L_J.
        let (l_j, c, r) = (1e-9, 1e-12, 5e4);
        let y = move |w: f64| {
            let s = Complex64::new(0.0, w);
            (s * l_j).finv() + s * c + Complex64::new(1.0 / r, 0.0)
        };
        let omega_a = 1.0 / (l_j * c).sqrt();
        let kappa_a = 1.0 / (r * c);
        let fit = foster_fit(y, &[ModePole { omega_a, kappa_a, residual: 0.0 }]).unwrap();
        assert_eq!(fit.poles.len(), 1);
        assert_relative_eq!(fit.poles[0].c, c, max_relative = 1e-8);
        assert_relative_eq!(fit.poles[0].l, l_j, max_relative = 1e-8);
        assert_relative_eq!(fit.poles[0].r, r, max_relative = 1e-8);
        assert!(fit.residual < 1e-6, "identity fit residual {}", fit.residual);
    }

    #[test]
    fn overlapping_modes_rejected() {
        let y = |w: f64| Complex64::new(1e-4, w * 1e-12);
        let modes = [
            ModePole { omega_a: 1e10, kappa_a: 1e9, residual: 0.0 },
            ModePole { omega_a: 1.05e10, kappa_a: 1e9, residual: 0.0 },
        ];
        assert!(matches!(foster_fit(y, &modes), Err(Error::OverlappingModes { .. })));
    }

    #[test]
    fn port_rates_split_and_clamp() {
        let (ks, kp) = partial_port_rates(1e10, 1e9, 3.0, 1.0).unwrap();
        assert_relative_eq!(ks + kp, 1e9, max_relative = 1e-15);
        assert_relative_eq!(ks, 0.75e9);
        // Deep stopband: essentially all dissipation via the signal port.
        let (ks, kp) = partial_port_rates(1e10, 1e9, 2.0, 1e-15).unwrap();
        assert!(kp < 1e-5 * ks);
        // Symmetric split.
        let (ks, kp) = partial_port_rates(1e10, 1e9, 2.0, 2.0).unwrap();
        assert_eq!(ks, kp);
        // Tiny negative noise clamps, material negative errors.
        let (_, kp) = partial_port_rates(1e10, 1e9, 1.0, -1e-12).unwrap();
        assert_eq!(kp, 0.0);
        assert!(partial_port_rates(1e10, 1e9, 1.0, -1e-3).is_err());
    }
}
