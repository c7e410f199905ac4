//! Stiff-pump response of the Josephson dipole: the pump phasor at the
//! dipole is treated as a fixed parameter, which linearizes the three-wave
//! coupling between signal and idler into a cross-admittance. From it follow
//! the pumped reflection, gain and transmission, the pump coupling
//! efficiency, the leakage bound, and the noise susceptibility slope.

use num_complex::Complex;

use crate::dipole::JosephsonDipole;
use crate::element::ComplexFrequency;
use crate::error::{Error, Result};
use crate::scalar::{finite, real, Scalar};
use crate::threeport::{dipole_wave_response, Embedding, ThreePort};

/// Pump drive expressed at the dipole: angular frequency and the complex
/// dimensionless phase amplitude `phi_p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PumpState<T> {
    pub omega_p: T,
    pub phi_p: Complex<T>,
}

impl<T: Scalar> PumpState<T> {
    pub fn new(omega_p: T, phi_p: Complex<T>) -> Self {
        Self { omega_p, phi_p }
    }

    /// The truncated expansion loses meaning above |phi_p| ~ 1; results
    /// above 0.5 deserve scrutiny.
    pub fn exceeds_soft_bound(&self) -> bool {
        self.phi_p.norm() > real::<T>(0.5)
    }

    /// Pump voltage phasor at the dipole, `j omega_p phi0 phi_p`.
    pub fn v_jp(&self, dipole: &JosephsonDipole<T>) -> Complex<T> {
        Complex::new(T::zero(), self.omega_p * dipole.phi0) * self.phi_p
    }

    /// Pump power scale at the dipole, `|V_jp|^2 / (omega_p L_J)`, in watts.
    pub fn p_jp(&self, dipole: &JosephsonDipole<T>) -> T {
        self.v_jp(dipole).norm_sqr() / (self.omega_p * dipole.l_j)
    }
}

/// Signal/idler frequency pair under a pump at `omega_p`, with the gain the
/// design is meant to reach there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint<T> {
    pub omega_s: T,
    pub omega_p: T,
    /// Target power gain (ratio, not dB).
    pub gain_target: T,
}

impl<T: Scalar> OperatingPoint<T> {
    pub fn new(omega_s: T, omega_p: T, gain_target: T) -> Self {
        assert!(
            T::zero() < omega_s && omega_s < omega_p,
            "operating point requires 0 < omega_s < omega_p"
        );
        Self { omega_s, omega_p, gain_target }
    }

    /// Idler frequency `omega_p - omega_s`.
    pub fn omega_i(&self) -> T {
        self.omega_p - self.omega_s
    }
}

/// Reflection from the bare linear inductance loading the dipole port:
/// `(j w L_J - Z0) / (j w L_J + Z0)`, unit magnitude.
pub fn gamma3_linear<T: Scalar>(l_j: T, omega: T, z0: T) -> Complex<T> {
    let jwl = Complex::new(T::zero(), omega * l_j);
    let z0c = Complex::new(z0, T::zero());
    (jwl - z0c) / (jwl + z0c)
}

/// Cross-admittance of the pumped dipole relating `(I_s, conj(I_i))` to
/// `(V_s, conj(V_i))`; off-diagonals carry `(c3/2) phi_p`.
pub fn cross_admittance<T: Scalar>(
    d: &JosephsonDipole<T>,
    pump: &PumpState<T>,
    op: &OperatingPoint<T>,
) -> [[Complex<T>; 2]; 2] {
    let a = pump.phi_p * (d.c3 / real::<T>(2.0));
    let j_lj = Complex::new(T::zero(), d.l_j);
    let y_ss = (j_lj * op.omega_s).finv();
    let y_ii = -(j_lj * op.omega_i()).finv();
    let y_si = -a / (j_lj * op.omega_i());
    let y_is = a.conj() / (j_lj * op.omega_s);
    [[y_ss, y_si], [y_is, y_ii]]
}

/// Self-consistent pump-induced admittance at the signal frequency, with
/// the idler eliminated through the passive response `Z_th[omega_i]`:
///
/// ```text
/// Y_nl = (1 / (j L_J w_s)) |c3 phi_p / 2|^2 / (j L_J w_i / conj(Z_th[w_i]) - 1)
/// ```
///
/// Amplification requires `Re Y_nl < 0`.
pub fn y_nl<T: Scalar>(
    d: &JosephsonDipole<T>,
    pump: &PumpState<T>,
    op: &OperatingPoint<T>,
    zth_idler: Complex<T>,
) -> Result<Complex<T>> {
    if !finite(zth_idler) {
        return Err(Error::IdlerSingularity);
    }
    let a2 = (pump.phi_p * (d.c3 / real::<T>(2.0))).norm_sqr();
    let j_lj_wi = Complex::new(T::zero(), d.l_j * op.omega_i());
    let den = j_lj_wi / zth_idler.conj() - Complex::new(T::one(), T::zero());
    if den.norm() < real::<T>(1e-12) {
        return Err(Error::IdlerSingularity);
    }
    let j_lj_ws = Complex::new(T::zero(), d.l_j * op.omega_s);
    Ok(j_lj_ws.finv() * a2 / den)
}

/// Pumped reflection at the dipole port: linear inductance in parallel with
/// `Y_nl`. `|Gamma3| > 1` exactly when `Re Y_nl < 0`.
pub fn gamma3_pumped<T: Scalar>(
    d: &JosephsonDipole<T>,
    y_nl: Complex<T>,
    omega_s: T,
    z0: T,
) -> Complex<T> {
    let one = Complex::new(T::one(), T::zero());
    let y_total = Complex::new(T::zero(), d.l_j * omega_s).finv() + y_nl;
    let z0y = y_total * z0;
    (one - z0y) / (one + z0y)
}

/// Reflection gain and forward transmission of the loaded circuit at one
/// signal frequency, with the smallness of the loop denominator reported.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignalResponse<T> {
    /// `|S11 + S13 Gamma3 S31 / (1 - Gamma3 S33)|^2`
    pub gain: T,
    /// `|S21 + S23 Gamma3 S31 / (1 - Gamma3 S33)|^2`
    pub transmission: T,
    /// `|1 - Gamma3 S33|`; the response diverges as this vanishes.
    pub loop_residual: T,
}

/// Evaluates reflection gain and port-1 to port-2 transmission for a dipole
/// load with reflection `gamma3`.
pub fn signal_response<T: Scalar>(
    s3: &ThreePort<T>,
    gamma3: Complex<T>,
) -> Result<SignalResponse<T>> {
    let one = Complex::new(T::one(), T::zero());
    let den = one - gamma3 * s3.s33();
    let loop_residual = den.norm();
    if loop_residual <= real::<T>(1e-12) {
        return Err(Error::ComposeDegenerate);
    }
    let common = gamma3 * s3.s(3, 1) / den;
    let v_refl = s3.s(1, 1) + s3.s(1, 3) * common;
    let v_trans = s3.s(2, 1) + s3.s(2, 3) * common;
    Ok(SignalResponse {
        gain: v_refl.norm_sqr(),
        transmission: v_trans.norm_sqr(),
        loop_residual,
    })
}

/// Reflection power gain from port 1.
pub fn gain<T: Scalar>(s3: &ThreePort<T>, gamma3: Complex<T>) -> Result<T> {
    Ok(signal_response(s3, gamma3)?.gain)
}

/// Power transmission from port 1 to port 2.
pub fn transmission<T: Scalar>(s3: &ThreePort<T>, gamma3: Complex<T>) -> Result<T> {
    Ok(signal_response(s3, gamma3)?.transmission)
}

/// Pump coupling efficiency: the dipole pump power scale per unit incident
/// pump power,
/// `|(1 + Gamma3) S32 / (1 - Gamma3 S33)|^2 Z0 / (omega_p L_J)`.
pub fn pump_coupling_efficiency<T: Scalar>(
    s3_pump: &ThreePort<T>,
    gamma3_pump: Complex<T>,
    l_j: T,
    omega_p: T,
) -> Result<T> {
    let resp = dipole_wave_response(s3_pump, gamma3_pump, 2)?;
    Ok(resp.vj_over_vin.norm_sqr() * s3_pump.z0 / (omega_p * l_j))
}

/// Finds the smallest pump amplitude that reaches the target reflection
/// gain at the operating point, by scan-and-bisection on `|phi_p|` below
/// `phi_max`. Deterministic; gain is monotone in the amplitude below the
/// oscillation threshold.
pub fn solve_pump_for_gain<T: Scalar>(
    d: &JosephsonDipole<T>,
    op: &OperatingPoint<T>,
    s3_signal: &ThreePort<T>,
    zth_idler: Complex<T>,
    phi_max: T,
) -> Result<PumpState<T>> {
    assert!(op.gain_target >= T::one(), "gain target must be >= 1");
    let g_of = |phi: T| -> Result<T> {
        let pump = PumpState::new(op.omega_p, Complex::new(phi, T::zero()));
        let y = y_nl(d, &pump, op, zth_idler)?;
        let g3 = gamma3_pumped(d, y, op.omega_s, s3_signal.z0);
        gain(s3_signal, g3)
    };
    if op.gain_target == T::one() {
        return Ok(PumpState::new(op.omega_p, Complex::new(T::zero(), T::zero())));
    }
    let steps = 400;
    let mut lo = T::zero();
    let mut hi = T::nan();
    let mut g_last = g_of(T::zero())?;
    for k in 1..=steps {
        let phi = phi_max * real::<T>(k as f64 / steps as f64);
        match g_of(phi) {
            Ok(g) if g >= op.gain_target => {
                hi = phi;
                break;
            }
            Ok(g) => {
                lo = phi;
                g_last = g;
            }
            // Past the oscillation threshold the loop denominator can
            // vanish; the crossing is below, inside the last interval.
            Err(Error::ComposeDegenerate) => {
                hi = phi;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    if hi.is_nan() {
        return Err(Error::UnreachableGain {
            gain_at_bound: g_last.to_f64().unwrap_or(f64::NAN),
        });
    }
    for _ in 0..60 {
        let mid = (lo + hi) * real::<T>(0.5);
        let g_mid = match g_of(mid) {
            Ok(g) => g,
            Err(Error::ComposeDegenerate) => T::infinity(),
            Err(e) => return Err(e),
        };
        if ((g_mid - op.gain_target) / op.gain_target).abs() < real::<T>(1e-9) {
            return Ok(PumpState::new(op.omega_p, Complex::new(mid, T::zero())));
        }
        if g_mid >= op.gain_target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(PumpState::new(op.omega_p, Complex::new((lo + hi) * real::<T>(0.5), T::zero())))
}

/// Everything the pumped design reports at one operating point. Powers in
/// watts; `eta_p` only when the nonlinear mixing efficiency was supplied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PumpedFigures<T> {
    pub pump: PumpState<T>,
    /// Pump coupling efficiency at `omega_p`.
    pub eta_pc: T,
    /// Total power efficiency `eta_nl * eta_pc`, when `eta_nl` was given.
    pub eta_p: Option<T>,
    /// Pump power scale at the dipole.
    pub p_jp_watts: T,
    /// Incident pump power at the device pump port for this pump state.
    pub p_pump_watts: T,
    /// Conservation bound on the leakage, `P_jp / eta_pc`.
    pub leak_bound_watts: T,
    /// Exact pump leakage out of the signal port.
    pub leak_exact_watts: T,
    pub gain: T,
    pub transmission: T,
    /// Output-noise slope against pump-port signal-band noise, `2 T`.
    pub noise_slope: T,
}

/// Evaluates the pumped figures of merit for a solved pump state.
pub fn figures_of_merit<T: Scalar>(
    emb: &Embedding<T>,
    d: &JosephsonDipole<T>,
    op: &OperatingPoint<T>,
    pump: &PumpState<T>,
    eta_nl: Option<T>,
) -> Result<PumpedFigures<T>> {
    let s3_s = emb.three_port(ComplexFrequency::real_freq(op.omega_s))?;
    let s3_p = emb.three_port(ComplexFrequency::real_freq(op.omega_p))?;
    let zth_i = emb.zth(ComplexFrequency::real_freq(op.omega_i()))?;

    let g3_pump = gamma3_linear(d.l_j, op.omega_p, emb.z0);
    let eta_pc = pump_coupling_efficiency(&s3_p, g3_pump, d.l_j, op.omega_p)?;

    let y = y_nl(d, pump, op, zth_i)?;
    let g3_signal = gamma3_pumped(d, y, op.omega_s, emb.z0);
    let resp = signal_response(&s3_s, g3_signal)?;

    let p_jp = pump.p_jp(d);
    let p_pump = p_jp / eta_pc;
    // Leakage: the pump-frequency wave leaving port 1 per the incident
    // pump amplitude that realizes this pump state.
    let one = Complex::new(T::one(), T::zero());
    let den = one - g3_pump * s3_p.s33();
    let v1_over_vin2 = s3_p.s(1, 2) + s3_p.s(1, 3) * g3_pump * s3_p.s(3, 2) / den;
    let leak_exact = v1_over_vin2.norm_sqr() * p_pump;

    Ok(PumpedFigures {
        pump: *pump,
        eta_pc,
        eta_p: eta_nl.map(|e| e * eta_pc),
        p_jp_watts: p_jp,
        p_pump_watts: p_pump,
        leak_bound_watts: p_pump,
        leak_exact_watts: leak_exact,
        gain: resp.gain,
        transmission: resp.transmission,
        noise_slope: resp.transmission * real::<T>(2.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::{Element, Ladder};
    use crate::mna;
    use crate::resonance::{find_modes, ModeSearchOptions};
    use crate::twoport::TwoPortResponse;
    use approx::assert_relative_eq;
    use num_complex::Complex64;
    use std::f64::consts::TAU;

    #[test]
    fn gamma3_linear_algebra() {
        let z0 = 50.0;
        // omega L = Z0 -> Gamma3 = j.
        let g = gamma3_linear(1e-9, z0 / 1e-9, z0);
        assert_relative_eq!(g.re, 0.0, epsilon = 1e-14);
        assert_relative_eq!(g.im, 1.0, epsilon = 1e-14);
        // Open limit.
        let g = gamma3_linear(1.0, 1e12, z0);
        assert!((g - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        // Short limit.
        let g = gamma3_linear(1e-15, 1e3, z0);
        assert!((g - Complex64::new(-1.0, 0.0)).norm() < 1e-9);
        // Unit magnitude everywhere.
        for w in [1e9, 3e10, 8e10] {
            assert_relative_eq!(gamma3_linear(0.8e-9, w, z0).norm(), 1.0, epsilon = 1e-14);
        }
    }

    fn test_dipole() -> JosephsonDipole<f64> {
        JosephsonDipole::new(1.0e-9, 0.2).unwrap()
    }

    #[test]
    fn cross_admittance_unpumped_is_diagonal() {
        let d = test_dipole();
        let op = OperatingPoint::new(TAU * 5e9, TAU * 10.2e9, 100.0);
        let pump = PumpState::new(op.omega_p, Complex64::new(0.0, 0.0));
        let y = cross_admittance(&d, &pump, &op);
        assert_eq!(y[0][1], Complex64::new(0.0, 0.0));
        assert_eq!(y[1][0], Complex64::new(0.0, 0.0));
        let want = (Complex64::new(0.0, op.omega_s * d.l_j)).finv();
        assert!((y[0][0] - want).norm() < 1e-20);
        let want_i = -(Complex64::new(0.0, op.omega_i() * d.l_j)).finv();
        assert!((y[1][1] - want_i).norm() < 1e-20);
    }

    #[test]
    fn cross_admittance_matches_hand_expansion() {
        // Independent re-derivation from the harmonic balance of
        // I = (phi0/L)(phi + c3/2 phi^2) with phi_x = V_x/(j w_x phi0).
        let d = test_dipole();
        let op = OperatingPoint::new(TAU * 4.7e9, TAU * 9.9e9, 100.0);
        let pump = PumpState::new(op.omega_p, Complex64::from_polar(0.21, 0.83));
        let y = cross_admittance(&d, &pump, &op);
        let (ws, wi) = (op.omega_s, op.omega_i());
        let j = Complex64::new(0.0, 1.0);
        let a = 0.5 * d.c3 * pump.phi_p;
        // I_s = (phi0/L)(phi_s + a * conj(phi_i)), phi_s = V_s/(j ws phi0),
        // conj(phi_i) = conj(V_i)/(-j wi phi0).
        let y_ss = 1.0 / (j * ws * d.l_j);
        let y_si = a / (-j * wi * d.l_j);
        // conj(I_i) = (phi0/L)(conj(phi_i) + conj(a) phi_s).
        let y_is = a.conj() / (j * ws * d.l_j);
        let y_ii = 1.0 / (-j * wi * d.l_j);
        assert!((y[0][0] - y_ss).norm() < 1e-12 * y_ss.norm());
        assert!((y[0][1] - y_si).norm() < 1e-12 * y_si.norm());
        assert!((y[1][0] - y_is).norm() < 1e-12 * y_is.norm());
        assert!((y[1][1] - y_ii).norm() < 1e-12 * y_ii.norm());
    }

    #[test]
    fn cross_admittance_degenerate_symmetry() {
        let d = test_dipole();
        let wp = TAU * 10e9;
        let op = OperatingPoint::new(wp / 2.0, wp, 100.0);
        let pump = PumpState::new(wp, Complex64::from_polar(0.3, 1.2));
        let y = cross_admittance(&d, &pump, &op);
        assert_relative_eq!(y[0][1].norm(), y[1][0].norm(), max_relative = 1e-14);
    }

    #[test]
    fn y_nl_vanishes_without_pump() {
        let d = test_dipole();
        let op = OperatingPoint::new(TAU * 5e9, TAU * 10e9, 100.0);
        let pump = PumpState::new(op.omega_p, Complex64::new(0.0, 0.0));
        let y = y_nl(&d, &pump, &op, Complex64::new(3.0, -40.0)).unwrap();
        assert_eq!(y, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn pumped_gamma_exceeds_unity_iff_negative_conductance() {
        let d = test_dipole();
        let ws = TAU * 5e9;
        let z0 = 50.0;
        for (re, expect_amp) in [(-3e-4, true), (3e-4, false)] {
            let y = Complex64::new(re, 1e-4);
            let g = gamma3_pumped(&d, y, ws, z0);
            assert_eq!(g.norm() > 1.0, expect_amp, "Re Y = {re}");
        }
        // Zero pump admittance reduces to the linear reflection.
        let g0 = gamma3_pumped(&d, Complex64::new(0.0, 0.0), ws, z0);
        let gl = gamma3_linear(d.l_j, ws, z0);
        assert!((g0 - gl).norm() < 1e-14);
        // Algebraic spot value: Y_tot = -2/Z0 gives Gamma3 = -3.
        let y = Complex64::new(-2.0 / z0, 0.0) - (Complex64::new(0.0, ws * d.l_j)).finv();
        let g = gamma3_pumped(&d, y, ws, z0);
        assert_relative_eq!(g.re, -3.0, max_relative = 1e-12);
        assert_relative_eq!(g.im, 0.0, epsilon = 1e-12);
    }

    /// Capacitively coupled lumped fixture that amplifies: series coupling
    /// caps into shunt resonator caps on both sides of the dipole.
    fn amplifying_fixture() -> (Embedding<f64>, JosephsonDipole<f64>) {
        let z0 = 50.0;
        let sig = Ladder::new(vec![
            Element::SeriesCapacitor { farads: 40e-15 },
            Element::ShuntCapacitor { farads: 0.45e-12 },
        ])
        .unwrap();
        let pump = Ladder::new(vec![
            Element::SeriesCapacitor { farads: 3e-15 },
            Element::ShuntCapacitor { farads: 0.45e-12 },
        ])
        .unwrap();
        let emb = Embedding::new(
            TwoPortResponse::new(sig, z0),
            TwoPortResponse::new(pump, z0),
            z0,
        );
        (emb, test_dipole())
    }

    fn fixture_mode(emb: &Embedding<f64>, d: &JosephsonDipole<f64>) -> (f64, f64) {
        let zth = |s: Complex64| {
            emb.zth(ComplexFrequency::from_complex(s))
                .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
        };
        let modes =
            find_modes(zth, d.l_j, (TAU * 2e9, TAU * 12e9), &ModeSearchOptions::default())
                .unwrap();
        assert!(!modes.is_empty(), "fixture must resonate");
        (modes[0].omega_a, modes[0].kappa_a)
    }

    #[test]
    fn unpumped_lossless_gain_plus_transmission_is_one() {
        let (emb, d) = amplifying_fixture();
        for hz in [3.1e9, 5.0e9, 6.4e9, 9.7e9] {
            let w = TAU * hz;
            let s3 = emb.three_port(ComplexFrequency::real_freq(w)).unwrap();
            let g3 = gamma3_linear(d.l_j, w, emb.z0);
            let r = signal_response(&s3, g3).unwrap();
            assert!(
                (r.gain + r.transmission - 1.0).abs() < 1e-10,
                "G + T = {} at {} GHz",
                r.gain + r.transmission,
                hz / 1e9
            );
        }
    }

    #[test]
    fn reflection_grows_as_conductance_goes_negative() {
        let (emb, d) = amplifying_fixture();
        let (wa, _) = fixture_mode(&emb, &d);
        let mut last = 0.0;
        for k in 0..8 {
            let y = Complex64::new(-2e-4 * k as f64, 3e-5);
            let g3 = gamma3_pumped(&d, y, wa, emb.z0);
            assert!(g3.norm() > last, "|Gamma3| must increase as Re Y_nl decreases");
            last = g3.norm();
        }
        // Below the oscillation threshold the gain itself grows too.
        let s3 = emb.three_port(ComplexFrequency::real_freq(wa)).unwrap();
        let mut last_gain = 0.0;
        for k in 0..6 {
            let y = Complex64::new(-4e-6 * k as f64, 0.0);
            let g = gain(&s3, gamma3_pumped(&d, y, wa, emb.z0)).unwrap();
            assert!(g > last_gain, "gain must increase below threshold (step {k})");
            last_gain = g;
        }
    }

    #[test]
    fn formulas_match_single_frequency_nodal_solve_with_inserted_load() {
        let (emb, d) = amplifying_fixture();
        let (wa, _) = fixture_mode(&emb, &d);
        let op = OperatingPoint::new(wa * 1.001, 2.0 * wa, 100.0);
        let zth_i = emb.zth(ComplexFrequency::real_freq(op.omega_i())).unwrap();
        let pump = PumpState::new(op.omega_p, Complex64::new(0.22, 0.0));
        let y = y_nl(&d, &pump, &op, zth_i).unwrap();
        let g3 = gamma3_pumped(&d, y, op.omega_s, emb.z0);
        let s3 = emb.three_port(ComplexFrequency::real_freq(op.omega_s)).unwrap();
        let resp = signal_response(&s3, g3).unwrap();

        // Insert the same linearization as a lumped load and solve nodally.
        let y_load = (Complex64::new(0.0, op.omega_s * d.l_j)).finv() + y;
        let circuit = mna::loaded_two_port_circuit(
            emb.signal.ladder(),
            emb.pump.ladder(),
            emb.z0,
            y_load,
        )
        .unwrap();
        let s = circuit.s_params(Complex64::new(0.0, op.omega_s)).unwrap();
        assert!((s[0][0].norm_sqr() - resp.gain).abs() <= 1e-9 * resp.gain.max(1.0));
        assert!(
            (s[1][0].norm_sqr() - resp.transmission).abs()
                <= 1e-9 * resp.transmission.max(1e-12)
        );
    }

    #[test]
    fn formulas_match_two_tone_brute_force() {
        let (emb, d) = amplifying_fixture();
        let (wa, _) = fixture_mode(&emb, &d);
        let op = OperatingPoint::new(wa * 0.999, 2.0 * wa, 100.0);
        let zth_i = emb.zth(ComplexFrequency::real_freq(op.omega_i())).unwrap();
        let pump = PumpState::new(op.omega_p, Complex64::from_polar(0.2, 0.4));
        let y = y_nl(&d, &pump, &op, zth_i).unwrap();
        let g3 = gamma3_pumped(&d, y, op.omega_s, emb.z0);
        let s3 = emb.three_port(ComplexFrequency::real_freq(op.omega_s)).unwrap();
        let resp = signal_response(&s3, g3).unwrap();

        let cross = cross_admittance(&d, &pump, &op);
        let sol = mna::pumped_two_tone(
            emb.signal.ladder(),
            emb.pump.ladder(),
            emb.z0,
            cross,
            op.omega_s,
            op.omega_i(),
            0,
        )
        .unwrap();
        let g_brute = (sol.signal_out[0] / sol.signal_in).norm_sqr();
        let t_brute = (sol.signal_out[1] / sol.signal_in).norm_sqr();
        assert!((g_brute - resp.gain).abs() <= 1e-9 * resp.gain.max(1.0));
        assert!((t_brute - resp.transmission).abs() <= 1e-9 * resp.transmission.max(1e-12));

        // Manley-Rowe photon-flux balance for the lossless fixture.
        let p_in = sol.signal_in.norm_sqr();
        let p_out_s: f64 = sol.signal_out.iter().map(|b| b.norm_sqr()).sum();
        let p_out_i: f64 = sol.idler_out.iter().map(|b| b.norm_sqr()).sum();
        let lhs = (p_out_s - p_in) / op.omega_s;
        let rhs = p_out_i / op.omega_i();
        assert!(
            (lhs - rhs).abs() <= 1e-6 * lhs.abs().max(rhs.abs()),
            "photon flux balance: {lhs} vs {rhs}"
        );
    }

    #[test]
    fn pump_solver_contract() {
        let (emb, d) = amplifying_fixture();
        let (wa, _) = fixture_mode(&emb, &d);
        let op = OperatingPoint::new(wa, 2.0 * wa, 100.0);
        let s3 = emb.three_port(ComplexFrequency::real_freq(op.omega_s)).unwrap();
        let zth_i = emb.zth(ComplexFrequency::real_freq(op.omega_i())).unwrap();

        // Unit target needs no pump.
        let op1 = OperatingPoint::new(wa, 2.0 * wa, 1.0);
        let p = solve_pump_for_gain(&d, &op1, &s3, zth_i, 1.0).unwrap();
        assert_eq!(p.phi_p.norm(), 0.0);

        let p = solve_pump_for_gain(&d, &op, &s3, zth_i, 1.0).unwrap();
        let y = y_nl(&d, &p, &op, zth_i).unwrap();
        let g = gain(&s3, gamma3_pumped(&d, y, op.omega_s, emb.z0)).unwrap();
        assert!(((g - 100.0) / 100.0).abs() < 1e-6, "solved gain {g}");

        // An absurd target under a tiny amplitude bound is unreachable.
        let op_hard = OperatingPoint::new(wa, 2.0 * wa, 1e9);
        assert!(matches!(
            solve_pump_for_gain(&d, &op_hard, &s3, zth_i, 1e-4),
            Err(Error::UnreachableGain { .. })
        ));
    }

    #[test]
    fn decoupled_pump_port_has_zero_efficiency() {
        let s3 = ThreePort {
            m: [[Complex64::new(0.2, 0.0); 3]; 3],
            z0: 50.0,
        };
        let mut s3 = s3;
        s3.m[2][1] = Complex64::new(0.0, 0.0); // S32 = 0
        let eta = pump_coupling_efficiency(
            &s3,
            gamma3_linear(1e-9, TAU * 10e9, 50.0),
            1e-9,
            TAU * 10e9,
        )
        .unwrap();
        assert_eq!(eta, 0.0);
    }

    #[test]
    fn coupling_efficiency_matches_nodal_dipole_voltage() {
        // Sweep the pump coupling cap; the closed-form efficiency must match
        // the nodal |V_J|^2 with the linear inductor installed.
        let z0 = 50.0;
        let d = test_dipole();
        let wp = TAU * 10e9;
        for cc in [1e-15, 5e-15, 20e-15, 80e-15] {
            let sig = Ladder::new(vec![
                Element::SeriesCapacitor { farads: 40e-15 },
                Element::ShuntCapacitor { farads: 0.45e-12 },
            ])
            .unwrap();
            let pump = Ladder::new(vec![
                Element::SeriesCapacitor { farads: cc },
                Element::ShuntCapacitor { farads: 0.2e-12 },
            ])
            .unwrap();
            let emb = Embedding::new(
                TwoPortResponse::new(sig.clone(), z0),
                TwoPortResponse::new(pump.clone(), z0),
                z0,
            );
            let s3 = emb.three_port(ComplexFrequency::real_freq(wp)).unwrap();
            let g3 = gamma3_linear(d.l_j, wp, z0);
            let eta = pump_coupling_efficiency(&s3, g3, d.l_j, wp).unwrap();

            // Oracle: install the linear inductor across the dipole pair
            // (zero-pump two-tone solve degenerates to exactly that), drive
            // the pump port, and read the dipole voltage off the nodes.
            let op = OperatingPoint::new(wp, 2.0 * wp, 1.0);
            let quiet = PumpState::new(2.0 * wp, Complex64::new(0.0, 0.0));
            let cross = cross_admittance(&d, &quiet, &op);
            let sol = mna::pumped_two_tone(&sig, &pump, z0, cross, wp, wp, 1).unwrap();
            let eta_oracle =
                (sol.vj_signal / sol.signal_in).norm_sqr() * z0 / (wp * d.l_j);
            assert!(
                (eta - eta_oracle).abs() <= 1e-9 * eta_oracle.max(1e-30),
                "cc = {cc}: {eta} vs {eta_oracle}"
            );
        }
    }

    #[test]
    fn leakage_bounded_and_conserved() {
        let (emb, d) = amplifying_fixture();
        let (wa, _) = fixture_mode(&emb, &d);
        let op = OperatingPoint::new(wa, 2.0 * wa, 100.0);
        let pump = PumpState::new(op.omega_p, Complex64::new(0.15, 0.0));
        let f = figures_of_merit(&emb, &d, &op, &pump, Some(0.1)).unwrap();
        assert!(f.leak_exact_watts <= f.leak_bound_watts * (1.0 + 1e-12));
        assert_relative_eq!(f.eta_p.unwrap(), 0.1 * f.eta_pc, max_relative = 1e-15);
        assert_relative_eq!(f.noise_slope, 2.0 * f.transmission, max_relative = 1e-15);

        // Lossless pump-power conservation: out1 + out2 equals incident.
        let s3_p = emb.three_port(ComplexFrequency::real_freq(op.omega_p)).unwrap();
        let g3 = gamma3_linear(d.l_j, op.omega_p, emb.z0);
        let den = Complex64::new(1.0, 0.0) - g3 * s3_p.s33();
        let v1 = s3_p.s(1, 2) + s3_p.s(1, 3) * g3 * s3_p.s(3, 2) / den;
        let v2 = s3_p.s(2, 2) + s3_p.s(2, 3) * g3 * s3_p.s(3, 2) / den;
        assert_relative_eq!(v1.norm_sqr() + v2.norm_sqr(), 1.0, epsilon = 1e-9);
    }
}
