//! Composition of the signal- and pump-side two-ports around the dipole.
//!
//! The two coupling networks meet at the dipole terminal pair: each network's
//! inner conductor connects to one dipole terminal and the grounds are
//! common, so the dipole port (port 3) sits in series between the two inner
//! nodes, positive terminal on the signal side. Solving the series-loop flow
//! graph for that junction gives the effective 3-port scattering matrix in
//! terms of the constituents' dipole-side reflections `r_s`, `r_p`, outer
//! reflections `r'_s`, `r'_p` and transmissions `t_s`, `t_p`:
//!
//! ```text
//! D    = 3 - (r_s + r_p) - r_s*r_p
//! S31  =  2 (1 - r_p) t_s / D         S32 = -2 (1 - r_s) t_p / D
//! S21  =  2 t_s t_p / D               S33 = (1 + r_s + r_p - 3 r_s r_p) / D
//! S11  = r'_s + t_s^2 (1 + r_p) / D   S22 = r'_p + t_p^2 (1 + r_s) / D
//! ```
//!
//! with the remaining entries fixed by reciprocity. The sign of the
//! pump-side column is set by the loop orientation; power quantities only
//! ever use squared magnitudes, but the matrix as a whole is reciprocal and
//! (for lossless constituents) unitary, which pins the relative signs.

use num_complex::Complex;

use crate::element::ComplexFrequency;
use crate::error::{Error, Result};
use crate::scalar::{finite, real, Scalar};
use crate::twoport::{Sparams, TwoPortResponse};

/// Effective 3-port scattering matrix of the composed circuit at one
/// frequency. Port 1 = signal, port 2 = pump, port 3 = dipole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreePort<T> {
    pub m: [[Complex<T>; 3]; 3],
    pub z0: T,
}

impl<T: Scalar> ThreePort<T> {
    pub fn s(&self, row: usize, col: usize) -> Complex<T> {
        self.m[row - 1][col - 1]
    }

    pub fn s33(&self) -> Complex<T> {
        self.m[2][2]
    }

    /// Thevenin impedance seen by the dipole, `Z0 (1 + S33)/(1 - S33)`.
    /// `S33 = 1` yields an infinite marker value.
    pub fn thevenin_impedance(&self) -> Complex<T> {
        let one = Complex::new(T::one(), T::zero());
        (one + self.s33()) / (one - self.s33()) * self.z0
    }
}

/// Composes the two constituent 2-port scattering matrices (each with
/// port 1 = outer, port 2 = dipole side) into the effective 3-port.
pub fn compose_three_port<T: Scalar>(
    sig: &Sparams<T>,
    pump: &Sparams<T>,
    z0: T,
) -> Result<ThreePort<T>> {
    let (rps, ts, rs) = (sig.s11, sig.s21, sig.s22);
    let (rpp, tp, rp) = (pump.s11, pump.s21, pump.s22);
    let one = Complex::new(T::one(), T::zero());
    let two = Complex::new(real::<T>(2.0), T::zero());
    let three = Complex::new(real::<T>(3.0), T::zero());

    let den = three - (rs + rp) - rs * rp;
    if den.norm() < real::<T>(1e-12) || !finite(den) {
        return Err(Error::ComposeDegenerate);
    }

    let s31 = two * (one - rp) * ts / den;
    let s32 = -two * (one - rs) * tp / den;
    let s21 = two * ts * tp / den;
    let s33 = (one + (rs + rp) - three * rs * rp) / den;
    let s11 = rps + ts * ts * (one + rp) / den;
    let s22 = rpp + tp * tp * (one + rs) / den;

    Ok(ThreePort {
        m: [[s11, s21, s31], [s21, s22, s32], [s31, s32, s33]],
        z0,
    })
}

/// The dipole-side embedding: both coupling networks plus the shared
/// reference impedance. Immutable and cheap to evaluate anywhere on the
/// Laplace plane.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding<T> {
    pub signal: TwoPortResponse<T>,
    pub pump: TwoPortResponse<T>,
    pub z0: T,
}

impl<T: Scalar> Embedding<T> {
    pub fn new(signal: TwoPortResponse<T>, pump: TwoPortResponse<T>, z0: T) -> Self {
        Self { signal, pump, z0 }
    }

    pub fn three_port(&self, s: ComplexFrequency<T>) -> Result<ThreePort<T>> {
        let sig = self.signal.s_matrix(s)?;
        let pump = self.pump.s_matrix(s)?;
        compose_three_port(&sig, &pump, self.z0)
    }

    /// Output impedance toward the signal port (outer port matched).
    pub fn z_signal(&self, s: ComplexFrequency<T>) -> Result<Complex<T>> {
        self.signal.output_impedance(s)
    }

    /// Output impedance toward the pump port.
    pub fn z_pump(&self, s: ComplexFrequency<T>) -> Result<Complex<T>> {
        self.pump.output_impedance(s)
    }

    /// Thevenin impedance as the series sum of the two output impedances.
    pub fn zth(&self, s: ComplexFrequency<T>) -> Result<Complex<T>> {
        Ok(self.z_signal(s)? + self.z_pump(s)?)
    }
}

/// Thevenin impedance from the composed `S33`, `Z0 (1 + S33)/(1 - S33)`.
pub fn thevenin_from_s33<T: Scalar>(s33: Complex<T>, z0: T) -> Complex<T> {
    let one = Complex::new(T::one(), T::zero());
    (one + s33) / (one - s33) * z0
}

/// Thevenin impedance as the series sum of the per-side output impedances.
pub fn thevenin_from_outputs<T: Scalar>(z_sig: Complex<T>, z_pump: Complex<T>) -> Complex<T> {
    z_sig + z_pump
}

/// Linear response of the loaded dipole port to a unit incident wave on one
/// external port.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipoleWaveResponse<T> {
    /// Outgoing port-3 wave per unit incident wave, `S3d / (1 - Gamma3 S33)`.
    pub vout3_over_vin: Complex<T>,
    /// Dipole voltage per unit incident wave, `(1 + Gamma3) * vout3`.
    pub vj_over_vin: Complex<T>,
    /// `|1 - Gamma3 S33|`: small values mean the loaded loop is near
    /// oscillation and the response diverges.
    pub loop_residual: T,
}

/// Response at the dipole port when port 3 is terminated by a load with
/// reflection `gamma3` and one external port (1 = signal, 2 = pump) is
/// driven.
pub fn dipole_wave_response<T: Scalar>(
    s3: &ThreePort<T>,
    gamma3: Complex<T>,
    drive_port: usize,
) -> Result<DipoleWaveResponse<T>> {
    assert!(drive_port == 1 || drive_port == 2, "drive port must be 1 or 2");
    let one = Complex::new(T::one(), T::zero());
    let den = one - gamma3 * s3.s33();
    let loop_residual = den.norm();
    if loop_residual <= real::<T>(1e-12) {
        return Err(Error::ComposeDegenerate);
    }
    let vout3 = s3.s(3, drive_port) / den;
    Ok(DipoleWaveResponse {
        vout3_over_vin: vout3,
        vj_over_vin: (one + gamma3) * vout3,
        loop_residual,
    })
}
