//! The Josephson dipole: linear inductance and third-order coefficient,
//! including the SNAIL-array provider.
//!
//! The dipole's current-phase relation is truncated at third order,
//! `I = (phi0/L_J) (phi + (c3/2) phi^2)`, with the linear coefficient
//! absorbed into `L_J` so that `L_J` is the exact inverse linear response at
//! the working flux.

use crate::error::{Error, Result};
use crate::scalar::{real, Scalar};

/// Reduced flux quantum in Wb/rad.
pub fn phi0<T: Scalar>() -> T {
    real(crate::PHI0_WB_PER_RAD)
}

/// Linearized Josephson dipole at a fixed flux bias.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JosephsonDipole<T> {
    /// Linear inductance in henries.
    pub l_j: T,
    /// Third-order coefficient relative to the absorbed linear term.
    pub c3: T,
    /// Reduced flux quantum in Wb/rad.
    pub phi0: T,
}

impl<T: Scalar> JosephsonDipole<T> {
    pub fn new(l_j: T, c3: T) -> Result<Self> {
        Self::with_phi0(l_j, c3, phi0())
    }

    pub fn with_phi0(l_j: T, c3: T, phi0: T) -> Result<Self> {
        if !(l_j > T::zero()) || !l_j.is_finite() {
            return Err(Error::InvalidElement {
                detail: format!("dipole inductance must be positive, got {l_j}"),
            });
        }
        if !(c3.abs() < T::one()) {
            return Err(Error::InvalidElement {
                detail: format!("dipole |c3| must be below 1, got {c3}"),
            });
        }
        Ok(Self { l_j, c3, phi0 })
    }
}

/// Series array of SNAIL loops biased by a common external flux.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnailArrayParams<T> {
    /// Loops in series.
    pub m: u32,
    /// Large junctions per loop.
    pub n: u32,
    /// Large-junction critical current in amperes.
    pub ic_large: T,
    /// Small-junction critical current in amperes.
    pub ic_small: T,
    /// External flux in units of the flux quantum, interpreted modulo 1.
    pub phi_ext: T,
}

impl<T: Scalar> SnailArrayParams<T> {
    /// Junction asymmetry `Ic_small / Ic_large`.
    pub fn alpha(&self) -> T {
        self.ic_small / self.ic_large
    }

    pub fn with_flux(&self, phi_ext: T) -> Self {
        Self { phi_ext, ..*self }
    }
}

/// Single-loop potential derivative and higher derivatives, in units of the
/// large-junction Josephson energy. `u(phi) = -alpha cos(phi)
/// - n cos((phi - 2 pi phi_ext)/n)`.
struct LoopPotential<T> {
    alpha: T,
    n: T,
    offset: T,
}

impl<T: Scalar> LoopPotential<T> {
    fn new(alpha: T, n: u32, phi_ext: T) -> Self {
        Self { alpha, n: real(n as f64), offset: T::TAU() * phi_ext }
    }

    fn d1(&self, phi: T) -> T {
        self.alpha * phi.sin() + ((phi - self.offset) / self.n).sin()
    }

    fn d2(&self, phi: T) -> T {
        self.alpha * phi.cos() + ((phi - self.offset) / self.n).cos() / self.n
    }

    fn d3(&self, phi: T) -> T {
        -self.alpha * phi.sin() - ((phi - self.offset) / self.n).sin() / (self.n * self.n)
    }
}

/// Phase at the single-loop potential minimum, by bisection on the first
/// derivative over the principal branch around `2 pi phi_ext`.
fn loop_minimum<T: Scalar>(pot: &LoopPotential<T>) -> T {
    let mut lo = pot.offset - T::PI();
    let mut hi = pot.offset + T::PI();
    // d1(offset -/+ pi) = -/+ sin(pi/n) + alpha sin(offset -/+ pi); the stub
    // term dominates for alpha < 1/n, so the bracket is guaranteed.
    let tol = real::<T>(1e-12);
    while hi - lo > tol {
        let mid = (lo + hi) * real::<T>(0.5);
        if pot.d1(mid) > T::zero() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo + hi) * real::<T>(0.5)
}

/// Expands the array potential at its minimum and returns the equivalent
/// dipole. Phase divides equally across the `M` identical loops, so the
/// array scales as `L_J -> M L_J` and `c3 -> c3 / M`.
pub fn snail_coefficients<T: Scalar>(p: &SnailArrayParams<T>) -> Result<JosephsonDipole<T>> {
    assert!(p.m >= 1, "array needs at least one loop");
    assert!(p.n >= 1, "loop needs at least one large junction");
    let alpha = p.alpha();
    let n_inv = real::<T>(1.0 / p.n as f64);
    if !(alpha > T::zero()) || alpha >= n_inv {
        return Err(Error::HystereticRegime {
            alpha: alpha.to_f64().unwrap_or(f64::NAN),
            n: p.n,
        });
    }
    let phi_ext = p.phi_ext - p.phi_ext.floor();
    let pot = LoopPotential::new(alpha, p.n, phi_ext);
    let phi_min = loop_minimum(&pot);
    let c2 = pot.d2(phi_min);
    if !(c2 > T::zero()) {
        return Err(Error::HystereticRegime {
            alpha: alpha.to_f64().unwrap_or(f64::NAN),
            n: p.n,
        });
    }
    // I(phi_min + d) = Ic (c2 d + u'''/2 d^2 + ...); normalizing the linear
    // term into L_J leaves c3 = u'''/c2.
    let c3_loop = pot.d3(phi_min) / c2;
    let l_loop = phi0::<T>() / (p.ic_large * c2);
    let m = real::<T>(p.m as f64);
    JosephsonDipole::with_phi0(l_loop * m, c3_loop / m, phi0())
}
