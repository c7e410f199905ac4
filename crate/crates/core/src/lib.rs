//! Frequency-domain analysis and synthesis for three-wave-mixing Josephson
//! parametric amplifiers.
//!
//! The toolkit composes two coupling networks around a pumped Josephson
//! dipole, locates the resonant modes of the embedding, evaluates gain,
//! leakage and pump-coupling figures of merit, and optimizes filter
//! prototypes against design targets.
//!
//! Layout:
//! * [`element`], [`twoport`], [`mna`] — lumped/line two-ports, ABCD/S
//!   responses at real or complex frequency, and the nodal-analysis oracle;
//! * [`threeport`] — series-dipole composition of the signal- and pump-side
//!   networks and the Thevenin impedance seen by the dipole;
//! * [`resonance`] — complex-pole mode search, Fourier-domain linewidth
//!   approximation, participation ratios, Foster fits, per-port rates;
//! * [`dipole`], [`pump`] — SNAIL-array dipole model and the stiff-pump
//!   linearized response: gain, transmission, coupling efficiency, leakage;
//! * [`synthesis`] — filter prototypes, the design objective, and the
//!   derivative-free optimizer.
//!
//! All numeric code is generic over the real scalar type via [`Scalar`];
//! the `f64` instantiation is the supported precision for design work and
//! is what the concrete aliases below refer to.

pub mod dipole;
pub mod element;
pub mod error;
pub mod mna;
pub mod pump;
pub mod resonance;
pub mod scalar;
pub mod simplex;
pub mod synthesis;
pub mod threeport;
pub mod twoport;

pub use element::{ComplexFrequency, Element, Ladder};
pub use error::{Error, Result};
pub use scalar::Scalar;
pub use twoport::{Abcd, Sparams, TwoPortResponse};

/// Default reference impedance in ohms.
pub const DEFAULT_Z0: f64 = 50.0;

/// Reduced flux quantum in Wb/rad.
pub const PHI0_WB_PER_RAD: f64 = 2.067833848e-15 / std::f64::consts::TAU;

/// Complex double, the working precision of the toolkit.
pub type C64 = num_complex::Complex<f64>;

pub type Element64 = element::Element<f64>;
pub type Ladder64 = element::Ladder<f64>;
pub type TwoPortResponse64 = twoport::TwoPortResponse<f64>;
pub type ThreePort64 = threeport::ThreePort<f64>;
pub type ModeSummary64 = resonance::ModeSummary<f64>;
pub type JosephsonDipole64 = dipole::JosephsonDipole<f64>;
