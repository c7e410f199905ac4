//! Error types shared across the toolkit.

use std::fmt;

/// Errors produced by the circuit, resonance and synthesis layers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An element value violates its physical range (non-positive or non-finite).
    InvalidElement { detail: String },
    /// An element response is singular exactly at the requested frequency.
    ElementSingularity { kind: &'static str },
    /// ABCD <-> S conversion denominator vanished.
    ConversionDegenerate,
    /// Nodal matrix is singular or near-singular.
    IllConditioned { pivot: f64 },
    /// The series-loop composition denominator 3 - (r_s + r_p) - r_s*r_p vanished.
    ComposeDegenerate,
    /// Complex Newton polishing failed to converge within the iteration cap.
    NewtonDidNotConverge { best_residual: f64 },
    /// The coupled Fourier-domain mode equations did not reach the fixed point;
    /// the exact complex-root search is the fallback.
    FourierNotConverged { omega_rel_step: f64, kappa_rel_step: f64 },
    /// 1 + Im Z'/L_J <= 0: the local derivative is incompatible with a physical mode.
    NonphysicalDerivative { im_zprime_over_lj: f64 },
    /// Modes too close for an independent single-pole fit.
    OverlappingModes { separation_over_linewidth: f64 },
    /// Output impedance real part significantly below zero.
    NonPassiveRealPart { re_ohms: f64 },
    /// SNAIL loop potential has multiple minima (alpha >= 1/n).
    HystereticRegime { alpha: f64, n: u32 },
    /// The idler-branch denominator vanished (idler exactly on a lossless pole).
    IdlerSingularity,
    /// No pump amplitude below the validity bound reaches the requested gain.
    UnreachableGain { gain_at_bound: f64 },
    /// No resonant mode found in the requested window.
    NoMode,
    /// Malformed netlist or design fragment.
    Schema { detail: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidElement { detail } => write!(f, "invalid element: {detail}"),
            Self::ElementSingularity { kind } => {
                write!(f, "element response singular at this frequency: {kind}")
            }
            Self::ConversionDegenerate => write!(f, "degenerate ABCD/S conversion denominator"),
            Self::IllConditioned { pivot } => {
                write!(f, "ill-conditioned nodal matrix (pivot {pivot:e})")
            }
            Self::ComposeDegenerate => write!(f, "degenerate two-network composition"),
            Self::NewtonDidNotConverge { best_residual } => {
                write!(f, "complex Newton did not converge (best residual {best_residual:e})")
            }
            Self::FourierNotConverged { omega_rel_step, kappa_rel_step } => write!(
                f,
                "Fourier mode iteration stalled (steps {omega_rel_step:e}, {kappa_rel_step:e}); \
                 use the exact complex-root search"
            ),
            Self::NonphysicalDerivative { im_zprime_over_lj } => write!(
                f,
                "nonphysical impedance derivative (1 + Im Z'/L_J = {:e})",
                1.0 + im_zprime_over_lj
            ),
            Self::OverlappingModes { separation_over_linewidth } => write!(
                f,
                "modes overlap (separation/linewidth {separation_over_linewidth:.2})"
            ),
            Self::NonPassiveRealPart { re_ohms } => {
                write!(f, "negative port resistance {re_ohms:e} ohm")
            }
            Self::HystereticRegime { alpha, n } => {
                write!(f, "hysteretic SNAIL regime: alpha {alpha} >= 1/{n}")
            }
            Self::IdlerSingularity => write!(f, "idler-branch denominator vanished"),
            Self::UnreachableGain { gain_at_bound } => {
                write!(f, "gain target unreachable (gain {gain_at_bound:.3} at pump bound)")
            }
            Self::NoMode => write!(f, "no resonant mode in window"),
            Self::Schema { detail } => write!(f, "schema error: {detail}"),
        }
    }
}

impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<V> = std::result::Result<V, Error>;
