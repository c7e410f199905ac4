//! Ladder elements and the netlist fragment schema.
//!
//! A `Ladder` is an ordered chain of lumped elements and ideal line sections,
//! listed from the outer port toward the dipole side. The JSON form uses
//! `{"elements":[{"kind":"series_l","henries":1e-9}, ...]}` with unknown keys
//! rejected.

use num_complex::Complex;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{real, Scalar};

/// One ladder element. Series elements sit in the through path, shunt
/// elements and stubs hang from the through path to ground.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Element<T> {
    SeriesInductor { henries: T },
    SeriesCapacitor { farads: T },
    SeriesResistor { ohms: T },
    ShuntInductor { henries: T },
    ShuntCapacitor { farads: T },
    ShuntResistor { ohms: T },
    /// Lossless dispersionless line section of characteristic impedance
    /// `z0` and one-way delay `delay` seconds.
    TransmissionLine { z0: T, delay: T },
    /// Open-circuited shunt stub.
    OpenStub { z0: T, delay: T },
    /// Short-circuited shunt stub.
    ShortStub { z0: T, delay: T },
}

impl<T: Scalar> Element<T> {
    /// Short tag used in diagnostics and the JSON `kind` field.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::SeriesInductor { .. } => "series_l",
            Self::SeriesCapacitor { .. } => "series_c",
            Self::SeriesResistor { .. } => "series_r",
            Self::ShuntInductor { .. } => "shunt_l",
            Self::ShuntCapacitor { .. } => "shunt_c",
            Self::ShuntResistor { .. } => "shunt_r",
            Self::TransmissionLine { .. } => "tline",
            Self::OpenStub { .. } => "open_stub",
            Self::ShortStub { .. } => "short_stub",
        }
    }

    /// True for elements whose two-port is a pure series impedance.
    pub fn is_series(&self) -> bool {
        matches!(
            self,
            Self::SeriesInductor { .. } | Self::SeriesCapacitor { .. } | Self::SeriesResistor { .. }
        )
    }

    /// Validates value ranges: strictly positive finite values, delay >= 0.
    pub fn validate(&self) -> Result<()> {
        let positive = |v: T, what: &str| -> Result<()> {
            if v > T::zero() && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidElement {
                    detail: format!("{} must be positive and finite, got {}", what, v),
                })
            }
        };
        match *self {
            Self::SeriesInductor { henries } | Self::ShuntInductor { henries } => {
                positive(henries, "inductance")
            }
            Self::SeriesCapacitor { farads } | Self::ShuntCapacitor { farads } => {
                positive(farads, "capacitance")
            }
            Self::SeriesResistor { ohms } | Self::ShuntResistor { ohms } => {
                positive(ohms, "resistance")
            }
            Self::TransmissionLine { z0, delay }
            | Self::OpenStub { z0, delay }
            | Self::ShortStub { z0, delay } => {
                positive(z0, "characteristic impedance")?;
                if delay >= T::zero() && delay.is_finite() {
                    Ok(())
                } else {
                    Err(Error::InvalidElement {
                        detail: format!("delay must be >= 0 and finite, got {}", delay),
                    })
                }
            }
        }
    }

    /// Series-branch impedance at complex frequency `s`, if the element is a
    /// series one.
    pub(crate) fn series_impedance(&self, s: Complex<T>) -> Option<Complex<T>> {
        match *self {
            Self::SeriesInductor { henries } => Some(s * henries),
            Self::SeriesCapacitor { farads } => Some((s * farads).finv()),
            Self::SeriesResistor { ohms } => Some(Complex::new(ohms, T::zero())),
            _ => None,
        }
    }

    /// Shunt-branch admittance at complex frequency `s`, if the element is a
    /// shunt one (stubs included).
    pub(crate) fn shunt_admittance(&self, s: Complex<T>) -> Option<Complex<T>> {
        match *self {
            Self::ShuntInductor { henries } => Some((s * henries).finv()),
            Self::ShuntCapacitor { farads } => Some(s * farads),
            Self::ShuntResistor { ohms } => Some(Complex::new(ohms.recip(), T::zero())),
            Self::OpenStub { z0, delay } => Some((s * delay).tanh() / z0),
            Self::ShortStub { z0, delay } => Some(((s * delay).tanh() * z0).finv()),
            _ => None,
        }
    }
}

/// Ordered element chain from the outer port toward the dipole side.
#[derive(Debug, Clone, PartialEq)]
pub struct Ladder<T> {
    elements: Vec<Element<T>>,
}

impl<T: Scalar> Ladder<T> {
    /// Builds a ladder, rejecting empty chains and out-of-range values.
    pub fn new(elements: Vec<Element<T>>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidElement { detail: "ladder must be non-empty".into() });
        }
        for e in &elements {
            e.validate()?;
        }
        Ok(Self { elements })
    }

    pub fn elements(&self) -> &[Element<T>] {
        &self.elements
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema { detail: e.to_string() })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("ladder serialization")
    }
}

/// Laplace frequency split into decay and oscillation parts:
/// `s = sigma + j*omega` with `sigma = -kappa/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexFrequency<T> {
    /// Decay part in 1/s; equals -kappa/2 for a mode.
    pub sigma: T,
    /// Oscillation part in rad/s.
    pub omega: T,
}

impl<T: Scalar> ComplexFrequency<T> {
    pub fn new(sigma: T, omega: T) -> Self {
        Self { sigma, omega }
    }

    /// Pure oscillation on the Fourier axis.
    pub fn real_freq(omega: T) -> Self {
        Self { sigma: T::zero(), omega }
    }

    pub fn as_complex(self) -> Complex<T> {
        Complex::new(self.sigma, self.omega)
    }

    pub fn from_complex(s: Complex<T>) -> Self {
        Self { sigma: s.re, omega: s.im }
    }
}

// -- JSON schema ------------------------------------------------------------
//
// Internally-tagged serde enums do not reject unknown keys, so the element
// codec goes through an explicit raw struct.

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawElement {
    kind: String,
    henries: Option<f64>,
    farads: Option<f64>,
    ohms: Option<f64>,
    z0_ohm: Option<f64>,
    delay_s: Option<f64>,
}

#[derive(Serialize)]
struct RawElementOut<'a> {
    kind: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    henries: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    farads: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ohms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    z0_ohm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delay_s: Option<f64>,
}

fn take_field<E: serde::de::Error>(
    field: Option<f64>,
    name: &str,
    kind: &str,
) -> std::result::Result<f64, E> {
    field.ok_or_else(|| E::custom(format!("element kind {kind:?} requires field {name:?}")))
}

fn forbid<E: serde::de::Error>(
    fields: &[(&str, Option<f64>)],
    kind: &str,
) -> std::result::Result<(), E> {
    for (name, value) in fields {
        if value.is_some() {
            return Err(E::custom(format!("element kind {kind:?} does not take field {name:?}")));
        }
    }
    Ok(())
}

impl<'de, T: Scalar> Deserialize<'de> for Element<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawElement::deserialize(d)?;
        let RawElement { kind, henries, farads, ohms, z0_ohm, delay_s } = raw;
        let mut value_fields =
            vec![("henries", henries), ("farads", farads), ("ohms", ohms), ("z0_ohm", z0_ohm), ("delay_s", delay_s)];
        let retain = |keep: &[&str], fields: &mut Vec<(&str, Option<f64>)>| {
            fields.retain(|(name, _)| !keep.contains(name));
        };
        let element = match kind.as_str() {
            "series_l" | "shunt_l" => {
                let v = take_field::<D::Error>(henries, "henries", &kind)?;
                retain(&["henries"], &mut value_fields);
                forbid::<D::Error>(&value_fields, &kind)?;
                if kind == "series_l" {
                    Element::SeriesInductor { henries: real(v) }
                } else {
                    Element::ShuntInductor { henries: real(v) }
                }
            }
            "series_c" | "shunt_c" => {
                let v = take_field::<D::Error>(farads, "farads", &kind)?;
                retain(&["farads"], &mut value_fields);
                forbid::<D::Error>(&value_fields, &kind)?;
                if kind == "series_c" {
                    Element::SeriesCapacitor { farads: real(v) }
                } else {
                    Element::ShuntCapacitor { farads: real(v) }
                }
            }
            "series_r" | "shunt_r" => {
                let v = take_field::<D::Error>(ohms, "ohms", &kind)?;
                retain(&["ohms"], &mut value_fields);
                forbid::<D::Error>(&value_fields, &kind)?;
                if kind == "series_r" {
                    Element::SeriesResistor { ohms: real(v) }
                } else {
                    Element::ShuntResistor { ohms: real(v) }
                }
            }
            "tline" | "open_stub" | "short_stub" => {
                let z = take_field::<D::Error>(z0_ohm, "z0_ohm", &kind)?;
                let d = take_field::<D::Error>(delay_s, "delay_s", &kind)?;
                retain(&["z0_ohm", "delay_s"], &mut value_fields);
                forbid::<D::Error>(&value_fields, &kind)?;
                match kind.as_str() {
                    "tline" => Element::TransmissionLine { z0: real(z), delay: real(d) },
                    "open_stub" => Element::OpenStub { z0: real(z), delay: real(d) },
                    _ => Element::ShortStub { z0: real(z), delay: real(d) },
                }
            }
            other => return Err(D::Error::custom(format!("unknown element kind {other:?}"))),
        };
        element.validate().map_err(|e| D::Error::custom(e.to_string()))?;
        Ok(element)
    }
}

impl<T: Scalar> Serialize for Element<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let f = |v: T| v.to_f64().expect("scalar to f64");
        let mut out = RawElementOut {
            kind: self.kind(),
            henries: None,
            farads: None,
            ohms: None,
            z0_ohm: None,
            delay_s: None,
        };
        match *self {
            Self::SeriesInductor { henries } | Self::ShuntInductor { henries } => {
                out.henries = Some(f(henries));
            }
            Self::SeriesCapacitor { farads } | Self::ShuntCapacitor { farads } => {
                out.farads = Some(f(farads));
            }
            Self::SeriesResistor { ohms } | Self::ShuntResistor { ohms } => {
                out.ohms = Some(f(ohms));
            }
            Self::TransmissionLine { z0, delay }
            | Self::OpenStub { z0, delay }
            | Self::ShortStub { z0, delay } => {
                out.z0_ohm = Some(f(z0));
                out.delay_s = Some(f(delay));
            }
        }
        out.serialize(s)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLadder<T: Scalar> {
    #[serde(bound(deserialize = "T: Scalar", serialize = "T: Scalar"))]
    elements: Vec<Element<T>>,
}

impl<'de, T: Scalar> Deserialize<'de> for Ladder<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawLadder::<T>::deserialize(d)?;
        Ladder::new(raw.elements).map_err(|e| D::Error::custom(e.to_string()))
    }
}

impl<T: Scalar> Serialize for Ladder<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawLadder { elements: self.elements.clone() }.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_is_bit_exact() {
        let text = r#"{"elements":[{"kind":"series_l","henries":1e-9},
            {"kind":"tline","z0_ohm":50.0,"delay_s":5e-11},
            {"kind":"shunt_c","farads":0.31415926535897931e-12},
            {"kind":"open_stub","z0_ohm":32.7,"delay_s":2.5e-11}]}"#;
        let ladder: Ladder<f64> = Ladder::from_json_str(text).unwrap();
        let emitted = ladder.to_json_string();
        let reparsed: Ladder<f64> = Ladder::from_json_str(&emitted).unwrap();
        assert_eq!(ladder, reparsed);
        match (ladder.elements()[2], reparsed.elements()[2]) {
            (Element::ShuntCapacitor { farads: a }, Element::ShuntCapacitor { farads: b }) => {
                assert_eq!(a.to_bits(), b.to_bits());
            }
            _ => panic!("element kind changed in round trip"),
        }
    }

    #[test]
    fn unknown_keys_rejected() {
        let bad = r#"{"elements":[{"kind":"series_l","henries":1e-9,"color":"red"}]}"#;
        assert!(Ladder::<f64>::from_json_str(bad).is_err());
        let bad2 = r#"{"elements":[{"kind":"series_l","farads":1e-12}]}"#;
        assert!(Ladder::<f64>::from_json_str(bad2).is_err());
        let bad3 = r#"{"elements":[{"kind":"warp_coil","henries":1e-9}]}"#;
        assert!(Ladder::<f64>::from_json_str(bad3).is_err());
        let bad4 = r#"{"elements":[],"extra":1}"#;
        assert!(Ladder::<f64>::from_json_str(bad4).is_err());
    }

    #[test]
    fn value_ranges_enforced() {
        assert!(Ladder::<f64>::new(vec![]).is_err());
        assert!(Element::<f64>::SeriesInductor { henries: -1e-9 }.validate().is_err());
        assert!(Element::<f64>::ShuntCapacitor { farads: 0.0 }.validate().is_err());
        assert!(Element::<f64>::TransmissionLine { z0: 50.0, delay: -1e-12 }.validate().is_err());
        assert!(Element::<f64>::TransmissionLine { z0: 50.0, delay: 0.0 }.validate().is_ok());
    }
}
