//! Design file schema (version "1"): networks, dipole, targets and sweep
//! defaults. Unknown keys are rejected everywhere; frequencies are plain Hz.

use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use threewave::dipole::SnailArrayParams;
use threewave::synthesis::{
    Design, DesignTargets, DipoleSpec, FilterPrototype, NetworkSpec, ObjectiveWeights,
    PrototypeTopology,
};
use threewave::Ladder64;

use crate::CliError;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignFile {
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z0_ohm: Option<f64>,
    pub signal: RawNetwork,
    pub pump: RawNetwork,
    pub dipole: RawDipole,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub targets: Option<RawTargets>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweeps: Option<RawSweeps>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawNetwork {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ladder: Option<Ladder64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prototype: Option<RawPrototype>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPrototype {
    pub topology: String,
    pub params: Vec<f64>,
    pub bounds: Vec<[f64; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDipole {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub explicit: Option<RawExplicitDipole>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub snail: Option<RawSnail>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawExplicitDipole {
    pub lj_henries: f64,
    pub c3: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSnail {
    pub m: u32,
    pub n: u32,
    pub ic_large_amp: f64,
    pub ic_small_amp: f64,
    pub phi_ext: f64,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RawTargets {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f0_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa0_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa_pump_max_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signal_band_hz: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pump_band_hz: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pump_stopband_rejection_db: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signal_rejection_db: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta_pc_floor: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode_window_hz: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<RawWeights>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RawWeights {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa_pump: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rejection: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta_pc: Option<f64>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RawSweeps {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flux_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gain_span_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gain_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta_nl: Option<f64>,
}

fn schema_err(detail: impl Into<String>) -> CliError {
    CliError::schema(detail.into())
}

impl DesignFile {
    pub fn load(path: &str) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| schema_err(format!("cannot read {path}: {e}")))?;
        let file: DesignFile =
            serde_json::from_str(&text).map_err(|e| schema_err(format!("{path}: {e}")))?;
        if file.version != "1" {
            return Err(schema_err(format!(
                "unsupported design file version {:?} (expected \"1\")",
                file.version
            )));
        }
        file.validate()?;
        Ok(file)
    }

    fn validate(&self) -> Result<(), CliError> {
        for (name, net) in [("signal", &self.signal), ("pump", &self.pump)] {
            match (&net.ladder, &net.prototype) {
                (Some(_), None) | (None, Some(_)) => {}
                _ => {
                    return Err(schema_err(format!(
                        "{name} network needs exactly one of \"ladder\" or \"prototype\""
                    )))
                }
            }
        }
        match (&self.dipole.explicit, &self.dipole.snail) {
            (Some(_), None) | (None, Some(_)) => {}
            _ => {
                return Err(schema_err(
                    "dipole needs exactly one of \"explicit\" or \"snail\"",
                ))
            }
        }
        Ok(())
    }

    pub fn z0(&self) -> f64 {
        self.z0_ohm.unwrap_or(threewave::DEFAULT_Z0)
    }

    pub fn design(&self) -> Result<Design<f64>, CliError> {
        Ok(Design {
            signal: network_spec(&self.signal)?,
            pump: network_spec(&self.pump)?,
            dipole: dipole_spec(&self.dipole)?,
            z0: self.z0(),
        })
    }

    pub fn targets(&self) -> Result<DesignTargets<f64>, CliError> {
        let mut t = DesignTargets::default();
        let Some(raw) = &self.targets else { return Ok(t) };
        if let Some(f0) = raw.f0_hz {
            t.omega0 = TAU * f0;
        }
        if let Some(k) = raw.kappa0_hz {
            t.kappa0 = TAU * k;
        }
        if let Some(k) = raw.kappa_pump_max_hz {
            t.kappa_pump_max = TAU * k;
        }
        if let Some([lo, hi]) = raw.signal_band_hz {
            t.signal_band_hz = band(lo, hi, "signal_band_hz")?;
        }
        if let Some([lo, hi]) = raw.pump_band_hz {
            t.pump_band_hz = band(lo, hi, "pump_band_hz")?;
        }
        if let Some(r) = raw.pump_stopband_rejection_db {
            t.pump_stopband_rejection_db = r;
        }
        if let Some(r) = raw.signal_rejection_db {
            t.signal_rejection_db = r;
        }
        if let Some(f) = raw.eta_pc_floor {
            t.eta_pc_floor = f;
        }
        if let Some([lo, hi]) = raw.mode_window_hz {
            t.mode_window_hz = band(lo, hi, "mode_window_hz")?;
        }
        if let Some(w) = &raw.weights {
            let d = ObjectiveWeights::default();
            t.weights = ObjectiveWeights {
                omega: w.omega.unwrap_or(d.omega),
                kappa: w.kappa.unwrap_or(d.kappa),
                kappa_pump: w.kappa_pump.unwrap_or(d.kappa_pump),
                rejection: w.rejection.unwrap_or(d.rejection),
                eta_pc: w.eta_pc.unwrap_or(d.eta_pc),
            };
        }
        Ok(t)
    }

    /// Replaces prototype parameter vectors with optimized ones, leaving
    /// everything else byte-identical.
    pub fn with_optimized(
        &self,
        signal: &FilterPrototype<f64>,
        pump: &FilterPrototype<f64>,
    ) -> Result<DesignFile, CliError> {
        let mut text = serde_json::to_value(self).map_err(|e| schema_err(e.to_string()))?;
        for (key, proto) in [("signal", signal), ("pump", pump)] {
            let slot = text
                .get_mut(key)
                .and_then(|n| n.get_mut("prototype"))
                .and_then(|p| p.get_mut("params"))
                .ok_or_else(|| schema_err(format!("{key} network is not a prototype")))?;
            *slot = serde_json::to_value(&proto.params).map_err(|e| schema_err(e.to_string()))?;
        }
        serde_json::from_value(text).map_err(|e| schema_err(e.to_string()))
    }
}

fn band(lo: f64, hi: f64, what: &str) -> Result<(f64, f64), CliError> {
    if lo.is_finite() && hi.is_finite() && 0.0 < lo && lo < hi {
        Ok((lo, hi))
    } else {
        Err(schema_err(format!("{what} must satisfy 0 < lo < hi")))
    }
}

fn network_spec(raw: &RawNetwork) -> Result<NetworkSpec<f64>, CliError> {
    if let Some(ladder) = &raw.ladder {
        return Ok(NetworkSpec::Ladder(ladder.clone()));
    }
    let proto = raw.prototype.as_ref().expect("validated");
    let topology = PrototypeTopology::from_id(&proto.topology)
        .map_err(|e| schema_err(e.to_string()))?;
    let bounds = proto.bounds.iter().map(|b| (b[0], b[1])).collect();
    let fp = FilterPrototype::new(topology, proto.params.clone(), bounds)
        .map_err(|e| schema_err(e.to_string()))?;
    Ok(NetworkSpec::Prototype(fp))
}

fn dipole_spec(raw: &RawDipole) -> Result<DipoleSpec<f64>, CliError> {
    if let Some(e) = &raw.explicit {
        if !(e.lj_henries > 0.0 && e.lj_henries.is_finite()) || !(e.c3.abs() < 1.0) {
            return Err(schema_err("explicit dipole needs lj_henries > 0 and |c3| < 1"));
        }
        return Ok(DipoleSpec::Explicit { l_j: e.lj_henries, c3: e.c3 });
    }
    let s = raw.snail.as_ref().expect("validated");
    if s.m < 1 || s.n < 1 || !(s.ic_large_amp > 0.0) || !(s.ic_small_amp > 0.0) {
        return Err(schema_err("snail needs m >= 1, n >= 1 and positive junction currents"));
    }
    Ok(DipoleSpec::Snail(SnailArrayParams {
        m: s.m,
        n: s.n,
        ic_large: s.ic_large_amp,
        ic_small: s.ic_small_amp,
        phi_ext: s.phi_ext,
    }))
}
