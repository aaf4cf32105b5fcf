//! Optional JSON config with `coils`, `circuits` and `scenarios` sections.
//!
//! Names defined here shadow the built-in presets of the same name.

use std::collections::BTreeMap;
use std::path::Path;

use dronecharge_core::coil::{PlanarCoil, WireSpec, COPPER_CONDUCTIVITY};
use dronecharge_core::gwp::{self, ServicingScenario};
use dronecharge_core::presets::{self, MEASURED_ESR, MEASURED_RX_REACTANCE, MEASURED_TX_REACTANCE};
use serde::Deserialize;

use crate::AppError;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    coils: BTreeMap<String, CoilDef>,
    #[serde(default)]
    circuits: BTreeMap<String, CircuitDef>,
    #[serde(default)]
    scenarios: BTreeMap<String, serde_json::Value>,
}

/// Either explicit `radii_mm` or `outer_radius_mm` + `windings` + `pitch_mm`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoilDef {
    radii_mm: Option<Vec<f64>>,
    outer_radius_mm: Option<f64>,
    windings: Option<usize>,
    pitch_mm: Option<f64>,
    wire_radius_mm: Option<f64>,
    conductivity_s_per_m: Option<f64>,
    relative_permeability: Option<f64>,
}

/// Every field is optional; unset fields fall back to the measured preset.
#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitDef {
    pub l1_uh: Option<f64>,
    pub l2_uh: Option<f64>,
    pub tx_reactance_ohm: Option<f64>,
    pub rx_reactance_ohm: Option<f64>,
    pub r1_ohm: Option<f64>,
    pub r2_ohm: Option<f64>,
    pub rs_ohm: Option<f64>,
    pub k: Option<f64>,
    pub load_ohm: Option<f64>,
    pub freq_mhz: Option<f64>,
}

/// Measured coil pair at 100 mm.
pub const MEASURED_CIRCUIT: CircuitDef = CircuitDef {
    l1_uh: None,
    l2_uh: None,
    tx_reactance_ohm: Some(MEASURED_TX_REACTANCE),
    rx_reactance_ohm: Some(MEASURED_RX_REACTANCE),
    r1_ohm: Some(MEASURED_ESR.r1),
    r2_ohm: Some(MEASURED_ESR.r2),
    rs_ohm: Some(MEASURED_ESR.rs),
    k: Some(0.042),
    load_ohm: None,
    freq_mhz: Some(6.78),
};

impl Config {
    pub fn load(path: &Path) -> Result<Self, AppError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| AppError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| AppError::Usage(format!("invalid config {}: {e}", path.display())))
    }

    pub fn coil(&self, name: &str) -> Result<PlanarCoil, AppError> {
        let Some(def) = self.coils.get(name) else {
            return presets::coil(name).map_err(|e| AppError::Usage(e.to_string()));
        };
        let base = WireSpec::calibrated();
        let wire = WireSpec::new(
            def.wire_radius_mm.map_or(base.radius, |r| r / 1000.0),
            def.conductivity_s_per_m.unwrap_or(COPPER_CONDUCTIVITY),
            def.relative_permeability
                .unwrap_or(base.relative_permeability),
        )?;
        match (
            &def.radii_mm,
            def.outer_radius_mm,
            def.windings,
            def.pitch_mm,
        ) {
            (Some(radii), None, None, None) => Ok(PlanarCoil::from_unordered(
                name,
                radii.iter().map(|r| r / 1000.0).collect(),
                wire,
            )?),
            (None, Some(outer), Some(n), Some(pitch)) => {
                let radii = (0..n)
                    .map(|i| (outer - pitch * i as f64) / 1000.0)
                    .collect();
                Ok(PlanarCoil::new(name, radii, wire)?)
            }
            _ => Err(AppError::Usage(format!(
                "coil '{name}' needs either radii_mm or outer_radius_mm, windings and pitch_mm"
            ))),
        }
    }

    pub fn circuit(&self, name: &str) -> Result<CircuitDef, AppError> {
        match (self.circuits.get(name), name) {
            (Some(def), _) => Ok(*def),
            (None, "measured") => Ok(MEASURED_CIRCUIT),
            _ => Err(AppError::Usage(format!(
                "unknown circuit '{name}' (built in: measured)"
            ))),
        }
    }

    pub fn scenario(&self, name: &str) -> Result<ServicingScenario, AppError> {
        let Some(value) = self.scenarios.get(name) else {
            return gwp::scenario(name).map_err(|e| AppError::Usage(e.to_string()));
        };
        let mut value = value.clone();
        if let Some(obj) = value.as_object_mut() {
            obj.entry("label").or_insert_with(|| name.into());
        }
        serde_json::from_value(value)
            .map_err(|e| AppError::Usage(format!("scenario '{name}': {e}")))
    }
}
