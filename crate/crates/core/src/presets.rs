//! Named coils and circuits used throughout the examples and the CLI.
//!
//! All receive coils have four windings at 2 mm pitch, with the outer
//! winding 1 mm inside the nominal diameter. The transmit coil is the
//! two-winding circle approximation of the 146 × 164 mm drone frame.

use crate::coil::{PlanarCoil, WireSpec};
use crate::error::{Error, Result};

fn mm(v: f64) -> f64 {
    v / 1000.0
}

/// Names accepted by [`coil`].
pub const COIL_NAMES: &[&str] = &["default-uav", "d75w4", "d100w4", "d125w4", "d150w4"];

/// Transmit coil on the drone: radii 76.5 and 74.5 mm.
pub fn default_uav() -> PlanarCoil {
    PlanarCoil::new(
        "default-uav",
        vec![mm(76.5), mm(74.5)],
        WireSpec::calibrated(),
    )
    .expect("preset radii are valid")
}

/// Receive coil of nominal diameter `diameter_mm` with `windings` turns.
pub fn receive_coil(diameter_mm: f64, windings: usize) -> Result<PlanarCoil> {
    let outer_mm = diameter_mm / 2.0 - 1.0;
    let radii = (0..windings)
        .map(|i| mm(outer_mm - 2.0 * i as f64))
        .collect();
    PlanarCoil::new(
        format!("d{diameter_mm}w{windings}"),
        radii,
        WireSpec::calibrated(),
    )
}

pub fn coil(name: &str) -> Result<PlanarCoil> {
    match name {
        "default-uav" => Ok(default_uav()),
        "d75w4" => receive_coil(75.0, 4),
        "d100w4" => receive_coil(100.0, 4),
        "d125w4" => receive_coil(125.0, 4),
        "d150w4" => receive_coil(150.0, 4),
        _ => Err(Error::Invalid(format!(
            "unknown coil preset '{name}' (known: {})",
            COIL_NAMES.join(", ")
        ))),
    }
}

/// Series resistances measured on the built coils.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircuitEsr {
    pub r1: f64,
    pub r2: f64,
    pub rs: f64,
}

/// 0.1 Ω transmit ESR, 1 Ω receive ESR, ideal source.
pub const MEASURED_ESR: CircuitEsr = CircuitEsr {
    r1: 0.1,
    r2: 1.0,
    rs: 0.0,
};

/// Measured coil reactances at 6.78 MHz, Ω.
pub const MEASURED_TX_REACTANCE: f64 = 84.0;
pub const MEASURED_RX_REACTANCE: f64 = 143.0;
