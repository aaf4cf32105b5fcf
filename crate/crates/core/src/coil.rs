//! Planar coils approximated as concentric circular windings.
//!
//! Coil self-inductance is the sum of every winding's own inductance plus
//! the mutual inductance of every ordered pair of windings in the same
//! plane. Mutual terms use the closed-form coaxial-loop expression with
//! complete elliptic integrals.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::numerics::{elliptic_e, elliptic_k, find_crossing, Tolerance};

/// Vacuum permeability, 4π·10⁻⁷ H/m.
pub const MU_0: f64 = 4.0e-7 * PI;

/// Annealed copper, S/m.
pub const COPPER_CONDUCTIVITY: f64 = 5.8e7;

/// Default operating frequency (6.78 MHz ISM band).
pub const DEFAULT_FREQUENCY: f64 = 6.78e6;

/// Equivalent wire radius (m) for the concentric-circle coil models.
///
/// Fitted once so that the two-winding transmit coil (76.5/74.5 mm) has a
/// self-inductance of 1.587 µH at 6.78 MHz with copper conductivity; see
/// [`calibrate_wire_radius`]. With this radius the same model reproduces
/// the 100 mm receive-coil inductances for 2–5 windings.
pub const CALIBRATED_WIRE_RADIUS: f64 = 7.912_937_356_803_7e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WireSpec {
    /// Wire (or equivalent trace) radius, m.
    pub radius: f64,
    /// S/m.
    pub conductivity: f64,
    #[serde(default = "unit_permeability")]
    pub relative_permeability: f64,
}

fn unit_permeability() -> f64 {
    1.0
}

impl WireSpec {
    pub fn new(radius: f64, conductivity: f64, relative_permeability: f64) -> Result<Self> {
        let wire = Self {
            radius,
            conductivity,
            relative_permeability,
        };
        wire.validate()?;
        Ok(wire)
    }

    pub fn copper(radius: f64) -> Result<Self> {
        Self::new(radius, COPPER_CONDUCTIVITY, 1.0)
    }

    /// Copper at [`CALIBRATED_WIRE_RADIUS`].
    pub fn calibrated() -> Self {
        Self {
            radius: CALIBRATED_WIRE_RADIUS,
            conductivity: COPPER_CONDUCTIVITY,
            relative_permeability: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::Geometry(format!(
                "wire radius must be positive, got {}",
                self.radius
            )));
        }
        if !(self.conductivity > 0.0 && self.conductivity.is_finite()) {
            return Err(domain(format!(
                "conductivity must be positive, got {}",
                self.conductivity
            )));
        }
        if !(self.relative_permeability > 0.0 && self.relative_permeability.is_finite()) {
            return Err(domain("relative permeability must be positive"));
        }
        Ok(())
    }

    fn permeability(&self) -> f64 {
        MU_0 * self.relative_permeability
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatingPoint {
    /// Hz.
    pub frequency: f64,
}

impl OperatingPoint {
    pub fn new(frequency: f64) -> Result<Self> {
        if !(frequency > 0.0 && frequency.is_finite()) {
            return Err(domain(format!(
                "frequency must be positive, got {frequency}"
            )));
        }
        Ok(Self { frequency })
    }

    pub fn angular(&self) -> f64 {
        2.0 * PI * self.frequency
    }
}

impl Default for OperatingPoint {
    fn default() -> Self {
        Self {
            frequency: DEFAULT_FREQUENCY,
        }
    }
}

/// A spiral or PCB coil modelled as concentric circles, outermost first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanarCoil {
    winding_radii: Vec<f64>,
    wire: WireSpec,
    label: String,
}

impl PlanarCoil {
    /// Radii must be positive and strictly decreasing.
    pub fn new(label: impl Into<String>, winding_radii: Vec<f64>, wire: WireSpec) -> Result<Self> {
        wire.validate()?;
        if winding_radii.is_empty() {
            return Err(Error::Geometry("a coil needs at least one winding".into()));
        }
        if let Some(r) = winding_radii.iter().find(|r| !(**r > 0.0 && r.is_finite())) {
            return Err(Error::Geometry(format!(
                "winding radius must be positive, got {r}"
            )));
        }
        if winding_radii.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::Geometry(
                "winding radii must be strictly decreasing".into(),
            ));
        }
        Ok(Self {
            winding_radii,
            wire,
            label: label.into(),
        })
    }

    /// Sorts the radii outermost-first before validating.
    pub fn from_unordered(
        label: impl Into<String>,
        mut winding_radii: Vec<f64>,
        wire: WireSpec,
    ) -> Result<Self> {
        winding_radii.sort_by(|a, b| b.total_cmp(a));
        Self::new(label, winding_radii, wire)
    }

    /// `count` windings inward from `outer_radius` at a fixed centre-to-centre `pitch`.
    pub fn concentric(
        label: impl Into<String>,
        outer_radius: f64,
        count: usize,
        pitch: f64,
        wire: WireSpec,
    ) -> Result<Self> {
        if count == 0 {
            return Err(Error::Geometry("a coil needs at least one winding".into()));
        }
        if !(pitch > 0.0) {
            return Err(Error::Geometry("winding pitch must be positive".into()));
        }
        let radii = (0..count)
            .map(|i| outer_radius - pitch * i as f64)
            .collect();
        Self::new(label, radii, wire)
    }

    pub fn winding_radii(&self) -> &[f64] {
        &self.winding_radii
    }

    pub fn wire(&self) -> &WireSpec {
        &self.wire
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn windings(&self) -> usize {
        self.winding_radii.len()
    }

    pub fn with_wire(&self, wire: WireSpec) -> Result<Self> {
        Self::new(self.label.clone(), self.winding_radii.clone(), wire)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

/// Skin-effect factor `Y = 1 / (1 + a·√(μσω/8))`: 1 for uniform current
/// density, tending to 0 as current crowds to the surface.
pub fn skin_factor(wire: &WireSpec, op: OperatingPoint) -> f64 {
    let depth_term = (wire.permeability() * wire.conductivity * op.angular() / 8.0).sqrt();
    1.0 / (1.0 + wire.radius * depth_term)
}

/// Self-inductance of a single circular winding of radius `r`:
/// `μ r (ln(8r/a) − 2 + Y/4)`.
pub fn winding_self_inductance(r: f64, wire: &WireSpec, op: OperatingPoint) -> Result<f64> {
    wire.validate()?;
    if !(r > wire.radius && r.is_finite()) {
        return Err(Error::Geometry(format!(
            "winding radius {r} m must exceed the wire radius {} m",
            wire.radius
        )));
    }
    let y = skin_factor(wire, op);
    Ok(wire.permeability() * r * ((8.0 * r / wire.radius).ln() - 2.0 + 0.25 * y))
}

/// Mutual inductance of two coaxial circular filaments with radii `r_i`,
/// `r_j` whose planes are `d` apart.
pub fn coaxial_mutual_inductance(r_i: f64, r_j: f64, d: f64) -> Result<f64> {
    if !(r_i > 0.0 && r_j > 0.0 && r_i.is_finite() && r_j.is_finite()) {
        return Err(Error::Geometry(format!(
            "filament radii must be positive, got {r_i}, {r_j}"
        )));
    }
    if !(d.is_finite()) {
        return Err(Error::Geometry("axial distance must be finite".into()));
    }
    let d = d.abs();
    if d == 0.0 && r_i == r_j {
        return Err(Error::Singularity(format!(
            "coincident filaments at r = {r_i} m"
        )));
    }
    let sum = r_i + r_j;
    let s2 = 4.0 * r_i * r_j / (sum * sum + d * d);
    let s = s2.sqrt();
    if s >= 1.0 {
        // only reachable through rounding for nearly coincident filaments
        return Err(Error::Singularity(format!(
            "filaments at r = {r_i}, {r_j} m are numerically coincident"
        )));
    }
    let k = elliptic_k(s)?;
    let e = elliptic_e(s)?;
    Ok(MU_0 * (r_i * r_j).sqrt() * ((2.0 / s - s) * k - 2.0 / s * e))
}

/// Sum of winding self-inductances and all ordered intra-coil mutual terms
/// for an arbitrary list of coplanar radii.
pub fn windings_self_inductance(radii: &[f64], wire: &WireSpec, op: OperatingPoint) -> Result<f64> {
    let mut total = 0.0;
    for (i, &r_i) in radii.iter().enumerate() {
        total += winding_self_inductance(r_i, wire, op)?;
        for (j, &r_j) in radii.iter().enumerate() {
            if i != j {
                total += coaxial_mutual_inductance(r_i, r_j, 0.0)?;
            }
        }
    }
    Ok(total)
}

/// Isolated self-inductance of a planar coil.
pub fn coil_self_inductance(coil: &PlanarCoil, op: OperatingPoint) -> Result<f64> {
    windings_self_inductance(coil.winding_radii(), coil.wire(), op)
}

/// Mutual inductance between two coaxial coils with parallel planes `d` apart.
pub fn coaxial_coil_mutual(tx: &PlanarCoil, rx: &PlanarCoil, d: f64) -> Result<f64> {
    let mut total = 0.0;
    for &r_t in tx.winding_radii() {
        for &r_r in rx.winding_radii() {
            total += coaxial_mutual_inductance(r_t, r_r, d)?;
        }
    }
    Ok(total)
}

/// Inductance seen by one coil when coupled to another with factor `k`:
/// `L (1 − k²)`.
pub fn effective_inductance(isolated: f64, k: f64) -> Result<f64> {
    if !(isolated > 0.0 && isolated.is_finite()) {
        return Err(domain(format!(
            "inductance must be positive, got {isolated}"
        )));
    }
    if !(0.0..1.0).contains(&k.abs()) {
        return Err(domain(format!(
            "coupling factor must satisfy |k| < 1, got {k}"
        )));
    }
    Ok(isolated * (1.0 - k * k))
}

/// Finds the wire radius for which `coil` (its radii, with the wire's
/// conductivity and permeability) has self-inductance `target` at `op`.
/// The search bracket is `[lo, hi]` metres.
pub fn calibrate_wire_radius(
    coil: &PlanarCoil,
    target: f64,
    op: OperatingPoint,
    lo: f64,
    hi: f64,
) -> Result<f64> {
    let base = *coil.wire();
    let radii = coil.winding_radii();
    let residual = |a: f64| {
        let wire = WireSpec { radius: a, ..base };
        windings_self_inductance(radii, &wire, op).map_or(f64::NAN, |l| l - target)
    };
    find_crossing(residual, lo, hi, Tolerance::new(1e-16, 1e-14, 200)?)
}
