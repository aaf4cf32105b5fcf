//! Coupling factor between a transmit and a receive coil.
//!
//! Coaxial poses use the closed-form filament expression. Lateral offsets
//! and tilt use a filament discretization of Neumann's double line
//! integral
//!
//! ```text
//!  M = μ0/4π ∮∮ dl₁·dl₂ / |x₁ − x₂|
//! ```
//!
//! with a midpoint rule over equal-angle segments of every winding. The
//! transmit coil lies in the z = 0 plane centred on the origin. The
//! receive coil is centred at `(dx, dy, dz)` and tilted about its own
//! x-axis (a diameter) by `tilt_deg`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coil::{
    coaxial_coil_mutual, coil_self_inductance, effective_inductance, OperatingPoint, PlanarCoil,
    MU_0,
};
use crate::error::{domain, Error, Result};

/// Placement of the receive coil relative to the transmit coil (m, degrees).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pose {
    pub dx: f64,
    pub dy: f64,
    pub dz: f64,
    pub tilt_deg: f64,
}

impl Pose {
    /// Tilt is limited to ±180° so that a flipped coil can be represented.
    pub fn new(dx: f64, dy: f64, dz: f64, tilt_deg: f64) -> Result<Self> {
        if ![dx, dy, dz, tilt_deg].iter().all(|v| v.is_finite()) {
            return Err(domain("pose components must be finite"));
        }
        if tilt_deg.abs() > 180.0 {
            return Err(domain(format!("tilt must be within ±180°, got {tilt_deg}")));
        }
        Ok(Self {
            dx,
            dy,
            dz,
            tilt_deg,
        })
    }

    pub fn coaxial(dz: f64) -> Self {
        Self {
            dx: 0.0,
            dy: 0.0,
            dz,
            tilt_deg: 0.0,
        }
    }

    pub fn lateral(dx: f64, dz: f64) -> Self {
        Self {
            dx,
            dy: 0.0,
            dz,
            tilt_deg: 0.0,
        }
    }

    pub fn tilted(dz: f64, tilt_deg: f64) -> Self {
        Self {
            dx: 0.0,
            dy: 0.0,
            dz,
            tilt_deg,
        }
    }

    /// Pose of the transmit coil as seen from the receive coil's frame.
    pub fn inverse(&self) -> Self {
        let (s, c) = self.tilt_deg.to_radians().sin_cos();
        // R(θ)ᵀ · (−d) with R a rotation about x
        let (x, y, z) = (-self.dx, -self.dy, -self.dz);
        Self {
            dx: x,
            dy: c * y + s * z,
            dz: -s * y + c * z,
            tilt_deg: -self.tilt_deg,
        }
    }

    pub fn is_coaxial(&self) -> bool {
        self.dx == 0.0 && self.dy == 0.0 && self.tilt_deg == 0.0
    }
}

/// Number of straight segments each circular winding is split into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopDiscretization {
    pub segments_per_turn: usize,
}

impl LoopDiscretization {
    pub const MIN_SEGMENTS: usize = 36;

    pub fn new(segments_per_turn: usize) -> Result<Self> {
        if segments_per_turn < Self::MIN_SEGMENTS {
            return Err(domain(format!(
                "at least {} segments per turn are required, got {segments_per_turn}",
                Self::MIN_SEGMENTS
            )));
        }
        Ok(Self { segments_per_turn })
    }
}

impl Default for LoopDiscretization {
    fn default() -> Self {
        Self {
            segments_per_turn: 720,
        }
    }
}

type Vec3 = [f64; 3];

/// Segment midpoints and length-weighted tangents of one coil, in world coordinates.
struct Filaments {
    points: Vec<Vec3>,
    tangents: Vec<Vec3>,
}

impl Filaments {
    fn new(coil: &PlanarCoil, pose: &Pose, disc: LoopDiscretization) -> Self {
        let n = disc.segments_per_turn;
        let step = std::f64::consts::TAU / n as f64;
        let (s, c) = pose.tilt_deg.to_radians().sin_cos();
        let rotate = |v: Vec3| [v[0], c * v[1] - s * v[2], s * v[1] + c * v[2]];

        let total = n * coil.windings();
        let mut points = Vec::with_capacity(total);
        let mut tangents = Vec::with_capacity(total);
        for &r in coil.winding_radii() {
            for i in 0..n {
                let phi = (i as f64 + 0.5) * step;
                let (sp, cp) = phi.sin_cos();
                let p = rotate([r * cp, r * sp, 0.0]);
                points.push([p[0] + pose.dx, p[1] + pose.dy, p[2] + pose.dz]);
                tangents.push(rotate([-r * sp * step, r * cp * step, 0.0]));
            }
        }
        Self { points, tangents }
    }
}

/// Mutual inductance between two coils at an arbitrary pose (H).
///
/// Signed: flipping the receive coil over (`tilt_deg = 180`) negates it.
/// Fails with [`Error::Singularity`] if any pair of segment midpoints is
/// closer than the larger of the two wire radii.
pub fn neumann_mutual(
    tx: &PlanarCoil,
    rx: &PlanarCoil,
    pose: &Pose,
    disc: LoopDiscretization,
) -> Result<f64> {
    let a = Filaments::new(tx, &Pose::coaxial(0.0), disc);
    let b = Filaments::new(rx, pose, disc);
    let guard = tx.wire().radius.max(rx.wire().radius);
    let guard2 = guard * guard;

    let mut sum = 0.0;
    let mut closest2 = f64::INFINITY;
    for (p, t) in a.points.iter().zip(&a.tangents) {
        let mut row = 0.0;
        for (q, u) in b.points.iter().zip(&b.tangents) {
            let dx = p[0] - q[0];
            let dy = p[1] - q[1];
            let dz = p[2] - q[2];
            let r2 = dx * dx + dy * dy + dz * dz;
            closest2 = closest2.min(r2);
            row += (t[0] * u[0] + t[1] * u[1] + t[2] * u[2]) / r2.sqrt();
        }
        sum += row;
    }
    if closest2 < guard2 {
        return Err(Error::Singularity(format!(
            "filaments approach within {:.3e} m (wire radius {guard:.3e} m)",
            closest2.sqrt()
        )));
    }
    Ok(MU_0 / (4.0 * std::f64::consts::PI) * sum)
}

/// `k = M / √(L1 L2)`.
pub fn coupling_factor(l1: f64, l2: f64, m: f64) -> Result<f64> {
    if !(l1 > 0.0 && l2 > 0.0) {
        return Err(domain(format!(
            "self-inductances must be positive, got {l1}, {l2}"
        )));
    }
    let bound = (l1 * l2).sqrt();
    if !(m.abs() < bound) {
        return Err(Error::Physicality(format!(
            "|M| = {m:e} H is not below √(L1·L2) = {bound:e} H"
        )));
    }
    Ok(m / bound)
}

/// Coupling factor of two coaxial coils `dz` apart.
pub fn coaxial_coupling(
    tx: &PlanarCoil,
    rx: &PlanarCoil,
    dz: f64,
    op: OperatingPoint,
) -> Result<f64> {
    let l1 = coil_self_inductance(tx, op)?;
    let l2 = coil_self_inductance(rx, op)?;
    coupling_factor(l1, l2, coaxial_coil_mutual(tx, rx, dz)?)
}

/// Coupling factor at an arbitrary pose via the Neumann integral.
pub fn pose_coupling(
    tx: &PlanarCoil,
    rx: &PlanarCoil,
    pose: &Pose,
    disc: LoopDiscretization,
    op: OperatingPoint,
) -> Result<f64> {
    let l1 = coil_self_inductance(tx, op)?;
    let l2 = coil_self_inductance(rx, op)?;
    coupling_factor(l1, l2, neumann_mutual(tx, rx, pose, disc)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistancePoint {
    /// m
    pub dz: f64,
    pub k: f64,
    /// Receive-coil inductance under coupling, H.
    pub l2_eff: f64,
}

/// Coaxial coupling and effective receive inductance at each distance.
pub fn coupling_vs_distance(
    tx: &PlanarCoil,
    rx: &PlanarCoil,
    dz_list: &[f64],
    op: OperatingPoint,
) -> Result<Vec<DistancePoint>> {
    if dz_list.is_empty() {
        return Err(domain("distance list is empty"));
    }
    if let Some(dz) = dz_list.iter().find(|d| !(**d > 0.0 && d.is_finite())) {
        return Err(domain(format!("distances must be positive, got {dz}")));
    }
    let l1 = coil_self_inductance(tx, op)?;
    let l2 = coil_self_inductance(rx, op)?;
    dz_list
        .iter()
        .map(|&dz| {
            let k = coupling_factor(l1, l2, coaxial_coil_mutual(tx, rx, dz)?)?;
            Ok(DistancePoint {
                dz,
                k,
                l2_eff: effective_inductance(l2, k)?,
            })
        })
        .collect()
}

/// The misalignment swept along the columns of a [`MisalignmentGrid`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Offsets {
    /// Lateral offsets along x, m.
    Lateral(Vec<f64>),
    /// Receiver tilt, degrees.
    Tilt(Vec<f64>),
}

impl Offsets {
    pub fn values(&self) -> &[f64] {
        match self {
            Offsets::Lateral(v) | Offsets::Tilt(v) => v,
        }
    }

    fn pose(&self, dz: f64, value: f64) -> Result<Pose> {
        match self {
            Offsets::Lateral(_) => Pose::new(value, 0.0, dz, 0.0),
            Offsets::Tilt(_) => Pose::new(0.0, 0.0, dz, value),
        }
    }
}

/// Coupling factors with one row per distance and one column per offset.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MisalignmentGrid {
    pub dz: Vec<f64>,
    pub offsets: Offsets,
    pub k: Vec<Vec<f64>>,
}

/// Neumann-integral coupling over a distance × offset grid.
///
/// Cells are evaluated in parallel; the result does not depend on
/// evaluation order.
pub fn misalignment_grid(
    tx: &PlanarCoil,
    rx: &PlanarCoil,
    dz_list: &[f64],
    offsets: Offsets,
    disc: LoopDiscretization,
    op: OperatingPoint,
) -> Result<MisalignmentGrid> {
    if dz_list.is_empty() || offsets.values().is_empty() {
        return Err(domain("distance and offset lists must be non-empty"));
    }
    let l1 = coil_self_inductance(tx, op)?;
    let l2 = coil_self_inductance(rx, op)?;
    let cols = offsets.values().len();

    let cells: Vec<Result<f64>> = (0..dz_list.len() * cols)
        .into_par_iter()
        .map(|idx| {
            let pose = offsets.pose(dz_list[idx / cols], offsets.values()[idx % cols])?;
            coupling_factor(l1, l2, neumann_mutual(tx, rx, &pose, disc)?)
        })
        .collect();

    let flat = cells.into_iter().collect::<Result<Vec<f64>>>()?;
    let k = flat.chunks(cols).map(<[f64]>::to_vec).collect();
    Ok(MisalignmentGrid {
        dz: dz_list.to_vec(),
        offsets,
        k,
    })
}
