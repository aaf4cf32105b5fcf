//! Series-series resonant inductive link.
//!
//! Source `VS` with internal resistance `RS` drives the transmit tank
//! (`L1`, `C1`, `R1`). The receive tank (`L2`, `C2`, `R2`) feeds the AC
//! load `RL`. Phasors are RMS, so every dissipated power is `|I|²R`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coil::{coil_self_inductance, effective_inductance, OperatingPoint, PlanarCoil};
use crate::coupling::{coupling_factor, neumann_mutual, LoopDiscretization, Pose};
use crate::error::{domain, Error, Result};
use crate::presets::CircuitEsr;

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} must be positive, got {v}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TankCircuit {
    /// H
    pub inductance: f64,
    /// F
    pub capacitance: f64,
    /// Ω
    pub esr: f64,
}

impl TankCircuit {
    pub fn new(inductance: f64, capacitance: f64, esr: f64) -> Result<Self> {
        positive("inductance", inductance)?;
        positive("capacitance", capacitance)?;
        positive("ESR", esr)?;
        Ok(Self {
            inductance,
            capacitance,
            esr,
        })
    }

    /// Tank with its capacitor chosen for series resonance at `f0`.
    pub fn tuned(inductance: f64, esr: f64, f0: f64) -> Result<Self> {
        Self::new(inductance, resonant_capacitor(inductance, f0)?, esr)
    }

    pub fn resonant_frequency(&self) -> f64 {
        1.0 / (2.0 * PI * (self.inductance * self.capacitance).sqrt())
    }

    /// Net series reactance at angular frequency `w`.
    pub fn reactance(&self, w: f64) -> f64 {
        w * self.inductance - 1.0 / (w * self.capacitance)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkCircuit {
    /// Ω, may be zero.
    pub source_resistance: f64,
    pub tx: TankCircuit,
    pub rx: TankCircuit,
    pub coupling_k: f64,
    /// Ω
    pub load: f64,
    /// Hz
    pub frequency: f64,
}

impl LinkCircuit {
    pub fn new(
        source_resistance: f64,
        tx: TankCircuit,
        rx: TankCircuit,
        coupling_k: f64,
        load: f64,
        frequency: f64,
    ) -> Result<Self> {
        if !(source_resistance >= 0.0 && source_resistance.is_finite()) {
            return Err(domain(format!(
                "source resistance must be non-negative, got {source_resistance}"
            )));
        }
        if !(0.0..1.0).contains(&coupling_k) {
            return Err(domain(format!(
                "coupling factor must lie in [0, 1), got {coupling_k}"
            )));
        }
        positive("load resistance", load)?;
        positive("frequency", frequency)?;
        // tanks are constructed through TankCircuit::new, but fields are public
        for t in [&tx, &rx] {
            TankCircuit::new(t.inductance, t.capacitance, t.esr)?;
        }
        Ok(Self {
            source_resistance,
            tx,
            rx,
            coupling_k,
            load,
            frequency,
        })
    }

    /// Both tanks tuned exactly to `frequency`.
    pub fn tuned(
        l1: f64,
        l2: f64,
        esr: CircuitEsr,
        coupling_k: f64,
        load: f64,
        frequency: f64,
    ) -> Result<Self> {
        let tx = TankCircuit::tuned(l1, esr.r1, frequency)?;
        let rx = TankCircuit::tuned(l2, esr.r2, frequency)?;
        Self::new(esr.rs, tx, rx, coupling_k, load, frequency)
    }

    pub fn with_load(&self, load: f64) -> Result<Self> {
        Self::new(
            self.source_resistance,
            self.tx,
            self.rx,
            self.coupling_k,
            load,
            self.frequency,
        )
    }

    pub fn with_coupling(&self, coupling_k: f64) -> Result<Self> {
        Self::new(
            self.source_resistance,
            self.tx,
            self.rx,
            coupling_k,
            self.load,
            self.frequency,
        )
    }

    pub fn angular(&self) -> f64 {
        2.0 * PI * self.frequency
    }

    pub fn mutual_inductance(&self) -> f64 {
        self.coupling_k * (self.tx.inductance * self.rx.inductance).sqrt()
    }
}

/// `C = 1 / (ω0² L)`.
pub fn resonant_capacitor(inductance: f64, f0: f64) -> Result<f64> {
    positive("inductance", inductance)?;
    positive("resonance frequency", f0)?;
    let w0 = 2.0 * PI * f0;
    Ok(1.0 / (w0 * w0 * inductance))
}

/// Inductance whose reactance at `frequency` is `reactance` Ω.
pub fn inductance_from_reactance(reactance: f64, frequency: f64) -> Result<f64> {
    positive("reactance", reactance)?;
    positive("frequency", frequency)?;
    Ok(reactance / (2.0 * PI * frequency))
}

/// Preferred-number series for capacitor snapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ESeries {
    E6,
    E12,
    E24,
}

impl ESeries {
    fn mantissas(self) -> &'static [f64] {
        match self {
            ESeries::E6 => &[1.0, 1.5, 2.2, 3.3, 4.7, 6.8],
            ESeries::E12 => &[1.0, 1.2, 1.5, 1.8, 2.2, 2.7, 3.3, 3.9, 4.7, 5.6, 6.8, 8.2],
            ESeries::E24 => &[
                1.0, 1.1, 1.2, 1.3, 1.5, 1.6, 1.8, 2.0, 2.2, 2.4, 2.7, 3.0, 3.3, 3.6, 3.9, 4.3,
                4.7, 5.1, 5.6, 6.2, 6.8, 7.5, 8.2, 9.1,
            ],
        }
    }
}

/// Nearest preferred value on a logarithmic scale.
pub fn snap_to_series(value: f64, series: ESeries) -> Result<f64> {
    positive("value", value)?;
    let decade = 10f64.powf(value.log10().floor());
    let mut best = f64::NAN;
    let mut best_dist = f64::INFINITY;
    for scale in [decade / 10.0, decade, decade * 10.0] {
        for m in series.mantissas() {
            let candidate = m * scale;
            let dist = (candidate / value).ln().abs();
            if dist < best_dist {
                best = candidate;
                best_dist = dist;
            }
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QualityFactors {
    /// Loaded transmit loop, `ωL1/(RS+R1)`.
    pub q_t: f64,
    /// Loaded receive loop, `ωL2/(R2+RL)`.
    pub q_r: f64,
    /// Unloaded transmit coil, `ωL1/R1`.
    pub q_1: f64,
    /// Unloaded receive coil, `ωL2/R2`.
    pub q_2: f64,
}

pub fn quality_factors(link: &LinkCircuit) -> QualityFactors {
    let w = link.angular();
    let (l1, l2) = (link.tx.inductance, link.rx.inductance);
    QualityFactors {
        q_t: w * l1 / (link.source_resistance + link.tx.esr),
        q_r: w * l2 / (link.rx.esr + link.load),
        q_1: w * l1 / link.tx.esr,
        q_2: w * l2 / link.rx.esr,
    }
}

/// Link efficiency of a tuned link:
/// `RL/(R2+RL) · k²QTQR / (1 + k²QTQR)`.
pub fn link_efficiency(link: &LinkCircuit) -> f64 {
    let q = quality_factors(link);
    let x = link.coupling_k * link.coupling_k * q.q_t * q.q_r;
    link.load / (link.rx.esr + link.load) * x / (1.0 + x)
}

/// Load that maximizes [`link_efficiency`]:
/// `√(R2² (1 + k²Q1Q2 · R1/(RS+R1)))`.
pub fn optimal_load(link: &LinkCircuit) -> f64 {
    let q = quality_factors(link);
    let r1 = link.tx.esr;
    let r2 = link.rx.esr;
    let k2 = link.coupling_k * link.coupling_k;
    (r2 * r2 * (1.0 + k2 * q.q_1 * q.q_2 * r1 / (link.source_resistance + r1))).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinkSolution {
    /// RMS phasor, A.
    pub primary_current: Complex64,
    /// RMS phasor, A.
    pub secondary_current: Complex64,
    /// Real power delivered by the ideal source (includes the `RS` loss), W.
    pub input_power: f64,
    /// W
    pub load_power: f64,
    pub efficiency: f64,
}

/// Two-mesh phasor solution at the link's operating frequency.
///
/// ```text
///  [ Z1    jωM ] [I1]   [VS]
///  [ jωM   Z2  ] [I2] = [ 0]
/// ```
///
/// with `Z1 = RS + R1 + jX1` and `Z2 = R2 + RL + jX2`.
pub fn solve_link(link: &LinkCircuit, source_voltage: f64) -> Result<LinkSolution> {
    if !(source_voltage >= 0.0 && source_voltage.is_finite()) {
        return Err(domain(format!(
            "source voltage must be non-negative, got {source_voltage}"
        )));
    }
    let w = link.angular();
    let z1 = Complex64::new(link.source_resistance + link.tx.esr, link.tx.reactance(w));
    let z2 = Complex64::new(link.rx.esr + link.load, link.rx.reactance(w));
    let zm = Complex64::new(0.0, w * link.mutual_inductance());

    let det = z1 * z2 - zm * zm;
    if det.norm() == 0.0 || !det.is_finite() {
        return Err(Error::Numerical {
            message: "singular mesh matrix".into(),
            best_estimate: f64::NAN,
        });
    }
    // unit-voltage solution, then scale; efficiency is independent of VS
    let i1_unit = z2 / det;
    let i2_unit = -zm / det;
    let ps_unit = i1_unit.re;
    let pl_unit = i2_unit.norm_sqr() * link.load;
    let efficiency = if ps_unit > 0.0 {
        pl_unit / ps_unit
    } else {
        0.0
    };

    let v = source_voltage;
    Ok(LinkSolution {
        primary_current: i1_unit * v,
        secondary_current: i2_unit * v,
        input_power: ps_unit * v * v,
        load_power: pl_unit * v * v,
        efficiency,
    })
}

/// RMS source voltage that delivers `target_power` W to the load.
pub fn required_source_voltage(link: &LinkCircuit, target_power: f64) -> Result<f64> {
    if !(target_power >= 0.0 && target_power.is_finite()) {
        return Err(domain(format!(
            "target load power must be non-negative, got {target_power}"
        )));
    }
    if target_power == 0.0 {
        return Ok(0.0);
    }
    let unit = solve_link(link, 1.0)?;
    if !(unit.load_power > 0.0) {
        return Err(Error::Infeasible(format!(
            "no power reaches the load (k = {}); {target_power} W cannot be delivered",
            link.coupling_k
        )));
    }
    Ok((target_power / unit.load_power).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetuningReport {
    /// Resonance of the transmit tank with `L1(1−k²)`, Hz.
    pub effective_f0_tx: f64,
    /// Resonance of the receive tank with `L2(1−k²)`, Hz.
    pub effective_f0_rx: f64,
    /// Largest relative deviation of either tank resonance from the operating frequency.
    pub relative_shift: f64,
    /// `1 − η(detuned)/η(tuned)`, both at the link's load.
    pub efficiency_penalty: f64,
}

/// Effect of coupling-induced inductance change on fixed tuning.
///
/// The detuned circuit keeps both capacitors, replaces each inductance by
/// `L(1−k²)` and keeps the coupling factor. It is solved with
/// [`solve_link`] at the operating frequency and compared with the tuned
/// closed form.
pub fn detuning_report(link: &LinkCircuit) -> Result<DetuningReport> {
    let k = link.coupling_k;
    let tx = TankCircuit {
        inductance: effective_inductance(link.tx.inductance, k)?,
        ..link.tx
    };
    let rx = TankCircuit {
        inductance: effective_inductance(link.rx.inductance, k)?,
        ..link.rx
    };
    let (f_tx, f_rx) = (tx.resonant_frequency(), rx.resonant_frequency());
    let shift_tx = f_tx / link.frequency - 1.0;
    let shift_rx = f_rx / link.frequency - 1.0;
    let relative_shift = if shift_tx.abs() >= shift_rx.abs() {
        shift_tx
    } else {
        shift_rx
    };

    let tuned = link_efficiency(link);
    let efficiency_penalty = if tuned > 0.0 {
        let detuned = LinkCircuit { tx, rx, ..*link };
        1.0 - solve_link(&detuned, 1.0)?.efficiency / tuned
    } else {
        0.0
    };
    Ok(DetuningReport {
        effective_f0_tx: f_tx,
        effective_f0_rx: f_rx,
        relative_shift,
        efficiency_penalty,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EfficiencyCell {
    /// Lateral offset, m.
    pub dx: f64,
    pub k: f64,
    /// Ω
    pub optimal_load: f64,
    pub max_efficiency: f64,
}

/// Best-case link efficiency at each lateral offset for coils `dz` apart.
///
/// Inductances come from the coil models, coupling from the Neumann
/// integral, and each cell is evaluated at its own optimal load. The sign
/// of `k` is irrelevant to efficiency, so `|k|` is used.
pub fn max_efficiency_map(
    tx: &PlanarCoil,
    rx: &PlanarCoil,
    dz: f64,
    lateral: &[f64],
    esr: CircuitEsr,
    op: OperatingPoint,
    disc: LoopDiscretization,
) -> Result<Vec<EfficiencyCell>> {
    let l1 = coil_self_inductance(tx, op)?;
    let l2 = coil_self_inductance(rx, op)?;
    lateral
        .par_iter()
        .map(|&dx| {
            let m = neumann_mutual(tx, rx, &Pose::new(dx, 0.0, dz, 0.0)?, disc)?;
            let k = coupling_factor(l1, l2, m)?;
            let (optimal_load, max_efficiency) =
                best_efficiency(l1, l2, esr, k.abs(), op.frequency)?;
            Ok(EfficiencyCell {
                dx,
                k,
                optimal_load,
                max_efficiency,
            })
        })
        .collect()
}

/// Optimal load and the efficiency it achieves for a tuned link.
pub fn best_efficiency(
    l1: f64,
    l2: f64,
    esr: CircuitEsr,
    k: f64,
    frequency: f64,
) -> Result<(f64, f64)> {
    let probe = LinkCircuit::tuned(l1, l2, esr, k, esr.r2, frequency)?;
    let rl = optimal_load(&probe);
    let link = probe.with_load(rl)?;
    Ok((rl, link_efficiency(&link)))
}
