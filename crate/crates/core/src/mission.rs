//! Charging-mission budgets for the sensor-node battery.
//!
//! Efficiency lookups use measured datasets bundled as CSV under `data/`.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

pub const HOURS_PER_YEAR: f64 = 8766.0;
/// Input voltage below which the receiver powers down, V.
pub const POWER_DOWN_VOLTAGE: f64 = 1.0;
/// How long the end-of-charge condition must hold, s.
pub const END_OF_CHARGE_HOLD_S: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BatteryCell {
    /// mAh
    pub capacity: f64,
    /// V
    pub nominal_voltage: f64,
    /// C (1/h)
    pub max_charge_rate: f64,
    /// mA
    pub charge_done_current: f64,
    /// V
    pub charge_done_voltage: f64,
}

impl BatteryCell {
    /// A zero capacity is accepted and yields empty budgets.
    pub fn new(
        capacity: f64,
        nominal_voltage: f64,
        max_charge_rate: f64,
        charge_done_current: f64,
        charge_done_voltage: f64,
    ) -> Result<Self> {
        let cell = Self {
            capacity,
            nominal_voltage,
            max_charge_rate,
            charge_done_current,
            charge_done_voltage,
        };
        cell.validate()?;
        Ok(cell)
    }

    /// 60 mAh lithium-titanate cell, 2.4 V nominal, 10 C max.
    pub fn lto_60mah() -> Self {
        Self {
            capacity: 60.0,
            nominal_voltage: 2.4,
            max_charge_rate: 10.0,
            charge_done_current: 200.0,
            charge_done_voltage: 2.6,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.capacity >= 0.0 && self.capacity.is_finite()) {
            return Err(domain(format!(
                "capacity must be non-negative, got {} mAh",
                self.capacity
            )));
        }
        if !(self.nominal_voltage > 0.0 && self.nominal_voltage.is_finite()) {
            return Err(domain(format!(
                "nominal voltage must be positive, got {} V",
                self.nominal_voltage
            )));
        }
        if !(self.max_charge_rate > 0.0 && self.max_charge_rate.is_finite()) {
            return Err(domain(format!(
                "max charge rate must be positive, got {} C",
                self.max_charge_rate
            )));
        }
        if !(self.charge_done_current >= 0.0 && self.charge_done_voltage >= 0.0) {
            return Err(domain("end-of-charge thresholds must be non-negative"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Autonomy {
    Finite {
        years: f64,
    },
    /// No leakage: the cell never self-discharges.
    Infinite,
}

impl Autonomy {
    pub fn years(&self) -> Option<f64> {
        match self {
            Autonomy::Finite { years } => Some(*years),
            Autonomy::Infinite => None,
        }
    }
}

/// Years until leakage alone empties the cell.
pub fn autonomy_from_leakage(cell: &BatteryCell, leakage_ua: f64) -> Result<Autonomy> {
    cell.validate()?;
    if leakage_ua == 0.0 {
        return Ok(Autonomy::Infinite);
    }
    if !(leakage_ua > 0.0 && leakage_ua.is_finite()) {
        return Err(domain(format!(
            "leakage must be positive, got {leakage_ua} µA"
        )));
    }
    let hours = cell.capacity * 1000.0 / leakage_ua;
    Ok(Autonomy::Finite {
        years: hours / HOURS_PER_YEAR,
    })
}

/// Constant-current charge time in minutes.
pub fn charge_time(cell: &BatteryCell, rate_c: f64) -> Result<f64> {
    cell.validate()?;
    if !(rate_c > 0.0 && rate_c.is_finite()) {
        return Err(domain(format!(
            "charge rate must be positive, got {rate_c} C"
        )));
    }
    if rate_c > cell.max_charge_rate {
        return Err(Error::Safety(format!(
            "charge rate {rate_c} C exceeds the cell limit of {} C",
            cell.max_charge_rate
        )));
    }
    Ok(60.0 / rate_c)
}

#[derive(Debug, Deserialize)]
struct PruRecord {
    #[serde(rename = "vin_V")]
    vin: f64,
    #[serde(rename = "iout_A")]
    iout: f64,
    eff: f64,
}

#[derive(Debug, Deserialize)]
struct SystemRecord {
    dz_mm: f64,
    eff: f64,
    #[serde(rename = "vinv_V")]
    vinv: f64,
}

fn read_records<T: for<'de> Deserialize<'de>>(text: &str) -> Result<Vec<T>> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    reader
        .deserialize()
        .enumerate()
        .map(|(i, r)| {
            r.map_err(|e| Error::Format {
                line: i + 2,
                message: e.to_string(),
            })
        })
        .collect()
}

fn strictly_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

fn check_efficiency(eff: f64) -> Result<()> {
    if eff > 0.0 && eff < 1.0 {
        Ok(())
    } else {
        Err(Error::Invalid(format!(
            "efficiency {eff} is outside (0, 1)"
        )))
    }
}

/// Receiver efficiency over an input-voltage × output-current grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PruDataset {
    vin: Vec<f64>,
    iout: Vec<f64>,
    /// `eff[i][j]` at `iout[i]`, `vin[j]`.
    eff: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PruEfficiency {
    pub efficiency: f64,
    /// The query lay outside the grid and was moved onto its edge.
    pub clamped: bool,
}

fn bracket(axis: &[f64], x: f64) -> (usize, f64) {
    if axis.len() == 1 {
        return (0, 0.0);
    }
    let hi = axis.partition_point(|&a| a <= x).clamp(1, axis.len() - 1);
    let lo = hi - 1;
    let t = (x - axis[lo]) / (axis[hi] - axis[lo]);
    (lo, t)
}

impl PruDataset {
    pub fn from_csv(text: &str) -> Result<Self> {
        let records: Vec<PruRecord> = read_records(text)?;
        let mut vin: Vec<f64> = records.iter().map(|r| r.vin).collect();
        let mut iout: Vec<f64> = records.iter().map(|r| r.iout).collect();
        for axis in [&mut vin, &mut iout] {
            axis.sort_by(f64::total_cmp);
            axis.dedup();
        }
        if vin.is_empty() || iout.is_empty() {
            return Err(Error::Invalid("PRU dataset is empty".into()));
        }
        let mut eff = vec![vec![f64::NAN; vin.len()]; iout.len()];
        for r in &records {
            check_efficiency(r.eff)?;
            let i = iout
                .iter()
                .position(|&v| v == r.iout)
                .expect("axis built from records");
            let j = vin
                .iter()
                .position(|&v| v == r.vin)
                .expect("axis built from records");
            if !eff[i][j].is_nan() {
                return Err(Error::Invalid(format!(
                    "duplicate PRU sample at {} V, {} A",
                    r.vin, r.iout
                )));
            }
            eff[i][j] = r.eff;
        }
        if eff.iter().flatten().any(|v| v.is_nan()) {
            return Err(Error::Invalid(
                "PRU dataset does not cover a full grid".into(),
            ));
        }
        Ok(Self { vin, iout, eff })
    }

    /// The bundled receiver measurement.
    pub fn bundled() -> &'static Self {
        static DATA: OnceLock<PruDataset> = OnceLock::new();
        DATA.get_or_init(|| {
            Self::from_csv(include_str!("../data/pru_efficiency.csv"))
                .expect("bundled dataset is valid")
        })
    }

    pub fn vin_axis(&self) -> &[f64] {
        &self.vin
    }

    pub fn iout_axis(&self) -> &[f64] {
        &self.iout
    }

    /// Bilinear interpolation; queries outside the grid are clamped and flagged.
    pub fn efficiency(&self, vin: f64, iout: f64) -> Result<PruEfficiency> {
        if !(vin.is_finite() && iout.is_finite()) {
            return Err(domain("PRU query must be finite"));
        }
        let clamp = |x: f64, axis: &[f64]| x.clamp(axis[0], axis[axis.len() - 1]);
        let (cv, ci) = (clamp(vin, &self.vin), clamp(iout, &self.iout));
        let clamped = cv != vin || ci != iout;
        let (j, tv) = bracket(&self.vin, cv);
        let (i, ti) = bracket(&self.iout, ci);
        let at =
            |i: usize, j: usize| self.eff[i.min(self.iout.len() - 1)][j.min(self.vin.len() - 1)];
        let lerp = |a: f64, b: f64, t: f64| {
            if t == 0.0 {
                a
            } else if t == 1.0 {
                b
            } else {
                a + (b - a) * t
            }
        };
        let low = lerp(at(i, j), at(i, j + 1), tv);
        let high = lerp(at(i + 1, j), at(i + 1, j + 1), tv);
        Ok(PruEfficiency {
            efficiency: lerp(low, high, ti),
            clamped,
        })
    }
}

/// Bundled-dataset shortcut for [`PruDataset::efficiency`].
pub fn pru_efficiency(vin: f64, iout: f64) -> Result<PruEfficiency> {
    PruDataset::bundled().efficiency(vin, iout)
}

/// End-to-end efficiency and inverter voltage versus distance.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemDataset {
    dz_mm: Vec<f64>,
    eff: Vec<f64>,
    vinv: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SystemPoint {
    pub efficiency: f64,
    /// V
    pub inverter_voltage: f64,
}

impl SystemDataset {
    pub fn from_csv(text: &str) -> Result<Self> {
        let records: Vec<SystemRecord> = read_records(text)?;
        if records.is_empty() {
            return Err(Error::Invalid("system dataset is empty".into()));
        }
        let dz_mm: Vec<f64> = records.iter().map(|r| r.dz_mm).collect();
        if !strictly_increasing(&dz_mm) {
            return Err(Error::Invalid(
                "system dataset distances must be strictly increasing".into(),
            ));
        }
        for r in &records {
            check_efficiency(r.eff)?;
        }
        Ok(Self {
            dz_mm,
            eff: records.iter().map(|r| r.eff).collect(),
            vinv: records.iter().map(|r| r.vinv).collect(),
        })
    }

    pub fn bundled() -> &'static Self {
        static DATA: OnceLock<SystemDataset> = OnceLock::new();
        DATA.get_or_init(|| {
            Self::from_csv(include_str!("../data/system_efficiency.csv"))
                .expect("bundled dataset is valid")
        })
    }

    pub fn dz_axis(&self) -> &[f64] {
        &self.dz_mm
    }

    /// Linear interpolation; distances outside the measured span are refused.
    pub fn at(&self, dz_mm: f64) -> Result<SystemPoint> {
        let (first, last) = (self.dz_mm[0], self.dz_mm[self.dz_mm.len() - 1]);
        if !(dz_mm >= first && dz_mm <= last) {
            return Err(Error::Range(format!(
                "dz = {dz_mm} mm is outside the measured span [{first}, {last}] mm"
            )));
        }
        let (i, t) = bracket(&self.dz_mm, dz_mm);
        if t == 0.0 || self.dz_mm.len() == 1 {
            return Ok(SystemPoint {
                efficiency: self.eff[i],
                inverter_voltage: self.vinv[i],
            });
        }
        if t == 1.0 {
            return Ok(SystemPoint {
                efficiency: self.eff[i + 1],
                inverter_voltage: self.vinv[i + 1],
            });
        }
        let lerp = |v: &[f64]| v[i] + (v[i + 1] - v[i]) * t;
        Ok(SystemPoint {
            efficiency: lerp(&self.eff),
            inverter_voltage: lerp(&self.vinv),
        })
    }
}

pub fn system_efficiency(dz_mm: f64) -> Result<SystemPoint> {
    SystemDataset::bundled().at(dz_mm)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MissionBudget {
    /// Wh delivered into the cell.
    pub energy_transferred: f64,
    /// Wh taken from the drone battery, hover included.
    pub energy_drawn_from_uav: f64,
    /// Wh spent hovering; hover power is always user-supplied.
    pub hover_energy: f64,
    /// h
    pub charge_duration: f64,
}

/// Energy a drone spends to refill `cell` from empty at distance `dz_mm`.
///
/// The charge is treated as constant current at nominal voltage.
pub fn mission_energy(
    cell: &BatteryCell,
    dz_mm: f64,
    hover_power_w: f64,
    rate_c: f64,
) -> Result<MissionBudget> {
    if !(hover_power_w >= 0.0 && hover_power_w.is_finite()) {
        return Err(domain(format!(
            "hover power must be non-negative, got {hover_power_w} W"
        )));
    }
    let minutes = charge_time(cell, rate_c)?;
    let system = system_efficiency(dz_mm)?;
    if cell.capacity == 0.0 {
        return Ok(MissionBudget {
            energy_transferred: 0.0,
            energy_drawn_from_uav: 0.0,
            hover_energy: 0.0,
            charge_duration: 0.0,
        });
    }
    let energy_transferred = cell.capacity / 1000.0 * cell.nominal_voltage;
    let charge_duration = minutes / 60.0;
    let hover_energy = hover_power_w * charge_duration;
    Ok(MissionBudget {
        energy_transferred,
        energy_drawn_from_uav: energy_transferred / system.efficiency + hover_energy,
        hover_energy,
        charge_duration,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChargeSample {
    pub time_s: f64,
    pub current_ma: f64,
    pub voltage_v: f64,
}

/// First time at which the charge current has stayed below the cell's
/// done-current and the voltage above its done-voltage for more than
/// [`END_OF_CHARGE_HOLD_S`]. Samples must be in time order.
pub fn end_of_charge(cell: &BatteryCell, trace: &[ChargeSample]) -> Option<f64> {
    let mut since: Option<f64> = None;
    for s in trace {
        if s.current_ma < cell.charge_done_current && s.voltage_v > cell.charge_done_voltage {
            let start = *since.get_or_insert(s.time_s);
            if s.time_s - start > END_OF_CHARGE_HOLD_S {
                return Some(s.time_s);
            }
        } else {
            since = None;
        }
    }
    None
}

/// The receiver shuts down when its input voltage drops below 1 V.
pub fn is_power_down(input_voltage: f64) -> bool {
    input_voltage < POWER_DOWN_VOLTAGE
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn autonomy_examples() {
        let cell = BatteryCell::lto_60mah();
        let years = autonomy_from_leakage(&cell, 1.5).unwrap().years().unwrap();
        assert!((years - 4.56).abs() < 0.01);
        let big = BatteryCell {
            capacity: 100.0,
            ..cell
        };
        assert!((autonomy_from_leakage(&big, 1.0).unwrap().years().unwrap() - 11.4).abs() < 0.01);
        assert_eq!(
            autonomy_from_leakage(&cell, 0.0).unwrap(),
            Autonomy::Infinite
        );
        assert!(autonomy_from_leakage(&cell, -1.0).is_err());
    }

    #[test]
    fn charge_time_examples() {
        let cell = BatteryCell::lto_60mah();
        assert_eq!(charge_time(&cell, 10.0).unwrap(), 6.0);
        assert_eq!(charge_time(&cell, 1.0).unwrap(), 60.0);
        assert!(matches!(charge_time(&cell, 20.0), Err(Error::Safety(_))));
        assert!(charge_time(&cell, 0.0).is_err());
    }

    #[test]
    fn cell_validation() {
        assert!(BatteryCell::new(60.0, 0.0, 10.0, 200.0, 2.6).is_err());
        assert!(BatteryCell::new(-1.0, 2.4, 10.0, 200.0, 2.6).is_err());
        assert!(BatteryCell::new(60.0, 2.4, 0.0, 200.0, 2.6).is_err());
        assert!(BatteryCell::new(0.0, 2.4, 10.0, 200.0, 2.6).is_ok());
    }

    #[test]
    fn pru_examples() {
        let at = |v, i| pru_efficiency(v, i).unwrap();
        assert!((at(10.0, 0.6).efficiency - 0.7814).abs() < 5e-5);
        assert!((at(8.0, 0.2).efficiency - 0.7640).abs() < 5e-5);
        let mid = at(10.0, 0.5);
        let expect = (at(10.0, 0.4).efficiency + at(10.0, 0.6).efficiency) / 2.0;
        assert_relative_eq!(mid.efficiency, expect, max_relative = 1e-12);
        assert!((mid.efficiency - 0.7802).abs() < 1e-4);
        assert!(!mid.clamped);
        let out = at(25.0, 0.1);
        assert!(out.clamped);
        assert_eq!(out.efficiency, at(21.0, 0.2).efficiency);
    }

    #[test]
    fn system_examples() {
        let p = system_efficiency(50.0).unwrap();
        assert!((p.efficiency - 0.3918).abs() < 5e-5);
        assert_eq!(p.inverter_voltage, 9.91);
        let p = system_efficiency(100.0).unwrap();
        assert!((p.efficiency - 0.1327).abs() < 5e-5);
        assert_eq!(p.inverter_voltage, 17.85);
        let p = system_efficiency(75.0).unwrap();
        assert!(p.efficiency > 0.2170 && p.efficiency < 0.2793);
        assert!(matches!(system_efficiency(49.0), Err(Error::Range(_))));
        assert!(matches!(system_efficiency(120.0), Err(Error::Range(_))));
    }

    #[test]
    fn dataset_validation() {
        assert!(SystemDataset::from_csv("dz_mm,eff,vinv_V\n60,0.3,10\n50,0.4,9\n").is_err());
        assert!(SystemDataset::from_csv("dz_mm,eff,vinv_V\n50,1.3,10\n").is_err());
        assert!(PruDataset::from_csv("vin_V,iout_A,eff\n8,0.2,0.7\n9,0.4,0.7\n").is_err());
        assert!(PruDataset::from_csv("vin_V,iout_A,eff\n8,0.2,0.7\n8,0.2,0.7\n").is_err());
        assert!(PruDataset::from_csv("vin_V,iout_A,eff\n8,x,0.7\n").is_err());
    }

    #[test]
    fn system_monotone() {
        let data = SystemDataset::bundled();
        let mut prev = f64::INFINITY;
        for i in 0..=500 {
            let e = data.at(50.0 + 0.1 * i as f64).unwrap().efficiency;
            assert!(e <= prev);
            prev = e;
        }
    }

    #[test]
    fn mission_examples() {
        let cell = BatteryCell::lto_60mah();
        let b = mission_energy(&cell, 50.0, 0.0, 10.0).unwrap();
        assert_relative_eq!(b.energy_transferred, 0.144, max_relative = 1e-12);
        assert!((b.energy_drawn_from_uav - 0.3675).abs() < 5e-4);
        assert_eq!(b.hover_energy, 0.0);
        let hover = mission_energy(&cell, 50.0, 100.0, 10.0).unwrap();
        assert_relative_eq!(hover.hover_energy, 10.0, max_relative = 1e-12);
        assert_relative_eq!(
            hover.energy_drawn_from_uav,
            b.energy_drawn_from_uav + 10.0,
            max_relative = 1e-12
        );
        let empty = BatteryCell {
            capacity: 0.0,
            ..cell
        };
        let z = mission_energy(&empty, 50.0, 100.0, 10.0).unwrap();
        assert_eq!(
            (
                z.energy_transferred,
                z.energy_drawn_from_uav,
                z.hover_energy,
                z.charge_duration
            ),
            (0.0, 0.0, 0.0, 0.0)
        );
        assert!(mission_energy(&cell, 120.0, 1.0, 1.0).is_err());
        assert!(mission_energy(&cell, 50.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn end_of_charge_needs_sustained_condition() {
        let cell = BatteryCell::lto_60mah();
        let sample = |t: f64, i: f64, v: f64| ChargeSample {
            time_s: t,
            current_ma: i,
            voltage_v: v,
        };
        let trace: Vec<_> = (0..30).map(|t| sample(t as f64, 150.0, 2.7)).collect();
        assert_eq!(end_of_charge(&cell, &trace), Some(11.0));
        let mut broken = trace.clone();
        broken[5].current_ma = 250.0;
        assert_eq!(end_of_charge(&cell, &broken), Some(17.0));
        let low_v: Vec<_> = (0..30).map(|t| sample(t as f64, 150.0, 2.5)).collect();
        assert_eq!(end_of_charge(&cell, &low_v), None);
        let short: Vec<_> = (0..=10).map(|t| sample(t as f64, 150.0, 2.7)).collect();
        assert_eq!(end_of_charge(&cell, &short), None);
        assert!(is_power_down(0.9));
        assert!(!is_power_down(1.0));
    }

    proptest! {
        #[test]
        fn pru_bounded_by_cell_corners(v in 8.0f64..21.0, i in 0.2f64..0.8) {
            let data = PruDataset::bundled();
            let e = data.efficiency(v, i).unwrap().efficiency;
            let (j, _) = bracket(data.vin_axis(), v);
            let (k, _) = bracket(data.iout_axis(), i);
            let corners = [data.eff[k][j], data.eff[k][j + 1], data.eff[k + 1][j], data.eff[k + 1][j + 1]];
            let max = corners.iter().cloned().fold(f64::MIN, f64::max);
            let min = corners.iter().cloned().fold(f64::MAX, f64::min);
            prop_assert!(e <= max + 1e-15 && e >= min - 1e-15);
        }

        #[test]
        fn mission_linear_in_capacity(cap in 1.0f64..500.0, scale in 0.1f64..10.0, dz in 50.0f64..100.0, hover in 0.0f64..200.0) {
            let cell = BatteryCell { capacity: cap, ..BatteryCell::lto_60mah() };
            let big = BatteryCell { capacity: cap * scale, ..cell };
            let a = mission_energy(&cell, dz, hover, 2.0).unwrap();
            let b = mission_energy(&big, dz, hover, 2.0).unwrap();
            prop_assert!((b.energy_transferred - scale * a.energy_transferred).abs() <= 1e-12 * b.energy_transferred);
            let ta = a.energy_drawn_from_uav - a.hover_energy;
            let tb = b.energy_drawn_from_uav - b.hover_energy;
            prop_assert!((tb - scale * ta).abs() <= 1e-9 * tb);
            prop_assert!(a.energy_drawn_from_uav >= a.energy_transferred);
        }
    }
}
