//! Global-warming-potential bookkeeping for node servicing strategies.
//!
//! Values are kgCO2eq; times are years.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::numerics::{find_crossing, Tolerance};

/// Ordered list of `(label, kgCO2eq)` contributions.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GwpInventory {
    components: Vec<(String, f64)>,
}

impl GwpInventory {
    pub fn new(components: Vec<(String, f64)>) -> Result<Self> {
        for (label, v) in &components {
            if !(*v >= 0.0 && v.is_finite()) {
                return Err(domain(format!(
                    "component '{label}' must be non-negative, got {v}"
                )));
            }
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[(String, f64)] {
        &self.components
    }
}

pub fn inventory_total(inv: &GwpInventory) -> f64 {
    inv.components.iter().map(|(_, v)| v).sum()
}

fn node_inventory(battery: f64) -> GwpInventory {
    let parts = [
        ("PCB coil", 0.793),
        ("ICs", 0.298),
        ("Passives", 0.347),
        ("PCB", 0.182),
        ("Battery", battery),
    ];
    GwpInventory::new(parts.iter().map(|(l, v)| (l.to_string(), *v)).collect())
        .expect("preset values are valid")
}

/// Sensor node with the small low-power cell.
pub fn low_power_inventory() -> GwpInventory {
    node_inventory(0.0363)
}

/// Sensor node with the larger medium-power cell.
pub fn medium_power_inventory() -> GwpInventory {
    node_inventory(0.787)
}

pub fn inventory(name: &str) -> Result<GwpInventory> {
    match name {
        "low" => Ok(low_power_inventory()),
        "medium" => Ok(medium_power_inventory()),
        _ => Err(Error::Invalid(format!(
            "unknown inventory '{name}' (known: low, medium)"
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Accrual {
    /// `initial_gwp + annual_rate · t`
    Linear { initial_gwp: f64, annual_rate: f64 },
    /// `base_gwp + per_event_gwp · floor(t / replacement_period)`
    Replacement {
        base_gwp: f64,
        replacement_period: f64,
        per_event_gwp: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawScenario", into = "RawScenario")]
pub struct ServicingScenario {
    pub label: String,
    pub accrual: Accrual,
}

/// Flat JSON shape; exactly one parameter group must be present.
#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    initial_gwp: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    annual_rate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    base_gwp: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    replacement_period: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    per_event_gwp: Option<f64>,
}

impl From<ServicingScenario> for RawScenario {
    fn from(sc: ServicingScenario) -> Self {
        let label = sc.label;
        match sc.accrual {
            Accrual::Linear {
                initial_gwp,
                annual_rate,
            } => RawScenario {
                label,
                initial_gwp: Some(initial_gwp),
                annual_rate: Some(annual_rate),
                ..Default::default()
            },
            Accrual::Replacement {
                base_gwp,
                replacement_period,
                per_event_gwp,
            } => RawScenario {
                label,
                base_gwp: Some(base_gwp),
                replacement_period: Some(replacement_period),
                per_event_gwp: Some(per_event_gwp),
                ..Default::default()
            },
        }
    }
}

impl TryFrom<RawScenario> for ServicingScenario {
    type Error = Error;

    fn try_from(raw: RawScenario) -> Result<Self> {
        let linear = raw.initial_gwp.is_some() || raw.annual_rate.is_some();
        let replacement = raw.base_gwp.is_some()
            || raw.replacement_period.is_some()
            || raw.per_event_gwp.is_some();
        let accrual = match (linear, replacement) {
            (true, false) => Accrual::Linear {
                initial_gwp: raw.initial_gwp.ok_or_else(|| domain("linear scenario needs initial_gwp"))?,
                annual_rate: raw.annual_rate.ok_or_else(|| domain("linear scenario needs annual_rate"))?,
            },
            (false, true) => Accrual::Replacement {
                base_gwp: raw.base_gwp.ok_or_else(|| domain("replacement scenario needs base_gwp"))?,
                replacement_period: raw
                    .replacement_period
                    .ok_or_else(|| domain("replacement scenario needs replacement_period"))?,
                per_event_gwp: raw.per_event_gwp.ok_or_else(|| domain("replacement scenario needs per_event_gwp"))?,
            },
            _ => {
                return Err(domain(format!(
                    "scenario '{}' must define exactly one of linear (initial_gwp, annual_rate) or replacement (base_gwp, replacement_period, per_event_gwp)",
                    raw.label
                )))
            }
        };
        ServicingScenario::new(raw.label, accrual)
    }
}

impl ServicingScenario {
    pub fn new(label: impl Into<String>, accrual: Accrual) -> Result<Self> {
        let label = label.into();
        match accrual {
            Accrual::Linear {
                initial_gwp,
                annual_rate,
            } => {
                if !initial_gwp.is_finite() || !(annual_rate >= 0.0 && annual_rate.is_finite()) {
                    return Err(domain(format!(
                        "scenario '{label}': annual rate must be non-negative and values finite"
                    )));
                }
            }
            Accrual::Replacement {
                base_gwp,
                replacement_period,
                per_event_gwp,
            } => {
                if !base_gwp.is_finite()
                    || !(replacement_period > 0.0 && replacement_period.is_finite())
                    || !(per_event_gwp >= 0.0 && per_event_gwp.is_finite())
                {
                    return Err(domain(format!(
                        "scenario '{label}': period must be positive and per-event GWP non-negative"
                    )));
                }
            }
        }
        Ok(Self { label, accrual })
    }

    pub fn linear(label: &str, initial_gwp: f64, annual_rate: f64) -> Result<Self> {
        Self::new(
            label,
            Accrual::Linear {
                initial_gwp,
                annual_rate,
            },
        )
    }

    pub fn replacement(
        label: &str,
        base_gwp: f64,
        replacement_period: f64,
        per_event_gwp: f64,
    ) -> Result<Self> {
        Self::new(
            label,
            Accrual::Replacement {
                base_gwp,
                replacement_period,
                per_event_gwp,
            },
        )
    }
}

/// Cumulative impact after `t` years of service.
pub fn cumulative_gwp(sc: &ServicingScenario, t: f64) -> Result<f64> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(domain(format!("time must be non-negative, got {t} yr")));
    }
    Ok(match sc.accrual {
        Accrual::Linear {
            initial_gwp,
            annual_rate,
        } => initial_gwp + annual_rate * t,
        Accrual::Replacement {
            base_gwp,
            replacement_period,
            per_event_gwp,
        } => base_gwp + per_event_gwp * (t / replacement_period).floor(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Breakeven {
    At { years: f64 },
    NoCrossing,
}

impl Breakeven {
    pub fn years(&self) -> Option<f64> {
        match self {
            Breakeven::At { years } => Some(*years),
            Breakeven::NoCrossing => None,
        }
    }
}

const SCAN_STEPS: usize = 4096;

/// Earliest time in `(0, horizon]` at which `a` stops exceeding `b`.
///
/// `a` has to start above `b`; otherwise there is nothing to break even on.
pub fn breakeven(a: &ServicingScenario, b: &ServicingScenario, horizon: f64) -> Result<Breakeven> {
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(domain(format!(
            "horizon must be positive, got {horizon} yr"
        )));
    }
    let gap = |t: f64| -> f64 {
        cumulative_gwp(a, t).unwrap_or(f64::NAN) - cumulative_gwp(b, t).unwrap_or(f64::NAN)
    };
    if gap(0.0) <= 0.0 {
        return Ok(Breakeven::NoCrossing);
    }
    let step = horizon / SCAN_STEPS as f64;
    let mut lo = 0.0;
    for i in 1..=SCAN_STEPS {
        let hi = if i == SCAN_STEPS {
            horizon
        } else {
            step * i as f64
        };
        if gap(hi) <= 0.0 {
            let tol = Tolerance::new(1e-12, 1e-12, 200)?;
            let t = find_crossing(gap, lo, hi, tol)?;
            return Ok(Breakeven::At { years: t });
        }
        lo = hi;
    }
    Ok(Breakeven::NoCrossing)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioRow {
    pub t_years: f64,
    pub values: Vec<f64>,
}

/// One row per time step from 0 to `horizon` inclusive, one value per scenario.
pub fn scenario_table(
    scenarios: &[ServicingScenario],
    horizon: f64,
    step: f64,
) -> Result<Vec<ScenarioRow>> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(domain(format!("step must be positive, got {step} yr")));
    }
    if !(horizon >= 0.0 && horizon.is_finite()) {
        return Err(domain(format!(
            "horizon must be non-negative, got {horizon} yr"
        )));
    }
    let count = (horizon / step * (1.0 + 1e-12)).floor() as usize;
    (0..=count)
        .map(|i| {
            let t = (i as f64 * step).min(horizon);
            let values = scenarios
                .iter()
                .map(|s| cumulative_gwp(s, t))
                .collect::<Result<Vec<_>>>()?;
            Ok(ScenarioRow { t_years: t, values })
        })
        .collect()
}

/// CSV with a `t_years,<label>...` header.
pub fn scenario_table_csv(scenarios: &[ServicingScenario], rows: &[ScenarioRow]) -> String {
    let mut out = String::from("t_years");
    for s in scenarios {
        out.push(',');
        out.push_str(&s.label);
    }
    out.push('\n');
    for r in rows {
        out.push_str(&r.t_years.to_string());
        for v in &r.values {
            out.push(',');
            out.push_str(&v.to_string());
        }
        out.push('\n');
    }
    out
}

/// Names accepted by [`scenario`].
pub const SCENARIO_NAMES: &[&str] = &[
    "uav-low",
    "battery-low",
    "replace-1yr",
    "replace-5yr",
    "uav-medium",
    "battery-medium",
    "replace-1yr-medium",
    "replace-5yr-medium",
];

fn line(label: &str, at0: f64, at15: f64) -> ServicingScenario {
    ServicingScenario::linear(label, at0, (at15 - at0) / 15.0).expect("preset values are valid")
}

/// Averaged linear servicing lines, 15-year horizon.
pub fn scenario(name: &str) -> Result<ServicingScenario> {
    Ok(match name {
        "uav-low" => line(name, 4.696288, 6.819628185185185),
        "battery-low" => line(name, 3.0, 3.7710625),
        "replace-1yr" => line(name, 3.0, 48.7710625),
        "replace-5yr" => line(name, 3.0, 12.7710625),
        "uav-medium" => line(name, 5.44624, 7.130013076923077),
        "battery-medium" => line(name, 3.0, 18.42125),
        "replace-1yr-medium" => line(name, 3.0, 63.42125),
        "replace-5yr-medium" => line(name, 3.0, 27.42125),
        _ => {
            return Err(Error::Invalid(format!(
                "unknown scenario '{name}' (known: {})",
                SCENARIO_NAMES.join(", ")
            )))
        }
    })
}
