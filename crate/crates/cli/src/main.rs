//! `dronecharge` command-line front end.
//!
//! Flags take mm, MHz, pF, Ω, mAh, W and years; everything is converted to
//! SI before it reaches the library.

mod config;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dronecharge_core::coil::{coil_self_inductance, OperatingPoint};
use dronecharge_core::coupling::{
    coaxial_coupling, coupling_vs_distance, misalignment_grid, LoopDiscretization, Offsets,
};
use dronecharge_core::gwp::{breakeven, inventory, inventory_total, scenario_table, Breakeven};
use dronecharge_core::link::{
    detuning_report, inductance_from_reactance, link_efficiency, optimal_load, quality_factors,
    required_source_voltage, resonant_capacitor, snap_to_series, solve_link, ESeries, LinkCircuit,
};
use dronecharge_core::measurement::{
    compare_report, coupling_from_z, nearest_sample, parse_touchstone_bytes, s_to_z, COMPARE_HEADER,
};
use dronecharge_core::mission::{
    autonomy_from_leakage, charge_time, mission_energy, pru_efficiency, Autonomy, BatteryCell,
};
use dronecharge_core::presets::CircuitEsr;

use config::Config;
use table::{Cell, Table};

#[derive(Debug)]
pub enum AppError {
    /// Bad invocation or unresolvable name; exit code 2.
    Usage(String),
    /// Rejected by the models; exit code 1.
    Domain(dronecharge_core::Error),
}

impl From<dronecharge_core::Error> for AppError {
    fn from(e: dronecharge_core::Error) -> Self {
        AppError::Domain(e)
    }
}

type AppResult<T> = Result<T, AppError>;

#[derive(Debug, Parser)]
#[command(
    name = "dronecharge",
    version,
    about = "Coil coupling, link design, mission and GWP calculations for drone-based wireless charging"
)]
struct Cli {
    /// Emit a JSON document instead of CSV.
    #[arg(long, global = true)]
    json: bool,
    /// JSON file with `coils`, `circuits` and `scenarios` sections.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Coupling factor versus distance, lateral offset or tilt.
    #[command(allow_negative_numbers = true)]
    Coupling(CouplingArgs),
    /// Self-inductance of named coils.
    Inductance(InductanceArgs),
    /// Series resonance capacitor for a coil.
    Tune(TuneArgs),
    /// Link efficiency, optimal load, required source voltage and detuning.
    #[command(allow_negative_numbers = true)]
    Link(LinkArgs),
    /// Coupling extracted from two-port Touchstone measurements.
    Ingest(IngestArgs),
    /// Energy budget of one recharge mission.
    Mission(MissionArgs),
    /// Global-warming-potential inventories and servicing scenarios.
    Gwp {
        #[command(subcommand)]
        command: GwpCommand,
    },
}

#[derive(Debug, Args)]
struct CouplingArgs {
    #[arg(long, default_value = "default-uav")]
    tx: String,
    #[arg(long, default_value = "d100w4")]
    rx: String,
    /// Coil-to-coil distances.
    #[arg(
        long = "dz-mm",
        required = true,
        value_delimiter = ',',
        allow_hyphen_values = true
    )]
    dz_mm: Vec<f64>,
    /// Lateral offsets; switches to the Neumann solver.
    #[arg(
        long = "dx-mm",
        value_delimiter = ',',
        allow_hyphen_values = true,
        conflicts_with = "tilt_deg"
    )]
    dx_mm: Vec<f64>,
    /// Receiver tilt angles; switches to the Neumann solver.
    #[arg(long = "tilt-deg", value_delimiter = ',', allow_hyphen_values = true)]
    tilt_deg: Vec<f64>,
    #[arg(long = "freq-mhz", default_value_t = 6.78)]
    freq_mhz: f64,
    /// Segments per winding for the Neumann solver.
    #[arg(long, default_value_t = 720)]
    segments: usize,
}

#[derive(Debug, Args)]
struct InductanceArgs {
    #[arg(long, required = true, value_delimiter = ',', num_args = 1..)]
    coil: Vec<String>,
    #[arg(long = "freq-mhz", default_value_t = 6.78)]
    freq_mhz: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SeriesArg {
    E6,
    E12,
    E24,
}

#[derive(Debug, Args)]
struct TuneArgs {
    #[arg(long = "inductance-uh", conflicts_with_all = ["reactance_ohm", "coil"])]
    inductance_uh: Option<f64>,
    /// Coil reactance measured at the operating frequency.
    #[arg(long = "reactance-ohm", conflicts_with = "coil")]
    reactance_ohm: Option<f64>,
    #[arg(long)]
    coil: Option<String>,
    #[arg(long = "freq-mhz", default_value_t = 6.78)]
    freq_mhz: f64,
    /// Snap to the E12 series.
    #[arg(long, conflicts_with = "series")]
    e12: bool,
    #[arg(long, value_enum)]
    series: Option<SeriesArg>,
}

#[derive(Debug, Args)]
struct LinkArgs {
    /// Circuit from the config file, or the built-in `measured`.
    #[arg(long, default_value = "measured")]
    circuit: String,
    /// Derive L1 from this coil (with --rx and --dz-mm, also k).
    #[arg(long)]
    tx: Option<String>,
    #[arg(long)]
    rx: Option<String>,
    #[arg(long = "dz-mm")]
    dz_mm: Option<f64>,
    #[arg(long = "l1-uh")]
    l1_uh: Option<f64>,
    #[arg(long = "l2-uh")]
    l2_uh: Option<f64>,
    #[arg(long)]
    k: Option<f64>,
    #[arg(long = "r1-ohm")]
    r1_ohm: Option<f64>,
    #[arg(long = "r2-ohm")]
    r2_ohm: Option<f64>,
    #[arg(long = "rs-ohm")]
    rs_ohm: Option<f64>,
    /// Load resistance; the optimal load is used when omitted.
    #[arg(long = "load-ohm")]
    load_ohm: Option<f64>,
    #[arg(long = "freq-mhz")]
    freq_mhz: Option<f64>,
    /// Target load power for the required source voltage.
    #[arg(long = "power-w")]
    power_w: Option<f64>,
}

#[derive(Debug, Args)]
struct IngestArgs {
    /// Two-port `.s2p` files.
    #[arg(required = true)]
    files: Vec<PathBuf>,
    #[arg(long = "freq-mhz", default_value_t = 6.78)]
    freq_mhz: f64,
    /// Distance of each file; produces a comparison against the analytic model.
    #[arg(long = "dz-mm", value_delimiter = ',', num_args = 1..)]
    dz_mm: Vec<f64>,
    #[arg(long, default_value = "default-uav")]
    tx: String,
    #[arg(long, default_value = "d100w4")]
    rx: String,
}

#[derive(Debug, Args)]
struct MissionArgs {
    /// UAV hover power; there is no default.
    #[arg(long = "hover-power-w", required = true)]
    hover_power_w: f64,
    #[arg(long = "capacity-mah", default_value_t = 60.0)]
    capacity_mah: f64,
    #[arg(long = "voltage-v", default_value_t = 2.4)]
    voltage_v: f64,
    #[arg(long = "max-rate-c", default_value_t = 10.0)]
    max_rate_c: f64,
    #[arg(long = "rate-c", default_value_t = 10.0)]
    rate_c: f64,
    #[arg(long = "dz-mm", default_value_t = 50.0)]
    dz_mm: f64,
    /// Standby leakage for the autonomy estimate.
    #[arg(long = "leakage-ua")]
    leakage_ua: Option<f64>,
    /// Receiver input voltage for a PRU efficiency lookup (with --pru-iout-a).
    #[arg(long = "pru-vin-v", requires = "pru_iout_a")]
    pru_vin_v: Option<f64>,
    #[arg(long = "pru-iout-a", requires = "pru_vin_v")]
    pru_iout_a: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum GwpCommand {
    /// Component contributions and total.
    Inventory {
        #[arg(long, default_value = "low")]
        name: String,
    },
    /// Cumulative curves, one column per scenario.
    Curves {
        #[arg(
            long,
            value_delimiter = ',',
            num_args = 1..,
            default_value = "uav-low,battery-low,replace-1yr,replace-5yr"
        )]
        scenario: Vec<String>,
        #[arg(long = "horizon-yr", default_value_t = 15.0)]
        horizon_yr: f64,
        #[arg(long = "step-yr", default_value_t = 1.0)]
        step_yr: f64,
    },
    /// Time at which scenario A stops exceeding scenario B.
    Breakeven {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long = "horizon-yr", default_value_t = 15.0)]
        horizon_yr: f64,
    },
}

fn mhz(v: f64) -> AppResult<OperatingPoint> {
    Ok(OperatingPoint::new(v * 1e6)?)
}

fn coupling(cfg: &Config, a: &CouplingArgs) -> AppResult<Table> {
    let tx = cfg.coil(&a.tx)?;
    let rx = cfg.coil(&a.rx)?;
    let op = mhz(a.freq_mhz)?;
    let dz: Vec<f64> = a.dz_mm.iter().map(|d| d / 1000.0).collect();
    let offsets = if !a.dx_mm.is_empty() {
        Some((
            Offsets::Lateral(a.dx_mm.iter().map(|d| d / 1000.0).collect()),
            "dx_mm",
            &a.dx_mm,
        ))
    } else if !a.tilt_deg.is_empty() {
        Some((Offsets::Tilt(a.tilt_deg.clone()), "tilt_deg", &a.tilt_deg))
    } else {
        None
    };
    match offsets {
        None => {
            let mut t = Table::new("coupling", &["dz_mm", "k", "l2_eff_uH"]);
            for (p, dz_mm) in coupling_vs_distance(&tx, &rx, &dz, op)?
                .iter()
                .zip(&a.dz_mm)
            {
                t.push(vec![(*dz_mm).into(), p.k.into(), (p.l2_eff * 1e6).into()]);
            }
            Ok(t)
        }
        Some((offsets, column, labels)) => {
            let disc = LoopDiscretization::new(a.segments)?;
            let grid = misalignment_grid(&tx, &rx, &dz, offsets, disc, op)?;
            let mut t = Table::new("coupling", &["dz_mm", column, "k"]);
            for (row, dz_mm) in grid.k.iter().zip(&a.dz_mm) {
                for (k, off) in row.iter().zip(labels) {
                    t.push(vec![(*dz_mm).into(), (*off).into(), (*k).into()]);
                }
            }
            Ok(t)
        }
    }
}

fn inductance(cfg: &Config, a: &InductanceArgs) -> AppResult<Table> {
    let op = mhz(a.freq_mhz)?;
    let mut t = Table::new(
        "inductance",
        &["coil", "windings", "outer_radius_mm", "l_uH"],
    );
    for name in &a.coil {
        let coil = cfg.coil(name)?;
        let l = coil_self_inductance(&coil, op)?;
        t.push(vec![
            name.as_str().into(),
            coil.windings().into(),
            (coil.winding_radii()[0] * 1000.0).into(),
            (l * 1e6).into(),
        ]);
    }
    Ok(t)
}

fn tune(cfg: &Config, a: &TuneArgs) -> AppResult<Table> {
    let f = a.freq_mhz * 1e6;
    let l = match (a.inductance_uh, a.reactance_ohm, &a.coil) {
        (Some(l), None, None) => l * 1e-6,
        (None, Some(x), None) => inductance_from_reactance(x, f)?,
        (None, None, Some(name)) => coil_self_inductance(&cfg.coil(name)?, mhz(a.freq_mhz)?)?,
        _ => {
            return Err(AppError::Usage(
                "give one of --inductance-uh, --reactance-ohm or --coil".into(),
            ))
        }
    };
    let c = resonant_capacitor(l, f)?;
    let series = match (a.e12, a.series) {
        (true, _) => Some(ESeries::E12),
        (false, Some(SeriesArg::E6)) => Some(ESeries::E6),
        (false, Some(SeriesArg::E12)) => Some(ESeries::E12),
        (false, Some(SeriesArg::E24)) => Some(ESeries::E24),
        (false, None) => None,
    };
    let mut t = Table::new(
        "tune",
        &["freq_mhz", "l_uH", "c_pF", "c_series_pF", "f0_series_mhz"],
    );
    let (snapped, f0) = match series {
        Some(s) => {
            let cs = snap_to_series(c, s)?;
            (
                Some(cs * 1e12),
                Some(1.0 / (2.0 * std::f64::consts::PI * (l * cs).sqrt()) / 1e6),
            )
        }
        None => (None, None),
    };
    t.push(vec![
        a.freq_mhz.into(),
        (l * 1e6).into(),
        (c * 1e12).into(),
        snapped.into(),
        f0.into(),
    ]);
    Ok(t)
}

fn link(cfg: &Config, a: &LinkArgs) -> AppResult<Table> {
    let base = cfg.circuit(&a.circuit)?;
    let freq_mhz = a.freq_mhz.or(base.freq_mhz).unwrap_or(6.78);
    let f = freq_mhz * 1e6;
    let op = mhz(freq_mhz)?;

    let tx = a.tx.as_deref().map(|n| cfg.coil(n)).transpose()?;
    let rx = a.rx.as_deref().map(|n| cfg.coil(n)).transpose()?;
    let from_coil = |c: &Option<dronecharge_core::coil::PlanarCoil>| -> AppResult<Option<f64>> {
        Ok(match c {
            Some(c) => Some(coil_self_inductance(c, op)?),
            None => None,
        })
    };
    let from_reactance = |x: Option<f64>| x.map(|x| inductance_from_reactance(x, f)).transpose();
    let l1 = match (a.l1_uh, from_coil(&tx)?) {
        (Some(l), _) => l * 1e-6,
        (None, Some(l)) => l,
        (None, None) => base
            .l1_uh
            .map(|l| l * 1e-6)
            .or(from_reactance(base.tx_reactance_ohm)?)
            .ok_or_else(|| AppError::Usage("L1 is not defined; pass --l1-uh or --tx".into()))?,
    };
    let l2 = match (a.l2_uh, from_coil(&rx)?) {
        (Some(l), _) => l * 1e-6,
        (None, Some(l)) => l,
        (None, None) => base
            .l2_uh
            .map(|l| l * 1e-6)
            .or(from_reactance(base.rx_reactance_ohm)?)
            .ok_or_else(|| AppError::Usage("L2 is not defined; pass --l2-uh or --rx".into()))?,
    };
    let k = match (a.k, &tx, &rx, a.dz_mm) {
        (Some(k), ..) => k,
        (None, Some(tx), Some(rx), Some(dz)) => coaxial_coupling(tx, rx, dz / 1000.0, op)?,
        (None, ..) => base
            .k
            .ok_or_else(|| AppError::Usage("k is not defined; pass --k".into()))?,
    };
    let esr = CircuitEsr {
        r1: a.r1_ohm.or(base.r1_ohm).unwrap_or(0.0),
        r2: a.r2_ohm.or(base.r2_ohm).unwrap_or(0.0),
        rs: a.rs_ohm.or(base.rs_ohm).unwrap_or(0.0),
    };
    let probe = LinkCircuit::tuned(l1, l2, esr, k, 1.0, f)?;
    let rl_opt = optimal_load(&probe);
    let load = a.load_ohm.or(base.load_ohm).unwrap_or(rl_opt);
    let circuit = probe.with_load(load)?;
    let best = probe.with_load(rl_opt)?;
    let q = quality_factors(&circuit);
    let solution = solve_link(&circuit, 1.0)?;
    let detune = detuning_report(&circuit)?;
    let vs = a
        .power_w
        .map(|p| required_source_voltage(&circuit, p))
        .transpose()?;

    let mut t = Table::new(
        "link",
        &[
            "freq_mhz",
            "l1_uH",
            "l2_uH",
            "k",
            "r1_ohm",
            "r2_ohm",
            "rs_ohm",
            "c1_pF",
            "c2_pF",
            "q1",
            "q2",
            "qt",
            "qr",
            "load_ohm",
            "efficiency",
            "efficiency_mesh",
            "optimal_load_ohm",
            "max_efficiency",
            "power_w",
            "vs_required_v",
            "f0_tx_eff_mhz",
            "f0_rx_eff_mhz",
            "relative_shift",
            "detuning_penalty",
        ],
    );
    t.push(vec![
        freq_mhz.into(),
        (l1 * 1e6).into(),
        (l2 * 1e6).into(),
        k.into(),
        esr.r1.into(),
        esr.r2.into(),
        esr.rs.into(),
        (circuit.tx.capacitance * 1e12).into(),
        (circuit.rx.capacitance * 1e12).into(),
        q.q_1.into(),
        q.q_2.into(),
        q.q_t.into(),
        q.q_r.into(),
        load.into(),
        link_efficiency(&circuit).into(),
        solution.efficiency.into(),
        rl_opt.into(),
        link_efficiency(&best).into(),
        a.power_w.into(),
        vs.into(),
        (detune.effective_f0_tx / 1e6).into(),
        (detune.effective_f0_rx / 1e6).into(),
        detune.relative_shift.into(),
        detune.efficiency_penalty.into(),
    ]);
    Ok(t)
}

fn ingest(cfg: &Config, a: &IngestArgs) -> AppResult<Table> {
    let f = a.freq_mhz * 1e6;
    let mut extracted = Vec::new();
    for path in &a.files {
        let bytes = std::fs::read(path)
            .map_err(|e| AppError::Usage(format!("cannot read {}: {e}", path.display())))?;
        let samples = parse_touchstone_bytes(&bytes)?;
        let sample = nearest_sample(&samples, f).ok_or_else(|| {
            AppError::Domain(dronecharge_core::Error::Extraction(format!(
                "{} has no data",
                path.display()
            )))
        })?;
        let ex = coupling_from_z(&s_to_z(sample)?, sample.frequency)?;
        if ex.non_reciprocal {
            eprintln!(
                "warning: {} is not reciprocal at {} Hz",
                path.display(),
                sample.frequency
            );
        }
        extracted.push((path, sample.frequency, ex));
    }

    if a.dz_mm.is_empty() {
        let mut t = Table::new(
            "ingest",
            &[
                "file",
                "frequency_hz",
                "k",
                "l1_uH",
                "l2_uH",
                "m_nH",
                "non_reciprocal",
            ],
        );
        for (path, freq, ex) in extracted {
            t.push(vec![
                path.display().to_string().into(),
                freq.into(),
                ex.k.into(),
                (ex.l1 * 1e6).into(),
                (ex.l2 * 1e6).into(),
                (ex.m * 1e9).into(),
                ex.non_reciprocal.into(),
            ]);
        }
        return Ok(t);
    }

    if a.dz_mm.len() != a.files.len() {
        return Err(AppError::Usage(format!(
            "--dz-mm lists {} distances for {} files",
            a.dz_mm.len(),
            a.files.len()
        )));
    }
    let tx = cfg.coil(&a.tx)?;
    let rx = cfg.coil(&a.rx)?;
    let op = mhz(a.freq_mhz)?;
    let measured: Vec<(f64, f64)> = a
        .dz_mm
        .iter()
        .zip(&extracted)
        .map(|(d, (_, _, ex))| (*d, ex.k))
        .collect();
    let analytic = a
        .dz_mm
        .iter()
        .map(|d| Ok((*d, coaxial_coupling(&tx, &rx, d / 1000.0, op)?)))
        .collect::<AppResult<Vec<_>>>()?;
    let header: Vec<&str> = COMPARE_HEADER.split(',').collect();
    let mut t = Table::new("ingest", &header);
    for r in compare_report(&analytic, &measured)? {
        t.push(vec![
            r.dz_mm.into(),
            r.k_analytic.into(),
            r.k_measured.into(),
            r.abs_dev.into(),
            r.rel_dev.into(),
        ]);
    }
    Ok(t)
}

fn mission(a: &MissionArgs) -> AppResult<Table> {
    let base = BatteryCell::lto_60mah();
    let cell = BatteryCell::new(
        a.capacity_mah,
        a.voltage_v,
        a.max_rate_c,
        base.charge_done_current,
        base.charge_done_voltage,
    )?;
    let minutes = charge_time(&cell, a.rate_c)?;
    let budget = mission_energy(&cell, a.dz_mm, a.hover_power_w, a.rate_c)?;
    let autonomy = a
        .leakage_ua
        .map(|l| autonomy_from_leakage(&cell, l))
        .transpose()?
        .map(|a| match a {
            Autonomy::Finite { years } => Cell::Num(years),
            Autonomy::Infinite => Cell::Text("infinite".into()),
        })
        .unwrap_or(Cell::Empty);
    let pru = match (a.pru_vin_v, a.pru_iout_a) {
        (Some(v), Some(i)) => {
            let p = pru_efficiency(v, i)?;
            if p.clamped {
                eprintln!("warning: PRU query {v} V / {i} A lies outside the measured grid and was clamped");
            }
            Some(p.efficiency)
        }
        _ => None,
    };
    let mut t = Table::new(
        "mission",
        &[
            "capacity_mAh",
            "voltage_v",
            "rate_c",
            "dz_mm",
            "charge_min",
            "energy_transferred_wh",
            "energy_drawn_wh",
            "hover_energy_wh",
            "hover_power_w",
            "hover_power_source",
            "autonomy_years",
            "pru_efficiency",
        ],
    );
    t.push(vec![
        a.capacity_mah.into(),
        a.voltage_v.into(),
        a.rate_c.into(),
        a.dz_mm.into(),
        minutes.into(),
        budget.energy_transferred.into(),
        budget.energy_drawn_from_uav.into(),
        budget.hover_energy.into(),
        a.hover_power_w.into(),
        "user-supplied".into(),
        autonomy,
        pru.into(),
    ]);
    Ok(t)
}

fn gwp(cfg: &Config, cmd: &GwpCommand) -> AppResult<Table> {
    match cmd {
        GwpCommand::Inventory { name } => {
            let inv = inventory(name).map_err(|e| AppError::Usage(e.to_string()))?;
            let mut t = Table::new("gwp inventory", &["component", "kgco2eq"]);
            for (label, v) in inv.components() {
                t.push(vec![label.as_str().into(), (*v).into()]);
            }
            t.push(vec!["total".into(), inventory_total(&inv).into()]);
            Ok(t)
        }
        GwpCommand::Curves {
            scenario,
            horizon_yr,
            step_yr,
        } => {
            let scenarios = scenario
                .iter()
                .map(|n| cfg.scenario(n))
                .collect::<AppResult<Vec<_>>>()?;
            let mut header = vec!["t_years"];
            header.extend(scenarios.iter().map(|s| s.label.as_str()));
            let mut t = Table::new("gwp curves", &header);
            for row in scenario_table(&scenarios, *horizon_yr, *step_yr)? {
                let mut cells = vec![Cell::Num(row.t_years)];
                cells.extend(row.values.into_iter().map(Cell::Num));
                t.push(cells);
            }
            Ok(t)
        }
        GwpCommand::Breakeven { a, b, horizon_yr } => {
            let (sa, sb) = (cfg.scenario(a)?, cfg.scenario(b)?);
            let result = breakeven(&sa, &sb, *horizon_yr)?;
            let mut t = Table::new("gwp breakeven", &["a", "b", "horizon_yr", "breakeven_yr"]);
            let cell = match result {
                Breakeven::At { years } => Cell::Num(years),
                Breakeven::NoCrossing => Cell::Text("none".into()),
            };
            t.push(vec![
                a.as_str().into(),
                b.as_str().into(),
                (*horizon_yr).into(),
                cell,
            ]);
            Ok(t)
        }
    }
}

fn run(cli: &Cli) -> AppResult<Table> {
    let cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    match &cli.command {
        Command::Coupling(a) => coupling(&cfg, a),
        Command::Inductance(a) => inductance(&cfg, a),
        Command::Tune(a) => tune(&cfg, a),
        Command::Link(a) => link(&cfg, a),
        Command::Ingest(a) => ingest(&cfg, a),
        Command::Mission(a) => mission(a),
        Command::Gwp { command } => gwp(&cfg, command),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(table) => {
            print!(
                "{}",
                if cli.json {
                    table.to_json()
                } else {
                    table.to_csv()
                }
            );
            ExitCode::SUCCESS
        }
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
