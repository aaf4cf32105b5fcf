//! Two-port measurement ingestion.
//!
//! Reads Touchstone v1 `.s2p` files, converts S to Z, and extracts the
//! coupling factor from the imaginary parts of the impedance matrix:
//! `L1 = Im Z11/ω`, `L2 = Im Z22/ω`, `M = Im Z12/ω`.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;

use crate::coupling::coupling_factor;
use crate::error::{Error, Result};

/// One frequency point of a two-port S-parameter measurement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoPortSample {
    /// Hz
    pub frequency: f64,
    pub s11: Complex64,
    pub s12: Complex64,
    pub s21: Complex64,
    pub s22: Complex64,
    /// Reference impedance, Ω.
    pub z0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ImpedanceMatrix {
    pub z11: Complex64,
    pub z12: Complex64,
    pub z21: Complex64,
    pub z22: Complex64,
}

/// Relative Z12/Z21 mismatch above which a matrix is flagged as non-reciprocal.
pub const RECIPROCITY_TOLERANCE: f64 = 0.01;

impl ImpedanceMatrix {
    /// `|Z12 − Z21| / max(|Z12|, |Z21|)`, zero when both vanish.
    pub fn reciprocity_deviation(&self) -> f64 {
        let scale = self.z12.norm().max(self.z21.norm());
        if scale == 0.0 {
            0.0
        } else {
            (self.z12 - self.z21).norm() / scale
        }
    }

    pub fn is_reciprocal(&self) -> bool {
        self.reciprocity_deviation() <= RECIPROCITY_TOLERANCE
    }
}

/// Number format of a Touchstone data section.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataFormat {
    /// Real / imaginary.
    RealImaginary,
    /// Linear magnitude / angle in degrees.
    MagnitudeAngle,
    /// dB magnitude / angle in degrees.
    DecibelAngle,
}

impl DataFormat {
    fn token(self) -> &'static str {
        match self {
            DataFormat::RealImaginary => "RI",
            DataFormat::MagnitudeAngle => "MA",
            DataFormat::DecibelAngle => "DB",
        }
    }

    fn decode(self, a: f64, b: f64) -> Complex64 {
        match self {
            DataFormat::RealImaginary => Complex64::new(a, b),
            DataFormat::MagnitudeAngle => Complex64::from_polar(a, b.to_radians()),
            DataFormat::DecibelAngle => Complex64::from_polar(10f64.powf(a / 20.0), b.to_radians()),
        }
    }

    fn encode(self, z: Complex64) -> (f64, f64) {
        match self {
            DataFormat::RealImaginary => (z.re, z.im),
            DataFormat::MagnitudeAngle => (z.norm(), z.arg().to_degrees()),
            DataFormat::DecibelAngle => (20.0 * z.norm().log10(), z.arg().to_degrees()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrequencyUnit {
    Hz,
    KHz,
    MHz,
    GHz,
}

impl FrequencyUnit {
    fn scale(self) -> f64 {
        match self {
            FrequencyUnit::Hz => 1.0,
            FrequencyUnit::KHz => 1e3,
            FrequencyUnit::MHz => 1e6,
            FrequencyUnit::GHz => 1e9,
        }
    }

    fn token(self) -> &'static str {
        match self {
            FrequencyUnit::Hz => "Hz",
            FrequencyUnit::KHz => "kHz",
            FrequencyUnit::MHz => "MHz",
            FrequencyUnit::GHz => "GHz",
        }
    }
}

/// Settings from a `#` option line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptionLine {
    pub unit: FrequencyUnit,
    pub format: DataFormat,
    pub z0: f64,
}

impl Default for OptionLine {
    /// Touchstone defaults for tokens omitted from the option line.
    fn default() -> Self {
        Self {
            unit: FrequencyUnit::GHz,
            format: DataFormat::MagnitudeAngle,
            z0: 50.0,
        }
    }
}

fn format_error(line: usize, message: impl Into<String>) -> Error {
    Error::Format {
        line,
        message: message.into(),
    }
}

fn parse_option_line(body: &str, line: usize) -> Result<OptionLine> {
    let mut opts = OptionLine::default();
    let mut tokens = body.split_whitespace();
    while let Some(tok) = tokens.next() {
        match tok.to_ascii_uppercase().as_str() {
            "HZ" => opts.unit = FrequencyUnit::Hz,
            "KHZ" => opts.unit = FrequencyUnit::KHz,
            "MHZ" => opts.unit = FrequencyUnit::MHz,
            "GHZ" => opts.unit = FrequencyUnit::GHz,
            "RI" => opts.format = DataFormat::RealImaginary,
            "MA" => opts.format = DataFormat::MagnitudeAngle,
            "DB" => opts.format = DataFormat::DecibelAngle,
            "S" => {}
            p @ ("Y" | "Z" | "H" | "G") => {
                return Err(format_error(
                    line,
                    format!("only S-parameter files are supported, found '{p}'"),
                ))
            }
            "R" => {
                let value = tokens
                    .next()
                    .ok_or_else(|| format_error(line, "missing reference impedance after R"))?;
                let z0: f64 = value.parse().map_err(|_| {
                    format_error(line, format!("invalid reference impedance '{value}'"))
                })?;
                if !(z0 > 0.0 && z0.is_finite()) {
                    return Err(format_error(
                        line,
                        format!("reference impedance must be positive, got {z0}"),
                    ));
                }
                opts.z0 = z0;
            }
            other => {
                return Err(format_error(
                    line,
                    format!("unknown option token '{other}'"),
                ))
            }
        }
    }
    Ok(opts)
}

/// Parses a two-port Touchstone v1 file.
///
/// Each data row holds nine numbers: frequency, then S11, S21, S12, S22
/// as pairs in the option-line format. `!` starts a comment anywhere on a
/// line. Only the first option line is honoured.
pub fn parse_touchstone(text: &str) -> Result<Vec<TwoPortSample>> {
    let mut options: Option<OptionLine> = None;
    let mut samples: Vec<TwoPortSample> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('!').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if content.starts_with('[') {
            return Err(format_error(
                line_no,
                format!(
                    "Touchstone v2 keyword '{content}' found; only version 1 files are supported"
                ),
            ));
        }
        if let Some(body) = content.strip_prefix('#') {
            if options.is_none() {
                options = Some(parse_option_line(body, line_no)?);
            }
            continue;
        }
        let opts =
            options.ok_or_else(|| format_error(line_no, "data before the '#' option line"))?;

        let values = content
            .split_whitespace()
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|_| format_error(line_no, format!("invalid number '{t}'")))
            })
            .collect::<Result<Vec<f64>>>()?;
        if values.len() != 9 {
            return Err(format_error(
                line_no,
                format!("expected 9 columns, found {}", values.len()),
            ));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(format_error(line_no, format!("non-finite value {v}")));
        }
        let frequency = values[0] * opts.unit.scale();
        if !(frequency > 0.0) {
            return Err(format_error(
                line_no,
                format!("frequency must be positive, got {}", values[0]),
            ));
        }
        if let Some(prev) = samples.last() {
            if frequency <= prev.frequency {
                return Err(format_error(
                    line_no,
                    "frequencies must be strictly increasing",
                ));
            }
        }
        let pair = |i: usize| opts.format.decode(values[i], values[i + 1]);
        samples.push(TwoPortSample {
            frequency,
            s11: pair(1),
            s21: pair(3),
            s12: pair(5),
            s22: pair(7),
            z0: opts.z0,
        });
    }

    if options.is_none() {
        return Err(format_error(0, "missing '#' option line"));
    }
    Ok(samples)
}

/// Byte input variant of [`parse_touchstone`].
pub fn parse_touchstone_bytes(bytes: &[u8]) -> Result<Vec<TwoPortSample>> {
    let text = std::str::from_utf8(bytes)
        .map_err(|e| format_error(0, format!("input is not UTF-8: {e}")))?;
    parse_touchstone(text)
}

/// Writes samples as Touchstone v1 text.
///
/// All samples must share one reference impedance. Numbers are written in
/// shortest round-trip form, so `Hz` + `RI` output re-parses to identical
/// bits.
pub fn write_touchstone(
    samples: &[TwoPortSample],
    unit: FrequencyUnit,
    format: DataFormat,
    header: &[&str],
) -> Result<String> {
    let z0 = samples.first().map_or(50.0, |s| s.z0);
    if samples.iter().any(|s| s.z0 != z0) {
        return Err(Error::Invalid(
            "samples use different reference impedances".into(),
        ));
    }
    let mut out = String::new();
    for line in header {
        let _ = writeln!(out, "! {line}");
    }
    let _ = writeln!(out, "# {} S {} R {}", unit.token(), format.token(), z0);
    for s in samples {
        let _ = write!(out, "{}", s.frequency / unit.scale());
        for z in [s.s11, s.s21, s.s12, s.s22] {
            let (a, b) = format.encode(z);
            let _ = write!(out, " {a} {b}");
        }
        out.push('\n');
    }
    Ok(out)
}

type Mat2 = [[Complex64; 2]; 2];

fn inverse(m: &Mat2) -> Option<Mat2> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let scale = m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    if !(det.norm() > 1e-14 * scale * scale) || !det.is_finite() {
        return None;
    }
    Some([
        [m[1][1] / det, -m[0][1] / det],
        [-m[1][0] / det, m[0][0] / det],
    ])
}

fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// `Z = z0 (I + S)(I − S)⁻¹`.
pub fn s_to_z(sample: &TwoPortSample) -> Result<ImpedanceMatrix> {
    let one = Complex64::new(1.0, 0.0);
    let plus = [
        [one + sample.s11, sample.s12],
        [sample.s21, one + sample.s22],
    ];
    let minus = [
        [one - sample.s11, -sample.s12],
        [-sample.s21, one - sample.s22],
    ];
    let inv = inverse(&minus).ok_or_else(|| {
        Error::Conversion(format!("(I − S) is singular at {} Hz", sample.frequency))
    })?;
    let z = mul(&plus, &inv);
    let z0 = sample.z0;
    Ok(ImpedanceMatrix {
        z11: z[0][0] * z0,
        z12: z[0][1] * z0,
        z21: z[1][0] * z0,
        z22: z[1][1] * z0,
    })
}

/// `S = (Z − z0 I)(Z + z0 I)⁻¹`, the inverse of [`s_to_z`].
pub fn z_to_s(zm: &ImpedanceMatrix, frequency: f64, z0: f64) -> Result<TwoPortSample> {
    let r = Complex64::new(z0, 0.0);
    let minus = [[zm.z11 - r, zm.z12], [zm.z21, zm.z22 - r]];
    let plus = [[zm.z11 + r, zm.z12], [zm.z21, zm.z22 + r]];
    let inv = inverse(&plus).ok_or_else(|| Error::Conversion("(Z + z0 I) is singular".into()))?;
    let s = mul(&minus, &inv);
    Ok(TwoPortSample {
        frequency,
        s11: s[0][0],
        s12: s[0][1],
        s21: s[1][0],
        s22: s[1][1],
        z0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CouplingExtraction {
    pub k: f64,
    /// H
    pub l1: f64,
    /// H
    pub l2: f64,
    /// H
    pub m: f64,
    /// Set when Z12 and Z21 differ by more than [`RECIPROCITY_TOLERANCE`].
    pub non_reciprocal: bool,
}

/// Coupling factor and inductances from a measured impedance matrix.
pub fn coupling_from_z(zm: &ImpedanceMatrix, frequency: f64) -> Result<CouplingExtraction> {
    if !(frequency > 0.0 && frequency.is_finite()) {
        return Err(Error::Extraction(format!(
            "frequency must be positive, got {frequency}"
        )));
    }
    let (x11, x22, x12) = (zm.z11.im, zm.z22.im, zm.z12.im);
    if !(x11 > 0.0 && x22 > 0.0) {
        return Err(Error::Extraction(format!(
            "ports must be inductive at {frequency} Hz (Im Z11 = {x11}, Im Z22 = {x22})"
        )));
    }
    let w = 2.0 * std::f64::consts::PI * frequency;
    let k = coupling_factor(x11, x22, x12).map_err(|e| Error::Extraction(e.to_string()))?;
    Ok(CouplingExtraction {
        k,
        l1: x11 / w,
        l2: x22 / w,
        m: x12 / w,
        non_reciprocal: !zm.is_reciprocal(),
    })
}

/// Sample whose frequency is closest to `frequency`.
pub fn nearest_sample(samples: &[TwoPortSample], frequency: f64) -> Option<&TwoPortSample> {
    samples.iter().min_by(|a, b| {
        (a.frequency - frequency)
            .abs()
            .total_cmp(&(b.frequency - frequency).abs())
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompareRow {
    pub dz_mm: f64,
    pub k_analytic: f64,
    pub k_measured: f64,
    pub abs_dev: f64,
    /// `abs_dev / |k_analytic|`
    pub rel_dev: f64,
}

fn same_key(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

/// Joins analytic and measured `(dz_mm, k)` series on distance, sorted by distance.
pub fn compare_report(analytic: &[(f64, f64)], measured: &[(f64, f64)]) -> Result<Vec<CompareRow>> {
    let mut missing: Vec<f64> = analytic
        .iter()
        .filter(|(d, _)| !measured.iter().any(|(m, _)| same_key(*d, *m)))
        .chain(
            measured
                .iter()
                .filter(|(m, _)| !analytic.iter().any(|(d, _)| same_key(*d, *m))),
        )
        .map(|(d, _)| *d)
        .collect();
    if !missing.is_empty() {
        missing.sort_by(f64::total_cmp);
        return Err(Error::Report { missing });
    }
    let mut rows: Vec<CompareRow> = analytic
        .iter()
        .map(|&(dz_mm, k_analytic)| {
            let k_measured = measured
                .iter()
                .find(|(m, _)| same_key(dz_mm, *m))
                .map(|(_, k)| *k)
                .unwrap_or(f64::NAN);
            let abs_dev = (k_measured - k_analytic).abs();
            let rel_dev = if k_analytic == 0.0 {
                if abs_dev == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else {
                abs_dev / k_analytic.abs()
            };
            CompareRow {
                dz_mm,
                k_analytic,
                k_measured,
                abs_dev,
                rel_dev,
            }
        })
        .collect();
    rows.sort_by(|a, b| a.dz_mm.total_cmp(&b.dz_mm));
    Ok(rows)
}

pub const COMPARE_HEADER: &str = "dz_mm,k_analytic,k_measured,abs_dev,rel_dev";

/// CSV with a header row, `.` decimals and LF line endings.
pub fn compare_report_csv(rows: &[CompareRow]) -> String {
    let mut out = String::from(COMPARE_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.dz_mm, r.k_analytic, r.k_measured, r.abs_dev, r.rel_dev
        );
    }
    out
}
