//! Ingestion of tabulated optical data.
//!
//! A material axis is described by `Im eps(omega)` over a measured window
//! `[omega_lo, omega_hi]` (eV). Tables arrive as CSV, either directly as
//! `omega_eV,im_eps` or as complex refractive-index rows
//! `omega_eV,re_n,im_n`, in which case `Im eps = 2 Re(n) Im(n)`. Outside the
//! window the tails are handled analytically by an [`ExtrapolationSpec`]: a
//! Drude form or a constant below the window and an `A/omega^3` falloff above
//! it.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

/// Crystal axis the data refer to: `X` is the ordinary direction (in-plane),
/// `Z` the extraordinary one (along the optic axis).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OpticalAxis {
    X,
    Z,
}

impl std::fmt::Display for OpticalAxis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OpticalAxis::X => write!(f, "x"),
            OpticalAxis::Z => write!(f, "z"),
        }
    }
}

/// Tabulated `Im eps(omega)` for one crystal axis, strictly increasing in
/// frequency, with the measurement window equal to the first/last rows.
#[derive(Debug, Clone, PartialEq)]
pub struct OpticalDataTable {
    axis: OpticalAxis,
    omega_ev: Vec<f64>,
    im_eps: Vec<f64>,
}

impl OpticalDataTable {
    pub fn new(axis: OpticalAxis, omega_ev: Vec<f64>, im_eps: Vec<f64>) -> Result<Self> {
        if omega_ev.len() != im_eps.len() {
            return Err(Error::ingest(
                format!(
                    "frequency and value columns differ in length: {} vs {}",
                    omega_ev.len(),
                    im_eps.len()
                ),
                None,
            ));
        }
        if omega_ev.len() < 2 {
            return Err(Error::ingest(
                "table needs at least two rows (window is degenerate otherwise)",
                None,
            ));
        }
        for (i, w) in omega_ev.windows(2).enumerate() {
            if !(w[1] > w[0]) {
                return Err(Error::ingest(
                    format!("frequencies must be strictly increasing: {} then {}", w[0], w[1]),
                    Some(i + 2),
                ));
            }
        }
        for (i, (&om, &v)) in omega_ev.iter().zip(&im_eps).enumerate() {
            if !om.is_finite() || !v.is_finite() {
                return Err(Error::ingest("non-finite entry", Some(i + 1)));
            }
            if om <= 0.0 {
                return Err(Error::ingest(
                    format!("frequency must be positive, got {om} eV"),
                    Some(i + 1),
                ));
            }
            if v < 0.0 {
                return Err(Error::ingest(
                    format!("Im eps must be non-negative, got {v}"),
                    Some(i + 1),
                ));
            }
        }
        Ok(Self {
            axis,
            omega_ev,
            im_eps,
        })
    }

    pub fn axis(&self) -> OpticalAxis {
        self.axis
    }

    /// Measurement window `(omega_lo, omega_hi)` in eV.
    pub fn window_ev(&self) -> (f64, f64) {
        (self.omega_ev[0], *self.omega_ev.last().unwrap())
    }

    pub fn len(&self) -> usize {
        self.omega_ev.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires >= 2 rows
    }

    pub fn omega_ev(&self) -> &[f64] {
        &self.omega_ev
    }

    pub fn im_eps(&self) -> &[f64] {
        &self.im_eps
    }

    /// `Im eps` at `omega` inside the window, by piecewise-linear
    /// interpolation in log-log coordinates (the data span decades). Segments
    /// touching a non-positive value fall back to linear interpolation.
    pub fn interpolate_im_eps(&self, omega_ev: f64) -> Result<f64> {
        let (lo, hi) = self.window_ev();
        if !(omega_ev >= lo && omega_ev <= hi) {
            return Err(Error::domain(format!(
                "omega = {omega_ev} eV outside the tabulated window [{lo}, {hi}] eV"
            )));
        }
        // partition_point returns the first index with omega[i] > query.
        let idx = self.omega_ev.partition_point(|&w| w <= omega_ev);
        if idx == 0 {
            return Ok(self.im_eps[0]);
        }
        if idx == self.omega_ev.len() {
            return Ok(*self.im_eps.last().unwrap());
        }
        let (x0, x1) = (self.omega_ev[idx - 1], self.omega_ev[idx]);
        let (y0, y1) = (self.im_eps[idx - 1], self.im_eps[idx]);
        if omega_ev == x0 {
            return Ok(y0);
        }
        if y0 > 0.0 && y1 > 0.0 {
            let t = (omega_ev.ln() - x0.ln()) / (x1.ln() - x0.ln());
            Ok((y0.ln() + t * (y1.ln() - y0.ln())).exp())
        } else {
            let t = (omega_ev - x0) / (x1 - x0);
            Ok(y0 + t * (y1 - y0))
        }
    }

    /// Canonical CSV form (`omega_eV,im_eps` header, shortest round-trip
    /// floats). Ingesting the output reproduces the table bit-for-bit.
    pub fn to_canonical_csv(&self) -> String {
        let mut out = String::from("omega_eV,im_eps\n");
        for (om, v) in self.omega_ev.iter().zip(&self.im_eps) {
            out.push_str(&format!("{om},{v}\n"));
        }
        out
    }
}

/// Low-frequency tail model for `Im eps` below the measured window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LowFreqTail {
    /// Drude form `omega_p^2 gamma / (omega (omega^2 + gamma^2))`.
    Drude { omega_p_ev: f64, gamma_ev: f64 },
    /// Constant `Im eps = value`.
    Constant { value: f64 },
}

/// Analytic extrapolation of one axis outside its measured window:
/// `Im eps = a_high / omega^3` above it, [`LowFreqTail`] below it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisExtrapolation {
    /// High-frequency amplitude `A` in eV^3.
    pub a_high_ev3: f64,
    pub low: LowFreqTail,
}

impl AxisExtrapolation {
    pub fn validate(&self) -> Result<()> {
        if !(self.a_high_ev3 > 0.0) {
            return Err(Error::config(format!(
                "high-frequency amplitude must be positive, got {}",
                self.a_high_ev3
            )));
        }
        match self.low {
            LowFreqTail::Drude {
                omega_p_ev,
                gamma_ev,
            } => {
                if !(omega_p_ev > 0.0 && gamma_ev > 0.0) {
                    return Err(Error::config(format!(
                        "Drude tail needs positive parameters, got omega_p = {omega_p_ev}, gamma = {gamma_ev}"
                    )));
                }
            }
            LowFreqTail::Constant { value } => {
                if !(value >= 0.0) {
                    return Err(Error::config(format!(
                        "constant tail must be non-negative, got {value}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Tail `Im eps` at `omega` (eV); valid on its own side of the window.
    pub fn im_eps_low(&self, omega_ev: f64) -> f64 {
        match self.low {
            LowFreqTail::Drude {
                omega_p_ev,
                gamma_ev,
            } => {
                omega_p_ev * omega_p_ev * gamma_ev
                    / (omega_ev * (omega_ev * omega_ev + gamma_ev * gamma_ev))
            }
            LowFreqTail::Constant { value } => value,
        }
    }

    pub fn im_eps_high(&self, omega_ev: f64) -> f64 {
        self.a_high_ev3 / (omega_ev * omega_ev * omega_ev)
    }
}

/// Per-axis extrapolation bundle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtrapolationSpec {
    pub x: AxisExtrapolation,
    pub z: AxisExtrapolation,
}

impl ExtrapolationSpec {
    /// Graphite defaults: Drude tail for the ordinary axis, a selectable
    /// constant (3 or 0, the two published data variants) for the
    /// extraordinary one.
    pub fn graphite(eps_z0: f64) -> Self {
        Self {
            x: AxisExtrapolation {
                a_high_ev3: 9.60e3,
                low: LowFreqTail::Drude {
                    omega_p_ev: 1.226,
                    gamma_ev: 0.04,
                },
            },
            z: AxisExtrapolation {
                a_high_ev3: 3.49e4,
                low: LowFreqTail::Constant { value: eps_z0 },
            },
        }
    }

    pub fn axis(&self, axis: OpticalAxis) -> &AxisExtrapolation {
        match axis {
            OpticalAxis::X => &self.x,
            OpticalAxis::Z => &self.z,
        }
    }
}

/// Relative mismatch between the analytic tails and the table at the window
/// endpoints. Values above 10% indicate a badly joined extrapolation.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct JoinResiduals {
    pub low_rel: f64,
    pub high_rel: f64,
}

pub const JOIN_RESIDUAL_WARN: f64 = 0.10;

/// Smooth-joining residuals of `extrap` against `table` at both window ends.
pub fn join_residuals(table: &OpticalDataTable, extrap: &AxisExtrapolation) -> JoinResiduals {
    let (lo, hi) = table.window_ev();
    let t_lo = table.im_eps()[0];
    let t_hi = *table.im_eps().last().unwrap();
    let rel = |model: f64, tab: f64| {
        if tab == 0.0 {
            if model == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            ((model - tab) / tab).abs()
        }
    };
    JoinResiduals {
        low_rel: rel(extrap.im_eps_low(lo), t_lo),
        high_rel: rel(extrap.im_eps_high(hi), t_hi),
    }
}

/// Expected CSV column layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableSchema {
    /// `omega_eV,im_eps`
    ImEps,
    /// `omega_eV,re_n,im_n`; `Im eps = 2 re_n im_n` is computed on ingest.
    RefractiveIndex,
}

/// Load and validate a per-axis optical table from CSV. The schema is read
/// from the header line.
pub fn load_table(path: &Path, axis: OpticalAxis) -> Result<OpticalDataTable> {
    let raw = std::fs::read_to_string(path).map_err(|e| {
        Error::ingest(format!("cannot read {}: {e}", path.display()), None)
    })?;
    parse_table(&raw, axis).map_err(|e| match e {
        Error::Ingest { msg, row } => {
            Error::ingest(format!("{}: {msg}", path.display()), row)
        }
        other => other,
    })
}

/// Parse CSV text into a table; header decides the schema.
pub fn parse_table(text: &str, axis: OpticalAxis) -> Result<OpticalDataTable> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::ingest(format!("bad header: {e}"), None))?
        .clone();
    let cols: Vec<String> = headers.iter().map(|h| h.to_ascii_lowercase()).collect();
    let schema = match cols.as_slice() {
        [a, b] if a == "omega_ev" && b == "im_eps" => TableSchema::ImEps,
        [a, b, c] if a == "omega_ev" && b == "re_n" && c == "im_n" => TableSchema::RefractiveIndex,
        _ => {
            return Err(Error::ingest(
                format!(
                    "unrecognized header '{}'; expected 'omega_eV,im_eps' or 'omega_eV,re_n,im_n'",
                    headers.iter().collect::<Vec<_>>().join(",")
                ),
                None,
            ))
        }
    };

    let mut omega = Vec::new();
    let mut im_eps = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let record = record.map_err(|e| Error::ingest(format!("malformed row: {e}"), Some(row)))?;
        let parse = |field: usize, name: &str| -> Result<f64> {
            record
                .get(field)
                .ok_or_else(|| Error::ingest(format!("missing column {name}"), Some(row)))?
                .parse::<f64>()
                .map_err(|e| Error::ingest(format!("bad {name}: {e}"), Some(row)))
        };
        let om = parse(0, "omega_eV")?;
        let v = match schema {
            TableSchema::ImEps => parse(1, "im_eps")?,
            TableSchema::RefractiveIndex => {
                let re_n = parse(1, "re_n")?;
                let im_n = parse(2, "im_n")?;
                if im_n < 0.0 {
                    return Err(Error::ingest(
                        format!("Im n must be non-negative, got {im_n}"),
                        Some(row),
                    ));
                }
                2.0 * re_n * im_n
            }
        };
        omega.push(om);
        im_eps.push(v);
    }
    OpticalDataTable::new(axis, omega, im_eps)
}

/// JSON descriptor bundling the per-axis table files with their
/// extrapolation parameters. Paths are resolved relative to the descriptor.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MaterialDescriptor {
    pub name: String,
    pub x_table: PathBuf,
    pub z_table: PathBuf,
    pub extrapolation: ExtrapolationSpec,
}

impl MaterialDescriptor {
    pub fn load(path: &Path) -> Result<Self> {
        let raw = std::fs::read_to_string(path).map_err(|e| {
            Error::ingest(format!("cannot read descriptor {}: {e}", path.display()), None)
        })?;
        let mut desc: MaterialDescriptor = serde_json::from_str(&raw)
            .map_err(|e| Error::config(format!("bad descriptor {}: {e}", path.display())))?;
        if let Some(dir) = path.parent() {
            if desc.x_table.is_relative() {
                desc.x_table = dir.join(&desc.x_table);
            }
            if desc.z_table.is_relative() {
                desc.z_table = dir.join(&desc.z_table);
            }
        }
        desc.extrapolation.x.validate()?;
        desc.extrapolation.z.validate()?;
        Ok(desc)
    }
}
