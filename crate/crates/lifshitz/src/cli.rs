//! Scenario configuration and the command implementations behind the CLI.
//!
//! Each command consumes a JSON scenario document, runs the engines, and
//! produces a CSV table plus a metadata sidecar carrying every input needed
//! to re-run the scenario exactly. CSV floats are emitted with six
//! significant digits in a fixed format, so identical configurations yield
//! byte-identical files; the sidecar keeps full precision.

use crate::cylinder;
use crate::error::{Error, Result};
use crate::optics::{self, LowFreqTail, MaterialDescriptor};
use crate::pairwise::{self, ExteriorRoute};
use crate::permittivity::{EpsIxi, Material};
use crate::planar::{self, EngineSettings};
use crate::polarizability::OscillatorModel;
use crate::quantities::{self, MatsubaraGrid};
use crate::reflection::WallGeometry;
use crate::validation::{self, GoldenFixture, Provenance};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

/// Microparticle selector: a bundled species name (`h10`, `h1`, `h2`) or a
/// CSV file of oscillator rows.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParticleRef {
    Builtin(String),
    Csv { csv: PathBuf },
}

impl ParticleRef {
    pub fn resolve(&self) -> Result<OscillatorModel> {
        match self {
            ParticleRef::Builtin(name) => OscillatorModel::builtin(name).ok_or_else(|| {
                Error::config(format!(
                    "unknown species '{name}'; expected h10 (or h), h1, h2, or {{\"csv\": path}}"
                ))
            }),
            ParticleRef::Csv { csv } => OscillatorModel::from_csv(csv),
        }
    }
}

/// Choice between the two published low-frequency variants of the
/// extraordinary-axis absorption.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EpsZVariant {
    Const3,
    Const0,
}

impl EpsZVariant {
    pub fn value(self) -> f64 {
        match self {
            EpsZVariant::Const3 => 3.0,
            EpsZVariant::Const0 => 0.0,
        }
    }
}

impl std::str::FromStr for EpsZVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "const3" => Ok(EpsZVariant::Const3),
            "const0" => Ok(EpsZVariant::Const0),
            other => Err(Error::config(format!(
                "unknown eps-z variant '{other}'; expected const3 or const0"
            ))),
        }
    }
}

/// Wall material selector: a bundled model or a tabulated-data descriptor.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MaterialRef {
    Builtin {
        builtin: String,
    },
    Descriptor {
        descriptor: PathBuf,
        #[serde(skip_serializing_if = "Option::is_none")]
        eps_z0_variant: Option<EpsZVariant>,
    },
}

impl MaterialRef {
    pub fn resolve(&self) -> Result<Material> {
        match self {
            MaterialRef::Builtin { builtin } => match builtin.as_str() {
                "drude-test" => Ok(Material::drude_test()),
                "dielectric-test" => Ok(Material::dielectric_test()),
                "ideal-metal" => Ok(Material::ideal_metal()),
                "vacuum" => Ok(Material::vacuum()),
                other => Err(Error::config(format!(
                    "unknown builtin material '{other}'; expected drude-test, dielectric-test, ideal-metal or vacuum"
                ))),
            },
            MaterialRef::Descriptor {
                descriptor,
                eps_z0_variant,
            } => {
                let mut desc = MaterialDescriptor::load(descriptor)?;
                if let Some(variant) = eps_z0_variant {
                    desc.extrapolation.z.low = LowFreqTail::Constant {
                        value: variant.value(),
                    };
                }
                Material::from_descriptor(&desc)
            }
        }
    }

    pub fn with_variant(mut self, variant: Option<EpsZVariant>) -> Self {
        if let (MaterialRef::Descriptor { eps_z0_variant, .. }, Some(v)) = (&mut self, variant) {
            *eps_z0_variant = Some(v);
        }
        self
    }
}

/// Geometry selector with lengths in nm.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GeometryRef {
    Semispace,
    Plate { thickness_nm: f64 },
    SolidCylinder { radius_nm: f64 },
    Shell { radius_nm: f64, thickness_nm: f64 },
}

impl GeometryRef {
    pub fn resolve(&self, material: Material) -> Result<WallGeometry> {
        match *self {
            GeometryRef::Semispace => Ok(WallGeometry::semispace(material)),
            GeometryRef::Plate { thickness_nm } => {
                WallGeometry::plate(material, quantities::nm_to_m(thickness_nm))
            }
            GeometryRef::SolidCylinder { radius_nm } => {
                WallGeometry::solid_cylinder(material, quantities::nm_to_m(radius_nm))
            }
            GeometryRef::Shell {
                radius_nm,
                thickness_nm,
            } => WallGeometry::shell(
                material,
                quantities::nm_to_m(radius_nm),
                quantities::nm_to_m(thickness_nm),
            ),
        }
    }
}

fn check_grid(grid: &[f64], what: &str) -> Result<Vec<String>> {
    let mut warnings = Vec::new();
    for w in grid.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::config(format!(
                "{what} grid must be strictly increasing, got {} then {}",
                w[0], w[1]
            )));
        }
    }
    if grid.iter().any(|v| !v.is_finite()) {
        return Err(Error::config(format!("{what} grid contains non-finite values")));
    }
    if let Some(first) = grid.first() {
        if *first < 3.0 && what == "separation" {
            warnings.push(format!(
                "separations below 3 nm lie outside the continuum-validity region (grid starts at {first} nm)"
            ));
        }
    }
    Ok(warnings)
}

/// Scan request for `c3`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "variable", rename_all = "kebab-case")]
pub enum C3Scan {
    /// Separation scan; with `compare_semispace` (cylinder geometries only)
    /// the output matches the reference-table columns.
    A {
        grid_nm: Vec<f64>,
        #[serde(default)]
        compare_semispace: bool,
    },
    /// Cylinder-radius scan at fixed separation.
    R { grid_nm: Vec<f64>, a_nm: f64 },
    /// Thickness scan at fixed separation (plate or shell geometry).
    D { grid_nm: Vec<f64>, a_nm: f64 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OutputSpec {
    pub path: PathBuf,
    #[serde(default)]
    pub svg: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct C3Config {
    pub particle: ParticleRef,
    pub material: MaterialRef,
    pub geometry: GeometryRef,
    #[serde(default = "default_temperature")]
    pub temperature_k: f64,
    pub scan: C3Scan,
    pub output: OutputSpec,
}

fn default_temperature() -> f64 {
    300.0
}

/// Frequency grid for `eps`: either the first `matsubara_points` Matsubara
/// frequencies at the scenario temperature, or an explicit log grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EpsConfig {
    pub material: MaterialRef,
    #[serde(default = "default_temperature")]
    pub temperature_k: f64,
    #[serde(default = "default_matsubara_points")]
    pub matsubara_points: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log_grid: Option<LogGrid>,
    pub output: OutputSpec,
}

fn default_matsubara_points() -> usize {
    2000
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct LogGrid {
    pub min_rad_s: f64,
    pub max_rad_s: f64,
    pub points: usize,
}

impl LogGrid {
    pub fn values(&self) -> Result<Vec<f64>> {
        if !(self.min_rad_s > 0.0 && self.max_rad_s > self.min_rad_s) {
            return Err(Error::config("log grid needs 0 < min < max"));
        }
        if self.points == 0 {
            return Ok(Vec::new());
        }
        if self.points == 1 {
            return Ok(vec![self.min_rad_s]);
        }
        let (lo, hi) = (self.min_rad_s.ln(), self.max_rad_s.ln());
        Ok((0..self.points)
            .map(|i| (lo + (hi - lo) * i as f64 / (self.points - 1) as f64).exp())
            .collect())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlphaConfig {
    pub particle: ParticleRef,
    #[serde(default = "default_alpha_grid")]
    pub log_grid: LogGrid,
    pub output: OutputSpec,
}

fn default_alpha_grid() -> LogGrid {
    LogGrid {
        min_rad_s: 1e13,
        max_rad_s: 1e18,
        points: 200,
    }
}

/// Which nanotube radius stays fixed while the wall thickness varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FixedRadius {
    Inner,
    Outer,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum NanotubeMode {
    /// Free energy along a cavity diameter, excluding `margin_nm` next to
    /// each wall.
    Transect {
        step_nm: f64,
        #[serde(default = "default_margin")]
        margin_nm: f64,
    },
    /// Exterior-minus-interior free-energy difference as a function of wall
    /// thickness, both atoms at offset `a_nm` from their surface.
    Difference {
        d_grid_nm: Vec<f64>,
        a_nm: f64,
        fixed: FixedRadius,
    },
}

fn default_margin() -> f64 {
    3.0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NanotubeConfig {
    pub particle: ParticleRef,
    pub material: MaterialRef,
    /// Cavity radius for `fixed = inner` / transect; outer radius for
    /// `fixed = outer`.
    pub radius_nm: f64,
    /// Wall thickness for the transect mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thickness_nm: Option<f64>,
    #[serde(default = "default_temperature")]
    pub temperature_k: f64,
    #[serde(default)]
    pub exterior_route: ExteriorRouteRef,
    pub mode: NanotubeMode,
    pub output: OutputSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExteriorRouteRef {
    #[default]
    Lifshitz,
    Pairwise,
}

impl From<ExteriorRouteRef> for ExteriorRoute {
    fn from(r: ExteriorRouteRef) -> Self {
        match r {
            ExteriorRouteRef::Lifshitz => ExteriorRoute::LifshitzCylinder,
            ExteriorRouteRef::Pairwise => ExteriorRoute::PairwiseSummation,
        }
    }
}

/// Files produced by a command, ready to be written to disk.
#[derive(Debug, Clone)]
pub struct Emitted {
    pub csv: String,
    pub sidecar_json: String,
    pub svg: Option<String>,
    pub warnings: Vec<String>,
}

/// Six-significant-digit scientific format used for every CSV float.
pub fn fmt6(x: f64) -> String {
    if x == 0.0 {
        "0.00000e0".to_string()
    } else {
        format!("{:.5e}", x)
    }
}

#[derive(Debug, Default, Serialize)]
struct Diagnostics {
    max_tail_estimate: f64,
    max_quadrature_error: f64,
    max_terms_used: usize,
    hit_term_cap: bool,
}

impl Diagnostics {
    fn absorb(&mut self, r: &planar::LifshitzResult) {
        self.max_tail_estimate = self.max_tail_estimate.max(r.tail_estimate);
        self.max_quadrature_error = self.max_quadrature_error.max(r.quadrature_error);
        self.max_terms_used = self.max_terms_used.max(r.terms_used);
        self.hit_term_cap |= r.hit_term_cap;
    }
}

#[derive(Serialize)]
struct SettingsDump {
    quad_rel_tol: f64,
    term_rel_tol: f64,
    consecutive_small: usize,
    min_terms: usize,
    max_terms: usize,
    y_window: f64,
}

impl From<&EngineSettings> for SettingsDump {
    fn from(s: &EngineSettings) -> Self {
        Self {
            quad_rel_tol: s.quad_rel_tol,
            term_rel_tol: s.term_rel_tol,
            consecutive_small: s.consecutive_small,
            min_terms: s.min_terms,
            max_terms: s.max_terms,
            y_window: s.y_window,
        }
    }
}

fn sidecar<C: Serialize>(
    command: &str,
    config: &C,
    settings: &EngineSettings,
    rows: usize,
    diagnostics: &Diagnostics,
    warnings: &[String],
) -> String {
    #[derive(Serialize)]
    struct Sidecar<'a, C: Serialize> {
        command: &'a str,
        engine_version: &'a str,
        config: &'a C,
        settings: SettingsDump,
        rows: usize,
        diagnostics: &'a Diagnostics,
        warnings: &'a [String],
    }
    serde_json::to_string_pretty(&Sidecar {
        command,
        engine_version: env!("CARGO_PKG_VERSION"),
        config,
        settings: settings.into(),
        rows,
        diagnostics,
        warnings,
    })
    .expect("sidecar serialization cannot fail")
    + "\n"
}

/// Dielectric permittivities along the imaginary axis: CSV columns
/// `xi_rad_s,eps_x,eps_z`.
pub fn cmd_eps(cfg: &EpsConfig) -> Result<Emitted> {
    let material = cfg.material.resolve()?;
    let grid: Vec<f64> = match &cfg.log_grid {
        Some(g) => g.values()?,
        None => {
            let m = MatsubaraGrid::new(cfg.temperature_k)?;
            (1..=cfg.matsubara_points).map(|l| m.xi(l)).collect()
        }
    };
    let mut csv = String::from("xi_rad_s,eps_x,eps_z\n");
    for &xi in &grid {
        let (ex, ez) = material.eps_pair(xi)?;
        let fx = match ex {
            EpsIxi::Finite(v) => fmt6(v),
            EpsIxi::Infinite => "inf".to_string(),
        };
        let fz = match ez {
            EpsIxi::Finite(v) => fmt6(v),
            EpsIxi::Infinite => "inf".to_string(),
        };
        csv.push_str(&format!("{},{},{}\n", fmt6(xi), fx, fz));
    }
    let settings = EngineSettings::default();
    let diagnostics = Diagnostics::default();
    let svg = cfg
        .output
        .svg
        .then(|| svg_line_chart("eps(i xi)", "xi (rad/s)", "eps_x", &csv));
    Ok(Emitted {
        sidecar_json: sidecar("eps", cfg, &settings, grid.len(), &diagnostics, &[]),
        csv,
        svg,
        warnings: Vec::new(),
    })
}

/// Dynamic polarizability: CSV columns `xi_rad_s,alpha_au`.
pub fn cmd_alpha(cfg: &AlphaConfig) -> Result<Emitted> {
    let particle = cfg.particle.resolve()?;
    let grid = cfg.log_grid.values()?;
    let mut csv = String::from("xi_rad_s,alpha_au\n");
    for &xi in &grid {
        let alpha = particle.alpha_ixi_au(quantities::rad_s_to_au_frequency(xi));
        csv.push_str(&format!("{},{}\n", fmt6(xi), fmt6(alpha)));
    }
    let settings = EngineSettings::default();
    let svg = cfg
        .output
        .svg
        .then(|| svg_line_chart("alpha(i xi)", "xi (rad/s)", "alpha (a.u.)", &csv));
    Ok(Emitted {
        sidecar_json: sidecar("alpha", cfg, &settings, grid.len(), &Diagnostics::default(), &[]),
        csv,
        svg,
        warnings: Vec::new(),
    })
}

/// C3 scans (separation, radius, thickness) for planar and cylindrical
/// geometries.
pub fn cmd_c3(cfg: &C3Config) -> Result<Emitted> {
    let particle = cfg.particle.resolve()?;
    let material = cfg.material.resolve()?;
    let settings = EngineSettings::default();
    let mut diagnostics = Diagnostics::default();
    let mut warnings = Vec::new();

    let csv = match &cfg.scan {
        C3Scan::A {
            grid_nm,
            compare_semispace,
        } => {
            warnings.extend(check_grid(grid_nm, "separation")?);
            if *compare_semispace {
                let mut csv = String::from("a_nm,C3s_au,C3c_au,delta_pct\n");
                for &a_nm in grid_nm {
                    let a = quantities::nm_to_m(a_nm);
                    let wall = cfg.geometry.resolve(material.clone())?;
                    let c = cylinder::c3_cylinder_with(
                        &particle,
                        &wall,
                        a,
                        cfg.temperature_k,
                        &settings,
                    )?;
                    diagnostics.absorb(&c.result);
                    warnings.extend(c.result.warnings.iter().cloned());
                    let c3s = c.c3_au() / (1.0 - c.delta_vs_semispace);
                    csv.push_str(&format!(
                        "{},{},{},{}\n",
                        fmt6(a_nm),
                        fmt6(c3s),
                        fmt6(c.c3_au()),
                        fmt6(100.0 * c.delta_vs_semispace)
                    ));
                }
                csv
            } else {
                let mut csv = String::from("a_nm,C3_au,F_J,n_terms\n");
                for &a_nm in grid_nm {
                    let a = quantities::nm_to_m(a_nm);
                    let wall = cfg.geometry.resolve(material.clone())?;
                    let r = match wall.kind {
                        crate::reflection::WallKind::Semispace
                        | crate::reflection::WallKind::Plate { .. } => planar::c3_planar_with(
                            &particle,
                            &wall,
                            a,
                            cfg.temperature_k,
                            &settings,
                        )?,
                        _ => {
                            let c = cylinder::c3_cylinder_with(
                                &particle,
                                &wall,
                                a,
                                cfg.temperature_k,
                                &settings,
                            )?;
                            c.result
                        }
                    };
                    diagnostics.absorb(&r);
                    warnings.extend(r.warnings.iter().cloned());
                    csv.push_str(&format!(
                        "{},{},{},{}\n",
                        fmt6(a_nm),
                        fmt6(r.c3_au),
                        fmt6(r.free_energy_j),
                        r.terms_used
                    ));
                }
                csv
            }
        }
        C3Scan::R { grid_nm, a_nm } => {
            warnings.extend(check_grid(grid_nm, "radius")?);
            let a = quantities::nm_to_m(*a_nm);
            let mut csv = String::from("R_nm,C3_au\n");
            for &r_nm in grid_nm {
                let geometry = match cfg.geometry {
                    GeometryRef::Shell { thickness_nm, .. } => GeometryRef::Shell {
                        radius_nm: r_nm,
                        thickness_nm,
                    },
                    _ => GeometryRef::SolidCylinder { radius_nm: r_nm },
                };
                let wall = geometry.resolve(material.clone())?;
                let c =
                    cylinder::c3_cylinder_with(&particle, &wall, a, cfg.temperature_k, &settings)?;
                diagnostics.absorb(&c.result);
                warnings.extend(c.result.warnings.iter().cloned());
                csv.push_str(&format!("{},{}\n", fmt6(r_nm), fmt6(c.c3_au())));
            }
            csv
        }
        C3Scan::D { grid_nm, a_nm } => {
            warnings.extend(check_grid(grid_nm, "thickness")?);
            let a = quantities::nm_to_m(*a_nm);
            match cfg.geometry {
                GeometryRef::Plate { .. } | GeometryRef::Semispace => {
                    // Plate-thickness scan with the semispace ratio column.
                    let semi = planar::c3_planar_with(
                        &particle,
                        &WallGeometry::semispace(material.clone()),
                        a,
                        cfg.temperature_k,
                        &settings,
                    )?;
                    diagnostics.absorb(&semi);
                    let mut csv = String::from("d_nm,C3_au,ratio_semispace\n");
                    for &d_nm in grid_nm {
                        let wall =
                            WallGeometry::plate(material.clone(), quantities::nm_to_m(d_nm))?;
                        let r = planar::c3_planar_with(
                            &particle,
                            &wall,
                            a,
                            cfg.temperature_k,
                            &settings,
                        )?;
                        diagnostics.absorb(&r);
                        warnings.extend(r.warnings.iter().cloned());
                        csv.push_str(&format!(
                            "{},{},{}\n",
                            fmt6(d_nm),
                            fmt6(r.c3_au),
                            fmt6(r.c3_au / semi.c3_au)
                        ));
                    }
                    csv
                }
                GeometryRef::SolidCylinder { radius_nm } | GeometryRef::Shell { radius_nm, .. } => {
                    let mut csv = String::from("d_nm,C3_au\n");
                    for &d_nm in grid_nm {
                        let wall = WallGeometry::shell(
                            material.clone(),
                            quantities::nm_to_m(radius_nm),
                            quantities::nm_to_m(d_nm),
                        )?;
                        let c = cylinder::c3_cylinder_with(
                            &particle,
                            &wall,
                            a,
                            cfg.temperature_k,
                            &settings,
                        )?;
                        diagnostics.absorb(&c.result);
                        warnings.extend(c.result.warnings.iter().cloned());
                        csv.push_str(&format!("{},{}\n", fmt6(d_nm), fmt6(c.c3_au())));
                    }
                    csv
                }
            }
        }
    };

    warnings.dedup();
    let rows = csv.lines().count().saturating_sub(1);
    let svg = cfg
        .output
        .svg
        .then(|| svg_line_chart("C3 scan", "x", "C3 (a.u.)", &csv));
    Ok(Emitted {
        sidecar_json: sidecar("c3", cfg, &settings, rows, &diagnostics, &warnings),
        csv,
        svg,
        warnings,
    })
}

/// Nanotube interior scans: transect (`position_nm,F_J`) or
/// exterior-minus-interior differences (`d_nm,deltaF_J`).
pub fn cmd_nanotube(cfg: &NanotubeConfig) -> Result<Emitted> {
    let particle = cfg.particle.resolve()?;
    let material = cfg.material.resolve()?;
    let settings = EngineSettings::default();
    let mut warnings = Vec::new();

    let csv = match &cfg.mode {
        NanotubeMode::Transect { step_nm, margin_nm } => {
            if !(*step_nm > 0.0) {
                return Err(Error::config("transect step must be positive"));
            }
            let r0_nm = cfg.radius_nm;
            let d_nm = cfg.thickness_nm.ok_or_else(|| {
                Error::config("transect mode needs thickness_nm (the wall thickness)")
            })?;
            let mut positions = Vec::new();
            let mut x = *margin_nm;
            while x <= 2.0 * r0_nm - margin_nm + 1e-9 {
                positions.push(quantities::nm_to_m(x));
                x += step_nm;
            }
            if positions.is_empty() {
                warnings.push("transect grid is empty".to_string());
            }
            let scan = pairwise::interior_transect(
                &particle,
                &material,
                quantities::nm_to_m(r0_nm),
                quantities::nm_to_m(d_nm),
                &positions,
                cfg.temperature_k,
            )?;
            let mut csv = String::from("position_nm,F_J\n");
            for (x, f) in scan {
                csv.push_str(&format!("{},{}\n", fmt6(quantities::m_to_nm(x)), fmt6(f)));
            }
            csv
        }
        NanotubeMode::Difference {
            d_grid_nm,
            a_nm,
            fixed,
        } => {
            warnings.extend(check_grid(d_grid_nm, "thickness")?);
            let a = quantities::nm_to_m(*a_nm);
            let mut csv = String::from("d_nm,deltaF_J\n");
            for &d_nm in d_grid_nm {
                let d = quantities::nm_to_m(d_nm);
                let r0 = match fixed {
                    FixedRadius::Inner => quantities::nm_to_m(cfg.radius_nm),
                    FixedRadius::Outer => {
                        let r0 = quantities::nm_to_m(cfg.radius_nm) - d;
                        if !(r0 > 0.0) {
                            return Err(Error::config(format!(
                                "thickness {d_nm} nm leaves no cavity inside R = {} nm",
                                cfg.radius_nm
                            )));
                        }
                        r0
                    }
                };
                if !(a < 2.0 * r0) {
                    return Err(Error::config(format!(
                        "offset {a_nm} nm does not fit inside a cavity of radius {} nm",
                        quantities::m_to_nm(r0)
                    )));
                }
                let diff = pairwise::inside_outside_difference(
                    &particle,
                    &material,
                    r0,
                    d,
                    a,
                    cfg.temperature_k,
                    cfg.exterior_route.into(),
                )?;
                csv.push_str(&format!("{},{}\n", fmt6(d_nm), fmt6(diff)));
            }
            csv
        }
    };

    let rows = csv.lines().count().saturating_sub(1);
    let svg = cfg
        .output
        .svg
        .then(|| svg_line_chart("nanotube scan", "x (nm)", "F (J)", &csv));
    Ok(Emitted {
        sidecar_json: sidecar("nanotube", cfg, &settings, rows, &Diagnostics::default(), &warnings),
        csv,
        svg,
        warnings,
    })
}

/// Validation report for a supplied optical dataset.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub text: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidateConfig {
    pub descriptor: PathBuf,
    #[serde(default)]
    pub eps_z0_variant: Option<EpsZVariant>,
    /// Also check the bundled reference C3 table (requires the dataset the
    /// table was computed from).
    #[serde(default)]
    pub reference_table: bool,
    #[serde(default = "default_temperature")]
    pub temperature_k: f64,
}

struct Reporter {
    text: String,
    passed: bool,
}

impl Reporter {
    fn new() -> Self {
        Self {
            text: String::new(),
            passed: true,
        }
    }

    fn check(&mut self, line: String, ok: bool, hard: bool) {
        self.text
            .push_str(if ok { "PASS " } else if hard { "FAIL " } else { "WARN " });
        self.text.push_str(&line);
        self.text.push('\n');
        if !ok && hard {
            self.passed = false;
        }
    }
}

/// Run ingest validation, Kramers-Kronig route cross-checks and (optionally)
/// the reference-table fixtures against a user-supplied dataset.
pub fn cmd_validate_data(cfg: &ValidateConfig) -> Result<ValidationReport> {
    let mut rep = Reporter::new();

    let mut desc = MaterialDescriptor::load(&cfg.descriptor)?;
    if let Some(v) = cfg.eps_z0_variant {
        desc.extrapolation.z.low = LowFreqTail::Constant { value: v.value() };
    }
    let tx = optics::load_table(&desc.x_table, optics::OpticalAxis::X)?;
    let tz = optics::load_table(&desc.z_table, optics::OpticalAxis::Z)?;
    rep.check(
        format!(
            "ingest: x-axis table, {} rows over [{}, {}] eV",
            tx.len(),
            tx.window_ev().0,
            tx.window_ev().1
        ),
        true,
        true,
    );
    rep.check(
        format!(
            "ingest: z-axis table, {} rows over [{}, {}] eV",
            tz.len(),
            tz.window_ev().0,
            tz.window_ev().1
        ),
        true,
        true,
    );

    for (table, extrap, axis) in [
        (&tx, &desc.extrapolation.x, "x"),
        (&tz, &desc.extrapolation.z, "z"),
    ] {
        let res = optics::join_residuals(table, extrap);
        rep.check(
            format!(
                "smooth joining ({axis}): low {:.2}%, high {:.2}%",
                100.0 * res.low_rel,
                100.0 * res.high_rel
            ),
            res.low_rel <= optics::JOIN_RESIDUAL_WARN && res.high_rel <= optics::JOIN_RESIDUAL_WARN,
            false,
        );
    }

    // Kramers-Kronig route agreement and Herglotz/monotonicity checks.
    for (table, extrap, axis) in [
        (&tx, &desc.extrapolation.x, "x"),
        (&tz, &desc.extrapolation.z, "z"),
    ] {
        let mut worst = 0.0f64;
        let mut herglotz = true;
        let mut monotone = true;
        let mut last = f64::INFINITY;
        for k in 0..40 {
            let xi = 1e13 * 10f64.powf(k as f64 * 5.0 / 39.0);
            let numeric = crate::permittivity::kk_numeric(table, extrap, xi)?;
            let closed = crate::permittivity::kk_closed_segments(table, extrap, xi)?;
            worst = worst.max(((numeric - closed) / closed).abs());
            if numeric < 1.0 - 1e-9 {
                herglotz = false;
            }
            if numeric > last * (1.0 + 1e-9) {
                monotone = false;
            }
            last = numeric;
        }
        rep.check(
            format!("kk route agreement ({axis}): worst {:.2e}", worst),
            worst <= 1e-4,
            true,
        );
        rep.check(format!("herglotz bound ({axis})"), herglotz, true);
        rep.check(format!("monotone eps(i xi) ({axis})"), monotone, true);
    }

    if cfg.reference_table {
        let material = Material::uniaxial(
            desc.name.clone(),
            crate::permittivity::PermittivityModel::tabulated(tx.clone(), desc.extrapolation.x)?,
            crate::permittivity::PermittivityModel::tabulated(tz.clone(), desc.extrapolation.z)?,
        );
        for fixture in reference_table_fixtures() {
            let actual = fixture.evaluate(&material, cfg.temperature_k)?;
            let ok = fixture.fixture.check(actual);
            rep.check(
                format!(
                    "{}: got {:.5}, expected {:.5} (tol {:.1}%)",
                    fixture.fixture.id,
                    actual,
                    fixture.fixture.expected,
                    100.0 * fixture.fixture.rel_tolerance
                ),
                ok,
                true,
            );
        }
    }

    Ok(ValidationReport {
        text: rep.text,
        passed: rep.passed,
    })
}

/// A reference-table fixture bound to the quantity it checks.
pub struct TableFixture {
    pub fixture: GoldenFixture,
    kind: TableKind,
    species: SpeciesKind,
    a_nm: f64,
}

enum TableKind {
    Semispace,
    Cylinder50,
    DeltaPct,
}

#[derive(Clone, Copy)]
enum SpeciesKind {
    Atom,
    Molecule,
}

impl TableFixture {
    pub fn evaluate(&self, material: &Material, temperature_k: f64) -> Result<f64> {
        let particle = match self.species {
            SpeciesKind::Atom => OscillatorModel::hydrogen_10osc(),
            SpeciesKind::Molecule => OscillatorModel::hydrogen_molecule(),
        };
        let a = quantities::nm_to_m(self.a_nm);
        match self.kind {
            TableKind::Semispace => {
                let wall = WallGeometry::semispace(material.clone());
                Ok(planar::c3_planar(&particle, &wall, a, temperature_k)?.c3_au)
            }
            TableKind::Cylinder50 => {
                let wall = WallGeometry::solid_cylinder(material.clone(), 50e-9)?;
                Ok(cylinder::c3_cylinder(&particle, &wall, a, temperature_k)?.c3_au())
            }
            TableKind::DeltaPct => Ok(100.0
                * cylinder::delta_semispace_cylinder(
                    &particle,
                    material,
                    50e-9,
                    a,
                    temperature_k,
                )?),
        }
    }
}

/// All 7 x 6 fixtures of the bundled reference table (both species;
/// semispace C3, cylinder C3 and delta). C3 tolerances are 5% relative;
/// delta entries get 1.5 percentage points.
pub fn reference_table_fixtures() -> Vec<TableFixture> {
    let mut out = Vec::new();
    for (species, rows, tag) in [
        (SpeciesKind::Atom, &validation::TABLE_H, "H"),
        (SpeciesKind::Molecule, &validation::TABLE_H2, "H2"),
    ] {
        for &(a_nm, c3s, c3c, delta) in rows.iter() {
            out.push(TableFixture {
                fixture: GoldenFixture {
                    id: format!("table {tag} a={a_nm} C3s"),
                    expected: c3s,
                    rel_tolerance: 0.05,
                    provenance: Provenance::PublishedValue,
                    oracle: None,
                },
                kind: TableKind::Semispace,
                species,
                a_nm,
            });
            out.push(TableFixture {
                fixture: GoldenFixture {
                    id: format!("table {tag} a={a_nm} C3c"),
                    expected: c3c,
                    rel_tolerance: 0.05,
                    provenance: Provenance::PublishedValue,
                    oracle: None,
                },
                kind: TableKind::Cylinder50,
                species,
                a_nm,
            });
            out.push(TableFixture {
                fixture: GoldenFixture {
                    id: format!("table {tag} a={a_nm} delta"),
                    expected: delta,
                    // 1.5 percentage points expressed as a relative band.
                    rel_tolerance: 1.5 / delta,
                    provenance: Provenance::PublishedValue,
                    oracle: None,
                },
                kind: TableKind::DeltaPct,
                species,
                a_nm,
            });
        }
    }
    out
}

/// Minimal static SVG line chart of the first two CSV columns.
pub fn svg_line_chart(title: &str, x_label: &str, y_label: &str, csv: &str) -> String {
    let mut points: Vec<(f64, f64)> = Vec::new();
    for line in csv.lines().skip(1) {
        let mut parts = line.split(',');
        if let (Some(a), Some(b)) = (parts.next(), parts.next()) {
            if let (Ok(x), Ok(y)) = (a.parse::<f64>(), b.parse::<f64>()) {
                points.push((x, y));
            }
        }
    }
    let (w, h, ml, mb, mt, mr) = (720.0, 480.0, 70.0, 50.0, 40.0, 20.0);
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">{title}</text>\n",
        w / 2.0
    ));
    if points.len() >= 2 {
        let (mut x0, mut x1) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY);
        for &(x, y) in &points {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        if x1 == x0 {
            x1 = x0 + 1.0;
        }
        if y1 == y0 {
            y1 = y0 + 1.0;
        }
        let sx = (w - ml - mr) / (x1 - x0);
        let sy = (h - mt - mb) / (y1 - y0);
        let map = |x: f64, y: f64| (ml + (x - x0) * sx, h - mb - (y - y0) * sy);
        let mut path = String::new();
        for (i, &(x, y)) in points.iter().enumerate() {
            let (px, py) = map(x, y);
            path.push_str(&format!("{}{:.2},{:.2} ", if i == 0 { "M" } else { "L" }, px, py));
        }
        svg.push_str(&format!(
            "<path d=\"{}\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n",
            path.trim_end()
        ));
        svg.push_str(&format!(
            "<rect x=\"{ml}\" y=\"{mt}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#333\"/>\n",
            w - ml - mr,
            h - mt - mb
        ));
        for t in [x0, x1] {
            let (px, _) = map(t, y0);
            svg.push_str(&format!(
                "<text x=\"{px:.2}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n",
                h - mb + 16.0,
                fmt6(t)
            ));
        }
        for t in [y0, y1] {
            let (_, py) = map(x0, t);
            svg.push_str(&format!(
                "<text x=\"{}\" y=\"{py:.2}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n",
                ml - 6.0,
                fmt6(t)
            ));
        }
    } else {
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">no data</text>\n",
            w / 2.0,
            h / 2.0
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">{x_label}</text>\n",
        w / 2.0,
        h - 12.0
    ));
    svg.push_str(&format!(
        "<text x=\"16\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 16 {})\">{y_label}</text>\n",
        h / 2.0,
        h / 2.0
    ));
    svg.push_str("</svg>\n");
    svg
}
