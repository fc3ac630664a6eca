//! Command-line front end: dispersion-force scans driven by JSON scenario
//! files, with CSV output and a metadata sidecar per run.
//!
//! Exit codes: 0 success, 1 numeric failure, 2 input failure.

use clap::{Args, Parser, Subcommand};
use lifshitz::cli::{
    self, AlphaConfig, C3Config, EpsConfig, EpsZVariant, Emitted, MaterialRef, NanotubeConfig,
    ParticleRef, ValidateConfig,
};
use lifshitz::error::Error;
use serde::de::DeserializeOwned;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "lifshitz",
    version,
    about = "Van der Waals / Casimir-Polder free energies for microparticles near planar and cylindrical bodies"
)]
struct CliArgs {
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by the scan commands. Flag values take precedence over the
/// corresponding scenario-file fields.
#[derive(Args, Clone)]
struct Overrides {
    /// Scenario file (JSON).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output CSV path (overrides the scenario's output.path).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Temperature in K (overrides the scenario's temperature_k).
    #[arg(long)]
    temperature: Option<f64>,
    /// Additionally emit a static SVG chart next to the CSV.
    #[arg(long)]
    svg: bool,
    /// Low-frequency variant of the extraordinary-axis absorption for
    /// tabulated materials: const3 or const0.
    #[arg(long, value_name = "VARIANT")]
    eps_z_variant: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Dielectric permittivities along the imaginary frequency axis.
    Eps {
        #[command(flatten)]
        overrides: Overrides,
        /// Material descriptor JSON (shortcut for a one-line scenario).
        #[arg(long)]
        data: Option<PathBuf>,
        /// Number of Matsubara frequencies to tabulate.
        #[arg(long)]
        points: Option<usize>,
    },
    /// Dynamic polarizability of a bundled or user-defined species.
    Alpha {
        #[command(flatten)]
        overrides: Overrides,
        /// Species: h10 (or h), h1, h2, or a CSV path of g_au,omega_au rows.
        #[arg(long)]
        species: Option<String>,
    },
    /// C3 coefficient scans for planar and cylindrical geometries.
    C3 {
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Nanotube interior transects and inside/outside comparisons.
    Nanotube {
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Validate a tabulated optical dataset (and optionally the bundled
    /// reference C3 table) and print a pass/fail report.
    ValidateData {
        /// Material descriptor JSON.
        #[arg(long)]
        data: Option<PathBuf>,
        /// Scenario file (JSON) as an alternative to --data.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Also run the reference C3 table fixtures.
        #[arg(long)]
        reference_table: bool,
        #[arg(long, value_name = "VARIANT")]
        eps_z_variant: Option<String>,
    },
}

fn load_config<T: DeserializeOwned>(path: &Path) -> Result<T, Error> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| Error::config(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&raw)
        .map_err(|e| Error::config(format!("bad config {}: {e}", path.display())))
}

fn parse_variant(s: &Option<String>) -> Result<Option<EpsZVariant>, Error> {
    s.as_deref().map(str::parse).transpose()
}

fn write_outputs(out_path: &Path, emitted: &Emitted) -> Result<(), Error> {
    if let Some(dir) = out_path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    std::fs::write(out_path, &emitted.csv)?;
    let meta = sidecar_path(out_path);
    std::fs::write(&meta, &emitted.sidecar_json)?;
    if let Some(svg) = &emitted.svg {
        std::fs::write(out_path.with_extension("svg"), svg)?;
    }
    for w in &emitted.warnings {
        eprintln!("warning: {w}");
    }
    eprintln!("wrote {} and {}", out_path.display(), meta.display());
    Ok(())
}

fn sidecar_path(out_path: &Path) -> PathBuf {
    let mut s = out_path.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

fn run() -> Result<(), Error> {
    let args = CliArgs::parse();
    match args.command {
        Command::Eps {
            overrides,
            data,
            points,
        } => {
            let mut cfg: EpsConfig = match (&overrides.config, &data) {
                (Some(path), _) => load_config(path)?,
                (None, Some(descriptor)) => EpsConfig {
                    material: MaterialRef::Descriptor {
                        descriptor: descriptor.clone(),
                        eps_z0_variant: None,
                    },
                    temperature_k: 300.0,
                    matsubara_points: 2000,
                    log_grid: None,
                    output: cli::OutputSpec {
                        path: PathBuf::from("eps.csv"),
                        svg: false,
                    },
                },
                (None, None) => {
                    return Err(Error::config("eps needs --config or --data"));
                }
            };
            if let Some(t) = overrides.temperature {
                cfg.temperature_k = t;
            }
            if let Some(p) = points {
                cfg.matsubara_points = p;
            }
            if let Some(out) = &overrides.out {
                cfg.output.path = out.clone();
            }
            cfg.output.svg |= overrides.svg;
            cfg.material = cfg.material.with_variant(parse_variant(&overrides.eps_z_variant)?);
            let emitted = cli::cmd_eps(&cfg)?;
            write_outputs(&cfg.output.path, &emitted)
        }
        Command::Alpha { overrides, species } => {
            let mut cfg: AlphaConfig = match (&overrides.config, &species) {
                (Some(path), _) => load_config(path)?,
                (None, Some(name)) => {
                    let particle = if name.ends_with(".csv") {
                        ParticleRef::Csv {
                            csv: PathBuf::from(name),
                        }
                    } else {
                        ParticleRef::Builtin(name.clone())
                    };
                    AlphaConfig {
                        particle,
                        log_grid: cli::LogGrid {
                            min_rad_s: 1e13,
                            max_rad_s: 1e18,
                            points: 200,
                        },
                        output: cli::OutputSpec {
                            path: PathBuf::from("alpha.csv"),
                            svg: false,
                        },
                    }
                }
                (None, None) => {
                    return Err(Error::config("alpha needs --config or --species"));
                }
            };
            if let Some(out) = &overrides.out {
                cfg.output.path = out.clone();
            }
            cfg.output.svg |= overrides.svg;
            let emitted = cli::cmd_alpha(&cfg)?;
            write_outputs(&cfg.output.path, &emitted)
        }
        Command::C3 { overrides } => {
            let path = overrides
                .config
                .as_ref()
                .ok_or_else(|| Error::config("c3 needs --config"))?;
            let mut cfg: C3Config = load_config(path)?;
            if let Some(t) = overrides.temperature {
                cfg.temperature_k = t;
            }
            if let Some(out) = &overrides.out {
                cfg.output.path = out.clone();
            }
            cfg.output.svg |= overrides.svg;
            cfg.material = cfg.material.with_variant(parse_variant(&overrides.eps_z_variant)?);
            let emitted = cli::cmd_c3(&cfg)?;
            write_outputs(&cfg.output.path, &emitted)
        }
        Command::Nanotube { overrides } => {
            let path = overrides
                .config
                .as_ref()
                .ok_or_else(|| Error::config("nanotube needs --config"))?;
            let mut cfg: NanotubeConfig = load_config(path)?;
            if let Some(t) = overrides.temperature {
                cfg.temperature_k = t;
            }
            if let Some(out) = &overrides.out {
                cfg.output.path = out.clone();
            }
            cfg.output.svg |= overrides.svg;
            cfg.material = cfg.material.with_variant(parse_variant(&overrides.eps_z_variant)?);
            let emitted = cli::cmd_nanotube(&cfg)?;
            write_outputs(&cfg.output.path, &emitted)
        }
        Command::ValidateData {
            data,
            config,
            reference_table,
            eps_z_variant,
        } => {
            let mut cfg: ValidateConfig = match (&config, &data) {
                (Some(path), _) => load_config(path)?,
                (None, Some(descriptor)) => ValidateConfig {
                    descriptor: descriptor.clone(),
                    eps_z0_variant: None,
                    reference_table: false,
                    temperature_k: 300.0,
                },
                (None, None) => {
                    return Err(Error::config("validate-data needs --config or --data"));
                }
            };
            cfg.reference_table |= reference_table;
            if let Some(v) = parse_variant(&eps_z_variant)? {
                cfg.eps_z0_variant = Some(v);
            }
            let report = cli::cmd_validate_data(&cfg)?;
            print!("{}", report.text);
            if report.passed {
                println!("validation passed");
                Ok(())
            } else {
                Err(Error::numeric("validation fixtures failed"))
            }
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
