//! Dynamic polarizability of the microparticle on the imaginary axis.
//!
//! Every species is an oscillator sum `alpha(i xi) = sum_j g_j / (omega_j^2 + xi^2)`
//! evaluated in atomic units; conversion to m^3 happens only at the module
//! boundary. Three models ship built in: the 10-oscillator hydrogen-atom fit,
//! its single-oscillator reduction, and the single-oscillator hydrogen
//! molecule.

use crate::error::{Error, Result};
use crate::quantities;
use std::path::Path;

/// One oscillator: strength and eigenenergy, both in atomic units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorTerm {
    pub strength_au: f64,
    pub omega_au: f64,
}

/// Oscillator-sum polarizability model for an atom or molecule.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillatorModel {
    species: String,
    terms: Vec<OscillatorTerm>,
}

/// 10-oscillator fit of the hydrogen-atom dynamic polarizability:
/// (strength, eigenenergy) pairs in atomic units. The strengths satisfy the
/// f-sum rule (they add up to 1) and the static value comes out at 4.50 a.u.
const HYDROGEN_10OSC: [(f64, f64); 10] = [
    (0.41619993, 0.37500006),
    (0.08803654, 0.44533064),
    (0.08993244, 0.48877611),
    (0.10723836, 0.56134416),
    (0.10489786, 0.68364018),
    (0.08700329, 0.89169023),
    (0.06013601, 1.2698693),
    (0.03259492, 2.0478339),
    (0.01199044, 4.0423429),
    (0.00197021, 12.194172),
];

/// Static polarizability of atomic hydrogen used by the single-oscillator
/// reduction, a.u.
pub const HYDROGEN_ALPHA0_AU: f64 = 4.50;
/// Characteristic energy of the hydrogen-atom single oscillator, eV.
pub const HYDROGEN_OMEGA_EV: f64 = 11.65;
/// Static polarizability of molecular hydrogen, a.u.
pub const H2_ALPHA0_AU: f64 = 5.439;
/// Characteristic energy of the hydrogen-molecule oscillator, eV.
pub const H2_OMEGA_EV: f64 = 14.09;

impl OscillatorModel {
    pub fn new(species: impl Into<String>, terms: Vec<OscillatorTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::domain("oscillator model needs at least one term"));
        }
        for t in &terms {
            if !(t.strength_au > 0.0 && t.omega_au > 0.0) {
                return Err(Error::domain(format!(
                    "oscillator strengths and energies must be positive, got (g = {}, omega = {})",
                    t.strength_au, t.omega_au
                )));
            }
        }
        Ok(Self {
            species: species.into(),
            terms,
        })
    }

    /// Single oscillator from a static polarizability (a.u.) and a
    /// characteristic energy (eV): `g = alpha(0) omega^2`.
    pub fn single(species: impl Into<String>, alpha0_au: f64, omega_ev: f64) -> Result<Self> {
        let omega_au = quantities::ev_to_au_energy(omega_ev);
        Self::new(
            species,
            vec![OscillatorTerm {
                strength_au: alpha0_au * omega_au * omega_au,
                omega_au,
            }],
        )
    }

    /// 10-oscillator hydrogen atom.
    pub fn hydrogen_10osc() -> Self {
        Self::new(
            "H (10-oscillator)",
            HYDROGEN_10OSC
                .iter()
                .map(|&(g, om)| OscillatorTerm {
                    strength_au: g,
                    omega_au: om,
                })
                .collect(),
        )
        .expect("built-in data is valid")
    }

    /// Single-oscillator hydrogen atom.
    pub fn hydrogen_1osc() -> Self {
        Self::single("H (1-oscillator)", HYDROGEN_ALPHA0_AU, HYDROGEN_OMEGA_EV)
            .expect("built-in data is valid")
    }

    /// Single-oscillator hydrogen molecule.
    pub fn hydrogen_molecule() -> Self {
        Self::single("H2", H2_ALPHA0_AU, H2_OMEGA_EV).expect("built-in data is valid")
    }

    /// The three bundled species.
    pub fn builtin_models() -> [Self; 3] {
        [
            Self::hydrogen_10osc(),
            Self::hydrogen_1osc(),
            Self::hydrogen_molecule(),
        ]
    }

    /// Look a bundled species up by its CLI name (`h10`, `h1`, `h2`).
    pub fn builtin(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "h" | "h10" => Some(Self::hydrogen_10osc()),
            "h1" => Some(Self::hydrogen_1osc()),
            "h2" => Some(Self::hydrogen_molecule()),
            _ => None,
        }
    }

    /// Load a user-defined species from CSV rows `g_au,omega_au`.
    pub fn from_csv(path: &Path) -> Result<Self> {
        let raw = std::fs::read_to_string(path)
            .map_err(|e| Error::ingest(format!("cannot read {}: {e}", path.display()), None))?;
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(raw.as_bytes());
        let headers = reader
            .headers()
            .map_err(|e| Error::ingest(format!("bad header: {e}"), None))?
            .clone();
        let cols: Vec<String> = headers.iter().map(|h| h.to_ascii_lowercase()).collect();
        if cols != ["g_au", "omega_au"] {
            return Err(Error::ingest(
                format!(
                    "unrecognized header '{}'; expected 'g_au,omega_au'",
                    headers.iter().collect::<Vec<_>>().join(",")
                ),
                None,
            ));
        }
        let mut terms = Vec::new();
        for (i, record) in reader.records().enumerate() {
            let row = i + 1;
            let record =
                record.map_err(|e| Error::ingest(format!("malformed row: {e}"), Some(row)))?;
            let g: f64 = record[0]
                .parse()
                .map_err(|e| Error::ingest(format!("bad g_au: {e}"), Some(row)))?;
            let om: f64 = record[1]
                .parse()
                .map_err(|e| Error::ingest(format!("bad omega_au: {e}"), Some(row)))?;
            terms.push(OscillatorTerm {
                strength_au: g,
                omega_au: om,
            });
        }
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "custom".into());
        Self::new(stem, terms)
    }

    pub fn species(&self) -> &str {
        &self.species
    }

    pub fn terms(&self) -> &[OscillatorTerm] {
        &self.terms
    }

    /// `alpha(i xi)` in a.u. for `xi` in a.u. of frequency.
    pub fn alpha_ixi_au(&self, xi_au: f64) -> f64 {
        let xi2 = xi_au * xi_au;
        self.terms
            .iter()
            .map(|t| t.strength_au / (t.omega_au * t.omega_au + xi2))
            .sum()
    }

    /// `alpha(i xi)` in m^3 for `xi` in rad/s.
    pub fn alpha_ixi_m3(&self, xi_rad_s: f64) -> f64 {
        let xi_au = quantities::rad_s_to_au_frequency(xi_rad_s);
        quantities::au_polarizability_to_m3(self.alpha_ixi_au(xi_au))
    }

    /// Static polarizability in a.u.
    pub fn alpha0_au(&self) -> f64 {
        self.alpha_ixi_au(0.0)
    }

    pub fn alpha0_m3(&self) -> f64 {
        quantities::au_polarizability_to_m3(self.alpha0_au())
    }

    /// Sum of oscillator strengths, a.u. (governs the large-xi falloff).
    pub fn strength_sum_au(&self) -> f64 {
        self.terms.iter().map(|t| t.strength_au).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ten_oscillator_static_value() {
        let h = OscillatorModel::hydrogen_10osc();
        assert_relative_eq!(h.alpha0_au(), 4.50, max_relative = 5e-3);
    }

    #[test]
    fn bundled_term_values() {
        let h = OscillatorModel::hydrogen_10osc();
        assert_eq!(h.terms()[0].strength_au, 0.41619993);
        assert_eq!(h.terms()[0].omega_au, 0.37500006);
        assert_eq!(h.terms()[9].strength_au, 0.00197021);
        assert_eq!(h.terms()[9].omega_au, 12.194172);
    }

    #[test]
    fn strengths_satisfy_sum_rule() {
        let h = OscillatorModel::hydrogen_10osc();
        assert_relative_eq!(h.strength_sum_au(), 1.0, max_relative = 1e-8);
    }

    #[test]
    fn single_oscillator_reductions() {
        let h1 = OscillatorModel::hydrogen_1osc();
        assert_relative_eq!(h1.alpha0_au(), 4.50, max_relative = 1e-12);
        let h10 = OscillatorModel::hydrogen_10osc();
        assert_relative_eq!(h1.alpha0_au(), h10.alpha0_au(), max_relative = 5e-3);

        let h2 = OscillatorModel::hydrogen_molecule();
        assert_relative_eq!(h2.alpha0_au(), 5.439, max_relative = 1e-12);
    }

    #[test]
    fn strictly_decreasing_in_xi() {
        let h = OscillatorModel::hydrogen_10osc();
        let mut last = f64::INFINITY;
        for k in 0..40 {
            let xi = 0.01 * 1.5f64.powi(k);
            let v = h.alpha_ixi_au(xi);
            assert!(v < last);
            last = v;
        }
    }

    #[test]
    fn large_xi_falloff_is_sum_rule_over_xi_squared() {
        for model in OscillatorModel::builtin_models() {
            let omega_max = model
                .terms()
                .iter()
                .map(|t| t.omega_au)
                .fold(0.0f64, f64::max);
            let xi = 100.0 * omega_max;
            let ratio = model.alpha_ixi_au(xi) * xi * xi / model.strength_sum_au();
            assert_relative_eq!(ratio, 1.0, max_relative = 1e-2);
        }
    }

    #[test]
    fn unit_conversion_at_boundary() {
        let h = OscillatorModel::hydrogen_1osc();
        assert_relative_eq!(
            h.alpha0_m3(),
            4.50 * quantities::AU_POLARIZABILITY_M3,
            max_relative = 1e-14
        );
    }

    #[test]
    fn invalid_terms_rejected() {
        assert!(OscillatorModel::new("bad", vec![]).is_err());
        assert!(OscillatorModel::new(
            "bad",
            vec![OscillatorTerm {
                strength_au: -1.0,
                omega_au: 1.0
            }]
        )
        .is_err());
    }

    #[test]
    fn csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("species.csv");
        std::fs::write(&path, "g_au,omega_au\n0.5,0.4\n0.25,1.1\n").unwrap();
        let m = OscillatorModel::from_csv(&path).unwrap();
        assert_eq!(m.terms().len(), 2);
        assert_relative_eq!(m.alpha0_au(), 0.5 / 0.16 + 0.25 / 1.21, max_relative = 1e-12);
    }
}
