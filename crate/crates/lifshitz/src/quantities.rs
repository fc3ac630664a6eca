//! Physical constants, unit conversions and the Matsubara frequency grid.
//!
//! Internal computations are carried out in SI. Atomic-unit and eV views use
//! the conversion factors conventional in the dispersion-force literature
//! (1 a.u. of energy = 27.11 eV, 1 a.u. of polarizability = 1.482e-31 m^3,
//! 1 eV = 1.519e15 rad/s) so that published C3 tables can be reproduced
//! without drift in the fourth digit.

use crate::error::{Error, Result};

/// Reduced Planck constant, J s (CODATA).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant, J/K (CODATA, exact).
pub const K_B: f64 = 1.380_649e-23;
/// Speed of light in vacuum, m/s (exact).
pub const C_LIGHT: f64 = 299_792_458.0;
/// Elementary charge, C (exact); used for the J <-> eV energy view.
pub const EV_J: f64 = 1.602_176_634e-19;

/// Angular frequency of a 1 eV photon, rad/s.
pub const EV_TO_RAD_S: f64 = 1.519e15;
/// Atomic unit of energy expressed in eV.
pub const HARTREE_EV: f64 = 27.11;
/// Atomic unit of polarizability expressed in m^3.
pub const AU_POLARIZABILITY_M3: f64 = 1.482e-31;

/// Atomic unit of angular frequency, rad/s.
pub const AU_FREQUENCY_RAD_S: f64 = HARTREE_EV * EV_TO_RAD_S;
/// Atomic unit of energy in J, defined through `HBAR * AU_FREQUENCY_RAD_S`
/// so that frequency and energy conversions stay mutually consistent.
pub const HARTREE_J: f64 = HBAR * AU_FREQUENCY_RAD_S;
/// Atomic unit of the C3 coefficient (Hartree * bohr^3) in J m^3.
pub const C3_AU_J_M3: f64 = HARTREE_J * AU_POLARIZABILITY_M3;

/// One nanometer in meters.
pub const NM: f64 = 1e-9;
/// Bohr radius, m.
pub const BOHR_M: f64 = 5.291_772_109e-11;

pub fn ev_to_rad_s(omega_ev: f64) -> f64 {
    omega_ev * EV_TO_RAD_S
}

pub fn rad_s_to_ev(omega: f64) -> f64 {
    omega / EV_TO_RAD_S
}

pub fn ev_to_au_energy(e_ev: f64) -> f64 {
    e_ev / HARTREE_EV
}

pub fn au_energy_to_ev(e_au: f64) -> f64 {
    e_au * HARTREE_EV
}

pub fn rad_s_to_au_frequency(omega: f64) -> f64 {
    omega / AU_FREQUENCY_RAD_S
}

pub fn au_polarizability_to_m3(alpha_au: f64) -> f64 {
    alpha_au * AU_POLARIZABILITY_M3
}

pub fn m3_to_au_polarizability(alpha_m3: f64) -> f64 {
    alpha_m3 / AU_POLARIZABILITY_M3
}

pub fn c3_si_to_au(c3_j_m3: f64) -> f64 {
    c3_j_m3 / C3_AU_J_M3
}

pub fn c3_au_to_si(c3_au: f64) -> f64 {
    c3_au * C3_AU_J_M3
}

pub fn joule_to_ev(e_j: f64) -> f64 {
    e_j / EV_J
}

pub fn nm_to_m(x_nm: f64) -> f64 {
    x_nm * NM
}

pub fn m_to_nm(x_m: f64) -> f64 {
    x_m / NM
}

/// Matsubara frequency `xi_l = 2 pi k_B T l / hbar` in rad/s.
///
/// Fails for non-positive temperature.
pub fn matsubara_frequency(temperature_k: f64, l: usize) -> Result<f64> {
    if !(temperature_k > 0.0) {
        return Err(Error::domain(format!(
            "temperature must be positive, got {temperature_k} K"
        )));
    }
    Ok(first_matsubara(temperature_k) * l as f64)
}

fn first_matsubara(temperature_k: f64) -> f64 {
    2.0 * std::f64::consts::PI * K_B * temperature_k / HBAR
}

/// Dimensionless frequency `zeta = 2 a xi / c` for separation `a` (m) and
/// angular frequency `xi` (rad/s).
pub fn dimensionless_zeta(a_m: f64, xi_rad_s: f64) -> Result<f64> {
    if !(a_m > 0.0) {
        return Err(Error::domain(format!(
            "separation must be positive, got {a_m} m"
        )));
    }
    Ok(2.0 * a_m * xi_rad_s / C_LIGHT)
}

/// Characteristic frequency `omega_c = c / (2a)` in rad/s; `zeta = xi/omega_c`.
pub fn characteristic_frequency(a_m: f64) -> Result<f64> {
    if !(a_m > 0.0) {
        return Err(Error::domain(format!(
            "separation must be positive, got {a_m} m"
        )));
    }
    Ok(C_LIGHT / (2.0 * a_m))
}

/// Temperature-indexed sequence of Matsubara frequencies.
///
/// `xi(l) = l * xi(1)` exactly, so that linearity in `l` holds bit-for-bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatsubaraGrid {
    temperature_k: f64,
    xi1: f64,
}

impl MatsubaraGrid {
    pub fn new(temperature_k: f64) -> Result<Self> {
        if !(temperature_k > 0.0) {
            return Err(Error::domain(format!(
                "temperature must be positive, got {temperature_k} K"
            )));
        }
        Ok(Self {
            temperature_k,
            xi1: first_matsubara(temperature_k),
        })
    }

    pub fn temperature_k(&self) -> f64 {
        self.temperature_k
    }

    /// `xi_l` in rad/s; `xi(0) = 0`.
    pub fn xi(&self, l: usize) -> f64 {
        self.xi1 * l as f64
    }
}
