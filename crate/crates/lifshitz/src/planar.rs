//! Free energy of a microparticle near a semispace or flat plate, and the
//! auxiliary two-body (wall-wall) free energy and force per unit area.
//!
//! In the dimensionless variables `y = 2aq`, `zeta_l = 2 a xi_l / c` the
//! particle-wall C3 coefficient is
//!
//! ```text
//! C3(a,T) = (kB T / 8) { 2 alpha(0) r_par(0)
//!     + sum_{l>=1} alpha(i xi_l) int_{zeta_l}^inf dy e^-y
//!           [ 2 y^2 r_par + zeta_l^2 (r_perp - r_par) ] }
//! ```
//!
//! with the free energy `F = -C3/a^3`. The Matsubara sum stops once a run of
//! consecutive terms falls below a relative threshold; the y-integral runs
//! over a finite window plus an analytic bound on the exponential tail.

use crate::error::{Error, Result};
use crate::permittivity::Material;
use crate::polarizability::OscillatorModel;
use crate::quadrature;
use crate::quantities::{self, MatsubaraGrid, C_LIGHT, K_B};
use crate::reflection::{self, EpsAtFreq, WallGeometry, WallKind};

/// Tolerances and cutoffs for the Lifshitz engines.
#[derive(Debug, Clone, Copy)]
pub struct EngineSettings {
    /// Relative tolerance of each per-term y-quadrature.
    pub quad_rel_tol: f64,
    /// A Matsubara term smaller than this fraction of the running sum counts
    /// as negligible.
    pub term_rel_tol: f64,
    /// Number of consecutive negligible terms that ends the sum.
    pub consecutive_small: usize,
    /// Never stop before this many terms.
    pub min_terms: usize,
    /// Hard cap on the number of Matsubara terms. Tripping it is reported
    /// in the diagnostics, never silent.
    pub max_terms: usize,
    /// Length of the finite integration window above `zeta` (the remainder
    /// is bounded analytically).
    pub y_window: f64,
}

impl Default for EngineSettings {
    fn default() -> Self {
        Self {
            quad_rel_tol: 1e-6,
            term_rel_tol: 1e-7,
            consecutive_small: 3,
            min_terms: 10,
            max_terms: 20_000,
            y_window: 40.0,
        }
    }
}

impl EngineSettings {
    /// Tightened settings for limit checks and oracle comparisons.
    pub fn high_accuracy() -> Self {
        Self {
            quad_rel_tol: 1e-10,
            term_rel_tol: 1e-9,
            consecutive_small: 3,
            min_terms: 10,
            max_terms: 2_000_000,
            y_window: 60.0,
        }
    }
}

/// Result of a particle-wall free-energy evaluation.
#[derive(Debug, Clone)]
pub struct LifshitzResult {
    /// Free energy in J (negative for attraction).
    pub free_energy_j: f64,
    /// C3 coefficient in a.u. (Hartree bohr^3); `F = -C3/a^3`.
    pub c3_au: f64,
    /// Matsubara terms actually summed (counting l = 0).
    pub terms_used: usize,
    /// Largest relative contribution among the terms that triggered the
    /// cutoff (or the last term when the cap tripped).
    pub tail_estimate: f64,
    /// Worst relative per-term quadrature error estimate.
    pub quadrature_error: f64,
    /// The hard Matsubara cap was reached before the tail criterion.
    pub hit_term_cap: bool,
    pub warnings: Vec<String>,
}

/// Compensated (Kahan) accumulator; summation order is fixed by the callers.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

pub(crate) struct SumOutcome {
    pub value: f64,
    pub terms_used: usize,
    pub tail_estimate: f64,
    pub quadrature_error: f64,
    pub hit_cap: bool,
}

/// Shared Matsubara loop: `l0_term` plus `alpha(i xi_l) * integral(l, zeta_l)`
/// for `l >= 1`, with the cutoff policy from `settings`. The integral
/// callback returns `(value, relative quadrature error)`.
pub(crate) fn matsubara_sum<F>(
    grid: &MatsubaraGrid,
    particle: &OscillatorModel,
    a_m: f64,
    settings: &EngineSettings,
    l0_term: f64,
    mut integral: F,
) -> Result<SumOutcome>
where
    F: FnMut(usize, f64) -> Result<(f64, f64)>,
{
    let mut acc = Kahan::default();
    acc.add(l0_term);
    let mut quad_error: f64 = 0.0;
    let mut recent: Vec<f64> = Vec::with_capacity(settings.consecutive_small);
    let mut l = 1usize;
    loop {
        let xi = grid.xi(l);
        let zeta = 2.0 * a_m * xi / C_LIGHT;
        let (ival, ierr) = integral(l, zeta)?;
        let term = particle.alpha_ixi_m3(xi) * ival;
        acc.add(term);
        quad_error = quad_error.max(ierr);
        let scale = acc.value().abs().max(f64::MIN_POSITIVE);
        let rel = term.abs() / scale;
        if l >= settings.min_terms && rel < settings.term_rel_tol {
            recent.push(rel);
            if recent.len() >= settings.consecutive_small {
                let tail = recent.iter().cloned().fold(0.0, f64::max);
                return Ok(SumOutcome {
                    value: acc.value(),
                    terms_used: l + 1,
                    tail_estimate: tail,
                    quadrature_error: quad_error,
                    hit_cap: false,
                });
            }
        } else {
            recent.clear();
        }
        if l >= settings.max_terms {
            return Ok(SumOutcome {
                value: acc.value(),
                terms_used: l + 1,
                tail_estimate: rel,
                quadrature_error: quad_error,
                hit_cap: true,
            });
        }
        l += 1;
    }
}

fn require_planar(wall: &WallGeometry) -> Result<Option<f64>> {
    match wall.kind {
        WallKind::Semispace => Ok(None),
        WallKind::Plate { thickness_m } => Ok(Some(thickness_m)),
        _ => Err(Error::domain(
            "planar engine handles semispace and plate geometries only",
        )),
    }
}

/// The per-term planar y-integral
/// `int_zeta^inf dy e^-y [2 y^2 r_par + zeta^2 (r_perp - r_par)]`.
fn planar_term_integral(
    eps: EpsAtFreq,
    zeta: f64,
    plate: Option<(f64, f64)>, // (d, a)
    settings: &EngineSettings,
) -> Result<(f64, f64)> {
    let refl = move |y: f64| match plate {
        None => reflection::semispace_pair(eps, zeta, y),
        Some((d, a)) => reflection::plate_pair(eps, zeta, y, d / (2.0 * a)),
    };
    let q = quadrature::adaptive(
        |t| {
            let y = zeta + t;
            let p = refl(y);
            (-y).exp() * (2.0 * y * y * p.r_par + zeta * zeta * (p.r_perp - p.r_par))
        },
        0.0,
        settings.y_window,
        settings.quad_rel_tol,
        0.0,
    )?;
    // |2 y^2 r_par + zeta^2 (r_perp - r_par)| <= 2 y^2 + 2 zeta^2, so the
    // neglected tail is below 2 e^-Y (Y^2 + 2Y + 2 + zeta^2).
    let y_max = zeta + settings.y_window;
    let tail_bound = 2.0 * (-y_max).exp() * (y_max * y_max + 2.0 * y_max + 2.0 + zeta * zeta);
    let abs_err = q.abs_error + tail_bound;
    let rel_err = abs_err / q.value.abs().max(f64::MIN_POSITIVE);
    Ok((q.value, rel_err))
}

/// C3 coefficient (and free energy) of a particle near a semispace or plate.
pub fn c3_planar(
    particle: &OscillatorModel,
    wall: &WallGeometry,
    a_m: f64,
    temperature_k: f64,
) -> Result<LifshitzResult> {
    c3_planar_with(particle, wall, a_m, temperature_k, &EngineSettings::default())
}

pub fn c3_planar_with(
    particle: &OscillatorModel,
    wall: &WallGeometry,
    a_m: f64,
    temperature_k: f64,
    settings: &EngineSettings,
) -> Result<LifshitzResult> {
    if !(a_m > 0.0) {
        return Err(Error::domain(format!(
            "separation must be positive, got {a_m} m"
        )));
    }
    let plate_d = require_planar(wall)?;
    let grid = MatsubaraGrid::new(temperature_k)?;
    let mut warnings = Vec::new();
    if a_m < 3e-9 {
        warnings.push(format!(
            "separation {:.3} nm is below the 3 nm continuum-validity region",
            quantities::m_to_nm(a_m)
        ));
    }

    // l = 0: the integrand reduces to 2 y^2 e^-y r_par(0), whose y-integral
    // is 4; with the halved zeroth term this leaves 2 alpha(0) r_par(0).
    let r0 = reflection::refl_zero_frequency(&wall.material);
    let l0 = 2.0 * particle.alpha0_m3() * r0.r_par;

    let material = &wall.material;
    let outcome = matsubara_sum(&grid, particle, a_m, settings, l0, |_l, zeta| {
        let (ex, ez) = material.eps_pair(grid.xi(_l))?;
        let eps = EpsAtFreq::new(ex, ez)?;
        planar_term_integral(eps, zeta, plate_d.map(|d| (d, a_m)), settings)
    })?;

    let c3_si = K_B * temperature_k / 8.0 * outcome.value;
    Ok(LifshitzResult {
        free_energy_j: -c3_si / (a_m * a_m * a_m),
        c3_au: quantities::c3_si_to_au(c3_si),
        terms_used: outcome.terms_used,
        tail_estimate: outcome.tail_estimate,
        quadrature_error: outcome.quadrature_error,
        hit_term_cap: outcome.hit_cap,
        warnings,
    })
}

/// Free energy of the particle-wall interaction; same computation as
/// [`c3_planar`], reported with the energy first.
pub fn free_energy_planar(
    particle: &OscillatorModel,
    wall: &WallGeometry,
    a_m: f64,
    temperature_k: f64,
) -> Result<LifshitzResult> {
    c3_planar(particle, wall, a_m, temperature_k)
}

pub fn free_energy_planar_with(
    particle: &OscillatorModel,
    wall: &WallGeometry,
    a_m: f64,
    temperature_k: f64,
    settings: &EngineSettings,
) -> Result<LifshitzResult> {
    c3_planar_with(particle, wall, a_m, temperature_k, settings)
}

fn zero_frequency_product(left: &Material, right: &Material) -> f64 {
    reflection::refl_zero_frequency(left).r_par * reflection::refl_zero_frequency(right).r_par
}

fn two_body_eps(
    left: &Material,
    right: &Material,
    xi: f64,
) -> Result<(EpsAtFreq, EpsAtFreq)> {
    let (lx, lz) = left.eps_pair(xi)?;
    let (rx, rz) = right.eps_pair(xi)?;
    Ok((EpsAtFreq::new(lx, lz)?, EpsAtFreq::new(rx, rz)?))
}

/// Free energy per unit area between a left body (semispace, or plate of
/// thickness `d_left`) and a right semispace, separated by a vacuum gap `a`:
///
/// ```text
/// F(a,T) = kB T/(8 pi a^2) sum_l' int_{zeta_l}^inf y dy
///          { ln[1 - r_par^L r_par^R e^-y] + ln[1 - r_perp^L r_perp^R e^-y] }
/// ```
pub fn two_body_free_energy_per_area(
    left: &Material,
    right: &Material,
    d_left: Option<f64>,
    a_m: f64,
    temperature_k: f64,
    settings: &EngineSettings,
) -> Result<f64> {
    if !(a_m > 0.0) {
        return Err(Error::domain("gap must be positive"));
    }
    if let Some(d) = d_left {
        if !(d > 0.0) {
            return Err(Error::domain("plate thickness must be positive"));
        }
    }
    let grid = MatsubaraGrid::new(temperature_k)?;

    // l = 0: r_perp(0) = 0 kills the TE log; r_par(0) is y-independent.
    let c0 = zero_frequency_product(left, right);
    let l0 =
        0.5 * quadrature::adaptive(
            |y| {
                if y == 0.0 {
                    0.0
                } else {
                    y * (-c0 * (-y).exp()).ln_1p()
                }
            },
            0.0,
            settings.y_window + 20.0,
            settings.quad_rel_tol,
            0.0,
        )?
        .value;

    let mut acc = Kahan::default();
    acc.add(l0);
    let mut recent = 0usize;
    let mut l = 1usize;
    loop {
        let xi = grid.xi(l);
        let zeta = 2.0 * a_m * xi / C_LIGHT;
        let (le, re) = two_body_eps(left, right, xi)?;
        let term = quadrature::adaptive(
            |t| {
                let y = zeta + t;
                let lp = match d_left {
                    None => reflection::semispace_pair(le, zeta, y),
                    Some(d) => reflection::plate_pair(le, zeta, y, d / (2.0 * a_m)),
                };
                let rp = reflection::semispace_pair(re, zeta, y);
                let e = (-y).exp();
                let log_par = (-lp.r_par * rp.r_par * e).ln_1p();
                let log_perp = (-lp.r_perp * rp.r_perp * e).ln_1p();
                y * (log_par + log_perp)
            },
            0.0,
            settings.y_window + 20.0,
            settings.quad_rel_tol,
            0.0,
        )?
        .value;
        acc.add(term);
        let rel = term.abs() / acc.value().abs().max(f64::MIN_POSITIVE);
        if l >= settings.min_terms && rel < settings.term_rel_tol {
            recent += 1;
            if recent >= settings.consecutive_small {
                break;
            }
        } else {
            recent = 0;
        }
        if l >= settings.max_terms {
            break;
        }
        l += 1;
    }
    Ok(K_B * temperature_k / (8.0 * std::f64::consts::PI * a_m * a_m) * acc.value())
}

/// Force per unit area conjugate to [`two_body_free_energy_per_area`]
/// (`F = -d F_E / d a`), negative for attraction:
///
/// ```text
/// F(a,T) = -kB T/(8 pi a^3) sum_l' int_{zeta_l}^inf y^2 dy
///          [ c_par e^-y/(1 - c_par e^-y) + c_perp e^-y/(1 - c_perp e^-y) ]
/// ```
/// with `c = r^L r^R`.
pub fn two_body_force_per_area(
    left: &Material,
    right: &Material,
    d_left: Option<f64>,
    a_m: f64,
    temperature_k: f64,
    settings: &EngineSettings,
) -> Result<f64> {
    if !(a_m > 0.0) {
        return Err(Error::domain("gap must be positive"));
    }
    let grid = MatsubaraGrid::new(temperature_k)?;

    let c0 = zero_frequency_product(left, right);
    let l0 = 0.5
        * quadrature::adaptive(
            |y| {
                let e = (-y).exp();
                y * y * c0 * e / (1.0 - c0 * e)
            },
            0.0,
            settings.y_window + 20.0,
            settings.quad_rel_tol,
            0.0,
        )?
        .value;

    let mut acc = Kahan::default();
    acc.add(l0);
    let mut recent = 0usize;
    let mut l = 1usize;
    loop {
        let xi = grid.xi(l);
        let zeta = 2.0 * a_m * xi / C_LIGHT;
        let (le, re) = two_body_eps(left, right, xi)?;
        let term = quadrature::adaptive(
            |t| {
                let y = zeta + t;
                let lp = match d_left {
                    None => reflection::semispace_pair(le, zeta, y),
                    Some(d) => reflection::plate_pair(le, zeta, y, d / (2.0 * a_m)),
                };
                let rp = reflection::semispace_pair(re, zeta, y);
                let e = (-y).exp();
                let c_par = lp.r_par * rp.r_par;
                let c_perp = lp.r_perp * rp.r_perp;
                y * y * (c_par * e / (1.0 - c_par * e) + c_perp * e / (1.0 - c_perp * e))
            },
            0.0,
            settings.y_window + 20.0,
            settings.quad_rel_tol,
            0.0,
        )?
        .value;
        acc.add(term);
        let rel = term.abs() / acc.value().abs().max(f64::MIN_POSITIVE);
        if l >= settings.min_terms && rel < settings.term_rel_tol {
            recent += 1;
            if recent >= settings.consecutive_small {
                break;
            }
        } else {
            recent = 0;
        }
        if l >= settings.max_terms {
            break;
        }
        l += 1;
    }
    Ok(-K_B * temperature_k / (8.0 * std::f64::consts::PI * a_m.powi(3)) * acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validation;
    use approx::assert_relative_eq;

    fn h1() -> OscillatorModel {
        OscillatorModel::hydrogen_1osc()
    }

    #[test]
    fn ideal_metal_matches_nonretarded_oracle() {
        let wall = WallGeometry::semispace(Material::ideal_metal());
        let r = c3_planar(&h1(), &wall, 0.5e-9, 300.0).unwrap();
        let oracle = validation::oracle_ideal_metal_c3(&h1());
        assert_relative_eq!(r.c3_au, oracle, max_relative = 3e-2);
        assert!(!r.warnings.is_empty(), "sub-3nm separation must warn");
        assert_relative_eq!(r.free_energy_j, -quantities::c3_au_to_si(r.c3_au) / 0.5e-9f64.powi(3), max_relative = 1e-12);
    }

    #[test]
    fn vacuum_wall_gives_zero() {
        let wall = WallGeometry::semispace(Material::vacuum());
        let r = c3_planar(&h1(), &wall, 5e-9, 300.0).unwrap();
        assert_eq!(r.c3_au, 0.0);
        assert_eq!(r.free_energy_j, 0.0);
    }

    #[test]
    fn plate_approaches_semispace() {
        let m = Material::drude_test();
        let semi = c3_planar(&h1(), &WallGeometry::semispace(m.clone()), 5e-9, 300.0).unwrap();
        let thick = c3_planar(
            &h1(),
            &WallGeometry::plate(m.clone(), 5e-5).unwrap(),
            5e-9,
            300.0,
        )
        .unwrap();
        assert_relative_eq!(thick.c3_au, semi.c3_au, max_relative = 1e-8);
        // A thin plate binds more weakly.
        let thin = c3_planar(
            &h1(),
            &WallGeometry::plate(m, 2e-9).unwrap(),
            5e-9,
            300.0,
        )
        .unwrap();
        assert!(thin.c3_au < semi.c3_au);
        assert!(thin.c3_au > 0.0);
    }

    #[test]
    fn magnitude_decreases_with_separation() {
        let m = Material::drude_test();
        let wall = WallGeometry::semispace(m);
        let mut last = f64::INFINITY;
        for &a_nm in &[3.0, 5.0, 10.0, 30.0, 100.0] {
            let r = free_energy_planar(&h1(), &wall, a_nm * 1e-9, 300.0).unwrap();
            assert!(r.free_energy_j < 0.0);
            assert!(r.free_energy_j.abs() < last);
            last = r.free_energy_j.abs();
        }
    }

    #[test]
    fn tail_estimate_below_tolerance() {
        let wall = WallGeometry::semispace(Material::drude_test());
        let r = c3_planar(&h1(), &wall, 10e-9, 300.0).unwrap();
        assert!(r.tail_estimate < EngineSettings::default().term_rel_tol);
        assert!(!r.hit_term_cap);
        assert!(r.terms_used > 10);
    }

    #[test]
    fn rejects_cylindrical_geometry() {
        let wall = WallGeometry::solid_cylinder(Material::drude_test(), 50e-9).unwrap();
        assert!(c3_planar(&h1(), &wall, 5e-9, 300.0).is_err());
    }

    #[test]
    fn two_body_vacuum_gives_zero() {
        let s = EngineSettings::default();
        let f = two_body_free_energy_per_area(
            &Material::vacuum(),
            &Material::drude_test(),
            None,
            10e-9,
            300.0,
            &s,
        )
        .unwrap();
        assert_eq!(f, 0.0);
        let p = two_body_force_per_area(
            &Material::vacuum(),
            &Material::drude_test(),
            None,
            10e-9,
            300.0,
            &s,
        )
        .unwrap();
        assert_eq!(p, 0.0);
    }

    #[test]
    fn ideal_mirrors_reach_casimir_limit() {
        // At 2 K and 1 um gap thermal corrections sit well below 1%.
        let s = EngineSettings {
            max_terms: 100_000,
            ..EngineSettings::default()
        };
        let a = 1e-6;
        let f = two_body_free_energy_per_area(
            &Material::ideal_metal(),
            &Material::ideal_metal(),
            None,
            a,
            2.0,
            &s,
        )
        .unwrap();
        let casimir = -std::f64::consts::PI.powi(2) * quantities::HBAR * C_LIGHT
            / (720.0 * a.powi(3));
        assert_relative_eq!(f, casimir, max_relative = 1e-2);
    }

    #[test]
    fn force_matches_energy_derivative() {
        let s = EngineSettings {
            quad_rel_tol: 1e-9,
            term_rel_tol: 1e-9,
            ..EngineSettings::default()
        };
        let m1 = Material::drude_test();
        let m2 = Material::dielectric_test();
        let a = 10e-9;
        let h = 1e-3 * a;
        for d_left in [None, Some(6e-9)] {
            let fp =
                two_body_free_energy_per_area(&m1, &m2, d_left, a + h, 300.0, &s).unwrap();
            let fm =
                two_body_free_energy_per_area(&m1, &m2, d_left, a - h, 300.0, &s).unwrap();
            let fd = -(fp - fm) / (2.0 * h);
            let force = two_body_force_per_area(&m1, &m2, d_left, a, 300.0, &s).unwrap();
            assert!(force < 0.0, "van der Waals attraction must be negative");
            assert_relative_eq!(force, fd, max_relative = 1e-4);
        }
    }
}
