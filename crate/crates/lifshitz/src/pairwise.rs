//! Additive pairwise-summation free energies, normalized against the exact
//! atom-semispace result: for an atom outside an arbitrary body
//! `F = -(6 C3^s(a,T)/pi) int_v dv / r^6`, which for cylindrical bodies
//! reduces to one-dimensional angular integrals:
//!
//! ```text
//! exterior:  F = -(3/2) C3^s int_0^theta_m [rho_1^-3 - rho_2^-3] d theta
//! interior:  F = -(3/2) C3^s int_0^pi      [rho_1^-3 - rho_2^-3] d theta
//! ```
//!
//! with `rho_{1,2}` the chord lengths through the body along direction
//! `theta`. The exterior integrand vanishes like `sqrt(theta_m - theta)` at
//! the aperture edge; that endpoint is handled by a square-root change of
//! variable.

use crate::cylinder;
use crate::error::{Error, Result};
use crate::permittivity::Material;
use crate::planar::{self, EngineSettings};
use crate::polarizability::OscillatorModel;
use crate::quadrature;
use crate::reflection::WallGeometry;
use std::collections::HashMap;
use std::f64::consts::PI;

/// Relative tolerance of the angular quadratures.
pub const THETA_REL_TOL: f64 = 1e-7;

/// Which formula supplies the exterior branch of in/out comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExteriorRoute {
    /// Proximity-force Lifshitz cylinder (the default recipe).
    #[default]
    LifshitzCylinder,
    /// Pairwise summation, for sensitivity checks.
    PairwiseSummation,
}

/// `int_0^theta_m [rho_1(theta)^-3 - rho_2(theta)^-3] d theta` (1/m^3) for a
/// solid cylinder of radius `radius_m` seen from an atom at distance
/// `axis_distance_m > radius_m` from its axis. `theta_m = asin(R/s)`.
pub fn exterior_geometry_integral(radius_m: f64, axis_distance_m: f64) -> Result<f64> {
    if !(radius_m > 0.0 && axis_distance_m > radius_m) {
        return Err(Error::domain(format!(
            "exterior geometry needs 0 < R < s, got R = {radius_m}, s = {axis_distance_m}"
        )));
    }
    let s = axis_distance_m;
    let r = radius_m;
    let theta_m = (r / s).asin();
    // rho_2 = s cos(theta) + sqrt(R^2 - s^2 sin^2 theta); rho_1 through the
    // product rho_1 rho_2 = s^2 - R^2 avoids cancellation.
    let chord = move |theta: f64| -> f64 {
        let sin = theta.sin();
        let disc = (r * r - s * s * sin * sin).max(0.0).sqrt();
        let rho2 = s * theta.cos() + disc;
        let rho1 = (s * s - r * r) / rho2;
        1.0 / (rho1 * rho1 * rho1) - 1.0 / (rho2 * rho2 * rho2)
    };
    // Main part, stopping just short of the aperture edge.
    let theta_split = theta_m * (1.0 - 1e-6);
    let main = quadrature::adaptive(chord, 0.0, theta_split, THETA_REL_TOL, 0.0)?;
    // Edge sliver via theta = theta_m - u^2: the integrand's sqrt vanishing
    // becomes linear in u and the quadrature sees a smooth function.
    let u_max = (theta_m - theta_split).sqrt();
    let edge = quadrature::adaptive(
        |u| 2.0 * u * chord(theta_m - u * u),
        0.0,
        u_max,
        THETA_REL_TOL,
        0.0,
    )?;
    Ok(main.value + edge.value)
}

/// Interior counterpart for an atom inside a cavity of radius `r0_m` with
/// wall thickness `d_m`, at distance `a_m` from the inner surface along a
/// diameter (`0 < a_m < 2 r0`):
/// `int_0^pi [rho_1^-3 - rho_2^-3] d theta` with
/// `rho_i = -(r0-a) cos(theta) + sqrt(radius_i^2 - (r0-a)^2 sin^2 theta)`.
pub fn interior_geometry_integral(r0_m: f64, d_m: f64, a_m: f64) -> Result<f64> {
    if !(r0_m > 0.0 && d_m > 0.0) {
        return Err(Error::domain(format!(
            "interior geometry needs positive radii, got r0 = {r0_m}, d = {d_m}"
        )));
    }
    if !(a_m > 0.0 && a_m < 2.0 * r0_m) {
        return Err(Error::domain(format!(
            "atom must sit strictly inside the cavity: 0 < a < 2 r0, got a = {a_m}"
        )));
    }
    let b = r0_m - a_m; // signed distance of the atom from the axis
    let outer = r0_m + d_m;
    // rho = -b cos + sqrt(rad^2 - b^2 sin^2); the conjugate-product form
    // (rad^2 - b^2) / (b cos + sqrt(...)) is stable for every sign of b cos
    // because sqrt(...) > |b| always holds here.
    let chord = move |radius: f64, theta: f64| -> f64 {
        let sin = theta.sin();
        let disc = (radius * radius - b * b * sin * sin).sqrt();
        (radius * radius - b * b) / (b * theta.cos() + disc)
    };
    let q = quadrature::adaptive(
        |theta| {
            let rho1 = chord(r0_m, theta);
            let rho2 = chord(outer, theta);
            1.0 / (rho1 * rho1 * rho1) - 1.0 / (rho2 * rho2 * rho2)
        },
        0.0,
        PI,
        THETA_REL_TOL,
        0.0,
    )?;
    Ok(q.value)
}

/// Exterior pairwise free energy (J) from a precomputed `C3^s(a,T)` in SI
/// units (J m^3): `F = -(3/2) C3^s I_ext(R, R+a)`.
pub fn pairwise_exterior_with_c3(c3s_j_m3: f64, r_m: f64, a_m: f64) -> Result<f64> {
    let integral = exterior_geometry_integral(r_m, r_m + a_m)?;
    Ok(-1.5 * c3s_j_m3 * integral)
}

/// Exterior pairwise free energy (J), computing `C3^s(a,T)` for the given
/// particle and material.
pub fn pairwise_exterior(
    particle: &OscillatorModel,
    material: &Material,
    r_m: f64,
    a_m: f64,
    temperature_k: f64,
) -> Result<f64> {
    let c3s = semispace_c3_si(particle, material, a_m, temperature_k, &EngineSettings::default())?;
    pairwise_exterior_with_c3(c3s, r_m, a_m)
}

/// Interior pairwise free energy (J) from a precomputed `C3^s(a,T)`.
pub fn pairwise_interior_with_c3(c3s_j_m3: f64, r0_m: f64, d_m: f64, a_m: f64) -> Result<f64> {
    let integral = interior_geometry_integral(r0_m, d_m, a_m)?;
    Ok(-1.5 * c3s_j_m3 * integral)
}

/// Interior pairwise free energy (J); `C3^s` is evaluated at the distance to
/// the nearer wall, which keeps the diameter transect exactly symmetric.
pub fn pairwise_interior(
    particle: &OscillatorModel,
    material: &Material,
    r0_m: f64,
    d_m: f64,
    a_m: f64,
    temperature_k: f64,
) -> Result<f64> {
    if !(a_m > 0.0 && a_m < 2.0 * r0_m) {
        return Err(Error::domain(
            "atom must sit strictly inside the cavity: 0 < a < 2 r0",
        ));
    }
    let near = a_m.min(2.0 * r0_m - a_m);
    let c3s = semispace_c3_si(particle, material, near, temperature_k, &EngineSettings::default())?;
    pairwise_interior_with_c3(c3s, r0_m, d_m, a_m)
}

fn semispace_c3_si(
    particle: &OscillatorModel,
    material: &Material,
    a_m: f64,
    temperature_k: f64,
    settings: &EngineSettings,
) -> Result<f64> {
    let wall = WallGeometry::semispace(material.clone());
    let r = planar::c3_planar_with(particle, &wall, a_m, temperature_k, settings)?;
    Ok(crate::quantities::c3_au_to_si(r.c3_au))
}

/// Free-energy difference `F_ext(a) - F_int(a)` for atoms at the same offset
/// `a` from the outer and inner surfaces of a shell (cavity radius `r0`,
/// wall thickness `d`). Positive values mean the interior position is
/// energetically preferable. The exterior branch follows `route`.
pub fn inside_outside_difference(
    particle: &OscillatorModel,
    material: &Material,
    r0_m: f64,
    d_m: f64,
    a_m: f64,
    temperature_k: f64,
    route: ExteriorRoute,
) -> Result<f64> {
    let r_outer = r0_m + d_m;
    let f_ext = match route {
        ExteriorRoute::LifshitzCylinder => {
            let wall = WallGeometry::shell(material.clone(), r_outer, d_m)?;
            cylinder::c3_cylinder(particle, &wall, a_m, temperature_k)?.free_energy_j()
        }
        ExteriorRoute::PairwiseSummation => {
            let c3s = semispace_c3_si(
                particle,
                material,
                a_m,
                temperature_k,
                &EngineSettings::default(),
            )?;
            // Annular body: outer solid minus the cavity cylinder.
            let full = exterior_geometry_integral(r_outer, r_outer + a_m)?;
            let cavity = exterior_geometry_integral(r0_m, r_outer + a_m)?;
            -1.5 * c3s * (full - cavity)
        }
    };
    let f_int = pairwise_interior(particle, material, r0_m, d_m, a_m, temperature_k)?;
    Ok(f_ext - f_int)
}

/// Interior free energy along a diameter of the cavity. Positions are
/// distances from the inner surface, `0 < x < 2 r0`. `C3^s` is re-evaluated
/// at each position's distance to the nearer wall (and memoized across the
/// scan).
pub fn interior_transect(
    particle: &OscillatorModel,
    material: &Material,
    r0_m: f64,
    d_m: f64,
    positions_m: &[f64],
    temperature_k: f64,
) -> Result<Vec<(f64, f64)>> {
    let mut c3_cache: HashMap<u64, f64> = HashMap::new();
    let mut out = Vec::with_capacity(positions_m.len());
    for &x in positions_m {
        if !(x > 0.0 && x < 2.0 * r0_m) {
            return Err(Error::domain(format!(
                "transect position {x} m outside the cavity (0, {})",
                2.0 * r0_m
            )));
        }
        let near = x.min(2.0 * r0_m - x);
        let c3s = match c3_cache.get(&near.to_bits()) {
            Some(&v) => v,
            None => {
                let v = semispace_c3_si(
                    particle,
                    material,
                    near,
                    temperature_k,
                    &EngineSettings::default(),
                )?;
                c3_cache.insert(near.to_bits(), v);
                v
            }
        };
        let f = pairwise_interior_with_c3(c3s, r0_m, d_m, x)?;
        out.push((x, f));
    }
    Ok(out)
}
