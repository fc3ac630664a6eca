//! Reflection coefficients for the two field polarizations.
//!
//! Everything is expressed in the dimensionless variables `y = 2 a q` and
//! `zeta = 2 a xi / c` with the wave-vector combinations
//! `f_x^2 = y^2 + zeta^2 (eps_x - 1)` and `f_z^2 = y^2 + zeta^2 (eps_z - 1)`.
//! For a semispace of a uniaxial crystal (optic axis normal to the surface)
//!
//! ```text
//! r_par  = (sqrt(eps_x eps_z) y - f_z) / (sqrt(eps_x eps_z) y + f_z)
//! r_perp = (f_x - y) / (f_x + y)
//! ```
//!
//! and the finite-thickness plate replaces these with coth-damped forms that
//! recover the semispace as `d -> inf` and vanish as `d -> 0`. Setting
//! `eps_x = eps_z` reproduces the isotropic Fresnel coefficients.

use crate::error::{Error, Result};
use crate::permittivity::{EpsIxi, Material, StaticBehavior};

/// Transverse-magnetic (`r_par`) and transverse-electric (`r_perp`)
/// amplitudes at one `(zeta, y)` point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionPair {
    pub r_par: f64,
    pub r_perp: f64,
}

/// Macrobody shape. Lengths in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WallKind {
    Semispace,
    Plate { thickness_m: f64 },
    SolidCylinder { radius_m: f64 },
    /// Cylindrical shell of outer radius `radius_m` and wall thickness
    /// `thickness_m` (cavity radius `radius_m - thickness_m`).
    Shell { radius_m: f64, thickness_m: f64 },
}

/// Macrobody: shape plus per-axis material.
#[derive(Debug, Clone)]
pub struct WallGeometry {
    pub kind: WallKind,
    pub material: Material,
}

impl WallGeometry {
    pub fn semispace(material: Material) -> Self {
        Self {
            kind: WallKind::Semispace,
            material,
        }
    }

    pub fn plate(material: Material, thickness_m: f64) -> Result<Self> {
        if !(thickness_m > 0.0) {
            return Err(Error::domain(format!(
                "plate thickness must be positive, got {thickness_m} m"
            )));
        }
        Ok(Self {
            kind: WallKind::Plate { thickness_m },
            material,
        })
    }

    pub fn solid_cylinder(material: Material, radius_m: f64) -> Result<Self> {
        if !(radius_m > 0.0) {
            return Err(Error::domain(format!(
                "cylinder radius must be positive, got {radius_m} m"
            )));
        }
        Ok(Self {
            kind: WallKind::SolidCylinder { radius_m },
            material,
        })
    }

    /// Shell with `0 < thickness <= radius`; `thickness == radius`
    /// degenerates to the solid cylinder.
    pub fn shell(material: Material, radius_m: f64, thickness_m: f64) -> Result<Self> {
        if !(radius_m > 0.0) {
            return Err(Error::domain(format!(
                "shell radius must be positive, got {radius_m} m"
            )));
        }
        if !(thickness_m > 0.0 && thickness_m <= radius_m) {
            return Err(Error::domain(format!(
                "shell thickness must satisfy 0 < d <= R, got d = {thickness_m}, R = {radius_m}"
            )));
        }
        if thickness_m == radius_m {
            return Ok(Self {
                kind: WallKind::SolidCylinder { radius_m },
                material,
            });
        }
        Ok(Self {
            kind: WallKind::Shell {
                radius_m,
                thickness_m,
            },
            material,
        })
    }
}

/// Overflow-free coth: series below 1e-4, saturation to 1 above 350.
pub fn coth(u: f64) -> f64 {
    debug_assert!(u > 0.0);
    if u > 350.0 {
        1.0
    } else if u < 1e-4 {
        1.0 / u + u / 3.0 - u * u * u / 45.0
    } else {
        1.0 + 2.0 / ((2.0 * u).exp_m1())
    }
}

/// Per-frequency material data validated for the reflection formulas.
#[derive(Debug, Clone, Copy)]
pub(crate) struct EpsAtFreq {
    pub eps_x: EpsIxi,
    pub eps_z: EpsIxi,
}

impl EpsAtFreq {
    pub fn new(eps_x: EpsIxi, eps_z: EpsIxi) -> Result<Self> {
        for (name, e) in [("eps_x", eps_x), ("eps_z", eps_z)] {
            if let EpsIxi::Finite(v) = e {
                // Allow tiny numerical undershoot of the Herglotz bound.
                if !(v >= 1.0 - 1e-12) {
                    return Err(Error::domain(format!(
                        "{name} = {v} < 1 on the imaginary axis is unsupported"
                    )));
                }
            }
        }
        Ok(Self { eps_x, eps_z })
    }
}

fn check_domain(zeta: f64, y: f64) -> Result<()> {
    if !(zeta >= 0.0) {
        return Err(Error::domain(format!("zeta must be >= 0, got {zeta}")));
    }
    if !(y >= zeta) {
        return Err(Error::domain(format!(
            "y = {y} < zeta = {zeta} lies outside the integration region"
        )));
    }
    Ok(())
}

pub(crate) fn semispace_pair(eps: EpsAtFreq, zeta: f64, y: f64) -> ReflectionPair {
    match (eps.eps_x, eps.eps_z) {
        (EpsIxi::Finite(ex), EpsIxi::Finite(ez)) => {
            let fz = (y * y + zeta * zeta * (ez - 1.0)).max(0.0).sqrt();
            let fx = (y * y + zeta * zeta * (ex - 1.0)).max(0.0).sqrt();
            let s = (ex * ez).sqrt();
            ReflectionPair {
                r_par: (s * y - fz) / (s * y + fz),
                r_perp: (fx - y) / (fx + y),
            }
        }
        (EpsIxi::Infinite, EpsIxi::Infinite) => ReflectionPair {
            r_par: 1.0,
            r_perp: 1.0,
        },
        (EpsIxi::Infinite, EpsIxi::Finite(_)) => ReflectionPair {
            r_par: 1.0,
            r_perp: 1.0,
        },
        (EpsIxi::Finite(ex), EpsIxi::Infinite) => {
            let fx = (y * y + zeta * zeta * (ex - 1.0)).max(0.0).sqrt();
            ReflectionPair {
                r_par: 1.0,
                r_perp: (fx - y) / (fx + y),
            }
        }
    }
}

pub(crate) fn plate_pair(eps: EpsAtFreq, zeta: f64, y: f64, d_over_2a: f64) -> ReflectionPair {
    match (eps.eps_x, eps.eps_z) {
        (EpsIxi::Finite(ex), EpsIxi::Finite(ez)) => {
            let fz = (y * y + zeta * zeta * (ez - 1.0)).max(0.0).sqrt();
            let fx = (y * y + zeta * zeta * (ex - 1.0)).max(0.0).sqrt();
            let p = ex * ez;
            let s = p.sqrt();
            let y2 = y * y;
            let r_par = (p * y2 - fz * fz)
                / (p * y2 + fz * fz + 2.0 * s * y * fz * coth(fz * d_over_2a));
            let r_perp =
                (fx * fx - y2) / (fx * fx + y2 + 2.0 * y * fx * coth(fx * d_over_2a));
            ReflectionPair { r_par, r_perp }
        }
        // Any infinite axis makes the leading epsilon products dominate.
        (EpsIxi::Infinite, _) => ReflectionPair {
            r_par: 1.0,
            r_perp: 1.0,
        },
        (EpsIxi::Finite(ex), EpsIxi::Infinite) => {
            let fx = (y * y + zeta * zeta * (ex - 1.0)).max(0.0).sqrt();
            let y2 = y * y;
            ReflectionPair {
                r_par: 1.0,
                r_perp: (fx * fx - y2) / (fx * fx + y2 + 2.0 * y * fx * coth(fx * d_over_2a)),
            }
        }
    }
}

/// Semispace reflection pair at dimensionless `(zeta, y)`, `y >= zeta >= 0`,
/// for permittivities evaluated at the matching imaginary frequency.
pub fn refl_semispace(
    eps_x: EpsIxi,
    eps_z: EpsIxi,
    zeta: f64,
    y: f64,
) -> Result<ReflectionPair> {
    check_domain(zeta, y)?;
    Ok(semispace_pair(EpsAtFreq::new(eps_x, eps_z)?, zeta, y))
}

/// Plate reflection pair; `d` and `a` in meters, `a` being the separation
/// that defines the dimensionless variables (the coth argument is
/// `f d / (2a)`).
pub fn refl_plate(
    eps_x: EpsIxi,
    eps_z: EpsIxi,
    d_m: f64,
    a_m: f64,
    zeta: f64,
    y: f64,
) -> Result<ReflectionPair> {
    check_domain(zeta, y)?;
    if !(d_m > 0.0 && a_m > 0.0) {
        return Err(Error::domain(format!(
            "plate needs d > 0 and a > 0, got d = {d_m}, a = {a_m}"
        )));
    }
    Ok(plate_pair(
        EpsAtFreq::new(eps_x, eps_z)?,
        zeta,
        y,
        d_m / (2.0 * a_m),
    ))
}

/// Zero-Matsubara-frequency reflection pair of a material.
///
/// `r_par(0) = (sqrt(eps_x0 eps_z0) - 1) / (sqrt(eps_x0 eps_z0) + 1)` for
/// finite static permittivities and 1 when either axis diverges as a
/// conductor. `r_perp(0)` never contributes downstream (it is multiplied by
/// `xi_0^2 = 0`) and is returned as 0 by convention.
pub fn refl_zero_frequency(material: &Material) -> ReflectionPair {
    let r_par = match material.static_behavior() {
        (StaticBehavior::Finite(ex0), StaticBehavior::Finite(ez0)) => {
            let s = (ex0 * ez0).sqrt();
            (s - 1.0) / (s + 1.0)
        }
        _ => 1.0,
    };
    ReflectionPair { r_par, r_perp: 0.0 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permittivity::PermittivityModel;
    use approx::assert_relative_eq;

    fn finite(ex: f64, ez: f64) -> EpsAtFreq {
        EpsAtFreq::new(EpsIxi::Finite(ex), EpsIxi::Finite(ez)).unwrap()
    }

    #[test]
    fn vacuum_reflects_nothing() {
        let p = semispace_pair(finite(1.0, 1.0), 0.3, 1.7);
        assert_eq!(p.r_par, 0.0);
        assert_eq!(p.r_perp, 0.0);
        let p = plate_pair(finite(1.0, 1.0), 0.3, 1.7, 2.0);
        assert_eq!(p.r_par, 0.0);
        assert_eq!(p.r_perp, 0.0);
    }

    #[test]
    fn normal_incidence_polarizations_coincide() {
        // y = zeta means k_perp = 0; for isotropic eps = 2 both coefficients
        // equal (sqrt(2)-1)/(sqrt(2)+1).
        let expected = (2f64.sqrt() - 1.0) / (2f64.sqrt() + 1.0);
        let p = semispace_pair(finite(2.0, 2.0), 0.8, 0.8);
        assert_relative_eq!(p.r_par, expected, max_relative = 1e-14);
        assert_relative_eq!(p.r_perp, expected, max_relative = 1e-14);
    }

    #[test]
    fn ideal_metal_limit() {
        let eps = EpsAtFreq::new(EpsIxi::Infinite, EpsIxi::Infinite).unwrap();
        let p = semispace_pair(eps, 0.5, 0.5);
        assert_eq!(p.r_par, 1.0);
        assert_eq!(p.r_perp, 1.0);
        // Finite eps -> infinity approaches the same limit.
        let p = semispace_pair(finite(1e12, 1e12), 0.5, 0.5);
        assert!(p.r_par > 0.999_99 && p.r_perp > 0.999_99);
    }

    #[test]
    fn moduli_bounded_by_one() {
        for &(ex, ez) in &[(1.0, 1.0), (2.0, 7.0), (100.0, 3.0), (1e6, 1e6)] {
            for &zeta in &[0.0, 0.01, 1.0, 20.0] {
                for &dy in &[0.0, 0.3, 5.0, 30.0] {
                    let y = zeta + dy;
                    if y == 0.0 {
                        continue;
                    }
                    let p = semispace_pair(finite(ex, ez), zeta, y);
                    assert!(p.r_par.abs() <= 1.0 && p.r_perp.abs() <= 1.0);
                    let q = plate_pair(finite(ex, ez), zeta, y, 0.7);
                    assert!(q.r_par.abs() <= 1.0 && q.r_perp.abs() <= 1.0);
                }
            }
        }
    }

    #[test]
    fn plate_converges_to_semispace() {
        let eps = finite(4.0, 2.5);
        let (zeta, y) = (0.4, 1.3);
        let s = semispace_pair(eps, zeta, y);
        // f * d/(2a) > 50 guarantees 1e-10 agreement.
        let p = plate_pair(eps, zeta, y, 60.0 / y);
        assert_relative_eq!(p.r_par, s.r_par, epsilon = 1e-10);
        assert_relative_eq!(p.r_perp, s.r_perp, epsilon = 1e-10);
    }

    #[test]
    fn vanishing_plate_reflects_nothing() {
        let eps = finite(4.0, 2.5);
        let p = plate_pair(eps, 0.4, 1.3, 1e-14);
        assert!(p.r_par.abs() < 1e-10);
        assert!(p.r_perp.abs() < 1e-10);
    }

    #[test]
    fn coth_matches_reference_across_branches() {
        for &u in &[0.3e-4, 0.99e-4, 1.01e-4, 0.01, 1.0, 10.0, 349.0, 351.0, 1e6] {
            assert_relative_eq!(coth(u), 1.0 / u.tanh(), max_relative = 1e-13);
        }
    }

    #[test]
    fn zero_frequency_pairs() {
        // Conductor-tailed axis forces r_par(0) = 1.
        let m = Material::drude_test();
        let p = refl_zero_frequency(&m);
        assert_eq!(p.r_par, 1.0);
        assert_eq!(p.r_perp, 0.0);

        let v = refl_zero_frequency(&Material::vacuum());
        assert_eq!(v.r_par, 0.0);

        // Isotropic static eps = 3: (3-1)/(3+1) = 0.5 from sqrt(eps_x eps_z) = 3.
        let m = Material::isotropic(
            "static-3",
            PermittivityModel::oscillator(1.0, vec![(200.0, 10.0)]).unwrap(),
        );
        assert_relative_eq!(refl_zero_frequency(&m).r_par, 0.5, max_relative = 1e-14);
    }

    #[test]
    fn metamaterial_epsilon_rejected() {
        assert!(EpsAtFreq::new(EpsIxi::Finite(0.5), EpsIxi::Finite(2.0)).is_err());
        assert!(refl_semispace(EpsIxi::Finite(0.5), EpsIxi::Finite(2.0), 0.1, 0.5).is_err());
    }

    #[test]
    fn outside_integration_region_rejected() {
        let r = refl_semispace(EpsIxi::Finite(2.0), EpsIxi::Finite(2.0), 1.0, 0.5);
        assert!(matches!(r, Err(Error::Domain(_))));
        let r = refl_plate(EpsIxi::Finite(2.0), EpsIxi::Finite(2.0), 1e-9, 1e-9, 1.0, 0.5);
        assert!(r.is_err());
    }

    #[test]
    fn rarefied_medium_first_order() {
        // For isotropic eps = 1 + 4 pi alpha N with alpha N tiny:
        // r_par -> pi alpha N (2 - zeta^2/y^2), r_perp -> pi alpha N zeta^2/y^2.
        let alpha_n = 1e-7;
        let eps = 1.0 + 4.0 * std::f64::consts::PI * alpha_n;
        for &(zeta, y) in &[(0.1, 0.5), (0.5, 0.5), (0.2, 3.0), (1.0, 1.4)] {
            let p = semispace_pair(finite(eps, eps), zeta, y);
            let ratio2 = zeta * zeta / (y * y);
            let par_lin = std::f64::consts::PI * alpha_n * (2.0 - ratio2);
            let perp_lin = std::f64::consts::PI * alpha_n * ratio2;
            assert_relative_eq!(p.r_par, par_lin, max_relative = 1e-4);
            assert_relative_eq!(p.r_perp, perp_lin, max_relative = 1e-4);
        }
    }
}
