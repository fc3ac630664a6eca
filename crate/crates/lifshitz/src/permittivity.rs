//! Dielectric permittivity along the imaginary frequency axis.
//!
//! The workhorse is the tabulated model: `eps(i xi)` is obtained from
//! `Im eps(omega)` through the Kramers-Kronig integral
//!
//! ```text
//! eps(i xi) = 1 + (2/pi) int_0^inf omega Im eps(omega) / (omega^2 + xi^2) d omega
//! ```
//!
//! split into three segments: an analytic low-frequency tail below the
//! measured window, the interpolated table inside it, and an `A/omega^3`
//! tail above it. The two outer segments can be evaluated either by
//! adaptive quadrature or in closed form (arctan/log expressions); both
//! routes are exposed and cross-checked in the tests.
//!
//! Analytic models (Drude, oscillator sums, ideal metal, vacuum) cover
//! limits and test fixtures.

use crate::error::{Error, Result};
use crate::optics::{AxisExtrapolation, LowFreqTail, MaterialDescriptor, OpticalAxis, OpticalDataTable};
use crate::quadrature;
use crate::quantities;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, RwLock};

/// Relative tolerance for the Kramers-Kronig quadratures. Tight enough that
/// permittivity error is negligible against the 1e-5 free-energy target.
pub const KK_REL_TOL: f64 = 1e-7;

/// Permittivity value at one imaginary frequency. The ideal metal is
/// "infinite at every frequency" and carries no number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EpsIxi {
    Finite(f64),
    Infinite,
}

impl EpsIxi {
    pub fn finite(self) -> Option<f64> {
        match self {
            EpsIxi::Finite(v) => Some(v),
            EpsIxi::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, EpsIxi::Infinite)
    }
}

/// Static (`xi -> 0`) limit of a permittivity model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StaticBehavior {
    Finite(f64),
    /// `eps(i xi) -> inf` as `xi -> 0`, as for any model with a conducting
    /// (Drude or constant-absorption) low-frequency tail.
    DivergesAsConductor,
}

/// Which route evaluates the outer Kramers-Kronig segments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KkRoute {
    /// Closed-form arctan/log expressions for the analytic tails.
    #[default]
    ClosedSegments,
    /// Adaptive quadrature for every segment.
    Numeric,
}

/// One-axis permittivity model on the imaginary frequency axis.
#[derive(Debug, Clone)]
pub enum PermittivityModel {
    /// Tabulated data plus analytic tails, transformed by Kramers-Kronig.
    /// Evaluations are memoized per frequency behind a lock, so a model can
    /// be shared across threads once built.
    TabulatedKk {
        table: Arc<OpticalDataTable>,
        extrapolation: AxisExtrapolation,
        route: KkRoute,
        cache: Arc<RwLock<HashMap<u64, f64>>>,
    },
    /// `eps(i xi) = 1 + omega_p^2 / (xi (xi + gamma))`, frequencies in eV.
    Drude { omega_p_ev: f64, gamma_ev: f64 },
    /// `eps(i xi) = eps_inf + sum_j g_j / (omega_j^2 + xi^2)`, in eV units.
    Oscillator {
        eps_inf: f64,
        terms: Vec<(f64, f64)>, // (g in eV^2, omega in eV)
    },
    IdealMetal,
    Vacuum,
}

impl PermittivityModel {
    pub fn tabulated(table: OpticalDataTable, extrapolation: AxisExtrapolation) -> Result<Self> {
        extrapolation.validate()?;
        Ok(PermittivityModel::TabulatedKk {
            table: Arc::new(table),
            extrapolation,
            route: KkRoute::default(),
            cache: Arc::new(RwLock::new(HashMap::new())),
        })
    }

    pub fn tabulated_with_route(
        table: OpticalDataTable,
        extrapolation: AxisExtrapolation,
        route: KkRoute,
    ) -> Result<Self> {
        let mut model = Self::tabulated(table, extrapolation)?;
        if let PermittivityModel::TabulatedKk { route: r, .. } = &mut model {
            *r = route;
        }
        Ok(model)
    }

    pub fn drude(omega_p_ev: f64, gamma_ev: f64) -> Result<Self> {
        if !(omega_p_ev > 0.0 && gamma_ev > 0.0) {
            return Err(Error::domain(format!(
                "Drude parameters must be positive, got omega_p = {omega_p_ev}, gamma = {gamma_ev}"
            )));
        }
        Ok(PermittivityModel::Drude {
            omega_p_ev,
            gamma_ev,
        })
    }

    pub fn oscillator(eps_inf: f64, terms: Vec<(f64, f64)>) -> Result<Self> {
        if !(eps_inf >= 1.0) {
            return Err(Error::domain(format!(
                "eps_inf must be >= 1, got {eps_inf}"
            )));
        }
        for &(g, om) in &terms {
            if !(g > 0.0 && om > 0.0) {
                return Err(Error::domain(format!(
                    "oscillator terms must be positive, got (g = {g}, omega = {om})"
                )));
            }
        }
        Ok(PermittivityModel::Oscillator { eps_inf, terms })
    }

    /// `eps(i xi)` for `xi > 0` in rad/s.
    pub fn eps_ixi(&self, xi_rad_s: f64) -> Result<EpsIxi> {
        if !(xi_rad_s > 0.0) {
            return Err(Error::domain(format!(
                "eps(i xi) needs xi > 0 (got {xi_rad_s}); query the static limit instead"
            )));
        }
        match self {
            PermittivityModel::IdealMetal => Ok(EpsIxi::Infinite),
            PermittivityModel::Vacuum => Ok(EpsIxi::Finite(1.0)),
            PermittivityModel::Drude {
                omega_p_ev,
                gamma_ev,
            } => {
                let xi = quantities::rad_s_to_ev(xi_rad_s);
                Ok(EpsIxi::Finite(
                    1.0 + omega_p_ev * omega_p_ev / (xi * (xi + gamma_ev)),
                ))
            }
            PermittivityModel::Oscillator { eps_inf, terms } => {
                let xi = quantities::rad_s_to_ev(xi_rad_s);
                let sum: f64 = terms.iter().map(|&(g, om)| g / (om * om + xi * xi)).sum();
                Ok(EpsIxi::Finite(eps_inf + sum))
            }
            PermittivityModel::TabulatedKk {
                table,
                extrapolation,
                route,
                cache,
            } => {
                let key = xi_rad_s.to_bits();
                if let Some(&v) = cache.read().expect("cache lock").get(&key) {
                    return Ok(EpsIxi::Finite(v));
                }
                let v = match route {
                    KkRoute::ClosedSegments => kk_closed_segments(table, extrapolation, xi_rad_s)?,
                    KkRoute::Numeric => kk_numeric(table, extrapolation, xi_rad_s)?,
                };
                cache.write().expect("cache lock").insert(key, v);
                Ok(EpsIxi::Finite(v))
            }
        }
    }

    /// Classify the `xi -> 0` limit.
    pub fn eps_static_behavior(&self) -> StaticBehavior {
        match self {
            PermittivityModel::IdealMetal => StaticBehavior::DivergesAsConductor,
            PermittivityModel::Vacuum => StaticBehavior::Finite(1.0),
            PermittivityModel::Drude { .. } => StaticBehavior::DivergesAsConductor,
            PermittivityModel::Oscillator { eps_inf, terms } => StaticBehavior::Finite(
                eps_inf + terms.iter().map(|&(g, om)| g / (om * om)).sum::<f64>(),
            ),
            PermittivityModel::TabulatedKk {
                table,
                extrapolation,
                ..
            } => match extrapolation.low {
                LowFreqTail::Drude { .. } => StaticBehavior::DivergesAsConductor,
                // A non-vanishing constant absorption makes the KK integral
                // diverge logarithmically at xi -> 0.
                LowFreqTail::Constant { value } if value > 0.0 => {
                    StaticBehavior::DivergesAsConductor
                }
                LowFreqTail::Constant { .. } => {
                    StaticBehavior::Finite(tabulated_eps_static(table, extrapolation))
                }
            },
        }
    }
}

/// Static permittivity of a tabulated model whose low tail vanishes.
fn tabulated_eps_static(table: &OpticalDataTable, extrap: &AxisExtrapolation) -> f64 {
    let mid = quadrature::adaptive_segments(
        |om| table.interpolate_im_eps(om).unwrap_or(0.0) / om,
        table.omega_ev(),
        KK_REL_TOL,
        0.0,
    )
    .map(|r| r.value)
    .unwrap_or(0.0);
    let (_, hi) = table.window_ev();
    let high = extrap.a_high_ev3 / (3.0 * hi * hi * hi);
    1.0 + (2.0 / PI) * (mid + high)
}

/// Middle Kramers-Kronig segment over the tabulated window (shared by both
/// routes), including the 2/pi factor. Frequencies in eV.
fn kk_middle(table: &OpticalDataTable, xi_ev: f64) -> Result<f64> {
    let xi2 = xi_ev * xi_ev;
    let r = quadrature::adaptive_segments(
        |om| {
            let im = table
                .interpolate_im_eps(om)
                .expect("quadrature stays inside the window");
            om * im / (om * om + xi2)
        },
        table.omega_ev(),
        KK_REL_TOL,
        0.0,
    )?;
    Ok((2.0 / PI) * r.value)
}

/// Closed form of the low segment, 2/pi included.
fn kk_low_closed(low: &LowFreqTail, omega1_ev: f64, xi_ev: f64) -> f64 {
    match *low {
        LowFreqTail::Constant { value } => {
            // (2/pi) int_0^W c omega/(omega^2+xi^2) = (c/pi) ln(1 + W^2/xi^2)
            let r = omega1_ev / xi_ev;
            value / PI * (1.0 + r * r).ln()
        }
        LowFreqTail::Drude {
            omega_p_ev: wp,
            gamma_ev: g,
        } => {
            let a1 = (omega1_ev / g).atan();
            if (xi_ev - g).abs() < 1e-6 * g {
                // Removable singularity at xi = gamma.
                let lim = (a1 + g * omega1_ev / (g * g + omega1_ev * omega1_ev)) / (2.0 * g * g);
                return (2.0 / PI) * wp * wp * lim;
            }
            let num = xi_ev * a1 - g * (omega1_ev / xi_ev).atan();
            (2.0 / PI) * wp * wp * num / (xi_ev * (xi_ev * xi_ev - g * g))
        }
    }
}

/// Closed form of the high segment, 2/pi included:
/// `(2A / (pi xi^2 W)) * (1 - arctan(u)/u)` with `u = xi/W`.
fn kk_high_closed(a_ev3: f64, omega2_ev: f64, xi_ev: f64) -> f64 {
    let u = xi_ev / omega2_ev;
    let bracket = if u < 0.5 {
        // 1 - arctan(u)/u cancels badly for small u; sum its series
        // sum_{k>=1} (-1)^{k+1} u^{2k}/(2k+1) instead.
        let u2 = u * u;
        let mut acc = 0.0;
        let mut pow = u2;
        let mut sign = 1.0;
        for k in 1..40 {
            let t = sign * pow / (2 * k + 1) as f64;
            acc += t;
            if t.abs() < 1e-18 * acc.abs() {
                break;
            }
            pow *= u2;
            sign = -sign;
        }
        acc
    } else {
        1.0 - u.atan() / u
    };
    2.0 * a_ev3 / (PI * xi_ev * xi_ev * omega2_ev) * bracket
}

/// Low segment by adaptive quadrature on [0, omega1], 2/pi included. The
/// Drude integrand is regular at the origin once the 1/omega of the tail is
/// cancelled against the omega of the kernel.
fn kk_low_numeric(low: &LowFreqTail, omega1_ev: f64, xi_ev: f64) -> Result<f64> {
    let xi2 = xi_ev * xi_ev;
    let r = match *low {
        LowFreqTail::Constant { value } => {
            if value == 0.0 {
                return Ok(0.0);
            }
            quadrature::adaptive(
                |om| value * om / (om * om + xi2),
                0.0,
                omega1_ev,
                KK_REL_TOL,
                0.0,
            )?
        }
        LowFreqTail::Drude {
            omega_p_ev: wp,
            gamma_ev: g,
        } => quadrature::adaptive(
            |om| wp * wp * g / ((om * om + g * g) * (om * om + xi2)),
            0.0,
            omega1_ev,
            KK_REL_TOL,
            0.0,
        )?,
    };
    Ok((2.0 / PI) * r.value)
}

/// High segment by adaptive quadrature on [omega2, inf), 2/pi included.
fn kk_high_numeric(a_ev3: f64, omega2_ev: f64, xi_ev: f64) -> Result<f64> {
    let xi2 = xi_ev * xi_ev;
    let r = quadrature::adaptive_semi_infinite(
        |om| a_ev3 / (om * om * (om * om + xi2)),
        omega2_ev,
        KK_REL_TOL,
        0.0,
    )?;
    Ok((2.0 / PI) * r.value)
}

/// Fully numeric three-segment Kramers-Kronig evaluation, `xi` in rad/s.
pub fn kk_numeric(
    table: &OpticalDataTable,
    extrap: &AxisExtrapolation,
    xi_rad_s: f64,
) -> Result<f64> {
    if !(xi_rad_s > 0.0) {
        return Err(Error::domain("kk_numeric needs xi > 0"));
    }
    let xi = quantities::rad_s_to_ev(xi_rad_s);
    let (lo, hi) = table.window_ev();
    let low = kk_low_numeric(&extrap.low, lo, xi)?;
    let mid = kk_middle(table, xi)?;
    let high = kk_high_numeric(extrap.a_high_ev3, hi, xi)?;
    Ok(1.0 + low + mid + high)
}

/// Kramers-Kronig evaluation with closed-form outer segments, `xi` in rad/s.
pub fn kk_closed_segments(
    table: &OpticalDataTable,
    extrap: &AxisExtrapolation,
    xi_rad_s: f64,
) -> Result<f64> {
    if !(xi_rad_s > 0.0) {
        return Err(Error::domain("kk_closed_segments needs xi > 0"));
    }
    let xi = quantities::rad_s_to_ev(xi_rad_s);
    let (lo, hi) = table.window_ev();
    let low = kk_low_closed(&extrap.low, lo, xi);
    let mid = kk_middle(table, xi)?;
    let high = kk_high_closed(extrap.a_high_ev3, hi, xi);
    Ok(1.0 + low + mid + high)
}

/// Wall material: one permittivity model per crystal axis. Isotropic walls
/// carry the same model twice.
#[derive(Debug, Clone)]
pub struct Material {
    pub label: String,
    eps_x: PermittivityModel,
    eps_z: PermittivityModel,
}

impl Material {
    pub fn uniaxial(
        label: impl Into<String>,
        eps_x: PermittivityModel,
        eps_z: PermittivityModel,
    ) -> Self {
        Self {
            label: label.into(),
            eps_x,
            eps_z,
        }
    }

    pub fn isotropic(label: impl Into<String>, eps: PermittivityModel) -> Self {
        Self {
            label: label.into(),
            eps_x: eps.clone(),
            eps_z: eps,
        }
    }

    pub fn eps_x(&self) -> &PermittivityModel {
        &self.eps_x
    }

    pub fn eps_z(&self) -> &PermittivityModel {
        &self.eps_z
    }

    /// `(eps_x, eps_z)` at `xi > 0` (rad/s).
    pub fn eps_pair(&self, xi_rad_s: f64) -> Result<(EpsIxi, EpsIxi)> {
        Ok((self.eps_x.eps_ixi(xi_rad_s)?, self.eps_z.eps_ixi(xi_rad_s)?))
    }

    pub fn static_behavior(&self) -> (StaticBehavior, StaticBehavior) {
        (
            self.eps_x.eps_static_behavior(),
            self.eps_z.eps_static_behavior(),
        )
    }

    /// Perfect mirror.
    pub fn ideal_metal() -> Self {
        Self::isotropic("ideal-metal", PermittivityModel::IdealMetal)
    }

    pub fn vacuum() -> Self {
        Self::isotropic("vacuum", PermittivityModel::Vacuum)
    }

    /// Bundled conductor-type test material: an isotropic Drude model with
    /// the same plasma frequency and relaxation used for the graphite
    /// ordinary-axis tail. Ships with the crate so conductor-wall physics is
    /// testable without third-party optical tables.
    pub fn drude_test() -> Self {
        Self::isotropic(
            "drude-test",
            PermittivityModel::drude(1.226, 0.04).expect("valid built-in parameters"),
        )
    }

    /// Bundled dielectric test material: a single oscillator with static
    /// permittivity 3 and resonance at 10 eV.
    pub fn dielectric_test() -> Self {
        Self::isotropic(
            "dielectric-test",
            PermittivityModel::oscillator(1.0, vec![(200.0, 10.0)])
                .expect("valid built-in parameters"),
        )
    }

    /// Build a tabulated uniaxial material from a descriptor (per-axis CSV
    /// tables plus extrapolation parameters).
    pub fn from_descriptor(desc: &MaterialDescriptor) -> Result<Self> {
        let tx = crate::optics::load_table(&desc.x_table, OpticalAxis::X)?;
        let tz = crate::optics::load_table(&desc.z_table, OpticalAxis::Z)?;
        Ok(Self::uniaxial(
            desc.name.clone(),
            PermittivityModel::tabulated(tx, desc.extrapolation.x)?,
            PermittivityModel::tabulated(tz, desc.extrapolation.z)?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validation::synthetic_drude_table;
    use approx::assert_relative_eq;

    fn drude_eps(wp: f64, g: f64, xi_ev: f64) -> f64 {
        1.0 + wp * wp / (xi_ev * (xi_ev + g))
    }

    #[test]
    fn vacuum_is_one_everywhere() {
        let m = PermittivityModel::Vacuum;
        assert_eq!(m.eps_ixi(1e15).unwrap(), EpsIxi::Finite(1.0));
        assert_eq!(m.eps_static_behavior(), StaticBehavior::Finite(1.0));
    }

    #[test]
    fn drude_model_matches_closed_form() {
        let m = PermittivityModel::drude(1.226, 0.04).unwrap();
        let xi_rad_s = 2.47e14;
        let xi_ev = quantities::rad_s_to_ev(xi_rad_s);
        let expected = drude_eps(1.226, 0.04, xi_ev);
        assert_relative_eq!(
            m.eps_ixi(xi_rad_s).unwrap().finite().unwrap(),
            expected,
            max_relative = 1e-14
        );
        assert_eq!(
            m.eps_static_behavior(),
            StaticBehavior::DivergesAsConductor
        );
    }

    #[test]
    fn oscillator_static_value() {
        // One oscillator with eps(0) = 2.
        let m = PermittivityModel::oscillator(1.0, vec![(100.0, 10.0)]).unwrap();
        assert_eq!(m.eps_static_behavior(), StaticBehavior::Finite(2.0));
    }

    #[test]
    fn ideal_metal_flags_infinity() {
        let m = PermittivityModel::IdealMetal;
        assert!(m.eps_ixi(1e15).unwrap().is_infinite());
    }

    #[test]
    fn zero_frequency_is_domain_error() {
        let m = PermittivityModel::drude(1.0, 0.1).unwrap();
        assert!(m.eps_ixi(0.0).is_err());
        assert!(m.eps_ixi(-1.0).is_err());
    }

    #[test]
    fn zero_absorption_table_gives_unity() {
        let table = OpticalDataTable::new(
            OpticalAxis::X,
            vec![0.02, 1.0, 40.0],
            vec![0.0, 0.0, 0.0],
        )
        .unwrap();
        let extrap = AxisExtrapolation {
            a_high_ev3: 1e-300, // effectively no high tail
            low: LowFreqTail::Constant { value: 0.0 },
        };
        let eps = kk_numeric(&table, &extrap, 1e15).unwrap();
        assert_relative_eq!(eps, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn synthetic_drude_spectrum_reproduces_drude_closed_form() {
        // A table sampling the Drude absorption, with matching tails, must
        // transform back to 1 + wp^2/(xi(xi+gamma)).
        let (wp, g) = (1.226, 0.04);
        let (table, extrap) = synthetic_drude_table(wp, g, 0.02, 40.0, 1500);
        for &xi_rad_s in &[1e13, 2.47e14, 3e15, 1e17, 1e18] {
            let xi_ev = quantities::rad_s_to_ev(xi_rad_s);
            let expected = drude_eps(wp, g, xi_ev);
            let numeric = kk_numeric(&table, &extrap, xi_rad_s).unwrap();
            let closed = kk_closed_segments(&table, &extrap, xi_rad_s).unwrap();
            assert_relative_eq!(numeric, expected, max_relative = 1e-4);
            assert_relative_eq!(closed, expected, max_relative = 1e-4);
            assert_relative_eq!(closed, numeric, max_relative = 1e-4);
        }
    }

    #[test]
    fn closed_low_segment_handles_xi_equal_gamma() {
        let low = LowFreqTail::Drude {
            omega_p_ev: 1.226,
            gamma_ev: 0.04,
        };
        let at = kk_low_closed(&low, 0.02, 0.04);
        let near = kk_low_closed(&low, 0.02, 0.04 * (1.0 + 1e-5));
        assert_relative_eq!(at, near, max_relative = 1e-3);
        // And against the numeric segment.
        let numeric = kk_low_numeric(&low, 0.02, 0.04).unwrap();
        assert_relative_eq!(at, numeric, max_relative = 1e-6);
    }

    #[test]
    fn closed_high_segment_matches_numeric_across_scales() {
        for &xi_ev in &[1e-3, 0.5, 39.0, 40.0, 400.0, 4e4] {
            let c = kk_high_closed(3.49e4, 40.0, xi_ev);
            let n = kk_high_numeric(3.49e4, 40.0, xi_ev).unwrap();
            assert_relative_eq!(c, n, max_relative = 1e-6);
        }
    }

    #[test]
    fn constant_low_tail_closed_matches_numeric() {
        let low = LowFreqTail::Constant { value: 3.0 };
        for &xi_ev in &[0.01, 0.16, 5.0, 300.0] {
            let c = kk_low_closed(&low, 0.02, xi_ev);
            let n = kk_low_numeric(&low, 0.02, xi_ev).unwrap();
            assert_relative_eq!(c, n, max_relative = 1e-6);
        }
        // Zero constant contributes exactly nothing.
        let zero = LowFreqTail::Constant { value: 0.0 };
        assert_eq!(kk_low_closed(&zero, 0.02, 1.0), 0.0);
        assert_eq!(kk_low_numeric(&zero, 0.02, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn monotone_non_increasing_in_xi() {
        let (table, extrap) = synthetic_drude_table(1.226, 0.04, 0.02, 40.0, 400);
        let model = PermittivityModel::tabulated(table, extrap).unwrap();
        let mut last = f64::INFINITY;
        for k in 0..30 {
            let xi = 1e13 * 10f64.powf(k as f64 / 6.0);
            let v = model.eps_ixi(xi).unwrap().finite().unwrap();
            assert!(v >= 1.0, "Herglotz bound violated: eps = {v}");
            assert!(v <= last * (1.0 + 1e-12), "not monotone at xi = {xi}");
            last = v;
        }
    }

    #[test]
    fn high_frequency_asymptote() {
        let (table, extrap) = synthetic_drude_table(1.226, 0.04, 0.02, 40.0, 400);
        for route in [KkRoute::Numeric, KkRoute::ClosedSegments] {
            let model =
                PermittivityModel::tabulated_with_route(table.clone(), extrap, route).unwrap();
            let e1 = model.eps_ixi(1e18).unwrap().finite().unwrap();
            let e2 = model.eps_ixi(2e18).unwrap().finite().unwrap();
            // eps - 1 ~ 1/xi^2
            assert_relative_eq!((e1 - 1.0) / (e2 - 1.0), 4.0, max_relative = 3e-2);
        }
    }

    #[test]
    fn memoization_returns_identical_bits() {
        let (table, extrap) = synthetic_drude_table(1.226, 0.04, 0.02, 40.0, 200);
        let model = PermittivityModel::tabulated(table, extrap).unwrap();
        let a = model.eps_ixi(2.47e14).unwrap().finite().unwrap();
        let b = model.eps_ixi(2.47e14).unwrap().finite().unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn tabulated_static_behaviors() {
        let (table, extrap) = synthetic_drude_table(1.226, 0.04, 0.02, 40.0, 200);
        let model = PermittivityModel::tabulated(table.clone(), extrap).unwrap();
        assert_eq!(
            model.eps_static_behavior(),
            StaticBehavior::DivergesAsConductor
        );

        let const_extrap = AxisExtrapolation {
            a_high_ev3: extrap.a_high_ev3,
            low: LowFreqTail::Constant { value: 3.0 },
        };
        let mz = PermittivityModel::tabulated(table.clone(), const_extrap).unwrap();
        assert_eq!(mz.eps_static_behavior(), StaticBehavior::DivergesAsConductor);

        let dead_extrap = AxisExtrapolation {
            a_high_ev3: extrap.a_high_ev3,
            low: LowFreqTail::Constant { value: 0.0 },
        };
        let m0 = PermittivityModel::tabulated(table, dead_extrap).unwrap();
        match m0.eps_static_behavior() {
            StaticBehavior::Finite(v) => assert!(v > 1.0),
            other => panic!("expected finite static value, got {other:?}"),
        }
    }
}
