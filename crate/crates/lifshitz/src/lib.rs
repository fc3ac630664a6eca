//! Lifshitz-theory dispersion-force engine.
//!
//! Computes van der Waals / Casimir-Polder free energies between a polarizable
//! microparticle (e.g. a hydrogen atom or molecule) and a macroscopic body made
//! of an isotropic material or a uniaxial crystal such as graphite. Supported
//! geometries are the semispace, the flat plate of finite thickness, the solid
//! cylinder and the cylindrical shell (a multiwall-nanotube model), plus
//! pairwise-summation energies for an atom inside a cylindrical cavity.
//!
//! The material side of the calculation runs the full dielectric-data pipeline:
//! tabulated optical constants on the real frequency axis are extrapolated to
//! low and high frequencies and transformed to the imaginary axis with a
//! Kramers-Kronig integral, yielding `eps(i*xi)` at every Matsubara frequency.
//!
//! All bulk numbers are kept in SI internally; user-facing C3 coefficients are
//! reported in atomic units (Hartree * bohr^3).

pub mod cli;
pub mod cylinder;
pub mod error;
pub mod optics;
pub mod pairwise;
pub mod permittivity;
pub mod planar;
pub mod polarizability;
pub mod quadrature;
pub mod quantities;
pub mod reflection;
pub mod validation;

pub use error::Error;
pub use optics::{ExtrapolationSpec, MaterialDescriptor, OpticalAxis, OpticalDataTable};
pub use permittivity::{EpsIxi, Material, PermittivityModel, StaticBehavior};
pub use planar::{EngineSettings, LifshitzResult};
pub use polarizability::OscillatorModel;
pub use quantities::MatsubaraGrid;
pub use reflection::{ReflectionPair, WallGeometry, WallKind};
