//! Collisional decoherence of a levitated micro-crystal interferometer by
//! dipole-dipole scattering of ambient gas.
//!
//! The crate computes Born-approximation cross sections for a finite-size
//! crystal dipole interacting with environmental dipoles, turns them into
//! decoherence rates in the short- and long-wavelength limits (and by direct
//! quadrature in between), and models the gas/crystal dipole channels of
//! QGEM-type experiments.
//!
//! Dimensionless numerics ([`special`], [`quadrature`], [`quantities::Quantity`])
//! are generic over [`Real`]; physics in SI units is `f64`.

pub mod error;
pub mod numeric;
pub mod qgem;
pub mod quadrature;
pub mod quantities;
pub mod rates;
pub mod scattering;
pub mod special;

pub use error::{Error, Result};
pub use numeric::Real;

/// Double precision dimensioned quantity.
pub type Quantity = quantities::Quantity<f64>;
/// Single precision dimensioned quantity.
pub type Quantity32 = quantities::Quantity<f32>;
/// Double precision adaptive integrator.
pub type Integrator = quadrature::Integrator<f64>;
/// Single precision adaptive integrator.
pub type Integrator32 = quadrature::Integrator<f32>;

pub use qgem::{Channel, CrystalSpec, GasSpecies, Scenario};
pub use quantities::PhysicalConstants;
pub use rates::{EnvironmentSpec, RateMethod, RateResult, Regime, SuperpositionSpec};
pub use scattering::{DipolePair, Kinematics, ScatteringContext};
pub use special::{DistributionKind, MomentumDistribution};
