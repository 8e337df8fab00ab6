//! SI constants, a small dimension-checked quantity type, and the gas
//! kinematics conversions everything else builds on.
//!
//! All physics is carried out in SI double precision. Debye and Å³ are
//! accepted only at the input boundary and converted immediately.

use std::fmt;
use std::ops::{Div, Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::Real;

/// Immutable SI constants used by every formula in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Reduced Planck constant (J·s).
    pub hbar: f64,
    /// Boltzmann constant (J/K).
    pub k_b: f64,
    /// Vacuum permittivity (C²·N⁻¹·m⁻²).
    pub eps0: f64,
    /// Elementary charge (C).
    pub e_charge: f64,
    /// One Debye in C·m.
    pub debye: f64,
}

impl PhysicalConstants {
    /// CODATA 2018 values; the Debye is the rounded 3.336e-30 C·m used
    /// throughout the dipole literature this crate targets.
    pub const SI: PhysicalConstants = PhysicalConstants {
        hbar: 1.054_571_817e-34,
        k_b: 1.380_649e-23,
        eps0: 8.854_187_812_8e-12,
        e_charge: 1.602_176_634e-19,
        debye: 3.336e-30,
    };
}

pub const HBAR: f64 = PhysicalConstants::SI.hbar;
pub const K_B: f64 = PhysicalConstants::SI.k_b;
pub const EPS0: f64 = PhysicalConstants::SI.eps0;
pub const E_CHARGE: f64 = PhysicalConstants::SI.e_charge;
pub const DEBYE: f64 = PhysicalConstants::SI.debye;
/// One cubic ångström in m³.
pub const ANGSTROM3: f64 = 1e-30;

#[inline]
pub fn debye_to_si(d: f64) -> f64 {
    d * DEBYE
}

#[inline]
pub fn angstrom3_to_si(v: f64) -> f64 {
    v * ANGSTROM3
}

/// Exponents over the base dimensions (kg, m, s, K, A).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Dimension {
    pub kg: i8,
    pub m: i8,
    pub s: i8,
    pub k: i8,
    pub a: i8,
}

impl Dimension {
    pub const fn new(kg: i8, m: i8, s: i8, k: i8, a: i8) -> Self {
        Dimension { kg, m, s, k, a }
    }

    pub const NONE: Dimension = Dimension::new(0, 0, 0, 0, 0);
    pub const MASS: Dimension = Dimension::new(1, 0, 0, 0, 0);
    pub const LENGTH: Dimension = Dimension::new(0, 1, 0, 0, 0);
    pub const TIME: Dimension = Dimension::new(0, 0, 1, 0, 0);
    pub const TEMPERATURE: Dimension = Dimension::new(0, 0, 0, 1, 0);
    pub const CURRENT: Dimension = Dimension::new(0, 0, 0, 0, 1);
    pub const AREA: Dimension = Dimension::new(0, 2, 0, 0, 0);
    pub const VOLUME: Dimension = Dimension::new(0, 3, 0, 0, 0);
    pub const NUMBER_DENSITY: Dimension = Dimension::new(0, -3, 0, 0, 0);
    pub const FREQUENCY: Dimension = Dimension::new(0, 0, -1, 0, 0);
    pub const VELOCITY: Dimension = Dimension::new(0, 1, -1, 0, 0);
    pub const MOMENTUM: Dimension = Dimension::new(1, 1, -1, 0, 0);
    pub const FORCE: Dimension = Dimension::new(1, 1, -2, 0, 0);
    pub const ENERGY: Dimension = Dimension::new(1, 2, -2, 0, 0);
    pub const ACTION: Dimension = Dimension::new(1, 2, -1, 0, 0);
    pub const PRESSURE: Dimension = Dimension::new(1, -1, -2, 0, 0);
    pub const CHARGE: Dimension = Dimension::new(0, 0, 1, 0, 1);
    pub const DIPOLE: Dimension = Dimension::new(0, 1, 1, 0, 1);
    /// N/C = V/m.
    pub const ELECTRIC_FIELD: Dimension = Dimension::new(1, 1, -3, 0, -1);
    /// C²·N⁻¹·m⁻².
    pub const PERMITTIVITY: Dimension = Dimension::new(-1, -3, 4, 0, 2);
    pub const HEAT_CAPACITY: Dimension = Dimension::new(1, 2, -2, -1, 0);

    pub fn powi(self, n: i8) -> Dimension {
        Dimension::new(self.kg * n, self.m * n, self.s * n, self.k * n, self.a * n)
    }

    /// Half of every exponent, if all are even.
    pub fn half(self) -> Option<Dimension> {
        let all_even = [self.kg, self.m, self.s, self.k, self.a]
            .iter()
            .all(|e| e % 2 == 0);
        all_even.then(|| Dimension::new(self.kg / 2, self.m / 2, self.s / 2, self.k / 2, self.a / 2))
    }
}

impl Mul for Dimension {
    type Output = Dimension;
    fn mul(self, o: Dimension) -> Dimension {
        Dimension::new(self.kg + o.kg, self.m + o.m, self.s + o.s, self.k + o.k, self.a + o.a)
    }
}

impl Div for Dimension {
    type Output = Dimension;
    fn div(self, o: Dimension) -> Dimension {
        Dimension::new(self.kg - o.kg, self.m - o.m, self.s - o.s, self.k - o.k, self.a - o.a)
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Dimension::NONE {
            return write!(f, "1");
        }
        let mut first = true;
        for (sym, e) in [("kg", self.kg), ("m", self.m), ("s", self.s), ("K", self.k), ("A", self.a)] {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "·")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{sym}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A scalar value tagged with its dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity<T> {
    pub value: T,
    pub dim: Dimension,
}

impl<T: Real> Quantity<T> {
    pub fn new(value: T, dim: Dimension) -> Self {
        Quantity { value, dim }
    }

    pub fn dimensionless(value: T) -> Self {
        Quantity { value, dim: Dimension::NONE }
    }

    pub fn try_add(self, other: Self) -> Result<Self> {
        self.same_dim(&other)?;
        Ok(Quantity::new(self.value + other.value, self.dim))
    }

    pub fn try_sub(self, other: Self) -> Result<Self> {
        self.same_dim(&other)?;
        Ok(Quantity::new(self.value - other.value, self.dim))
    }

    pub fn powi(self, n: i8) -> Self {
        Quantity::new(self.value.powi(n as i32), self.dim.powi(n))
    }

    /// Square root; fails unless every exponent is even.
    pub fn sqrt(self) -> Result<Self> {
        let dim = self.dim.half().ok_or_else(|| Error::Dimension {
            left: format!("sqrt({})", self.dim),
            right: "even exponents".into(),
        })?;
        Ok(Quantity::new(self.value.sqrt(), dim))
    }

    /// Checks the dimension and unwraps the value.
    pub fn value_as(self, dim: Dimension) -> Result<T> {
        if self.dim == dim {
            Ok(self.value)
        } else {
            Err(Error::Dimension { left: self.dim.to_string(), right: dim.to_string() })
        }
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::Dimension { left: self.dim.to_string(), right: other.dim.to_string() })
        }
    }
}

impl<T: Real> Mul for Quantity<T> {
    type Output = Quantity<T>;
    fn mul(self, o: Self) -> Self {
        Quantity::new(self.value * o.value, self.dim * o.dim)
    }
}

impl<T: Real> Div for Quantity<T> {
    type Output = Quantity<T>;
    fn div(self, o: Self) -> Self {
        Quantity::new(self.value / o.value, self.dim / o.dim)
    }
}

impl<T: Real> Mul<T> for Quantity<T> {
    type Output = Quantity<T>;
    fn mul(self, k: T) -> Self {
        Quantity::new(self.value * k, self.dim)
    }
}

impl<T: Real> Neg for Quantity<T> {
    type Output = Quantity<T>;
    fn neg(self) -> Self {
        Quantity::new(-self.value, self.dim)
    }
}

/// The SI constants as dimensioned quantities, for formula audits.
pub mod dimensioned {
    use super::*;

    pub fn hbar() -> Quantity<f64> {
        Quantity::new(HBAR, Dimension::ACTION)
    }
    pub fn k_b() -> Quantity<f64> {
        Quantity::new(K_B, Dimension::HEAT_CAPACITY)
    }
    pub fn eps0() -> Quantity<f64> {
        Quantity::new(EPS0, Dimension::PERMITTIVITY)
    }
    pub fn e_charge() -> Quantity<f64> {
        Quantity::new(E_CHARGE, Dimension::CHARGE)
    }
    pub fn debye() -> Quantity<f64> {
        Quantity::new(DEBYE, Dimension::DIPOLE)
    }
}

/// Ideal-gas number density `n = p / (k_B T)` in m⁻³.
pub fn pressure_to_number_density(pressure: f64, temperature: f64) -> Result<f64> {
    const OP: &str = "pressure_to_number_density";
    if !(temperature > 0.0) {
        return Err(Error::domain(OP, format!("temperature must be positive, got {temperature} K")));
    }
    if !(pressure >= 0.0) {
        return Err(Error::domain(OP, format!("pressure must be non-negative, got {pressure} Pa")));
    }
    Ok(pressure / (K_B * temperature))
}

/// Inverse of [`pressure_to_number_density`].
pub fn number_density_to_pressure(density: f64, temperature: f64) -> Result<f64> {
    const OP: &str = "number_density_to_pressure";
    if !(temperature > 0.0) {
        return Err(Error::domain(OP, format!("temperature must be positive, got {temperature} K")));
    }
    if !(density >= 0.0) {
        return Err(Error::domain(OP, format!("density must be non-negative, got {density}")));
    }
    Ok(density * K_B * temperature)
}

/// Most probable thermal momentum `p̄ = √(2 m k_B T)`.
pub fn mean_thermal_momentum(mass: f64, temperature: f64) -> Result<f64> {
    const OP: &str = "mean_thermal_momentum";
    if !(mass > 0.0) {
        return Err(Error::domain(OP, format!("mass must be positive, got {mass} kg")));
    }
    if !(temperature >= 0.0) {
        return Err(Error::domain(OP, format!("temperature must be non-negative, got {temperature} K")));
    }
    Ok((2.0 * mass * K_B * temperature).sqrt())
}

/// Thermal de Broglie wavelength `λ₀ = 2πħ / p̄`.
pub fn thermal_wavelength(mass: f64, temperature: f64) -> Result<f64> {
    if temperature == 0.0 {
        return Err(Error::domain("thermal_wavelength", "zero temperature gives an infinite wavelength"));
    }
    let p = mean_thermal_momentum(mass, temperature)?;
    Ok(2.0 * std::f64::consts::PI * HBAR / p)
}
