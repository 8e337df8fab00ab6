//! Dipole channels of a QGEM-type setup: which dipole induces which, the
//! fields involved, the bound on the crystal dipole, and a small catalog of
//! residual-gas species.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantities::{angstrom3_to_si, DEBYE, EPS0, HBAR};
use crate::rates::{short_approx_coefficient, EnvironmentSpec, SuperpositionSpec};
use crate::scattering::{DipolePair, ScatteringContext};

/// An environmental gas particle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GasSpecies {
    pub name: String,
    /// Mass (kg).
    pub mass: f64,
    /// Permanent (or effective) dipole moment (C·m), if any.
    pub permanent_dipole: Option<f64>,
    /// Polarizability volume α′ (m³); the SI polarizability is `4πε₀α′`.
    pub polarizability_volume: f64,
}

impl GasSpecies {
    pub fn new(name: impl Into<String>, mass: f64, permanent_dipole: Option<f64>, polarizability_volume: f64) -> Result<Self> {
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::domain("GasSpecies", format!("mass must be positive, got {mass}")));
        }
        if !(polarizability_volume >= 0.0) || !polarizability_volume.is_finite() {
            return Err(Error::domain("GasSpecies", format!("polarizability volume must be non-negative, got {polarizability_volume}")));
        }
        if let Some(d) = permanent_dipole {
            if !(d >= 0.0) || !d.is_finite() {
                return Err(Error::domain("GasSpecies", format!("dipole must be non-negative, got {d}")));
            }
        }
        Ok(GasSpecies { name: name.into(), mass, permanent_dipole, polarizability_volume })
    }

    /// `α = 4πε₀α′` (C·m²/V).
    pub fn polarizability(&self) -> f64 {
        4.0 * PI * EPS0 * self.polarizability_volume
    }
}

/// Accepted relative mismatch between a crystal's mass and `ρ·(4π/3)R³`.
pub const CRYSTAL_MASS_REL_TOL: f64 = 1e-3;

/// Diamond mass density (kg/m³).
pub const DIAMOND_DENSITY: f64 = 3.5e3;
/// Relative permittivity of diamond.
pub const DIAMOND_PERMITTIVITY: f64 = 5.7;

/// The test-mass crystal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrystalSpec {
    /// Radius (m).
    pub radius: f64,
    /// Mass density (kg/m³).
    pub density: f64,
    /// Mass (kg).
    pub mass: f64,
    pub relative_permittivity: f64,
    /// Permanent dipole (C·m); zero when the crystal carries none.
    pub dipole: f64,
}

impl CrystalSpec {
    /// Sphere of the given radius and density; the mass is derived.
    pub fn new(radius: f64, density: f64, relative_permittivity: f64, dipole: f64) -> Result<Self> {
        let mass = density * 4.0 / 3.0 * PI * radius.powi(3);
        Self::with_mass(radius, density, mass, relative_permittivity, dipole)
    }

    /// Fully specified crystal; the mass must match density and radius.
    pub fn with_mass(radius: f64, density: f64, mass: f64, relative_permittivity: f64, dipole: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::domain("CrystalSpec", format!("radius must be positive, got {radius}")));
        }
        if !(density > 0.0) || !(mass > 0.0) {
            return Err(Error::domain("CrystalSpec", "density and mass must be positive"));
        }
        let expected = density * 4.0 / 3.0 * PI * radius.powi(3);
        if (mass - expected).abs() > CRYSTAL_MASS_REL_TOL * expected {
            return Err(Error::domain(
                "CrystalSpec",
                format!("mass {mass:e} kg inconsistent with density × volume = {expected:e} kg"),
            ));
        }
        if !(relative_permittivity > 1.0) {
            return Err(Error::domain("CrystalSpec", format!("relative permittivity must exceed 1, got {relative_permittivity}")));
        }
        if !(dipole >= 0.0) || !dipole.is_finite() {
            return Err(Error::domain("CrystalSpec", format!("dipole must be non-negative, got {dipole}")));
        }
        Ok(CrystalSpec { radius, density, mass, relative_permittivity, dipole })
    }

    /// A diamond sphere without permanent dipole.
    pub fn diamond(radius: f64) -> Result<Self> {
        Self::new(radius, DIAMOND_DENSITY, DIAMOND_PERMITTIVITY, 0.0)
    }
}

/// Which dipole is permanent and which is induced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Channel {
    /// Permanent crystal dipole against a permanent gas dipole.
    PermanentPermanent,
    /// The gas dipole polarizes the dielectric crystal.
    EnvironmentInducesCrystal,
    /// The crystal's permanent dipole polarizes the gas.
    CrystalInducesEnvironment,
}

/// A complete experimental configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub crystal: CrystalSpec,
    pub environment: EnvironmentSpec,
    pub superposition: SuperpositionSpec,
    pub channel: Channel,
}

impl Scenario {
    /// Dipoles implied by the channel, with the interaction distance `r̄ = R`.
    pub fn dipoles(&self) -> Result<DipolePair> {
        let species = &self.environment.species;
        let need_permanent = || {
            species.permanent_dipole.ok_or_else(|| {
                Error::domain("Scenario::dipoles", format!("species {} has no permanent dipole", species.name))
            })
        };
        match self.channel {
            Channel::PermanentPermanent => DipolePair::new(self.crystal.dipole, need_permanent()?),
            Channel::EnvironmentInducesCrystal => {
                let d2 = need_permanent()?;
                DipolePair::new(induced_crystal_dipole(d2, self.crystal.relative_permittivity)?, d2)
            }
            Channel::CrystalInducesEnvironment => {
                let e = permanent_dipole_field(self.crystal.dipole, self.crystal.radius)?;
                DipolePair::new(self.crystal.dipole, induced_environment_dipole(species, e)?)
            }
        }
    }

    pub fn context(&self) -> Result<ScatteringContext> {
        ScatteringContext::new(self.dipoles()?, self.environment.species.mass, self.crystal.radius)
    }
}

/// Crystal dipole induced by a gas dipole at `r̄ = R`,
/// `d₁ = 3 d₂ (ε_r − 1) / (2π ε_r (ε_r + 2))`.
///
/// This is `N′α E_loc` with Clausius–Mossotti for `n′α` and the crystal
/// volume taken as `R³`, which is how the expression is usually quoted.
pub fn induced_crystal_dipole(d2: f64, eps_r: f64) -> Result<f64> {
    if !(eps_r > 1.0) {
        return Err(Error::domain("induced_crystal_dipole", format!("relative permittivity must exceed 1, got {eps_r}")));
    }
    if !(d2 >= 0.0) {
        return Err(Error::domain("induced_crystal_dipole", format!("dipole must be non-negative, got {d2}")));
    }
    Ok(3.0 * d2 / (2.0 * PI * eps_r) * (eps_r - 1.0) / (eps_r + 2.0))
}

/// Field inside the crystal from a gas dipole at distance `r̄` with the most
/// favourable orientation, `E_loc = d₂ / (2π ε₀ ε_r r̄³)` (N/C).
pub fn local_field(d2: f64, eps_r: f64, r_bar: f64) -> Result<f64> {
    if !(r_bar > 0.0) {
        return Err(Error::domain("local_field", format!("distance must be positive, got {r_bar}")));
    }
    if !(eps_r > 0.0) {
        return Err(Error::domain("local_field", format!("relative permittivity must be positive, got {eps_r}")));
    }
    Ok(d2 / (2.0 * PI * EPS0 * eps_r * r_bar.powi(3)))
}

/// On-axis field of the crystal dipole at its surface, `E = d₁ / (2π ε₀ R³)`.
pub fn permanent_dipole_field(d1: f64, radius: f64) -> Result<f64> {
    if !(radius > 0.0) {
        return Err(Error::domain("permanent_dipole_field", format!("radius must be positive, got {radius}")));
    }
    Ok(d1 / (2.0 * PI * EPS0 * radius.powi(3)))
}

/// `d₂ = 4π ε₀ α′ E`.
pub fn induced_environment_dipole(species: &GasSpecies, field: f64) -> Result<f64> {
    if !(field >= 0.0) {
        return Err(Error::domain("induced_environment_dipole", format!("field must be non-negative, got {field}")));
    }
    Ok(species.polarizability() * field)
}

/// Largest crystal dipole compatible with a target short-wavelength rate,
/// `d₁ = √(Γ_target / K)` with `K` the large-momentum short-wavelength rate
/// at `d₁ = 1`. The `d1` of `ctx` is ignored.
pub fn max_crystal_dipole(gamma_target: f64, ctx: &ScatteringContext, env: &EnvironmentSpec) -> Result<f64> {
    if !(gamma_target > 0.0) {
        return Err(Error::domain("max_crystal_dipole", format!("target rate must be positive, got {gamma_target}")));
    }
    if !(ctx.pair.d2 > 0.0) {
        return Err(Error::domain("max_crystal_dipole", "environmental dipole is zero, no constraint on d1"));
    }
    if !(env.density > 0.0) {
        return Err(Error::domain("max_crystal_dipole", "number density is zero, no constraint on d1"));
    }
    let b = ctx.radius * env.mean_momentum() / HBAR;
    if b < crate::rates::LARGE_MOMENTUM_MIN {
        return Err(Error::regime("max_crystal_dipole", format!("R p̄/ħ = {b:.4} is too small for the large-momentum rate")));
    }
    Ok((gamma_target / short_approx_coefficient(ctx, env)).sqrt())
}

/// `d₁ ∝ R³` rescaling of a reference dipole.
pub fn dipole_volume_scaling(d_ref: f64, r_ref: f64, radius: f64) -> Result<f64> {
    if !(r_ref > 0.0) || !(radius > 0.0) {
        return Err(Error::domain("dipole_volume_scaling", "radii must be positive"));
    }
    Ok(d_ref * (radius / r_ref).powi(3))
}

/// Atomic mass unit (kg).
const AMU: f64 = 1.660_539_066_60e-27;

/// Residual-gas species with standard molecular masses.
///
/// The four polarizable air components carry α′ only; He carries the
/// atomic-scale dipole estimate `e·R_a ≈ 1e-29 C·m`; H₂O its permanent dipole.
pub fn builtin_species_catalog() -> Vec<GasSpecies> {
    let polar = |name: &str, mass: f64, a3: f64| GasSpecies {
        name: name.into(),
        mass,
        permanent_dipole: None,
        polarizability_volume: angstrom3_to_si(a3),
    };
    vec![
        polar("N2", 4.65e-26, 1.710),
        polar("O2", 5.31e-26, 1.562),
        polar("Ar", 6.63e-26, 1.664),
        polar("CO2", 7.31e-26, 2.507),
        GasSpecies { name: "He".into(), mass: 4.002_602 * AMU, permanent_dipole: Some(1e-29), polarizability_volume: 0.0 },
        GasSpecies {
            name: "H2O".into(),
            mass: 18.015 * AMU,
            permanent_dipole: Some(6.19e-30),
            polarizability_volume: 0.0,
        },
    ]
}

/// Catalog entry by (case-insensitive) name.
pub fn species_by_name(name: &str) -> Option<GasSpecies> {
    builtin_species_catalog().into_iter().find(|s| s.name.eq_ignore_ascii_case(name))
}

/// Dipole expressed in Debye.
pub fn in_debye(d: f64) -> f64 {
    d / DEBYE
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantities::{dimensioned, Dimension};
    use crate::rates::gamma_short_approx;
    use crate::Quantity;
    use proptest::prelude::*;

    fn baseline_env(d2: f64) -> (ScatteringContext, EnvironmentSpec) {
        let sp = GasSpecies::new("generic", 1e-27, Some(d2), 0.0).unwrap();
        let ctx = ScatteringContext::new(DipolePair::new(0.0, d2).unwrap(), 1e-27, 1e-6).unwrap();
        (ctx, EnvironmentSpec::new(sp, 1.0, 1e8).unwrap())
    }

    #[test]
    fn induced_crystal_dipole_examples() {
        let d1 = induced_crystal_dipole(1e-29, 5.7).unwrap();
        assert!((d1 - 5.11e-31).abs() / 5.11e-31 < 2e-3, "{d1:e}");
        assert!((d1.log10() + 30.0).abs() <= 1.0);
        assert_eq!(induced_crystal_dipole(0.0, 5.7).unwrap(), 0.0);
        assert!(induced_crystal_dipole(1e-29, 1.0).is_err());
        // declines beyond the maximum at ε_r = 1 + √3
        let mut prev = induced_crystal_dipole(1.0, 1.0 + 3f64.sqrt()).unwrap();
        let below = induced_crystal_dipole(1.0, 2.5).unwrap();
        assert!(below < prev);
        for e in [3.0, 5.7, 10.0, 100.0, 1e4] {
            let v = induced_crystal_dipole(1.0, e).unwrap();
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn local_field_examples() {
        let e = local_field(1e-29, 5.7, 1e-6).unwrap();
        assert!((e - 3.154e-2).abs() / 3.154e-2 < 1e-3, "{e:e}");
        assert!((local_field(1e-29, 5.7, 2e-6).unwrap() * 8.0 - e).abs() / e < 1e-14);
        assert_eq!(local_field(0.0, 5.7, 1e-6).unwrap(), 0.0);
        assert!(local_field(1e-29, 5.7, 0.0).is_err());
    }

    #[test]
    fn crystal_field_examples() {
        let e = permanent_dipole_field(1e-23, 1e-6).unwrap();
        assert!((e - 1.8e5).abs() / 1.8e5 < 0.02, "{e:e}");
        assert_eq!(permanent_dipole_field(0.0, 1e-6).unwrap(), 0.0);
        assert!((permanent_dipole_field(1e-23, 2e-6).unwrap() * 8.0 - e).abs() / e < 1e-14);
        assert!(permanent_dipole_field(1e-23, 0.0).is_err());
    }

    #[test]
    fn table_one_reproduction() {
        let e = permanent_dipole_field(1e-23, 1e-6).unwrap();
        let table = [("N2", 3.425e-35), ("O2", 3.13e-35), ("Ar", 3.335e-35), ("CO2", 5.02e-35)];
        for (name, want) in table {
            let sp = species_by_name(name).unwrap();
            let d2 = induced_environment_dipole(&sp, e).unwrap();
            assert!((d2 - want).abs() / want < 0.02, "{name}: {d2:e}");
            assert_eq!(induced_environment_dipole(&sp, 0.0).unwrap(), 0.0);
        }
        // at exactly 1.8e5 N/C
        let n2 = species_by_name("n2").unwrap();
        let d2 = induced_environment_dipole(&n2, 1.8e5).unwrap();
        assert!((d2 - 3.425e-35).abs() / 3.425e-35 < 1e-3);
    }

    #[test]
    fn max_dipole_examples() {
        let (ctx, env) = baseline_env(3.336e-30);
        let d1 = max_crystal_dipole(1e-2, &ctx, &env).unwrap();
        assert!((d1.log10() + 26.0).abs() <= 1.0, "{d1:e}");
        let d1x = max_crystal_dipole(1.0, &ctx, &env).unwrap();
        assert!((d1x / d1 - 10.0).abs() < 1e-12);
        let back = gamma_short_approx(&ctx.with_pair(DipolePair::new(d1, 3.336e-30).unwrap()), &env).unwrap().gamma;
        assert!((back - 1e-2).abs() / 1e-2 < 1e-10);
        let (zero, env0) = baseline_env(0.0);
        assert!(max_crystal_dipole(1e-2, &zero, &env0).is_err());
        assert!(max_crystal_dipole(0.0, &ctx, &env).is_err());
    }

    #[test]
    fn volume_scaling_examples() {
        assert!((dipole_volume_scaling(1e-23, 1e-5, 1e-6).unwrap() - 1e-26).abs() < 1e-40);
        assert_eq!(dipole_volume_scaling(3e-24, 1e-6, 1e-6).unwrap(), 3e-24);
        assert!((dipole_volume_scaling(1.0, 1.0, 2.0).unwrap() - 8.0).abs() < 1e-15);
        assert!(dipole_volume_scaling(1.0, 0.0, 2.0).is_err());
    }

    #[test]
    fn catalog_contents() {
        let cat = builtin_species_catalog();
        let polar: Vec<_> = cat.iter().filter(|s| s.polarizability_volume > 0.0).map(|s| s.name.as_str()).collect();
        assert_eq!(polar, ["N2", "O2", "Ar", "CO2"]);
        let he = species_by_name("He").unwrap();
        assert!((in_debye(he.permanent_dipole.unwrap()) - 3.0).abs() < 0.01);
        let water = species_by_name("h2o").unwrap();
        assert!((in_debye(water.permanent_dipole.unwrap()) - 1.86).abs() < 0.01);
        for s in &cat {
            assert!(s.mass > 0.0);
        }
    }

    #[test]
    fn crystal_spec_validation() {
        let c = CrystalSpec::diamond(1e-6).unwrap();
        assert!((c.mass - 1.466e-14).abs() / 1.466e-14 < 1e-3);
        assert!(CrystalSpec::with_mass(1e-6, 3.5e3, 2.0 * c.mass, 5.7, 0.0).is_err());
        assert!(CrystalSpec::new(1e-6, 3.5e3, 1.0, 0.0).is_err());
        assert!(CrystalSpec::new(0.0, 3.5e3, 5.7, 0.0).is_err());
    }

    #[test]
    fn scenario_channels() {
        let crystal = CrystalSpec::new(1e-6, DIAMOND_DENSITY, 5.7, 1e-23).unwrap();
        let sup = SuperpositionSpec::new(1e-5, 1.0).unwrap();
        let env = EnvironmentSpec::new(species_by_name("N2").unwrap(), 1.0, 1e8).unwrap();
        let s = Scenario { crystal, environment: env.clone(), superposition: sup, channel: Channel::CrystalInducesEnvironment };
        let pair = s.dipoles().unwrap();
        assert!((pair.d2 - 3.425e-35).abs() / 3.425e-35 < 0.02);
        let s = Scenario { channel: Channel::PermanentPermanent, ..s };
        assert!(s.dipoles().is_err());
        let water = EnvironmentSpec::new(species_by_name("H2O").unwrap(), 1.0, 1e8).unwrap();
        let s = Scenario { environment: water, channel: Channel::EnvironmentInducesCrystal, ..s };
        let pair = s.dipoles().unwrap();
        assert_eq!(pair.d1, induced_crystal_dipole(6.19e-30, 5.7).unwrap());
        assert_eq!(s.context().unwrap().mass, s.environment.species.mass);
    }

    #[test]
    fn field_and_polarizability_dimensions() {
        use dimensioned::*;
        let d = Quantity::new(1e-23, Dimension::DIPOLE);
        let r = Quantity::new(1e-6, Dimension::LENGTH);
        let e = d / (eps0() * r.powi(3));
        assert_eq!(e.dim, Dimension::ELECTRIC_FIELD);
        let alpha = eps0() * Quantity::new(1.7e-30, Dimension::VOLUME);
        assert_eq!((alpha * e).dim, Dimension::DIPOLE);
    }

    proptest! {
        #[test]
        fn max_dipole_round_trip(target in 1e-8f64..1.0, d2 in 1e-32f64..1e-28, t in 0.1f64..10.0) {
            let (ctx, env) = baseline_env(d2);
            let env = EnvironmentSpec { temperature: t, ..env };
            let d1 = max_crystal_dipole(target, &ctx, &env).unwrap();
            let g = gamma_short_approx(&ctx.with_pair(DipolePair::new(d1, d2).unwrap()), &env).unwrap().gamma;
            prop_assert!((g - target).abs() / target < 1e-10);
        }

        #[test]
        fn induced_dipole_linear_in_field(e in 0.0f64..1e7, k in 0.5f64..4.0) {
            let sp = species_by_name("Ar").unwrap();
            let a = induced_environment_dipole(&sp, e).unwrap();
            let b = induced_environment_dipole(&sp, k * e).unwrap();
            prop_assert!((b - k * a).abs() <= 1e-12 * b.abs());
        }
    }
}
