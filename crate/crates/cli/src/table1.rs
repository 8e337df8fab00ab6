//! Induced dipoles of the polarizable air components.

use dipole_decoherence::qgem::{builtin_species_catalog, induced_environment_dipole, permanent_dipole_field};
use dipole_decoherence::quantities::ANGSTROM3;

use crate::error::Result;
use crate::output::Table;

/// Field source for the table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldSource {
    /// Field magnitude (N/C).
    Field(f64),
    /// Crystal dipole (C·m) at distance equal to the radius (m).
    CrystalDipole { d1: f64, radius: f64 },
}

impl Default for FieldSource {
    fn default() -> Self {
        FieldSource::CrystalDipole { d1: 1e-23, radius: 1e-6 }
    }
}

pub fn table1(source: FieldSource) -> Result<Table> {
    let field = match source {
        FieldSource::Field(e) => e,
        FieldSource::CrystalDipole { d1, radius } => permanent_dipole_field(d1, radius)?,
    };
    let mut t = Table::new(["species", "alpha_prime_a3", "alpha_si", "field_n_per_c", "d2_cm"]);
    for sp in builtin_species_catalog().into_iter().filter(|s| s.polarizability_volume > 0.0) {
        let d2 = induced_environment_dipole(&sp, field)?;
        t.push(vec![
            sp.name.clone().into(),
            (sp.polarizability_volume / ANGSTROM3).into(),
            sp.polarizability().into(),
            field.into(),
            d2.into(),
        ]);
    }
    Ok(t)
}
