//! Rate evaluation for a validated scenario.

use dipole_decoherence::qgem::max_crystal_dipole;
use dipole_decoherence::quantities::HBAR;
use dipole_decoherence::rates::{
    classify_regime, gamma_generic_with_distribution, gamma_long, gamma_short, gamma_short_approx, LARGE_MOMENTUM_MIN,
};
use dipole_decoherence::{DipolePair, DistributionKind, Regime};

use crate::config::ScenarioConfig;
use crate::error::Result;
use crate::output::{Cell, Table};

/// Which expression produced the rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formula {
    /// Large-momentum short-wavelength form, `Γ_S ∝ d₁²d₂²n√(m/T)/R²`.
    ShortApprox,
    /// Full short-wavelength rate with the σ_CM bracket.
    Short,
    Long,
    Generic,
}

impl Formula {
    pub fn label(self) -> &'static str {
        match self {
            Formula::ShortApprox => "short_approx",
            Formula::Short => "short",
            Formula::Long => "long",
            Formula::Generic => "generic",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateRow {
    pub gamma: f64,
    pub regime: Regime,
    pub formula: Formula,
    pub coherence_time: f64,
    pub budget: f64,
    pub d1: f64,
    pub d2: f64,
    pub density: f64,
    pub pressure: f64,
    pub p_bar: f64,
    pub lambda0: f64,
    pub a: f64,
}

impl RateRow {
    pub fn within_budget(&self) -> bool {
        self.gamma <= self.budget
    }

    pub const HEADERS: [&'static str; 13] = [
        "gamma_hz",
        "regime",
        "formula",
        "coherence_time_s",
        "budget_hz",
        "budget_pass",
        "d1_cm",
        "d2_cm",
        "density_m3",
        "pressure_pa",
        "p_bar",
        "lambda0_m",
        "a",
    ];

    pub fn cells(&self) -> Vec<Cell> {
        vec![
            self.gamma.into(),
            self.regime.to_string().into(),
            self.formula.label().into(),
            self.coherence_time.into(),
            self.budget.into(),
            self.within_budget().into(),
            self.d1.into(),
            self.d2.into(),
            self.density.into(),
            self.pressure.into(),
            self.p_bar.into(),
            self.lambda0.into(),
            self.a.into(),
        ]
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new(Self::HEADERS);
        t.push(self.cells());
        t
    }
}

/// Evaluates the decoherence rate with the expression appropriate to the
/// wavelength regime: short (large-momentum form when `R p̄/ħ ≥ 10` with the
/// delta distribution), long, or the generic quadrature in between.
pub fn evaluate_rate(cfg: &ScenarioConfig) -> Result<RateRow> {
    let s = &cfg.scenario;
    let ctx = s.context()?;
    let env = &s.environment;
    let dist = env.distribution(cfg.distribution)?;
    let regime = classify_regime(env, &s.superposition);
    let b = ctx.radius * env.mean_momentum() / HBAR;
    let (result, formula) = match regime {
        Regime::Short if cfg.distribution == DistributionKind::DeltaAtMean && b >= LARGE_MOMENTUM_MIN => {
            (gamma_short_approx(&ctx, env)?, Formula::ShortApprox)
        }
        Regime::Short => (gamma_short(&ctx, env, &dist)?, Formula::Short),
        Regime::Long => (gamma_long(&ctx, env, &s.superposition, &dist)?, Formula::Long),
        Regime::Intermediate => {
            (gamma_generic_with_distribution(&ctx, env, s.superposition.delta_x, &dist)?, Formula::Generic)
        }
    };
    let DipolePair { d1, d2 } = ctx.pair;
    Ok(RateRow {
        gamma: result.gamma,
        regime,
        formula,
        coherence_time: result.coherence_time,
        budget: cfg.budget,
        d1,
        d2,
        density: env.density,
        pressure: cfg.pressure,
        p_bar: env.mean_momentum(),
        lambda0: env.wavelength(),
        a: 2.0 * b,
    })
}

/// Largest crystal dipole keeping the short-wavelength rate at the budget,
/// for the environmental dipole implied by the scenario's channel.
pub fn evaluate_max_dipole(cfg: &ScenarioConfig) -> Result<f64> {
    let s = &cfg.scenario;
    let ctx = s.context()?;
    Ok(max_crystal_dipole(cfg.budget, &ctx, &s.environment)?)
}
