//! Self-checks of the closed forms against independent quadrature.

use std::f64::consts::PI;

use dipole_decoherence::numeric::logspace;
use dipole_decoherence::qgem::GasSpecies;
use dipole_decoherence::quantities::HBAR;
use dipole_decoherence::rates::{gamma_generic, gamma_long, gamma_short, SuperpositionSpec};
use dipole_decoherence::scattering::{sigma_cm_closed, sigma_cm_quadrature, sigma_eff_closed, sigma_eff_quadrature};
use dipole_decoherence::special::{
    cosine_integral, expectation_over_momentum, form_factor_kernel, form_factor_kernel_direct, KERNEL_SERIES_SWITCH,
};
use dipole_decoherence::{
    DipolePair, DistributionKind, EnvironmentSpec, Integrator, Kinematics, MomentumDistribution, ScatteringContext,
};

use crate::error::Result;
use crate::output::Table;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub achieved: f64,
    pub tolerance: f64,
}

impl Check {
    fn new(name: impl Into<String>, achieved: f64, tolerance: f64) -> Self {
        Check { name: name.into(), achieved, tolerance }
    }

    pub fn passed(&self) -> bool {
        self.achieved.is_finite() && self.achieved <= self.tolerance
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// `−∫_x^∞ cos t / t dt` from half-period chunks with repeated averaging of
/// the alternating partial sums.
pub fn cosine_integral_oracle(x: f64) -> Result<f64> {
    let q = Integrator::new(1e-14).with_abs_tol(1e-18);
    let g = |t: f64| t.cos() / t;
    let first_zero = ((x / PI - 0.5).floor() + 1.5) * PI;
    let mut sum = q.integrate(g, x, first_zero)?.value;
    let mut partial = Vec::with_capacity(40);
    let mut a = first_zero;
    for _ in 0..40 {
        sum += q.integrate(g, a, a + PI)?.value;
        a += PI;
        partial.push(sum);
    }
    while partial.len() > 1 {
        partial = partial.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    Ok(-partial[0])
}

fn cross_section_checks(out: &mut Vec<Check>) -> Result<()> {
    let ctx = ScatteringContext::new(DipolePair::new(1e-30, 1e-29)?, 1e-27, 1e-6)?;
    let (mut cm, mut eff) = (0.0f64, 0.0f64);
    for a in logspace(1e-3, 1e4, 20) {
        let kin = Kinematics::new(a * HBAR / (2.0 * ctx.radius), ctx.radius)?;
        cm = cm.max(rel(sigma_cm_closed(&ctx, &kin)?, sigma_cm_quadrature(&ctx, &kin)?));
        eff = eff.max(rel(sigma_eff_closed(&ctx, &kin)?, sigma_eff_quadrature(&ctx, &kin)?));
    }
    out.push(Check::new("sigma_cm_closed_vs_quadrature", cm, 1e-6));
    out.push(Check::new("sigma_eff_closed_vs_quadrature", eff, 1e-6));
    Ok(())
}

fn special_checks(out: &mut Vec<Check>) -> Result<()> {
    let x = KERNEL_SERIES_SWITCH;
    let k = rel(form_factor_kernel(x * (1.0 - 1e-15)), form_factor_kernel_direct(x));
    out.push(Check::new("kernel_branch_switch", k, 1e-10));
    let mut ci = 0.0f64;
    for x in [0.5, 2.0, 20.0, 200.0] {
        ci = ci.max((cosine_integral(x)? - cosine_integral_oracle(x)?).abs());
    }
    out.push(Check::new("cosine_integral_vs_quadrature", ci, 1e-9));
    let mb = MomentumDistribution::maxwell_boltzmann(1e-27, 1.0)?;
    let norm = expectation_over_momentum(&mb, |_| Ok(1.0))?;
    out.push(Check::new("maxwell_boltzmann_normalization", (norm - 1.0).abs(), 1e-10));
    Ok(())
}

fn generic_checks(out: &mut Vec<Check>) -> Result<()> {
    // R p̄/ħ ≈ 0.8 so both plateaus lie within a few decades of λ₀
    let sp = GasSpecies::new("probe", 1e-27, Some(1e-29), 0.0)?;
    let env = EnvironmentSpec::new(sp, 1.0, 1e8)?;
    let ctx = ScatteringContext::new(DipolePair::new(1e-30, 1e-29)?, 1e-27, 5e-10)?;
    let dist = env.distribution(DistributionKind::DeltaAtMean)?;
    let p = env.mean_momentum();
    let far = 100.0 * HBAR / p;
    let near = 0.01 * HBAR / p;
    let g_far = gamma_generic(&ctx, &env, far)?;
    let g_near = gamma_generic(&ctx, &env, near)?;
    let short = gamma_short(&ctx, &env, &dist)?.gamma;
    let long = gamma_long(&ctx, &env, &SuperpositionSpec::new(near, 1.0)?, &dist)?.gamma;
    out.push(Check::new("generic_short_plateau", rel(g_far.gamma, short), 0.05));
    out.push(Check::new("generic_long_plateau", rel(g_near.gamma, long), 0.05));
    out.push(Check::new("generic_zero_separation", gamma_generic(&ctx, &env, 0.0)?.gamma, 0.0));
    let imag = g_far.diagnostics["imag_residual"].max(g_near.diagnostics["imag_residual"]);
    out.push(Check::new("generic_imaginary_residual", imag, 1e-8));
    Ok(())
}

pub fn run_checks() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    cross_section_checks(&mut checks)?;
    special_checks(&mut checks)?;
    generic_checks(&mut checks)?;
    Ok(checks)
}

pub fn checks_table(checks: &[Check]) -> Table {
    let mut t = Table::new(["check", "passed", "achieved", "tolerance"]);
    for c in checks {
        t.push(vec![c.name.clone().into(), c.passed().into(), c.achieved.into(), c.tolerance.into()]);
    }
    t
}
