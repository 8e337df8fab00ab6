//! Decoherence rates: the scattering-model rate by direct quadrature, its
//! short- and long-wavelength closed forms, regime classification and the
//! resulting decay of density-matrix coherences.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qgem::GasSpecies;
use crate::quadrature::{uniform_breaks, Integrator};
use crate::quantities::{mean_thermal_momentum, thermal_wavelength, EPS0, HBAR, K_B};
use crate::scattering::{
    differential_cross_section, sigma_cm_closed, sigma_eff_closed, Kinematics, ScatteringContext,
};
use crate::special::{expectation_over_momentum, DistributionKind, MomentumDistribution};

/// `(2π)^{3/2}`, the wave-packet normalization shared by every rate.
pub const TWO_PI_3_2: f64 = 15.749_609_945_722_419;

/// Ambient gas: species, temperature and number density.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvironmentSpec {
    pub species: GasSpecies,
    /// Temperature (K).
    pub temperature: f64,
    /// Number density (m⁻³).
    pub density: f64,
}

impl EnvironmentSpec {
    pub fn new(species: GasSpecies, temperature: f64, density: f64) -> Result<Self> {
        if !(temperature > 0.0) || !temperature.is_finite() {
            return Err(Error::domain("EnvironmentSpec", format!("temperature must be positive, got {temperature}")));
        }
        if !(density >= 0.0) || !density.is_finite() {
            return Err(Error::domain("EnvironmentSpec", format!("number density must be non-negative, got {density}")));
        }
        Ok(EnvironmentSpec { species, temperature, density })
    }

    /// `p̄ = √(2 m k_B T)` of the gas.
    pub fn mean_momentum(&self) -> f64 {
        (2.0 * self.species.mass * K_B * self.temperature).sqrt()
    }

    /// de Broglie wavelength `λ₀ = 2πħ/p̄`.
    pub fn wavelength(&self) -> f64 {
        2.0 * PI * HBAR / self.mean_momentum()
    }

    pub fn distribution(&self, kind: DistributionKind) -> Result<MomentumDistribution> {
        MomentumDistribution::new(kind, self.species.mass, self.temperature)
    }
}

/// Spatial superposition of the crystal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuperpositionSpec {
    /// Branch separation Δx (m). Zero is accepted and yields vanishing rates.
    pub delta_x: f64,
    /// Hold time τ (s).
    pub hold_time: f64,
}

impl SuperpositionSpec {
    pub fn new(delta_x: f64, hold_time: f64) -> Result<Self> {
        if !(delta_x >= 0.0) || !delta_x.is_finite() {
            return Err(Error::domain("SuperpositionSpec", format!("separation must be non-negative, got {delta_x}")));
        }
        if !(hold_time > 0.0) || !hold_time.is_finite() {
            return Err(Error::domain("SuperpositionSpec", format!("hold time must be positive, got {hold_time}")));
        }
        Ok(SuperpositionSpec { delta_x, hold_time })
    }
}

/// Wavelength regime of a gas/superposition pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Short,
    Long,
    Intermediate,
}

/// Which formula produced a [`RateResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RateMethod {
    Short,
    Long,
    Generic,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::Short => "short",
            Regime::Long => "long",
            Regime::Intermediate => "intermediate",
        })
    }
}

impl std::fmt::Display for RateMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RateMethod::Short => "short",
            RateMethod::Long => "long",
            RateMethod::Generic => "generic",
        })
    }
}

/// A decoherence rate and the intermediate values that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateResult {
    /// Γ (Hz).
    pub gamma: f64,
    pub method: RateMethod,
    /// `1/Γ` (s); infinite when Γ = 0.
    pub coherence_time: f64,
    pub diagnostics: BTreeMap<String, f64>,
}

impl RateResult {
    fn new(gamma: f64, method: RateMethod) -> Result<Self> {
        if !gamma.is_finite() || gamma < 0.0 {
            return Err(Error::numeric("RateResult", format!("rate {gamma} is not a finite non-negative number")));
        }
        let coherence_time = if gamma > 0.0 { 1.0 / gamma } else { f64::INFINITY };
        Ok(RateResult { gamma, method, coherence_time, diagnostics: BTreeMap::new() })
    }

    fn with(mut self, key: &str, value: f64) -> Self {
        self.diagnostics.insert(key.to_owned(), value);
        self
    }

    fn with_environment(self, ctx: &ScatteringContext, env: &EnvironmentSpec) -> Self {
        let p = env.mean_momentum();
        self.with("p_bar", p)
            .with("lambda0", env.wavelength())
            .with("a", 2.0 * ctx.radius * p / HBAR)
    }

    /// Fraction of coherence left after the hold time, `e^{−Γτ}`.
    pub fn surviving_coherence(&self, sup: &SuperpositionSpec) -> f64 {
        (-self.gamma * sup.hold_time).exp()
    }
}

fn check_mass(op: &'static str, ctx: &ScatteringContext, env: &EnvironmentSpec) -> Result<()> {
    let m = env.species.mass;
    if (ctx.mass - m).abs() > 1e-12 * m {
        return Err(Error::domain(op, format!("context mass {:e} differs from species mass {m:e}", ctx.mass)));
    }
    Ok(())
}

fn check_distribution(op: &'static str, env: &EnvironmentSpec, dist: &MomentumDistribution) -> Result<()> {
    let m = env.species.mass;
    let t = env.temperature;
    if (dist.mass - m).abs() > 1e-12 * m || (dist.temperature - t).abs() > 1e-12 * t {
        return Err(Error::domain(op, "momentum distribution does not match the environment"));
    }
    Ok(())
}

/// Short-wavelength rate `Γ_S = 2(2π)^{3/2} ∫ dp₀ S(p₀) n (p₀/m) σ_CM(p₀)`.
///
/// For the delta distribution this is
/// `(2π)^{3/2} ħ² m d₁² d₂² n [bracket(b)] / (24 ε₀² R⁶ p̄⁵)`.
pub fn gamma_short(ctx: &ScatteringContext, env: &EnvironmentSpec, dist: &MomentumDistribution) -> Result<RateResult> {
    check_mass("gamma_short", ctx, env)?;
    check_distribution("gamma_short", env, dist)?;
    let n = env.density;
    let mut sigma_at_mean = 0.0;
    let avg = expectation_over_momentum(dist, |p0| {
        if p0 == 0.0 {
            return Ok(0.0);
        }
        let s = sigma_cm_closed(ctx, &Kinematics::new(p0, ctx.radius)?)?;
        if dist.kind == DistributionKind::DeltaAtMean {
            sigma_at_mean = s;
        }
        Ok(p0 / ctx.mass * s)
    })?;
    let gamma = 2.0 * TWO_PI_3_2 * n * avg;
    let mut r = RateResult::new(gamma, RateMethod::Short)?.with_environment(ctx, env);
    if dist.kind == DistributionKind::DeltaAtMean {
        r = r.with("sigma_cm", sigma_at_mean);
    }
    Ok(r)
}

/// Smallest `R p̄/ħ` for which the large-momentum approximations are used.
pub const LARGE_MOMENTUM_MIN: f64 = 10.0;

fn require_large_momentum(op: &'static str, ctx: &ScatteringContext, env: &EnvironmentSpec) -> Result<f64> {
    let b = ctx.radius * env.mean_momentum() / HBAR;
    if b < LARGE_MOMENTUM_MIN {
        return Err(Error::regime(op, format!("R p̄/ħ = {b:.4} is below {LARGE_MOMENTUM_MIN}")));
    }
    Ok(b)
}

/// `Γ_S ≈ (2π)^{3/2} 2 d₁² d₂² n √(2m/(k_B T)) / (3 ε₀² ħ² R²)`, the
/// short-wavelength rate when `R p̄/ħ ≫ 1`.
pub fn gamma_short_approx(ctx: &ScatteringContext, env: &EnvironmentSpec) -> Result<RateResult> {
    check_mass("gamma_short_approx", ctx, env)?;
    let b = require_large_momentum("gamma_short_approx", ctx, env)?;
    let gamma = short_approx_coefficient(ctx, env) * ctx.pair.d1 * ctx.pair.d1;
    Ok(RateResult::new(gamma, RateMethod::Short)?.with_environment(ctx, env).with("b", b))
}

/// [`gamma_short_approx`] with `d₁ = 1`: the rate is this times `d₁²`.
pub(crate) fn short_approx_coefficient(ctx: &ScatteringContext, env: &EnvironmentSpec) -> f64 {
    let d2 = ctx.pair.d2;
    let g = d2 / (EPS0 * HBAR * ctx.radius);
    TWO_PI_3_2 * 2.0 * g * g * env.density / 3.0 * (2.0 * ctx.mass / (K_B * env.temperature)).sqrt()
}

/// Long-wavelength rate
/// `Γ_L = 2(2π)^{3/2} Δx² ∫ dp₀ S(p₀) n (p₀/m) σ_eff(p₀) p₀²/ħ²`.
///
/// With the delta distribution and `R p̄/ħ ≥ 10` the logarithmic form of
/// [`gamma_long_log_approx`] is returned; otherwise `σ_eff` is evaluated in
/// closed form at each momentum.
pub fn gamma_long(
    ctx: &ScatteringContext,
    env: &EnvironmentSpec,
    sup: &SuperpositionSpec,
    dist: &MomentumDistribution,
) -> Result<RateResult> {
    check_mass("gamma_long", ctx, env)?;
    check_distribution("gamma_long", env, dist)?;
    let b = ctx.radius * env.mean_momentum() / HBAR;
    if dist.kind == DistributionKind::DeltaAtMean && b >= LARGE_MOMENTUM_MIN {
        return gamma_long_log_approx(ctx, env, sup);
    }
    let n = env.density;
    let avg = expectation_over_momentum(dist, |p0| {
        let s = sigma_eff_closed(ctx, &Kinematics::new(p0, ctx.radius)?)?;
        Ok(p0 / ctx.mass * s * (p0 / HBAR).powi(2))
    })?;
    let gamma = 2.0 * TWO_PI_3_2 * sup.delta_x * sup.delta_x * n * avg;
    let mut r = RateResult::new(gamma, RateMethod::Long)?.with_environment(ctx, env);
    if dist.kind == DistributionKind::DeltaAtMean {
        r = r.with("sigma_eff", sigma_eff_closed(ctx, &Kinematics::new(env.mean_momentum(), ctx.radius)?)?);
    }
    Ok(r)
}

/// `Γ_L = (2π)^{3/2} 4 m d₁² d₂² n Δx² ln(4R p̄/ħ) / (9 ε₀² ħ² R⁴ p̄)`.
pub fn gamma_long_log_approx(ctx: &ScatteringContext, env: &EnvironmentSpec, sup: &SuperpositionSpec) -> Result<RateResult> {
    check_mass("gamma_long_log_approx", ctx, env)?;
    let b = require_large_momentum("gamma_long_log_approx", ctx, env)?;
    let p = env.mean_momentum();
    let g = ctx.pair.d1 * ctx.pair.d2 / (EPS0 * HBAR * ctx.radius * ctx.radius);
    let gamma = TWO_PI_3_2 * 4.0 * ctx.mass * g * g * env.density * sup.delta_x * sup.delta_x / (9.0 * p) * (4.0 * b).ln();
    Ok(RateResult::new(gamma, RateMethod::Long)?.with_environment(ctx, env).with("b", b))
}

/// Factor between λ₀ and Δx that separates the regimes.
pub const REGIME_FACTOR: f64 = 10.0;

/// Short if `λ₀ < Δx/10`, Long if `λ₀ > 10 Δx`, Intermediate otherwise.
pub fn classify_regime(env: &EnvironmentSpec, sup: &SuperpositionSpec) -> Regime {
    let lambda = env.wavelength();
    if lambda * REGIME_FACTOR < sup.delta_x {
        Regime::Short
    } else if lambda > REGIME_FACTOR * sup.delta_x {
        Regime::Long
    } else {
        Regime::Intermediate
    }
}

/// Relative tolerance of the nested angular quadrature in [`gamma_generic`].
pub const GENERIC_REL_TOL: f64 = 1e-9;

/// Phase average `∫₋₁¹ (1 − e^{−i z c}) dc` by quadrature; returns
/// (real, imaginary). The exact values are `2 − 2 sin z / z` and 0.
fn phase_integral(z: f64) -> Result<(f64, f64)> {
    if z == 0.0 {
        return Ok((0.0, 0.0));
    }
    let panels = ((z / PI).ceil() as usize).clamp(2, 100_000);
    let breaks = uniform_breaks(-1.0, 1.0, panels);
    let q = Integrator::new(GENERIC_REL_TOL).with_abs_tol(1e-15);
    let re = q.integrate_with_breaks(|c| 1.0 - (z * c).cos(), &breaks)?.value;
    // abs floor relative to the real part: the imaginary part is odd in c
    let q_im = Integrator::new(GENERIC_REL_TOL).with_abs_tol(1e-15 * re.abs().max(1e-300));
    let im = q_im.integrate_with_breaks(|c| -(z * c).sin(), &breaks)?.value;
    Ok((re, im))
}

/// `∫ dΩ₀/(4π) ∫ dΩ′ dσ/dΩ′ (1 − e^{−i p₀ (n̂′ − n̂₀)·Δx/ħ})` at one momentum.
///
/// For fixed `n̂₀` the vector `n̂′ − n̂₀` has length `2 sin(θ/2)`; averaging
/// `n̂₀` over the sphere with the scattering geometry rigidly attached makes
/// its direction isotropic relative to the fixed separation. The remaining
/// three angles are the scattering angle, the polar angle of `n̂′ − n̂₀`
/// relative to the separation (both by quadrature), and a trivial azimuth.
fn angular_phase_integral(ctx: &ScatteringContext, p0: f64, delta_x: f64) -> Result<Complex64> {
    if p0 == 0.0 || delta_x == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let kappa = p0 * delta_x / HBAR;
    let a = 2.0 * ctx.radius * p0 / HBAR;
    // outer variable u = sin(θ/2): sin θ dθ = 4u du, |n̂′ − n̂₀| = 2u
    let panels = ((a.max(2.0 * kappa) / PI).ceil() as usize).clamp(4, 20_000);
    let mut breaks = uniform_breaks(0.0, 1.0, panels);
    let peak = 1.0 / a.max(1e-300);
    if peak < 1.0 / panels as f64 {
        breaks.insert(1, peak);
    }
    let mut im_total = 0.0;
    let mut err: Option<Error> = None;
    let q = Integrator::new(GENERIC_REL_TOL).with_max_intervals(400_000);
    let re = q.integrate_with_breaks(
        |u| {
            if err.is_some() {
                return 0.0;
            }
            match phase_integral(2.0 * kappa * u) {
                Ok((re, im)) => {
                    let w = 4.0 * u * differential_cross_section(ctx, 2.0 * p0 * u);
                    im_total += w * im.abs();
                    w * re
                }
                Err(e) => {
                    err = Some(e);
                    0.0
                }
            }
        },
        &breaks,
    );
    if let Some(e) = err {
        return Err(e);
    }
    // 2π azimuth, ½ from the polar average of the phase
    let re = re?.value * PI;
    Ok(Complex64::new(re, im_total * PI))
}

/// Scattering-model rate
/// `Γ = 2(2π)^{3/2} ∫ dp₀ S(p₀) n v ∫ dΩ₀dΩ′/(4π) dσ/dΩ′ (1 − e^{−ip₀(n̂′−n̂₀)·Δx/ħ})`
/// with all particles at `p̄`.
///
/// The diagnostic `imag_residual` is an upper bound on the magnitude of the
/// imaginary part (the sum of per-node absolute residuals), relative to the
/// real part.
pub fn gamma_generic(ctx: &ScatteringContext, env: &EnvironmentSpec, delta_x: f64) -> Result<RateResult> {
    let dist = env.distribution(DistributionKind::DeltaAtMean)?;
    gamma_generic_with_distribution(ctx, env, delta_x, &dist)
}

pub fn gamma_generic_with_distribution(
    ctx: &ScatteringContext,
    env: &EnvironmentSpec,
    delta_x: f64,
    dist: &MomentumDistribution,
) -> Result<RateResult> {
    check_mass("gamma_generic", ctx, env)?;
    check_distribution("gamma_generic", env, dist)?;
    if !(delta_x >= 0.0) || !delta_x.is_finite() {
        return Err(Error::domain("gamma_generic", format!("separation must be non-negative, got {delta_x}")));
    }
    let mut imag = 0.0;
    let avg = expectation_over_momentum(dist, |p0| {
        let z = angular_phase_integral(ctx, p0, delta_x)?;
        imag += (p0 / ctx.mass * z.im).abs();
        Ok(p0 / ctx.mass * z.re)
    })?;
    let gamma = 2.0 * TWO_PI_3_2 * env.density * avg;
    let residual = if avg > 0.0 { imag / avg } else { 0.0 };
    Ok(RateResult::new(gamma, RateMethod::Generic)?
        .with_environment(ctx, env)
        .with("kappa", env.mean_momentum() * delta_x / HBAR)
        .with("imag_residual", residual))
}

/// Decay of a density-matrix coherence, `ρ(t) = e^{−Γt} ρ(0)`.
pub fn off_diagonal_decay(rho0: Complex64, gamma: f64, t: f64) -> Result<Complex64> {
    if !(gamma >= 0.0) {
        return Err(Error::domain("off_diagonal_decay", format!("rate must be non-negative, got {gamma}")));
    }
    if !(t >= 0.0) {
        return Err(Error::domain("off_diagonal_decay", format!("time must be non-negative, got {t}")));
    }
    if gamma == 0.0 || t == 0.0 {
        return Ok(rho0);
    }
    Ok(rho0 * (-gamma * t).exp())
}

/// Two-branch density matrix with populations untouched by decoherence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchDensityMatrix {
    pub populations: [f64; 2],
    pub coherence: Complex64,
}

impl BranchDensityMatrix {
    /// Equal superposition `(|L⟩ + |R⟩)/√2`.
    pub fn equal_superposition() -> Self {
        BranchDensityMatrix { populations: [0.5, 0.5], coherence: Complex64::new(0.5, 0.0) }
    }

    pub fn evolve(&self, gamma: f64, t: f64) -> Result<Self> {
        Ok(BranchDensityMatrix { populations: self.populations, coherence: off_diagonal_decay(self.coherence, gamma, t)? })
    }
}

/// Mean thermal momentum and de Broglie wavelength of a species, for callers
/// that have no [`EnvironmentSpec`] at hand.
pub fn thermal_scales(mass: f64, temperature: f64) -> Result<(f64, f64)> {
    Ok((mean_thermal_momentum(mass, temperature)?, thermal_wavelength(mass, temperature)?))
}
