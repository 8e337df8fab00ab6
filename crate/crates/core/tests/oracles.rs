//! Independent numerical oracles for the closed forms.

use std::f64::consts::PI;

use dipole_decoherence::quantities::HBAR;
use dipole_decoherence::rates::{gamma_generic, TWO_PI_3_2};
use dipole_decoherence::scattering::{
    differential_cross_section, potential_fourier_transform, sigma_cm_closed, sigma_cm_quadrature, sigma_eff_closed,
    sigma_eff_quadrature,
};
use dipole_decoherence::special::{cosine_integral, form_factor_kernel, form_factor_kernel_direct, KERNEL_SERIES_SWITCH};
use dipole_decoherence::{numeric::logspace, DipolePair, EnvironmentSpec, Integrator, Kinematics, ScatteringContext};
use dipole_decoherence::qgem::GasSpecies;

/// `∫_x^∞ g(t) dt` for `g` oscillating with zeros near `(k + ½)π`: integrate
/// half-period chunks and accelerate the alternating partial sums by repeated
/// averaging.
fn oscillatory_tail<F: Fn(f64) -> f64>(g: F, x: f64) -> f64 {
    let q = Integrator::new(1e-14).with_abs_tol(1e-18);
    let first_zero = ((x / PI - 0.5).floor() + 1.5) * PI;
    let mut sum = q.integrate(&g, x, first_zero).unwrap().value;
    let mut partial = Vec::new();
    let mut a = first_zero;
    for _ in 0..40 {
        sum += q.integrate(&g, a, a + PI).unwrap().value;
        a += PI;
        partial.push(sum);
    }
    while partial.len() > 1 {
        partial = partial.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    partial[0]
}

#[test]
fn cosine_integral_against_chunked_quadrature() {
    for x in [0.5, 2.0, 20.0, 200.0] {
        let oracle = -oscillatory_tail(|t| t.cos() / t, x);
        let got: f64 = cosine_integral(x).unwrap();
        assert!((got - oracle).abs() < 1e-9, "Ci({x}): {got} vs {oracle}");
    }
}

#[test]
fn cosine_integral_small_argument_limit() {
    let gamma: f64 = 0.577_215_664_901_532_9;
    for x in [1e-6f64, 1e-4] {
        assert!((cosine_integral(x).unwrap() - x.ln() - gamma).abs() < 1e-7);
    }
    assert!(cosine_integral(1e5f64).unwrap().abs() < 1e-4);
    let ci3: f64 = cosine_integral(1e3).unwrap();
    assert!((ci3.abs().log10() + 4.0).abs() <= 1.0);
}

#[test]
fn kernel_branches_agree_at_switch() {
    let x = KERNEL_SERIES_SWITCH;
    let below = form_factor_kernel(x * (1.0 - 1e-15));
    let direct = form_factor_kernel_direct(x);
    assert!((below - direct).abs() / direct < 1e-10);
    for x in logspace(0.1, 1e4, 50) {
        let k = form_factor_kernel(x);
        let d = x.sin() - x * x.cos();
        assert!((k - d).abs() <= 1e-9 * d.abs().max(1e-300) + 1e-12 * x, "x = {x}");
    }
}

fn spherical_j2(t: f64) -> f64 {
    if t < 1e-2 {
        t * t / 15.0 * (1.0 - t * t / 14.0)
    } else {
        (3.0 / (t * t) - 1.0) * t.sin() / t - 3.0 * t.cos() / (t * t)
    }
}

#[test]
fn fourier_transform_radial_and_angular_oracle() {
    // angular part: 2π ∫ e^{−ixc} (3c² − 1) dc = −8π j₂(x)
    let q = Integrator::new(1e-13).with_abs_tol(1e-16);
    for x in [0.3, 2.0, 9.0] {
        let ang = 2.0 * PI * q.integrate(|c: f64| (x * c).cos() * (3.0 * c * c - 1.0), -1.0, 1.0).unwrap().value;
        assert!((ang + 8.0 * PI * spherical_j2(x)).abs() < 1e-11);
    }
    // radial part: the transform is (2 d₁ d₂z/ε₀) ∫_x^∞ j₂(t)/t dt
    let ctx = ScatteringContext::new(DipolePair::new(1e-30, 1e-29).unwrap(), 1e-27, 1e-6).unwrap();
    for x in [0.2, 1.0, 4.0, 30.0] {
        let radial = oscillatory_tail(|t| spherical_j2(t) / t, x);
        let want = 2.0 * 1e-30 * 1e-29 / dipole_decoherence::quantities::EPS0 * radial;
        let got = potential_fourier_transform(&ctx, x * HBAR / ctx.radius, 1e-29).unwrap();
        assert!((got - want).abs() / want.abs() < 1e-8, "x = {x}: {got:e} vs {want:e}");
    }
}

fn context() -> ScatteringContext {
    ScatteringContext::new(DipolePair::new(2e-30, 7e-30).unwrap(), 4.65e-26, 1e-6).unwrap()
}

#[test]
fn total_cross_section_closed_form_matches_quadrature() {
    let ctx = context();
    for a in logspace(1e-3, 1e4, 20) {
        let kin = Kinematics::new(a * HBAR / (2.0 * ctx.radius), ctx.radius).unwrap();
        let closed = sigma_cm_closed(&ctx, &kin).unwrap();
        let quad = sigma_cm_quadrature(&ctx, &kin).unwrap();
        assert!((closed - quad).abs() / quad < 1e-6, "a = {a}: {closed:e} vs {quad:e}");
    }
}

#[test]
fn effective_cross_section_closed_form_matches_quadrature() {
    let ctx = context();
    for a in logspace(1e-3, 1e4, 20) {
        let kin = Kinematics::new(a * HBAR / (2.0 * ctx.radius), ctx.radius).unwrap();
        let closed = sigma_eff_closed(&ctx, &kin).unwrap();
        let quad = sigma_eff_quadrature(&ctx, &kin).unwrap();
        assert!((closed - quad).abs() / quad < 1e-6, "a = {a}: {closed:e} vs {quad:e}");
    }
}

/// Lab-frame version of the generic rate: the separation along z, `n̂₀` at
/// polar angle θ₀ (its azimuth fixed by symmetry), `n̂′` at (θ′, φ′).
fn lab_frame_rate(ctx: &ScatteringContext, env: &EnvironmentSpec, delta_x: f64) -> f64 {
    let p0 = env.mean_momentum();
    let kappa = p0 * delta_x / HBAR;
    let q = Integrator::new(1e-9);
    let inner = |c0: f64, c1: f64| {
        let s0 = (1.0 - c0 * c0).max(0.0).sqrt();
        let s1 = (1.0 - c1 * c1).max(0.0).sqrt();
        let phase = 1.0 - (kappa * (c1 - c0)).cos();
        q.integrate(
            |phi: f64| {
                let cos_theta = (c0 * c1 + s0 * s1 * phi.cos()).clamp(-1.0, 1.0);
                let mom = p0 * (2.0 * (1.0 - cos_theta)).sqrt();
                differential_cross_section(ctx, mom)
            },
            0.0,
            PI,
        )
        .unwrap()
        .value
            * 2.0
            * phase
    };
    let middle = |c0: f64| q.integrate(|c1| inner(c0, c1), -1.0, 1.0).unwrap().value;
    // ∫dΩ₀/(4π) = ½∫dc₀
    let outer = 0.5 * q.integrate(middle, -1.0, 1.0).unwrap().value;
    2.0 * TWO_PI_3_2 * env.density * p0 / ctx.mass * outer
}

#[test]
fn generic_rate_matches_lab_frame_integral() {
    let sp = GasSpecies::new("probe", 1e-27, Some(1e-29), 0.0).unwrap();
    let env = EnvironmentSpec::new(sp, 1.0, 1e8).unwrap();
    let ctx = ScatteringContext::new(DipolePair::new(1e-30, 1e-29).unwrap(), 1e-27, 1e-9).unwrap();
    let p = env.mean_momentum();
    for kappa in [0.3, 2.0, 6.0] {
        let dx = kappa * HBAR / p;
        let oracle = lab_frame_rate(&ctx, &env, dx);
        let got = gamma_generic(&ctx, &env, dx).unwrap().gamma;
        assert!((got - oracle).abs() / oracle < 1e-6, "κ = {kappa}: {got:e} vs {oracle:e}");
    }
}
