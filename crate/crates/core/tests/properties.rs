use dipole_decoherence::numeric::logspace;
use dipole_decoherence::qgem::GasSpecies;
use dipole_decoherence::quantities::HBAR;
use dipole_decoherence::rates::{
    classify_regime, gamma_generic, gamma_long, gamma_short, gamma_short_approx, SuperpositionSpec,
};
use dipole_decoherence::scattering::{sigma_cm_closed, sigma_eff_closed};
use dipole_decoherence::special::{expectation_over_momentum, momentum_pdf};
use dipole_decoherence::{
    DipolePair, DistributionKind, EnvironmentSpec, Kinematics, MomentumDistribution, Regime, ScatteringContext,
};
use proptest::prelude::*;

fn setup(radius: f64, mass: f64, t: f64) -> (ScatteringContext, EnvironmentSpec) {
    let sp = GasSpecies::new("probe", mass, Some(1e-29), 0.0).unwrap();
    let env = EnvironmentSpec::new(sp, t, 1e8).unwrap();
    let ctx = ScatteringContext::new(DipolePair::new(1e-30, 1e-29).unwrap(), mass, radius).unwrap();
    (ctx, env)
}

#[test]
fn generic_rate_crosses_over_between_plateaus() {
    // R p̄/ħ ≈ 0.8: the forward peak is broad enough for both plateaus to be
    // reached inside λ₀/100 … 100 λ₀
    let (ctx, env) = setup(5e-10, 1e-27, 1.0);
    let dist = env.distribution(DistributionKind::DeltaAtMean).unwrap();
    let short = gamma_short(&ctx, &env, &dist).unwrap().gamma;
    let lambda = env.wavelength();
    let seps = logspace(lambda / 100.0, 100.0 * lambda, 20);
    let rates: Vec<f64> = seps.iter().map(|&dx| gamma_generic(&ctx, &env, dx).unwrap().gamma).collect();
    let long_first = gamma_long(&ctx, &env, &SuperpositionSpec::new(seps[0], 1.0).unwrap(), &dist).unwrap().gamma;
    assert!((rates[0] - long_first).abs() / long_first < 0.05);
    assert!((rates[19] - short).abs() / short < 0.05);
    // the phase average 1 − sin z/z overshoots, so the crossover carries a
    // small ripple of relative size ≲ 2/κ² instead of being strictly monotone
    for (w, dx) in rates.windows(2).zip(&seps[1..]) {
        let kappa = env.mean_momentum() * dx / HBAR;
        let ripple = (2.0 / (kappa * kappa)).min(1.0) * short;
        assert!(w[1] >= w[0] - ripple, "κ = {kappa}: {} after {}", w[1], w[0]);
    }
}

#[test]
fn short_bounded_by_long_when_separation_resolves_forward_peak() {
    // Γ_L/Γ_S = κ² σ_eff/σ_CM ≈ κ² ln(4b)/(3b²) for b = R p̄/ħ ≫ 1
    let (ctx, env) = setup(1e-6, 1e-27, 1.0);
    let dist = env.distribution(DistributionKind::DeltaAtMean).unwrap();
    let b = ctx.radius * env.mean_momentum() / HBAR;
    let threshold = b * (3.0 / (4.0 * b).ln()).sqrt() * HBAR / env.mean_momentum();
    let gs = gamma_short(&ctx, &env, &dist).unwrap().gamma;
    for dx in [2.0 * threshold, 1e-5, 1e-3] {
        let sup = SuperpositionSpec::new(dx, 1.0).unwrap();
        assert_eq!(classify_regime(&env, &sup), Regime::Short);
        assert!(gs <= gamma_long(&ctx, &env, &sup, &dist).unwrap().gamma);
    }
    // classified Short but below the threshold: the bound does not hold
    let dx = 0.5 * threshold;
    let sup = SuperpositionSpec::new(dx, 1.0).unwrap();
    assert_eq!(classify_regime(&env, &sup), Regime::Short);
    assert!(gs > gamma_long(&ctx, &env, &sup, &dist).unwrap().gamma);
}

#[test]
fn maxwell_boltzmann_moments() {
    let d = MomentumDistribution::maxwell_boltzmann(1e-27, 1.0).unwrap();
    let one = expectation_over_momentum(&d, |_| Ok(1.0)).unwrap();
    assert!((one - 1.0).abs() < 1e-10);
    let mkt = 1e-27 * dipole_decoherence::quantities::K_B;
    let p2 = expectation_over_momentum(&d, |p| Ok(p * p)).unwrap();
    assert!((p2 - 3.0 * mkt).abs() / (3.0 * mkt) < 1e-8);
    assert!(momentum_pdf(&MomentumDistribution::delta(1e-27, 1.0).unwrap(), 1e-25).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn effective_cross_section_bounded_by_twice_total(a in -3.0f64..4.0) {
        let ctx = ScatteringContext::new(DipolePair::new(1e-30, 1e-29).unwrap(), 1e-27, 1e-6).unwrap();
        let kin = Kinematics::new(10f64.powf(a) * HBAR / 2e-6, 1e-6).unwrap();
        let eff = sigma_eff_closed(&ctx, &kin).unwrap();
        let cm = sigma_cm_closed(&ctx, &kin).unwrap();
        prop_assert!(eff > 0.0 && eff <= 2.0 * cm);
    }

    #[test]
    fn rates_non_negative(
        log_r in -9.0f64..-5.0, log_m in -27.0f64..-25.0, t in 0.05f64..20.0, log_dx in -12.0f64..-3.0,
        mb in proptest::bool::ANY,
    ) {
        let (ctx, env) = setup(10f64.powf(log_r), 10f64.powf(log_m), t);
        let kind = if mb { DistributionKind::MaxwellBoltzmann } else { DistributionKind::DeltaAtMean };
        let dist = env.distribution(kind).unwrap();
        let sup = SuperpositionSpec::new(10f64.powf(log_dx), 1.0).unwrap();
        prop_assert!(gamma_short(&ctx, &env, &dist).unwrap().gamma >= 0.0);
        prop_assert!(gamma_long(&ctx, &env, &sup, &dist).unwrap().gamma >= 0.0);
        if let Ok(r) = gamma_short_approx(&ctx, &env) {
            prop_assert!(r.gamma >= 0.0);
        }
    }

    #[test]
    fn generic_rate_non_negative(log_dx in -12.0f64..-8.0, t in 0.1f64..10.0) {
        let (ctx, env) = setup(1e-9, 1e-27, t);
        let r = gamma_generic(&ctx, &env, 10f64.powf(log_dx)).unwrap();
        prop_assert!(r.gamma >= 0.0);
        prop_assert!(r.diagnostics["imag_residual"] < 1e-8);
        prop_assert!((r.coherence_time * r.gamma - 1.0).abs() < 1e-12);
    }
}
