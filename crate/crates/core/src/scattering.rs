//! Dipole-dipole potential of a finite-size crystal, its Fourier transform,
//! and the Born-approximation cross sections.
//!
//! Every closed form has a quadrature counterpart (`*_quadrature`) that
//! integrates [`differential_cross_section`] directly over the scattering
//! angle, using `u = sin(θ'/2)` so that `q = 2 p₀ u` and `sin θ' dθ' = 4u du`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::Real;
use crate::quadrature::Integrator;
use crate::quantities::{EPS0, HBAR};
use crate::special::{cosine_integral, form_factor_ratio};

/// Crystal and environmental dipole magnitudes (C·m).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DipolePair {
    pub d1: f64,
    pub d2: f64,
}

impl DipolePair {
    pub fn new(d1: f64, d2: f64) -> Result<Self> {
        if !(d1 >= 0.0) || !(d2 >= 0.0) || !d1.is_finite() || !d2.is_finite() {
            return Err(Error::domain("DipolePair", format!("dipoles must be finite and non-negative, got d1 = {d1}, d2 = {d2}")));
        }
        Ok(DipolePair { d1, d2 })
    }
}

/// Everything a cross section needs besides the kinematics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringContext {
    pub pair: DipolePair,
    /// Environmental particle mass (kg).
    pub mass: f64,
    /// Crystal radius (m); also the closest approach distance.
    pub radius: f64,
}

impl ScatteringContext {
    pub fn new(pair: DipolePair, mass: f64, radius: f64) -> Result<Self> {
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::domain("ScatteringContext", format!("mass must be positive, got {mass}")));
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::domain("ScatteringContext", format!("radius must be positive, got {radius}")));
        }
        Ok(ScatteringContext { pair, mass, radius })
    }

    /// Same context with the dipoles replaced.
    pub fn with_pair(&self, pair: DipolePair) -> Self {
        ScatteringContext { pair, ..*self }
    }

    /// `m² d₁² d₂² / (ε₀² ħ⁴)`, the area scale shared by every cross section.
    pub fn area_scale(&self) -> f64 {
        let DipolePair { d1, d2 } = self.pair;
        // grouped to stay inside f64 range
        let g = self.mass * d1 * d2 / (EPS0 * HBAR * HBAR);
        g * g
    }

    pub fn kinematics(&self, p0: f64) -> Result<Kinematics> {
        Kinematics::new(p0, self.radius)
    }
}

/// Incident momentum together with the size parameter `a = 2 R p₀ / ħ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Kinematics {
    p0: f64,
    a: f64,
}

impl Kinematics {
    pub fn new(p0: f64, radius: f64) -> Result<Self> {
        if !(p0 >= 0.0) || !p0.is_finite() {
            return Err(Error::domain("Kinematics", format!("momentum must be finite and non-negative, got {p0}")));
        }
        Ok(Kinematics { p0, a: 2.0 * radius * p0 / HBAR })
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    /// `a = 2 R p₀ / ħ`.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// `b = R p₀ / ħ = a / 2`.
    pub fn b(&self) -> f64 {
        0.5 * self.a
    }
}

/// Fourier transform of the dipole-dipole potential with the integral cut at
/// `r = R`: `Ṽ(q) = 2 d₁ d₂z ħ³ k(Rq/ħ) / (ε₀ R³ q³)` in J·m³.
pub fn potential_fourier_transform(ctx: &ScatteringContext, q: f64, d2z: f64) -> Result<f64> {
    if !(q > 0.0) {
        return Err(Error::domain("potential_fourier_transform", format!("momentum transfer must be positive, got {q}")));
    }
    let x = ctx.radius * q / HBAR;
    // ħ³/(R³q³) k(x) = k(x)/x³
    Ok(2.0 * ctx.pair.d1 * d2z / EPS0 * form_factor_ratio(x))
}

/// `dσ/dΩ = 4 ħ² m² d₁² d₂² k(Rq/ħ)² / (3π ε₀² R⁶ q⁶)` in m²/sr, with the
/// environmental dipole orientation integrated over the full solid angle.
///
/// Written as `4 m² d₁² d₂² (k(x)/x³)² / (3π ε₀² ħ⁴)`, which stays finite at
/// `q = 0` where it tends to `4 m² d₁² d₂² / (27π ε₀² ħ⁴)`.
pub fn differential_cross_section(ctx: &ScatteringContext, q: f64) -> f64 {
    let x = ctx.radius * q / HBAR;
    let r = form_factor_ratio(x);
    4.0 * ctx.area_scale() * r * r / (3.0 * PI)
}

/// Variant of [`differential_cross_section`] with a normalized average over
/// the environmental dipole orientation (`⟨cos²θ₂⟩ = 1/3`); smaller by 4π.
pub fn differential_cross_section_normalized_average(ctx: &ScatteringContext, q: f64) -> f64 {
    differential_cross_section(ctx, q) / (4.0 * PI)
}

/// `q = 2 p₀ sin(θ/2)`.
pub fn momentum_transfer(p0: f64, theta: f64) -> Result<f64> {
    if !(p0 >= 0.0) {
        return Err(Error::domain("momentum_transfer", format!("momentum must be non-negative, got {p0}")));
    }
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::domain("momentum_transfer", format!("scattering angle must lie in [0, π], got {theta}")));
    }
    Ok(2.0 * p0 * (0.5 * theta).sin())
}

/// Below this `b = R p₀/ħ` the total cross-section bracket is summed from its
/// Taylor series.
pub const SIGMA_CM_SERIES_SWITCH: f64 = 0.25;

/// `[−1 − 8b² + 32b⁴ + cos 4b + 4b sin 4b] / b⁶`.
///
/// The bracket starts at `(256/9) b⁶`; below [`SIGMA_CM_SERIES_SWITCH`] it is
/// summed as `Σ_{m≥3} (−1)^{m+1} (2m−1) (4b)^{2m} / (2m)!`.
pub fn sigma_cm_bracket_over_b6(b: f64) -> f64 {
    if b < SIGMA_CM_SERIES_SWITCH {
        // term_m = (−1)^{m+1} (2m−1) 4^{2m} b^{2m−6} / (2m)!
        let x2 = 16.0 * b * b;
        let mut coeff = 4096.0 / 720.0; // 4⁶/6!
        let mut pow = 1.0;
        let mut sum = 0.0;
        for m in 3..40 {
            let term = if m % 2 == 1 { 1.0 } else { -1.0 } * (2 * m - 1) as f64 * coeff * pow;
            sum += term;
            if term.abs() < 1e-18 * sum.abs() {
                break;
            }
            let k = (2 * m + 1) as f64;
            coeff /= k * (k + 1.0);
            coeff *= 16.0;
            pow *= b * b;
            let _ = x2;
        }
        sum
    } else {
        let b2 = b * b;
        let tail = (-1.0 + (4.0 * b).cos() + 4.0 * b * (4.0 * b).sin()) / (b2 * b2 * b2);
        32.0 / b2 - 8.0 / (b2 * b2) + tail
    }
}

/// The raw bracket `−1 − 8b² + 32b⁴ + cos 4b + 4b sin 4b`.
pub fn sigma_cm_bracket(b: f64) -> f64 {
    if b < SIGMA_CM_SERIES_SWITCH {
        sigma_cm_bracket_over_b6(b) * b.powi(6)
    } else {
        -1.0 - 8.0 * b * b + 32.0 * b.powi(4) + (4.0 * b).cos() + 4.0 * b * (4.0 * b).sin()
    }
}

fn require_positive_momentum(op: &'static str, kin: &Kinematics) -> Result<()> {
    if kin.p0 > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(op, "incident momentum must be positive"))
    }
}

/// Closed-form total cross section
/// `σ_CM = m² d₁² d₂² ħ² [bracket(b)] / (48 ε₀² R⁶ p₀⁶)`.
pub fn sigma_cm_closed(ctx: &ScatteringContext, kin: &Kinematics) -> Result<f64> {
    require_positive_momentum("sigma_cm_closed", kin)?;
    // ħ²/(R⁶p₀⁶) = 1/(ħ⁴ b⁶)
    Ok(ctx.area_scale() * sigma_cm_bracket_over_b6(kin.b()) / 48.0)
}

/// Relative tolerance of the cross-section oracles.
pub const ORACLE_REL_TOL: f64 = 1e-8;

/// Panels for `∫₀¹ du` with one panel per half-oscillation of `k(a u)`, at
/// least four, at most `MAX_PANELS`.
fn angular_breaks(a: f64) -> Vec<f64> {
    const MAX_PANELS: usize = 20_000;
    let panels = ((a / PI).ceil() as usize).clamp(4, MAX_PANELS);
    let mut pts = Vec::with_capacity(panels + 2);
    // resolve the forward peak of width ~1/a separately
    let peak = (1.0 / a.max(1e-300)).min(1.0);
    pts.push(0.0);
    if peak < 0.25 {
        pts.push(peak);
    }
    pts.extend(crate::quadrature::uniform_breaks(0.0, 1.0, panels).into_iter().skip(1));
    pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    pts
}

fn angular_quadrature<W: Fn(f64) -> f64>(ctx: &ScatteringContext, kin: &Kinematics, rel_tol: f64, weight: W) -> Result<f64> {
    let p0 = kin.p0;
    let integrator = Integrator::new(rel_tol).with_max_intervals(200_000);
    let est = integrator.integrate_with_breaks(
        |u| 4.0 * u * weight(u) * differential_cross_section(ctx, 2.0 * p0 * u),
        &angular_breaks(kin.a),
    )?;
    Ok(est.value)
}

/// `σ_CM = 2π ∫ sin θ' dσ/dΩ'(q(θ')) dθ'` by adaptive quadrature.
pub fn sigma_cm_quadrature(ctx: &ScatteringContext, kin: &Kinematics) -> Result<f64> {
    sigma_cm_quadrature_with_tol(ctx, kin, ORACLE_REL_TOL)
}

pub fn sigma_cm_quadrature_with_tol(ctx: &ScatteringContext, kin: &Kinematics, rel_tol: f64) -> Result<f64> {
    require_positive_momentum("sigma_cm_quadrature", kin)?;
    Ok(2.0 * PI * angular_quadrature(ctx, kin, rel_tol, |_| 1.0)?)
}

/// Number of series terms used for the small-`a` effective cross section.
const SIGMA_EFF_SERIES_TERMS: usize = 16;
/// Below this `a` the effective cross section uses its Taylor series.
pub const SIGMA_EFF_SERIES_SWITCH: f64 = 1.0;

/// `E(a)/a⁶` where `E(a) = a²(ln 4a² − 2Ci(2a) + 2(γ−1)) + 2a sin 2a + cos 2a − 1`.
///
/// `E(a) = 4a² ∫₀^a k(t)²/t³ dt`; for small `a` the integral is expanded in
/// the squared Taylor series of `k(t)/t³`, giving `E(a)/a⁶ → 1/9`.
pub fn sigma_eff_bracket_over_a6(a: f64) -> Result<f64> {
    if a < SIGMA_EFF_SERIES_SWITCH {
        // c_n: coefficients of k(t)/t³ in t²ⁿ
        let mut c = [0.0f64; SIGMA_EFF_SERIES_TERMS];
        let mut fact = 6.0; // (2n+3)!
        for (n, cn) in c.iter_mut().enumerate() {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            *cn = sign * (2 * n + 2) as f64 / fact;
            fact *= ((2 * n + 4) * (2 * n + 5)) as f64;
        }
        let a2 = a * a;
        let mut sum = 0.0;
        let mut pow = 1.0;
        for n in 0..SIGMA_EFF_SERIES_TERMS {
            let e_n: f64 = (0..=n).map(|i| c[i] * c[n - i]).sum();
            sum += e_n * pow / (2 * n + 4) as f64;
            pow *= a2;
        }
        Ok(4.0 * sum)
    } else {
        let a2 = a * a;
        let log_part = (4.0 * a2).ln() - 2.0 * cosine_integral(2.0 * a)? + 2.0 * (f64::euler_gamma() - 1.0);
        let osc = 2.0 * a * (2.0 * a).sin() + (2.0 * a).cos() - 1.0;
        Ok(log_part / (a2 * a2) + osc / (a2 * a2 * a2))
    }
}

/// Closed-form effective cross section
/// `σ_eff = (4/3)πβ E(a)`, `β = ħ² m² d₁² d₂² / (48π ε₀² R⁶ p₀⁶)`.
///
/// At `p₀ = 0` returns the finite limit `16 m² d₁² d₂² / (81 ε₀² ħ⁴)`,
/// a third of the isotropic low-energy total cross section.
pub fn sigma_eff_closed(ctx: &ScatteringContext, kin: &Kinematics) -> Result<f64> {
    // (4/3)π β a⁶ = (16/9) m² d₁² d₂² / (ε₀² ħ⁴)
    Ok(16.0 / 9.0 * ctx.area_scale() * sigma_eff_bracket_over_a6(kin.a)?)
}

/// `σ_eff = (2π/3) ∫ d(cos θ') (1 − cos θ') dσ/dΩ'` by adaptive quadrature.
pub fn sigma_eff_quadrature(ctx: &ScatteringContext, kin: &Kinematics) -> Result<f64> {
    sigma_eff_quadrature_with_tol(ctx, kin, ORACLE_REL_TOL)
}

pub fn sigma_eff_quadrature_with_tol(ctx: &ScatteringContext, kin: &Kinematics, rel_tol: f64) -> Result<f64> {
    require_positive_momentum("sigma_eff_quadrature", kin)?;
    // 1 − cos θ' = 2u²
    Ok(2.0 * PI / 3.0 * angular_quadrature(ctx, kin, rel_tol, |u| 2.0 * u * u)?)
}

/// Smallest `a` accepted by [`sigma_eff_large_a`].
pub const LARGE_A_MIN: f64 = 10.0;

/// Large-`a` form `σ_eff ≈ 2 m² d₁² d₂² ln(4Rp₀/ħ) / (9 ε₀² R⁴ p₀⁴)`.
pub fn sigma_eff_large_a(ctx: &ScatteringContext, kin: &Kinematics) -> Result<f64> {
    if !(kin.a >= LARGE_A_MIN) {
        return Err(Error::regime(
            "sigma_eff_large_a",
            format!("large-a approximation invalid for a = {:.4} < {LARGE_A_MIN}", kin.a),
        ));
    }
    // 1/(R⁴p₀⁴) = 16/(ħ⁴ a⁴)
    let a2 = kin.a * kin.a;
    Ok(2.0 / 9.0 * ctx.area_scale() * 16.0 / (a2 * a2) * (2.0 * kin.a).ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantities::{dimensioned, Dimension};
    use crate::Quantity;

    fn ctx(d1: f64, d2: f64, m: f64, r: f64) -> ScatteringContext {
        ScatteringContext::new(DipolePair::new(d1, d2).unwrap(), m, r).unwrap()
    }

    fn baseline() -> ScatteringContext {
        ctx(1e-30, 1e-29, 1e-27, 1e-6)
    }

    /// Kinematics with the requested `a` for the baseline radius.
    fn kin_for_a(c: &ScatteringContext, a: f64) -> Kinematics {
        Kinematics::new(a * HBAR / (2.0 * c.radius), c.radius).unwrap()
    }

    #[test]
    fn constructors_validate() {
        assert!(DipolePair::new(-1.0, 0.0).is_err());
        assert!(ScatteringContext::new(DipolePair::new(1.0, 1.0).unwrap(), 0.0, 1.0).is_err());
        assert!(ScatteringContext::new(DipolePair::new(1.0, 1.0).unwrap(), 1.0, 0.0).is_err());
        assert!(Kinematics::new(-1.0, 1.0).is_err());
        let k = Kinematics::new(1e-25, 1e-6).unwrap();
        assert_eq!(k.a(), 2.0 * 1e-6 * 1e-25 / HBAR);
        assert_eq!(k.b(), k.a() / 2.0);
    }

    #[test]
    fn fourier_transform_examples() {
        let c = baseline();
        assert_eq!(potential_fourier_transform(&c, 1e-28, 0.0).unwrap(), 0.0);
        let q = PI * HBAR / c.radius;
        let got = potential_fourier_transform(&c, q, 1e-29).unwrap();
        let want = 2.0 * c.pair.d1 * 1e-29 * HBAR.powi(3) * PI / (EPS0 * c.radius.powi(3) * q.powi(3));
        assert!((got - want).abs() / want < 1e-13);
        assert!(potential_fourier_transform(&c, 0.0, 1e-29).is_err());
    }

    #[test]
    fn differential_cross_section_examples() {
        assert_eq!(differential_cross_section(&ctx(0.0, 1e-29, 1e-27, 1e-6), 1e-28), 0.0);
        assert_eq!(differential_cross_section(&ctx(1e-30, 0.0, 1e-27, 1e-6), 1e-28), 0.0);
        let c = baseline();
        let limit = 4.0 * c.area_scale() / (27.0 * PI);
        assert!((differential_cross_section(&c, 0.0) - limit).abs() / limit < 1e-15);
        // continuity at x = 1e-6
        let q = 1e-6 * HBAR / c.radius;
        assert!((differential_cross_section(&c, q) - limit).abs() / limit < 1e-11);
        // printed form evaluated directly at x = 3
        let q = 3.0 * HBAR / c.radius;
        let k = 3f64.sin() - 3.0 * 3f64.cos();
        let DipolePair { d1, d2 } = c.pair;
        let printed = 4.0 * HBAR.powi(2) * c.mass.powi(2) * d1 * d1 * d2 * d2 * k * k
            / (3.0 * PI * EPS0.powi(2) * c.radius.powi(6) * q.powi(6));
        assert!((differential_cross_section(&c, q) - printed).abs() / printed < 1e-12);
    }

    #[test]
    fn born_assembly_matches_with_unnormalized_orientation_integral() {
        let c = baseline();
        for x in [0.1, 1.0, 7.3, 40.0] {
            let q = x * HBAR / c.radius;
            let v = potential_fourier_transform(&c, q, c.pair.d2).unwrap();
            let born = c.mass.powi(2) / (4.0 * PI * PI * HBAR.powi(4)) * v * v;
            // ∫cos²θ₂ dΩ₂ = 4π/3
            let unnormalized = born * 4.0 * PI / 3.0;
            let normalized = born / 3.0;
            let dcs = differential_cross_section(&c, q);
            assert!((unnormalized - dcs).abs() / dcs < 1e-12, "x = {x}");
            let alt = differential_cross_section_normalized_average(&c, q);
            assert!((normalized - alt).abs() / alt < 1e-12);
        }
    }

    #[test]
    fn momentum_transfer_examples() {
        assert_eq!(momentum_transfer(2.0, 0.0).unwrap(), 0.0);
        assert!((momentum_transfer(2.0, PI).unwrap() - 4.0).abs() < 1e-15);
        assert!((momentum_transfer(2.0, PI / 2.0).unwrap() - 2.0 * 2f64.sqrt()).abs() < 1e-15);
        assert!(momentum_transfer(1.0, -0.1).is_err());
        assert!(momentum_transfer(1.0, 3.2).is_err());
    }

    #[test]
    fn bracket_series_matches_direct_form() {
        // at the switch both forms agree
        let b = SIGMA_CM_SERIES_SWITCH;
        let direct = (-1.0 - 8.0 * b * b + 32.0 * b.powi(4) + (4.0 * b).cos() + 4.0 * b * (4.0 * b).sin()) / b.powi(6);
        assert!((sigma_cm_bracket_over_b6(b * (1.0 - 1e-12)) - direct).abs() / direct < 1e-9);
        // leading coefficient 256/9
        assert!((sigma_cm_bracket_over_b6(1e-8) - 256.0 / 9.0).abs() < 1e-12);
        // extended precision reference for the raw bracket at b = 0.01
        let want = 2.844_330_669_267_263_059_8e-11;
        assert!((sigma_cm_bracket(0.01) - want).abs() / want < 1e-12);
    }

    #[test]
    fn sigma_cm_zero_dipole_and_domain() {
        let c = ctx(0.0, 1e-29, 1e-27, 1e-6);
        let k = c.kinematics(1e-25).unwrap();
        assert_eq!(sigma_cm_closed(&c, &k).unwrap(), 0.0);
        let zero = c.kinematics(0.0).unwrap();
        assert!(sigma_cm_closed(&c, &zero).is_err());
        assert!(sigma_cm_quadrature(&c, &zero).is_err());
    }

    #[test]
    fn sigma_cm_large_b_dominated_by_quartic_term() {
        let b: f64 = 1e3;
        let bracket = sigma_cm_bracket(b);
        let quartic = 32.0 * b.powi(4);
        assert!(quartic / bracket > 0.9999);
        let c = baseline();
        let k = kin_for_a(&c, 2.0 * b);
        let approx = 2.0 * c.area_scale() / (3.0 * b * b);
        let s = sigma_cm_closed(&c, &k).unwrap();
        assert!((s - approx).abs() / s < 1e-4);
    }

    #[test]
    fn sigma_cm_closed_vs_quadrature_examples() {
        let c = baseline();
        for b in [1e-2, 1.0, 10.0, 1e3] {
            let k = kin_for_a(&c, 2.0 * b);
            let closed = sigma_cm_closed(&c, &k).unwrap();
            let quad = sigma_cm_quadrature(&c, &k).unwrap();
            assert!((closed - quad).abs() / quad < 1e-6, "b = {b}: {closed:e} vs {quad:e}");
        }
    }

    #[test]
    fn sigma_cm_quadrature_converged() {
        let c = baseline();
        for a in [0.3, 5.0, 300.0] {
            let k = kin_for_a(&c, a);
            let s1 = sigma_cm_quadrature_with_tol(&c, &k, 1e-8).unwrap();
            let s2 = sigma_cm_quadrature_with_tol(&c, &k, 5e-9).unwrap();
            assert!((s1 - s2).abs() / s2 < 1e-8);
        }
    }

    #[test]
    fn sigma_eff_examples() {
        let c = baseline();
        for a in [0.1, 1.0, 10.0, 2000.0] {
            let k = kin_for_a(&c, a);
            let closed = sigma_eff_closed(&c, &k).unwrap();
            let quad = sigma_eff_quadrature(&c, &k).unwrap();
            assert!((closed - quad).abs() / quad < 1e-6, "a = {a}: {closed:e} vs {quad:e}");
            let cm = sigma_cm_quadrature(&c, &k).unwrap();
            assert!(quad <= 2.0 * cm);
        }
    }

    #[test]
    fn sigma_eff_series_and_closed_form_agree_at_switch() {
        let a = SIGMA_EFF_SERIES_SWITCH;
        let series = sigma_eff_bracket_over_a6(a * (1.0 - 1e-12)).unwrap();
        let closed = sigma_eff_bracket_over_a6(a).unwrap();
        assert!((series - closed).abs() / closed < 1e-10);
        assert!((sigma_eff_bracket_over_a6(0.0).unwrap() - 1.0 / 9.0).abs() < 1e-16);
    }

    #[test]
    fn sigma_eff_low_momentum_limit() {
        // the bracket itself vanishes as a → 0 but the cross section tends to
        // a third of the isotropic total cross section
        let c = baseline();
        let k0 = c.kinematics(0.0).unwrap();
        let lim = sigma_eff_closed(&c, &k0).unwrap();
        assert!((lim - 16.0 * c.area_scale() / 81.0).abs() / lim < 1e-15);
        let small = kin_for_a(&c, 1e-4);
        let cm = sigma_cm_closed(&c, &small).unwrap();
        assert!((lim - cm / 3.0).abs() / lim < 1e-8);
        let a: f64 = 1e-3;
        let bracket = sigma_eff_bracket_over_a6(a).unwrap() * a.powi(6);
        assert!(bracket < 1e-18);
    }

    #[test]
    fn sigma_eff_large_a_examples() {
        let c = baseline();
        let k = kin_for_a(&c, 2000.0);
        let approx = sigma_eff_large_a(&c, &k).unwrap();
        let closed = sigma_eff_closed(&c, &k).unwrap();
        // the neglected 2(γ−1) term alone is −0.845 against ln(4a²) ≈ 16.6
        let ratio = approx / closed;
        assert!((ratio - 1.0537).abs() < 1e-3, "{ratio}");
        // the neglected Ci term is tiny
        let a = k.a();
        let ci_share = (2.0 * cosine_integral(2.0 * a).unwrap()).abs() / (4.0 * a * a).ln();
        assert!(ci_share < 1e-4);
        let c4 = ctx(2e-30, 1e-29, 1e-27, 1e-6);
        let quad = sigma_eff_large_a(&c4, &k).unwrap() / approx;
        assert!((quad - 4.0).abs() < 1e-12);
        let k5 = kin_for_a(&c, 5.0);
        assert!(matches!(sigma_eff_large_a(&c, &k5), Err(Error::Regime { .. })));
    }

    #[test]
    fn integrator_self_test_isotropic() {
        // a constant dσ/dΩ = c gives σ_CM = 4πc and σ_eff = (2π/3)·2c = 4πc/3
        let c_val = 2.5;
        let q = Integrator::new(1e-12);
        let cm = 2.0 * PI * q.integrate(|u| 4.0 * u * c_val, 0.0, 1.0).unwrap().value;
        let eff = 2.0 * PI / 3.0 * q.integrate(|u| 4.0 * u * 2.0 * u * u * c_val, 0.0, 1.0).unwrap().value;
        assert!((cm - 4.0 * PI * c_val).abs() < 1e-12);
        assert!((eff - 4.0 * PI * c_val / 3.0).abs() < 1e-12);
    }

    #[test]
    fn cross_sections_monotone_in_q() {
        let c = baseline();
        // envelope of (k(x)/x³)² decreases; sample at the maxima of cos² etc.
        let mut prev = f64::INFINITY;
        for x in crate::numeric::logspace(1e-3, 2.0, 60) {
            let v = differential_cross_section(&c, x * HBAR / c.radius);
            assert!(v <= prev);
            prev = v;
        }
        // beyond the first lobe compare envelopes x⁻⁴ at local maxima
        let env = |x: f64| 1.0 / x.powi(4);
        for x in [10.0, 100.0, 1000.0] {
            let v = differential_cross_section(&c, x * HBAR / c.radius) / (4.0 * c.area_scale() / (3.0 * PI));
            assert!(v <= env(x) * (1.0 + 2.0 / x));
        }
    }

    #[test]
    fn dimensional_audit() {
        use dimensioned::*;
        let m = Quantity::new(1e-27, Dimension::MASS);
        let d = Quantity::new(1e-30, Dimension::DIPOLE);
        let r = Quantity::new(1e-6, Dimension::LENGTH);
        let p = Quantity::new(1e-25, Dimension::MOMENTUM);
        // area scale m² d₁² d₂² / (ε₀² ħ⁴)
        let scale = (m * d * d / (eps0() * hbar() * hbar())).powi(2);
        assert_eq!(scale.dim, Dimension::AREA);
        // printed dσ/dΩ prefactor ħ² m² d⁴ / (ε₀² R⁶ q⁶)
        let pref = hbar().powi(2) * m.powi(2) * d.powi(4) / (eps0().powi(2) * r.powi(6) * p.powi(6));
        assert_eq!(pref.dim, Dimension::AREA);
        // large-a σ_eff prefactor m² d⁴/(ε₀² R⁴ p⁴)
        let eff = m.powi(2) * d.powi(4) / (eps0().powi(2) * r.powi(4) * p.powi(4));
        assert_eq!(eff.dim, Dimension::AREA);
        // Fourier transform d₁d₂/ε₀ is energy × volume
        assert_eq!((d * d / eps0()).dim, Dimension::ENERGY * Dimension::VOLUME);
        // a = 2Rp/ħ dimensionless
        assert_eq!((r * p / hbar()).dim, Dimension::NONE);
    }
}
