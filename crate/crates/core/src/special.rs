//! Special functions and momentum distributions used by the cross-section
//! and rate formulas.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::Real;
use crate::quadrature::{integrate_fallible, Integrator};
use crate::quantities::K_B;

/// Below this argument the kernel is evaluated from its Taylor series.
pub const KERNEL_SERIES_SWITCH: f64 = 0.5;

// Taylor coefficients of k(x)/x³ = Σ (-1)ⁿ (2n+2) x²ⁿ / (2n+3)!
const KERNEL_RATIO_SERIES: [f64; 6] = [
    1.0 / 3.0,
    -1.0 / 30.0,
    1.0 / 840.0,
    -1.0 / 45_360.0,
    1.0 / 3_991_680.0,
    -1.0 / 518_918_400.0,
];

fn kernel_ratio_series<T: Real>(x: T) -> T {
    let x2 = x * x;
    KERNEL_RATIO_SERIES
        .iter()
        .rev()
        .fold(T::zero(), |acc, &c| acc * x2 + T::lit(c))
}

/// Uniform-sphere form factor kernel `k(x) = sin x − x cos x`.
///
/// Uses the series `x³/3 − x⁵/30 + x⁷/840 − …` below
/// [`KERNEL_SERIES_SWITCH`], where the direct form cancels.
pub fn form_factor_kernel<T: Real>(x: T) -> T {
    if x.abs() < T::lit(KERNEL_SERIES_SWITCH) {
        x * x * x * kernel_ratio_series(x)
    } else {
        form_factor_kernel_direct(x)
    }
}

/// Direct `sin x − x cos x` with no cancellation guard.
pub fn form_factor_kernel_direct<T: Real>(x: T) -> T {
    x.sin() - x * x.cos()
}

/// `k(x) / x³`, finite at the origin where it tends to 1/3.
pub fn form_factor_ratio<T: Real>(x: T) -> T {
    if x.abs() < T::lit(KERNEL_SERIES_SWITCH) {
        kernel_ratio_series(x)
    } else {
        form_factor_kernel_direct(x) / (x * x * x)
    }
}

/// Branch limits for [`cosine_integral`]: power series up to the first,
/// continued fraction up to the second, asymptotic series beyond.
pub const CI_SERIES_MAX: f64 = 4.0;
pub const CI_ASYMPTOTIC_MIN: f64 = 50.0;

/// Cosine integral `Ci(x) = −∫ₓ^∞ cos t / t dt` for `x > 0`.
pub fn cosine_integral<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::domain("cosine_integral", format!("argument must be positive and finite, got {x}")));
    }
    if x <= T::lit(CI_SERIES_MAX) {
        Ok(ci_series(x))
    } else if x < T::lit(CI_ASYMPTOTIC_MIN) {
        ci_continued_fraction(x)
    } else {
        Ok(ci_asymptotic(x))
    }
}

fn ci_series<T: Real>(x: T) -> T {
    // γ + ln x + Σ (−x²)ⁿ / (2n (2n)!)
    let x2 = x * x;
    let head = T::euler_gamma() + x.ln();
    let scale = head.abs() + T::one();
    let mut sum = T::zero();
    let mut pow_fact = T::one(); // (−x²)ⁿ / (2n)!
    for n in 1..200 {
        let two_n = T::from_usize(2 * n).unwrap();
        pow_fact = -pow_fact * x2 / (two_n * (two_n - T::one()));
        let term = pow_fact / two_n;
        sum = sum + term;
        if term.abs() < T::epsilon() * scale * T::lit(0.1) {
            break;
        }
    }
    head + sum
}

fn ci_continued_fraction<T: Real>(x: T) -> Result<T> {
    // Modified Lentz evaluation of E₁(ix); Ci(x) = −Re E₁(ix).
    let tiny = T::min_positive_value().sqrt();
    let one = Complex::new(T::one(), T::zero());
    let mut b = Complex::new(T::one(), x);
    let mut c = Complex::new(T::one() / tiny, T::zero());
    let mut d = one / b;
    let mut h = d;
    for i in 2..100_000usize {
        let k = T::from_usize(i - 1).unwrap();
        let a = -(k * k);
        b = b + Complex::new(T::lit(2.0), T::zero());
        d = one / (d * a + b);
        c = b + one * a / c;
        let del = c * d;
        h = h * del;
        if (del - one).norm() < T::epsilon() {
            let h = Complex::new(x.cos(), -x.sin()) * h;
            return Ok(-h.re);
        }
    }
    Err(Error::numeric("cosine_integral", format!("continued fraction did not converge at x = {x}")))
}

fn ci_asymptotic<T: Real>(x: T) -> T {
    // Ci(x) = f(x) sin x − g(x) cos x with
    // f ~ (1/x) Σ (−1)ⁿ (2n)!/x²ⁿ,  g ~ (1/x²) Σ (−1)ⁿ (2n+1)!/x²ⁿ
    let inv2 = T::one() / (x * x);
    let mut f = T::one();
    let mut g = T::one();
    let mut tf = T::one();
    let mut tg = T::one();
    for n in 1..60usize {
        let nn = T::from_usize(2 * n).unwrap();
        let next_f = -tf * (nn - T::one()) * nn * inv2;
        let next_g = -tg * nn * (nn + T::one()) * inv2;
        if next_f.abs() >= tf.abs() || next_g.abs() >= tg.abs() {
            break;
        }
        tf = next_f;
        tg = next_g;
        f = f + tf;
        g = g + tg;
        if tf.abs() < T::epsilon() * T::lit(0.1) && tg.abs() < T::epsilon() * T::lit(0.1) {
            break;
        }
    }
    f / x * x.sin() - g * inv2 * x.cos()
}

/// Shape of the incident momentum distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum DistributionKind {
    /// All particles carry `p̄ = √(2 m k_B T)`.
    #[default]
    DeltaAtMean,
    MaxwellBoltzmann,
}

/// Thermal momentum distribution of the environmental gas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentumDistribution {
    pub kind: DistributionKind,
    /// Environmental particle mass (kg).
    pub mass: f64,
    /// Gas temperature (K).
    pub temperature: f64,
}

impl MomentumDistribution {
    pub fn new(kind: DistributionKind, mass: f64, temperature: f64) -> Result<Self> {
        if !(mass > 0.0) {
            return Err(Error::domain("MomentumDistribution", format!("mass must be positive, got {mass}")));
        }
        if !(temperature >= 0.0) {
            return Err(Error::domain("MomentumDistribution", format!("temperature must be non-negative, got {temperature}")));
        }
        if kind == DistributionKind::MaxwellBoltzmann && temperature == 0.0 {
            return Err(Error::domain("MomentumDistribution", "Maxwell-Boltzmann needs T > 0"));
        }
        Ok(MomentumDistribution { kind, mass, temperature })
    }

    pub fn delta(mass: f64, temperature: f64) -> Result<Self> {
        Self::new(DistributionKind::DeltaAtMean, mass, temperature)
    }

    pub fn maxwell_boltzmann(mass: f64, temperature: f64) -> Result<Self> {
        Self::new(DistributionKind::MaxwellBoltzmann, mass, temperature)
    }

    /// `p̄ = √(2 m k_B T)`, the mode of the Maxwell–Boltzmann density.
    pub fn mean_momentum(&self) -> f64 {
        (2.0 * self.mass * K_B * self.temperature).sqrt()
    }

    /// Gaussian width `√(m k_B T)` of the Maxwell–Boltzmann exponent.
    pub fn width(&self) -> f64 {
        (self.mass * K_B * self.temperature).sqrt()
    }

    /// Upper limit of the thermal average, `p̄ + 10·width`.
    pub fn cutoff(&self) -> f64 {
        self.mean_momentum() + 10.0 * self.width()
    }
}

/// Maxwell–Boltzmann density `S(p₀) = 4π p₀² (2π m k_B T)^{-3/2} exp(−p₀²/(2 m k_B T))`.
pub fn momentum_pdf(dist: &MomentumDistribution, p0: f64) -> Result<f64> {
    if dist.kind == DistributionKind::DeltaAtMean {
        return Err(Error::Unsupported {
            op: "momentum_pdf",
            reason: "a delta distribution has no pointwise density".into(),
        });
    }
    if !(p0 >= 0.0) {
        return Err(Error::domain("momentum_pdf", format!("momentum must be non-negative, got {p0}")));
    }
    let mkt = dist.mass * K_B * dist.temperature;
    let norm = 4.0 * std::f64::consts::PI * (2.0 * std::f64::consts::PI * mkt).powf(-1.5);
    Ok(norm * p0 * p0 * (-p0 * p0 / (2.0 * mkt)).exp())
}

/// Relative tolerance of the thermal average.
pub const EXPECTATION_REL_TOL: f64 = 1e-8;
/// Achieved relative error still accepted when the panel budget runs out.
/// Cross sections at `R p₀/ħ ≳ 10⁵` carry sub-ppm ripples with far more
/// oscillations across the thermal range than panels can resolve.
pub const EXPECTATION_ACCEPT_REL: f64 = 1e-6;

/// Thermal average `∫ S(p₀) f(p₀) dp₀`. For the delta distribution this is
/// `f(p̄)`.
pub fn expectation_over_momentum<F>(dist: &MomentumDistribution, mut f: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    match dist.kind {
        DistributionKind::DeltaAtMean => {
            let p = dist.mean_momentum();
            let v = f(p)?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::numeric("expectation_over_momentum", format!("integrand is {v} at p0 = {p:e}")))
            }
        }
        DistributionKind::MaxwellBoltzmann => {
            let pbar = dist.mean_momentum();
            let breaks = [0.0, 0.5 * pbar, pbar, 2.0 * pbar, 4.0 * pbar, dist.cutoff()];
            let integrator = Integrator::new(EXPECTATION_REL_TOL).with_abs_tol(0.0).best_effort();
            let est = integrate_fallible(&integrator, &breaks, |p0| {
                let v = f(p0)?;
                if !v.is_finite() {
                    return Err(Error::numeric("expectation_over_momentum", format!("integrand is {v} at p0 = {p0:e}")));
                }
                Ok(momentum_pdf(dist, p0)? * v)
            })?;
            if !est.converged && est.error > EXPECTATION_ACCEPT_REL * est.value.abs() {
                return Err(Error::numeric(
                    "expectation_over_momentum",
                    format!("thermal average did not converge: {:e} ± {:e}", est.value, est.error),
                ));
            }
            Ok(est.value)
        }
    }
}
