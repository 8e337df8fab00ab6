//! Scalar abstraction shared by the dimensionless numerics.
//!
//! Special functions and the quadrature engine are written against [`Real`] so
//! they run in `f32` or `f64`. The SI physics layers stay in `f64`: products
//! such as `ħ² ε₀²` sit far below the `f32` normal range.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point scalar usable by the generic numerics.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + std::fmt::LowerExp + Send + Sync + 'static
{
    /// Euler–Mascheroni constant.
    fn euler_gamma() -> Self;

    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {
    #[inline]
    fn euler_gamma() -> Self {
        0.577_215_7
    }
}

impl Real for f64 {
    #[inline]
    fn euler_gamma() -> Self {
        0.577_215_664_901_532_9
    }
}

/// `count` points evenly spaced in log10 between `lo` and `hi` inclusive.
pub fn logspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.log10(), hi.log10());
            let step = (b - a) / (count - 1) as f64;
            (0..count)
                .map(|i| {
                    if i == count - 1 {
                        hi
                    } else {
                        10f64.powf(a + step * i as f64)
                    }
                })
                .collect()
        }
    }
}

/// `count` points evenly spaced between `lo` and `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (count - 1) as f64;
            (0..count)
                .map(|i| if i == count - 1 { hi } else { lo + step * i as f64 })
                .collect()
        }
    }
}

/// Relative difference `|a - b| / |b|`, falling back to the absolute
/// difference when `b` is zero.
pub fn rel_diff(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        (a - b).abs()
    } else {
        ((a - b) / b).abs()
    }
}
