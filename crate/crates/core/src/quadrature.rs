//! Adaptive Gauss–Kronrod quadrature (10-point Gauss embedded in a 21-point
//! Kronrod rule) with global bisection of the worst interval.
//!
//! Every cross-section oracle and thermal average in the crate goes through
//! [`Integrator`]. The error estimate follows the QUADPACK `qk21` scaling.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::numeric::Real;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_980_430_710,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for the odd-indexed Kronrod abscissae.
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    /// Estimated absolute error.
    pub error: T,
    pub evaluations: usize,
    pub intervals: usize,
    /// False only for best-effort integrations that hit the interval limit.
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
struct Panel<T> {
    a: T,
    b: T,
    value: T,
    error: T,
    resabs: T,
}

impl<T: Real> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T: Real> Eq for Panel<T> {}
impl<T: Real> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Real> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.partial_cmp(&other.error).unwrap_or(Ordering::Equal)
    }
}

/// One application of the 21-point Kronrod rule on `[a, b]`.
fn kronrod21<T: Real, F: FnMut(T) -> T>(f: &mut F, a: T, b: T) -> Result<Panel<T>> {
    let half = T::lit(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let abs_half = half_len.abs();

    let mut eval = |x: T| -> Result<T> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::numeric("quadrature", format!("integrand is {y} at x = {x}")))
        }
    };

    let fc = eval(center)?;
    let mut res_k = fc * T::lit(WGK[10]);
    let mut res_g = T::zero();
    let mut res_abs = res_k.abs();
    let mut fv1 = [T::zero(); 10];
    let mut fv2 = [T::zero(); 10];

    for j in 0..10 {
        let dx = half_len * T::lit(XGK[j]);
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        let w = T::lit(WGK[j]);
        res_k = res_k + w * (f1 + f2);
        res_abs = res_abs + w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g = res_g + T::lit(WG[j / 2]) * (f1 + f2);
        }
    }

    let mean = res_k * half;
    let mut res_asc = T::lit(WGK[10]) * (fc - mean).abs();
    for j in 0..10 {
        res_asc = res_asc + T::lit(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = res_k * half_len;
    let res_abs = res_abs * abs_half;
    let res_asc = res_asc * abs_half;
    let mut err = ((res_k - res_g) * half_len).abs();
    if res_asc != T::zero() && err != T::zero() {
        let scale = (T::lit(200.0) * err / res_asc).powf(T::lit(1.5));
        err = if scale < T::one() { res_asc * scale } else { res_asc };
    }
    let eps = T::epsilon();
    if res_abs > T::min_positive_value() / (T::lit(50.0) * eps) {
        err = err.max(T::lit(50.0) * eps * res_abs);
    }
    Ok(Panel { a, b, value, error: err, resabs: res_abs })
}

/// Adaptive integrator with relative and absolute tolerances.
#[derive(Debug, Clone, Copy)]
pub struct Integrator<T> {
    pub rel_tol: T,
    pub abs_tol: T,
    pub max_intervals: usize,
    /// Return the current estimate instead of an error when the interval
    /// limit is reached.
    pub best_effort: bool,
}

impl<T: Real> Default for Integrator<T> {
    fn default() -> Self {
        Integrator { rel_tol: T::lit(1e-10), abs_tol: T::zero(), max_intervals: 20_000, best_effort: false }
    }
}

impl<T: Real> Integrator<T> {
    pub fn new(rel_tol: T) -> Self {
        Integrator { rel_tol, ..Default::default() }
    }

    pub fn with_abs_tol(mut self, abs_tol: T) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_max_intervals(mut self, n: usize) -> Self {
        self.max_intervals = n;
        self
    }

    pub fn best_effort(mut self) -> Self {
        self.best_effort = true;
        self
    }

    pub fn integrate<F: FnMut(T) -> T>(&self, f: F, a: T, b: T) -> Result<Estimate<T>> {
        self.integrate_with_breaks(f, &[a, b])
    }

    /// Integrates over `[points[0], points[last]]`, starting from the panels
    /// delimited by `points` (which must be non-decreasing). Zero-width panels
    /// are skipped.
    pub fn integrate_with_breaks<F: FnMut(T) -> T>(&self, mut f: F, points: &[T]) -> Result<Estimate<T>> {
        if points.len() < 2 {
            return Err(Error::domain("quadrature", "need at least two break points"));
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::domain("quadrature", "integration limits must be finite"));
        }
        if points.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::domain("quadrature", "break points must be non-decreasing"));
        }

        let mut heap = BinaryHeap::new();
        let mut evaluations = 0usize;
        for w in points.windows(2) {
            if w[1] > w[0] {
                heap.push(kronrod21(&mut f, w[0], w[1])?);
                evaluations += 21;
            }
        }
        if heap.is_empty() {
            return Ok(Estimate { value: T::zero(), error: T::zero(), evaluations: 0, intervals: 0, converged: true });
        }

        let total = |heap: &BinaryHeap<Panel<T>>| {
            heap.iter().fold((T::zero(), T::zero(), T::zero()), |(v, e, r), p| {
                (v + p.value, e + p.error, r + p.resabs)
            })
        };
        let (mut value, mut error, mut resabs) = total(&heap);
        let limit = self.max_intervals.max(heap.len());
        let roundoff = T::lit(100.0) * T::epsilon();

        loop {
            let target = self.abs_tol.max(self.rel_tol * value.abs()).max(roundoff * resabs);
            if error <= target {
                break;
            }
            if heap.len() >= limit {
                if self.best_effort {
                    let (value, error, _) = total(&heap);
                    return Ok(Estimate { value, error, evaluations, intervals: heap.len(), converged: false });
                }
                return Err(Error::numeric(
                    "quadrature",
                    format!(
                        "no convergence after {} intervals: estimate {value:e}, achieved error {error:e} \
                         (relative {:e}), requested {target:e}",
                        heap.len(),
                        (error / value.abs()).to_f64_lossy()
                    ),
                ));
            }
            let worst = heap.pop().expect("non-empty heap");
            let mid = T::lit(0.5) * (worst.a + worst.b);
            if !(mid > worst.a && mid < worst.b) {
                // interval exhausted at machine resolution
                heap.push(worst);
                return Err(Error::numeric(
                    "quadrature",
                    format!("interval collapsed at x = {:e}; achieved error {error:e}", worst.a),
                ));
            }
            let left = kronrod21(&mut f, worst.a, mid)?;
            let right = kronrod21(&mut f, mid, worst.b)?;
            evaluations += 42;
            value = value - worst.value + left.value + right.value;
            error = error - worst.error + left.error + right.error;
            resabs = resabs - worst.resabs + left.resabs + right.resabs;
            heap.push(left);
            heap.push(right);
            if heap.len() % 64 == 0 {
                (value, error, resabs) = total(&heap);
            }
        }

        let (value, error, _) = total(&heap);
        Ok(Estimate { value, error, evaluations, intervals: heap.len(), converged: true })
    }
}

/// Integrates a fallible integrand, surfacing the first error it raises.
pub fn integrate_fallible<T, F>(integrator: &Integrator<T>, points: &[T], mut f: F) -> Result<Estimate<T>>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    let mut first_err: Option<Error> = None;
    let out = integrator.integrate_with_breaks(
        |x| match f(x) {
            Ok(v) => v,
            Err(e) => {
                first_err.get_or_insert(e);
                T::zero()
            }
        },
        points,
    );
    match first_err {
        Some(e) => Err(e),
        None => out,
    }
}

/// Break points splitting `[a, b]` into `n` equal panels.
pub fn uniform_breaks<T: Real>(a: T, b: T, n: usize) -> Vec<T> {
    let n = n.max(1);
    let step = (b - a) / T::from_usize(n).expect("panel count");
    (0..=n)
        .map(|i| if i == n { b } else { a + step * T::from_usize(i).expect("panel index") })
        .collect()
}
