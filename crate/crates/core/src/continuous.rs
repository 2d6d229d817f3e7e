//! Fourier coefficients on the continuum, truncated series, and uniform
//! convergence measurements.
//!
//! On the circle `[-1, 1]` the coefficients are `g^(m) = int g(x) e^{-pi i m x} dx`
//! and the series reads `g(x) = (1/2) sum_m g^(m) e^{pi i m x}`. The factor 1/2
//! is always applied by [`reconstruct`]; there is no unnormalized partial sum.
//!
//! A general period `[a, b]` is handled by [`rescale`], which pulls a function
//! back to the circle by `x = a + L (t + 1) / 2` with `L = b - a`.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::bessel::bessel_i;
use crate::discrete::discrete_coefficient;
use crate::error::{FourierError, Result};
use crate::functions::SmoothPeriodicFunction;
use crate::grid::{sample, Grid, GridFunction};
use crate::sum::{compensated_real_sum, compensated_sum};

/// Terms of the majorant series summed explicitly; the rest is bounded by [`majorant_cutoff_slack`].
pub const MAJORANT_CUTOFF: u64 = 1_000_000;

/// Default number of sampling intervals for sup norms of the truncation error.
pub const DEFAULT_SUP_SAMPLES: usize = 2048;

/// Grid size used when a coefficient has no closed form: `max(64, 16 (|m| + 1))`.
pub fn quadrature_grid_size(m: i64) -> usize {
    let m = m.unsigned_abs().min(1 << 40) as usize;
    64usize.max(16 * (m + 1))
}

/// The grid sum at [`quadrature_grid_size`]. For smooth periodic integrands
/// this converges faster than any power of the grid size.
pub fn quadrature_coefficient(f: &SmoothPeriodicFunction, m: i64) -> Complex64 {
    let grid = Grid::new(quadrature_grid_size(m)).expect("nonzero grid");
    // Evaluation failures propagate as NaN through the sum.
    let gf = GridFunction::from_index_fn(grid, |j| f.eval(grid.point(j)));
    discrete_coefficient(&gf, m).expect("mode lies inside the quadrature grid")
}

/// `g^(m)`: the closed form when the function has one, otherwise [`quadrature_coefficient`].
pub fn coefficient(f: &SmoothPeriodicFunction, m: i64) -> Complex64 {
    f.exact_coefficient(m).unwrap_or_else(|| quadrature_coefficient(f, m))
}

/// `(1/2) sum_{|m| <= N} g^(m) e^{pi i m x}`, with coefficients computed once.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    order: usize,
    coefficients: Vec<Complex64>,
}

impl TruncatedSeries {
    pub fn new(f: &SmoothPeriodicFunction, order: usize) -> Self {
        let n = order as i64;
        TruncatedSeries { order, coefficients: (-n..=n).map(|m| coefficient(f, m)).collect() }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Value at `x` in `[-1, 1]`; `x = 1` is evaluated as `x = -1`.
    pub fn eval(&self, x: f64) -> Complex64 {
        let x = if x == 1.0 { -1.0 } else { x };
        let n = self.order as i64;
        let terms = (-n..=n).zip(&self.coefficients).map(|(m, c)| c * Complex64::cis(PI * x * m as f64));
        0.5 * compensated_sum(terms)
    }
}

/// The normalized partial sum of order `N` at `x`.
pub fn reconstruct(f: &SmoothPeriodicFunction, order: usize, x: f64) -> Complex64 {
    TruncatedSeries::new(f, order).eval(x)
}

/// `max |f(x) - reconstruct(f, N, x)|` over `samples + 1` equispaced points
/// of `[-1, 1]`, both endpoints included.
pub fn sup_error(f: &SmoothPeriodicFunction, order: usize, samples: usize) -> Result<f64> {
    Ok(worst_truncation_error(f, order, samples)?.0)
}

/// Like [`sup_error`], also returning the point where the maximum is attained
/// (the leftmost one on ties).
pub fn worst_truncation_error(f: &SmoothPeriodicFunction, order: usize, samples: usize) -> Result<(f64, f64)> {
    if samples < 2 {
        return Err(FourierError::InvalidParameter(format!("need at least 2 samples, got {samples}")));
    }
    let series = TruncatedSeries::new(f, order);
    let errors: Vec<(f64, f64)> = (0..=samples)
        .into_par_iter()
        .map(|i| {
            let x = -1.0 + 2.0 * i as f64 / samples as f64;
            ((f.eval(x) - series.eval(x)).norm(), x)
        })
        .collect();
    Ok(errors.into_iter().fold((f64::NEG_INFINITY, -1.0), |best, e| if e.0 > best.0 { e } else { best }))
}

/// `2H / MAJORANT_CUTOFF`, which dominates the discarded tail
/// `(1/2) sum_{|m| > cutoff} H/m^2 < H / cutoff`.
pub fn majorant_cutoff_slack(decay: f64) -> f64 {
    2.0 * decay / MAJORANT_CUTOFF as f64
}

/// Uniform bound on the truncation error from `|g^(m)| <= H/m^2`:
/// `(1/2) sum_{N < |m| <= 10^6} H/m^2` plus [`majorant_cutoff_slack`].
pub fn m_test_majorant(decay: f64, order: usize) -> Result<f64> {
    if order < 1 {
        return Err(FourierError::InvalidParameter("majorant needs truncation order N >= 1".into()));
    }
    if !(decay >= 0.0 && decay.is_finite()) {
        return Err(FourierError::InvalidParameter(format!("decay constant must be nonnegative, got {decay}")));
    }
    // The two signs of m cancel the factor 1/2. Smallest terms first.
    let tail = compensated_real_sum(((order as u64 + 1)..=MAJORANT_CUTOFF).rev().map(|m| {
        let m = m as f64;
        1.0 / (m * m)
    }));
    Ok(decay * tail + majorant_cutoff_slack(decay))
}

/// One line of a convergence table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    /// Truncation order `N`.
    #[serde(rename = "N")]
    pub order: usize,
    pub sup_error: f64,
    pub m_test_bound: f64,
}

/// `|g^_n(m) - g^(m)|`: how far the grid coefficient is from the continuum one.
pub fn discrete_to_continuous_gap(f: &SmoothPeriodicFunction, m: i64, n: usize) -> Result<f64> {
    let grid = Grid::new(n)?;
    grid.check_index("mode", m)?;
    let gf = sample(f, grid)?;
    Ok((discrete_coefficient(&gf, m)? - coefficient(f, m)).norm())
}

/// `|int_grid g - int_{-1}^{1} g|`.
pub fn integral_gap(f: &SmoothPeriodicFunction, n: usize) -> Result<f64> {
    let gf = sample(f, Grid::new(n)?)?;
    Ok((gf.integrate() - coefficient(f, 0)).norm())
}

type PointFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;
type CoefficientFn = Arc<dyn Fn(i64) -> Complex64 + Send + Sync>;

/// A smooth function on an interval `[a, b]`, periodic across its endpoints.
#[derive(Clone)]
pub struct IntervalFunction {
    name: String,
    eval: PointFn,
    d1: PointFn,
    d2: PointFn,
    exact: Option<CoefficientFn>,
}

impl std::fmt::Debug for IntervalFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IntervalFunction").field("name", &self.name).finish_non_exhaustive()
    }
}

impl IntervalFunction {
    pub fn new<F, F1, F2>(name: impl Into<String>, eval: F, d1: F1, d2: F2) -> Self
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
        F1: Fn(f64) -> Complex64 + Send + Sync + 'static,
        F2: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        IntervalFunction { name: name.into(), eval: Arc::new(eval), d1: Arc::new(d1), d2: Arc::new(d2), exact: None }
    }

    /// Closed-form interval coefficients `(1/L) int_a^b g e^{-2 pi i m x/L} dx`.
    pub fn with_exact_coefficients<C>(mut self, coefficients: C) -> Self
    where
        C: Fn(i64) -> Complex64 + Send + Sync + 'static,
    {
        self.exact = Some(Arc::new(coefficients));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        (self.eval)(x)
    }
}

/// `cos(2 pi (x - a) / L)` on `[a, b]`.
pub fn cos_period(a: f64, b: f64) -> IntervalFunction {
    let w = 2.0 * PI / (b - a);
    IntervalFunction::new(
        "cos-period",
        move |x| Complex64::new((w * (x - a)).cos(), 0.0),
        move |x| Complex64::new(-w * (w * (x - a)).sin(), 0.0),
        move |x| Complex64::new(-w * w * (w * (x - a)).cos(), 0.0),
    )
    .with_exact_coefficients(move |m| match m {
        1 | -1 => 0.5 * Complex64::cis(-(m as f64) * w * a),
        _ => Complex64::new(0.0, 0.0),
    })
}

/// `exp(cos(2 pi (x - a) / L))` on `[a, b]`, with coefficients `I_m(1) e^{-2 pi i m a/L}`.
pub fn exp_cos_period(a: f64, b: f64) -> IntervalFunction {
    let w = 2.0 * PI / (b - a);
    IntervalFunction::new(
        "exp-cos-period",
        move |x| Complex64::new((w * (x - a)).cos().exp(), 0.0),
        move |x| {
            let t = w * (x - a);
            Complex64::new(-w * t.sin() * t.cos().exp(), 0.0)
        },
        move |x| {
            let (s, c) = (w * (x - a)).sin_cos();
            Complex64::new(w * w * (s * s - c) * c.exp(), 0.0)
        },
    )
    .with_exact_coefficients(move |m| bessel_i(m, 1.0) * Complex64::cis(-(m as f64) * w * a))
}

/// Looks up `cos-period` or `exp-cos-period` on `[a, b]`.
pub fn interval_function_from_name(name: &str, a: f64, b: f64) -> Result<IntervalFunction> {
    match name {
        "cos-period" => Ok(cos_period(a, b)),
        "exp-cos-period" => Ok(exp_cos_period(a, b)),
        other => Err(FourierError::UnknownFunction(other.to_owned())),
    }
}

/// Periodicity defect tolerated by [`rescale`].
pub const PERIODICITY_TOLERANCE: f64 = 1e-12;

/// A function on `[a, b]` together with its pull-back to the circle.
///
/// Interval coefficients relate to circle coefficients of the pull-back `p` by
/// `g^_[a,b](m) = (1/2) e^{-pi i m (2a/L + 1)} p^(m)`: the same mode, a phase
/// for the shifted origin and the factor 1/2 from the normalization `1/L`.
#[derive(Clone, Debug)]
pub struct Rescaled {
    a: f64,
    b: f64,
    original: IntervalFunction,
    pulled: SmoothPeriodicFunction,
}

/// Pulls `f` on `[a, b]` back to the circle through `x = a + L (t + 1) / 2`.
pub fn rescale(f: &IntervalFunction, a: f64, b: f64) -> Result<Rescaled> {
    if !(a.is_finite() && b.is_finite() && b > a) {
        return Err(FourierError::EmptyInterval { a, b });
    }
    let gap = (f.eval(a) - f.eval(b)).norm();
    if gap.is_nan() || gap > PERIODICITY_TOLERANCE {
        return Err(FourierError::NotPeriodic { name: f.name.clone(), gap });
    }
    let half = 0.5 * (b - a);
    let to_x = move |t: f64| a + half * (t + 1.0);
    let (g, g1, g2) = (f.eval.clone(), f.d1.clone(), f.d2.clone());
    let mut pulled = SmoothPeriodicFunction::new(
        format!("{}@[{a},{b}]", f.name),
        move |t| g(to_x(t)),
        move |t| half * g1(to_x(t)),
        move |t| half * half * g2(to_x(t)),
    );
    if let Some(exact) = f.exact.clone() {
        let shift = 2.0 * a / (b - a) + 1.0;
        pulled = pulled.with_exact_coefficients(move |m| 2.0 * Complex64::cis(PI * m as f64 * shift) * exact(m));
    }
    Ok(Rescaled { a, b, original: f.clone(), pulled })
}

impl Rescaled {
    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    pub fn original(&self) -> &IntervalFunction {
        &self.original
    }

    /// The pulled-back function on the circle.
    pub fn pulled(&self) -> &SmoothPeriodicFunction {
        &self.pulled
    }

    /// Circle coordinate of `x` in `[a, b]`.
    pub fn to_circle(&self, x: f64) -> f64 {
        2.0 * (x - self.a) / self.length() - 1.0
    }

    /// `(1/L) int_a^b g(x) e^{-2 pi i m x / L} dx`.
    pub fn coefficient(&self, m: i64) -> Complex64 {
        let shift = 2.0 * self.a / self.length() + 1.0;
        0.5 * Complex64::cis(-PI * m as f64 * shift) * coefficient(&self.pulled, m)
    }

    /// `sum_{|m| <= N} g^_[a,b](m) e^{2 pi i m x / L}`, with no factor 1/2.
    pub fn reconstruct(&self, order: usize, x: f64) -> Complex64 {
        self.series(order).eval(x)
    }

    pub fn series(&self, order: usize) -> IntervalSeries {
        let n = order as i64;
        IntervalSeries { length: self.length(), order, coefficients: (-n..=n).map(|m| self.coefficient(m)).collect() }
    }
}

/// A truncated series on `[a, b]` with precomputed coefficients.
#[derive(Clone, Debug)]
pub struct IntervalSeries {
    length: f64,
    order: usize,
    coefficients: Vec<Complex64>,
}

impl IntervalSeries {
    pub fn eval(&self, x: f64) -> Complex64 {
        let n = self.order as i64;
        let w = 2.0 * PI * x / self.length;
        compensated_sum((-n..=n).zip(&self.coefficients).map(|(m, c)| c * Complex64::cis(w * m as f64)))
    }
}
