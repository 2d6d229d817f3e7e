//! Smooth periodic test functions on the circle `[-1, 1]` (endpoints
//! identified), their derivatives, closed-form Fourier coefficients where
//! known, and the norm constants that drive the coefficient decay bounds.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::bessel::bessel_i;
use crate::error::{FourierError, Result};
use crate::sum::compensated_real_sum;

type PointFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;
type CoefficientFn = Arc<dyn Fn(i64) -> Complex64 + Send + Sync>;

/// Largest `|k|` accepted by [`trig_monomial`] and the `trig:k`/`cos:k` names.
pub const MAX_MODE: i64 = 1_000_000;

/// Points used for sup norms: `DENSE_SAMPLES + 1` equispaced points of `[-1, 1]`.
pub const DENSE_SAMPLES: usize = 4096;

/// Composite Simpson subintervals used for `L^1` norms.
pub const SIMPSON_PANELS: usize = 4096;

/// A smooth function `g` on the circle together with `g'` and `g''`.
///
/// Cloning is cheap: the evaluators are shared.
#[derive(Clone)]
pub struct SmoothPeriodicFunction {
    name: String,
    eval: PointFn,
    d1: PointFn,
    d2: PointFn,
    exact: Option<CoefficientFn>,
    endpoint: Complex64,
}

impl fmt::Debug for SmoothPeriodicFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SmoothPeriodicFunction")
            .field("name", &self.name)
            .field("endpoint_value", &self.endpoint)
            .field("exact_coefficients", &self.exact.is_some())
            .finish()
    }
}

impl SmoothPeriodicFunction {
    /// A function from its value, first and second derivative evaluators.
    ///
    /// The endpoint value is taken as `eval(1)`.
    pub fn new<F, F1, F2>(name: impl Into<String>, eval: F, d1: F1, d2: F2) -> Self
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
        F1: Fn(f64) -> Complex64 + Send + Sync + 'static,
        F2: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        let endpoint = eval(1.0);
        SmoothPeriodicFunction {
            name: name.into(),
            eval: Arc::new(eval),
            d1: Arc::new(d1),
            d2: Arc::new(d2),
            exact: None,
            endpoint,
        }
    }

    /// Attaches a closed-form coefficient map `m -> g^(m)`.
    pub fn with_exact_coefficients<C>(mut self, coefficients: C) -> Self
    where
        C: Fn(i64) -> Complex64 + Send + Sync + 'static,
    {
        self.exact = Some(Arc::new(coefficients));
        self
    }

    /// Overrides the common endpoint value `g(-1) = g(1)` with an exact one.
    pub fn with_endpoint_value(mut self, value: Complex64) -> Self {
        self.endpoint = value;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        (self.eval)(x)
    }

    pub fn d1(&self, x: f64) -> Complex64 {
        (self.d1)(x)
    }

    pub fn d2(&self, x: f64) -> Complex64 {
        (self.d2)(x)
    }

    pub fn has_exact_coefficients(&self) -> bool {
        self.exact.is_some()
    }

    /// `g^(m) = int_{-1}^{1} g(x) exp(-pi i m x) dx`, when a closed form is known.
    pub fn exact_coefficient(&self, m: i64) -> Option<Complex64> {
        self.exact.as_ref().map(|c| c(m))
    }

    /// The common value `g(-1) = g(1)`.
    pub fn endpoint_value(&self) -> Complex64 {
        self.endpoint
    }

    /// `g - c`. The zero mode of the exact coefficients drops by `2c`.
    pub fn shifted(&self, c: Complex64) -> Self {
        let g = self.eval.clone();
        let mut out = SmoothPeriodicFunction {
            name: format!("({})-({})", self.name, format_coefficient(c)),
            eval: Arc::new(move |x| g(x) - c),
            d1: self.d1.clone(),
            d2: self.d2.clone(),
            exact: None,
            endpoint: self.endpoint - c,
        };
        if let Some(exact) = self.exact.clone() {
            out.exact = Some(Arc::new(move |m| if m == 0 { exact(0) - 2.0 * c } else { exact(m) }));
        }
        out
    }

    /// `s * g`.
    pub fn scaled(&self, s: Complex64) -> Self {
        combine(&[(s, self.clone())]).expect("single-term combination is never empty")
    }
}

/// `exp(pi i k x)`, with `g^(m) = 2` at `m = k` and 0 elsewhere.
///
/// Panics if `|k|` exceeds [`MAX_MODE`].
pub fn trig_monomial(k: i64) -> SmoothPeriodicFunction {
    assert!(k.abs() <= MAX_MODE, "trig monomial order {k} exceeds {MAX_MODE}");
    let w = std::f64::consts::PI * k as f64;
    SmoothPeriodicFunction::new(
        format!("trig:{k}"),
        move |x| Complex64::cis(w * x),
        move |x| Complex64::new(0.0, w) * Complex64::cis(w * x),
        move |x| -w * w * Complex64::cis(w * x),
    )
    .with_exact_coefficients(move |m| Complex64::new(if m == k { 2.0 } else { 0.0 }, 0.0))
    .with_endpoint_value(Complex64::new(parity(k), 0.0))
}

/// `cos(pi k x)` for `k >= 1`, with `g^(+-k) = 1`.
pub fn cosine(k: u32) -> SmoothPeriodicFunction {
    assert!(k >= 1, "cosine order must be positive");
    assert!(i64::from(k) <= MAX_MODE, "cosine order {k} exceeds {MAX_MODE}");
    let k = i64::from(k);
    let w = std::f64::consts::PI * k as f64;
    SmoothPeriodicFunction::new(
        format!("cos:{k}"),
        move |x| Complex64::new((w * x).cos(), 0.0),
        move |x| Complex64::new(-w * (w * x).sin(), 0.0),
        move |x| Complex64::new(-w * w * (w * x).cos(), 0.0),
    )
    .with_exact_coefficients(move |m| Complex64::new(if m.abs() == k { 1.0 } else { 0.0 }, 0.0))
    .with_endpoint_value(Complex64::new(parity(k), 0.0))
}

/// `exp(cos(pi x))`, whose coefficients are `2 I_m(1)`.
pub fn exp_cos() -> SmoothPeriodicFunction {
    use std::f64::consts::PI;
    SmoothPeriodicFunction::new(
        "expcos",
        |x| Complex64::new((PI * x).cos().exp(), 0.0),
        |x| Complex64::new(-PI * (PI * x).sin() * (PI * x).cos().exp(), 0.0),
        |x| {
            let (s, c) = (PI * x).sin_cos();
            Complex64::new(PI * PI * (s * s - c) * c.exp(), 0.0)
        },
    )
    .with_exact_coefficients(|m| Complex64::new(2.0 * bessel_i(m, 1.0), 0.0))
    .with_endpoint_value(Complex64::new((-1.0f64).exp(), 0.0))
}

/// The constant function `c`; same as `trig_monomial(0)` scaled by `c`.
pub fn constant(c: Complex64) -> SmoothPeriodicFunction {
    let zero = Complex64::new(0.0, 0.0);
    SmoothPeriodicFunction::new(format_coefficient(c), move |_| c, move |_| zero, move |_| zero)
        .with_exact_coefficients(move |m| if m == 0 { 2.0 * c } else { zero })
        .with_endpoint_value(c)
}

/// Pointwise linear combination `sum_i c_i g_i`.
///
/// Exact coefficients are carried over only when every part has them.
pub fn combine(terms: &[(Complex64, SmoothPeriodicFunction)]) -> Result<SmoothPeriodicFunction> {
    if terms.is_empty() {
        return Err(FourierError::InvalidParameter("cannot combine an empty list of functions".into()));
    }
    let name = format!(
        "combo:{}",
        terms.iter().map(|(c, f)| format!("{}*{}", format_coefficient(*c), f.name)).collect::<Vec<_>>().join(";")
    );
    let parts: Arc<[(Complex64, SmoothPeriodicFunction)]> = terms.into();
    let sum_of = |pick: fn(&SmoothPeriodicFunction, f64) -> Complex64| {
        let parts = parts.clone();
        move |x: f64| parts.iter().map(|(c, f)| c * pick(f, x)).sum::<Complex64>()
    };
    let endpoint = terms.iter().map(|(c, f)| c * f.endpoint).sum();
    let mut out = SmoothPeriodicFunction {
        name,
        eval: Arc::new(sum_of(|f, x| f.eval(x))),
        d1: Arc::new(sum_of(|f, x| f.d1(x))),
        d2: Arc::new(sum_of(|f, x| f.d2(x))),
        exact: None,
        endpoint,
    };
    if terms.iter().all(|(_, f)| f.exact.is_some()) {
        let parts = parts.clone();
        out.exact =
            Some(Arc::new(move |m| parts.iter().map(|(c, f)| c * f.exact_coefficient(m).unwrap_or_default()).sum()));
    }
    Ok(out)
}

/// Looks up a catalog function by name.
///
/// Recognized names: `trig:k` (`|k| <= 10^6`), `cos:k` (`k >= 1`), `expcos`,
/// and `combo:c1*name1;c2*name2;...` where each coefficient is a real number
/// or `re@im`. Combinations do not nest.
pub fn from_name(name: &str) -> Result<SmoothPeriodicFunction> {
    parse_name(name.trim(), true)
}

fn parse_name(name: &str, allow_combo: bool) -> Result<SmoothPeriodicFunction> {
    let unknown = || FourierError::UnknownFunction(name.to_owned());
    if name == "expcos" {
        return Ok(exp_cos());
    }
    let (kind, arg) = name.split_once(':').ok_or_else(unknown)?;
    match kind {
        "trig" => {
            let k: i64 = arg.parse().map_err(|_| unknown())?;
            if k.abs() > MAX_MODE {
                return Err(unknown());
            }
            Ok(trig_monomial(k))
        }
        "cos" => {
            let k: u32 = arg.parse().map_err(|_| unknown())?;
            if k == 0 || i64::from(k) > MAX_MODE {
                return Err(unknown());
            }
            Ok(cosine(k))
        }
        "combo" if allow_combo => {
            let terms = arg
                .split(';')
                .map(|term| {
                    let (c, f) = term.split_once('*').ok_or_else(unknown)?;
                    Ok((parse_coefficient(c).ok_or_else(unknown)?, parse_name(f.trim(), false)?))
                })
                .collect::<Result<Vec<_>>>()?;
            combine(&terms)
        }
        _ => Err(unknown()),
    }
}

fn parse_coefficient(s: &str) -> Option<Complex64> {
    let s = s.trim();
    let (re, im) = match s.split_once('@') {
        Some((re, im)) => (re.parse().ok()?, im.parse().ok()?),
        None => (s.parse().ok()?, 0.0),
    };
    let c = Complex64::new(re, im);
    (c.re.is_finite() && c.im.is_finite()).then_some(c)
}

fn format_coefficient(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else {
        format!("{}@{}", c.re, c.im)
    }
}

fn parity(k: i64) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Sup and `L^1` norms of a function and its derivatives, at fixed resolution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FunctionNorms {
    /// `sup |g|` over the dense sample.
    pub sup_norm: f64,
    /// `sup |g'|` over the dense sample.
    pub slope_sup_norm: f64,
    /// `int_{-1}^{1} |g''|` by composite Simpson.
    pub curvature_l1_norm: f64,
}

/// Norms of `f` itself: sup norms over `DENSE_SAMPLES + 1` equispaced points
/// and the `L^1` norm of `f''` on `SIMPSON_PANELS` Simpson subintervals.
pub fn norms(f: &SmoothPeriodicFunction) -> Result<FunctionNorms> {
    let point = |i: usize, count: usize| -1.0 + 2.0 * i as f64 / count as f64;
    let finite = |v: Complex64, x: f64| {
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v.norm())
        } else {
            Err(FourierError::NonFinite { name: f.name().to_owned(), x })
        }
    };

    let mut sup_norm = 0.0f64;
    let mut slope_sup_norm = 0.0f64;
    for i in 0..=DENSE_SAMPLES {
        let x = point(i, DENSE_SAMPLES);
        sup_norm = sup_norm.max(finite(f.eval(x), x)?);
        slope_sup_norm = slope_sup_norm.max(finite(f.d1(x), x)?);
    }

    let curvature = (0..=SIMPSON_PANELS)
        .map(|i| {
            let x = point(i, SIMPSON_PANELS);
            finite(f.d2(x), x)
        })
        .collect::<Result<Vec<_>>>()?;
    let weight = |i: usize| match i {
        0 => 1.0,
        i if i == SIMPSON_PANELS => 1.0,
        i if i % 2 == 1 => 4.0,
        _ => 2.0,
    };
    let step = 2.0 / SIMPSON_PANELS as f64;
    let curvature_l1_norm = step / 3.0 * compensated_real_sum(curvature.iter().enumerate().map(|(i, y)| weight(i) * y));

    Ok(FunctionNorms { sup_norm, slope_sup_norm, curvature_l1_norm })
}

/// The explicit constants of the coefficient decay bound.
///
/// All norms are of `h = g - c` with `c` the common endpoint value, so that
/// `h(-1) = h(1) = 0`. Then `|h^''_n(m)| <= M + 2B`, `|F_n(m)| <= 5D`, and
/// `|g^_n(m)| <= H / m^2` for every `m != 0` and every grid size `n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundConstants {
    /// `B = sup |h|`.
    pub sup_norm: f64,
    /// `D = sup |h'|`.
    pub slope_sup_norm: f64,
    /// `M = ||h''||_1`.
    pub curvature_l1_norm: f64,
    /// `W = M + 2B + 5D`.
    pub combined: f64,
    /// `H = W / 4`.
    pub decay: f64,
}

impl BoundConstants {
    pub fn from_norms(norms: FunctionNorms) -> Self {
        let FunctionNorms { sup_norm, slope_sup_norm, curvature_l1_norm } = norms;
        let combined = curvature_l1_norm + 2.0 * sup_norm + 5.0 * slope_sup_norm;
        BoundConstants { sup_norm, slope_sup_norm, curvature_l1_norm, combined, decay: combined / 4.0 }
    }
}

/// Computes `B, D, M, W, H` for `f` after subtracting its endpoint value.
pub fn bound_constants(f: &SmoothPeriodicFunction) -> Result<BoundConstants> {
    let h = f.shifted(f.endpoint_value());
    Ok(BoundConstants::from_norms(norms(&h)?))
}
