//! Boundary terms of discrete integration by parts, the resulting
//! coefficient identities, and the explicit decay and tail bounds built on
//! them.
//!
//! With the non-wrapping difference operator, one summation by parts gives
//!
//! ```text
//! psi_n(m) g^(m)   = g'^(m)  + E_n(m)
//! psi_n(m)^2 g^(m) = g''^(m) + F_n(m)
//! ```
//!
//! where `phi_n(m) = n (exp(-pi i m/n) - 1)`, `psi_n(m) = n (exp(pi i m/n) - 1)`
//! and `E`, `F` collect the boundary values of `g` and `g'` at `-1` and
//! `(n-1)/n`. Since `|psi_n(m)|^2 >= 4 m^2`, a uniform bound on `g''^` and `F`
//! yields `|g^(m)| <= H / m^2` independently of `n`.

use num_complex::Complex64;
use serde::Serialize;

use crate::calculus::derivative;
use crate::discrete::{discrete_coefficients, root_of_unity, Spectrum};
use crate::error::{FourierError, Result};
use crate::functions::{norms, FunctionNorms, SmoothPeriodicFunction};
use crate::grid::{sample, Grid, GridFunction};
use crate::sum::compensated_real_sum;

/// Endpoint magnitude accepted as zero by [`unifbounded_checks`].
pub const ENDPOINT_TOLERANCE: f64 = 1e-12;

/// Additive slack on both uniform bounds in [`unifbounded_checks`].
pub const UNIFORM_BOUND_SLACK: f64 = 1e-9;

/// With `H = 0`, coefficients at or below this level count as zero.
pub const ZERO_COEFFICIENT_LEVEL: f64 = 1e-12;

/// `phi_n(m) = n (exp(-pi i m/n) - 1)`.
pub fn phi(n: usize, m: i64) -> Complex64 {
    n as f64 * (root_of_unity(n, -m) - 1.0)
}

/// `psi_n(m) = n (exp(pi i m/n) - 1)`, the conjugate of `phi_n(m)`.
pub fn psi(n: usize, m: i64) -> Complex64 {
    n as f64 * (root_of_unity(n, m) - 1.0)
}

/// The boundary terms for one mode `m`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundaryTerms {
    pub m: i64,
    /// `C = g((n-1)/n) e(-(n-1)m/n) - g(-1) e(m)`
    pub c: Complex64,
    /// `D = -(1/n) g(-1) e(m/n) e(m)`
    pub d: Complex64,
    /// `C' = -g'(-1) e(m)`
    pub c_prime: Complex64,
    /// `D' = -(1/n) g'(-1) e(m/n) e(m)`
    pub d_prime: Complex64,
    /// `E = phi D - C`
    pub e: Complex64,
    /// `F = psi phi D - psi C + phi D' - C'`
    pub f: Complex64,
}

impl BoundaryTerms {
    /// `E' = phi D' - C'`, the first-derivative analogue of `E`.
    pub fn e_prime(&self, n: usize) -> Complex64 {
        phi(n, self.m) * self.d_prime - self.c_prime
    }
}

/// Boundary terms of `gf` at mode `m`, `-n <= m <= n-1`. Here `e(t)` stands
/// for `exp(pi i t)`, and `g'` is the discrete derivative.
pub fn boundary_terms(gf: &GridFunction, m: i64) -> Result<BoundaryTerms> {
    let grid = gf.grid();
    grid.check_index("mode", m)?;
    Ok(boundary_terms_unchecked(gf, grid, m))
}

fn boundary_terms_unchecked(gf: &GridFunction, grid: Grid, m: i64) -> BoundaryTerms {
    let n = grid.n();
    let n_i = n as i64;
    let first = grid.first_index();
    let g_first = gf.at(first);
    let g_last = gf.at(grid.last_index());
    // g' at -1; every grid has at least two points.
    let slope_first = n as f64 * (gf.at(first + 1) - g_first);

    let at_last = root_of_unity(n, -(n_i - 1) * m);
    let at_first = root_of_unity(n, n_i * m);
    let step = root_of_unity(n, m);
    let inv_n = 1.0 / n as f64;

    let c = g_last * at_last - g_first * at_first;
    let d = -inv_n * g_first * step * at_first;
    let c_prime = -slope_first * at_first;
    let d_prime = -inv_n * slope_first * step * at_first;
    let (ph, ps) = (phi(n, m), psi(n, m));
    let e = ph * d - c;
    let f = ps * ph * d - ps * c + ph * d_prime - c_prime;
    BoundaryTerms { m, c, d, c_prime, d_prime, e, f }
}

/// Spectra of `g`, `g'` and `g''`, computed once and reused for every mode.
#[derive(Clone, Debug)]
pub struct DftIdentity {
    gf: GridFunction,
    spectrum: Spectrum,
    first: Spectrum,
    second: Spectrum,
}

impl DftIdentity {
    pub fn new(gf: &GridFunction) -> Self {
        let d1 = derivative(gf);
        let d2 = derivative(&d1);
        DftIdentity {
            gf: gf.clone(),
            spectrum: discrete_coefficients(gf),
            first: discrete_coefficients(&d1),
            second: discrete_coefficients(&d2),
        }
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// Coefficients of the second discrete derivative.
    pub fn second_derivative_spectrum(&self) -> &Spectrum {
        &self.second
    }

    /// `(r1, r2)` with `r1 = g^ - (g'^ + E)/psi` and `r2 = g^ - (g''^ + F)/psi^2`.
    ///
    /// Both are formed multiplied through, `(psi g^ - (g'^ + E)) / psi`, so the
    /// reported value is the identity's defect rather than a difference of
    /// two large quotients.
    pub fn residuals(&self, m: i64) -> Result<(Complex64, Complex64)> {
        let grid = self.gf.grid();
        grid.check_index("mode", m)?;
        if m == 0 {
            return Err(FourierError::ZeroMode);
        }
        let terms = boundary_terms_unchecked(&self.gf, grid, m);
        let ps = psi(grid.n(), m);
        let g = self.spectrum.at(m);
        let r1 = (ps * g - (self.first.at(m) + terms.e)) / ps;
        let r2 = (ps * ps * g - (self.second.at(m) + terms.f)) / (ps * ps);
        Ok((r1, r2))
    }
}

/// Residuals of both coefficient identities at one mode `m != 0`.
pub fn dft_identity_residuals(gf: &GridFunction, m: i64) -> Result<(Complex64, Complex64)> {
    gf.grid().check_index("mode", m)?;
    if m == 0 {
        return Err(FourierError::ZeroMode);
    }
    DftIdentity::new(gf).residuals(m)
}

/// `N(eps) = 2H/eps + 1`: past it, coefficient tails sum below `eps`.
pub fn tail_threshold(decay: f64, epsilon: f64) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(FourierError::InvalidParameter(format!("epsilon must be positive, got {epsilon}")));
    }
    if !(decay >= 0.0 && decay.is_finite()) {
        return Err(FourierError::InvalidParameter(format!("decay constant must be nonnegative, got {decay}")));
    }
    Ok(2.0 * decay / epsilon + 1.0)
}

/// `sum_{m=lo}^{hi} |g^(m)|` over a range of one sign.
pub fn tail_sum(s: &Spectrum, lo: i64, hi: i64) -> Result<f64> {
    if lo > hi || lo.signum() * hi.signum() <= 0 {
        return Err(FourierError::BadTailRange { lo, hi });
    }
    s.grid().check_index("mode", lo)?;
    s.grid().check_index("mode", hi)?;
    Ok(compensated_real_sum((lo..=hi).map(|m| s.at(m).norm())))
}

/// Outcome of comparing a spectrum against `H / m^2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DecayReport {
    /// `max_{m != 0} |g^(m)| m^2 / H`; at most 1 when the bound holds. With
    /// `H = 0` the ratio is `max |g^(m)| / ZERO_COEFFICIENT_LEVEL` instead.
    pub worst_ratio: f64,
    /// Mode attaining the worst ratio; `None` when there are no nonzero modes.
    pub worst_m: Option<i64>,
}

impl DecayReport {
    pub fn holds(&self) -> bool {
        self.worst_ratio <= 1.0
    }
}

/// Modes `m != 0` of the grid ordered by `|m|`, negative first.
pub(crate) fn modes_by_magnitude(grid: Grid) -> impl Iterator<Item = i64> {
    (1..=grid.n() as i64).flat_map(move |k| [-k, k]).filter(move |m| grid.contains_index(*m))
}

/// Checks `|g^(m)| <= H / m^2` for every `m != 0`.
///
/// Ties go to the smallest `|m|`, negative modes first.
pub fn decay_bound_check(s: &Spectrum, decay: f64) -> DecayReport {
    let mut report = DecayReport { worst_ratio: f64::NEG_INFINITY, worst_m: None };
    for m in modes_by_magnitude(s.grid()) {
        let c = s.at(m).norm();
        let ratio = if decay > 0.0 { c * (m * m) as f64 / decay } else { c / ZERO_COEFFICIENT_LEVEL };
        if ratio > report.worst_ratio {
            report = DecayReport { worst_ratio: ratio, worst_m: Some(m) };
        }
    }
    if report.worst_m.is_none() {
        report.worst_ratio = 0.0;
    }
    report
}

/// Uniform bounds on `F_n` and `g''^` for a function vanishing at `+-1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UniformBoundReport {
    pub n: usize,
    pub norms: FunctionNorms,
    /// `5D`.
    pub boundary_bound: f64,
    /// `max_m |F_n(m)|`.
    pub boundary_max: f64,
    pub boundary_worst_m: i64,
    /// `M + 2B`.
    pub curvature_bound: f64,
    /// `max_m |g''^(m)|`.
    pub curvature_max: f64,
    pub curvature_worst_m: i64,
}

impl UniformBoundReport {
    /// `5D - max |F|`; negative means the bound failed.
    pub fn boundary_slack(&self) -> f64 {
        self.boundary_bound - self.boundary_max
    }

    /// `M + 2B - max |g''^|`.
    pub fn curvature_slack(&self) -> f64 {
        self.curvature_bound - self.curvature_max
    }

    /// Both bounds hold within [`UNIFORM_BOUND_SLACK`].
    pub fn holds(&self) -> bool {
        self.boundary_slack() >= -UNIFORM_BOUND_SLACK && self.curvature_slack() >= -UNIFORM_BOUND_SLACK
    }
}

/// Verifies `|F_n(m)| <= 5D` and `|g''^(m)| <= M + 2B` at every mode, with
/// `B, D, M` the norms of `f` itself. `f` must vanish at both endpoints.
pub fn unifbounded_checks(f: &SmoothPeriodicFunction, n: usize) -> Result<UniformBoundReport> {
    let (left, right) = (f.eval(-1.0).norm(), f.eval(1.0).norm());
    if !(left <= ENDPOINT_TOLERANCE && right <= ENDPOINT_TOLERANCE) {
        return Err(FourierError::NonZeroEndpoints { name: f.name().to_owned(), left, right });
    }
    let grid = Grid::new(n)?;
    let norms = norms(f)?;
    let gf = sample(f, grid)?;
    let second = discrete_coefficients(&derivative(&derivative(&gf)));
    uniform_bounds_from(&gf, &second, norms)
}

pub(crate) fn uniform_bounds_from(
    gf: &GridFunction,
    second: &Spectrum,
    norms: FunctionNorms,
) -> Result<UniformBoundReport> {
    let grid = gf.grid();
    let mut boundary = (f64::NEG_INFINITY, 0);
    let mut curvature = (f64::NEG_INFINITY, 0);
    let ordered = std::iter::once(0).chain(modes_by_magnitude(grid));
    for m in ordered {
        let f = boundary_terms_unchecked(gf, grid, m).f.norm();
        if f > boundary.0 {
            boundary = (f, m);
        }
        let c = second.at(m).norm();
        if c > curvature.0 {
            curvature = (c, m);
        }
    }
    Ok(UniformBoundReport {
        n: grid.n(),
        norms,
        boundary_bound: 5.0 * norms.slope_sup_norm,
        boundary_max: boundary.0,
        boundary_worst_m: boundary.1,
        curvature_bound: norms.curvature_l1_norm + 2.0 * norms.sup_norm,
        curvature_max: curvature.0,
        curvature_worst_m: curvature.1,
    })
}
