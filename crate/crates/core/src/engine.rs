//! Lemma suites and convergence experiments over a grid of parameters.
//!
//! [`run_lemma_suite`] evaluates sixteen checks, one [`LemmaReport`] each.
//! Every check reduces a family of residuals to its worst value; a check
//! passes when that value is at most its tolerance. Work is split into
//! independent `(function, n)` cells that may run in parallel, and reports
//! are assembled by an ordered reduction, so output depends only on the
//! configuration and the seed.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bounds::{
    decay_bound_check, modes_by_magnitude, phi, psi, tail_sum, tail_threshold, uniform_bounds_from, DftIdentity,
};
use crate::calculus::{derivative, ftc_residual, parts_residual, product_rule_residual, swapped_product_rule_residual};
use crate::continuous::{coefficient, m_test_majorant, worst_truncation_error, ConvergenceRow, DEFAULT_SUP_SAMPLES};
use crate::discrete::{alias_fold, discrete_coefficients, invert, Spectrum};
use crate::error::{FourierError, Result};
use crate::functions::{bound_constants, from_name, norms, BoundConstants, FunctionNorms, SmoothPeriodicFunction};
use crate::grid::{sample, Grid, GridFunction};

/// Default tolerances, by kind of identity.
pub mod tolerances {
    /// Pure sums and differences (summation by parts, symbol magnitudes),
    /// relative to `n` times the input scale.
    pub const ALGEBRAIC: f64 = 1e-12;
    /// Identities with one division or one full transform round trip.
    pub const SINGLE_DIVISION: f64 = 1e-10;
    /// Identities divided by `psi^2`, and the additive slack on explicit bounds.
    pub const DOUBLE_DIVISION: f64 = 1e-9;
    /// Agreement between a grid quantity and a closed-form or quadrature oracle.
    pub const ORACLE: f64 = 1e-8;
    /// Checks reported as a ratio to their bound.
    pub const RATIO: f64 = 1.0;
}

/// Grid size used for tail checks whose threshold exceeds every configured size.
pub const TAIL_GRID_SIZE: usize = 4096;

/// The sixteen checks, in the order reports are emitted (byte order of names).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    FBound,
    AliasOracle,
    CoeffConvergence,
    DecayH,
    DftIdentity1,
    DftIdentity2,
    Ftc,
    G2Bound,
    IntegralDarboux,
    Inversion,
    MTestDomination,
    Parts,
    PhiPsiMag,
    ProductRule,
    PsiLower,
    TailEps,
}

/// The mathematical statements the suite certifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statement {
    /// Grid values are recovered exactly from their discrete coefficients.
    DiscreteInversion,
    /// The integral of a forward difference telescopes to its endpoint values.
    DifferenceTelescopes,
    /// Forward differences obey a product rule with a shift.
    DifferenceProductRule,
    /// Summation by parts with explicit boundary values.
    SummationByParts,
    /// `psi g^ = g'^ + E` and `psi^2 g^ = g''^ + F`.
    CoefficientIdentities,
    /// `|psi_n(m)|^2 >= 4 m^2` and `|phi_n| = |psi_n| <= 2n`.
    SymbolBounds,
    /// `|F_n| <= 5D` and `|g''^_n| <= M + 2B` uniformly in `n`.
    UniformBoundedness,
    /// `|g^_n(m)| <= H / m^2` uniformly in `n`.
    CoefficientDecay,
    /// Coefficient tails past `2H/eps + 1` sum below `eps`.
    TailVanishing,
    /// Grid coefficients converge to the continuum ones at fixed `m`.
    CoefficientConvergence,
    /// Grid integrals converge to the integral.
    IntegralConvergence,
    /// Partial sums converge uniformly, dominated by the majorant.
    UniformConvergence,
}

impl Statement {
    pub const ALL: [Statement; 12] = [
        Statement::DiscreteInversion,
        Statement::DifferenceTelescopes,
        Statement::DifferenceProductRule,
        Statement::SummationByParts,
        Statement::CoefficientIdentities,
        Statement::SymbolBounds,
        Statement::UniformBoundedness,
        Statement::CoefficientDecay,
        Statement::TailVanishing,
        Statement::CoefficientConvergence,
        Statement::IntegralConvergence,
        Statement::UniformConvergence,
    ];
}

impl Check {
    pub const ALL: [Check; 16] = [
        Check::FBound,
        Check::AliasOracle,
        Check::CoeffConvergence,
        Check::DecayH,
        Check::DftIdentity1,
        Check::DftIdentity2,
        Check::Ftc,
        Check::G2Bound,
        Check::IntegralDarboux,
        Check::Inversion,
        Check::MTestDomination,
        Check::Parts,
        Check::PhiPsiMag,
        Check::ProductRule,
        Check::PsiLower,
        Check::TailEps,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Inversion => "inversion",
            Check::Ftc => "ftc",
            Check::ProductRule => "product_rule",
            Check::Parts => "parts",
            Check::DftIdentity1 => "dft_identity_1",
            Check::DftIdentity2 => "dft_identity_2",
            Check::PsiLower => "psi_lower",
            Check::PhiPsiMag => "phi_psi_mag",
            Check::FBound => "F_bound",
            Check::G2Bound => "g2_bound",
            Check::DecayH => "decay_H",
            Check::TailEps => "tail_eps",
            Check::AliasOracle => "alias_oracle",
            Check::CoeffConvergence => "coeff_convergence",
            Check::IntegralDarboux => "integral_darboux",
            Check::MTestDomination => "m_test_domination",
        }
    }

    pub fn from_name(name: &str) -> Result<Check> {
        Check::ALL.into_iter().find(|c| c.name() == name).ok_or_else(|| FourierError::UnknownCheck(name.to_owned()))
    }

    pub fn default_tolerance(self) -> f64 {
        use tolerances::*;
        match self {
            Check::Ftc | Check::ProductRule | Check::Parts | Check::PhiPsiMag => ALGEBRAIC,
            Check::Inversion | Check::DftIdentity1 => SINGLE_DIVISION,
            Check::DftIdentity2 | Check::PsiLower | Check::FBound | Check::G2Bound | Check::MTestDomination => {
                DOUBLE_DIVISION
            }
            Check::AliasOracle | Check::CoeffConvergence | Check::IntegralDarboux => ORACLE,
            Check::DecayH | Check::TailEps => RATIO,
        }
    }

    /// The statement this check certifies. The oracle cross-check backs the
    /// inversion statement from the continuum side.
    pub fn statement(self) -> Statement {
        match self {
            Check::Inversion | Check::AliasOracle => Statement::DiscreteInversion,
            Check::Ftc => Statement::DifferenceTelescopes,
            Check::ProductRule => Statement::DifferenceProductRule,
            Check::Parts => Statement::SummationByParts,
            Check::DftIdentity1 | Check::DftIdentity2 => Statement::CoefficientIdentities,
            Check::PsiLower | Check::PhiPsiMag => Statement::SymbolBounds,
            Check::FBound | Check::G2Bound => Statement::UniformBoundedness,
            Check::DecayH => Statement::CoefficientDecay,
            Check::TailEps => Statement::TailVanishing,
            Check::CoeffConvergence => Statement::CoefficientConvergence,
            Check::IntegralDarboux => Statement::IntegralConvergence,
            Check::MTestDomination => Statement::UniformConvergence,
        }
    }

    /// What the residual of this check measures.
    pub fn residual_description(self) -> &'static str {
        match self {
            Check::Inversion => "max |invert(coeffs(g)) - g| / (1 + max|g|)",
            Check::Ftc => "|int g' - (g((n-1)/n) - g(-1))| / (n max|g|)",
            Check::ProductRule => "max |(uv)' - u'v^sh - uv'| / (n max|u| max|v|), both orderings",
            Check::Parts => "|summation-by-parts defect| / (n max|u| max|v|)",
            Check::DftIdentity1 => "|g^ - (g'^ + E)/psi| / max|g|, m != 0",
            Check::DftIdentity2 => "|g^ - (g''^ + F)/psi^2| / max|g|, m != 0",
            Check::PsiLower => "1 - |psi_n(m)|^2 / (4 m^2), m != 0",
            Check::PhiPsiMag => "max(|psi - conj phi|, |phi| - 2n, |psi| - 2n) / (2n)",
            Check::FBound => "|F_n(m)| - 5D for h = g - g(1)",
            Check::G2Bound => "|h''^_n(m)| - (M + 2B) for h = g - g(1)",
            Check::DecayH => "|g^_n(m)| m^2 / H",
            Check::TailEps => "tail sum past N(eps) divided by eps",
            Check::AliasOracle => "|g^_n(m) - sum of exact coefficients over m mod 2n|",
            Check::CoeffConvergence => "|g^_n(m) - g^(m)| at the largest grid, |m| <= n/2",
            Check::IntegralDarboux => "|int_grid g - int g| at the largest grid",
            Check::MTestDomination => "sup-norm truncation error minus the majorant",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Check {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Where a worst residual was found. For `m_test_domination`, `m` holds the
/// truncation order `N`.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Location {
    pub function: Option<String>,
    pub n: Option<usize>,
    pub m: Option<i64>,
    pub x: Option<f64>,
}

impl Location {
    fn at(function: &str, n: usize) -> Self {
        Location { function: Some(function.to_owned()), n: Some(n), ..Default::default() }
    }

    fn with_m(mut self, m: i64) -> Self {
        self.m = Some(m);
        self
    }

    fn with_x(mut self, x: f64) -> Self {
        self.x = Some(x);
        self
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(func) = &self.function {
            parts.push(format!("function={func}"));
        }
        if let Some(n) = self.n {
            parts.push(format!("n={n}"));
        }
        if let Some(m) = self.m {
            parts.push(format!("m={m}"));
        }
        if let Some(x) = self.x {
            parts.push(format!("x={x}"));
        }
        if parts.is_empty() {
            f.write_str("-")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaReport {
    pub check_name: Check,
    pub status: Status,
    pub worst_residual: f64,
    pub worst_location: Location,
    pub tolerance_used: f64,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<18} {} residual {:.3e} (tol {:.1e}) at {}",
            self.check_name.name(),
            if self.passed() { "PASS" } else { "FAIL" },
            self.worst_residual,
            self.tolerance_used,
            self.worst_location
        )
    }
}

/// Parameters of a lemma suite run.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    /// Catalog names, see [`crate::functions::from_name`].
    pub function_names: Vec<String>,
    pub grid_sizes: Vec<usize>,
    /// Largest `|m|` used by the per-mode identity and oracle checks, and the
    /// largest truncation order of the majorant check.
    pub mode_limit: usize,
    pub epsilons: Vec<f64>,
    /// Seed of the random grid functions.
    pub seed: u64,
    pub tolerance_overrides: BTreeMap<Check, f64>,
    /// Random grid functions (and random pairs) per grid size.
    pub random_samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            function_names: ["cos:1", "trig:1", "trig:3", "expcos"].map(String::from).to_vec(),
            grid_sizes: vec![4, 16, 64, 256],
            mode_limit: 32,
            epsilons: vec![0.1, 0.01],
            seed: 42,
            tolerance_overrides: BTreeMap::new(),
            random_samples: 8,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: String| Err(FourierError::InvalidParameter(msg));
        if self.function_names.is_empty() {
            return invalid("at least one function is required".into());
        }
        if self.grid_sizes.is_empty() {
            return invalid("at least one grid size is required".into());
        }
        if let Some(bad) = self.grid_sizes.iter().find(|&&n| n == 0) {
            return invalid(format!("grid size {bad} must be at least 1"));
        }
        if self.mode_limit == 0 {
            return invalid("mode limit must be at least 1".into());
        }
        if let Some(bad) = self.epsilons.iter().find(|e| !(**e > 0.0 && e.is_finite())) {
            return invalid(format!("epsilon {bad} must be positive"));
        }
        for (check, tol) in &self.tolerance_overrides {
            if !(*tol > 0.0 && tol.is_finite()) {
                return invalid(format!("tolerance for {check} must be positive, got {tol}"));
            }
        }
        Ok(())
    }

    pub fn tolerance(&self, check: Check) -> f64 {
        self.tolerance_overrides.get(&check).copied().unwrap_or_else(|| check.default_tolerance())
    }
}

/// A reproducible random grid function: real and imaginary parts uniform on
/// `[-1, 1]`, drawn from ChaCha8 seeded with `seed` on stream `stream`.
pub fn random_grid_function(grid: Grid, seed: u64, stream: u64) -> GridFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let values = (0..grid.len())
        .map(|_| {
            let re = rng.random_range(-1.0..=1.0);
            let im = rng.random_range(-1.0..=1.0);
            Complex64::new(re, im)
        })
        .collect();
    GridFunction::from_values(grid, values).expect("length matches grid")
}

/// Running maximum with a deterministic tie-break: smallest `|m|`, then negative `m`.
#[derive(Clone, Debug)]
struct Worst {
    residual: f64,
    location: Location,
}

impl Default for Worst {
    fn default() -> Self {
        Worst { residual: f64::NEG_INFINITY, location: Location::default() }
    }
}

impl Worst {
    fn consider(&mut self, residual: f64, location: impl FnOnce() -> Location) {
        if self.residual.is_nan() {
            return;
        }
        if residual.is_nan() || residual > self.residual {
            self.residual = residual;
            self.location = location();
        } else if residual == self.residual {
            let candidate = location();
            let key = |l: &Location| l.m.map(|m| (m.unsigned_abs(), m >= 0));
            if let (Some(new), Some(old)) = (key(&candidate), key(&self.location)) {
                if new < old && candidate.function == self.location.function && candidate.n == self.location.n {
                    self.location = candidate;
                }
            }
        }
    }

    fn merge(&mut self, other: &Worst) {
        let loc = other.location.clone();
        self.consider(other.residual, || loc);
    }
}

type Partial = BTreeMap<Check, Worst>;

fn note(partial: &mut Partial, check: Check, residual: f64, location: impl FnOnce() -> Location) {
    partial.entry(check).or_default().consider(residual, location);
}

/// Divides by a scale, treating an all-zero input as scale 1.
fn relative(value: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        value / scale
    } else {
        value
    }
}

struct Prepared {
    name: String,
    function: SmoothPeriodicFunction,
    constants: BoundConstants,
    /// `h = g - g(1)`, vanishing at both endpoints.
    pinned: SmoothPeriodicFunction,
    pinned_norms: FunctionNorms,
}

fn prepare(name: &str) -> Result<Prepared> {
    let function = from_name(name)?;
    let constants = bound_constants(&function)?;
    let pinned = function.shifted(function.endpoint_value());
    let pinned_norms = norms(&pinned)?;
    Ok(Prepared { name: name.to_owned(), function, constants, pinned, pinned_norms })
}

/// Identity checks on one grid function (or a pair).
fn identity_checks(
    partial: &mut Partial,
    label: &str,
    u: &GridFunction,
    v: &GridFunction,
    mode_limit: usize,
) -> Result<DftIdentity> {
    let grid = u.grid();
    let n = grid.n();
    let nf = n as f64;
    let (su, sv) = (u.max_abs(), v.max_abs());

    let spectrum_id = DftIdentity::new(u);
    let back = invert(spectrum_id.spectrum());
    let (worst_j, err) = back
        .iter()
        .zip(u.values())
        .map(|((j, b), a)| (j, (b - a).norm()))
        .fold((grid.first_index(), f64::NEG_INFINITY), |best, e| if e.1 > best.1 { e } else { best });
    note(partial, Check::Inversion, err / (1.0 + su), || Location::at(label, n).with_x(grid.point(worst_j)));

    note(partial, Check::Ftc, relative(ftc_residual(u).norm(), nf * su), || Location::at(label, n));

    let pair_scale = nf * su * sv;
    let product = product_rule_residual(u, v)?.max_abs().max(swapped_product_rule_residual(u, v)?.max_abs());
    note(partial, Check::ProductRule, relative(product, pair_scale), || Location::at(label, n));
    note(partial, Check::Parts, relative(parts_residual(u, v)?.norm(), pair_scale), || Location::at(label, n));

    let limit = mode_limit as i64;
    for m in modes_by_magnitude(grid).filter(|m| m.abs() <= limit) {
        let (r1, r2) = spectrum_id.residuals(m)?;
        note(partial, Check::DftIdentity1, relative(r1.norm(), su), || Location::at(label, n).with_m(m));
        note(partial, Check::DftIdentity2, relative(r2.norm(), su), || Location::at(label, n).with_m(m));
    }
    Ok(spectrum_id)
}

/// All per-`n` checks for one catalog function.
fn function_cell(
    cfg: &SuiteConfig,
    prepared: &[Prepared],
    index: usize,
    n: usize,
    largest: usize,
) -> Result<(Partial, Spectrum)> {
    let p = &prepared[index];
    let partner = &prepared[(index + 1) % prepared.len()];
    let grid = Grid::new(n)?;
    let mut partial = Partial::new();
    let label = p.name.as_str();

    let gf = sample(&p.function, grid)?;
    let other = sample(&partner.function, grid)?;
    let id = identity_checks(&mut partial, label, &gf, &other, cfg.mode_limit)?;
    let spectrum = id.spectrum().clone();

    // Uniform bounds on the endpoint-pinned function.
    let pinned = sample(&p.pinned, grid)?;
    let second = discrete_coefficients(&derivative(&derivative(&pinned)));
    let uniform = uniform_bounds_from(&pinned, &second, p.pinned_norms)?;
    note(&mut partial, Check::FBound, -uniform.boundary_slack(), || {
        Location::at(label, n).with_m(uniform.boundary_worst_m)
    });
    note(&mut partial, Check::G2Bound, -uniform.curvature_slack(), || {
        Location::at(label, n).with_m(uniform.curvature_worst_m)
    });

    let decay = decay_bound_check(&spectrum, p.constants.decay);
    note(&mut partial, Check::DecayH, decay.worst_ratio, || {
        let loc = Location::at(label, n);
        match decay.worst_m {
            Some(m) => loc.with_m(m),
            None => loc,
        }
    });

    let limit = cfg.mode_limit as i64;
    if p.function.has_exact_coefficients() {
        let cutoff = 16 * n as u64 + 64;
        for m in std::iter::once(0).chain(modes_by_magnitude(grid)).filter(|m| m.abs() <= limit) {
            let folded = alias_fold(&p.function, n, m, cutoff)?;
            note(&mut partial, Check::AliasOracle, (spectrum.at(m) - folded).norm(), || {
                Location::at(label, n).with_m(m)
            });
        }
    }

    if n == largest {
        let half = (n / 2) as i64;
        for m in std::iter::once(0).chain(modes_by_magnitude(grid)).filter(|m| m.abs() <= limit.min(half)) {
            let gap = (spectrum.at(m) - coefficient(&p.function, m)).norm();
            note(&mut partial, Check::CoeffConvergence, gap, || Location::at(label, n).with_m(m));
        }
        let gap = (gf.integrate() - coefficient(&p.function, 0)).norm();
        note(&mut partial, Check::IntegralDarboux, gap, || Location::at(label, n));
    }
    Ok((partial, spectrum))
}

/// Tail and majorant checks, which pick their own grid sizes and orders.
fn function_tails(cfg: &SuiteConfig, p: &Prepared, spectra: &BTreeMap<usize, Spectrum>) -> Result<Partial> {
    let mut partial = Partial::new();
    let h = p.constants.decay;
    let label = p.name.as_str();

    for &eps in &cfg.epsilons {
        let threshold = tail_threshold(h, eps)?;
        let candidates = cfg.grid_sizes.iter().copied().chain([TAIL_GRID_SIZE]);
        let Some(n) = candidates.filter(|&n| n as f64 > threshold).min() else {
            // No grid in reach: the statement is vacuous at this epsilon.
            note(&mut partial, Check::TailEps, 0.0, || Location {
                function: Some(label.to_owned()),
                ..Default::default()
            });
            continue;
        };
        let spectrum = match spectra.get(&n) {
            Some(s) => s.clone(),
            None => discrete_coefficients(&sample(&p.function, Grid::new(n)?)?),
        };
        let start = threshold.floor() as i64 + 1;
        let last = n as i64 - 1;
        let mut worst = 0.0f64;
        if start <= last {
            worst = worst.max(tail_sum(&spectrum, start, last)?);
        }
        if start <= n as i64 {
            worst = worst.max(tail_sum(&spectrum, -(n as i64), -start)?);
        }
        note(&mut partial, Check::TailEps, worst / eps, || Location::at(label, n).with_m(start));
    }

    let orders = std::iter::successors(Some(1usize), |k| k.checked_mul(2)).take_while(|&k| k <= cfg.mode_limit);
    for order in orders {
        let (err, x) = worst_truncation_error(&p.function, order, DEFAULT_SUP_SAMPLES)?;
        let bound = m_test_majorant(h, order)?;
        note(&mut partial, Check::MTestDomination, err - bound, || Location {
            function: Some(label.to_owned()),
            n: None,
            m: Some(order as i64),
            x: Some(x),
        });
    }
    Ok(partial)
}

/// Symbol checks at one grid size.
fn symbol_cell(n: usize) -> Partial {
    let mut partial = Partial::new();
    let grid = Grid::new(n).expect("validated grid size");
    let bound = 2.0 * n as f64;
    for m in std::iter::once(0).chain(modes_by_magnitude(grid)) {
        let (ph, ps) = (phi(n, m), psi(n, m));
        let mag = (ps - ph.conj()).norm().max(ph.norm() - bound).max(ps.norm() - bound) / bound;
        note(&mut partial, Check::PhiPsiMag, mag, || Location { n: Some(n), m: Some(m), ..Default::default() });
        if m != 0 {
            let lower = 4.0 * (m * m) as f64;
            note(&mut partial, Check::PsiLower, 1.0 - ps.norm_sqr() / lower, || Location {
                n: Some(n),
                m: Some(m),
                ..Default::default()
            });
        }
    }
    partial
}

/// Identity checks on seeded random grid functions at one grid size.
fn random_cell(cfg: &SuiteConfig, n: usize) -> Result<Partial> {
    let mut partial = Partial::new();
    let grid = Grid::new(n)?;
    for k in 0..cfg.random_samples as u64 {
        let stream = ((n as u64) << 20) | (2 * k);
        let u = random_grid_function(grid, cfg.seed, stream);
        let v = random_grid_function(grid, cfg.seed, stream + 1);
        let label = format!("random:{}:{k}", cfg.seed);
        identity_checks(&mut partial, &label, &u, &v, cfg.mode_limit)?;
    }
    Ok(partial)
}

/// Runs every check over the configured functions, grid sizes, modes and
/// epsilons. Returns one report per check, sorted by check name.
pub fn run_lemma_suite(cfg: &SuiteConfig) -> Result<Vec<LemmaReport>> {
    cfg.validate()?;
    let prepared = cfg.function_names.iter().map(|name| prepare(name)).collect::<Result<Vec<_>>>()?;

    let mut sizes = cfg.grid_sizes.clone();
    sizes.sort_unstable();
    sizes.dedup();
    let largest = *sizes.last().expect("validated non-empty");

    let cells: Vec<(usize, usize)> = (0..prepared.len()).flat_map(|f| sizes.iter().map(move |&n| (f, n))).collect();
    let function_results =
        cells.par_iter().map(|&(f, n)| function_cell(cfg, &prepared, f, n, largest)).collect::<Result<Vec<_>>>()?;

    let mut per_function_spectra: Vec<BTreeMap<usize, Spectrum>> = vec![BTreeMap::new(); prepared.len()];
    let mut partials = Vec::new();
    for (&(f, n), (partial, spectrum)) in cells.iter().zip(function_results) {
        per_function_spectra[f].insert(n, spectrum);
        partials.push(partial);
    }

    let tails = prepared
        .par_iter()
        .zip(per_function_spectra.par_iter())
        .map(|(p, spectra)| function_tails(cfg, p, spectra))
        .collect::<Result<Vec<_>>>()?;
    let symbols: Vec<Partial> = sizes.par_iter().map(|&n| symbol_cell(n)).collect();
    let randoms = sizes.par_iter().map(|&n| random_cell(cfg, n)).collect::<Result<Vec<_>>>()?;

    let mut total = Partial::new();
    for partial in partials.iter().chain(&tails).chain(&symbols).chain(&randoms) {
        for (check, worst) in partial {
            total.entry(*check).or_default().merge(worst);
        }
    }

    Ok(Check::ALL
        .into_iter()
        .map(|check| {
            let worst = total.remove(&check).unwrap_or(Worst { residual: 0.0, location: Location::default() });
            let tolerance = cfg.tolerance(check);
            let status = if worst.residual <= tolerance { Status::Pass } else { Status::Fail };
            LemmaReport {
                check_name: check,
                status,
                worst_residual: worst.residual,
                worst_location: worst.location,
                tolerance_used: tolerance,
            }
        })
        .collect())
}

/// One convergence row per truncation order: the sup-norm error on
/// `samples + 1` points and the majorant from the function's decay constant.
pub fn run_convergence(function_name: &str, orders: &[usize], samples: usize) -> Result<Vec<ConvergenceRow>> {
    if orders.windows(2).any(|w| w[0] >= w[1]) {
        return Err(FourierError::InvalidParameter("truncation orders must be strictly increasing".into()));
    }
    let f = from_name(function_name)?;
    if orders.is_empty() {
        return Ok(Vec::new());
    }
    let h = bound_constants(&f)?.decay;
    orders
        .par_iter()
        .map(|&order| {
            Ok(ConvergenceRow {
                order,
                sup_error: worst_truncation_error(&f, order, samples)?.0,
                m_test_bound: m_test_majorant(h, order)?,
            })
        })
        .collect()
}

/// `|g^_n(m)|` next to its decay bound `H / m^2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectrumRow {
    pub m: i64,
    pub abs_coeff: f64,
    pub decay_bound: f64,
}

/// Spectrum magnitudes for `m = -n ..= n-1`, `m != 0`, ascending.
pub fn run_spectrum_decay(function_name: &str, n: usize) -> Result<Vec<SpectrumRow>> {
    let f = from_name(function_name)?;
    let grid = Grid::new(n)?;
    let h = bound_constants(&f)?.decay;
    let spectrum = discrete_coefficients(&sample(&f, grid)?);
    Ok(spectrum
        .iter()
        .filter(|(m, _)| *m != 0)
        .map(|(m, c)| SpectrumRow { m, abs_coeff: c.norm(), decay_bound: h / (m * m) as f64 })
        .collect())
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig {
            function_names: vec!["cos:1".into()],
            grid_sizes: vec![4],
            mode_limit: 3,
            seed: 7,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn check_names_round_trip_and_sort() {
        for c in Check::ALL {
            assert_eq!(Check::from_name(c.name()).unwrap(), c);
        }
        let names: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
        assert!(Check::from_name("nope").is_err());
    }

    #[test]
    fn every_statement_is_checked() {
        let covered: BTreeSet<Statement> = Check::ALL.iter().map(|c| c.statement()).collect();
        for s in Statement::ALL {
            assert!(covered.contains(&s), "{s:?} has no check");
        }
    }

    #[test]
    fn minimal_suite_passes() {
        let reports = run_lemma_suite(&small()).unwrap();
        assert_eq!(reports.len(), 16);
        for r in &reports {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn config_errors() {
        let mut cfg = small();
        cfg.function_names.clear();
        assert!(run_lemma_suite(&cfg).is_err());
        let mut cfg = small();
        cfg.grid_sizes = vec![4, 0];
        assert!(run_lemma_suite(&cfg).is_err());
        let mut cfg = small();
        cfg.tolerance_overrides.insert(Check::Ftc, 0.0);
        assert!(run_lemma_suite(&cfg).is_err());
        let mut cfg = small();
        cfg.function_names = vec!["nosuch".into()];
        assert!(matches!(run_lemma_suite(&cfg), Err(FourierError::UnknownFunction(_))));
    }

    #[test]
    fn impossible_tolerance_fails_one_check() {
        let mut cfg = small();
        cfg.tolerance_overrides.insert(Check::DftIdentity2, 1e-30);
        let reports = run_lemma_suite(&cfg).unwrap();
        let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).map(|r| r.check_name).collect();
        assert_eq!(failed, vec![Check::DftIdentity2]);
    }

    #[test]
    fn random_functions_are_reproducible() {
        let g = Grid::new(8).unwrap();
        assert_eq!(random_grid_function(g, 3, 1), random_grid_function(g, 3, 1));
        assert_ne!(random_grid_function(g, 3, 1), random_grid_function(g, 3, 2));
        assert_ne!(random_grid_function(g, 3, 1), random_grid_function(g, 4, 1));
        assert!(random_grid_function(g, 3, 1).values().iter().all(|v| v.re.abs() <= 1.0 && v.im.abs() <= 1.0));
    }

    #[test]
    fn convergence_tables() {
        let rows = run_convergence("trig:2", &[1, 2, 3], 2048).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows[0].sup_error > 0.5);
        assert!(rows[1].sup_error <= 1e-11 && rows[2].sup_error <= 1e-11);

        let rows = run_convergence("expcos", &[2, 4, 8, 16], 2048).unwrap();
        assert!(rows.windows(2).all(|w| w[1].sup_error < w[0].sup_error));
        assert!(rows.iter().all(|r| r.sup_error <= r.m_test_bound));

        assert!(run_convergence("expcos", &[], 2048).unwrap().is_empty());
        assert!(run_convergence("nosuch", &[1], 2048).is_err());
        assert!(run_convergence("expcos", &[2, 2], 2048).is_err());
    }

    #[test]
    fn spectrum_tables() {
        let rows = run_spectrum_decay("cos:1", 16).unwrap();
        assert_eq!(rows.len(), 31);
        let one = rows.iter().find(|r| r.m == 1).unwrap();
        assert!((one.abs_coeff - 1.0).abs() < 1e-12);
        assert!(one.decay_bound >= 1.0);
        assert!(run_spectrum_decay("trig:0", 16).unwrap().iter().all(|r| r.abs_coeff <= 1e-12));
        assert!(run_spectrum_decay("expcos", 64).unwrap().iter().all(|r| r.abs_coeff <= r.decay_bound));
    }
}
