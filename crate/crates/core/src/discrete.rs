//! Discrete Fourier coefficients on the grid and their exact inversion.
//!
//! For a grid function `g` of size `n`,
//!
//! ```text
//! g^(m) = (1/n) sum_{j=-n}^{n-1} g(j/n) exp(-pi i (j/n) m),     -n <= m <= n-1
//! g(j/n) = (1/2) sum_{m=-n}^{n-1} g^(m) exp(pi i (j/n) m)
//! ```
//!
//! The second line holds exactly: the characters `exp(pi i (j/n) m)` of the
//! cyclic group of order `2n` are orthogonal with respect to the cell measure.
//! The direct `O(n^2)` sum is the reference path; [`discrete_coefficients_fast`]
//! is an FFT-backed shortcut that is only ever checked against it.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{FourierError, Result};
use crate::functions::SmoothPeriodicFunction;
use crate::grid::{Grid, GridFunction};
use crate::sum::{compensated_sum, CompensatedSum};

/// `exp(pi i k / n)` for any integer `k`.
///
/// The phase is reduced modulo `2n` in integers, folded onto the upper half
/// circle and split into a quadrant plus an angle in `[0, pi/2)`. Multiples of
/// `pi/2` come out exact and `exp(-pi i k/n)` is the exact conjugate of
/// `exp(pi i k/n)`.
pub fn root_of_unity(n: usize, k: i64) -> Complex64 {
    assert!(n > 0, "root of unity of order 0");
    let n_i = n as i64;
    let r = k.rem_euclid(2 * n_i);
    if r > n_i {
        return root_of_unity(n, 2 * n_i - r).conj();
    }
    if r == n_i {
        return Complex64::new(-1.0, 0.0);
    }
    // Upper half circle: angle (pi/2) * twice / n with twice in [0, 2n).
    let twice = 2 * r;
    let (quadrant, rest) = if twice < n_i { (0, twice) } else { (1, twice - n_i) };
    let (s, c) = (FRAC_PI_2 * rest as f64 / n as f64).sin_cos();
    if quadrant == 0 {
        Complex64::new(c, s)
    } else {
        Complex64::new(-s, c)
    }
}

/// Table of `exp(pi i k / n)` for `k = 0 .. 2n-1`.
#[derive(Clone, Debug)]
pub(crate) struct RootTable {
    n: usize,
    roots: Vec<Complex64>,
}

impl RootTable {
    pub(crate) fn new(n: usize) -> Self {
        RootTable { n, roots: (0..2 * n as i64).map(|k| root_of_unity(n, k)).collect() }
    }

    /// `exp(pi i k / n)`.
    #[inline]
    pub(crate) fn get(&self, k: i64) -> Complex64 {
        self.roots[k.rem_euclid(2 * self.n as i64) as usize]
    }
}

/// The character `exp(pi i (j/n) m)` of the grid of size `n`.
///
/// Both `m` and `j` must lie in `-n ..= n-1`.
pub fn character(n: usize, m: i64, j: i64) -> Result<Complex64> {
    let grid = Grid::new(n)?;
    grid.check_index("mode", m)?;
    grid.check_index("grid", j)?;
    Ok(root_of_unity(n, j * m))
}

/// Discrete Fourier coefficients indexed by `m = -n ..= n-1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    grid: Grid,
    coefficients: Vec<Complex64>,
}

impl Spectrum {
    /// Wraps coefficients in ascending mode order.
    pub fn new(n: usize, coefficients: Vec<Complex64>) -> Result<Self> {
        let grid = Grid::new(n)?;
        if coefficients.len() != grid.len() {
            return Err(FourierError::LengthMismatch { expected: grid.len(), actual: coefficients.len() });
        }
        Ok(Spectrum { grid, coefficients })
    }

    pub fn from_mode_fn(n: usize, f: impl Fn(i64) -> Complex64) -> Result<Self> {
        let grid = Grid::new(n)?;
        Ok(Spectrum { grid, coefficients: grid.indices().map(f).collect() })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::from_mode_fn(n, |_| Complex64::new(0.0, 0.0))
    }

    pub fn n(&self) -> usize {
        self.grid.n()
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn modes(&self) -> std::ops::RangeInclusive<i64> {
        self.grid.indices()
    }

    /// Coefficient of mode `m`, if `m` is in range.
    pub fn get(&self, m: i64) -> Option<Complex64> {
        self.grid.contains_index(m).then(|| self.coefficients[self.grid.slot(m)])
    }

    /// Coefficient of mode `m`. Panics when out of range.
    pub fn at(&self, m: i64) -> Complex64 {
        self.get(m).unwrap_or_else(|| panic!("mode {m} outside the spectrum of size {}", self.n()))
    }

    /// Coefficients in ascending mode order.
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = (i64, Complex64)> + '_ {
        let grid = self.grid;
        self.coefficients.iter().enumerate().map(move |(slot, &c)| (grid.index_of(slot), c))
    }
}

/// Direct `O(n^2)` evaluation of `g^(m)` for every mode.
///
/// Each coefficient is a compensated sum over ascending `j`; modes are
/// independent and evaluated in parallel, with results independent of the
/// schedule.
pub fn discrete_coefficients(gf: &GridFunction) -> Spectrum {
    let grid = gf.grid();
    let n = grid.n();
    let roots = RootTable::new(n);
    let inv_n = 1.0 / n as f64;
    let coefficients = grid
        .indices()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|m| {
            let sum = compensated_sum(gf.iter().map(|(j, v)| v * roots.get(-j * m)));
            sum * inv_n
        })
        .collect();
    Spectrum { grid, coefficients }
}

/// A single coefficient `g^(m)` by the same direct sum.
pub fn discrete_coefficient(gf: &GridFunction, m: i64) -> Result<Complex64> {
    let grid = gf.grid();
    grid.check_index("mode", m)?;
    let n = grid.n();
    let sum = compensated_sum(gf.iter().map(|(j, v)| v * root_of_unity(n, -j * m)));
    Ok(sum / n as f64)
}

/// FFT evaluation of the same coefficients.
///
/// `g^(m) = (-1)^m / n * DFT(values)[m mod 2n]` once values are indexed from
/// zero. Agrees with [`discrete_coefficients`] to rounding; never used where
/// identities are being certified.
pub fn discrete_coefficients_fast(gf: &GridFunction) -> Spectrum {
    let grid = gf.grid();
    let n = grid.n();
    let len = grid.len();
    let mut buffer = gf.values().to_vec();
    FftPlanner::new().plan_fft_forward(len).process(&mut buffer);
    let inv_n = 1.0 / n as f64;
    let coefficients = grid
        .indices()
        .map(|m| {
            let sign = if m.rem_euclid(2) == 0 { inv_n } else { -inv_n };
            buffer[m.rem_euclid(len as i64) as usize] * sign
        })
        .collect();
    Spectrum { grid, coefficients }
}

/// Reconstructs grid values: `g(j/n) = (1/2) sum_m g^(m) exp(pi i (j/n) m)`.
pub fn invert(s: &Spectrum) -> GridFunction {
    let grid = s.grid();
    let roots = RootTable::new(grid.n());
    let values = grid
        .indices()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|j| {
            let mut acc = CompensatedSum::default();
            for (m, c) in s.iter() {
                acc.add(c * roots.get(j * m));
            }
            0.5 * acc.value()
        })
        .collect();
    GridFunction::from_values(grid, values).expect("one value per grid point")
}

/// Sum of the exact coefficients `g^(l)` over `l = m (mod 2n)`, `|l| <= cutoff`.
///
/// Sampling on the grid cannot distinguish modes that differ by a multiple of
/// `2n`, so for a trigonometric polynomial of degree at most `cutoff` this is
/// exactly the discrete coefficient of the sampled function.
pub fn alias_fold(f: &SmoothPeriodicFunction, n: usize, m: i64, cutoff: u64) -> Result<Complex64> {
    let grid = Grid::new(n)?;
    grid.check_index("mode", m)?;
    if cutoff == 0 {
        return Err(FourierError::InvalidParameter("alias cutoff must be at least 1".into()));
    }
    if !f.has_exact_coefficients() {
        return Err(FourierError::NoExactCoefficients(f.name().to_owned()));
    }
    let period = 2 * n as i64;
    let cutoff = cutoff.min(i64::MAX as u64 / 4) as i64;
    let first = m - period * (m + cutoff).div_euclid(period);
    let modes = (0..).map(|t| first + t * period).take_while(|l| *l <= cutoff);
    Ok(compensated_sum(modes.map(|l| f.exact_coefficient(l).unwrap_or_default())))
}
