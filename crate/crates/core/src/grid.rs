//! The uniform grid on the circle `[-1, 1)` and step functions on it.
//!
//! A [`Grid`] of size `n` has the `2n` points `j/n` for `j = -n, ..., n-1`;
//! every cell `[j/n, (j+1)/n)` carries mass `1/n`, so the whole circle has
//! measure 2. Points are addressed by their integer index `j` and only turned
//! into coordinates on demand, which keeps the cell map `x -> floor(n x)` exact.

use std::ops::RangeInclusive;

use num_complex::Complex64;

use crate::error::{FourierError, Result};
use crate::functions::SmoothPeriodicFunction;
use crate::sum::compensated_sum;

/// The `2n`-point partition of `[-1, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grid {
    n: usize,
}

impl Grid {
    /// Builds the grid with points `j/n`, `-n <= j <= n-1`. Rejects `n = 0`.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(FourierError::EmptyGrid(n));
        }
        Ok(Grid { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of points, always `2n`.
    pub fn len(&self) -> usize {
        2 * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first_index(&self) -> i64 {
        -(self.n as i64)
    }

    pub fn last_index(&self) -> i64 {
        self.n as i64 - 1
    }

    /// The index range `-n ..= n-1`, shared by grid points and Fourier modes.
    pub fn indices(&self) -> RangeInclusive<i64> {
        self.first_index()..=self.last_index()
    }

    pub fn contains_index(&self, j: i64) -> bool {
        self.indices().contains(&j)
    }

    /// Coordinate `j/n` of the point with index `j`.
    pub fn point(&self, j: i64) -> f64 {
        j as f64 / self.n as f64
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.len()).map(move |slot| self.point(self.index_of(slot)))
    }

    /// Mass of one cell, `1/n`.
    pub fn cell_width(&self) -> f64 {
        1.0 / self.n as f64
    }

    /// `2n` cells of mass `1/n`.
    pub fn total_measure(&self) -> f64 {
        2.0
    }

    /// Index of the cell containing `x`, i.e. `floor(n x)`, for `x` in `[-1, 1)`.
    ///
    /// Membership is decided against the materialized coordinates, so that
    /// `cell_of(point(j)) == Some(j)` holds for every index.
    pub fn cell_of(&self, x: f64) -> Option<i64> {
        if !(-1.0..1.0).contains(&x) {
            return None;
        }
        let mut j = (x * self.n as f64).floor() as i64;
        j = j.clamp(self.first_index(), self.last_index());
        if x < self.point(j) {
            j -= 1;
        } else if j < self.last_index() && x >= self.point(j + 1) {
            j += 1;
        }
        Some(j)
    }

    pub(crate) fn slot(&self, j: i64) -> usize {
        debug_assert!(self.contains_index(j));
        (j + self.n as i64) as usize
    }

    pub(crate) fn index_of(&self, slot: usize) -> i64 {
        slot as i64 - self.n as i64
    }

    pub(crate) fn check_index(&self, what: &'static str, j: i64) -> Result<()> {
        if self.contains_index(j) {
            Ok(())
        } else {
            Err(FourierError::IndexOutOfRange { what, index: j, n: self.n })
        }
    }
}

/// Shorthand for [`Grid::new`].
pub fn build_grid(n: usize) -> Result<Grid> {
    Grid::new(n)
}

/// Complex values on the points of a [`Grid`], read as a step function:
/// the value on cell `[j/n, (j+1)/n)` is the value at its left endpoint.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    grid: Grid,
    values: Vec<Complex64>,
}

impl GridFunction {
    /// Wraps `values`, ordered by ascending index `j = -n ..= n-1`.
    pub fn from_values(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(FourierError::LengthMismatch { expected: grid.len(), actual: values.len() });
        }
        Ok(GridFunction { grid, values })
    }

    /// Tabulates `f(j)` over the grid indices.
    pub fn from_index_fn(grid: Grid, f: impl Fn(i64) -> Complex64) -> Self {
        let values = grid.indices().map(f).collect();
        GridFunction { grid, values }
    }

    pub fn zeros(grid: Grid) -> Self {
        Self::constant(grid, Complex64::new(0.0, 0.0))
    }

    pub fn constant(grid: Grid, c: Complex64) -> Self {
        GridFunction { grid, values: vec![c; grid.len()] }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn n(&self) -> usize {
        self.grid.n
    }

    /// Values in ascending index order.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Value at index `j`. Panics when `j` is off the grid.
    pub fn at(&self, j: i64) -> Complex64 {
        assert!(self.grid.contains_index(j), "index {j} is off the grid of size {}", self.grid.n);
        self.values[self.grid.slot(j)]
    }

    pub fn get(&self, j: i64) -> Option<Complex64> {
        self.grid.contains_index(j).then(|| self.values[self.grid.slot(j)])
    }

    /// Step-function evaluation at a continuum coordinate `x` in `[-1, 1)`.
    pub fn eval(&self, x: f64) -> Option<Complex64> {
        self.grid.cell_of(x).map(|j| self.at(j))
    }

    /// Values together with their indices.
    pub fn iter(&self) -> impl ExactSizeIterator<Item = (i64, Complex64)> + '_ {
        self.values.iter().enumerate().map(|(slot, &v)| (self.grid.index_of(slot), v))
    }

    /// `max_j |values[j]|`.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        self.map(|v| c * v)
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        GridFunction { grid: self.grid, values: self.values.iter().map(|&v| f(v)).collect() }
    }

    /// Pointwise combination of two functions on the same grid.
    pub fn zip_with(&self, other: &GridFunction, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        self.same_grid(other)?;
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect();
        Ok(GridFunction { grid: self.grid, values })
    }

    pub fn add(&self, other: &GridFunction) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GridFunction) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Index-wise product.
    pub fn mul(&self, other: &GridFunction) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub(crate) fn same_grid(&self, other: &GridFunction) -> Result<()> {
        if self.grid == other.grid {
            Ok(())
        } else {
            Err(FourierError::GridMismatch { left: self.grid.n, right: other.grid.n })
        }
    }

    /// The cell-weighted sum `(1/n) * sum_j values[j]`.
    pub fn integrate(&self) -> Complex64 {
        compensated_sum(self.values.iter().copied()) / self.grid.n as f64
    }
}

/// Samples `f` at every grid point: `values[j] = f(j/n)`.
///
/// Fails if `f` produces a non-finite value anywhere on the grid.
pub fn sample(f: &SmoothPeriodicFunction, grid: Grid) -> Result<GridFunction> {
    let values = grid
        .indices()
        .map(|j| {
            let x = grid.point(j);
            let v = f.eval(x);
            if v.re.is_finite() && v.im.is_finite() {
                Ok(v)
            } else {
                Err(FourierError::NonFinite { name: f.name().to_owned(), x })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GridFunction { grid, values })
}

/// Integral of a step function against the cell measure `1/n`.
pub fn integrate(gf: &GridFunction) -> Complex64 {
    gf.integrate()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{constant, trig_monomial, SmoothPeriodicFunction};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn identity() -> SmoothPeriodicFunction {
        // Not periodic, but sampling never looks at x = 1.
        SmoothPeriodicFunction::new("id", c, |_| c(1.0), |_| c(0.0))
    }

    #[test]
    fn small_grids() {
        assert!(matches!(Grid::new(0), Err(FourierError::EmptyGrid(0))));
        let g1 = Grid::new(1).unwrap();
        assert_eq!(g1.points().collect::<Vec<_>>(), vec![-1.0, 0.0]);
        let g2 = build_grid(2).unwrap();
        assert_eq!(g2.points().collect::<Vec<_>>(), vec![-1.0, -0.5, 0.0, 0.5]);
        let g4 = Grid::new(4).unwrap();
        let pts: Vec<f64> = g4.points().collect();
        assert_eq!(pts.len(), 8);
        assert!(pts.windows(2).all(|w| w[1] - w[0] == 0.25));
        assert_eq!(g4.len() as f64 * g4.cell_width(), 2.0);
    }

    #[test]
    fn endpoints_are_exact() {
        for n in [1, 3, 7, 10, 1000, 4097] {
            let g = Grid::new(n).unwrap();
            assert_eq!(g.point(g.first_index()), -1.0);
            assert_eq!(g.point(g.last_index()), (n as f64 - 1.0) / n as f64);
        }
    }

    #[test]
    fn cell_map_matches_points() {
        for n in [1, 3, 5, 7, 49, 100, 333] {
            let g = Grid::new(n).unwrap();
            for j in g.indices() {
                assert_eq!(g.cell_of(g.point(j)), Some(j), "n = {n}, j = {j}");
                let mid = 0.5 * (g.point(j) + if j == g.last_index() { 1.0 } else { g.point(j + 1) });
                assert_eq!(g.cell_of(mid), Some(j));
            }
            assert_eq!(g.cell_of(1.0), None);
            assert_eq!(g.cell_of(-1.0 - 1e-12), None);
        }
    }

    #[test]
    fn sampling() {
        let g2 = Grid::new(2).unwrap();
        let ones = sample(&constant(c(1.0)), g2).unwrap();
        assert_eq!(ones.values(), &[c(1.0); 4]);

        let g4 = Grid::new(4).unwrap();
        let xs = sample(&identity(), g4).unwrap();
        let expected = [-1.0, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75].map(c);
        assert_eq!(xs.values(), &expected);

        let e = sample(&trig_monomial(1), g2).unwrap();
        let expected = [c(-1.0), Complex64::new(0.0, -1.0), c(1.0), Complex64::new(0.0, 1.0)];
        for (got, want) in e.values().iter().zip(expected) {
            assert!((got - want).norm() < 1e-15);
        }
    }

    #[test]
    fn sampling_rejects_non_finite() {
        let bad = SmoothPeriodicFunction::new("pole", |x| c(1.0 / x), |_| c(0.0), |_| c(0.0));
        let err = sample(&bad, Grid::new(2).unwrap()).unwrap_err();
        assert!(matches!(err, FourierError::NonFinite { x, .. } if x == 0.0));
    }

    #[test]
    fn integrals() {
        let g4 = Grid::new(4).unwrap();
        assert_eq!(integrate(&GridFunction::constant(g4, c(1.0))), c(2.0));
        assert_eq!(integrate(&sample(&identity(), g4).unwrap()), c(-0.25));
        assert_eq!(integrate(&GridFunction::zeros(g4)), c(0.0));
    }

    #[test]
    fn step_semantics() {
        let g = Grid::new(4).unwrap();
        let gf = GridFunction::from_index_fn(g, |j| c(j as f64));
        assert_eq!(gf.eval(-1.0), Some(c(-4.0)));
        assert_eq!(gf.eval(0.1), Some(c(0.0)));
        assert_eq!(gf.eval(0.2499), Some(c(0.0)));
        assert_eq!(gf.eval(0.25), Some(c(1.0)));
        assert_eq!(gf.eval(0.999), Some(c(3.0)));
        assert_eq!(gf.eval(1.0), None);
    }

    #[test]
    fn mismatched_grids() {
        let a = GridFunction::zeros(Grid::new(2).unwrap());
        let b = GridFunction::zeros(Grid::new(3).unwrap());
        assert_eq!(a.mul(&b).unwrap_err(), FourierError::GridMismatch { left: 2, right: 3 });
        assert!(GridFunction::from_values(Grid::new(2).unwrap(), vec![c(0.0); 3]).is_err());
    }
}
