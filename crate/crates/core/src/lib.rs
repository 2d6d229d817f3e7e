//! Fourier analysis on the finite grid `{j/n : -n <= j < n}` of the circle
//! `[-1, 1)`, and numerical certification of the uniform convergence of
//! Fourier series built on it.
//!
//! The crate is organized bottom-up:
//!
//! * [`grid`]: the `2n`-point grid, step functions on it, and their integral.
//! * [`functions`]: smooth periodic test functions and the norm constants
//!   `B, D, M, W, H` of the decay bound.
//! * [`discrete`]: discrete coefficients, exact inversion, characters and the
//!   aliasing oracle.
//! * [`calculus`]: forward difference, shift, and summation by parts.
//! * [`bounds`]: boundary terms, the coefficient identities
//!   `psi g^ = g'^ + E` and `psi^2 g^ = g''^ + F`, decay and tail bounds.
//! * [`continuous`]: continuum coefficients, partial sums, sup-norm errors,
//!   the Weierstrass majorant, and rescaling to a general interval.
//! * [`engine`]: suites that run every check over a grid of parameters.
//!
//! ```
//! use fourier_grid::{discrete, functions, grid};
//!
//! let g = grid::Grid::new(16)?;
//! let f = functions::exp_cos();
//! let values = grid::sample(&f, g)?;
//! let spectrum = discrete::discrete_coefficients(&values);
//! let back = discrete::invert(&spectrum);
//! assert!(back.sub(&values)?.max_abs() < 1e-12);
//! # Ok::<(), fourier_grid::FourierError>(())
//! ```

pub mod bessel;
pub mod bounds;
pub mod calculus;
pub mod continuous;
pub mod discrete;
pub mod engine;
mod error;
pub mod functions;
pub mod grid;
mod sum;

pub use error::{FourierError, Result};
pub use num_complex::Complex64;

/// The guide's code blocks, compiled and run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/grid.md")]
    mod grid {}
    #[doc = include_str!("../../../book/src/discrete-fourier.md")]
    mod discrete_fourier {}
    #[doc = include_str!("../../../book/src/discrete-calculus.md")]
    mod discrete_calculus {}
    #[doc = include_str!("../../../book/src/spectral-bounds.md")]
    mod spectral_bounds {}
    #[doc = include_str!("../../../book/src/continuous.md")]
    mod continuous {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
