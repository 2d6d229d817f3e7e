//! Forward difference and shift on the grid, and the summation-by-parts
//! identities they satisfy.
//!
//! Neither operator wraps around: both are forced to zero at the last point
//! `j = n-1`. The boundary values this leaves behind are exactly what the
//! boundary terms in [`crate::bounds`] account for.

use num_complex::Complex64;

use crate::error::Result;
use crate::grid::GridFunction;

/// `g'(j/n) = n (g((j+1)/n) - g(j/n))` for `j < n-1`, and `g'((n-1)/n) = 0`.
pub fn derivative(gf: &GridFunction) -> GridFunction {
    let n = gf.n() as f64;
    forward(gf, |here, next| n * (next - here))
}

/// `g^sh(j/n) = g((j+1)/n)` for `j < n-1`, and `g^sh((n-1)/n) = 0`.
pub fn shift(gf: &GridFunction) -> GridFunction {
    forward(gf, |_, next| next)
}

fn forward(gf: &GridFunction, op: impl Fn(Complex64, Complex64) -> Complex64) -> GridFunction {
    let v = gf.values();
    let mut out: Vec<Complex64> = v.windows(2).map(|w| op(w[0], w[1])).collect();
    out.push(Complex64::new(0.0, 0.0));
    GridFunction::from_values(gf.grid(), out).expect("same grid")
}

/// `int g' - (g((n-1)/n) - g(-1))`, which vanishes identically.
pub fn ftc_residual(gf: &GridFunction) -> Complex64 {
    let grid = gf.grid();
    derivative(gf).integrate() - (gf.at(grid.last_index()) - gf.at(grid.first_index()))
}

/// `(uv)' - (u' v^sh + u v')`, pointwise; the zero function.
pub fn product_rule_residual(u: &GridFunction, v: &GridFunction) -> Result<GridFunction> {
    let lhs = derivative(&u.mul(v)?);
    let rhs = derivative(u).mul(&shift(v))?.add(&u.mul(&derivative(v))?)?;
    lhs.sub(&rhs)
}

/// `(uv)' - (u' v + u^sh v')`: the same identity with the roles swapped.
pub fn swapped_product_rule_residual(u: &GridFunction, v: &GridFunction) -> Result<GridFunction> {
    let lhs = derivative(&u.mul(v)?);
    let rhs = derivative(u).mul(v)?.add(&shift(u).mul(&derivative(v))?)?;
    lhs.sub(&rhs)
}

/// Summation by parts:
/// `int u' v - (-int u^sh v' + (uv)((n-1)/n) - (uv)(-1))`, which vanishes.
pub fn parts_residual(u: &GridFunction, v: &GridFunction) -> Result<Complex64> {
    let grid = u.grid();
    let lhs = derivative(u).mul(v)?.integrate();
    let (first, last) = (grid.first_index(), grid.last_index());
    let boundary = u.at(last) * v.at(last) - u.at(first) * v.at(first);
    let rhs = -shift(u).mul(&derivative(v))?.integrate() + boundary;
    Ok(lhs - rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn identity(n: usize) -> GridFunction {
        let g = Grid::new(n).unwrap();
        GridFunction::from_index_fn(g, |j| re(g.point(j)))
    }

    #[test]
    fn derivative_examples() {
        let d = derivative(&identity(4));
        let want: Vec<_> = [1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.0].map(re).to_vec();
        assert_eq!(d.values(), &want[..]);

        let c = GridFunction::constant(Grid::new(3).unwrap(), Complex64::new(2.0, -7.0));
        assert!(derivative(&c).values().iter().all(|v| *v == re(0.0)));

        let sq = identity(2).map(|v| v * v);
        assert_eq!(derivative(&sq).at(-2), re(-1.5));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(shift(&identity(2)).values(), &[-0.5, 0.0, 0.5, 0.0].map(re));
        let z = GridFunction::zeros(Grid::new(2).unwrap());
        assert_eq!(shift(&z), z);
        let abcd = GridFunction::from_values(Grid::new(2).unwrap(), [1.0, 2.0, 3.0, 4.0].map(re).to_vec()).unwrap();
        assert_eq!(shift(&shift(&abcd)).values(), &[3.0, 4.0, 0.0, 0.0].map(re));
    }

    #[test]
    fn ftc_examples() {
        let x = identity(4);
        assert_eq!(derivative(&x).integrate(), re(1.75));
        assert_eq!(ftc_residual(&x), re(0.0));
        assert_eq!(ftc_residual(&GridFunction::constant(Grid::new(5).unwrap(), re(3.0))), re(0.0));
    }

    #[test]
    fn product_rule_examples() {
        let one = GridFunction::constant(Grid::new(3).unwrap(), re(1.0));
        assert!(product_rule_residual(&one, &one).unwrap().values().iter().all(|v| *v == re(0.0)));
        let x = identity(2);
        assert!(product_rule_residual(&x, &x).unwrap().values().iter().all(|v| *v == re(0.0)));
        assert!(swapped_product_rule_residual(&x, &x).unwrap().values().iter().all(|v| *v == re(0.0)));
        let other = identity(3);
        assert!(product_rule_residual(&x, &other).is_err());
    }

    #[test]
    fn parts_examples() {
        let g = Grid::new(4).unwrap();
        let one = GridFunction::constant(g, re(1.0));
        let v = GridFunction::from_index_fn(g, |j| Complex64::new((j * j) as f64, j as f64 - 0.5));
        assert!(parts_residual(&one, &v).unwrap().norm() < 1e-13);
        let x = identity(2);
        assert_eq!(parts_residual(&x, &x).unwrap(), re(0.0));
        assert!(parts_residual(&x, &identity(3)).is_err());
    }
}
