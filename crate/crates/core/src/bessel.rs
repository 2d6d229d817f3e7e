//! Modified Bessel functions of the first kind by direct power series.

/// Series terms below this magnitude end the summation.
pub const SERIES_CUTOFF: f64 = 1e-18;

/// `I_m(x) = sum_{j>=0} (x/2)^(2j+|m|) / (j! (j+|m|)!)`.
///
/// The sum stops after the first term smaller than [`SERIES_CUTOFF`], so it is
/// meant for moderate arguments (the catalog only needs `x = 1`). Integer
/// order is symmetric, `I_{-m} = I_m`.
pub fn bessel_i(order: i64, x: f64) -> f64 {
    let m = order.unsigned_abs();
    let half = 0.5 * x;
    // Leading term (x/2)^m / m!, built incrementally so large orders underflow
    // gracefully instead of overflowing a factorial.
    let mut term = 1.0;
    for k in 1..=m {
        term *= half / k as f64;
        if term == 0.0 {
            return 0.0;
        }
    }
    let quarter_sq = half * half;
    let mut sum = 0.0;
    let mut j = 0u64;
    loop {
        sum += term;
        if term.abs() < SERIES_CUTOFF {
            break;
        }
        j += 1;
        term *= quarter_sq / (j as f64 * (j + m) as f64);
    }
    sum
}
