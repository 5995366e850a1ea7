//! Tolerance-driven summation of infinite series.

use crate::error::{Error, Result};

/// How the tail of a series is bounded once terms are small.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailBound {
    /// Terms eventually positive (or of one sign) and monotone decreasing at
    /// least as fast as n^{-2}; the tail after n is bounded by n*|term(n)|
    /// (integral comparison).
    MonotoneIntegral,
    /// Terms alternate in sign with decreasing magnitude; the tail is bounded
    /// by the first omitted term.
    Alternating,
    /// Terms decay geometrically or faster; the tail is bounded by
    /// |term(n)| * ratio/(1-ratio) estimated from the last two terms.
    Geometric,
}

/// Sum `term(n)` for n = 1, 2, ... until the tail bound drops below `tol`.
///
/// Summation order is fixed (increasing n) for deterministic results.
pub fn sum_series<F: Fn(u64) -> f64>(
    term: F,
    tol: f64,
    max_terms: u64,
    tail: TailBound,
) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::invalid("series tolerance must be positive"));
    }
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    for n in 1..=max_terms {
        let t = term(n);
        sum += t;
        let at = t.abs();
        let bound = match tail {
            TailBound::MonotoneIntegral => n as f64 * at,
            TailBound::Alternating => at,
            TailBound::Geometric => {
                let ratio = if prev.is_finite() && prev > 0.0 {
                    (at / prev).min(0.9)
                } else {
                    0.5
                };
                at * ratio / (1.0 - ratio)
            }
        };
        // Require two consecutive small bounds so a single accidental zero
        // of an oscillating term cannot stop the sum early.
        if bound < tol && prev < tol.max(at * 2.0) && n > 2 {
            return Ok(sum);
        }
        prev = at;
    }
    Err(Error::convergence(
        "sum_series",
        format!("tail bound not below {tol:.3e} within {max_terms} terms"),
        sum,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn geometric_series() {
        let v = sum_series(|n| 0.5f64.powi(n as i32), 1e-12, 200, TailBound::Geometric).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn inverse_squares_at_reachable_tolerance() {
        // sum 1/(1+n^2) = (pi coth pi - 1)/2; the n*|t_n| tail bound makes
        // 1e-6 reachable within 10^6 terms (1e-10 would need ~10^10 terms,
        // which is what the accelerated lattice-sum route is for).
        let closed = 0.5 * (PI / PI.tanh() - 1.0);
        let v = sum_series(
            |n| 1.0 / (1.0 + (n * n) as f64),
            1e-6,
            2_000_000,
            TailBound::MonotoneIntegral,
        )
        .unwrap();
        assert!((v - closed).abs() < 1e-6, "got {v}, want {closed}");
    }

    #[test]
    fn alternating_log_two() {
        // (-1)^n/n summed from n=1 is -ln 2.
        let v = sum_series(
            |n| (if n % 2 == 1 { -1.0 } else { 1.0 }) / n as f64,
            1e-6,
            2_000_000,
            TailBound::Alternating,
        )
        .unwrap();
        assert!((v - (-(2.0f64.ln()))).abs() < 1e-6, "got {v}");
    }

    #[test]
    fn max_terms_exceeded_is_reported() {
        let r = sum_series(
            |n| 1.0 / (1.0 + (n * n) as f64),
            1e-12,
            10_000,
            TailBound::MonotoneIntegral,
        );
        assert!(matches!(r, Err(Error::Convergence { .. })));
    }
}
