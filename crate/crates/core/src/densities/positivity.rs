//! Positivity machinery for the finite-radius density: the log-derivative
//! slope of theta3, the slope bound it must stay under, and the sufficient
//! bound chains used at large and small radius.
//!
//! Positivity of the density is equivalent to
//!
//!   d/dz ln theta3(Rz, iR)  <=  2 sinh z cosh z / (sinh^2(pi/(2R)) + cosh^2 z)
//!
//! for z > 0. The left side has period pi/R and is negative on
//! (0, pi/(2R)); the right side is increasing, so everything reduces to the
//! window [pi/(2R), pi/R].

use crate::error::{Error, Result};
use crate::theta::ThetaParams;
use serde::Serialize;
use std::f64::consts::PI;

/// d/dz ln theta3(Rz, iR) by the product-form series
/// -4R sin(2Rz) sum_{n>=1} q^{n-1/2} / (1 + 2 q^{n-1/2} cos(2Rz) + q^{2n-1}).
///
/// Each denominator is bounded below by (1 - q^{n-1/2})^2 > 0, so the series
/// is valid for every real z.
pub fn log_theta3_slope(radius: f64, z: f64, tp: &ThetaParams) -> Result<f64> {
    if (radius - tp.r_modulus).abs() > 1e-12 * radius.abs().max(1.0) {
        return Err(Error::invalid("theta params modulus must equal the radius"));
    }
    let q = tp.nome;
    let c = (2.0 * radius * z).cos();
    let mut sum = 0.0f64;
    let mut qn_half = q.sqrt(); // q^{n-1/2} at n = 1
    let q_step = q;
    for n in 1..=tp.max_terms {
        let term = qn_half / (1.0 + 2.0 * qn_half * c + qn_half * qn_half);
        sum += term;
        if term < tp.tol * sum.max(1e-300) && n > 2 {
            return Ok(-4.0 * radius * (2.0 * radius * z).sin() * sum);
        }
        qn_half *= q_step;
    }
    Err(Error::convergence(
        "log_theta3_slope",
        format!("series not below tolerance within {} terms", tp.max_terms),
        -4.0 * radius * (2.0 * radius * z).sin() * sum,
    ))
}

/// The right-hand slope bound 2 sinh z cosh z / (sinh^2(pi/(2R)) + cosh^2 z).
pub fn slope_bound(radius: f64, z: f64) -> f64 {
    let s = (PI / (2.0 * radius)).sinh();
    2.0 * z.sinh() * z.cosh() / (s * s + z.cosh() * z.cosh())
}

/// Minimum of the slope bound over the critical window, attained at its
/// left endpoint z = pi/(2R).
pub fn slope_bound_minimum(radius: f64) -> f64 {
    let u = PI / (2.0 * radius);
    2.0 * u.sinh() * u.cosh() / (u.sinh() * u.sinh() + u.cosh() * u.cosh())
}

/// Large-radius sufficient bound 2 R e^{pi R} sum_{n>=1} 1/sinh(2 pi R n),
/// a decreasing function of R that dominates the slope maximum on the
/// critical window.
pub fn large_radius_bound(radius: f64) -> f64 {
    let mut sum = 0.0;
    for n in 1..100_000u64 {
        let t = 1.0 / (2.0 * PI * radius * n as f64).sinh();
        sum += t;
        if t < 1e-18 * sum.max(1e-300) {
            break;
        }
    }
    2.0 * radius * (PI * radius).exp() * sum
}

/// The oscillation envelope whose maximum controls the small-radius chain:
/// max over theta in [0, pi] of
/// 2 R sin(theta) e^{pi R} sum_{n>=1} 1/(cosh(2 pi R n) - cos(theta)).
pub fn envelope_max(radius: f64, theta_grid: usize) -> f64 {
    let mut best = 0.0f64;
    for i in 1..theta_grid {
        let th = PI * i as f64 / theta_grid as f64;
        let ct = th.cos();
        let mut sum = 0.0;
        for n in 1..100_000u64 {
            let t = 1.0 / ((2.0 * PI * radius * n as f64).cosh() - ct);
            sum += t;
            if t < 1e-15 * sum {
                break;
            }
        }
        best = best.max(2.0 * radius * th.sin() * (PI * radius).exp() * sum);
    }
    best
}

/// Terminal small-radius bound 0.73 e^{pi R}.
pub fn terminal_small_radius_bound(radius: f64) -> f64 {
    0.73 * (PI * radius).exp()
}

#[derive(Debug, Clone, Serialize)]
pub struct PositivityReport {
    pub radius: f64,
    pub grid_points: usize,
    /// Direct check of the slope inequality on [pi/(2R), pi/R].
    pub direct_check_passed: bool,
    /// Minimum of (bound - slope) over the grid.
    pub worst_margin: f64,
    pub worst_z: f64,
    pub large_radius_bound: f64,
    pub slope_bound_minimum: f64,
    /// large_radius_bound <= slope_bound_minimum.
    pub large_radius_condition: bool,
    pub envelope_maximum: f64,
    pub terminal_bound: f64,
    /// envelope <= terminal bound <= slope bound minimum.
    pub small_radius_condition: bool,
    /// Which sufficient condition fires ("large-radius", "small-radius",
    /// or "direct-grid-only").
    pub fired: String,
}

/// Run the direct grid check of the slope inequality on the critical window
/// together with both sufficient bound chains.
pub fn positivity_check(
    radius: f64,
    grid_points: usize,
    tp: &ThetaParams,
) -> Result<PositivityReport> {
    if grid_points < 2 {
        return Err(Error::invalid("grid_points must be at least 2"));
    }
    let z_lo = PI / (2.0 * radius);
    let z_hi = PI / radius;
    let mut worst_margin = f64::INFINITY;
    let mut worst_z = z_lo;
    for i in 0..grid_points {
        let z = z_lo + (z_hi - z_lo) * i as f64 / (grid_points - 1) as f64;
        let lhs = log_theta3_slope(radius, z, tp)?;
        let rhs = slope_bound(radius, z);
        let margin = rhs - lhs;
        if margin < worst_margin {
            worst_margin = margin;
            worst_z = z;
        }
    }
    let direct = worst_margin >= 0.0;

    let lr = large_radius_bound(radius);
    let rhs_min = slope_bound_minimum(radius);
    let lr_ok = lr <= rhs_min;

    let env = envelope_max(radius, 2001);
    let term = terminal_small_radius_bound(radius);
    let sr_ok = env <= term && term <= rhs_min;

    let fired = if lr_ok {
        "large-radius"
    } else if sr_ok {
        "small-radius"
    } else {
        "direct-grid-only"
    };

    Ok(PositivityReport {
        radius,
        grid_points,
        direct_check_passed: direct,
        worst_margin,
        worst_z,
        large_radius_bound: lr,
        slope_bound_minimum: rhs_min,
        large_radius_condition: lr_ok,
        envelope_maximum: env,
        terminal_bound: term,
        small_radius_condition: sr_ok,
        fired: fired.to_string(),
    })
}
