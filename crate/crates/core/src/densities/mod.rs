//! Radial zero-mode densities and the Schrodinger potentials they induce.
//!
//! Everything here lives on the half-line r >= 0. A density delta(r) comes
//! with analytic logarithmic derivatives and a normalization constant Z
//! computed by quadrature, so that delta/Z has unit mass.

pub mod finite_radius;
pub mod positivity;

use crate::error::{Error, Result};
use crate::numerics::{integrate_interval, QuadratureSpec};

type RealFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;
type RealResultFn = Box<dyn Fn(f64) -> Result<f64> + Send + Sync>;

/// A radial density with analytic log-derivatives and cached normalization.
pub struct RadialDensity {
    eval: RealFn,
    log_deriv: RealFn,
    log_second: RealFn,
    /// Z = integral of delta over [0, infinity).
    pub normalization: f64,
    pub label: String,
}

impl RadialDensity {
    pub fn evaluate(&self, r: f64) -> f64 {
        (self.eval)(r)
    }

    /// (ln delta)'(r).
    pub fn log_derivative(&self, r: f64) -> f64 {
        (self.log_deriv)(r)
    }

    /// (ln delta)''(r).
    pub fn log_second(&self, r: f64) -> f64 {
        (self.log_second)(r)
    }

    /// delta(r)/Z.
    pub fn normalized(&self, r: f64) -> f64 {
        (self.eval)(r) / self.normalization
    }

    /// Recompute Z by quadrature (the cached value is produced the same way;
    /// exposed so tests can vary the truncation).
    pub fn recompute_normalization(&self, r_cut: f64) -> Result<f64> {
        half_line_mass(&self.eval, r_cut)
    }
}

fn half_line_mass(f: &RealFn, r_cut: f64) -> Result<f64> {
    let spec = QuadratureSpec {
        abs_tol: 1e-12,
        rel_tol: 1e-10,
        truncation_radius: None,
        max_subdivisions: 4000,
    };
    let (v, _) = integrate_interval(|r| f(r), 0.0, r_cut, &spec)?;
    Ok(v)
}

/// A potential q(r) for the half-line operator -D^2 + q.
pub struct PotentialProfile {
    eval: RealResultFn,
    /// lim q(r) as r -> infinity, when it exists in closed form.
    pub continuum_threshold: Option<f64>,
}

impl PotentialProfile {
    pub fn new<F>(eval: F, continuum_threshold: Option<f64>) -> Self
    where
        F: Fn(f64) -> Result<f64> + Send + Sync + 'static,
    {
        PotentialProfile {
            eval: Box::new(eval),
            continuum_threshold,
        }
    }

    pub fn evaluate(&self, r: f64) -> Result<f64> {
        (self.eval)(r)
    }
}

/// The infinite-radius radial density sech(r) tanh^2(r).
pub fn delta_infinity() -> Result<RadialDensity> {
    let eval: RealFn = Box::new(|r: f64| {
        let s = 1.0 / r.cosh();
        s * r.tanh() * r.tanh()
    });
    // ln delta = ln sech r + 2 ln tanh r.
    let log_deriv: RealFn = Box::new(|r: f64| -r.tanh() + 4.0 / (2.0 * r).sinh());
    let log_second: RealFn = Box::new(|r: f64| {
        let sech2 = 1.0 / (r.cosh() * r.cosh());
        let s2 = (2.0 * r).sinh();
        -sech2 - 8.0 * (2.0 * r).cosh() / (s2 * s2)
    });
    let normalization = half_line_mass(&eval, 40.0)?;
    Ok(RadialDensity {
        eval,
        log_deriv,
        log_second,
        normalization,
        label: "delta_infinity".into(),
    })
}

/// The unnormalized zero-mode density on the group for SU(2), as a function
/// of |x|: sech(2x) (tanh(2x)/(2x))^2, with the removable singularity at 0.
pub fn g0_density_su2(x_norm: f64) -> f64 {
    if x_norm == 0.0 {
        return 1.0;
    }
    let t = (2.0 * x_norm).tanh() / (2.0 * x_norm);
    t * t / (2.0 * x_norm).cosh()
}

/// The closed-form diagonal density at level l (unnormalized):
/// sinh((2+l)x) / (8 cosh^3((2+l)x) sinh(2x)), written via the explicit
/// ratio of exponentials rather than any character convention.
pub fn phi_level_closed(level: f64, x: f64) -> Result<f64> {
    if !(level >= 0.0) {
        return Err(Error::invalid("level must be nonnegative"));
    }
    let k = 2.0 + level;
    if x == 0.0 {
        // sinh(kx)/sinh(2x) -> k/2.
        return Ok(k / 16.0);
    }
    let c = (k * x).cosh();
    Ok((k * x).sinh() / (8.0 * c * c * c * (2.0 * x).sinh()))
}

/// The level-l radial density sech^3(r) sinh(r) sinh(a r), a = 2/(2+l).
pub fn delta_level(level: f64) -> Result<RadialDensity> {
    if !(level >= 0.0) {
        return Err(Error::invalid("level must be nonnegative"));
    }
    let a = 2.0 / (2.0 + level);
    let eval: RealFn = Box::new(move |r: f64| {
        let s = 1.0 / r.cosh();
        s * s * s * r.sinh() * (a * r).sinh()
    });
    let log_deriv: RealFn = Box::new(move |r: f64| {
        -3.0 * r.tanh() + 1.0 / r.tanh() + a / (a * r).tanh()
    });
    let log_second: RealFn = Box::new(move |r: f64| {
        let csch = 1.0 / r.sinh();
        let csch_a = 1.0 / (a * r).sinh();
        -3.0 / (r.cosh() * r.cosh()) - csch * csch - a * a * csch_a * csch_a
    });
    // Decay rate 2 - a >= 1, so a cut at 60 is far below tolerance even at a = 1.
    let normalization = half_line_mass(&eval, 60.0)?;
    Ok(RadialDensity {
        eval,
        log_deriv,
        log_second,
        normalization,
        label: format!("delta_level({level})"),
    })
}

/// Switchover radius below which the potential uses series expansions for
/// the individually singular coth/tanh combinations.
const SERIES_SWITCHOVER: f64 = 1e-3;

/// tanh(r)/tanh(a r), stable at small r.
fn tanh_ratio(a: f64, r: f64) -> f64 {
    if r.abs() < SERIES_SWITCHOVER {
        let u = r * r;
        // (1 - u/3 + 2u^2/15) / (1 - a^2 u/3 + 2 a^4 u^2/15), expanded.
        let c2 = (a * a - 1.0) / 3.0;
        let c4 = 2.0 / 15.0 - a * a / 9.0 - a.powi(4) / 45.0;
        (1.0 + c2 * u + c4 * u * u) / a
    } else {
        r.tanh() / (a * r).tanh()
    }
}

/// a coth(a r) - coth(r), stable at small r.
fn coth_gap(a: f64, r: f64) -> f64 {
    if r.abs() < SERIES_SWITCHOVER {
        let u = r * r;
        (a * a - 1.0) * r / 3.0 - (a.powi(4) - 1.0) * r * u / 45.0
    } else {
        a / (a * r).tanh() - 1.0 / r.tanh()
    }
}

/// The level-l radial potential
/// q(r) = (5 + 2a^2 - 6a tanh(r)/tanh(ar) - (a coth(ar) - coth(r))^2 - 15 sech^2 r) / 4,
/// with the removable singularity at r = 0 evaluated by series and the
/// continuum threshold (a-2)^2/4 = ((1+l)/(2+l))^2 attached.
pub fn potential_level(level: f64) -> Result<PotentialProfile> {
    if !(level >= 0.0) {
        return Err(Error::invalid("level must be nonnegative"));
    }
    let a = 2.0 / (2.0 + level);
    let eval: RealResultFn = Box::new(move |r: f64| {
        if r < 0.0 {
            return Err(Error::Domain("potential evaluated at negative r".into()));
        }
        let sech = 1.0 / r.cosh();
        let t = tanh_ratio(a, r);
        let s = coth_gap(a, r);
        Ok(0.25 * (5.0 + 2.0 * a * a - 6.0 * a * t - s * s - 15.0 * sech * sech))
    });
    let threshold = 0.25 * (a - 2.0) * (a - 2.0);
    Ok(PotentialProfile {
        eval,
        continuum_threshold: Some(threshold),
    })
}
