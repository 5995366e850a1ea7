//! Jacobi theta functions at purely imaginary modulus tau = iR.
//!
//! Conventions used throughout the crate, fixed by the series/product
//! cross-check below:
//!
//! * nome q = e^{-2 pi R} (so 0 < q < 1 for R > 0),
//! * theta1(x) = 2 sum_{n>=0} (-1)^n q^{(2n+1)^2/8} sin((2n+1) x),
//! * theta3(x) = 1 + 2 sum_{m>=1} q^{m^2/2} cos(2 m x),
//! * theta4(x) = 1 + 2 sum_{m>=1} (-1)^m q^{m^2/2} cos(2 m x).
//!
//! With this nome, theta1 has leading term 2 q^{1/8} sin(x), period relations
//! theta1(x + pi) = -theta1(x) and theta1(x + i pi R) = -q^{-1/2} e^{-2ix}
//! theta1(x), and zeros on the lattice x = n pi + m (i pi R). Some references
//! use a nome that is the square root of this one.
//!
//! Complex arguments are supported; series terms are assembled in exponential
//! form so that the Gaussian decay of the coefficients and the exponential
//! growth of sin/cos at large |Im x| are combined before exponentiation.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Modulus, nome and truncation controls for all theta evaluations.
#[derive(Debug, Clone, Copy)]
pub struct ThetaParams {
    /// R in tau = iR.
    pub r_modulus: f64,
    /// q = e^{-2 pi R}, recomputed from R at construction.
    pub nome: f64,
    /// Truncation tolerance relative to the largest accumulated term.
    pub tol: f64,
    pub max_terms: usize,
}

impl ThetaParams {
    pub fn new(r_modulus: f64) -> Result<Self> {
        Self::with_tol(r_modulus, 1e-15, 10_000)
    }

    pub fn with_tol(r_modulus: f64, tol: f64, max_terms: usize) -> Result<Self> {
        if !(r_modulus > 0.0) {
            return Err(Error::invalid("theta modulus R must be positive"));
        }
        if !(tol > 0.0) || max_terms == 0 {
            return Err(Error::invalid("theta tolerance and max_terms must be positive"));
        }
        Ok(ThetaParams {
            r_modulus,
            nome: (-2.0 * std::f64::consts::PI * r_modulus).exp(),
            tol,
            max_terms,
        })
    }

    fn log_nome(&self) -> f64 {
        -2.0 * std::f64::consts::PI * self.r_modulus
    }
}

fn cis(w: Complex64) -> Complex64 {
    // exp of a complex number given directly (helper name for readability).
    w.exp()
}

/// theta1 by its sine series.
pub fn theta1(x: Complex64, tp: &ThetaParams) -> Result<Complex64> {
    let lq = tp.log_nome();
    let b = x.im.abs();
    // Term exponents -pi R k^2 / 4 + k b peak at k = 2b/(pi R).
    let k_peak = 2.0 * b / (std::f64::consts::PI * tp.r_modulus);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut max_mag = 0.0f64;
    for n in 0..tp.max_terms {
        let k = (2 * n + 1) as f64;
        let l = k * k * lq / 8.0;
        let ikx = Complex64::new(0.0, k) * x;
        let term = Complex64::new(0.0, -1.0)
            * (cis(Complex64::new(l, 0.0) + ikx) - cis(Complex64::new(l, 0.0) - ikx));
        let term = if n % 2 == 0 { term } else { -term };
        sum += term;
        let mag = (l + k * b).exp();
        max_mag = max_mag.max(mag);
        if k > k_peak && mag < tp.tol * max_mag.max(1e-300) {
            return Ok(sum);
        }
    }
    Err(Error::convergence(
        "theta1",
        format!("series not truncated within {} terms", tp.max_terms),
        sum.norm(),
    ))
}

/// theta1 by the triple product: 2 q^{1/8} sin(x) prod (1-q^n)(1-q^n e^{2ix})(1-q^n e^{-2ix}).
pub fn theta1_product(x: Complex64, tp: &ThetaParams) -> Result<Complex64> {
    let q = tp.nome;
    let e2ix = cis(Complex64::new(0.0, 2.0) * x);
    let e2ix_inv = cis(Complex64::new(0.0, -2.0) * x);
    let scale = (tp.log_nome() / 8.0).exp();
    let mut prod = 2.0 * scale * x.sin();
    let mut qn = 1.0;
    let bound = 1.0 + e2ix.norm().max(e2ix_inv.norm());
    for n in 1..=tp.max_terms {
        qn *= q;
        prod = prod
            * (1.0 - qn)
            * (Complex64::new(1.0, 0.0) - qn * e2ix)
            * (Complex64::new(1.0, 0.0) - qn * e2ix_inv);
        if qn * bound < tp.tol {
            return Ok(prod);
        }
        let _ = n;
    }
    Err(Error::convergence(
        "theta1_product",
        format!("product not truncated within {} terms", tp.max_terms),
        prod.norm(),
    ))
}

/// theta1'(0, iR) by termwise differentiation of the sine series.
pub fn theta1_prime0(tp: &ThetaParams) -> Result<f64> {
    let lq = tp.log_nome();
    let mut sum = 0.0;
    for n in 0..tp.max_terms {
        let k = (2 * n + 1) as f64;
        let term = k * (k * k * lq / 8.0).exp();
        sum += if n % 2 == 0 { term } else { -term };
        if term < tp.tol * sum.abs().max(1e-300) && n > 0 {
            return Ok(2.0 * sum);
        }
    }
    Err(Error::convergence(
        "theta1_prime0",
        format!("series not truncated within {} terms", tp.max_terms),
        2.0 * sum,
    ))
}

/// theta1'(0, iR) by termwise differentiation of the triple product:
/// 2 q^{1/8} prod (1-q^n)^3. Kept as an independent route for cross-checks.
pub fn theta1_prime0_product(tp: &ThetaParams) -> Result<f64> {
    let q = tp.nome;
    let mut prod = 2.0 * (tp.log_nome() / 8.0).exp();
    let mut qn = 1.0;
    for _ in 1..=tp.max_terms {
        qn *= q;
        let f = 1.0 - qn;
        prod *= f * f * f;
        if qn < tp.tol {
            return Ok(prod);
        }
    }
    Err(Error::convergence(
        "theta1_prime0_product",
        format!("product not truncated within {} terms", tp.max_terms),
        prod,
    ))
}

/// theta1(i u, iR) / i for real u: a real odd function of u, positive for
/// u > 0, growing super-exponentially. This is the combination every
/// imaginary-argument kernel in the transforms uses.
pub fn theta1_imag_axis(u: f64, tp: &ThetaParams) -> Result<f64> {
    // theta1(iu) = 2 sum (-1)^n q^{(2n+1)^2/8} sin((2n+1) iu)
    //            = 2i sum (-1)^n q^{(2n+1)^2/8} sinh((2n+1) u).
    let lq = tp.log_nome();
    let ua = u.abs();
    let k_peak = 2.0 * ua / (std::f64::consts::PI * tp.r_modulus);
    let mut sum = 0.0f64;
    let mut max_mag = 0.0f64;
    for n in 0..tp.max_terms {
        let k = (2 * n + 1) as f64;
        let l = k * k * lq / 8.0;
        // sinh(k u) = sign(u) (e^{k|u|} - e^{-k|u|})/2
        let mag = (l + k * ua).exp();
        let term = 0.5 * mag * (1.0 - (-2.0 * k * ua).exp()) * u.signum();
        sum += if n % 2 == 0 { term } else { -term };
        max_mag = max_mag.max(mag);
        if k > k_peak && mag < tp.tol * max_mag.max(1e-300) {
            return Ok(2.0 * sum);
        }
    }
    Err(Error::convergence(
        "theta1_imag_axis",
        format!("series not truncated within {} terms", tp.max_terms),
        2.0 * sum,
    ))
}

fn theta34(x: Complex64, tp: &ThetaParams, alternating: bool) -> Result<Complex64> {
    let lq = tp.log_nome();
    let b = x.im.abs();
    let m_peak = b / (std::f64::consts::PI * tp.r_modulus);
    let mut sum = Complex64::new(1.0, 0.0);
    let mut max_mag = 1.0f64;
    for m in 1..=tp.max_terms {
        let mf = m as f64;
        let l = mf * mf * lq / 2.0;
        let imx = Complex64::new(0.0, 2.0 * mf) * x;
        let mut term = cis(Complex64::new(l, 0.0) + imx) + cis(Complex64::new(l, 0.0) - imx);
        if alternating && m % 2 == 1 {
            term = -term;
        }
        sum += term;
        let mag = (l + 2.0 * mf * b).exp();
        max_mag = max_mag.max(mag);
        if mf > m_peak && mag < tp.tol * max_mag {
            return Ok(sum);
        }
    }
    Err(Error::convergence(
        if alternating { "theta4" } else { "theta3" },
        format!("series not truncated within {} terms", tp.max_terms),
        sum.norm(),
    ))
}

/// theta3 at modulus iR.
pub fn theta3(x: Complex64, tp: &ThetaParams) -> Result<Complex64> {
    theta34(x, tp, false)
}

/// theta4 at modulus iR.
pub fn theta4(x: Complex64, tp: &ThetaParams) -> Result<Complex64> {
    theta34(x, tp, true)
}

/// d/dx theta3(x, iR), termwise.
pub fn theta3_dz(x: Complex64, tp: &ThetaParams) -> Result<Complex64> {
    theta3_derivative(x, tp, 1)
}

/// d^2/dx^2 theta3(x, iR), termwise.
pub fn theta3_dz2(x: Complex64, tp: &ThetaParams) -> Result<Complex64> {
    theta3_derivative(x, tp, 2)
}

fn theta3_derivative(x: Complex64, tp: &ThetaParams, order: u32) -> Result<Complex64> {
    let lq = tp.log_nome();
    let b = x.im.abs();
    let m_peak = b / (std::f64::consts::PI * tp.r_modulus);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut max_mag = 1.0f64;
    for m in 1..=tp.max_terms {
        let mf = m as f64;
        let l = mf * mf * lq / 2.0;
        let imx = Complex64::new(0.0, 2.0 * mf) * x;
        let d = Complex64::new(0.0, 2.0 * mf).powu(order);
        let term = d
            * (cis(Complex64::new(l, 0.0) + imx)
                + if order % 2 == 0 { 1.0 } else { -1.0 } * cis(Complex64::new(l, 0.0) - imx));
        sum += term;
        let mag = (l + 2.0 * mf * b).exp() * (2.0 * mf).powi(order as i32);
        max_mag = max_mag.max(mag);
        if mf > m_peak && mag < tp.tol * max_mag {
            return Ok(sum);
        }
    }
    Err(Error::convergence(
        "theta3_derivative",
        format!("series not truncated within {} terms", tp.max_terms),
        sum.norm(),
    ))
}
