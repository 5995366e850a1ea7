//! c-function products and the transform identities built on them: the
//! classical and affine c-functions, their Gamma form, the finite-radius
//! theta deformation, the Fourier pairs behind the inversion machinery, and
//! the Poisson lattice sum.

use crate::error::{Error, Result};
use crate::numerics::{gamma_complex, integrate_line, QuadratureSpec};
use crate::root_systems::{RootSystem, SpectralParameter};
use crate::theta::{self, theta1_prime0, ThetaParams};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Level and radius of the deformed model.
#[derive(Debug, Clone, Copy)]
pub struct ModelParams {
    /// Level l >= 0 (any nonnegative real; integrality is not enforced).
    pub level: f64,
    /// Circle radius; `None` means the infinite-radius limit.
    pub radius: Option<f64>,
}

impl ModelParams {
    pub fn new(level: f64, radius: Option<f64>) -> Result<Self> {
        if !(level >= 0.0) {
            return Err(Error::invalid("level must be nonnegative"));
        }
        if let Some(r) = radius {
            if !(r > 0.0) {
                return Err(Error::invalid("radius must be positive"));
            }
        }
        Ok(ModelParams { level, radius })
    }

    pub fn infinite_radius(level: f64) -> Result<Self> {
        Self::new(level, None)
    }

    /// The rank-one convenience constant a = 2/(2+l), recomputed on access.
    pub fn rank_one_a(&self) -> f64 {
        2.0 / (2.0 + self.level)
    }
}

/// Classical c-function: prod over positive roots of <rho,a> / <rho - i lambda, a>.
pub fn hc_c_function(rs: &RootSystem, lam: &SpectralParameter) -> Complex64 {
    let mut prod = Complex64::new(1.0, 0.0);
    for alpha in &rs.positive_roots {
        let ra = rs.pairing(&rs.rho, alpha);
        let la = rs.pairing(&lam.coords, alpha);
        prod *= Complex64::new(ra, 0.0) / Complex64::new(ra, -la);
    }
    prod
}

/// Affine c-function at level l:
/// prod over positive roots of sin(pi <rho,a> / (2(g+l))) / sin(pi <rho - i lambda, a> / (2(g+l))).
///
/// The sine denominator never vanishes for real lambda because
/// 0 < pi <rho,a> / (2(g+l)) < pi.
pub fn affine_c_function(
    rs: &RootSystem,
    params: &ModelParams,
    lam: &SpectralParameter,
) -> Complex64 {
    let denom = 2.0 * (rs.dual_coxeter as f64 + params.level);
    let mut prod = Complex64::new(1.0, 0.0);
    for alpha in &rs.positive_roots {
        let ra = rs.pairing(&rs.rho, alpha);
        let la = rs.pairing(&lam.coords, alpha);
        let num = (PI * ra / denom).sin();
        let den = Complex64::new(PI * ra / denom, -PI * la / denom).sin();
        prod *= Complex64::new(num, 0.0) / den;
    }
    prod
}

/// Both sides of the Gamma form of the transform at level l.
///
/// lhs = c * prod over positive roots of <-i lambda, a> / sin(pi <-i lambda, a> / (2(g+l)))
/// with c fixed so lhs -> rhs as lambda -> 0, and
/// rhs = prod over all roots (both signs) of Gamma(1 + i <lambda, a> / (2(g+l))).
///
/// The Gamma argument carries no extra factor of pi: with it the two sides
/// are not proportional, without it lhs = rhs identically (checked by the
/// tests against an independent Lanczos Gamma).
pub fn hc_transform_gamma_form(
    rs: &RootSystem,
    params: &ModelParams,
    lam: &SpectralParameter,
) -> (Complex64, Complex64) {
    let denom = 2.0 * (rs.dual_coxeter as f64 + params.level);
    let mut lhs = Complex64::new(1.0, 0.0);
    let mut rhs = Complex64::new(1.0, 0.0);
    for alpha in &rs.positive_roots {
        let la = rs.pairing(&lam.coords, alpha);
        // factor = <-i lambda, a> / sin(pi <-i lambda, a> / denom), with the
        // analytic limit denom/pi at <lambda, a> = 0; normalized by c = pi/denom.
        let factor = if la.abs() < 1e-12 {
            Complex64::new(denom / PI, 0.0)
        } else {
            let w = Complex64::new(0.0, -la);
            w / (w * PI / denom).sin()
        };
        lhs *= factor * (PI / denom);

        let v = la / denom;
        rhs *= gamma_complex(Complex64::new(1.0, v)) * gamma_complex(Complex64::new(1.0, -v));
    }
    (lhs, rhs)
}

/// Finite-radius theta deformation of the affine c-function:
/// c * prod over positive roots of
///   sinh(pi u / (2 R (g+l))) / (u * theta1(pi u / (2(g+l)), iR)),  u = <rho - i lambda, a>,
/// normalized so the value at lambda = 0 is 1.
pub fn finite_r_transform(
    rs: &RootSystem,
    params: &ModelParams,
    lam: &SpectralParameter,
    tp: &ThetaParams,
) -> Result<Complex64> {
    let radius = params
        .radius
        .ok_or_else(|| Error::invalid("finite_r_transform requires a finite radius"))?;
    if (radius - tp.r_modulus).abs() > 1e-12 * radius {
        return Err(Error::invalid("theta params modulus must equal the model radius"));
    }
    let gl = rs.dual_coxeter as f64 + params.level;

    let factor = |u: Complex64| -> Result<Complex64> {
        let num = (u * PI / (2.0 * radius * gl)).sinh();
        let den = u * theta::theta1(u * PI / (2.0 * gl), tp)?;
        Ok(num / den)
    };

    let mut prod = Complex64::new(1.0, 0.0);
    for alpha in &rs.positive_roots {
        let ra = rs.pairing(&rs.rho, alpha);
        let la = rs.pairing(&lam.coords, alpha);
        let f = factor(Complex64::new(ra, -la))?;
        let f0 = factor(Complex64::new(ra, 0.0))?;
        prod *= f / f0;
    }
    Ok(prod)
}

/// The single-variable kernel of the deformed transform in rank one, as a
/// function of s = <lambda, alpha>:
///
///   K(s) = sin(pi s / (2 R (g+l))) / [ theta1(i pi s / (2(g+l)), iR) / i ].
///
/// The zeros of the sine at s in 2R(g+l)Z cancel the zeros of the theta
/// factor, so K extends continuously across them; the s = 0 limit is
/// 1/(R theta1'(0)).
pub fn transform_kernel_rank1(s: f64, gl: f64, tp: &ThetaParams) -> Result<f64> {
    let radius = tp.r_modulus;
    let u = PI * s / (2.0 * gl);
    if u.abs() < 1e-6 {
        // sin(u/R)/u / (t(u)/u) with both ratios at their limits.
        let sin_over = if u == 0.0 {
            1.0 / radius
        } else {
            (u / radius).sin() / u
        };
        let t_over = theta1_imag_over_u(u, tp)?;
        return Ok(sin_over / t_over);
    }
    let num = (u / radius).sin();
    let den = theta::theta1_imag_axis(u, tp)?;
    Ok(num / den)
}

/// theta1(iu, iR)/(i u): finite and positive at u = 0 (value theta1'(0)).
fn theta1_imag_over_u(u: f64, tp: &ThetaParams) -> Result<f64> {
    if u.abs() >= 1e-3 {
        return Ok(theta::theta1_imag_axis(u, tp)? / u);
    }
    // Series with sinh(ku)/u expanded to O(u^4).
    let lq = -2.0 * PI * tp.r_modulus;
    let mut sum = 0.0;
    for n in 0..tp.max_terms {
        let k = (2 * n + 1) as f64;
        let w = (k * k * lq / 8.0).exp();
        let ku = k * u;
        let sinh_over = k * (1.0 + ku * ku / 6.0 * (1.0 + ku * ku / 20.0));
        let term = w * sinh_over;
        sum += if n % 2 == 0 { term } else { -term };
        if w * k < tp.tol * sum.abs().max(1e-300) && n > 1 {
            return Ok(2.0 * sum);
        }
    }
    Err(Error::convergence(
        "theta1_imag_over_u",
        "series not truncated",
        2.0 * sum,
    ))
}

/// A quadrature value and the closed form it is checked against.
#[derive(Debug, Clone, Copy)]
pub struct FourierPair {
    pub quadrature: f64,
    pub closed_form: f64,
    /// Residual of the analytically-vanishing component, kept as a self-check.
    pub imag_residual: f64,
    pub quadrature_error: f64,
}

impl FourierPair {
    pub fn relative_error(&self) -> f64 {
        (self.quadrature - self.closed_form).abs() / self.closed_form.abs().max(1e-300)
    }
}

/// Truncation radius for integrands bounded by exp(-y^2/(pi R) + slack*y).
fn gaussian_radius(r_modulus: f64, linear_slack: f64, abs_tol: f64) -> f64 {
    let alpha = 1.0 / (PI * r_modulus);
    let beta = linear_slack;
    let target = (1.0 / abs_tol).ln() + 5.0;
    (beta + (beta * beta + 4.0 * alpha * target).sqrt()) / (2.0 * alpha)
}

/// Fourier transform of the reciprocal odd theta function along a horizontal
/// line: quadrature of (1/2pi) int e^{ipy} / theta1(x0 + iy, iR) dy against
/// its closed form theta4(pi R p/2, iR) / (theta1'(0) (e^{x0 p} + e^{(x0-pi) p})).
pub fn reciprocal_theta1_fourier(x0: f64, p: f64, tp: &ThetaParams) -> Result<FourierPair> {
    if !(x0 > 0.0 && x0 < PI) {
        return Err(Error::invalid("x0 must lie in (0, pi)"));
    }
    let spec = QuadratureSpec {
        abs_tol: 1e-13,
        rel_tol: 1e-12,
        truncation_radius: Some(gaussian_radius(tp.r_modulus, p.abs() + 3.0, 1e-13)),
        max_subdivisions: 20_000,
    };

    let integrand = |y: f64, re_part: bool| -> f64 {
        let th = match theta::theta1(Complex64::new(x0, y), tp) {
            Ok(v) => v,
            Err(_) => return 0.0,
        };
        if !th.re.is_finite() || !th.im.is_finite() || th.norm() == 0.0 {
            // Far-tail underflow/overflow of theta1: the reciprocal is 0.
            return 0.0;
        }
        let v = Complex64::new(0.0, p * y).exp() / th;
        if re_part {
            v.re
        } else {
            v.im
        }
    };

    let (re, err) = integrate_line(|y| integrand(y, true), 1.0, &spec)?;
    let (im, _) = integrate_line(|y| integrand(y, false), 1.0, &spec)?;

    let t4 = theta::theta4(Complex64::new(PI * tp.r_modulus * p / 2.0, 0.0), tp)?.re;
    let t1p = theta1_prime0(tp)?;
    let closed = t4 / (t1p * ((x0 * p).exp() + ((x0 - PI) * p).exp()));

    Ok(FourierPair {
        quadrature: re / (2.0 * PI),
        closed_form: closed,
        imag_residual: (im / (2.0 * PI)).abs(),
        quadrature_error: err / (2.0 * PI),
    })
}

/// Fourier transform of the rank-one inversion kernel: quadrature of
/// (i/2pi) int (y/theta1(iy)) (sinh(iy/R)/(iy/R)) e^{ipy} dy, reduced to its
/// real even form (1/2pi) int R sin(y/R)/[theta1(iy)/i] cos(py) dy, against
/// the closed form
/// R sinh(pi/R) theta3(pi R p/2, iR) / (4 theta1'(0) (sinh^2(pi/(2R)) + cosh^2(pi p/2))).
pub fn inversion_kernel_fourier(p: f64, tp: &ThetaParams) -> Result<FourierPair> {
    let r = tp.r_modulus;
    let spec = QuadratureSpec {
        abs_tol: 1e-13,
        rel_tol: 1e-12,
        truncation_radius: Some(gaussian_radius(r, 4.0, 1e-13)),
        max_subdivisions: 20_000,
    };

    // g(y) = R sin(y/R) / t(y), even, with removable singularity at 0.
    let g = |y: f64| -> f64 {
        if y.abs() < 1e-6 {
            let sin_over = if y == 0.0 { 1.0 / r } else { (y / r).sin() / y };
            match theta1_imag_over_u(y, tp) {
                Ok(t) => r * sin_over / t,
                Err(_) => 0.0,
            }
        } else {
            match theta::theta1_imag_axis(y, tp) {
                Ok(t) if t.is_finite() && t != 0.0 => r * (y / r).sin() / t,
                _ => 0.0,
            }
        }
    };

    let (re, err) = integrate_line(|y| g(y) * (p * y).cos(), 1.0, &spec)?;
    // The odd component integrates to zero analytically; evaluate it as a
    // numerical self-check.
    let (odd, _) = integrate_line(|y| g(y) * (p * y).sin(), 1.0, &spec)?;

    let t1p = theta1_prime0(tp)?;
    let t3 = theta::theta3(Complex64::new(PI * r * p / 2.0, 0.0), tp)?.re;
    let s = (PI / (2.0 * r)).sinh();
    let c = (PI * p / 2.0).cosh();
    let closed = r * (PI / r).sinh() * t3 / (4.0 * t1p * (s * s + c * c));

    Ok(FourierPair {
        quadrature: re / (2.0 * PI),
        closed_form: closed,
        imag_residual: (odd / (2.0 * PI)).abs(),
        quadrature_error: err / (2.0 * PI),
    })
}

/// Fourier transform of a single triple-product factor: quadrature of
/// (1/2pi) int e^{ipy} / (1 - 2 cos(2(x0+iy)) q^n + q^{2n}) dy against the
/// residue-sum closed form
///
///   sin(pi n R p) e^{-x0 p} / ((1 - q^{2n}) (1 - e^{-pi p})),
///
/// with the p -> 0 limit n R / (1 - q^{2n}).
pub fn product_factor_fourier(x0: f64, n: u32, p: f64, tp: &ThetaParams) -> Result<FourierPair> {
    if !(x0 > 0.0 && x0 < PI) {
        return Err(Error::invalid("x0 must lie in (0, pi)"));
    }
    if n == 0 {
        return Err(Error::invalid("factor index n must be >= 1"));
    }
    let r = tp.r_modulus;
    let qn = tp.nome.powi(n as i32);
    let q2n = qn * qn;

    // The integrand is O(1) out to |y| ~ pi R n and then decays like e^{-2|y|}.
    let shoulder = PI * r * n as f64;
    let spec = QuadratureSpec {
        abs_tol: 1e-13,
        rel_tol: 1e-12,
        truncation_radius: Some(shoulder + ((1.0 / 1e-13f64).ln() + 5.0) / 2.0),
        max_subdivisions: 40_000,
    };

    let integrand = |y: f64, re_part: bool| -> f64 {
        let z = Complex64::new(x0, y);
        let den = Complex64::new(1.0 + q2n, 0.0) - 2.0 * qn * (2.0 * z).cos();
        if !den.re.is_finite() || !den.im.is_finite() || den.norm() == 0.0 {
            return 0.0;
        }
        let v = Complex64::new(0.0, p * y).exp() / den;
        if re_part {
            v.re
        } else {
            v.im
        }
    };

    let (re, err) = integrate_line(|y| integrand(y, true), 1.0, &spec)?;
    let (im, _) = integrate_line(|y| integrand(y, false), 1.0, &spec)?;

    let nrp = PI * n as f64 * r * p;
    let closed = if (PI * p).abs() < 1e-5 {
        // Joint limit of sin(pi n R p)/(1 - e^{-pi p}) as p -> 0.
        let a = nrp;
        let b = PI * p;
        (n as f64) * r * (-x0 * p).exp() * (1.0 - a * a / 6.0)
            / ((1.0 - q2n) * (1.0 - b / 2.0 + b * b / 6.0))
    } else {
        nrp.sin() * (-x0 * p).exp() / ((1.0 - q2n) * (1.0 - (-PI * p).exp()))
    };

    Ok(FourierPair {
        quadrature: re / (2.0 * PI),
        closed_form: closed,
        imag_residual: (im / (2.0 * PI)).abs(),
        quadrature_error: err / (2.0 * PI),
    })
}

/// Both sides of the lattice sum identity
/// sum_{n>=1} 1/(alpha^2 + n^2) = (pi coth(pi alpha)/alpha - 1/alpha^2) / 2.
///
/// The left side is summed directly to N terms and completed with an
/// Euler-Maclaurin tail (arctan integral plus two correction terms), which
/// reaches well below 1e-12 without the ~10^10 raw terms the series itself
/// would need.
pub fn poisson_lattice_sum(alpha: f64) -> Result<(f64, f64)> {
    if !(alpha > 0.0) {
        return Err(Error::invalid("alpha must be positive"));
    }
    let n_direct: u64 = 5000;
    let mut lhs = 0.0f64;
    for n in 1..=n_direct {
        let nf = n as f64;
        lhs += 1.0 / (alpha * alpha + nf * nf);
    }
    // Tail from a = N+1: sum_{n>=a} f(n) = int_a^inf f + f(a)/2 - f'(a)/12 + f'''(a)/720 + ...
    let a = (n_direct + 1) as f64;
    let u = alpha * alpha + a * a;
    let f_a = 1.0 / u;
    let fp_a = -2.0 * a / (u * u);
    let fppp_a = 24.0 * a / (u * u * u) - 48.0 * a * a * a / (u * u * u * u);
    let integral = (alpha / a).atan() / alpha;
    lhs += integral + f_a / 2.0 - fp_a / 12.0 + fppp_a / 720.0;

    let rhs = 0.5 * (PI / (alpha * (PI * alpha).tanh()) - 1.0 / (alpha * alpha));
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_systems::build_type_a;

    fn a1() -> RootSystem {
        build_type_a(2).unwrap()
    }

    #[test]
    fn hc_c_is_one_at_zero() {
        let rs = a1();
        let v = hc_c_function(&rs, &SpectralParameter::zero(&rs));
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn hc_c_rank_one_value() {
        // lambda = alpha: <rho,a> = 2, <lambda,a> = 2, so 2/(2-2i) = (1+i)/2.
        let rs = a1();
        let lam = SpectralParameter::multiple_of(&rs.positive_roots[0], 1.0);
        let v = hc_c_function(&rs, &lam);
        assert!((v - Complex64::new(0.5, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn hc_c_a2_factor_by_factor() {
        let rs = build_type_a(3).unwrap();
        let lam = SpectralParameter::along_rho(&rs, 0.5);
        let v = hc_c_function(&rs, &lam);
        let mut oracle = Complex64::new(1.0, 0.0);
        for alpha in &rs.positive_roots {
            let ra = rs.pairing(&rs.rho, alpha);
            let la = rs.pairing(&lam.coords, alpha);
            oracle *= Complex64::new(ra, 0.0) / Complex64::new(ra, -la);
        }
        assert!((v - oracle).norm() < 1e-15);
    }

    #[test]
    fn affine_c_rank_one_sech() {
        let rs = a1();
        let params = ModelParams::new(0.0, None).unwrap();
        for lam0 in [0.3, 0.9, 1.7] {
            let lam = SpectralParameter::multiple_of(&rs.positive_roots[0], lam0);
            let v = affine_c_function(&rs, &params, &lam);
            // sin(pi/2) / sin(pi/2 - i pi lam0/2) = sech(pi lam0 / 2).
            let want = 1.0 / (PI * lam0 / 2.0).cosh();
            assert!((v.re - want).abs() < 1e-14 && v.im.abs() < 1e-14, "lam0={lam0}");
        }
        let zero = affine_c_function(&rs, &params, &SpectralParameter::zero(&rs));
        assert!((zero - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn affine_c_approaches_classical_at_large_level() {
        let rs = a1();
        let lam = SpectralParameter::multiple_of(&rs.positive_roots[0], 1.0);
        let classical = hc_c_function(&rs, &lam);
        let mut prev = f64::INFINITY;
        for level in [1e2, 1e3, 1e4] {
            let params = ModelParams::new(level, None).unwrap();
            let v = affine_c_function(&rs, &params, &lam);
            let err = (v - classical).norm() / classical.norm();
            assert!(err < prev, "error not shrinking at level {level}");
            prev = err;
        }
        assert!(prev < 1e-3);
    }

    #[test]
    fn gamma_form_identity_rank_one() {
        let rs = a1();
        for level in [0.0, 2.0] {
            let params = ModelParams::new(level, None).unwrap();
            for lam0 in [0.7, 1.3] {
                let lam = SpectralParameter::multiple_of(&rs.positive_roots[0], lam0);
                let (lhs, rhs) = hc_transform_gamma_form(&rs, &params, &lam);
                let ratio = lhs / rhs;
                assert!(
                    (ratio - Complex64::new(1.0, 0.0)).norm() < 1e-8,
                    "l={level} lam0={lam0}: ratio {ratio}"
                );
            }
            // At lambda = 0 both sides equal 1 by the fitted constant.
            let (l0, r0) = hc_transform_gamma_form(&rs, &params, &SpectralParameter::zero(&rs));
            assert!((l0 - r0).norm() < 1e-12);
        }
    }

    #[test]
    fn finite_r_transform_normalization_and_limit() {
        let rs = a1();
        let tp = ThetaParams::new(50.0).unwrap();
        let params = ModelParams::new(0.0, Some(50.0)).unwrap();
        let zero = finite_r_transform(&rs, &params, &SpectralParameter::zero(&rs), &tp).unwrap();
        assert!((zero - Complex64::new(1.0, 0.0)).norm() < 1e-14);

        // Pointwise approach to the affine c-function as R grows; the
        // convergence rate is 1/R^2 from the sinh factor.
        let lam = SpectralParameter::multiple_of(&rs.positive_roots[0], 0.8);
        let affine = affine_c_function(&rs, &params, &lam);
        let mut prev = f64::INFINITY;
        for r in [10.0, 25.0, 50.0] {
            let tp = ThetaParams::new(r).unwrap();
            let params = ModelParams::new(0.0, Some(r)).unwrap();
            let v = finite_r_transform(&rs, &params, &lam, &tp).unwrap();
            let err = (v - affine).norm() / affine.norm();
            assert!(err < prev, "error not shrinking at R={r}");
            prev = err;
        }
        assert!(prev < 1e-3);
    }

    #[test]
    fn finite_r_gram_matrix_positive() {
        // 3x3 Gram spot check of positive definiteness along a line.
        let rs = a1();
        let tp = ThetaParams::new(1.0).unwrap();
        let params = ModelParams::new(0.0, Some(1.0)).unwrap();
        let grid = [-0.8, 0.0, 0.8];
        let mut m = vec![vec![Complex64::new(0.0, 0.0); 3]; 3];
        for (j, &a) in grid.iter().enumerate() {
            for (k, &b) in grid.iter().enumerate() {
                let lam = SpectralParameter::multiple_of(&rs.positive_roots[0], a - b);
                m[j][k] = finite_r_transform(&rs, &params, &lam, &tp).unwrap();
            }
        }
        let eigs = crate::numerics::hermitian_eigenvalues(&m);
        assert!(eigs.iter().all(|&e| e >= -1e-9), "eigs {eigs:?}");
    }

    #[test]
    fn kernel_extends_across_sine_zeros() {
        // At R = 1, l = 0 (so g + l = 2) the sine zeros sit at s in 4Z and
        // cancel against the theta zeros; the kernel must vary smoothly
        // across s = 4.
        let tp = ThetaParams::new(1.0).unwrap();
        let a = transform_kernel_rank1(3.9999, 2.0, &tp).unwrap();
        let b = transform_kernel_rank1(4.0001, 2.0, &tp).unwrap();
        assert!(a.is_finite() && b.is_finite());
        assert!((a - b).abs() < 1e-3 * a.abs());
        // Frozen from the independent evaluation of both factors.
        assert!((a - 0.0476645880454093).abs() < 1e-10, "got {a}");
    }

    #[test]
    fn reciprocal_theta_pair_at_reference_point() {
        let tp = ThetaParams::new(1.0).unwrap();
        let pair = reciprocal_theta1_fourier(0.3, 0.5, &tp).unwrap();
        assert!(pair.relative_error() < 1e-9, "rel {}", pair.relative_error());
        assert!(pair.imag_residual < 1e-10);

        // Symmetry at x0 = pi/2: closed form even in p.
        let a = reciprocal_theta1_fourier(PI / 2.0, 0.8, &tp).unwrap();
        let b = reciprocal_theta1_fourier(PI / 2.0, -0.8, &tp).unwrap();
        assert!((a.closed_form - b.closed_form).abs() < 1e-14);

        // Positivity of the closed form on a p grid.
        for p in [-2.0, -1.0, 0.0, 1.0, 2.0] {
            let pair = reciprocal_theta1_fourier(0.3, p, &tp).unwrap();
            assert!(pair.closed_form > 0.0);
        }
    }

    #[test]
    fn inversion_kernel_pair_and_symmetry() {
        let tp = ThetaParams::new(1.0).unwrap();
        let pair = inversion_kernel_fourier(0.7, &tp).unwrap();
        assert!(pair.relative_error() < 1e-9, "rel {}", pair.relative_error());
        assert!(pair.imag_residual < 1e-10);

        let a = inversion_kernel_fourier(1.3, &tp).unwrap();
        let b = inversion_kernel_fourier(-1.3, &tp).unwrap();
        assert!((a.closed_form - b.closed_form).abs() < 1e-14);

        // p = 0 value, frozen from the independent evaluation.
        let z = inversion_kernel_fourier(0.0, &tp).unwrap();
        assert!((z.closed_form - 0.5494385573723423).abs() < 1e-13);
        assert!(z.relative_error() < 1e-9);
    }

    #[test]
    fn product_factor_pair_and_limit() {
        let tp = ThetaParams::new(1.0).unwrap();
        let pair = product_factor_fourier(PI / 2.0, 1, 0.5, &tp).unwrap();
        assert!(pair.relative_error() < 1e-9, "rel {}", pair.relative_error());
        // Frozen closed-form value at this point.
        assert!((pair.closed_form - 0.57559394275356088).abs() < 1e-12);

        // p -> 0: the closed form tends to nR/(1-q^{2n}) and the quadrature
        // agrees (the sine zero is cancelled by the denominator zero).
        let z = product_factor_fourier(0.9, 1, 0.0, &tp).unwrap();
        assert!((z.closed_form - 1.0 / (1.0 - tp.nome.powi(2))).abs() < 1e-10);
        assert!(z.relative_error() < 1e-8, "rel {}", z.relative_error());

        // Magnitude envelope: |sin| <= 1 bounds the n = 3 term.
        let t = product_factor_fourier(0.9, 3, 1.1, &tp).unwrap();
        let q6 = tp.nome.powi(6);
        let envelope = (-0.9 * 1.1f64).exp() / ((1.0 - q6) * (1.0 - (-PI * 1.1f64).exp()));
        assert!(t.closed_form.abs() <= envelope + 1e-15);
    }

    #[test]
    fn poisson_lattice_sum_values() {
        let (lhs, rhs) = poisson_lattice_sum(1.0).unwrap();
        let classical = 0.5 * (PI / PI.tanh() - 1.0);
        assert!((lhs - rhs).abs() < 1e-12);
        assert!((rhs - classical).abs() < 1e-15);

        let (lhs, rhs) = poisson_lattice_sum(3.0).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);

        // alpha -> 0 limit is pi^2/6.
        let (_, rhs) = poisson_lattice_sum(1e-4).unwrap();
        assert!((rhs - PI * PI / 6.0).abs() < 1e-6);
    }
}
