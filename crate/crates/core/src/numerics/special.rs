//! Small special-purpose kernels: a complex Lanczos gamma, fourth-order
//! central differences, and Jacobi eigenvalue sweeps for small symmetric or
//! Hermitian matrices.

use num_complex::Complex64;

// Lanczos coefficients, g = 7, n = 9 (Godfrey's set).
const LANCZOS_G: f64 = 7.0;
const LANCZOS_C: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function for complex argument via the Lanczos approximation,
/// with the reflection formula for Re(z) < 1/2.
pub fn gamma_complex(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        let pi = std::f64::consts::PI;
        let s = (Complex64::new(pi, 0.0) * z).sin();
        return Complex64::new(pi, 0.0) / (s * gamma_complex(Complex64::new(1.0, 0.0) - z));
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS_C[0], 0.0);
    for (i, &c) in LANCZOS_C.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    let sqrt_two_pi = (2.0 * std::f64::consts::PI).sqrt();
    sqrt_two_pi * t.powc(z + 0.5) * (-t).exp() * x
}

/// Fourth-order central difference derivative with a scale-aware step.
pub fn central_diff4<F: Fn(f64) -> f64>(f: F, x: f64, scale: f64) -> f64 {
    let h = f64::EPSILON.powf(0.2) * scale.abs().max(1e-2);
    (8.0 * (f(x + h) - f(x - h)) - (f(x + 2.0 * h) - f(x - 2.0 * h))) / (12.0 * h)
}

/// Eigenvalues of a small real symmetric matrix by cyclic Jacobi sweeps,
/// returned in ascending order.
pub fn jacobi_eigenvalues(mat: &[Vec<f64>]) -> Vec<f64> {
    let n = mat.len();
    let mut a: Vec<Vec<f64>> = mat.to_vec();
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off < 1e-28 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eigs: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eigs
}

/// Eigenvalues of a small Hermitian matrix through the real embedding
/// `[[Re, -Im], [Im, Re]]`, whose spectrum is that of the Hermitian matrix
/// with every eigenvalue doubled in multiplicity.
pub fn hermitian_eigenvalues(mat: &[Vec<Complex64>]) -> Vec<f64> {
    let n = mat.len();
    let mut big = vec![vec![0.0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            big[i][j] = mat[i][j].re;
            big[i][j + n] = -mat[i][j].im;
            big[i + n][j] = mat[i][j].im;
            big[i + n][j + n] = mat[i][j].re;
        }
    }
    let all = jacobi_eigenvalues(&big);
    // Doubled spectrum: take every other value.
    all.into_iter().step_by(2).collect()
}
