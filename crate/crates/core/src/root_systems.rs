//! Root-system data for type A, with the long-root normalization that every
//! c-function product in this crate relies on.
//!
//! Roots of A_{n-1} are realized as e_i - e_j inside an n-coordinate ambient
//! space; the plain Euclidean dot product then gives a long root norm-squared
//! of exactly 2, so no rescaling is needed.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub rank: usize,
    /// Ambient coordinate dimension (rank + 1 for type A).
    pub ambient_dim: usize,
    pub positive_roots: Vec<Vec<f64>>,
    /// Sum of the positive roots.
    pub rho: Vec<f64>,
    /// Highest root.
    pub highest_root: Vec<f64>,
    /// Dual Coxeter number.
    pub dual_coxeter: u32,
}

impl RootSystem {
    /// The normalized invariant bilinear form on ambient coordinates.
    pub fn pairing(&self, a: &[f64], b: &[f64]) -> f64 {
        debug_assert_eq!(a.len(), b.len(), "pairing of mismatched coordinate tuples");
        a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
    }

    /// Re-derive the dual Coxeter number from 1 + <rho, theta>/2.
    pub fn dual_coxeter_from_pairing(&self) -> f64 {
        1.0 + self.pairing(&self.rho, &self.highest_root) / 2.0
    }

    /// Check every structural invariant; used by tests and on construction.
    pub fn check_invariants(&self) -> Result<()> {
        for alpha in &self.positive_roots {
            if alpha.len() != self.ambient_dim {
                return Err(Error::invalid("root coordinate dimension mismatch"));
            }
            if self.pairing(&self.rho, alpha) <= 0.0 {
                return Err(Error::InvariantViolation(
                    "<rho, alpha> must be positive for every positive root".into(),
                ));
            }
            let rho_theta = self.pairing(&self.rho, &self.highest_root);
            if self.pairing(&self.rho, alpha) > rho_theta + 1e-12 {
                return Err(Error::InvariantViolation(
                    "<rho, alpha> exceeds <rho, theta>".into(),
                ));
            }
        }
        let theta_norm = self.pairing(&self.highest_root, &self.highest_root);
        if (theta_norm - 2.0).abs() > 1e-12 {
            return Err(Error::InvariantViolation(format!(
                "long root norm^2 is {theta_norm}, expected 2"
            )));
        }
        let mut rho_sum = vec![0.0; self.ambient_dim];
        for alpha in &self.positive_roots {
            for (s, a) in rho_sum.iter_mut().zip(alpha.iter()) {
                *s += a;
            }
        }
        if rho_sum
            .iter()
            .zip(self.rho.iter())
            .any(|(a, b)| (a - b).abs() > 1e-12)
        {
            return Err(Error::InvariantViolation(
                "rho is not the sum of the positive roots".into(),
            ));
        }
        let g = self.dual_coxeter_from_pairing();
        if (g - self.dual_coxeter as f64).abs() > 1e-12 {
            return Err(Error::InvariantViolation(format!(
                "dual Coxeter mismatch: stored {}, derived {g}",
                self.dual_coxeter
            )));
        }
        Ok(())
    }
}

/// Build the A_{n-1} root system for SU(n), n >= 2.
pub fn build_type_a(n: usize) -> Result<RootSystem> {
    if n < 2 {
        return Err(Error::invalid("type A requires n >= 2"));
    }
    let mut positive_roots = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut alpha = vec![0.0; n];
            alpha[i] = 1.0;
            alpha[j] = -1.0;
            positive_roots.push(alpha);
        }
    }
    let mut rho = vec![0.0; n];
    for alpha in &positive_roots {
        for (s, a) in rho.iter_mut().zip(alpha.iter()) {
            *s += a;
        }
    }
    let mut highest_root = vec![0.0; n];
    highest_root[0] = 1.0;
    highest_root[n - 1] = -1.0;

    let rs = RootSystem {
        rank: n - 1,
        ambient_dim: n,
        positive_roots,
        rho,
        highest_root,
        dual_coxeter: n as u32,
    };
    rs.check_invariants()?;
    Ok(rs)
}

/// A spectral parameter lambda in the dual Cartan space, stored in the same
/// ambient coordinates as the roots (type A: entries sum to zero).
#[derive(Debug, Clone)]
pub struct SpectralParameter {
    pub coords: Vec<f64>,
}

impl SpectralParameter {
    pub fn new(coords: Vec<f64>) -> Self {
        SpectralParameter { coords }
    }

    /// lambda = t * alpha for a given root direction.
    pub fn multiple_of(alpha: &[f64], t: f64) -> Self {
        SpectralParameter {
            coords: alpha.iter().map(|a| a * t).collect(),
        }
    }

    /// lambda = t * rho.
    pub fn along_rho(rs: &RootSystem, t: f64) -> Self {
        Self::multiple_of(&rs.rho, t)
    }

    pub fn zero(rs: &RootSystem) -> Self {
        SpectralParameter {
            coords: vec![0.0; rs.ambient_dim],
        }
    }

    pub fn dim_matches(&self, rs: &RootSystem) -> bool {
        self.coords.len() == rs.ambient_dim
    }
}
