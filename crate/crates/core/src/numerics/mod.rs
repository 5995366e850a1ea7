//! Shared numerical kernels: adaptive quadrature on the real line,
//! tolerance-driven series summation, a symmetric tridiagonal eigensolver
//! and controlled numerical differentiation.

pub mod quadrature;
pub mod series;
pub mod special;
pub mod tridiag;

pub use quadrature::{integrate_interval, integrate_line, QuadratureSpec};
pub use series::{sum_series, TailBound};
pub use special::{central_diff4, gamma_complex, hermitian_eigenvalues, jacobi_eigenvalues};
pub use tridiag::{eig_sym_tridiag, eigenvector_inverse_iteration, sturm_count_below, TridiagonalSystem};
