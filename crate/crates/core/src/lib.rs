//! Numerical library for the radial zero-mode program: Jacobi theta
//! functions at imaginary modulus, classical/affine/theta-deformed
//! c-functions and their transform identities, the radial densities and
//! Schrodinger potentials they induce at infinite and finite radius, the
//! positivity bounds for the finite-radius density, the radial geometry
//! calculus for orthogonally invariant metrics, and a bound-state solver
//! for the resulting half-line operators.
//!
//! Every closed form ships next to an independent route to the same number
//! (series vs product, quadrature vs residue sum, analytic vs finite
//! difference), and the `verify` CLI subcommand runs the whole cross-check
//! suite.

pub mod cartan_geometry;
pub mod cli;
pub mod densities;
pub mod error;
pub mod numerics;
pub mod root_systems;
pub mod spectral;
pub mod theta;
pub mod transforms;

pub use error::{Error, Result};
