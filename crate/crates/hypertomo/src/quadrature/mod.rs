//! Numerical integration over spheres, sub-spheres and the torus-reduced
//! moduli domain, Haar sampling of complex subspaces, and finite-difference
//! Laplacians.

pub mod frames;
pub mod laplacian;
pub mod rules;
pub mod sobol;

pub use frames::{sample_complex_subspace, ComplexSubspaceFrame};
pub use laplacian::{fd_laplacian, LaplacianEstimate};
pub use rules::{
    sphere_rule, subspace_sphere_rule, torus_invariance_check, torus_reduced_rule, QuadratureRule,
    RuleMethod,
};
