//! Numerical geometric tomography of phase-rotation-invariant star bodies in
//! the complex hyperbolic ball.
//!
//! The crate identifies C^n with R^{2n}, represents star bodies by lazy
//! radial functions, computes hyperbolic volumes and complex-subspace
//! section volumes, Fourier transforms of homogeneous extensions of
//! spherical profiles, and runs end-to-end certified constructions of body
//! pairs whose lower-dimensional section volumes and total volumes order in
//! opposite directions.

pub mod bodies;
pub mod counterexample;
pub mod ellipsoid;
pub mod error;
pub mod geom;
pub mod harmonic;
pub mod hyperbolic;
pub mod quadrature;
pub mod report;
pub mod special;

pub use bodies::BodySpec;
pub use error::{Error, Result};
pub use report::{Verdict, VerificationReport};
