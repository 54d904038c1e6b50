//! Fourier analysis of homogeneous extensions of spherical profiles:
//! transforms, positive-definiteness scans, Parseval and invariance checks,
//! and the constructor of the dual perturbation profile g.

pub mod gegenbauer;
pub mod gfunc;
pub mod parseval;
pub mod pdscan;
pub mod transform;

pub use gegenbauer::homog_ft_constant;
pub use gfunc::{construct_g, BumpParams, GCertificate};
pub use parseval::{hplane_ft_invariance, parseval_residual};
pub use pdscan::{pd_scan, PdScanOptions, PdScanReport, ScanOutcome};
pub use transform::{
    body_ft, multiplier_ft, parallel_section_function, section_laplacian_ft, BodyFtMethod,
    FTResult, FtMethodTag, HomogeneousProfile, MultiplierEngine, MultiplierOptions,
    SectionFtOptions, SectionSampler,
};
