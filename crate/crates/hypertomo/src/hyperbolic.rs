//! Bergman-metric geometry of the unit ball: hyperbolic volumes of star
//! bodies, volumes of their complex-subspace sections, geodesic arcs, and a
//! randomized geodesic-convexity test.
//!
//! The volume element in polar coordinates carries the radial kernel
//! r^{2p-1} / (1 - r^2)^{p+1}, whose primitive has the closed form
//! mu_p(rho) = (1/2p) (rho^2 / (1 - rho^2))^p.

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bodies::{random_unit, BodySpec};
use crate::error::{Error, Result};
use crate::geom;
use crate::quadrature::{ComplexSubspaceFrame, QuadratureRule};
use crate::report::{VerificationReport, Verdict};
use crate::special::pairwise_sum;

/// Radial moment of order p: valid for rho in [0, 1).
#[derive(Debug, Clone, Copy)]
pub struct HyperMoment {
    pub p: f64,
}

impl HyperMoment {
    pub fn eval(&self, rho: f64) -> Result<f64> {
        hyper_moment(self.p, rho)
    }
}

/// mu_p(rho) = (1/2p) (rho^2/(1-rho^2))^p, the integral of the radial kernel.
pub fn hyper_moment(p: f64, rho: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&rho) {
        return Err(Error::InputDomain(format!(
            "hyper_moment requires rho in [0,1), got {rho}"
        )));
    }
    let t = rho * rho / (1.0 - rho * rho);
    Ok(t.powf(p) / (2.0 * p))
}

/// Hyperbolic volume of a star body: 8^n * integral of mu_n(rho) over the
/// sphere. Errors if any rule node sees rho >= 1.
pub fn hvol(spec: &BodySpec, n: usize, rule: &QuadratureRule) -> Result<f64> {
    let scale = 8.0f64.powi(n as i32);
    let v = rule.try_integrate(|u| {
        let rho = spec.radial_unchecked(u)?;
        if rho >= 1.0 {
            return Err(Error::BodyNotContained(format!(
                "rho = {rho} at a quadrature node"
            )));
        }
        hyper_moment(n as f64, rho)
    })?;
    Ok(scale * v)
}

/// Hyperbolic volume of the section by a complex subspace H of dimension d:
/// 8^d * integral of mu_d over S^{2n-1} cap H. The rule must live on the
/// subsphere (see `subspace_sphere_rule`).
pub fn section_hvol(spec: &BodySpec, frame: &ComplexSubspaceFrame, rule: &QuadratureRule) -> Result<f64> {
    frame.check_orthonormal(1e-12)?;
    let d = frame.d;
    let scale = 8.0f64.powi(d as i32);
    let v = rule.try_integrate(|u| {
        let rho = spec.radial_unchecked(u)?;
        if rho >= 1.0 {
            return Err(Error::BodyNotContained(format!(
                "rho = {rho} at a section node"
            )));
        }
        hyper_moment(d as f64, rho)
    })?;
    Ok(scale * v)
}

/// A Bergman geodesic between two points of the ball, realized as the
/// Poincare geodesic of the disc cut out by their complex line.
#[derive(Debug, Clone)]
pub struct GeodesicArc {
    pub start: Vec<f64>,
    pub end: Vec<f64>,
    /// Affine complex line: point + z * direction (unit complex direction).
    pub carrier_point: Vec<f64>,
    pub carrier_dir: Vec<Complex64>,
    /// Center of the disc (the point of the carrier line closest to the
    /// origin) and its radius.
    pub disc_center: Vec<f64>,
    pub disc_radius: f64,
    // geodesic endpoints in unit-disc coordinates
    w_start: Complex64,
    w_end: Complex64,
}

impl GeodesicArc {
    /// Point on the arc; t in [0, 1] with arc(0) = start, arc(1) = end.
    pub fn sample(&self, t: f64) -> Vec<f64> {
        // Mobius map sending w_start to 0, then the straight segment,
        // then back: exactly traces the Poincare geodesic.
        let a = self.w_start;
        let target = (self.w_end - a) / (Complex64::ONE - a.conj() * self.w_end);
        let v = target * t;
        let w = (v + a) / (Complex64::ONE + a.conj() * v);
        // back to ambient coordinates: center + R * w * dir
        let z = w * self.disc_radius;
        let mut p = self.disc_center.clone();
        for (j, d) in self.carrier_dir.iter().enumerate() {
            let contrib = z * d;
            p[2 * j] += contrib.re;
            p[2 * j + 1] += contrib.im;
        }
        p
    }

    /// Whether the start, end and disc center are collinear (the geodesic is
    /// then a straight diameter segment).
    pub fn is_diameter(&self, tol: f64) -> bool {
        (self.w_start * self.w_end.conj()).im.abs() < tol
    }
}

/// Construct the Bergman geodesic between x and y (distinct, inside the
/// ball). The carrier is the affine complex line through them.
pub fn bergman_geodesic(x: &[f64], y: &[f64]) -> Result<GeodesicArc> {
    let nx = geom::norm(x);
    let ny = geom::norm(y);
    if nx >= 1.0 || ny >= 1.0 {
        return Err(Error::InputDomain(
            "geodesic endpoints must lie in the open unit ball".into(),
        ));
    }
    let diff: Vec<f64> = y.iter().zip(x).map(|(a, b)| a - b).collect();
    let sep = geom::norm(&diff);
    if sep < 1e-14 {
        return Err(Error::DegenerateInput("coincident geodesic endpoints".into()));
    }
    let n = x.len() / 2;
    // unit complex direction d = (y - x)/|y - x|
    let dir: Vec<Complex64> = (0..n)
        .map(|j| geom::complex_coord(&diff, j) / sep)
        .collect();
    // P(z) = x + z d; |P(z)|^2 = |x|^2 - |beta|^2 + |z + beta|^2 with
    // beta = <x, d>_C, so the line meets the ball in the disc
    // |z + beta| < R, R^2 = 1 - |x|^2 + |beta|^2.
    let beta: Complex64 = (0..n)
        .map(|j| geom::complex_coord(x, j) * dir[j].conj())
        .sum();
    let r2 = 1.0 - nx * nx + beta.norm_sqr();
    let radius = r2.sqrt();
    let center_z = -beta;
    let mut center = x.to_vec();
    for (j, d) in dir.iter().enumerate() {
        let contrib = center_z * d;
        center[2 * j] += contrib.re;
        center[2 * j + 1] += contrib.im;
    }
    // endpoints in unit-disc coordinates: z_x = 0, z_y = sep
    let w_start = (Complex64::ZERO - center_z) / radius;
    let w_end = (Complex64::new(sep, 0.0) - center_z) / radius;
    Ok(GeodesicArc {
        start: x.to_vec(),
        end: y.to_vec(),
        carrier_point: x.to_vec(),
        carrier_dir: dir,
        disc_center: center,
        disc_radius: radius,
        w_start,
        w_end,
    })
}

/// Randomized falsification test of geodesic convexity: sample boundary
/// pairs, sample points along the Bergman geodesic between them, and record
/// the worst margin 1 - ||p||_K. Pass iff the worst margin >= -tol.
pub fn h_convex_test(
    spec: &BodySpec,
    n: usize,
    num_pairs: usize,
    samples_per_arc: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let tol = 1e-9;
    let dim = 2 * n;
    // containment pre-check
    let max_rho = spec.max_radial_sampled(2048, seed ^ 0x5eed)?;
    if max_rho >= 1.0 {
        return Err(Error::BodyNotContained(format!(
            "body reaches radius {max_rho} >= 1"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(Vec<f64>, Vec<f64>)> = (0..num_pairs)
        .map(|_| {
            let u = random_unit(&mut rng, dim);
            let v = random_unit(&mut rng, dim);
            (u, v)
        })
        .collect();
    let results: Vec<Result<(f64, Vec<f64>)>> = pairs
        .par_iter()
        .map(|(u, v)| {
            let ru = spec.radial_unchecked(u)?;
            let rv = spec.radial_unchecked(v)?;
            let x: Vec<f64> = u.iter().map(|c| c * ru).collect();
            let y: Vec<f64> = v.iter().map(|c| c * rv).collect();
            let arc = match bergman_geodesic(&x, &y) {
                Ok(a) => a,
                Err(Error::DegenerateInput(_)) => return Ok((f64::INFINITY, x)),
                Err(e) => return Err(e),
            };
            let mut worst = f64::INFINITY;
            let mut witness = x.clone();
            for k in 1..=samples_per_arc {
                let t = k as f64 / (samples_per_arc as f64 + 1.0);
                let p = arc.sample(t);
                let margin = 1.0 - spec.minkowski(&p)?;
                if margin < worst {
                    worst = margin;
                    witness = p;
                }
            }
            Ok((worst, witness))
        })
        .collect();
    let mut worst = f64::INFINITY;
    let mut witness = None;
    for r in results {
        let (m, w) = r?;
        if m < worst {
            worst = m;
            witness = Some(w);
        }
    }
    let verdict = if worst >= -tol { Verdict::Pass } else { Verdict::Fail };
    Ok(VerificationReport {
        name: "h-convexity".into(),
        verdict,
        worst_margin: worst,
        tolerance: tol,
        samples: num_pairs * samples_per_arc,
        seed,
        witness,
        notes: vec![format!("max sampled radial {max_rho:.6}")],
    })
}

/// Dilation factor that keeps a body of minimal normal curvature d, placed
/// inside the ball of radius r, geodesically convex: the bound requires
/// d/alpha > 2r/(1-r^2); half of the largest admissible factor is returned
/// to leave curvature headroom for later perturbations.
pub fn dilation_factor(min_curvature: f64, radius: f64) -> Result<f64> {
    if !(min_curvature > 0.0) {
        return Err(Error::InvalidCurvature(format!(
            "minimal normal curvature must be positive, got {min_curvature}"
        )));
    }
    if !(radius > 0.0 && radius < 1.0) {
        return Err(Error::InputDomain(format!(
            "target radius must lie in (0,1), got {radius}"
        )));
    }
    Ok(0.5 * min_curvature * (1.0 - radius * radius) / (2.0 * radius))
}

/// Difference of hyperbolic volumes computed on shared nodes, with the
/// replicate-based error of the difference. Sharing nodes makes correlated
/// quadrature error cancel in the gap.
pub fn hvol_gap(
    spec_a: &BodySpec,
    spec_b: &BodySpec,
    n: usize,
    rule: &QuadratureRule,
) -> Result<(f64, f64)> {
    let scale = 8.0f64.powi(n as i32);
    let vals: Vec<f64> = (0..rule.len())
        .into_par_iter()
        .map(|i| -> Result<f64> {
            let u = rule.node(i);
            let ra = spec_a.radial_unchecked(u)?;
            let rb = spec_b.radial_unchecked(u)?;
            if ra >= 1.0 || rb >= 1.0 {
                return Err(Error::BodyNotContained("gap node".into()));
            }
            Ok(rule.weight(i) * (hyper_moment(n as f64, ra)? - hyper_moment(n as f64, rb)?))
        })
        .collect::<Result<Vec<f64>>>()?;
    let total = scale * pairwise_sum(&vals);
    if rule.replicas < 2 {
        return Ok((total, total.abs() * 1e-10));
    }
    let block = vals.len() / rule.replicas;
    let estimates: Vec<f64> = (0..rule.replicas)
        .map(|r| scale * pairwise_sum(&vals[r * block..(r + 1) * block]) * rule.replicas as f64)
        .collect();
    let mean = pairwise_sum(&estimates) / rule.replicas as f64;
    let var = estimates.iter().map(|e| (e - mean) * (e - mean)).sum::<f64>()
        / (rule.replicas as f64 - 1.0);
    Ok((total, (var / rule.replicas as f64).sqrt()))
}
