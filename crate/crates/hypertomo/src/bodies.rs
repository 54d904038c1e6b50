//! Parametric star bodies in R^{2n}, identified with C^n.
//!
//! Every body here is invariant under the diagonal rotation that multiplies
//! all complex coordinates by a common phase. A body is described by an
//! immutable [`BodySpec`] tree (primitives plus radial transforms) and is
//! evaluated lazily through its radial function rho: S^{2n-1} -> (0, inf),
//! the distance from the origin to the boundary.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geom;


/// A real-valued function on the unit sphere S^{2n-1} in R^{2n}.
///
/// `torus_invariant` means invariant under independent phase rotations of
/// each complex coordinate; `axis_invariant` means the value depends on u
/// only through |<u, axis>_C| for the returned axis (the strongest symmetry
/// used by the transform machinery).
pub trait SphereFn: Sync {
    fn ambient_dim(&self) -> usize;
    fn eval(&self, u: &[f64]) -> Result<f64>;
    fn torus_invariant(&self) -> bool {
        false
    }
    /// Invariance under the diagonal phase rotation only. Everything built
    /// from bodies in this crate satisfies it; plain even test functions may
    /// opt out to exercise the generic quadrature path.
    fn rtheta_invariant(&self) -> bool {
        true
    }
    /// Some(axis) if the function factors through A(u) = |<u, axis>_C|.
    fn zonal_axis(&self) -> Option<&[f64]> {
        None
    }
}

/// Closure-backed sphere function (handy in tests and oracles).
pub struct FnProfile<F: Fn(&[f64]) -> f64 + Sync> {
    pub dim: usize,
    pub torus: bool,
    pub rtheta: bool,
    pub f: F,
}

impl<F: Fn(&[f64]) -> f64 + Sync> SphereFn for FnProfile<F> {
    fn ambient_dim(&self) -> usize {
        self.dim
    }
    fn eval(&self, u: &[f64]) -> Result<f64> {
        Ok((self.f)(u))
    }
    fn torus_invariant(&self) -> bool {
        self.torus
    }
    fn rtheta_invariant(&self) -> bool {
        self.rtheta
    }
}

/// Natural cubic spline on a strictly increasing grid.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    second: Vec<f64>,
}

impl CubicSpline {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Self {
        let n = xs.len();
        assert!(n >= 3 && ys.len() == n);
        // Thomas algorithm for the natural-spline tridiagonal system.
        let mut second = vec![0.0; n];
        let mut u = vec![0.0; n];
        for i in 1..n - 1 {
            let sig = (xs[i] - xs[i - 1]) / (xs[i + 1] - xs[i - 1]);
            let p = sig * second[i - 1] + 2.0;
            second[i] = (sig - 1.0) / p;
            let d = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i])
                - (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
            u[i] = (6.0 * d / (xs[i + 1] - xs[i - 1]) - sig * u[i - 1]) / p;
        }
        for i in (0..n - 1).rev() {
            second[i] = second[i] * second[i + 1] + u[i];
        }
        CubicSpline { xs, ys, second }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        let x = x.clamp(self.xs[0], self.xs[n - 1]);
        // binary search for the containing interval
        let mut lo = 0;
        let mut hi = n - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.xs[mid] > x {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let h = self.xs[hi] - self.xs[lo];
        let a = (self.xs[hi] - x) / h;
        let b = (x - self.xs[lo]) / h;
        a * self.ys[lo]
            + b * self.ys[hi]
            + ((a * a * a - a) * self.second[lo] + (b * b * b - b) * self.second[hi]) * h * h / 6.0
    }
}

/// A spherical profile that depends on u only through A(u) = |<u, axis>_C|,
/// tabulated on [0, 1] with local cubic (4-point Lagrange) interpolation.
/// This is the reduced-domain carrier for the perturbation profiles produced
/// by the transform module. Local interpolation avoids the boundary-layer
/// error of global splines with artificial end conditions.
#[derive(Debug, Clone)]
pub struct ZonalProfile {
    /// Unit vector in R^{2n} whose complex line is the symmetry axis.
    axis: Vec<f64>,
    xs: Vec<f64>,
    ys: Vec<f64>,
    max_abs: f64,
}

impl ZonalProfile {
    pub fn new(axis: Vec<f64>, grid: Vec<f64>, values: Vec<f64>) -> Self {
        assert!(grid.len() >= 4 && grid.len() == values.len());
        let axis = geom::normalized(&axis);
        let max_abs = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        ZonalProfile {
            axis,
            xs: grid,
            ys: values,
            max_abs,
        }
    }

    pub fn axis(&self) -> &[f64] {
        &self.axis
    }

    pub fn max_abs(&self) -> f64 {
        self.max_abs
    }

    pub fn table(&self) -> (&[f64], &[f64]) {
        (&self.xs, &self.ys)
    }

    /// Value at the reduced coordinate A = |<u, axis>_C| directly.
    pub fn eval_reduced(&self, a: f64) -> f64 {
        let n = self.xs.len();
        let x = a.clamp(self.xs[0], self.xs[n - 1]);
        let mut lo = 0;
        let mut hi = n - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.xs[mid] > x {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        // 4-point stencil around the interval, clamped at the ends
        let start = lo.saturating_sub(1).min(n - 4);
        let xs = &self.xs[start..start + 4];
        let ys = &self.ys[start..start + 4];
        let mut acc = 0.0;
        for i in 0..4 {
            let mut basis = 1.0;
            for j in 0..4 {
                if i != j {
                    basis *= (x - xs[j]) / (xs[i] - xs[j]);
                }
            }
            acc += basis * ys[i];
        }
        acc
    }

    pub fn eval_unit(&self, u: &[f64]) -> f64 {
        let a = geom::complex_dot(u, &self.axis).norm();
        self.eval_reduced(a)
    }

    /// True when the axis is a single complex coordinate line, which makes
    /// A(u) a coordinate modulus and the profile torus-invariant.
    pub fn axis_is_coordinate(&self) -> bool {
        let m = geom::moduli(&self.axis);
        m.iter().filter(|&&x| x > 1e-12).count() == 1
    }
}

impl SphereFn for ZonalProfile {
    fn ambient_dim(&self) -> usize {
        self.axis.len()
    }
    fn eval(&self, u: &[f64]) -> Result<f64> {
        Ok(self.eval_unit(u))
    }
    fn torus_invariant(&self) -> bool {
        self.axis_is_coordinate()
    }
    fn zonal_axis(&self) -> Option<&[f64]> {
        Some(&self.axis)
    }
}

/// Immutable descriptor of a star body in R^{2n}.
#[derive(Debug, Clone)]
pub enum BodySpec {
    /// Unit ball of the complex q-norm (sum_j |z_j|^q)^{1/q} <= 1.
    LqBall { n: usize, q: f64 },
    /// Round in every complex coordinate: sum_j |z_j|^2 / a_j^2 <= 1.
    ComplexEllipsoid { axes: Vec<f64> },
    /// Intersection of two complex ellipsoids controlled by (s, b), with a
    /// C^2 blend of the two constraints over a band of width `blend_width`
    /// in the modulus plane.
    TwoEllipseBody {
        n: usize,
        s: f64,
        b: f64,
        blend_width: f64,
    },
    EuclideanBall { n: usize, radius: f64 },
    /// rho(u) = (1 + delta Re(u_1 conj(u_2)))^{-1}: invariant under the
    /// diagonal rotation but not under independent coordinate phases.
    PhaseTestBody { n: usize, delta: f64 },
    Dilate { alpha: f64, base: Box<BodySpec> },
    /// Radial map rho -> sqrt(rho^2 / (1 + rho^2)); pulls any star body into
    /// the open unit ball.
    Tent { base: Box<BodySpec> },
    /// Inverse of `Tent`: rho -> sqrt(rho^2 / (1 - rho^2)); requires the base
    /// to lie in the open unit ball.
    Cotent { base: Box<BodySpec> },
    /// Body defined by shifting the weighted radial integral of the base by
    /// epsilon * g(u); solved in closed form through t = rho^2/(1 - rho^2).
    Perturbed {
        base: Box<BodySpec>,
        g: Arc<ZonalProfile>,
        epsilon: f64,
        /// Section codimension l in the defining exponent n - l.
        codim: usize,
    },
}

/// rho' = sqrt(rho^2 / (1 + rho^2)); strictly increasing, image in (0, 1).
pub fn tent_radial(rho: f64) -> f64 {
    (rho * rho / (1.0 + rho * rho)).sqrt()
}

/// rho' = sqrt(rho^2 / (1 - rho^2)) for rho in (0, 1).
pub fn cotent_radial(rho: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&rho) {
        return Err(Error::InputDomain(format!(
            "cotent requires rho in (0,1), got {rho}"
        )));
    }
    Ok((rho * rho / (1.0 - rho * rho)).sqrt())
}

/// Default corner-rounding scale of the two-ellipse body (modulus plane).
pub const DEFAULT_BLEND_WIDTH: f64 = 0.1;

/// Radial function of the two-ellipse body at a unit direction.
///
/// The two constraints bound the radius by
///   e_v:  t <= s / sqrt(x^2 + s^2 y^2 / b^2)
///   e_h:  t <= s / sqrt(y^2 + s^2 x^2)
/// where x = |(z_1..z_{n-1})| and y = |z_n| on the unit sphere.
///
/// With blend_width = 0 the exact minimum of the two bounds is returned
/// (the plain intersection body, non-smooth along the corner curve). A
/// positive blend_width rounds the corner through the l^kappa combination
/// of the two ellipsoid gauges with kappa = 1/blend_width:
///   ||x|| = (||x||_v^kappa + ||x||_h^kappa)^{1/kappa}.
/// This is again a norm, so the body stays exactly convex, and the radial
/// profile is real-analytic on the sphere, which keeps its harmonic
/// expansion geometrically convergent. The corner is rounded inward by a
/// relative depth ln(2) * blend_width; away from the corner the two
/// ellipsoid pieces are reproduced up to a relative error below
/// (f_min/f_max)^kappa, which decays exponentially in 1/blend_width.
pub fn two_ellipse_radial(s: f64, b: f64, blend_width: f64, u: &[f64]) -> f64 {
    let n = u.len() / 2;
    let y2: f64 = u[2 * n - 2] * u[2 * n - 2] + u[2 * n - 1] * u[2 * n - 1];
    let total: f64 = u.iter().map(|c| c * c).sum();
    let x2 = (total - y2).max(0.0);
    let f_v = s / (x2 + s * s * y2 / (b * b)).sqrt();
    let f_h = s / (y2 + s * s * x2).sqrt();
    let (fmin, fmax) = if f_v <= f_h { (f_v, f_h) } else { (f_h, f_v) };
    if blend_width <= 0.0 {
        return fmin;
    }
    let kappa = 1.0 / blend_width;
    fmin * (1.0 + (fmin / fmax).powf(kappa)).powf(-1.0 / kappa)
}

/// Closed-form radial function of the perturbed body: with
/// t_L = rho_L^2/(1 - rho_L^2) the defining integral equation becomes
/// t_K^{n-l} = t_L^{n-l} + 2(n-l) epsilon g(u).
pub fn perturbed_radial(rho_l: f64, g_value: f64, epsilon: f64, n: usize, l: usize) -> Result<f64> {
    if !(0.0..1.0).contains(&rho_l) || rho_l == 0.0 {
        return Err(Error::InputDomain(format!(
            "perturbed base radial must lie in (0,1), got {rho_l}"
        )));
    }
    let power = (n - l) as f64;
    let t_l = rho_l * rho_l / (1.0 - rho_l * rho_l);
    let rhs = t_l.powf(power) + 2.0 * power * epsilon * g_value;
    if rhs <= 0.0 {
        return Err(Error::EpsilonTooLarge(format!(
            "perturbation removes the body: t_L^(n-l) + 2(n-l) eps g = {rhs:.3e}"
        )));
    }
    let t_k = rhs.powf(1.0 / power);
    Ok((t_k / (1.0 + t_k)).sqrt())
}

impl BodySpec {
    /// Two-ellipse body with the default blend width.
    pub fn two_ellipse(n: usize, s: f64, b: f64) -> BodySpec {
        BodySpec::TwoEllipseBody {
            n,
            s,
            b,
            blend_width: DEFAULT_BLEND_WIDTH,
        }
    }

    pub fn complex_dim(&self) -> usize {
        match self {
            BodySpec::LqBall { n, .. }
            | BodySpec::TwoEllipseBody { n, .. }
            | BodySpec::EuclideanBall { n, .. }
            | BodySpec::PhaseTestBody { n, .. } => *n,
            BodySpec::ComplexEllipsoid { axes } => axes.len(),
            BodySpec::Dilate { base, .. }
            | BodySpec::Tent { base }
            | BodySpec::Cotent { base }
            | BodySpec::Perturbed { base, .. } => base.complex_dim(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        2 * self.complex_dim()
    }

    /// Check all documented parameter ranges of the spec tree.
    pub fn validate(&self) -> Result<()> {
        match self {
            BodySpec::LqBall { n, q } => {
                if *n == 0 || !(*q >= 1.0) {
                    return Err(Error::Construction(format!(
                        "lq ball requires n >= 1 and q >= 1, got n={n}, q={q}"
                    )));
                }
            }
            BodySpec::ComplexEllipsoid { axes } => {
                if axes.is_empty() || axes.iter().any(|a| !(*a > 0.0)) {
                    return Err(Error::Construction(
                        "complex ellipsoid semi-axes must be positive".into(),
                    ));
                }
            }
            BodySpec::TwoEllipseBody {
                n,
                s,
                b,
                blend_width,
            } => {
                if *n < 2 {
                    return Err(Error::Construction(
                        "two-ellipse body requires n >= 2".into(),
                    ));
                }
                if !(*s > 0.0 && *s < 0.5) {
                    return Err(Error::Construction(format!(
                        "two-ellipse body requires 0 < s < 1/2, got s={s}"
                    )));
                }
                if !(*b > 1.0) {
                    return Err(Error::Construction(format!(
                        "two-ellipse body requires b > 1, got b={b}"
                    )));
                }
                if !(*blend_width >= 0.0) {
                    return Err(Error::Construction("blend width must be >= 0".into()));
                }
            }
            BodySpec::EuclideanBall { n, radius } => {
                if *n == 0 || !(*radius > 0.0 && *radius < 1.0) {
                    return Err(Error::Construction(format!(
                        "euclidean ball requires radius in (0,1), got {radius}"
                    )));
                }
            }
            BodySpec::PhaseTestBody { n, delta } => {
                if *n < 2 || !(*delta >= 0.0 && *delta < 2.0) {
                    return Err(Error::Construction(format!(
                        "phase-test body requires n >= 2 and 0 <= delta < 2, got n={n}, delta={delta}"
                    )));
                }
            }
            BodySpec::Dilate { alpha, base } => {
                if !(*alpha > 0.0) {
                    return Err(Error::Construction(format!(
                        "dilation factor must be positive, got {alpha}"
                    )));
                }
                base.validate()?;
            }
            BodySpec::Tent { base } | BodySpec::Cotent { base } => base.validate()?,
            BodySpec::Perturbed {
                base,
                epsilon,
                codim,
                ..
            } => {
                let n = base.complex_dim();
                if !(*epsilon >= 0.0) {
                    return Err(Error::Construction("epsilon must be >= 0".into()));
                }
                if *codim == 0 || *codim >= n {
                    return Err(Error::Construction(format!(
                        "perturbation codimension must satisfy 1 <= l <= n-1, got l={codim}, n={n}"
                    )));
                }
                base.validate()?;
            }
        }
        Ok(())
    }

    /// Invariance under independent phase rotation of each complex coordinate.
    pub fn torus_invariant(&self) -> bool {
        match self {
            BodySpec::LqBall { .. }
            | BodySpec::ComplexEllipsoid { .. }
            | BodySpec::TwoEllipseBody { .. }
            | BodySpec::EuclideanBall { .. } => true,
            BodySpec::PhaseTestBody { .. } => false,
            BodySpec::Dilate { base, .. } | BodySpec::Tent { base } | BodySpec::Cotent { base } => {
                base.torus_invariant()
            }
            BodySpec::Perturbed { base, g, .. } => {
                base.torus_invariant() && g.axis_is_coordinate()
            }
        }
    }

    /// Invariance under permutations of the complex coordinates (used to
    /// shrink transform scan grids).
    pub fn permutation_symmetric(&self) -> bool {
        match self {
            BodySpec::LqBall { .. } | BodySpec::EuclideanBall { .. } => true,
            BodySpec::ComplexEllipsoid { axes } => {
                axes.windows(2).all(|w| (w[0] - w[1]).abs() < 1e-14)
            }
            BodySpec::TwoEllipseBody { .. } | BodySpec::PhaseTestBody { .. } => false,
            BodySpec::Dilate { base, .. } | BodySpec::Tent { base } | BodySpec::Cotent { base } => {
                base.permutation_symmetric()
            }
            BodySpec::Perturbed { .. } => false,
        }
    }

    /// Invariance under the unitary group of the first n-1 coordinates times
    /// the phase circle of the last: the radial function depends only on
    /// (|z_tilde|, |z_n|). Enables one-dimensional transform scans.
    pub fn bi_invariant(&self) -> bool {
        match self {
            BodySpec::EuclideanBall { .. } => true,
            BodySpec::TwoEllipseBody { .. } => true,
            BodySpec::LqBall { n, q } => *n == 1 || (*q - 2.0).abs() < 1e-14,
            BodySpec::ComplexEllipsoid { axes } => {
                let k = axes.len();
                k <= 2 || axes[..k - 1].windows(2).all(|w| (w[0] - w[1]).abs() < 1e-14)
            }
            BodySpec::PhaseTestBody { .. } => false,
            BodySpec::Dilate { base, .. } | BodySpec::Tent { base } | BodySpec::Cotent { base } => {
                base.bi_invariant()
            }
            BodySpec::Perturbed { base, g, .. } => {
                let m = geom::moduli(g.axis());
                let last_only = m[..m.len() - 1].iter().all(|&x| x < 1e-12);
                base.bi_invariant() && last_only
            }
        }
    }

    /// Radial function rho(u) at a unit direction u in R^{2n}.
    pub fn radial(&self, u: &[f64]) -> Result<f64> {
        let nrm = geom::norm(u);
        if (nrm - 1.0).abs() > 1e-12 {
            return Err(Error::InputDomain(format!(
                "radial() requires a unit vector, |u| = {nrm:.15}"
            )));
        }
        self.radial_unchecked(u)
    }

    /// As `radial` but skips the unit-norm check (quadrature nodes are unit
    /// by construction).
    pub fn radial_unchecked(&self, u: &[f64]) -> Result<f64> {
        match self {
            BodySpec::LqBall { q, .. } => {
                let s: f64 = geom::moduli(u).iter().map(|m| m.powf(*q)).sum();
                Ok(s.powf(-1.0 / q))
            }
            BodySpec::ComplexEllipsoid { axes } => {
                let s: f64 = geom::moduli(u)
                    .iter()
                    .zip(axes)
                    .map(|(m, a)| (m / a) * (m / a))
                    .sum();
                Ok(1.0 / s.sqrt())
            }
            BodySpec::TwoEllipseBody {
                s, b, blend_width, ..
            } => Ok(two_ellipse_radial(*s, *b, *blend_width, u)),
            BodySpec::EuclideanBall { radius, .. } => Ok(*radius),
            BodySpec::PhaseTestBody { delta, .. } => {
                let z1 = geom::complex_coord(u, 0);
                let z2 = geom::complex_coord(u, 1);
                Ok(1.0 / (1.0 + delta * (z1 * z2.conj()).re))
            }
            BodySpec::Dilate { alpha, base } => Ok(alpha * base.radial_unchecked(u)?),
            BodySpec::Tent { base } => Ok(tent_radial(base.radial_unchecked(u)?)),
            BodySpec::Cotent { base } => cotent_radial(base.radial_unchecked(u)?),
            BodySpec::Perturbed {
                base,
                g,
                epsilon,
                codim,
            } => {
                let rho_l = base.radial_unchecked(u)?;
                perturbed_radial(rho_l, g.eval_unit(u), *epsilon, base.complex_dim(), *codim)
            }
        }
    }

    /// Minkowski functional ||x||_K = |x| / rho(x/|x|) for any x != 0.
    pub fn minkowski(&self, x: &[f64]) -> Result<f64> {
        let nrm = geom::norm(x);
        if nrm == 0.0 {
            return Ok(0.0);
        }
        let dir = geom::normalized(x);
        Ok(nrm / self.radial_unchecked(&dir)?)
    }

    /// Largest radial value over a deterministic direction sample; used for
    /// containment pre-checks.
    pub fn max_radial_sampled(&self, samples: usize, seed: u64) -> Result<f64> {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = self.ambient_dim();
        let mut best: f64 = 0.0;
        for _ in 0..samples {
            let u = random_unit(&mut rng, dim);
            best = best.max(self.radial_unchecked(&u)?);
        }
        Ok(best)
    }

    /// Profile rho(u)^power as a sphere function.
    pub fn radial_power_profile(&self, power: f64) -> BodyProfile<'_> {
        BodyProfile { spec: self, power }
    }
}

/// rho(u)^power viewed as a function on the sphere.
pub struct BodyProfile<'a> {
    pub spec: &'a BodySpec,
    pub power: f64,
}

impl SphereFn for BodyProfile<'_> {
    fn ambient_dim(&self) -> usize {
        self.spec.ambient_dim()
    }
    fn eval(&self, u: &[f64]) -> Result<f64> {
        Ok(self.spec.radial_unchecked(u)?.powf(self.power))
    }
    fn torus_invariant(&self) -> bool {
        self.spec.torus_invariant()
    }
}

/// Uniform random unit vector in R^dim (Gaussian normalization).
pub fn random_unit<R: rand::Rng>(rng: &mut R, dim: usize) -> Vec<f64> {
    loop {
        // Box-Muller pairs keep this free of distribution dependencies.
        let mut v = Vec::with_capacity(dim + 1);
        while v.len() < dim {
            let u1: f64 = rng.random::<f64>().max(1e-300);
            let u2: f64 = rng.random();
            let r = (-2.0 * u1.ln()).sqrt();
            v.push(r * (2.0 * std::f64::consts::PI * u2).cos());
            v.push(r * (2.0 * std::f64::consts::PI * u2).sin());
        }
        v.truncate(dim);
        let n = geom::norm(&v);
        if n > 1e-12 {
            return v.iter().map(|x| x / n).collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::adaptive_simpson;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn lq3() -> BodySpec {
        BodySpec::LqBall { n: 3, q: 4.0 }
    }

    #[test]
    fn unit_sphere_radial_is_one() {
        let ball = BodySpec::LqBall { n: 3, q: 2.0 };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let u = random_unit(&mut rng, 6);
            assert!((ball.radial(&u).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn lq_ball_diagonal_direction() {
        // all three complex moduli 1/sqrt(3): rho = 3^{1/4}
        let u = geom::normalized(&[1.0, 0.0, 1.0, 0.0, 1.0, 0.0]);
        let rho = lq3().radial(&u).unwrap();
        assert!((rho - 3.0f64.powf(0.25)).abs() < 1e-12);
        assert!((rho - 1.316_074).abs() < 1e-6);
    }

    #[test]
    fn radial_rejects_non_unit_input() {
        let err = lq3().radial(&[1.0, 0.0, 1.0, 0.0, 1.0, 0.0]).unwrap_err();
        assert!(matches!(err, Error::InputDomain(_)));
    }

    #[test]
    fn two_ellipse_axis_directions() {
        // sharp body: the axis radii equal s exactly
        let sharp = BodySpec::TwoEllipseBody {
            n: 3,
            s: 0.3,
            b: 1.1,
            blend_width: 0.0,
        };
        let u = geom::coordinate_axis(3, 2); // e_h active
        let v = geom::coordinate_axis(3, 0); // e_v active
        assert!((sharp.radial(&u).unwrap() - 0.3).abs() < 1e-15);
        assert!((sharp.radial(&v).unwrap() - 0.3).abs() < 1e-15);
        // rounded body: the corner blend perturbs the pieces by at most
        // (f_min/f_max)^kappa / kappa, far below 1e-5 at the axes
        let spec = BodySpec::two_ellipse(3, 0.3, 1.1);
        assert!((spec.radial(&u).unwrap() - 0.3).abs() < 1e-5);
        assert!((spec.radial(&v).unwrap() - 0.3).abs() < 1e-5);
    }

    #[test]
    fn two_ellipse_contained_in_unit_ball() {
        let spec = BodySpec::TwoEllipseBody {
            n: 3,
            s: 0.3,
            b: 1.1,
            blend_width: 0.1,
        };
        let max = spec.max_radial_sampled(10_000, 7).unwrap();
        assert!(max < 1.0, "max radial {max}");
        // the corner region reaches beyond s but stays well inside
        assert!(max > 0.3);
    }

    #[test]
    fn tent_cotent_inverse_pair() {
        assert!((tent_radial(1.0) - 1.0 / 2.0f64.sqrt()).abs() < 1e-15);
        for i in 1..10 {
            let rho = i as f64 * 0.1;
            let there = tent_radial(rho);
            assert!(there < 1.0);
            let back = cotent_radial(there).unwrap();
            assert!((back - rho).abs() < 1e-12, "rho={rho} back={back}");
        }
        assert!((cotent_radial(1.0 / 2.0f64.sqrt()).unwrap() - 1.0).abs() < 1e-12);
        assert!(cotent_radial(1.0).is_err());
    }

    #[test]
    fn tent_maps_line_to_ellipse() {
        // the horizontal line y = 1 maps to the ellipse x^2 + 2 y^2 = 1
        for k in -10..=10 {
            let x = k as f64 * 0.35;
            let r = (x * x + 1.0).sqrt();
            let theta = 1.0f64.atan2(x);
            let r2 = tent_radial(r);
            let (xx, yy) = (r2 * theta.cos(), r2 * theta.sin());
            assert!((xx * xx + 2.0 * yy * yy - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn cotent_maps_ellipses_to_line_and_hyperbola() {
        let s: f64 = 0.3;
        let b: f64 = 1.1;
        // ellipse (a=1, b=s) maps to the horizontal line y = s/sqrt(1-s^2)
        let y_line = s / (1.0 - s * s).sqrt();
        for k in 1..20 {
            let t = k as f64 * 0.07;
            let (x, y) = (t.cos(), s * t.sin());
            let r = (x * x + y * y).sqrt();
            let r2 = cotent_radial(r).unwrap();
            let (_, yy) = (r2 * x / r, r2 * y / r);
            // image ordinate must equal the line height when sin(t) > 0
            if t.sin() > 0.1 {
                assert!((yy - y_line).abs() < 1e-12, "t={t} yy={yy} line={y_line}");
            }
        }
        // ellipse (a=s, b>1) maps onto h(y)^2 = s^2/(1-s^2) (1 + (b^2-1)/b^2 y^2)
        for k in 1..20 {
            let t = k as f64 * 0.05;
            let (x, y) = (s * t.cos(), b * t.sin());
            let r = (x * x + y * y).sqrt();
            if r >= 1.0 {
                continue; // outside the cotent domain (maps to infinity)
            }
            let r2 = cotent_radial(r).unwrap();
            let (xx, yy) = (r2 * x / r, r2 * y / r);
            let h2 = s * s / (1.0 - s * s) * (1.0 + (b * b - 1.0) / (b * b) * yy * yy);
            assert!((xx * xx - h2).abs() < 1e-10, "t={t}");
        }
    }

    #[test]
    fn perturbed_radial_closed_form_and_oracle() {
        // n=4, l=1, rho_L = 1/sqrt(2) so t_L = 1, eps*g = 0.01
        let rho = perturbed_radial(1.0 / 2.0f64.sqrt(), 1.0, 0.01, 4, 1).unwrap();
        let t_k = 1.06f64.powf(1.0 / 3.0);
        assert!((t_k - 1.019_612_8).abs() < 1e-6);
        assert!((rho - (t_k / (1.0 + t_k)).sqrt()).abs() < 1e-15);

        // independent oracle: adaptive quadrature of the defining kernel plus
        // bisection on rho_K
        let n = 4.0;
        let l = 1.0;
        let kernel = |r: f64| r.powf(2.0 * n - 2.0 * l - 1.0) / (1.0 - r * r).powf(n - l + 1.0);
        let lhs_target =
            adaptive_simpson(&kernel, 0.0, 1.0 / 2.0f64.sqrt(), 1e-13) + 0.01;
        let mut lo = 0.1;
        let mut hi = 0.95;
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if adaptive_simpson(&kernel, 0.0, mid, 1e-13) < lhs_target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let oracle = 0.5 * (lo + hi);
        assert!(
            (rho - oracle).abs() < 1e-9,
            "closed form {rho} vs oracle {oracle}"
        );
    }

    #[test]
    fn perturbed_radial_monotone_and_degenerate() {
        let rho_l = 0.6;
        let base = perturbed_radial(rho_l, 0.0, 0.05, 3, 1).unwrap();
        assert!((base - rho_l).abs() < 1e-15);
        let up = perturbed_radial(rho_l, 1.0, 0.05, 3, 1).unwrap();
        assert!(up > rho_l);
        let down = perturbed_radial(rho_l, -1.0, 0.05, 3, 1).unwrap();
        assert!(down < rho_l);
        // large negative perturbation destroys the body
        let err = perturbed_radial(0.2, -1.0, 10.0, 3, 1).unwrap_err();
        assert!(matches!(err, Error::EpsilonTooLarge(_)));
    }

    #[test]
    fn rotation_invariance_of_all_variants() {
        let g = Arc::new(ZonalProfile::new(
            geom::coordinate_axis(3, 2),
            (0..=32).map(|i| i as f64 / 32.0).collect(),
            (0..=32).map(|i| ((i as f64 / 32.0) * 2.1).sin()).collect(),
        ));
        let specs: Vec<BodySpec> = vec![
            lq3(),
            BodySpec::ComplexEllipsoid {
                axes: vec![0.8, 0.5, 0.3],
            },
            BodySpec::TwoEllipseBody {
                n: 3,
                s: 0.3,
                b: 1.1,
                blend_width: 0.1,
            },
            BodySpec::EuclideanBall { n: 3, radius: 0.5 },
            BodySpec::PhaseTestBody { n: 3, delta: 0.5 },
            BodySpec::Tent {
                base: Box::new(lq3()),
            },
            BodySpec::Perturbed {
                base: Box::new(BodySpec::Tent {
                    base: Box::new(lq3()),
                }),
                g,
                epsilon: 0.01,
                codim: 1,
            },
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for spec in &specs {
            for _ in 0..1000 {
                let u = random_unit(&mut rng, 6);
                let theta = rng.random::<f64>() * std::f64::consts::TAU;
                let v = geom::rotate_all(&u, theta);
                let a = spec.radial_unchecked(&u).unwrap();
                let b = spec.radial_unchecked(&v).unwrap();
                assert!(
                    (a - b).abs() <= 1e-12 * a.abs().max(1.0),
                    "diagonal-rotation invariance violated: {spec:?}"
                );
                // evenness
                let neg: Vec<f64> = u.iter().map(|x| -x).collect();
                let c = spec.radial_unchecked(&neg).unwrap();
                assert_eq!(a, c, "evenness violated");
            }
        }
    }

    #[test]
    fn phase_test_body_is_not_torus_invariant() {
        let spec = BodySpec::PhaseTestBody { n: 3, delta: 0.1 };
        assert!(!spec.torus_invariant());
        // detected by sampling: rotate coordinate 1 only
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut max_dev: f64 = 0.0;
        for _ in 0..1000 {
            let u = random_unit(&mut rng, 6);
            let thetas = vec![rng.random::<f64>() * std::f64::consts::TAU, 0.0, 0.0];
            let v = geom::rotate_torus(&u, &thetas);
            let dev = (spec.radial_unchecked(&u).unwrap() - spec.radial_unchecked(&v).unwrap()).abs();
            max_dev = max_dev.max(dev);
        }
        assert!(max_dev > 1e-3, "torus variance not detected: {max_dev}");

        // while a torus-invariant body shows none
        let te = BodySpec::TwoEllipseBody {
            n: 3,
            s: 0.3,
            b: 1.1,
            blend_width: 0.1,
        };
        let mut max_dev: f64 = 0.0;
        for _ in 0..1000 {
            let u = random_unit(&mut rng, 6);
            let thetas: Vec<f64> = (0..3)
                .map(|_| rng.random::<f64>() * std::f64::consts::TAU)
                .collect();
            let v = geom::rotate_torus(&u, &thetas);
            let dev = (te.radial_unchecked(&u).unwrap() - te.radial_unchecked(&v).unwrap()).abs();
            max_dev = max_dev.max(dev);
        }
        assert!(max_dev < 1e-12);
    }

    #[test]
    fn convexity_spot_check_midpoints() {
        let specs = [
            BodySpec::ComplexEllipsoid {
                axes: vec![0.9, 0.4, 0.2],
            },
            BodySpec::TwoEllipseBody {
                n: 3,
                s: 0.3,
                b: 1.1,
                blend_width: 0.1,
            },
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for spec in &specs {
            for _ in 0..1000 {
                let u = random_unit(&mut rng, 6);
                let v = random_unit(&mut rng, 6);
                let x: Vec<f64> = u
                    .iter()
                    .map(|c| c * spec.radial_unchecked(&u).unwrap())
                    .collect();
                let y: Vec<f64> = v
                    .iter()
                    .map(|c| c * spec.radial_unchecked(&v).unwrap())
                    .collect();
                let mid = geom::lerp(&x, &y, 0.5);
                let f = spec.minkowski(&mid).unwrap();
                assert!(f <= 1.0 + 1e-9, "midpoint escaped: {f}");
            }
        }
    }

    #[test]
    fn dilate_and_homogeneity() {
        let spec = BodySpec::Dilate {
            alpha: 0.5,
            base: Box::new(lq3()),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let u = random_unit(&mut rng, 6);
        // ||lambda x|| = lambda ||x||
        let x: Vec<f64> = u.iter().map(|c| c * 0.3).collect();
        let x2: Vec<f64> = u.iter().map(|c| c * 0.6).collect();
        let f1 = spec.minkowski(&x).unwrap();
        let f2 = spec.minkowski(&x2).unwrap();
        assert!((f2 - 2.0 * f1).abs() < 1e-12);
    }

    #[test]
    fn validate_catches_bad_parameters() {
        assert!(BodySpec::TwoEllipseBody {
            n: 3,
            s: 0.6,
            b: 1.1,
            blend_width: 0.06
        }
        .validate()
        .is_err());
        assert!(BodySpec::TwoEllipseBody {
            n: 3,
            s: 0.3,
            b: 0.9,
            blend_width: 0.06
        }
        .validate()
        .is_err());
        assert!(BodySpec::LqBall { n: 3, q: 0.5 }.validate().is_err());
        assert!(BodySpec::EuclideanBall { n: 3, radius: 1.5 }.validate().is_err());
    }

    #[test]
    fn zonal_profile_coordinate_axis_is_torus_invariant() {
        let g = ZonalProfile::new(
            geom::coordinate_axis(3, 2),
            vec![0.0, 0.25, 0.5, 0.75, 1.0],
            vec![0.0, 0.2, 0.1, -0.3, -1.0],
        );
        assert!(g.axis_is_coordinate());
        // value depends only on |u_n|
        let u = geom::normalized(&[0.3, 0.1, 0.2, 0.0, 0.5, 0.4]);
        let thetas = vec![1.0, 2.0, 0.5];
        let v = geom::rotate_torus(&u, &thetas);
        assert!((g.eval_unit(&u) - g.eval_unit(&v)).abs() < 1e-12);
    }

    #[test]
    fn spline_reproduces_cubics() {
        let xs: Vec<f64> = (0..=40).map(|i| i as f64 / 40.0).collect();
        let f = |x: f64| 1.0 + 2.0 * x - x * x;
        let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
        let sp = CubicSpline::new(xs, ys);
        for i in 0..200 {
            let x = i as f64 / 199.0;
            assert!((sp.eval(x) - f(x)).abs() < 2e-4);
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_spec() -> impl Strategy<Value = BodySpec> {
            let leaf = prop_oneof![
                (2usize..5, 1.0f64..6.0).prop_map(|(n, q)| BodySpec::LqBall { n, q }),
                proptest::collection::vec(0.1f64..0.95, 2..5)
                    .prop_map(|axes| BodySpec::ComplexEllipsoid { axes }),
                (2usize..5, 0.05f64..0.45, 1.05f64..1.6)
                    .prop_map(|(n, s, b)| BodySpec::two_ellipse(n, s, b)),
                (2usize..5, 0.1f64..0.9)
                    .prop_map(|(n, radius)| BodySpec::EuclideanBall { n, radius }),
                (2usize..5, 0.0f64..1.5)
                    .prop_map(|(n, delta)| BodySpec::PhaseTestBody { n, delta }),
            ];
            leaf.prop_flat_map(|base| {
                prop_oneof![
                    Just(base.clone()),
                    (0.2f64..2.0).prop_map(move |alpha| BodySpec::Dilate {
                        alpha,
                        base: Box::new(base.clone()),
                    }),
                ]
            })
            .prop_map(|spec| BodySpec::Tent {
                base: Box::new(spec),
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn tent_cotent_roundtrip(rho in 0.01f64..0.95) {
                let back = cotent_radial(tent_radial(rho)).unwrap();
                prop_assert!((back - rho).abs() < 1e-12);
            }

            #[test]
            fn radial_is_positive_even_and_rotation_invariant(
                spec in arb_spec(),
                seed in 0u64..1000,
                theta in 0.0f64..std::f64::consts::TAU,
            ) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let u = random_unit(&mut rng, spec.ambient_dim());
                let rho = spec.radial_unchecked(&u).unwrap();
                prop_assert!(rho.is_finite() && rho > 0.0);
                // the tent wrapper keeps everything inside the ball
                prop_assert!(rho < 1.0);
                let neg: Vec<f64> = u.iter().map(|x| -x).collect();
                prop_assert_eq!(rho, spec.radial_unchecked(&neg).unwrap());
                let rot = geom::rotate_all(&u, theta);
                let rho_rot = spec.radial_unchecked(&rot).unwrap();
                prop_assert!((rho - rho_rot).abs() <= 1e-12 * rho.max(1.0));
            }

            #[test]
            fn minkowski_is_positively_homogeneous(
                spec in arb_spec(),
                seed in 0u64..1000,
                scale in 0.1f64..4.0,
            ) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let u = random_unit(&mut rng, spec.ambient_dim());
                let x: Vec<f64> = u.iter().map(|c| 0.3 * c).collect();
                let sx: Vec<f64> = x.iter().map(|c| scale * c).collect();
                let f = spec.minkowski(&x).unwrap();
                let fs = spec.minkowski(&sx).unwrap();
                prop_assert!((fs - scale * f).abs() <= 1e-11 * fs.max(1.0));
            }
        }
    }
}
