//! Quadrature rules over spheres and the torus-reduced moduli domain.

use std::f64::consts::TAU;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bodies::random_unit;
use crate::error::{Error, Result};
use crate::geom;
use crate::quadrature::sobol::Sobol;
use crate::special::{gauss_legendre_ab, pairwise_sum, sphere_surface};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleMethod {
    MonteCarlo,
    QuasiMonteCarlo,
    /// Deterministic Gauss product rule over the moduli domain; valid only
    /// for torus-invariant integrands.
    TorusProduct,
}

/// Nodes (unit vectors in R^N) and weights. Weights sum to |S^{N-1}| for a
/// full-sphere rule or |S^{2d-1}| for a subsphere rule.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub ambient_dim: usize,
    pub method: RuleMethod,
    pub seed: u64,
    /// Number of contiguous equal-size blocks usable as independent
    /// replicates for error estimation (1 for deterministic rules).
    pub replicas: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn node(&self, i: usize) -> &[f64] {
        let d = self.ambient_dim;
        &self.nodes[i * d..(i + 1) * d]
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn weight_sum(&self) -> f64 {
        pairwise_sum(&self.weights)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[f64], f64)> {
        (0..self.len()).map(move |i| (self.node(i), self.weights[i]))
    }

    /// Integrate a function over the rule. Node evaluation is parallel; the
    /// reduction is a fixed pairwise tree, so the result does not depend on
    /// the worker count.
    pub fn integrate<F: Fn(&[f64]) -> f64 + Sync>(&self, f: F) -> f64 {
        let vals: Vec<f64> = (0..self.len())
            .into_par_iter()
            .map(|i| self.weights[i] * f(self.node(i)))
            .collect();
        pairwise_sum(&vals)
    }

    /// Fallible integration; the first error aborts.
    pub fn try_integrate<F: Fn(&[f64]) -> Result<f64> + Sync>(&self, f: F) -> Result<f64> {
        let vals: Vec<f64> = (0..self.len())
            .into_par_iter()
            .map(|i| f(self.node(i)).map(|v| self.weights[i] * v))
            .collect::<Result<Vec<f64>>>()?;
        Ok(pairwise_sum(&vals))
    }

    /// Integral together with a standard-error estimate from the replicate
    /// blocks. Deterministic rules report zero error here; their accuracy is
    /// assessed by level comparison instead.
    pub fn integrate_with_error<F: Fn(&[f64]) -> f64 + Sync>(&self, f: F) -> (f64, f64) {
        let vals: Vec<f64> = (0..self.len())
            .into_par_iter()
            .map(|i| self.weights[i] * f(self.node(i)))
            .collect();
        let total = pairwise_sum(&vals);
        if self.replicas < 2 {
            return (total, 0.0);
        }
        let block = self.len() / self.replicas;
        let estimates: Vec<f64> = (0..self.replicas)
            .map(|r| pairwise_sum(&vals[r * block..(r + 1) * block]) * self.replicas as f64)
            .collect();
        let mean = pairwise_sum(&estimates) / self.replicas as f64;
        let var = estimates.iter().map(|e| (e - mean) * (e - mean)).sum::<f64>()
            / (self.replicas as f64 - 1.0);
        let stderr = (var / self.replicas as f64).sqrt();
        (total, stderr)
    }
}

/// Rule over the full sphere S^{N-1}.
///
/// Monte-Carlo nodes come from seeded Gaussian normalization; quasi-Monte-
/// Carlo nodes from a Sobol sequence pushed through the complex-Gaussian map
/// (exact inverse transform on coordinate pairs), organized in 8 randomly
/// shifted replicate blocks. Identical seeds give identical rules.
pub fn sphere_rule(ambient_dim: usize, size: usize, method: RuleMethod, seed: u64) -> QuadratureRule {
    assert!(ambient_dim >= 2 && size >= 1);
    let area = sphere_surface(ambient_dim);
    match method {
        RuleMethod::MonteCarlo => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut nodes = Vec::with_capacity(size * ambient_dim);
            for _ in 0..size {
                nodes.extend(random_unit(&mut rng, ambient_dim));
            }
            QuadratureRule {
                ambient_dim,
                method,
                seed,
                replicas: if size >= 64 { 8 } else { 1 },
                nodes,
                weights: vec![area / size as f64; size],
            }
        }
        RuleMethod::QuasiMonteCarlo => {
            let replicas = if size >= 64 { 8 } else { 1 };
            let per = size / replicas;
            let size = per * replicas;
            let pair_dim = ambient_dim.div_ceil(2) * 2;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut nodes = Vec::with_capacity(size * ambient_dim);
            for _ in 0..replicas {
                let shift: Vec<f64> = (0..pair_dim).map(|_| rng.random::<f64>()).collect();
                let mut sobol = Sobol::new(pair_dim);
                for _ in 0..per {
                    let p = sobol.next_point();
                    let mut v = Vec::with_capacity(pair_dim);
                    for j in 0..pair_dim / 2 {
                        let u1 = (p[2 * j] + shift[2 * j]).fract();
                        let u2 = (p[2 * j + 1] + shift[2 * j + 1]).fract();
                        // complex standard Gaussian: radius^2 ~ Exp(1/2)
                        let r = (-2.0 * (1.0 - u1).max(1e-300).ln()).sqrt();
                        v.push(r * (TAU * u2).cos());
                        v.push(r * (TAU * u2).sin());
                    }
                    v.truncate(ambient_dim);
                    nodes.extend(geom::normalized(&v));
                }
            }
            QuadratureRule {
                ambient_dim,
                method,
                seed,
                replicas,
                nodes,
                weights: vec![area / size as f64; size],
            }
        }
        RuleMethod::TorusProduct => {
            assert!(ambient_dim % 2 == 0, "torus rule needs an even ambient dimension");
            torus_reduced_rule(ambient_dim / 2, size)
        }
    }
}

/// Deterministic product rule for torus-invariant integrands on S^{2n-1}.
///
/// Writing u = (m_1 e^{i phi_1}, ..., m_n e^{i phi_n}), the phase average of
/// a torus-invariant F contributes (2 pi)^n prod m_j against the moduli
/// measure on the positive orthant of S^{n-1}. The recursive substitution
/// sin^2(theta_k) -> u_k turns each level into a polynomial weight on [0,1],
/// integrated by `level` Gauss-Legendre points, so even polynomials in the
/// moduli are integrated exactly.
///
/// Nodes are embedded at phase zero; weights sum to |S^{2n-1}|.
pub fn torus_reduced_rule(n: usize, level: usize) -> QuadratureRule {
    assert!(n >= 1 && level >= 1);
    let mut moduli: Vec<Vec<f64>> = vec![vec![]];
    let mut weights: Vec<f64> = vec![TAU.powi(n as i32)];
    // build the product over n-1 levels
    for k in 1..n {
        let (xs, ws) = gauss_legendre_ab(level, 0.0, 1.0);
        let mut new_mod = Vec::with_capacity(moduli.len() * level);
        let mut new_w = Vec::with_capacity(weights.len() * level);
        let pow = (n - k - 1) as i32;
        for (m, w) in moduli.iter().zip(&weights) {
            for (&u, &wu) in xs.iter().zip(&ws) {
                // prefix of sines times cos(theta_k); the running sine
                // product is tracked through the node list length
                let mut mm = m.clone();
                mm.push(u);
                new_mod.push(mm);
                new_w.push(w * wu * u.powi(pow) / 2.0);
            }
        }
        moduli = new_mod;
        weights = new_w;
    }
    // convert the u-coordinates into moduli vectors (m_n, ..., m_1 order of
    // construction; stored back in coordinate order m_1..m_n)
    let mut nodes = Vec::with_capacity(moduli.len() * 2 * n);
    for us in &moduli {
        let mut m = vec![0.0; n];
        let mut sin_prod = 1.0;
        for (k, &u) in us.iter().enumerate() {
            m[n - 1 - k] = sin_prod * (1.0 - u).sqrt();
            sin_prod *= u.sqrt();
        }
        m[0] = sin_prod;
        // embed at phase zero
        for &mj in &m {
            nodes.push(mj);
            nodes.push(0.0);
        }
    }
    QuadratureRule {
        ambient_dim: 2 * n,
        method: RuleMethod::TorusProduct,
        seed: 0,
        replicas: 1,
        nodes,
        weights,
    }
}

/// Randomized check that a profile really is torus-invariant (the torus rule
/// is only valid for such integrands). Returns the largest deviation seen.
pub fn torus_invariance_check<F: Fn(&[f64]) -> Result<f64>>(
    f: F,
    ambient_dim: usize,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = ambient_dim / 2;
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let u = random_unit(&mut rng, ambient_dim);
        let thetas: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * TAU).collect();
        let v = geom::rotate_torus(&u, &thetas);
        worst = worst.max((f(&u)? - f(&v)?).abs());
    }
    Ok(worst)
}

/// Scale of integration error for a rule applied to values of magnitude
/// `scale`: used for deterministic rules where replicate error is zero.
pub fn deterministic_error_floor(scale: f64) -> f64 {
    scale * 1e-12
}

/// Map a rule on S^{2d-1} through a complex frame onto S^{2n-1} cap span(H).
pub fn subspace_sphere_rule(
    frame: &crate::quadrature::frames::ComplexSubspaceFrame,
    size: usize,
    method: RuleMethod,
    seed: u64,
) -> Result<QuadratureRule> {
    frame.check_orthonormal(1e-12)?;
    let inner = sphere_rule(2 * frame.d, size, method, seed);
    let mut nodes = Vec::with_capacity(inner.len() * 2 * frame.n);
    for i in 0..inner.len() {
        let z = geom::to_complex(inner.node(i));
        nodes.extend(frame.embed(&z));
    }
    Ok(QuadratureRule {
        ambient_dim: 2 * frame.n,
        method,
        seed,
        replicas: inner.replicas,
        nodes,
        weights: inner.weights,
    })
}

/// Convenience: reject rules whose weight sum drifted from the sphere area.
pub fn check_weight_sum(rule: &QuadratureRule, expected: f64, tol: f64) -> Result<()> {
    let s = rule.weight_sum();
    if ((s - expected) / expected).abs() > tol {
        return Err(Error::NumericalInstability(format!(
            "weight sum {s} deviates from {expected}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn sphere_rule_weight_sums() {
        for (dim, expected) in [(4usize, 2.0 * PI * PI), (6, PI.powi(3))] {
            for method in [RuleMethod::MonteCarlo, RuleMethod::QuasiMonteCarlo] {
                let rule = sphere_rule(dim, 4096, method, 42);
                assert!((rule.weight_sum() - expected).abs() < 1e-10 * expected);
            }
        }
    }

    #[test]
    fn qmc_sphere_integrates_moments() {
        // |S^5| = pi^3; int u_1^2 = |S^5|/6; int u_1 = 0
        let rule = sphere_rule(6, 1 << 14, RuleMethod::QuasiMonteCarlo, 7);
        let (one, se1) = rule.integrate_with_error(|_| 1.0);
        assert!((one - PI.powi(3)).abs() <= 1e-12 + 3.0 * se1);
        let (m2, se2) = rule.integrate_with_error(|u| u[0] * u[0]);
        assert!(
            (m2 - PI.powi(3) / 6.0).abs() <= 3.0 * se2.max(1e-4),
            "second moment {m2} vs {}",
            PI.powi(3) / 6.0
        );
        let (odd, se3) = rule.integrate_with_error(|u| u[0]);
        assert!(odd.abs() <= 3.0 * se3.max(1e-4), "odd moment {odd} +- {se3}");
    }

    #[test]
    fn mc_sphere_integrates_constants_within_standard_error() {
        let size = 4096;
        let rule = sphere_rule(6, size, RuleMethod::MonteCarlo, 11);
        let est = rule.integrate(|_| 1.0);
        let rel = (est - PI.powi(3)).abs() / PI.powi(3);
        assert!(rel <= 3.0 / (size as f64).sqrt());
    }

    #[test]
    fn torus_rule_reproduces_sphere_areas() {
        // n=2: (2 pi)^2 * 1/2 = 2 pi^2 = |S^3|
        let r2 = torus_reduced_rule(2, 24);
        assert!((r2.weight_sum() - 2.0 * PI * PI).abs() < 1e-10);
        // n=3: |S^5| = pi^3 to 1e-10
        let r3 = torus_reduced_rule(3, 24);
        assert!((r3.weight_sum() - PI.powi(3)).abs() < 1e-10);
        // n=4
        let r4 = torus_reduced_rule(4, 16);
        assert!((r4.weight_sum() - sphere_surface(8)).abs() < 1e-10);
    }

    #[test]
    fn torus_rule_matches_full_sphere_on_torus_invariant_profiles() {
        // the |.|_4^{-2} profile of the complex l4 ball in C^3
        let spec = crate::bodies::BodySpec::LqBall { n: 3, q: 4.0 };
        let torus = torus_reduced_rule(3, 32);
        let exact = torus.try_integrate(|u| {
            Ok(spec.radial_unchecked(u)?.powi(2))
        })
        .unwrap();
        let mc = sphere_rule(6, 1 << 14, RuleMethod::MonteCarlo, 5);
        let (est, se) = mc.integrate_with_error(|u| {
            spec.radial_unchecked(u).unwrap().powi(2)
        });
        assert!(
            (est - exact).abs() <= 3.0 * se,
            "torus {exact} vs mc {est} +- {se}"
        );
    }

    #[test]
    fn torus_rule_exact_for_even_moduli_polynomials() {
        // int over S^5 of m_1^2 = |S^5| / 3 (complex coordinates are
        // exchangeable and moduli squares sum to one)
        let rule = torus_reduced_rule(3, 16);
        let est = rule.integrate(|u| u[0] * u[0] + u[1] * u[1]);
        assert!((est - PI.powi(3) / 3.0).abs() < 1e-12);
        // mixed moment m_1^2 m_2^2 m_3^2 over S^5: closed form
        // E[prod |z_j|^2] with (|z_1|^2,|z_2|^2,|z_3|^2) ~ Dirichlet(1,1,1)
        // gives |S^5| * 6 / (3*4*5*6*7*8 / (2*3*4)) ... check against MC
        let est2 = rule.integrate(|u| {
            let m = geom::moduli(u);
            m.iter().map(|x| x * x).product()
        });
        let mc = sphere_rule(6, 1 << 15, RuleMethod::QuasiMonteCarlo, 3);
        let (ref2, se) = mc.integrate_with_error(|u| {
            let m = geom::moduli(u);
            m.iter().map(|x| x * x).product()
        });
        assert!((est2 - ref2).abs() <= 5.0 * se.max(1e-6), "{est2} vs {ref2}");
    }

    #[test]
    fn rules_are_deterministic_in_the_seed() {
        let a = sphere_rule(6, 512, RuleMethod::QuasiMonteCarlo, 9);
        let b = sphere_rule(6, 512, RuleMethod::QuasiMonteCarlo, 9);
        assert_eq!(a.nodes, b.nodes);
        assert_eq!(a.weights, b.weights);
        let c = sphere_rule(6, 512, RuleMethod::MonteCarlo, 9);
        let d = sphere_rule(6, 512, RuleMethod::MonteCarlo, 9);
        assert_eq!(c.nodes, d.nodes);
    }

    #[test]
    fn torus_invariance_precheck_flags_phase_body() {
        let spec = crate::bodies::BodySpec::PhaseTestBody { n: 3, delta: 0.1 };
        let dev = torus_invariance_check(|u| spec.radial_unchecked(u), 6, 200, 1).unwrap();
        assert!(dev > 1e-3);
        let ball = crate::bodies::BodySpec::EuclideanBall { n: 3, radius: 0.5 };
        let dev2 = torus_invariance_check(|u| ball.radial_unchecked(u), 6, 200, 1).unwrap();
        assert!(dev2 < 1e-14);
    }
}
