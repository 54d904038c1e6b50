//! Spherical Parseval residual and the hyperplane-invariance check of the
//! transform of rotation-invariant bodies.

use std::f64::consts::TAU;

use crate::bodies::BodySpec;
use crate::error::Result;
use crate::geom;
use crate::harmonic::transform::{HomogeneousProfile, MultiplierEngine, MultiplierOptions};
use crate::quadrature::rules::{sphere_rule, torus_reduced_rule, RuleMethod};
use crate::special::pairwise_sum;

#[derive(Debug, Clone, Copy)]
pub struct ParsevalOptions {
    pub multiplier: MultiplierOptions,
    /// Level of the outer spherical rule the two transforms are integrated
    /// against each other on.
    pub outer_level: usize,
    pub outer_qmc_size: usize,
    pub seed: u64,
}

impl ParsevalOptions {
    pub fn defaults(ambient_dim: usize) -> Self {
        let mut multiplier = MultiplierOptions::defaults(ambient_dim).with_max_deg(16);
        multiplier.moduli_level = 24;
        ParsevalOptions {
            multiplier,
            outer_level: 12,
            outer_qmc_size: 1 << 12,
            seed: 0,
        }
    }
}

/// Relative residual of the spherical Parseval identity
///   int FT[||.||_K^{-p}] FT[||.||_L^{-(N-p)}] dtheta
///     = (2 pi)^N int ||theta||_K^{-p} ||theta||_L^{-(N-p)} dtheta.
pub fn parseval_residual(
    spec_k: &BodySpec,
    spec_l: &BodySpec,
    p: f64,
    opts: &ParsevalOptions,
) -> Result<f64> {
    let n = spec_k.complex_dim();
    let ambient = 2 * n;
    let q = ambient as f64 - p;
    let prof_k = spec_k.radial_power_profile(p);
    let prof_l = spec_l.radial_power_profile(q);
    let hp_k = HomogeneousProfile::new(&prof_k, p)?;
    let hp_l = HomogeneousProfile::new(&prof_l, q)?;
    let engine_k = MultiplierEngine::build(hp_k.f, hp_k.p, &opts.multiplier)?;
    let engine_l = MultiplierEngine::build(hp_l.f, hp_l.p, &opts.multiplier)?;

    let rule = if spec_k.torus_invariant() && spec_l.torus_invariant() {
        torus_reduced_rule(n, opts.outer_level)
    } else {
        sphere_rule(ambient, opts.outer_qmc_size, RuleMethod::QuasiMonteCarlo, opts.seed)
    };
    let mut lhs_terms = Vec::with_capacity(rule.len());
    let mut rhs_terms = Vec::with_capacity(rule.len());
    for i in 0..rule.len() {
        let node = rule.node(i);
        let w = rule.weight(i);
        lhs_terms.push(w * engine_k.ft(node).value * engine_l.ft(node).value);
        let rho_k = spec_k.radial_unchecked(node)?;
        let rho_l = spec_l.radial_unchecked(node)?;
        rhs_terms.push(w * rho_k.powf(p) * rho_l.powf(q));
    }
    let lhs = pairwise_sum(&lhs_terms);
    let rhs = TAU.powi(ambient as i32) * pairwise_sum(&rhs_terms);
    Ok((lhs - rhs).abs() / rhs.abs())
}

/// Constancy of the transform on the circle of the complex line of xi:
/// returns (standard deviation) / |mean| over sampled circle points.
pub fn hplane_ft_invariance(
    spec: &BodySpec,
    xi: &[f64],
    p: f64,
    circle_points: usize,
    opts: &MultiplierOptions,
) -> Result<f64> {
    let profile = spec.radial_power_profile(p);
    let hp = HomogeneousProfile::new(&profile, p)?;
    let engine = MultiplierEngine::build(hp.f, hp.p, opts)?;
    let xi = geom::normalized(xi);
    let values: Vec<f64> = (0..circle_points)
        .map(|k| {
            let theta = TAU * k as f64 / circle_points as f64;
            engine.ft(&geom::rotate_all(&xi, theta)).value
        })
        .collect();
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / values.len() as f64;
    Ok(var.sqrt() / mean.abs().max(1e-300))
}
