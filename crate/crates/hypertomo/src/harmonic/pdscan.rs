//! Positive-definiteness scans: minimize the Fourier transform of
//! ||x||_K^{-2l} over a direction grid reduced by the body's symmetries.
//!
//! A strictly negative certified minimum shows the homogeneous extension is
//! not a positive definite distribution (the body is not a 2l-intersection
//! body). Minima within the error estimate are reported as indeterminate,
//! never as a verdict.

use rayon::prelude::*;

use crate::bodies::BodySpec;
use crate::error::{Error, Result};
use crate::geom;
use crate::harmonic::transform::{
    section_laplacian_ft, HomogeneousProfile, MultiplierEngine, MultiplierOptions,
    SectionFtOptions,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanOutcome {
    /// min < 0 with |min| beyond three times the error estimate.
    NegativeCertified,
    /// min > 0 with margin beyond the error estimate everywhere scanned.
    NonNegative,
    /// The minimum is within its own error estimate.
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanRoute {
    /// Prefer the section-Laplacian route when the degree admits it with at
    /// most a biharmonic stencil, else fall back to the multiplier route.
    Auto,
    Multiplier,
    /// Finite differences of the parallel section function; valid when
    /// 2l = 2n - 2m - 2 for an integer 0 <= m < n-1.
    SectionLaplacian,
}

fn section_admissible(n: usize, codim: usize) -> bool {
    // p = 2l = 2n - 2m - 2 => m = n - 1 - l
    let m = n as i64 - 1 - codim as i64;
    (0..=2).contains(&m) && (m as usize) < n - 1
}

#[derive(Debug, Clone)]
pub struct PdScanOptions {
    pub multiplier: MultiplierOptions,
    pub section: SectionFtOptions,
    pub route: ScanRoute,
    /// Grid points per reduced-moduli dimension (torus-invariant scans).
    pub grid_per_dim: usize,
    /// Grid size for one-dimensional scans of bi-invariant bodies.
    pub bi_grid: usize,
    /// Direction count for bodies with no usable symmetry.
    pub generic_directions: usize,
    pub seed: u64,
}

impl PdScanOptions {
    pub fn defaults(ambient_dim: usize) -> Self {
        let mut section = SectionFtOptions::default();
        if ambient_dim >= 8 {
            // margins on S^7 are wide; favor scan throughput
            section.slice_rule_size = 1024;
        }
        PdScanOptions {
            multiplier: MultiplierOptions::defaults(ambient_dim),
            section,
            route: ScanRoute::Auto,
            grid_per_dim: if ambient_dim >= 8 { 7 } else { 17 },
            bi_grid: 48,
            generic_directions: 128,
            seed: 0,
        }
    }

    pub fn with_route(mut self, route: ScanRoute) -> Self {
        self.route = route;
        self
    }
}

#[derive(Debug, Clone)]
pub struct PdScanReport {
    pub outcome: ScanOutcome,
    pub min_value: f64,
    pub argmin: Vec<f64>,
    pub error_estimate: f64,
    /// |min| / error estimate.
    pub margin: f64,
    pub scanned: usize,
    pub p: f64,
    pub codim: usize,
}

/// Transform evaluator reused by the scan and by downstream constructions.
pub enum ScanEvaluator<'a> {
    Multiplier(Box<MultiplierEngine>),
    Section {
        spec: &'a BodySpec,
        p: f64,
        opts: SectionFtOptions,
    },
}

impl ScanEvaluator<'_> {
    pub fn ft(&self, xi: &[f64]) -> Result<(f64, f64)> {
        match self {
            ScanEvaluator::Multiplier(engine) => {
                let r = engine.ft(xi);
                Ok((r.value, r.error_estimate))
            }
            ScanEvaluator::Section { spec, p, opts } => {
                let r = section_laplacian_ft(spec, *p, xi, opts)?;
                Ok((r.value, r.error_estimate))
            }
        }
    }
}

pub fn build_evaluator<'a>(
    spec: &'a BodySpec,
    p: f64,
    route: ScanRoute,
    opts: &PdScanOptions,
) -> Result<ScanEvaluator<'a>> {
    let route = match route {
        ScanRoute::Auto => {
            let n = spec.complex_dim();
            if section_admissible(n, (p / 2.0).round() as usize) {
                ScanRoute::SectionLaplacian
            } else {
                ScanRoute::Multiplier
            }
        }
        other => other,
    };
    match route {
        ScanRoute::Auto => unreachable!(),
        ScanRoute::Multiplier => {
            let profile = spec.radial_power_profile(p);
            let hp = HomogeneousProfile::new(&profile, p)?;
            let engine = MultiplierEngine::build(hp.f, hp.p, &opts.multiplier)?;
            Ok(ScanEvaluator::Multiplier(Box::new(engine)))
        }
        ScanRoute::SectionLaplacian => Ok(ScanEvaluator::Section {
            spec,
            p,
            opts: opts.section,
        }),
    }
}

/// Direction grid reduced by the body's invariances.
pub fn scan_directions(spec: &BodySpec, opts: &PdScanOptions) -> Vec<Vec<f64>> {
    let n = spec.complex_dim();
    if spec.bi_invariant() && n >= 2 {
        // the transform depends only on c = |<xi, e_n>|
        return (0..=opts.bi_grid)
            .map(|i| {
                let c = i as f64 / opts.bi_grid as f64;
                let mut xi = vec![0.0; 2 * n];
                xi[0] = (1.0 - c * c).max(0.0).sqrt();
                xi[2 * n - 2] = c;
                geom::normalized(&xi)
            })
            .collect();
    }
    if spec.torus_invariant() {
        // uniform grid in the recursive moduli parametrization
        let g = opts.grid_per_dim;
        let dims = n - 1;
        let total = g.pow(dims as u32);
        let perm = spec.permutation_symmetric();
        let mut out = Vec::new();
        let mut seen: Vec<Vec<i64>> = Vec::new();
        for flat in 0..total {
            let mut digits = flat;
            let mut us = Vec::with_capacity(dims);
            for _ in 0..dims {
                us.push((digits % g) as f64 / (g - 1).max(1) as f64);
                digits /= g;
            }
            // recursive map into moduli (same convention as the torus rule)
            let mut m = vec![0.0; n];
            let mut sin_prod = 1.0;
            for (k, &u) in us.iter().enumerate() {
                m[n - 1 - k] = sin_prod * (1.0 - u).sqrt();
                sin_prod *= u.sqrt();
            }
            m[0] = sin_prod;
            let mut key: Vec<i64> = m.iter().map(|x| (x * 1e8).round() as i64).collect();
            if perm {
                key.sort_unstable();
            }
            if seen.contains(&key) {
                continue;
            }
            seen.push(key);
            let mut xi = vec![0.0; 2 * n];
            for (j, &mj) in m.iter().enumerate() {
                xi[2 * j] = mj;
            }
            out.push(geom::normalized(&xi));
        }
        return out;
    }
    // no usable symmetry: quasi-random directions
    let rule = crate::quadrature::sphere_rule(
        2 * n,
        opts.generic_directions,
        crate::quadrature::RuleMethod::QuasiMonteCarlo,
        opts.seed,
    );
    (0..rule.len()).map(|i| rule.node(i).to_vec()).collect()
}

/// Scan the transform of rho^{2l} (degree -2l) for negative values.
pub fn pd_scan(spec: &BodySpec, codim: usize, opts: &PdScanOptions) -> Result<PdScanReport> {
    let n = spec.complex_dim();
    if codim == 0 || codim >= n {
        return Err(Error::InputDomain(format!(
            "scan codimension must satisfy 1 <= l <= n-1, got l={codim}"
        )));
    }
    let p = 2.0 * codim as f64;
    let evaluator = build_evaluator(spec, p, opts.route, opts)?;
    let grid = scan_directions(spec, opts);
    let evals: Vec<(f64, f64, usize)> = grid
        .par_iter()
        .enumerate()
        .map(|(i, xi)| evaluator.ft(xi).map(|(v, e)| (v, e, i)))
        .collect::<Result<Vec<_>>>()?;
    let &(min_value, mut err, arg_idx) = evals
        .iter()
        .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap())
        .ok_or_else(|| Error::InputDomain("empty scan grid".into()))?;
    let argmin = grid[arg_idx].clone();

    // sign-stability refinement at the argmin: repeat with a larger degree
    // cap and finer projection rule, fold the drift into the error estimate
    if let ScanEvaluator::Multiplier(_) = &evaluator {
        let refined_opts = PdScanOptions {
            multiplier: opts
                .multiplier
                .with_max_deg(opts.multiplier.max_deg + opts.multiplier.max_deg / 2)
                .with_moduli_level(opts.multiplier.moduli_level + opts.multiplier.moduli_level / 2),
            ..opts.clone()
        };
        let refined = build_evaluator(spec, p, ScanRoute::Multiplier, &refined_opts)?;
        let (v2, e2) = refined.ft(&argmin)?;
        err = err.max(e2) + (v2 - min_value).abs();
    }

    let outcome = if min_value < 0.0 && min_value.abs() > 3.0 * err {
        ScanOutcome::NegativeCertified
    } else if min_value > 0.0 && min_value > 3.0 * err {
        ScanOutcome::NonNegative
    } else {
        ScanOutcome::Indeterminate
    };
    Ok(PdScanReport {
        outcome,
        min_value,
        argmin,
        error_estimate: err,
        margin: if err > 0.0 { min_value.abs() / err } else { f64::INFINITY },
        scanned: grid.len(),
        p,
        codim,
    })
}
