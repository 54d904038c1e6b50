//! Fourier transforms of homogeneous extensions f(x/|x|) |x|^{-p}.
//!
//! Two independent routes are implemented:
//!
//! * the multiplier route expands the profile in spherical harmonics through
//!   zonal (Gegenbauer) projections and multiplies each even degree by its
//!   Gamma-ratio factor; the projection integrals use quadrature adapted to
//!   the profile's symmetry (torus-invariant, diagonal-rotation-invariant,
//!   or plain even), with phase averages done by exact Chebyshev and
//!   trapezoid products;
//! * the section route differentiates the parallel section function
//!   A_{K,H_xi} at the origin: for p = 2n - 2m - 2 the transform equals
//!   (-1)^m 2 pi (2n-2m-2) Delta^m A(0).
//!
//! All transforms are reported at |xi| = 1; homogeneity of degree -(N-p)
//! supplies every other radius.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::bodies::{BodySpec, SphereFn};
use crate::error::{Error, Result};
use crate::geom;
use crate::quadrature::rules::{sphere_rule, subspace_sphere_rule, torus_reduced_rule, RuleMethod};
use crate::quadrature::{fd_laplacian, ComplexSubspaceFrame, QuadratureRule};
use crate::special::{chebyshev_avg_nodes, pairwise_sum};

use super::gegenbauer::{zonal_factors, GegenbauerRecurrence};

pub use super::gegenbauer::homog_ft_constant;

/// An even spherical profile together with its homogeneity order: the
/// distribution f(x/|x|) |x|^{-p} on R^N.
pub struct HomogeneousProfile<'a> {
    pub p: f64,
    pub f: &'a dyn SphereFn,
}

impl<'a> HomogeneousProfile<'a> {
    pub fn new(f: &'a dyn SphereFn, p: f64) -> Result<Self> {
        let n = f.ambient_dim() as f64;
        if !(p > 0.0 && p < n) {
            return Err(Error::InputDomain(format!(
                "homogeneity order must lie in (0, {n}), got {p}"
            )));
        }
        Ok(HomogeneousProfile { p, f })
    }

    pub fn ambient_dim(&self) -> usize {
        self.f.ambient_dim()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FtMethodTag {
    Multiplier,
    SectionLaplacian,
}

/// Transform value at a unit direction, with an error estimate combining
/// truncation and quadrature contributions.
#[derive(Debug, Clone)]
pub struct FTResult {
    pub xi: Vec<f64>,
    pub value: f64,
    pub error_estimate: f64,
    pub method: FtMethodTag,
}

/// Options of the multiplier route.
#[derive(Debug, Clone, Copy)]
pub struct MultiplierOptions {
    /// Largest even harmonic degree retained.
    pub max_deg: usize,
    /// Gauss points per reduced-moduli dimension.
    pub moduli_level: usize,
    /// Trapezoid points per phase-difference dimension (non-torus profiles).
    pub tau_points: usize,
    /// Node count of the fallback full-sphere rule for plain even profiles.
    pub qmc_size: usize,
    pub seed: u64,
}

impl MultiplierOptions {
    /// Defaults chosen by tail-decay diagnostics on the smooth parametric
    /// bodies: degree 24 on S^5, 16 on S^7.
    pub fn defaults(ambient_dim: usize) -> Self {
        let max_deg = match ambient_dim {
            0..=6 => 24,
            8 => 16,
            _ => 12,
        };
        let moduli_level = match ambient_dim {
            0..=6 => 24,
            8 => 14,
            _ => 12,
        };
        MultiplierOptions {
            max_deg,
            moduli_level,
            tau_points: max_deg + 1,
            qmc_size: 1 << 16,
            seed: 0,
        }
    }

    pub fn with_max_deg(mut self, max_deg: usize) -> Self {
        self.max_deg = max_deg;
        self.tau_points = self.tau_points.max(max_deg + 1);
        self.moduli_level = self.moduli_level.max(max_deg / 2 + 8);
        self
    }

    pub fn with_moduli_level(mut self, level: usize) -> Self {
        self.moduli_level = level;
        self
    }
}

enum EngineKind {
    /// Torus-invariant profiles: Gauss moduli rule x exact Chebyshev torus
    /// average of the zonal kernel.
    Torus {
        moduli: Vec<Vec<f64>>,
        weighted_f: Vec<f64>,
        cheb: Vec<f64>,
    },
    /// Diagonal-rotation-invariant profiles: moduli x phase-difference grid,
    /// with the leftover diagonal phase averaged exactly by Chebyshev.
    RTheta {
        n: usize,
        node_coords: Vec<Complex64>,
        weighted_f: Vec<f64>,
        cheb: Vec<f64>,
    },
    /// Plain even profiles: full-sphere quasi-Monte-Carlo with the raw
    /// zonal kernel; error estimated from replicate blocks.
    General { rule: QuadratureRule, f_values: Vec<f64> },
}

/// Reusable transform engine: profile values are integrated once at build
/// time, after which every direction costs a kernel sweep only.
pub struct MultiplierEngine {
    ambient_dim: usize,
    pub max_deg: usize,
    /// zeta[m/2] for even m.
    zeta_even: Vec<f64>,
    recurrence: GegenbauerRecurrence,
    kind: EngineKind,
}

/// Walk a product grid {0..q}^d accumulating C_m(sum_j a_j cheb[k_j]) into
/// even-degree sums, with incremental prefix updates of the kernel argument.
#[inline]
fn torus_kernel_sums(
    rec: &GegenbauerRecurrence,
    active: &[f64],
    cheb: &[f64],
    sums: &mut [f64],
) -> f64 {
    let d = active.len();
    if d == 0 {
        rec.accumulate_even(0.0, 1.0, sums);
        return 1.0;
    }
    let q = cheb.len();
    let total = q.pow(d as u32);
    let mut digits = vec![0usize; d];
    let mut prefix = vec![0.0f64; d + 1];
    for j in 0..d {
        prefix[j + 1] = prefix[j] + active[j] * cheb[0];
    }
    let mut count = 0usize;
    loop {
        rec.accumulate_even(prefix[d], 1.0, sums);
        count += 1;
        // odometer increment (last digit fastest) with suffix prefix repair
        let mut j = d;
        while j > 0 && digits[j - 1] == q - 1 {
            digits[j - 1] = 0;
            j -= 1;
        }
        if j == 0 {
            break;
        }
        digits[j - 1] += 1;
        for i in (j - 1)..d {
            prefix[i + 1] = prefix[i] + active[i] * cheb[digits[i]];
        }
    }
    debug_assert_eq!(count, total);
    total as f64
}

impl MultiplierEngine {
    pub fn build(f: &dyn SphereFn, p: f64, opts: &MultiplierOptions) -> Result<Self> {
        let ambient_dim = f.ambient_dim();
        let n = ambient_dim / 2;
        let nu = (ambient_dim as f64 - 2.0) / 2.0;
        let zeta = zonal_factors(ambient_dim, p, opts.max_deg)?;
        let zeta_even: Vec<f64> = zeta.iter().copied().step_by(2).collect();
        let recurrence = GegenbauerRecurrence::new(nu, opts.max_deg);
        let cheb = chebyshev_avg_nodes(opts.max_deg / 2 + 1);
        let kind = if f.torus_invariant() {
            let rule = torus_reduced_rule(n, opts.moduli_level);
            let moduli: Vec<Vec<f64>> = (0..rule.len()).map(|i| geom::moduli(rule.node(i))).collect();
            let weighted_f: Vec<f64> = (0..rule.len())
                .into_par_iter()
                .map(|i| f.eval(rule.node(i)).map(|v| v * rule.weight(i)))
                .collect::<Result<Vec<f64>>>()?;
            EngineKind::Torus {
                moduli,
                weighted_f,
                cheb,
            }
        } else if f.rtheta_invariant() {
            let mod_rule = torus_reduced_rule(n, opts.moduli_level);
            let p_tau = opts.tau_points.max(opts.max_deg + 1);
            let tau_cis: Vec<Complex64> = (0..p_tau)
                .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / p_tau as f64))
                .collect();
            let tau_dims = n - 1;
            let tau_total = p_tau.pow(tau_dims as u32);
            let mut node_coords = Vec::with_capacity(mod_rule.len() * tau_total * n);
            let mut units = Vec::with_capacity(mod_rule.len() * tau_total);
            for i in 0..mod_rule.len() {
                let m = geom::moduli(mod_rule.node(i));
                let w = mod_rule.weight(i) / tau_total as f64;
                for flat in 0..tau_total {
                    let mut digits = flat;
                    let mut z = Vec::with_capacity(n);
                    for mj in m.iter().take(tau_dims) {
                        let k = digits % p_tau;
                        digits /= p_tau;
                        z.push(mj * tau_cis[k]);
                    }
                    z.push(Complex64::new(m[n - 1], 0.0));
                    node_coords.extend_from_slice(&z);
                    units.push((geom::from_complex(&z), w));
                }
            }
            let weighted_f: Vec<f64> = units
                .par_iter()
                .map(|(u, w)| f.eval(u).map(|v| v * w))
                .collect::<Result<Vec<f64>>>()?;
            EngineKind::RTheta {
                n,
                node_coords,
                weighted_f,
                cheb,
            }
        } else {
            let rule = sphere_rule(ambient_dim, opts.qmc_size, RuleMethod::QuasiMonteCarlo, opts.seed);
            let f_values: Vec<f64> = (0..rule.len())
                .into_par_iter()
                .map(|i| f.eval(rule.node(i)))
                .collect::<Result<Vec<f64>>>()?;
            EngineKind::General { rule, f_values }
        };
        Ok(MultiplierEngine {
            ambient_dim,
            max_deg: opts.max_deg,
            zeta_even,
            recurrence,
            kind,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Transform at a unit direction, with error estimate (harmonic tail
    /// plus quadrature scatter where available).
    pub fn ft(&self, xi: &[f64]) -> FTResult {
        let rec = &self.recurrence;
        let n_sums = rec.even_len();
        let (sums, quad_err) = match &self.kind {
            EngineKind::Torus {
                moduli,
                weighted_f,
                cheb,
            } => {
                let xi_abs = geom::moduli(xi);
                let per_node: Vec<Vec<f64>> = moduli
                    .par_iter()
                    .zip(weighted_f.par_iter())
                    .map(|(m, &wf)| {
                        // only coordinates with a nonzero kernel amplitude
                        // contribute phase dimensions
                        let active: Vec<f64> = m
                            .iter()
                            .zip(&xi_abs)
                            .map(|(x, y)| x * y)
                            .filter(|a| a.abs() > 1e-15)
                            .collect();
                        let mut sums = vec![0.0; n_sums];
                        let total = torus_kernel_sums(rec, &active, cheb, &mut sums);
                        let scale = wf / total;
                        sums.iter_mut().for_each(|s| *s *= scale);
                        sums
                    })
                    .collect();
                (sum_columns(&per_node, n_sums), 0.0)
            }
            EngineKind::RTheta {
                n,
                node_coords,
                weighted_f,
                cheb,
            } => {
                let xi_z = geom::to_complex(xi);
                let q = cheb.len();
                let per_node: Vec<Vec<f64>> = weighted_f
                    .par_iter()
                    .enumerate()
                    .map(|(i, &wf)| {
                        let coords = &node_coords[i * n..(i + 1) * n];
                        let w0: Complex64 = coords
                            .iter()
                            .zip(&xi_z)
                            .map(|(u, x)| u * x.conj())
                            .sum();
                        let amp = w0.norm();
                        let mut sums = vec![0.0; n_sums];
                        for &c in cheb {
                            rec.accumulate_even(amp * c, 1.0, &mut sums);
                        }
                        let scale = wf / q as f64;
                        sums.iter_mut().for_each(|s| *s *= scale);
                        sums
                    })
                    .collect();
                (sum_columns(&per_node, n_sums), 0.0)
            }
            EngineKind::General { rule, f_values } => {
                let per_node: Vec<Vec<f64>> = (0..rule.len())
                    .into_par_iter()
                    .map(|i| {
                        let t = geom::dot(rule.node(i), xi);
                        let mut sums = vec![0.0; n_sums];
                        rec.accumulate_even(t, rule.weight(i) * f_values[i], &mut sums);
                        sums
                    })
                    .collect();
                let sums = sum_columns(&per_node, n_sums);
                // replicate scatter of the total value
                let reps = rule.replicas.max(1);
                let block = per_node.len() / reps;
                let mut rep_vals = Vec::with_capacity(reps);
                for r in 0..reps {
                    let cols = sum_columns(&per_node[r * block..(r + 1) * block], n_sums);
                    let v: f64 = cols
                        .iter()
                        .zip(&self.zeta_even)
                        .map(|(s, z)| z * s * reps as f64)
                        .sum();
                    rep_vals.push(v);
                }
                let mean = rep_vals.iter().sum::<f64>() / reps as f64;
                let var = rep_vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
                    / (reps as f64 - 1.0).max(1.0);
                (sums, (var / reps as f64).sqrt())
            }
        };
        let terms: Vec<f64> = sums
            .iter()
            .zip(&self.zeta_even)
            .map(|(s, z)| z * s)
            .collect();
        let value = pairwise_sum(&terms);
        let scale: f64 = terms.iter().map(|t| t.abs()).sum();
        let tail = if terms.len() >= 2 {
            let k = terms.len();
            3.0 * terms[k - 1].abs().max(terms[k - 2].abs())
        } else {
            0.0
        };
        FTResult {
            xi: xi.to_vec(),
            value,
            error_estimate: tail + quad_err + 1e-13 * scale,
            method: FtMethodTag::Multiplier,
        }
    }
}

fn sum_columns(rows: &[Vec<f64>], width: usize) -> Vec<f64> {
    let mut out = vec![0.0; width];
    let mut col = vec![0.0; rows.len()];
    for (j, o) in out.iter_mut().enumerate() {
        for (i, r) in rows.iter().enumerate() {
            col[i] = r[j];
        }
        *o = pairwise_sum(&col);
    }
    out
}

/// Multiplier-route transform of a profile at one direction.
pub fn multiplier_ft(
    profile: &HomogeneousProfile<'_>,
    xi: &[f64],
    opts: &MultiplierOptions,
) -> Result<FTResult> {
    let engine = MultiplierEngine::build(profile.f, profile.p, opts)?;
    Ok(engine.ft(&geom::normalized(xi)))
}

/// Options of the section-Laplacian route.
#[derive(Debug, Clone, Copy)]
pub struct SectionFtOptions {
    /// Base step of the finite-difference ladder; None picks 0.12 times the
    /// body's radial value at xi.
    pub h0: Option<f64>,
    pub levels: usize,
    pub slice_rule_size: usize,
    pub seed: u64,
}

impl Default for SectionFtOptions {
    fn default() -> Self {
        SectionFtOptions {
            h0: None,
            levels: 5,
            slice_rule_size: 2048,
            seed: 0,
        }
    }
}

/// Samples the parallel section function A_{K, H_xi}(u) of a star body:
/// the Euclidean (2n-2)-volume of the slice through u_1 e_1 + u_2 e_2,
/// where {e_1, e_2} = {xi, i xi} spans the complex line of xi.
pub struct SectionSampler<'a> {
    spec: &'a BodySpec,
    e1: Vec<f64>,
    e2: Vec<f64>,
    rule: QuadratureRule,
    vol_exp: i32,
}

impl<'a> SectionSampler<'a> {
    pub fn new(spec: &'a BodySpec, xi: &[f64], rule_size: usize, seed: u64) -> Result<Self> {
        let n = spec.complex_dim();
        if n < 2 {
            return Err(Error::InputDomain("sections need n >= 2".into()));
        }
        let e1 = geom::normalized(xi);
        let mut e2 = vec![0.0; 2 * n];
        for j in 0..n {
            e2[2 * j] = -e1[2 * j + 1];
            e2[2 * j + 1] = e1[2 * j];
        }
        let line = ComplexSubspaceFrame::from_columns(n, vec![geom::to_complex(&e1)])?;
        let hyperplane = line.orthogonal_complement();
        let rule = subspace_sphere_rule(&hyperplane, rule_size, RuleMethod::QuasiMonteCarlo, seed)?;
        Ok(SectionSampler {
            spec,
            e1,
            e2,
            rule,
            vol_exp: (2 * n - 2) as i32,
        })
    }

    /// A(u): slice volume at offset u = (u1, u2) in the complex line of xi.
    /// Returns 0 for an empty slice. The slice is integrated radially from
    /// its anchor point, which assumes the slice is star-shaped about it.
    pub fn a(&self, u1: f64, u2: f64) -> Result<f64> {
        let anchor: Vec<f64> = self
            .e1
            .iter()
            .zip(&self.e2)
            .map(|(a, b)| u1 * a + u2 * b)
            .collect();
        if self.spec.minkowski(&anchor)? >= 1.0 {
            return Ok(0.0);
        }
        let exp = self.vol_exp;
        let denom = exp as f64;
        let v = self.rule.try_integrate(|dir| {
            let r = boundary_radius(self.spec, &anchor, dir)?;
            Ok(r.powi(exp) / denom)
        })?;
        Ok(v)
    }
}

/// Distance from an interior anchor to the body boundary along a direction.
fn boundary_radius(spec: &BodySpec, anchor: &[f64], dir: &[f64]) -> Result<f64> {
    let probe = |r: f64| -> Result<f64> {
        let x: Vec<f64> = anchor.iter().zip(dir).map(|(a, d)| a + r * d).collect();
        spec.minkowski(&x)
    };
    let anchor_norm = geom::norm(anchor);
    let mut hi = spec.radial_unchecked(dir)? + 2.0 * anchor_norm + 0.05;
    let mut grow = 0;
    while probe(hi)? < 1.0 {
        hi *= 1.5;
        grow += 1;
        if grow > 60 {
            return Err(Error::NumericalInstability(
                "boundary ray failed to exit the body".into(),
            ));
        }
    }
    let mut lo = 0.0;
    for _ in 0..55 {
        let mid = 0.5 * (lo + hi);
        if probe(mid)? < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Parallel section function A_{K, H_xi}(u) as a standalone operation.
pub fn parallel_section_function(
    spec: &BodySpec,
    xi: &[f64],
    u: (f64, f64),
    rule_size: usize,
    seed: u64,
) -> Result<f64> {
    SectionSampler::new(spec, xi, rule_size, seed)?.a(u.0, u.1)
}

/// Section-Laplacian transform of ||x||_K^{-p}: requires p = 2n - 2m - 2
/// for an integer 0 <= m < n - 1.
pub fn section_laplacian_ft(
    spec: &BodySpec,
    p: f64,
    xi: &[f64],
    opts: &SectionFtOptions,
) -> Result<FTResult> {
    let n = spec.complex_dim();
    let m_real = (2.0 * n as f64 - 2.0 - p) / 2.0;
    let m = m_real.round();
    if (m_real - m).abs() > 1e-9 || m < 0.0 || m as usize >= n - 1 {
        return Err(Error::MethodMismatch(format!(
            "section route needs p = 2n-2m-2 with integer 0 <= m < n-1; p={p}, n={n}"
        )));
    }
    let m = m as usize;
    let xi = geom::normalized(xi);
    let prefactor = 2.0 * std::f64::consts::PI * (2.0 * n as f64 - 2.0 * m as f64 - 2.0);
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let mut values = Vec::new();
    let mut fd_err: f64 = 0.0;
    for seed in [opts.seed, opts.seed ^ 0x9e37_79b9] {
        let sampler = SectionSampler::new(spec, &xi, opts.slice_rule_size, seed)?;
        if m == 0 {
            values.push(sampler.a(0.0, 0.0)?);
        } else {
            let h0 = match opts.h0 {
                Some(h) => h,
                None => 0.12 * spec.radial_unchecked(&xi)?,
            };
            let est = fd_laplacian(|x, y| sampler.a(x, y), m, h0, opts.levels)?;
            values.push(est.value);
            fd_err = fd_err.max(est.error_estimate);
        }
    }
    let mean = 0.5 * (values[0] + values[1]);
    let spread = 0.5 * (values[0] - values[1]).abs();
    Ok(FTResult {
        xi,
        value: sign * prefactor * mean,
        error_estimate: prefactor * (fd_err + spread),
        method: FtMethodTag::SectionLaplacian,
    })
}

/// Method selector for transforms of body profiles rho^p.
pub enum BodyFtMethod {
    Multiplier(MultiplierOptions),
    SectionLaplacian(SectionFtOptions),
}

/// Transform of ||x||_K^{-p} (profile rho_K^p) at a unit direction.
pub fn body_ft(spec: &BodySpec, p: f64, xi: &[f64], method: &BodyFtMethod) -> Result<FTResult> {
    match method {
        BodyFtMethod::Multiplier(opts) => {
            let profile = spec.radial_power_profile(p);
            let hp = HomogeneousProfile::new(&profile, p)?;
            multiplier_ft(&hp, xi, opts)
        }
        BodyFtMethod::SectionLaplacian(opts) => section_laplacian_ft(spec, p, xi, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::FnProfile;
    use crate::special::factorial;
    use std::f64::consts::PI;

    fn constant_profile(dim: usize, torus: bool, rtheta: bool) -> FnProfile<impl Fn(&[f64]) -> f64 + Sync> {
        FnProfile {
            dim,
            torus,
            rtheta,
            f: |_: &[f64]| 1.0,
        }
    }

    #[test]
    fn constant_profile_reproduces_ft_constant_exactly() {
        // multiplier validation: f = 1 gives c(N, p) to 1e-10 relative
        let opts = MultiplierOptions::defaults(6);
        for p in [1.0, 2.0, 3.0, 4.0, 5.0] {
            let f = constant_profile(6, true, true);
            let hp = HomogeneousProfile::new(&f, p).unwrap();
            let xi = crate::geom::normalized(&[0.4, 0.1, -0.3, 0.2, 0.5, 0.6]);
            let res = multiplier_ft(&hp, &xi, &opts).unwrap();
            let c = homog_ft_constant(6, p).unwrap();
            assert!(
                ((res.value - c) / c).abs() < 1e-10,
                "p={p}: {} vs {c}",
                res.value
            );
        }
    }

    #[test]
    fn degree_two_component_gets_its_multiplier() {
        // f(u) = |z_1|^2 on S^{2n-1} splits as 1/n plus the harmonic
        // |z_1|^2 - |x|^2/n of degree 2, so the transform at xi is
        // lambda_0/n + lambda_2 (|xi_1|^2 - 1/n).
        let n = 3usize;
        let p = 2.0;
        let f = FnProfile {
            dim: 2 * n,
            torus: true,
            rtheta: true,
            f: |u: &[f64]| u[0] * u[0] + u[1] * u[1],
        };
        let hp = HomogeneousProfile::new(&f, p).unwrap();
        let opts = MultiplierOptions::defaults(6);
        let l0 = super::super::gegenbauer::multiplier(6, p, 0).unwrap();
        let l2 = super::super::gegenbauer::multiplier(6, p, 2).unwrap();
        for (xi, m1sq) in [
            (crate::geom::coordinate_axis(n, 0), 1.0),
            (crate::geom::coordinate_axis(n, 2), 0.0),
            (crate::geom::normalized(&[1.0, 0.0, 1.0, 0.0, 0.0, 0.0]), 0.5),
        ] {
            let expected = l0 / n as f64 + l2 * (m1sq - 1.0 / n as f64);
            let res = multiplier_ft(&hp, &xi, &opts).unwrap();
            // absolute tolerance scaled by the degree-zero term: the third
            // case cancels to zero exactly
            assert!(
                (res.value - expected).abs() < 1e-9 * l0.abs(),
                "xi with |z1|^2={m1sq}: {} vs {expected}",
                res.value
            );
        }
    }

    #[test]
    fn reduced_rtheta_path_agrees_with_torus_path() {
        // force the same torus-invariant profile through the slower
        // reduced-path machinery and compare
        let n = 3usize;
        let p = 2.5;
        let spec = BodySpec::LqBall { n, q: 4.0 };
        let torus_prof = spec.radial_power_profile(p);
        let hp = HomogeneousProfile::new(&torus_prof, p).unwrap();
        let opts = MultiplierOptions::defaults(6).with_max_deg(12);
        let xi = crate::geom::normalized(&[0.2, 0.0, 0.7, 0.1, 0.3, -0.4]);
        let torus_val = multiplier_ft(&hp, &xi, &opts).unwrap().value;

        let forced = FnProfile {
            dim: 2 * n,
            torus: false,
            rtheta: true,
            f: |u: &[f64]| {
                BodySpec::LqBall { n: 3, q: 4.0 }
                    .radial_unchecked(u)
                    .unwrap()
                    .powf(2.5)
            },
        };
        let hp2 = HomogeneousProfile::new(&forced, p).unwrap();
        let mut opts2 = opts;
        opts2.moduli_level = 24;
        let red_val = multiplier_ft(&hp2, &xi, &opts2).unwrap().value;
        assert!(
            ((torus_val - red_val) / torus_val).abs() < 1e-8,
            "torus {torus_val} vs reduced {red_val}"
        );
    }

    #[test]
    fn general_even_path_agrees_with_torus_path() {
        let n = 3usize;
        let p = 2.0;
        let spec = BodySpec::LqBall { n, q: 4.0 };
        let torus_prof = spec.radial_power_profile(p);
        let hp = HomogeneousProfile::new(&torus_prof, p).unwrap();
        let opts = MultiplierOptions::defaults(6).with_max_deg(8);
        let xi = crate::geom::coordinate_axis(n, 0);
        let exact = multiplier_ft(&hp, &xi, &opts).unwrap().value;

        let forced = FnProfile {
            dim: 2 * n,
            torus: false,
            rtheta: false,
            f: |u: &[f64]| {
                BodySpec::LqBall { n: 3, q: 4.0 }
                    .radial_unchecked(u)
                    .unwrap()
                    .powi(2)
            },
        };
        let hp2 = HomogeneousProfile::new(&forced, p).unwrap();
        let res = multiplier_ft(&hp2, &xi, &opts).unwrap();
        assert!(
            (res.value - exact).abs() <= (4.0 * res.error_estimate).max(0.02 * exact.abs()),
            "general {} +- {} vs torus {exact}",
            res.value,
            res.error_estimate
        );
    }

    #[test]
    fn ball_slice_function_matches_closed_form() {
        // A(u) = pi^{n-1}/(n-1)! (R^2 - |u|^2)^{n-1}
        let n = 3usize;
        let r0 = 0.7;
        let spec = BodySpec::EuclideanBall { n, radius: r0 };
        let xi = crate::geom::coordinate_axis(n, 1);
        let sampler = SectionSampler::new(&spec, &xi, 2048, 5).unwrap();
        for (u1, u2) in [(0.0, 0.0), (0.2, 0.1), (0.0, 0.4)] {
            let a = sampler.a(u1, u2).unwrap();
            let exact =
                PI.powi(2) / factorial(2) * (r0 * r0 - u1 * u1 - u2 * u2).powi(2);
            assert!(
                ((a - exact) / exact).abs() < 1e-6,
                "A({u1},{u2}) = {a} vs {exact}"
            );
        }
        // empty slice
        let a_empty = sampler.a(0.8, 0.0).unwrap();
        assert_eq!(a_empty, 0.0);
    }

    #[test]
    fn section_route_on_ball_reproduces_anchor_constant() {
        // degree -(2n-4) on the ball of radius R: 16 pi^n R^{2n-4} / (n-3)!
        let n = 3usize;
        let r0 = 0.6;
        let spec = BodySpec::EuclideanBall { n, radius: r0 };
        let xi = crate::geom::coordinate_axis(n, 2);
        let res = section_laplacian_ft(&spec, 2.0, &xi, &SectionFtOptions::default()).unwrap();
        let exact = 16.0 * PI.powi(3) * r0 * r0;
        assert!(
            ((res.value - exact) / exact).abs() < 5e-3,
            "{} vs {exact}",
            res.value
        );
        // and the multiplier route is exact for the constant profile
        let profile = spec.radial_power_profile(2.0);
        let hp = HomogeneousProfile::new(&profile, 2.0).unwrap();
        let mul = multiplier_ft(&hp, &xi, &MultiplierOptions::defaults(6)).unwrap();
        assert!(((mul.value - exact) / exact).abs() < 1e-10);
    }

    #[test]
    fn section_route_on_complex_ellipsoid() {
        // closed form: 16 pi^n / (n-3)! * prod_{j<n} a_j^2 / a_n^2
        let axes = vec![0.8, 0.5, 0.3];
        let spec = BodySpec::ComplexEllipsoid { axes: axes.clone() };
        let xi = crate::geom::coordinate_axis(3, 2);
        let res = section_laplacian_ft(&spec, 2.0, &xi, &SectionFtOptions::default()).unwrap();
        let exact = 16.0 * PI.powi(3) * (axes[0] * axes[0] * axes[1] * axes[1]) / (axes[2] * axes[2]);
        assert!(
            ((res.value - exact) / exact).abs() < 5e-3,
            "{} vs {exact}, err {}",
            res.value,
            res.error_estimate
        );
        // multiplier route agrees within combined tolerances
        let profile = spec.radial_power_profile(2.0);
        let hp = HomogeneousProfile::new(&profile, 2.0).unwrap();
        let opts = MultiplierOptions::defaults(6).with_max_deg(32);
        let mul = multiplier_ft(&hp, &xi, &opts).unwrap();
        assert!(
            ((mul.value - exact) / exact).abs() < 1e-2,
            "multiplier {} vs {exact} (err est {})",
            mul.value,
            mul.error_estimate
        );
    }

    #[test]
    fn section_route_rejects_bad_degree() {
        let spec = BodySpec::EuclideanBall { n: 3, radius: 0.5 };
        let xi = crate::geom::coordinate_axis(3, 0);
        let err = section_laplacian_ft(&spec, 1.5, &xi, &SectionFtOptions::default()).unwrap_err();
        assert!(matches!(err, Error::MethodMismatch(_)));
    }

    #[test]
    fn two_ellipse_slice_values_and_laplacian() {
        // for the inverse-tent image of the two-ellipse body the central
        // slice volume and its Laplacian have closed forms:
        //   A(u) = pi^{n-1}/(n-1)! (k0 (1 + beta |u|^2))^{n-1},
        //   Delta A(0) = 4 pi^{n-1}/(n-2)! k0^{n-1} beta,
        // with k0 = s^2/(1-s^2) and beta = (b^2-1)/b^2.
        let (s, b): (f64, f64) = (0.3, 1.1);
        let spec = BodySpec::Cotent {
            base: Box::new(BodySpec::two_ellipse(3, s, b)),
        };
        let k0 = s * s / (1.0 - s * s);
        let beta = (b * b - 1.0) / (b * b);
        let xi = crate::geom::coordinate_axis(3, 2);
        let sampler = SectionSampler::new(&spec, &xi, 2048, 3).unwrap();
        let a0 = sampler.a(0.0, 0.0).unwrap();
        let exact0 = PI * PI / 2.0 * k0 * k0;
        assert!(((a0 - exact0) / exact0).abs() < 1e-4, "{a0} vs {exact0}");
        assert!((exact0 - 0.048270).abs() < 1e-6);
        // off-center slice against the same closed form
        let a1 = sampler.a(0.08, 0.03).unwrap();
        let r2 = 0.08f64 * 0.08 + 0.03 * 0.03;
        let exact1 = PI * PI / 2.0 * (k0 * (1.0 + beta * r2)).powi(2);
        assert!(((a1 - exact1) / exact1).abs() < 1e-4);

        // finite-difference Laplacian vs the displayed closed form
        let lap = crate::quadrature::fd_laplacian(|x, y| sampler.a(x, y), 1, 0.05, 5).unwrap();
        let exact_lap = 4.0 * PI * PI * k0 * k0 * beta;
        assert!(
            ((lap.value - exact_lap) / exact_lap).abs() < 0.01,
            "laplacian {} vs {exact_lap}",
            lap.value
        );
    }

    #[test]
    fn slice_volume_against_monte_carlo_indicator() {
        // random central slice of the complex l4 ball in C^3 against an
        // indicator Monte Carlo in the slice plane
        use rand::prelude::*;
        let spec = BodySpec::LqBall { n: 3, q: 4.0 };
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        let xi = crate::bodies::random_unit(&mut rng, 6);
        let sampler = SectionSampler::new(&spec, &xi, 4096, 9).unwrap();
        let a0 = sampler.a(0.0, 0.0).unwrap();

        // Monte Carlo: uniform points in a 4-dim ball of the slice plane
        let line = ComplexSubspaceFrame::from_columns(3, vec![crate::geom::to_complex(&xi)])
            .unwrap();
        let hyper = line.orthogonal_complement();
        let r_max = 1.4; // rho of the l4 ball is at most 3^{1/4}
        let samples = 300_000usize;
        let mut hits = 0usize;
        for _ in 0..samples {
            let dir = crate::bodies::random_unit(&mut rng, 4);
            let r = r_max * rng.random::<f64>().powf(0.25);
            let z: Vec<num_complex::Complex64> = (0..2)
                .map(|j| num_complex::Complex64::new(dir[2 * j] * r, dir[2 * j + 1] * r))
                .collect();
            let x = hyper.embed(&z);
            if spec.minkowski(&x).unwrap() <= 1.0 {
                hits += 1;
            }
        }
        let ball4 = crate::special::ball_volume(4) * r_max.powi(4);
        let frac = hits as f64 / samples as f64;
        let mc = ball4 * frac;
        let se = ball4 * (frac * (1.0 - frac) / samples as f64).sqrt();
        assert!(
            (a0 - mc).abs() <= 3.0 * se,
            "slice {a0} vs mc {mc} +- {se}"
        );
    }

    #[test]
    fn transform_inherits_rotation_invariance() {
        // sampled: the transform of a rotation-invariant profile is itself
        // invariant under the diagonal rotation of xi
        let spec = BodySpec::two_ellipse(3, 0.3, 1.1);
        let profile = spec.radial_power_profile(2.0);
        let hp = HomogeneousProfile::new(&profile, 2.0).unwrap();
        let engine = MultiplierEngine::build(hp.f, hp.p, &MultiplierOptions::defaults(6).with_max_deg(12)).unwrap();
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..5 {
            let xi = crate::bodies::random_unit(&mut rng, 6);
            let base = engine.ft(&xi).value;
            for theta in [0.4, 1.9] {
                let rot = crate::geom::rotate_all(&xi, theta);
                let v = engine.ft(&rot).value;
                assert!(
                    (v - base).abs() <= 1e-9 * base.abs().max(1.0),
                    "rotation variance {v} vs {base}"
                );
            }
            // evenness
            let neg: Vec<f64> = xi.iter().map(|x| -x).collect();
            let v = engine.ft(&neg).value;
            assert!((v - base).abs() <= 1e-9 * base.abs().max(1.0));
        }
    }
}
