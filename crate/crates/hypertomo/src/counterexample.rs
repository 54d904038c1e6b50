//! End-to-end pipelines constructing and certifying body pairs whose
//! complex-subspace section volumes and total hyperbolic volumes order in
//! opposite directions.
//!
//! The pipeline: pick a seed body M whose degree -2l extension is certified
//! non-positive-definite; pull it into the ball through the radial map
//! rho -> sqrt(rho^2/(1+rho^2)) to get L; build the dual profile g; and
//! define K by shifting the weighted radial integral of L by epsilon g.
//! The defining equation makes the section integrand difference identically
//! epsilon g, so all complex (n-l)-dimensional sections of K are no larger
//! than those of L, while the positivity of int f g drives the total volume
//! the other way.

use std::sync::Arc;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::bodies::{random_unit, BodySpec, ZonalProfile};
use crate::error::{Error, Result};
use crate::harmonic::gfunc::{
    construct_g_with_scan, reduced_section_integral, BumpParams, GCertificate, ProfileSource,
};
use crate::harmonic::pdscan::{pd_scan, PdScanOptions, PdScanReport, ScanOutcome};
use crate::hyperbolic::{h_convex_test, hvol, hvol_gap, hyper_moment};
use crate::quadrature::rules::{sphere_rule, subspace_sphere_rule, torus_reduced_rule, RuleMethod};
use crate::quadrature::sample_complex_subspace;
use crate::report::{Verdict, VerificationReport};
use crate::special::pairwise_sum;

/// Seed families with certified non-positive-definite extensions.
#[derive(Debug, Clone, Copy)]
pub enum SeedKind {
    /// Complex q-ball (q > 2) dilated by alpha/2; valid for 1 <= l <= n-3.
    Lq { q: f64, alpha: f64 },
    /// Inverse-tent image of the two-ellipse body; valid for l = n-2.
    TwoEllipse { s: f64, b: f64 },
}

#[derive(Debug, Clone)]
pub struct SeedReport {
    pub m_spec: BodySpec,
    pub scan: PdScanReport,
}

/// Build the seed body M and certify the negativity of its transform at
/// degree -2l.
pub fn seed_nonpd_body(
    n: usize,
    l: usize,
    kind: SeedKind,
    scan_opts: &PdScanOptions,
) -> Result<SeedReport> {
    let m_spec = match kind {
        SeedKind::Lq { q, alpha } => {
            if !(q > 2.0) {
                return Err(Error::InputDomain(format!(
                    "lq seed requires q > 2, got {q}"
                )));
            }
            if !(1 <= l && l + 3 <= n) {
                return Err(Error::InputDomain(format!(
                    "lq seed requires 1 <= l <= n-3, got l={l}, n={n}"
                )));
            }
            BodySpec::Dilate {
                alpha: alpha / 2.0,
                base: Box::new(BodySpec::LqBall { n, q }),
            }
        }
        SeedKind::TwoEllipse { s, b } => {
            if l + 2 != n {
                return Err(Error::InputDomain(format!(
                    "two-ellipse seed requires l = n-2, got l={l}, n={n}"
                )));
            }
            BodySpec::Cotent {
                base: Box::new(BodySpec::two_ellipse(n, s, b)),
            }
        }
    };
    m_spec.validate()?;
    let scan = pd_scan(&m_spec, l, scan_opts)?;
    if scan.outcome != ScanOutcome::NegativeCertified {
        return Err(Error::SeedRejected(format!(
            "scan did not certify negativity: min {:.4e} +- {:.4e} ({:?}); try a larger rule or different seed parameters",
            scan.min_value, scan.error_estimate, scan.outcome
        )));
    }
    Ok(SeedReport { m_spec, scan })
}

/// A constructed pair with its provenance.
#[derive(Debug, Clone)]
pub struct CounterexamplePair {
    pub n: usize,
    pub l: usize,
    pub m_spec: BodySpec,
    pub l_spec: BodySpec,
    pub k_spec: BodySpec,
    pub g: Arc<ZonalProfile>,
    pub g_certificate: GCertificate,
    pub epsilon: f64,
    pub epsilon_rung: usize,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct BuildOptions {
    pub scan: PdScanOptions,
    pub bump: BumpParams,
    pub epsilon_rungs: usize,
    pub hconvex_pairs: usize,
    pub hconvex_arc_samples: usize,
    pub seed: u64,
}

impl BuildOptions {
    pub fn defaults(ambient_dim: usize) -> Self {
        BuildOptions {
            scan: PdScanOptions::defaults(ambient_dim),
            bump: BumpParams::default(),
            epsilon_rungs: 12,
            hconvex_pairs: 600,
            hconvex_arc_samples: 10,
            seed: 7,
        }
    }
}

fn rung_seed(base: u64, rung: usize) -> u64 {
    base ^ 0x517c_c1b7_2722_0a95u64.wrapping_mul(rung as u64 + 1)
}

/// Construct L = Tent(M), the dual profile g, and the largest perturbation
/// epsilon in a halving ladder for which K stays geodesically convex.
pub fn build_pair(
    seed: &SeedReport,
    n: usize,
    l: usize,
    opts: &BuildOptions,
) -> Result<CounterexamplePair> {
    let m_spec = &seed.m_spec;
    let l_spec = BodySpec::Tent {
        base: Box::new(m_spec.clone()),
    };
    let (g, g_certificate) = construct_g_with_scan(
        &ProfileSource::Body(m_spec),
        n,
        l,
        &opts.bump,
        &opts.scan,
        Some(&seed.scan),
    )?;
    let g = Arc::new(g);

    // ladder start: keep the perturbed radial equation positive everywhere
    // (t_L^{n-l} + 2 (n-l) eps g > 0 when 2(n-l) eps0 max|g| = 0.1 min t^{n-l})
    let power = (n - l) as f64;
    let grid = if l_spec.torus_invariant() {
        torus_reduced_rule(n, 24)
    } else {
        sphere_rule(2 * n, 4096, RuleMethod::QuasiMonteCarlo, opts.seed)
    };
    let mut t_min = f64::INFINITY;
    for i in 0..grid.len() {
        let rho = l_spec.radial_unchecked(grid.node(i))?;
        let t = rho * rho / (1.0 - rho * rho);
        t_min = t_min.min(t.powf(power));
    }
    let eps0 = 0.1 * t_min / (2.0 * power * g.max_abs());

    // L must itself pass the geodesic-convexity test
    let l_report =
        h_convex_test(&l_spec, n, opts.hconvex_pairs, opts.hconvex_arc_samples, opts.seed)?;
    if !l_report.passed() {
        return Err(Error::ConstructionFailed(format!(
            "tent body failed geodesic convexity: margin {:.3e}",
            l_report.worst_margin
        )));
    }

    let mut last_err = String::new();
    for rung in 0..opts.epsilon_rungs {
        let epsilon = eps0 / 2.0f64.powi(rung as i32);
        let k_spec = BodySpec::Perturbed {
            base: Box::new(l_spec.clone()),
            g: g.clone(),
            epsilon,
            codim: l,
        };
        match h_convex_test(
            &k_spec,
            n,
            opts.hconvex_pairs,
            opts.hconvex_arc_samples,
            rung_seed(opts.seed, rung),
        ) {
            Ok(report) if report.passed() => {
                return Ok(CounterexamplePair {
                    n,
                    l,
                    m_spec: m_spec.clone(),
                    l_spec,
                    k_spec,
                    g,
                    g_certificate,
                    epsilon,
                    epsilon_rung: rung,
                    seed: opts.seed,
                });
            }
            Ok(report) => {
                last_err = format!("rung {rung}: margin {:.3e}", report.worst_margin);
            }
            Err(e) => {
                last_err = format!("rung {rung}: {e}");
            }
        }
    }
    Err(Error::ConstructionFailed(format!(
        "no epsilon rung passed geodesic convexity (eps0 = {eps0:.3e}; last: {last_err})"
    )))
}

/// Verdict and margins of the full certification run.
#[derive(Debug, Clone)]
pub struct CertificateReport {
    pub verdict: Verdict,
    pub n: usize,
    pub l: usize,
    pub epsilon: f64,
    pub num_subspaces: usize,
    /// max over sampled H of the certified (reduced-form) section margin
    /// eps * 8^d * int_{S cap H} g.
    pub worst_section_margin: f64,
    /// max over sampled H of the direct shared-node quadrature margin.
    pub worst_section_margin_direct: f64,
    /// largest direct-margin deviation from the certified value, in units
    /// of three standard errors of the direct estimate.
    pub direct_consistency: f64,
    pub section_tolerance: f64,
    pub section_scale: f64,
    pub hvol_k: f64,
    pub hvol_l: f64,
    pub volume_gap: f64,
    pub volume_gap_err: f64,
    pub hconvex_k: VerificationReport,
    pub hconvex_l: VerificationReport,
    /// max deviation of mu_{n-l}(rho_K) - mu_{n-l}(rho_L) - eps g over
    /// sampled directions (the defining identity; machine-level).
    pub pointwise_identity_dev: f64,
    pub seed: u64,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub num_subspaces: usize,
    pub section_rule_size: usize,
    pub volume_rule_size: usize,
    pub hconvex_pairs: usize,
    pub hconvex_arc_samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            num_subspaces: 200,
            section_rule_size: 2048,
            volume_rule_size: 1 << 18,
            hconvex_pairs: 600,
            hconvex_arc_samples: 10,
            seed: 11,
        }
    }
}

/// Certify the section and volume inequalities of a constructed pair.
pub fn verify_pair(pair: &CounterexamplePair, opts: &VerifyOptions) -> Result<CertificateReport> {
    let n = pair.n;
    let l = pair.l;
    let d = n - l;
    let eps = pair.epsilon;
    let k_spec = &pair.k_spec;
    let l_spec = &pair.l_spec;
    let mut notes = Vec::new();

    // pointwise reduction identity (construction-exact)
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xabc);
    let mut identity_dev: f64 = 0.0;
    for _ in 0..2000 {
        let u = random_unit(&mut rng, 2 * n);
        let rho_k = k_spec.radial_unchecked(&u)?;
        let rho_l = l_spec.radial_unchecked(&u)?;
        let lhs = hyper_moment(d as f64, rho_k)? - hyper_moment(d as f64, rho_l)?;
        let dev = (lhs - eps * pair.g.eval_unit(&u)).abs();
        identity_dev = identity_dev.max(dev);
    }

    // sections: certified margin from the reduced form; direct shared-node
    // quadrature as consistency
    let scale8 = 8.0f64.powi(d as i32);
    let mut worst_reduced = f64::NEG_INFINITY;
    let mut worst_direct = f64::NEG_INFINITY;
    let mut direct_consistency: f64 = 0.0;
    let mut section_scale: f64 = 0.0;
    for j in 0..opts.num_subspaces {
        let frame = sample_complex_subspace(n, d, opts.seed.wrapping_add(31 + j as u64))?;
        let rule = subspace_sphere_rule(
            &frame,
            opts.section_rule_size,
            RuleMethod::QuasiMonteCarlo,
            opts.seed ^ ((j as u64) << 3),
        )?;
        let mut vals = Vec::with_capacity(rule.len());
        let mut l_vals = Vec::with_capacity(rule.len());
        for i in 0..rule.len() {
            let u = rule.node(i);
            let mk = hyper_moment(d as f64, k_spec.radial_unchecked(u)?)?;
            let ml = hyper_moment(d as f64, l_spec.radial_unchecked(u)?)?;
            vals.push(rule.weight(i) * (mk - ml));
            l_vals.push(rule.weight(i) * ml);
        }
        let direct = scale8 * pairwise_sum(&vals);
        let reps = rule.replicas.max(1);
        let block = vals.len() / reps;
        let rep: Vec<f64> = (0..reps)
            .map(|r| scale8 * pairwise_sum(&vals[r * block..(r + 1) * block]) * reps as f64)
            .collect();
        let mean = rep.iter().sum::<f64>() / reps as f64;
        let se = (rep.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
            / (reps as f64 - 1.0).max(1.0)
            / reps as f64)
            .sqrt();
        // certified margin: the defining identity turns the section gap into
        // eps times the section integral of g, evaluated exactly
        let c = frame.projection_norm(pair.g.axis()).min(1.0);
        let reduced = eps * scale8 * reduced_section_integral(&pair.g, d, c);
        worst_reduced = worst_reduced.max(reduced);
        worst_direct = worst_direct.max(direct);
        // replicate scatter underestimates the residual error of a rule on
        // near-constant integrands; allow an interpolation-scale floor
        let floor = 1e-6 * eps * scale8 * pair.g_certificate.section_scale;
        direct_consistency =
            direct_consistency.max((direct - reduced).abs() / (3.0 * se + floor).max(1e-300));
        // tolerance scale: the section volume of L itself
        let sect_l = scale8 * pairwise_sum(&l_vals);
        section_scale = section_scale.max(sect_l.abs());
    }
    let section_tolerance = 1e-8 * section_scale.max(1e-300);

    // volumes on shared nodes
    let vol_rule = if k_spec.torus_invariant() && l_spec.torus_invariant() {
        torus_reduced_rule(n, 40)
    } else {
        sphere_rule(
            2 * n,
            opts.volume_rule_size,
            RuleMethod::QuasiMonteCarlo,
            opts.seed ^ 0x70,
        )
    };
    let hvol_k = hvol(k_spec, n, &vol_rule)?;
    let hvol_l = hvol(l_spec, n, &vol_rule)?;

    // The raw quadrature difference of the volumes drowns in sampling noise
    // when epsilon is small. Expand the gap exactly in
    // x = 2(n-l) eps g / t^{n-l} (|x| <= 0.1 by the ladder construction):
    //   mu_n(rho_K) - mu_n(rho_L) = t^n/(2n) [(1+x)^beta - 1],
    //   beta = n/(n-l).
    // The linear term integrates to eps * int f g, certified with margin in
    // the g-certificate; quadratic and cubic corrections are cancellation-
    // free quadratures, and the quartic tail is bounded wholesale.
    let (volume_gap, volume_gap_err) = {
        let beta = n as f64 / d as f64;
        let scale_n = 8.0f64.powi(n as i32);
        let c2 = beta * (beta - 1.0) / 2.0;
        let c3 = beta * (beta - 1.0) * (beta - 2.0) / 6.0;
        let c4 = (beta * (beta - 1.0) * (beta - 2.0) * (beta - 3.0) / 24.0).abs();
        let mut t2 = Vec::with_capacity(vol_rule.len());
        let mut t3 = Vec::with_capacity(vol_rule.len());
        let mut t4 = Vec::with_capacity(vol_rule.len());
        for i in 0..vol_rule.len() {
            let u = vol_rule.node(i);
            let rho_l = l_spec.radial_unchecked(u)?;
            let t = rho_l * rho_l / (1.0 - rho_l * rho_l);
            let x = 2.0 * d as f64 * eps * pair.g.eval_unit(u) / t.powi(d as i32);
            if x.abs() > 0.5 {
                return Err(Error::EpsilonTooLarge(format!(
                    "perturbation ratio |x| = {x:.3} too large for the gap expansion"
                )));
            }
            let head = vol_rule.weight(i) * t.powi(n as i32) / (2.0 * n as f64);
            t2.push(head * c2 * x * x);
            t3.push(head * c3 * x * x * x);
            // remainder bound: |binom(beta,4)| |x|^4 (1-|x|)^{beta-4}
            t4.push(head * c4 * x.powi(4) * (1.0 - x.abs()).powf((beta - 4.0).min(0.0)));
        }
        let term1 = scale_n * eps * pair.g_certificate.integral_fg;
        let term1_err = scale_n * eps * pair.g_certificate.integral_fg_err;
        let term2 = scale_n * pairwise_sum(&t2);
        let term3 = scale_n * pairwise_sum(&t3);
        let rem4 = scale_n * pairwise_sum(&t4);
        // correction terms are sign-definite per node: a 1e-3 relative
        // quadrature error on them is conservative
        let corr_err = 1e-3 * (term2.abs() + term3.abs());
        notes.push(format!(
            "gap expansion: linear {term1:.4e} +- {term1_err:.2e}, quadratic {term2:.4e}, cubic {term3:.4e}, quartic bound {rem4:.2e}"
        ));
        (
            term1 + term2 + term3,
            term1_err + corr_err + rem4,
        )
    };
    // raw difference on shared nodes: consistency only
    let (gap_direct, gap_direct_err) = hvol_gap(k_spec, l_spec, n, &vol_rule)?;
    let gap_consistent = (gap_direct - volume_gap).abs() <= 4.0 * gap_direct_err.max(1e-300);
    notes.push(format!(
        "direct gap {gap_direct:.4e} +- {gap_direct_err:.2e} (consistent: {gap_consistent})"
    ));

    // geodesic convexity of both bodies
    let hconvex_k = h_convex_test(
        k_spec,
        n,
        opts.hconvex_pairs,
        opts.hconvex_arc_samples,
        opts.seed ^ 0x1,
    )?;
    let hconvex_l = h_convex_test(
        l_spec,
        n,
        opts.hconvex_pairs,
        opts.hconvex_arc_samples,
        opts.seed ^ 0x2,
    )?;

    notes.push(format!(
        "volume gap relative size {:.3e}",
        volume_gap / hvol_l.abs().max(1e-300)
    ));

    let gates = [
        ("sections", worst_reduced <= section_tolerance),
        ("direct-section consistency", direct_consistency <= 1.0),
        (
            "volume gap",
            volume_gap > 3.0 * volume_gap_err.max(1e-300),
        ),
        ("gap consistency", gap_consistent),
        ("geodesic convexity of K", hconvex_k.passed()),
        ("geodesic convexity of L", hconvex_l.passed()),
        ("pointwise identity", identity_dev <= 1e-10),
    ];
    for (name, ok) in &gates {
        if !ok {
            notes.push(format!("gate failed: {name}"));
        }
    }
    let verdict = if eps == 0.0 {
        Verdict::Degenerate
    } else if gates.iter().all(|(_, ok)| *ok) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };

    Ok(CertificateReport {
        verdict,
        n,
        l,
        epsilon: eps,
        num_subspaces: opts.num_subspaces,
        worst_section_margin: worst_reduced,
        worst_section_margin_direct: worst_direct,
        direct_consistency,
        section_tolerance,
        section_scale,
        hvol_k,
        hvol_l,
        volume_gap,
        volume_gap_err,
        hconvex_k,
        hconvex_l,
        pointwise_identity_dev: identity_dev,
        seed: opts.seed,
        notes,
    })
}

/// Report of the affirmative one-complex-dimensional case: smaller sections
/// by every complex line force a smaller total volume.
#[derive(Debug, Clone)]
pub struct OneDimReport {
    /// Whether rho_K <= rho_L held at every sampled complex line.
    pub hypothesis_holds: bool,
    /// A complex line violating the hypothesis, if one was found.
    pub witness: Option<Vec<f64>>,
    pub lines_checked: usize,
    /// When the hypothesis holds: hvol(K) <= hvol(L) (must come out true).
    pub implication_confirmed: Option<bool>,
}

/// Check the implication: per-line section ordering forces volume ordering.
/// Sections by complex lines are discs, so the per-line hyperbolic area
/// 8 * 2 pi * mu_1(rho) is ordered exactly as the radial functions.
pub fn one_dim_affirmative_check(
    k_spec: &BodySpec,
    l_spec: &BodySpec,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<OneDimReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut witness = None;
    for _ in 0..samples {
        let w = random_unit(&mut rng, 2 * n);
        let rho_k = k_spec.radial_unchecked(&w)?;
        let rho_l = l_spec.radial_unchecked(&w)?;
        if rho_k > rho_l + 1e-14 {
            witness = Some(w);
            break;
        }
    }
    let hypothesis_holds = witness.is_none();
    let implication_confirmed = if hypothesis_holds {
        let rule = if k_spec.torus_invariant() && l_spec.torus_invariant() {
            torus_reduced_rule(n, 24)
        } else {
            sphere_rule(2 * n, 1 << 14, RuleMethod::QuasiMonteCarlo, seed)
        };
        Some(hvol(k_spec, n, &rule)? <= hvol(l_spec, n, &rule)?)
    } else {
        None
    };
    Ok(OneDimReport {
        hypothesis_holds,
        witness,
        lines_checked: samples,
        implication_confirmed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom;
    use crate::harmonic::pdscan::PdScanReport;

    #[test]
    fn seed_kind_validation() {
        let opts = PdScanOptions::defaults(6);
        // lq seed needs 1 <= l <= n-3
        assert!(seed_nonpd_body(3, 1, SeedKind::Lq { q: 4.0, alpha: 0.7 }, &opts).is_err());
        // two-ellipse seed needs l = n-2
        assert!(seed_nonpd_body(3, 2, SeedKind::TwoEllipse { s: 0.3, b: 1.1 }, &opts).is_err());
        // q must exceed 2
        assert!(seed_nonpd_body(4, 1, SeedKind::Lq { q: 1.5, alpha: 0.7 }, &opts).is_err());
    }

    #[test]
    fn ball_derived_seed_scan_is_positive() {
        let opts = PdScanOptions::defaults(6);
        let ball = BodySpec::Cotent {
            base: Box::new(BodySpec::EuclideanBall { n: 3, radius: 0.5 }),
        };
        let scan = pd_scan(&ball, 1, &opts).unwrap();
        assert_eq!(scan.outcome, ScanOutcome::NonNegative);
    }

    fn dummy_cert() -> GCertificate {
        GCertificate {
            scan: PdScanReport {
                outcome: ScanOutcome::NegativeCertified,
                min_value: -1.0,
                argmin: geom::coordinate_axis(3, 2),
                error_estimate: 0.0,
                margin: f64::INFINITY,
                scanned: 0,
                p: 2.0,
                codim: 1,
            },
            cap_exponent: 1,
            region_inradius: 0.0,
            integral_fg: 1.0,
            integral_fg_err: 0.0,
            integral_fg_direct: 1.0,
            integral_fg_direct_err: 0.0,
            worst_subspace_value: 0.0,
            c_scan_max: 0.0,
            section_scale: 1.0,
            section_tolerance: 1e-8,
            plancherel_rel_dev: 0.0,
            sampling_consistency: 0.0,
            pass: true,
            notes: vec![],
        }
    }

    #[test]
    fn degenerate_pair_is_degenerate() {
        // epsilon = 0 gives K = L: all margins vanish, verdict degenerate
        let m = BodySpec::Cotent {
            base: Box::new(BodySpec::EuclideanBall { n: 3, radius: 0.5 }),
        };
        let l_spec = BodySpec::Tent {
            base: Box::new(m.clone()),
        };
        let g = std::sync::Arc::new(ZonalProfile::new(
            geom::coordinate_axis(3, 2),
            (0..=16).map(|i| i as f64 / 16.0).collect(),
            vec![0.0; 17],
        ));
        let pair = CounterexamplePair {
            n: 3,
            l: 1,
            m_spec: m,
            l_spec: l_spec.clone(),
            k_spec: BodySpec::Perturbed {
                base: Box::new(l_spec),
                g: g.clone(),
                epsilon: 0.0,
                codim: 1,
            },
            g,
            g_certificate: dummy_cert(),
            epsilon: 0.0,
            epsilon_rung: 0,
            seed: 0,
        };
        let report = verify_pair(
            &pair,
            &VerifyOptions {
                num_subspaces: 10,
                section_rule_size: 512,
                volume_rule_size: 1 << 12,
                hconvex_pairs: 50,
                hconvex_arc_samples: 6,
                seed: 3,
            },
        )
        .unwrap();
        assert_eq!(report.verdict, Verdict::Degenerate);
        assert!(report.worst_section_margin.abs() < 1e-12);
        assert!(report.volume_gap.abs() < 1e-12);
        assert!(report.pointwise_identity_dev < 1e-14);
    }

    #[test]
    fn two_ellipse_seed_at_codim_two() {
        // n=4, l=2 = n-2: negativity certified at degree -2(n-2), and the
        // transform at the last coordinate axis matches the closed form
        // -16 pi^4/(n-3)! * beta * k0^{n-1}
        let (s, b): (f64, f64) = (0.3, 1.1);
        let opts = PdScanOptions::defaults(8);
        let report = seed_nonpd_body(4, 2, SeedKind::TwoEllipse { s, b }, &opts).unwrap();
        assert_eq!(report.scan.outcome, ScanOutcome::NegativeCertified);
        let k0 = s * s / (1.0 - s * s);
        let beta = (b * b - 1.0) / (b * b);
        let closed = -16.0 * std::f64::consts::PI.powi(4) * beta * k0.powi(3);
        assert!(closed < 0.0 && (closed + 0.2617).abs() < 1e-3);
        let xi = crate::geom::coordinate_axis(4, 3);
        let ft = crate::harmonic::section_laplacian_ft(
            &report.m_spec,
            4.0,
            &xi,
            &crate::harmonic::SectionFtOptions::default(),
        )
        .unwrap();
        // the rounded corner perturbs the closed form at the percent level
        assert!(
            ((ft.value - closed) / closed).abs() < 0.02,
            "{} vs {closed}",
            ft.value
        );
    }

    #[test]
    fn one_dim_check_on_nested_balls() {
        let l = BodySpec::EuclideanBall { n: 3, radius: 0.5 };
        let k = BodySpec::Dilate {
            alpha: 0.9,
            base: Box::new(l.clone()),
        };
        let report = one_dim_affirmative_check(&k, &l, 3, 400, 5).unwrap();
        assert!(report.hypothesis_holds);
        assert_eq!(report.implication_confirmed, Some(true));
        // equal bodies: equality throughout
        let report = one_dim_affirmative_check(&l, &l, 3, 100, 5).unwrap();
        assert!(report.hypothesis_holds);
        assert_eq!(report.implication_confirmed, Some(true));
    }

    #[test]
    fn monotonicity_chain_inequality() {
        // t_a^l (t_b^{n-l} - t_a^{n-l})/(2(n-l)) <= (t_b^n - t_a^n)/(2n)
        // for both orderings of a, b in (0,1)
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..10_000 {
            let a: f64 = 0.01 + 0.98 * rng.random::<f64>();
            let b: f64 = 0.01 + 0.98 * rng.random::<f64>();
            let n = 3 + (rng.random::<u32>() % 6) as i32;
            let l = 1 + (rng.random::<u32>() % (n as u32 - 1)) as i32;
            let ta = a * a / (1.0 - a * a);
            let tb = b * b / (1.0 - b * b);
            let lhs = ta.powi(l) * (tb.powi(n - l) - ta.powi(n - l)) / (2.0 * (n - l) as f64);
            let rhs = (tb.powi(n) - ta.powi(n)) / (2.0 * n as f64);
            let tol = 1e-12 * lhs.abs().max(rhs.abs()).max(1.0);
            assert!(lhs <= rhs + tol, "a={a} b={b} n={n} l={l}: {lhs} > {rhs}");
        }
    }
}
