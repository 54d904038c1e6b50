//! Command-line front end: volumes, sections, geodesics, convexity tests,
//! transforms, scans, Parseval residuals, the g constructor, the full
//! counterexample pipeline and the ellipsoid section algebra.
//!
//! Exit status: 0 = pass/complete, 2 = FAIL verdict, 3 = INDETERMINATE,
//! 1 = error.

mod report;
mod spec_format;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hypertomo::bodies::BodySpec;
use hypertomo::counterexample::{
    build_pair, one_dim_affirmative_check, seed_nonpd_body, verify_pair, BuildOptions, SeedKind,
    VerifyOptions,
};
use hypertomo::ellipsoid::{circular_plane, section_slice, similarity_ratio, Quadric, SectionResult};
use hypertomo::geom;
use hypertomo::harmonic::gfunc::{construct_g, BumpParams, ProfileSource};
use hypertomo::harmonic::pdscan::{pd_scan, PdScanOptions, ScanOutcome, ScanRoute};
use hypertomo::harmonic::{
    hplane_ft_invariance, multiplier_ft, parseval_residual, section_laplacian_ft,
    HomogeneousProfile, MultiplierOptions, SectionFtOptions,
};
use hypertomo::harmonic::parseval::ParsevalOptions;
use hypertomo::hyperbolic::{bergman_geodesic, h_convex_test, hvol, section_hvol};
use hypertomo::quadrature::{
    sample_complex_subspace, sphere_rule, subspace_sphere_rule, torus_reduced_rule, RuleMethod,
};
use hypertomo::Verdict;

#[derive(Parser)]
#[command(name = "hypertomo", version, about = "geometric tomography in the complex hyperbolic ball")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Mc,
    Qmc,
    Torus,
}

impl Method {
    fn rule(self) -> RuleMethod {
        match self {
            Method::Mc => RuleMethod::MonteCarlo,
            Method::Qmc => RuleMethod::QuasiMonteCarlo,
            Method::Torus => RuleMethod::TorusProduct,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FtMethodArg {
    Multiplier,
    Section,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Auto,
    Multiplier,
    Section,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeedKindArg {
    TwoEllipse,
    Lq,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct CommonOut {
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Hyperbolic volume of a body.
    Volume {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "24")]
        rule_size: usize,
        #[arg(long, value_enum, default_value = "torus")]
        method: Method,
        #[arg(long, default_value = "0")]
        seed: u64,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Hyperbolic section volumes over sampled complex subspaces.
    Section {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        n: usize,
        /// Section codimension l (subspaces have complex dimension n - l).
        #[arg(long)]
        l: usize,
        #[arg(long, default_value = "50")]
        subspaces: usize,
        #[arg(long, default_value = "2048")]
        rule_size: usize,
        #[arg(long, default_value = "0")]
        seed: u64,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Sample points along the geodesic between two interior points.
    Geodesic {
        /// Comma-separated coordinates in R^{2n}.
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value = "33")]
        samples: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Randomized geodesic-convexity test.
    Hconvex {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1000")]
        pairs: usize,
        #[arg(long, default_value = "12")]
        arc_samples: usize,
        #[arg(long, default_value = "0")]
        seed: u64,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Fourier transform of ||x||_K^{-p} at a direction or over a scan grid.
    Ft {
        #[arg(long)]
        body: PathBuf,
        /// Homogeneity degree (negative): the transform of ||x||^{degree}.
        #[arg(long, allow_hyphen_values = true)]
        degree: f64,
        /// Direction: "axis_n", "axis_1", or comma-separated coordinates.
        #[arg(long, default_value = "axis_n")]
        xi: String,
        #[arg(long, value_enum, default_value = "section")]
        method: FtMethodArg,
        #[arg(long)]
        max_deg: Option<usize>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Positive-definiteness scan of rho^{2l}.
    Pdscan {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        l: usize,
        #[arg(long, value_enum, default_value = "auto")]
        route: RouteArg,
        #[arg(long, default_value = "0")]
        seed: u64,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Spherical Parseval residual of a body pair.
    Parseval {
        #[arg(long)]
        body_k: PathBuf,
        #[arg(long)]
        body_l: PathBuf,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Constancy of the transform on the circle of a complex line.
    Hplane {
        #[arg(long)]
        body: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        degree: f64,
        #[arg(long, default_value = "axis_n")]
        xi: String,
        #[arg(long, default_value = "16")]
        circle_points: usize,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Construct the dual profile g with its certificate.
    Prop1 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, value_enum)]
        seed_kind: SeedKindArg,
        #[arg(long, default_value = "4.0")]
        q: f64,
        #[arg(long, default_value = "0.3")]
        s: f64,
        #[arg(long, default_value = "1.1")]
        b: f64,
        #[arg(long, default_value = "0.7")]
        alpha: f64,
        #[arg(long, default_value = "0")]
        seed: u64,
        /// Write the tabulated profile here (CSV).
        #[arg(long)]
        g_out: Option<PathBuf>,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Full pipeline: seed, build the pair, verify the inequalities.
    Counterexample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, value_enum)]
        seed_kind: SeedKindArg,
        #[arg(long, default_value = "4.0")]
        q: f64,
        #[arg(long, default_value = "0.3")]
        s: f64,
        #[arg(long, default_value = "1.1")]
        b: f64,
        #[arg(long, default_value = "0.7")]
        alpha: f64,
        #[arg(long, default_value = "7")]
        seed: u64,
        #[arg(long, default_value = "100")]
        subspaces: usize,
        #[arg(long)]
        g_out: Option<PathBuf>,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Circular sections of an ellipsoid and parallel-slice similarity.
    Ellipsoid {
        /// Comma-separated semi-axes, strictly decreasing.
        #[arg(long)]
        axes: String,
        /// Optional plane normal (defaults to the circular plane).
        #[arg(long)]
        normal: Option<String>,
        #[arg(long, default_value = "0.0")]
        offset: f64,
        #[command(flatten)]
        out: CommonOut,
    },
}

fn parse_vec(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad number `{t}`: {e}")))
        .collect()
}

fn parse_xi(text: &str, n: usize) -> Result<Vec<f64>, String> {
    if let Some(rest) = text.strip_prefix("axis_") {
        let j = if rest == "n" {
            n - 1
        } else {
            rest.parse::<usize>()
                .map_err(|e| format!("bad axis index: {e}"))?
                .checked_sub(1)
                .ok_or("axis indices start at 1")?
        };
        if j >= n {
            return Err(format!("axis index {} exceeds n = {n}", j + 1));
        }
        return Ok(geom::coordinate_axis(n, j));
    }
    let v = parse_vec(text)?;
    if v.len() != 2 * n {
        return Err(format!("direction needs {} coordinates, got {}", 2 * n, v.len()));
    }
    Ok(geom::normalized(&v))
}

fn load_body(path: &Path) -> Result<BodySpec, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let doc: Value =
        serde_json::from_str(&text).map_err(|e| format!("{}: invalid JSON: {e}", path.display()))?;
    spec_format::parse_body_spec(&doc).map_err(|e| format!("{}: {e}", path.display()))
}

fn seed_kind_from(kind: SeedKindArg, q: f64, s: f64, b: f64, alpha: f64) -> SeedKind {
    match kind {
        SeedKindArg::TwoEllipse => SeedKind::TwoEllipse { s, b },
        SeedKindArg::Lq => SeedKind::Lq { q, alpha },
    }
}

fn run() -> Result<u8, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Volume {
            body,
            n,
            rule_size,
            method,
            seed,
            out,
        } => {
            let spec = load_body(&body)?;
            let rule = match method.rule() {
                RuleMethod::TorusProduct => torus_reduced_rule(n, rule_size),
                m => sphere_rule(2 * n, rule_size.max(1024), m, seed),
            };
            if matches!(method, Method::Torus) && !spec.torus_invariant() {
                return Err("torus rule requested for a profile that is not torus-invariant".into());
            }
            let v = hvol(&spec, n, &rule).map_err(|e| e.to_string())?;
            let config = json!({"body": body.display().to_string(), "n": n,
                "rule_size": rule_size, "seed": seed});
            match out.format {
                Format::Json => report::write_json(
                    out.out.as_deref(),
                    &report::envelope("volume", config, seed, json!({"hvol": v})),
                )
                .map_err(|e| e.to_string())?,
                Format::Csv => report::write_csv(out.out.as_deref(), &["hvol"], &[vec![v]])
                    .map_err(|e| e.to_string())?,
            }
            Ok(0)
        }
        Command::Section {
            body,
            n,
            l,
            subspaces,
            rule_size,
            seed,
            out,
        } => {
            let spec = load_body(&body)?;
            let d = n
                .checked_sub(l)
                .filter(|d| *d >= 1)
                .ok_or("need 1 <= l <= n-1")?;
            let mut rows = Vec::new();
            for j in 0..subspaces {
                let frame = sample_complex_subspace(n, d, seed.wrapping_add(j as u64))
                    .map_err(|e| e.to_string())?;
                let rule =
                    subspace_sphere_rule(&frame, rule_size, RuleMethod::QuasiMonteCarlo, seed)
                        .map_err(|e| e.to_string())?;
                let v = section_hvol(&spec, &frame, &rule).map_err(|e| e.to_string())?;
                rows.push(vec![j as f64, v]);
            }
            let config = json!({"body": body.display().to_string(), "n": n, "l": l,
                "subspaces": subspaces, "rule_size": rule_size, "seed": seed});
            match out.format {
                Format::Csv => report::write_csv(out.out.as_deref(), &["subspace", "section_hvol"], &rows)
                    .map_err(|e| e.to_string())?,
                Format::Json => {
                    let vals: Vec<Value> = rows.iter().map(|r| json!({"index": r[0], "section_hvol": r[1]})).collect();
                    report::write_json(
                        out.out.as_deref(),
                        &report::envelope("section", config, seed, json!({"sections": vals})),
                    )
                    .map_err(|e| e.to_string())?;
                }
            }
            Ok(0)
        }
        Command::Geodesic { x, y, samples, svg, out } => {
            let xv = parse_vec(&x)?;
            let yv = parse_vec(&y)?;
            let arc = bergman_geodesic(&xv, &yv).map_err(|e| e.to_string())?;
            let mut rows = Vec::new();
            let mut plot = Vec::new();
            for k in 0..samples {
                let t = k as f64 / (samples as f64 - 1.0).max(1.0);
                let p = arc.sample(t);
                plot.push((p[0], p[1]));
                let mut row = vec![t];
                row.extend(&p);
                rows.push(row);
            }
            if let Some(svg_path) = svg {
                report::write_svg_plot(&svg_path, "geodesic arc (first complex coordinate)", &plot)
                    .map_err(|e| e.to_string())?;
            }
            let header: Vec<String> = std::iter::once("t".to_string())
                .chain((0..xv.len()).map(|i| format!("p{i}")))
                .collect();
            let header_refs: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
            match out.format {
                Format::Csv => report::write_csv(out.out.as_deref(), &header_refs, &rows)
                    .map_err(|e| e.to_string())?,
                Format::Json => {
                    let config = json!({"x": x, "y": y, "samples": samples});
                    let body = json!({
                        "disc_center": arc.disc_center,
                        "disc_radius": arc.disc_radius,
                        "points": rows,
                    });
                    report::write_json(out.out.as_deref(), &report::envelope("geodesic", config, 0, body))
                        .map_err(|e| e.to_string())?;
                }
            }
            Ok(0)
        }
        Command::Hconvex {
            body,
            n,
            pairs,
            arc_samples,
            seed,
            out,
        } => {
            let spec = load_body(&body)?;
            let rep = h_convex_test(&spec, n, pairs, arc_samples, seed).map_err(|e| e.to_string())?;
            let config = json!({"body": body.display().to_string(), "n": n,
                "pairs": pairs, "arc_samples": arc_samples, "seed": seed});
            let result = json!({
                "verdict": rep.verdict.to_string(),
                "worst_margin": rep.worst_margin,
                "tolerance": rep.tolerance,
                "samples": rep.samples,
                "witness": rep.witness,
            });
            report::write_json(
                out.out.as_deref(),
                &report::envelope("hconvex", config, seed, result),
            )
            .map_err(|e| e.to_string())?;
            Ok(if rep.passed() { 0 } else { 2 })
        }
        Command::Ft {
            body,
            degree,
            xi,
            method,
            max_deg,
            svg,
            out,
        } => {
            let spec = load_body(&body)?;
            let n = spec.complex_dim();
            let p = -degree;
            if !(p > 0.0) {
                return Err("degree must be negative (the transform of ||x||^degree)".into());
            }
            let xi_v = parse_xi(&xi, n)?;
            let res = match method {
                FtMethodArg::Section => {
                    section_laplacian_ft(&spec, p, &xi_v, &SectionFtOptions::default())
                        .map_err(|e| e.to_string())?
                }
                FtMethodArg::Multiplier => {
                    let mut opts = MultiplierOptions::defaults(2 * n);
                    if let Some(d) = max_deg {
                        opts = opts.with_max_deg(d);
                    }
                    let prof = spec.radial_power_profile(p);
                    let hp = HomogeneousProfile::new(&prof, p).map_err(|e| e.to_string())?;
                    multiplier_ft(&hp, &xi_v, &opts).map_err(|e| e.to_string())?
                }
            };
            if let Some(svg_path) = svg {
                // scan the transform along c = |<xi, e_n>| for the plot
                let mut pts = Vec::new();
                for i in 0..=32 {
                    let c = i as f64 / 32.0;
                    let mut dir = vec![0.0; 2 * n];
                    dir[0] = (1.0f64 - c * c).max(0.0).sqrt();
                    dir[2 * n - 2] = c;
                    let r = section_laplacian_ft(
                        &spec,
                        p,
                        &geom::normalized(&dir),
                        &SectionFtOptions::default(),
                    );
                    if let Ok(r) = r {
                        pts.push((c, r.value));
                    }
                }
                report::write_svg_plot(&svg_path, "transform along c = |xi_n|", &pts)
                    .map_err(|e| e.to_string())?;
            }
            let config = json!({"body": body.display().to_string(), "degree": degree,
                "xi": xi, "max_deg": max_deg});
            let result = json!({
                "value": res.value,
                "error_estimate": res.error_estimate,
            });
            match out.format {
                Format::Json => report::write_json(
                    out.out.as_deref(),
                    &report::envelope("ft", config, 0, result),
                )
                .map_err(|e| e.to_string())?,
                Format::Csv => report::write_csv(
                    out.out.as_deref(),
                    &["value", "error_estimate"],
                    &[vec![res.value, res.error_estimate]],
                )
                .map_err(|e| e.to_string())?,
            }
            Ok(0)
        }
        Command::Pdscan {
            body,
            l,
            route,
            seed,
            out,
        } => {
            let spec = load_body(&body)?;
            let mut opts = PdScanOptions::defaults(spec.ambient_dim());
            opts.seed = seed;
            opts.route = match route {
                RouteArg::Auto => ScanRoute::Auto,
                RouteArg::Multiplier => ScanRoute::Multiplier,
                RouteArg::Section => ScanRoute::SectionLaplacian,
            };
            let rep = pd_scan(&spec, l, &opts).map_err(|e| e.to_string())?;
            let config = json!({"body": body.display().to_string(), "l": l, "seed": seed});
            let result = json!({
                "outcome": format!("{:?}", rep.outcome),
                "min_value": rep.min_value,
                "error_estimate": rep.error_estimate,
                "argmin": rep.argmin,
                "margin": rep.margin,
                "scanned": rep.scanned,
            });
            report::write_json(
                out.out.as_deref(),
                &report::envelope("pdscan", config, seed, result),
            )
            .map_err(|e| e.to_string())?;
            Ok(match rep.outcome {
                ScanOutcome::Indeterminate => 3,
                _ => 0,
            })
        }
        Command::Parseval { body_k, body_l, p, out } => {
            let k = load_body(&body_k)?;
            let l = load_body(&body_l)?;
            let res = parseval_residual(&k, &l, p, &ParsevalOptions::defaults(k.ambient_dim()))
                .map_err(|e| e.to_string())?;
            let config = json!({"body_k": body_k.display().to_string(),
                "body_l": body_l.display().to_string(), "p": p});
            report::write_json(
                out.out.as_deref(),
                &report::envelope("parseval", config, 0, json!({"relative_residual": res})),
            )
            .map_err(|e| e.to_string())?;
            Ok(0)
        }
        Command::Hplane {
            body,
            degree,
            xi,
            circle_points,
            out,
        } => {
            let spec = load_body(&body)?;
            let n = spec.complex_dim();
            let p = -degree;
            let xi_v = parse_xi(&xi, n)?;
            let ratio = hplane_ft_invariance(
                &spec,
                &xi_v,
                p,
                circle_points,
                &MultiplierOptions::defaults(2 * n),
            )
            .map_err(|e| e.to_string())?;
            let config = json!({"body": body.display().to_string(), "degree": degree,
                "xi": xi, "circle_points": circle_points});
            report::write_json(
                out.out.as_deref(),
                &report::envelope("hplane", config, 0, json!({"variation_ratio": ratio})),
            )
            .map_err(|e| e.to_string())?;
            Ok(0)
        }
        Command::Prop1 {
            n,
            l,
            seed_kind,
            q,
            s,
            b,
            alpha,
            seed,
            g_out,
            out,
        } => {
            let kind = seed_kind_from(seed_kind, q, s, b, alpha);
            let mut scan_opts = PdScanOptions::defaults(2 * n);
            scan_opts.seed = seed;
            let seed_rep = seed_nonpd_body(n, l, kind, &scan_opts).map_err(|e| e.to_string())?;
            let mut bump = BumpParams::default();
            bump.seed = seed;
            let (g, cert) = construct_g(
                &ProfileSource::Body(&seed_rep.m_spec),
                n,
                l,
                &bump,
                &scan_opts,
            )
            .map_err(|e| e.to_string())?;
            if let Some(path) = &g_out {
                spec_format::write_g_profile(path, &g).map_err(|e| e.to_string())?;
            }
            let config = json!({"n": n, "l": l, "q": q, "s": s, "b": b, "alpha": alpha, "seed": seed});
            let result = json!({
                "pass": cert.pass,
                "cap_exponent": cert.cap_exponent,
                "region_inradius": cert.region_inradius,
                "integral_fg": cert.integral_fg,
                "integral_fg_err": cert.integral_fg_err,
                "worst_subspace_value": cert.worst_subspace_value,
                "c_scan_max": cert.c_scan_max,
                "section_tolerance": cert.section_tolerance,
                "plancherel_rel_dev": cert.plancherel_rel_dev,
                "scan_min": cert.scan.min_value,
                "scan_error": cert.scan.error_estimate,
                "notes": cert.notes,
            });
            report::write_json(
                out.out.as_deref(),
                &report::envelope("prop1", config, seed, result),
            )
            .map_err(|e| e.to_string())?;
            Ok(if cert.pass { 0 } else { 2 })
        }
        Command::Counterexample {
            n,
            l,
            seed_kind,
            q,
            s,
            b,
            alpha,
            seed,
            subspaces,
            g_out,
            out,
        } => {
            let kind = seed_kind_from(seed_kind, q, s, b, alpha);
            let mut build_opts = BuildOptions::defaults(2 * n);
            build_opts.seed = seed;
            build_opts.scan.seed = seed;
            build_opts.bump.seed = seed;
            let seed_rep = seed_nonpd_body(n, l, kind, &build_opts.scan).map_err(|e| e.to_string())?;
            let pair = build_pair(&seed_rep, n, l, &build_opts).map_err(|e| e.to_string())?;
            if let Some(path) = &g_out {
                spec_format::write_g_profile(path, &pair.g).map_err(|e| e.to_string())?;
            }
            let verify_opts = VerifyOptions {
                num_subspaces: subspaces,
                seed,
                ..VerifyOptions::default()
            };
            let report_v = verify_pair(&pair, &verify_opts).map_err(|e| e.to_string())?;
            let one_dim = one_dim_affirmative_check(&pair.k_spec, &pair.l_spec, n, 400, seed)
                .map_err(|e| e.to_string())?;
            let config = json!({"n": n, "l": l, "q": q, "s": s, "b": b, "alpha": alpha,
                "seed": seed, "subspaces": subspaces});
            let result = json!({
                "verdict": report_v.verdict.to_string(),
                "epsilon": report_v.epsilon,
                "worst_section_margin": report_v.worst_section_margin,
                "worst_section_margin_direct": report_v.worst_section_margin_direct,
                "section_tolerance": report_v.section_tolerance,
                "hvol_k": report_v.hvol_k,
                "hvol_l": report_v.hvol_l,
                "volume_gap": report_v.volume_gap,
                "volume_gap_err": report_v.volume_gap_err,
                "hconvex_k_margin": report_v.hconvex_k.worst_margin,
                "hconvex_l_margin": report_v.hconvex_l.worst_margin,
                "pointwise_identity_dev": report_v.pointwise_identity_dev,
                "one_dim_hypothesis_holds": one_dim.hypothesis_holds,
                "scan_min": pair.g_certificate.scan.min_value,
                "cap_exponent": pair.g_certificate.cap_exponent,
                "notes": report_v.notes,
            });
            report::write_json(
                out.out.as_deref(),
                &report::envelope("counterexample", config, seed, result),
            )
            .map_err(|e| e.to_string())?;
            Ok(match report_v.verdict {
                Verdict::Pass => 0,
                Verdict::Indeterminate => 3,
                _ => 2,
            })
        }
        Command::Ellipsoid {
            axes,
            normal,
            offset,
            out,
        } => {
            let ax = parse_vec(&axes)?;
            let quad = Quadric::new(ax.clone()).map_err(|e| e.to_string())?;
            let (normal_v, circular): (Vec<f64>, Option<Value>) = match normal {
                Some(text) => (parse_vec(&text)?, None),
                None => {
                    if ax.len() != 3 {
                        return Err("the default circular plane needs exactly three axes".into());
                    }
                    let planes = circular_plane(ax[0], ax[1], ax[2]).map_err(|e| e.to_string())?;
                    let info = json!({
                        "normals": [planes[0].normal, planes[1].normal],
                        "radius": planes[0].radius,
                    });
                    (planes[0].normal.clone(), Some(info))
                }
            };
            let slice = section_slice(&quad, &normal_v, offset).map_err(|e| e.to_string())?;
            let ratio = match &slice {
                SectionResult::Slice(_) => {
                    Some(similarity_ratio(&quad, &normal_v, offset).map_err(|e| e.to_string())?)
                }
                _ => None,
            };
            let slice_json = match slice {
                SectionResult::Empty => json!({"kind": "empty"}),
                SectionResult::Point(p) => json!({"kind": "point", "center": p}),
                SectionResult::Slice(sl) => json!({
                    "kind": if sl.is_circle(1e-10) { "circle" } else { "ellipse" },
                    "center": sl.center,
                    "semi_axes": sl.semi_axes,
                }),
            };
            let config = json!({"axes": axes, "normal": normal_v, "offset": offset});
            let result = json!({
                "circular_planes": circular,
                "slice": slice_json,
                "similarity_ratio": ratio,
            });
            report::write_json(
                out.out.as_deref(),
                &report::envelope("ellipsoid", config, 0, result),
            )
            .map_err(|e| e.to_string())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
