//! Scratch probe: end-to-end g construction for both seeds.

use hypertomo::bodies::BodySpec;
use hypertomo::harmonic::gfunc::{construct_g, BumpParams, ProfileSource};
use hypertomo::harmonic::pdscan::PdScanOptions;

fn main() {
    let run_n3 = std::env::args().any(|a| a == "n3");
    let m3 = BodySpec::Cotent {
        base: Box::new(BodySpec::two_ellipse(3, 0.3, 1.1)),
    };
    let t = std::time::Instant::now();
    if run_n3 {
    match construct_g(
        &ProfileSource::Body(&m3),
        3,
        1,
        &BumpParams::default(),
        &PdScanOptions::defaults(6),
    ) {
        Ok((g, cert)) => {
            println!("n=3 two-ellipse seed ({:?}):", t.elapsed());
            println!("  scan min {:.4} +- {:.2e}", cert.scan.min_value, cert.scan.error_estimate);
            println!("  inradius {:.4}, cap k {}", cert.region_inradius, cert.cap_exponent);
            println!("  fg = {:.6e} +- {:.2e}", cert.integral_fg, cert.integral_fg_err);
            println!(
                "  worst section {:.3e}, c-scan max {:.3e} (tol {:.3e}, scale {:.3e})",
                cert.worst_subspace_value, cert.c_scan_max, cert.section_tolerance, cert.section_scale
            );
            println!("  plancherel rel dev {:.3e}", cert.plancherel_rel_dev);
            println!("  g range: G(0) = {:.4}, G(1) = {:.4}, max|g| = {:.4}", g.eval_reduced(0.0), g.eval_reduced(1.0), g.max_abs());
            println!("  notes: {:?}", cert.notes);
        }
        Err(e) => println!("n=3 FAILED: {e}"),
    }
    }

    let m4 = BodySpec::Dilate {
        alpha: 0.35,
        base: Box::new(BodySpec::LqBall { n: 4, q: 4.0 }),
    };
    let t = std::time::Instant::now();
    match construct_g(
        &ProfileSource::Body(&m4),
        4,
        1,
        &BumpParams {
            num_subspaces: 100,
            ..BumpParams::default()
        },
        &PdScanOptions::defaults(8),
    ) {
        Ok((g, cert)) => {
            println!("n=4 lq seed ({:?}):", t.elapsed());
            println!("  scan min {:.4} +- {:.2e}", cert.scan.min_value, cert.scan.error_estimate);
            println!("  inradius {:.4}, cap k {}", cert.region_inradius, cert.cap_exponent);
            println!("  fg = {:.6e} +- {:.2e}", cert.integral_fg, cert.integral_fg_err);
            println!(
                "  worst section {:.3e}, c-scan max {:.3e} (tol {:.3e}, scale {:.3e})",
                cert.worst_subspace_value, cert.c_scan_max, cert.section_tolerance, cert.section_scale
            );
            println!("  plancherel rel dev {:.3e}", cert.plancherel_rel_dev);
            println!("  max|g| = {:.4}", g.max_abs());
            println!("  notes: {:?}", cert.notes);
        }
        Err(e) => println!("n=4 FAILED: {e}"),
    }
}
