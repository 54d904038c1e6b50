//! Scratch probe: convergence of both transform routes on the two-ellipse
//! body. Run with: cargo run --release -p hypertomo --example probe_anchor

use hypertomo::bodies::BodySpec;
use hypertomo::geom;
use hypertomo::harmonic::{
    multiplier_ft, parallel_section_function, section_laplacian_ft, HomogeneousProfile,
    MultiplierOptions, SectionFtOptions,
};
use std::f64::consts::PI;

fn main() {
    let (s, b) = (0.3f64, 1.1f64);
    let m_body = BodySpec::Cotent {
        base: Box::new(BodySpec::TwoEllipseBody {
            n: 3,
            s,
            b,
            blend_width: 0.1,
        }),
    };
    let k0 = s * s / (1.0 - s * s);
    let beta = (b * b - 1.0) / (b * b);
    let exact = -16.0 * PI.powi(3) * beta * k0 * k0;
    println!("closed form: {exact:.6}");

    let xi = geom::coordinate_axis(3, 2);

    // A(0) first: closed form (pi^2/2) k0^2
    let t0 = std::time::Instant::now();
    let a0 = parallel_section_function(&m_body, &xi, (0.0, 0.0), 512, 1).unwrap();
    println!(
        "A(0) = {a0:.6} vs {:.6}  ({:?})",
        PI * PI / 2.0 * k0 * k0,
        t0.elapsed()
    );

    let t0 = std::time::Instant::now();
    let mut opts = SectionFtOptions::default();
    opts.slice_rule_size = 1024;
    let sec = section_laplacian_ft(&m_body, 2.0, &xi, &opts).unwrap();
    println!(
        "section route: {:.6} +- {:.2e}  rel dev {:.4}  ({:?})",
        sec.value,
        sec.error_estimate,
        (sec.value - exact).abs() / exact.abs(),
        t0.elapsed()
    );

    let prof = m_body.radial_power_profile(2.0);
    let hp = HomogeneousProfile::new(&prof, 2.0).unwrap();
    for max_deg in [16usize, 32, 48, 64, 80, 96, 112] {
        let level = max_deg / 2 + 8;
        let opts = MultiplierOptions::defaults(6)
            .with_max_deg(max_deg)
            .with_moduli_level(level);
        let t = std::time::Instant::now();
        let r = multiplier_ft(&hp, &xi, &opts).unwrap();
        println!(
            "multiplier deg {max_deg:3} level {level:3}: {:.6} +- {:.2e}  rel dev {:.4}  ({:?})",
            r.value,
            r.error_estimate,
            (r.value - exact).abs() / exact.abs(),
            t.elapsed()
        );
    }
}
