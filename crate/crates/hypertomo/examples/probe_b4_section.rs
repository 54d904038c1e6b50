//! Scratch probe: section route vs high-degree multiplier on B_4^4.

use hypertomo::bodies::BodySpec;
use hypertomo::geom;
use hypertomo::harmonic::{
    multiplier_ft, section_laplacian_ft, HomogeneousProfile, MultiplierOptions, SectionFtOptions,
};

fn main() {
    let spec = BodySpec::LqBall { n: 4, q: 4.0 };
    let xi_axis = geom::coordinate_axis(4, 3);
    let xi_diag = geom::normalized(&[1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0]);
    let xi_diag2 = geom::normalized(&[1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);

    for (name, xi) in [("axis", &xi_axis), ("diag4", &xi_diag), ("diag2", &xi_diag2)] {
        for (l, p) in [(1usize, 2.0f64), (2, 4.0)] {
            let t = std::time::Instant::now();
            let sec = section_laplacian_ft(&spec, p, xi, &SectionFtOptions::default()).unwrap();
            println!(
                "{name} l={l} section:   {:12.4} +- {:.2e}  ({:?})",
                sec.value,
                sec.error_estimate,
                t.elapsed()
            );
        }
    }

    // multiplier convergence at the coordinate axis (single active dim)
    let prof = spec.radial_power_profile(2.0);
    let hp = HomogeneousProfile::new(&prof, 2.0).unwrap();
    for deg in [16usize, 32, 64, 96, 128] {
        let opts = MultiplierOptions::defaults(8)
            .with_max_deg(deg)
            .with_moduli_level(deg / 2 + 10);
        let t = std::time::Instant::now();
        let r = multiplier_ft(&hp, &xi_axis, &opts).unwrap();
        println!(
            "axis l=1 multiplier deg {deg:3}: {:12.4} +- {:.2e}  ({:?})",
            r.value,
            r.error_estimate,
            t.elapsed()
        );
    }
    let prof4 = spec.radial_power_profile(4.0);
    let hp4 = HomogeneousProfile::new(&prof4, 4.0).unwrap();
    for deg in [64usize, 128] {
        let opts = MultiplierOptions::defaults(8)
            .with_max_deg(deg)
            .with_moduli_level(deg / 2 + 10);
        let r = multiplier_ft(&hp4, &xi_axis, &opts).unwrap();
        println!(
            "axis l=2 multiplier deg {deg:3}: {:12.4} +- {:.2e}",
            r.value, r.error_estimate
        );
    }
}
