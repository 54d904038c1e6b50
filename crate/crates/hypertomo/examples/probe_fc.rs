//! Scratch probe: transform profile F(c) of the two-ellipse seed body.

use hypertomo::bodies::BodySpec;
use hypertomo::geom;
use hypertomo::harmonic::{section_laplacian_ft, SectionFtOptions};

fn main() {
    let m3 = BodySpec::Cotent {
        base: Box::new(BodySpec::two_ellipse(3, 0.3, 1.1)),
    };
    let n = 3;
    println!("two-ellipse seed, FT of ||.||^-2 along c = |xi_n|:");
    for i in 0..=24 {
        let c = i as f64 / 24.0;
        let mut xi = vec![0.0; 2 * n];
        xi[0] = (1.0f64 - c * c).max(0.0).sqrt();
        xi[2 * n - 2] = c;
        let xi = geom::normalized(&xi);
        let r = section_laplacian_ft(&m3, 2.0, &xi, &SectionFtOptions::default()).unwrap();
        println!("  c = {c:.4}: {:+.6} +- {:.2e}", r.value, r.error_estimate);
    }
}
