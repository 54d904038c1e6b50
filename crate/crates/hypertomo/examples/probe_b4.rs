//! Scratch probe: transform scans of the complex l4 ball in C^4.

use hypertomo::bodies::BodySpec;
use hypertomo::harmonic::pdscan::{pd_scan, PdScanOptions};

fn main() {
    let spec = BodySpec::LqBall { n: 4, q: 4.0 };
    for l in [1usize, 2] {
        let t = std::time::Instant::now();
        let opts = PdScanOptions::defaults(8);
        let report = pd_scan(&spec, l, &opts).unwrap();
        println!(
            "l={l}: outcome {:?}, min {:.6} +- {:.2e} at {:?} (margin {:.1}, {} pts, {:?})",
            report.outcome,
            report.min_value,
            report.error_estimate,
            report
                .argmin
                .chunks(2)
                .map(|c| (c[0] * c[0] + c[1] * c[1]).sqrt())
                .collect::<Vec<_>>(),
            report.margin,
            report.scanned,
            t.elapsed()
        );
    }
}
