//! Debug: sampled vs reduced section integrals of a zonal profile.

use hypertomo::bodies::{random_unit, ZonalProfile};
use hypertomo::geom;
use hypertomo::quadrature::{sample_complex_subspace, subspace_sphere_rule, RuleMethod};
use hypertomo::special::sphere_surface;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};

fn reduced(g: &ZonalProfile, d: usize, c: f64) -> f64 {
    if d == 1 {
        return TAU * g.eval_reduced(c);
    }
    let n_q = 200;
    let ring = TAU * sphere_surface(2 * d - 2);
    let mut acc = 0.0;
    for i in 0..n_q {
        let x = PI / 2.0 * (i as f64 + 0.5) / n_q as f64;
        acc += g.eval_reduced(c * x.cos()) * x.cos() * x.sin().powi(2 * d as i32 - 3);
    }
    ring * acc * PI / 2.0 / n_q as f64
}

fn main() {
    let n = 3usize;
    let d = 2usize;
    // toy zonal profile: G(a) = a^4 - 0.2
    let grid: Vec<f64> = (0..=256).map(|i| i as f64 / 256.0).collect();
    let vals: Vec<f64> = grid.iter().map(|a| a.powi(4) - 0.2).collect();
    let axis = geom::normalized(&[0.3, -0.2, 0.5, 0.1, 0.4, 0.65]);
    let g = ZonalProfile::new(axis.clone(), grid, vals);

    for seed in 0..4u64 {
        let frame = sample_complex_subspace(n, d, 1000 + seed).unwrap();
        let rule = subspace_sphere_rule(&frame, 1 << 14, RuleMethod::QuasiMonteCarlo, seed).unwrap();
        let sampled = rule.integrate(|u| g.eval_unit(u));
        let c = frame.projection_norm(&axis);
        let red = reduced(&g, d, c);
        // brute force Monte Carlo on the subsphere
        let mut rng = ChaCha8Rng::seed_from_u64(77 + seed);
        let mut acc = 0.0;
        let mc_n = 200_000;
        for _ in 0..mc_n {
            let z = random_unit(&mut rng, 2 * d);
            let zc = geom::to_complex(&z);
            let u = frame.embed(&zc);
            acc += g.eval_unit(&u);
        }
        let mc = acc / mc_n as f64 * sphere_surface(2 * d);
        println!("seed {seed}: c={c:.4}  sampled={sampled:.6}  reduced={red:.6}  mc={mc:.6}");
    }
}
