//! Special functions and small numerical utilities shared across the crate:
//! gamma function, sphere surface areas, Gauss-Legendre nodes, smoothstep
//! blending, adaptive Simpson quadrature and deterministic pairwise summation.

use std::f64::consts::PI;

/// Lanczos approximation of the gamma function (g = 7, 9 coefficients).
///
/// Accurate to ~1e-14 relative error for the positive half-integer and
/// small real arguments used in this crate.
pub fn gamma(x: f64) -> f64 {
    const P: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        // reflection formula
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut acc = P[0];
    for (i, &p) in P.iter().enumerate().skip(1) {
        acc += p / (x + i as f64);
    }
    let t = x + 7.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
}

/// Natural log of the gamma function for positive arguments.
pub fn ln_gamma(x: f64) -> f64 {
    // Good enough for the Gamma-ratio multipliers where arguments stay < 100.
    gamma(x).ln()
}

/// Surface area of the unit sphere S^{N-1} in R^N: 2 pi^{N/2} / Gamma(N/2).
pub fn sphere_surface(ambient_dim: usize) -> f64 {
    let n = ambient_dim as f64;
    2.0 * PI.powf(n / 2.0) / gamma(n / 2.0)
}

/// Volume of the unit ball in R^N: pi^{N/2} / Gamma(N/2 + 1).
pub fn ball_volume(ambient_dim: usize) -> f64 {
    let n = ambient_dim as f64;
    PI.powf(n / 2.0) / gamma(n / 2.0 + 1.0)
}

/// factorial as f64 (n small).
pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Quintic smoothstep 6t^5 - 15t^4 + 10t^3, clamped to [0,1].
///
/// C^2 at both ends (value and first two derivatives vanish/match).
pub fn smoothstep(t: f64) -> f64 {
    let t = t.clamp(0.0, 1.0);
    t * t * t * (t * (t * 6.0 - 15.0) + 10.0)
}

/// C-infinity monotone step: exp(-1/t) / (exp(-1/t) + exp(-1/(1-t))) on
/// (0,1), clamped outside. All derivatives vanish at both ends, so blended
/// radial profiles keep rapidly decaying harmonic expansions.
pub fn smooth_partition(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    if t >= 1.0 {
        return 1.0;
    }
    let a = (-1.0 / t).exp();
    let b = (-1.0 / (1.0 - t)).exp();
    a / (a + b)
}

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on the Legendre recurrence. Exact for polynomials of degree <= 2q - 1.
pub fn gauss_legendre(q: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(q >= 1);
    let mut nodes = vec![0.0; q];
    let mut weights = vec![0.0; q];
    let m = q.div_ceil(2);
    for i in 0..m {
        // Chebyshev-based initial guess.
        let mut x = (PI * (i as f64 + 0.75) / (q as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            // Legendre P_q(x) and derivative via recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=q {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            // q == 1 needs p1 = x, p0 = 1 (already set).
            pp = q as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / pp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[q - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[q - 1 - i] = w;
    }
    if q % 2 == 1 {
        // the middle node is exactly 0; recompute its weight cleanly
        let i = q / 2;
        nodes[i] = 0.0;
        let mut p0 = 1.0;
        let mut p1 = 0.0;
        for k in 2..=q {
            let kf = k as f64;
            let p2 = (-(kf - 1.0) * p0) / kf;
            p0 = p1;
            p1 = p2;
        }
        let pp = q as f64 * (0.0 * p1 - p0) / (0.0 - 1.0);
        weights[i] = 2.0 / (pp * pp);
    }
    (nodes, weights)
}

/// Gauss-Legendre rule transplanted to [a, b].
pub fn gauss_legendre_ab(q: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(q);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    (
        x.iter().map(|&t| mid + half * t).collect(),
        w.iter().map(|&wi| wi * half).collect(),
    )
}

/// Gauss-Chebyshev (first kind) averaging nodes: the mean of g(cos phi) over
/// phi in [0, 2pi) equals (1/q) * sum g(c_k) exactly for polynomials g of
/// degree <= 2q - 1.
pub fn chebyshev_avg_nodes(q: usize) -> Vec<f64> {
    (1..=q)
        .map(|k| (PI * (2.0 * k as f64 - 1.0) / (2.0 * q as f64)).cos())
        .collect()
}

/// Adaptive Simpson quadrature with absolute/relative tolerance.
/// Used as an independent oracle against closed forms.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
    }
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: usize,
    ) -> f64 {
        let (left, lm, flm) = simpson(f, a, fa, m, fm);
        let (right, rm, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, fa, m, fm, left, lm, flm, 0.5 * tol, depth - 1)
                + recurse(f, m, fm, b, fb, right, rm, frm, 0.5 * tol, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let (whole, m, fm) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, whole, m, fm, tol, 48)
}

/// Adaptive Simpson with a relative tolerance: a first pass estimates the
/// scale, a second pass refines to `rel_tol` times that scale.
pub fn adaptive_simpson_rel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> f64 {
    let rough = adaptive_simpson(f, a, b, 1e-12);
    let tol = (rough.abs() * rel_tol).max(1e-300);
    adaptive_simpson(f, a, b, tol)
}

/// Pairwise (tree) summation: associativity pattern is fixed by the input
/// order, so results are independent of how the values were produced
/// (sequentially or by parallel workers).
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}

/// Kolmogorov-Smirnov test of a sample against a CDF. Returns (statistic, p).
pub fn ks_test<F: Fn(f64) -> f64>(sample: &mut [f64], cdf: F) -> (f64, f64) {
    sample.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sample.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sample.iter().enumerate() {
        let c = cdf(x);
        let hi = (i as f64 + 1.0) / n - c;
        let lo = c - i as f64 / n;
        d = d.max(hi).max(lo);
    }
    // asymptotic Kolmogorov distribution
    let lambda = (n.sqrt() + 0.12 + 0.11 / n.sqrt()) * d;
    let mut p = 0.0;
    for k in 1..=100 {
        let kf = k as f64;
        p += 2.0 * (-1.0f64).powi(k as i32 + 1) * (-2.0 * kf * kf * lambda * lambda).exp();
    }
    (d, p.clamp(0.0, 1.0))
}
