//! Vectors of R^{2n} identified with C^n.
//!
//! Points are stored as interleaved real coordinates
//! (x_1, y_1, ..., x_n, y_n) for the complex vector (x_1 + i y_1, ...).

use num_complex::Complex64;

/// Euclidean norm.
pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Complex coordinate j of an interleaved real vector.
pub fn complex_coord(v: &[f64], j: usize) -> Complex64 {
    Complex64::new(v[2 * j], v[2 * j + 1])
}

/// Hermitian inner product <a, b> = sum_j a_j conj(b_j).
pub fn complex_dot(a: &[f64], b: &[f64]) -> Complex64 {
    debug_assert_eq!(a.len(), b.len());
    let n = a.len() / 2;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        acc += complex_coord(a, j) * complex_coord(b, j).conj();
    }
    acc
}

/// Moduli (m_1, ..., m_n) of the complex coordinates.
pub fn moduli(v: &[f64]) -> Vec<f64> {
    let n = v.len() / 2;
    (0..n).map(|j| complex_coord(v, j).norm()).collect()
}

/// Multiply every complex coordinate by e^{i theta} (the diagonal rotation).
pub fn rotate_all(v: &[f64], theta: f64) -> Vec<f64> {
    let rot = Complex64::from_polar(1.0, theta);
    let n = v.len() / 2;
    let mut out = vec![0.0; v.len()];
    for j in 0..n {
        let z = complex_coord(v, j) * rot;
        out[2 * j] = z.re;
        out[2 * j + 1] = z.im;
    }
    out
}

/// Multiply coordinate j by e^{i theta_j} independently.
pub fn rotate_torus(v: &[f64], thetas: &[f64]) -> Vec<f64> {
    let n = v.len() / 2;
    debug_assert_eq!(thetas.len(), n);
    let mut out = vec![0.0; v.len()];
    for j in 0..n {
        let z = complex_coord(v, j) * Complex64::from_polar(1.0, thetas[j]);
        out[2 * j] = z.re;
        out[2 * j + 1] = z.im;
    }
    out
}

/// Embed complex coordinates into the interleaved real representation.
pub fn from_complex(z: &[Complex64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * z.len());
    for c in z {
        out.push(c.re);
        out.push(c.im);
    }
    out
}

pub fn to_complex(v: &[f64]) -> Vec<Complex64> {
    (0..v.len() / 2).map(|j| complex_coord(v, j)).collect()
}

/// v scaled to unit norm.
pub fn normalized(v: &[f64]) -> Vec<f64> {
    let n = norm(v);
    v.iter().map(|x| x / n).collect()
}

/// a + t (b - a)
pub fn lerp(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
}

/// Real unit vector along complex coordinate axis j (phase 0).
pub fn coordinate_axis(n: usize, j: usize) -> Vec<f64> {
    let mut v = vec![0.0; 2 * n];
    v[2 * j] = 1.0;
    v
}
