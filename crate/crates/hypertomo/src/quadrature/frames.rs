//! Orthonormal complex frames spanning subspaces of C^n, with Haar sampling.

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom;

/// An orthonormal complex frame for a d-dimensional complex subspace H of
/// C^n together with a frame for its orthogonal complement.
#[derive(Debug, Clone)]
pub struct ComplexSubspaceFrame {
    pub n: usize,
    pub d: usize,
    /// Column-major n x d matrix of basis vectors for H.
    basis: Vec<Complex64>,
    /// Column-major n x (n-d) matrix spanning the orthogonal complement.
    complement: Vec<Complex64>,
}

fn col(m: &[Complex64], n: usize, j: usize) -> &[Complex64] {
    &m[j * n..(j + 1) * n]
}

fn hdot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}

/// Modified Gram-Schmidt with a re-orthogonalization pass. Returns None if
/// the vector is (numerically) in the span of the existing columns.
fn orthogonalize(v: &mut Vec<Complex64>, cols: &[Vec<Complex64>]) -> Option<()> {
    for _ in 0..2 {
        for c in cols {
            let proj = hdot(v, c);
            for (vi, ci) in v.iter_mut().zip(c) {
                *vi -= proj * ci;
            }
        }
    }
    let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm < 1e-8 {
        return None;
    }
    for vi in v.iter_mut() {
        *vi /= norm;
    }
    Some(())
}

impl ComplexSubspaceFrame {
    /// Build a frame from given complex columns (columns are orthonormalized
    /// as provided; the complement is completed deterministically).
    pub fn from_columns(n: usize, columns: Vec<Vec<Complex64>>) -> Result<Self> {
        let d = columns.len();
        if d == 0 || d >= n {
            return Err(Error::InputDomain(format!(
                "subspace dimension must satisfy 1 <= d <= n-1, got d={d}, n={n}"
            )));
        }
        let mut ortho: Vec<Vec<Complex64>> = Vec::with_capacity(n);
        for mut c in columns {
            if c.len() != n {
                return Err(Error::InputDomain("frame column of wrong length".into()));
            }
            orthogonalize(&mut c, &ortho)
                .ok_or_else(|| Error::InputDomain("rank-deficient frame columns".into()))?;
            ortho.push(c);
        }
        // complete with coordinate vectors
        let mut k = 0;
        while ortho.len() < n {
            let mut e = vec![Complex64::ZERO; n];
            e[k % n] = Complex64::ONE;
            k += 1;
            if orthogonalize(&mut e, &ortho).is_some() {
                ortho.push(e);
            }
            if k > 4 * n {
                return Err(Error::NumericalInstability(
                    "could not complete frame".into(),
                ));
            }
        }
        let basis = ortho[..d].iter().flat_map(|c| c.iter().copied()).collect();
        let complement = ortho[d..].iter().flat_map(|c| c.iter().copied()).collect();
        Ok(ComplexSubspaceFrame {
            n,
            d,
            basis,
            complement,
        })
    }

    /// Frame spanning the chosen complex coordinate axes.
    pub fn coordinate(n: usize, axes: &[usize]) -> Result<Self> {
        let cols = axes
            .iter()
            .map(|&j| {
                let mut e = vec![Complex64::ZERO; n];
                e[j] = Complex64::ONE;
                e
            })
            .collect();
        Self::from_columns(n, cols)
    }

    pub fn basis_column(&self, j: usize) -> &[Complex64] {
        col(&self.basis, self.n, j)
    }

    pub fn complement_column(&self, j: usize) -> &[Complex64] {
        col(&self.complement, self.n, j)
    }

    /// The complement as a frame in its own right.
    pub fn orthogonal_complement(&self) -> ComplexSubspaceFrame {
        ComplexSubspaceFrame {
            n: self.n,
            d: self.n - self.d,
            basis: self.complement.clone(),
            complement: self.basis.clone(),
        }
    }

    /// Embed subspace coordinates z in C^d as a real vector in R^{2n}.
    pub fn embed(&self, z: &[Complex64]) -> Vec<f64> {
        debug_assert_eq!(z.len(), self.d);
        let mut out = vec![Complex64::ZERO; self.n];
        for (j, &zj) in z.iter().enumerate() {
            for (o, &bij) in out.iter_mut().zip(self.basis_column(j)) {
                *o += zj * bij;
            }
        }
        geom::from_complex(&out)
    }

    /// Complex coefficients of the projection of a real vector onto H.
    pub fn project(&self, x: &[f64]) -> Vec<Complex64> {
        let xz = geom::to_complex(x);
        (0..self.d)
            .map(|j| hdot(&xz, self.basis_column(j)))
            .collect()
    }

    /// Norm of the projection of x onto the subspace.
    pub fn projection_norm(&self, x: &[f64]) -> f64 {
        self.project(x).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest deviation of frame^* frame from the identity over both frames.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (m, k) in [(&self.basis, self.d), (&self.complement, self.n - self.d)] {
            for i in 0..k {
                for j in 0..k {
                    let g = hdot(col(m, self.n, i), col(m, self.n, j));
                    let target = if i == j { Complex64::ONE } else { Complex64::ZERO };
                    worst = worst.max((g - target).norm());
                }
            }
        }
        // cross products between H and its complement
        for i in 0..self.d {
            for j in 0..self.n - self.d {
                worst = worst.max(
                    hdot(col(&self.basis, self.n, i), col(&self.complement, self.n, j)).norm(),
                );
            }
        }
        worst
    }

    pub fn check_orthonormal(&self, tol: f64) -> Result<()> {
        let defect = self.orthonormality_defect();
        if defect > tol {
            return Err(Error::InputDomain(format!(
                "frame is not orthonormal (defect {defect:.3e})"
            )));
        }
        Ok(())
    }
}

/// Haar-distributed complex d-dimensional subspace of C^n: i.i.d. complex
/// Gaussian columns orthonormalized (unitarily invariant by construction).
pub fn sample_complex_subspace(n: usize, d: usize, seed: u64) -> Result<ComplexSubspaceFrame> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let cols: Vec<Vec<Complex64>> = (0..d)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let re = gaussian(&mut rng);
                        let im = gaussian(&mut rng);
                        Complex64::new(re, im)
                    })
                    .collect()
            })
            .collect();
        match ComplexSubspaceFrame::from_columns(n, cols) {
            Ok(f) => return Ok(f),
            Err(Error::InputDomain(_)) => continue, // rank deficiency: resample
            Err(e) => return Err(e),
        }
    }
}

fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = rng.random::<f64>().max(1e-300);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::ks_test;

    #[test]
    fn sampled_frames_are_orthonormal() {
        for seed in 0..20 {
            let f = sample_complex_subspace(4, 2, seed).unwrap();
            assert!(f.orthonormality_defect() < 1e-12);
            let c = f.orthogonal_complement();
            assert!(c.orthonormality_defect() < 1e-12);
        }
    }

    #[test]
    fn complement_line_has_unit_columns() {
        let f = sample_complex_subspace(3, 2, 7).unwrap();
        // complement is a complex line
        assert_eq!(f.n - f.d, 1);
        let norm: f64 = f
            .complement_column(0)
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn embed_projects_back() {
        let f = sample_complex_subspace(4, 2, 3).unwrap();
        let z = vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)];
        let x = f.embed(&z);
        assert!((geom::norm(&x) - 1.0).abs() < 1e-12);
        let back = f.project(&x);
        for (a, b) in z.iter().zip(&back) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn haar_first_column_modulus_is_beta_distributed() {
        // |<col_1, e_1>|^2 of a Haar frame in C^n is Beta(1, n-1):
        // CDF(x) = 1 - (1-x)^{n-1}
        let n = 3;
        let mut sample: Vec<f64> = (0..400)
            .map(|seed| {
                let f = sample_complex_subspace(n, 1, 10_000 + seed).unwrap();
                f.basis_column(0)[0].norm_sqr()
            })
            .collect();
        let (stat, p) = ks_test(&mut sample, |x| {
            1.0 - (1.0 - x.clamp(0.0, 1.0)).powi(n as i32 - 1)
        });
        assert!(p > 0.01, "ks statistic {stat}, p = {p}");
    }

    #[test]
    fn unitary_invariance_of_projection_statistics() {
        // the squared projection of a fixed unit vector onto a Haar complex
        // line in C^n is Beta(1, n-1) regardless of the vector
        let n = 4;
        let target = geom::coordinate_axis(n, 2);
        let mut sample: Vec<f64> = (0..400)
            .map(|seed| {
                let f = sample_complex_subspace(n, 1, 777 + seed).unwrap();
                let p = f.projection_norm(&target);
                p * p
            })
            .collect();
        let (stat, p) = ks_test(&mut sample, |x| {
            1.0 - (1.0 - x.clamp(0.0, 1.0)).powi(n as i32 - 1)
        });
        assert!(p > 0.01, "ks statistic {stat}, p = {p}");
    }
}
