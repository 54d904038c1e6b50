//! Circular sections of real ellipsoids and similarity of parallel slices.
//!
//! For a centered axis-aligned ellipsoid x^2/a^2 + y^2/b^2 + z^2/c^2 = 1
//! with a >= b >= c there is a plane through the y-axis meeting it in a
//! circle of radius b. In arc-length (orthonormal in-plane) coordinates the
//! normal (alpha, 0, beta) must satisfy beta^2/a^2 + alpha^2/c^2 = 1/b^2,
//! i.e. beta^2 = a^2 (b^2 - c^2) / (b^2 (a^2 - c^2)); the mirrored normal
//! gives the second circular plane. Every plane parallel to a circular
//! section cuts a circle, and parallel slices of any ellipsoid by affine
//! translates of a hyperplane are similar.

use crate::error::{Error, Result};

/// Centered axis-aligned ellipsoid sum x_i^2 / a_i^2 = 1 with strictly
/// decreasing positive semi-axes.
#[derive(Debug, Clone)]
pub struct Quadric {
    semi_axes: Vec<f64>,
}

impl Quadric {
    pub fn new(semi_axes: Vec<f64>) -> Result<Self> {
        if semi_axes.len() < 2 {
            return Err(Error::InputDomain("need at least two semi-axes".into()));
        }
        if semi_axes.iter().any(|a| !(*a > 0.0)) {
            return Err(Error::DegenerateInput("semi-axes must be positive".into()));
        }
        if semi_axes.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::DegenerateInput(
                "semi-axes must be strictly decreasing".into(),
            ));
        }
        Ok(Quadric { semi_axes })
    }

    pub fn dim(&self) -> usize {
        self.semi_axes.len()
    }

    pub fn semi_axes(&self) -> &[f64] {
        &self.semi_axes
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.level(x) <= 1.0
    }

    pub fn level(&self, x: &[f64]) -> f64 {
        x.iter()
            .zip(&self.semi_axes)
            .map(|(xi, ai)| (xi / ai) * (xi / ai))
            .sum()
    }
}

/// A plane through the intermediate axis cutting a circular section.
#[derive(Debug, Clone)]
pub struct CircularPlane {
    /// Unit normal (alpha, 0, beta) within the (x1, x3)-plane.
    pub normal: Vec<f64>,
    pub radius: f64,
}

/// The two circular central planes of an ellipsoid in R^3 with semi-axes
/// a >= b >= c (a > c). Degenerate (spherical) input is rejected.
pub fn circular_plane(a: f64, b: f64, c: f64) -> Result<[CircularPlane; 2]> {
    if !(a > 0.0 && b > 0.0 && c > 0.0) || a < b || b < c {
        return Err(Error::DegenerateInput(format!(
            "need a >= b >= c > 0, got ({a}, {b}, {c})"
        )));
    }
    if a <= c {
        return Err(Error::DegenerateInput(
            "sphere: every central plane is circular".into(),
        ));
    }
    let beta2 = a * a * (b * b - c * c) / (b * b * (a * a - c * c));
    let alpha2 = 1.0 - beta2;
    let (alpha, beta) = (alpha2.max(0.0).sqrt(), beta2.max(0.0).sqrt());
    Ok([
        CircularPlane {
            normal: vec![alpha, 0.0, beta],
            radius: b,
        },
        CircularPlane {
            normal: vec![alpha, 0.0, -beta],
            radius: b,
        },
    ])
}

/// Circular two-dimensional section of an n-dimensional ellipsoid: found
/// inside the span of the three largest axes.
pub fn circular_plane_nd(quadric: &Quadric) -> Result<[CircularPlane; 2]> {
    let ax = quadric.semi_axes();
    if ax.len() < 3 {
        return Err(Error::InputDomain("need dimension >= 3".into()));
    }
    let planes = circular_plane(ax[0], ax[1], ax[2])?;
    let n = ax.len();
    Ok(planes.map(|p| {
        let mut normal = vec![0.0; n];
        normal[0] = p.normal[0];
        normal[2] = p.normal[2];
        CircularPlane {
            normal,
            radius: p.radius,
        }
    }))
}

/// Slice of an ellipsoid by the affine hyperplane <x, normal> = d, described
/// in orthonormal in-plane coordinates.
#[derive(Debug, Clone)]
pub struct EllipsoidSlice {
    /// Center of the slice in ambient coordinates.
    pub center: Vec<f64>,
    /// Semi-axes, sorted decreasing.
    pub semi_axes: Vec<f64>,
    /// In-plane principal directions (ambient coordinates), matching
    /// `semi_axes`.
    pub axes: Vec<Vec<f64>>,
    /// Orthonormal basis of the slice plane.
    pub basis: Vec<Vec<f64>>,
    /// Center in the in-plane coordinates of `basis`, relative to d*normal.
    pub center_in_plane: Vec<f64>,
}

impl EllipsoidSlice {
    pub fn is_circle(&self, tol: f64) -> bool {
        let hi = self.semi_axes[0];
        let lo = *self.semi_axes.last().unwrap();
        (hi - lo).abs() <= tol * hi
    }

    /// Boundary point at in-plane angle parameters (for two-dimensional
    /// slices: a single angle).
    pub fn boundary_point_2d(&self, t: f64) -> Vec<f64> {
        assert_eq!(self.semi_axes.len(), 2);
        let dim = self.center.len();
        let mut p = self.center.clone();
        for i in 0..dim {
            p[i] += self.semi_axes[0] * t.cos() * self.axes[0][i]
                + self.semi_axes[1] * t.sin() * self.axes[1][i];
        }
        p
    }
}

/// Result of slicing: the plane may miss the ellipsoid entirely.
#[derive(Debug, Clone)]
pub enum SectionResult {
    Empty,
    Point(Vec<f64>),
    Slice(EllipsoidSlice),
}

/// Slice the ellipsoid by { x : <x, normal> = d }. For a 3-dimensional
/// quadric this classifies the conic of intersection; in general it returns
/// the (n-1)-dimensional ellipsoid of intersection in arc-length in-plane
/// coordinates.
pub fn section_slice(quadric: &Quadric, normal: &[f64], d: f64) -> Result<SectionResult> {
    let n = quadric.dim();
    if normal.len() != n {
        return Err(Error::InputDomain("normal has wrong dimension".into()));
    }
    let nrm = normal.iter().map(|x| x * x).sum::<f64>().sqrt();
    if nrm < 1e-14 {
        return Err(Error::DegenerateInput("zero normal".into()));
    }
    let unit: Vec<f64> = normal.iter().map(|x| x / nrm).collect();
    let basis = plane_basis(&unit);
    let k = n - 1;
    // quadratic form of the slice: with x = d*unit + B y,
    // y^T M y + 2 q^T y + (r - 1) = 0
    let dvec: Vec<f64> = quadric.semi_axes().iter().map(|a| 1.0 / (a * a)).collect();
    let mut m = vec![0.0; k * k];
    let mut q = vec![0.0; k];
    let mut r = 0.0;
    let p: Vec<f64> = unit.iter().map(|u| d * u).collect();
    for i in 0..k {
        for j in 0..k {
            m[i * k + j] = (0..n).map(|t| basis[i][t] * dvec[t] * basis[j][t]).sum();
        }
        q[i] = (0..n).map(|t| basis[i][t] * dvec[t] * p[t]).sum();
        if i == 0 {
            r = (0..n).map(|t| p[t] * dvec[t] * p[t]).sum();
        }
    }
    // center: M y0 = -q
    let y0 = solve(&m, &q.iter().map(|x| -x).collect::<Vec<_>>(), k)?;
    // radius-squared scale: 1 - r + y0^T M y0  (= 1 - r + q^T(-y0))
    let rho2 = 1.0 - r + (0..k).map(|i| -q[i] * y0[i]).sum::<f64>();
    let mut center = p.clone();
    for i in 0..k {
        for t in 0..n {
            center[t] += y0[i] * basis[i][t];
        }
    }
    if rho2 < -1e-13 {
        return Ok(SectionResult::Empty);
    }
    if rho2 <= 1e-13 {
        return Ok(SectionResult::Point(center));
    }
    let (eigvals, eigvecs) = jacobi_eigen(&m, k);
    // semi-axes sqrt(rho2 / lambda) sorted decreasing
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&i, &j| eigvals[i].partial_cmp(&eigvals[j]).unwrap());
    let mut semi_axes = Vec::with_capacity(k);
    let mut axes = Vec::with_capacity(k);
    for &idx in &order {
        semi_axes.push((rho2 / eigvals[idx]).sqrt());
        let mut dir = vec![0.0; n];
        for i in 0..k {
            for t in 0..n {
                dir[t] += eigvecs[i * k + idx] * basis[i][t];
            }
        }
        axes.push(dir);
    }
    Ok(SectionResult::Slice(EllipsoidSlice {
        center,
        semi_axes,
        axes,
        basis,
        center_in_plane: y0,
    }))
}

/// Ratio of the slice at offset d to the central slice: a scalar in (0, 1]
/// (parallel slices of an ellipsoid are similar).
pub fn similarity_ratio(quadric: &Quadric, normal: &[f64], d: f64) -> Result<f64> {
    let central = match section_slice(quadric, normal, 0.0)? {
        SectionResult::Slice(s) => s,
        _ => return Err(Error::DegenerateInput("central slice degenerate".into())),
    };
    match section_slice(quadric, normal, d)? {
        SectionResult::Slice(s) => Ok(s.semi_axes[0] / central.semi_axes[0]),
        SectionResult::Point(_) => Ok(0.0),
        SectionResult::Empty => Err(Error::InputDomain(
            "slice is empty at this offset".into(),
        )),
    }
}

/// Orthonormal basis of the hyperplane orthogonal to a unit vector.
fn plane_basis(unit: &[f64]) -> Vec<Vec<f64>> {
    let n = unit.len();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n - 1);
    let mut k = 0;
    while basis.len() < n - 1 && k < 2 * n {
        let mut e = vec![0.0; n];
        e[k % n] = 1.0;
        k += 1;
        // orthogonalize against the normal and earlier columns (twice)
        for _ in 0..2 {
            let proj: f64 = e.iter().zip(unit).map(|(a, b)| a * b).sum();
            for (ei, ui) in e.iter_mut().zip(unit) {
                *ei -= proj * ui;
            }
            for b in &basis {
                let proj: f64 = e.iter().zip(b).map(|(a, c)| a * c).sum();
                for (ei, bi) in e.iter_mut().zip(b) {
                    *ei -= proj * bi;
                }
            }
        }
        let nrm = e.iter().map(|x| x * x).sum::<f64>().sqrt();
        if nrm > 1e-8 {
            for ei in e.iter_mut() {
                *ei /= nrm;
            }
            basis.push(e);
        }
    }
    basis
}

/// Gaussian elimination with partial pivoting for small systems.
fn solve(m: &[f64], rhs: &[f64], k: usize) -> Result<Vec<f64>> {
    let mut a = m.to_vec();
    let mut b = rhs.to_vec();
    for col in 0..k {
        let (pivot, _) = (col..k)
            .map(|r| (r, a[r * k + col].abs()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())
            .unwrap();
        if a[pivot * k + col].abs() < 1e-14 {
            return Err(Error::NumericalInstability("singular slice form".into()));
        }
        if pivot != col {
            for j in 0..k {
                a.swap(col * k + j, pivot * k + j);
            }
            b.swap(col, pivot);
        }
        let diag = a[col * k + col];
        for r in col + 1..k {
            let f = a[r * k + col] / diag;
            for j in col..k {
                a[r * k + j] -= f * a[col * k + j];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; k];
    for col in (0..k).rev() {
        let mut acc = b[col];
        for j in col + 1..k {
            acc -= a[col * k + j] * x[j];
        }
        x[col] = acc / a[col * k + col];
    }
    Ok(x)
}

/// Cyclic Jacobi eigendecomposition of a symmetric k x k matrix
/// (column-major eigenvectors). Plenty for the small slice forms here.
fn jacobi_eigen(m: &[f64], k: usize) -> (Vec<f64>, Vec<f64>) {
    let mut a = m.to_vec();
    let mut v = vec![0.0; k * k];
    for i in 0..k {
        v[i * k + i] = 1.0;
    }
    for _sweep in 0..64 {
        let mut off = 0.0;
        for i in 0..k {
            for j in i + 1..k {
                off += a[i * k + j] * a[i * k + j];
            }
        }
        if off < 1e-30 {
            break;
        }
        for p in 0..k {
            for q in p + 1..k {
                let apq = a[p * k + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q * k + q] - a[p * k + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for i in 0..k {
                    let aip = a[i * k + p];
                    let aiq = a[i * k + q];
                    a[i * k + p] = c * aip - s * aiq;
                    a[i * k + q] = s * aip + c * aiq;
                }
                for j in 0..k {
                    let apj = a[p * k + j];
                    let aqj = a[q * k + j];
                    a[p * k + j] = c * apj - s * aqj;
                    a[q * k + j] = s * apj + c * aqj;
                }
                for i in 0..k {
                    let vip = v[i * k + p];
                    let viq = v[i * k + q];
                    v[i * k + p] = c * vip - s * viq;
                    v[i * k + q] = s * vip + c * viq;
                }
            }
        }
    }
    let eig: Vec<f64> = (0..k).map(|i| a[i * k + i]).collect();
    (eig, v)
}
