//! Gegenbauer polynomials, spherical-harmonic dimensions and the Fourier
//! multipliers of even homogeneous extensions.
//!
//! For an even degree-m spherical harmonic Y_m on S^{N-1} the Fourier
//! transform of Y_m(x/|x|) |x|^{-p} equals
//!   (-1)^{m/2} 2^{N-p} pi^{N/2} Gamma((m+N-p)/2)/Gamma((m+p)/2)
//! times Y_m(xi/|xi|) |xi|^{-(N-p)}, which reduces the transform of a smooth
//! even profile to a diagonal multiplier on its harmonic expansion.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::special::{gamma, sphere_surface};

/// Evaluate C_m^nu(t) for all m = 0..=max_deg by the three-term recurrence,
/// writing into `out` (len max_deg+1). Stable for |t| <= 1.
#[inline]
pub fn gegenbauer_all(nu: f64, max_deg: usize, t: f64, out: &mut [f64]) {
    debug_assert!(out.len() > max_deg);
    out[0] = 1.0;
    if max_deg == 0 {
        return;
    }
    out[1] = 2.0 * nu * t;
    for m in 2..=max_deg {
        let mf = m as f64;
        out[m] = (2.0 * t * (mf + nu - 1.0) * out[m - 1] - (mf + 2.0 * nu - 2.0) * out[m - 2]) / mf;
    }
}

/// Division-free evaluator for hot loops: recurrence coefficients are
/// precomputed once, and only even degrees are accumulated.
#[derive(Debug, Clone)]
pub struct GegenbauerRecurrence {
    nu2: f64,
    max_deg: usize,
    /// alpha_m = 2 (m + nu - 1) / m, beta_m = (m + 2 nu - 2) / m for m >= 2.
    coeff: Vec<(f64, f64)>,
}

impl GegenbauerRecurrence {
    pub fn new(nu: f64, max_deg: usize) -> Self {
        let coeff = (0..=max_deg)
            .map(|m| {
                if m < 2 {
                    (0.0, 0.0)
                } else {
                    let mf = m as f64;
                    (2.0 * (mf + nu - 1.0) / mf, (mf + 2.0 * nu - 2.0) / mf)
                }
            })
            .collect();
        GegenbauerRecurrence {
            nu2: 2.0 * nu,
            max_deg,
            coeff,
        }
    }

    pub fn even_len(&self) -> usize {
        self.max_deg / 2 + 1
    }

    /// sums[m/2] += weight * C_m^nu(t) for every even m <= max_deg.
    #[inline]
    pub fn accumulate_even(&self, t: f64, weight: f64, sums: &mut [f64]) {
        sums[0] += weight;
        if self.max_deg < 2 {
            return;
        }
        let mut prev2 = 1.0;
        let mut prev1 = self.nu2 * t;
        let mut m = 2;
        while m <= self.max_deg {
            let (a, b) = self.coeff[m];
            let c_even = a * t * prev1 - b * prev2;
            sums[m / 2] += weight * c_even;
            if m + 1 > self.max_deg {
                break;
            }
            let (a1, b1) = self.coeff[m + 1];
            let c_odd = a1 * t * c_even - b1 * prev1;
            prev2 = c_even;
            prev1 = c_odd;
            m += 2;
        }
    }
}

/// C_m^nu(1) = binom(m + 2 nu - 1, m) for m = 0..=max_deg.
pub fn gegenbauer_at_one(nu: f64, max_deg: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(max_deg + 1);
    out.push(1.0);
    for m in 1..=max_deg {
        let mf = m as f64;
        let prev = out[m - 1];
        out.push(prev * (mf + 2.0 * nu - 1.0) / mf);
    }
    out
}

/// Dimension of the space of degree-m spherical harmonics on S^{N-1}.
pub fn harmonic_dim(ambient_dim: usize, m: usize) -> f64 {
    let n = ambient_dim as f64;
    if m == 0 {
        return 1.0;
    }
    if m == 1 {
        return n;
    }
    let mf = m as f64;
    let binom = |top: f64, k: usize| -> f64 {
        let mut acc = 1.0;
        for i in 0..k {
            acc *= (top - i as f64) / (k - i) as f64;
        }
        acc
    };
    (binom(mf + n - 1.0, ambient_dim - 1) - binom(mf + n - 3.0, ambient_dim - 1)).round()
}

/// Fourier multiplier of the even degree-m harmonic component of a profile
/// extended homogeneously with degree -p on R^N.
pub fn multiplier(ambient_dim: usize, p: f64, m: usize) -> Result<f64> {
    let n = ambient_dim as f64;
    if !(p > 0.0 && p < n) {
        return Err(Error::InputDomain(format!(
            "homogeneity order must satisfy 0 < p < N = {n}, got {p}"
        )));
    }
    if m % 2 != 0 {
        return Err(Error::InputDomain("multipliers apply to even degrees".into()));
    }
    let mf = m as f64;
    let sign = if (m / 2) % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * 2.0f64.powf(n - p) * PI.powf(n / 2.0) * gamma((mf + n - p) / 2.0)
        / gamma((mf + p) / 2.0))
}

/// Fourier constant of the radial power |x|^{-p} on R^N:
/// c(N, p) = 2^{N-p} pi^{N/2} Gamma((N-p)/2) / Gamma(p/2).
pub fn homog_ft_constant(ambient_dim: usize, p: f64) -> Result<f64> {
    multiplier(ambient_dim, p, 0)
}

/// Per-degree factor of the zonal projection:
/// zeta_m = multiplier * h_m / (|S^{N-1}| C_m^nu(1)), so that
/// FT(xi) = sum_m zeta_m * int f(u) C_m^nu(<u, xi>) dsigma(u).
pub fn zonal_factors(ambient_dim: usize, p: f64, max_deg: usize) -> Result<Vec<f64>> {
    let nu = (ambient_dim as f64 - 2.0) / 2.0;
    if nu <= 0.0 {
        return Err(Error::InputDomain(
            "zonal machinery needs ambient dimension >= 4".into(),
        ));
    }
    let area = sphere_surface(ambient_dim);
    let at_one = gegenbauer_at_one(nu, max_deg);
    let mut out = vec![0.0; max_deg + 1];
    for (m, slot) in out.iter_mut().enumerate() {
        if m % 2 == 0 {
            *slot =
                multiplier(ambient_dim, p, m)? * harmonic_dim(ambient_dim, m) / (area * at_one[m]);
        }
    }
    Ok(out)
}
