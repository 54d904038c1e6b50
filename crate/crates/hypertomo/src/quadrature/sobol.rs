//! Sobol low-discrepancy sequence (Joe-Kuo direction numbers, dims <= 10).

/// (degree s, polynomial coefficient code a, initial direction numbers m).
/// Dimension 1 is the van der Corput sequence in base 2.
const JOE_KUO: [(u32, u32, [u32; 5]); 9] = [
    (1, 0, [1, 0, 0, 0, 0]),
    (2, 1, [1, 3, 0, 0, 0]),
    (3, 1, [1, 3, 1, 0, 0]),
    (3, 2, [1, 1, 1, 0, 0]),
    (4, 1, [1, 1, 3, 3, 0]),
    (4, 4, [1, 3, 5, 13, 0]),
    (5, 2, [1, 1, 5, 5, 17]),
    (5, 4, [1, 1, 5, 5, 5]),
    (5, 7, [1, 1, 7, 11, 19]),
];

const BITS: u32 = 32;

pub struct Sobol {
    dim: usize,
    v: Vec<[u32; BITS as usize]>,
    x: Vec<u32>,
    index: u64,
}

impl Sobol {
    pub fn new(dim: usize) -> Self {
        assert!(
            (1..=JOE_KUO.len() + 1).contains(&dim),
            "sobol supports 1..={} dimensions",
            JOE_KUO.len() + 1
        );
        let mut v = Vec::with_capacity(dim);
        // first dimension: v_k = 2^{32-k}
        let mut v0 = [0u32; BITS as usize];
        for (k, slot) in v0.iter_mut().enumerate() {
            *slot = 1 << (BITS - 1 - k as u32);
        }
        v.push(v0);
        for d in 1..dim {
            let (s, a, m_init) = JOE_KUO[d - 1];
            let s = s as usize;
            let mut m = [0u64; BITS as usize];
            for k in 0..s {
                m[k] = m_init[k] as u64;
            }
            for k in s..BITS as usize {
                let mut mk = m[k - s] ^ (m[k - s] << s);
                for i in 1..s {
                    let a_bit = (a >> (s - 1 - i)) & 1;
                    if a_bit == 1 {
                        mk ^= m[k - i] << i;
                    }
                }
                m[k] = mk;
            }
            let mut vd = [0u32; BITS as usize];
            for k in 0..BITS as usize {
                vd[k] = (m[k] as u32) << (BITS - 1 - k as u32);
            }
            v.push(vd);
        }
        Sobol {
            dim,
            v,
            x: vec![0; dim],
            index: 0,
        }
    }

    /// Next point in [0,1)^dim (Gray-code order).
    pub fn next_point(&mut self) -> Vec<f64> {
        let scale = 1.0 / (1u64 << BITS) as f64;
        let out: Vec<f64> = self.x.iter().map(|&xi| xi as f64 * scale).collect();
        let c = self.index.trailing_ones() as usize;
        for d in 0..self.dim {
            self.x[d] ^= self.v[d][c];
        }
        self.index += 1;
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::ks_test;

    #[test]
    fn first_points_of_dim2_match_reference() {
        let mut s = Sobol::new(2);
        let expected = [
            [0.0, 0.0],
            [0.5, 0.5],
            [0.75, 0.25],
            [0.25, 0.75],
            [0.375, 0.375],
            [0.875, 0.875],
            [0.625, 0.125],
            [0.125, 0.625],
        ];
        for row in expected {
            let p = s.next_point();
            assert_eq!(p[0], row[0]);
            assert_eq!(p[1], row[1]);
        }
    }

    #[test]
    fn marginals_are_uniform() {
        for dim in [4usize, 8] {
            let mut s = Sobol::new(dim);
            let pts: Vec<Vec<f64>> = (0..4096).map(|_| s.next_point()).collect();
            for d in 0..dim {
                let mut coord: Vec<f64> = pts.iter().map(|p| p[d]).collect();
                let (stat, p) = ks_test(&mut coord, |x| x.clamp(0.0, 1.0));
                assert!(p > 0.01, "dim {dim} coord {d}: ks stat {stat}, p {p}");
            }
        }
    }

    #[test]
    fn integrates_product_of_sines() {
        use std::f64::consts::PI;
        let mut s = Sobol::new(2);
        let n = 1 << 16;
        let mut acc = 0.0;
        for _ in 0..n {
            let p = s.next_point();
            acc += (PI * p[0]).sin() * (PI * p[1]).sin();
        }
        let est = acc / n as f64;
        assert!((est - 4.0 / (PI * PI)).abs() < 1e-4);
    }
}
