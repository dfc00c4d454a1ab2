//! Small dense matrices over integer combinations of roots of unity.
//!
//! This is the certificate path for the BMW relation checks: products of 0/1
//! idempotent patterns with monomial matrices stay inside `Z[roots of unity]`,
//! so both sides of a relation can be compared in canonical form with no
//! floats involved. Dimensions stay at 2^n for n <= 4, so the quadratic
//! storage is irrelevant.

use super::{DenseMatrix, MonomialMatrix, Phase, PhaseSum};

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    dim: usize,
    data: Vec<PhaseSum>,
}

impl ExactMatrix {
    pub fn zeros(dim: usize) -> Self {
        ExactMatrix {
            dim,
            data: vec![PhaseSum::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = PhaseSum::from_integer(1);
        }
        m
    }

    /// Build from an integer pattern (row-major).
    pub fn from_integers(dim: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), dim * dim);
        ExactMatrix {
            dim,
            data: entries.iter().map(|&c| PhaseSum::from_integer(c)).collect(),
        }
    }

    pub fn from_monomial(m: &MonomialMatrix) -> Self {
        let d = m.dim();
        let mut out = Self::zeros(d);
        for j in 0..d {
            out.data[m.perm()[j] as usize * d + j] = PhaseSum::from_phase(m.phases()[j]);
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &PhaseSum {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: PhaseSum) {
        self.data[i * self.dim + j] = v;
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.dim, rhs.dim);
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for l in 0..d {
                let a = &self.data[i * d + l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = &rhs.data[l * d + j];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    out.data[i * d + j] = &out.data[i * d + j] + &prod;
                }
            }
        }
        out
    }

    pub fn sub(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.dim, rhs.dim);
        ExactMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale_phase(&self, p: Phase) -> ExactMatrix {
        ExactMatrix {
            dim: self.dim,
            data: self.data.iter().map(|s| s.mul_phase(p)).collect(),
        }
    }

    pub fn scale_sum(&self, s: &PhaseSum) -> ExactMatrix {
        ExactMatrix {
            dim: self.dim,
            data: self.data.iter().map(|e| e * s).collect(),
        }
    }

    pub fn trace(&self) -> PhaseSum {
        let mut t = PhaseSum::zero();
        for i in 0..self.dim {
            t = &t + &self.data[i * self.dim + i];
        }
        t
    }

    /// Embed a 4x4 exact operator at slots `(i, i+1)` of `n` slots; same index
    /// map as [`DenseMatrix::embed_pair`].
    pub fn embed_pair(&self, n: usize, i: usize) -> ExactMatrix {
        assert_eq!(self.dim, 4);
        assert!(i >= 1 && i + 1 <= n);
        let dim = 1usize << n;
        let lo = i - 1;
        let mask = (1usize << lo) | (1usize << i);
        let mut out = Self::zeros(dim);
        for t in 0..dim {
            let rest = t & !mask;
            let rt = ((t >> lo) & 1) | (((t >> i) & 1) << 1);
            for rs in 0..4 {
                let s = rest | ((rs & 1) << lo) | (((rs >> 1) & 1) << i);
                out.data[s * dim + t] = self.get(rs, rt).clone();
            }
        }
        out
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(i, j, self.get(i, j).value());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_product_matches_dense() {
        let m = MonomialMatrix::new(
            vec![0, 2, 1, 3],
            vec![Phase::new(1, 8), Phase::new(7, 8), Phase::new(7, 8), Phase::new(1, 8)],
        )
        .unwrap();
        let e = ExactMatrix::from_integers(4, &[0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0]);
        let g = ExactMatrix::from_monomial(&m);
        let prod = e.mul(&g);
        let dense = e.to_dense().mul(&m.to_dense());
        assert!(prod.to_dense().max_diff(&dense) < 1e-12);
    }

    #[test]
    fn embed_matches_dense_embed() {
        let e = ExactMatrix::from_integers(4, &[0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0]);
        let a = e.embed_pair(3, 2).to_dense();
        let b = e.to_dense().embed_pair(3, 2);
        assert!(a.max_diff(&b) < 1e-12);
    }
}
