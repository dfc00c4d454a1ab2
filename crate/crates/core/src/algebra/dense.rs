//! Dense complex matrices, sized for 4x4 solutions and their n-strand
//! embeddings (n <= 12 on this path).
//!
//! The tensor product follows the "left into right" convention: for
//! `A = [[a, b], [c, d]]`,
//!
//! ```text
//! X (x) A = [[a X, b X],
//!            [c X, d X]]
//! ```
//!
//! i.e. the *right* factor indexes the outer blocks and the *left* factor the
//! fast axis: entry `((iA*dX + iX), (jA*dX + jX)) = X[iX,jX] * A[iA,jA]`. Under
//! this convention the n-strand basis label is the bitstring `(b_1, .., b_n)`
//! with index `sum_j b_j 2^(j-1)`: slot 1 is the least significant bit.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        DenseMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Build from rows; panics if the slice is not square.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "rows must be square");
        DenseMatrix {
            dim,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn from_vec(dim: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), dim * dim);
        DenseMatrix { dim, data }
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m.set(i, i, z);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.data[i * self.dim + j] = z;
    }

    pub fn mul(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix product dimension mismatch");
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for l in 0..d {
                let a = self.data[i * d + l];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * rhs.data[l * d + j];
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.dim, rhs.dim);
        DenseMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.dim, rhs.dim);
        DenseMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, z: Complex64) -> DenseMatrix {
        DenseMatrix {
            dim: self.dim,
            data: self.data.iter().map(|a| a * z).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> DenseMatrix {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.data[j * d + i] = self.data[i * d + j].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_diff(&self, rhs: &DenseMatrix) -> f64 {
        assert_eq!(self.dim, rhs.dim);
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `|| M M^dagger - I ||_max`.
    pub fn unitarity_residual(&self) -> f64 {
        self.mul(&self.dagger()).max_diff(&Self::identity(self.dim))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_residual() < tol
    }

    /// Gauss-Jordan inverse with partial pivoting. Only ever used at d <= 4
    /// (the 2x2 conjugator and the 4x4 solution), but written generally.
    pub fn inverse(&self) -> Result<DenseMatrix> {
        let d = self.dim;
        let mut a = self.clone();
        let mut inv = Self::identity(d);
        for col in 0..d {
            let pivot = (col..d)
                .max_by(|&i, &j| {
                    a.get(i, col)
                        .norm()
                        .partial_cmp(&a.get(j, col).norm())
                        .unwrap()
                })
                .unwrap();
            if a.get(pivot, col).norm() < 1e-14 {
                return Err(Error::SingularQ);
            }
            if pivot != col {
                for j in 0..d {
                    let (x, y) = (a.get(col, j), a.get(pivot, j));
                    a.set(col, j, y);
                    a.set(pivot, j, x);
                    let (x, y) = (inv.get(col, j), inv.get(pivot, j));
                    inv.set(col, j, y);
                    inv.set(pivot, j, x);
                }
            }
            let p = a.get(col, col);
            for j in 0..d {
                a.set(col, j, a.get(col, j) / p);
                inv.set(col, j, inv.get(col, j) / p);
            }
            for i in 0..d {
                if i == col {
                    continue;
                }
                let f = a.get(i, col);
                if f.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..d {
                    let v = a.get(i, j) - f * a.get(col, j);
                    a.set(i, j, v);
                    let v = inv.get(i, j) - f * inv.get(col, j);
                    inv.set(i, j, v);
                }
            }
        }
        Ok(inv)
    }

    /// Embed a two-slot operator (`self` must be 4x4) at slots `(i, i+1)` of
    /// an n-slot space, `1 <= i <= n-1`. Slot 1 is the least significant bit,
    /// so this equals `I^(i-1) (x) self (x) I^(n-i-1)` under the crate's kron.
    pub fn embed_pair(&self, n: usize, i: usize) -> DenseMatrix {
        assert_eq!(self.dim, 4, "embed_pair expects a two-slot operator");
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
                out.set(s, t, self.get(rs, rt));
            }
        }
        out
    }
}

impl std::fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "DenseMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let z = self.get(i, j);
                write!(f, " {:+.3}{:+.3}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Tensor product under the "left into right" convention (see module docs):
/// the right factor `a` indexes the outer blocks.
pub fn kron(x: &DenseMatrix, a: &DenseMatrix) -> DenseMatrix {
    let (dx, da) = (x.dim(), a.dim());
    let mut out = DenseMatrix::zeros(dx * da);
    for ia in 0..da {
        for ja in 0..da {
            let blk = a.get(ia, ja);
            if blk.norm_sqr() == 0.0 {
                continue;
            }
            for ix in 0..dx {
                for jx in 0..dx {
                    out.set(ia * dx + ix, ja * dx + jx, blk * x.get(ix, jx));
                }
            }
        }
    }
    out
}

/// Trace out the second slot of a two-slot operator:
/// `(Sp_2 M)[i,k] = sum_j M[(i,j),(k,j)]` with pair index `(i,j) = i + 2j`.
pub fn partial_trace_second(m: &DenseMatrix) -> Result<DenseMatrix> {
    if m.dim() != 4 {
        return Err(Error::WrongDimension {
            expected: 4,
            got: m.dim(),
        });
    }
    let mut out = DenseMatrix::zeros(2);
    for i in 0..2 {
        for k in 0..2 {
            let v = m.get(i, k) + m.get(i + 2, k + 2);
            out.set(i, k, v);
        }
    }
    Ok(out)
}
