//! Monomial (generalized permutation) matrices with exact phase entries.
//!
//! Column `j` maps `e_j -> phases[j] * e_{perm[j]}`, i.e. the matrix is `P D`
//! for a permutation `P` and diagonal `D`. Products, inverses and traces stay
//! exact, which is what makes closure enumeration of the represented braid
//! groups hashable and schedule-independent.

use num_complex::Complex64;

use super::{DenseMatrix, Phase, PhaseSum};
use crate::error::{Error, Result};
use crate::tol;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialMatrix {
    perm: Vec<u32>,
    phases: Vec<Phase>,
}

impl MonomialMatrix {
    /// Validates that `perm` is a bijection on `0..d`.
    pub fn new(perm: Vec<u32>, phases: Vec<Phase>) -> Result<Self> {
        if perm.len() != phases.len() {
            return Err(Error::DimensionMismatch(perm.len(), phases.len()));
        }
        let d = perm.len();
        let mut seen = vec![false; d];
        for &p in &perm {
            let p = p as usize;
            if p >= d || seen[p] {
                return Err(Error::NotMonomial(format!(
                    "perm is not a bijection on 0..{d}"
                )));
            }
            seen[p] = true;
        }
        Ok(MonomialMatrix { perm, phases })
    }

    pub fn identity(d: usize) -> Self {
        MonomialMatrix {
            perm: (0..d as u32).collect(),
            phases: vec![Phase::one(); d],
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[u32] {
        &self.perm
    }

    pub fn phases(&self) -> &[Phase] {
        &self.phases
    }

    pub fn is_identity(&self) -> bool {
        self.is_diagonal() && self.phases.iter().all(Phase::is_one)
    }

    /// Permutation part is trivial.
    pub fn is_diagonal(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &p)| p as usize == j)
    }

    /// `self * rhs` (apply `rhs` first). Exact.
    pub fn compose(&self, rhs: &MonomialMatrix) -> Result<MonomialMatrix> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch(self.dim(), rhs.dim()));
        }
        let d = self.dim();
        let mut perm = vec![0u32; d];
        let mut phases = vec![Phase::one(); d];
        for j in 0..d {
            let mid = rhs.perm[j] as usize;
            perm[j] = self.perm[mid];
            phases[j] = rhs.phases[j] * self.phases[mid];
        }
        Ok(MonomialMatrix { perm, phases })
    }

    pub fn inverse(&self) -> MonomialMatrix {
        let d = self.dim();
        let mut perm = vec![0u32; d];
        let mut phases = vec![Phase::one(); d];
        for j in 0..d {
            let target = self.perm[j] as usize;
            perm[target] = j as u32;
            phases[target] = self.phases[j].inv();
        }
        MonomialMatrix { perm, phases }
    }

    /// Multiply every entry by a phase.
    pub fn scale(&self, p: Phase) -> MonomialMatrix {
        MonomialMatrix {
            perm: self.perm.clone(),
            phases: self.phases.iter().map(|&q| q * p).collect(),
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let d = self.dim();
        let mut out = DenseMatrix::zeros(d);
        for j in 0..d {
            out.set(self.perm[j] as usize, j, self.phases[j].value());
        }
        out
    }

    /// Exact trace: sum of phases over fixed points of the permutation part.
    pub fn trace_exact(&self) -> PhaseSum {
        let mut s = PhaseSum::zero();
        for (j, &p) in self.perm.iter().enumerate() {
            if p as usize == j {
                s.add_term(self.phases[j], 1);
            }
        }
        s
    }

    pub fn trace(&self) -> Complex64 {
        self.trace_exact().value()
    }

    /// Largest phase order appearing in the matrix.
    pub fn max_phase_order(&self) -> i64 {
        self.phases.iter().map(|p| p.order()).max().unwrap_or(1)
    }

    /// Tensor product under the same "left into right" convention as the
    /// dense [`kron`](super::kron): the left factor takes the fast index.
    pub fn kron(&self, right: &MonomialMatrix) -> MonomialMatrix {
        let (dx, da) = (self.dim(), right.dim());
        let mut perm = vec![0u32; dx * da];
        let mut phases = vec![Phase::one(); dx * da];
        for ja in 0..da {
            for jx in 0..dx {
                let j = ja * dx + jx;
                perm[j] = right.perm[ja] * dx as u32 + self.perm[jx];
                phases[j] = self.phases[jx] * right.phases[ja];
            }
        }
        MonomialMatrix { perm, phases }
    }

    /// Embed a two-slot monomial (`self` must be 4x4) at slots `(i, i+1)` of
    /// `n` slots, slot 1 being the least significant bit. Matches
    /// [`DenseMatrix::embed_pair`] on the dense side.
    pub fn embed_pair(&self, n: usize, i: usize) -> MonomialMatrix {
        assert_eq!(self.dim(), 4, "embed_pair expects a two-slot operator");
        assert!(i >= 1 && i + 1 <= n);
        let dim = 1usize << n;
        let lo = i - 1;
        let mask = (1usize << lo) | (1usize << i);
        let mut perm = vec![0u32; dim];
        let mut phases = vec![Phase::one(); dim];
        for t in 0..dim {
            let rt = ((t >> lo) & 1) | (((t >> i) & 1) << 1);
            let pr = self.perm[rt] as usize;
            perm[t] = ((t & !mask) | ((pr & 1) << lo) | (((pr >> 1) & 1) << i)) as u32;
            phases[t] = self.phases[rt];
        }
        MonomialMatrix { perm, phases }
    }
}

impl std::fmt::Debug for MonomialMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Monomial(d={}; ", self.dim())?;
        for j in 0..self.dim() {
            write!(f, "e{}->{}*e{} ", j, self.phases[j], self.perm[j])?;
        }
        write!(f, ")")
    }
}

/// Free-function alias for [`MonomialMatrix::compose`].
pub fn monomial_compose(m1: &MonomialMatrix, m2: &MonomialMatrix) -> Result<MonomialMatrix> {
    m1.compose(m2)
}

/// Read a monomial structure off a dense matrix.
///
/// Succeeds iff every column has exactly one entry of modulus above `tol`,
/// that entry is within `tol` of a root of unity of order at most
/// `max_order`, and the row pattern is a permutation.
pub fn monomial_from_dense(
    m: &DenseMatrix,
    entry_tol: f64,
    max_order: i64,
) -> Result<MonomialMatrix> {
    let d = m.dim();
    let mut perm = vec![0u32; d];
    let mut phases = vec![Phase::one(); d];
    for j in 0..d {
        let mut hit = None;
        for i in 0..d {
            if m.get(i, j).norm() > entry_tol {
                if hit.is_some() {
                    return Err(Error::NotMonomial(format!(
                        "column {j} has more than one entry above {entry_tol}"
                    )));
                }
                hit = Some(i);
            }
        }
        let Some(i) = hit else {
            return Err(Error::NotMonomial(format!("column {j} is numerically zero")));
        };
        let Some(phase) = Phase::from_complex(m.get(i, j), entry_tol.max(tol::EXACT_EQ), max_order)
        else {
            return Err(Error::NotMonomial(format!(
                "entry ({i},{j}) is not a root of unity of order <= {max_order}"
            )));
        };
        perm[j] = i as u32;
        phases[j] = phase;
    }
    MonomialMatrix::new(perm, phases)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap23_with(phases: [Phase; 4]) -> MonomialMatrix {
        MonomialMatrix::new(vec![0, 2, 1, 3], phases.to_vec()).unwrap()
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let m = swap23_with([Phase::one(), Phase::new(1, 3), Phase::i(), Phase::minus_one()]);
        let id = m.compose(&m.inverse()).unwrap();
        assert!(id.is_identity());
        let id = m.inverse().compose(&m).unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn swap_is_involution() {
        let s = swap23_with([Phase::one(); 4]);
        assert!(s.compose(&s).unwrap().is_identity());
    }

    #[test]
    fn squared_swap_with_phases_is_diagonal() {
        // (P D)^2 for the middle-swap form: diag(1, ab, ab, g^2)
        let a = Phase::new(1, 8);
        let b = Phase::new(1, 8);
        let g = Phase::new(1, 3);
        let m = swap23_with([Phase::one(), b, a, g]);
        let sq = m.compose(&m).unwrap();
        assert!(sq.is_diagonal());
        assert_eq!(sq.phases(), &[Phase::one(), a * b, a * b, g.pow(2)]);
    }

    #[test]
    fn dense_roundtrip() {
        let m = swap23_with([Phase::one(), Phase::minus_i(), Phase::i(), Phase::minus_one()]);
        let back = monomial_from_dense(&m.to_dense(), 1e-8, 16).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn from_dense_identity() {
        let got = monomial_from_dense(&DenseMatrix::identity(4), 1e-8, 16).unwrap();
        assert!(got.is_identity());
    }

    #[test]
    fn from_dense_rejects_two_entries_per_column() {
        // Hadamard-like: two entries of modulus 1/sqrt(2) per column
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let m = DenseMatrix::from_rows(&[
            vec![s, s],
            vec![s, -s],
        ]);
        let err = monomial_from_dense(&m, 1e-8, 16).unwrap_err();
        assert!(err.to_string().contains("not monomial"), "{err}");
    }

    #[test]
    fn compose_dimension_mismatch() {
        let a = MonomialMatrix::identity(2);
        let b = MonomialMatrix::identity(4);
        assert!(a.compose(&b).is_err());
    }

    #[test]
    fn exact_trace_counts_fixed_points() {
        let m = swap23_with([Phase::i(), Phase::one(), Phase::one(), Phase::new(1, 3)]);
        // fixed points 0 and 3
        let t = m.trace_exact();
        let mut expect = PhaseSum::from_phase(Phase::i());
        expect.add_term(Phase::new(1, 3), 1);
        assert_eq!(t, expect);
        assert!((m.trace() - m.to_dense().trace()).norm() < 1e-15);
    }

    #[test]
    fn kron_matches_dense_kron() {
        let m1 = swap23_with([Phase::one(), Phase::i(), Phase::minus_i(), Phase::new(1, 3)]);
        let m2 = MonomialMatrix::new(
            vec![1, 0],
            vec![Phase::new(1, 5), Phase::minus_one()],
        )
        .unwrap();
        let k = m1.kron(&m2);
        let dk = super::super::kron(&m1.to_dense(), &m2.to_dense());
        assert!(k.to_dense().max_diff(&dk) < 1e-12);
    }

    #[test]
    fn embed_pair_matches_dense_embed() {
        let m = swap23_with([Phase::one(), Phase::i(), Phase::i(), Phase::minus_one()]);
        for n in 2..=4 {
            for i in 1..n {
                let a = m.embed_pair(n, i).to_dense();
                let b = m.to_dense().embed_pair(n, i);
                assert!(a.max_diff(&b) < 1e-12, "n={n} i={i}");
            }
        }
    }
}
