//! Braid words and the representation `pi_n(sigma_i) = I^(i-1) (x) R (x)
//! I^(n-i-1)` induced by a Yang-Baxter solution.
//!
//! Letters are nonzero integers; `g > 0` is the generator `sigma_g` and
//! `g < 0` its inverse. Evaluation is left to right, and inverse letters use
//! the exact monomial inverse on the fast path.

use rand::Rng;

use crate::algebra::{DenseMatrix, MonomialMatrix, PhaseSum};
use crate::error::{Error, Result};
use crate::ybe::YbeSolution;
use num_complex::Complex64;

/// Strand limit for the exact monomial path (2^20 basis states).
pub const MONOMIAL_STRAND_LIMIT: usize = 20;
/// Strand limit for the dense float path (2^12 basis states).
pub const DENSE_STRAND_LIMIT: usize = 12;

/// A word in the braid group `B_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    n: usize,
    letters: Vec<i32>,
    exponent_sum: i64,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<i32>) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidLetter { letter: 0, n });
        }
        for &g in &letters {
            if g == 0 || g.unsigned_abs() as usize >= n {
                return Err(Error::InvalidLetter {
                    letter: g as i64,
                    n,
                });
            }
        }
        let exponent_sum = letters.iter().map(|&g| g.signum() as i64).sum();
        Ok(BraidWord {
            n,
            letters,
            exponent_sum,
        })
    }

    pub fn empty(n: usize) -> Self {
        BraidWord {
            n,
            letters: Vec::new(),
            exponent_sum: 0,
        }
    }

    /// Parse whitespace-separated signed integers, or a JSON array like
    /// `[1,-2,1]`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let trimmed = text.trim();
        let letters: Vec<i32> = if trimmed.starts_with('[') {
            serde_json::from_str(trimmed).map_err(|e| Error::Parse {
                input: text.to_string(),
                reason: e.to_string(),
            })?
        } else {
            trimmed
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<i32>().map_err(|_| Error::Parse {
                        input: tok.to_string(),
                        reason: "expected a signed integer".to_string(),
                    })
                })
                .collect::<Result<_>>()?
        };
        BraidWord::new(n, letters)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Sum of letter signs; the writhe of the closure.
    pub fn exponent_sum(&self) -> i64 {
        self.exponent_sum
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.n != other.n {
            return Err(Error::StrandMismatch(self.n, other.n));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            n: self.n,
            letters,
            exponent_sum: self.exponent_sum + other.exponent_sum,
        })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            n: self.n,
            letters: self.letters.iter().rev().map(|&g| -g).collect(),
            exponent_sum: -self.exponent_sum,
        }
    }

    /// The same letters viewed in `B_m` for `m >= n`.
    pub fn widened(&self, m: usize) -> Result<BraidWord> {
        if m < self.n {
            return Err(Error::StrandMismatch(self.n, m));
        }
        Ok(BraidWord {
            n: m,
            letters: self.letters.clone(),
            exponent_sum: self.exponent_sum,
        })
    }

    /// Markov stabilization: append `sigma_n^(sign)` viewed in `B_{n+1}`.
    pub fn stabilized(&self, positive: bool) -> BraidWord {
        let mut letters = self.letters.clone();
        let g = self.n as i32;
        letters.push(if positive { g } else { -g });
        BraidWord {
            n: self.n + 1,
            letters,
            exponent_sum: self.exponent_sum + if positive { 1 } else { -1 },
        }
    }

    /// `c * self * c^{-1}`.
    pub fn conjugated_by(&self, c: &BraidWord) -> Result<BraidWord> {
        c.concat(self)?.concat(&c.inverse())
    }
}

/// Uniform random word of length `len` (for invariance property tests).
pub fn random_word(n: usize, len: usize, rng: &mut impl Rng) -> BraidWord {
    if n < 2 {
        return BraidWord::empty(n);
    }
    let letters = (0..len)
        .map(|_| {
            let g = rng.random_range(1..n) as i32;
            if rng.random_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    BraidWord::new(n, letters).expect("generated letters are in range")
}

/// A represented braid: exact monomial when the solution has a monomial form,
/// dense floats otherwise.
#[derive(Clone, Debug)]
pub enum Rep {
    Monomial(MonomialMatrix),
    Dense(DenseMatrix),
}

impl Rep {
    pub fn dim(&self) -> usize {
        match self {
            Rep::Monomial(m) => m.dim(),
            Rep::Dense(m) => m.dim(),
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        match self {
            Rep::Monomial(m) => m.to_dense(),
            Rep::Dense(m) => m.clone(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        match self {
            Rep::Monomial(m) => m.trace(),
            Rep::Dense(m) => m.trace(),
        }
    }

    pub fn trace_exact(&self) -> Option<PhaseSum> {
        match self {
            Rep::Monomial(m) => Some(m.trace_exact()),
            Rep::Dense(_) => None,
        }
    }

    pub fn as_monomial(&self) -> Option<&MonomialMatrix> {
        match self {
            Rep::Monomial(m) => Some(m),
            Rep::Dense(_) => None,
        }
    }
}

/// Monomial generator matrices `pi_n(sigma_1..sigma_{n-1})` for a solution
/// with an exact form.
pub fn monomial_generators(sol: &YbeSolution, n: usize) -> Result<Vec<MonomialMatrix>> {
    let mono = sol.monomial().ok_or_else(|| {
        Error::NotMonomial(format!("family {} solution has no exact form", sol.family()))
    })?;
    if n > MONOMIAL_STRAND_LIMIT {
        return Err(Error::TooManyStrands {
            n,
            max: MONOMIAL_STRAND_LIMIT,
            path: "monomial",
        });
    }
    Ok((1..n).map(|i| mono.embed_pair(n, i)).collect())
}

/// Evaluate `pi_n` on a word, choosing the exact path when available.
pub fn represent(sol: &YbeSolution, word: &BraidWord) -> Result<Rep> {
    let n = word.n();
    if let Some(mono) = sol.monomial() {
        if n > MONOMIAL_STRAND_LIMIT {
            return Err(Error::TooManyStrands {
                n,
                max: MONOMIAL_STRAND_LIMIT,
                path: "monomial",
            });
        }
        let dim = 1usize << n;
        let mut gens: Vec<Option<(MonomialMatrix, MonomialMatrix)>> = vec![None; n];
        let mut acc = MonomialMatrix::identity(dim);
        for &g in word.letters() {
            let i = g.unsigned_abs() as usize;
            let entry = gens[i].get_or_insert_with(|| {
                let m = mono.embed_pair(n, i);
                let inv = m.inverse();
                (m, inv)
            });
            let factor = if g > 0 { &entry.0 } else { &entry.1 };
            acc = acc.compose(factor)?;
        }
        return Ok(Rep::Monomial(acc));
    }

    if n > DENSE_STRAND_LIMIT {
        return Err(Error::TooManyStrands {
            n,
            max: DENSE_STRAND_LIMIT,
            path: "dense",
        });
    }
    let dim = 1usize << n;
    let r = sol.dense();
    let r_inv = r.inverse()?;
    let mut gens: Vec<Option<(DenseMatrix, DenseMatrix)>> = vec![None; n];
    let mut acc = DenseMatrix::identity(dim);
    for &g in word.letters() {
        let i = g.unsigned_abs() as usize;
        let entry =
            gens[i].get_or_insert_with(|| (r.embed_pair(n, i), r_inv.embed_pair(n, i)));
        let factor = if g > 0 { &entry.0 } else { &entry.1 };
        acc = acc.mul(factor);
    }
    Ok(Rep::Dense(acc))
}

/// The standard pure braid generators
/// `A_{ij} = (sigma_{j-1} .. sigma_{i+1}) sigma_i^2 (sigma_{i+1} .. sigma_{j-1})^{-1}`
/// for `1 <= i < j <= n`; there are `n(n-1)/2` of them and they generate `P_n`.
pub fn pure_braid_generators(n: usize) -> Result<Vec<BraidWord>> {
    if n < 2 {
        return Err(Error::Unsupported(format!(
            "pure braid generators need n >= 2, got {n}"
        )));
    }
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..n {
        for j in (i + 1)..=n {
            let mut letters: Vec<i32> = ((i + 1)..j).rev().map(|g| g as i32).collect();
            letters.push(i as i32);
            letters.push(i as i32);
            letters.extend(((i + 1)..j).map(|g| -(g as i32)));
            out.push(BraidWord::new(n, letters)?);
        }
    }
    Ok(out)
}
