//! Turaev-enhanced link invariants for the middle-swap family.
//!
//! An enhancement exists exactly when `gamma = +-1`. For `gamma = 1` the
//! invariant is the bare weighted trace
//!
//! ```text
//! T(w) = x^(n - e(w)) Trace(pi_n(w))
//! ```
//!
//! (`mu = xy Id` drops out of the trace); for `gamma = -1` the twisted trace
//!
//! ```text
//! T(w) = x^(n - e(w)) Trace(mu^(x n) pi_n(w)),    mu = xy diag(1, -1).
//! ```
//!
//! Conjugation invariance is trace cyclicity plus `[mu (x) mu, R] = 0` and
//! holds for every `gamma`; stabilization invariance is what singles out
//! `gamma = +-1`, and still pins `x` (positive stabilization is free, the
//! negative one costs `x^2`), which is why [`calibrate_x`] exists: the value
//! of `x` is a free formal parameter here, surfaced rather than fixed.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{DenseMatrix, Phase, PhaseSum, Scalar};
use crate::braid::{self, BraidWord, Rep};
use crate::error::{Error, Result};
use crate::tol;
use crate::ybe::{Family, YbeSolution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GammaCase {
    PlusOne,
    MinusOne,
}

/// Enhancement data `(mu, x, y)` compatible with a solution.
#[derive(Clone, Debug)]
pub struct Enhancement {
    pub mu: DenseMatrix,
    pub x: Scalar,
    pub y: Scalar,
    pub gamma_case: GammaCase,
}

impl Enhancement {
    /// Build the enhancement for a given case without consulting a solution.
    /// This is how negative controls force `mu = diag(1,-1)` onto a solution
    /// whose `gamma` admits no enhancement, and how [`calibrate_x`] re-dresses
    /// candidates.
    pub fn force(gamma_case: GammaCase, x: Scalar, y: Scalar) -> Self {
        let xy = (x * y).value();
        let mu = match gamma_case {
            GammaCase::PlusOne => DenseMatrix::diagonal(&[xy, xy]),
            GammaCase::MinusOne => DenseMatrix::diagonal(&[xy, -xy]),
        };
        Enhancement { mu, x, y, gamma_case }
    }
}

fn gamma_case_of(sol: &YbeSolution) -> Result<GammaCase> {
    match sol.family() {
        Family::R2 => {
            let gamma = sol.gamma().expect("R2 always has gamma");
            match gamma {
                Scalar::Exact(p) if p == Phase::one() => Ok(GammaCase::PlusOne),
                Scalar::Exact(p) if p == Phase::minus_one() => Ok(GammaCase::MinusOne),
                Scalar::Exact(p) => Err(Error::NoEnhancement(p.to_string())),
                Scalar::Approx(z) => {
                    if (z - Complex64::new(1.0, 0.0)).norm() < tol::UNIT_MODULUS {
                        Ok(GammaCase::PlusOne)
                    } else if (z + Complex64::new(1.0, 0.0)).norm() < tol::UNIT_MODULUS {
                        Ok(GammaCase::MinusOne)
                    } else {
                        Err(Error::NoEnhancement(format!("{z}")))
                    }
                }
            }
        }
        // the corner-swap families have both middle diagonal entries equal to
        // 1: the partial trace of R^(+-1) is the identity, exactly the
        // gamma = 1 situation
        Family::R3 | Family::R3Prime => Ok(GammaCase::PlusOne),
        f => Err(Error::Unsupported(format!(
            "enhancements are defined for R2/R3/R3', not {f}"
        ))),
    }
}

/// The enhancement for a solution, or failure when `gamma` is not `+-1`.
pub fn enhancement_for(sol: &YbeSolution, x: Scalar, y: Scalar) -> Result<Enhancement> {
    Ok(Enhancement::force(gamma_case_of(sol)?, x, y))
}

/// `T(w) = x^(n-e) Trace(mu^(x n) pi_n(w))`, with the `gamma = 1` trace taken
/// bare. On the monomial path the trace is the signed sum of phases over the
/// fixed points of the permutation part.
pub fn turaev_invariant(sol: &YbeSolution, enh: &Enhancement, w: &BraidWord) -> Result<Complex64> {
    let rep = braid::represent(sol, w)?;
    let n = w.n() as i64;
    let e = w.exponent_sum();
    let xpow = enh.x.value().powi((n - e) as i32);
    let tr = match enh.gamma_case {
        GammaCase::PlusOne => rep.trace(),
        GammaCase::MinusOne => {
            let xy = (enh.x * enh.y).value();
            let signed = match &rep {
                Rep::Monomial(m) => {
                    let mut t = Complex64::new(0.0, 0.0);
                    for (j, &p) in m.perm().iter().enumerate() {
                        if p as usize == j {
                            let v = m.phases()[j].value();
                            t += if j.count_ones() & 1 == 1 { -v } else { v };
                        }
                    }
                    t
                }
                Rep::Dense(m) => {
                    let mut t = Complex64::new(0.0, 0.0);
                    for j in 0..m.dim() {
                        let v = m.get(j, j);
                        t += if j.count_ones() & 1 == 1 { -v } else { v };
                    }
                    t
                }
            };
            signed * xy.powi(n as i32)
        }
    };
    Ok(xpow * tr)
}

/// Exact form of the invariant when the solution is monomial and `x`, `y` are
/// exact phases; `None` when any input is float-valued.
pub fn turaev_invariant_exact(
    sol: &YbeSolution,
    enh: &Enhancement,
    w: &BraidWord,
) -> Result<Option<PhaseSum>> {
    let (Some(x), Some(y)) = (enh.x.exact_phase(), enh.y.exact_phase()) else {
        return Ok(None);
    };
    let rep = braid::represent(sol, w)?;
    let Some(m) = rep.as_monomial() else {
        return Ok(None);
    };
    let n = w.n() as i64;
    let e = w.exponent_sum();
    let mut sum = PhaseSum::zero();
    for (j, &p) in m.perm().iter().enumerate() {
        if p as usize == j {
            let sign = match enh.gamma_case {
                GammaCase::PlusOne => 1,
                GammaCase::MinusOne => {
                    if j.count_ones() & 1 == 1 {
                        -1
                    } else {
                        1
                    }
                }
            };
            sum.add_term(m.phases()[j], sign);
        }
    }
    let mut scale = x.pow(n - e);
    if enh.gamma_case == GammaCase::MinusOne {
        scale = scale * (x * y).pow(n);
    }
    Ok(Some(sum.mul_phase(scale)))
}

/// Markov-move test report.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct MarkovReport {
    pub conjugation_ok: bool,
    pub stabilization_ok: bool,
    pub max_residual: f64,
}

impl MarkovReport {
    pub fn all_ok(&self) -> bool {
        self.conjugation_ok && self.stabilization_ok
    }
}

/// Check `T(c w c^{-1}) = T(w)` for `trials` random conjugators and
/// `T(w sigma_n^{+-1}) = T(w)` for both stabilizations, at residual
/// [`tol::INVARIANCE`].
pub fn markov_invariance_test(
    sol: &YbeSolution,
    enh: &Enhancement,
    w: &BraidWord,
    trials: usize,
    rng: &mut impl Rng,
) -> Result<MarkovReport> {
    let base = turaev_invariant(sol, enh, w)?;
    let mut max_residual = 0.0f64;

    let mut conjugation_ok = true;
    for _ in 0..trials {
        let len = rng.random_range(1..=6);
        let c = braid::random_word(w.n(), len, rng);
        let t = turaev_invariant(sol, enh, &w.conjugated_by(&c)?)?;
        let r = (t - base).norm();
        max_residual = max_residual.max(r);
        if r >= tol::INVARIANCE {
            conjugation_ok = false;
        }
    }

    let mut stabilization_ok = true;
    for positive in [true, false] {
        let t = turaev_invariant(sol, enh, &w.stabilized(positive))?;
        let r = (t - base).norm();
        max_residual = max_residual.max(r);
        if r >= tol::INVARIANCE {
            stabilization_ok = false;
        }
    }

    Ok(MarkovReport {
        conjugation_ok,
        stabilization_ok,
        max_residual,
    })
}

/// Result of an empirical `x` calibration.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Calibration {
    /// Exact roots of unity (order up to the requested cap) that pass every
    /// Markov check on the test words.
    pub admissible: Vec<Phase>,
    /// True when every candidate *and* generic unit-modulus probes pass, i.e.
    /// the provided words do not constrain `x` at all.
    pub unconstrained: bool,
}

impl std::fmt::Display for Calibration {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.unconstrained {
            return write!(f, "unconstrained by inputs");
        }
        write!(f, "admissible x: ")?;
        for (i, p) in self.admissible.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Scan all roots of unity of order `<= max_order` (plus a few generic
/// probes) for values of `x` under which the invariant passes the Markov
/// tests on every supplied word.
pub fn calibrate_x(
    sol: &YbeSolution,
    enh: &Enhancement,
    words: &[BraidWord],
    max_order: i64,
    rng: &mut impl Rng,
) -> Result<Calibration> {
    if words.is_empty() {
        return Err(Error::EmptyInput("test words"));
    }
    fn passes(
        sol: &YbeSolution,
        enh: &Enhancement,
        x: Scalar,
        words: &[BraidWord],
        rng: &mut impl Rng,
    ) -> Result<bool> {
        let cand = Enhancement::force(enh.gamma_case, x, enh.y);
        for w in words {
            let report = markov_invariance_test(sol, &cand, w, 4, rng)?;
            if !report.all_ok() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    let mut candidates = Vec::new();
    for n in 1..=max_order {
        for k in 0..n {
            let p = Phase::new(k, n);
            if p.order() == n {
                candidates.push(p);
            }
        }
    }
    let mut admissible = Vec::new();
    for &p in &candidates {
        if passes(sol, enh, p.into(), words, rng)? {
            admissible.push(p);
        }
    }

    let mut probes_pass = true;
    for _ in 0..3 {
        let theta = 2.0 * std::f64::consts::PI * rng.random::<f64>();
        let x = Complex64::from_polar(1.0, theta);
        if !passes(sol, enh, x.into(), words, rng)? {
            probes_pass = false;
            break;
        }
    }

    let unconstrained = probes_pass && admissible.len() == candidates.len();
    Ok(Calibration {
        admissible,
        unconstrained,
    })
}

/// `x` slot of a G2 specialization: pinned or free.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum XSpec {
    Free,
    Value(Complex64),
}

impl Serialize for XSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            XSpec::Free => "free".serialize(s),
            XSpec::Value(z) => [z.re, z.im].serialize(s),
        }
    }
}

/// One row of the G2 specialization table; `x` stands for `sqrt(alpha beta)`
/// and `t` is the skein variable.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct G2Specialization {
    pub case_label: &'static str,
    #[serde(with = "t_serde")]
    pub t: Complex64,
    pub x: XSpec,
}

mod t_serde {
    use num_complex::Complex64;
    use serde::{Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }
}

/// The three-case table of `(t, x)` pairs under which the four-eigenvalue
/// solutions satisfy the G2 skein relation.
pub fn g2_specializations() -> Vec<G2Specialization> {
    let i = Complex64::new(0.0, 1.0);
    let one = Complex64::new(1.0, 0.0);
    let t_plus = Complex64::new((1.0 + 3.0f64.sqrt()) / 2.0, 0.0);
    let t_minus = Complex64::new((1.0 - 3.0f64.sqrt()) / 2.0, 0.0);
    vec![
        G2Specialization {
            case_label: "t=1",
            t: one,
            x: XSpec::Free,
        },
        G2Specialization {
            case_label: "t=+-i",
            t: i,
            x: XSpec::Value(-i),
        },
        G2Specialization {
            case_label: "t=+-i",
            t: -i,
            x: XSpec::Value(i),
        },
        G2Specialization {
            case_label: "t=+-i",
            t: i,
            x: XSpec::Value(i),
        },
        G2Specialization {
            case_label: "t=+-i",
            t: -i,
            x: XSpec::Value(-i),
        },
        G2Specialization {
            case_label: "t=(1+-sqrt3)/2",
            t: t_plus,
            x: XSpec::Value(-t_plus),
        },
        G2Specialization {
            case_label: "t=(1+-sqrt3)/2",
            t: t_plus,
            x: XSpec::Value(t_plus - one),
        },
        G2Specialization {
            case_label: "t=(1+-sqrt3)/2",
            t: t_minus,
            x: XSpec::Value(-t_minus),
        },
        G2Specialization {
            case_label: "t=(1+-sqrt3)/2",
            t: t_minus,
            x: XSpec::Value(t_minus - one),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ybe::SolutionSpec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r2(a: Phase, b: Phase, g: Phase) -> YbeSolution {
        SolutionSpec::r2(a.into(), b.into(), g.into()).build().unwrap()
    }

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    #[test]
    fn enhancement_cases() {
        let s = r2(Phase::one(), Phase::one(), Phase::one());
        let e = enhancement_for(&s, Scalar::one(), Scalar::one()).unwrap();
        assert_eq!(e.gamma_case, GammaCase::PlusOne);
        assert_eq!(e.mu.max_diff(&DenseMatrix::identity(2)), 0.0);

        let s = r2(Phase::one(), Phase::one(), Phase::minus_one());
        let e = enhancement_for(&s, Scalar::one(), Scalar::one()).unwrap();
        assert_eq!(e.gamma_case, GammaCase::MinusOne);
        let expect = DenseMatrix::diagonal(&[Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]);
        assert_eq!(e.mu.max_diff(&expect), 0.0);

        let s = r2(Phase::one(), Phase::one(), Phase::i());
        let err = enhancement_for(&s, Scalar::one(), Scalar::one()).unwrap_err();
        assert!(matches!(err, Error::NoEnhancement(_)), "{err}");
    }

    #[test]
    fn unknot_values() {
        // empty word in B_1: gamma = 1 gives x * Trace(I_2) = 2x
        let s = r2(Phase::one(), Phase::one(), Phase::one());
        let e = enhancement_for(&s, Scalar::one(), Scalar::one()).unwrap();
        let t = turaev_invariant(&s, &e, &BraidWord::empty(1)).unwrap();
        assert!((t - Complex64::new(2.0, 0.0)).norm() < 1e-12);

        // gamma = -1: Trace(mu) = 0
        let s = r2(Phase::one(), Phase::one(), Phase::minus_one());
        let e = enhancement_for(&s, Scalar::one(), Scalar::one()).unwrap();
        let t = turaev_invariant(&s, &e, &BraidWord::empty(1)).unwrap();
        assert!(t.norm() < 1e-12);
    }

    #[test]
    fn single_crossing_matches_stabilized_unknot() {
        // T("1" in B_2) = x * Trace(R) = 2x equals the B_1 value 2x, for
        // generic x (positive stabilization is x-free when gamma = 1)
        let s = r2(Phase::one(), Phase::one(), Phase::one());
        let x: Scalar = Complex64::from_polar(1.0, 0.8112).into();
        let e = enhancement_for(&s, x, Scalar::one()).unwrap();
        let b2 = turaev_invariant(&s, &e, &BraidWord::parse("1", 2).unwrap()).unwrap();
        let b1 = turaev_invariant(&s, &e, &BraidWord::empty(1)).unwrap();
        assert!((b2 - b1).norm() < 1e-12);
        assert!((b2 - x.value() * 2.0).norm() < 1e-12);
    }

    #[test]
    fn gamma_minus_one_single_crossing_is_zero() {
        let s = r2(Phase::one(), Phase::one(), Phase::minus_one());
        let e = enhancement_for(&s, Scalar::one(), Scalar::one()).unwrap();
        let t = turaev_invariant(&s, &e, &BraidWord::parse("1", 2).unwrap()).unwrap();
        assert!(t.norm() < 1e-12, "Trace((mu x mu) R) = {t}");
    }

    #[test]
    fn markov_passes_for_enhanced_cases() {
        let mut rng = rng();
        let s = r2(Phase::one(), Phase::one(), Phase::one());
        let e = enhancement_for(&s, Scalar::one(), Scalar::one()).unwrap();
        let w = BraidWord::parse("1 1", 2).unwrap();
        let report = markov_invariance_test(&s, &e, &w, 20, &mut rng).unwrap();
        assert!(report.all_ok(), "{report:?}");

        let s = r2(Phase::one(), Phase::one(), Phase::minus_one());
        let e = enhancement_for(&s, Scalar::one(), Scalar::one()).unwrap();
        let w = BraidWord::parse("1 -2 1", 3).unwrap();
        let report = markov_invariance_test(&s, &e, &w, 20, &mut rng).unwrap();
        assert!(report.all_ok(), "{report:?}");
    }

    #[test]
    fn forced_mu_on_gamma_i_fails_stabilization() {
        let mut rng = rng();
        let s = r2(Phase::one(), Phase::one(), Phase::i());
        let e = Enhancement::force(GammaCase::MinusOne, Scalar::one(), Scalar::one());
        let w = BraidWord::parse("1", 2).unwrap();
        let report = markov_invariance_test(&s, &e, &w, 5, &mut rng).unwrap();
        assert!(!report.stabilization_ok);
        assert!(report.max_residual > 1e-3, "{report:?}");
    }

    #[test]
    fn calibration_finds_sign_constraint() {
        let mut rng = rng();
        let s = r2(Phase::one(), Phase::one(), Phase::one());
        let e = enhancement_for(&s, Scalar::one(), Scalar::one()).unwrap();
        let words = vec![BraidWord::parse("1", 2).unwrap()];
        let cal = calibrate_x(&s, &e, &words, 4, &mut rng).unwrap();
        assert!(!cal.unconstrained);
        assert_eq!(cal.admissible, vec![Phase::one(), Phase::minus_one()]);
    }

    #[test]
    fn calibration_unconstrained_when_values_vanish() {
        let mut rng = rng();
        let s = r2(Phase::one(), Phase::one(), Phase::minus_one());
        let e = enhancement_for(&s, Scalar::one(), Scalar::one()).unwrap();
        let words = vec![BraidWord::parse("1", 2).unwrap()];
        let cal = calibrate_x(&s, &e, &words, 4, &mut rng).unwrap();
        assert!(cal.unconstrained, "{cal}");
        assert_eq!(format!("{cal}"), "unconstrained by inputs");
    }

    #[test]
    fn calibration_rejects_empty_words() {
        let mut rng = rng();
        let s = r2(Phase::one(), Phase::one(), Phase::one());
        let e = enhancement_for(&s, Scalar::one(), Scalar::one()).unwrap();
        assert!(calibrate_x(&s, &e, &[], 4, &mut rng).is_err());
    }

    #[test]
    fn exact_invariant_matches_float() {
        let s = r2(Phase::i(), Phase::i(), Phase::minus_one());
        let e = enhancement_for(&s, Phase::minus_one().into(), Phase::minus_one().into()).unwrap();
        for text in ["1 1 1", "1 -2 1 2", ""] {
            let w = BraidWord::parse(text, 3).unwrap();
            let exact = turaev_invariant_exact(&s, &e, &w).unwrap().unwrap();
            let float = turaev_invariant(&s, &e, &w).unwrap();
            assert!((exact.value() - float).norm() < 1e-10, "word {text:?}");
        }
    }

    #[test]
    fn g2_table_shape() {
        let table = g2_specializations();
        assert_eq!(table.len(), 9);
        assert_eq!(table[0].case_label, "t=1");
        assert_eq!(table[0].x, XSpec::Free);
        assert!((table[0].t - Complex64::new(1.0, 0.0)).norm() == 0.0);

        // t = i, x = -i
        assert!((table[1].t - Complex64::new(0.0, 1.0)).norm() == 0.0);
        assert_eq!(table[1].x, XSpec::Value(Complex64::new(0.0, -1.0)));

        // t = (1+sqrt3)/2, x = -t
        let tp = (1.0 + 3.0f64.sqrt()) / 2.0;
        assert!((table[5].t - Complex64::new(tp, 0.0)).norm() < 1e-15);
        assert_eq!(table[5].x, XSpec::Value(Complex64::new(-tp, 0.0)));

        assert_eq!(table.iter().filter(|r| r.case_label == "t=+-i").count(), 4);
        assert_eq!(
            table
                .iter()
                .filter(|r| r.case_label == "t=(1+-sqrt3)/2")
                .count(),
            4
        );
    }

    #[test]
    fn mu_tensor_commutes_with_representation() {
        let s = r2(Phase::new(1, 8), Phase::new(3, 8), Phase::minus_one());
        let e = enhancement_for(&s, Scalar::one(), Scalar::one()).unwrap();
        let n = 3;
        let mut mu_n = DenseMatrix::identity(1);
        for _ in 0..n {
            mu_n = crate::algebra::kron(&mu_n, &e.mu);
        }
        let mut rng = rng();
        for _ in 0..10 {
            let w = braid::random_word(n, 6, &mut rng);
            let rep = braid::represent(&s, &w).unwrap().to_dense();
            let res = mu_n.mul(&rep).max_diff(&rep.mul(&mu_n));
            assert!(res < 1e-10, "residual {res}");
        }
    }
}
