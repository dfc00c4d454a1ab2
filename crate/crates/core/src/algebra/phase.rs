//! Exact roots of unity and integer combinations of them.
//!
//! `Phase` stores `e^{2 pi i k/N}` as a reduced fraction `k/N`, so equality and
//! hashing are exact and multiplication never leaves the group. This is the
//! scalar of the monomial fast path: every entry of a represented braid is one
//! of these, and group closures hash them directly.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// `e^{2 pi i k/N}` with `0 <= k < N` and `gcd(k, N) = 1` after normalization
/// (so `N` is the exact multiplicative order).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PhaseRepr", into = "PhaseRepr")]
pub struct Phase {
    k: i64,
    n: i64,
}

#[derive(Serialize, Deserialize)]
struct PhaseRepr {
    k: i64,
    #[serde(rename = "N")]
    n: i64,
}

impl From<Phase> for PhaseRepr {
    fn from(p: Phase) -> Self {
        PhaseRepr { k: p.k, n: p.n }
    }
}

impl TryFrom<PhaseRepr> for Phase {
    type Error = String;
    fn try_from(r: PhaseRepr) -> Result<Self, String> {
        if r.n < 1 {
            return Err(format!("phase order must be positive, got {}", r.n));
        }
        Ok(Phase::new(r.k, r.n))
    }
}

impl Phase {
    /// The root of unity `e^{2 pi i k/n}`. Panics if `n < 1`.
    pub fn new(k: i64, n: i64) -> Self {
        assert!(n >= 1, "phase order must be positive, got {n}");
        let k = k.rem_euclid(n);
        let g = k.gcd(&n);
        Phase { k: k / g, n: n / g }
    }

    pub fn one() -> Self {
        Phase { k: 0, n: 1 }
    }

    pub fn minus_one() -> Self {
        Phase { k: 1, n: 2 }
    }

    pub fn i() -> Self {
        Phase { k: 1, n: 4 }
    }

    pub fn minus_i() -> Self {
        Phase { k: 3, n: 4 }
    }

    /// Numerator of the reduced fraction.
    pub fn numerator(&self) -> i64 {
        self.k
    }

    /// Denominator of the reduced fraction; equals the multiplicative order.
    pub fn order(&self) -> i64 {
        self.n
    }

    pub fn is_one(&self) -> bool {
        self.k == 0
    }

    /// Multiplicative inverse, which coincides with complex conjugation.
    pub fn inv(&self) -> Self {
        Phase::new(-self.k, self.n)
    }

    pub fn conj(&self) -> Self {
        self.inv()
    }

    pub fn pow(&self, e: i64) -> Self {
        // reduce the exponent first so k * e stays far from overflow
        let e = e.rem_euclid(self.n);
        Phase::new(self.k.checked_mul(e).expect("phase exponent overflow"), self.n)
    }

    /// Principal square root: `e^{2 pi i k/N} -> e^{2 pi i k/(2N)}`.
    pub fn sqrt(&self) -> Self {
        Phase::new(self.k, 2 * self.n)
    }

    /// Exponent of this phase with respect to the primitive root `e^{2 pi i/m}`.
    /// `m` must be a multiple of the order.
    pub fn exponent_in(&self, m: i64) -> i64 {
        debug_assert!(m % self.n == 0);
        self.k * (m / self.n)
    }

    /// Complex value. Multiples of a quarter turn are returned exactly so that
    /// identity-like monomials densify to clean 0/±1/±i entries.
    pub fn value(&self) -> Complex64 {
        if 4 * self.k % self.n == 0 {
            return match (4 * self.k / self.n).rem_euclid(4) {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            };
        }
        let theta = 2.0 * std::f64::consts::PI * (self.k as f64) / (self.n as f64);
        Complex64::new(theta.cos(), theta.sin())
    }

    /// Smallest-order root of unity within `tol` of `z`, searching orders up
    /// to `max_order`. Fails when `z` is off the unit circle or no root fits.
    pub fn from_complex(z: Complex64, tol: f64, max_order: i64) -> Option<Self> {
        if (z.norm() - 1.0).abs() > tol {
            return None;
        }
        let angle = z.arg() / (2.0 * std::f64::consts::PI);
        for n in 1..=max_order {
            let k = (angle * n as f64).round() as i64;
            let candidate = Phase::new(k, n);
            if (candidate.value() - z).norm() <= tol {
                return Some(candidate);
            }
        }
        None
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        let l = self.n.lcm(&rhs.n);
        Phase::new(self.k * (l / self.n) + rhs.k * (l / rhs.n), l)
    }
}

impl Ord for Phase {
    fn cmp(&self, other: &Self) -> Ordering {
        // order by angle: k1/n1 vs k2/n2
        (self.k as i128 * other.n as i128).cmp(&(other.k as i128 * self.n as i128))
    }
}

impl PartialOrd for Phase {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.k, self.n) {
            (0, 1) => write!(f, "1"),
            (1, 2) => write!(f, "-1"),
            (1, 4) => write!(f, "i"),
            (3, 4) => write!(f, "-i"),
            (k, n) => write!(f, "e2pi({k}/{n})"),
        }
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Integer linear combination of roots of unity, kept in canonical form:
/// every stored phase has angle in `[0, pi)`, with `e^{i(theta + pi)}`
/// rewritten as `-e^{i theta}`, and zero coefficients dropped. This folds all
/// order-2 relations into the coefficients, so e.g. `i + (-i)` cancels.
///
/// Used wherever an identity should be certified without floats: BMW relation
/// sides, traces on the monomial path, exact invariant values. Equality of
/// canonical forms is a sufficient certificate; deeper vanishing sums of
/// odd-order roots (such as `1 + w + w^2 = 0`) are *not* folded, and none of
/// the identities certified here need them.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PhaseSum {
    terms: BTreeMap<Phase, i64>,
}

impl PhaseSum {
    pub fn zero() -> Self {
        PhaseSum::default()
    }

    pub fn from_phase(p: Phase) -> Self {
        let mut s = PhaseSum::zero();
        s.add_term(p, 1);
        s
    }

    pub fn from_integer(c: i64) -> Self {
        let mut s = PhaseSum::zero();
        s.add_term(Phase::one(), c);
        s
    }

    pub fn add_term(&mut self, p: Phase, coeff: i64) {
        if coeff == 0 {
            return;
        }
        // canonicalize into the upper half circle: k/n >= 1/2 flips the sign
        let (p, coeff) = if 2 * p.numerator() >= p.order() {
            (p * Phase::minus_one(), -coeff)
        } else {
            (p, coeff)
        };
        let entry = self.terms.entry(p).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&p);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Phase, &i64)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = PhaseSum::zero();
        for (&p, &co) in &self.terms {
            out.add_term(p, co * c);
        }
        out
    }

    pub fn mul_phase(&self, q: Phase) -> Self {
        let mut out = PhaseSum::zero();
        for (&p, &co) in &self.terms {
            out.add_term(p * q, co);
        }
        out
    }

    pub fn value(&self) -> Complex64 {
        self.terms
            .iter()
            .map(|(p, &c)| p.value() * c as f64)
            .sum()
    }
}

impl Add<&PhaseSum> for &PhaseSum {
    type Output = PhaseSum;
    fn add(self, rhs: &PhaseSum) -> PhaseSum {
        let mut out = self.clone();
        for (&p, &c) in &rhs.terms {
            out.add_term(p, c);
        }
        out
    }
}

impl Sub<&PhaseSum> for &PhaseSum {
    type Output = PhaseSum;
    fn sub(self, rhs: &PhaseSum) -> PhaseSum {
        let mut out = self.clone();
        for (&p, &c) in &rhs.terms {
            out.add_term(p, -c);
        }
        out
    }
}

impl Mul<&PhaseSum> for &PhaseSum {
    type Output = PhaseSum;
    fn mul(self, rhs: &PhaseSum) -> PhaseSum {
        let mut out = PhaseSum::zero();
        for (&p, &c) in &self.terms {
            for (&q, &d) in &rhs.terms {
                out.add_term(p * q, c * d);
            }
        }
        out
    }
}

impl Neg for PhaseSum {
    type Output = PhaseSum;
    fn neg(self) -> PhaseSum {
        self.scale(-1)
    }
}

impl From<Phase> for PhaseSum {
    fn from(p: Phase) -> Self {
        PhaseSum::from_phase(p)
    }
}

impl fmt::Display for PhaseSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else { "+" };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else if *c < 0 {
                write!(f, "-")?;
            }
            let mag = c.abs();
            if mag != 1 || p.is_one() {
                write!(f, "{mag}")?;
                if !p.is_one() {
                    write!(f, "*")?;
                }
            }
            if !p.is_one() {
                write!(f, "{p}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PhaseSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        assert_eq!(Phase::new(5, 4), Phase::i());
        assert_eq!(Phase::new(-1, 4), Phase::minus_i());
        assert_eq!(Phase::new(2, 8), Phase::i());
        assert_eq!(Phase::new(0, 7), Phase::one());
        assert_eq!(Phase::new(6, 4), Phase::minus_one());
    }

    #[test]
    fn group_ops() {
        let p = Phase::new(1, 3);
        let q = Phase::new(1, 4);
        assert_eq!(p * p.inv(), Phase::one());
        assert_eq!((p * q).order(), 12);
        assert_eq!(p.pow(3), Phase::one());
        assert_eq!(p.pow(-1), p.inv());
        assert_eq!(Phase::minus_one().sqrt(), Phase::i());
    }

    #[test]
    fn quarter_turn_values_are_exact() {
        assert_eq!(Phase::i().value(), Complex64::new(0.0, 1.0));
        assert_eq!(Phase::minus_one().value(), Complex64::new(-1.0, 0.0));
        assert_eq!(Phase::new(3, 4).value(), Complex64::new(0.0, -1.0));
    }

    #[test]
    fn float_roundtrip_small_orders() {
        for n in 1..=360 {
            for k in 0..n {
                let p = Phase::new(k, n);
                let back = Phase::from_complex(p.value(), 1e-12, 360).unwrap();
                assert_eq!(p, back, "roundtrip failed for {k}/{n}");
            }
        }
    }

    #[test]
    fn from_complex_rejects_non_unit() {
        assert!(Phase::from_complex(Complex64::new(0.5, 0.5), 1e-9, 16).is_none());
    }

    #[test]
    fn phase_sum_cancellation() {
        let mut s = PhaseSum::from_phase(Phase::i());
        s.add_term(Phase::i(), -1);
        assert!(s.is_zero());

        let d = &PhaseSum::from_phase(Phase::new(1, 8)) - &PhaseSum::from_phase(Phase::new(1, 8));
        assert!(d.is_zero());
    }

    #[test]
    fn phase_sum_product() {
        // (1 + i)(1 - i) = 2
        let a = &PhaseSum::from_integer(1) + &PhaseSum::from_phase(Phase::i());
        let b = &PhaseSum::from_integer(1) + &PhaseSum::from_phase(Phase::minus_i());
        assert_eq!(&a * &b, PhaseSum::from_integer(2));
    }

    #[test]
    fn serde_shape() {
        let p = Phase::new(1, 3);
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, r#"{"k":1,"N":3}"#);
        let q: Phase = serde_json::from_str(&js).unwrap();
        assert_eq!(p, q);
        assert!(serde_json::from_str::<Phase>(r#"{"k":1,"N":0}"#).is_err());
    }
}
