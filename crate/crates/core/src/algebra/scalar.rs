//! A scalar that is either an exact root of unity or a complex float.
//!
//! Family parameters keep their exact form whenever the user supplied one, so
//! the monomial path stays available; anything else degrades to `f64`.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::Phase;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "ScalarRepr", into = "ScalarRepr")]
pub enum Scalar {
    Exact(Phase),
    Approx(Complex64),
}

/// JSON form: exact phases as `{"k":..,"N":..}`, floats as `[re, im]`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Exact(Phase),
    Approx([f64; 2]),
}

impl From<Scalar> for ScalarRepr {
    fn from(s: Scalar) -> Self {
        match s {
            Scalar::Exact(p) => ScalarRepr::Exact(p),
            Scalar::Approx(z) => ScalarRepr::Approx([z.re, z.im]),
        }
    }
}

impl From<ScalarRepr> for Scalar {
    fn from(r: ScalarRepr) -> Self {
        match r {
            ScalarRepr::Exact(p) => Scalar::Exact(p),
            ScalarRepr::Approx([re, im]) => Scalar::Approx(Complex64::new(re, im)),
        }
    }
}

impl Scalar {
    pub fn one() -> Self {
        Scalar::Exact(Phase::one())
    }

    pub fn value(&self) -> Complex64 {
        match self {
            Scalar::Exact(p) => p.value(),
            Scalar::Approx(z) => *z,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn exact_phase(&self) -> Option<Phase> {
        match self {
            Scalar::Exact(p) => Some(*p),
            Scalar::Approx(_) => None,
        }
    }

    pub fn modulus(&self) -> f64 {
        match self {
            Scalar::Exact(_) => 1.0,
            Scalar::Approx(z) => z.norm(),
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            Scalar::Exact(p) => Scalar::Exact(p.conj()),
            Scalar::Approx(z) => Scalar::Approx(z.conj()),
        }
    }

    pub fn inv(&self) -> Self {
        match self {
            Scalar::Exact(p) => Scalar::Exact(p.inv()),
            Scalar::Approx(z) => Scalar::Approx(z.inv()),
        }
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        match self {
            Scalar::Exact(p) => Scalar::Exact(p.sqrt()),
            Scalar::Approx(z) => Scalar::Approx(z.sqrt()),
        }
    }

    pub fn powi(&self, e: i64) -> Self {
        match self {
            Scalar::Exact(p) => Scalar::Exact(p.pow(e)),
            Scalar::Approx(z) => Scalar::Approx(z.powi(e as i32)),
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(p), Scalar::Exact(q)) => Scalar::Exact(p * q),
            (a, b) => Scalar::Approx(a.value() * b.value()),
        }
    }
}

impl From<Phase> for Scalar {
    fn from(p: Phase) -> Self {
        Scalar::Exact(p)
    }
}

impl From<Complex64> for Scalar {
    fn from(z: Complex64) -> Self {
        Scalar::Approx(z)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(p) => write!(f, "{p}"),
            Scalar::Approx(z) => write!(f, "{}+{}i", z.re, z.im),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serde_untagged() {
        let e: Scalar = Phase::i().into();
        assert_eq!(serde_json::to_string(&e).unwrap(), r#"{"k":1,"N":4}"#);
        let a: Scalar = Complex64::new(0.5, -0.25).into();
        assert_eq!(serde_json::to_string(&a).unwrap(), "[0.5,-0.25]");
        let round: Scalar = serde_json::from_str(r#"{"k":1,"N":4}"#).unwrap();
        assert!(round.is_exact());
        let round: Scalar = serde_json::from_str("[0.5,-0.25]").unwrap();
        assert!(!round.is_exact());
    }

    #[test]
    fn mixed_product_degrades() {
        let p: Scalar = Phase::i().into();
        let z: Scalar = Complex64::new(0.0, 1.0).into();
        assert!((p * p).is_exact());
        assert!(!(p * z).is_exact());
        assert!(((p * z).value() - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    }
}
