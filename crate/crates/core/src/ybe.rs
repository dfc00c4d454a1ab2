//! The five families of 4x4 unitary Yang-Baxter solutions and their
//! parameter restrictions.
//!
//! Every solution has the shape `k * A * R_base * A^{-1}` with `|k| = 1`,
//! `A = Q (x) Q`, and `R_base` one of
//!
//! ```text
//! R0 = Id
//! R1 = (1/sqrt 2) [[1,0,0,1],[0,1,-1,0],[0,1,1,0],[-1,0,0,1]]
//! R2 = [[1,0,0,0],[0,0,a,0],[0,b,0,0],[0,0,0,g]]      |a| = |b| = |g| = 1
//! R3 = [[0,0,0,a],[0,1,0,0],[0,0,1,0],[b,0,0,0]]      |ab| = 1
//! R3' = same shape as R3, a and b computed from Q
//! ```
//!
//! The conjugator restriction common to R1/R2/R3 makes the columns of `Q`
//! orthogonal: `c = -a * conj(b) / conj(d)`, equivalently `conj(a) b +
//! conj(c) d = 0`, so that `Q^dagger Q` is diagonal and conjugation by
//! `Q (x) Q` preserves unitarity. (Stated with a bare `d` in the source
//! material; only the conjugated form keeps `k A R A^{-1}` unitary, which the
//! 100-draw family sweeps check.) R1 additionally needs `|a| = |d|`, R3 ties
//! `|a|, |b|` to `(|d|/|a|)^2`, and R3' is the complementary case where the
//! columns of `Q` are *not* orthogonal and both corner entries are determined
//! by `Q`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{kron, DenseMatrix, MonomialMatrix, Phase, Scalar};
use crate::error::{Error, Result};
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    R0,
    R1,
    R2,
    R3,
    #[serde(rename = "R3'")]
    R3Prime,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::R0 => write!(f, "R0"),
            Family::R1 => write!(f, "R1"),
            Family::R2 => write!(f, "R2"),
            Family::R3 => write!(f, "R3"),
            Family::R3Prime => write!(f, "R3'"),
        }
    }
}

impl Family {
    fn name(&self) -> &'static str {
        match self {
            Family::R0 => "R0",
            Family::R1 => "R1",
            Family::R2 => "R2",
            Family::R3 => "R3",
            Family::R3Prime => "R3'",
        }
    }
}

mod cx_serde {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

mod cx_opt_serde {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Option<Complex64>, s: S) -> Result<S::Ok, S::Error> {
        z.map(|z| [z.re, z.im]).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Complex64>, D::Error> {
        Ok(Option::<[f64; 2]>::deserialize(d)?.map(|[re, im]| Complex64::new(re, im)))
    }
}

/// Conjugator input. For R0/R1/R2/R3 the entry `c` is *constructed* from
/// `(a, b, d)` (supplying it is allowed but it must agree); for R3' all four
/// entries are free and `c` is required.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QInput {
    #[serde(with = "cx_serde")]
    pub a: Complex64,
    #[serde(with = "cx_serde")]
    pub b: Complex64,
    #[serde(default, with = "cx_opt_serde", skip_serializing_if = "Option::is_none")]
    pub c: Option<Complex64>,
    #[serde(with = "cx_serde")]
    pub d: Complex64,
}

impl QInput {
    pub fn constrained(a: Complex64, b: Complex64, d: Complex64) -> Self {
        QInput { a, b, c: None, d }
    }

    pub fn full(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        QInput { a, b, c: Some(c), d }
    }
}

/// Serializable description of a solution; the JSON object
/// `{family, alpha, beta, gamma, k, Q}` with exact phases as `{k, N}` pairs
/// and floats as `[re, im]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionSpec {
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Scalar>,
    #[serde(default = "Scalar::one")]
    pub k: Scalar,
    #[serde(default, rename = "Q", skip_serializing_if = "Option::is_none")]
    pub q: Option<QInput>,
}

impl SolutionSpec {
    pub fn r0() -> Self {
        SolutionSpec {
            family: Family::R0,
            alpha: None,
            beta: None,
            gamma: None,
            k: Scalar::one(),
            q: None,
        }
    }

    pub fn r1() -> Self {
        SolutionSpec {
            family: Family::R1,
            ..Self::r0()
        }
    }

    pub fn r2(alpha: Scalar, beta: Scalar, gamma: Scalar) -> Self {
        SolutionSpec {
            family: Family::R2,
            alpha: Some(alpha),
            beta: Some(beta),
            gamma: Some(gamma),
            ..Self::r0()
        }
    }

    pub fn r3(alpha: Scalar, beta: Scalar) -> Self {
        SolutionSpec {
            family: Family::R3,
            alpha: Some(alpha),
            beta: Some(beta),
            ..Self::r0()
        }
    }

    pub fn r3_prime(q: QInput) -> Self {
        SolutionSpec {
            family: Family::R3Prime,
            q: Some(q),
            ..Self::r0()
        }
    }

    pub fn with_k(mut self, k: Scalar) -> Self {
        self.k = k;
        self
    }

    pub fn with_q(mut self, q: QInput) -> Self {
        self.q = Some(q);
        self
    }

    pub fn build(&self) -> Result<YbeSolution> {
        YbeSolution::build(self)
    }
}

/// A validated member of one of the five families, carrying the dense 4x4
/// form and, when the parameters are exact phases and no conjugator is
/// present, an exact monomial form.
#[derive(Clone, Debug)]
pub struct YbeSolution {
    family: Family,
    alpha: Option<Scalar>,
    beta: Option<Scalar>,
    gamma: Option<Scalar>,
    k: Scalar,
    q: Option<DenseMatrix>,
    dense: DenseMatrix,
    monomial: Option<MonomialMatrix>,
}

/// Residuals reported by [`YbeSolution::validate`]; reports, never fails.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ybe_residual: f64,
    pub unitarity_residual: f64,
    pub braid_rep_residual: f64,
}

impl ValidationReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.ybe_residual < tol && self.unitarity_residual < tol && self.braid_rep_residual < tol
    }
}

/// Spectrum of the 4x4 solution plus the number of distinct values.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EigenProfile {
    pub values: Vec<Complex64>,
    pub distinct: usize,
}

fn restriction(family: Family, reason: impl Into<String>) -> Error {
    Error::ParameterRestriction {
        family: family.name(),
        reason: reason.into(),
    }
}

fn require_unit(family: Family, name: &str, s: &Scalar) -> Result<()> {
    if (s.modulus() - 1.0).abs() > tol::UNIT_MODULUS {
        return Err(restriction(
            family,
            format!("{name} must have unit modulus, |{name}| = {}", s.modulus()),
        ));
    }
    Ok(())
}

fn require_absent(family: Family, name: &str, s: &Option<Scalar>) -> Result<()> {
    if s.is_some() {
        return Err(restriction(
            family,
            format!("{name} is not a free parameter of this family"),
        ));
    }
    Ok(())
}

struct ResolvedQ {
    matrix: DenseMatrix,
    alpha_beta_r3p: Option<(Complex64, Complex64)>,
}

/// Resolve and validate the conjugator for the given family. `None` input
/// (or an explicitly-identity `Q`) means `A = I`.
fn resolve_q(family: Family, q: &Option<QInput>) -> Result<Option<ResolvedQ>> {
    let Some(q) = q else {
        if family == Family::R3Prime {
            return Err(restriction(
                family,
                "a conjugator Q with all four entries is required",
            ));
        }
        return Ok(None);
    };
    let (a, b, d) = (q.a, q.b, q.d);
    let scale = a.norm().max(b.norm()).max(d.norm()).max(1e-30);

    if family == Family::R3Prime {
        let Some(c) = q.c else {
            return Err(restriction(family, "entry c of Q is required"));
        };
        // non-orthogonal columns: w = a conj(b) + c conj(d) must not vanish
        let w = a * b.conj() + c * d.conj();
        if w.norm() < tol::UNIT_MODULUS * scale {
            return Err(restriction(
                family,
                "Q has orthogonal columns (c = -a conj(b)/conj(d)); that is the R3 case",
            ));
        }
        let det = a * d - b * c;
        if det.norm() < 1e-12 * scale * scale {
            return Err(Error::SingularQ);
        }
        let n1 = a.norm_sqr() + c.norm_sqr();
        let n2 = b.norm_sqr() + d.norm_sqr();
        let alpha = n2 * w.conj() / (n1 * w);
        let beta = n1 * w / (n2 * w.conj());
        let matrix = DenseMatrix::from_rows(&[vec![a, b], vec![c, d]]);
        return Ok(Some(ResolvedQ {
            matrix,
            alpha_beta_r3p: Some((alpha, beta)),
        }));
    }

    if d.norm() < 1e-12 * scale {
        return Err(restriction(family, "entry d of Q must be nonzero"));
    }
    let c = -a * b.conj() / d.conj();
    if let Some(c_given) = q.c {
        if (c_given - c).norm() > 1e-8 * (1.0 + c.norm()) {
            return Err(restriction(
                family,
                "entry c of Q must equal -a conj(b)/conj(d)",
            ));
        }
    }
    if family == Family::R1 && (a.norm() - d.norm()).abs() > tol::UNIT_MODULUS * scale {
        return Err(restriction(family, "|a| = |d| is required"));
    }
    let det = a * d - b * c;
    if det.norm() < 1e-12 * scale * scale {
        return Err(Error::SingularQ);
    }
    let matrix = DenseMatrix::from_rows(&[vec![a, b], vec![c, d]]);
    if matrix.max_diff(&DenseMatrix::identity(2)) == 0.0 {
        return Ok(None);
    }
    Ok(Some(ResolvedQ {
        matrix,
        alpha_beta_r3p: None,
    }))
}

fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

impl YbeSolution {
    pub fn build(spec: &SolutionSpec) -> Result<Self> {
        let family = spec.family;
        require_unit(family, "k", &spec.k)?;
        let resolved = resolve_q(family, &spec.q)?;

        let (alpha, beta, gamma) = match family {
            Family::R0 | Family::R1 => {
                require_absent(family, "alpha", &spec.alpha)?;
                require_absent(family, "beta", &spec.beta)?;
                require_absent(family, "gamma", &spec.gamma)?;
                (None, None, None)
            }
            Family::R2 => {
                let (Some(alpha), Some(beta), Some(gamma)) = (spec.alpha, spec.beta, spec.gamma)
                else {
                    return Err(restriction(family, "alpha, beta, gamma are all required"));
                };
                require_unit(family, "alpha", &alpha)?;
                require_unit(family, "beta", &beta)?;
                require_unit(family, "gamma", &gamma)?;
                (Some(alpha), Some(beta), Some(gamma))
            }
            Family::R3 => {
                require_absent(family, "gamma", &spec.gamma)?;
                let (Some(alpha), Some(beta)) = (spec.alpha, spec.beta) else {
                    return Err(restriction(family, "alpha and beta are required"));
                };
                let prod = alpha.modulus() * beta.modulus();
                if (prod - 1.0).abs() > tol::UNIT_MODULUS {
                    return Err(restriction(family, format!("|alpha beta| = {prod}, must be 1")));
                }
                let ratio = match &resolved {
                    Some(r) => {
                        let (qa, qd) = (r.matrix.get(0, 0).norm(), r.matrix.get(1, 1).norm());
                        if qa < 1e-12 {
                            return Err(restriction(family, "entry a of Q must be nonzero"));
                        }
                        (qd / qa).powi(2)
                    }
                    None => 1.0,
                };
                if (alpha.modulus() - ratio).abs() > tol::UNIT_MODULUS * (1.0 + ratio) {
                    return Err(restriction(
                        family,
                        format!("|alpha| = {} but (|d|/|a|)^2 = {ratio}", alpha.modulus()),
                    ));
                }
                (Some(alpha), Some(beta), None)
            }
            Family::R3Prime => {
                require_absent(family, "alpha", &spec.alpha)?;
                require_absent(family, "beta", &spec.beta)?;
                require_absent(family, "gamma", &spec.gamma)?;
                let (a, b) = resolved
                    .as_ref()
                    .and_then(|r| r.alpha_beta_r3p)
                    .expect("resolve_q computes alpha, beta for R3'");
                (Some(Scalar::Approx(a)), Some(Scalar::Approx(b)), None)
            }
        };

        let base = Self::base_matrix(family, &alpha, &beta, &gamma);
        let kv = spec.k.value();
        let (dense, q_matrix) = match resolved {
            Some(r) => {
                let a_big = kron(&r.matrix, &r.matrix);
                let a_inv = a_big.inverse()?;
                (a_big.mul(&base).mul(&a_inv).scale(kv), Some(r.matrix))
            }
            None => (base.scale(kv), None),
        };

        let monomial = if q_matrix.is_none() {
            Self::monomial_form(family, &alpha, &beta, &gamma, &spec.k)
        } else {
            None
        };

        Ok(YbeSolution {
            family,
            alpha,
            beta,
            gamma,
            k: spec.k,
            q: q_matrix,
            dense,
            monomial,
        })
    }

    fn base_matrix(
        family: Family,
        alpha: &Option<Scalar>,
        beta: &Option<Scalar>,
        gamma: &Option<Scalar>,
    ) -> DenseMatrix {
        let zero = c64(0.0);
        let one = c64(1.0);
        match family {
            Family::R0 => DenseMatrix::identity(4),
            Family::R1 => {
                let s = c64(std::f64::consts::FRAC_1_SQRT_2);
                DenseMatrix::from_rows(&[
                    vec![s, zero, zero, s],
                    vec![zero, s, -s, zero],
                    vec![zero, s, s, zero],
                    vec![-s, zero, zero, s],
                ])
            }
            Family::R2 => {
                let a = alpha.unwrap().value();
                let b = beta.unwrap().value();
                let g = gamma.unwrap().value();
                DenseMatrix::from_rows(&[
                    vec![one, zero, zero, zero],
                    vec![zero, zero, a, zero],
                    vec![zero, b, zero, zero],
                    vec![zero, zero, zero, g],
                ])
            }
            Family::R3 | Family::R3Prime => {
                let a = alpha.unwrap().value();
                let b = beta.unwrap().value();
                DenseMatrix::from_rows(&[
                    vec![zero, zero, zero, a],
                    vec![zero, one, zero, zero],
                    vec![zero, zero, one, zero],
                    vec![b, zero, zero, zero],
                ])
            }
        }
    }

    fn monomial_form(
        family: Family,
        alpha: &Option<Scalar>,
        beta: &Option<Scalar>,
        gamma: &Option<Scalar>,
        k: &Scalar,
    ) -> Option<MonomialMatrix> {
        let k = k.exact_phase()?;
        let (perm, phases) = match family {
            Family::R0 => (vec![0, 1, 2, 3], vec![Phase::one(); 4]),
            Family::R1 => return None,
            Family::R2 => {
                let a = alpha.as_ref()?.exact_phase()?;
                let b = beta.as_ref()?.exact_phase()?;
                let g = gamma.as_ref()?.exact_phase()?;
                (vec![0, 2, 1, 3], vec![Phase::one(), b, a, g])
            }
            Family::R3 | Family::R3Prime => {
                let a = alpha.as_ref()?.exact_phase()?;
                let b = beta.as_ref()?.exact_phase()?;
                (vec![3, 1, 2, 0], vec![b, Phase::one(), Phase::one(), a])
            }
        };
        let m = MonomialMatrix::new(perm, phases)
            .expect("family monomial patterns are permutations")
            .scale(k);
        if m.max_phase_order() > tol::MAX_PHASE_ORDER {
            return None;
        }
        Some(m)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn alpha(&self) -> Option<Scalar> {
        self.alpha
    }

    pub fn beta(&self) -> Option<Scalar> {
        self.beta
    }

    pub fn gamma(&self) -> Option<Scalar> {
        self.gamma
    }

    pub fn k(&self) -> Scalar {
        self.k
    }

    pub fn q(&self) -> Option<&DenseMatrix> {
        self.q.as_ref()
    }

    /// Dense 4x4 form `k A R A^{-1}`.
    pub fn dense(&self) -> &DenseMatrix {
        &self.dense
    }

    /// Exact monomial form, present for R0/R2/R3 with exact-phase parameters
    /// and no conjugator.
    pub fn monomial(&self) -> Option<&MonomialMatrix> {
        self.monomial.as_ref()
    }

    /// Resolved parameters in serializable form. For R3' the computed corner
    /// entries are omitted (they are determined by `Q`), so the output
    /// rebuilds to an identical solution.
    pub fn spec(&self) -> SolutionSpec {
        let q = self.q.as_ref().map(|m| QInput {
            a: m.get(0, 0),
            b: m.get(0, 1),
            c: Some(m.get(1, 0)),
            d: m.get(1, 1),
        });
        let (alpha, beta) = match self.family {
            Family::R3Prime => (None, None),
            _ => (self.alpha, self.beta),
        };
        SolutionSpec {
            family: self.family,
            alpha,
            beta,
            gamma: self.gamma,
            k: self.k,
            q,
        }
    }

    /// Report YBE, unitarity and n=3 braid-relation residuals. Uses the
    /// monomial path for the braid check when it is available, mirroring how
    /// representations are evaluated downstream.
    pub fn validate(&self) -> ValidationReport {
        let i2 = DenseMatrix::identity(2);
        let l = kron(&self.dense, &i2);
        let m = kron(&i2, &self.dense);
        let ybe_residual = l.mul(&m).mul(&l).max_diff(&m.mul(&l).mul(&m));
        let unitarity_residual = self.dense.unitarity_residual();

        let braid_rep_residual = match &self.monomial {
            Some(mono) => {
                let s1 = mono.embed_pair(3, 1);
                let s2 = mono.embed_pair(3, 2);
                let lhs = s1.compose(&s2).and_then(|p| p.compose(&s1)).unwrap();
                let rhs = s2.compose(&s1).and_then(|p| p.compose(&s2)).unwrap();
                if lhs == rhs {
                    0.0
                } else {
                    lhs.to_dense().max_diff(&rhs.to_dense())
                }
            }
            None => {
                let s1 = self.dense.embed_pair(3, 1);
                let s2 = self.dense.embed_pair(3, 2);
                s1.mul(&s2).mul(&s1).max_diff(&s2.mul(&s1).mul(&s2))
            }
        };

        ValidationReport {
            ybe_residual,
            unitarity_residual,
            braid_rep_residual,
        }
    }

    /// Spectrum of the dense form. Conjugation by `A` preserves eigenvalues,
    /// so the closed per-family forms apply with the scalar `k` multiplied
    /// through: R2 gives `k * {1, gamma, +sqrt(alpha beta), -sqrt(alpha
    /// beta)}`; R3/R3' replace `gamma` by 1. Distinct values are counted at
    /// 1e-9.
    pub fn eigenvalue_profile(&self) -> EigenProfile {
        let k = self.k.value();
        let values: Vec<Complex64> = match self.family {
            Family::R0 => vec![k; 4],
            Family::R1 => {
                let r = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
                vec![k * r, k * r, k * r.conj(), k * r.conj()]
            }
            Family::R2 | Family::R3 | Family::R3Prime => {
                let ab = self.alpha.unwrap() * self.beta.unwrap();
                let s = ab.sqrt().value();
                let g = match self.family {
                    Family::R2 => self.gamma.unwrap().value(),
                    _ => c64(1.0),
                };
                vec![k, k * g, k * s, -(k * s)]
            }
        };
        let mut reps: Vec<Complex64> = Vec::new();
        for &v in &values {
            if !reps.iter().any(|r| (r - v).norm() < 1e-9) {
                reps.push(v);
            }
        }
        EigenProfile {
            distinct: reps.len(),
            values,
        }
    }

    /// `|| R^4 - (alpha beta + 1) R^2 + alpha beta I ||_max` for the base
    /// matrix (the scalar `k` is divided out). Vanishes exactly when the
    /// spectrum lies in `{+-1, +-sqrt(alpha beta)}`, i.e. for R2 with
    /// `gamma = +-1` and for all of R3/R3'.
    pub fn check_min_poly(&self) -> Result<f64> {
        let (Some(alpha), Some(beta)) = (self.alpha, self.beta) else {
            return Err(Error::Unsupported(format!(
                "family {} has no alpha, beta parameters",
                self.family
            )));
        };
        let ab = (alpha * beta).value();
        let m = self.dense.scale(self.k.value().inv());
        let m2 = m.mul(&m);
        let m4 = m2.mul(&m2);
        let poly = m4
            .sub(&m2.scale(ab + c64(1.0)))
            .add(&DenseMatrix::identity(4).scale(ab));
        Ok(poly.max_norm())
    }
}
