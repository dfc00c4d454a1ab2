//! Randomized and property-based invariants spanning the whole pipeline.

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ybrep_core::algebra::{
    kron, monomial_from_dense, DenseMatrix, MonomialMatrix, Phase, Scalar,
};
use ybrep_core::braid::{self, BraidWord};
use ybrep_core::image::{self, ClosureOutcome};
use ybrep_core::invariants;
use ybrep_core::ybe::{QInput, SolutionSpec, YbeSolution};

fn phase_strategy() -> impl Strategy<Value = Phase> {
    (0i64..24, 1i64..=12).prop_map(|(k, n)| Phase::new(k, n))
}

fn monomial_strategy(dim: usize) -> impl Strategy<Value = MonomialMatrix> {
    let perm = Just((0..dim as u32).collect::<Vec<_>>()).prop_shuffle();
    let phases = proptest::collection::vec(phase_strategy(), dim);
    (perm, phases).prop_map(|(p, f)| MonomialMatrix::new(p, f).unwrap())
}

proptest! {
    #[test]
    fn phase_group_laws(p in phase_strategy(), q in phase_strategy(), r in phase_strategy()) {
        prop_assert_eq!((p * q) * r, p * (q * r));
        prop_assert_eq!(p * q, q * p);
        prop_assert_eq!(p * p.inv(), Phase::one());
        prop_assert_eq!(p * Phase::one(), p);
        // closure of orders: order of the product divides lcm
        let l = num_integer::lcm(p.order(), q.order());
        prop_assert_eq!(l % (p * q).order(), 0);
    }

    #[test]
    fn phase_value_roundtrip(p in phase_strategy()) {
        let back = Phase::from_complex(p.value(), 1e-12, 360).unwrap();
        prop_assert_eq!(p, back);
    }

    #[test]
    fn monomial_compose_matches_dense(m1 in monomial_strategy(8), m2 in monomial_strategy(8)) {
        // phase-wise exactness: the dense product reads back as exactly the
        // composed monomial
        let composed = m1.compose(&m2).unwrap();
        let dense = m1.to_dense().mul(&m2.to_dense());
        let read_back = monomial_from_dense(&dense, 1e-6, 24 * 12).unwrap();
        prop_assert_eq!(composed, read_back);
    }

    #[test]
    fn monomial_inverse_is_dense_inverse(m in monomial_strategy(8)) {
        let id = m.compose(&m.inverse()).unwrap();
        prop_assert!(id.is_identity());
        prop_assert!(m.to_dense().unitarity_residual() < 1e-12);
    }

    #[test]
    fn kron_associates_up_to_nothing(seed in 0u64..500) {
        // under this index convention (X x A) x B and X x (A x B) agree
        // entry for entry, up to float re-association
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rand_mat = |d: usize| {
            let mut m = DenseMatrix::zeros(d);
            for i in 0..d {
                for j in 0..d {
                    m.set(i, j, Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
                }
            }
            m
        };
        let x = rand_mat(2);
        let a = rand_mat(2);
        let b = rand_mat(2);
        let lhs = kron(&kron(&x, &a), &b);
        let rhs = kron(&x, &kron(&a, &b));
        prop_assert!(lhs.max_diff(&rhs) < 1e-12);

        // disjoint-slot embeddings commute: (X x I x I)(I x I x B)
        let i2 = DenseMatrix::identity(2);
        let left = kron(&kron(&x, &i2), &i2);
        let right = kron(&kron(&i2, &i2), &b);
        prop_assert!(left.mul(&right).max_diff(&right.mul(&left)) < 1e-12);
    }

    #[test]
    fn dense_product_associates(seed in 0u64..200) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rand_mat = |d: usize| {
            let mut m = DenseMatrix::zeros(d);
            for i in 0..d {
                for j in 0..d {
                    m.set(i, j, Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
                }
            }
            m
        };
        let (a, b, c) = (rand_mat(4), rand_mat(4), rand_mat(4));
        prop_assert!(a.mul(&b).mul(&c).max_diff(&a.mul(&b.mul(&c))) < 1e-10);
    }
}

fn random_unit(rng: &mut impl Rng) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * rng.random::<f64>())
}

fn random_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5) * 2.0
}

fn random_exact_phase(rng: &mut impl Rng, max_order: i64) -> Phase {
    let n = rng.random_range(1..=max_order);
    Phase::new(rng.random_range(0..n), n)
}

/// Random admissible solution from each family; `exact_r2` forces exact
/// phases so the monomial path exists.
fn random_solution(family: usize, rng: &mut impl Rng) -> YbeSolution {
    let k: Scalar = random_unit(rng).into();
    let q = QInput::constrained(random_complex(rng), random_complex(rng), random_complex(rng));
    match family {
        0 => SolutionSpec::r0().with_k(k).with_q(q).build().unwrap(),
        1 => {
            let a = random_complex(rng);
            let d = a.norm() * random_unit(rng);
            let q = QInput::constrained(a, random_complex(rng), d);
            SolutionSpec::r1().with_k(k).with_q(q).build().unwrap()
        }
        2 => SolutionSpec::r2(
            random_unit(rng).into(),
            random_unit(rng).into(),
            random_unit(rng).into(),
        )
        .with_k(k)
        .with_q(q)
        .build()
        .unwrap(),
        3 => {
            let ratio = (q.d.norm() / q.a.norm()).powi(2);
            let alpha = ratio * random_unit(rng);
            let beta = random_unit(rng) / ratio;
            SolutionSpec::r3(alpha.into(), beta.into())
                .with_k(k)
                .with_q(q)
                .build()
                .unwrap()
        }
        _ => {
            let q = QInput::full(
                random_complex(rng),
                random_complex(rng),
                random_complex(rng),
                random_complex(rng),
            );
            SolutionSpec::r3_prime(q).with_k(k).build().unwrap()
        }
    }
}

#[test]
fn conjugation_action_preserves_residuals() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for family in 0..5 {
        for _ in 0..20 {
            let s = random_solution(family, &mut rng);
            let report = s.validate();
            assert!(
                report.passes(1e-10),
                "family index {family}: {report:?}"
            );
        }
    }
}

#[test]
fn r2_profile_matches_min_poly_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..50 {
        let a = random_unit(&mut rng);
        let b = random_unit(&mut rng);
        // four-eigenvalue case: gamma = -1
        let s = SolutionSpec::r2(a.into(), b.into(), Complex64::new(-1.0, 0.0).into())
            .build()
            .unwrap();
        assert!(s.check_min_poly().unwrap() < 1e-10);
        let profile = s.eigenvalue_profile();
        let sqrt_ab = (a * b).sqrt();
        let mut expected = vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(-1.0, 0.0),
            sqrt_ab,
            -sqrt_ab,
        ];
        // multiset match at 1e-9
        for v in &profile.values {
            let pos = expected
                .iter()
                .position(|e| (e - v).norm() < 1e-9)
                .unwrap_or_else(|| panic!("eigenvalue {v} not among quartic roots"));
            expected.swap_remove(pos);
        }
        assert!(expected.is_empty());

        // three-eigenvalue case: every eigenvalue is a root of the quartic
        let s = SolutionSpec::r2(a.into(), b.into(), Complex64::new(1.0, 0.0).into())
            .build()
            .unwrap();
        assert!(s.check_min_poly().unwrap() < 1e-10);
        let ab = a * b;
        for v in &s.eigenvalue_profile().values {
            let quartic = v.powi(4) - (ab + 1.0) * v.powi(2) + ab;
            assert!(quartic.norm() < 1e-9);
        }
    }
}

#[test]
fn base_families_monomial_except_r1() {
    let one: Scalar = Phase::one().into();
    let ok = [
        SolutionSpec::r0().build().unwrap(),
        SolutionSpec::r2(one, one, one).build().unwrap(),
        SolutionSpec::r3(one, one).build().unwrap(),
    ];
    for s in &ok {
        assert!(monomial_from_dense(s.dense(), 1e-8, 16).is_ok(), "{}", s.family());
    }
    // the R3' base shape (corner swap with unit corners) is monomial too
    let r3p_shape = SolutionSpec::r3(Phase::i().into(), Phase::minus_i().into())
        .build()
        .unwrap();
    assert!(monomial_from_dense(r3p_shape.dense(), 1e-8, 16).is_ok());

    let r1 = SolutionSpec::r1().build().unwrap();
    assert!(monomial_from_dense(r1.dense(), 1e-8, 16).is_err());
}

#[test]
fn braid_relator_insertion_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for _ in 0..40 {
        let s = SolutionSpec::r2(
            random_exact_phase(&mut rng, 8).into(),
            random_exact_phase(&mut rng, 8).into(),
            random_exact_phase(&mut rng, 8).into(),
        )
        .build()
        .unwrap();
        let n = rng.random_range(3..=5);
        let w1 = braid::random_word(n, rng.random_range(0..=5), &mut rng);
        let w2 = braid::random_word(n, rng.random_range(0..=5), &mut rng);

        // (B2) relator sigma_i sigma_{i+1} sigma_i (sigma_{i+1} sigma_i sigma_{i+1})^{-1}
        let i = rng.random_range(1..n - 1) as i32;
        let relator = BraidWord::new(
            n,
            vec![i, i + 1, i, -(i + 1), -i, -(i + 1)],
        )
        .unwrap();

        let with = w1.concat(&relator).unwrap().concat(&w2).unwrap();
        let without = w1.concat(&w2).unwrap();
        let lhs = braid::represent(&s, &with).unwrap();
        let rhs = braid::represent(&s, &without).unwrap();
        assert_eq!(lhs.as_monomial().unwrap(), rhs.as_monomial().unwrap());
    }
}

#[test]
fn slot_action_matches_word_permutation() {
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    for _ in 0..40 {
        let s = SolutionSpec::r2(
            random_exact_phase(&mut rng, 8).into(),
            random_exact_phase(&mut rng, 8).into(),
            random_exact_phase(&mut rng, 8).into(),
        )
        .build()
        .unwrap();
        let n = rng.random_range(2..=6);
        let w = braid::random_word(n, rng.random_range(0..=8), &mut rng);
        let rep = braid::represent(&s, &w).unwrap();
        let got = image::slot_permutation(rep.as_monomial().unwrap(), n).unwrap();

        // independent evaluation: left-to-right product of transpositions,
        // composing each new factor on the right
        let mut expect: Vec<usize> = (0..n).collect();
        for &g in w.letters() {
            let i = g.unsigned_abs() as usize - 1;
            expect.swap(i, i + 1);
        }
        assert_eq!(got, expect, "word {:?}", w.letters());
    }
}

#[test]
fn pure_braid_images_diagonal_and_commuting() {
    let mut rng = ChaCha8Rng::seed_from_u64(46);
    for _ in 0..25 {
        let s = SolutionSpec::r2(
            random_exact_phase(&mut rng, 8).into(),
            random_exact_phase(&mut rng, 8).into(),
            random_exact_phase(&mut rng, 8).into(),
        )
        .build()
        .unwrap();
        let n = rng.random_range(2..=4);
        let images: Vec<MonomialMatrix> = braid::pure_braid_generators(n)
            .unwrap()
            .iter()
            .map(|w| {
                braid::represent(&s, w)
                    .unwrap()
                    .as_monomial()
                    .unwrap()
                    .clone()
            })
            .collect();
        for m in &images {
            assert!(m.is_diagonal());
        }
        for a in &images {
            for b in &images {
                assert_eq!(a.compose(b).unwrap(), b.compose(a).unwrap());
            }
        }
    }
}

#[test]
fn closure_order_independent_of_generator_order() {
    let s = SolutionSpec::r2(
        Phase::new(1, 8).into(),
        Phase::new(1, 8).into(),
        Phase::minus_one().into(),
    )
    .build()
    .unwrap();
    let mut gens = braid::monomial_generators(&s, 3).unwrap();
    let baseline = match image::closure(&gens, 100_000).unwrap() {
        ClosureOutcome::Complete(e) => e.len(),
        ClosureOutcome::LimitExceeded => panic!("unexpected limit"),
    };
    assert_eq!(baseline, 192);
    gens.reverse();
    let reversed = match image::closure(&gens, 100_000).unwrap() {
        ClosureOutcome::Complete(e) => e.len(),
        ClosureOutcome::LimitExceeded => panic!("unexpected limit"),
    };
    assert_eq!(baseline, reversed);
    // duplicated generators change nothing
    let doubled: Vec<_> = gens.iter().chain(gens.iter()).cloned().collect();
    let doubled_order = match image::closure(&doubled, 100_000).unwrap() {
        ClosureOutcome::Complete(e) => e.len(),
        ClosureOutcome::LimitExceeded => panic!("unexpected limit"),
    };
    assert_eq!(baseline, doubled_order);
}

#[test]
fn closures_complete_for_small_orders() {
    // finiteness in practice: root-of-unity parameters, n <= 3, orders <= 8
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for _ in 0..15 {
        let s = SolutionSpec::r2(
            random_exact_phase(&mut rng, 8).into(),
            random_exact_phase(&mut rng, 8).into(),
            random_exact_phase(&mut rng, 8).into(),
        )
        .build()
        .unwrap();
        let gens = braid::monomial_generators(&s, 3).unwrap();
        match image::closure(&gens, image::DEFAULT_CLOSURE_LIMIT).unwrap() {
            ClosureOutcome::Complete(els) => assert!(!els.is_empty()),
            ClosureOutcome::LimitExceeded => panic!("closure should complete at n = 3"),
        }
    }
}

#[test]
fn conjugation_invariance_holds_even_without_enhancement() {
    // trace cyclicity plus [mu x mu, R] = 0 does not need gamma = +-1;
    // stabilization is what fails at gamma = i
    let mut rng = ChaCha8Rng::seed_from_u64(48);
    let s = SolutionSpec::r2(Phase::one().into(), Phase::one().into(), Phase::i().into())
        .build()
        .unwrap();
    let e = invariants::Enhancement::force(
        invariants::GammaCase::MinusOne,
        Scalar::one(),
        Scalar::one(),
    );
    let w = BraidWord::parse("1 2", 3).unwrap();
    let report = invariants::markov_invariance_test(&s, &e, &w, 25, &mut rng).unwrap();
    assert!(report.conjugation_ok, "{report:?}");
    assert!(!report.stabilization_ok, "{report:?}");
}

#[test]
fn monomial_trace_equals_dense_trace() {
    let mut rng = ChaCha8Rng::seed_from_u64(49);
    for _ in 0..30 {
        let dim = 1usize << rng.random_range(1..=4);
        let perm = {
            let mut p: Vec<u32> = (0..dim as u32).collect();
            for i in (1..dim).rev() {
                p.swap(i, rng.random_range(0..=i));
            }
            p
        };
        let phases: Vec<Phase> = (0..dim).map(|_| random_exact_phase(&mut rng, 12)).collect();
        let m = MonomialMatrix::new(perm, phases).unwrap();
        assert!((m.trace() - m.to_dense().trace()).norm() < 1e-12);
    }
}

/// Locates an explicit conjugator between the middle-swap (gamma = 1) and
/// corner-swap shapes: flipping the first bit, `U = X (x) I`, satisfies
/// `U R2(a, b, 1) U^{-1} = R3(a, b)` for all parameters. `U` is not of the
/// form `Q (x) Q` (a product state cannot land in span{e1, e2}), so the two
/// remain distinct families even though spectra and closed images agree.
#[test]
fn explicit_conjugator_from_middle_swap_to_corner_swap() {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let u = DenseMatrix::from_rows(&[
        vec![zero, one, zero, zero],
        vec![one, zero, zero, zero],
        vec![zero, zero, zero, one],
        vec![zero, zero, one, zero],
    ]);
    for _ in 0..10 {
        let a = random_unit(&mut rng);
        let b = random_unit(&mut rng);
        let r2 = SolutionSpec::r2(a.into(), b.into(), Complex64::new(1.0, 0.0).into())
            .build()
            .unwrap();
        let r3 = SolutionSpec::r3(a.into(), b.into()).build().unwrap();
        let conj = u.mul(r2.dense()).mul(&u.inverse().unwrap());
        assert!(
            conj.max_diff(r3.dense()) < 1e-12,
            "conjugated middle swap should equal the corner swap"
        );
        // matching spectra, as the profile computes them
        let p2 = r2.eigenvalue_profile();
        let p3 = r3.eigenvalue_profile();
        assert_eq!(p2.distinct, p3.distinct);
    }
}
