//! Property tests: algebraic laws of the series substrate and the exact
//! classification lemma, with independently coded brute-force checks.

mod common;

use num::Zero;
use proptest::prelude::*;

use septool_core::field::{classify_singularity, SingularityTag};
use septool_core::rational::{rat, Rational};
use septool_core::series::{Series1, Series2};
use septool_core::{gallery, PlanarField};

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn arb_series2() -> impl Strategy<Value = Series2> {
    proptest::collection::vec(((0u32..=8, 0u32..=8), arb_rational()), 0..6).prop_map(|terms| {
        let entries: Vec<((u32, u32), Rational)> =
            terms.into_iter().filter(|((i, j), _)| i + j <= 8).collect();
        Series2::from_terms(("x", "y"), &entries, 9)
    })
}

fn arb_inner1() -> impl Strategy<Value = Series1> {
    proptest::collection::vec((1u32..=4, arb_rational()), 1..4)
        .prop_map(|terms| Series1::from_terms("t", &terms, 12))
}

proptest! {
    #[test]
    fn addition_commutes_and_associates(a in arb_series2(), b in arb_series2(), c in arb_series2()) {
        let ab = a.add(&b).unwrap();
        let ba = b.add(&a).unwrap();
        prop_assert!(ab.jet_eq(&ba));
        let l = ab.add(&c).unwrap();
        let r = a.add(&b.add(&c).unwrap()).unwrap();
        prop_assert!(l.jet_eq(&r));
    }

    #[test]
    fn multiplication_distributes(a in arb_series2(), b in arb_series2(), c in arb_series2()) {
        let l = a.mul(&b.add(&c).unwrap()).unwrap();
        let r = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert!(l.jet_eq(&r));
    }

    #[test]
    fn units_invert_two_sided(u0 in arb_series2(), c in 1i64..=9) {
        let unit = u0
            .add(&Series2::monomial(("x", "y"), (0, 0), rat(c, 1), 9))
            .unwrap();
        prop_assume!(!unit.coeff(0, 0).is_zero());
        let v = unit.invert_unit().unwrap();
        prop_assert!(unit.mul(&v).unwrap().jet_eq(&Series2::one(("x", "y"), 9)));
        prop_assert!(v.mul(&unit).unwrap().jet_eq(&Series2::one(("x", "y"), 9)));
    }

    #[test]
    fn quotients_multiply_back(a in arb_series2(), b in arb_series2()) {
        prop_assume!(!b.is_zero());
        let prod = a.mul(&b).unwrap();
        let q = prod.divide_exact(&b).unwrap();
        let back = q.mul(&b).unwrap();
        prop_assert!(back.jet_eq(&prod.truncate_to(back.trunc())));
    }

    #[test]
    fn composition_associates(s in arb_inner1(), g in arb_inner1(), h in arb_inner1()) {
        let l = s.compose(&g).unwrap().compose(&h).unwrap();
        let r = s.compose(&g.compose(&h).unwrap()).unwrap();
        let w = l.trunc().min(r.trunc());
        prop_assert!(l.truncate_to(w).jet_eq(&r.truncate_to(w)));
    }

    /// The resonance decision lemma, against a from-scratch rational-root
    /// check of the characteristic polynomial: a matrix built with known
    /// rational eigenvalues classifies by the sign test on their ratio.
    #[test]
    fn classifier_matches_bruteforce_rational_eigenvalues(
        p in -6i64..=6, q in -6i64..=6,
        m01 in -4i64..=4, m10 in -4i64..=4,
    ) {
        prop_assume!(p != 0 && q != 0 && p != q);
        // conjugate diag(p, q) by [[1, m01], [m10, 1]] when invertible
        let det = 1 - m01 * m10;
        prop_assume!(det != 0);
        let diag = [
            [rat(p, 1), rat(0, 1)],
            [rat(0, 1), rat(q, 1)],
        ];
        let f = gallery::linear_field(&diag, 8);
        let m = [
            [rat(1, 1), rat(m01, 1)],
            [rat(m10, 1), rat(1, 1)],
        ];
        let g = f.conjugate_linear(&m).unwrap();
        let got = classify_singularity(&g).tag;
        // brute force: ratio of the known eigenvalues
        let want = if (p > 0) == (q > 0) {
            SingularityTag::ResonantOrDegenerate
        } else {
            SingularityTag::SimpleTwoSeparatrix
        };
        prop_assert_eq!(got, want);
        // and the characteristic polynomial indeed has those roots
        let lp = septool_core::field::linear_part(&g).unwrap();
        let char_at = |x: i64| {
            rat(x, 1) * rat(x, 1) - &lp.trace * rat(x, 1) + &lp.det
        };
        prop_assert!(char_at(p).is_zero());
        prop_assert!(char_at(q).is_zero());
    }

    /// Irrational-discriminant matrices with nonzero determinant are always
    /// simple; brute force confirms the characteristic polynomial has no
    /// rational roots.
    #[test]
    fn classifier_irrational_discriminant(t in -5i64..=5, extra in 1i64..=7) {
        // matrix [[t, 1], [extra_prime_twist, 0]] tuned to a non-square disc
        let d = t * t + 4 * extra;
        let is_square = {
            let s = (d as f64).sqrt().round() as i64;
            s * s == d
        };
        prop_assume!(!is_square);
        let m = [
            [rat(t, 1), rat(1, 1)],
            [rat(extra, 1), rat(0, 1)],
        ];
        let f = gallery::linear_field(&m, 8);
        let got = classify_singularity(&f).tag;
        prop_assert_eq!(got, SingularityTag::SimpleTwoSeparatrix);
        // brute force: no integer root divides det, so no rational eigenvalue
        let lp = septool_core::field::linear_part(&f).unwrap();
        let disc = &lp.trace * &lp.trace - rat(4, 1) * &lp.det;
        prop_assert!(septool_core::rational::exact_sqrt(&disc).is_none());
    }

    /// Leibniz: squares of first integrals are first integrals, exercised
    /// on Hamiltonian-style fields where df(F) = 0 by construction.
    #[test]
    fn first_integral_squares(h in arb_series2()) {
        prop_assume!(h.ord().is_some_and(|o| o >= 1));
        let f = PlanarField::new(h.derive(1).neg(), h.derive(0)).unwrap();
        let r1 = septool_core::field::check_first_integral_planar(&h, &f).unwrap();
        prop_assert!(r1.is_zero());
        let h2 = h.mul(&h).unwrap();
        let r2 = septool_core::field::check_first_integral_planar(&h2, &f).unwrap();
        prop_assert!(r2.is_zero());
    }
}

/// Reduction terminates with no depth-capped branch on a corpus of random
/// degenerate fields (zero linear part, the nontrivial reduction cases)
/// with nonzero tangent cone at depth 8. A small-integer-resonant node can
/// legitimately need dozens of blow-ups (its ratio drives a subtractive
/// Euclidean algorithm), so nondegenerate linear parts are out of scope
/// for this empirical corpus.
#[test]
fn reduction_terminates_on_corpus() {
    use rand::{Rng, SeedableRng};
    use septool_core::blowup::{seidenberg_reduce, LeafKind, ReduceOptions};
    use septool_core::series::Series2;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5e1d);
    let vars = ("x", "y");
    // Small integer coefficients keep downstream eigenvalue ratios small:
    // a resonant node with ratio p/q takes about p+q blow-ups to resolve.
    let higher_order_field = |rng: &mut rand_chacha::ChaCha8Rng| {
        let comp = |rng: &mut rand_chacha::ChaCha8Rng| {
            let mut entries = Vec::new();
            for _ in 0..5 {
                let d = rng.gen_range(2..=3u32);
                let i = rng.gen_range(0..=d);
                entries.push(((i, d - i), rat(rng.gen_range(-3i64..=3), 1)));
            }
            Series2::from_terms(vars, &entries, 14)
        };
        septool_core::PlanarField::new(comp(&mut *rng), comp(&mut *rng)).unwrap()
    };
    let mut reduced = 0;
    let mut attempts = 0;
    while reduced < 30 && attempts < 600 {
        attempts += 1;
        let f = higher_order_field(&mut rng);
        if f.is_zero() || septool_core::field::tangent_cone(&f).is_err() {
            continue; // dicritical or zero cone at the root
        }
        let tree = match seidenberg_reduce(&f, ReduceOptions::default()) {
            Ok(t) => t,
            Err(_) => continue, // multiplicity undetermined at this window
        };
        for leaf in tree.leaves() {
            assert_ne!(
                leaf.leaf,
                Some(LeafKind::DepthCapped),
                "depth exhausted for {f:?}"
            );
        }
        reduced += 1;
    }
    assert!(reduced >= 30, "only {reduced} fields reduced");
}

/// The certified engine against dense float sampling on a batch of random
/// polynomial fields with isolated origin.
#[test]
fn winding_matches_dense_oracle_on_corpus() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xacc0);
    let tol = Rational::zero();
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 15 && attempts < 200 {
        attempts += 1;
        let f = common::random_quadratic_field(&mut rng, 12);
        let Ok(report) = septool_core::index::winding_index(&f, &rat(1, 3), &tol) else {
            continue; // singular on or near the circle: skip
        };
        let oracle = common::dense_winding_oracle(&f, 1.0 / 3.0, 20_000);
        assert_eq!(report.index, oracle, "disagreement for {f:?}");
        checked += 1;
    }
    assert!(checked >= 10, "only {checked} fields were certifiable");
}
