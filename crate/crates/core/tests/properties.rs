//! Property tests for the algebraic and combinatorial invariants. Random
//! structured inputs (words, points) come from the library samplers, driven
//! by proptest-chosen seeds.

use gtbv::cli::{parse_cyclic, parse_loop_sum, parse_path};
use gtbv::cli::display_loop_sum;
use gtbv::loops::sample::{random_loop, random_path};
use gtbv::loops::{goldman_bracket_words, turaev_cobracket_word, CyclicWord, FormalSum, LoopAlgebra, WBasis};
use gtbv::modulispace::{GElem, GroupSpec, ModuliPoint};
use gtbv::superalgebra::{Grassmann, Rational};
use gtbv::surface::{parse_skeleton, reverse_edge, standard, Skeleton};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn surfaces() -> Vec<Skeleton> {
    vec![standard::torus(), standard::pants(), standard::genus2(), standard::theta()]
}

fn surface() -> impl Strategy<Value = Skeleton> {
    (0..4usize).prop_map(|i| surfaces()[i].clone())
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

/// A Grassmann element on generators 0..4 with small rational coefficients.
fn grassmann() -> impl Strategy<Value = Grassmann> {
    prop::collection::vec((0u64..16, rational()), 0..5).prop_map(Grassmann::from_terms)
}

fn homogeneous() -> impl Strategy<Value = Grassmann> {
    (grassmann(), any::<bool>()).prop_map(|(g, odd)| {
        Grassmann::from_terms(g.terms().iter().filter(|(m, _)| (m.count_ones() % 2 == 1) == odd).cloned())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if let Some(inv) = a.recip() {
            prop_assert!((&a * &inv).is_one());
        }
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn rational_overflow_is_exact(n in 1i64..1000) {
        let big = Rational::from_int(i64::MAX / 2);
        let x = &(&big * &Rational::from_int(n)) * &Rational::new(1, n);
        prop_assert_eq!(x, big);
    }

    #[test]
    fn grassmann_is_associative_and_distributive(a in grassmann(), b in grassmann(), c in grassmann()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn grassmann_graded_commutativity(a in homogeneous(), b in homogeneous()) {
        let sign = if a.is_odd() && b.is_odd() { -1 } else { 1 };
        prop_assert_eq!(&a * &b, (&b * &a).scale(&Rational::from_int(sign)));
    }

    #[test]
    fn canonical_form_is_rotation_and_reduction_invariant(sk in surface(), seed in any::<u64>(), k in 0usize..8) {
        let w = random_loop(&sk, 6, &mut rng(seed));
        let letters = w.letters().to_vec();
        prop_assert_eq!(CyclicWord::canonical(&letters), w.clone());
        if !letters.is_empty() {
            let k = k % letters.len();
            let mut rotated = letters[k..].to_vec();
            rotated.extend_from_slice(&letters[..k]);
            prop_assert_eq!(CyclicWord::canonical(&rotated), w.clone());
            // insert a cancelling pair
            let mut padded = rotated.clone();
            padded.insert(1, letters[0]);
            padded.insert(2, letters[0].inverse());
            prop_assert_eq!(CyclicWord::canonical(&padded), w.clone());
        }
        prop_assert_eq!(w.inverse().inverse(), w);
    }

    #[test]
    fn words_round_trip_through_text(sk in surface(), seed in any::<u64>(), len in 1usize..7) {
        let w = random_loop(&sk, 6, &mut rng(seed));
        prop_assert_eq!(parse_cyclic(&sk, &w.display(&sk)).unwrap(), w);
        let p = random_path(&sk, 0, len, &mut rng(seed ^ 1));
        prop_assert_eq!(parse_path(&sk, &p.display(&sk)).unwrap(), p);
    }

    #[test]
    fn skeleton_json_round_trip(sk in surface(), rots in prop::collection::vec(-4i64..=4, 4)) {
        let sk = sk.with_rot2(&rots[..sk.num_edges()]);
        prop_assert_eq!(parse_skeleton(&sk.to_json()).unwrap(), sk);
    }

    #[test]
    fn rotation_of_inverse_path_is_negated(sk in surface(), rots in prop::collection::vec(-4i64..=4, 4), seed in any::<u64>(), len in 1usize..6) {
        let sk = sk.with_rot2(&rots[..sk.num_edges()]);
        let p = random_path(&sk, 0, len, &mut rng(seed));
        let inv = p.inverse(&sk);
        prop_assert_eq!(sk.path_rotation2(&inv.letters, false).unwrap(), -sk.path_rotation2(&p.letters, false).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bracket_is_antisymmetric_and_seed_independent(sk in surface(), seed in any::<u64>(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let mut r = rng(seed);
        let (x, y) = (random_loop(&sk, 5, &mut r), random_loop(&sk, 5, &mut r));
        let xy = goldman_bracket_words(&sk, &x, &y, s1).unwrap();
        let yx = goldman_bracket_words(&sk, &y, &x, s2).unwrap();
        prop_assert_eq!(xy.clone(), yx.neg());
        prop_assert!(goldman_bracket_words(&sk, &x, &x, s1).unwrap().is_zero());
        prop_assert_eq!(turaev_cobracket_word(&sk, &x, s1).unwrap(), turaev_cobracket_word(&sk, &x, s2).unwrap());
    }

    #[test]
    fn bracket_output_round_trips_through_text(sk in surface(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let (x, y) = (random_loop(&sk, 4, &mut r), random_loop(&sk, 4, &mut r));
        let alg = LoopAlgebra::new(&sk, seed, true).unwrap();
        let b = alg.bracket(&FormalSum::single(WBasis::Loop(x)), &FormalSum::single(WBasis::Loop(y))).unwrap();
        prop_assert_eq!(parse_loop_sum(&sk, &display_loop_sum(&sk, &b)).unwrap(), b);
    }

    #[test]
    fn holonomy_respects_inverse_and_reversal(sk in surface(), seed in any::<u64>(), len in 1usize..5, e in 0usize..4, q in any::<bool>()) {
        let g = if q { GroupSpec::Q(2) } else { GroupSpec::Gl(2) };
        let pt = ModuliPoint::random(&sk, g, seed).unwrap();
        let p = random_path(&sk, 0, len, &mut rng(seed));
        let h = pt.holonomy(&sk, &p).unwrap();
        let hi = pt.holonomy(&sk, &p.inverse(&sk)).unwrap();
        prop_assert_eq!(h.mul(&hi), g.identity());
        let e = e % sk.num_edges();
        let (_, m) = reverse_edge(&sk, e).unwrap();
        let pt2 = pt.transport(&m).unwrap();
        prop_assert_eq!(pt2.holonomy(&m.target, &m.transport_path(&p)).unwrap(), h);
    }

    #[test]
    fn queer_trace_and_odd_determinant(seed in any::<u64>(), n in 1usize..=2) {
        let pt = ModuliPoint::random(&standard::torus(), GroupSpec::Q(n), seed).unwrap();
        let (a, b) = (&pt.elems[0], &pt.elems[1]);
        prop_assert_eq!(a.mul(&a.inverse().unwrap()), GroupSpec::Q(n).identity());
        prop_assert_eq!(a.mul(b).otr().unwrap(), b.mul(a).otr().unwrap());
        prop_assert_eq!(a.mul(b).odet().unwrap(), &a.odet().unwrap() + &b.odet().unwrap());
        if let GElem::Q(q) = a {
            prop_assert_eq!(a.odet().unwrap(), -&a.inverse().unwrap().odet().unwrap());
            prop_assert!(q.inverse().is_ok());
        }
    }
}
