//! Hand-computable values: each test pins one closed-form example.

use gtbv::cli::{parse_cyclic, parse_function, parse_path};
use gtbv::harness::{phi_even_loops, transport_function};
use gtbv::loops::{goldman_bracket_words, turaev_cobracket_word, FormalSum, LoopAlgebra, WBasis, WedgeSum};
use gtbv::loops::formal::{loop_generator, wedge_product};
use gtbv::modulispace::{
    eval, fock_rosly_bracket, quasi_bv_delta, Atom, Expr, GElem, GroupSpec, ModuliFunction, ModuliPoint, Slot,
};
use gtbv::superalgebra::{Grassmann, QElement, Rational};
use gtbv::surface::{slide, standard, HalfEdge, Skeleton};

#[test]
fn torus_bracket_of_generators_is_their_product() {
    let sk = standard::torus();
    let (a, b) = (parse_cyclic(&sk, "a").unwrap(), parse_cyclic(&sk, "b").unwrap());
    let ab = parse_cyclic(&sk, "a b").unwrap();
    assert_eq!(goldman_bracket_words(&sk, &a, &b, 7).unwrap(), FormalSum::single(ab));
}

#[test]
fn pants_generators_commute() {
    let sk = standard::pants();
    let (a, b) = (parse_cyclic(&sk, "a").unwrap(), parse_cyclic(&sk, "b").unwrap());
    assert!(goldman_bracket_words(&sk, &a, &b, 7).unwrap().is_zero());
}

#[test]
fn simple_loops_and_the_boundary_have_zero_cobracket() {
    let sk = standard::torus();
    for w in ["a", "b", "a b", "a b a' b'"] {
        assert!(turaev_cobracket_word(&sk, &parse_cyclic(&sk, w).unwrap(), 3).unwrap().is_zero(), "{w}");
    }
}

#[test]
fn bv_operator_on_generators_and_pairs() {
    let sk = standard::genus2();
    let alg = LoopAlgebra::new(&sk, 11, false).unwrap();
    let x = parse_cyclic(&sk, "a b a' b' c").unwrap();
    let y = parse_cyclic(&sk, "a c d").unwrap();
    let (gx, gy) = (loop_generator(x.clone()), loop_generator(y.clone()));
    for scale in [Rational::one(), Rational::from_int(2)] {
        let dx = alg.bv_delta_wedge(&gx, &scale).unwrap();
        assert_eq!(dx, alg.cobracket_gen(&WBasis::Loop(x.clone())).unwrap().scale(&scale));
        // Δ(x∧y) = Δx∧y − x∧Δy + [x, y]
        let dy = alg.bv_delta_wedge(&gy, &scale).unwrap();
        let lhs = alg.bv_delta_wedge(&wedge_product(&gx, &gy), &scale).unwrap();
        let mut rhs = wedge_product(&dx, &gy).sub(&wedge_product(&gx, &dy));
        for (g, c) in alg.bracket_gen(&WBasis::Loop(x.clone()), &WBasis::Loop(y.clone())).unwrap().iter() {
            if let WBasis::Loop(w) = g {
                rhs.add_scaled(&loop_generator(w.clone()), c);
            }
        }
        assert_eq!(lhs, rhs);
        assert!(!lhs.is_zero());
    }
    assert_eq!(alg.bv_delta_wedge(&WedgeSum::zero(), &Rational::one()).unwrap(), WedgeSum::zero());
}

#[test]
fn trace_at_identity_is_n() {
    let sk = standard::torus();
    let f: Expr = Atom::tr(parse_path(&sk, "a").unwrap()).into();
    assert_eq!(eval(&f, &ModuliPoint::identity(&sk, GroupSpec::Gl(2))).unwrap(), Grassmann::from_int(2));
}

#[test]
fn odd_trace_reads_the_odd_block() {
    let sk = standard::torus();
    let a = QElement::from_blocks(1, vec![Grassmann::from_int(3)], vec![Grassmann::generator(0)]);
    let pt = ModuliPoint::from_elems(GroupSpec::Q(1), vec![GElem::Q(a), GroupSpec::Q(1).identity()]);
    let f: Expr = Atom::otr(parse_path(&sk, "a").unwrap()).into();
    assert_eq!(eval(&f, &pt).unwrap(), Grassmann::generator(0));
}

/// With the odd pairing t (graded antisymmetric) reversal costs a sign; with
/// the symmetric even Casimir it does not.
#[test]
fn reversing_a_chord() {
    let sk = standard::torus();
    for (g, text, sign) in [
        (GroupSpec::Q(2), "otr(a b) * otr(b a') * chord(1@1 -> 2@2 via b)", -1),
        (GroupSpec::Gl(2), "tr(a b) * tr(b a') * chord(1@1 -> 2@2 via b)", 1),
    ] {
        let f = parse_function(&sk, text).unwrap();
        let mut r = f.clone();
        r.chords[0] = f.chords[0].reversed(&sk);
        let mut nonzero = false;
        for seed in 0..4 {
            let pt = ModuliPoint::random(&sk, g, seed).unwrap();
            let (v, w) = (eval(&f.clone().into(), &pt).unwrap(), eval(&r.clone().into(), &pt).unwrap());
            nonzero |= !v.is_zero();
            assert_eq!(w, v.scale(&Rational::from_int(sign)), "{}", g.name());
        }
        assert!(nonzero, "{}", g.name());
    }
}

#[test]
fn derivatives_of_logdet_and_trace() {
    let sk = standard::path();
    let g = GroupSpec::Gl(2);
    let pt = ModuliPoint::random(&sk, g, 9).unwrap();
    let a = parse_path(&sk, "a").unwrap();
    let logdet: Expr = Atom::logdet(a.clone()).into();
    let tr: Expr = Atom::tr(a).into();
    for k in 0..g.dim() {
        let delta = if k % 3 == 0 { 1 } else { 0 }; // E_(αα) for n = 2
        let d = eval(&Expr::deriv(Slot::half_edge(HalfEdge::tail(0), g.basis(k), 0), logdet.clone()), &pt).unwrap();
        assert_eq!(d, Grassmann::from_int(delta));
        let leaving = eval(&Expr::deriv(Slot::half_edge(HalfEdge::tail(0), g.basis(k), 0), tr.clone()), &pt).unwrap();
        let arriving = eval(&Expr::deriv(Slot::half_edge(HalfEdge::head(0), g.basis(k), 0), tr.clone()), &pt).unwrap();
        assert_eq!(leaving, -&arriving);
    }
}

#[test]
fn fock_rosly_on_generators_at_identity() {
    let sk = standard::torus();
    for n in 1..=3 {
        let g = GroupSpec::Gl(n);
        let lie = g.even_data().unwrap();
        let pt = ModuliPoint::identity(&sk, g);
        let (ta, tb) = (phi_even_loops(&sk, &loop_sum_words(&sk, "a"), n), phi_even_loops(&sk, &loop_sum_words(&sk, "b"), n));
        let v = eval(&fock_rosly_bracket(&sk, g, &lie, &ta, &tb), &pt).unwrap();
        assert_eq!(v, Grassmann::from_int(n as i64));
        assert!(eval(&fock_rosly_bracket(&sk, g, &lie, &ta, &ta), &pt).unwrap().is_zero());
    }
}

fn loop_sum_words(sk: &Skeleton, w: &str) -> FormalSum<gtbv::loops::CyclicWord> {
    FormalSum::single(parse_cyclic(sk, w).unwrap())
}

#[test]
fn logdet_bracket_is_the_intersection_number() {
    let sk = standard::torus();
    let alg = LoopAlgebra::new(&sk, 0, true).unwrap();
    for n in 1..=2 {
        let g = GroupSpec::Gl(n);
        let lie = g.even_data().unwrap();
        let la: Expr = Atom::logdet(parse_path(&sk, "a").unwrap()).into();
        let lb: Expr = Atom::logdet(parse_path(&sk, "b").unwrap()).into();
        let expected = &alg.intersection(&[1, 0], &[0, 1]) * &Rational::from_int(n as i64);
        assert!(!expected.is_zero());
        for seed in 0..3 {
            let pt = ModuliPoint::random(&sk, g, seed).unwrap();
            assert_eq!(eval(&fock_rosly_bracket(&sk, g, &lie, &la, &lb), &pt).unwrap(), Grassmann::scalar(expected.clone()));
        }
    }
}

#[test]
fn quasi_bv_kills_constants_and_simple_loops() {
    let sk = standard::torus();
    let g = GroupSpec::Q(1);
    let lie = g.odd_data().unwrap();
    let pt = ModuliPoint::random(&sk, g, 4).unwrap();
    let one: Expr = ModuliFunction::constant(Rational::one()).into();
    assert!(eval(&quasi_bv_delta(&sk, g, &lie, &one), &pt).unwrap().is_zero());
    let f: Expr = Atom::otr(parse_path(&sk, "a").unwrap()).into();
    assert!(eval(&quasi_bv_delta(&sk, g, &lie, &f), &pt).unwrap().is_zero());
}

#[test]
fn evaluation_commutes_with_slides() {
    let sk = standard::torus();
    let f = parse_function(&sk, "tr(a b a) * ent[0,1](b' a) * tr(a b) * chord(3@1 -> 1@2 via 1@v0)").unwrap();
    let g = GroupSpec::Gl(2);
    let pt = ModuliPoint::random(&sk, g, 2).unwrap();
    let value = eval(&f.clone().into(), &pt).unwrap();
    for (he, along) in [(HalfEdge::tail(0), 1), (HalfEdge::head(1), 0)] {
        let Ok((_, m)) = slide(&sk, he, along) else { continue };
        let moved = eval(&transport_function(&m, &f).into(), &pt.transport(&m).unwrap()).unwrap();
        assert_eq!(moved, value);
    }
}
