//! Fock–Rosly suites on GL(n).

use rand::Rng;
use serde_json::json;

use super::{show_fn, show_sum};
use crate::error::Result;
use crate::harness::sample::{entry_function, random_commutator, random_function, single_moves, TrialRng};
use crate::harness::{h1_word, phi_even, transport_function, Case, Trial};
use crate::loops::sample::random_loop;
use crate::loops::word::reduce;
use crate::loops::{FormalSum, LoopAlgebra, PathWord, WBasis};
use crate::modulispace::{
    eval, fock_rosly_bracket, fused_fock_rosly, jacobiator, quasi_poisson_phi, Atom, Expr, GroupSpec, ModuliPoint,
};
use crate::surface::fuse;

fn gl_size(g: GroupSpec) -> usize {
    match g {
        GroupSpec::Gl(n) => n,
        _ => unreachable!("even suites run on GL(n)"),
    }
}

/// {Φx, Φy}_FR = Φ[x, y] on gW ⊕ H₁, with ◯ ↦ n and H₁ ↦ log det.
pub fn goldman_even(case: &Case, rng: &mut TrialRng, t: &mut Trial) -> Result<()> {
    let (sk, g) = (case.sk(), case.g());
    let n = gl_size(g);
    let lie = g.even_data().expect("GL has even data");
    let alg = LoopAlgebra::new(sk, rng.gen(), true)?;
    let pt = ModuliPoint::random(sk, g, rng.gen())?;
    let rank = alg.rank();
    let kind = if rank == 0 { 0 } else { rng.gen_range(0..3) };
    let pick_loop = |rng: &mut TrialRng| WBasis::Loop(random_loop(sk, case.max_len, rng));
    let (x, y) = match kind {
        0 => (pick_loop(rng), pick_loop(rng)),
        1 => (WBasis::H1(rng.gen_range(0..rank)), pick_loop(rng)),
        _ => (WBasis::H1(rng.gen_range(0..rank)), WBasis::H1(rng.gen_range(0..rank))),
    };
    t.note(["tr_tr", "logdet_tr", "logdet_logdet"][kind]);
    let inputs = || json!({ "x": show_sum(sk, &FormalSum::single(x.clone())), "y": show_sum(sk, &FormalSum::single(y.clone())), "point": pt.to_json() });
    let fx = phi_even(sk, &FormalSum::single(x.clone()), n);
    let fy = phi_even(sk, &FormalSum::single(y.clone()), n);
    let lhs = eval(&fock_rosly_bracket(sk, g, &lie, &fx, &fy), &pt)?;
    let rhs = eval(&phi_even(sk, &alg.bracket_gen(&x, &y)?, n), &pt)?;
    t.expect_eq("fock_rosly_vs_goldman", &lhs, &rhs, inputs);
    if !lhs.is_zero() {
        t.note("nonzero");
        t.note(&format!("{}_nonzero", ["tr_tr", "logdet_tr", "logdet_logdet"][kind]));
        // the opposite orientation convention would give −rhs
        if lhs != -&rhs {
            t.note("opposite_sign_rejected");
        }
    }

    // log det only depends on the class: multiply the representative by a commutator
    if let WBasis::H1(k) = x {
        let rep = h1_word(sk, k);
        let mut letters = rep.letters.clone();
        letters.extend(random_commutator(sk, rep.start, rng));
        let alt = PathWord { letters: reduce(&letters), start: rep.start };
        let fx2: Expr = Atom::logdet(alt.clone()).into();
        let lhs2 = eval(&fock_rosly_bracket(sk, g, &lie, &fx2, &fy), &pt)?;
        t.expect_eq("logdet_representative_independence", &lhs2, &lhs, || {
            json!({ "class": k, "representative": alt.display(sk), "y": show_sum(sk, &FormalSum::single(y.clone())) })
        });
        if alt.letters != rep.letters {
            t.note("alternative_representatives");
        }
    }
    Ok(())
}

/// π_FR commutes with slides and reversals, and the fused bivector equals the
/// bivector of the fused skeleton.
pub fn fr_invariance(case: &Case, rng: &mut TrialRng, t: &mut Trial) -> Result<()> {
    let (sk, g) = (case.sk(), case.g());
    let lie = g.even_data().expect("GL has even data");
    let pt = ModuliPoint::random(sk, g, rng.gen())?;
    let f = random_function(sk, g, rng.gen_range(1..=2), case.max_len.min(4), rng);
    let h = random_function(sk, g, 1, case.max_len.min(4), rng);
    let inputs = || json!({ "f": show_fn(sk, &f), "h": show_fn(sk, &h), "point": pt.to_json() });
    let base = eval(&fock_rosly_bracket(sk, g, &lie, &f.clone().into(), &h.clone().into()), &pt)?;
    if !base.is_zero() {
        t.note("nonzero");
    }
    for m in single_moves(sk) {
        let pt2 = pt.transport(&m)?;
        let (f2, h2) = (transport_function(&m, &f), transport_function(&m, &h));
        let moved = eval(&fock_rosly_bracket(&m.target, g, &lie, &f2.into(), &h2.into()), &pt2)?;
        t.expect_eq("move_invariance", &moved, &base, inputs);
        t.note("moves");
    }
    if sk.num_vertices() >= 2 {
        let (p1, p2) = (0, 1);
        let (fused, _) = fuse(sk, p1, p2)?;
        let direct = eval(&fock_rosly_bracket(&fused, g, &lie, &f.clone().into(), &h.clone().into()), &pt)?;
        let formula = eval(&fused_fock_rosly(sk, g, &lie, p1, p2, &f.clone().into(), &h.clone().into()), &pt)?;
        t.expect_eq("fusion", &formula, &direct, inputs);
        t.note("fusions");
        if direct != base {
            t.note("fusion_cross_term_nonzero");
        }
    }
    Ok(())
}

/// Jacobiator of π_FR equals the action of the Cartan trivector φ.
pub fn fr_quasi(case: &Case, rng: &mut TrialRng, t: &mut Trial) -> Result<()> {
    let (sk, g) = (case.sk(), case.g());
    let lie = g.even_data().expect("GL has even data");
    let pt = ModuliPoint::random(sk, g, rng.gen())?;
    let fs = [0, 1, 2].map(|_| entry_function(sk, g, 1, case.max_len.min(3), rng));
    let es: Vec<Expr> = fs.iter().map(|f| f.clone().into()).collect();
    let lhs = eval(&jacobiator(sk, g, &lie, [&es[0], &es[1], &es[2]]), &pt)?;
    let rhs = eval(&quasi_poisson_phi(sk, g, &lie, [&es[0], &es[1], &es[2]]), &pt)?;
    t.expect_eq("jacobiator_equals_phi", &lhs, &rhs, || {
        json!({ "f": show_fn(sk, &fs[0]), "g": show_fn(sk, &fs[1]), "h": show_fn(sk, &fs[2]), "point": pt.to_json() })
    });
    if !lhs.is_zero() {
        t.note("nonzero");
    }
    Ok(())
}
