//! Identities of the Goldman–Turaev Lie bialgebra itself.

use rand::Rng;
use serde_json::json;

use super::{show_sum, show_wedges};
use crate::error::Result;
use crate::harness::sample::{double_moves, single_moves, TrialRng};
use crate::harness::{Case, Trial};
use crate::loops::formal::{add_wedge, loop_generator, wedge_product};
use crate::loops::sample::random_loop;
use crate::loops::{goldman_bracket_words, turaev_cobracket_word, FormalSum, LoopAlgebra, WBasis, WedgeSum};
use crate::superalgebra::Rational;

fn gen(w: &crate::loops::CyclicWord) -> FormalSum<WBasis> {
    FormalSum::single(WBasis::Loop(w.clone()))
}

/// Antisymmetry, Jacobi, co-Jacobi, the cocycle condition, involutivity and
/// Δ² = 0 on the exterior algebra.
pub fn gt_axioms(case: &Case, rng: &mut TrialRng, t: &mut Trial) -> Result<()> {
    let sk = case.sk();
    let alg = LoopAlgebra::new(sk, rng.gen(), false)?;
    let [x, y, z] = [0, 1, 2].map(|_| random_loop(sk, case.max_len, rng));
    let inputs = || json!({ "x": x.display(sk), "y": y.display(sk), "z": z.display(sk), "realization_seed": alg.seed });
    let show = |s: &FormalSum<WBasis>| show_sum(sk, s);
    let show_w = |s: &WedgeSum| show_wedges(sk, s);
    let zero = FormalSum::zero();

    let xy = alg.bracket(&gen(&x), &gen(&y))?;
    t.check("antisymmetry", &xy, &alg.bracket(&gen(&y), &gen(&x))?.neg(), show, inputs);
    if !xy.is_zero() {
        t.note("nonzero_bracket");
    }

    let jac = alg
        .bracket(&gen(&x), &alg.bracket(&gen(&y), &gen(&z))?)?
        .add(&alg.bracket(&gen(&y), &alg.bracket(&gen(&z), &gen(&x))?)?)
        .add(&alg.bracket(&gen(&z), &xy)?);
    t.check("jacobi", &jac, &zero, show, inputs);

    let dx = alg.cobracket_gen(&WBasis::Loop(x.clone()))?;
    let dy = alg.cobracket_gen(&WBasis::Loop(y.clone()))?;
    if !dx.is_zero() {
        t.note("nonzero_cobracket");
    }
    t.check("co-jacobi", &alg.cobracket_derivation(&dx)?, &WedgeSum::zero(), show_w, inputs);
    t.check("involutivity", &alg.bracket_of_pairs(&dx)?, &zero, show, inputs);

    // δ[x, y] = x·δy − y·δx
    let mut lhs = WedgeSum::zero();
    for (w, c) in xy.iter() {
        lhs.add_scaled(&alg.cobracket_gen(w)?, c);
    }
    let rhs = alg.ad_wedge(&WBasis::Loop(x.clone()), &dy)?.sub(&alg.ad_wedge(&WBasis::Loop(y.clone()), &dx)?);
    t.check("cocycle", &lhs, &rhs, show_w, inputs);

    let xyz = wedge_product(&wedge_product(&loop_generator(x.clone()), &loop_generator(y.clone())), &loop_generator(z.clone()));
    for scale in [1, 2] {
        let s = Rational::from_int(scale);
        let dd = alg.bv_delta_wedge(&alg.bv_delta_wedge(&xyz, &s)?, &s)?;
        t.check(&format!("bv_delta_squared(scale {scale})"), &dd, &WedgeSum::zero(), show_w, inputs);
    }
    Ok(())
}

/// Bracket and cobracket do not depend on the realization seed, and commute
/// with the groupoid isomorphisms induced by slides and reversals.
pub fn realization(case: &Case, rng: &mut TrialRng, t: &mut Trial) -> Result<()> {
    let sk = case.sk();
    let x = random_loop(sk, case.max_len, rng);
    let y = random_loop(sk, case.max_len, rng);
    let inputs = || json!({ "x": x.display(sk), "y": y.display(sk) });
    let base_seed: u64 = rng.gen();
    let b0 = goldman_bracket_words(sk, &x, &y, base_seed)?;
    let d0 = turaev_cobracket_word(sk, &x, base_seed)?;
    let show_b = |s: &FormalSum<crate::loops::CyclicWord>| crate::loops::formal::display_loops(sk, s);
    let show_w = |s: &WedgeSum| show_wedges(sk, s);
    for _ in 0..8 {
        let s: u64 = rng.gen();
        t.check("bracket_seed_independence", &goldman_bracket_words(sk, &x, &y, s)?, &b0, show_b, inputs);
        t.check("cobracket_seed_independence", &turaev_cobracket_word(sk, &x, s)?, &d0, show_w, inputs);
        t.note("realization_seeds");
    }

    let singles = single_moves(sk);
    let mut maps: Vec<_> = (0..2.min(singles.len())).map(|_| singles[rng.gen_range(0..singles.len())].clone()).collect();
    maps.extend(double_moves(sk, 2, rng));
    for m in &maps {
        let s: u64 = rng.gen();
        let b = goldman_bracket_words(&m.target, &m.transport_cyclic(&x), &m.transport_cyclic(&y), s)?;
        let back: FormalSum<_> = b.iter().map(|(w, c)| (m.transport_back_cyclic(w), c.clone())).collect();
        t.check("bracket_skeleton_independence", &back, &b0, show_b, inputs);
        let d = turaev_cobracket_word(&m.target, &m.transport_cyclic(&x), s)?;
        let mut back_d = WedgeSum::zero();
        for (mono, c) in d.iter() {
            let f = mono
                .iter()
                .map(|g| match g {
                    WBasis::Loop(w) => WBasis::Loop(m.transport_back_cyclic(w)),
                    h => h.clone(),
                })
                .collect();
            add_wedge(&mut back_d, f, c.clone());
        }
        t.check("cobracket_skeleton_independence", &back_d, &d0, show_w, inputs);
        t.note("moved_skeletons");
    }
    if !b0.is_zero() {
        t.note("nonzero_bracket");
    }
    if !d0.is_zero() {
        t.note("nonzero_cobracket");
    }
    Ok(())
}
