//! Quasi-BV suites on Q(n) and on the odd double of aff(1), plus fusion.

use rand::Rng;
use serde_json::{json, Value};

use super::{show_fn, show_wedges};
use crate::error::Result;
use crate::harness::sample::{
    choose, entry_atom, entry_function, invariant_atom, letter_at, long_loop, random_commutator, random_function,
    single_moves, TrialRng,
};
use crate::harness::{h1_word, phi_odd, splice, transport_function, Case, Trial};
use crate::loops::formal::add_wedge;
use crate::loops::sample::random_loop;
use crate::loops::word::reduce;
use crate::loops::{CyclicWord, Location, LoopAlgebra, LoopDiagram, PathWord, Strand, WBasis, WedgeSum};
use crate::modulispace::{
    eval, fock_rosly_bracket, fused_delta, fused_fock_rosly, intersection_delta_rhs, phi_total, quasi_bv_delta, rho,
    Atom, Expr, GroupSpec, ModuliFunction, ModuliPoint, RealizedSystem,
};
use crate::superalgebra::{Grassmann, Rational};
use crate::surface::{fuse, Skeleton};

fn nu_active(sk: &Skeleton, g: GroupSpec) -> bool {
    let lie = g.odd_data().expect("odd group");
    lie.nu.iter().any(|c| !c.is_zero()) && (0..sk.num_edges()).any(|e| sk.rot2(e) != 0)
}

/// Moves checked per trial; across trials every move gets sampled.
const MOVES_PER_TRIAL: usize = 4;

/// Δ commutes with slides and reversals (the ν-term included) and kills constants.
pub fn bv_invariance(case: &Case, rng: &mut TrialRng, t: &mut Trial) -> Result<()> {
    let (sk, g) = (case.sk(), case.g());
    let lie = g.odd_data().expect("odd group");
    let pt = ModuliPoint::random(sk, g, rng.gen())?;
    // traces of loops are Δ-closed on the aff(1) double, so use entries there
    let k = rng.gen_range(1..=2);
    let f = if g == GroupSpec::Aff1Double {
        entry_function(sk, g, k, case.max_len.min(3), rng)
    } else {
        random_function(sk, g, k, case.max_len.min(3), rng)
    };
    let inputs = || json!({ "f": show_fn(sk, &f), "point": pt.to_json() });
    let one: Expr = ModuliFunction::constant(Rational::one()).into();
    t.expect_eq("delta_of_one", &eval(&quasi_bv_delta(sk, g, &lie, &one), &pt)?, &Grassmann::zero(), || json!({}));

    let base = eval(&quasi_bv_delta(sk, g, &lie, &f.clone().into()), &pt)?;
    if !base.is_zero() {
        t.note("nonzero");
        if nu_active(sk, g) {
            t.note("nonzero_with_nu");
        }
    }
    let value = eval(&f.clone().into(), &pt)?;
    for m in choose(&single_moves(sk), MOVES_PER_TRIAL, rng) {
        let pt2 = pt.transport(&m)?;
        let f2: Expr = transport_function(&m, &f).into();
        t.expect_eq("function_transport", &eval(&f2, &pt2)?, &value, inputs);
        t.expect_eq("move_invariance", &eval(&quasi_bv_delta(&m.target, g, &lie, &f2), &pt2)?, &base, inputs);
        t.note("moves");
    }
    Ok(())
}

/// Δ² = Σ_p ρ_p(φ), and Δ is g-invariant: ρ_p(x)Δ = (−1)^{|x|} Δρ_p(x).
pub fn bv_square(case: &Case, rng: &mut TrialRng, t: &mut Trial) -> Result<()> {
    let (sk, g) = (case.sk(), case.g());
    let lie = g.odd_data().expect("odd group");
    let pt = ModuliPoint::random(sk, g, rng.gen())?;
    // Q(2) is expensive; the aff(1) double is cheap but needs more odd entries to see φ
    let f = if g == GroupSpec::Aff1Double { entry_function(sk, g, 3, 3, rng) } else { entry_function(sk, g, 2, 2, rng) };
    let fe: Expr = f.clone().into();
    let inputs = || json!({ "f": show_fn(sk, &f), "point": pt.to_json() });
    let delta = quasi_bv_delta(sk, g, &lie, &fe);
    let lhs = eval(&quasi_bv_delta(sk, g, &lie, &delta), &pt)?;
    let rhs = eval(&phi_total(sk, g, &lie.phi, &fe), &pt)?;
    t.expect_eq("delta_squared_equals_phi", &lhs, &rhs, inputs);
    if !lhs.is_zero() {
        t.note("nonzero");
    }

    let p = rng.gen_range(0..sk.num_vertices());
    let k = rng.gen_range(0..g.dim());
    let (x, px) = (g.basis(k), g.parity(k));
    let a = eval(&rho(sk, p, x.clone(), px, delta), &pt)?;
    let b = eval(&quasi_bv_delta(sk, g, &lie, &rho(sk, p, x, px, fe)), &pt)?;
    let b = if px == 1 { -&b } else { b };
    t.expect_eq("g_invariance", &a, &b, || json!({ "f": show_fn(sk, &f), "vertex": p, "basis": k }));
    Ok(())
}

fn entry_like(sk: &Skeleton, g: GroupSpec, word: PathWord, rng: &mut TrialRng) -> Atom {
    match entry_atom(sk, g, 1..=1, rng) {
        Atom::Ent { block, row, col, .. } => Atom::Ent { word, block, row, col },
        other => other,
    }
}

/// Δ∘hol equals the sum over crossings of chord insertions plus the
/// rotation-number term.
pub fn geometric_bv(case: &Case, rng: &mut TrialRng, t: &mut Trial) -> Result<()> {
    let (sk, g) = (case.sk(), case.g());
    let lie = g.odd_data().expect("odd group");
    let pt = ModuliPoint::random(sk, g, rng.gen())?;
    let lp = |rng: &mut TrialRng| invariant_atom(g, random_loop(sk, 4, rng).as_path(sk));
    let open = |rng: &mut TrialRng, len: usize| entry_atom(sk, g, len..=len, rng);
    let kind = rng.gen_range(0..6);
    let atoms = match kind {
        0 => vec![lp(rng)],
        1 => vec![lp(rng), lp(rng)],
        2 => vec![open(rng, 3)],
        3 => vec![open(rng, 2), lp(rng)],
        4 => {
            // Reidemeister II: a backtracking detour d d⁻¹ inside an open path
            let Atom::Ent { word, .. } = open(rng, 2) else { unreachable!() };
            let k = rng.gen_range(0..=word.len());
            let d = letter_at(sk, word.vertex_at(sk, k), rng);
            let inflated = splice(&word, k, &[d, d.inverse()]);
            t.note("inflated");
            vec![entry_like(sk, g, inflated, rng), lp(rng)]
        }
        _ => vec![open(rng, 2), open(rng, 1)],
    };
    let f = ModuliFunction::product(atoms);
    let seed: u64 = rng.gen();
    let sys = RealizedSystem::new(sk, f.clone(), seed)?;
    let lhs = eval(&quasi_bv_delta(sk, g, &lie, &f.clone().into()), &pt)?;
    let rhs = eval(&intersection_delta_rhs(sk, g, &lie, &sys)?, &pt)?;
    t.expect_eq("delta_equals_intersection_formula", &lhs, &rhs, || {
        json!({ "f": show_fn(sk, &f), "realization_seed": seed, "point": pt.to_json() })
    });
    let crossings = sys.diagram.crossings();
    let boundary = crossings.iter().filter(|c| c.location == Location::Boundary).count() as u64;
    t.note_n("boundary_crossings", boundary);
    t.note_n("interior_crossings", crossings.len() as u64 - boundary);
    if !lhs.is_zero() {
        t.note("nonzero");
        if boundary > 0 {
            t.note("nonzero_with_boundary_crossing");
        }
        if kind == 4 {
            t.note("nonzero_inflated");
        }
        if nu_active(sk, g) {
            t.note("nonzero_with_nu");
        }
    }
    Ok(())
}

fn odd_goldman_check(case: &Case, alg: &LoopAlgebra, x: &WedgeSum, rng: &mut TrialRng, t: &mut Trial) -> Result<bool> {
    let (sk, g) = (case.sk(), case.g());
    let lie = g.odd_data().expect("odd group");
    let pt = ModuliPoint::random(sk, g, rng.gen())?;
    let lhs = eval(&quasi_bv_delta(sk, g, &lie, &phi_odd(sk, x)), &pt)?;
    let rhs = eval(&phi_odd(sk, &alg.bv_delta_wedge(x, &Rational::from_int(2))?), &pt)?;
    let ok = t.expect_eq("delta_of_phi_odd", &lhs, &rhs, || {
        json!({ "wedge": show_wedges(sk, x), "realization_seed": alg.seed, "point": pt.to_json() })
    });
    if !lhs.is_zero() {
        t.note("nonzero");
    }
    Ok(ok)
}

fn wedge(gens: Vec<WBasis>) -> WedgeSum {
    let mut x = WedgeSum::zero();
    add_wedge(&mut x, gens, Rational::one());
    x
}

/// Up to 50 draws of `draw` until `accept` holds; the last draw otherwise.
fn draw_until<T>(rng: &mut TrialRng, mut draw: impl FnMut(&mut TrialRng) -> T, accept: impl Fn(&T) -> bool) -> T {
    let mut x = draw(rng);
    for _ in 0..50 {
        if accept(&x) {
            break;
        }
        x = draw(rng);
    }
    x
}

/// Δ∘Φ^odd = Φ^odd∘Δ^{[,], 2δ} on wedges of loops. Trials alternate between a
/// self-intersecting loop, two intersecting loops, and the commutator loop
/// wedged with a random loop.
pub fn odd_goldman(case: &Case, rng: &mut TrialRng, t: &mut Trial) -> Result<()> {
    let sk = case.sk();
    let alg = LoopAlgebra::new(sk, rng.gen(), false)?;
    let seed = alg.seed;
    let self_crossings = |w: &CyclicWord| {
        LoopDiagram::realize(sk, vec![Strand::Closed(w.clone())], seed).map(|d| d.self_crossings(0).len()).unwrap_or(0)
    };
    let mutual = |p: &(CyclicWord, CyclicWord)| {
        LoopDiagram::realize(sk, vec![Strand::Closed(p.0.clone()), Strand::Closed(p.1.clone())], seed)
            .map(|d| d.crossings_between(0, 1).len())
            .unwrap_or(0)
    };
    let max_len = case.max_len.min(5);
    let kind = rng.gen_range(0..3);
    let x = match kind {
        0 => {
            let w = draw_until(rng, |r| long_loop(sk, 3, max_len, r), |w| self_crossings(w) > 0);
            if self_crossings(&w) > 0 {
                t.note("self_intersection");
            }
            wedge(vec![WBasis::Loop(w)])
        }
        1 => {
            let (u, v) = draw_until(
                rng,
                |r| (random_loop(sk, max_len.min(4), r), random_loop(sk, max_len.min(4), r)),
                |p| p.0 != p.1 && mutual(p) > 0,
            );
            if u != v && mutual(&(u.clone(), v.clone())) > 0 {
                t.note("mutual_intersection");
            }
            wedge(vec![WBasis::Loop(u), WBasis::Loop(v)])
        }
        _ => {
            let c = draw_until(rng, |r| CyclicWord::canonical(&random_commutator(sk, 0, r)), |c| {
                !c.is_trivial() && !c.is_proper_power()
            });
            let w = random_loop(sk, 4, rng);
            t.note("commutator_loop");
            wedge(vec![WBasis::Loop(c), WBasis::Loop(w)])
        }
    };
    if x.is_zero() {
        return Ok(());
    }
    odd_goldman_check(case, &alg, &x, rng, t)?;
    Ok(())
}

/// The three H₁ cases: [a] alone (self-intersections of γ_a cancel),
/// [a]∧[b] (Δ gives ⟨a,b⟩◯ = 0), and [a]∧γ (the extended bracket term).
/// Also checks that odet does not see the representative of a class.
pub fn odd_goldman_ext(case: &Case, rng: &mut TrialRng, t: &mut Trial) -> Result<()> {
    let (sk, g) = (case.sk(), case.g());
    let alg = LoopAlgebra::new(sk, rng.gen(), false)?;
    let rank = alg.rank();
    let a = rng.gen_range(0..rank);
    let kind = rng.gen_range(0..3);
    let x = match kind {
        0 => wedge(vec![WBasis::H1(a)]),
        1 => {
            let b = (a + rng.gen_range(1..rank.max(2))) % rank;
            wedge(vec![WBasis::H1(a), WBasis::H1(b)])
        }
        _ => wedge(vec![WBasis::H1(a), WBasis::Loop(random_loop(sk, case.max_len.min(4), rng))]),
    };
    t.note(["h1_alone", "h1_h1", "h1_loop"][kind]);
    if !x.is_zero() {
        odd_goldman_check(case, &alg, &x, rng, t)?;
    }

    let rep = h1_word(sk, a);
    let mut letters = rep.letters.clone();
    letters.extend(random_commutator(sk, rep.start, rng));
    let alt = PathWord { letters: reduce(&letters), start: rep.start };
    let pt = ModuliPoint::random(sk, g, rng.gen())?;
    let v1 = eval(&Atom::odet(rep.clone()).into(), &pt)?;
    let v2 = eval(&Atom::odet(alt.clone()).into(), &pt)?;
    t.expect_eq("odet_representative_independence", &v2, &v1, || {
        json!({ "class": a, "representative": alt.display(sk), "point": pt.to_json() })
    });
    Ok(())
}

/// Fused Δ / π_FR written on the unfused skeleton equal the operators of the
/// fused skeleton.
pub fn fusion(case: &Case, rng: &mut TrialRng, t: &mut Trial) -> Result<()> {
    let (sk, g) = (case.sk(), case.g());
    let (p1, p2) = (0, 1.min(sk.num_vertices() - 1));
    let (fused, _) = fuse(sk, p1, p2)?;
    let pt = ModuliPoint::random(sk, g, rng.gen())?;
    let f = ModuliFunction::product(vec![entry_atom(sk, g, 1..=3, rng), entry_atom(sk, g, 1..=3, rng)]);
    let h = ModuliFunction::product(vec![entry_atom(sk, g, 1..=3, rng)]);
    let (fe, he): (Expr, Expr) = (f.clone().into(), h.clone().into());
    let inputs = || -> Value { json!({ "f": show_fn(sk, &f), "h": show_fn(sk, &h), "point": pt.to_json() }) };
    let (direct, formula, plain) = if let Some(lie) = g.odd_data() {
        (
            eval(&quasi_bv_delta(&fused, g, &lie, &fe), &pt)?,
            eval(&fused_delta(sk, g, &lie, p1, p2, &fe), &pt)?,
            eval(&quasi_bv_delta(sk, g, &lie, &fe), &pt)?,
        )
    } else {
        let lie = g.even_data().expect("even group");
        (
            eval(&fock_rosly_bracket(&fused, g, &lie, &fe, &he), &pt)?,
            eval(&fused_fock_rosly(sk, g, &lie, p1, p2, &fe, &he), &pt)?,
            eval(&fock_rosly_bracket(sk, g, &lie, &fe, &he), &pt)?,
        )
    };
    t.expect_eq("fused_formula_equals_direct", &formula, &direct, inputs);
    if direct != plain {
        t.note("cross_term_nonzero");
    }
    Ok(())
}
