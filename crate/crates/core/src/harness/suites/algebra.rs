//! Finite-dimensional identities: structure tensors of q(n), gl(n) and the
//! aff(1) double, the matrix-unit identity, and otr/odet on Q(n).

use std::sync::OnceLock;

use rand::Rng;
use serde_json::json;

use crate::error::Result;
use crate::harness::sample::TrialRng;
use crate::harness::{Case, Trial};
use crate::modulispace::{eval, Atom, Expr, GElem, GroupSpec, ModuliPoint, Slot};
use crate::superalgebra::liedata::matrix_unit_contraction;
use crate::superalgebra::{build_qn, odd_double, EvenLieData, EvenMetricLieData, Grassmann, QElement, Rational};
use crate::surface::{standard, HalfEdge};

/// The tensor checks are deterministic, so they run once per process.
fn structure_checks() -> &'static Vec<(String, std::result::Result<(), String>)> {
    static CHECKS: OnceLock<Vec<(String, std::result::Result<(), String>)>> = OnceLock::new();
    CHECKS.get_or_init(|| {
        let mut out = Vec::new();
        for n in 1..=3 {
            let q = build_qn(n);
            out.push((format!("q({n}) tensors"), q.check_all()));
            out.push((format!("q({n}) discardy"), q.check_discardy()));
            out.push((
                format!("q({n}) nu = 0"),
                if q.nu.iter().all(Rational::is_zero) { Ok(()) } else { Err("ν ≠ 0".into()) },
            ));
            out.push((format!("gl({n}) tensors"), EvenMetricLieData::gl(n).check_all()));
        }
        match odd_double(&EvenLieData::aff1()) {
            Ok(d) => {
                out.push(("aff(1) double tensors".into(), d.check_all()));
                out.push((
                    "aff(1) double nu != 0".into(),
                    if d.nu.iter().any(|c| !c.is_zero()) { Ok(()) } else { Err("ν = 0".into()) },
                ));
            }
            Err(e) => out.push(("aff(1) double".into(), Err(e.to_string()))),
        }
        out
    })
}

fn random_rationals(rng: &mut TrialRng, k: usize) -> Vec<Rational> {
    (0..k).map(|_| Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect()
}

/// A Q(3) element with integer body and only `odd` odd generators, starting at `first`.
fn sparse_q3(rng: &mut TrialRng, first: usize, odd: usize) -> QElement {
    let n = 3;
    loop {
        let x: Vec<Grassmann> = (0..n * n)
            .map(|i| {
                let d = if i % (n + 1) == 0 { 1 } else { 0 };
                Grassmann::from_int(d + rng.gen_range(-1..=1))
            })
            .collect();
        let mut y = vec![Grassmann::zero(); n * n];
        for k in 0..odd {
            let slot = rng.gen_range(0..n * n);
            y[slot] = &y[slot] + &Grassmann::generator(first + k).scale(&Rational::from_int(rng.gen_range(1..=3)));
        }
        let g = QElement::from_blocks(n, x, y);
        if g.inverse().is_ok() {
            return g;
        }
    }
}

pub fn algebra_ids(_case: &Case, rng: &mut TrialRng, t: &mut Trial) -> Result<()> {
    for (name, r) in structure_checks() {
        t.expect(name, r.is_ok(), || json!({ "error": r.clone().err() }));
    }

    // Σ S^{ab} E_a X E_b = Tr(X)·1
    for n in 1..=3 {
        let x = random_rationals(rng, n * n);
        let tr = (0..n).fold(Rational::zero(), |acc, i| &acc + &x[i * n + i]);
        let expected: Vec<Rational> = (0..n * n).map(|i| if i % (n + 1) == 0 { tr.clone() } else { Rational::zero() }).collect();
        t.check(&format!("matrix_unit_identity(n={n})"), &matrix_unit_contraction(n, &x), &expected, |v| format!("{v:?}"), || {
            json!({ "X": x.iter().map(Rational::to_fraction_string).collect::<Vec<_>>() })
        });
    }

    // otr(GH) = otr(HG) and odet(GH) = odet(G) + odet(H) at random points
    let torus = standard::torus();
    for n in 1..=2 {
        let pt = ModuliPoint::random(&torus, GroupSpec::Q(n), rng.gen())?;
        let (g, h) = (&pt.elems[0], &pt.elems[1]);
        let inputs = || json!({ "G": g.to_json(), "H": h.to_json() });
        t.expect_eq(&format!("otr_cyclicity(n={n})"), &g.mul(h).otr()?, &h.mul(g).otr()?, inputs);
        t.expect_eq(&format!("odet_additivity(n={n})"), &g.mul(h).odet()?, &(&g.odet()? + &h.odet()?), inputs);
    }
    let (g3, h3) = (sparse_q3(rng, 0, 3), sparse_q3(rng, 3, 3));
    let (g, h) = (GElem::Q(g3), GElem::Q(h3));
    let inputs = || json!({ "G": g.to_json(), "H": h.to_json() });
    t.expect_eq("otr_cyclicity(n=3)", &g.mul(&h).otr()?, &h.mul(&g).otr()?, inputs);
    t.expect_eq("odet_additivity(n=3)", &g.mul(&h).odet()?, &(&g.odet()? + &h.odet()?), inputs);

    // x^L odet = −otr(x): the left-invariant derivative along every basis direction
    let path = standard::path();
    for n in 1..=2 {
        let grp = GroupSpec::Q(n);
        let pt = ModuliPoint::random(&path, grp, rng.gen())?;
        let f: Expr = Atom::odet(crate::loops::PathWord { letters: vec![crate::loops::Letter::fwd(0)], start: 0 }).into();
        for k in 0..grp.dim() {
            let slot = Slot::half_edge(HalfEdge::tail(0), grp.basis(k), grp.parity(k));
            let lhs = eval(&Expr::deriv(slot, f.clone()), &pt)?;
            let rhs = -&grp.basis(k).otr()?;
            t.expect_eq(&format!("left_derivative_of_odet(n={n}, basis={k})"), &lhs, &rhs, || json!({ "point": pt.to_json() }));
        }
    }
    Ok(())
}
