//! The Fock–Rosly bracket, the quasi-BV operator, the φ-action and fusion,
//! all assembled as derivative expressions.

use super::expr::{Expr, Slot, Target};
use super::group::{GElem, GroupSpec};
use crate::superalgebra::{EvenMetricLieData, OddMetricLieData, Rational, Tensor3};
use crate::surface::{End, HalfEdge, Skeleton};

/// Σ_k c_k e_k and its parity (`None` if all coefficients vanish).
fn direction(g: GroupSpec, coeffs: &[Rational]) -> Option<(GElem, u8)> {
    let k = coeffs.iter().position(|c| !c.is_zero())?;
    Some((g.combination(coeffs), g.parity(k)))
}

/// Rows of ½·c: u_i = Σ_j ½ c_ij e_j for each i with u_i ≠ 0.
fn half_contractions(g: GroupSpec, terms: &[(usize, usize, Rational)]) -> Vec<(usize, GElem, u8)> {
    let d = g.dim();
    let half = Rational::new(1, 2);
    let mut rows = vec![vec![Rational::zero(); d]; d];
    for (i, j, c) in terms {
        rows[*i][*j] = c * &half;
    }
    rows.iter()
        .enumerate()
        .filter_map(|(i, r)| direction(g, r).map(|(u, p)| (i, u, p)))
        .collect()
}

fn basis_slot(g: GroupSpec, target: Target, k: usize) -> Slot {
    Slot { target, dir: g.basis(k), parity: g.parity(k) }
}

/// Half-edge pairs (a, {b > a}) over all vertices.
fn ordered_pairs(sk: &Skeleton) -> Vec<(HalfEdge, Vec<HalfEdge>)> {
    let mut out = Vec::new();
    for v in 0..sk.num_vertices() {
        let hs = sk.halfedges_at(v);
        for (k, &a) in hs.iter().enumerate() {
            if k + 1 < hs.len() {
                out.push((a, hs[k + 1..].to_vec()));
            }
        }
    }
    out
}

/// ρ_p(x) = Σ_{a ∈ he(p)} (x)_a.
pub fn rho(sk: &Skeleton, p: usize, dir: GElem, parity: u8, f: Expr) -> Expr {
    Expr::deriv(Slot { target: Target::HalfEdges(sk.halfedges_at(p).to_vec()), dir, parity }, f)
}

/// Δf = Σ_p Σ_{a<b} ½ (−1)^{|e_i|} t^{ij} (e_i)_a (e_j)_b f + Σ_e ½ rot_e (ν)_{tail e} f.
pub fn quasi_bv_delta(sk: &Skeleton, g: GroupSpec, lie: &OddMetricLieData, f: &Expr) -> Expr {
    let rows = half_contractions(g, &lie.casimir_terms());
    let mut terms = Vec::new();
    for (a, after) in ordered_pairs(sk) {
        for (i, u, pu) in &rows {
            let inner = Expr::deriv(Slot { target: Target::HalfEdges(after.clone()), dir: u.clone(), parity: *pu }, f.clone());
            terms.push((Rational::one(), Expr::deriv(basis_slot(g, Target::HalfEdges(vec![a]), *i), inner)));
        }
    }
    terms.extend(nu_terms(sk, g, lie, f));
    Expr::Sum(terms)
}

fn nu_terms(sk: &Skeleton, g: GroupSpec, lie: &OddMetricLieData, f: &Expr) -> Vec<(Rational, Expr)> {
    let Some((nu, pnu)) = direction(g, &lie.nu) else {
        return Vec::new();
    };
    (0..sk.num_edges())
        .filter(|&e| sk.rot2(e) != 0)
        .map(|e| {
            let tail = HalfEdge { edge: e, end: End::Tail };
            // ½·rot = ¼·rot2
            (Rational::new(sk.rot2(e), 4), Expr::deriv(Slot::half_edge(tail, nu.clone(), pnu), f.clone()))
        })
        .collect()
}

/// {f, g} = Σ_p Σ_{a<b} ½ s^{ij} ((e_i)_a f (e_j)_b g − (e_j)_b f (e_i)_a g).
pub fn fock_rosly_bracket(sk: &Skeleton, g: GroupSpec, lie: &EvenMetricLieData, f: &Expr, h: &Expr) -> Expr {
    let rows = half_contractions(g, &lie.casimir_terms());
    let mut terms = Vec::new();
    for (a, after) in ordered_pairs(sk) {
        for (i, u, pu) in &rows {
            let da = |x: &Expr| Expr::deriv(basis_slot(g, Target::HalfEdges(vec![a]), *i), x.clone());
            let db = |x: &Expr| {
                Expr::deriv(Slot { target: Target::HalfEdges(after.clone()), dir: u.clone(), parity: *pu }, x.clone())
            };
            terms.push((Rational::one(), Expr::Prod(vec![da(f), db(h)])));
            terms.push((-Rational::one(), Expr::Prod(vec![db(f), da(h)])));
        }
    }
    Expr::Sum(terms)
}

/// ρ_p(φ) f = φ^{xyz} ρ_p(e_x)ρ_p(e_y)ρ_p(e_z) f (e_z acts first).
pub fn phi_action(sk: &Skeleton, g: GroupSpec, phi: &Tensor3, p: usize, f: &Expr) -> Expr {
    let d = g.dim();
    let mut terms = Vec::new();
    for x in 0..d {
        for y in 0..d {
            let coeffs: Vec<Rational> = (0..d).map(|z| phi.get(x, y, z).clone()).collect();
            if let Some((w, pw)) = direction(g, &coeffs) {
                let inner = rho(sk, p, w, pw, f.clone());
                let mid = rho(sk, p, g.basis(y), g.parity(y), inner);
                terms.push((Rational::one(), rho(sk, p, g.basis(x), g.parity(x), mid)));
            }
        }
    }
    Expr::Sum(terms)
}

/// Σ_p ρ_p(φ) f.
pub fn phi_total(sk: &Skeleton, g: GroupSpec, phi: &Tensor3, f: &Expr) -> Expr {
    Expr::Sum((0..sk.num_vertices()).map(|p| (Rational::one(), phi_action(sk, g, phi, p, f))).collect())
}

/// Trivector action Σ_p f^{ijk} ρ_p(e_i)f₁ · ρ_p(e_j)f₂ · ρ_p(e_k)f₃ of the
/// even Cartan tensor.
pub fn cartan_trivector(sk: &Skeleton, g: GroupSpec, lie: &EvenMetricLieData, fs: [&Expr; 3]) -> Expr {
    let mut terms = Vec::new();
    for p in 0..sk.num_vertices() {
        for (i, j, k, c) in lie.cartan.nonzero() {
            let r = |x: usize, f: &Expr| rho(sk, p, g.basis(x), 0, f.clone());
            terms.push((c, Expr::Prod(vec![r(i, fs[0]), r(j, fs[1]), r(k, fs[2])])));
        }
    }
    Expr::Sum(terms)
}

/// Σ_p ρ_p(φ) on a triple for φ = (1/24) f^{ijk} e_i∧e_j∧e_k: the Cartan
/// trivector averaged over the six orderings of the arguments with signs.
pub fn quasi_poisson_phi(sk: &Skeleton, g: GroupSpec, lie: &EvenMetricLieData, fs: [&Expr; 3]) -> Expr {
    const PERMS: [([usize; 3], i64); 6] =
        [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([1, 0, 2], -1), ([0, 2, 1], -1), ([2, 1, 0], -1)];
    let terms = PERMS
        .iter()
        .map(|(p, s)| (Rational::new(*s, 24), cartan_trivector(sk, g, lie, [fs[p[0]], fs[p[1]], fs[p[2]]])))
        .collect();
    Expr::Sum(terms)
}

/// Jacobiator {f,{g,h}} + {g,{h,f}} + {h,{f,g}}.
pub fn jacobiator(sk: &Skeleton, g: GroupSpec, lie: &EvenMetricLieData, fs: [&Expr; 3]) -> Expr {
    let br = |a: &Expr, b: &Expr| fock_rosly_bracket(sk, g, lie, a, b);
    let [f, gg, h] = fs;
    Expr::Sum(vec![
        (Rational::one(), br(f, &br(gg, h))),
        (Rational::one(), br(gg, &br(h, f))),
        (Rational::one(), br(h, &br(f, gg))),
    ])
}

/// Δ of the skeleton obtained by fusing `p1` and `p2` (half-edges of p1
/// first), written on the unfused skeleton: Δ + ½(−1)^{|e_i|}t^{ij} ρ_{p1}(e_i)ρ_{p2}(e_j).
pub fn fused_delta(sk: &Skeleton, g: GroupSpec, lie: &OddMetricLieData, p1: usize, p2: usize, f: &Expr) -> Expr {
    let mut terms = vec![(Rational::one(), quasi_bv_delta(sk, g, lie, f))];
    for (i, u, pu) in half_contractions(g, &lie.casimir_terms()) {
        let inner = rho(sk, p2, u, pu, f.clone());
        terms.push((Rational::one(), rho(sk, p1, g.basis(i), g.parity(i), inner)));
    }
    Expr::Sum(terms)
}

/// The even counterpart: π_FR of the fused skeleton on the unfused one.
pub fn fused_fock_rosly(sk: &Skeleton, g: GroupSpec, lie: &EvenMetricLieData, p1: usize, p2: usize, f: &Expr, h: &Expr) -> Expr {
    let mut terms = vec![(Rational::one(), fock_rosly_bracket(sk, g, lie, f, h))];
    for (i, u, pu) in half_contractions(g, &lie.casimir_terms()) {
        let r1 = |x: &Expr| rho(sk, p1, g.basis(i), g.parity(i), x.clone());
        let r2 = |x: &Expr| rho(sk, p2, u.clone(), pu, x.clone());
        terms.push((Rational::one(), Expr::Prod(vec![r1(f), r2(h)])));
        terms.push((-Rational::one(), Expr::Prod(vec![r2(f), r1(h)])));
    }
    Expr::Sum(terms)
}
