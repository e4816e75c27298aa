//! Holonomy maps from the loop algebra to functions on the moduli space.
//!
//! Φ^even sends a loop class to the trace of its holonomy, the trivial class
//! to the constant n and an H₁ basis class to log det of its representative.
//! Φ^odd sends a wedge of loop classes to the ordered product of otr's and an
//! H₁ class to odet. The tilde (H₁-extended) versions are the same functions
//! applied to sums that contain `WBasis::H1` terms.

use crate::loops::{CyclicWord, FormalSum, Letter, PathWord, WBasis, WedgeSum};
use crate::modulispace::{Atom, Expr, ModuliFunction};
use crate::superalgebra::Rational;
use crate::surface::{Skeleton, SkeletonMoveMap};

/// Based representative of an H₁ basis class (at vertex 0).
pub fn h1_word(sk: &Skeleton, k: usize) -> PathWord {
    let letters = sk.h1_representative(k);
    PathWord { start: letters.first().map(|l| l.start(sk)).unwrap_or(0), letters }
}

fn even_generator(sk: &Skeleton, g: &WBasis, n: usize) -> ModuliFunction {
    match g {
        WBasis::Loop(w) if w.is_trivial() => ModuliFunction::constant(Rational::from_int(n as i64)),
        WBasis::Loop(w) => ModuliFunction::atom(Atom::tr(w.as_path(sk))),
        WBasis::H1(k) => ModuliFunction::atom(Atom::logdet(h1_word(sk, *k))),
    }
}

/// Φ^even on gW ⊕ H₁ for GL(n).
pub fn phi_even(sk: &Skeleton, x: &FormalSum<WBasis>, n: usize) -> Expr {
    Expr::Sum(x.iter().map(|(g, c)| (c.clone(), Expr::Func(even_generator(sk, g, n)))).collect())
}

/// Φ^even on loop classes only.
pub fn phi_even_loops(sk: &Skeleton, x: &FormalSum<CyclicWord>, n: usize) -> Expr {
    let lifted: FormalSum<WBasis> = x.iter().map(|(w, c)| (WBasis::Loop(w.clone()), c.clone())).collect();
    phi_even(sk, &lifted, n)
}

/// Φ^odd on the exterior algebra of gW' ⊕ H₁ for Q(n).
pub fn phi_odd(sk: &Skeleton, x: &WedgeSum) -> Expr {
    Expr::Sum(
        x.iter()
            .map(|(mono, c)| {
                let atoms = mono
                    .iter()
                    .map(|g| match g {
                        WBasis::Loop(w) => Atom::otr(w.as_path(sk)),
                        WBasis::H1(k) => Atom::odet(h1_word(sk, *k)),
                    })
                    .collect();
                (c.clone(), Expr::Func(ModuliFunction::product(atoms)))
            })
            .collect(),
    )
}

/// Letter-by-letter image of `w` (unreduced) together with the image of
/// every letter boundary.
fn transport_unreduced(m: &SkeletonMoveMap, w: &PathWord) -> (PathWord, Vec<usize>) {
    let mut letters = Vec::new();
    let mut positions = vec![0];
    for l in &w.letters {
        let img = &m.forward[l.edge];
        if l.inv {
            letters.extend(img.iter().rev().map(|x| x.inverse()));
        } else {
            letters.extend_from_slice(img);
        }
        positions.push(letters.len());
    }
    (PathWord { letters, start: m.vertex_map[w.start] }, positions)
}

/// Rewrites `f` on the target skeleton of `m`. Chord-free functions get
/// reduced words; with chords, words are substituted letter by letter so the
/// chord endpoints keep their meaning.
pub fn transport_function(m: &SkeletonMoveMap, f: &ModuliFunction) -> ModuliFunction {
    let keep = !f.chords.is_empty();
    let mut position_maps = Vec::new();
    let mut word = |w: &PathWord| {
        if keep {
            let (t, pos) = transport_unreduced(m, w);
            position_maps.push(pos);
            t
        } else {
            m.transport_path(w)
        }
    };
    let atoms = f
        .atoms
        .iter()
        .map(|a| match a {
            Atom::Inv(k, w) => Atom::Inv(*k, word(w)),
            Atom::Ent { word: w, block, row, col } => Atom::Ent { word: word(w), block: *block, row: *row, col: *col },
        })
        .collect();
    let mut out = ModuliFunction::product(atoms).scaled(&f.coeff);
    for c in &f.chords {
        let mut c = c.clone();
        c.from.pos = position_maps[c.from.atom][c.from.pos];
        c.to.pos = position_maps[c.to.atom][c.to.pos];
        c.via = transport_unreduced(m, &c.via).0;
        out = out.with_chord(c);
    }
    out
}

/// The letters of `w` with `w'` spliced in after position `k`.
pub fn splice(w: &PathWord, k: usize, insert: &[Letter]) -> PathWord {
    let mut letters = w.letters.clone();
    letters.splice(k..k, insert.iter().copied());
    PathWord { letters, start: w.start }
}
