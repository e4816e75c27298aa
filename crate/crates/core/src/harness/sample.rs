//! Random inputs for the suites: atoms, functions, based loops and the
//! moves available on a skeleton.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::loops::sample::{random_loop, random_path};
use crate::loops::word::{inverse_word, reduce};
use crate::loops::{CyclicWord, Letter, PathWord};
use crate::modulispace::{Atom, GroupSpec, ModuliFunction};
use crate::surface::{reverse_edge, slide, End, Skeleton, SkeletonMoveMap};

pub type TrialRng = ChaCha8Rng;

/// Matrix size of the realization used for entry atoms.
fn size(g: GroupSpec) -> usize {
    match g {
        GroupSpec::Gl(n) | GroupSpec::Q(n) => n,
        GroupSpec::Aff1Double => 3,
    }
}

/// A random matrix-entry atom on a non-backtracking path of length in `lens`.
/// For the aff(1) double the constant first row is avoided and the first
/// column, the only one carrying odd coordinates, is drawn half the time;
/// otherwise Δ almost always vanishes there.
pub fn entry_atom(sk: &Skeleton, g: GroupSpec, lens: std::ops::RangeInclusive<usize>, rng: &mut TrialRng) -> Atom {
    let n = size(g);
    let start = rng.gen_range(0..sk.num_vertices());
    let word = random_path(sk, start, rng.gen_range(lens), rng);
    let block = if matches!(g, GroupSpec::Q(_)) { rng.gen_range(0..2) } else { 0 };
    let (row, col) = if g == GroupSpec::Aff1Double {
        (rng.gen_range(1..3), if rng.gen_bool(0.5) { 0 } else { rng.gen_range(1..3) })
    } else {
        (rng.gen_range(0..n), rng.gen_range(0..n))
    };
    Atom::Ent { word, block, row, col }
}

/// The natural invariant function of the group on a closed word:
/// otr on Q(n), the (super)trace otherwise.
pub fn invariant_atom(g: GroupSpec, w: PathWord) -> Atom {
    if matches!(g, GroupSpec::Q(_)) {
        Atom::otr(w)
    } else {
        Atom::tr(w)
    }
}

pub fn loop_atom(sk: &Skeleton, g: GroupSpec, max_len: usize, rng: &mut TrialRng) -> Atom {
    invariant_atom(g, random_loop(sk, max_len, rng).as_path(sk))
}

/// A product of `k` atoms, each an entry atom or (with probability ½) an
/// invariant function of a loop.
pub fn random_function(sk: &Skeleton, g: GroupSpec, k: usize, max_len: usize, rng: &mut TrialRng) -> ModuliFunction {
    let atoms = (0..k)
        .map(|_| {
            if rng.gen_bool(0.5) {
                loop_atom(sk, g, max_len, rng)
            } else {
                entry_atom(sk, g, 1..=max_len.min(3), rng)
            }
        })
        .collect();
    ModuliFunction::product(atoms)
}

/// A product of `k` entry atoms. Gauge-invariant functions are annihilated by
/// every ρ_p, so identities involving φ need these to be nontrivial.
pub fn entry_function(sk: &Skeleton, g: GroupSpec, k: usize, max_len: usize, rng: &mut TrialRng) -> ModuliFunction {
    ModuliFunction::product((0..k).map(|_| entry_atom(sk, g, 1..=max_len.max(1), rng)).collect())
}

/// `k` distinct entries of `items`, in random order (all of them if fewer).
pub fn choose<T: Clone>(items: &[T], k: usize, rng: &mut TrialRng) -> Vec<T> {
    use rand::seq::SliceRandom;
    items.choose_multiple(rng, k).cloned().collect()
}

/// A reduced closed path based at `v` (possibly empty).
pub fn based_loop(sk: &Skeleton, v: usize, len: usize, rng: &mut TrialRng) -> Vec<Letter> {
    let p = random_path(sk, v, len, rng);
    let mut letters = p.letters.clone();
    letters.extend(sk.tree_path(p.end(sk), v));
    reduce(&letters)
}

/// Reduced commutator u v u⁻¹ v⁻¹ of two random loops based at `v`.
pub fn random_commutator(sk: &Skeleton, v: usize, rng: &mut TrialRng) -> Vec<Letter> {
    let u = based_loop(sk, v, rng.gen_range(1..=3), rng);
    let w = based_loop(sk, v, rng.gen_range(1..=3), rng);
    let mut c = u.clone();
    c.extend_from_slice(&w);
    c.extend(inverse_word(&u));
    c.extend(inverse_word(&w));
    reduce(&c)
}

/// A random letter leaving vertex `v`.
pub fn letter_at(sk: &Skeleton, v: usize, rng: &mut TrialRng) -> Letter {
    let hs = sk.halfedges_at(v);
    let h = hs[rng.gen_range(0..hs.len())];
    Letter::new(h.edge, h.end == End::Head)
}

/// Random loop whose canonical word has length at least `min_len`.
pub fn long_loop(sk: &Skeleton, min_len: usize, max_len: usize, rng: &mut TrialRng) -> CyclicWord {
    loop {
        let w = random_loop(sk, max_len, rng);
        if w.len() >= min_len {
            return w;
        }
    }
}

/// Every legal single slide and every edge reversal of `sk`.
pub fn single_moves(sk: &Skeleton) -> Vec<SkeletonMoveMap> {
    let mut maps = Vec::new();
    for v in 0..sk.num_vertices() {
        let hs = sk.halfedges_at(v);
        for (i, &h) in hs.iter().enumerate() {
            for (j, other) in hs.iter().enumerate() {
                if i != j {
                    if let Ok((_, m)) = slide(sk, h, other.edge) {
                        maps.push(m);
                    }
                }
            }
        }
    }
    for e in 0..sk.num_edges() {
        if let Ok((_, m)) = reverse_edge(sk, e) {
            maps.push(m);
        }
    }
    maps
}

/// `count` random composites of two single moves.
pub fn double_moves(sk: &Skeleton, count: usize, rng: &mut TrialRng) -> Vec<SkeletonMoveMap> {
    let first = single_moves(sk);
    let mut out = Vec::new();
    if first.is_empty() {
        return out;
    }
    for _ in 0..count {
        let m1 = &first[rng.gen_range(0..first.len())];
        let second = single_moves(&m1.target);
        if second.is_empty() {
            continue;
        }
        out.push(m1.then(&second[rng.gen_range(0..second.len())]));
    }
    out
}
