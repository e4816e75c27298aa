//! Random reduced words for randomized identity checks.

use rand::Rng;

use crate::surface::Skeleton;

use super::word::{reduce, CyclicWord, Letter, PathWord};

/// Letters that can follow `prev` (or start at `v`) without backtracking.
fn choices(sk: &Skeleton, v: usize, prev: Option<Letter>) -> Vec<Letter> {
    sk.halfedges_at(v)
        .iter()
        .map(|h| Letter::new(h.edge, h.end == crate::surface::End::Head))
        .filter(|l| Some(l.inverse()) != prev)
        .collect()
}

/// Random non-backtracking path of exactly `len` letters from `start`.
pub fn random_path<R: Rng>(sk: &Skeleton, start: usize, len: usize, rng: &mut R) -> PathWord {
    let mut letters = Vec::with_capacity(len);
    let mut v = start;
    let mut prev = None;
    for _ in 0..len {
        let c = choices(sk, v, prev);
        let l = c[rng.gen_range(0..c.len())];
        letters.push(l);
        v = l.end(sk);
        prev = Some(l);
    }
    PathWord { letters, start }
}

/// Random nontrivial loop class that is not a proper power, of length between
/// 1 and `max_len` after closing up along the spanning tree.
pub fn random_loop<R: Rng>(sk: &Skeleton, max_len: usize, rng: &mut R) -> CyclicWord {
    loop {
        let len = rng.gen_range(1..=max_len.max(1));
        let p = random_path(sk, 0, len, rng);
        let mut letters = p.letters.clone();
        letters.extend(sk.tree_path(p.end(sk), 0));
        let w = CyclicWord::canonical(&reduce(&letters));
        if !w.is_trivial() && !w.is_proper_power() && w.len() <= max_len {
            return w;
        }
    }
}
