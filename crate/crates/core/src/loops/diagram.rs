//! Transverse realization of loop and path systems on the fattened skeleton.
//!
//! Every strand runs through the bands of the edges it traverses, in a
//! seeded order per band, and all crossings are pushed into the vertex
//! disks. Inside a disk a passage is a chord between two boundary slots; two
//! chords cross iff their endpoints interleave.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::surface::{End, Skeleton};

use super::word::{CyclicWord, Letter, PathWord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strand {
    Closed(CyclicWord),
    Open(PathWord),
}

impl Strand {
    pub fn letters(&self) -> &[Letter] {
        match self {
            Strand::Closed(w) => w.letters(),
            Strand::Open(p) => &p.letters,
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, Strand::Closed(_))
    }
}

/// A strand's passage through a vertex disk, as a chord between two disk
/// positions. Position 0 is the marked point; slots are numbered from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Passage {
    pub strand: usize,
    /// Index of the outgoing letter (equals the word length at the end of an open strand).
    pub k: usize,
    pub vertex: usize,
    pub from: usize,
    pub to: usize,
}

impl Passage {
    pub fn starts_at_marked_point(&self) -> bool {
        self.from == 0
    }

    pub fn ends_at_marked_point(&self) -> bool {
        self.to == 0
    }

    pub fn touches_marked_point(&self) -> bool {
        self.from == 0 || self.to == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Interior,
    Boundary,
}

/// Crossing of passages `first` and `second` (indices into the passage list).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub vertex: usize,
    pub first: usize,
    pub second: usize,
    /// +1 iff the chords (first, second) appear in cyclic order s₁, s₂, t₁, t₂.
    pub sign: i8,
    pub location: Location,
}

#[derive(Clone, Debug)]
pub struct LoopDiagram {
    pub strands: Vec<Strand>,
    /// per edge: (strand, letter index) in band order
    pub edge_orders: Vec<Vec<(usize, usize)>>,
    /// per vertex: the boundary slots (strand, letter index, end), position = index + 1
    pub disks: Vec<Vec<(usize, usize, End)>>,
    pub passages: Vec<Passage>,
}

fn cyclically_between(a: usize, b: usize, x: usize) -> bool {
    if a < b {
        a < x && x < b
    } else {
        x > a || x < b
    }
}

/// Sign of the chord pair (s1→t1, s2→t2): +1 iff cyclic order (s1, s2, t1, t2).
pub fn chord_sign(s1: usize, t1: usize, s2: usize, _t2: usize) -> i8 {
    if cyclically_between(s1, t1, s2) {
        1
    } else {
        -1
    }
}

/// Whether two chords with distinct endpoints interleave.
pub fn chords_link(a: (usize, usize), b: (usize, usize)) -> bool {
    let (lo, hi) = (a.0.min(a.1), a.0.max(a.1));
    let inside = |x: usize| lo < x && x < hi;
    inside(b.0) != inside(b.1)
}

impl LoopDiagram {
    /// Realizes the strand system; the seed fixes the per-band strand order.
    /// Proper powers are rejected: their copies run parallel and only an
    /// arbitrary perturbation separates them.
    pub fn realize(sk: &Skeleton, strands: Vec<Strand>, seed: u64) -> Result<Self> {
        if let Some(Strand::Closed(w)) = strands.iter().find(|s| matches!(s, Strand::Closed(w) if w.is_proper_power())) {
            return Err(Error::ProperPowerUnsupported(w.display(sk)));
        }
        Self::realize_immersion(sk, strands, seed)
    }

    /// Like [`realize`](Self::realize) but accepts proper powers. The seeded
    /// band order still defines a generic immersion in the right homotopy
    /// class, so homotopy invariants computed from it are correct.
    pub fn realize_immersion(sk: &Skeleton, strands: Vec<Strand>, seed: u64) -> Result<Self> {
        for s in &strands {
            if let Strand::Open(p) = s {
                super::word::check_composable(sk, &p.letters)?;
            }
        }
        let mut edge_orders: Vec<Vec<(usize, usize)>> = vec![Vec::new(); sk.num_edges()];
        for (si, s) in strands.iter().enumerate() {
            for (k, l) in s.letters().iter().enumerate() {
                edge_orders[l.edge].push((si, k));
            }
        }
        for (e, order) in edge_orders.iter_mut().enumerate() {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (e as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            order.shuffle(&mut rng);
        }

        let mut disks: Vec<Vec<(usize, usize, End)>> = vec![Vec::new(); sk.num_vertices()];
        for (v, disk) in disks.iter_mut().enumerate() {
            for he in sk.halfedges_at(v) {
                let order = &edge_orders[he.edge];
                match he.end {
                    End::Head => disk.extend(order.iter().map(|&(s, k)| (s, k, End::Head))),
                    End::Tail => disk.extend(order.iter().rev().map(|&(s, k)| (s, k, End::Tail))),
                }
            }
        }
        let slot_of = |v: usize, s: usize, k: usize, end: End| -> usize {
            1 + disks[v].iter().position(|&x| x == (s, k, end)).expect("slot exists")
        };

        let mut passages = Vec::new();
        for (si, s) in strands.iter().enumerate() {
            let w = s.letters();
            let n = w.len();
            if n == 0 {
                continue;
            }
            let out_slot = |k: usize| {
                let h = w[k].leaving();
                slot_of(sk.vertex_of(h), si, k, h.end)
            };
            let in_slot = |k: usize| {
                let h = w[k].arriving();
                slot_of(sk.vertex_of(h), si, k, h.end)
            };
            match s {
                Strand::Closed(_) => {
                    for k in 0..n {
                        let prev = (k + n - 1) % n;
                        passages.push(Passage { strand: si, k, vertex: w[k].start(sk), from: in_slot(prev), to: out_slot(k) });
                    }
                }
                Strand::Open(_) => {
                    passages.push(Passage { strand: si, k: 0, vertex: w[0].start(sk), from: 0, to: out_slot(0) });
                    for k in 1..n {
                        passages.push(Passage { strand: si, k, vertex: w[k].start(sk), from: in_slot(k - 1), to: out_slot(k) });
                    }
                    passages.push(Passage { strand: si, k: n, vertex: w[n - 1].end(sk), from: in_slot(n - 1), to: 0 });
                }
            }
        }
        Ok(LoopDiagram { strands, edge_orders, disks, passages })
    }

    /// All crossings: interleaving chord pairs, plus pairs of passages that
    /// both end at the marked point of the same vertex (boundary crossings).
    pub fn crossings(&self) -> Vec<Crossing> {
        let mut out = Vec::new();
        for i in 0..self.passages.len() {
            for j in i + 1..self.passages.len() {
                let (p, q) = (&self.passages[i], &self.passages[j]);
                if p.vertex != q.vertex {
                    continue;
                }
                if p.touches_marked_point() && q.touches_marked_point() {
                    out.push(Crossing {
                        vertex: p.vertex,
                        first: i,
                        second: j,
                        sign: boundary_sign(p, q),
                        location: Location::Boundary,
                    });
                } else if chords_link((p.from, p.to), (q.from, q.to)) {
                    out.push(Crossing {
                        vertex: p.vertex,
                        first: i,
                        second: j,
                        sign: chord_sign(p.from, p.to, q.from, q.to),
                        location: Location::Interior,
                    });
                }
            }
        }
        out
    }

    /// Twice the rotation number of a realized strand. Interior passages turn
    /// by +½ when the strand enters the disk at a lower slot than it leaves,
    /// −½ otherwise. On distinct half-edges this is the skeleton's
    /// `passage_turn2`; a backtracking letter pair (U-turn) turns to the side
    /// fixed by its band order.
    pub fn strand_rotation2(&self, sk: &Skeleton, strand: usize) -> i64 {
        let letters = self.strands[strand].letters();
        let mut total: i64 = letters.iter().map(|l| if l.inv { -sk.rot2(l.edge) } else { sk.rot2(l.edge) }).sum();
        for p in self.passages.iter().filter(|p| p.strand == strand && !p.touches_marked_point()) {
            total += if p.from < p.to { 1 } else { -1 };
        }
        total
    }

    pub fn crossings_between(&self, a: usize, b: usize) -> Vec<Crossing> {
        self.crossings()
            .into_iter()
            .filter_map(|c| {
                let (sa, sb) = (self.passages[c.first].strand, self.passages[c.second].strand);
                if sa == a && sb == b {
                    Some(c)
                } else if sa == b && sb == a {
                    Some(Crossing { first: c.second, second: c.first, sign: -c.sign, ..c })
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn self_crossings(&self, a: usize) -> Vec<Crossing> {
        self.crossings()
            .into_iter()
            .filter(|c| self.passages[c.first].strand == a && self.passages[c.second].strand == a)
            .collect()
    }
}

/// Sign of two passages meeting at the marked point: ε = +1 for a strand
/// leaving the marked point, −1 for one arriving; the pair is ordered by the
/// position of the far endpoint.
pub fn boundary_sign(p: &Passage, q: &Passage) -> i8 {
    let (ep, fp) = if p.from == 0 { (1, p.to) } else { (-1, p.from) };
    let (eq, fq) = if q.from == 0 { (1, q.to) } else { (-1, q.from) };
    let order = if fp < fq { 1 } else { -1 };
    ep * eq * order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::standard;

    fn loop_word(e: usize) -> Strand {
        Strand::Closed(CyclicWord::canonical(&[Letter::fwd(e)]))
    }

    #[test]
    fn torus_generators_cross_once() {
        let sk = standard::torus();
        let d = LoopDiagram::realize(&sk, vec![loop_word(0), loop_word(1)], 0).unwrap();
        assert_eq!(d.crossings().len(), 1);
        assert!(LoopDiagram::realize(&sk, vec![loop_word(0)], 0).unwrap().crossings().is_empty());
    }

    #[test]
    fn pants_generators_are_disjoint() {
        let sk = standard::pants();
        let d = LoopDiagram::realize(&sk, vec![loop_word(0), loop_word(1)], 5).unwrap();
        assert!(d.crossings().is_empty());
    }

    #[test]
    fn proper_power_rejected() {
        let sk = standard::torus();
        let w = CyclicWord::canonical(&[Letter::fwd(0), Letter::fwd(0)]);
        assert!(matches!(LoopDiagram::realize(&sk, vec![Strand::Closed(w)], 0), Err(Error::ProperPowerUnsupported(_))));
    }

    #[test]
    fn reversing_both_loops_keeps_signs() {
        let sk = standard::torus();
        let a = CyclicWord::canonical(&[Letter::fwd(0), Letter::fwd(1)]);
        let b = CyclicWord::canonical(&[Letter::fwd(1)]);
        let sum = |x: &CyclicWord, y: &CyclicWord| -> i32 {
            let d = LoopDiagram::realize(&sk, vec![Strand::Closed(x.clone()), Strand::Closed(y.clone())], 3).unwrap();
            d.crossings_between(0, 1).iter().map(|c| c.sign as i32).sum()
        };
        assert_eq!(sum(&a, &b), sum(&a.inverse(), &b.inverse()));
        assert_eq!(sum(&a, &b), -sum(&a.inverse(), &b));
    }
}
