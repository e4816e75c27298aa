//! Edge-path words: letters, linear path words and canonical cyclic words.

use std::fmt;

use crate::error::{Error, Result};
use crate::surface::{End, HalfEdge, Skeleton};

/// One signed edge generator: `inv == false` traverses the edge tail → head.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub edge: usize,
    pub inv: bool,
}

impl Letter {
    pub fn new(edge: usize, inv: bool) -> Self {
        Letter { edge, inv }
    }

    pub fn fwd(edge: usize) -> Self {
        Letter { edge, inv: false }
    }

    pub fn inverse(self) -> Self {
        Letter { edge: self.edge, inv: !self.inv }
    }

    /// Half-edge through which the letter leaves its start vertex.
    pub fn leaving(self) -> HalfEdge {
        HalfEdge { edge: self.edge, end: if self.inv { End::Head } else { End::Tail } }
    }

    /// Half-edge through which the letter arrives at its end vertex.
    pub fn arriving(self) -> HalfEdge {
        HalfEdge { edge: self.edge, end: if self.inv { End::Tail } else { End::Head } }
    }

    pub fn start(self, sk: &Skeleton) -> usize {
        sk.vertex_of(self.leaving())
    }

    pub fn end(self, sk: &Skeleton) -> usize {
        sk.vertex_of(self.arriving())
    }
}

pub fn inverse_word(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|l| l.inverse()).collect()
}

/// Free reduction (cancels adjacent inverse pairs).
pub fn reduce(w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free plus cyclic reduction.
pub fn cyclic_reduce(w: &[Letter]) -> Vec<Letter> {
    let r = reduce(w);
    let mut lo = 0;
    let mut hi = r.len();
    while hi - lo >= 2 && r[lo] == r[hi - 1].inverse() {
        lo += 1;
        hi -= 1;
    }
    r[lo..hi].to_vec()
}

pub fn is_reduced(w: &[Letter]) -> bool {
    w.windows(2).all(|p| p[1] != p[0].inverse())
}

/// Checks that consecutive letters meet at a common vertex.
pub fn check_composable(sk: &Skeleton, w: &[Letter]) -> Result<()> {
    for (k, p) in w.windows(2).enumerate() {
        if p[0].end(sk) != p[1].start(sk) {
            return Err(Error::NonComposablePath(format!(
                "letter {} ends at {} but letter {} starts at {}",
                k,
                sk.vertex_name(p[0].end(sk)),
                k + 1,
                sk.vertex_name(p[1].start(sk))
            )));
        }
    }
    Ok(())
}

/// A path in the fundamental groupoid: letters in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathWord {
    pub letters: Vec<Letter>,
    /// Start vertex (needed for the empty path).
    pub start: usize,
}

impl PathWord {
    pub fn new(sk: &Skeleton, letters: Vec<Letter>) -> Result<Self> {
        let start = letters.first().map(|l| l.start(sk)).ok_or_else(|| {
            Error::NonComposablePath("empty path needs an explicit start vertex".into())
        })?;
        check_composable(sk, &letters)?;
        Ok(PathWord { letters, start })
    }

    pub fn empty(vertex: usize) -> Self {
        PathWord { letters: Vec::new(), start: vertex }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn end(&self, sk: &Skeleton) -> usize {
        self.letters.last().map(|l| l.end(sk)).unwrap_or(self.start)
    }

    pub fn is_closed(&self, sk: &Skeleton) -> bool {
        self.end(sk) == self.start
    }

    pub fn inverse(&self, sk: &Skeleton) -> Self {
        PathWord { letters: inverse_word(&self.letters), start: self.end(sk) }
    }

    pub fn reduced(&self) -> Self {
        PathWord { letters: reduce(&self.letters), start: self.start }
    }

    /// Concatenation: first `self`, then `other`.
    pub fn then(&self, sk: &Skeleton, other: &PathWord) -> Result<Self> {
        if self.end(sk) != other.start {
            return Err(Error::NonComposablePath("endpoints do not match".into()));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(PathWord { letters, start: self.start })
    }

    /// Vertex reached after `k` letters.
    pub fn vertex_at(&self, sk: &Skeleton, k: usize) -> usize {
        if k == 0 {
            self.start
        } else {
            self.letters[k - 1].end(sk)
        }
    }

    pub fn display(&self, sk: &Skeleton) -> String {
        if self.letters.is_empty() {
            format!("1@{}", sk.vertex_name(self.start))
        } else {
            letters_to_string(sk, &self.letters)
        }
    }
}

pub fn letters_to_string(sk: &Skeleton, w: &[Letter]) -> String {
    w.iter()
        .map(|l| format!("{}{}", sk.edge_name(l.edge), if l.inv { "'" } else { "" }))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Free homotopy class of a closed path: the lexicographically least rotation
/// of a cyclically reduced word. The empty word is the trivial class ◯.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWord {
    letters: Vec<Letter>,
}

impl CyclicWord {
    pub fn trivial() -> Self {
        CyclicWord { letters: Vec::new() }
    }

    /// Canonical form of a closed letter sequence (checked against the skeleton).
    pub fn new(sk: &Skeleton, letters: &[Letter]) -> Result<Self> {
        if let (Some(first), Some(last)) = (letters.first(), letters.last()) {
            check_composable(sk, letters).map_err(|e| Error::NonClosedWord(e.to_string()))?;
            if last.end(sk) != first.start(sk) {
                return Err(Error::NonClosedWord(format!(
                    "ends at {} but starts at {}",
                    sk.vertex_name(last.end(sk)),
                    sk.vertex_name(first.start(sk))
                )));
            }
        }
        Ok(Self::canonical(letters))
    }

    /// Canonical form without composability checks (inputs known to be closed).
    pub fn canonical(letters: &[Letter]) -> Self {
        let r = cyclic_reduce(letters);
        let n = r.len();
        if n == 0 {
            return Self::trivial();
        }
        let best = (0..n)
            .min_by(|&a, &b| {
                let ra = r[a..].iter().chain(&r[..a]);
                let rb = r[b..].iter().chain(&r[..b]);
                ra.cmp(rb)
            })
            .unwrap();
        let mut letters = r[best..].to_vec();
        letters.extend_from_slice(&r[..best]);
        CyclicWord { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self::canonical(&inverse_word(&self.letters))
    }

    /// Smallest u with self = u^k; returns k.
    pub fn power_exponent(&self) -> usize {
        let n = self.letters.len();
        if n == 0 {
            return 1;
        }
        for p in 1..=n {
            if n.is_multiple_of(p) && (0..n).all(|i| self.letters[i] == self.letters[i % p]) {
                return n / p;
            }
        }
        1
    }

    /// Primitive root u and exponent k with self = u^k.
    pub fn root(&self) -> (CyclicWord, usize) {
        let k = self.power_exponent();
        (CyclicWord { letters: self.letters[..self.letters.len() / k].to_vec() }, k)
    }

    pub fn is_proper_power(&self) -> bool {
        self.power_exponent() > 1
    }

    /// Based representative starting at the tail of the first letter.
    pub fn as_path(&self, sk: &Skeleton) -> PathWord {
        match self.letters.first() {
            Some(l) => PathWord { letters: self.letters.clone(), start: l.start(sk) },
            None => PathWord::empty(0),
        }
    }

    pub fn display(&self, sk: &Skeleton) -> String {
        if self.letters.is_empty() {
            "◯".to_string()
        } else {
            letters_to_string(sk, &self.letters)
        }
    }

    /// Exponent sums per edge.
    pub fn exponent_sums(&self, edges: usize) -> Vec<i64> {
        let mut v = vec![0i64; edges];
        for l in &self.letters {
            v[l.edge] += if l.inv { -1 } else { 1 };
        }
        v
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}{}", self.edge, if self.inv { "'" } else { "" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::standard;

    fn w(spec: &[(usize, bool)]) -> Vec<Letter> {
        spec.iter().map(|&(e, i)| Letter::new(e, i)).collect()
    }

    #[test]
    fn free_reduction() {
        let sk = standard::torus();
        let c = CyclicWord::new(&sk, &w(&[(0, false), (1, false), (1, true)])).unwrap();
        assert_eq!(c.letters(), &w(&[(0, false)])[..]);
    }

    #[test]
    fn rotation_invariance() {
        let sk = standard::torus();
        let ab = CyclicWord::new(&sk, &w(&[(0, false), (1, false)])).unwrap();
        let ba = CyclicWord::new(&sk, &w(&[(1, false), (0, false)])).unwrap();
        assert_eq!(ab, ba);
        let comm = w(&[(0, false), (1, false), (0, true), (1, true)]);
        assert_eq!(CyclicWord::new(&sk, &comm).unwrap().letters(), &comm[..]);
    }

    #[test]
    fn cancelling_word_is_trivial() {
        let sk = standard::torus();
        assert!(CyclicWord::new(&sk, &w(&[(0, false), (0, true)])).unwrap().is_trivial());
        assert!(CyclicWord::new(&sk, &w(&[(0, false), (1, false), (0, true), (1, true), (1, false), (0, false), (1, true), (0, true)]))
            .unwrap()
            .is_trivial());
    }

    #[test]
    fn proper_powers() {
        let c = CyclicWord::canonical(&w(&[(0, false), (1, false), (0, false), (1, false)]));
        assert_eq!(c.power_exponent(), 2);
        assert!(!CyclicWord::canonical(&w(&[(0, false), (0, false), (1, false)])).is_proper_power());
    }

    #[test]
    fn non_closed_word_rejected() {
        let sk = standard::path();
        assert!(matches!(CyclicWord::new(&sk, &w(&[(0, false)])), Err(Error::NonClosedWord(_))));
    }
}
