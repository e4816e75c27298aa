//! Rational linear combinations and the exterior algebra on loop classes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::superalgebra::Rational;
use crate::surface::Skeleton;

use super::word::CyclicWord;

/// Finite rational combination of basis objects; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormalSum<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for FormalSum<K> {
    fn default() -> Self {
        FormalSum { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> FormalSum<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(k: K) -> Self {
        Self::term(k, Rational::one())
    }

    pub fn term(k: K, c: Rational) -> Self {
        let mut s = Self::zero();
        s.add_term(k, c);
        s
    }

    pub fn add_term(&mut self, k: K, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.add_scaled(other, &Rational::one());
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.add_scaled(other, &Rational::from_int(-1));
        s
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut s = Self::zero();
        s.add_scaled(self, c);
        s
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from_int(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &K) -> Rational {
        self.terms.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.terms.iter()
    }

    /// Linear extension of `f` (basis element ↦ combination).
    pub fn flat_map<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> FormalSum<L>) -> FormalSum<L> {
        let mut out = FormalSum::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    pub fn retain(&mut self, mut keep: impl FnMut(&K) -> bool) {
        self.terms.retain(|k, _| keep(k));
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for FormalSum<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        let mut s = Self::zero();
        for (k, c) in iter {
            s.add_term(k, c);
        }
        s
    }
}

/// Generators of the exterior algebra: loop classes and H₁ basis vectors,
/// all odd.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WBasis {
    H1(usize),
    Loop(CyclicWord),
}

/// Wedge monomial with strictly increasing factors.
pub type Wedge = Vec<WBasis>;

/// Sorts a product of odd generators; `None` if a factor repeats.
pub fn normalize_wedge(factors: Vec<WBasis>) -> Option<(Wedge, bool)> {
    let mut v = factors;
    let mut negate = false;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            negate = !negate;
            j -= 1;
        }
    }
    if v.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((v, negate))
}

pub type WedgeSum = FormalSum<Wedge>;

/// Adds `c · (factors in the given order)` to `out`.
pub fn add_wedge(out: &mut WedgeSum, factors: Vec<WBasis>, c: Rational) {
    if let Some((w, neg)) = normalize_wedge(factors) {
        out.add_term(w, if neg { -c } else { c });
    }
}

pub fn wedge_product(a: &WedgeSum, b: &WedgeSum) -> WedgeSum {
    let mut out = WedgeSum::zero();
    for (x, cx) in a.iter() {
        for (y, cy) in b.iter() {
            let mut f = x.clone();
            f.extend(y.iter().cloned());
            add_wedge(&mut out, f, cx * cy);
        }
    }
    out
}

pub fn generator(g: WBasis) -> WedgeSum {
    WedgeSum::single(vec![g])
}

pub fn loop_generator(w: CyclicWord) -> WedgeSum {
    if w.is_trivial() {
        WedgeSum::zero()
    } else {
        generator(WBasis::Loop(w))
    }
}

fn write_coeff(out: &mut String, first: bool, c: &Rational) {
    if first {
        if c.is_negative() {
            out.push('-');
        }
    } else {
        out.push_str(if c.is_negative() { " - " } else { " + " });
    }
    let _ = write!(out, "{} · ", c.abs());
}

/// Renders a combination of cyclic words as `c · (w) + …` (`0` if empty).
pub fn display_loops(sk: &Skeleton, s: &FormalSum<CyclicWord>) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (w, c)) in s.iter().enumerate() {
        write_coeff(&mut out, i == 0, c);
        let _ = write!(out, "({})", w.display(sk));
    }
    out
}

pub fn display_wbasis(sk: &Skeleton, g: &WBasis) -> String {
    match g {
        WBasis::Loop(w) => w.display(sk),
        WBasis::H1(k) => {
            let mut v = vec![0; sk.h1_basis_edges().len()];
            v[*k] = 1;
            format!("H[{}]", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        }
    }
}

/// Renders wedge combinations as `c · ∧(w1, w2) + …`.
pub fn display_wedges(sk: &Skeleton, s: &WedgeSum) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (w, c)) in s.iter().enumerate() {
        write_coeff(&mut out, i == 0, c);
        if w.is_empty() {
            out.push('1');
        } else {
            let parts: Vec<String> = w.iter().map(|g| display_wbasis(sk, g)).collect();
            let _ = write!(out, "∧({})", parts.join(", "));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::word::Letter;

    fn lw(e: usize) -> WBasis {
        WBasis::Loop(CyclicWord::canonical(&[Letter::fwd(e)]))
    }

    #[test]
    fn odd_generators_anticommute() {
        let (w, neg) = normalize_wedge(vec![lw(1), lw(0)]).unwrap();
        assert_eq!(w, vec![lw(0), lw(1)]);
        assert!(neg);
        assert!(normalize_wedge(vec![lw(0), lw(1), lw(0)]).is_none());
    }

    #[test]
    fn cancellation_drops_terms() {
        let mut s = FormalSum::single(1u8);
        s.add_term(1, Rational::from_int(-1));
        assert!(s.is_zero());
    }
}
