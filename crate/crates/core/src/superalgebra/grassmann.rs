//! Grassmann algebra over the rationals with at most 64 odd generators.
//!
//! A monomial θ_{i1}θ_{i2}…θ_{ik} (i1 < i2 < … < ik) is a bitmask; an element
//! is a sparse, mask-sorted list of nonzero coefficients. Generator indices are
//! zero-based internally; the JSON form uses one-based indices.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::rational::Rational;

pub const MAX_GENERATORS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Grassmann {
    terms: Vec<(u64, Rational)>,
}

/// Sign of θ_A θ_B = ±θ_{A∪B} for disjoint sorted monomials.
#[inline]
pub fn koszul_sign(a: u64, b: u64) -> bool {
    // counts pairs (i in a, j in b) with i > j
    let mut count = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        count += (a >> j >> 1).count_ones();
    }
    count & 1 == 1
}

impl Grassmann {
    pub fn zero() -> Self {
        Grassmann { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::scalar(Rational::one())
    }

    pub fn scalar(r: Rational) -> Self {
        if r.is_zero() {
            Self::zero()
        } else {
            Grassmann { terms: vec![(0, r)] }
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::scalar(Rational::from_int(n))
    }

    /// The generator θ_i (zero-based).
    pub fn generator(i: usize) -> Self {
        assert!(i < MAX_GENERATORS, "generator index {i} out of range");
        Grassmann { terms: vec![(1u64 << i, Rational::one())] }
    }

    /// Build from arbitrary (mask, coefficient) pairs, merging duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (u64, Rational)>) -> Self {
        let mut v: Vec<(u64, Rational)> = terms.into_iter().collect();
        Self::normalise(&mut v);
        Grassmann { terms: v }
    }

    /// Monomial θ_{indices[0]}·θ_{indices[1]}·… in the given (possibly unsorted) order.
    pub fn monomial(indices: &[usize], coeff: Rational) -> Self {
        let mut out = Self::scalar(coeff);
        for &i in indices {
            out = &out * &Self::generator(i);
        }
        out
    }

    fn normalise(v: &mut Vec<(u64, Rational)>) {
        v.sort_unstable_by_key(|t| t.0);
        let mut out: Vec<(u64, Rational)> = Vec::with_capacity(v.len());
        for (m, c) in v.drain(..) {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        *v = out;
    }

    pub fn terms(&self) -> &[(u64, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the empty monomial.
    pub fn body(&self) -> Rational {
        match self.terms.first() {
            Some((0, c)) => c.clone(),
            _ => Rational::zero(),
        }
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.iter().all(|t| t.0 == 0)
    }

    /// Part without the constant term.
    pub fn soul(&self) -> Self {
        Grassmann { terms: self.terms.iter().filter(|t| t.0 != 0).cloned().collect() }
    }

    pub fn coeff(&self, mask: u64) -> Rational {
        self.terms
            .binary_search_by_key(&mask, |t| t.0)
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    /// Union of all generators that occur.
    pub fn support(&self) -> u64 {
        self.terms.iter().fold(0, |acc, t| acc | t.0)
    }

    /// `Some(0|1)` if homogeneous (zero counts as even).
    pub fn parity(&self) -> Option<u8> {
        let mut p = None;
        for (m, _) in &self.terms {
            let q = (m.count_ones() & 1) as u8;
            match p {
                None => p = Some(q),
                Some(x) if x != q => return None,
                _ => {}
            }
        }
        Some(p.unwrap_or(0))
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Some(0)
    }

    pub fn is_odd(&self) -> bool {
        self.is_zero() || self.parity() == Some(1)
    }

    /// Parity involution â: odd monomials change sign.
    pub fn hat(&self) -> Self {
        Grassmann {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| if m.count_ones() & 1 == 1 { (*m, -c) } else { (*m, c.clone()) })
                .collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Grassmann { terms: self.terms.iter().map(|(m, c)| (*m, c * r)).collect() }
    }

    /// Writes self = A + θ_g·B (θ_g not occurring in A) and returns B.
    pub fn extract_left(&self, g: usize) -> Self {
        let bit = 1u64 << g;
        let below = bit - 1;
        let terms = self
            .terms
            .iter()
            .filter(|t| t.0 & bit != 0)
            .map(|(m, c)| {
                let neg = (m & below).count_ones() & 1 == 1;
                (m ^ bit, if neg { -c } else { c.clone() })
            });
        // removing one bit from distinct masks keeps them distinct, but the order
        // can change, so normalise
        Self::from_terms(terms)
    }

    /// Writes self = A + θ_pθ_q·B and returns B (an even square-zero tag).
    pub fn extract_pair(&self, p: usize, q: usize) -> Self {
        self.extract_left(p).extract_left(q)
    }

    /// Drops every monomial containing a generator from `mask`.
    pub fn drop_generators(&self, mask: u64) -> Self {
        Grassmann { terms: self.terms.iter().filter(|t| t.0 & mask == 0).cloned().collect() }
    }

    pub fn to_json_terms(&self) -> Vec<GrassmannTerm> {
        self.terms
            .iter()
            .map(|(m, c)| GrassmannTerm {
                indices: (0..64).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect(),
                coeff: c.clone(),
            })
            .collect()
    }
}

/// JSON form of one monomial (one-based generator indices).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GrassmannTerm {
    pub indices: Vec<usize>,
    pub coeff: Rational,
}

impl Serialize for Grassmann {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json_terms().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Grassmann {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<GrassmannTerm>::deserialize(d)?;
        let mut out = Grassmann::zero();
        for t in terms {
            if t.indices.iter().any(|&i| i == 0 || i > MAX_GENERATORS) {
                return Err(serde::de::Error::custom("generator index out of range"));
            }
            let idx: Vec<usize> = t.indices.iter().map(|i| i - 1).collect();
            out = &out + &Grassmann::monomial(&idx, t.coeff);
        }
        Ok(out)
    }
}

impl<'a> Add<&'a Grassmann> for &'a Grassmann {
    type Output = Grassmann;
    fn add(self, rhs: &Grassmann) -> Grassmann {
        let (a, b) = (&self.terms, &rhs.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i].0 < b[j].0 {
                out.push(a[i].clone());
                i += 1;
            } else if a[i].0 > b[j].0 {
                out.push(b[j].clone());
                j += 1;
            } else {
                let c = &a[i].1 + &b[j].1;
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Grassmann { terms: out }
    }
}

impl<'a> Sub<&'a Grassmann> for &'a Grassmann {
    type Output = Grassmann;
    fn sub(self, rhs: &Grassmann) -> Grassmann {
        self + &(-rhs)
    }
}

impl Neg for &Grassmann {
    type Output = Grassmann;
    fn neg(self) -> Grassmann {
        Grassmann { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for Grassmann {
    type Output = Grassmann;
    fn neg(self) -> Grassmann {
        -&self
    }
}

impl<'a> Mul<&'a Grassmann> for &'a Grassmann {
    type Output = Grassmann;
    fn mul(self, rhs: &Grassmann) -> Grassmann {
        if self.is_zero() || rhs.is_zero() {
            return Grassmann::zero();
        }
        if self.terms.len() == 1 && self.terms[0].0 == 0 {
            return rhs.scale(&self.terms[0].1);
        }
        if rhs.terms.len() == 1 && rhs.terms[0].0 == 0 {
            return self.scale(&rhs.terms[0].1);
        }
        let mut v = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                if ma & mb != 0 {
                    continue;
                }
                let c = ca * cb;
                v.push((ma | mb, if koszul_sign(*ma, *mb) { -c } else { c }));
            }
        }
        Grassmann::normalise(&mut v);
        Grassmann { terms: v }
    }
}

macro_rules! owned_gop {
    ($tr:ident, $m:ident) => {
        impl $tr<Grassmann> for Grassmann {
            type Output = Grassmann;
            fn $m(self, rhs: Grassmann) -> Grassmann {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_gop!(Add, add);
owned_gop!(Sub, sub);
owned_gop!(Mul, mul);

impl fmt::Display for Grassmann {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono: Vec<String> = (0..64).filter(|i| m >> i & 1 == 1).map(|i| format!("θ{}", i + 1)).collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join(""))?;
            } else {
                write!(f, "{abs}·{}", mono.join(""))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th(i: usize) -> Grassmann {
        Grassmann::generator(i)
    }

    #[test]
    fn anticommutation_and_nilpotence() {
        let t12 = &th(1) * &th(2);
        let t21 = &th(2) * &th(1);
        assert_eq!(t21, -t12.clone());
        assert_eq!(t12.coeff(0b110), Rational::one());
        assert!((&th(1) * &th(1)).is_zero());
    }

    #[test]
    fn distributivity() {
        let a = &Grassmann::one() + &th(1);
        let b = &Grassmann::one() + &th(2);
        let expect = &(&(&Grassmann::one() + &th(1)) + &th(2)) + &(&th(1) * &th(2));
        assert_eq!(&a * &b, expect);
    }

    #[test]
    fn extraction_is_left_coefficient() {
        // θ0θ2θ5 = θ2 · (−θ0θ5)
        let m = Grassmann::monomial(&[0, 2, 5], Rational::one());
        let b = m.extract_left(2);
        assert_eq!(&th(2) * &b, m);
        let pair = Grassmann::monomial(&[1, 7, 8], Rational::from_int(3));
        let b = pair.extract_pair(7, 8);
        assert_eq!(&(&th(7) * &th(8)) * &b, pair);
    }

    #[test]
    fn parity_involution() {
        let x = &(&Grassmann::one() + &th(0)) + &(&th(0) * &th(1));
        let h = x.hat();
        assert_eq!(h.coeff(1), Rational::from_int(-1));
        assert_eq!(h.coeff(3), Rational::one());
        assert_eq!(x.parity(), None);
    }

    #[test]
    fn json_round_trip() {
        let x = &Grassmann::from_int(2) + &Grassmann::monomial(&[3, 0], Rational::new(1, 2));
        let s = serde_json::to_string(&x).unwrap();
        let y: Grassmann = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }
}
