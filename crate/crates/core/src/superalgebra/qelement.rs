//! Elements X + ξY of Mat_n ⊗ ℚ[ξ]/(ξ²−1) with Grassmann entries.
//!
//! ξ is odd and sits to the left of Y. Moving ξ past a Grassmann scalar c
//! gives ĉ (the parity involution), which is where all signs come from:
//!
//! (X₁+ξY₁)(X₂+ξY₂) = (X₁X₂ + Ŷ₁Y₂) + ξ(X̂₁Y₂ + Y₁X₂).

use serde::{Deserialize, Serialize};

use super::grassmann::Grassmann;
use super::matrix::{self, grassmann_add, grassmann_mul, grassmann_sub};
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QElement {
    pub n: usize,
    #[serde(rename = "X", with = "square")]
    pub x: Vec<Grassmann>,
    #[serde(rename = "Y", with = "square")]
    pub y: Vec<Grassmann>,
}

/// Row-major storage, nested-list JSON.
mod square {
    use super::Grassmann;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Grassmann], s: S) -> Result<S::Ok, S::Error> {
        let n = (v.len() as f64).sqrt() as usize;
        let rows: Vec<&[Grassmann]> = (0..n).map(|i| &v[i * n..(i + 1) * n]).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Grassmann>, D::Error> {
        let rows = Vec::<Vec<Grassmann>>::deserialize(d)?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(serde::de::Error::custom("matrix must be square"));
        }
        Ok(rows.into_iter().flatten().collect())
    }
}

fn hat_all(a: &[Grassmann]) -> Vec<Grassmann> {
    a.iter().map(Grassmann::hat).collect()
}

impl QElement {
    pub fn zero(n: usize) -> Self {
        QElement { n, x: vec![Grassmann::zero(); n * n], y: vec![Grassmann::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        QElement { n, x: matrix::identity_grassmann(n), y: vec![Grassmann::zero(); n * n] }
    }

    /// ξ·1.
    pub fn xi(n: usize) -> Self {
        QElement { n, x: vec![Grassmann::zero(); n * n], y: matrix::identity_grassmann(n) }
    }

    pub fn from_blocks(n: usize, x: Vec<Grassmann>, y: Vec<Grassmann>) -> Self {
        assert_eq!(x.len(), n * n);
        assert_eq!(y.len(), n * n);
        QElement { n, x, y }
    }

    /// Basis label `k` of q(n): E_(αβ) row-major for k < n², then ξE_(αβ).
    pub fn basis(n: usize, k: usize) -> Self {
        let mut e = Self::zero(n);
        if k < n * n {
            e.x[k] = Grassmann::one();
        } else {
            e.y[k - n * n] = Grassmann::one();
        }
        e
    }

    pub fn basis_parity(n: usize, k: usize) -> u8 {
        u8::from(k >= n * n)
    }

    pub fn x_entry(&self, i: usize, j: usize) -> &Grassmann {
        &self.x[i * self.n + j]
    }

    pub fn y_entry(&self, i: usize, j: usize) -> &Grassmann {
        &self.y[i * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        matrix::is_zero(&self.x) && matrix::is_zero(&self.y)
    }

    pub fn add(&self, o: &Self) -> Self {
        QElement { n: self.n, x: grassmann_add(&self.x, &o.x), y: grassmann_add(&self.y, &o.y) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        QElement { n: self.n, x: grassmann_sub(&self.x, &o.x), y: grassmann_sub(&self.y, &o.y) }
    }

    pub fn neg(&self) -> Self {
        QElement { n: self.n, x: self.x.iter().map(|a| -a).collect(), y: self.y.iter().map(|a| -a).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        assert_eq!(n, o.n, "QElement size mismatch");
        let y1_zero = matrix::is_zero(&self.y);
        let y2_zero = matrix::is_zero(&o.y);
        let mut x = grassmann_mul(&self.x, &o.x, n);
        if !y1_zero && !y2_zero {
            x = grassmann_add(&x, &grassmann_mul(&hat_all(&self.y), &o.y, n));
        }
        let mut y = vec![Grassmann::zero(); n * n];
        if !y2_zero {
            y = grassmann_mul(&hat_all(&self.x), &o.y, n);
        }
        if !y1_zero {
            y = grassmann_add(&y, &grassmann_mul(&self.y, &o.x, n));
        }
        QElement { n, x, y }
    }

    /// Left multiplication by a Grassmann scalar: c(X + ξY) = cX + ξ(ĉY).
    pub fn scale_left(&self, c: &Grassmann) -> Self {
        let ch = c.hat();
        QElement {
            n: self.n,
            x: self.x.iter().map(|a| c * a).collect(),
            y: self.y.iter().map(|a| &ch * a).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QElement { n: self.n, x: self.x.iter().map(|a| a.scale(r)).collect(), y: self.y.iter().map(|a| a.scale(r)).collect() }
    }

    /// Rational body X₀ + ξY₀ as a pair of rational matrices.
    fn body(&self) -> (Vec<Rational>, Vec<Rational>) {
        (matrix::body(&self.x), matrix::body(&self.y))
    }

    fn soul(&self) -> Self {
        QElement { n: self.n, x: self.x.iter().map(Grassmann::soul).collect(), y: self.y.iter().map(Grassmann::soul).collect() }
    }

    /// Inverse by a finite Neumann series around the rational body.
    ///
    /// The body X₀ + ξY₀ lives in q_as(n) over ℚ, which splits as Mat_n × Mat_n
    /// via ξ ↦ ±1; it is invertible iff both X₀ + Y₀ and X₀ − Y₀ are.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let (x0, y0) = self.body();
        let plus: Vec<Rational> = x0.iter().zip(&y0).map(|(a, b)| a + b).collect();
        let minus: Vec<Rational> = x0.iter().zip(&y0).map(|(a, b)| a - b).collect();
        let pi = matrix::rational_inverse(&plus, n).ok_or(Error::NonInvertibleBody)?;
        let mi = matrix::rational_inverse(&minus, n).ok_or(Error::NonInvertibleBody)?;
        let half = Rational::new(1, 2);
        let bx: Vec<Grassmann> = pi.iter().zip(&mi).map(|(a, b)| Grassmann::scalar(&(a + b) * &half)).collect();
        let by: Vec<Grassmann> = pi.iter().zip(&mi).map(|(a, b)| Grassmann::scalar(&(a - b) * &half)).collect();
        let b_inv = QElement { n, x: bx, y: by };
        let step = b_inv.mul(&self.soul()).neg();
        let mut term = b_inv.clone();
        let mut acc = b_inv;
        loop {
            term = step.mul(&term);
            if term.is_zero() {
                return Ok(acc);
            }
            acc = acc.add(&term);
        }
    }

    /// Odd trace Tr Y.
    pub fn otr(&self) -> Grassmann {
        matrix::trace(&self.y, self.n)
    }

    /// Trace of the even block, Tr X.
    pub fn tr(&self) -> Grassmann {
        matrix::trace(&self.x, self.n)
    }

    /// Y-block with no rational body: X⁻¹Y is then nilpotent.
    pub fn is_group_valued(&self) -> bool {
        self.x.iter().all(Grassmann::is_even)
            && self.y.iter().all(Grassmann::is_odd)
            && matrix::rational_inverse(&matrix::body(&self.x), self.n).is_some()
    }

    /// Odd determinant Σ_{j odd} (−1)^{(j−1)/2} Tr(Z^j)/j with Z = X⁻¹Y; the
    /// alternating signs come from ξZξZ = ẐZ = −Z² and make odet additive,
    /// odet(GH) = odet(G) + odet(H). The series stops once Z^j vanishes.
    pub fn odet(&self) -> Result<Grassmann> {
        let n = self.n;
        if self.y.iter().any(|a| !a.body().is_zero()) {
            return Err(Error::NotGroupValued("ξ-block has a nonzero rational body".into()));
        }
        let x_inv = matrix::grassmann_inverse(&self.x, n).ok_or(Error::NonInvertibleBody)?;
        let z = grassmann_mul(&x_inv, &self.y, n);
        let gens = z.iter().fold(0u64, |acc, a| acc | a.support()).count_ones() as usize;
        let z2 = grassmann_mul(&z, &z, n);
        let mut power = z;
        let mut acc = Grassmann::zero();
        let mut j = 1usize;
        while j <= gens.max(1) {
            if matrix::is_zero(&power) {
                break;
            }
            let sign = if (j / 2).is_multiple_of(2) { 1 } else { -1 };
            let t = matrix::trace(&power, n).scale(&Rational::new(sign, j as i64));
            acc = &acc + &t;
            power = grassmann_mul(&power, &z2, n);
            j += 2;
        }
        Ok(acc)
    }

    /// Nilpotent part of log det X (the constant log det X₀ is dropped): only
    /// meaningful under a derivative. Requires Y = 0.
    pub fn logdet_nilpotent(&self) -> Result<Grassmann> {
        let n = self.n;
        if !matrix::is_zero(&self.y) {
            return Err(Error::NotGroupValued("logdet is only defined on the even subgroup".into()));
        }
        let b_inv = matrix::from_rational(
            &matrix::rational_inverse(&matrix::body(&self.x), n).ok_or(Error::NonInvertibleBody)?,
        );
        let soul: Vec<Grassmann> = self.x.iter().map(Grassmann::soul).collect();
        let nil = grassmann_mul(&b_inv, &soul, n);
        let mut power = nil.clone();
        let mut acc = Grassmann::zero();
        let mut k = 1i64;
        while !matrix::is_zero(&power) {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = &acc + &matrix::trace(&power, n).scale(&Rational::new(sign, k));
            power = grassmann_mul(&power, &nil, n);
            k += 1;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th(i: usize) -> Grassmann {
        Grassmann::generator(i)
    }

    #[test]
    fn xi_squares_to_one() {
        let xi = QElement::xi(2);
        assert_eq!(xi.mul(&xi), QElement::identity(2));
    }

    #[test]
    fn odd_scalar_passes_xi_with_sign() {
        // θ·ξ = −ξ·θ for odd θ, so (θ·1)(ξ·1) = ξ·(−θ)
        let t = QElement::identity(1).scale_left(&th(0));
        let prod = t.mul(&QElement::xi(1));
        assert_eq!(prod.y[0], -th(0));
        assert!(prod.x[0].is_zero());
    }

    #[test]
    fn otr_of_xi_identity_is_n() {
        assert_eq!(QElement::xi(3).otr(), Grassmann::from_int(3));
        assert!(QElement::identity(3).otr().is_zero());
    }

    #[test]
    fn q1_odet_is_da_over_a() {
        // a + ξ·da with a = 3, da = θ₀
        let g = QElement::from_blocks(1, vec![Grassmann::from_int(3)], vec![th(0)]);
        assert_eq!(g.odet().unwrap(), th(0).scale(&Rational::new(1, 3)));
        assert!(QElement::identity(2).odet().unwrap().is_zero());
    }

    #[test]
    fn inverse_of_unipotent() {
        let mut g = QElement::identity(2);
        g.y[1] = th(0);
        g.x[2] = &th(0) * &th(1);
        let inv = g.inverse().unwrap();
        assert_eq!(g.mul(&inv), QElement::identity(2));
        assert_eq!(inv.mul(&g), QElement::identity(2));
    }

    #[test]
    fn zero_divisor_body_is_rejected() {
        // 1 + ξ is a zero divisor although its X-body is invertible
        let g = QElement::identity(1).add(&QElement::xi(1));
        assert!(matches!(g.inverse(), Err(Error::NonInvertibleBody)));
    }

    #[test]
    fn logdet_of_unipotent_perturbation() {
        // det(1 + θ₀θ₁ E₁₁) = 1 + θ₀θ₁
        let mut g = QElement::identity(2);
        g.x[0] = &Grassmann::one() + &(&th(0) * &th(1));
        assert_eq!(g.logdet_nilpotent().unwrap(), &th(0) * &th(1));
    }
}
