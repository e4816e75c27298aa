//! Square supermatrices over a Grassmann algebra: elements Σ m_rc·E_rc of
//! Λ ⊗ End(ℚ^{p|q}) with scalars written on the left.
//!
//! Moving a scalar μ past a matrix unit E_rc costs (−1)^{|μ|(p_r+p_c)}, so
//! (AB)_rd = Σ_c (−1)^{|B_cd|(p_r+p_c)} A_rc B_cd (applied per monomial).

use super::grassmann::Grassmann;
use super::matrix;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuperMatrix {
    parity: Vec<u8>,
    m: Vec<Grassmann>,
}

impl SuperMatrix {
    pub fn zero(parity: &[u8]) -> Self {
        let d = parity.len();
        SuperMatrix { parity: parity.to_vec(), m: vec![Grassmann::zero(); d * d] }
    }

    pub fn identity(parity: &[u8]) -> Self {
        SuperMatrix { parity: parity.to_vec(), m: matrix::identity_grassmann(parity.len()) }
    }

    /// Matrix unit E_rc.
    pub fn unit(parity: &[u8], r: usize, c: usize) -> Self {
        let mut s = Self::zero(parity);
        let d = parity.len();
        s.m[r * d + c] = Grassmann::one();
        s
    }

    pub fn from_entries(parity: &[u8], m: Vec<Grassmann>) -> Self {
        assert_eq!(m.len(), parity.len() * parity.len());
        SuperMatrix { parity: parity.to_vec(), m }
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn row_parity(&self) -> &[u8] {
        &self.parity
    }

    pub fn entry(&self, r: usize, c: usize) -> &Grassmann {
        &self.m[r * self.dim() + c]
    }

    pub fn entries(&self) -> &[Grassmann] {
        &self.m
    }

    pub fn is_zero(&self) -> bool {
        matrix::is_zero(&self.m)
    }

    pub fn add(&self, o: &Self) -> Self {
        SuperMatrix { parity: self.parity.clone(), m: matrix::grassmann_add(&self.m, &o.m) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        SuperMatrix { parity: self.parity.clone(), m: matrix::grassmann_sub(&self.m, &o.m) }
    }

    pub fn neg(&self) -> Self {
        SuperMatrix { parity: self.parity.clone(), m: self.m.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        SuperMatrix { parity: self.parity.clone(), m: self.m.iter().map(|a| a.scale(r)).collect() }
    }

    /// Left multiplication by a Grassmann scalar (no sign: scalars are on the left).
    pub fn scale_left(&self, c: &Grassmann) -> Self {
        SuperMatrix { parity: self.parity.clone(), m: self.m.iter().map(|a| c * a).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = self.dim();
        assert_eq!(self.parity, o.parity, "supermatrix shape mismatch");
        let mut out = vec![Grassmann::zero(); d * d];
        for r in 0..d {
            for c in 0..d {
                let a = &self.m[r * d + c];
                if a.is_zero() {
                    continue;
                }
                let flip = (self.parity[r] + self.parity[c]) % 2 == 1;
                for k in 0..d {
                    let b = &o.m[c * d + k];
                    if b.is_zero() {
                        continue;
                    }
                    let b = if flip { b.hat() } else { b.clone() };
                    out[r * d + k] = &out[r * d + k] + &(a * &b);
                }
            }
        }
        SuperMatrix { parity: self.parity.clone(), m: out }
    }

    fn soul(&self) -> Self {
        SuperMatrix { parity: self.parity.clone(), m: self.m.iter().map(Grassmann::soul).collect() }
    }

    /// Inverse by a Neumann series around the rational body (rational scalars
    /// commute with everything, so the body multiplies as an ordinary matrix).
    pub fn inverse(&self) -> Result<Self> {
        let d = self.dim();
        let b = matrix::rational_inverse(&matrix::body(&self.m), d).ok_or(Error::NonInvertibleBody)?;
        let b_inv = SuperMatrix { parity: self.parity.clone(), m: matrix::from_rational(&b) };
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

    /// Supertrace Σ_r (−1)^{p_r} m_rr.
    pub fn str(&self) -> Grassmann {
        let d = self.dim();
        (0..d).fold(Grassmann::zero(), |acc, r| {
            let e = &self.m[r * d + r];
            if self.parity[r] == 1 {
                &acc - e
            } else {
                &acc + e
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PAR: [u8; 3] = [0, 1, 1];

    #[test]
    fn unit_products() {
        let e01 = SuperMatrix::unit(&PAR, 0, 1);
        let e10 = SuperMatrix::unit(&PAR, 1, 0);
        assert_eq!(e01.mul(&e10), SuperMatrix::unit(&PAR, 0, 0));
        // graded commutator of two odd units is an anticommutator
        let anti = e01.mul(&e10).add(&e10.mul(&e01));
        assert_eq!(anti.str(), Grassmann::zero());
    }

    #[test]
    fn scalar_passes_odd_unit_with_sign() {
        let th = Grassmann::generator(0);
        let a = SuperMatrix::unit(&PAR, 1, 0);
        let b = SuperMatrix::identity(&PAR).scale_left(&th);
        // E_10 · θ = −θ E_10
        assert_eq!(a.mul(&b), a.scale_left(&(-th)));
    }

    #[test]
    fn inverse_round_trip() {
        let t = |i| Grassmann::generator(i);
        let mut m = SuperMatrix::identity(&PAR).m;
        m[3] = t(0); // odd row, even column
        m[6] = t(1);
        m[4] = Grassmann::from_int(2);
        m[5] = Grassmann::from_int(3);
        let g = SuperMatrix::from_entries(&PAR, m);
        let inv = g.inverse().unwrap();
        assert_eq!(g.mul(&inv), SuperMatrix::identity(&PAR));
        assert_eq!(inv.mul(&g), SuperMatrix::identity(&PAR));
    }
}
