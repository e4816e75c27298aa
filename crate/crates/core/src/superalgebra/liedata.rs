//! Structure-constant data for metric Lie (super)algebras.
//!
//! Conventions: `f[k][i][j]` is f^k_{ij} with [e_i, e_j] = f^k_{ij} e_k; the
//! pairing is t_{ij} = ⟨e_i, e_j⟩ and t^{ij} its matrix inverse
//! (t^{ij} t_{jk} = δ^i_k). The split Casimir is t = (−1)^{|e_i|} t^{ij} e_i ⊗ e_j.

use super::matrix;
use super::rational::Rational;
use crate::error::{Error, Result};

fn sgn(odd: bool) -> Rational {
    if odd {
        Rational::from_int(-1)
    } else {
        Rational::one()
    }
}

/// Dense 3-index tensor of size d³ (index order as written).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor3 {
    pub d: usize,
    pub data: Vec<Rational>,
}

impl Tensor3 {
    pub fn zeros(d: usize) -> Self {
        Tensor3 { d, data: vec![Rational::zero(); d * d * d] }
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize) -> &Rational {
        &self.data[(a * self.d + b) * self.d + c]
    }

    #[inline]
    pub fn get_mut(&mut self, a: usize, b: usize, c: usize) -> &mut Rational {
        &mut self.data[(a * self.d + b) * self.d + c]
    }

    /// Nonzero entries as (a, b, c, value).
    pub fn nonzero(&self) -> Vec<(usize, usize, usize, Rational)> {
        let d = self.d;
        let mut out = Vec::new();
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let v = self.get(a, b, c);
                    if !v.is_zero() {
                        out.push((a, b, c, v.clone()));
                    }
                }
            }
        }
        out
    }
}

/// An ordinary (even) Lie algebra given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenLieData {
    pub dim: usize,
    /// f^k_{ij}
    pub f: Tensor3,
}

impl EvenLieData {
    pub fn abelian(dim: usize) -> Self {
        EvenLieData { dim, f: Tensor3::zeros(dim) }
    }

    /// The two-dimensional non-abelian algebra [x, y] = y.
    pub fn aff1() -> Self {
        let mut f = Tensor3::zeros(2);
        *f.get_mut(1, 0, 1) = Rational::one();
        *f.get_mut(1, 1, 0) = Rational::from_int(-1);
        EvenLieData { dim: 2, f }
    }

    pub fn check_jacobi(&self) -> Result<()> {
        let par = vec![0u8; self.dim];
        check_bracket(&self.f, &par).map_err(Error::JacobiViolation)
    }
}

/// Associative structure of an associative superalgebra (used for q(n)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssocData {
    /// c^k_{ij}: e_i e_j = c^k_{ij} e_k
    pub c: Tensor3,
    /// otr coefficients t_i = otr(e_i)
    pub otr: Vec<Rational>,
    /// unit u = u^j e_j
    pub unit: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddMetricLieData {
    pub dim: usize,
    pub parity: Vec<u8>,
    pub f: Tensor3,
    pub t_lower: Vec<Rational>,
    pub t_upper: Vec<Rational>,
    /// φ^{xyz}
    pub phi: Tensor3,
    /// ν^k
    pub nu: Vec<Rational>,
    pub assoc: Option<AssocData>,
}

/// Graded antisymmetry and graded Jacobi for bracket constants.
fn check_bracket(f: &Tensor3, par: &[u8]) -> std::result::Result<(), String> {
    let d = f.d;
    for i in 0..d {
        for j in 0..d {
            let s = sgn(par[i] * par[j] % 2 == 1);
            for k in 0..d {
                if f.get(k, i, j) != &-(&s * f.get(k, j, i)) {
                    return Err(format!("graded antisymmetry fails for ({i},{j})"));
                }
            }
        }
    }
    // [e_i,[e_j,e_k]] = [[e_i,e_j],e_k] + (−1)^{|i||j|}[e_j,[e_i,e_k]]
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let s = sgn(par[i] * par[j] % 2 == 1);
                for out in 0..d {
                    let mut acc = Rational::zero();
                    for m in 0..d {
                        acc += &(f.get(m, j, k) * f.get(out, i, m));
                        acc -= &(f.get(m, i, j) * f.get(out, m, k));
                        acc -= &(&s * &(f.get(m, i, k) * f.get(out, j, m)));
                    }
                    if !acc.is_zero() {
                        return Err(format!("Jacobi fails for ({i},{j},{k})"));
                    }
                }
            }
        }
    }
    Ok(())
}

impl OddMetricLieData {
    /// Completes bracket and pairing data with t^{ij}, φ and ν.
    pub fn from_parts(parity: Vec<u8>, f: Tensor3, t_lower: Vec<Rational>, assoc: Option<AssocData>) -> Result<Self> {
        let d = parity.len();
        check_bracket(&f, &parity).map_err(Error::JacobiViolation)?;
        let t_upper = matrix::rational_inverse(&t_lower, d)
            .ok_or_else(|| Error::MalformedLieData("pairing is degenerate".into()))?;
        let mut phi = Tensor3::zeros(d);
        let inv24 = Rational::new(1, 24);
        for x in 0..d {
            for y in 0..d {
                for z in 0..d {
                    let mut acc = Rational::zero();
                    for j in 0..d {
                        let txj = &t_upper[x * d + j];
                        if txj.is_zero() {
                            continue;
                        }
                        for k in 0..d {
                            let tkz = &t_upper[k * d + z];
                            if tkz.is_zero() {
                                continue;
                            }
                            acc += &(&(txj * f.get(y, j, k)) * tkz);
                        }
                    }
                    if !acc.is_zero() {
                        *phi.get_mut(x, y, z) = &(&acc * &inv24) * &sgn(parity[y] == 1);
                    }
                }
            }
        }
        let mut nu = vec![Rational::zero(); d];
        for (k, slot) in nu.iter_mut().enumerate() {
            let mut acc = Rational::zero();
            for i in 0..d {
                for j in 0..d {
                    let t = &t_upper[i * d + j];
                    if !t.is_zero() {
                        acc += &(&(&sgn(parity[i] == 1) * t) * f.get(k, i, j));
                    }
                }
            }
            *slot = acc;
        }
        Ok(OddMetricLieData { dim: d, parity, f, t_lower, t_upper, phi, nu, assoc })
    }

    pub fn t(&self, i: usize, j: usize) -> &Rational {
        &self.t_lower[i * self.dim + j]
    }

    pub fn t_inv(&self, i: usize, j: usize) -> &Rational {
        &self.t_upper[i * self.dim + j]
    }

    /// Nonzero coefficients of the split Casimir (−1)^{|e_i|} t^{ij} e_i ⊗ e_j.
    pub fn casimir_terms(&self) -> Vec<(usize, usize, Rational)> {
        let d = self.dim;
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let t = self.t_inv(i, j);
                if !t.is_zero() {
                    out.push((i, j, &sgn(self.parity[i] == 1) * t));
                }
            }
        }
        out
    }

    pub fn is_unimodular(&self) -> bool {
        self.nu.iter().all(Rational::is_zero)
    }

    /// str ad_{e_m} = Σ_k (−1)^{|e_k|} f^k_{mk}.
    pub fn str_ad(&self, m: usize) -> Rational {
        (0..self.dim).fold(Rational::zero(), |acc, k| &acc + &(&sgn(self.parity[k] == 1) * self.f.get(k, m, k)))
    }

    /// ν by the alternative formula ν^i = (−1)^{|e_k|} f^k_{lk} t^{li}.
    pub fn nu_alternative(&self) -> Vec<Rational> {
        let d = self.dim;
        (0..d)
            .map(|i| {
                let mut acc = Rational::zero();
                for l in 0..d {
                    let t = self.t_inv(l, i);
                    if t.is_zero() {
                        continue;
                    }
                    for k in 0..d {
                        acc += &(&(&sgn(self.parity[k] == 1) * self.f.get(k, l, k)) * t);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn check_bracket(&self) -> std::result::Result<(), String> {
        check_bracket(&self.f, &self.parity)
    }

    /// Opposite parities only, graded-symmetric, invariant.
    pub fn check_pairing(&self) -> std::result::Result<(), String> {
        let d = self.dim;
        let p = &self.parity;
        for i in 0..d {
            for j in 0..d {
                let t = self.t(i, j);
                if !t.is_zero() && p[i] == p[j] {
                    return Err(format!("pairing couples equal parities ({i},{j})"));
                }
                if t != &(&sgn(p[i] * p[j] == 1) * self.t(j, i)) {
                    return Err(format!("pairing not graded-symmetric ({i},{j})"));
                }
            }
        }
        // ⟨[x,y],z⟩ + (−1)^{|x||y|}⟨y,[x,z]⟩ = 0
        for x in 0..d {
            for y in 0..d {
                for z in 0..d {
                    let mut acc = Rational::zero();
                    for k in 0..d {
                        acc += &(self.f.get(k, x, y) * self.t(k, z));
                        acc += &(&sgn(p[x] * p[y] == 1) * &(self.f.get(k, x, z) * self.t(y, k)));
                    }
                    if !acc.is_zero() {
                        return Err(format!("pairing not invariant on ({x},{y},{z})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// (−1)^{|e_i|} t^{ij} e_i ⊗ e_j is annihilated by ad_x ⊗ 1 + 1 ⊗ ad_x (graded).
    pub fn check_casimir_invariance(&self) -> std::result::Result<(), String> {
        let d = self.dim;
        let p = &self.parity;
        let terms = self.casimir_terms();
        for x in 0..d {
            let mut acc = vec![Rational::zero(); d * d];
            for (i, j, c) in &terms {
                for a in 0..d {
                    let fa = self.f.get(a, x, *i);
                    if !fa.is_zero() {
                        acc[a * d + j] += &(c * fa);
                    }
                    let fb = self.f.get(a, x, *j);
                    if !fb.is_zero() {
                        acc[i * d + a] += &(&(c * fb) * &sgn(p[x] * p[*i] == 1));
                    }
                }
            }
            if acc.iter().any(|r| !r.is_zero()) {
                return Err(format!("split Casimir not invariant under e_{x}"));
            }
        }
        Ok(())
    }

    /// ν central, both ν formulas agree, ⟨ν, x⟩ = str ad_x.
    pub fn check_nu(&self) -> std::result::Result<(), String> {
        let d = self.dim;
        if self.nu_alternative() != self.nu {
            return Err("the two coordinate formulas for ν disagree".into());
        }
        for j in 0..d {
            for k in 0..d {
                let acc = (0..d).fold(Rational::zero(), |acc, i| &acc + &(&self.nu[i] * self.f.get(k, i, j)));
                if !acc.is_zero() {
                    return Err(format!("ν not central (e_{j})"));
                }
            }
        }
        for m in 0..d {
            let pair = (0..d).fold(Rational::zero(), |acc, i| &acc + &(&self.nu[i] * self.t(i, m)));
            if pair != self.str_ad(m) {
                return Err(format!("⟨ν, e_{m}⟩ ≠ str ad"));
            }
        }
        Ok(())
    }

    /// φ graded-symmetric and ad-invariant.
    pub fn check_phi(&self) -> std::result::Result<(), String> {
        let d = self.dim;
        let p = &self.parity;
        for x in 0..d {
            for y in 0..d {
                for z in 0..d {
                    let v = self.phi.get(x, y, z);
                    if v != &(&sgn(p[x] * p[y] == 1) * self.phi.get(y, x, z))
                        || v != &(&sgn(p[y] * p[z] == 1) * self.phi.get(x, z, y))
                    {
                        return Err(format!("φ not graded-symmetric at ({x},{y},{z})"));
                    }
                }
            }
        }
        let entries = self.phi.nonzero();
        for w in 0..d {
            let mut acc = Tensor3::zeros(d);
            for (x, y, z, c) in &entries {
                for a in 0..d {
                    let f1 = self.f.get(a, w, *x);
                    if !f1.is_zero() {
                        *acc.get_mut(a, *y, *z) += &(c * f1);
                    }
                    let f2 = self.f.get(a, w, *y);
                    if !f2.is_zero() {
                        *acc.get_mut(*x, a, *z) += &(&(c * f2) * &sgn(p[w] * p[*x] == 1));
                    }
                    let f3 = self.f.get(a, w, *z);
                    if !f3.is_zero() {
                        *acc.get_mut(*x, *y, a) += &(&(c * f3) * &sgn(p[w] * (p[*x] + p[*y]) % 2 == 1));
                    }
                }
            }
            if acc.data.iter().any(|r| !r.is_zero()) {
                return Err(format!("φ not invariant under e_{w}"));
            }
        }
        Ok(())
    }

    /// −½(−1)^{|e_a|+|e_b||e_i|} t^{ab} c^j_{aib} = t_i u^j (needs associative data).
    pub fn check_discardy(&self) -> std::result::Result<(), String> {
        let assoc = self.assoc.as_ref().ok_or("no associative data")?;
        let d = self.dim;
        let p = &self.parity;
        let half = Rational::new(-1, 2);
        for i in 0..d {
            let mut lhs = vec![Rational::zero(); d];
            for a in 0..d {
                for b in 0..d {
                    let t = self.t_inv(a, b);
                    if t.is_zero() {
                        continue;
                    }
                    let s = &(&sgn((p[a] + p[b] * p[i]) % 2 == 1) * t) * &half;
                    // c^j_{aib} = c^m_{ai} c^j_{mb}
                    for m in 0..d {
                        let c1 = assoc.c.get(m, a, i);
                        if c1.is_zero() {
                            continue;
                        }
                        for (j, slot) in lhs.iter_mut().enumerate() {
                            let c2 = assoc.c.get(j, m, b);
                            if !c2.is_zero() {
                                *slot += &(&(&s * c1) * c2);
                            }
                        }
                    }
                }
            }
            for (j, value) in lhs.iter().enumerate() {
                if value != &(&assoc.otr[i] * &assoc.unit[j]) {
                    return Err(format!("discardy identity fails at i={i}, j={j}"));
                }
            }
        }
        Ok(())
    }

    pub fn check_all(&self) -> std::result::Result<(), String> {
        self.check_bracket()?;
        self.check_pairing()?;
        self.check_casimir_invariance()?;
        self.check_nu()?;
        self.check_phi()?;
        if self.assoc.is_some() {
            self.check_discardy()?;
        }
        Ok(())
    }
}

/// Basis index of q(n): ξ-power `s`, matrix unit (a, b).
fn q_index(n: usize, s: usize, a: usize, b: usize) -> usize {
    s * n * n + a * n + b
}

/// q(n) = Mat_n ⊗ ℚ[ξ]/(ξ²−1) with graded commutator and pairing otr(e_i e_j).
pub fn build_qn(n: usize) -> OddMetricLieData {
    assert!(n >= 1);
    let d = 2 * n * n;
    let parity: Vec<u8> = (0..d).map(|k| u8::from(k >= n * n)).collect();
    let mut c = Tensor3::zeros(d);
    for s in 0..2 {
        for t in 0..2 {
            for a in 0..n {
                for b in 0..n {
                    for e in 0..n {
                        let i = q_index(n, s, a, b);
                        let j = q_index(n, t, b, e);
                        *c.get_mut(q_index(n, (s + t) % 2, a, e), i, j) = Rational::one();
                    }
                }
            }
        }
    }
    let mut f = Tensor3::zeros(d);
    for k in 0..d {
        for i in 0..d {
            for j in 0..d {
                let s = sgn(parity[i] * parity[j] == 1);
                *f.get_mut(k, i, j) = c.get(k, i, j) - &(&s * c.get(k, j, i));
            }
        }
    }
    let otr: Vec<Rational> =
        (0..d).map(|k| if k >= n * n && (k - n * n) / n == (k - n * n) % n { Rational::one() } else { Rational::zero() }).collect();
    let unit: Vec<Rational> = (0..d).map(|k| if k < n * n && k / n == k % n { Rational::one() } else { Rational::zero() }).collect();
    let mut t_lower = vec![Rational::zero(); d * d];
    for i in 0..d {
        for j in 0..d {
            t_lower[i * d + j] = (0..d).fold(Rational::zero(), |acc, k| &acc + &(c.get(k, i, j) * &otr[k]));
        }
    }
    OddMetricLieData::from_parts(parity, f, t_lower, Some(AssocData { c, otr, unit })).expect("q(n) data is consistent")
}

/// g = h ⋉ Πh* with the coadjoint action and the odd evaluation pairing.
/// Basis: h_1..h_d (even), then the dual basis ξ_1..ξ_d of Πh* (odd).
pub fn odd_double(h: &EvenLieData) -> Result<OddMetricLieData> {
    h.check_jacobi()?;
    let m = h.dim;
    let d = 2 * m;
    let parity: Vec<u8> = (0..d).map(|k| u8::from(k >= m)).collect();
    let mut f = Tensor3::zeros(d);
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let v = h.f.get(c, a, b).clone();
                if v.is_zero() {
                    continue;
                }
                *f.get_mut(c, a, b) = v.clone();
                // [h_a, ξ_c] = −f^c_{ab} ξ_b and [ξ_c, h_a] = f^c_{ab} ξ_b
                *f.get_mut(m + b, a, m + c) -= &v;
                *f.get_mut(m + b, m + c, a) += &v;
            }
        }
    }
    let mut t_lower = vec![Rational::zero(); d * d];
    for a in 0..m {
        t_lower[a * d + m + a] = Rational::one();
        t_lower[(m + a) * d + a] = Rational::one();
    }
    OddMetricLieData::from_parts(parity, f, t_lower, None)
}

/// gl(n) with the trace pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenMetricLieData {
    pub dim: usize,
    pub f: Tensor3,
    pub s_lower: Vec<Rational>,
    pub s_upper: Vec<Rational>,
    /// f^{ijk} = f^i_{xy} s^{xj} s^{yk}
    pub cartan: Tensor3,
}

impl EvenMetricLieData {
    pub fn gl(n: usize) -> Self {
        let d = n * n;
        let mut f = Tensor3::zeros(d);
        let mut s_lower = vec![Rational::zero(); d * d];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    // E_ab E_bc = E_ac
                    let i = a * n + b;
                    let j = b * n + c;
                    *f.get_mut(a * n + c, i, j) += &Rational::one();
                    *f.get_mut(a * n + c, j, i) -= &Rational::one();
                    if a == c {
                        s_lower[i * d + j] = Rational::one();
                    }
                }
            }
        }
        let s_upper = matrix::rational_inverse(&s_lower, d).expect("trace pairing is nondegenerate");
        let mut cartan = Tensor3::zeros(d);
        for i in 0..d {
            for x in 0..d {
                for y in 0..d {
                    let fi = f.get(i, x, y);
                    if fi.is_zero() {
                        continue;
                    }
                    for j in 0..d {
                        let sxj = &s_upper[x * d + j];
                        if sxj.is_zero() {
                            continue;
                        }
                        for k in 0..d {
                            let syk = &s_upper[y * d + k];
                            if !syk.is_zero() {
                                *cartan.get_mut(i, j, k) += &(&(fi * sxj) * syk);
                            }
                        }
                    }
                }
            }
        }
        EvenMetricLieData { dim: d, f, s_lower, s_upper, cartan }
    }

    pub fn s_inv(&self, i: usize, j: usize) -> &Rational {
        &self.s_upper[i * self.dim + j]
    }

    pub fn casimir_terms(&self) -> Vec<(usize, usize, Rational)> {
        let d = self.dim;
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let s = self.s_inv(i, j);
                if !s.is_zero() {
                    out.push((i, j, s.clone()));
                }
            }
        }
        out
    }

    pub fn check_all(&self) -> std::result::Result<(), String> {
        let d = self.dim;
        check_bracket(&self.f, &vec![0; d])?;
        for i in 0..d {
            for j in 0..d {
                if self.s_inv(i, j) != self.s_inv(j, i) {
                    return Err("s not symmetric".into());
                }
            }
        }
        for x in 0..d {
            let mut acc = vec![Rational::zero(); d * d];
            for (i, j, c) in self.casimir_terms() {
                for a in 0..d {
                    acc[a * d + j] += &(&c * self.f.get(a, x, i));
                    acc[i * d + a] += &(&c * self.f.get(a, x, j));
                }
            }
            if acc.iter().any(|r| !r.is_zero()) {
                return Err("s not invariant".into());
            }
        }
        for (i, j, k, v) in self.cartan.nonzero() {
            if self.cartan.get(j, i, k) != &-&v || self.cartan.get(i, k, j) != &-&v {
                return Err("Cartan tensor not antisymmetric".into());
            }
        }
        Ok(())
    }
}

/// Σ_{ab} S^{ab} E_a X E_b for Mat_n with S the inverse trace pairing, as a
/// row-major rational matrix (should equal Tr(X)·1).
pub fn matrix_unit_contraction(n: usize, x: &[Rational]) -> Vec<Rational> {
    let gl = EvenMetricLieData::gl(n);
    let mut out = vec![Rational::zero(); n * n];
    for (a, b, s) in gl.casimir_terms() {
        // E_a X E_b with E_a = E_{a1 a2}, E_b = E_{b1 b2}: entry (a1, b2) gets X_{a2 b1}
        let (a1, a2) = (a / n, a % n);
        let (b1, b2) = (b / n, b % n);
        out[a1 * n + b2] += &(&s * &x[a2 * n + b1]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q1_pairing_and_casimir() {
        let q = build_qn(1);
        assert_eq!(q.t_lower, vec![Rational::zero(), Rational::one(), Rational::one(), Rational::zero()]);
        // t = 1⊗ξ − ξ⊗1
        let terms = q.casimir_terms();
        assert_eq!(terms, vec![(0, 1, Rational::one()), (1, 0, Rational::from_int(-1))]);
        assert!(q.is_unimodular());
    }

    #[test]
    fn qn_identities() {
        for n in 1..=2 {
            build_qn(n).check_all().unwrap();
        }
    }

    #[test]
    fn aff1_double_is_not_unimodular() {
        let g = odd_double(&EvenLieData::aff1()).unwrap();
        g.check_all().unwrap();
        assert!(!g.is_unimodular());
        assert!(odd_double(&EvenLieData::abelian(3)).unwrap().is_unimodular());
    }

    #[test]
    fn jacobi_violation_detected() {
        let mut h = EvenLieData::abelian(3);
        // [e0,e1] = e2 and [e1,e2] = e1 with nothing else is not a Lie algebra
        *h.f.get_mut(2, 0, 1) = Rational::one();
        *h.f.get_mut(2, 1, 0) = Rational::from_int(-1);
        *h.f.get_mut(1, 1, 2) = Rational::one();
        *h.f.get_mut(1, 2, 1) = Rational::from_int(-1);
        assert!(matches!(odd_double(&h), Err(Error::JacobiViolation(_))));
    }

    #[test]
    fn gl_data() {
        let g = EvenMetricLieData::gl(2);
        g.check_all().unwrap();
        // s = Σ E_ab ⊗ E_ba
        assert_eq!(g.s_inv(1, 2), &Rational::one());
        assert_eq!(g.s_inv(0, 0), &Rational::one());
    }
}
