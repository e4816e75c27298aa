//! Structure groups and their Lie algebras, realized by explicit matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::superalgebra::{
    build_qn, matrix, odd_double, EvenLieData, EvenMetricLieData, Grassmann, OddMetricLieData, QElement, Rational,
    SuperMatrix,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupSpec {
    /// GL(n) over ℚ (all-even supermatrices).
    Gl(usize),
    /// The queer group Q(n) over the Grassmann algebra.
    Q(usize),
    /// The odd double of Aff(1), inside GL(1|2).
    Aff1Double,
}

/// Row parities of the GL(1|2) realization of the Aff(1) double.
const AFF_PARITY: [u8; 3] = [0, 1, 1];

impl GroupSpec {
    pub fn name(&self) -> String {
        match self {
            GroupSpec::Gl(n) => format!("GL({n})"),
            GroupSpec::Q(n) => format!("Q({n})"),
            GroupSpec::Aff1Double => "Aff(1)⋉ΠAff(1)*".to_string(),
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            GroupSpec::Gl(n) => n * n,
            GroupSpec::Q(n) => 2 * n * n,
            GroupSpec::Aff1Double => 4,
        }
    }

    pub fn parity(&self, k: usize) -> u8 {
        match *self {
            GroupSpec::Gl(_) => 0,
            GroupSpec::Q(n) => QElement::basis_parity(n, k),
            GroupSpec::Aff1Double => u8::from(k >= 2),
        }
    }

    pub fn identity(&self) -> GElem {
        match *self {
            GroupSpec::Gl(n) => GElem::M(SuperMatrix::identity(&vec![0; n])),
            GroupSpec::Q(n) => GElem::Q(QElement::identity(n)),
            GroupSpec::Aff1Double => GElem::M(SuperMatrix::identity(&AFF_PARITY)),
        }
    }

    /// Matrix realization of the Lie algebra basis element `k`, in the basis
    /// order of [`even_data`](Self::even_data) / [`odd_data`](Self::odd_data).
    pub fn basis(&self, k: usize) -> GElem {
        match *self {
            GroupSpec::Gl(n) => GElem::M(SuperMatrix::unit(&vec![0; n], k / n, k % n)),
            GroupSpec::Q(n) => GElem::Q(QElement::basis(n, k)),
            GroupSpec::Aff1Double => {
                let p = &AFF_PARITY;
                GElem::M(match k {
                    // x acts on the odd line ⟨ξ_y⟩ with weight −1, matching the
                    // coadjoint action of [x, y] = y
                    0 => SuperMatrix::unit(p, 2, 2).neg(),
                    1 => SuperMatrix::unit(p, 1, 2),
                    2 => SuperMatrix::unit(p, 1, 0),
                    3 => SuperMatrix::unit(p, 2, 0),
                    _ => panic!("basis index out of range"),
                })
            }
        }
    }

    /// Σ c_k e_k for a coefficient vector.
    pub fn combination(&self, coeffs: &[Rational]) -> GElem {
        let mut acc = self.zero();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.basis(k).scale_left(&Grassmann::scalar(c.clone())));
            }
        }
        acc
    }

    pub fn zero(&self) -> GElem {
        match *self {
            GroupSpec::Gl(n) => GElem::M(SuperMatrix::zero(&vec![0; n])),
            GroupSpec::Q(n) => GElem::Q(QElement::zero(n)),
            GroupSpec::Aff1Double => GElem::M(SuperMatrix::zero(&AFF_PARITY)),
        }
    }

    pub fn is_odd_type(&self) -> bool {
        !matches!(self, GroupSpec::Gl(_))
    }

    pub fn even_data(&self) -> Option<EvenMetricLieData> {
        match *self {
            GroupSpec::Gl(n) => Some(EvenMetricLieData::gl(n)),
            _ => None,
        }
    }

    pub fn odd_data(&self) -> Option<OddMetricLieData> {
        match *self {
            GroupSpec::Gl(_) => None,
            GroupSpec::Q(n) => Some(build_qn(n)),
            GroupSpec::Aff1Double => Some(odd_double(&EvenLieData::aff1()).expect("aff(1) satisfies Jacobi")),
        }
    }

    /// Number of Grassmann generators a generic point uses per edge.
    pub fn odd_coordinates(&self) -> usize {
        match *self {
            GroupSpec::Gl(_) => 0,
            GroupSpec::Q(n) => n * n,
            GroupSpec::Aff1Double => 2,
        }
    }

    /// A generic group element: small-integer rational body, and every odd
    /// coordinate its own generator starting at `first_gen`. `None` when the
    /// drawn body is singular.
    pub fn sample(&self, ints: &mut impl FnMut() -> i64, first_gen: usize) -> Option<GElem> {
        match *self {
            GroupSpec::Gl(n) => {
                let body: Vec<Rational> = (0..n * n).map(|_| Rational::from_int(ints())).collect();
                matrix::rational_inverse(&body, n)?;
                Some(GElem::M(SuperMatrix::from_entries(&vec![0; n], matrix::from_rational(&body))))
            }
            GroupSpec::Q(n) => {
                let body: Vec<Rational> = (0..n * n).map(|_| Rational::from_int(ints())).collect();
                matrix::rational_inverse(&body, n)?;
                let y = (0..n * n).map(|k| Grassmann::generator(first_gen + k)).collect();
                Some(GElem::Q(QElement::from_blocks(n, matrix::from_rational(&body), y)))
            }
            GroupSpec::Aff1Double => {
                let s = ints();
                let r = ints();
                if r == 0 {
                    return None;
                }
                let z = Grassmann::zero;
                let c = Grassmann::from_int;
                let m = vec![
                    c(1),
                    z(),
                    z(),
                    Grassmann::generator(first_gen),
                    c(1),
                    c(s),
                    Grassmann::generator(first_gen + 1),
                    z(),
                    c(r),
                ];
                Some(GElem::M(SuperMatrix::from_entries(&AFF_PARITY, m)))
            }
        }
    }
}

/// A group (or Lie algebra) element in the matrix realization of its group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GElem {
    M(SuperMatrix),
    Q(QElement),
}

impl GElem {
    pub fn mul(&self, o: &GElem) -> GElem {
        match (self, o) {
            (GElem::M(a), GElem::M(b)) => GElem::M(a.mul(b)),
            (GElem::Q(a), GElem::Q(b)) => GElem::Q(a.mul(b)),
            _ => panic!("mixed group types"),
        }
    }

    pub fn add(&self, o: &GElem) -> GElem {
        match (self, o) {
            (GElem::M(a), GElem::M(b)) => GElem::M(a.add(b)),
            (GElem::Q(a), GElem::Q(b)) => GElem::Q(a.add(b)),
            _ => panic!("mixed group types"),
        }
    }

    pub fn sub(&self, o: &GElem) -> GElem {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> GElem {
        self.scale_left(&Grassmann::from_int(-1))
    }

    pub fn scale_left(&self, c: &Grassmann) -> GElem {
        match self {
            GElem::M(a) => GElem::M(a.scale_left(c)),
            GElem::Q(a) => GElem::Q(a.scale_left(c)),
        }
    }

    pub fn inverse(&self) -> Result<GElem> {
        Ok(match self {
            GElem::M(a) => GElem::M(a.inverse()?),
            GElem::Q(a) => GElem::Q(a.inverse()?),
        })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            GElem::M(a) => a.is_zero(),
            GElem::Q(a) => matrix::is_zero(&a.x) && matrix::is_zero(&a.y),
        }
    }

    /// Graded commutator of two homogeneous algebra elements.
    pub fn bracket(&self, o: &GElem, self_parity: u8, o_parity: u8) -> GElem {
        let ab = self.mul(o);
        let ba = o.mul(self);
        if self_parity & o_parity == 1 {
            ab.add(&ba)
        } else {
            ab.sub(&ba)
        }
    }

    /// Trace for GL(n) and Q(n) (Tr X); supertrace in GL(1|2).
    pub fn tr(&self) -> Grassmann {
        match self {
            GElem::M(a) => a.str(),
            GElem::Q(a) => a.tr(),
        }
    }

    pub fn otr(&self) -> Result<Grassmann> {
        match self {
            GElem::Q(a) => Ok(a.otr()),
            GElem::M(_) => Err(Error::UnsupportedFunction("otr".into())),
        }
    }

    pub fn odet(&self) -> Result<Grassmann> {
        match self {
            GElem::Q(a) => a.odet(),
            GElem::M(_) => Err(Error::UnsupportedFunction("odet".into())),
        }
    }

    /// log det of an even element whose body is the identity (the finite
    /// series Σ (−1)^{k+1} Tr N^k / k).
    pub fn logdet_unipotent(&self) -> Result<Grassmann> {
        match self {
            GElem::M(a) if a.row_parity().iter().all(|&p| p == 0) => {
                let n = a.dim();
                let nil: Vec<Grassmann> = a.entries().iter().map(Grassmann::soul).collect();
                if matrix::body(a.entries()) != matrix::identity_rational(n) {
                    return Err(Error::LogdetNotEvaluable);
                }
                let mut power = nil.clone();
                let mut acc = Grassmann::zero();
                let mut k = 1i64;
                while !matrix::is_zero(&power) {
                    let sign = if k % 2 == 1 { 1 } else { -1 };
                    acc = &acc + &matrix::trace(&power, n).scale(&Rational::new(sign, k));
                    power = matrix::grassmann_mul(&power, &nil, n);
                    k += 1;
                }
                Ok(acc)
            }
            GElem::Q(a) => a.logdet_nilpotent(),
            _ => Err(Error::UnsupportedFunction("logdet".into())),
        }
    }

    /// Matrix entry; `block` selects X (0) or Y (1) for Q(n) and must be 0 otherwise.
    pub fn entry(&self, block: usize, r: usize, c: usize) -> Result<Grassmann> {
        match self {
            GElem::M(a) if block == 0 && r < a.dim() && c < a.dim() => Ok(a.entry(r, c).clone()),
            GElem::Q(a) if block < 2 && r < a.n && c < a.n => {
                Ok(if block == 0 { a.x[r * a.n + c].clone() } else { a.y[r * a.n + c].clone() })
            }
            _ => Err(Error::UnsupportedFunction(format!("ent[{block}]({r},{c})"))),
        }
    }

    /// All Grassmann entries, for generator bookkeeping.
    pub fn support(&self) -> u64 {
        let all: Box<dyn Iterator<Item = &Grassmann>> = match self {
            GElem::M(a) => Box::new(a.entries().iter()),
            GElem::Q(a) => Box::new(a.x.iter().chain(a.y.iter())),
        };
        all.fold(0, |acc, g| acc | g.support())
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            GElem::M(a) => {
                let d = a.dim();
                let rows: Vec<Vec<serde_json::Value>> = (0..d)
                    .map(|r| (0..d).map(|c| serde_json::to_value(a.entry(r, c)).expect("serializable")).collect())
                    .collect();
                serde_json::json!({ "M": rows })
            }
            GElem::Q(q) => serde_json::to_value(q).expect("serializable"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// [e_i, e_j] = f^k_{ij} e_k in the matrix realization.
    fn check_structure_constants(g: GroupSpec) {
        let d = g.dim();
        let (f, parity): (Vec<Vec<Vec<Rational>>>, Vec<u8>) = match g.odd_data() {
            Some(od) => (
                (0..d).map(|i| (0..d).map(|j| (0..d).map(|k| od.f.get(k, i, j).clone()).collect()).collect()).collect(),
                od.parity.clone(),
            ),
            None => {
                let ev = g.even_data().unwrap();
                (
                    (0..d).map(|i| (0..d).map(|j| (0..d).map(|k| ev.f.get(k, i, j).clone()).collect()).collect()).collect(),
                    vec![0; d],
                )
            }
        };
        for i in 0..d {
            assert_eq!(g.parity(i), parity[i]);
            for j in 0..d {
                let lhs = g.basis(i).bracket(&g.basis(j), parity[i], parity[j]);
                let rhs = g.combination(&f[i][j]);
                assert_eq!(lhs, rhs, "[e_{i}, e_{j}] in {}", g.name());
            }
        }
    }

    #[test]
    fn realizations_match_structure_constants() {
        for g in [GroupSpec::Gl(2), GroupSpec::Q(1), GroupSpec::Q(2), GroupSpec::Aff1Double] {
            check_structure_constants(g);
        }
    }

    #[test]
    fn aff_sample_is_invertible() {
        let mut k = 0;
        let mut ints = || {
            k += 1;
            k
        };
        let g = GroupSpec::Aff1Double.sample(&mut ints, 0).unwrap();
        let gi = g.inverse().unwrap();
        assert_eq!(g.mul(&gi), GroupSpec::Aff1Double.identity());
    }
}
