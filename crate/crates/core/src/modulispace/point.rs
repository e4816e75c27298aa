//! Points of Hom(Π₁(Σ, V), G): one group element per edge.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::group::{GElem, GroupSpec};
use crate::error::{Error, Result};
use crate::loops::word::check_composable;
use crate::loops::{Letter, PathWord};
use crate::surface::SkeletonMoveMap;
use crate::surface::Skeleton;

const MAX_ATTEMPTS: usize = 100;
/// Bodies are drawn from [−BODY_RANGE, BODY_RANGE].
const BODY_RANGE: i64 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuliPoint {
    pub group: GroupSpec,
    pub elems: Vec<GElem>,
    /// Grassmann generators θ₀..θ_{k−1} are taken by the point itself; jet
    /// tags are allocated above them.
    pub generators: usize,
}

impl ModuliPoint {
    pub fn identity(sk: &Skeleton, group: GroupSpec) -> Self {
        ModuliPoint { group, elems: vec![group.identity(); sk.num_edges()], generators: 0 }
    }

    /// Random point: small-integer bodies, and for super groups every odd
    /// coordinate mapped to its own generator.
    pub fn random(sk: &Skeleton, group: GroupSpec, seed: u64) -> Result<Self> {
        let generators = group.odd_coordinates() * sk.num_edges();
        if generators > 64 {
            return Err(Error::GeneratorBudget(generators));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut ints = || rng.gen_range(-BODY_RANGE..=BODY_RANGE);
        let mut elems = Vec::with_capacity(sk.num_edges());
        for e in 0..sk.num_edges() {
            let first = e * group.odd_coordinates();
            let g = (0..MAX_ATTEMPTS)
                .find_map(|_| group.sample(&mut ints, first))
                .ok_or(Error::RetryExhausted(MAX_ATTEMPTS))?;
            elems.push(g);
        }
        Ok(ModuliPoint { group, elems, generators })
    }

    /// `{"group": …, "edges": [element JSON per edge]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "group": self.group.name(),
            "edges": self.elems.iter().map(GElem::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_elems(group: GroupSpec, elems: Vec<GElem>) -> Self {
        let support = elems.iter().fold(0u64, |acc, g| acc | g.support());
        ModuliPoint { group, elems, generators: (64 - support.leading_zeros()) as usize }
    }

    pub fn letter(&self, l: Letter) -> Result<GElem> {
        if l.inv {
            self.elems[l.edge].inverse()
        } else {
            Ok(self.elems[l.edge].clone())
        }
    }

    /// Holonomy of a path. Paths compose like elements of the fundamental
    /// groupoid: an edge carries its tail fibre to its head fibre, so the
    /// word w₁w₂…w_k (traversed left to right) has holonomy g_{w_k}⋯g_{w₁}.
    pub fn holonomy(&self, sk: &Skeleton, w: &PathWord) -> Result<GElem> {
        check_composable(sk, &w.letters)?;
        self.holonomy_unchecked(&w.letters)
    }

    pub(crate) fn holonomy_unchecked(&self, letters: &[Letter]) -> Result<GElem> {
        let mut acc = self.group.identity();
        for &l in letters {
            acc = self.letter(l)?.mul(&acc);
        }
        Ok(acc)
    }

    /// The point of the target skeleton with the same holonomies: each new
    /// edge gets the holonomy of its backward image.
    pub fn transport(&self, map: &SkeletonMoveMap) -> Result<ModuliPoint> {
        let elems = map.backward.iter().map(|w| self.holonomy_unchecked(w)).collect::<Result<Vec<_>>>()?;
        Ok(ModuliPoint { group: self.group, elems, generators: self.generators })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::standard;

    #[test]
    fn q1_torus_uses_two_generators() {
        let sk = standard::torus();
        let pt = ModuliPoint::random(&sk, GroupSpec::Q(1), 7).unwrap();
        assert_eq!(pt.generators, 2);
    }

    #[test]
    fn inverse_letter_gives_inverse_holonomy() {
        let sk = standard::torus();
        let pt = ModuliPoint::random(&sk, GroupSpec::Q(2), 3).unwrap();
        let a = PathWord::new(&sk, vec![Letter::fwd(0)]).unwrap();
        let ai = a.inverse(&sk);
        let prod = pt.holonomy(&sk, &a).unwrap().mul(&pt.holonomy(&sk, &ai).unwrap());
        assert_eq!(prod, GroupSpec::Q(2).identity());
        assert_eq!(pt.holonomy(&sk, &PathWord::empty(0)).unwrap(), GroupSpec::Q(2).identity());
    }
}
