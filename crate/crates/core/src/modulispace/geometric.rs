//! Δ of a holonomy function from the intersections of its curves: each
//! crossing contributes a chord, weighted by its sign and by ½ when it sits
//! at a marked point, plus a rotation-number term for ν.

use super::expr::{Chord, Endpoint, Expr, ModuliFunction, Slot, Target};
use super::group::GroupSpec;
use crate::error::{Error, Result};
use crate::loops::{CyclicWord, Location, LoopDiagram, PathWord, Strand};
use crate::superalgebra::{OddMetricLieData, Rational};
use crate::surface::Skeleton;

/// A product of holonomy functions together with a realization of its curves.
/// Invariant atoms of closed words are closed strands; entry atoms are paths
/// between marked points.
#[derive(Clone, Debug)]
pub struct RealizedSystem {
    pub func: ModuliFunction,
    pub diagram: LoopDiagram,
    /// Per atom: position of canonical letter 0 inside the atom's word.
    offsets: Vec<usize>,
}

impl RealizedSystem {
    pub fn new(sk: &Skeleton, func: ModuliFunction, seed: u64) -> Result<Self> {
        let mut strands = Vec::new();
        let mut offsets = Vec::new();
        for a in &func.atoms {
            let w = &a.word().letters;
            if a.is_invariant() {
                let cw = CyclicWord::new(sk, w)?;
                let n = w.len();
                let off = (0..n.max(1))
                    .find(|&r| n == cw.len() && w[r..].iter().chain(&w[..r]).eq(cw.letters().iter()))
                    .ok_or_else(|| Error::NonClosedWord(format!("{} is not cyclically reduced", a.display(sk))))?;
                strands.push(Strand::Closed(cw));
                offsets.push(off);
            } else {
                strands.push(Strand::Open(a.word().clone()));
                offsets.push(0);
            }
        }
        let diagram = LoopDiagram::realize(sk, strands, seed)?;
        Ok(RealizedSystem { func, diagram, offsets })
    }

    fn endpoint(&self, passage: usize) -> Endpoint {
        let p = &self.diagram.passages[passage];
        let n = self.diagram.strands[p.strand].letters().len();
        let pos = match self.diagram.strands[p.strand] {
            Strand::Closed(_) => (p.k + self.offsets[p.strand]) % n,
            Strand::Open(_) => p.k,
        };
        Endpoint { atom: p.strand, pos }
    }

    pub fn crossing_count(&self) -> usize {
        self.diagram.crossings().len()
    }
}

/// Σ_crossings λ β · (f with a chord at the crossing) + ½ Σ_i rot(γ_i) ν-insertion on γ_i.
pub fn intersection_delta_rhs(sk: &Skeleton, g: GroupSpec, lie: &OddMetricLieData, sys: &RealizedSystem) -> Result<Expr> {
    let mut terms = Vec::new();
    for c in sys.diagram.crossings() {
        let lambda = match c.location {
            Location::Interior => Rational::one(),
            Location::Boundary => Rational::new(1, 2),
        };
        let chord = Chord { from: sys.endpoint(c.first), to: sys.endpoint(c.second), via: PathWord::empty(c.vertex) };
        terms.push((&lambda * &Rational::from_int(c.sign as i64), Expr::Func(sys.func.clone().with_chord(chord))));
    }
    if let Some(k) = lie.nu.iter().position(|c| !c.is_zero()) {
        let nu = g.combination(&lie.nu);
        for (i, s) in sys.diagram.strands.iter().enumerate() {
            let rot2 = sys.diagram.strand_rotation2(sk, i);
            if rot2 != 0 && !s.letters().is_empty() {
                let slot = Slot { target: Target::Insert(Endpoint { atom: i, pos: 0 }), dir: nu.clone(), parity: g.parity(k) };
                terms.push((Rational::new(rot2, 4), Expr::deriv(slot, Expr::Func(sys.func.clone()))));
            }
        }
    }
    Ok(Expr::Sum(terms))
}
