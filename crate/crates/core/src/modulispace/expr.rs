//! Functions on the moduli space and their evaluation.
//!
//! Derivatives are computed with jets: a derivative slot in direction x
//! perturbs the point by a fresh nilpotent tag τ (odd for odd x, a product
//! θ_pθ_q of two fresh generators for even x) and then reads off the
//! coefficient of τ. Nested slots give higher-order operators; the innermost
//! tag is extracted first.

use std::fmt;

use super::group::GElem;
use super::point::ModuliPoint;
use crate::error::{Error, Result};
use crate::loops::{Letter, PathWord};
use crate::superalgebra::{Grassmann, Rational};
use crate::surface::{End, HalfEdge, Skeleton};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvFn {
    Tr,
    Otr,
    Odet,
    Logdet,
}

impl InvFn {
    pub fn name(self) -> &'static str {
        match self {
            InvFn::Tr => "tr",
            InvFn::Otr => "otr",
            InvFn::Odet => "odet",
            InvFn::Logdet => "logdet",
        }
    }
}

/// A function of one holonomy.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    Inv(InvFn, PathWord),
    /// A matrix entry of the holonomy (block 1 is the ξ-block of Q(n)).
    Ent { word: PathWord, block: usize, row: usize, col: usize },
}

impl Atom {
    pub fn tr(w: PathWord) -> Self {
        Atom::Inv(InvFn::Tr, w)
    }

    pub fn otr(w: PathWord) -> Self {
        Atom::Inv(InvFn::Otr, w)
    }

    pub fn odet(w: PathWord) -> Self {
        Atom::Inv(InvFn::Odet, w)
    }

    pub fn logdet(w: PathWord) -> Self {
        Atom::Inv(InvFn::Logdet, w)
    }

    pub fn word(&self) -> &PathWord {
        match self {
            Atom::Inv(_, w) => w,
            Atom::Ent { word, .. } => word,
        }
    }

    fn is_logdet(&self) -> bool {
        matches!(self, Atom::Inv(InvFn::Logdet, _))
    }

    /// Conjugation-invariant atoms only see the free homotopy class.
    pub fn is_invariant(&self) -> bool {
        matches!(self, Atom::Inv(..))
    }

    pub fn display(&self, sk: &Skeleton) -> String {
        match self {
            Atom::Inv(f, w) => format!("{}({})", f.name(), w.display(sk)),
            Atom::Ent { word, block, row, col } => format!("ent{block}[{row},{col}]({})", word.display(sk)),
        }
    }
}

/// Letter boundary `pos` of atom `atom` (position k sits before letter k).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endpoint {
    pub atom: usize,
    pub pos: usize,
}

/// A chord from one letter boundary to another, following `via`. It inserts
/// the split Casimir with one leg at each end, the second leg transported
/// along the chord.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chord {
    pub from: Endpoint,
    pub to: Endpoint,
    pub via: PathWord,
}

impl Chord {
    pub fn reversed(&self, sk: &Skeleton) -> Chord {
        Chord { from: self.to, to: self.from, via: self.via.inverse(sk) }
    }
}

/// c · Π atoms, decorated with chords. Atom values are multiplied in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuliFunction {
    pub coeff: Rational,
    pub atoms: Vec<Atom>,
    pub chords: Vec<Chord>,
}

impl ModuliFunction {
    pub fn constant(c: Rational) -> Self {
        ModuliFunction { coeff: c, atoms: Vec::new(), chords: Vec::new() }
    }

    pub fn atom(a: Atom) -> Self {
        Self::product(vec![a])
    }

    pub fn product(atoms: Vec<Atom>) -> Self {
        ModuliFunction { coeff: Rational::one(), atoms, chords: Vec::new() }
    }

    pub fn with_chord(mut self, c: Chord) -> Self {
        self.chords.push(c);
        self
    }

    pub fn scaled(mut self, c: &Rational) -> Self {
        self.coeff = &self.coeff * c;
        self
    }

    pub fn mul(&self, o: &ModuliFunction) -> ModuliFunction {
        let shift = self.atoms.len();
        let moved = |e: Endpoint| Endpoint { atom: e.atom + shift, pos: e.pos };
        let mut chords = self.chords.clone();
        chords.extend(o.chords.iter().map(|c| Chord { from: moved(c.from), to: moved(c.to), via: c.via.clone() }));
        let mut atoms = self.atoms.clone();
        atoms.extend(o.atoms.iter().cloned());
        ModuliFunction { coeff: &self.coeff * &o.coeff, atoms, chords }
    }

    pub fn display(&self, sk: &Skeleton) -> String {
        let mut parts: Vec<String> = Vec::new();
        if self.coeff != Rational::one() || self.atoms.is_empty() {
            parts.push(self.coeff.to_string());
        }
        parts.extend(self.atoms.iter().map(|a| a.display(sk)));
        for c in &self.chords {
            parts.push(format!(
                "chord({}@{} -> {}@{} via {})",
                c.from.atom + 1,
                c.from.pos,
                c.to.atom + 1,
                c.to.pos,
                c.via.display(sk)
            ));
        }
        parts.join(" * ")
    }
}

/// Where a derivative acts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    /// The sum of the actions at these half-edges.
    HalfEdges(Vec<HalfEdge>),
    /// Insertion at a letter boundary of one atom's holonomy, acting like the
    /// outgoing half-edge there.
    Insert(Endpoint),
}

/// Derivative slot: a target and a homogeneous Lie algebra direction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Slot {
    pub target: Target,
    pub dir: GElem,
    pub parity: u8,
}

impl Slot {
    pub fn half_edge(a: HalfEdge, dir: GElem, parity: u8) -> Self {
        Slot { target: Target::HalfEdges(vec![a]), dir, parity }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Func(ModuliFunction),
    Sum(Vec<(Rational, Expr)>),
    Prod(Vec<Expr>),
    Deriv(Slot, Box<Expr>),
}

impl Expr {
    pub fn deriv(slot: Slot, e: Expr) -> Expr {
        Expr::Deriv(slot, Box::new(e))
    }

    pub fn zero() -> Expr {
        Expr::Sum(Vec::new())
    }

    pub fn scaled(self, c: Rational) -> Expr {
        Expr::Sum(vec![(c, self)])
    }

    pub fn sub(self, o: Expr) -> Expr {
        Expr::Sum(vec![(Rational::one(), self), (-Rational::one(), o)])
    }
}

impl From<ModuliFunction> for Expr {
    fn from(f: ModuliFunction) -> Self {
        Expr::Func(f)
    }
}

impl From<Atom> for Expr {
    fn from(a: Atom) -> Self {
        Expr::Func(ModuliFunction::atom(a))
    }
}

struct Active {
    target: Target,
    /// τ·x
    tx: GElem,
}

/// Evaluates expressions at a point. `casimir` lists (i, j, c_ij) for chord
/// insertions, in the group's Lie algebra basis.
pub struct Evaluator<'a> {
    pt: &'a ModuliPoint,
    casimir: Vec<(usize, usize, Rational)>,
}

impl<'a> Evaluator<'a> {
    pub fn new(pt: &'a ModuliPoint) -> Self {
        let g = pt.group;
        let casimir = match (g.odd_data(), g.even_data()) {
            (Some(od), _) => od.casimir_terms(),
            (None, Some(ev)) => ev.casimir_terms(),
            _ => Vec::new(),
        };
        Evaluator { pt, casimir }
    }

    pub fn eval(&self, e: &Expr) -> Result<Grassmann> {
        self.go(e, &mut Vec::new(), self.pt.generators, false)
    }

    fn go(&self, e: &Expr, ctx: &mut Vec<Active>, next: usize, logdet_ok: bool) -> Result<Grassmann> {
        match e {
            Expr::Func(f) => self.func(f, ctx, next, logdet_ok),
            Expr::Sum(terms) => {
                let mut acc = Grassmann::zero();
                for (c, t) in terms {
                    if !c.is_zero() {
                        acc = &acc + &self.go(t, ctx, next, logdet_ok)?.scale(c);
                    }
                }
                Ok(acc)
            }
            Expr::Prod(factors) => {
                let mut acc = Grassmann::one();
                for f in factors {
                    acc = &acc * &self.go(f, ctx, next, false)?;
                    if acc.is_zero() {
                        break;
                    }
                }
                Ok(acc)
            }
            Expr::Deriv(slot, inner) => {
                let width = if slot.parity == 1 { 1 } else { 2 };
                if next + width > 64 {
                    return Err(Error::GeneratorBudget(next + width));
                }
                let tag = if width == 1 {
                    Grassmann::generator(next)
                } else {
                    &Grassmann::generator(next) * &Grassmann::generator(next + 1)
                };
                ctx.push(Active { target: slot.target.clone(), tx: slot.dir.scale_left(&tag) });
                let v = self.go(inner, ctx, next + width, true);
                ctx.pop();
                let v = v?;
                Ok(if width == 1 { v.extract_left(next) } else { v.extract_pair(next, next + 1) })
            }
        }
    }

    /// Edge elements after the half-edge perturbations in `ctx`. A leaving
    /// half-edge acts by the left-invariant field x^L (g ↦ g(1 + τx)), an
    /// arriving one by −x^R (g ↦ (1 − τx)g); this makes ρ_p(x) the
    /// infinitesimal gauge transformation at p. Outer slots sit closest to
    /// the edge element.
    fn perturbed_edges(&self, ctx: &[Active], edges: &[bool]) -> Vec<Option<(GElem, Option<GElem>)>> {
        let one = self.pt.group.identity();
        let mut out: Vec<Option<(GElem, Option<GElem>)>> = vec![None; edges.len()];
        for (e, used) in edges.iter().enumerate() {
            if !used {
                continue;
            }
            let mut g = self.pt.elems[e].clone();
            for act in ctx {
                if let Target::HalfEdges(hs) = &act.target {
                    for h in hs.iter().filter(|h| h.edge == e) {
                        g = match h.end {
                            End::Head => one.sub(&act.tx).mul(&g),
                            End::Tail => g.mul(&one.add(&act.tx)),
                        };
                    }
                }
            }
            out[e] = Some((g, None));
        }
        out
    }

    fn func(&self, f: &ModuliFunction, ctx: &mut Vec<Active>, next: usize, logdet_ok: bool) -> Result<Grassmann> {
        if f.coeff.is_zero() {
            return Ok(Grassmann::zero());
        }
        if let Some((chord, rest)) = f.chords.split_first() {
            return self.expand_chord(f, chord, rest, ctx, next, logdet_ok);
        }
        let has_logdet = f.atoms.iter().any(Atom::is_logdet);
        if has_logdet && (f.atoms.len() != 1 || !logdet_ok || ctx.is_empty()) {
            return Err(Error::LogdetNotEvaluable);
        }
        let ne = self.pt.elems.len();
        let mut used = vec![false; ne];
        for a in &f.atoms {
            for l in &a.word().letters {
                used[l.edge] = true;
            }
        }
        let mut edges = self.perturbed_edges(ctx, &used);
        let mut acc = Grassmann::scalar(f.coeff.clone());
        for (i, a) in f.atoms.iter().enumerate() {
            let hol = self.atom_holonomy(i, &a.word().letters, ctx, &mut edges)?;
            let v = match a {
                Atom::Inv(InvFn::Tr, _) => hol.tr(),
                Atom::Inv(InvFn::Otr, _) => hol.otr()?,
                Atom::Inv(InvFn::Odet, _) => hol.odet()?,
                Atom::Inv(InvFn::Logdet, w) => {
                    let base = self.pt.holonomy_unchecked(&w.letters)?;
                    base.inverse()?.mul(&hol).logdet_unipotent()?
                }
                Atom::Ent { block, row, col, .. } => hol.entry(*block, *row, *col)?,
            };
            acc = &acc * &v;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    fn letter_elem(&self, l: Letter, edges: &mut [Option<(GElem, Option<GElem>)>]) -> Result<GElem> {
        let slot = edges[l.edge].as_mut().expect("edge marked as used");
        if !l.inv {
            return Ok(slot.0.clone());
        }
        if slot.1.is_none() {
            slot.1 = Some(slot.0.inverse()?);
        }
        Ok(slot.1.clone().expect("just filled"))
    }

    /// g_{w_k}⋯g_{w_1} with the insertions of `ctx` for this atom: an
    /// insertion at boundary k multiplies by (1 + τx) between g_{w_k} and
    /// g_{w_{k+1}}, like the leaving half-edge of letter k+1.
    fn atom_holonomy(
        &self,
        atom: usize,
        letters: &[Letter],
        ctx: &[Active],
        edges: &mut [Option<(GElem, Option<GElem>)>],
    ) -> Result<GElem> {
        let one = self.pt.group.identity();
        let inserts: Vec<(usize, &GElem)> = ctx
            .iter()
            .filter_map(|a| match &a.target {
                Target::Insert(ep) if ep.atom == atom => Some((ep.pos, &a.tx)),
                _ => None,
            })
            .collect();
        let insert_at = |acc: GElem, k: usize| -> GElem {
            // inner slots act first, so they end up nearer the earlier letters
            inserts.iter().rev().filter(|(p, _)| *p == k).fold(acc, |acc, (_, tx)| one.add(tx).mul(&acc))
        };
        let mut acc = one.clone();
        for (k, &l) in letters.iter().enumerate() {
            acc = insert_at(acc, k);
            acc = self.letter_elem(l, edges)?.mul(&acc);
        }
        Ok(insert_at(acc, letters.len()))
    }

    fn expand_chord(
        &self,
        f: &ModuliFunction,
        chord: &Chord,
        rest: &[Chord],
        ctx: &mut Vec<Active>,
        next: usize,
        logdet_ok: bool,
    ) -> Result<Grassmann> {
        let g = self.pt.group;
        let inner_f = ModuliFunction { coeff: f.coeff.clone(), atoms: f.atoms.clone(), chords: rest.to_vec() };
        let mut used = vec![false; self.pt.elems.len()];
        for l in &chord.via.letters {
            used[l.edge] = true;
        }
        let mut edges = self.perturbed_edges(ctx, &used);
        let hol = {
            let mut acc = g.identity();
            for &l in &chord.via.letters {
                acc = self.letter_elem(l, &mut edges)?.mul(&acc);
            }
            acc
        };
        let hol_inv = hol.inverse()?;
        let mut terms = Vec::new();
        for (i, j, c) in &self.casimir {
            let far = hol.mul(&g.basis(*j)).mul(&hol_inv);
            let e = Expr::deriv(
                Slot { target: Target::Insert(chord.from), dir: g.basis(*i), parity: g.parity(*i) },
                Expr::deriv(
                    Slot { target: Target::Insert(chord.to), dir: far, parity: g.parity(*j) },
                    Expr::Func(inner_f.clone()),
                ),
            );
            terms.push((c.clone(), e));
        }
        self.go(&Expr::Sum(terms), ctx, next, logdet_ok)
    }
}

pub fn eval(f: &Expr, pt: &ModuliPoint) -> Result<Grassmann> {
    Evaluator::new(pt).eval(f)
}

impl fmt::Display for InvFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
