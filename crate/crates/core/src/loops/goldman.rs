//! Goldman bracket, Turaev cobracket, their H₁ extension and the BV operator
//! on the exterior algebra of loop classes.

use crate::error::Result;
use crate::superalgebra::Rational;
use crate::surface::Skeleton;

use super::diagram::{LoopDiagram, Strand};
use super::formal::{add_wedge, FormalSum, WBasis, WedgeSum};
use super::word::{CyclicWord, Letter};

fn rotate(w: &[Letter], k: usize) -> impl Iterator<Item = &Letter> {
    w[k..].iter().chain(&w[..k])
}

/// Goldman bracket of two loop classes in a given realization. Powers are
/// handled through their roots: each crossing of u and v gives j·k crossings
/// of u^j and v^k, all resolving to the same class.
pub fn goldman_bracket_words(sk: &Skeleton, x: &CyclicWord, y: &CyclicWord, seed: u64) -> Result<FormalSum<CyclicWord>> {
    if x.is_trivial() || y.is_trivial() {
        return Ok(FormalSum::zero());
    }
    let ((u, j), (v, k)) = (x.root(), y.root());
    let d = LoopDiagram::realize(sk, vec![Strand::Closed(u.clone()), Strand::Closed(v.clone())], seed)?;
    let mut out = FormalSum::zero();
    for c in d.crossings_between(0, 1) {
        let (p, q) = (&d.passages[c.first], &d.passages[c.second]);
        let mut merged: Vec<Letter> = Vec::with_capacity(x.len() + y.len());
        for _ in 0..j {
            merged.extend(rotate(u.letters(), p.k));
        }
        for _ in 0..k {
            merged.extend(rotate(v.letters(), q.k));
        }
        out.add_term(CyclicWord::canonical(&merged), Rational::from_int(c.sign as i64 * (j * k) as i64));
    }
    Ok(out)
}

pub fn goldman_bracket(
    sk: &Skeleton,
    x: &FormalSum<CyclicWord>,
    y: &FormalSum<CyclicWord>,
    seed: u64,
) -> Result<FormalSum<CyclicWord>> {
    let mut out = FormalSum::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_scaled(&goldman_bracket_words(sk, a, b, seed)?, &(ca * cb));
        }
    }
    Ok(out)
}

/// Turaev cobracket of one loop class: for each self-crossing, the two
/// loops obtained by smoothing, first the one leaving along the first chord.
/// Trivial pieces are dropped. Proper powers are realized as perturbed
/// parallel copies (see [`LoopDiagram::realize_immersion`]).
pub fn turaev_cobracket_word(sk: &Skeleton, x: &CyclicWord, seed: u64) -> Result<WedgeSum> {
    if x.is_trivial() {
        return Ok(WedgeSum::zero());
    }
    let d = LoopDiagram::realize_immersion(sk, vec![Strand::Closed(x.clone())], seed)?;
    let w = x.letters();
    let n = w.len();
    let mut out = WedgeSum::zero();
    for c in d.self_crossings(0) {
        let (kp, kq) = (d.passages[c.first].k, d.passages[c.second].k);
        let piece = |from: usize, to: usize| {
            let len = (to + n - from) % n;
            let letters: Vec<Letter> = (0..len).map(|i| w[(from + i) % n]).collect();
            CyclicWord::canonical(&letters)
        };
        let (gp, gq) = (piece(kp, kq), piece(kq, kp));
        if gp.is_trivial() || gq.is_trivial() {
            continue;
        }
        add_wedge(&mut out, vec![WBasis::Loop(gp), WBasis::Loop(gq)], Rational::from_int(c.sign as i64));
    }
    Ok(out)
}

pub fn turaev_cobracket(sk: &Skeleton, x: &FormalSum<CyclicWord>, seed: u64) -> Result<WedgeSum> {
    let mut out = WedgeSum::zero();
    for (a, c) in x.iter() {
        out.add_scaled(&turaev_cobracket_word(sk, a, seed)?, c);
    }
    Ok(out)
}

/// H₁ coordinates: exponent sums of the non-tree edges.
pub fn homology_class(sk: &Skeleton, w: &[Letter]) -> Vec<i64> {
    let basis = sk.h1_basis_edges();
    let mut v = vec![0i64; basis.len()];
    for l in w {
        if let Some(i) = basis.iter().position(|&e| e == l.edge) {
            v[i] += if l.inv { -1 } else { 1 };
        }
    }
    v
}

/// Loop algebra of a skeleton: Goldman–Turaev structure extended by H₁.
#[derive(Clone, Debug)]
pub struct LoopAlgebra {
    pub sk: Skeleton,
    pub seed: u64,
    /// intersection numbers of the H₁ basis representatives
    pub pairing: Vec<Vec<i64>>,
    /// §2.4 convention keeps ◯ (so [a, b] = ⟨a, b⟩◯); otherwise ◯ = 0
    pub keep_trivial: bool,
}

impl LoopAlgebra {
    pub fn new(sk: &Skeleton, seed: u64, keep_trivial: bool) -> Result<Self> {
        let r = sk.h1_basis_edges().len();
        let reps: Vec<CyclicWord> = (0..r).map(|k| CyclicWord::canonical(&sk.h1_representative(k))).collect();
        let mut pairing = vec![vec![0i64; r]; r];
        for i in 0..r {
            for j in i + 1..r {
                let d = LoopDiagram::realize(sk, vec![Strand::Closed(reps[i].clone()), Strand::Closed(reps[j].clone())], seed)?;
                let s: i64 = d.crossings_between(0, 1).iter().map(|c| c.sign as i64).sum();
                pairing[i][j] = s;
                pairing[j][i] = -s;
            }
        }
        Ok(LoopAlgebra { sk: sk.clone(), seed, pairing, keep_trivial })
    }

    pub fn rank(&self) -> usize {
        self.pairing.len()
    }

    /// ⟨u, v⟩ for H₁ coordinate vectors.
    pub fn intersection(&self, u: &[i64], v: &[i64]) -> Rational {
        let mut s = 0i64;
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                s += ui * self.pairing[i][j] * vj;
            }
        }
        Rational::from_int(s)
    }

    fn unit(&self, k: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        v[k] = 1;
        v
    }

    fn class_of(&self, g: &WBasis) -> Vec<i64> {
        match g {
            WBasis::Loop(w) => homology_class(&self.sk, w.letters()),
            WBasis::H1(k) => self.unit(*k),
        }
    }

    fn keep(&self, mut s: FormalSum<WBasis>) -> FormalSum<WBasis> {
        if !self.keep_trivial {
            s.retain(|g| !matches!(g, WBasis::Loop(w) if w.is_trivial()));
        }
        s
    }

    /// Lie bracket on generators of gW ⊕ H₁.
    pub fn bracket_gen(&self, x: &WBasis, y: &WBasis) -> Result<FormalSum<WBasis>> {
        let out = match (x, y) {
            (WBasis::Loop(a), WBasis::Loop(b)) => {
                let s = goldman_bracket_words(&self.sk, a, b, self.seed)?;
                s.iter().map(|(w, c)| (WBasis::Loop(w.clone()), c.clone())).collect()
            }
            (WBasis::Loop(g), WBasis::H1(_)) => {
                if g.is_trivial() {
                    FormalSum::zero()
                } else {
                    FormalSum::term(x.clone(), self.intersection(&self.class_of(x), &self.class_of(y)))
                }
            }
            (WBasis::H1(_), WBasis::Loop(_)) => self.bracket_gen(y, x)?.neg(),
            (WBasis::H1(_), WBasis::H1(_)) => {
                FormalSum::term(WBasis::Loop(CyclicWord::trivial()), self.intersection(&self.class_of(x), &self.class_of(y)))
            }
        };
        Ok(self.keep(out))
    }

    pub fn bracket(&self, x: &FormalSum<WBasis>, y: &FormalSum<WBasis>) -> Result<FormalSum<WBasis>> {
        let mut out = FormalSum::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                out.add_scaled(&self.bracket_gen(a, b)?, &(ca * cb));
            }
        }
        Ok(out)
    }

    /// Cobracket on generators (zero on H₁ and on ◯).
    pub fn cobracket_gen(&self, x: &WBasis) -> Result<WedgeSum> {
        match x {
            WBasis::Loop(w) => turaev_cobracket_word(&self.sk, w, self.seed),
            WBasis::H1(_) => Ok(WedgeSum::zero()),
        }
    }

    /// BV operator on ∧(gW' ⊕ H₁):
    /// Δ(x₁∧…∧x_k) = Σ_{i<j} (−1)^{i+j+1} [x_i, x_j]∧x₁…x̂_i…x̂_j…x_k
    ///             + Σ_i (−1)^{i−1} x₁…x_{i−1}∧(c·δx_i)∧x_{i+1}…x_k   (1-based i).
    pub fn bv_delta_wedge(&self, x: &WedgeSum, cobracket_scale: &Rational) -> Result<WedgeSum> {
        let mut out = WedgeSum::zero();
        for (mono, coeff) in x.iter() {
            let k = mono.len();
            for i in 0..k {
                for j in i + 1..k {
                    let b = self.bracket_gen(&mono[i], &mono[j])?;
                    let sign = if (i + j + 1) % 2 == 0 { 1 } else { -1 };
                    for (g, c) in b.iter() {
                        if matches!(g, WBasis::Loop(w) if w.is_trivial()) {
                            continue;
                        }
                        let mut f = vec![g.clone()];
                        f.extend(mono.iter().enumerate().filter(|&(t, _)| t != i && t != j).map(|(_, m)| m.clone()));
                        add_wedge(&mut out, f, c * coeff * Rational::from_int(sign));
                    }
                }
            }
            for i in 0..k {
                let d = self.cobracket_gen(&mono[i])?;
                let sign = if i % 2 == 0 { 1 } else { -1 };
                for (pair, c) in d.iter() {
                    let mut f: Vec<WBasis> = mono[..i].to_vec();
                    f.extend(pair.iter().cloned());
                    f.extend(mono[i + 1..].iter().cloned());
                    add_wedge(&mut out, f, c * coeff * cobracket_scale * Rational::from_int(sign));
                }
            }
        }
        Ok(out)
    }

    /// Extension of the cobracket as an odd derivation of ∧:
    /// D(x₁∧…∧x_k) = Σ_i (−1)^{i−1} x₁…δx_i…x_k. Co-Jacobi ⟺ D∘δ = 0.
    pub fn cobracket_derivation(&self, x: &WedgeSum) -> Result<WedgeSum> {
        let mut out = WedgeSum::zero();
        for (mono, coeff) in x.iter() {
            for i in 0..mono.len() {
                let d = self.cobracket_gen(&mono[i])?;
                let sign = if i % 2 == 0 { 1 } else { -1 };
                for (pair, c) in d.iter() {
                    let mut f: Vec<WBasis> = mono[..i].to_vec();
                    f.extend(pair.iter().cloned());
                    f.extend(mono[i + 1..].iter().cloned());
                    add_wedge(&mut out, f, c * coeff * Rational::from_int(sign));
                }
            }
        }
        Ok(out)
    }

    /// Adjoint action of a generator on ∧, extended as an even derivation.
    pub fn ad_wedge(&self, g: &WBasis, x: &WedgeSum) -> Result<WedgeSum> {
        let mut out = WedgeSum::zero();
        for (mono, coeff) in x.iter() {
            for i in 0..mono.len() {
                for (b, c) in self.bracket_gen(g, &mono[i])?.iter() {
                    if matches!(b, WBasis::Loop(w) if w.is_trivial()) {
                        continue;
                    }
                    let mut f = mono.clone();
                    f[i] = b.clone();
                    add_wedge(&mut out, f, c * coeff);
                }
            }
        }
        Ok(out)
    }

    /// Applies the bracket to each wedge pair: ∧² → g.
    pub fn bracket_of_pairs(&self, x: &WedgeSum) -> Result<FormalSum<WBasis>> {
        let mut out = FormalSum::zero();
        for (mono, c) in x.iter() {
            if let [a, b] = mono.as_slice() {
                out.add_scaled(&self.bracket_gen(a, b)?, c);
            }
        }
        Ok(out)
    }
}

/// Extended bracket in the §2.4 convention (◯ kept) or with ◯ = 0.
pub fn extended_bracket(
    sk: &Skeleton,
    x: &FormalSum<WBasis>,
    y: &FormalSum<WBasis>,
    keep_trivial: bool,
    seed: u64,
) -> Result<FormalSum<WBasis>> {
    LoopAlgebra::new(sk, seed, keep_trivial)?.bracket(x, y)
}

/// ⟨u, v⟩ on H₁ coordinate vectors.
pub fn intersection_pairing_h1(sk: &Skeleton, u: &[i64], v: &[i64]) -> Result<Rational> {
    Ok(LoopAlgebra::new(sk, 0, true)?.intersection(u, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::standard;

    fn cw(spec: &[(usize, bool)]) -> CyclicWord {
        CyclicWord::canonical(&spec.iter().map(|&(e, i)| Letter::new(e, i)).collect::<Vec<_>>())
    }

    #[test]
    fn torus_bracket_of_generators() {
        let sk = standard::torus();
        let (a, b) = (cw(&[(0, false)]), cw(&[(1, false)]));
        let br = goldman_bracket_words(&sk, &a, &b, 0).unwrap();
        assert_eq!(br.len(), 1);
        let (w, c) = br.iter().next().unwrap();
        assert_eq!(*w, cw(&[(0, false), (1, false)]));
        assert_eq!(c.abs(), Rational::one());
        assert!(goldman_bracket_words(&sk, &a, &a, 0).unwrap().is_zero());
    }

    #[test]
    fn commutator_has_zero_cobracket() {
        let sk = standard::torus();
        let comm = cw(&[(0, false), (1, false), (0, true), (1, true)]);
        for seed in 0..8 {
            assert!(turaev_cobracket_word(&sk, &comm, seed).unwrap().is_zero());
        }
    }

    #[test]
    fn homology_of_words() {
        let sk = standard::torus();
        assert_eq!(homology_class(&sk, cw(&[(0, false), (1, false), (0, true), (1, true)]).letters()), vec![0, 0]);
        assert_eq!(homology_class(&sk, &[Letter::fwd(0), Letter::fwd(0), Letter::fwd(1)]), vec![2, 1]);
    }

    #[test]
    fn torus_pairing_is_unimodular() {
        let alg = LoopAlgebra::new(&standard::torus(), 0, true).unwrap();
        assert_eq!(alg.pairing[0][1].abs(), 1);
        let pants = LoopAlgebra::new(&standard::pants(), 0, true).unwrap();
        assert_eq!(pants.pairing[0][1], 0);
    }
}
