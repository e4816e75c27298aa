//! Text grammars for words, formal sums, wedges and function expressions.
//!
//! ```text
//! LETTER  := edge-id
//! INV     := LETTER ("'" | "^-1" | "⁻¹")
//! WORD    := (LETTER|INV) (("." | " ") (LETTER|INV))*   |  "◯"  |  "1@" vertex-id
//! H1      := "H[" int ("," int)* "]"          coordinates in the H₁ basis
//! GEN     := WORD | H1
//! SUM     := "0" | ["-"] TERM (("+"|"-") TERM)*
//! TERM    := [rational ("·"|"*")] ( "(" GEN ")" | GEN | WEDGE )
//! WEDGE   := ("∧"|"wedge") "(" GEN ("," GEN)* ")" | "1"
//! EXPR    := FACTOR ("*" FACTOR)*
//! FACTOR  := rational
//!          | ("tr"|"otr"|"odet"|"logdet") "(" WORD ")"
//!          | "ent" [block] "[" row "," col "]" "(" WORD ")"
//!          | "chord(" END "->" END "via" WORD ")"
//! END     := ["γ"|"g"] atom-number "@" letter-boundary       atoms count from 1
//! ```
//!
//! Every printer in the crate emits text this module reads back.

use crate::error::{Error, Result};
use crate::loops::formal::add_wedge;
use crate::loops::word::{check_composable, reduce};
use crate::loops::{CyclicWord, FormalSum, Letter, PathWord, WBasis, WedgeSum};
use crate::modulispace::{Atom, Chord, Endpoint, InvFn, ModuliFunction};
use crate::superalgebra::Rational;
use crate::surface::Skeleton;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Prime,
    Inverse,
    Dot,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Plus,
    Minus,
    Times,
    Slash,
    At,
    Arrow,
    Wedge,
    Circle,
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some((pos, c)) = it.next() {
        let tok = match c {
            c if c.is_whitespace() => continue,
            '\'' | '′' => Tok::Prime,
            '^' => {
                let rest = &text[pos + 1..];
                if rest.starts_with("-1") {
                    it.next();
                    it.next();
                    Tok::Inverse
                } else {
                    return Err(Error::parse(pos, "expected `^-1`"));
                }
            }
            '⁻' => match it.next() {
                Some((_, '¹')) => Tok::Inverse,
                _ => return Err(Error::parse(pos, "expected `⁻¹`")),
            },
            '.' => Tok::Dot,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            ',' => Tok::Comma,
            '+' => Tok::Plus,
            '-' => {
                if it.peek().map(|&(_, c)| c) == Some('>') {
                    it.next();
                    Tok::Arrow
                } else {
                    Tok::Minus
                }
            }
            '→' => Tok::Arrow,
            '*' | '·' => Tok::Times,
            '/' => Tok::Slash,
            '@' => Tok::At,
            '∧' => Tok::Wedge,
            '◯' => Tok::Circle,
            c if is_ident_char(c) => {
                let mut s = String::from(c);
                while let Some(&(_, d)) = it.peek() {
                    if !is_ident_char(d) || d == '¹' {
                        break;
                    }
                    s.push(d);
                    it.next();
                }
                Tok::Ident(s)
            }
            other => return Err(Error::parse(pos, format!("unexpected character `{other}`"))),
        };
        out.push((pos, tok));
    }
    Ok(out)
}

struct Parser<'a> {
    sk: &'a Skeleton,
    toks: Vec<(usize, Tok)>,
    i: usize,
    len: usize,
}

impl<'a> Parser<'a> {
    fn new(sk: &'a Skeleton, text: &str) -> Result<Self> {
        Ok(Parser { sk, toks: lex(text)?, i: 0, len: text.len() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(_, t)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.i + k).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.len, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.pos(), msg))
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&want) {
            self.i += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn finish(&self) -> Result<()> {
        if self.i < self.toks.len() {
            self.err("unexpected trailing input")
        } else {
            Ok(())
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.i += 1;
                Ok(s)
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn int(&mut self, what: &str) -> Result<i64> {
        let negative = self.peek() == Some(&Tok::Minus);
        if negative {
            self.i += 1;
        }
        let pos = self.pos();
        let s = self.ident(what)?;
        let v: i64 = s.parse().map_err(|_| Error::parse(pos, format!("expected {what}, found `{s}`")))?;
        Ok(if negative { -v } else { v })
    }

    fn index(&mut self, what: &str) -> Result<usize> {
        let pos = self.pos();
        let v = self.int(what)?;
        usize::try_from(v).map_err(|_| Error::parse(pos, format!("{what} must be non-negative")))
    }

    fn at_coefficient(&self) -> bool {
        let numeric = matches!(self.peek(), Some(Tok::Ident(s)) if s.chars().all(|c| c.is_ascii_digit()));
        numeric && matches!(self.peek_at(1), Some(Tok::Times | Tok::Slash))
    }

    fn rational(&mut self) -> Result<Rational> {
        let pos = self.pos();
        let n = self.int("a number")?;
        let d = if self.peek() == Some(&Tok::Slash) {
            self.i += 1;
            self.int("a denominator")?
        } else {
            1
        };
        if d == 0 {
            return Err(Error::parse(pos, "zero denominator"));
        }
        Ok(Rational::new(n, d))
    }

    /// Letters up to the first token that cannot continue a word.
    fn letters(&mut self) -> Result<Vec<Letter>> {
        let mut out = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::Ident(name)) => {
                    let pos = self.pos();
                    let edge = self
                        .sk
                        .edge_index(name)
                        .map_err(|_| Error::parse(pos, format!("unknown edge `{name}`")))?;
                    self.i += 1;
                    let inv = matches!(self.peek(), Some(Tok::Prime | Tok::Inverse));
                    if inv {
                        self.i += 1;
                    }
                    out.push(Letter::new(edge, inv));
                }
                Some(Tok::Dot) if !out.is_empty() && matches!(self.peek_at(1), Some(Tok::Ident(_))) => self.i += 1,
                _ => return Ok(out),
            }
        }
    }

    fn path(&mut self) -> Result<PathWord> {
        let pos = self.pos();
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == "1") && self.peek_at(1) == Some(&Tok::At) {
            self.i += 2;
            let vpos = self.pos();
            let v = self.ident("a vertex id")?;
            let start = self.sk.vertex_index(&v).map_err(|_| Error::parse(vpos, format!("unknown vertex `{v}`")))?;
            return Ok(PathWord::empty(start));
        }
        let letters = self.letters()?;
        if letters.is_empty() {
            return Err(Error::parse(pos, "expected a word"));
        }
        check_composable(self.sk, &letters)?;
        let start = letters[0].start(self.sk);
        Ok(PathWord { letters: reduce(&letters), start })
    }

    fn cyclic(&mut self) -> Result<CyclicWord> {
        if self.peek() == Some(&Tok::Circle) {
            self.i += 1;
            return Ok(CyclicWord::trivial());
        }
        let pos = self.pos();
        let letters = self.letters()?;
        if letters.is_empty() {
            return Err(Error::parse(pos, "expected a word"));
        }
        CyclicWord::new(self.sk, &letters)
    }

    fn h1(&mut self) -> Result<FormalSum<WBasis>> {
        let pos = self.pos();
        self.i += 1; // H
        self.expect(Tok::LBrack, "`[`")?;
        let mut coords = vec![self.int("an integer")?];
        while self.peek() == Some(&Tok::Comma) {
            self.i += 1;
            coords.push(self.int("an integer")?);
        }
        self.expect(Tok::RBrack, "`]`")?;
        let rank = self.sk.h1_basis_edges().len();
        if coords.len() != rank {
            return Err(Error::parse(pos, format!("H₁ has rank {rank}, got {} coordinates", coords.len())));
        }
        let mut s = FormalSum::zero();
        for (k, c) in coords.into_iter().enumerate() {
            s.add_term(WBasis::H1(k), Rational::from_int(c));
        }
        Ok(s)
    }

    fn at_h1(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == "H") && self.peek_at(1) == Some(&Tok::LBrack)
    }

    fn generator(&mut self) -> Result<FormalSum<WBasis>> {
        if self.at_h1() {
            self.h1()
        } else {
            Ok(FormalSum::single(WBasis::Loop(self.cyclic()?)))
        }
    }

    /// Parses `SUM` with `term` reading the body of one term.
    fn sum<K: Ord + Clone>(&mut self, mut term: impl FnMut(&mut Self) -> Result<FormalSum<K>>) -> Result<FormalSum<K>> {
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == "0") && self.peek_at(1).is_none() {
            self.i += 1;
            return Ok(FormalSum::zero());
        }
        let mut out = FormalSum::zero();
        let mut sign = Rational::one();
        if self.peek() == Some(&Tok::Minus) {
            self.i += 1;
            sign = -&sign;
        }
        loop {
            let mut c = sign.clone();
            if self.at_coefficient() {
                c = &c * &self.rational()?;
                self.expect(Tok::Times, "`·` or `*`")?;
            }
            let body = term(self)?;
            out.add_scaled(&body, &c);
            match self.peek() {
                Some(Tok::Plus) => sign = Rational::one(),
                Some(Tok::Minus) => sign = -Rational::one(),
                _ => return Ok(out),
            }
            self.i += 1;
        }
    }

    fn loop_term(&mut self) -> Result<FormalSum<WBasis>> {
        if self.peek() == Some(&Tok::LParen) {
            self.i += 1;
            let g = self.generator()?;
            self.expect(Tok::RParen, "`)`")?;
            Ok(g)
        } else {
            self.generator()
        }
    }

    fn wedge_term(&mut self) -> Result<WedgeSum> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == "1" => {
                self.i += 1;
                let mut out = WedgeSum::zero();
                add_wedge(&mut out, Vec::new(), Rational::one());
                return Ok(out);
            }
            Some(Tok::Wedge) => self.i += 1,
            Some(Tok::Ident(s)) if s == "wedge" => self.i += 1,
            _ => {
                // a lone generator is a wedge monomial of length one
                return self.loop_term().map(|g| lift(&[g]));
            }
        }
        self.expect(Tok::LParen, "`(`")?;
        let mut gens = vec![self.generator()?];
        while self.peek() == Some(&Tok::Comma) {
            self.i += 1;
            gens.push(self.generator()?);
        }
        self.expect(Tok::RParen, "`)`")?;
        Ok(lift(&gens))
    }

    fn endpoint(&mut self) -> Result<Endpoint> {
        let pos = self.pos();
        let s = self.ident("a chord endpoint")?;
        let digits = s.trim_start_matches(['γ', 'g']);
        let atom: usize = digits.parse().map_err(|_| Error::parse(pos, format!("bad atom reference `{s}`")))?;
        if atom == 0 {
            return Err(Error::parse(pos, "atoms are numbered from 1"));
        }
        self.expect(Tok::At, "`@`")?;
        Ok(Endpoint { atom: atom - 1, pos: self.index("a letter boundary")? })
    }

    fn factor(&mut self, f: &mut ModuliFunction) -> Result<()> {
        let pos = self.pos();
        let name = match self.peek() {
            Some(Tok::Ident(s)) => s.clone(),
            Some(Tok::Minus) => {
                self.i += 1;
                f.coeff = -&f.coeff;
                return self.factor(f);
            }
            _ => return self.err("expected a factor"),
        };
        if name.chars().all(|c| c.is_ascii_digit()) {
            let c = self.rational()?;
            f.coeff = &f.coeff * &c;
            return Ok(());
        }
        self.i += 1;
        let inv = match name.as_str() {
            "tr" => Some(InvFn::Tr),
            "otr" => Some(InvFn::Otr),
            "odet" => Some(InvFn::Odet),
            "logdet" => Some(InvFn::Logdet),
            _ => None,
        };
        if let Some(func) = inv {
            self.expect(Tok::LParen, "`(`")?;
            let w = self.path()?;
            self.expect(Tok::RParen, "`)`")?;
            f.atoms.push(Atom::Inv(func, w));
        } else if let Some(block) = name.strip_prefix("ent") {
            let block = if block.is_empty() {
                0
            } else {
                block.parse().map_err(|_| Error::parse(pos, format!("bad block in `{name}`")))?
            };
            self.expect(Tok::LBrack, "`[`")?;
            let row = self.index("a row")?;
            self.expect(Tok::Comma, "`,`")?;
            let col = self.index("a column")?;
            self.expect(Tok::RBrack, "`]`")?;
            self.expect(Tok::LParen, "`(`")?;
            let word = self.path()?;
            self.expect(Tok::RParen, "`)`")?;
            f.atoms.push(Atom::Ent { word, block, row, col });
        } else if name == "chord" {
            self.expect(Tok::LParen, "`(`")?;
            let from = self.endpoint()?;
            self.expect(Tok::Arrow, "`->`")?;
            let to = self.endpoint()?;
            let vpos = self.pos();
            if self.ident("`via`")? != "via" {
                return Err(Error::parse(vpos, "expected `via`"));
            }
            let via = self.path()?;
            self.expect(Tok::RParen, "`)`")?;
            f.chords.push(Chord { from, to, via });
        } else {
            return Err(Error::parse(pos, format!("unknown function `{name}`")));
        }
        Ok(())
    }
}

fn lift(gens: &[FormalSum<WBasis>]) -> WedgeSum {
    let mut acc = WedgeSum::zero();
    add_wedge(&mut acc, Vec::new(), Rational::one());
    for g in gens {
        let mut next = WedgeSum::zero();
        for (mono, c) in acc.iter() {
            for (b, d) in g.iter() {
                let mut f = mono.clone();
                f.push(b.clone());
                add_wedge(&mut next, f, c * d);
            }
        }
        acc = next;
    }
    acc
}

/// A composable path; reduced. `1@v` is the empty path at `v`.
pub fn parse_path(sk: &Skeleton, text: &str) -> Result<PathWord> {
    let mut p = Parser::new(sk, text)?;
    let w = p.path()?;
    p.finish()?;
    Ok(w)
}

/// A closed word, canonicalized; `◯` (or a fully cancelling word) is the trivial class.
pub fn parse_cyclic(sk: &Skeleton, text: &str) -> Result<CyclicWord> {
    let mut p = Parser::new(sk, text)?;
    let w = p.cyclic()?;
    p.finish()?;
    Ok(w)
}

/// A rational combination of loop classes and H₁ vectors.
pub fn parse_loop_sum(sk: &Skeleton, text: &str) -> Result<FormalSum<WBasis>> {
    let mut p = Parser::new(sk, text)?;
    let s = p.sum(Parser::loop_term)?;
    p.finish()?;
    Ok(s)
}

/// A rational combination of wedge monomials.
pub fn parse_wedge_sum(sk: &Skeleton, text: &str) -> Result<WedgeSum> {
    let mut p = Parser::new(sk, text)?;
    let s = p.sum(Parser::wedge_term)?;
    p.finish()?;
    Ok(s)
}

/// A product of atoms and chords; chord endpoints must name existing atoms.
pub fn parse_function(sk: &Skeleton, text: &str) -> Result<ModuliFunction> {
    let mut p = Parser::new(sk, text)?;
    let mut f = ModuliFunction::constant(Rational::one());
    p.factor(&mut f)?;
    while p.peek() == Some(&Tok::Times) {
        p.i += 1;
        p.factor(&mut f)?;
    }
    if matches!(p.peek(), Some(Tok::Plus | Tok::Minus)) {
        return p.err("a function expression is a single product of factors");
    }
    p.finish()?;
    for c in &f.chords {
        for e in [c.from, c.to] {
            let Some(atom) = f.atoms.get(e.atom) else {
                return Err(Error::parse(0, format!("chord refers to atom {} of {}", e.atom + 1, f.atoms.len())));
            };
            if e.pos > atom.word().len() {
                return Err(Error::parse(0, format!("letter boundary {} beyond atom {}", e.pos, e.atom + 1)));
            }
        }
        let (a, b) = (atom_vertex(sk, &f, c.from), atom_vertex(sk, &f, c.to));
        if c.via.start != a || c.via.end(sk) != b {
            return Err(Error::NonComposablePath(format!(
                "chord word {} must run from {} to {}",
                c.via.display(sk),
                sk.vertex_name(a),
                sk.vertex_name(b)
            )));
        }
    }
    Ok(f)
}

fn atom_vertex(sk: &Skeleton, f: &ModuliFunction, e: Endpoint) -> usize {
    f.atoms[e.atom].word().vertex_at(sk, e.pos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::standard;

    #[test]
    fn word_forms() {
        let sk = standard::torus();
        let w = parse_cyclic(&sk, "a b a' b'").unwrap();
        assert_eq!(parse_cyclic(&sk, "a.b.a^-1.b⁻¹").unwrap(), w);
        assert_eq!(w.display(&sk), "a b a' b'");
        assert!(parse_cyclic(&sk, "a a^-1").unwrap().is_trivial());
        assert!(matches!(parse_cyclic(&sk, "a c"), Err(Error::ParseError { pos: 2, .. })));
    }

    #[test]
    fn non_closed_words() {
        let sk = standard::path();
        assert!(matches!(parse_cyclic(&sk, "a"), Err(Error::NonClosedWord(_))));
        assert_eq!(parse_path(&sk, "a").unwrap().end(&sk), 1);
        assert_eq!(parse_path(&sk, "1@v1").unwrap(), PathWord::empty(1));
    }

    #[test]
    fn sums_and_wedges() {
        let sk = standard::torus();
        let s = parse_loop_sum(&sk, "2 · (a b) - 1/2 * b + H[1,-1]").unwrap();
        assert_eq!(s.len(), 4);
        let w = parse_wedge_sum(&sk, "-1 · ∧(a, b) + wedge(b, a)").unwrap();
        let mut expected = WedgeSum::zero();
        add_wedge(&mut expected, vec![WBasis::Loop(parse_cyclic(&sk, "a").unwrap()), WBasis::Loop(parse_cyclic(&sk, "b").unwrap())], Rational::from_int(-2));
        assert_eq!(w, expected);
    }

    #[test]
    fn expressions() {
        let sk = standard::torus();
        let f = parse_function(&sk, "tr(a.b) * otr(b') * chord(1@2 -> 2@0 via a)").unwrap();
        assert_eq!(f.atoms.len(), 2);
        assert_eq!(f.display(&sk), "tr(a b) * otr(b') * chord(1@2 -> 2@0 via a)");
        let g = parse_function(&sk, "3/2 * ent1[0,1](a b)").unwrap();
        assert_eq!(parse_function(&sk, &g.display(&sk)).unwrap(), g);
        assert!(parse_function(&sk, "chord(1@0 -> 1@1 via a)").is_err());
        assert!(parse_function(&sk, "tr(a) * chord(1@5 -> 1@0 via a)").is_err());
    }
}
