//! Typed words in the Fourier generators and their ℚ-linear combinations.
//!
//! A word is a composition chain of generators applied to either an object
//! (the identity) or a bilinear operation whose two inputs are again words:
//!
//! ```text
//! F₂ ∘ G₄ ∘ CUP(F₁ ∘ G₃ ⊗ F₃)
//! ```
//!
//! `F_i: V → M` and `G_j: M → V` shift degrees by `2i − 2g`; `CUP: M ⊗ M → M`
//! has shift 0 and `STAR_red: V ⊗ V → V` has shift `−2g`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{render, Q};

/// The two objects: `V` (dual side) and `M` (the Jacobian side).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Obj {
    V,
    M,
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Obj::V => "V",
            Obj::M => "M",
        })
    }
}

/// A Fourier component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    /// `F_i: V → M`.
    F(u32),
    /// `G_j = F⁻¹_j: M → V`.
    G(u32),
}

impl Gen {
    pub fn index(self) -> u32 {
        match self {
            Gen::F(i) | Gen::G(i) => i,
        }
    }

    pub fn source(self) -> Obj {
        match self {
            Gen::F(_) => Obj::V,
            Gen::G(_) => Obj::M,
        }
    }

    pub fn target(self) -> Obj {
        match self {
            Gen::F(_) => Obj::M,
            Gen::G(_) => Obj::V,
        }
    }

    pub fn shift(self, g: u32) -> i64 {
        2 * self.index() as i64 - 2 * g as i64
    }

    /// The generator of the opposite kind with complementary index `2g − i`.
    pub fn partner(self, g: u32) -> Gen {
        match self {
            Gen::F(i) => Gen::G(2 * g - i),
            Gen::G(i) => Gen::F(2 * g - i),
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::F(i) => write!(f, "F{i}"),
            Gen::G(j) => write!(f, "G{j}"),
        }
    }
}

/// Bilinear operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BinOp {
    /// Cup product `M ⊗ M → M`.
    Cup,
    /// Reduced convolution `V ⊗ V → V`, defined as
    /// `Σ_{i+j≤2g} G_{2g−i−j} ∘ CUP ∘ (F_i ⊗ F_j)`.
    StarRed,
}

impl BinOp {
    /// Object of both inputs and of the output.
    pub fn object(self) -> Obj {
        match self {
            BinOp::Cup => Obj::M,
            BinOp::StarRed => Obj::V,
        }
    }

    pub fn shift(self, g: u32) -> i64 {
        match self {
            BinOp::Cup => 0,
            BinOp::StarRed => -2 * g as i64,
        }
    }
}

impl fmt::Display for BinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BinOp::Cup => "CUP",
            BinOp::StarRed => "STAR_red",
        })
    }
}

/// Which input of a bilinear operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    L,
    R,
}

/// Address of a subword: the sequence of branches taken from the root.
pub type Path = Vec<Side>;

/// Source type of a word: an object or a tensor of source types.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ty {
    Obj(Obj),
    Tensor(Box<Ty>, Box<Ty>),
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ty::Obj(o) => write!(f, "{o}"),
            Ty::Tensor(a, b) => write!(f, "({a} ⊗ {b})"),
        }
    }
}

/// What a chain of generators is applied to.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Base {
    /// The identity of an object.
    Input(Obj),
    /// A bilinear operation applied to two words.
    Op(BinOp, Box<Word>, Box<Word>),
}

/// `chain[0] ∘ chain[1] ∘ … ∘ base`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub chain: Vec<Gen>,
    pub base: Base,
}

impl Word {
    pub fn id(o: Obj) -> Word {
        Word { chain: Vec::new(), base: Base::Input(o) }
    }

    pub fn gens(chain: Vec<Gen>) -> Word {
        let o = chain.last().map(|g| g.source()).unwrap_or(Obj::M);
        Word { chain, base: Base::Input(o) }
    }

    pub fn op(op: BinOp, l: Word, r: Word) -> Word {
        Word { chain: Vec::new(), base: Base::Op(op, Box::new(l), Box::new(r)) }
    }

    fn base_target(&self) -> Obj {
        match &self.base {
            Base::Input(o) => *o,
            Base::Op(op, _, _) => op.object(),
        }
    }

    pub fn target(&self) -> Obj {
        self.chain.first().map(|g| g.target()).unwrap_or_else(|| self.base_target())
    }

    pub fn source(&self) -> Ty {
        match &self.base {
            Base::Input(o) => Ty::Obj(*o),
            Base::Op(_, l, r) => Ty::Tensor(Box::new(l.source()), Box::new(r.source())),
        }
    }

    /// Object at the junction before `chain[offset]` (or before the base).
    pub fn junction_object(&self, offset: usize) -> Obj {
        self.chain.get(offset).map(|g| g.target()).unwrap_or_else(|| self.base_target())
    }

    /// Total number of generators.
    pub fn len(&self) -> usize {
        self.chain.len()
            + match &self.base {
                Base::Input(_) => 0,
                Base::Op(_, l, r) => l.len() + r.len(),
            }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn shift(&self, g: u32) -> i64 {
        let own: i64 = self.chain.iter().map(|x| x.shift(g)).sum();
        own + match &self.base {
            Base::Input(_) => 0,
            Base::Op(op, l, r) => op.shift(g) + l.shift(g) + r.shift(g),
        }
    }

    /// Checks composability of every junction.
    pub fn check(&self) -> Result<()> {
        let mut expected = self.base_target();
        for gen in self.chain.iter().rev() {
            if gen.source() != expected {
                return Err(Error::TypeMismatch(format!("{gen} cannot follow an arrow into {expected} in {self}")));
            }
            expected = gen.target();
        }
        if let Base::Op(op, l, r) = &self.base {
            for side in [l, r] {
                side.check()?;
                if side.target() != op.object() {
                    return Err(Error::TypeMismatch(format!("{op} needs inputs in {} in {self}", op.object())));
                }
            }
        }
        Ok(())
    }

    pub fn sub(&self, path: &[Side]) -> Option<&Word> {
        match path.split_first() {
            None => Some(self),
            Some((side, rest)) => match &self.base {
                Base::Op(_, l, r) => match side {
                    Side::L => l.sub(rest),
                    Side::R => r.sub(rest),
                },
                Base::Input(_) => None,
            },
        }
    }

    /// Replaces the subword at `path` by a linear combination.
    pub fn replace_at(&self, path: &[Side], f: &dyn Fn(&Word) -> Vec<(Q, Word)>) -> Option<Vec<(Q, Word)>> {
        let Some((side, rest)) = path.split_first() else {
            return Some(f(self));
        };
        let Base::Op(op, l, r) = &self.base else {
            return None;
        };
        let inner = match side {
            Side::L => l.replace_at(rest, f)?,
            Side::R => r.replace_at(rest, f)?,
        };
        Some(
            inner
                .into_iter()
                .map(|(c, w)| {
                    let (nl, nr) = match side {
                        Side::L => (w, (**r).clone()),
                        Side::R => ((**l).clone(), w),
                    };
                    (c, Word { chain: self.chain.clone(), base: Base::Op(*op, Box::new(nl), Box::new(nr)) })
                })
                .collect(),
        )
    }

    /// Every subword with its path, root first.
    pub fn subwords(&self) -> Vec<(Path, &Word)> {
        let mut out = Vec::new();
        self.collect_subwords(&mut Vec::new(), &mut out);
        out
    }

    fn collect_subwords<'a>(&'a self, path: &mut Path, out: &mut Vec<(Path, &'a Word)>) {
        out.push((path.clone(), self));
        if let Base::Op(_, l, r) = &self.base {
            path.push(Side::L);
            l.collect_subwords(path, out);
            path.pop();
            path.push(Side::R);
            r.collect_subwords(path, out);
            path.pop();
        }
    }

    /// Inserts `pair` into the chain of the subword at `path` before `chain[offset]`.
    pub fn insert_pair(&self, path: &[Side], offset: usize, pair: [Gen; 2]) -> Option<Word> {
        let sub = self.sub(path)?;
        let obj = sub.junction_object(offset);
        if offset > sub.chain.len() || pair[1].source() != obj || pair[0].target() != obj {
            return None;
        }
        let out = self.replace_at(path, &|w: &Word| {
            let mut chain = w.chain.clone();
            chain.splice(offset..offset, pair);
            vec![(Q::one(), Word { chain, base: w.base.clone() })]
        })?;
        out.into_iter().next().map(|(_, w)| w)
    }

    /// Removes `chain[offset..offset + 2]` of the subword at `path`.
    pub fn remove_pair(&self, path: &[Side], offset: usize) -> Option<Word> {
        let sub = self.sub(path)?;
        if offset + 2 > sub.chain.len() {
            return None;
        }
        let out = self.replace_at(path, &|w: &Word| {
            let mut chain = w.chain.clone();
            chain.drain(offset..offset + 2);
            vec![(Q::one(), Word { chain, base: w.base.clone() })]
        })?;
        out.into_iter().next().map(|(_, w)| w)
    }

    /// Path of the first subword whose base is `op`.
    pub fn find_op(&self, op: BinOp) -> Option<Path> {
        self.subwords().into_iter().find(|(_, w)| matches!(&w.base, Base::Op(o, _, _) if *o == op)).map(|(p, _)| p)
    }

    /// Precomposes the chain with `other` (`self ∘ other`); `self` must be a
    /// plain chain.
    pub fn compose(&self, other: &Word) -> Result<Word> {
        let Base::Input(o) = self.base else {
            return Err(Error::TypeMismatch(format!("cannot precompose into the bilinear word {self}")));
        };
        if o != other.target() {
            return Err(Error::TypeMismatch(format!("{self} ∘ {other}: {o} vs {}", other.target())));
        }
        let mut chain = self.chain.clone();
        chain.extend_from_slice(&other.chain);
        Ok(Word { chain, base: other.base.clone() })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.chain.iter().map(|g| g.to_string()).collect();
        match &self.base {
            Base::Input(o) => {
                if parts.is_empty() {
                    parts.push(format!("id_{o}"));
                }
            }
            Base::Op(op, l, r) => parts.push(format!("{op}({l} ⊗ {r})")),
        }
        f.write_str(&parts.join("∘"))
    }
}

/// `(source, target, shift)` of a homogeneous expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    pub source: Ty,
    pub target: Obj,
    pub shift: i64,
}

/// Finite ℚ-linear combination of words.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CorrExpr {
    terms: BTreeMap<Word, Q>,
}

impl CorrExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: Word) -> Self {
        let mut e = Self::zero();
        e.insert(Q::one(), w);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Q, Word)>) -> Self {
        let mut e = Self::zero();
        for (c, w) in terms {
            e.insert(c, w);
        }
        e
    }

    pub fn insert(&mut self, c: Q, w: Word) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    /// Removes `w`, returning its coefficient.
    pub fn take(&mut self, w: &Word) -> Option<Q> {
        self.terms.remove(w)
    }

    pub fn coeff(&self, w: &Word) -> Option<&Q> {
        self.terms.get(w)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Q)> {
        self.terms.iter()
    }

    pub fn words(&self) -> Vec<Word> {
        self.terms.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Q) -> CorrExpr {
        CorrExpr::from_terms(self.terms.iter().map(|(w, x)| (x * c, w.clone())))
    }

    pub fn plus(&self, other: &CorrExpr) -> CorrExpr {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.insert(c.clone(), w.clone());
        }
        out
    }

    pub fn minus(&self, other: &CorrExpr) -> CorrExpr {
        self.plus(&other.scale(&-Q::one()))
    }

    /// `self ∘ other`, bilinearly.
    pub fn compose(&self, other: &CorrExpr) -> Result<CorrExpr> {
        let mut out = CorrExpr::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.insert(x * y, a.compose(b)?);
            }
        }
        Ok(out)
    }

    /// `op ∘ (l ⊗ r)`, bilinearly.
    pub fn binop(op: BinOp, l: &CorrExpr, r: &CorrExpr) -> Result<CorrExpr> {
        let mut out = CorrExpr::zero();
        for (a, x) in &l.terms {
            for (b, y) in &r.terms {
                let w = Word::op(op, a.clone(), b.clone());
                w.check()?;
                out.insert(x * y, w);
            }
        }
        Ok(out)
    }

    /// Length of the shortest word.
    pub fn min_len(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.len()).min()
    }

    /// The common signature of all words; an error if they differ.
    pub fn signature(&self, g: u32) -> Result<Option<Signature>> {
        let mut sig: Option<Signature> = None;
        for w in self.terms.keys() {
            w.check()?;
            let s = Signature { source: w.source(), target: w.target(), shift: w.shift(g) };
            match &sig {
                None => sig = Some(s),
                Some(t) if *t == s => {}
                Some(t) => {
                    return Err(Error::TypeMismatch(format!(
                        "inhomogeneous expression: {} → {} [{}] vs {} → {} [{}]",
                        t.source, t.target, t.shift, s.source, s.target, s.shift
                    )))
                }
            }
        }
        Ok(sig)
    }
}

impl fmt::Display for CorrExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| if c.is_one() { w.to_string() } else { format!("({})*{w}", render(c)) })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Named operators of the calculus in genus `g`.
#[derive(Debug, Clone, Copy)]
pub struct Alg {
    pub g: u32,
}

impl Alg {
    pub fn new(g: u32) -> Self {
        Alg { g }
    }

    fn top(self) -> u32 {
        2 * self.g
    }

    pub fn f(self, i: u32) -> CorrExpr {
        CorrExpr::word(Word::gens(vec![Gen::F(i)]))
    }

    pub fn gg(self, j: u32) -> CorrExpr {
        CorrExpr::word(Word::gens(vec![Gen::G(j)]))
    }

    pub fn id(self, o: Obj) -> CorrExpr {
        CorrExpr::word(Word::id(o))
    }

    /// `p_i = F_i ∘ G_{2g−i}` on `M`.
    pub fn p(self, i: u32) -> CorrExpr {
        CorrExpr::word(Word::gens(vec![Gen::F(i), Gen::G(self.top() - i)]))
    }

    /// `p^∨_i = G_i ∘ F_{2g−i}` on `V`.
    pub fn pv(self, i: u32) -> CorrExpr {
        CorrExpr::word(Word::gens(vec![Gen::G(i), Gen::F(self.top() - i)]))
    }

    fn range_sum(self, lo: i64, hi: i64, piece: impl Fn(u32) -> CorrExpr) -> CorrExpr {
        let lo = lo.max(0);
        let hi = hi.min(self.top() as i64);
        (lo..=hi).fold(CorrExpr::zero(), |acc, i| acc.plus(&piece(i as u32)))
    }

    /// `p_{≤k} = Σ_{i≤k} p_i`.
    pub fn p_le(self, k: i64) -> CorrExpr {
        self.range_sum(0, k, |i| self.p(i))
    }

    /// `q_{≥k} = Σ_{i≥k} p_i`.
    pub fn q_ge(self, k: i64) -> CorrExpr {
        self.range_sum(k, self.top() as i64, |i| self.p(i))
    }

    /// `p^∨_{≤k} = Σ_{i≤k} p^∨_i`.
    pub fn pv_le(self, k: i64) -> CorrExpr {
        self.range_sum(0, k, |i| self.pv(i))
    }

    /// `q^∨_{≥k} = Σ_{i≥k} p^∨_i`.
    pub fn qv_ge(self, k: i64) -> CorrExpr {
        self.range_sum(k, self.top() as i64, |i| self.pv(i))
    }

    /// `Σ_i p_i` (on `M`) or `Σ_i p^∨_i` (on `V`).
    pub fn resolution(self, o: Obj) -> CorrExpr {
        match o {
            Obj::M => self.p_le(self.top() as i64),
            Obj::V => self.pv_le(self.top() as i64),
        }
    }

    pub fn cup(self, l: &CorrExpr, r: &CorrExpr) -> Result<CorrExpr> {
        CorrExpr::binop(BinOp::Cup, l, r)
    }

    pub fn star(self, l: &CorrExpr, r: &CorrExpr) -> Result<CorrExpr> {
        CorrExpr::binop(BinOp::StarRed, l, r)
    }

    /// `a ∘ b ∘ …`.
    pub fn chain(self, parts: &[CorrExpr]) -> Result<CorrExpr> {
        let mut it = parts.iter();
        let first = it.next().cloned().unwrap_or_default();
        it.try_fold(first, |acc, p| acc.compose(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shifts_and_types() {
        let a = Alg::new(2);
        let p = a.p(1);
        let sig = p.signature(2).unwrap().unwrap();
        assert_eq!((sig.target, sig.shift), (Obj::M, 0));
        let star = a.star(&a.pv(1), &a.pv(3)).unwrap();
        assert_eq!(star.signature(2).unwrap().unwrap().shift, -4);
        assert!(a.f(1).compose(&a.f(2)).is_err());
        assert!(a.cup(&a.pv(0), &a.pv(0)).is_err());
    }

    #[test]
    fn pair_surgery() {
        let a = Alg::new(1);
        let w = a.cup(&a.f(1), &a.f(0)).unwrap().words().remove(0);
        let ins = w.insert_pair(&[Side::L], 0, [Gen::F(2), Gen::G(0)]).unwrap();
        assert_eq!(ins.to_string(), "CUP(F2∘G0∘F1 ⊗ F0)");
        assert_eq!(ins.remove_pair(&[Side::L], 0).unwrap(), w);
        assert!(w.insert_pair(&[Side::L], 0, [Gen::G(2), Gen::F(0)]).is_none());
    }

    #[test]
    fn truncation_sums() {
        let a = Alg::new(2);
        assert_eq!(a.p_le(1).len(), 2);
        assert_eq!(a.q_ge(-3).len(), 5);
        assert!(a.qv_ge(5).is_zero());
        assert_eq!(a.p_le(4).plus(&a.q_ge(5)), a.resolution(Obj::M));
    }
}
