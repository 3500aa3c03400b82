//! Normalisation, bounded search and trace replay.
//!
//! The normal form applies, until nothing changes, four rewrite passes:
//!
//! 1. **unfold**: `STAR_red(a ⊗ b) ↦ Σ_{i+j≤2g} G_{2g−i−j}∘CUP(F_i∘a ⊗ F_j∘b)`;
//! 2. **vanish**: delete every word containing a composite the axioms kill;
//! 3. **drop** (graded identities only): delete words whose leading index is
//!    below the target grade — they factor through a strictly lower truncation;
//! 4. **collapse**: replace a complete resolution sum `Σ_i c·X∘F_i∘G_{2g−i}∘Y`
//!    (or its `G∘F` analogue) by `c·X∘Y`.
//!
//! [`expand`] applies all four greedily. [`verify`] applies the first three
//! eagerly to `lhs − rhs` and searches breadth-first, up to a fixed depth,
//! over two kinds of move: **collapse** one complete resolution sum, or
//! **expand** — insert a resolution of the identity at one position in every
//! shortest word.
//!
//! Each pass is recorded as a [`Step`]; [`replay`] re-applies a trace from
//! scratch, checking that every step is licensed and that it ends at zero.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::Serialize;

use super::word::{Base, BinOp, CorrExpr, Gen, Obj, Path, Side, Word};
use crate::error::{Error, Result};
use crate::rational::{render, Q};

/// Which Fourier-vanishing axioms hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axioms {
    /// The free algebra: only the resolution of the identity.
    None,
    /// Composites vanish below total index `2g`.
    Half,
    /// Composites vanish off total index `2g`.
    Full,
}

impl Axioms {
    pub fn name(self) -> &'static str {
        match self {
            Axioms::None => "none",
            Axioms::Half => "half",
            Axioms::Full => "full",
        }
    }
}

impl FromStr for Axioms {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(Axioms::None),
            "half" => Ok(Axioms::Half),
            "full" => Ok(Axioms::Full),
            other => Err(Error::InvalidInput(format!("unknown axiom set {other:?} (expected full, half or none)"))),
        }
    }
}

impl fmt::Display for Axioms {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Axioms together with the ambient genus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AxiomSet {
    pub axioms: Axioms,
    pub g: u32,
}

impl AxiomSet {
    pub fn new(axioms: Axioms, g: u32) -> Self {
        AxiomSet { axioms, g }
    }

    fn top(&self) -> u32 {
        2 * self.g
    }

    fn kills_total(&self, total: u32) -> bool {
        match self.axioms {
            Axioms::None => false,
            Axioms::Half => total < self.top(),
            Axioms::Full => total != self.top(),
        }
    }

    /// Whether the composite `outer ∘ inner` of two generators vanishes.
    pub fn pair_vanishes(&self, outer: Gen, inner: Gen) -> bool {
        outer.target() != inner.target() && self.kills_total(outer.index() + inner.index())
    }

    /// Whether `G_n ∘ CUP ∘ (F_a ⊗ F_b)` vanishes. This component of the
    /// convolution has codimension `n + a + b − g`, and convolution is
    /// supported in codimension `≥ g` (exactly `g` in the full theory).
    pub fn conv_vanishes(&self, n: u32, a: u32, b: u32) -> bool {
        self.kills_total(n + a + b)
    }

    /// The first vanishing pattern in `w`, described.
    pub fn vanishing_reason(&self, w: &Word) -> Option<String> {
        if self.axioms == Axioms::None {
            return None;
        }
        for (_, sub) in w.subwords() {
            for pair in sub.chain.windows(2) {
                if self.pair_vanishes(pair[0], pair[1]) {
                    return Some(format!("{}∘{}", pair[0], pair[1]));
                }
            }
            if let (Some(Gen::G(n)), Base::Op(BinOp::Cup, l, r)) = (sub.chain.last(), &sub.base) {
                if let (Some(Gen::F(a)), Some(Gen::F(b))) = (l.chain.first(), r.chain.first()) {
                    if self.conv_vanishes(*n, *a, *b) {
                        return Some(format!("G{n}∘CUP(F{a} ⊗ F{b})"));
                    }
                }
            }
        }
        None
    }
}

/// Everything a rewrite depends on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RewriteCtx {
    pub ax: AxiomSet,
    /// Target grade of a graded identity; `None` for exact identities.
    pub grade: Option<u32>,
}

impl RewriteCtx {
    pub fn exact(ax: AxiomSet) -> Self {
        RewriteCtx { ax, grade: None }
    }

    pub fn graded(ax: AxiomSet, grade: u32) -> Self {
        RewriteCtx { ax, grade: Some(grade) }
    }

    /// Words with a leading generator of index below the grade factor
    /// through a lower truncation (`F_m = p_{≤m}∘F_m` under the half axioms),
    /// so they vanish in the graded quotient. Without axioms this is not
    /// licensed.
    fn drops(&self, w: &Word) -> bool {
        match (self.grade, w.chain.first()) {
            (Some(k), Some(lead)) => self.ax.axioms != Axioms::None && lead.index() < k,
            _ => false,
        }
    }
}

/// Where an expand step inserts a resolution of the identity: the chain of
/// the subword at `path`, counted from its left or right end.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Policy {
    pub path: Path,
    pub anchor: Anchor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Anchor {
    Left(usize),
    Right(usize),
}

impl Policy {
    fn offset_in(&self, w: &Word) -> Option<usize> {
        let len = w.sub(&self.path)?.chain.len();
        match self.anchor {
            Anchor::Left(o) => (o <= len).then_some(o),
            Anchor::Right(o) => (o <= len).then(|| len - o),
        }
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path: String = self.path.iter().map(|s| if *s == Side::L { 'L' } else { 'R' }).collect();
        let path = if path.is_empty() { "root".to_string() } else { path };
        match self.anchor {
            Anchor::Left(o) => write!(f, "{path}:left+{o}"),
            Anchor::Right(o) => write!(f, "{path}:right-{o}"),
        }
    }
}

/// One licensed rewrite pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    /// Substitute the definition of `STAR_red` in every word containing it.
    Unfold { count: usize },
    /// Delete every word killed by the axioms.
    Vanish { count: usize },
    /// Delete every word below the target grade.
    Drop { grade: u32, count: usize },
    /// Collapse one complete resolution sum around `residual`.
    Collapse { residual: Word, path: Path, offset: usize, obj: Obj, coeff: Q },
    /// Insert a resolution of the identity into every shortest word.
    Expand { policy: Policy, count: usize },
}

impl Step {
    pub fn kind(&self) -> &'static str {
        match self {
            Step::Unfold { .. } => "unfold",
            Step::Vanish { .. } => "vanish",
            Step::Drop { .. } => "drop",
            Step::Collapse { .. } => "collapse",
            Step::Expand { .. } => "expand",
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Unfold { count } => write!(f, "unfold STAR_red in {count} word(s)"),
            Step::Vanish { count } => write!(f, "vanish {count} word(s) by axiom"),
            Step::Drop { grade, count } => write!(f, "drop {count} word(s) below grade {grade}"),
            Step::Collapse { residual, obj, coeff, .. } => {
                write!(f, "collapse resolution of id_{obj} to ({})*{residual}", render(coeff))
            }
            Step::Expand { policy, count } => write!(f, "expand id at {policy} in {count} word(s)"),
        }
    }
}

/// A replayable sequence of steps.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    pub steps: Vec<Step>,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Words removed by graded drops.
    pub fn dropped(&self) -> usize {
        self.steps.iter().map(|s| if let Step::Drop { count, .. } = s { *count } else { 0 }).sum()
    }

    pub fn expansions(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, Step::Expand { .. })).count()
    }

    pub fn render(&self) -> Vec<String> {
        self.steps.iter().map(|s| s.to_string()).collect()
    }
}

/// Outcome of [`verify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Verified(Trace),
    /// No proof within the search bounds; not a claim that the identity fails.
    NotWithinDepth {
        explored: usize,
        residual_terms: usize,
    },
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::Verified(_))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Verified(_) => "Verified",
            Verdict::NotWithinDepth { .. } => "NotWithinDepth",
        }
    }
}

/// An identity to verify, exact or in a graded quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub lhs: CorrExpr,
    pub rhs: CorrExpr,
    pub grade: Option<u32>,
}

impl Identity {
    pub fn exact(lhs: CorrExpr, rhs: CorrExpr) -> Self {
        Identity { lhs, rhs, grade: None }
    }

    pub fn graded(lhs: CorrExpr, rhs: CorrExpr, grade: u32) -> Self {
        Identity { lhs, rhs, grade: Some(grade) }
    }

    pub fn ctx(&self, ax: AxiomSet) -> RewriteCtx {
        RewriteCtx { ax, grade: self.grade }
    }

    fn difference(&self, g: u32) -> Result<CorrExpr> {
        let l = self.lhs.signature(g)?;
        let r = self.rhs.signature(g)?;
        if let (Some(l), Some(r)) = (&l, &r) {
            if l != r {
                return Err(Error::TypeMismatch(format!(
                    "{} → {} [{}] vs {} → {} [{}]",
                    l.source, l.target, l.shift, r.source, r.target, r.shift
                )));
            }
        }
        Ok(self.lhs.minus(&self.rhs))
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.grade {
            None => write!(f, "{} = {}", self.lhs, self.rhs),
            Some(k) => write!(f, "{} ≡ {} (grade {k})", self.lhs, self.rhs),
        }
    }
}

/// Search bounds beyond the expansion depth: the number of normalised
/// states examined and the size of any single state.
const MAX_STATES: usize = 256;
const MAX_TERMS: usize = 20_000;

fn resolution_pair(obj: Obj, i: u32, g: u32) -> [Gen; 2] {
    match obj {
        Obj::M => [Gen::F(i), Gen::G(2 * g - i)],
        Obj::V => [Gen::G(i), Gen::F(2 * g - i)],
    }
}

fn unfold_star(w: &Word, g: u32) -> Vec<(Q, Word)> {
    let Base::Op(BinOp::StarRed, l, r) = &w.base else {
        return vec![(Q::one(), w.clone())];
    };
    let mut out = Vec::new();
    for i in 0..=2 * g {
        for j in 0..=2 * g - i {
            let mut chain = w.chain.clone();
            chain.push(Gen::G(2 * g - i - j));
            let fl = Word { chain: [vec![Gen::F(i)], l.chain.clone()].concat(), base: l.base.clone() };
            let fr = Word { chain: [vec![Gen::F(j)], r.chain.clone()].concat(), base: r.base.clone() };
            out.push((Q::one(), Word { chain, base: Base::Op(BinOp::Cup, Box::new(fl), Box::new(fr)) }));
        }
    }
    out
}

/// `(residual, path, offset, obj)` → index → coefficient.
type Groups = BTreeMap<(Word, Path, usize, Obj), BTreeMap<u32, Q>>;

fn resolution_groups(e: &CorrExpr, g: u32) -> Groups {
    let mut groups: Groups = BTreeMap::new();
    for (w, c) in e.terms() {
        for (path, sub) in w.subwords() {
            for (o, pair) in sub.chain.windows(2).enumerate() {
                let (a, b) = (pair[0], pair[1]);
                if a.target() == b.target() || a.index() + b.index() != 2 * g {
                    continue;
                }
                if let Some(res) = w.remove_pair(&path, o) {
                    groups.entry((res, path.clone(), o, a.target())).or_default().insert(a.index(), c.clone());
                }
            }
        }
    }
    groups
}

fn complete_groups(e: &CorrExpr, g: u32) -> impl Iterator<Item = Step> {
    resolution_groups(e, g).into_iter().filter_map(move |((residual, path, offset, obj), members)| {
        let coeff = members.values().next()?.clone();
        (members.len() == 2 * g as usize + 1 && members.values().all(|c| *c == coeff)).then_some(Step::Collapse {
            residual,
            path,
            offset,
            obj,
            coeff,
        })
    })
}

fn shortest_words(e: &CorrExpr) -> Vec<Word> {
    let Some(min) = e.min_len() else { return Vec::new() };
    e.words().into_iter().filter(|w| w.len() == min).collect()
}

fn policies(e: &CorrExpr) -> BTreeSet<Policy> {
    let mut out = BTreeSet::new();
    for w in shortest_words(e) {
        for (path, sub) in w.subwords() {
            let len = sub.chain.len();
            for o in 0..=len {
                out.insert(Policy { path: path.clone(), anchor: Anchor::Left(o) });
                out.insert(Policy { path: path.clone(), anchor: Anchor::Right(len - o) });
            }
        }
    }
    out
}

fn mismatch(step: &Step, why: impl fmt::Display) -> String {
    format!("step `{step}` is not licensed: {why}")
}

/// Applies one step, checking that it is licensed in the current state.
pub fn apply_step(e: &CorrExpr, step: &Step, ctx: &RewriteCtx) -> std::result::Result<CorrExpr, String> {
    let g = ctx.ax.g;
    let mut out = CorrExpr::zero();
    match step {
        Step::Unfold { count } => {
            let mut n = 0;
            for (w, c) in e.terms() {
                match w.find_op(BinOp::StarRed) {
                    Some(path) => {
                        n += 1;
                        let parts = w.replace_at(&path, &|sub| unfold_star(sub, g)).expect("path from find_op");
                        for (x, v) in parts {
                            out.insert(c * x, v);
                        }
                    }
                    None => out.insert(c.clone(), w.clone()),
                }
            }
            if n == 0 || n != *count {
                return Err(mismatch(step, format!("{n} word(s) contain STAR_red")));
            }
        }
        Step::Vanish { count } => {
            let mut n = 0;
            for (w, c) in e.terms() {
                if ctx.ax.vanishing_reason(w).is_some() {
                    n += 1;
                } else {
                    out.insert(c.clone(), w.clone());
                }
            }
            if n == 0 || n != *count {
                return Err(mismatch(step, format!("{n} word(s) vanish")));
            }
        }
        Step::Drop { grade, count } => {
            if ctx.grade != Some(*grade) {
                return Err(mismatch(step, "not a graded identity of this grade"));
            }
            let mut n = 0;
            for (w, c) in e.terms() {
                if ctx.drops(w) {
                    n += 1;
                } else {
                    out.insert(c.clone(), w.clone());
                }
            }
            if n == 0 || n != *count {
                return Err(mismatch(step, format!("{n} word(s) below grade")));
            }
        }
        Step::Collapse { residual, path, offset, obj, coeff } => {
            out = e.clone();
            for i in 0..=2 * g {
                let member = residual
                    .insert_pair(path, *offset, resolution_pair(*obj, i, g))
                    .ok_or_else(|| mismatch(step, "resolution pair does not fit"))?;
                match out.take(&member) {
                    Some(c) if c == *coeff => {}
                    _ => return Err(mismatch(step, format!("{member} missing or with another coefficient"))),
                }
            }
            out.insert(coeff.clone(), residual.clone());
        }
        Step::Expand { policy, count } => {
            let shortest: HashSet<Word> = shortest_words(e).into_iter().collect();
            let mut n = 0;
            for (w, c) in e.terms() {
                let offset = if shortest.contains(w) { policy.offset_in(w) } else { None };
                let Some(offset) = offset else {
                    out.insert(c.clone(), w.clone());
                    continue;
                };
                let obj = w.sub(&policy.path).expect("policy path exists").junction_object(offset);
                n += 1;
                for i in 0..=2 * g {
                    let v =
                        w.insert_pair(&policy.path, offset, resolution_pair(obj, i, g)).expect("junction type matches");
                    out.insert(c.clone(), v);
                }
            }
            if n == 0 || n != *count {
                return Err(mismatch(step, format!("{n} word(s) admit the insertion")));
            }
        }
    }
    Ok(out)
}

/// The next normalising step, if any. Collapses are included only when
/// `collapse` is set; the search treats them as moves instead.
fn next_step(e: &CorrExpr, ctx: &RewriteCtx, collapse: bool) -> Option<Step> {
    let unfold = e.terms().filter(|(w, _)| w.find_op(BinOp::StarRed).is_some()).count();
    if unfold > 0 {
        return Some(Step::Unfold { count: unfold });
    }
    let vanish = e.terms().filter(|(w, _)| ctx.ax.vanishing_reason(w).is_some()).count();
    if vanish > 0 {
        return Some(Step::Vanish { count: vanish });
    }
    if let Some(grade) = ctx.grade {
        let drop = e.terms().filter(|(w, _)| ctx.drops(w)).count();
        if drop > 0 {
            return Some(Step::Drop { grade, count: drop });
        }
    }
    if collapse {
        complete_groups(e, ctx.ax.g).next()
    } else {
        None
    }
}

/// Normal form with the steps that produced it.
pub fn normalize(e: &CorrExpr, ctx: &RewriteCtx) -> (CorrExpr, Vec<Step>) {
    reduce(e, ctx, true)
}

fn reduce(e: &CorrExpr, ctx: &RewriteCtx, collapse: bool) -> (CorrExpr, Vec<Step>) {
    let mut cur = e.clone();
    let mut steps = Vec::new();
    while let Some(step) = next_step(&cur, ctx, collapse) {
        cur = apply_step(&cur, &step, ctx).expect("normalising steps are licensed by construction");
        steps.push(step);
    }
    (cur, steps)
}

/// Unfolds definitions, applies the axioms and collapses complete
/// resolution sums.
pub fn expand(e: &CorrExpr, ax: AxiomSet) -> Result<CorrExpr> {
    e.signature(ax.g)?;
    Ok(normalize(e, &RewriteCtx::exact(ax)).0)
}

/// Semi-decides `lhs = rhs` with at most `depth` expansions.
pub fn verify_identity(lhs: &CorrExpr, rhs: &CorrExpr, ax: AxiomSet, depth: usize) -> Result<Verdict> {
    verify(&Identity::exact(lhs.clone(), rhs.clone()), ax, depth)
}

/// Semi-decides an identity (exact or graded) with at most `depth` moves.
///
/// Definitions, axioms and graded drops are applied eagerly; the moves are
/// expansions (inserting a resolution of the identity) and collapses
/// (removing a complete one), searched breadth-first.
pub fn verify(id: &Identity, ax: AxiomSet, depth: usize) -> Result<Verdict> {
    let ctx = id.ctx(ax);
    let start = id.difference(ax.g)?;
    let (nf, steps) = reduce(&start, &ctx, false);
    if nf.is_zero() {
        return Ok(Verdict::Verified(Trace { steps }));
    }
    let mut seen: HashSet<CorrExpr> = HashSet::new();
    seen.insert(nf.clone());
    let mut residual_terms = nf.len();
    let mut queue = VecDeque::from([(nf, steps, 0usize)]);
    let mut explored = 1;
    while let Some((e, steps, d)) = queue.pop_front() {
        if d >= depth {
            continue;
        }
        let shortest = shortest_words(&e);
        let moves = complete_groups(&e, ax.g).chain(policies(&e).into_iter().map(|policy| {
            let count = shortest.iter().filter(|w| policy.offset_in(w).is_some()).count();
            Step::Expand { policy, count }
        }));
        for step in moves {
            if explored >= MAX_STATES {
                return Ok(Verdict::NotWithinDepth { explored, residual_terms });
            }
            let Ok(moved) = apply_step(&e, &step, &ctx) else { continue };
            if moved.len() > MAX_TERMS {
                continue;
            }
            let (next, more) = reduce(&moved, &ctx, false);
            explored += 1;
            let mut trail = steps.clone();
            trail.push(step);
            trail.extend(more);
            if next.is_zero() {
                return Ok(Verdict::Verified(Trace { steps: trail }));
            }
            residual_terms = residual_terms.min(next.len());
            if seen.insert(next.clone()) {
                queue.push_back((next, trail, d + 1));
            }
        }
    }
    Ok(Verdict::NotWithinDepth { explored, residual_terms })
}

/// Re-applies `trace` to `lhs − rhs`, checking every step, and requires the
/// result to be zero.
pub fn replay(id: &Identity, ax: AxiomSet, trace: &Trace) -> std::result::Result<(), String> {
    let ctx = id.ctx(ax);
    let mut cur = id.difference(ax.g).map_err(|e| e.to_string())?;
    for step in &trace.steps {
        cur = apply_step(&cur, step, &ctx)?;
    }
    if cur.is_zero() {
        Ok(())
    } else {
        Err(format!("trace ends at {cur}, not 0"))
    }
}

#[cfg(test)]
mod tests {
    use super::super::word::Alg;
    use super::*;

    fn ax(a: Axioms, g: u32) -> AxiomSet {
        AxiomSet::new(a, g)
    }

    #[test]
    fn expand_examples() {
        let a = Alg::new(2);
        let gf = a.gg(1).compose(&a.f(2)).unwrap();
        assert!(expand(&gf, ax(Axioms::Full, 2)).unwrap().is_zero());
        assert_eq!(expand(&gf, ax(Axioms::None, 2)).unwrap(), gf);
        assert_eq!(expand(&a.resolution(Obj::M), ax(Axioms::Half, 2)).unwrap(), a.id(Obj::M));
        assert_eq!(expand(&a.resolution(Obj::V), ax(Axioms::None, 2)).unwrap(), a.id(Obj::V));
    }

    #[test]
    fn expand_is_idempotent() {
        let a = Alg::new(2);
        let e = a.chain(&[a.p_le(3), a.f(1), a.pv_le(2)]).unwrap();
        for x in [Axioms::None, Axioms::Half, Axioms::Full] {
            let once = expand(&e, ax(x, 2)).unwrap();
            assert_eq!(expand(&once, ax(x, 2)).unwrap(), once);
        }
    }

    #[test]
    fn orthogonality_needs_full() {
        let a = Alg::new(2);
        let lhs = a.p(1).compose(&a.p(3)).unwrap();
        let v = verify_identity(&lhs, &CorrExpr::zero(), ax(Axioms::Full, 2), 3).unwrap();
        assert!(v.is_verified());
        let v = verify_identity(&lhs, &CorrExpr::zero(), ax(Axioms::Half, 2), 3).unwrap();
        assert!(!v.is_verified());
    }

    #[test]
    fn semiorthogonal_idempotents_replay() {
        let a = Alg::new(3);
        let id = Identity::exact(a.p_le(4).compose(&a.p_le(2)).unwrap(), a.p_le(2));
        let Verdict::Verified(trace) = verify(&id, ax(Axioms::Half, 3), 3).unwrap() else { panic!("not verified") };
        assert_eq!(trace.expansions(), 1);
        replay(&id, ax(Axioms::Half, 3), &trace).unwrap();
        // A tampered trace is rejected.
        let mut bad = trace.clone();
        bad.steps.remove(0);
        assert!(replay(&id, ax(Axioms::Half, 3), &bad).is_err());
    }

    #[test]
    fn type_mismatch_is_reported() {
        let a = Alg::new(1);
        let err = verify_identity(&a.p(0), &a.pv(0), ax(Axioms::Full, 1), 1).unwrap_err();
        assert!(matches!(err, Error::TypeMismatch(_)));
    }

    #[test]
    fn graded_drop_needs_axioms() {
        let a = Alg::new(1);
        let lhs = a.chain(&[a.f(1), a.gg(1), a.p_le(1)]).unwrap();
        let id = Identity::graded(lhs, a.p_le(1), 1);
        assert!(verify(&id, ax(Axioms::Half, 1), 3).unwrap().is_verified());
        assert!(!verify(&id, ax(Axioms::None, 1), 3).unwrap().is_verified());
    }
}
