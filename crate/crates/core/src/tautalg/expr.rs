//! Decorated tautological classes on the universal compactified Jacobian.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use super::base::{BaseExpr, BaseMonomial};
use crate::rational::{render, Q};

/// Divisor classes on the Picard side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DivisorKind {
    /// `Θ = −½ p_*(c₁(L)²)`.
    Theta,
    /// `κ_{0,1} = p_*(c₁(L) ∪ c₁(ω_log))`.
    Kappa01,
    /// `ξ_i = x_i^* c₁(L)`.
    Xi(u32),
    /// `ψ_i`, the cotangent class at marking `i` (at a vertex: at the
    /// corresponding half-edge).
    PsiMark(u32),
}

/// A divisor, either global or attached to a vertex of a stratum's graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PicDivisor {
    pub kind: DivisorKind,
    pub vertex: Option<usize>,
}

impl PicDivisor {
    pub const THETA: PicDivisor = PicDivisor { kind: DivisorKind::Theta, vertex: None };
    pub const KAPPA: PicDivisor = PicDivisor { kind: DivisorKind::Kappa01, vertex: None };

    pub fn xi(i: u32) -> Self {
        PicDivisor { kind: DivisorKind::Xi(i), vertex: None }
    }

    pub fn psi(i: u32) -> Self {
        PicDivisor { kind: DivisorKind::PsiMark(i), vertex: None }
    }

    /// `ψ` at the `i`-th special point of vertex `v`.
    pub fn psi_at(i: u32, v: usize) -> Self {
        PicDivisor { kind: DivisorKind::PsiMark(i), vertex: Some(v) }
    }

    /// `ξ₁` vanishes identically: the universal bundle is trivialised along
    /// the first marking.
    pub fn is_identically_zero(&self) -> bool {
        self.kind == DivisorKind::Xi(1) && self.vertex.is_none()
    }
}

impl fmt::Display for PicDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            DivisorKind::Theta => write!(f, "T")?,
            DivisorKind::Kappa01 => write!(f, "K")?,
            DivisorKind::Xi(i) => write!(f, "Xi{i}")?,
            DivisorKind::PsiMark(i) => write!(f, "Psi{i}")?,
        }
        if let Some(v) = self.vertex {
            write!(f, "@v{v}")?;
        }
        Ok(())
    }
}

/// Monomial in divisors with positive exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<PicDivisor, u32>);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// `Θ^k κ_{0,1}^l`.
    pub fn theta_kappa(k: u32, l: u32) -> Self {
        Monomial::one().times(PicDivisor::THETA, k).times(PicDivisor::KAPPA, l)
    }

    /// Multiplies by `d^e`.
    pub fn times(mut self, d: PicDivisor, e: u32) -> Self {
        if e > 0 {
            *self.0.entry(d).or_insert(0) += e;
        }
        self
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (&d, &e) in &other.0 {
            out = out.times(d, e);
        }
        out
    }

    pub fn exponent(&self, d: &PicDivisor) -> u32 {
        self.0.get(d).copied().unwrap_or(0)
    }

    pub fn theta(&self) -> u32 {
        self.exponent(&PicDivisor::THETA)
    }

    pub fn kappa(&self) -> u32 {
        self.exponent(&PicDivisor::KAPPA)
    }

    /// Total degree (number of divisor factors).
    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&PicDivisor, &u32)> {
        self.0.iter()
    }

    /// True if some factor vanishes identically.
    pub fn is_zero(&self) -> bool {
        self.0.keys().any(|d| d.is_identically_zero())
    }

    /// `2·exp(Θ) + exp(κ_{0,1}) + Σ exp(ξ_i)`.
    pub fn perversity(&self) -> u32 {
        self.0
            .iter()
            .map(|(d, &e)| match d.kind {
                DivisorKind::Theta => 2 * e,
                DivisorKind::Kappa01 | DivisorKind::Xi(_) => e,
                DivisorKind::PsiMark(_) => 0,
            })
            .sum()
    }

    /// The factors other than global `Θ` and `κ_{0,1}`.
    pub fn others(&self) -> Vec<(PicDivisor, u32)> {
        self.0
            .iter()
            .filter(|(d, _)| **d != PicDivisor::THETA && **d != PicDivisor::KAPPA)
            .map(|(&d, &e)| (d, e))
            .collect()
    }
}

impl fmt::Display for Monomial {
    /// `T^a K^b Xi2 …`, or `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.0.iter().map(|(d, &e)| if e == 1 { d.to_string() } else { format!("{d}^{e}") }).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Support of a decorated term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stratum {
    /// The whole Jacobian.
    Open,
    /// `[Γ⁺_{g₁}]`: the two-edge vine with degree `δ_{g₁}(z)` at `v`.
    VinePlus(u32),
    /// `[Γ⁻_{g₁}]`: the two-edge vine with degree `δ_{g₁}(z) + 1` at `v`.
    VineMinus(u32),
    /// The subdivided two-edge vine `Γ'_{g₁}` with its unique stable multidegree.
    SubdividedVine(u32),
    /// The one-edge vine with its unique (trivial) stable multidegree.
    OneEdge(u32),
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stratum::Open => write!(f, "Open"),
            Stratum::VinePlus(g1) => write!(f, "Gamma+_{g1}"),
            Stratum::VineMinus(g1) => write!(f, "Gamma-_{g1}"),
            Stratum::SubdividedVine(g1) => write!(f, "Gamma'_{g1}"),
            Stratum::OneEdge(g1) => write!(f, "OneEdge_{g1}"),
        }
    }
}

/// One term `coefficient · [stratum, monomial] · π^*(base_factor)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedTerm {
    pub coefficient: Q,
    pub stratum: Stratum,
    pub monomial: Monomial,
    pub base_factor: BaseMonomial,
}

impl DecoratedTerm {
    pub fn perversity(&self) -> u32 {
        self.monomial.perversity()
    }
}

impl fmt::Display for DecoratedTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*{}[{}]", render(&self.coefficient), self.monomial, self.stratum)?;
        if !self.base_factor.is_unit() {
            write!(f, "*{}", self.base_factor)?;
        }
        Ok(())
    }
}

/// Perversity `2k + l + Σm` of a term.
pub fn perversity(term: &DecoratedTerm) -> u32 {
    term.perversity()
}

type TermKey = (Stratum, Monomial, BaseMonomial);

/// Finite ℚ-linear combination of decorated terms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TautExpr {
    terms: BTreeMap<TermKey, Q>,
}

impl TautExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c · monomial` on the open stratum.
    pub fn monomial(c: Q, m: Monomial) -> Self {
        let mut e = Self::zero();
        e.insert(c, Stratum::Open, m, BaseMonomial::unit());
        e
    }

    pub fn insert(&mut self, c: Q, stratum: Stratum, m: Monomial, base: BaseMonomial) {
        if c.is_zero() || m.is_zero() {
            return;
        }
        match self.terms.entry((stratum, m, base)) {
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

    pub fn add_term(&mut self, t: DecoratedTerm) {
        self.insert(t.coefficient, t.stratum, t.monomial, t.base_factor);
    }

    pub fn terms(&self) -> impl Iterator<Item = DecoratedTerm> + '_ {
        self.terms.iter().map(|((s, m, b), c)| DecoratedTerm {
            coefficient: c.clone(),
            stratum: *s,
            monomial: m.clone(),
            base_factor: b.clone(),
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Q) -> TautExpr {
        let mut out = TautExpr::zero();
        for t in self.terms() {
            out.insert(t.coefficient * c, t.stratum, t.monomial, t.base_factor);
        }
        out
    }

    /// Multiplies every term by the divisor monomial `m`.
    pub fn times_monomial(&self, m: &Monomial) -> TautExpr {
        let mut out = TautExpr::zero();
        for t in self.terms() {
            out.insert(t.coefficient, t.stratum, t.monomial.mul(m), t.base_factor);
        }
        out
    }

    /// Multiplies every term by the pulled-back base class `β`.
    pub fn times_base(&self, beta: &BaseExpr) -> TautExpr {
        let mut out = TautExpr::zero();
        for t in self.terms() {
            for (bm, bc) in beta.terms() {
                out.insert(&t.coefficient * bc, t.stratum, t.monomial.clone(), t.base_factor.mul(bm));
            }
        }
        out
    }
}

impl fmt::Display for TautExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &TautExpr {
    type Output = TautExpr;
    fn add(self, rhs: &TautExpr) -> TautExpr {
        let mut out = self.clone();
        for t in rhs.terms() {
            out.add_term(t);
        }
        out
    }
}

impl Neg for &TautExpr {
    type Output = TautExpr;
    fn neg(self) -> TautExpr {
        self.scale(&-Q::one())
    }
}

impl Sub for &TautExpr {
    type Output = TautExpr;
    fn sub(self, rhs: &TautExpr) -> TautExpr {
        self + &(-rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    #[test]
    fn perversity_of_theta_kappa_monomials() {
        let g = 5;
        assert_eq!(Monomial::theta_kappa(g, 0).perversity(), 2 * g);
        assert_eq!(Monomial::theta_kappa(g - 1, 1).perversity(), 2 * g - 1);
        assert_eq!(Monomial::theta_kappa(g - 1, 3).perversity(), 2 * g + 1);
        let with_xi = Monomial::theta_kappa(1, 0).times(PicDivisor::xi(2), 2);
        assert_eq!(with_xi.perversity(), 4);
    }

    #[test]
    fn xi_one_vanishes() {
        let m = Monomial::theta_kappa(2, 0).times(PicDivisor::xi(1), 1);
        assert!(m.is_zero());
        assert!(TautExpr::monomial(qi(3), m).is_empty());
    }

    #[test]
    fn rendering() {
        let m = Monomial::theta_kappa(3, 2).times(PicDivisor::psi_at(1, 1), 1);
        assert_eq!(m.to_string(), "T^3 K^2 Psi1@v1");
    }
}
