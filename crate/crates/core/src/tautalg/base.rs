//! Classes on the moduli space of curves `M̄_{g,1}` (and `M̄_g`).

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{qi, render, Q};

/// Generators of the base algebra. Products are formal: no relations between
/// boundary classes are applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseAtom {
    /// `ψ₁` on `M̄_{g,1}`.
    Psi1,
    /// `κ_a` on `M̄_{g,1}`.
    Kappa(u32),
    /// `p^*κ_a`, pulled back along the forgetful map `p: M̄_{g,1} → M̄_g`.
    PullbackKappa(u32),
    /// The two-edge vine class `[Γ_{g₁}]`.
    Gamma(u32),
    /// The separating one-edge vine class with leg-free vertex of genus `g₁`.
    OneEdge(u32),
    /// The opaque class `[DR¹_g(b; a₁)]_{b²}`.
    Dr1b2,
    /// The opaque class `[DR²_g(b; a₁)]_{b⁴}`.
    Dr2b4,
}

impl BaseAtom {
    /// Complex codimension.
    pub fn codim(self) -> u32 {
        match self {
            BaseAtom::Psi1 | BaseAtom::OneEdge(_) | BaseAtom::Dr1b2 => 1,
            BaseAtom::Kappa(a) | BaseAtom::PullbackKappa(a) => a,
            BaseAtom::Gamma(_) | BaseAtom::Dr2b4 => 2,
        }
    }

    fn name(self) -> String {
        match self {
            BaseAtom::Psi1 => "psi1".into(),
            BaseAtom::Kappa(a) => format!("kappa{a}"),
            BaseAtom::PullbackKappa(a) => format!("pkappa{a}"),
            BaseAtom::Gamma(g1) => format!("Gamma_{g1}"),
            BaseAtom::OneEdge(g1) => format!("OneEdge_{g1}"),
            BaseAtom::Dr1b2 => "DR1b2".into(),
            BaseAtom::Dr2b4 => "DR2b4".into(),
        }
    }
}

/// Sorted multiset of atoms; the empty monomial is the unit class `1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BaseMonomial(Vec<BaseAtom>);

impl BaseMonomial {
    pub fn unit() -> Self {
        BaseMonomial(Vec::new())
    }

    pub fn atom(a: BaseAtom) -> Self {
        BaseMonomial(vec![a])
    }

    pub fn from_atoms(mut atoms: Vec<BaseAtom>) -> Self {
        atoms.sort_unstable();
        BaseMonomial(atoms)
    }

    pub fn atoms(&self) -> &[BaseAtom] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn codim(&self) -> u32 {
        self.0.iter().map(|a| a.codim()).sum()
    }

    pub fn mul(&self, other: &BaseMonomial) -> BaseMonomial {
        let mut atoms = self.0.clone();
        atoms.extend_from_slice(&other.0);
        BaseMonomial::from_atoms(atoms)
    }
}

impl fmt::Display for BaseMonomial {
    /// `1`, `psi1`, `psi1^2*kappa1`, `Gamma_2`, …
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let mut j = i;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            let name = self.0[i].name();
            parts.push(if j - i == 1 { name } else { format!("{name}^{}", j - i) });
            i = j;
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// Finite ℚ-linear combination of [`BaseMonomial`]s.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BaseExpr {
    terms: BTreeMap<BaseMonomial, Q>,
}

impl BaseExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c · 1`.
    pub fn scalar(c: Q) -> Self {
        Self::term(c, BaseMonomial::unit())
    }

    pub fn term(c: Q, m: BaseMonomial) -> Self {
        let mut e = Self::zero();
        e.add_term(c, m);
        e
    }

    pub fn atom(c: Q, a: BaseAtom) -> Self {
        Self::term(c, BaseMonomial::atom(a))
    }

    pub fn add_term(&mut self, c: Q, m: BaseMonomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BaseMonomial, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `m` (0 if absent).
    pub fn coeff(&self, m: &BaseMonomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, c: &Q) -> BaseExpr {
        let mut out = BaseExpr::zero();
        for (m, x) in &self.terms {
            out.add_term(x * c, m.clone());
        }
        out
    }

    /// `Σ coeff·[Γ_{g₁}]` from `(g₁, coeff)` pairs.
    pub fn gamma_sum(coeffs: impl IntoIterator<Item = (u32, Q)>) -> BaseExpr {
        let mut out = BaseExpr::zero();
        for (g1, c) in coeffs {
            out.add_term(c, BaseMonomial::atom(BaseAtom::Gamma(g1)));
        }
        out
    }

    /// Returns the scalar if the expression is a multiple of `1`.
    pub fn as_scalar(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&BaseMonomial::unit()).cloned(),
            _ => None,
        }
    }

    /// `{terms:[{coeff:"p/q", class:"..."}]}` in canonical term order.
    pub fn to_json(&self) -> Value {
        json!({
            "terms": self
                .terms
                .iter()
                .map(|(m, c)| json!({"coeff": render(c), "class": m.to_string()}))
                .collect::<Vec<_>>()
        })
    }
}

impl fmt::Display for BaseExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({})*{}", render(c), m)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &BaseExpr {
    type Output = BaseExpr;
    fn add(self, rhs: &BaseExpr) -> BaseExpr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(c.clone(), m.clone());
        }
        out
    }
}

impl Sub for &BaseExpr {
    type Output = BaseExpr;
    fn sub(self, rhs: &BaseExpr) -> BaseExpr {
        self + &(-rhs)
    }
}

impl Neg for &BaseExpr {
    type Output = BaseExpr;
    fn neg(self) -> BaseExpr {
        self.scale(&-Q::one())
    }
}

impl Mul for &BaseExpr {
    type Output = BaseExpr;
    fn mul(self, rhs: &BaseExpr) -> BaseExpr {
        let mut out = BaseExpr::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(c1 * c2, m1.mul(m2));
            }
        }
        out
    }
}

/// Pushforward along the forgetful map `p: M̄_{g,1} → M̄_g` of a codimension-1
/// class: `p_*ψ₁ = p_*κ₁ = 2g − 2` and `p_*p^*κ₁ = 0`.
pub fn forgetful_pushforward(b: &BaseExpr, g: u32) -> Result<BaseExpr> {
    let mut out = BaseExpr::zero();
    for (m, c) in b.terms() {
        let image = match m.atoms() {
            [BaseAtom::Psi1] | [BaseAtom::Kappa(1)] => qi(2 * g as i64 - 2),
            [BaseAtom::PullbackKappa(1)] => Q::zero(),
            _ => {
                return Err(Error::Unsupported(format!(
                    "forgetful pushforward of {m} (only codimension-1 ψ/κ classes)"
                )))
            }
        };
        out.add_term(c * image, BaseMonomial::unit());
    }
    Ok(out)
}

/// Interior part `½(−κ₁ + (2g−1)²ψ₁)` of `[DR¹_g(b; a₁)]_{b²}`.
pub fn dr1_b2_interior(g: u32) -> BaseExpr {
    let s = qi(2 * g as i64 - 1);
    let half = Q::new(1.into(), 2.into());
    let mut out = BaseExpr::atom(-half.clone(), BaseAtom::Kappa(1));
    out.add_term(half * &s * &s, BaseMonomial::atom(BaseAtom::Psi1));
    out
}

/// `[DR²]_{b⁴} − ½([DR¹]_{b²})² = Σ_{g₁=1}^{g−1} (2g₁)⁴/48 · [Γ_{g₁}]`.
pub fn dr_combo(g: u32) -> BaseExpr {
    BaseExpr::gamma_sum((1..g).map(|g1| {
        let t = qi(2 * g1 as i64);
        (g1, &t * &t * &t * &t / qi(48))
    }))
}

/// `κ̃₁ = ½(−κ₁ + (2g−1)²ψ₁ − Σ_{g₁=1}^{g−1} (2g₁−1)²·[one-edge vine g₁])`.
pub fn kappa_tilde_1(g: u32) -> BaseExpr {
    let half = Q::new(1.into(), 2.into());
    let mut out = dr1_b2_interior(g);
    for g1 in 1..g {
        let s = qi(2 * g1 as i64 - 1);
        out.add_term(-&half * &s * &s, BaseMonomial::atom(BaseAtom::OneEdge(g1)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn rendering() {
        let m = BaseMonomial::from_atoms(vec![BaseAtom::Kappa(1), BaseAtom::Psi1, BaseAtom::Psi1]);
        assert_eq!(m.to_string(), "psi1^2*kappa1");
        assert_eq!(BaseMonomial::unit().to_string(), "1");
        assert_eq!(BaseMonomial::atom(BaseAtom::Gamma(2)).to_string(), "Gamma_2");
    }

    #[test]
    fn linear_merging() {
        let a = BaseExpr::atom(q(1, 2), BaseAtom::Psi1);
        let b = BaseExpr::atom(q(-1, 2), BaseAtom::Psi1);
        assert!((&a + &b).is_zero());
        assert_eq!((&a - &b).coeff(&BaseMonomial::atom(BaseAtom::Psi1)), qi(1));
    }

    #[test]
    fn interior_and_forgetful() {
        let i2 = dr1_b2_interior(2);
        assert_eq!(i2.coeff(&BaseMonomial::atom(BaseAtom::Kappa(1))), q(-1, 2));
        assert_eq!(i2.coeff(&BaseMonomial::atom(BaseAtom::Psi1)), q(9, 2));
        assert_eq!(dr1_b2_interior(3).coeff(&BaseMonomial::atom(BaseAtom::Psi1)), q(25, 2));
        let twice = dr1_b2_interior(5).scale(&qi(2));
        assert_eq!(forgetful_pushforward(&twice, 5).unwrap().as_scalar(), Some(qi(640)));
        assert_eq!(forgetful_pushforward(&BaseExpr::atom(qi(1), BaseAtom::Psi1), 4).unwrap().as_scalar(), Some(qi(6)));
        let pulled = BaseExpr::atom(qi(3), BaseAtom::PullbackKappa(1));
        assert!(forgetful_pushforward(&pulled, 4).unwrap().is_zero());
        assert!(forgetful_pushforward(&BaseExpr::atom(qi(1), BaseAtom::Gamma(1)), 4).is_err());
    }

    #[test]
    fn combo_coefficients() {
        assert_eq!(dr_combo(2), BaseExpr::gamma_sum([(1, q(1, 3))]));
        assert_eq!(dr_combo(3), BaseExpr::gamma_sum([(1, q(1, 3)), (2, q(16, 3))]));
        assert_eq!(dr_combo(4), BaseExpr::gamma_sum([(1, q(1, 3)), (2, q(16, 3)), (3, qi(27))]));
    }
}
