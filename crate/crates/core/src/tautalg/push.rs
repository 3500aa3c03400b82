//! The pushforward `π_*` from the universal Jacobian to `M̄_{g,1}`, as an
//! explicit rule catalog.
//!
//! Every term must match one of the rules below; anything else is a
//! [`Error::NoRule`] rather than a guess.
//!
//! | rule | term | image |
//! |------|------|-------|
//! | (a) | perversity ≤ 2g − 1 on the open stratum | 0 |
//! | (b) | `Θ^g` | `g!` |
//! | (c) | `Θ^g κ` | 0 |
//! | (d) | `Θ^{g−c} κ^{2c}` (perversity exactly 2g) | `(−1)^c (g−c)! (2c)! [DR^c]_{b^{2c}}` |
//! | (e) | `Θ^{g−1} κ³` | `3!(g−1)! Σ a_{g₁}(φ)[Γ_{g₁}]` |
//! | (f) | `Θ^{g−1} κ · [Γ^±_{g₁}]` | `±(g−1)!·2g₁·[Γ_{g₁}]` |
//! | (g) | `Θ^{g−2} κ² · [Γ^±_{g₁}]`, `Θ^{g−2} κ ψ_h · [Γ^±_{g₁}]` | 0 |
//! | (h) | `x · π^*β` | `π_*(x)·β` |
//!
//! Rule (d) with `c = 1` is `−2(g−1)!·[DR¹]_{b²}`; `c = 0` is rule (b).
//! Global `ψ₁` and the one-edge vine stratum (whose only stable multidegree
//! is trivial) are pulled back from the base and pass through by (h).

use num_traits::One;

use super::base::{BaseAtom, BaseExpr, BaseMonomial};
use super::expr::{DecoratedTerm, DivisorKind, Monomial, PicDivisor, Stratum, TautExpr};
use super::log::{JustificationEntry, JustificationLog};
use crate::error::{Error, Result};
use crate::rational::{factorial, qi, Q};
use crate::stability::{delta_g1, StabilityFamily};

/// The genus and stability condition a pushforward is taken for.
#[derive(Debug, Clone)]
pub struct PushContext {
    pub g: u32,
    pub family: StabilityFamily,
}

impl PushContext {
    pub fn new(family: StabilityFamily) -> Self {
        PushContext { g: family.g, family }
    }
}

/// `a_{g₁}(φ) = −(4(2g₁)³/48)(δ_{g₁}(z) − ½)`.
pub fn a_coeff(g: u32, g1: u32, fam: &StabilityFamily) -> Result<Q> {
    if fam.g != g {
        return Err(Error::InvalidInput(format!("family genus {} != {g}", fam.g)));
    }
    let delta = delta_g1(fam, g1)?;
    let t = qi(2 * g1 as i64);
    Ok(-(qi(4) * &t * &t * &t / qi(48)) * (qi(delta) - Q::new(1.into(), 2.into())))
}

/// `Σ_{g₁} a_{g₁}(φ)·[Γ_{g₁}]`, the closed form of `π_*(Θ^{g−1}κ³/((g−1)!3!))`.
pub fn a_coeff_sum(fam: &StabilityFamily) -> Result<BaseExpr> {
    let mut pairs = Vec::new();
    for g1 in 1..fam.g {
        pairs.push((g1, a_coeff(fam.g, g1, fam)?));
    }
    Ok(BaseExpr::gamma_sum(pairs))
}

/// `π_*` of a ℚ-linear combination of decorated terms.
pub fn pushforward(expr: &TautExpr, ctx: &PushContext) -> Result<BaseExpr> {
    pushforward_traced(expr, ctx).map(|(b, _)| b)
}

/// [`pushforward`] together with the log of vanishing rules applied.
pub fn pushforward_traced(expr: &TautExpr, ctx: &PushContext) -> Result<(BaseExpr, JustificationLog)> {
    let mut out = BaseExpr::zero();
    let mut log = JustificationLog::default();
    for term in expr.terms() {
        let image = push_term(&term, ctx, &mut log)?;
        out = &out + &image;
    }
    Ok((out, log))
}

/// `π_*` of a single term.
pub fn push_term(term: &DecoratedTerm, ctx: &PushContext, log: &mut JustificationLog) -> Result<BaseExpr> {
    let g = ctx.g;
    // (h) plus the base-pulled-back divisors: split off the base factor.
    let mut base = term.base_factor.clone();
    let mut monomial = Monomial::one();
    for (&d, &e) in term.monomial.factors() {
        if d == PicDivisor::psi(1) {
            let psis = vec![BaseAtom::Psi1; e as usize];
            base = base.mul(&BaseMonomial::from_atoms(psis));
        } else {
            monomial = monomial.times(d, e);
        }
    }
    let stratum = match term.stratum {
        Stratum::OneEdge(g1) => {
            base = base.mul(&BaseMonomial::atom(BaseAtom::OneEdge(g1)));
            Stratum::Open
        }
        s => s,
    };
    let shown = DecoratedTerm {
        coefficient: term.coefficient.clone(),
        stratum: term.stratum,
        monomial: term.monomial.clone(),
        base_factor: term.base_factor.clone(),
    };
    let no_rule = || Error::NoRule(shown.to_string());
    let core = match stratum {
        Stratum::Open => push_open(&monomial, ctx, log, &shown).map_err(|e| match e {
            Error::NoRule(_) => no_rule(),
            other => other,
        })?,
        Stratum::VinePlus(g1) | Stratum::VineMinus(g1) => {
            let sign = if matches!(stratum, Stratum::VinePlus(_)) { Q::one() } else { -Q::one() };
            push_vine(&monomial, g, g1, sign, log, &shown).ok_or_else(no_rule)?
        }
        Stratum::SubdividedVine(_) | Stratum::OneEdge(_) => return Err(no_rule()),
    };
    Ok(&core * &BaseExpr::term(term.coefficient.clone(), base))
}

fn push_open(m: &Monomial, ctx: &PushContext, log: &mut JustificationLog, shown: &DecoratedTerm) -> Result<BaseExpr> {
    let g = ctx.g;
    let p = m.perversity();
    if m.factors().any(|(d, _)| d.vertex.is_some()) {
        return Err(Error::NoRule(String::new()));
    }
    // (a)
    if p < 2 * g {
        log.push(JustificationEntry::PerversityVanish { term: shown.to_string(), perversity: p, bound: 2 * g - 1 });
        return Ok(BaseExpr::zero());
    }
    if !m.others().is_empty() {
        return Err(Error::NoRule(String::new()));
    }
    let (k, l) = (m.theta(), m.kappa());
    let kf = factorial(k as u64);
    match (k, l) {
        // (c)
        (k, 1) if k == g => Ok(BaseExpr::zero()),
        // (e)
        (k, 3) if k + 1 == g => Ok(a_coeff_sum(&ctx.family)?.scale(&(qi(6) * kf))),
        // (b), (d) and the higher terms of the same closed formula
        (k, l) if 2 * k + l == 2 * g && l % 2 == 0 => {
            let c = l / 2;
            let sign = if c % 2 == 0 { Q::one() } else { -Q::one() };
            let coeff = sign * kf * factorial(l as u64);
            match c {
                0 => Ok(BaseExpr::scalar(coeff)),
                1 => Ok(BaseExpr::atom(coeff, BaseAtom::Dr1b2)),
                2 => Ok(BaseExpr::atom(coeff, BaseAtom::Dr2b4)),
                _ => Err(Error::NoRule(String::new())),
            }
        }
        _ => Err(Error::NoRule(String::new())),
    }
}

fn push_vine(
    m: &Monomial,
    g: u32,
    g1: u32,
    sign: Q,
    log: &mut JustificationLog,
    shown: &DecoratedTerm,
) -> Option<BaseExpr> {
    if g1 == 0 || g1 >= g {
        return None;
    }
    // A class supported over the codimension-2 locus `[Γ_{g₁}]` pushes forward
    // to zero unless its image has codimension at least 2.
    if m.degree() < g {
        log.push(JustificationEntry::DimensionPrune {
            graph: shown.stratum.to_string(),
            stratum_codim: 2,
            target_codim: (m.degree() + 2) as i64 - g as i64,
        });
        return Some(BaseExpr::zero());
    }
    let others = m.others();
    let edge_psi = |o: &[(PicDivisor, u32)]| {
        o.len() == 1 && o[0].1 == 1 && o[0].0.vertex.is_some() && matches!(o[0].0.kind, DivisorKind::PsiMark(_))
    };
    let (k, l) = (m.theta(), m.kappa());
    if k + 1 == g && l == 1 && others.is_empty() {
        // (f)
        let c = sign * factorial((g - 1) as u64) * qi(2 * g1 as i64);
        return Some(BaseExpr::atom(c, BaseAtom::Gamma(g1)));
    }
    if g >= 2 && k + 2 == g && ((l == 2 && others.is_empty()) || (l == 1 && edge_psi(&others))) {
        // (g)
        return Some(BaseExpr::zero());
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn ctx(g: u32, z: i64) -> PushContext {
        PushContext::new(StabilityFamily::phi(g, z))
    }

    fn open(c: Q, k: u32, l: u32) -> TautExpr {
        TautExpr::monomial(c, Monomial::theta_kappa(k, l))
    }

    #[test]
    fn a_coefficients() {
        assert_eq!(a_coeff(4, 1, &StabilityFamily::phi(4, 0)).unwrap(), q(1, 3));
        assert_eq!(a_coeff(4, 2, &StabilityFamily::phi(4, 2)).unwrap(), q(-8, 3));
        for g1 in 1..7 {
            let t = qi(2 * g1 as i64);
            assert_eq!(a_coeff(7, g1, &StabilityFamily::phi(7, 0)).unwrap(), &t * &t * &t / qi(24));
        }
        assert!(matches!(a_coeff(4, 4, &StabilityFamily::phi(4, 0)), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn catalog_values() {
        let c = ctx(4, 0);
        assert_eq!(pushforward(&open(qi(1), 4, 0), &c).unwrap().as_scalar(), Some(qi(24)));
        assert!(pushforward(&open(qi(1), 4, 1), &c).unwrap().is_zero());
        assert!(pushforward(&open(qi(1), 3, 1), &c).unwrap().is_zero());
        let d = pushforward(&open(qi(1), 3, 2), &c).unwrap();
        assert_eq!(d, BaseExpr::atom(qi(-12), BaseAtom::Dr1b2));
        let e = pushforward(&open(q(1, 36), 3, 3), &c).unwrap();
        assert_eq!(e, BaseExpr::gamma_sum([(1, q(1, 3)), (2, q(8, 3)), (3, qi(9))]));
    }

    #[test]
    fn projection_formula_through_psi() {
        let c = ctx(3, 1);
        let m = Monomial::theta_kappa(3, 1).times(PicDivisor::psi(1), 1);
        assert!(pushforward(&TautExpr::monomial(qi(1), m), &c).unwrap().is_zero());
        let m = Monomial::theta_kappa(3, 0).times(PicDivisor::psi(1), 2);
        let image = pushforward(&TautExpr::monomial(qi(1), m), &c).unwrap();
        assert_eq!(image, BaseExpr::term(qi(6), BaseMonomial::from_atoms(vec![BaseAtom::Psi1; 2])));
    }

    #[test]
    fn vine_rules() {
        let c = ctx(4, 2);
        let mut e = TautExpr::zero();
        e.insert(q(1, 6), Stratum::VinePlus(2), Monomial::theta_kappa(3, 1), BaseMonomial::unit());
        assert_eq!(pushforward(&e, &c).unwrap(), BaseExpr::atom(qi(4), BaseAtom::Gamma(2)));
        e.insert(q(1, 6), Stratum::VineMinus(2), Monomial::theta_kappa(3, 1), BaseMonomial::unit());
        assert!(pushforward(&e, &c).unwrap().is_zero());
        let mut z = TautExpr::zero();
        z.insert(qi(5), Stratum::VineMinus(1), Monomial::theta_kappa(2, 2), BaseMonomial::unit());
        assert!(pushforward(&z, &c).unwrap().is_zero());
    }

    #[test]
    fn outside_the_catalog() {
        let c = ctx(4, 0);
        assert!(matches!(pushforward(&open(qi(1), 2, 5), &c), Err(Error::NoRule(_))));
        let mut s = TautExpr::zero();
        s.insert(qi(1), Stratum::SubdividedVine(1), Monomial::theta_kappa(3, 1), BaseMonomial::unit());
        assert!(matches!(pushforward(&s, &c), Err(Error::NoRule(_))));
        let xi = Monomial::theta_kappa(4, 0).times(PicDivisor::xi(2), 1);
        assert!(matches!(pushforward(&TautExpr::monomial(qi(1), xi), &c), Err(Error::NoRule(_))));
    }
}
