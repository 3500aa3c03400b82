//! The uniDR relation templates, instantiated for a stability family.
//!
//! Each template is a finite list of explicit terms plus sums over vine
//! graphs and over all multidegrees on them. Instantiation turns the sums
//! finite: graphs with an unstable vertex are dropped, coefficients that are
//! multiples of `g₁` vanish at `g₁ = 0`, strata whose stabilisation has higher
//! codimension than the pushforward class are dropped, and the multidegree
//! sums are restricted to the φ-stable multidegrees. Every dropped term is
//! recorded in the [`JustificationLog`].

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use super::base::{kappa_tilde_1, BaseExpr, BaseMonomial};
use super::expr::{Monomial, PicDivisor, Stratum, TautExpr};
use super::log::{JustificationEntry, JustificationLog};
use super::push::{pushforward, PushContext};
use crate::error::{Error, Result};
use crate::graphs::{make_vine, VINE_V, VINE_W};
use crate::rational::{factorial, q, qi, Q};
use crate::stability::{is_nondegenerate, is_semismall, stable_multidegrees, StabilityFamily};

/// The relation templates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationId {
    /// Weight `2g+1`, degree 1 in `b`, on `Pic_{g,1,0}`.
    Rel2,
    /// Weight `2g`, degree 2 in `b`, on `Pic_{g,1,0}`.
    Rel22,
    /// Degree 1 in `b`, on `Pic_{g,2,d}`.
    Rel3,
    /// Degree 1, on `Pic_{g,3,d}`.
    Rel4,
    /// Degree 0, on `Pic_{g,3,d}`.
    Rel5,
}

impl RelationId {
    pub const ALL: [RelationId; 5] =
        [RelationId::Rel2, RelationId::Rel22, RelationId::Rel3, RelationId::Rel4, RelationId::Rel5];

    pub fn name(self) -> &'static str {
        match self {
            RelationId::Rel2 => "REL2",
            RelationId::Rel22 => "REL22",
            RelationId::Rel3 => "REL3",
            RelationId::Rel4 => "REL4",
            RelationId::Rel5 => "REL5",
        }
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RelationId::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnsupportedRelation(s.to_string()))
    }
}

/// Where and how a template is instantiated.
#[derive(Debug, Clone)]
pub struct RelationContext {
    pub family: StabilityFamily,
    /// Every term is multiplied by this monomial (e.g. `κ` before pushing forward).
    pub times: Monomial,
    /// The degree `d` of the 2- and 3-pointed Picard stacks (REL3–REL5).
    pub degree: i64,
}

impl RelationContext {
    pub fn new(family: StabilityFamily) -> Self {
        RelationContext { family, times: Monomial::one(), degree: 0 }
    }

    pub fn with_times(mut self, m: Monomial) -> Self {
        self.times = m;
        self
    }

    pub fn with_degree(mut self, d: i64) -> Self {
        self.degree = d;
        self
    }

    fn g(&self) -> u32 {
        self.family.g
    }

    /// Codimension of the pushforward of any term of the (multiplied) relation.
    fn target_codim(&self) -> i64 {
        (self.g() + 1 + self.times.degree()) as i64 - self.g() as i64
    }
}

/// A relation `lhs = rhs` with its pruning log.
#[derive(Debug, Clone)]
pub struct InstantiatedRelation {
    pub id: RelationId,
    pub lhs: TautExpr,
    pub rhs: TautExpr,
    pub log: JustificationLog,
}

impl InstantiatedRelation {
    /// Multiplies both sides by `c`.
    pub fn scale(&self, c: &Q) -> InstantiatedRelation {
        InstantiatedRelation { id: self.id, lhs: self.lhs.scale(c), rhs: self.rhs.scale(c), log: self.log.clone() }
    }
}

/// Instantiates a relation template for `ctx`.
pub fn instantiate_relation(rel: RelationId, ctx: &RelationContext) -> Result<InstantiatedRelation> {
    let fam = &ctx.family;
    if !is_nondegenerate(fam) {
        return Err(Error::DegenerateFamily(format!("φ({}) in genus {} has stability walls", fam.z, fam.g)));
    }
    if !is_semismall(fam) {
        return Err(Error::DegenerateFamily(format!("φ({}) in genus {} is not semismall", fam.z, fam.g)));
    }
    let mut b = Builder { ctx, lhs: TautExpr::zero(), rhs: TautExpr::zero(), log: JustificationLog::default() };
    match rel {
        RelationId::Rel2 => b.rel2()?,
        RelationId::Rel22 => b.rel22()?,
        RelationId::Rel3 => b.rel3(),
        RelationId::Rel4 => b.rel4(),
        RelationId::Rel5 => b.rel5(),
    }
    b.log.push(JustificationEntry::ElidedOtherTerms { relation: rel.name().to_string() });
    Ok(InstantiatedRelation { id: rel, lhs: b.lhs, rhs: b.rhs, log: b.log })
}

/// `π_*(Θ^{g−1}κ³/((g−1)!3!))` obtained by multiplying REL22 by `κ/3` and
/// pushing the right-hand side forward with the catalog rules.
pub fn derive_kappa3_pushforward(fam: &StabilityFamily) -> Result<BaseExpr> {
    let ctx = RelationContext::new(fam.clone()).with_times(Monomial::theta_kappa(0, 1));
    let rel = instantiate_relation(RelationId::Rel22, &ctx)?.scale(&q(1, 3));
    let expected_lhs =
        TautExpr::monomial((factorial((fam.g - 1) as u64) * factorial(3)).recip(), Monomial::theta_kappa(fam.g - 1, 3));
    debug_assert_eq!(rel.lhs, expected_lhs);
    pushforward(&rel.rhs, &PushContext::new(fam.clone()))
}

struct Builder<'a> {
    ctx: &'a RelationContext,
    lhs: TautExpr,
    rhs: TautExpr,
    log: JustificationLog,
}

/// Which coefficient factors a vine sum carries.
#[derive(Clone, Copy)]
struct VineSum {
    /// The coefficient is a multiple of `g₁`.
    g1_factor: bool,
}

impl Builder<'_> {
    fn g(&self) -> u32 {
        self.ctx.g()
    }

    fn add_lhs(&mut self, c: Q, m: Monomial) {
        self.lhs.insert(c, Stratum::Open, m.mul(&self.ctx.times), BaseMonomial::unit());
    }

    fn add_rhs(&mut self, c: Q, stratum: Stratum, m: Monomial) {
        self.rhs.insert(c, stratum, m.mul(&self.ctx.times), BaseMonomial::unit());
    }

    fn add_rhs_base(&mut self, c: Q, m: Monomial, beta: &BaseExpr) {
        let e = TautExpr::monomial(c, m.mul(&self.ctx.times)).times_base(beta);
        self.rhs = &self.rhs + &e;
    }

    fn dimension_ok(&mut self, graph: &str, stratum_codim: u32) -> bool {
        let target = self.ctx.target_codim();
        if stratum_codim as i64 > target {
            self.log.push(JustificationEntry::DimensionPrune {
                graph: graph.to_string(),
                stratum_codim,
                target_codim: target,
            });
            return false;
        }
        true
    }

    fn coefficient_zero(&mut self, graph: String, factor: &str) {
        self.log.push(JustificationEntry::CoefficientZero { graph, factor: factor.to_string() });
    }

    fn unstable(&mut self, graph: String, reason: &str) {
        self.log.push(JustificationEntry::StabilityPrune { graph, reason: reason.to_string() });
    }

    /// `Σ_{g₁+g₂=g−1} Σ_{d+d'=0} coeff(d, g₁)·[two-edge vine, d at the genus-g₁ vertex]`,
    /// emitted as `[Γ^+_{g₁}]`/`[Γ^-_{g₁}]` terms times `m`. The decorations
    /// `extra` (vertex-local classes) are multiplied in as separate summands.
    fn two_edge_sum(&mut self, sum: VineSum, decorations: &[Monomial], coeff: impl Fn(i64, u32) -> Q) -> Result<()> {
        let g = self.g();
        for g1 in 0..g {
            let graph = format!("two-edge vine g1={g1}");
            if g1 == 0 {
                if sum.g1_factor {
                    self.coefficient_zero(graph, "g1 = 0");
                } else {
                    self.unstable(graph, "genus-0 vertex with two special points");
                }
                continue;
            }
            let codim = 2;
            if !self.dimension_ok(&graph, codim) {
                continue;
            }
            let vine = make_vine(g, g1, 2)?;
            let degrees = stable_multidegrees(&self.ctx.family, &vine, 0)?;
            self.unstable(graph, "multidegree sum restricted to the two phi-stable degrees");
            for (i, md) in degrees.iter().enumerate() {
                let stratum = if i == 0 { Stratum::VinePlus(g1) } else { Stratum::VineMinus(g1) };
                // `d` is the degree at the genus-g₁ vertex `w`.
                let d = md.at(VINE_W);
                debug_assert_eq!(d, -md.at(VINE_V));
                let c = coeff(d, g1);
                if c.is_zero() {
                    self.coefficient_zero(stratum.to_string(), "d = 0");
                    continue;
                }
                for m in decorations {
                    self.add_rhs(c.clone(), stratum, m.clone());
                }
            }
        }
        Ok(())
    }

    /// `Σ_{g₁+g₂=g} Σ_{d+d'=0} coeff(d, g₁)·[one-edge vine]` times `m`.
    fn one_edge_sum(&mut self, m: &Monomial, coeff: impl Fn(i64, u32) -> Q) -> Result<()> {
        let g = self.g();
        for g1 in 0..=g {
            let graph = format!("one-edge vine g1={g1}");
            if g1 == 0 {
                self.unstable(graph, "genus-0 vertex with one special point");
                continue;
            }
            if g1 == g {
                self.unstable(graph, "genus-0 vertex with two special points");
                continue;
            }
            if !self.dimension_ok(&graph, 1) {
                continue;
            }
            let vine = make_vine(g, g1, 1)?;
            let degrees = stable_multidegrees(&self.ctx.family, &vine, 0)?;
            self.unstable(graph, "multidegree sum restricted to the phi-stable degree");
            for md in degrees {
                let d = md.at(VINE_W);
                let c = coeff(d, g1);
                if c.is_zero() {
                    self.coefficient_zero(Stratum::OneEdge(g1).to_string(), "d = 0");
                    continue;
                }
                self.add_rhs(c, Stratum::OneEdge(g1), m.clone());
            }
        }
        Ok(())
    }

    /// A separating-edge sum on the 2- or 3-pointed Picard stack. The vertex
    /// carrying marking 1 has degree 0, so `coeff` is evaluated at the degree
    /// `e` of vertex `A` accordingly.
    fn marked_one_edge_sum(
        &mut self,
        label: &str,
        a_legs: usize,
        b_legs: usize,
        a_has_marking_one: bool,
        coeff: impl Fn(i64) -> Q,
    ) {
        let g = self.g();
        let d = self.ctx.degree;
        for g1 in 0..=g {
            let g2 = g - g1;
            let graph = format!("{label} g1={g1}");
            if g1 == 0 && a_legs + 1 < 3 {
                self.unstable(graph, "genus-0 vertex A with two special points");
                continue;
            }
            if g2 == 0 && b_legs + 1 < 3 {
                self.unstable(graph, "genus-0 vertex B with two special points");
                continue;
            }
            if !self.dimension_ok(&graph, 1) {
                continue;
            }
            self.unstable(graph.clone(), "degree sum restricted to degree 0 at the vertex carrying marking 1");
            let e = if a_has_marking_one { 0 } else { d };
            let c = coeff(e);
            if c.is_zero() {
                self.coefficient_zero(graph, "vanishing degree factor");
            }
            // Nonzero boundary terms on these stacks never arise with the
            // degree convention above.
        }
    }

    /// `Θ^gκ/g! = −Θ^g/g!·Σ d(2g₁−1)[one-edge] + Θ^{g−1}/(g−1)!·Σ d³g₁/6·[two-edge]`.
    fn rel2(&mut self) -> Result<()> {
        let g = self.g();
        let gf = factorial(g as u64);
        let gm1f = factorial((g - 1) as u64);
        self.add_lhs(gf.recip(), Monomial::theta_kappa(g, 1));
        let theta_g = Monomial::theta_kappa(g, 0);
        self.one_edge_sum(&theta_g, |d, g1| -qi(d) * qi(2 * g1 as i64 - 1) / &gf)?;
        let theta_gm1 = Monomial::theta_kappa(g - 1, 0);
        self.two_edge_sum(VineSum { g1_factor: true }, &[theta_gm1], |d, g1| {
            qi(d * d * d) * qi(g1 as i64) / qi(6) / &gm1f
        })?;
        Ok(())
    }

    /// `Θ^{g−1}κ²/((g−1)!2!) = −Θ^gκ̃₁/g! − Θ^{g−1}/(g−1)!·Σ 6d²(2g₁)²/48·[Γ]
    ///   + Θ^{g−2}κ/(g−2)!·Σ d³(2g₁)/12·[Γ] + Θ^{g−2}/(g−2)!·Σ d⁴(2g₁)²/32·[Γ, ψ_h + ψ_h']`.
    ///
    /// The second term carries the sign that reproduces the per-stratum
    /// contributions `−2(2g₁)³δ²/48` (on `Γ⁺`) and `+2(2g₁)³(δ+1)²/48`
    /// (on `Γ⁻`) after multiplying by `κ/3` and pushing forward.
    fn rel22(&mut self) -> Result<()> {
        let g = self.g();
        let gf = factorial(g as u64);
        let gm1f = factorial((g - 1) as u64);
        let gm2f = factorial((g - 2) as u64);
        self.add_lhs((&gm1f * qi(2)).recip(), Monomial::theta_kappa(g - 1, 2));
        self.add_rhs_base(-gf.recip(), Monomial::theta_kappa(g, 0), &kappa_tilde_1(g));
        let sum = VineSum { g1_factor: true };
        self.two_edge_sum(sum, &[Monomial::theta_kappa(g - 1, 0)], |d, g1| {
            let t = qi(2 * g1 as i64);
            -(qi(6 * d * d) * &t * &t / qi(48)) / &gm1f
        })?;
        self.two_edge_sum(sum, &[Monomial::theta_kappa(g - 2, 1)], |d, g1| {
            qi(d * d * d) * qi(2 * g1 as i64) / qi(12) / &gm2f
        })?;
        let edge_psi = [
            Monomial::theta_kappa(g - 2, 0).times(PicDivisor::psi_at(1, VINE_W), 1),
            Monomial::theta_kappa(g - 2, 0).times(PicDivisor::psi_at(2, VINE_V), 1),
        ];
        self.two_edge_sum(sum, &edge_psi, |d, g1| {
            let t = qi(2 * g1 as i64);
            qi(d * d * d * d) * &t * &t / qi(32) / &gm2f
        })?;
        Ok(())
    }

    /// `Θ^gκ/g! = 2gΘ^gξ₂/g! + 2gdΘ^gψ₂/g! + Θ^g/g!·Σ −2g₁e·[A(g₁;1)–B(g₂;2)]`.
    fn rel3(&mut self) {
        let g = self.g();
        let d = self.ctx.degree;
        let gf = factorial(g as u64);
        self.add_lhs(gf.recip(), Monomial::theta_kappa(g, 1));
        let theta_g = Monomial::theta_kappa(g, 0);
        self.add_rhs(qi(2 * g as i64) / &gf, Stratum::Open, theta_g.clone().times(PicDivisor::xi(2), 1));
        self.add_rhs(qi(2 * g as i64 * d) / &gf, Stratum::Open, theta_g.times(PicDivisor::psi(2), 1));
        self.marked_one_edge_sum("A(legs 1)-B(legs 2)", 1, 1, true, |e| qi(-2 * e));
    }

    /// `Θ^g(ξ₂ − ξ₁)/g! = Θ^g/g!·(Σ e·[A(g₁;1,3)–B(g₂;2)] + Σ (d−e)·[A(g₁;2,3)–B(g₂;1)])`.
    fn rel4(&mut self) {
        let g = self.g();
        let d = self.ctx.degree;
        let gf = factorial(g as u64);
        let theta_g = Monomial::theta_kappa(g, 0);
        self.add_lhs(gf.recip(), theta_g.clone().times(PicDivisor::xi(2), 1));
        self.add_lhs(-gf.recip(), theta_g.times(PicDivisor::xi(1), 1));
        self.marked_one_edge_sum("A(legs 1,3)-B(legs 2)", 2, 1, true, qi);
        self.marked_one_edge_sum("A(legs 2,3)-B(legs 1)", 2, 1, false, move |e| qi(d - e));
    }

    /// `Θ^{g+1}/(g+1)! = −Θ^g/g!·(dξ₂ + d²/2·ψ₂)`.
    fn rel5(&mut self) {
        let g = self.g();
        let d = self.ctx.degree;
        let gf = factorial(g as u64);
        self.add_lhs(factorial((g + 1) as u64).recip(), Monomial::theta_kappa(g + 1, 0));
        let theta_g = Monomial::theta_kappa(g, 0);
        self.add_rhs(-qi(d) / &gf, Stratum::Open, theta_g.clone().times(PicDivisor::xi(2), 1));
        self.add_rhs(-qi(d * d) / qi(2) / &gf, Stratum::Open, theta_g.times(PicDivisor::psi(2), 1));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tautalg::base::BaseAtom;
    use crate::tautalg::push::a_coeff_sum;
    use crate::tautalg::JustificationEntry as J;
    use num_traits::One;

    fn ctx(g: u32, z: i64) -> RelationContext {
        RelationContext::new(StabilityFamily::phi(g, z))
    }

    #[test]
    fn parse_ids() {
        assert_eq!("rel22".parse::<RelationId>().unwrap(), RelationId::Rel22);
        assert!(matches!("REL9".parse::<RelationId>(), Err(Error::UnsupportedRelation(_))));
    }

    #[test]
    fn rel2_pushes_forward_to_zero() {
        for g in 2..=6 {
            let rel = instantiate_relation(RelationId::Rel2, &ctx(g, 0)).unwrap();
            assert!(rel.rhs.is_empty(), "g={g}: {}", rel.rhs);
            let push = PushContext::new(StabilityFamily::phi(g, 0));
            assert!(pushforward(&rel.lhs, &push).unwrap().is_zero());
        }
    }

    #[test]
    fn rel2_genus_two_log() {
        let rel = instantiate_relation(RelationId::Rel2, &ctx(2, 0)).unwrap();
        let stab = rel.log.count(|e| matches!(e, J::StabilityPrune { .. }));
        assert!(stab >= 2);
        let zero = rel.log.count(|e| matches!(e, J::CoefficientZero { graph, .. } if graph.contains("g1=0")));
        assert_eq!(zero, 1);
        assert_eq!(rel.log.count(|e| matches!(e, J::ElidedOtherTerms { .. })), 1);
        // The only two-edge vine with g₁ ≥ 1 is g₁ = 1; it is too deep for a
        // codimension-1 pushforward.
        let dim = rel.log.count(|e| matches!(e, J::DimensionPrune { graph, .. } if graph == "two-edge vine g1=1"));
        assert_eq!(dim, 1);
    }

    #[test]
    fn rel22_with_kappa_uses_stable_degrees() {
        let c = ctx(4, 2).with_times(Monomial::theta_kappa(0, 1));
        let rel = instantiate_relation(RelationId::Rel22, &c).unwrap();
        let second: Vec<_> = rel
            .rhs
            .terms()
            .filter(|t| t.monomial == Monomial::theta_kappa(3, 1) && t.stratum != Stratum::Open)
            .collect();
        // δ-profile at z = 2 in genus 4 is (0, 1, 2): Γ⁺₁ has d = 0 and drops.
        let strata: Vec<Stratum> = second.iter().map(|t| t.stratum).collect();
        assert_eq!(
            strata,
            vec![
                Stratum::VinePlus(2),
                Stratum::VinePlus(3),
                Stratum::VineMinus(1),
                Stratum::VineMinus(2),
                Stratum::VineMinus(3)
            ]
        );
    }

    #[test]
    fn kappa_cubed_pipeline_at_zero() {
        for g in 2..=6 {
            let fam = StabilityFamily::phi(g, 0);
            assert_eq!(derive_kappa3_pushforward(&fam).unwrap(), a_coeff_sum(&fam).unwrap());
        }
        let fam = StabilityFamily::phi(4, 0);
        assert_eq!(
            derive_kappa3_pushforward(&fam).unwrap(),
            BaseExpr::gamma_sum([(1, q(1, 3)), (2, q(8, 3)), (3, qi(9))])
        );
    }

    #[test]
    fn kappa_cubed_pipeline_is_odd_under_dualisation() {
        // The dual family has values −g₁(z + ε)/(g − 1), so δ ↦ −δ − 1 and the
        // pipeline coefficient (4(2g₁)³/48)(δ + ½) changes sign.
        for g in 2..=6 {
            for z in -3..=3 {
                let plus = derive_kappa3_pushforward(&StabilityFamily::phi(g, z)).unwrap();
                let dual = StabilityFamily::phi(g, -z).with_two_edge_eps(-Q::one());
                let minus = derive_kappa3_pushforward(&dual).unwrap();
                assert_eq!(plus, -&minus);
            }
        }
    }

    #[test]
    fn rel3_to_rel5_shapes() {
        let c = ctx(3, 0).with_degree(2);
        let r3 = instantiate_relation(RelationId::Rel3, &c).unwrap();
        assert_eq!(r3.rhs.len(), 2);
        let r4 = instantiate_relation(RelationId::Rel4, &c).unwrap();
        assert_eq!(r4.lhs.len(), 1);
        assert!(r4.rhs.is_empty());
        let r5 = instantiate_relation(RelationId::Rel5, &c).unwrap();
        let psi2: Vec<Q> =
            r5.rhs.terms().filter(|t| t.monomial.exponent(&PicDivisor::psi(2)) == 1).map(|t| t.coefficient).collect();
        assert_eq!(psi2, vec![q(-2, 6)]);
    }

    #[test]
    fn degenerate_families_are_rejected() {
        let walls = RelationContext::new(StabilityFamily::phi(4, 3).with_two_edge_eps(Q::zero()));
        assert!(matches!(instantiate_relation(RelationId::Rel2, &walls), Err(Error::DegenerateFamily(_))));
    }

    #[test]
    fn kappa_tilde_terms_vanish() {
        let c = ctx(3, 1).with_times(Monomial::theta_kappa(0, 1));
        let rel = instantiate_relation(RelationId::Rel22, &c).unwrap();
        let open: TautExpr = {
            let mut e = TautExpr::zero();
            for t in rel.rhs.terms().filter(|t| t.stratum == Stratum::Open) {
                e.add_term(t);
            }
            e
        };
        assert!(open.terms().any(|t| t.base_factor.atoms().contains(&BaseAtom::OneEdge(1))));
        assert!(pushforward(&open, &PushContext::new(StabilityFamily::phi(3, 1))).unwrap().is_zero());
    }
}
