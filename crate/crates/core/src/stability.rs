//! The stability family `φ(z)` on vine graphs and its stable multidegrees.
//!
//! A stability condition assigns a number to every vertex of every stable
//! graph; a multidegree is stable when it lies close enough to it. For the
//! family `φ(z)` the value at the legged vertex `v` of the two-edge vine
//! `Γ_{g₁}` is `g₁(z + ε)/(g − 1)` and the value at `w` is its negative. The
//! infinitesimal `ε` is kept symbolic ([`EpsRational`]), so ties at walls are
//! broken exactly rather than numerically.
//!
//! Stable multidegrees are given per graph shape:
//!
//! - two-edge vine: the two integers in the open interval `(φ(v) − 1, φ(v) + 1)`;
//! - one-edge vine: the integer in `(φ(v) − ½, φ(v) + ½)`;
//! - two-edge vine with one subdivided edge: `(δ, 1, −δ − 1)` on `(v, u, w)`,
//!   where `δ = δ_{g₁}(z)` is the smaller stable value on the unsubdivided vine.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graphs::{classify_vine, Multidegree, PrestableGraph, VineShape};
use crate::rational::{q, qi, render, Q};

/// `a + bε` with `ε` a positive infinitesimal; ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpsRational {
    pub a: Q,
    pub b: Q,
}

impl EpsRational {
    pub fn new(a: Q, b: Q) -> Self {
        EpsRational { a, b }
    }

    /// The exact rational `a` (no infinitesimal part).
    pub fn real(a: Q) -> Self {
        EpsRational { a, b: Q::zero() }
    }

    /// Largest integer `n` with `n ≤ a + bε`.
    pub fn floor(&self) -> i64 {
        let fa = self.a.floor().to_integer();
        let fa = i64::try_from(fa).expect("stability values fit in i64");
        if self.a.is_integer() && self.b.is_negative() {
            fa - 1
        } else {
            fa
        }
    }

    /// True if `self` equals the integer `n` exactly.
    pub fn is_integer_value(&self, n: i64) -> bool {
        self.b.is_zero() && self.a == qi(n)
    }

    pub fn add_real(&self, x: &Q) -> Self {
        EpsRational { a: &self.a + x, b: self.b.clone() }
    }

    pub fn neg(&self) -> Self {
        EpsRational { a: -&self.a, b: -&self.b }
    }

    pub fn abs(&self) -> Self {
        if *self < EpsRational::real(Q::zero()) {
            self.neg()
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for EpsRational {
    /// Renders as `a+b*eps` (or `a-b*eps`) with canonical `p/q` parts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}*eps", render(&self.a), sign, render(&self.b.abs()))
    }
}

/// Values assigned to the one-edge (separating) vine graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OneEdgeValues {
    /// `0 + ε·g₁/g` at the legged vertex of the vine with `w` of genus `g₁`.
    Default,
    /// The same value at the legged vertex of every one-edge vine.
    Uniform(EpsRational),
}

/// The stability family `φ(z)` in genus `g`, optionally deformed for testing
/// degenerate or non-semismall conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityFamily {
    pub g: u32,
    pub z: i64,
    /// Coefficient `c` in `g₁(z + cε)/(g − 1)`; `1` for the family proper.
    pub two_edge_eps: Q,
    pub one_edge: OneEdgeValues,
}

impl StabilityFamily {
    /// The family `φ(z)` in genus `g ≥ 2`.
    pub fn phi(g: u32, z: i64) -> Self {
        assert!(g >= 2, "stability family needs g >= 2");
        StabilityFamily { g, z, two_edge_eps: Q::one(), one_edge: OneEdgeValues::Default }
    }

    /// Replaces the `ε` coefficient of the two-edge values (0 makes walls reachable).
    pub fn with_two_edge_eps(mut self, c: Q) -> Self {
        self.two_edge_eps = c;
        self
    }

    /// Uses `value` at the legged vertex of every one-edge vine.
    pub fn with_one_edge_value(mut self, value: EpsRational) -> Self {
        self.one_edge = OneEdgeValues::Uniform(value);
        self
    }

    /// Value at `v` on the two-edge vine `Γ_{g₁}`.
    pub fn two_edge_value(&self, g1: u32) -> Result<EpsRational> {
        self.check_g1(g1)?;
        let scale = Q::new(g1.into(), (self.g - 1).into());
        Ok(EpsRational::new(&scale * qi(self.z), &scale * &self.two_edge_eps))
    }

    /// Value at `v` on the one-edge vine whose `w` has genus `g₁`.
    pub fn one_edge_value(&self, g1: u32) -> Result<EpsRational> {
        self.check_g1(g1)?;
        Ok(match &self.one_edge {
            OneEdgeValues::Default => EpsRational::new(Q::zero(), Q::new(g1.into(), self.g.into())),
            OneEdgeValues::Uniform(x) => x.clone(),
        })
    }

    fn check_g1(&self, g1: u32) -> Result<()> {
        if g1 < 1 || g1 + 1 > self.g {
            return Err(Error::OutOfRange(format!("g1 = {g1} outside 1..={} for g = {}", self.g - 1, self.g)));
        }
        Ok(())
    }
}

/// `φ(z)` at a vertex of a one- or two-edge vine of genus `fam.g`.
pub fn phi_value(fam: &StabilityFamily, graph: &PrestableGraph, vertex: usize) -> Result<EpsRational> {
    if graph.genus() != fam.g {
        return Err(Error::InvalidInput(format!("graph genus {} != family genus {}", graph.genus(), fam.g)));
    }
    let roles = classify_vine(graph)?;
    let at_v = match roles.shape {
        VineShape::TwoEdge { g1 } => fam.two_edge_value(g1)?,
        VineShape::OneEdge { g1 } => fam.one_edge_value(g1)?,
        VineShape::Subdivided { .. } => return Err(Error::Unsupported("stability values on subdivided graphs".into())),
    };
    if vertex == roles.v {
        Ok(at_v)
    } else if vertex == roles.w {
        Ok(at_v.neg())
    } else {
        Err(Error::InvalidInput(format!("vertex {vertex} not in graph")))
    }
}

/// Integers strictly inside `(centre − radius, centre + radius)`; errors if
/// an endpoint is itself an integer.
fn integers_in_open_interval(centre: &EpsRational, radius: &Q) -> Result<Vec<i64>> {
    let lo = centre.add_real(&-radius);
    let hi = centre.add_real(radius);
    let start = lo.floor() - 1;
    let end = hi.floor() + 1;
    let mut out = Vec::new();
    for n in start..=end {
        if lo.is_integer_value(n) || hi.is_integer_value(n) {
            return Err(Error::NondegeneracyViolation(format!(
                "{n} is an endpoint of the interval around {centre} of radius {}",
                render(radius)
            )));
        }
        let x = EpsRational::real(qi(n));
        if lo < x && x < hi {
            out.push(n);
        }
    }
    Ok(out)
}

/// All stable multidegrees of total degree `total = 0`, ordered by the value at `v`.
pub fn stable_multidegrees(fam: &StabilityFamily, graph: &PrestableGraph, total: i64) -> Result<Vec<Multidegree>> {
    if total != 0 {
        return Err(Error::InvalidInput(format!("only total degree 0 is supported, got {total}")));
    }
    if graph.genus() != fam.g {
        return Err(Error::InvalidInput(format!("graph genus {} != family genus {}", graph.genus(), fam.g)));
    }
    let roles = classify_vine(graph)?;
    let split = |d: i64| Multidegree::new(BTreeMap::from([(roles.v, d), (roles.w, -d)]));
    match roles.shape {
        VineShape::TwoEdge { g1 } => {
            Ok(integers_in_open_interval(&fam.two_edge_value(g1)?, &Q::one())?.into_iter().map(split).collect())
        }
        VineShape::OneEdge { g1 } => {
            Ok(integers_in_open_interval(&fam.one_edge_value(g1)?, &q(1, 2))?.into_iter().map(split).collect())
        }
        VineShape::Subdivided { g1 } => {
            let values = integers_in_open_interval(&fam.two_edge_value(g1)?, &Q::one())?;
            let delta = values[0];
            let u = roles.u.expect("subdivided vine has an exceptional vertex");
            Ok(vec![Multidegree::new(BTreeMap::from([(roles.v, delta), (u, 1), (roles.w, -delta - 1)]))])
        }
    }
}

/// `δ_{g₁}(z) = ⌊g₁(z + ε)/(g − 1)⌋`, the smaller stable degree at `v` on `Γ_{g₁}`.
pub fn delta_g1(fam: &StabilityFamily, g1: u32) -> Result<i64> {
    Ok(fam.two_edge_value(g1)?.floor())
}

/// No stability interval on any vine graph has an integer endpoint.
pub fn is_nondegenerate(fam: &StabilityFamily) -> bool {
    (1..fam.g).all(|g1| {
        let two = fam.two_edge_value(g1).expect("g1 in range");
        let one = fam.one_edge_value(g1).expect("g1 in range");
        let two_ok = !(two.b.is_zero() && two.a.is_integer());
        let one_ok = !(one.b.is_zero() && (&one.a + q(1, 2)).is_integer());
        two_ok && one_ok
    })
}

/// The trivial multidegree is stable on every one-edge vine: `|φ(v)| < ½`.
pub fn is_semismall(fam: &StabilityFamily) -> bool {
    let half = EpsRational::real(q(1, 2));
    (1..fam.g).all(|g1| fam.one_edge_value(g1).expect("g1 in range").abs().cmp(&half) == Ordering::Less)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{make_vine, subdivide};

    fn eps(a: Q, b: Q) -> EpsRational {
        EpsRational::new(a, b)
    }

    #[test]
    fn floor_rule() {
        assert_eq!(eps(q(3, 2), qi(-1)).floor(), 1);
        assert_eq!(eps(qi(2), qi(1)).floor(), 2);
        assert_eq!(eps(qi(2), Q::zero()).floor(), 2);
        assert_eq!(eps(qi(2), q(-1, 3)).floor(), 1);
        assert_eq!(eps(q(-1, 2), Q::zero()).floor(), -1);
    }

    #[test]
    fn lexicographic_order() {
        assert!(eps(qi(1), qi(5)) < eps(qi(2), qi(-5)));
        assert!(eps(qi(1), qi(-1)) < eps(qi(1), Q::zero()));
        assert_eq!(eps(qi(1), q(2, 3)).to_string(), "1/1+2/3*eps");
        assert_eq!(eps(q(-1, 2), q(-1, 3)).to_string(), "-1/2-1/3*eps");
    }

    #[test]
    fn phi_on_two_edge_vines() {
        let fam = StabilityFamily::phi(4, 2);
        let g = make_vine(4, 2, 2).unwrap();
        assert_eq!(phi_value(&fam, &g, 0).unwrap(), eps(q(4, 3), q(2, 3)));
        assert_eq!(phi_value(&fam, &g, 1).unwrap(), eps(q(-4, 3), q(-2, 3)));
        let top = make_vine(4, 3, 2).unwrap();
        assert_eq!(phi_value(&fam, &top, 0).unwrap(), eps(qi(2), qi(1)));
    }

    #[test]
    fn phi_on_one_edge_vines_is_semismall_default() {
        let fam = StabilityFamily::phi(5, 7);
        let g = make_vine(5, 2, 1).unwrap();
        let value = phi_value(&fam, &g, 0).unwrap();
        assert_eq!(value, eps(Q::zero(), q(2, 5)));
        assert!(value.abs() < EpsRational::real(q(1, 2)));
    }

    #[test]
    fn stable_multidegrees_on_each_shape() {
        let fam = StabilityFamily::phi(4, 0);
        let two = make_vine(4, 2, 2).unwrap();
        let degs: Vec<i64> = stable_multidegrees(&fam, &two, 0).unwrap().iter().map(|d| d.at(0)).collect();
        assert_eq!(degs, vec![0, 1]);
        let one = make_vine(4, 2, 1).unwrap();
        let degs: Vec<i64> = stable_multidegrees(&fam, &one, 0).unwrap().iter().map(|d| d.at(0)).collect();
        assert_eq!(degs, vec![0]);
        let sub = subdivide(&two, 0).unwrap();
        let only = stable_multidegrees(&fam, &sub, 0).unwrap();
        assert_eq!(only.len(), 1);
        assert_eq!((only[0].at(0), only[0].at(2), only[0].at(1)), (0, 1, -1));
        assert!(only[0].validate_on(&sub).is_ok());
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_g1(&StabilityFamily::phi(4, 2), 2).unwrap(), 1);
        assert_eq!(delta_g1(&StabilityFamily::phi(5, 3), 2).unwrap(), 1);
        assert_eq!(delta_g1(&StabilityFamily::phi(7, 0), 4).unwrap(), 0);
        // At g₁ = g − 1 the value is z + ε itself.
        assert_eq!(delta_g1(&StabilityFamily::phi(4, 2), 3).unwrap(), 2);
        assert!(matches!(delta_g1(&StabilityFamily::phi(4, 2), 4), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn degenerate_and_non_semismall_families() {
        let fam = StabilityFamily::phi(4, 3);
        assert!(is_nondegenerate(&fam) && is_semismall(&fam));
        let walls = StabilityFamily::phi(4, 3).with_two_edge_eps(Q::zero());
        assert!(!is_nondegenerate(&walls));
        let two = make_vine(4, 1, 2).unwrap();
        assert!(matches!(stable_multidegrees(&walls, &two, 0), Err(Error::NondegeneracyViolation(_))));
        let half = StabilityFamily::phi(4, 0).with_one_edge_value(EpsRational::real(q(1, 2)));
        assert!(!is_nondegenerate(&half));
        let big = StabilityFamily::phi(4, 0).with_one_edge_value(EpsRational::real(q(3, 4)));
        assert!(!is_semismall(&big));
        let edge = StabilityFamily::phi(4, 0).with_one_edge_value(eps(q(1, 2), qi(-1)));
        assert!(is_semismall(&edge));
    }
}
