//! The divisor-isomorphism obstruction.
//!
//! Suppose a graded ring isomorphism between the cohomology of the universal
//! compactified Jacobians for `φ(z)` and `φ(z′)` sends
//! `Θ ↦ aΘ + bκ_{0,1} + β` and `κ_{0,1} ↦ sΘ + tκ_{0,1} + β′`. Comparing top
//! powers gives `a^g = c`; comparing the pushforwards of `Θ^{g−1}κ_{0,1}` and
//! `Θ^{g−2}κ_{0,1}²` gives `s = 0`, `a = t²` and `β′ = (2b/t)[DR¹_g(b;a₁)]_{b²}`.
//! The `κ_{0,1}³` pushforward then leaves one equation per boundary class
//! `[Γ_{g₁}]`, `g₁ = 1..g−1`:
//!
//! ```text
//! t(δ_{g₁}(z) − ½) = t²(δ_{g₁}(z′) − ½) − 4b(2g₁)
//! ```
//!
//! [`solve_system`] decides exactly whether some `b ∈ ℚ`, `t ∈ ℚ^×` satisfies
//! all of them, returning a witness or a certificate of at most three
//! jointly infeasible equations.

use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::rational::{pretty, q, qi, render, Q};
use crate::stability::{delta_g1, StabilityFamily};
use crate::tautalg::{a_coeff, BaseAtom, BaseExpr};

/// `[δ_{g₁}(z) for g₁ = 1..g−1]`.
pub fn delta_profile(g: u32, z: i64) -> Result<Vec<i64>> {
    if g < 2 {
        return Err(Error::OutOfRange(format!("genus {g} < 2")));
    }
    let fam = StabilityFamily::phi(g, z);
    (1..g).map(|g1| delta_g1(&fam, g1)).collect()
}

/// The candidate isomorphism on divisor classes, with the reductions
/// `s = 0`, `a = t²`, `c = a^g` and the `β′` formula built in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoAnsatz {
    pub g: u32,
    pub a: Q,
    pub b: Q,
    pub s: Q,
    pub t: Q,
    pub c: Q,
    pub beta: BaseExpr,
    pub beta_prime: BaseExpr,
}

impl IsoAnsatz {
    /// The ansatz determined by `(t, b)`; `β` is not constrained by the
    /// divisor equations and is left at zero.
    pub fn from_witness(g: u32, t: Q, b: Q) -> Result<Self> {
        if t.is_zero() {
            return Err(Error::InvalidInput("t must be nonzero".into()));
        }
        let a = &t * &t;
        let c = num_traits::pow(a.clone(), g as usize);
        let beta_prime = BaseExpr::atom(qi(2) * &b / &t, BaseAtom::Dr1b2);
        Ok(IsoAnsatz { g, a, b, s: Q::zero(), t, c, beta: BaseExpr::zero(), beta_prime })
    }

    /// Checks every recorded reduction.
    pub fn check(&self) -> Result<()> {
        let ok = !self.t.is_zero()
            && self.s.is_zero()
            && self.a == &self.t * &self.t
            && !self.c.is_zero()
            && self.c == num_traits::pow(self.a.clone(), self.g as usize)
            && self.beta_prime == BaseExpr::atom(qi(2) * &self.b / &self.t, BaseAtom::Dr1b2);
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput("ansatz violates its reductions".into()))
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "a": render(&self.a), "b": render(&self.b), "s": render(&self.s), "t": render(&self.t),
            "c": render(&self.c), "beta": self.beta.to_json(), "beta_prime": self.beta_prime.to_json(),
        })
    }
}

/// Reductions the constraint system rests on, in the order they are used.
pub const PROVENANCE: [&str; 4] = [
    "top powers: a^g = c with c != 0",
    "pushforward of Theta^(g-1)*kappa01: s = 0 and a = t^2",
    "pushforward of Theta^(g-2)*kappa01^2: beta' = (2b/t)[DR1(b;a1)]_(b^2)",
    "pushforward of kappa01^3 depends on phi(z) through delta_g1(z): one equation per [Gamma_g1]",
];

/// `t(δ − ½) = t²(δ′ − ½) − 8g₁·b`, i.e. `A·t + B·t² + C·b = 0` with
/// `A = δ − ½`, `B = ½ − δ′`, `C = 8g₁`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub g1: u32,
    pub delta: i64,
    pub delta_prime: i64,
}

impl Equation {
    pub fn coeff_t(&self) -> Q {
        qi(self.delta) - q(1, 2)
    }

    pub fn coeff_t2(&self) -> Q {
        q(1, 2) - qi(self.delta_prime)
    }

    pub fn coeff_b(&self) -> Q {
        qi(8 * self.g1 as i64)
    }

    /// `A·t + B·t² + C·b`.
    pub fn residual(&self, t: &Q, b: &Q) -> Q {
        self.coeff_t() * t + self.coeff_t2() * t * t + self.coeff_b() * b
    }

    /// The `b` solving this equation at a given `t`.
    pub fn solve_b(&self, t: &Q) -> Q {
        -(self.coeff_t() * t + self.coeff_t2() * t * t) / self.coeff_b()
    }
}

impl fmt::Display for Equation {
    /// Renders as `-1/2*t = -1/2*t^2 - 8*b`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*t = {}*t^2 - {}*b", pretty(&self.coeff_t()), pretty(&-self.coeff_t2()), pretty(&self.coeff_b()))
    }
}

/// The equations for the pair `(z, z′)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub g: u32,
    pub z: i64,
    pub z_prime: i64,
    pub equations: Vec<Equation>,
    pub provenance: Vec<String>,
}

impl ConstraintSystem {
    pub fn equation(&self, g1: u32) -> Option<&Equation> {
        self.equations.iter().find(|e| e.g1 == g1)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.equations
                .iter()
                .map(|e| json!({"g1": e.g1, "eq": e.to_string(), "delta": e.delta, "delta_prime": e.delta_prime}))
                .collect(),
        )
    }
}

/// Assembles the system from the two δ-profiles.
pub fn build_system(g: u32, z: i64, z_prime: i64) -> Result<ConstraintSystem> {
    let d = delta_profile(g, z)?;
    let dp = delta_profile(g, z_prime)?;
    let equations =
        (1..g).zip(d.iter().zip(&dp)).map(|(g1, (&delta, &delta_prime))| Equation { g1, delta, delta_prime }).collect();
    Ok(ConstraintSystem { g, z, z_prime, equations, provenance: PROVENANCE.iter().map(|s| s.to_string()).collect() })
}

/// Exact decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    Sat {
        t: Q,
        b: Q,
    },
    /// The `g₁` indices of jointly infeasible equations, ascending.
    Unsat {
        certificate: Vec<u32>,
    },
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveResult::Sat { .. })
    }

    pub fn to_json(&self) -> Value {
        match self {
            SolveResult::Sat { t, b } => json!({"sat": {"t": render(t), "b": render(b)}}),
            SolveResult::Unsat { certificate } => json!({"unsat": {"certificate": certificate}}),
        }
    }
}

/// Eliminating `b` between two equations leaves `α + β·t = 0` (after
/// dividing by `t ≠ 0`).
fn eliminate(e: &Equation, f: &Equation) -> (Q, Q) {
    let alpha = e.coeff_t() / e.coeff_b() - f.coeff_t() / f.coeff_b();
    let beta = e.coeff_t2() / e.coeff_b() - f.coeff_t2() / f.coeff_b();
    (alpha, beta)
}

/// What a pair of equations says about `t`.
enum PairConstraint {
    /// Proportional: no condition.
    Free,
    /// Only `t = 0` — infeasible.
    Infeasible,
    /// `t` is this nonzero value.
    Fixed(Q),
}

fn pair_constraint(e: &Equation, f: &Equation) -> PairConstraint {
    let (alpha, beta) = eliminate(e, f);
    match (alpha.is_zero(), beta.is_zero()) {
        (true, true) => PairConstraint::Free,
        (_, false) if alpha.is_zero() => PairConstraint::Infeasible,
        (_, false) => PairConstraint::Fixed(-alpha / beta),
        (false, true) => PairConstraint::Infeasible,
    }
}

/// Decides the system. Pairs are scanned in lexicographic order of `g₁`, so
/// certificates are deterministic and use the smallest indices available.
pub fn solve_system(sys: &ConstraintSystem) -> SolveResult {
    let eqs = &sys.equations;
    let mut fixing: Option<(usize, usize, Q)> = None;
    for i in 0..eqs.len() {
        for j in i + 1..eqs.len() {
            match pair_constraint(&eqs[i], &eqs[j]) {
                PairConstraint::Free => {}
                PairConstraint::Infeasible => return SolveResult::Unsat { certificate: vec![eqs[i].g1, eqs[j].g1] },
                PairConstraint::Fixed(t) => {
                    if fixing.is_none() {
                        fixing = Some((i, j, t));
                    }
                }
            }
        }
    }
    let Some(first) = eqs.first() else {
        return SolveResult::Sat { t: Q::one(), b: Q::zero() };
    };
    // Every pair proportional: any t ≠ 0 works; take t = 1.
    let Some((i, j, t)) = fixing else {
        let t = Q::one();
        let b = first.solve_b(&t);
        return SolveResult::Sat { t, b };
    };
    let b = eqs[i].solve_b(&t);
    match eqs.iter().find(|e| !e.residual(&t, &b).is_zero()) {
        None => SolveResult::Sat { t, b },
        Some(bad) => {
            let mut certificate = vec![eqs[i].g1, eqs[j].g1, bad.g1];
            certificate.sort_unstable();
            SolveResult::Unsat { certificate }
        }
    }
}

/// Replays a certificate by exact elimination on its equations alone:
/// either a pair forces `t = 0`, or two of them fix `t` and the third then
/// reduces to `0 = r` with `r ≠ 0`. Returns the contradiction found.
pub fn replay_certificate(sys: &ConstraintSystem, certificate: &[u32]) -> std::result::Result<String, String> {
    let eqs: Vec<&Equation> = certificate
        .iter()
        .map(|g1| sys.equation(*g1).ok_or_else(|| format!("no equation for g1 = {g1}")))
        .collect::<std::result::Result<_, _>>()?;
    if !(2..=3).contains(&eqs.len()) {
        return Err(format!("certificate has {} equations", eqs.len()));
    }
    for x in 0..eqs.len() {
        for y in x + 1..eqs.len() {
            match pair_constraint(eqs[x], eqs[y]) {
                PairConstraint::Infeasible => {
                    return Ok(format!("equations g1={} and g1={} force t = 0", eqs[x].g1, eqs[y].g1));
                }
                PairConstraint::Fixed(t) => {
                    let b = eqs[x].solve_b(&t);
                    for e in &eqs {
                        let r = e.residual(&t, &b);
                        if !r.is_zero() {
                            return Ok(format!(
                                "g1={} and g1={} give t = {}, b = {}; then g1={} reads 0 = {}",
                                eqs[x].g1,
                                eqs[y].g1,
                                render(&t),
                                render(&b),
                                e.g1,
                                render(&r)
                            ));
                        }
                    }
                }
                PairConstraint::Free => {}
            }
        }
    }
    Err("the certificate equations are jointly solvable".into())
}

/// Checks a witness against every equation and the ansatz reductions.
pub fn check_witness(sys: &ConstraintSystem, t: &Q, b: &Q) -> bool {
    !t.is_zero()
        && sys.equations.iter().all(|e| e.residual(t, b).is_zero())
        && IsoAnsatz::from_witness(sys.g, t.clone(), b.clone()).and_then(|a| a.check()).is_ok()
}

/// Everything about one pair `(z, z′)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub g: u32,
    pub z: i64,
    pub z_prime: i64,
    pub delta: Vec<i64>,
    pub delta_prime: Vec<i64>,
    pub a_coeffs: Vec<Q>,
    pub a_coeffs_prime: Vec<Q>,
    pub system: ConstraintSystem,
    pub result: SolveResult,
    /// Replayed contradiction (UNSAT) or the ansatz (SAT).
    pub evidence: Value,
}

impl ObstructionReport {
    /// No divisor-level isomorphism exists.
    pub fn distinguished(&self) -> bool {
        !self.result.is_sat()
    }

    pub fn to_json(&self) -> Value {
        let qs = |v: &[Q]| v.iter().map(render).collect::<Vec<_>>();
        json!({
            "g": self.g, "z": self.z, "zprime": self.z_prime,
            "delta": self.delta, "delta_prime": self.delta_prime,
            "a_coeffs": qs(&self.a_coeffs), "a_coeffs_prime": qs(&self.a_coeffs_prime),
            "system": self.system.to_json(),
            "provenance": self.system.provenance,
            "result": self.result.to_json(),
            "evidence": self.evidence,
            "verdict": if self.distinguished() { "rings distinguished" } else { "not distinguished" },
        })
    }
}

/// Builds, solves and double-checks the system for `(z, z′)`.
pub fn obstruction_report(g: u32, z: i64, z_prime: i64) -> Result<ObstructionReport> {
    let system = build_system(g, z, z_prime)?;
    let fam = StabilityFamily::phi(g, z);
    let fam_prime = StabilityFamily::phi(g, z_prime);
    let a_coeffs = (1..g).map(|g1| a_coeff(g, g1, &fam)).collect::<Result<Vec<_>>>()?;
    let a_coeffs_prime = (1..g).map(|g1| a_coeff(g, g1, &fam_prime)).collect::<Result<Vec<_>>>()?;
    let result = solve_system(&system);
    let evidence = match &result {
        SolveResult::Sat { t, b } => {
            if !check_witness(&system, t, b) {
                return Err(Error::InvalidInput(format!("witness t = {t}, b = {b} does not re-substitute")));
            }
            IsoAnsatz::from_witness(g, t.clone(), b.clone())?.to_json()
        }
        SolveResult::Unsat { certificate } => {
            let why = replay_certificate(&system, certificate).map_err(Error::InvalidInput)?;
            json!(why)
        }
    };
    Ok(ObstructionReport {
        g,
        z,
        z_prime,
        delta: delta_profile(g, z)?,
        delta_prime: delta_profile(g, z_prime)?,
        a_coeffs,
        a_coeffs_prime,
        system,
        result,
        evidence,
    })
}

/// Reports for a grid of `(g, z, z′)`, in input order.
pub fn sweep(grid: &[(u32, i64, i64)], exec: Exec) -> Result<Vec<ObstructionReport>> {
    exec.map(grid, |&(g, z, zp)| obstruction_report(g, z, zp)).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profiles() {
        assert_eq!(delta_profile(4, 0).unwrap(), vec![0, 0, 0]);
        assert_eq!(delta_profile(6, 10).unwrap(), vec![2, 4, 6, 8, 10]);
        assert!(delta_profile(1, 0).is_err());
    }

    #[test]
    fn rendering() {
        let sys = build_system(4, 0, 2).unwrap();
        assert_eq!(sys.equations[0].to_string(), "-1/2*t = -1/2*t^2 - 8*b");
        assert_eq!(sys.equations[1].to_string(), "-1/2*t = 1/2*t^2 - 16*b");
    }

    #[test]
    fn identity_pair_is_sat() {
        for g in 2..=12 {
            for z in [-3, 0, 5] {
                let sys = build_system(g, z, z).unwrap();
                assert_eq!(solve_system(&sys), SolveResult::Sat { t: Q::one(), b: Q::zero() }, "g={g} z={z}");
            }
        }
    }

    #[test]
    fn translated_pair_is_sat() {
        for g in 4..=12 {
            let sys = build_system(g, 0, 2 * g as i64 - 2).unwrap();
            assert_eq!(solve_system(&sys), SolveResult::Sat { t: Q::one(), b: q(1, 4) });
        }
    }

    #[test]
    fn certificates_replay() {
        for g in 5..=12 {
            let sys = build_system(g, 0, 2).unwrap();
            let SolveResult::Unsat { certificate } = solve_system(&sys) else { panic!("g={g} should be UNSAT") };
            assert!(certificate.len() <= 3);
            replay_certificate(&sys, &certificate).unwrap();
        }
    }

    #[test]
    fn ansatz_reductions() {
        let a = IsoAnsatz::from_witness(3, q(1, 2), q(1, 4)).unwrap();
        assert_eq!(a.a, q(1, 4));
        assert_eq!(a.c, q(1, 64));
        a.check().unwrap();
        assert!(IsoAnsatz::from_witness(3, Q::zero(), Q::one()).is_err());
    }
}
