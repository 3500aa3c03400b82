//! The goal catalog: formal identities of the Fourier calculus, each
//! instantiated over the finite index set `0..=2g`.

use serde::Serialize;
use serde_json::{json, Value};

use super::rewrite::{replay, verify, AxiomSet, Axioms, Identity, Verdict};
use super::word::{Alg, CorrExpr};
use crate::error::Result;
use crate::exec::Exec;

/// Default number of identity ↔ resolution substitutions searched.
pub const DEFAULT_DEPTH: usize = 3;

/// Which list of statements a goal belongs to: consequences of the full
/// vanishing axioms, or of the half ones. Some full-theory goals (the
/// resolution of the identity, idempotence of each `p_i`) happen to hold
/// under weaker axioms too.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theory {
    Half,
    Full,
}

impl Theory {
    pub fn name(self) -> &'static str {
        match self {
            Theory::Half => "half",
            Theory::Full => "full",
        }
    }

    /// Whether the goal is guaranteed to hold under `ax`.
    pub fn holds_under(self, ax: Axioms) -> bool {
        match self {
            Theory::Half => ax != Axioms::None,
            Theory::Full => ax == Axioms::Full,
        }
    }
}

/// A named family of identity instances.
#[derive(Debug, Clone)]
pub struct Goal {
    pub name: &'static str,
    pub theory: Theory,
    pub statement: &'static str,
    pub instances: Vec<Identity>,
}

fn zero() -> CorrExpr {
    CorrExpr::zero()
}

/// Every goal for genus `g`, sorted by name.
pub fn catalog(g: u32) -> Result<Vec<Goal>> {
    let a = Alg::new(g);
    let t = 2 * g;
    let top = t as i64;
    let idx: Vec<u32> = (0..=t).collect();
    let mut goals = Vec::new();

    let mut inst = Vec::new();
    for &i in &idx {
        for &j in &idx {
            if i != j {
                inst.push(Identity::exact(a.p(i).compose(&a.p(j))?, zero()));
                inst.push(Identity::exact(a.pv(i).compose(&a.pv(j))?, zero()));
            }
        }
    }
    goals.push(Goal {
        name: "orthogonality",
        theory: Theory::Full,
        statement: "p_i∘p_j = 0 and p^∨_i∘p^∨_j = 0 for i ≠ j",
        instances: inst,
    });

    let mut inst = Vec::new();
    for &i in &idx {
        inst.push(Identity::exact(a.p(i).compose(&a.p(i))?, a.p(i)));
        inst.push(Identity::exact(a.pv(i).compose(&a.pv(i))?, a.pv(i)));
    }
    goals.push(Goal {
        name: "idempotence",
        theory: Theory::Full,
        statement: "p_i∘p_i = p_i and p^∨_i∘p^∨_i = p^∨_i",
        instances: inst,
    });

    goals.push(Goal {
        name: "resolution_of_identity",
        theory: Theory::Full,
        statement: "Σ_i p_i = id_M and Σ_i p^∨_i = id_V",
        instances: vec![
            Identity::exact(a.resolution(super::Obj::M), a.id(super::Obj::M)),
            Identity::exact(a.resolution(super::Obj::V), a.id(super::Obj::V)),
        ],
    });

    let mut fwd = Vec::new();
    let mut inv = Vec::new();
    for &i in &idx {
        for &j in &idx {
            for &k in &idx {
                if !(j == k && k == t - i) {
                    fwd.push(Identity::exact(a.chain(&[a.p(j), a.f(k), a.pv(i)])?, zero()));
                    inv.push(Identity::exact(a.chain(&[a.pv(j), a.gg(k), a.p(i)])?, zero()));
                }
            }
        }
    }
    goals.push(Goal {
        name: "fourier_stability_forward",
        theory: Theory::Full,
        statement: "p_j∘F_k∘p^∨_i = 0 unless j = k = 2g − i",
        instances: fwd,
    });
    goals.push(Goal {
        name: "fourier_stability_inverse",
        theory: Theory::Full,
        statement: "p^∨_j∘G_k∘p_i = 0 unless j = k = 2g − i",
        instances: inv,
    });

    let mut inst = Vec::new();
    for &i in &idx {
        inst.push(Identity::exact(a.chain(&[a.gg(t - i), a.f(i), a.pv(t - i)])?, a.pv(t - i)));
        inst.push(Identity::exact(a.chain(&[a.f(i), a.gg(t - i), a.p(i)])?, a.p(i)));
    }
    goals.push(Goal {
        name: "graded_pieces_inverse",
        theory: Theory::Full,
        statement: "G_{2g−i}∘F_i = id on the image of p^∨_{2g−i} and F_i∘G_{2g−i} = id on the image of p_i",
        instances: inst,
    });

    let mut inst = Vec::new();
    for &i in &idx {
        for &j in &idx {
            for &k in &idx {
                if k != i + j {
                    inst.push(Identity::exact(a.p(k).compose(&a.cup(&a.p(i), &a.p(j))?)?, zero()));
                }
            }
        }
    }
    goals.push(Goal {
        name: "strong_multiplicativity",
        theory: Theory::Full,
        statement: "p_k∘CUP∘(p_i ⊗ p_j) = 0 unless k = i + j",
        instances: inst,
    });

    let mut inst = Vec::new();
    for k in 0..=t {
        for l in 0..=t - k {
            let lhs = a.f(k + l).compose(&a.star(&a.pv(t - k), &a.pv(t - l))?)?;
            let rhs = a.cup(&a.f(k).compose(&a.pv(t - k))?, &a.f(l).compose(&a.pv(t - l))?)?;
            inst.push(Identity::exact(lhs, rhs));
        }
    }
    goals.push(Goal {
        name: "convolution_transport",
        theory: Theory::Full,
        statement: "F_{k+l}∘STAR_red∘(p^∨_{2g−k} ⊗ p^∨_{2g−l}) = CUP∘(F_k∘p^∨_{2g−k} ⊗ F_l∘p^∨_{2g−l}) for k + l ≤ 2g",
        instances: inst,
    });

    let mut inst = Vec::new();
    for l in 0..=top {
        for k in 0..=l {
            inst.push(Identity::exact(a.p_le(l).compose(&a.p_le(k))?, a.p_le(k)));
            inst.push(Identity::exact(a.pv_le(l).compose(&a.pv_le(k))?, a.pv_le(k)));
        }
    }
    goals.push(Goal {
        name: "semiorthogonal_idempotents",
        theory: Theory::Half,
        statement: "p_{≤l}∘p_{≤k} = p_{≤k} for k ≤ l (and on V)",
        instances: inst,
    });

    let mut inst = Vec::new();
    for k in 0..=top {
        for l in 0..(top - k) {
            inst.push(Identity::exact(a.f(l as u32).compose(&a.pv_le(k))?, zero()));
            inst.push(Identity::exact(a.gg(l as u32).compose(&a.p_le(k))?, zero()));
        }
    }
    goals.push(Goal {
        name: "truncation_vanishing",
        theory: Theory::Half,
        statement: "F_l∘p^∨_{≤k} = 0 and G_l∘p_{≤k} = 0 for l < 2g − k",
        instances: inst,
    });

    let mut inst = Vec::new();
    for l in 0..t {
        inst.push(Identity::exact(a.q_ge(l as i64 + 1).compose(&a.f(l))?, zero()));
        inst.push(Identity::exact(a.qv_ge(l as i64 + 1).compose(&a.gg(l))?, zero()));
    }
    goals.push(Goal {
        name: "truncation_factoring",
        theory: Theory::Half,
        statement: "q_{≥l+1}∘F_l = 0 and q^∨_{≥l+1}∘G_l = 0",
        instances: inst,
    });

    let mut inst = Vec::new();
    for k in 0..=t {
        let p = a.p_le(k as i64);
        let pv = a.pv_le(k as i64);
        inst.push(Identity::graded(a.chain(&[a.f(k), a.gg(t - k), p.clone()])?, p, k));
        inst.push(Identity::graded(a.chain(&[a.gg(k), a.f(t - k), pv.clone()])?, pv, k));
    }
    goals.push(Goal {
        name: "graded_inverse",
        theory: Theory::Half,
        statement: "F_k∘G_{2g−k}∘p_{≤k} ≡ p_{≤k} and G_k∘F_{2g−k}∘p^∨_{≤k} ≡ p^∨_{≤k} modulo lower truncations",
        instances: inst,
    });

    let mut inst = Vec::new();
    for k in 0..=top {
        for l in 0..=top {
            let bound = k + l + 1 - top;
            if bound > top {
                continue;
            }
            let lhs = a.qv_ge(bound).compose(&a.star(&a.pv_le(k), &a.pv_le(l))?)?;
            inst.push(Identity::exact(lhs, zero()));
        }
    }
    goals.push(Goal {
        name: "reduced_multiplicativity",
        theory: Theory::Half,
        statement: "q^∨_{≥k+l+1−2g}∘STAR_red∘(p^∨_{≤k} ⊗ p^∨_{≤l}) = 0",
        instances: inst,
    });

    goals.push(Goal {
        name: "graded_transport",
        theory: Theory::Half,
        statement: "F̄_{k+l}∘STAR_red = CUP∘(F̄_k ⊗ F̄_l) on graded pieces, k + l ≤ 2g",
        instances: transport_instances(g)?.into_iter().map(|(_, _, id)| id).collect(),
    });

    goals.sort_by_key(|goal| goal.name);
    Ok(goals)
}

/// `F_{k+l}∘STAR_red∘(p^∨_{≤2g−k} ⊗ p^∨_{≤2g−l}) ≡ CUP∘(F_k∘p^∨_{≤2g−k} ⊗ F_l∘p^∨_{≤2g−l})`
/// at grade `k + l`, for every `k + l ≤ 2g`.
fn transport_instances(g: u32) -> Result<Vec<(u32, u32, Identity)>> {
    let a = Alg::new(g);
    let t = 2 * g;
    let mut out = Vec::new();
    for k in 0..=t {
        for l in 0..=t - k {
            let (sk, sl) = (a.pv_le((t - k) as i64), a.pv_le((t - l) as i64));
            let lhs = a.f(k + l).compose(&a.star(&sk, &sl)?)?;
            let rhs = a.cup(&a.f(k).compose(&sk)?, &a.f(l).compose(&sl)?)?;
            out.push((k, l, Identity::graded(lhs, rhs, k + l)));
        }
    }
    Ok(out)
}

/// Looks up one goal.
pub fn goal(g: u32, name: &str) -> Result<Goal> {
    catalog(g)?
        .into_iter()
        .find(|goal| goal.name == name)
        .ok_or_else(|| crate::error::Error::InvalidInput(format!("unknown fourier goal {name:?}")))
}

/// Result of evaluating one goal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoalOutcome {
    pub goal: String,
    pub theory: Theory,
    pub statement: String,
    /// `Verified` when every instance verified and replayed.
    pub verdict: String,
    pub instances: usize,
    /// Instances examined (evaluation stops at the first failure).
    pub checked: usize,
    /// Total steps over all instance traces.
    pub steps: usize,
    /// Rendered traces, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_instance: Option<String>,
}

impl GoalOutcome {
    pub fn verified(&self) -> bool {
        self.verdict == "Verified"
    }
}

/// Verifies every instance of `goal` and replays each trace.
pub fn evaluate_goal(goal: &Goal, ax: AxiomSet, depth: usize, keep_trace: bool) -> Result<GoalOutcome> {
    let mut steps = 0;
    let mut traces = Vec::new();
    let mut failing = None;
    let mut checked = 0;
    for id in &goal.instances {
        checked += 1;
        match verify(id, ax, depth)? {
            Verdict::Verified(trace) => match replay(id, ax, &trace) {
                Ok(()) => {
                    steps += trace.len();
                    if keep_trace {
                        traces.push(trace.render());
                    }
                }
                Err(e) => {
                    failing = Some(format!("{id}: replay failed: {e}"));
                    break;
                }
            },
            Verdict::NotWithinDepth { .. } => {
                failing = Some(id.to_string());
                break;
            }
        }
    }
    Ok(GoalOutcome {
        goal: goal.name.to_string(),
        theory: goal.theory,
        statement: goal.statement.to_string(),
        verdict: if failing.is_none() { "Verified" } else { "NotWithinDepth" }.to_string(),
        instances: goal.instances.len(),
        checked,
        steps,
        trace: keep_trace.then_some(traces),
        failing_instance: failing,
    })
}

/// Report of a full catalog run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogReport {
    pub g: u32,
    pub axioms: Axioms,
    pub depth: usize,
    pub goals: Vec<GoalOutcome>,
}

impl CatalogReport {
    pub fn outcome(&self, name: &str) -> Option<&GoalOutcome> {
        self.goals.iter().find(|o| o.goal == name)
    }

    /// Every goal whose theory holds under these axioms verified.
    pub fn expected_goals_verified(&self) -> bool {
        self.goals.iter().filter(|o| o.theory.holds_under(self.axioms)).all(|o| o.verified())
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serialises")
    }
}

/// Evaluates every goal (concurrently under [`Exec::Parallel`]); goals are
/// reported sorted by name.
pub fn catalog_run(ax: AxiomSet, depth: usize, exec: Exec) -> Result<CatalogReport> {
    let goals = catalog(ax.g)?;
    let outcomes = exec.map(&goals, |goal| evaluate_goal(goal, ax, depth, false));
    let mut goals = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    goals.sort_by(|a, b| a.goal.cmp(&b.goal));
    Ok(CatalogReport { g: ax.g, axioms: ax.axioms, depth, goals })
}

/// One cell of the graded transport grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransportEntry {
    pub k: u32,
    pub l: u32,
    pub commutes: bool,
    pub steps: usize,
    /// Words discarded as factoring through a lower truncation.
    pub dropped: usize,
}

/// Graded transport over the whole `(k, l)` grid under the half axioms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransportReport {
    pub g: u32,
    pub entries: Vec<TransportEntry>,
    pub all_commute: bool,
}

impl TransportReport {
    pub fn to_json(&self) -> Value {
        json!(self)
    }
}

/// Verifies `F̄_{k+l}∘STAR_red = CUP∘(F̄_k ⊗ F̄_l)` on graded pieces for all
/// `k + l ≤ 2g`.
pub fn graded_ring_transport(g: u32, exec: Exec) -> Result<TransportReport> {
    let ax = AxiomSet::new(Axioms::Half, g);
    let cells = transport_instances(g)?;
    let entries = exec.map(&cells, |(k, l, id)| -> Result<TransportEntry> {
        let verdict = verify(id, ax, DEFAULT_DEPTH)?;
        Ok(match verdict {
            Verdict::Verified(trace) => TransportEntry {
                k: *k,
                l: *l,
                commutes: replay(id, ax, &trace).is_ok(),
                steps: trace.len(),
                dropped: trace.dropped(),
            },
            Verdict::NotWithinDepth { .. } => TransportEntry { k: *k, l: *l, commutes: false, steps: 0, dropped: 0 },
        })
    });
    let entries = entries.into_iter().collect::<Result<Vec<_>>>()?;
    let all_commute = entries.iter().all(|e| e.commutes);
    Ok(TransportReport { g, entries, all_commute })
}
