//! Bookkeeping for terms dropped while instantiating relations or pushing
//! forward: every dropped term gets exactly one entry.

use serde::Serialize;

/// Why a term was dropped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum JustificationEntry {
    /// The graph or multidegree is not φ-stable (or the graph is not stable).
    StabilityPrune { graph: String, reason: String },
    /// The stabilised graph has higher codimension than the pushforward class.
    DimensionPrune { graph: String, stratum_codim: u32, target_codim: i64 },
    /// The stated coefficient vanishes (a multiple of `g₁` or `d` at zero).
    CoefficientZero { graph: String, factor: String },
    /// Perversity at most `2g − 1`, so the pushforward vanishes.
    PerversityVanish { term: String, perversity: u32, bound: u32 },
    /// The relation's unstated terms, which vanish for dimension reasons.
    ElidedOtherTerms { relation: String },
}

/// Ordered list of [`JustificationEntry`]s.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct JustificationLog(Vec<JustificationEntry>);

impl JustificationLog {
    pub fn push(&mut self, entry: JustificationEntry) {
        self.0.push(entry);
    }

    pub fn entries(&self) -> &[JustificationEntry] {
        &self.0
    }

    pub fn extend(&mut self, other: JustificationLog) {
        self.0.extend(other.0);
    }

    pub fn count(&self, pred: impl Fn(&JustificationEntry) -> bool) -> usize {
        self.0.iter().filter(|e| pred(e)).count()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("log entries serialise")
    }
}
