//! End-to-end verification runs for the avoidability results, each producing
//! a [`ReplayReport`].
//!
//! Every universally quantified claim is checked on a finite family of
//! source words. A report records whether that family is large enough to
//! cover the claim in full (`paper` regime) or only a truncation of it
//! (`desk` regime).

mod pipelines;
mod rauzy;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use pipelines::{
    replay_formula_nonoccurrence, replay_nonavoid2, replay_phi_avoidance, replay_psi,
    replay_theorem1_lower, replay_theorem1_upper, replay_thm2, replay_thm3, replay_transfer,
    CapChoice, NonOccurrenceJob, DEFAULT_SOURCE_SPEC,
};
pub use rauzy::{
    construct_phi_occurrence, lcm_upto, phi_index, rauzy_graph, shortest_circuit, Circuit,
    RauzyGraph,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Corroborated,
    Violated,
    Inconclusive,
}

impl Verdict {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Corroborated => 0,
            Verdict::Violated => 1,
            Verdict::Inconclusive => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Corroborated => "corroborated",
            Verdict::Violated => "violated",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// The checked family truncates the quantifier of the claim.
    Desk,
    /// The checked family covers every case the claim's argument needs.
    Paper,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Desk => "desk",
            Regime::Paper => "paper",
        })
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "desk" => Ok(Regime::Desk),
            "paper" => Ok(Regime::Paper),
            other => Err(Error::Parameter(format!("unknown regime {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayStats {
    /// Source words (or search-tree words) examined.
    pub words_checked: u64,
    /// Host words searched or tested.
    pub images_checked: u64,
    /// Distinct host words after deduplication.
    pub distinct_images: u64,
    /// Host words on which the checked property failed.
    pub failures: u64,
    /// Occurrence-search candidates tried.
    pub nodes: u64,
    /// Candidates rejected by a factor test.
    pub pruned: u64,
    pub wall_time_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplayReport {
    pub pipeline: String,
    pub params: serde_json::Value,
    pub verdict: Verdict,
    pub regime: Regime,
    /// For `violated`, the canonical first counterexample comes first.
    pub witnesses: Vec<serde_json::Value>,
    pub stats: ReplayStats,
    pub notes: Vec<String>,
}

impl ReplayReport {
    /// The report with timing zeroed, for comparing runs.
    pub fn without_timing(&self) -> ReplayReport {
        let mut r = self.clone();
        r.stats.wall_time_ms = 0;
        r
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl fmt::Display for ReplayReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {} ({} regime)", self.pipeline, self.verdict, self.regime)?;
        writeln!(f, "  params: {}", self.params)?;
        let s = &self.stats;
        writeln!(
            f,
            "  words {} / images {} (distinct {}) / failures {} / nodes {} / pruned {} / {} ms",
            s.words_checked, s.images_checked, s.distinct_images, s.failures, s.nodes, s.pruned, s.wall_time_ms
        )?;
        for w in &self.witnesses {
            writeln!(f, "  witness: {w}")?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
