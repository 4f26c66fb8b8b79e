//! Machine checks of the prism statements against the exact solver.
//!
//! Each check returns a [`VerificationReport`]. A counterexample carries a
//! [`Certificate`] holding everything needed to recompute the offending value
//! from scratch; [`Certificate::reproduces`] does exactly that.

mod claims;
mod pairing;

pub use claims::*;
pub use pairing::*;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::Graph;
use crate::prism::{Permutation, PrismGraph};
use crate::proportion::Proportion;
use crate::solver;
use crate::sweep::Mode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    Prop1,
    Prop2,
    Prop3,
    Prop4,
    Prop5,
    Prop6,
    Prop7,
    Remark,
    GuBound,
}

impl std::str::FromStr for Claim {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s.to_ascii_lowercase().trim_start_matches("prop") {
            "1" => Claim::Prop1,
            "2" => Claim::Prop2,
            "3" => Claim::Prop3,
            "4" => Claim::Prop4,
            "5" => Claim::Prop5,
            "6" => Claim::Prop6,
            "7" => Claim::Prop7,
            "remark" => Claim::Remark,
            "gu" | "gu-bound" => Claim::GuBound,
            _ => return Err(format!("unknown claim {s:?}")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Counterexample,
    PreconditionsUnmet,
}

/// Which graph a certificate's value was computed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Base,
    Prism,
}

/// What the claim predicted for the certified value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Equals(usize),
    NotEquals(usize),
    AtMost(usize),
    AtLeast(usize),
}

impl Expectation {
    pub fn accepts(self, value: usize) -> bool {
        match self {
            Expectation::Equals(x) => value == x,
            Expectation::NotEquals(x) => value != x,
            Expectation::AtMost(x) => value <= x,
            Expectation::AtLeast(x) => value >= x,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub permutation: Permutation,
    pub target: Target,
    pub p: Proportion,
    pub computed: usize,
    pub expected: Expectation,
    /// Sorted vertex lists; the first is a minimum p-dominating set of the target.
    pub witnesses: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl Certificate {
    /// Computes `γ_p` on the target and records the discrepancy.
    pub(crate) fn record(
        g: &Graph,
        pi: &Permutation,
        target: Target,
        p: Proportion,
        expected: Expectation,
        note: impl Into<String>,
    ) -> Result<Certificate> {
        let sol = match target {
            Target::Base => solver::gamma_p(g, p),
            Target::Prism => solver::gamma_p(PrismGraph::build(g, pi)?.graph(), p),
        };
        Ok(Certificate {
            n: g.n(),
            edges: g.edges().collect(),
            permutation: pi.clone(),
            target,
            p,
            computed: sol.size,
            expected,
            witnesses: vec![sol.witness.to_vec()],
            note: note.into(),
        })
    }

    pub fn graph(&self) -> Result<Graph> {
        Graph::from_edges(self.n, self.edges.iter().copied())
    }

    /// Recomputes `γ_p` on the target from the embedded data.
    pub fn recompute(&self) -> Result<usize> {
        let g = self.graph()?;
        Ok(match self.target {
            Target::Base => solver::gamma_p(&g, self.p).size,
            Target::Prism => solver::gamma_p(PrismGraph::build(&g, &self.permutation)?.graph(), self.p).size,
        })
    }

    /// A fresh solver run gives the same value and it still contradicts the
    /// expectation.
    pub fn reproduces(&self) -> Result<bool> {
        let v = self.recompute()?;
        Ok(v == self.computed && !self.expected.accepts(v))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub claim: Claim,
    pub instance: String,
    pub mode: String,
    pub verdict: Verdict,
    /// Number of (permutation, proportion) evaluations performed.
    pub checks: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prop4: Option<Prop4Evaluation>,
}

impl VerificationReport {
    pub(crate) fn new(claim: Claim, instance: impl Into<String>, mode: impl Into<String>) -> Self {
        VerificationReport {
            claim,
            instance: instance.into(),
            mode: mode.into(),
            verdict: Verdict::Holds,
            checks: 0,
            certificate: None,
            notes: Vec::new(),
            prop4: None,
        }
    }

    pub(crate) fn unmet(mut self, why: impl Into<String>) -> Self {
        self.verdict = Verdict::PreconditionsUnmet;
        self.notes.push(why.into());
        self
    }

    pub(crate) fn refuted(mut self, cert: Certificate) -> Self {
        self.verdict = Verdict::Counterexample;
        self.certificate = Some(cert);
        self
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

/// Outcome of checking one permutation: number of evaluations and the first
/// failure, if any.
pub(crate) type Outcome = (usize, Option<Certificate>);

/// Runs `check` for every permutation in parallel and keeps the first failure
/// in permutation order, so the result is independent of scheduling.
pub(crate) fn over_permutations<F>(perms: &[Permutation], check: F) -> Result<Outcome>
where
    F: Fn(&Permutation) -> Result<Outcome> + Sync,
{
    let outcomes = perms.par_iter().map(&check).collect::<Result<Vec<_>>>()?;
    let checks = outcomes.iter().map(|o| o.0).sum();
    Ok((checks, outcomes.into_iter().find_map(|o| o.1)))
}

/// Runs a single-permutation check for every permutation of `mode` and
/// merges the reports: the first counterexample in permutation order wins,
/// then the first unmet precondition; otherwise the claim holds. `checks`
/// is summed over all permutations.
pub fn verify_for_all<F>(g: &Graph, mode: Mode, cap: usize, check: F) -> Result<VerificationReport>
where
    F: Fn(&Permutation) -> Result<VerificationReport> + Sync,
{
    let perms = mode.permutations(g.n(), cap)?;
    let reports = perms.par_iter().map(&check).collect::<Result<Vec<_>>>()?;
    let checks = reports.iter().map(|r| r.checks).sum();
    let pick = reports
        .iter()
        .position(|r| r.verdict == Verdict::Counterexample)
        .or_else(|| reports.iter().position(|r| r.verdict == Verdict::PreconditionsUnmet))
        .unwrap_or(0);
    let mut merged = reports.into_iter().nth(pick).expect("modes yield at least one permutation");
    merged.checks = checks;
    merged.mode = format!("{mode}, {} permutations", perms.len());
    Ok(merged)
}

/// Probe points for the half-open interval `(lo, hi]`: just above `lo`, the
/// midpoint and `hi`. `resolution` is the order of the graph whose step
/// function is probed; its breakpoints are multiples of `1/resolution`.
pub fn interval_probes(lo: (u64, u64), hi: Proportion, resolution: usize) -> Result<Vec<Proportion>> {
    let mut probes = vec![
        Proportion::just_above_raw(lo, resolution)?,
        Proportion::midpoint_raw(lo, (hi.num(), hi.den()))?,
        hi,
    ];
    probes.sort();
    probes.dedup();
    Ok(probes)
}

pub(crate) fn describe(g: &Graph) -> String {
    format!("n={} m={} edges={:?}", g.n(), g.m(), g.edges().collect::<Vec<_>>())
}
