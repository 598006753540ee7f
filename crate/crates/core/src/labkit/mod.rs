//! Seeded experiments that check the algebraic claims against closed forms,
//! plus the instance file format used by the command-line tool.

pub mod checks;
pub mod format;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::instances::InstanceError;
use crate::modelings::ModelingError;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("unknown property {0:?}")]
    UnknownProperty(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Modeling(#[from] ModelingError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    NbRank,
    BbIndependence,
    Q0Span,
    LtIndependence,
    Q1Correspondence,
    QtildeRelation,
    UnfoldSm,
    MmRank,
    SyzygyCount,
    Decode,
    HybridCorrect,
    HybridMinrank,
}

impl Property {
    pub const ALL: [Property; 12] = [
        Property::NbRank,
        Property::BbIndependence,
        Property::Q0Span,
        Property::LtIndependence,
        Property::Q1Correspondence,
        Property::QtildeRelation,
        Property::UnfoldSm,
        Property::MmRank,
        Property::SyzygyCount,
        Property::Decode,
        Property::HybridCorrect,
        Property::HybridMinrank,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::NbRank => "nb-rank",
            Property::BbIndependence => "bb-independence",
            Property::Q0Span => "q0-span",
            Property::LtIndependence => "lt-independence",
            Property::Q1Correspondence => "q1-correspondence",
            Property::QtildeRelation => "qtilde-relation",
            Property::UnfoldSm => "unfold-sm",
            Property::MmRank => "mm-rank",
            Property::SyzygyCount => "syzygy-count",
            Property::Decode => "decode",
            Property::HybridCorrect => "hybrid-correct",
            Property::HybridMinrank => "hybrid-minrank",
        }
    }

    /// Fraction of trials that must pass; below 1 for genericity claims.
    pub fn threshold(self) -> f64 {
        match self {
            Property::MmRank | Property::SyzygyCount => GENERICITY_THRESHOLD,
            _ => 1.0,
        }
    }

    /// Parameters and trial count used by the default suite.
    pub fn defaults(self) -> (LabParams, usize) {
        let small = LabParams::rd(2, 7, 8, 4, 2);
        match self {
            Property::NbRank | Property::BbIndependence | Property::SyzygyCount => (small, 20),
            Property::UnfoldSm => (LabParams::rd(2, 3, 5, 2, 1), 10),
            Property::MmRank => (LabParams { unique: true, ..small }, 50),
            Property::Decode => (LabParams { unique: true, modeling: "smplus".into(), ..small }, 50),
            Property::HybridCorrect => (LabParams::rd(2, 7, 12, 5, 2), 30),
            Property::HybridMinrank => (LabParams::rd(2, 6, 8, 14, 2), 30),
            _ => (small, 10),
        }
    }

    fn run(self, p: &LabParams, seed: u64) -> Result<TrialOutcome, LabError> {
        match self {
            Property::NbRank => checks::nb_rank(p, seed),
            Property::BbIndependence => checks::bb_independence(p, seed),
            Property::Q0Span => checks::q0_span(p, seed),
            Property::LtIndependence => checks::lt_independence(p, seed),
            Property::Q1Correspondence => checks::q1_correspondence(p, seed),
            Property::QtildeRelation => checks::qtilde_relation(p, seed),
            Property::UnfoldSm => checks::unfold_sm(p, seed),
            Property::MmRank => checks::mm_rank(p, seed),
            Property::SyzygyCount => checks::syzygy_count(p, seed),
            Property::Decode => checks::decode(p, seed),
            Property::HybridCorrect => checks::hybrid_rd(p, seed),
            Property::HybridMinrank => checks::hybrid_minrank(p, seed),
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = LabError;
    fn from_str(s: &str) -> Result<Self, LabError> {
        Property::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| LabError::UnknownProperty(s.into()))
    }
}

/// Pass rate required of claims that hold only generically.
pub const GENERICITY_THRESHOLD: f64 = 0.95;

/// Instance parameters; for MinRank properties `k` is K.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabParams {
    pub q: u64,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    /// Macaulay degree (rank properties) or degree cap (decode).
    pub b: usize,
    /// Guessed positions for the hybrid properties.
    pub a: usize,
    /// Resample RD instances until the planted error is the only decoding.
    pub unique: bool,
    /// auto, mm or smplus (decode only).
    pub modeling: String,
}

impl LabParams {
    pub fn rd(q: u64, m: usize, n: usize, k: usize, r: usize) -> LabParams {
        LabParams { q, m, n, k, r, b: 1, a: 1, unique: false, modeling: "auto".into() }
    }

    pub fn with_b(self, b: usize) -> LabParams {
        LabParams { b, ..self }
    }
}

/// The small parameter sets the experiments are sized for.
pub const PRESETS: [(u64, usize, usize, usize, usize); 5] = [(2, 3, 5, 2, 1), (2, 7, 8, 4, 2), (2, 7, 10, 3, 2), (2, 7, 12, 5, 2), (4, 5, 8, 3, 2)];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialOutcome {
    pub seed: u64,
    pub pass: bool,
    pub measured: BTreeMap<String, i64>,
    pub expected: BTreeMap<String, i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub property: Property,
    pub params: LabParams,
    pub seed: u64,
    pub trials: usize,
    pub passes: usize,
    pub threshold: f64,
    /// Aggregates over trials, such as medians.
    pub summary: BTreeMap<String, f64>,
    pub verdict: bool,
    pub outcomes: Vec<TrialOutcome>,
}

impl ExperimentReport {
    pub fn failures(&self) -> impl Iterator<Item = &TrialOutcome> {
        self.outcomes.iter().filter(|o| !o.pass)
    }

    pub fn pass_rate(&self) -> f64 {
        if self.trials == 0 {
            return 1.0;
        }
        self.passes as f64 / self.trials as f64
    }
}

fn median(mut v: Vec<i64>) -> f64 {
    if v.is_empty() {
        return f64::NAN;
    }
    v.sort_unstable();
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid] as f64
    } else {
        (v[mid - 1] + v[mid]) as f64 / 2.0
    }
}

/// Runs `property` on `trials` instances with seeds seed, seed+1, ….
pub fn verify(property: Property, params: &LabParams, trials: usize, seed: u64) -> Result<ExperimentReport, LabError> {
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|t| property.run(params, seed.wrapping_add(t as u64)))
        .collect::<Result<Vec<_>, _>>()?;
    let passes = outcomes.iter().filter(|o| o.pass).count();
    let threshold = property.threshold();
    let mut summary = BTreeMap::new();
    let mut verdict = passes as f64 >= threshold * trials as f64;
    if matches!(property, Property::HybridCorrect | Property::HybridMinrank) {
        let med = median(outcomes.iter().map(|o| o.measured["probabilistic_trials"]).collect());
        let bound = 4 * params.q.pow((params.a * params.r) as u32);
        summary.insert("median_probabilistic_trials".into(), med);
        summary.insert("median_bound".into(), bound as f64);
        verdict &= med <= bound as f64;
    }
    summary.insert("pass_rate".into(), if trials == 0 { 1.0 } else { passes as f64 / trials as f64 });
    Ok(ExperimentReport { property, params: params.clone(), seed, trials, passes, threshold, summary, verdict, outcomes })
}

fn kv(map: &BTreeMap<String, i64>) -> String {
    map.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for ExperimentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        writeln!(
            f,
            "{} (q,m,n,k,r)=({},{},{},{},{}) b={} a={}: {}/{} passed, threshold {:.0}% -> {}",
            self.property,
            p.q,
            p.m,
            p.n,
            p.k,
            p.r,
            p.b,
            p.a,
            self.passes,
            self.trials,
            self.threshold * 100.0,
            if self.verdict { "PASS" } else { "FAIL" }
        )?;
        for (k, v) in &self.summary {
            writeln!(f, "  {k}: {v}")?;
        }
        if let Some(first) = self.outcomes.first() {
            writeln!(f, "  expected: {}", kv(&first.expected))?;
        }
        for o in &self.outcomes {
            let mark = if o.pass { "ok  " } else { "FAIL" };
            write!(f, "  {mark} seed {}: {}", o.seed, kv(&o.measured))?;
            if !o.pass && o.expected != self.outcomes[0].expected {
                write!(f, " (expected {})", kv(&o.expected))?;
            }
            match &o.note {
                Some(note) => writeln!(f, " [{note}]")?,
                None => writeln!(f)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn property_names_round_trip() {
        for p in Property::ALL {
            assert_eq!(p.name().parse::<Property>().unwrap(), p);
        }
        assert!("no-such".parse::<Property>().is_err());
    }

    #[test]
    fn reports_are_reproducible() {
        let p = LabParams::rd(2, 7, 8, 4, 2);
        let a = verify(Property::MmRank, &p, 4, 11).unwrap();
        let b = verify(Property::MmRank, &p, 4, 11).unwrap();
        assert_eq!(a, b);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn median_of_counts() {
        assert_eq!(median(vec![5, 1, 3]), 3.0);
        assert_eq!(median(vec![4, 1, 3, 2]), 2.5);
    }
}
