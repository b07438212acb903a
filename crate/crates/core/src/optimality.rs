//! Optimal distance prescriptions, the binary optimality test, and the
//! per-symbol relaxation bound on `Σ Δ²`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::cycle::Cycle;
use crate::error::Result;
use crate::problem::SequencingProblem;
use crate::rational::ExactRational;

/// Distances an optimal binary cycle must give the instances of one symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Prescription {
    /// `m_k | N`: every instance sits at distance `N / m_k`.
    Uniform { distance: usize },
    /// Otherwise `lower_count` instances at `⌊N/m_k⌋` and `upper_count` at `⌈N/m_k⌉`.
    TwoValued { lower: usize, upper: usize, lower_count: usize, upper_count: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DistanceSpec {
    pub symbol: usize,
    pub multiplicity: usize,
    pub total: usize,
    #[serde(flatten)]
    pub prescription: Prescription,
}

impl DistanceSpec {
    pub fn is_divisible(&self) -> bool {
        matches!(self.prescription, Prescription::Uniform { .. })
    }

    /// Prescribed multiset as `distance -> count`.
    pub fn expected_counts(&self) -> BTreeMap<usize, usize> {
        match self.prescription {
            Prescription::Uniform { distance } => BTreeMap::from([(distance, self.multiplicity)]),
            Prescription::TwoValued { lower, upper, lower_count, upper_count } => {
                BTreeMap::from([(lower, lower_count), (upper, upper_count)])
            }
        }
    }

    pub fn matches(&self, distances: &[usize]) -> bool {
        histogram(distances) == self.expected_counts()
    }
}

pub fn distance_spec(problem: &SequencingProblem, k: usize) -> Result<DistanceSpec> {
    problem.check_symbol(k)?;
    let total = problem.total();
    let m = problem.multiplicity(k);
    let prescription = if total.is_multiple_of(m) {
        Prescription::Uniform { distance: total / m }
    } else {
        let lower = total / m;
        let upper = lower + 1;
        Prescription::TwoValued { lower, upper, lower_count: m * upper - total, upper_count: total - m * lower }
    };
    Ok(DistanceSpec { symbol: k, multiplicity: m, total, prescription })
}

pub(crate) fn histogram(distances: &[usize]) -> BTreeMap<usize, usize> {
    let mut counts = BTreeMap::new();
    for &d in distances {
        *counts.entry(d).or_insert(0) += 1;
    }
    counts
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpectedDistances {
    pub divisible: bool,
    #[serde(flatten)]
    pub prescription: Prescription,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolDiagnostic {
    pub label: String,
    pub expected: ExpectedDistances,
    /// Observed `distance -> count`.
    pub actual: BTreeMap<usize, usize>,
    pub conforms: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub optimal: bool,
    pub symbols: Vec<SymbolDiagnostic>,
}

/// Per-symbol comparison of actual distances against their prescription.
///
/// Valid for any alphabet size, but only a diagnostic: a full match certifies
/// minimal variance for binary alphabets alone.
pub fn conformance(cycle: &Cycle) -> Vec<SymbolDiagnostic> {
    let problem = cycle.problem();
    let profile = cycle.distances();
    (0..problem.alphabet_size())
        .map(|k| {
            let spec = distance_spec(problem, k).expect("index in range");
            let actual = histogram(&profile.by_symbol[k]);
            SymbolDiagnostic {
                label: problem.label(k).to_owned(),
                expected: ExpectedDistances { divisible: spec.is_divisible(), prescription: spec.prescription },
                conforms: actual == spec.expected_counts(),
                actual,
            }
        })
        .collect()
}

/// Necessary and sufficient minimal-variance test for binary cycles.
pub fn verify_optimal(cycle: &Cycle) -> Result<Verdict> {
    cycle.problem().require_binary()?;
    let symbols = conformance(cycle);
    Ok(Verdict { optimal: symbols.iter().all(|s| s.conforms), symbols })
}

/// `Σ_k N²/m_k`, a lower bound on `Σ Δ²` over all admissible cycles.
pub fn lower_bound(problem: &SequencingProblem) -> ExactRational {
    let n2 = BigInt::from(problem.total()).pow(2);
    problem
        .multiplicities()
        .iter()
        .map(|&m| ExactRational::new(n2.clone(), m).expect("m is positive"))
        .sum()
}

/// [`lower_bound`] on the variance scale, `LB/N − n²`. May be negative.
pub fn lower_bound_variance(problem: &SequencingProblem) -> ExactRational {
    let n = problem.alphabet_size() as i64;
    &lower_bound(problem) / &ExactRational::from_integer(problem.total()) - ExactRational::from_integer(n * n)
}

/// True when no two instances of symbol `k` are adjacent.
pub fn is_unclustered(cycle: &Cycle, k: usize) -> Result<bool> {
    cycle.problem().check_symbol(k)?;
    Ok(cycle.distances().by_symbol[k].iter().all(|&d| d > 1))
}
