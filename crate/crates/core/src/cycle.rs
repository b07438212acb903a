//! Admissible cycles, forward distances and rotations.

use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::problem::SequencingProblem;

/// A circular arrangement of all items of a [`SequencingProblem`].
///
/// Positions hold 0-based symbol indices. Construction checks admissibility, so
/// every symbol occurs exactly as many times as its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    problem: Arc<SequencingProblem>,
    positions: Vec<usize>,
}

/// Forward distances of a cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceProfile {
    /// `deltas[j]`: steps from position `j` forward to the next instance of the same symbol.
    pub deltas: Vec<usize>,
    /// Distances grouped by symbol, each group in position order.
    pub by_symbol: Vec<Vec<usize>>,
}

impl DistanceProfile {
    pub fn sum_of_squares(&self) -> u64 {
        self.deltas.iter().map(|&d| (d as u64) * (d as u64)).sum()
    }
}

impl Cycle {
    pub fn new(problem: Arc<SequencingProblem>, positions: Vec<usize>) -> Result<Self> {
        let n = problem.alphabet_size();
        if positions.len() != problem.total() {
            return Err(Error::CycleLength { expected: problem.total(), actual: positions.len() });
        }
        let mut counts = vec![0usize; n];
        for &k in &positions {
            if k >= n {
                return Err(Error::SymbolOutOfRange { index: k, size: n });
            }
            counts[k] += 1;
        }
        for (k, &count) in counts.iter().enumerate() {
            if count != problem.multiplicity(k) {
                return Err(Error::NotAdmissible {
                    label: problem.label(k).to_owned(),
                    expected: problem.multiplicity(k),
                    actual: count,
                });
            }
        }
        Ok(Self { problem, positions })
    }

    /// Skips the admissibility check; callers guarantee it.
    pub(crate) fn new_unchecked(problem: Arc<SequencingProblem>, positions: Vec<usize>) -> Self {
        debug_assert!(Self::new(problem.clone(), positions.clone()).is_ok());
        Self { problem, positions }
    }

    /// Builds a cycle from symbol labels.
    pub fn from_labels<S: AsRef<str>>(problem: Arc<SequencingProblem>, labels: &[S]) -> Result<Self> {
        let positions = labels
            .iter()
            .map(|l| problem.index_of(l.as_ref()).ok_or_else(|| Error::UnknownSymbol(l.as_ref().to_owned())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(problem, positions)
    }

    pub fn problem(&self) -> &SequencingProblem {
        &self.problem
    }

    pub fn problem_arc(&self) -> &Arc<SequencingProblem> {
        &self.problem
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.positions.iter().map(|&k| self.problem.label(k)).collect()
    }

    pub fn distances(&self) -> DistanceProfile {
        distances(self)
    }

    /// Cycle shifted left by `r` steps: position `j` of the result holds position `j + r` of `self`.
    pub fn rotate(&self, r: usize) -> Cycle {
        let mut positions = self.positions.clone();
        if !positions.is_empty() {
            let len = positions.len();
            positions.rotate_left(r % len);
        }
        Cycle { problem: self.problem.clone(), positions }
    }

    pub fn canonical(&self) -> Cycle {
        canonical_rotation(self)
    }

    /// Equality up to rotation.
    pub fn rotation_eq(&self, other: &Cycle) -> bool {
        self.problem == other.problem
            && self.len() == other.len()
            && canonical_rotation(self).positions == canonical_rotation(other).positions
    }

    /// One character per item (the first character of each label), when the
    /// labels allow it.
    pub fn to_compact(&self) -> Option<String> {
        if !self.problem.has_compact_form() {
            return None;
        }
        Some(self.positions.iter().filter_map(|&k| self.problem.label(k).chars().next()).collect())
    }

    /// Compact form if available, otherwise labels separated by spaces.
    pub fn display_string(&self) -> String {
        self.to_compact().unwrap_or_else(|| self.labels().join(" "))
    }
}

/// `[a_1 repeated m_1, ..., a_n repeated m_n]`.
pub fn base_cycle(problem: Arc<SequencingProblem>) -> Cycle {
    let positions = problem
        .multiplicities()
        .iter()
        .enumerate()
        .flat_map(|(k, &m)| std::iter::repeat_n(k, m))
        .collect();
    Cycle::new_unchecked(problem, positions)
}

/// Forward distance of every position to the next instance of its symbol.
/// A symbol with a single instance gets distance `N`.
pub fn distances(cycle: &Cycle) -> DistanceProfile {
    let n = cycle.problem.alphabet_size();
    let deltas = forward_distances(&cycle.positions, n);
    let mut by_symbol: Vec<Vec<usize>> =
        cycle.problem.multiplicities().iter().map(|&m| Vec::with_capacity(m)).collect();
    for (&k, &d) in cycle.positions.iter().zip(&deltas) {
        by_symbol[k].push(d);
    }
    DistanceProfile { deltas, by_symbol }
}

/// Distances over a raw index sequence in which every symbol `< n` occurs.
pub(crate) fn forward_distances(positions: &[usize], n: usize) -> Vec<usize> {
    let len = positions.len();
    let mut next = vec![usize::MAX; n];
    let mut deltas = vec![0usize; len];
    for j in (0..2 * len).rev() {
        let k = positions[j % len];
        if j < len {
            deltas[j] = next[k] - j;
        }
        next[k] = j;
    }
    deltas
}

/// Σ Δ_j² of a raw index sequence, without allocating a profile.
pub(crate) fn sum_of_squares(positions: &[usize], next: &mut [usize]) -> u64 {
    let len = positions.len();
    next.iter_mut().for_each(|x| *x = usize::MAX);
    let mut total = 0u64;
    for j in (0..2 * len).rev() {
        let k = positions[j % len];
        if j < len {
            let d = (next[k] - j) as u64;
            total += d * d;
        }
        next[k] = j;
    }
    total
}

/// Lexicographically least rotation of a cycle.
pub fn canonical_rotation(cycle: &Cycle) -> Cycle {
    cycle.rotate(least_rotation(&cycle.positions))
}

/// Start index of the least rotation (Booth's algorithm, linear time).
pub fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let len = s.len();
    if len == 0 {
        return 0;
    }
    let at = |i: usize| &s[i % len];
    let mut failure = vec![-1isize; 2 * len];
    let mut k = 0usize;
    for j in 1..2 * len {
        let sj = at(j);
        let mut i = failure[j - k - 1];
        while i != -1 && sj != at(k + i as usize + 1) {
            if sj < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = failure[i as usize];
        }
        if sj != at((k as isize + i + 1) as usize) {
            // i == -1 here
            if sj < at(k) {
                k = j;
            }
            failure[j - k] = -1;
        } else {
            failure[j - k] = i + 1;
        }
    }
    k % len
}

#[derive(Serialize, Deserialize)]
struct CycleRepr {
    problem: SequencingProblem,
    sequence: Vec<String>,
}

impl Serialize for Cycle {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CycleRepr {
            problem: (*self.problem).clone(),
            sequence: self.labels().into_iter().map(str::to_owned).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cycle {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = CycleRepr::deserialize(deserializer)?;
        Cycle::from_labels(Arc::new(repr.problem), &repr.sequence).map_err(serde::de::Error::custom)
    }
}
