//! Exhaustive minimisation of `Σ Δ²` over all admissible cycles of small problems.
//!
//! Enumeration pins the first position to symbol `a_1` and visits every
//! distinct arrangement of the remaining items exactly once, in lexicographic
//! order.

use std::sync::Arc;
use std::thread;

use serde::Serialize;

use crate::cycle::{canonical_rotation, sum_of_squares, Cycle};
use crate::error::{Error, Result};
use crate::moments::variance_from_objective;
use crate::problem::SequencingProblem;
use crate::rational::ExactRational;

/// Default limit on `N` for enumeration.
pub const DEFAULT_CAP: usize = 16;

/// Rearranges `v` into the next lexicographically greater permutation.
/// Returns `false`, leaving `v` sorted ascending, once the last one is passed.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Distinct permutations of a multiset, in lexicographic order.
#[derive(Debug, Clone)]
pub struct MultisetPermutations {
    current: Vec<usize>,
    done: bool,
}

impl MultisetPermutations {
    pub fn new(mut items: Vec<usize>) -> Self {
        items.sort_unstable();
        Self { current: items, done: false }
    }
}

impl Iterator for MultisetPermutations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        self.done = !next_permutation(&mut self.current);
        Some(out)
    }
}

fn check_cap(problem: &SequencingProblem, cap: usize) -> Result<()> {
    if problem.total() > cap {
        Err(Error::CapExceeded { size: problem.total(), cap })
    } else {
        Ok(())
    }
}

/// Items left after pinning position 0 to symbol 0, sorted.
fn tail_items(problem: &SequencingProblem) -> Vec<usize> {
    let mut tail = Vec::with_capacity(problem.total() - 1);
    for (k, &m) in problem.multiplicities().iter().enumerate() {
        let count = if k == 0 { m - 1 } else { m };
        tail.extend(std::iter::repeat_n(k, count));
    }
    tail
}

/// Every admissible cycle with symbol `a_1` at position 0.
///
/// Yields `(N−1)! / ((m_1−1)! · Π_{k≥2} m_k!)` cycles.
pub fn enumerate_admissible(
    problem: Arc<SequencingProblem>,
    cap: usize,
) -> Result<impl Iterator<Item = Cycle>> {
    check_cap(&problem, cap)?;
    let perms = MultisetPermutations::new(tail_items(&problem));
    Ok(perms.map(move |tail| {
        let mut positions = Vec::with_capacity(tail.len() + 1);
        positions.push(0);
        positions.extend(tail);
        Cycle::new_unchecked(problem.clone(), positions)
    }))
}

/// `(N−1)! / ((m_1−1)! · Π_{k≥2} m_k!)`, computed without overflow for desk-scale sizes.
pub fn admissible_count(problem: &SequencingProblem) -> u128 {
    // multinomial built as a product of binomials
    let mut remaining = 0u128;
    let mut count = 1u128;
    for (k, &m) in problem.multiplicities().iter().enumerate() {
        let m = (if k == 0 { m - 1 } else { m }) as u128;
        for i in 1..=m {
            remaining += 1;
            count = count * remaining / i;
        }
    }
    count
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactResult {
    pub problem: SequencingProblem,
    /// Minimal `Σ Δ²`.
    pub min_objective: u64,
    pub min_variance: ExactRational,
    /// Minimising cycles in canonical rotation, deduplicated and sorted.
    #[serde(serialize_with = "serialize_witnesses")]
    pub witnesses: Vec<Cycle>,
    pub enumerated_count: u64,
}

fn serialize_witnesses<S: serde::Serializer>(w: &[Cycle], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(w.iter().map(|c| c.labels()))
}

#[derive(Debug, Default)]
struct Partial {
    best: Option<u64>,
    witnesses: Vec<Vec<usize>>,
    count: u64,
}

impl Partial {
    fn offer(&mut self, objective: u64, positions: &[usize]) {
        self.count += 1;
        match self.best {
            Some(b) if objective > b => {}
            Some(b) if objective == b => self.witnesses.push(positions.to_vec()),
            _ => {
                self.best = Some(objective);
                self.witnesses.clear();
                self.witnesses.push(positions.to_vec());
            }
        }
    }

    fn merge(mut self, other: Partial) -> Partial {
        self.count += other.count;
        match (self.best, other.best) {
            (_, None) => {}
            (None, Some(_)) => {
                self.best = other.best;
                self.witnesses = other.witnesses;
            }
            (Some(a), Some(b)) if b < a => {
                self.best = other.best;
                self.witnesses = other.witnesses;
            }
            (Some(a), Some(b)) if a == b => self.witnesses.extend(other.witnesses),
            _ => {}
        }
        self
    }
}

/// Scans all arrangements whose position 0 holds symbol 0 and whose next
/// positions hold `prefix`.
fn scan(problem: &SequencingProblem, prefix: &[usize]) -> Partial {
    let n = problem.alphabet_size();
    let mut rest = tail_items(problem);
    for &k in prefix {
        let at = rest.iter().position(|&x| x == k).expect("prefix drawn from the multiset");
        rest.remove(at);
    }
    let head = 1 + prefix.len();
    let mut positions = Vec::with_capacity(problem.total());
    positions.push(0);
    positions.extend_from_slice(prefix);
    positions.extend_from_slice(&rest);
    let mut scratch = vec![0usize; n];
    let mut partial = Partial::default();
    loop {
        partial.offer(sum_of_squares(&positions, &mut scratch), &positions);
        if !next_permutation(&mut positions[head..]) {
            break;
        }
    }
    partial
}

fn finish(problem: Arc<SequencingProblem>, partial: Partial) -> ExactResult {
    let min_objective = partial.best.expect("at least one arrangement");
    let mut witnesses: Vec<Cycle> = partial
        .witnesses
        .into_iter()
        .map(|p| canonical_rotation(&Cycle::new_unchecked(problem.clone(), p)))
        .collect();
    witnesses.sort_by(|a, b| a.positions().cmp(b.positions()));
    witnesses.dedup();
    ExactResult {
        min_variance: variance_from_objective(min_objective, problem.total(), problem.alphabet_size()),
        problem: (*problem).clone(),
        min_objective,
        witnesses,
        enumerated_count: partial.count,
    }
}

/// Exhaustive minimum of `Σ Δ²` (equivalently variance).
pub fn exact_min(problem: Arc<SequencingProblem>, cap: usize) -> Result<ExactResult> {
    check_cap(&problem, cap)?;
    let partial = scan(&problem, &[]);
    Ok(finish(problem, partial))
}

/// Same as [`exact_min`], with the search split by the symbol at position 1
/// across up to `workers` threads. The result does not depend on `workers`.
pub fn exact_min_parallel(problem: Arc<SequencingProblem>, cap: usize, workers: usize) -> Result<ExactResult> {
    check_cap(&problem, cap)?;
    if problem.total() < 2 || workers <= 1 {
        return exact_min(problem, cap);
    }
    let tail = tail_items(&problem);
    let mut firsts = tail.clone();
    firsts.dedup();
    let workers = workers.min(firsts.len());
    let chunks: Vec<Vec<usize>> = (0..workers).map(|w| firsts.iter().copied().skip(w).step_by(workers).collect()).collect();
    let partial = thread::scope(|s| {
        let handles: Vec<_> = chunks
            .iter()
            .map(|chunk| {
                let problem = &problem;
                s.spawn(move || {
                    chunk.iter().fold(Partial::default(), |acc, &k| acc.merge(scan(problem, &[k])))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .fold(Partial::default(), Partial::merge)
    });
    Ok(finish(problem, partial))
}
