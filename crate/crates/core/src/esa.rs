//! The Euclidean sequencing construction for binary alphabets.
//!
//! Each iteration divides the larger count `P` by the smaller `D`, then
//! builds the next pair of blocks `A' = A^Q B`, `B' = A` over the base
//! alphabet. Iteration stops at a null remainder, and the cycle is the last
//! `A` block repeated `gcd(m_1, m_2)` times.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::cycle::Cycle;
use crate::error::{Error, Result};
use crate::problem::SequencingProblem;

/// Greatest common divisor by repeated division.
pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A block `A_i` or `B_i`: its formal product and its expansion over the
/// base alphabet (symbol indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub name: String,
    pub formula: String,
    pub expansion: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EsaStep {
    pub index: usize,
    /// `N_i = P_i + D_i`
    pub size: u64,
    /// `P_i`, the count of the current major block
    pub major_count: u64,
    /// `D_i`, the count of the current minor block
    pub minor_count: u64,
    pub quotient: u64,
    pub remainder: u64,
    /// `A_i = A_{i-1}^{Q_i} B_{i-1}`
    pub major_block: Block,
    /// `B_i = A_{i-1}`
    pub minor_block: Block,
}

/// Full log of one run, one entry per iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EsaTrace {
    /// Symbol index used as `A_0` (largest multiplicity, first symbol on ties).
    pub major_symbol: usize,
    /// Symbol index used as `B_0`.
    pub minor_symbol: usize,
    pub steps: Vec<EsaStep>,
    /// `D_s`, equal to `gcd(m_1, m_2)`.
    pub final_power: u64,
    pub result: Cycle,
}

/// Runs the construction on a binary problem.
pub fn esa_solve(problem: Arc<SequencingProblem>) -> Result<EsaTrace> {
    problem.require_binary()?;
    let (m1, m2) = (problem.multiplicity(0), problem.multiplicity(1));
    let (major_symbol, minor_symbol) = if m1 >= m2 { (0, 1) } else { (1, 0) };

    let mut major = Block {
        name: "A0".into(),
        formula: problem.label(major_symbol).to_owned(),
        expansion: vec![major_symbol],
    };
    let mut minor = Block {
        name: "B0".into(),
        formula: problem.label(minor_symbol).to_owned(),
        expansion: vec![minor_symbol],
    };
    let mut p = problem.multiplicity(major_symbol) as u64;
    let mut d = problem.multiplicity(minor_symbol) as u64;
    let mut steps = Vec::new();

    loop {
        let index = steps.len() + 1;
        let quotient = p / d;
        let remainder = p - quotient * d;

        let mut expansion = Vec::with_capacity(major.expansion.len() * quotient as usize + minor.expansion.len());
        for _ in 0..quotient {
            expansion.extend_from_slice(&major.expansion);
        }
        expansion.extend_from_slice(&minor.expansion);
        let next_major = Block {
            name: format!("A{index}"),
            formula: format!("{}^{} {}", major.name, quotient, minor.name),
            expansion,
        };
        let next_minor = Block { name: format!("B{index}"), formula: major.name.clone(), expansion: major.expansion };

        steps.push(EsaStep {
            index,
            size: p + d,
            major_count: p,
            minor_count: d,
            quotient,
            remainder,
            major_block: next_major.clone(),
            minor_block: next_minor.clone(),
        });
        if remainder == 0 {
            let mut positions = Vec::with_capacity(problem.total());
            for _ in 0..d {
                positions.extend_from_slice(&next_major.expansion);
            }
            let result = Cycle::new_unchecked(problem, positions);
            return Ok(EsaTrace { major_symbol, minor_symbol, steps, final_power: d, result });
        }
        major = next_major;
        minor = next_minor;
        (p, d) = (d, remainder);
    }
}

/// `(a_1 a_2 … a_n)^m` for a problem whose multiplicities all equal `m`.
pub fn uniform_cycle(problem: Arc<SequencingProblem>) -> Result<Cycle> {
    let m = problem.multiplicity(0);
    if problem.multiplicities().iter().any(|&x| x != m) {
        return Err(Error::UnequalMultiplicities);
    }
    let pattern: Vec<usize> = (0..problem.alphabet_size()).collect();
    Ok(Cycle::new_unchecked(problem, pattern.repeat(m)))
}

/// `a_1^{m_1}`, the only cycle of a one-symbol problem.
pub fn single_symbol_cycle(problem: Arc<SequencingProblem>) -> Result<Cycle> {
    match problem.alphabet_size() {
        1 => {
            let m = problem.multiplicity(0);
            Ok(Cycle::new_unchecked(problem, vec![0; m]))
        }
        n => Err(Error::Convention(format!("single-symbol constructor needs one symbol, got {n}"))),
    }
}

/// Minimal-variance cycle wherever one is known by construction: one symbol,
/// two symbols, or any alphabet with equal multiplicities.
pub fn solve(problem: Arc<SequencingProblem>) -> Result<Cycle> {
    match problem.alphabet_size() {
        1 => single_symbol_cycle(problem),
        2 => Ok(esa_solve(problem)?.result),
        n => uniform_cycle(problem).map_err(|_| Error::NotBinary(n)),
    }
}

/// Count of base-10 digits of a positive integer.
pub fn decimal_digits(mut x: u64) -> u32 {
    let mut digits = 1;
    while x >= 10 {
        x /= 10;
        digits += 1;
    }
    digits
}

impl EsaTrace {
    pub fn iterations(&self) -> usize {
        self.steps.len()
    }

    pub fn last(&self) -> &EsaStep {
        self.steps.last().expect("at least one iteration")
    }

    /// Closing formula, e.g. `C = A3^2`.
    pub fn closing_formula(&self) -> String {
        format!("C = {}^{}", self.last().major_block.name, self.final_power)
    }

    /// Fixed-column log with columns `i`, alphabet, `N`, `P`, `D`, `Q`, `R`, `A`, `B`.
    pub fn render_table(&self) -> String {
        let problem = self.result.problem();
        let mut rows: Vec<[String; 9]> = Vec::with_capacity(self.steps.len() + 1);
        rows.push([
            "0".into(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            format!("A0 = {}", problem.label(self.major_symbol)),
            format!("B0 = {}", problem.label(self.minor_symbol)),
        ]);
        for step in &self.steps {
            let prev = step.index - 1;
            let minor = if step.remainder == 0 {
                String::new()
            } else {
                format!("{} = {}", step.minor_block.name, step.minor_block.formula)
            };
            rows.push([
                step.index.to_string(),
                format!("[A{prev},B{prev}]"),
                step.size.to_string(),
                step.major_count.to_string(),
                step.minor_count.to_string(),
                step.quotient.to_string(),
                step.remainder.to_string(),
                format!("{} = {}", step.major_block.name, step.major_block.formula),
                minor,
            ]);
        }
        let header = ["i", "alphabet", "N", "P", "D", "Q", "R", "A", "B"];
        let mut widths: [usize; 9] = header.map(str::len);
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let right_aligned = |c: usize| (2..=6).contains(&c);
        let format_row = |cells: &[&str]| {
            let mut line = String::new();
            for (c, cell) in cells.iter().enumerate() {
                if c > 0 {
                    line.push_str("  ");
                }
                if right_aligned(c) {
                    let _ = write!(line, "{:>w$}", cell, w = widths[c]);
                } else {
                    let _ = write!(line, "{:<w$}", cell, w = widths[c]);
                }
            }
            line.trim_end().to_owned()
        };
        let total_width = widths.iter().sum::<usize>() + 2 * (widths.len() - 1);
        let rule = "-".repeat(total_width);

        let mut out = String::new();
        out.push_str(&format_row(&header));
        out.push('\n');
        out.push_str(&rule);
        out.push('\n');
        for row in &rows {
            let cells: Vec<&str> = row.iter().map(String::as_str).collect();
            out.push_str(&format_row(&cells));
            out.push('\n');
        }
        out.push_str(&rule);
        out.push('\n');
        out.push_str(&self.closing_formula());
        out.push('\n');
        out
    }

    pub fn to_json(&self) -> TraceJson {
        let problem = self.result.problem();
        let labels = |e: &[usize]| e.iter().map(|&k| problem.label(k).to_owned()).collect();
        TraceJson {
            problem: problem.clone(),
            a0: problem.label(self.major_symbol).to_owned(),
            b0: problem.label(self.minor_symbol).to_owned(),
            steps: self
                .steps
                .iter()
                .map(|s| StepJson {
                    i: s.index,
                    alphabet: format!("[A{0},B{0}]", s.index - 1),
                    n: s.size,
                    p: s.major_count,
                    d: s.minor_count,
                    q: s.quotient,
                    r: s.remainder,
                    a: format!("{} = {}", s.major_block.name, s.major_block.formula),
                    b: format!("{} = {}", s.minor_block.name, s.minor_block.formula),
                    a_expansion: labels(&s.major_block.expansion),
                    b_expansion: labels(&s.minor_block.expansion),
                })
                .collect(),
            final_power: self.final_power,
            closing: self.closing_formula(),
            sequence: labels(self.result.positions()),
        }
    }
}

/// JSON rendering of an [`EsaTrace`].
#[derive(Debug, Clone, Serialize)]
pub struct TraceJson {
    pub problem: SequencingProblem,
    #[serde(rename = "A0")]
    pub a0: String,
    #[serde(rename = "B0")]
    pub b0: String,
    pub steps: Vec<StepJson>,
    pub final_power: u64,
    pub closing: String,
    pub sequence: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StepJson {
    pub i: usize,
    pub alphabet: String,
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "P")]
    pub p: u64,
    #[serde(rename = "D")]
    pub d: u64,
    #[serde(rename = "Q")]
    pub q: u64,
    #[serde(rename = "R")]
    pub r: u64,
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    #[serde(rename = "A_expansion")]
    pub a_expansion: Vec<String>,
    #[serde(rename = "B_expansion")]
    pub b_expansion: Vec<String>,
}
