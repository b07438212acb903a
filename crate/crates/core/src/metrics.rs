//! Pulse-only variance and side-by-side evenness reports.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::cycle::Cycle;
use crate::error::{Error, Result};
use crate::exact::enumerate_admissible;
use crate::moments::variance;
use crate::optimality::verify_optimal;
use crate::problem::SequencingProblem;
use crate::rational::ExactRational;

/// Variance of the distances of one symbol around their own mean `N/m_k`,
/// normalised by `m_k`.
pub fn pulse_variance(cycle: &Cycle, pulse: usize) -> Result<ExactRational> {
    let problem = cycle.problem();
    problem.check_symbol(pulse)?;
    let m = BigInt::from(problem.multiplicity(pulse));
    let total = BigInt::from(problem.total());
    // Σ (Δ − N/m)² / m  ==  Σ (m·Δ − N)² / m³
    let sum: BigInt = cycle.distances().by_symbol[pulse]
        .iter()
        .map(|&d| {
            let dev = &m * BigInt::from(d) - &total;
            &dev * &dev
        })
        .sum();
    Ok(ExactRational::new(sum, m.pow(3)).expect("m is positive"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonRow {
    pub cycle_string: String,
    pub variance: ExactRational,
    /// One entry per symbol, that symbol taken as the pulse.
    pub pulse_variances: Vec<ExactRational>,
    pub optimal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub problem: SequencingProblem,
    pub rows: Vec<ComparisonRow>,
}

pub fn compare_report(problem: &SequencingProblem, cycles: &[Cycle]) -> Result<ComparisonReport> {
    problem.require_binary()?;
    let rows = cycles
        .iter()
        .map(|c| {
            if c.problem() != problem {
                return Err(Error::MixedProblems);
            }
            Ok(ComparisonRow {
                cycle_string: c.display_string(),
                variance: variance(c),
                pulse_variances: (0..problem.alphabet_size()).map(|k| pulse_variance(c, k)).collect::<Result<_>>()?,
                optimal: verify_optimal(c)?.optimal,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ComparisonReport { problem: problem.clone(), rows })
}

/// Every distinct cycle up to rotation, ordered by decreasing variance (ties by
/// canonical sequence), so the optimum comes last.
pub fn sweep(problem: Arc<SequencingProblem>, cap: usize) -> Result<ComparisonReport> {
    let mut canon: Vec<Cycle> = enumerate_admissible(problem.clone(), cap)?.map(|c| c.canonical()).collect();
    canon.sort_by(|a, b| a.positions().cmp(b.positions()));
    canon.dedup();
    let mut keyed: Vec<(ExactRational, Cycle)> = canon.into_iter().map(|c| (variance(&c), c)).collect();
    keyed.sort_by(|(va, a), (vb, b)| vb.cmp(va).then_with(|| a.positions().cmp(b.positions())));
    let cycles: Vec<Cycle> = keyed.into_iter().map(|(_, c)| c).collect();
    compare_report(&problem, &cycles)
}

/// Decimal rendering with at most six fractional digits, trailing zeros dropped.
pub fn decimal(r: &ExactRational) -> String {
    let s = format!("{:.6}", r.to_f64());
    let s = s.trim_end_matches('0').trim_end_matches('.');
    match s {
        "" | "-" | "-0" => "0".into(),
        _ => s.to_owned(),
    }
}

impl ComparisonReport {
    /// CSV with columns `cycle_string, variance, pulse_variance_sym0, pulse_variance_sym1, optimal`.
    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["cycle_string".to_owned(), "variance".to_owned()];
        header.extend((0..self.problem.alphabet_size()).map(|k| format!("pulse_variance_sym{k}")));
        header.push("optimal".into());
        writer.write_record(&header).expect("in-memory write");
        for row in &self.rows {
            let mut record = vec![row.cycle_string.clone(), decimal(&row.variance)];
            record.extend(row.pulse_variances.iter().map(decimal));
            record.push(row.optimal.to_string());
            writer.write_record(&record).expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn to_table(&self) -> String {
        let mut header = vec!["cycle".to_owned(), "variance".to_owned()];
        header.extend(self.problem.symbols().iter().map(|s| format!("pulse[{s}]")));
        header.push("optimal".into());
        let body: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                let mut cells = vec![r.cycle_string.clone(), format!("{} ({})", r.variance, decimal(&r.variance))];
                cells.extend(r.pulse_variances.iter().map(|p| format!("{} ({})", p, decimal(p))));
                cells.push(if r.optimal { "yes".into() } else { "no".into() });
                cells
            })
            .collect();
        let mut widths: Vec<usize> = header.iter().map(String::len).collect();
        for cells in &body {
            for (w, c) in widths.iter_mut().zip(cells) {
                *w = (*w).max(c.len());
            }
        }
        let line = |cells: &[String]| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_owned()
        };
        let mut out = line(&header);
        out.push('\n');
        for cells in &body {
            out.push_str(&line(cells));
            out.push('\n');
        }
        out
    }
}
