//! Compact one-character-per-item cycle strings and JSON helpers.

use std::sync::Arc;

use crate::cycle::Cycle;
use crate::error::{Error, Result};
use crate::problem::SequencingProblem;

/// Parses a compact cycle string.
///
/// With `labels`, each character must be the first character of exactly one
/// label. Without, the alphabet is the set of distinct characters in ascending
/// order and multiplicities are their counts.
pub fn parse_compact(s: &str, labels: Option<&[String]>) -> Result<Cycle> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty cycle string".into()));
    }
    let chars: Vec<char> = s.chars().collect();
    let symbols: Vec<String> = match labels {
        Some(labels) => labels.to_vec(),
        None => {
            let mut distinct = chars.clone();
            distinct.sort_unstable();
            distinct.dedup();
            distinct.into_iter().map(String::from).collect()
        }
    };
    let initials: Vec<Option<char>> = symbols.iter().map(|l| l.chars().next()).collect();
    {
        let mut sorted = initials.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse("labels do not have distinct first characters".into()));
        }
    }
    let mut positions = Vec::with_capacity(chars.len());
    let mut counts = vec![0usize; symbols.len()];
    for c in chars {
        let k = initials
            .iter()
            .position(|&i| i == Some(c))
            .ok_or_else(|| Error::UnknownSymbol(c.to_string()))?;
        positions.push(k);
        counts[k] += 1;
    }
    let problem = SequencingProblem::new(symbols, counts)?;
    Cycle::new(Arc::new(problem), positions)
}

/// Parses either Cycle JSON or a compact string, deciding by the first character.
pub fn parse_cycle(text: &str, labels: Option<&[String]>) -> Result<Cycle> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))
    } else {
        parse_compact(trimmed, labels)
    }
}

pub fn parse_problem(text: &str) -> Result<SequencingProblem> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses a cycle list: a JSON array of compact strings or label arrays, or an
/// object with a `cycles` field holding such an array. Every cycle is checked
/// against `problem`.
pub fn parse_cycle_list(text: &str, problem: &Arc<SequencingProblem>) -> Result<Vec<Cycle>> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let items = match &value {
        serde_json::Value::Array(items) => items,
        serde_json::Value::Object(map) => match map.get("cycles") {
            Some(serde_json::Value::Array(items)) => items,
            _ => return Err(Error::Parse("expected a `cycles` array".into())),
        },
        _ => return Err(Error::Parse("expected a JSON array of cycles".into())),
    };
    items
        .iter()
        .map(|item| match item {
            serde_json::Value::String(s) => {
                let c = parse_compact(s, Some(problem.symbols()))?;
                Cycle::new(problem.clone(), c.positions().to_vec())
            }
            serde_json::Value::Array(labels) => {
                let labels = labels
                    .iter()
                    .map(|l| l.as_str().map(str::to_owned).ok_or_else(|| Error::Parse("labels must be strings".into())))
                    .collect::<Result<Vec<_>>>()?;
                Cycle::from_labels(problem.clone(), &labels)
            }
            _ => Err(Error::Parse("each cycle must be a string or an array of labels".into())),
        })
        .collect()
}
