use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An alphabet of distinct symbols together with the number of instances
/// of each symbol to be placed around the cycle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ProblemRepr", into = "ProblemRepr")]
pub struct SequencingProblem {
    symbols: Vec<String>,
    multiplicities: Vec<usize>,
    total: usize,
}

#[derive(Serialize, Deserialize)]
struct ProblemRepr {
    symbols: Vec<String>,
    multiplicities: Vec<usize>,
}

impl TryFrom<ProblemRepr> for SequencingProblem {
    type Error = Error;
    fn try_from(repr: ProblemRepr) -> Result<Self> {
        Self::new(repr.symbols, repr.multiplicities)
    }
}

impl From<SequencingProblem> for ProblemRepr {
    fn from(p: SequencingProblem) -> Self {
        ProblemRepr { symbols: p.symbols, multiplicities: p.multiplicities }
    }
}

impl SequencingProblem {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>, multiplicities: Vec<usize>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        if symbols.len() != multiplicities.len() {
            return Err(Error::ArityMismatch { symbols: symbols.len(), multiplicities: multiplicities.len() });
        }
        let mut seen = HashSet::new();
        for (k, label) in symbols.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::EmptyLabel(k));
            }
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
            if multiplicities[k] == 0 {
                return Err(Error::ZeroMultiplicity(label.clone()));
            }
        }
        let total = multiplicities.iter().sum();
        Ok(Self { symbols, multiplicities, total })
    }

    /// Binary problem with the given labels.
    pub fn binary(first: &str, second: &str, m1: usize, m2: usize) -> Result<Self> {
        Self::new([first, second], vec![m1, m2])
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn multiplicity(&self, k: usize) -> usize {
        self.multiplicities[k]
    }

    pub fn label(&self, k: usize) -> &str {
        &self.symbols[k]
    }

    /// Number of distinct symbols, `n`.
    pub fn alphabet_size(&self) -> usize {
        self.symbols.len()
    }

    /// Total number of items around the cycle, `N`.
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == label)
    }

    pub(crate) fn check_symbol(&self, k: usize) -> Result<()> {
        if k < self.alphabet_size() {
            Ok(())
        } else {
            Err(Error::SymbolOutOfRange { index: k, size: self.alphabet_size() })
        }
    }

    pub(crate) fn require_binary(&self) -> Result<()> {
        match self.alphabet_size() {
            2 => Ok(()),
            n => Err(Error::NotBinary(n)),
        }
    }

    /// True when every label starts with a different character, so cycles can
    /// be written one character per item.
    pub fn has_compact_form(&self) -> bool {
        let mut seen = HashSet::new();
        self.symbols.iter().all(|s| seen.insert(s.chars().next()))
    }
}
