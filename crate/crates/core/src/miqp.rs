//! The mixed-integer quadratic program for cyclic sequencing, as data and as
//! LP-format text.
//!
//! Items are the positions `1..=N` of the base cycle; block `k` is the range
//! `first(k)..=last(k)` of items carrying symbol `a_k`. Binary `x_i_j` marks
//! item `j` as the immediate successor of item `i`, `t_i` is the angular
//! coordinate of item `i` measured from item 1, and `d_i` is the distance from
//! item `i` to the next item of its block.

use std::fmt::Write as _;

use serde::Serialize;

use crate::cycle::Cycle;
use crate::error::{Error, Result};
use crate::problem::SequencingProblem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// `x_i_j`, 1-based, `i != j`
    Successor(usize, usize),
    /// `t_i`
    Angle(usize),
    /// `d_i`
    Distance(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VarKind {
    Binary,
    Continuous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sense {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowFamily {
    AssignOut,
    AssignIn,
    Subtour,
    Order,
    Distance,
    Wrap,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub name: String,
    pub family: RowFamily,
    pub terms: Vec<(Var, i64)>,
    pub sense: Sense,
    pub rhs: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelCounts {
    pub binaries: usize,
    pub angles: usize,
    pub distances: usize,
    pub assign_out_rows: usize,
    pub assign_in_rows: usize,
    pub subtour_rows: usize,
    pub order_rows: usize,
    pub distance_rows: usize,
    pub wrap_rows: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiqpModel {
    problem: SequencingProblem,
    rows: Vec<Row>,
}

impl Var {
    pub fn name(&self) -> String {
        match *self {
            Var::Successor(i, j) => format!("x_{i}_{j}"),
            Var::Angle(i) => format!("t_{i}"),
            Var::Distance(i) => format!("d_{i}"),
        }
    }

    pub fn kind(&self) -> VarKind {
        match self {
            Var::Successor(..) => VarKind::Binary,
            _ => VarKind::Continuous,
        }
    }
}

/// 1-based `(first, last)` item of every block.
pub fn block_bounds(problem: &SequencingProblem) -> Vec<(usize, usize)> {
    let mut last = 0;
    problem
        .multiplicities()
        .iter()
        .map(|&m| {
            let first = last + 1;
            last += m;
            (first, last)
        })
        .collect()
}

fn row(name: String, family: RowFamily, terms: Vec<(Var, i64)>, sense: Sense, rhs: i64) -> Row {
    // merge repeated variables and drop cancelled ones
    let mut merged: Vec<(Var, i64)> = Vec::with_capacity(terms.len());
    for (v, c) in terms {
        match merged.iter_mut().find(|(w, _)| *w == v) {
            Some(entry) => entry.1 += c,
            None => merged.push((v, c)),
        }
    }
    merged.retain(|&(_, c)| c != 0);
    Row { name, family, terms: merged, sense, rhs }
}

pub fn build_model(problem: &SequencingProblem) -> Result<MiqpModel> {
    let total = problem.total();
    if total < 2 {
        return Err(Error::ModelTooSmall(total));
    }
    let big = total as i64;
    let items = 1..=total;
    let mut rows = Vec::new();

    for i in items.clone() {
        let terms = items.clone().filter(|&j| j != i).map(|j| (Var::Successor(i, j), 1)).collect();
        rows.push(row(format!("out_{i}"), RowFamily::AssignOut, terms, Sense::Eq, 1));
    }
    for j in items.clone() {
        let terms = items.clone().filter(|&i| i != j).map(|i| (Var::Successor(i, j), 1)).collect();
        rows.push(row(format!("in_{j}"), RowFamily::AssignIn, terms, Sense::Eq, 1));
    }
    for i in 2..=total {
        for j in (2..=total).filter(|&j| j != i) {
            let terms = vec![(Var::Angle(i), 1), (Var::Angle(j), -1), (Var::Successor(i, j), big)];
            rows.push(row(format!("mtz_{i}_{j}"), RowFamily::Subtour, terms, Sense::Le, big - 1));
        }
    }
    let blocks = block_bounds(problem);
    for &(first, last) in &blocks {
        for i in first..last {
            let terms = vec![(Var::Angle(i), 1), (Var::Angle(i + 1), -1)];
            rows.push(row(format!("ord_{i}"), RowFamily::Order, terms, Sense::Le, 0));
        }
    }
    for &(first, last) in &blocks {
        for i in first..last {
            let terms = vec![(Var::Distance(i), 1), (Var::Angle(i), 1), (Var::Angle(i + 1), -1)];
            rows.push(row(format!("dist_{i}"), RowFamily::Distance, terms, Sense::Eq, 0));
        }
    }
    for (k, &(first, last)) in blocks.iter().enumerate() {
        let terms = vec![(Var::Distance(last), 1), (Var::Angle(last), 1), (Var::Angle(first), -1)];
        rows.push(row(format!("wrap_{}", k + 1), RowFamily::Wrap, terms, Sense::Eq, big));
    }
    Ok(MiqpModel { problem: problem.clone(), rows })
}

impl MiqpModel {
    pub fn problem(&self) -> &SequencingProblem {
        &self.problem
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn total(&self) -> usize {
        self.problem.total()
    }

    /// Variables in declaration order: all `x`, then `t`, then `d`.
    pub fn variables(&self) -> Vec<Var> {
        let total = self.total();
        let mut vars = Vec::with_capacity(total * (total + 1));
        for i in 1..=total {
            vars.extend((1..=total).filter(|&j| j != i).map(|j| Var::Successor(i, j)));
        }
        vars.extend((1..=total).map(Var::Angle));
        vars.extend((1..=total).map(Var::Distance));
        vars
    }

    fn var_index(&self, v: Var) -> usize {
        let total = self.total();
        match v {
            Var::Successor(i, j) => (i - 1) * (total - 1) + if j < i { j - 1 } else { j - 2 },
            Var::Angle(i) => total * (total - 1) + i - 1,
            Var::Distance(i) => total * total + i - 1,
        }
    }

    pub fn num_variables(&self) -> usize {
        self.total() * (self.total() + 1)
    }

    pub fn counts(&self) -> ModelCounts {
        let total = self.total();
        let count = |f: RowFamily| self.rows.iter().filter(|r| r.family == f).count();
        ModelCounts {
            binaries: total * (total - 1),
            angles: total,
            distances: total,
            assign_out_rows: count(RowFamily::AssignOut),
            assign_in_rows: count(RowFamily::AssignIn),
            subtour_rows: count(RowFamily::Subtour),
            order_rows: count(RowFamily::Order),
            distance_rows: count(RowFamily::Distance),
            wrap_rows: count(RowFamily::Wrap),
        }
    }

    /// LP-format text. Output is a pure function of the problem.
    pub fn to_lp(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "\\ cyclic sequencing: symbols [{}], multiplicities [{}], N = {}",
            self.problem.symbols().join(", "),
            self.problem.multiplicities().iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", "),
            self.total()
        );
        out.push_str("Minimize\n");
        let mut objective = vec!["obj:".to_owned(), "[".to_owned()];
        for i in 1..=self.total() {
            if i > 1 {
                objective.push("+".into());
            }
            objective.extend(["2".to_owned(), Var::Distance(i).name(), "^2".to_owned()]);
        }
        objective.extend(["]".to_owned(), "/".to_owned(), "2".to_owned()]);
        wrap_tokens(&mut out, &objective);
        out.push_str("Subject To\n");
        for r in &self.rows {
            let mut tokens = vec![format!("{}:", r.name)];
            for (idx, &(v, c)) in r.terms.iter().enumerate() {
                match (idx, c.signum()) {
                    (0, -1) => tokens.push("-".into()),
                    (0, _) => {}
                    (_, -1) => tokens.push("-".into()),
                    _ => tokens.push("+".into()),
                }
                if c.abs() != 1 {
                    tokens.push(c.abs().to_string());
                }
                tokens.push(v.name());
            }
            tokens.push(match r.sense {
                Sense::Le => "<=".into(),
                Sense::Eq => "=".into(),
            });
            tokens.push(r.rhs.to_string());
            wrap_tokens(&mut out, &tokens);
        }
        out.push_str("Bounds\n");
        for v in self.variables().into_iter().filter(|v| v.kind() == VarKind::Continuous) {
            let _ = writeln!(out, " {} >= 0", v.name());
        }
        out.push_str("Binaries\n");
        let binaries: Vec<String> =
            self.variables().into_iter().filter(|v| v.kind() == VarKind::Binary).map(|v| v.name()).collect();
        wrap_tokens(&mut out, &binaries);
        out.push_str("End\n");
        out
    }
}

const LINE_LIMIT: usize = 78;

/// Writes tokens separated by spaces, breaking lines before `LINE_LIMIT`.
/// Continuation lines are indented by three spaces.
fn wrap_tokens(out: &mut String, tokens: &[String]) {
    let mut line = String::from(" ");
    for token in tokens {
        if line.trim().is_empty() {
            line.push_str(token);
        } else if line.len() + 1 + token.len() > LINE_LIMIT {
            out.push_str(&line);
            out.push('\n');
            line = format!("   {token}");
        } else {
            line.push(' ');
            line.push_str(token);
        }
    }
    out.push_str(&line);
    out.push('\n');
}

/// Values for every model variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<i64>,
}

impl Assignment {
    pub fn get(&self, model: &MiqpModel, v: Var) -> i64 {
        self.values[model.var_index(v)]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    pub feasible: bool,
    /// `Σ d_i²`
    pub objective: i64,
    /// Names of violated rows, then violated bounds as `bound:<var>`.
    pub violated: Vec<String>,
}

impl MiqpModel {
    /// Builds `x`, `t` and `d` from an item placement: `placement[i - 1]` is the
    /// 0-based cycle position of item `i`. `t_i` counts steps from item 1 and
    /// each `d_i` takes the value its defining row forces.
    pub fn assignment_from_placement(&self, placement: &[usize]) -> Result<Assignment> {
        let total = self.total();
        if placement.len() != total {
            return Err(Error::CycleLength { expected: total, actual: placement.len() });
        }
        let mut item_at = vec![0usize; total];
        let mut seen = vec![false; total];
        for (item0, &pos) in placement.iter().enumerate() {
            if pos >= total || seen[pos] {
                return Err(Error::Convention("placement is not a permutation of the positions".into()));
            }
            seen[pos] = true;
            item_at[pos] = item0 + 1;
        }
        let big = total as i64;
        let mut values = vec![0i64; self.num_variables()];
        let origin = placement[0];
        let angle = |item: usize| ((placement[item - 1] + total - origin) % total) as i64;
        for i in 1..=total {
            let successor = item_at[(placement[i - 1] + 1) % total];
            values[self.var_index(Var::Successor(i, successor))] = 1;
            values[self.var_index(Var::Angle(i))] = angle(i);
        }
        for (first, last) in block_bounds(&self.problem) {
            for i in first..last {
                values[self.var_index(Var::Distance(i))] = angle(i + 1) - angle(i);
            }
            values[self.var_index(Var::Distance(last))] = big - angle(last) + angle(first);
        }
        Ok(Assignment { values })
    }

    /// Checks every row and bound against `assignment`.
    pub fn evaluate(&self, assignment: &Assignment) -> Evaluation {
        let mut violated = Vec::new();
        for r in &self.rows {
            let lhs: i64 = r.terms.iter().map(|&(v, c)| c * assignment.get(self, v)).sum();
            let ok = match r.sense {
                Sense::Le => lhs <= r.rhs,
                Sense::Eq => lhs == r.rhs,
            };
            if !ok {
                violated.push(r.name.clone());
            }
        }
        for v in self.variables() {
            let x = assignment.get(self, v);
            let ok = match v.kind() {
                VarKind::Binary => x == 0 || x == 1,
                VarKind::Continuous => x >= 0,
            };
            if !ok {
                violated.push(format!("bound:{}", v.name()));
            }
        }
        let objective = (1..=self.total()).map(|i| assignment.get(self, Var::Distance(i)).pow(2)).sum();
        Evaluation { feasible: violated.is_empty(), objective, violated }
    }

    pub fn evaluate_placement(&self, placement: &[usize]) -> Result<Evaluation> {
        Ok(self.evaluate(&self.assignment_from_placement(placement)?))
    }
}

/// Maps a cycle into the model: the `r`-th instance of `a_k` read from
/// position 0 becomes item `first(k) + r`.
///
/// The cycle must start with symbol `a_1`, so that item 1 sits at the origin.
pub fn placement_of(cycle: &Cycle) -> Result<Vec<usize>> {
    let problem = cycle.problem();
    if cycle.positions().first() != Some(&0) {
        return Err(Error::Convention(format!(
            "cycle must start with the first instance of `{}`",
            problem.label(0)
        )));
    }
    let mut next_item: Vec<usize> = block_bounds(problem).iter().map(|&(first, _)| first).collect();
    let mut placement = vec![0usize; problem.total()];
    for (pos, &k) in cycle.positions().iter().enumerate() {
        placement[next_item[k] - 1] = pos;
        next_item[k] += 1;
    }
    Ok(placement)
}

pub fn evaluate_assignment(model: &MiqpModel, cycle: &Cycle) -> Result<Evaluation> {
    if cycle.problem() != model.problem() {
        return Err(Error::MixedProblems);
    }
    model.evaluate_placement(&placement_of(cycle)?)
}
