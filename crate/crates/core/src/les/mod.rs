//! Dimension chases through exact sequences.
//!
//! An exact sequence `0 → T₁ → … → T_m → 0` carries no information beyond
//! dimensions and ranks: introducing the rank `r_i` of the map leaving `T_i`
//! (with `r_0 = r_m = 0`) gives `dim T_i = r_{i-1} + r_i`, `r_i ≥ 0`. The
//! solver propagates integer bounds through these equalities until nothing
//! moves; it never branches.

mod chase;
mod format;
pub mod hypersurface;
mod solver;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use chase::{long_exact, Chase, ChaseOutcome, Fact, FactRegistry, Group, Relation, SequenceOfGroups};
pub use format::{ChaseFile, GroupSpec, ShortExactSpec};
pub use solver::{Interval, Step};

use solver::LinearSolver;

/// A term's dimension: known, or a named unknown (equal names are the same
/// unknown).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dim {
    Known(BigInt),
    Var(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeqTerm {
    pub label: String,
    pub dim: Dim,
}

impl SeqTerm {
    pub fn known(label: impl Into<String>, dim: i64) -> Self {
        SeqTerm { label: label.into(), dim: Dim::Known(BigInt::from(dim)) }
    }

    pub fn unknown(label: impl Into<String>, var: impl Into<String>) -> Self {
        SeqTerm { label: label.into(), dim: Dim::Var(var.into()) }
    }
}

/// `0 → terms[0] → … → terms[m-1] → 0`, exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactSequence {
    pub terms: Vec<SeqTerm>,
}

impl ExactSequence {
    pub fn new(terms: Vec<SeqTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidParameter("an exact sequence needs at least one term".into()));
        }
        for t in &terms {
            if let Dim::Known(v) = &t.dim {
                if v.is_negative() {
                    return Err(Error::NegativeDimension { quantity: t.label.clone(), value: v.clone() });
                }
            }
        }
        Ok(ExactSequence { terms })
    }

    /// Shorthand for tests and examples: `Some(v)` known, `None` an unknown
    /// named after its position.
    pub fn from_dims(dims: &[Option<i64>]) -> Result<Self> {
        Self::new(
            dims.iter()
                .enumerate()
                .map(|(i, d)| match d {
                    Some(v) => SeqTerm::known(format!("T{i}"), *v),
                    None => SeqTerm::unknown(format!("T{i}"), format!("x{i}")),
                })
                .collect(),
        )
    }
}

/// What propagation could establish about one sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Propagation {
    /// Bounds for each term, in order.
    pub terms: Vec<Interval>,
    /// Bounds for each named unknown.
    pub variables: BTreeMap<String, Interval>,
    /// Bounds on the ranks of the maps `T_i → T_{i+1}`, `i = 1..m-1`.
    pub ranks: Vec<Interval>,
    pub derivation: Vec<Step>,
}

impl Propagation {
    pub fn value(&self, var: &str) -> Option<&BigInt> {
        self.variables.get(var).and_then(Interval::value)
    }

    pub fn is_determined(&self) -> bool {
        self.terms.iter().all(|t| t.value().is_some())
    }
}

/// Propagates the exactness constraints of a single sequence.
pub fn propagate(seq: &ExactSequence) -> Result<Propagation> {
    if !seq.terms.iter().any(|t| matches!(t.dim, Dim::Known(_))) {
        return Err(Error::InvalidParameter("propagation needs at least one known term".into()));
    }
    let mut solver = LinearSolver::default();
    let mut vars: BTreeMap<String, usize> = BTreeMap::new();
    let term_vars: Vec<usize> = seq
        .terms
        .iter()
        .map(|t| match &t.dim {
            Dim::Known(v) => solver.add_var(t.label.clone(), Interval::exact(v.clone())),
            Dim::Var(name) => *vars
                .entry(name.clone())
                .or_insert_with(|| solver.add_var(name.clone(), Interval::nonnegative())),
        })
        .collect();
    let ranks = add_exactness(&mut solver, &term_vars, |i| seq.terms[i].label.clone(), "exactness");
    solver.solve()?;
    Ok(Propagation {
        terms: term_vars.iter().map(|&v| solver.bounds(v).clone()).collect(),
        variables: vars.iter().map(|(k, &v)| (k.clone(), solver.bounds(v).clone())).collect(),
        ranks: ranks.iter().map(|&r| solver.bounds(r).clone()).collect(),
        derivation: solver.steps().to_vec(),
    })
}

/// Adds rank variables and `dim T_i = r_{i-1} + r_i`; returns the rank vars.
pub(crate) fn add_exactness(
    solver: &mut LinearSolver,
    term_vars: &[usize],
    label: impl Fn(usize) -> String,
    origin: &str,
) -> Vec<usize> {
    let m = term_vars.len();
    let ranks: Vec<usize> = (0..m.saturating_sub(1))
        .map(|i| solver.add_var(format!("rank({} -> {})", label(i), label(i + 1)), Interval::nonnegative()))
        .collect();
    for (i, &t) in term_vars.iter().enumerate() {
        let mut terms = vec![(t, BigInt::one())];
        if i > 0 {
            terms.push((ranks[i - 1], -BigInt::one()));
        }
        if i + 1 < m {
            terms.push((ranks[i], -BigInt::one()));
        }
        solver.add_constraint(terms, BigInt::zero(), format!("{origin} at {}", label(i)));
    }
    ranks
}

/// `Σ (-1)^i dim T_i = 0` for a fully known sequence.
pub fn alternating_sum_check(seq: &ExactSequence) -> Result<bool> {
    let mut acc = BigInt::zero();
    for (i, t) in seq.terms.iter().enumerate() {
        let Dim::Known(v) = &t.dim else {
            return Err(Error::InvalidParameter(format!("term {} has unknown dimension", t.label)));
        };
        if i % 2 == 0 {
            acc += v;
        } else {
            acc -= v;
        }
    }
    Ok(acc.is_zero())
}
