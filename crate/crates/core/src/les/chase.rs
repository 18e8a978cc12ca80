use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::solver::{Interval, LinearSolver, Step};
use super::{add_exactness, alternating_sum_check, Dim, ExactSequence, SeqTerm};
use crate::error::{Error, Result};

/// The cohomology group `H^degree(sheaf)`, identified by label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Group {
    pub sheaf: String,
    pub degree: usize,
}

impl Group {
    pub fn new(sheaf: impl Into<String>, degree: usize) -> Self {
        Group { sheaf: sheaf.into(), degree }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h^{}({})", self.degree, self.sheaf)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub dim: BigInt,
    pub provenance: String,
}

/// Known dimensions, each with the citation or derivation it came from.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FactRegistry {
    facts: BTreeMap<Group, Fact>,
}

impl FactRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers a fact. Re-registering the same value is a no-op; a different
    /// value is an inconsistency.
    pub fn insert(&mut self, group: Group, dim: BigInt, provenance: impl Into<String>) -> Result<()> {
        let provenance = provenance.into();
        if provenance.trim().is_empty() {
            return Err(Error::InvalidParameter(format!("fact {group} has no provenance")));
        }
        if dim.is_negative() {
            return Err(Error::NegativeDimension { quantity: group.to_string(), value: dim });
        }
        if let Some(existing) = self.facts.get(&group) {
            if existing.dim != dim {
                return Err(Error::Inconsistent(format!(
                    "{group} registered as {} ({}) and {} ({})",
                    existing.dim, existing.provenance, dim, provenance
                )));
            }
            return Ok(());
        }
        self.facts.insert(group, Fact { dim, provenance });
        Ok(())
    }

    pub fn get(&self, group: &Group) -> Option<&Fact> {
        self.facts.get(group)
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Group, &Fact)> {
        self.facts.iter()
    }
}

/// `h(lhs) = factor · h(rhs)`: Serre duality, isomorphisms, direct sums.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub lhs: Group,
    pub factor: BigInt,
    pub rhs: Group,
    pub citation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceOfGroups {
    pub name: String,
    pub terms: Vec<Group>,
}

/// The long exact cohomology sequence of `0 → A → B → C → 0`, from `H^0(A)`
/// through `H^top(C)`.
pub fn long_exact(name: impl Into<String>, sheaves: [&str; 3], top: usize) -> SequenceOfGroups {
    let terms = (0..=top)
        .flat_map(|i| sheaves.iter().map(move |s| Group::new(*s, i)))
        .collect();
    SequenceOfGroups { name: name.into(), terms }
}

/// A system of exact sequences over shared cohomology groups. The only
/// known values are registry facts.
#[derive(Debug, Clone, Default)]
pub struct Chase {
    pub registry: FactRegistry,
    pub sequences: Vec<SequenceOfGroups>,
    pub relations: Vec<Relation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChaseOutcome {
    pub values: BTreeMap<Group, Interval>,
    pub derivation: Vec<Step>,
    sequences: Vec<SequenceOfGroups>,
}

impl Chase {
    pub fn new(registry: FactRegistry) -> Self {
        Chase { registry, ..Default::default() }
    }

    pub fn add_sequence(&mut self, seq: SequenceOfGroups) {
        self.sequences.push(seq);
    }

    pub fn relate(&mut self, lhs: Group, factor: i64, rhs: Group, citation: impl Into<String>) {
        self.relations.push(Relation { lhs, factor: BigInt::from(factor), rhs, citation: citation.into() });
    }

    pub fn solve(&self) -> Result<ChaseOutcome> {
        let mut solver = LinearSolver::default();
        let mut vars: BTreeMap<Group, usize> = BTreeMap::new();
        let mut var_of = |g: &Group, solver: &mut LinearSolver| -> usize {
            *vars.entry(g.clone()).or_insert_with(|| {
                let bounds = match self.registry.get(g) {
                    Some(f) => Interval::exact(f.dim.clone()),
                    None => Interval::nonnegative(),
                };
                solver.add_var(g.to_string(), bounds)
            })
        };
        for seq in &self.sequences {
            if seq.terms.is_empty() {
                return Err(Error::InvalidParameter(format!("sequence '{}' is empty", seq.name)));
            }
            let term_vars: Vec<usize> = seq.terms.iter().map(|g| var_of(g, &mut solver)).collect();
            add_exactness(&mut solver, &term_vars, |i| seq.terms[i].to_string(), &seq.name);
        }
        for rel in &self.relations {
            let l = var_of(&rel.lhs, &mut solver);
            let r = var_of(&rel.rhs, &mut solver);
            solver.add_constraint(
                vec![(l, BigInt::one()), (r, -rel.factor.clone())],
                BigInt::zero(),
                rel.citation.clone(),
            );
        }
        solver.solve()?;
        Ok(ChaseOutcome {
            values: vars.iter().map(|(g, &v)| (g.clone(), solver.bounds(v).clone())).collect(),
            derivation: solver.steps().to_vec(),
            sequences: self.sequences.clone(),
        })
    }
}

impl ChaseOutcome {
    pub fn interval(&self, group: &Group) -> Option<&Interval> {
        self.values.get(group)
    }

    /// The forced value, or [`Error::Underdetermined`].
    pub fn forced(&self, group: &Group) -> Result<BigInt> {
        match self.values.get(group) {
            Some(iv) => iv.value().cloned().ok_or_else(|| Error::Underdetermined {
                what: group.to_string(),
                interval: iv.to_string(),
            }),
            None => Err(Error::Underdetermined { what: group.to_string(), interval: "absent".into() }),
        }
    }

    /// Derivation steps that fixed `group` or anything before it.
    pub fn explain(&self, group: &Group) -> Vec<&Step> {
        let name = group.to_string();
        match self.derivation.iter().position(|s| s.variable == name) {
            Some(pos) => self.derivation[..=pos]
                .iter()
                .filter(|s| !s.variable.starts_with("rank("))
                .collect(),
            None => Vec::new(),
        }
    }

    /// Every input sequence whose terms all came out determined, as plain
    /// numeric sequences.
    pub fn determined_sequences(&self) -> Vec<(String, ExactSequence)> {
        self.sequences
            .iter()
            .filter_map(|seq| {
                let terms: Option<Vec<SeqTerm>> = seq
                    .terms
                    .iter()
                    .map(|g| {
                        self.values.get(g).and_then(Interval::value).map(|v| SeqTerm {
                            label: g.to_string(),
                            dim: Dim::Known(v.clone()),
                        })
                    })
                    .collect();
                terms.map(|t| (seq.name.clone(), ExactSequence { terms: t }))
            })
            .collect()
    }

    /// Alternating-sum sanity check on all determined sequences.
    pub fn check_alternating_sums(&self) -> Result<()> {
        for (name, seq) in self.determined_sequences() {
            if !alternating_sum_check(&seq)? {
                return Err(Error::Consistency(format!("alternating sum of '{name}' is nonzero")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn long_exact_layout() {
        let s = long_exact("s", ["A", "B", "C"], 1);
        let names: Vec<String> = s.terms.iter().map(Group::to_string).collect();
        assert_eq!(names, ["h^0(A)", "h^0(B)", "h^0(C)", "h^1(A)", "h^1(B)", "h^1(C)"]);
    }

    #[test]
    fn registry_rules() {
        let mut r = FactRegistry::new();
        r.insert(Group::new("O", 0), big(1), "h0(O) = 1").unwrap();
        r.insert(Group::new("O", 0), big(1), "again").unwrap();
        assert!(r.insert(Group::new("O", 0), big(2), "conflict").is_err());
        assert!(r.insert(Group::new("E", 0), big(1), "  ").is_err());
        assert!(r.insert(Group::new("E", 0), big(-1), "neg").is_err());
        assert_eq!(r.len(), 1);
    }

    #[test]
    fn chase_with_relation() {
        let mut reg = FactRegistry::new();
        reg.insert(Group::new("A", 0), big(2), "given").unwrap();
        reg.insert(Group::new("B", 0), big(7), "given").unwrap();
        reg.insert(Group::new("A", 1), big(0), "given").unwrap();
        let mut chase = Chase::new(reg);
        chase.add_sequence(SequenceOfGroups {
            name: "s".into(),
            terms: vec![Group::new("A", 0), Group::new("B", 0), Group::new("C", 0), Group::new("A", 1)],
        });
        chase.relate(Group::new("D", 3), 2, Group::new("C", 0), "D ≅ C ⊕ C");
        let out = chase.solve().unwrap();
        assert_eq!(out.forced(&Group::new("C", 0)).unwrap(), big(5));
        assert_eq!(out.forced(&Group::new("D", 3)).unwrap(), big(10));
        assert!(!out.explain(&Group::new("D", 3)).is_empty());
        out.check_alternating_sums().unwrap();
        assert!(matches!(out.forced(&Group::new("Z", 0)), Err(Error::Underdetermined { .. })));
    }
}
