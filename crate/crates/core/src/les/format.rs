//! JSON declaration of a chase: facts with citations, sequences, relations and
//! the groups to report.
//!
//! ```json
//! {
//!   "facts": [{"sheaf": "O_X", "degree": 0, "dim": "1", "citation": "h^0(O_X) = 1"}],
//!   "short_exact": [{"name": "cotangent", "sheaves": ["O_X", "Omega_P|X(3)", "Omega_X(3)"], "top": 1}],
//!   "sequences": [],
//!   "relations": [],
//!   "targets": [{"sheaf": "Omega_X(3)", "degree": 0}]
//! }
//! ```
//!
//! Dimensions are decimal strings.

use serde::{Deserialize, Serialize};

use super::chase::{long_exact, Chase, FactRegistry, Group, SequenceOfGroups};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub sheaf: String,
    pub degree: usize,
}

impl From<&GroupSpec> for Group {
    fn from(g: &GroupSpec) -> Self {
        Group::new(g.sheaf.clone(), g.degree)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactSpec {
    pub sheaf: String,
    pub degree: usize,
    pub dim: String,
    pub citation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceSpec {
    pub name: String,
    pub terms: Vec<GroupSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShortExactSpec {
    pub name: String,
    pub sheaves: [String; 3],
    pub top: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationSpec {
    pub lhs: GroupSpec,
    pub factor: String,
    pub rhs: GroupSpec,
    pub citation: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChaseFile {
    #[serde(default)]
    pub facts: Vec<FactSpec>,
    #[serde(default)]
    pub sequences: Vec<SequenceSpec>,
    #[serde(default)]
    pub short_exact: Vec<ShortExactSpec>,
    #[serde(default)]
    pub relations: Vec<RelationSpec>,
    #[serde(default)]
    pub targets: Vec<GroupSpec>,
}

impl ChaseFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn targets(&self) -> Vec<Group> {
        self.targets.iter().map(Group::from).collect()
    }

    pub fn to_chase(&self) -> Result<Chase> {
        let mut registry = FactRegistry::new();
        for f in &self.facts {
            let dim = f
                .dim
                .trim()
                .parse()
                .map_err(|_| Error::Format(format!("dimension '{}' is not an integer", f.dim)))?;
            registry.insert(Group::new(f.sheaf.clone(), f.degree), dim, f.citation.clone())?;
        }
        let mut chase = Chase::new(registry);
        for s in &self.sequences {
            chase.add_sequence(SequenceOfGroups {
                name: s.name.clone(),
                terms: s.terms.iter().map(Group::from).collect(),
            });
        }
        for s in &self.short_exact {
            let [a, b, c] = &s.sheaves;
            chase.add_sequence(long_exact(s.name.clone(), [a.as_str(), b.as_str(), c.as_str()], s.top));
        }
        for r in &self.relations {
            let factor: i64 = r
                .factor
                .trim()
                .parse()
                .map_err(|_| Error::Format(format!("relation factor '{}' is not an integer", r.factor)))?;
            chase.relate((&r.lhs).into(), factor, (&r.rhs).into(), r.citation.clone());
        }
        Ok(chase)
    }
}
