//! Integer interval propagation over linear equalities in nonnegative
//! variables. No branching: what the bounds force is reported, the rest stays
//! an interval.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{div_ceil, div_floor};

/// `[lo, hi]`, with `hi = None` meaning unbounded above.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: BigInt,
    pub hi: Option<BigInt>,
}

impl Interval {
    pub fn nonnegative() -> Self {
        Interval { lo: BigInt::zero(), hi: None }
    }

    pub fn exact(v: BigInt) -> Self {
        Interval { lo: v.clone(), hi: Some(v) }
    }

    pub fn value(&self) -> Option<&BigInt> {
        match &self.hi {
            Some(hi) if *hi == self.lo => Some(hi),
            _ => None,
        }
    }

    /// True when `self` lies inside `other`.
    pub fn within(&self, other: &Interval) -> bool {
        self.lo >= other.lo
            && match (&self.hi, &other.hi) {
                (_, None) => true,
                (None, Some(_)) => false,
                (Some(a), Some(b)) => a <= b,
            }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.hi, self.value()) {
            (_, Some(v)) => write!(f, "{v}"),
            (Some(hi), None) => write!(f, "[{}, {}]", self.lo, hi),
            (None, _) => write!(f, "[{}, inf)", self.lo),
        }
    }
}

#[derive(Debug, Clone)]
struct Constraint {
    terms: Vec<(usize, BigInt)>,
    rhs: BigInt,
    origin: String,
}

/// One step of a derivation: a variable became fixed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub variable: String,
    pub value: BigInt,
    pub reason: String,
}

#[derive(Debug, Clone, Default)]
pub(crate) struct LinearSolver {
    names: Vec<String>,
    bounds: Vec<Interval>,
    constraints: Vec<Constraint>,
    steps: Vec<Step>,
}

pub(crate) const MAX_SWEEPS: usize = 10_000;

impl LinearSolver {
    pub fn add_var(&mut self, name: impl Into<String>, bounds: Interval) -> usize {
        self.names.push(name.into());
        self.bounds.push(bounds);
        self.names.len() - 1
    }

    pub fn bounds(&self, var: usize) -> &Interval {
        &self.bounds[var]
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// `Σ coeff · x = rhs`.
    pub fn add_constraint(&mut self, terms: Vec<(usize, BigInt)>, rhs: BigInt, origin: impl Into<String>) {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        self.constraints.push(Constraint { terms, rhs, origin: origin.into() });
    }

    pub fn solve(&mut self) -> Result<()> {
        for b in &self.bounds {
            check_nonempty(b, "initial bounds")?;
        }
        for _ in 0..MAX_SWEEPS {
            let mut changed = false;
            for ci in 0..self.constraints.len() {
                changed |= self.tighten(ci)?;
            }
            if !changed {
                return Ok(());
            }
        }
        Err(Error::NoFixedPoint(MAX_SWEEPS))
    }

    fn tighten(&mut self, ci: usize) -> Result<bool> {
        let mut changed = false;
        let n_terms = self.constraints[ci].terms.len();
        if n_terms == 0 {
            if !self.constraints[ci].rhs.is_zero() {
                return Err(Error::Inconsistent(format!(
                    "{} requires 0 = {}",
                    self.constraints[ci].origin, self.constraints[ci].rhs
                )));
            }
            return Ok(false);
        }
        for t in 0..n_terms {
            let (var, coeff) = self.constraints[ci].terms[t].clone();
            // range of the other terms: (lo, hi) with None = -inf / +inf
            let mut rest_lo = Some(BigInt::zero());
            let mut rest_hi = Some(BigInt::zero());
            for (u, (w, c)) in self.constraints[ci].terms.iter().enumerate() {
                if u == t {
                    continue;
                }
                let b = &self.bounds[*w];
                let (lo_part, hi_part) = if c.is_positive() {
                    (Some(c * &b.lo), b.hi.as_ref().map(|h| c * h))
                } else {
                    (b.hi.as_ref().map(|h| c * h), Some(c * &b.lo))
                };
                rest_lo = rest_lo.zip(lo_part).map(|(a, b)| a + b);
                rest_hi = rest_hi.zip(hi_part).map(|(a, b)| a + b);
            }
            let rhs = &self.constraints[ci].rhs;
            // coeff·x ∈ [rhs - rest_hi, rhs - rest_lo]
            let scaled_lo = rest_hi.map(|h| rhs - h);
            let scaled_hi = rest_lo.map(|l| rhs - l);
            let (new_lo, new_hi) = if coeff.is_positive() {
                (
                    scaled_lo.map(|v| div_ceil(&v, &coeff)),
                    scaled_hi.map(|v| div_floor(&v, &coeff)),
                )
            } else {
                let m = -&coeff;
                (
                    scaled_hi.map(|v| div_ceil(&(-v), &m)),
                    scaled_lo.map(|v| div_floor(&(-v), &m)),
                )
            };
            let before = self.bounds[var].clone();
            let b = &mut self.bounds[var];
            if let Some(l) = new_lo {
                if l > b.lo {
                    b.lo = l;
                }
            }
            if let Some(h) = new_hi {
                if b.hi.as_ref().is_none_or(|cur| h < *cur) {
                    b.hi = Some(h);
                }
            }
            if *b != before {
                changed = true;
                let origin = self.constraints[ci].origin.clone();
                check_nonempty(&self.bounds[var], &format!("{} at {}", origin, self.names[var]))?;
                if before.value().is_none() {
                    if let Some(v) = self.bounds[var].value() {
                        let reason = match self.arithmetic(ci, t) {
                            Some(expr) => format!("{origin}: {expr}"),
                            None => format!("{origin}: bounds"),
                        };
                        self.steps.push(Step { variable: self.names[var].clone(), value: v.clone(), reason });
                    }
                }
            }
        }
        Ok(changed)
    }
}

impl LinearSolver {
    /// `x = rhs - Σ c·w` with known values, for constraints whose other
    /// terms are all fixed and whose coefficients are units.
    fn arithmetic(&self, ci: usize, t: usize) -> Option<String> {
        let c = &self.constraints[ci];
        let coeff = &c.terms[t].1;
        if !coeff.abs().is_one() {
            return None;
        }
        let mut out = String::new();
        if !c.rhs.is_zero() {
            out.push_str(&(&c.rhs * coeff).to_string());
        }
        for (u, (w, cw)) in c.terms.iter().enumerate() {
            if u == t {
                continue;
            }
            let v = self.bounds[*w].value()? * -(cw * coeff);
            if out.is_empty() {
                out.push_str(&v.to_string());
            } else if v.is_negative() {
                out.push_str(&format!(" - {}", -v));
            } else {
                out.push_str(&format!(" + {v}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        Some(out)
    }
}

fn check_nonempty(b: &Interval, context: &str) -> Result<()> {
    if b.hi.as_ref().is_some_and(|h| *h < b.lo) {
        Err(Error::Inconsistent(format!("{context}: empty interval")))
    } else {
        Ok(())
    }
}
