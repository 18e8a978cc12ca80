//! Sparse symmetric and partially symmetric tensors on `V = ℚ^{n+1}` and
//! their multilinear evaluation.
//!
//! A [`SymTensor`] stores the polynomial `q(x) = Σ c_m x^m`; its multilinear
//! form is the polarization, the unique symmetric `Q` with `Q(x,…,x) = q(x)`.
//! A [`PartialSymTensor`] stores `Σ c_{m,s} x^m ⊗ e_s^*` with `|m| = d-1`: the
//! first `d-1` arguments are polarized, the last one is paired with slot `s`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{factorial, Rational, RingElem};

/// Exponent vector of a monomial in `x_0, …, x_n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn unit(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// All monomials of the given degree in `vars` variables, in lexicographic
    /// order of exponent vectors.
    pub fn all(vars: usize, degree: u32) -> Vec<MultiIndex> {
        fn go(vars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == vars {
                prefix.push(left);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in 0..=left {
                prefix.push(e);
                go(vars, left - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if vars > 0 {
            go(vars, degree, &mut Vec::with_capacity(vars), &mut out);
        }
        out
    }

    pub fn plus_unit(&self, i: usize) -> MultiIndex {
        let mut e = self.0.clone();
        e[i] += 1;
        MultiIndex(e)
    }

    pub fn minus_unit(&self, i: usize) -> Option<MultiIndex> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(MultiIndex(e))
    }

    /// `|m|! / Π m_i!`, the number of index sequences with content `m`.
    pub fn multinomial(&self) -> BigInt {
        self.0
            .iter()
            .fold(factorial(self.degree()), |acc, &e| acc / factorial(e))
    }

    /// `Π u_i^{m_i}`.
    pub fn eval<R: RingElem>(&self, u: &[R]) -> R {
        let mut acc = u[0].one_like();
        for (x, &e) in u.iter().zip(&self.0) {
            if e > 0 {
                acc = acc.mul(&x.pow(e));
            }
        }
        acc
    }

    /// Polarization of `x^m` at `args` (one argument per unit of degree):
    /// the average of `Π_j args[j][s_j]` over index sequences `s` of content `m`.
    /// `args` must be nonempty.
    pub fn polarize<R: RingElem>(&self, args: &[&[R]]) -> R {
        fn go<R: RingElem>(j: usize, left: &mut [u32], args: &[&[R]], acc: &R, sum: &mut R) {
            if j == args.len() {
                *sum = sum.add(acc);
                return;
            }
            for i in 0..left.len() {
                if left[i] == 0 || args[j][i].is_zero() {
                    continue;
                }
                left[i] -= 1;
                go(j + 1, left, args, &acc.mul(&args[j][i]), sum);
                left[i] += 1;
            }
        }
        let like = &args[0][0];
        let mut sum = like.zero_like();
        let mut left = self.0.clone();
        go(0, &mut left, args, &like.one_like(), &mut sum);
        sum.scale(&Rational::new(BigInt::one(), self.multinomial()))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match e {
                1 => write!(f, "x{i}")?,
                _ => write!(f, "x{i}^{e}")?,
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

fn check_args<R>(n: usize, expected: usize, args: &[Vec<R>]) -> Result<()> {
    if args.len() != expected {
        return Err(Error::DimensionMismatch { left: expected, right: args.len() });
    }
    for a in args {
        if a.len() != n + 1 {
            return Err(Error::DimensionMismatch { left: n + 1, right: a.len() });
        }
    }
    Ok(())
}

fn check_shape(n: usize, d: usize) -> Result<()> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidParameter(format!("tensor shape needs n >= 1 and d >= 1, got n={n}, d={d}")));
    }
    Ok(())
}

/// An element of `Sym^d V*`, stored as a homogeneous polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymTensor {
    n: usize,
    d: usize,
    entries: BTreeMap<MultiIndex, Rational>,
}

impl SymTensor {
    pub fn zero(n: usize, d: usize) -> Result<Self> {
        check_shape(n, d)?;
        Ok(SymTensor { n, d, entries: BTreeMap::new() })
    }

    pub fn from_entries(n: usize, d: usize, entries: impl IntoIterator<Item = (MultiIndex, Rational)>) -> Result<Self> {
        let mut t = Self::zero(n, d)?;
        for (m, c) in entries {
            t.add_term(m, c)?;
        }
        Ok(t)
    }

    /// Adds `c · x^m`.
    pub fn add_term(&mut self, m: MultiIndex, c: Rational) -> Result<()> {
        if m.vars() != self.n + 1 || m.degree() as usize != self.d {
            return Err(Error::InvalidParameter(format!(
                "monomial {m} does not fit Sym^{} in {} variables",
                self.d,
                self.n + 1
            )));
        }
        let e = self.entries.entry(m.clone()).or_insert_with(Rational::zero);
        *e += c;
        if Zero::is_zero(e) {
            self.entries.remove(&m);
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn entries(&self) -> &BTreeMap<MultiIndex, Rational> {
        &self.entries
    }

    pub fn coeff(&self, m: &MultiIndex) -> Rational {
        self.entries.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, other: &SymTensor) -> Result<SymTensor> {
        if (self.n, self.d) != (other.n, other.d) {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        let mut out = self.clone();
        for (m, c) in &other.entries {
            out.add_term(m.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> SymTensor {
        if Zero::is_zero(c) {
            return SymTensor { n: self.n, d: self.d, entries: BTreeMap::new() };
        }
        let entries = self.entries.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        SymTensor { n: self.n, d: self.d, entries }
    }

    /// `q(u) = Q(u, …, u)`.
    pub fn eval<R: RingElem>(&self, u: &[R]) -> R {
        self.entries
            .iter()
            .fold(u[0].zero_like(), |acc, (m, c)| acc.add(&m.eval(u).scale(c)))
    }

    /// `∂q/∂x_i (u)`.
    pub fn partial<R: RingElem>(&self, i: usize, u: &[R]) -> R {
        let mut acc = u[0].zero_like();
        for (m, c) in &self.entries {
            if let Some(lower) = m.minus_unit(i) {
                let k = Rational::from_integer(BigInt::from(m.exponents()[i]));
                acc = acc.add(&lower.eval(u).scale(&(c * k)));
            }
        }
        acc
    }

    /// `Q(u, …, u, w) = (1/d) Σ w_i ∂_i q(u)`.
    pub fn eval_last<R: RingElem>(&self, u: &[R], w: &[R]) -> R {
        let mut acc = u[0].zero_like();
        for (i, wi) in w.iter().enumerate() {
            if !wi.is_zero() {
                acc = acc.add(&self.partial(i, u).mul(wi));
            }
        }
        acc.scale(&Rational::new(BigInt::one(), BigInt::from(self.d)))
    }

    /// The full multilinear form `Q(args[0], …, args[d-1])`.
    pub fn polarized_eval<R: RingElem>(&self, args: &[Vec<R>]) -> Result<R> {
        check_args(self.n, self.d, args)?;
        let refs: Vec<&[R]> = args.iter().map(Vec::as_slice).collect();
        Ok(self
            .entries
            .iter()
            .fold(args[0][0].zero_like(), |acc, (m, c)| acc.add(&m.polarize(&refs).scale(c))))
    }
}

/// An element of `Sym^{d-1} V* ⊗ V*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialSymTensor {
    n: usize,
    d: usize,
    entries: BTreeMap<(MultiIndex, usize), Rational>,
}

impl PartialSymTensor {
    pub fn zero(n: usize, d: usize) -> Result<Self> {
        check_shape(n, d)?;
        Ok(PartialSymTensor { n, d, entries: BTreeMap::new() })
    }

    pub fn from_entries(
        n: usize,
        d: usize,
        entries: impl IntoIterator<Item = ((MultiIndex, usize), Rational)>,
    ) -> Result<Self> {
        let mut t = Self::zero(n, d)?;
        for ((m, s), c) in entries {
            t.add_term(m, s, c)?;
        }
        Ok(t)
    }

    /// Adds `c · x^m ⊗ e_s^*`.
    pub fn add_term(&mut self, m: MultiIndex, slot: usize, c: Rational) -> Result<()> {
        if m.vars() != self.n + 1 || m.degree() as usize + 1 != self.d || slot > self.n {
            return Err(Error::InvalidParameter(format!(
                "term {m} (x) e{slot} does not fit Sym^{} (x) V* in {} variables",
                self.d - 1,
                self.n + 1
            )));
        }
        let key = (m, slot);
        let e = self.entries.entry(key.clone()).or_insert_with(Rational::zero);
        *e += c;
        if Zero::is_zero(e) {
            self.entries.remove(&key);
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn entries(&self) -> &BTreeMap<(MultiIndex, usize), Rational> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, other: &PartialSymTensor) -> Result<PartialSymTensor> {
        if (self.n, self.d) != (other.n, other.d) {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        let mut out = self.clone();
        for ((m, s), c) in &other.entries {
            out.add_term(m.clone(), *s, c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> PartialSymTensor {
        if Zero::is_zero(c) {
            return PartialSymTensor { n: self.n, d: self.d, entries: BTreeMap::new() };
        }
        let entries = self.entries.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        PartialSymTensor { n: self.n, d: self.d, entries }
    }

    /// The image of `q` under `Sym^d V* ⊂ Sym^{d-1} V* ⊗ V*`, so that
    /// `embed(q)(v, …, v, w) = Q(v, …, v, w)`.
    pub fn embed(q: &SymTensor) -> PartialSymTensor {
        let mut out = PartialSymTensor { n: q.n, d: q.d, entries: BTreeMap::new() };
        let inv_d = Rational::new(BigInt::one(), BigInt::from(q.d));
        for (m, c) in &q.entries {
            for s in 0..=q.n {
                if let Some(lower) = m.minus_unit(s) {
                    let k = Rational::from_integer(BigInt::from(m.exponents()[s]));
                    out.add_term(lower, s, c * k * &inv_d).expect("shape preserved");
                }
            }
        }
        out
    }

    /// `α(u, …, u, w) = Σ c_{m,s} u^m w_s`.
    pub fn eval_last<R: RingElem>(&self, u: &[R], w: &[R]) -> R {
        let mut acc = u[0].zero_like();
        for ((m, s), c) in &self.entries {
            if !w[*s].is_zero() {
                acc = acc.add(&m.eval(u).mul(&w[*s]).scale(c));
            }
        }
        acc
    }

    /// `α(u, …, u, e_i)` for every `i`.
    pub fn row<R: RingElem>(&self, u: &[R]) -> Vec<R> {
        let mut out = vec![u[0].zero_like(); self.n + 1];
        for ((m, s), c) in &self.entries {
            out[*s] = out[*s].add(&m.eval(u).scale(c));
        }
        out
    }

    /// Multilinear evaluation; symmetric in the first `d-1` arguments.
    pub fn polarized_eval<R: RingElem>(&self, args: &[Vec<R>]) -> Result<R> {
        check_args(self.n, self.d, args)?;
        let (head, last) = args.split_at(self.d - 1);
        let last = &last[0];
        let like = args[0][0].zero_like();
        if head.is_empty() {
            return Ok(self
                .entries
                .iter()
                .fold(like, |acc, ((_, s), c)| acc.add(&last[*s].scale(c))));
        }
        let refs: Vec<&[R]> = head.iter().map(Vec::as_slice).collect();
        let mut acc = like;
        for ((m, s), c) in &self.entries {
            if last[*s].is_zero() {
                continue;
            }
            acc = acc.add(&m.polarize(&refs).mul(&last[*s]).scale(c));
        }
        Ok(acc)
    }
}

/// Arguments `(u, …, u)` of length `k` followed by `w`.
pub fn repeated_then<R: Clone>(u: &[R], k: usize, w: &[R]) -> Vec<Vec<R>> {
    let mut args = vec![u.to_vec(); k];
    args.push(w.to_vec());
    args
}
