//! Univariate polynomials over ℚ and residues in ℚ[t]/(m(t)).

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{FieldElem, Rational, RingElem};

/// Dense polynomial, coefficient of `t^i` at index `i`, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        UPoly::new(vec![c])
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        UPoly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.recip();
                UPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Euclidean division; panics on a zero divisor polynomial.
    pub fn div_rem(&self, divisor: &UPoly) -> (UPoly, UPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = &rem[top] * &lc_inv;
            if !Zero::is_zero(&c) {
                let shift = top - dd;
                for (k, dc) in divisor.coeffs.iter().enumerate() {
                    rem[shift + k] -= &c * dc;
                }
                quot[shift] = c;
            }
            rem.pop();
        }
        (UPoly::new(quot), UPoly::new(rem))
    }

    pub fn rem(&self, divisor: &UPoly) -> UPoly {
        self.div_rem(divisor).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s)` with `g = gcd(self, m)` monic and `s * self ≡ g (mod m)`.
    pub fn gcd_with_cofactor(&self, m: &UPoly) -> (UPoly, UPoly) {
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (UPoly::zero(), UPoly::constant(Rational::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = RingElem::sub(&s0, &RingElem::mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        let lc = r0.leading().cloned().unwrap_or_else(Rational::one);
        let inv = lc.recip();
        (r0.monic(), RingElem::scale(&s0, &inv))
    }

    /// Squarefree part `p / gcd(p, p')`, made monic.
    pub fn squarefree_part(&self) -> UPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Composition `self(x)` for `x` in any ring, by Horner.
    pub fn eval_in<R: RingElem>(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(x.zero_like(), |acc, c| acc.mul(x).add(&x.from_rational_like(c)))
    }
}

impl RingElem for UPoly {
    fn zero_like(&self) -> Self {
        UPoly::zero()
    }
    fn one_like(&self) -> Self {
        UPoly::constant(Rational::one())
    }
    fn from_rational_like(&self, c: &Rational) -> Self {
        UPoly::constant(c.clone())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        UPoly::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }
    fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        UPoly::new((0..len).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }
    fn neg(&self) -> Self {
        UPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// A residue modulo a fixed monic squarefree `m(t)` of positive degree.
///
/// The ring is a product of number fields when `m` factors; elements that are
/// nonzero but not invertible surface as zero divisors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotElem {
    modulus: Arc<UPoly>,
    rep: UPoly,
}

impl QuotElem {
    pub fn new(modulus: Arc<UPoly>, rep: UPoly) -> Self {
        let rep = rep.rem(&modulus);
        QuotElem { modulus, rep }
    }

    /// Checks the modulus is monic, squarefree and of positive degree.
    pub fn check_modulus(m: &UPoly) -> Result<()> {
        match m.degree() {
            None | Some(0) => Err(Error::InvalidParameter(
                "quotient modulus must have positive degree".into(),
            )),
            Some(_) if !m.leading().is_some_and(|c| c.is_one()) => {
                Err(Error::InvalidParameter("quotient modulus must be monic".into()))
            }
            Some(_) => {
                if m.gcd(&m.derivative()).degree() == Some(0) {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter(
                        "quotient modulus must be squarefree".into(),
                    ))
                }
            }
        }
    }

    /// The class of `t`.
    pub fn generator(modulus: Arc<UPoly>) -> Self {
        QuotElem::new(modulus, UPoly::t())
    }

    pub fn constant(modulus: Arc<UPoly>, c: Rational) -> Self {
        QuotElem::new(modulus, UPoly::constant(c))
    }

    pub fn modulus(&self) -> &Arc<UPoly> {
        &self.modulus
    }

    pub fn rep(&self) -> &UPoly {
        &self.rep
    }

    fn assert_same_ring(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.modulus, &other.modulus) || self.modulus == other.modulus,
            "quotient ring mismatch"
        );
    }
}

impl RingElem for QuotElem {
    fn zero_like(&self) -> Self {
        QuotElem { modulus: self.modulus.clone(), rep: UPoly::zero() }
    }
    fn one_like(&self) -> Self {
        QuotElem::constant(self.modulus.clone(), Rational::one())
    }
    fn from_rational_like(&self, c: &Rational) -> Self {
        QuotElem::constant(self.modulus.clone(), c.clone())
    }
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        QuotElem { modulus: self.modulus.clone(), rep: self.rep.add(&other.rep) }
    }
    fn sub(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        QuotElem { modulus: self.modulus.clone(), rep: self.rep.sub(&other.rep) }
    }
    fn mul(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        QuotElem::new(self.modulus.clone(), self.rep.mul(&other.rep))
    }
    fn neg(&self) -> Self {
        QuotElem { modulus: self.modulus.clone(), rep: self.rep.neg() }
    }
    fn scale(&self, c: &Rational) -> Self {
        QuotElem {
            modulus: self.modulus.clone(),
            rep: UPoly::new(self.rep.coeffs().iter().map(|x| x * c).collect()),
        }
    }
}

impl FieldElem for QuotElem {
    fn try_inv(&self) -> Option<Self> {
        if self.rep.is_zero() {
            return None;
        }
        let (g, s) = self.rep.gcd_with_cofactor(&self.modulus);
        if g.degree() == Some(0) {
            Some(QuotElem::new(self.modulus.clone(), s))
        } else {
            None
        }
    }
}
