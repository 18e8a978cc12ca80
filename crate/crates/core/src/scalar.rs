//! Exact scalars and the small ring abstraction shared by tensor evaluation,
//! quotient-ring points and elimination.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// A commutative ring element that knows how to build constants in its own
/// ring. Quotient-ring elements carry their modulus, so constants are always
/// produced "like" an existing element.
pub trait RingElem: Clone + Debug + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_rational_like(&self, c: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn scale(&self, c: &Rational) -> Self {
        self.mul(&self.from_rational_like(c))
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// Rings in which elimination is attempted. `try_inv` returns `None` for zero
/// and for zero divisors.
pub trait FieldElem: RingElem {
    fn try_inv(&self) -> Option<Self>;
}

impl RingElem for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn from_rational_like(&self, c: &Rational) -> Self {
        c.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl FieldElem for Rational {
    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `C(a, b)` with `C(a, b) = 0` whenever `b < 0` or `a < b`.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if b < 0 || a < b {
        return BigInt::zero();
    }
    // a >= b >= 0 here
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for t in 0..b {
        acc = acc * BigInt::from(a - t) / BigInt::from(t + 1);
    }
    acc
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, t| acc * BigInt::from(t))
}

/// Converts an integral rational to an integer, or `None`.
pub fn to_integer(r: &Rational) -> Option<BigInt> {
    if r.is_integer() {
        Some(r.to_integer())
    } else {
        None
    }
}

/// `ceil(a / b)` for `b > 0`.
pub fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    debug_assert!(b.is_positive());
    let (q, r) = a.div_mod_floor(b);
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

/// `floor(a / b)` for `b > 0`.
pub fn div_floor(a: &BigInt, b: &BigInt) -> BigInt {
    debug_assert!(b.is_positive());
    a.div_floor(b)
}

/// Parses `"p"` or `"p/q"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Bernoulli numbers `B_0 ..= B_m` with `B_1 = -1/2`, via
/// `sum_{k=0}^{m} C(m+1, k) B_k = 0`.
pub fn bernoulli_numbers(m: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(m + 1);
    b.push(Rational::one());
    for j in 1..=m {
        let mut acc = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += Rational::from_integer(binomial(j as i64 + 1, k as i64)) * bk;
        }
        b.push(-acc / Rational::from_integer(BigInt::from(j as i64 + 1)));
    }
    b
}
