//! Bott's formula for `h^i(ℙⁿ, Ω^j(k))`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::binomial;

/// A request for `h^i(ℙⁿ, Ω^j(k))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BottQuery {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub k: i64,
}

impl BottQuery {
    pub fn new(n: usize, i: usize, j: usize, k: i64) -> Result<Self> {
        let q = BottQuery { n, i, j, k };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("projective dimension must be at least 1".into()));
        }
        if self.i > self.n {
            return Err(Error::InvalidParameter(format!(
                "cohomological degree i={} exceeds n={}",
                self.i, self.n
            )));
        }
        if self.j > self.n {
            return Err(Error::InvalidParameter(format!(
                "form degree j={} exceeds n={}",
                self.j, self.n
            )));
        }
        Ok(())
    }
}

pub fn bott_dim(q: &BottQuery) -> Result<BigInt> {
    q.validate()?;
    let (n, i, j, k) = (q.n as i64, q.i as i64, q.j as i64, q.k);
    let value = if i == 0 && k > j {
        binomial(n + k - j, k) * binomial(k - 1, j)
    } else if i == n && k < j - n {
        binomial(j - k, -k) * binomial(-k - 1, n - j)
    } else if k == 0 && i == j {
        BigInt::one()
    } else {
        BigInt::zero()
    };
    Ok(value)
}

/// `[h^0, …, h^n]` of `Ω^j(k)` on `ℙⁿ`.
pub fn dims_vector(n: usize, j: usize, k: i64) -> Result<Vec<BigInt>> {
    (0..=n).map(|i| bott_dim(&BottQuery { n, i, j, k })).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: usize, i: usize, j: usize, k: i64) -> BigInt {
        bott_dim(&BottQuery::new(n, i, j, k).unwrap()).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn identity_case() {
        for n in 1..=7 {
            for j in 0..=n {
                assert_eq!(b(n, j, j, 0), big(1));
            }
        }
        assert_eq!(dims_vector(4, 1, 0).unwrap(), vec![big(0), big(1), big(0), big(0), big(0)]);
    }

    #[test]
    fn twisted_one_forms() {
        for n in 3..=8 {
            for d in 2..=7i64 {
                let expected = binomial(n as i64 + d - 1, d) * big(d - 1);
                assert_eq!(b(n, 0, 1, d), expected);
            }
        }
    }

    #[test]
    fn tangent_twists_vanish_in_low_degree() {
        for n in 4..=8 {
            for d in 2..=7i64 {
                for i in 0..=2 {
                    assert_eq!(b(n, i, n - 1, n as i64 + 1 - d), big(0));
                }
            }
        }
    }

    /// `H⁰(ℙ⁴, O(3))` counted as cubic monomials in five variables.
    #[test]
    fn sections_of_o3_by_monomial_count() {
        let count = (0..4u32.pow(5))
            .filter(|code| (0..5).map(|v| (code / 4u32.pow(v)) % 4).sum::<u32>() == 3)
            .count();
        assert_eq!(count, 35);
        assert_eq!(dims_vector(4, 0, 3).unwrap(), vec![big(35), big(0), big(0), big(0), big(0)]);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(BottQuery::new(4, 2, 5, 1).is_err());
        assert!(BottQuery::new(4, 5, 2, 1).is_err());
        assert!(bott_dim(&BottQuery { n: 3, i: 0, j: 4, k: 0 }).is_err());
    }

    #[test]
    fn serre_duality_and_single_nonzero_degree() {
        for n in 1..=6 {
            for j in 0..=n {
                for k in -12..=12i64 {
                    let v = dims_vector(n, j, k).unwrap();
                    for i in 0..=n {
                        assert_eq!(v[i], b(n, n - i, n - j, -k), "n={n} i={i} j={j} k={k}");
                    }
                    if k != 0 {
                        assert!(v.iter().filter(|x| !x.is_zero()).count() <= 1);
                    }
                }
            }
        }
    }

    /// `χ(O(k)) = C(n+k, n)` as a polynomial in k.
    #[test]
    fn euler_characteristic_of_line_bundles() {
        for n in 1..=6usize {
            for k in -12..=12i64 {
                let chi: BigInt = dims_vector(n, 0, k)
                    .unwrap()
                    .iter()
                    .enumerate()
                    .map(|(i, x)| if i % 2 == 0 { x.clone() } else { -x })
                    .sum();
                // (k+1)(k+2)…(k+n)/n!
                let mut num = BigInt::one();
                for t in 1..=n as i64 {
                    num *= k + t;
                }
                assert_eq!(chi, num / crate::scalar::factorial(n as u32));
            }
        }
    }
}
