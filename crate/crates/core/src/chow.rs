//! Truncated Chow ring of a hypersurface `X ⊂ ℙⁿ` generated by the hyperplane
//! class `h`, and the characteristic classes feeding Hirzebruch–Riemann–Roch.
//!
//! Every class lives on `X`, so products are truncated above `h^{n-1}` and the
//! degree map sends `h^{n-1}` to `d`. All arithmetic is exact.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{bernoulli_numbers, factorial, to_integer, Rational};

/// `Σ_{i<n} coeffs[i] · h^i` on an `(n-1)`-dimensional hypersurface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowElement {
    n: usize,
    coeffs: Vec<Rational>,
}

impl ChowElement {
    /// Builds from coefficients by degree; missing degrees are zero and
    /// anything beyond `h^{n-1}` is dropped.
    pub fn new(n: usize, mut coeffs: Vec<Rational>) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "ambient dimension must be at least 3, got {n}"
            )));
        }
        coeffs.resize(n, Rational::zero());
        Ok(ChowElement { n, coeffs })
    }

    pub fn from_ints(n: usize, coeffs: &[i64]) -> Result<Self> {
        Self::new(n, coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn scalar(n: usize, c: Rational) -> Result<Self> {
        Self::new(n, vec![c])
    }

    pub fn one(n: usize) -> Result<Self> {
        Self::scalar(n, Rational::one())
    }

    /// `a + b·h`.
    pub fn linear(n: usize, a: Rational, b: Rational) -> Result<Self> {
        Self::new(n, vec![a, b])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> &Rational {
        &self.coeffs[degree]
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { left: self.n, right: other.n })
        }
    }

    fn zero_like(&self) -> Self {
        ChowElement { n: self.n, coeffs: vec![Rational::zero(); self.n] }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(ChowElement {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(ChowElement {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ChowElement { n: self.n, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.zero_like();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(self.n - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = ChowElement { n: self.n, coeffs: one_coeffs(self.n) };
        for _ in 0..e {
            acc = acc.mul(self).expect("same ambient dimension");
        }
        acc
    }

    /// Inverse in the truncated ring; requires a nonzero constant term.
    pub fn invert(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NonUnit);
        }
        let inv0 = a0.recip();
        let mut b = vec![Rational::zero(); self.n];
        b[0] = inv0.clone();
        for k in 1..self.n {
            let mut acc = Rational::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &b[k - i];
            }
            b[k] = -acc * &inv0;
        }
        Ok(ChowElement { n: self.n, coeffs: b })
    }

    /// `exp(x)` for an element with zero constant term (nilpotent).
    pub fn exp_nilpotent(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidParameter(
                "exponential is only defined for nilpotent classes".into(),
            ));
        }
        let mut result = ChowElement { n: self.n, coeffs: one_coeffs(self.n) };
        let mut term = result.clone();
        for k in 1..self.n {
            term = term.mul(self)?.scale(&Rational::new(BigInt::one(), BigInt::from(k)));
            result = result.add(&term)?;
        }
        Ok(result)
    }

    /// Degree map: `d` times the coefficient of `h^{n-1}`.
    pub fn integrate(&self, d: i64) -> Rational {
        &self.coeffs[self.n - 1] * Rational::from_integer(d.into())
    }
}

fn one_coeffs(n: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[0] = Rational::one();
    v
}

/// Rank and total Chern class of a bundle on `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicData {
    rank: usize,
    total_chern: ChowElement,
}

impl CharacteristicData {
    pub fn new(rank: usize, total_chern: ChowElement) -> Result<Self> {
        if !total_chern.coeff(0).is_one() {
            return Err(Error::InvalidParameter(
                "total Chern class must have constant term 1".into(),
            ));
        }
        Ok(CharacteristicData { rank, total_chern })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn total_chern(&self) -> &ChowElement {
        &self.total_chern
    }

    /// Power sums `p_1 ..= p_{n-1}` of the Chern roots as scalars (the
    /// coefficient of `h^k` in `p_k`), from the `c_i` by Newton's identities.
    pub fn power_sums(&self) -> Vec<Rational> {
        let n = self.total_chern.n();
        let e = self.total_chern.coeffs();
        let mut p = vec![Rational::zero(); n];
        for k in 1..n {
            let sign = |m: usize| if m.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
            let mut acc = sign(k - 1) * Rational::from_integer(BigInt::from(k)) * &e[k];
            for i in 1..k {
                acc += sign(k - 1 + i) * &e[k - i] * &p[i];
            }
            p[k] = acc;
        }
        p
    }
}

/// `c(T_X) = (1+h)^{n+1} · (1+dh)^{-1}` with rank `n - 1`.
pub fn total_chern_tangent(n: usize, d: i64) -> Result<CharacteristicData> {
    if n < 3 || d < 1 {
        return Err(Error::InvalidParameter(format!(
            "tangent data needs n >= 3 and d >= 1, got n={n}, d={d}"
        )));
    }
    let one = Rational::one();
    let hyperplane = ChowElement::linear(n, one.clone(), one.clone())?;
    let twist = ChowElement::linear(n, one, Rational::from_integer(d.into()))?;
    let c = hyperplane.pow(n as u32 + 1).mul(&twist.invert()?)?;
    CharacteristicData::new(n - 1, c)
}

/// `ch = rank + Σ_k p_k h^k / k!`.
pub fn chern_character(cd: &CharacteristicData) -> ChowElement {
    let n = cd.total_chern.n();
    let p = cd.power_sums();
    let mut coeffs = vec![Rational::from_integer(BigInt::from(cd.rank))];
    for (k, pk) in p.iter().enumerate().skip(1) {
        coeffs.push(pk / Rational::from_integer(factorial(k as u32)));
    }
    ChowElement::new(n, coeffs).expect("n already validated")
}

/// Chern character of the dual bundle: odd degrees change sign.
pub fn dual_character(ch: &ChowElement) -> ChowElement {
    let coeffs = ch
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
        .collect();
    ChowElement { n: ch.n(), coeffs }
}

/// Todd class as `exp(log td)`, where per Chern root
/// `log(x / (1 - e^{-x})) = x/2 - Σ_{k≥1} B_{2k} x^{2k} / (2k · (2k)!)`.
pub fn todd_class(cd: &CharacteristicData) -> ChowElement {
    let n = cd.total_chern.n();
    let p = cd.power_sums();
    let bernoulli = bernoulli_numbers(n);
    let mut log_td = vec![Rational::zero(); n];
    if n > 1 {
        log_td[1] = &p[1] / Rational::from_integer(BigInt::from(2));
    }
    for k in (2..n).step_by(2) {
        let denom = Rational::from_integer(BigInt::from(k) * factorial(k as u32));
        log_td[k] = -(&bernoulli[k] * &p[k]) / denom;
    }
    ChowElement::new(n, log_td)
        .and_then(|l| l.exp_nilpotent())
        .expect("log of the Todd class is nilpotent")
}

/// `∫_X ch(T_X) · ch(Ω_X) · td(X)` before the integrality check.
pub fn hrr_end_tangent(n: usize, d: i64) -> Result<Rational> {
    let cd = total_chern_tangent(n, d)?;
    let ch = chern_character(&cd);
    let integrand = ch.mul(&dual_character(&ch))?.mul(&todd_class(&cd))?;
    Ok(integrand.integrate(d))
}

/// `χ(X, T_X ⊗ Ω_X)` by Hirzebruch–Riemann–Roch.
pub fn chi_end_tangent(n: usize, d: i64) -> Result<BigInt> {
    if n < 3 || d < 2 {
        return Err(Error::InvalidParameter(format!(
            "chi(End T_X) needs n >= 3 and d >= 2, got n={n}, d={d}"
        )));
    }
    let value = hrr_end_tangent(n, d)?;
    to_integer(&value).ok_or_else(|| Error::NonIntegral {
        quantity: format!("chi(T_X (x) Omega_X) for n={n}, d={d}"),
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, rat};
    use proptest::prelude::*;

    fn el(n: usize, c: &[i64]) -> ChowElement {
        ChowElement::from_ints(n, c).unwrap()
    }

    #[test]
    fn small_products() {
        let a = el(4, &[1, 1]);
        assert_eq!(a.mul(&a).unwrap(), el(4, &[1, 2, 1]));
        assert_eq!(a.mul(&el(4, &[1])).unwrap(), a);
        // independent expansion: (1+h)^5 = 1+5h+10h²+10h³, (1+4h)^{-1} = 1-4h+16h²-64h³
        let lhs = el(4, &[1, 1]).pow(5).mul(&el(4, &[1, 4]).invert().unwrap()).unwrap();
        assert_eq!(lhs, el(4, &[1, 1, 6, -14]));
    }

    #[test]
    fn mismatch_and_non_unit() {
        assert_eq!(
            el(4, &[1]).mul(&el(3, &[1])),
            Err(Error::DimensionMismatch { left: 4, right: 3 })
        );
        assert_eq!(el(4, &[0, 1]).invert(), Err(Error::NonUnit));
        assert!(ChowElement::from_ints(2, &[1]).is_err());
    }

    #[test]
    fn geometric_series() {
        for d in -3..=5i64 {
            let inv = el(4, &[1, d]).invert().unwrap();
            assert_eq!(inv, el(4, &[1, -d, d * d, -d * d * d]));
        }
        assert_eq!(el(5, &[1]).invert().unwrap(), el(5, &[1]));
    }

    #[test]
    fn tangent_chern_classes_match_closed_forms() {
        for d in 1..=12i64 {
            let c4 = total_chern_tangent(4, d).unwrap();
            assert_eq!(c4.rank(), 3);
            assert_eq!(
                c4.total_chern(),
                &el(4, &[1, -d + 5, d * d - 5 * d + 10, -d * d * d + 5 * d * d - 10 * d + 10])
            );
            let c3 = total_chern_tangent(3, d).unwrap();
            assert_eq!(c3.total_chern(), &el(3, &[1, -d + 4, d * d - 4 * d + 6]));
        }
        // a hyperplane is ℙ³: c = (1+h)^4
        assert_eq!(total_chern_tangent(4, 1).unwrap().total_chern(), &el(4, &[1, 1]).pow(4));
        assert!(total_chern_tangent(2, 3).is_err());
    }

    #[test]
    fn chern_character_and_dual_displays() {
        for d in 1..=10i64 {
            let dr = rat(d);
            let ch = chern_character(&total_chern_tangent(4, d).unwrap());
            let expected = ChowElement::new(
                4,
                vec![
                    rat(3),
                    rat(5 - d),
                    frac(-1, 2) * &dr * &dr + frac(5, 2),
                    frac(-1, 6) * &dr * &dr * &dr + frac(5, 6),
                ],
            )
            .unwrap();
            assert_eq!(ch, expected);
            let dual = ChowElement::new(
                4,
                vec![
                    rat(3),
                    rat(d - 5),
                    frac(-1, 2) * &dr * &dr + frac(5, 2),
                    frac(1, 6) * &dr * &dr * &dr - frac(5, 6),
                ],
            )
            .unwrap();
            assert_eq!(dual_character(&ch), dual);

            let ch3 = chern_character(&total_chern_tangent(3, d).unwrap());
            let expected3 =
                ChowElement::new(3, vec![rat(2), rat(4 - d), frac(-1, 2) * &dr * &dr + rat(2)])
                    .unwrap();
            assert_eq!(ch3, expected3);
        }
    }

    #[test]
    fn rank_one_character_is_exponential() {
        let cd = CharacteristicData::new(1, el(4, &[1, 1])).unwrap();
        let ch = chern_character(&cd);
        assert_eq!(ch, ChowElement::new(4, vec![rat(1), rat(1), frac(1, 2), frac(1, 6)]).unwrap());
    }

    #[test]
    fn todd_displays() {
        for d in 1..=10i64 {
            let dr = rat(d);
            let td = todd_class(&total_chern_tangent(4, d).unwrap());
            let expected = ChowElement::new(
                4,
                vec![
                    rat(1),
                    frac(-1, 2) * &dr + frac(5, 2),
                    frac(1, 6) * &dr * &dr - frac(5, 4) * &dr + frac(35, 12),
                    frac(-1, 24) * (&dr - rat(5)) * (&dr * &dr - rat(5) * &dr + rat(10)),
                ],
            )
            .unwrap();
            assert_eq!(td, expected);
            let td3 = todd_class(&total_chern_tangent(3, d).unwrap());
            let expected3 = ChowElement::new(
                3,
                vec![rat(1), frac(-1, 2) * &dr + rat(2), frac(1, 6) * &dr * &dr - &dr + frac(11, 6)],
            )
            .unwrap();
            assert_eq!(td3, expected3);
        }
        let trivial = CharacteristicData::new(3, el(4, &[1])).unwrap();
        assert_eq!(todd_class(&trivial), el(4, &[1]));
    }

    #[test]
    fn integration() {
        assert_eq!(el(4, &[0, 0, 0, 1]).integrate(4), rat(4));
        assert_eq!(el(4, &[1]).integrate(4), rat(0));
    }

    #[test]
    fn chi_spot_values() {
        assert_eq!(chi_end_tangent(4, 2).unwrap(), BigInt::from(-9));
        assert_eq!(chi_end_tangent(4, 4).unwrap(), BigInt::from(-59));
        assert_eq!(chi_end_tangent(4, 5).unwrap(), BigInt::zero());
        assert_eq!(chi_end_tangent(3, 3).unwrap(), BigInt::from(-29));
        assert!(chi_end_tangent(4, 1).is_err());
    }

    #[test]
    fn chi_closed_forms() {
        for d in 2..=30i64 {
            let expected = d * (d - 5) * (13 * d * d - 25 * d + 10) / 8;
            assert_eq!(chi_end_tangent(4, d).unwrap(), BigInt::from(expected), "n=4 d={d}");
        }
        for d in 3..=20i64 {
            let expected = -(7 * d * d * d - 12 * d * d + 2 * d) / 3;
            assert_eq!(chi_end_tangent(3, d).unwrap(), BigInt::from(expected), "n=3 d={d}");
        }
    }

    #[test]
    fn chi_is_integral_beyond_paper_range() {
        for n in 3..=9 {
            for d in 2..=8 {
                chi_end_tangent(n, d).unwrap();
            }
        }
    }

    /// Power sums via `log c = Σ (-1)^{k-1} p_k h^k / k`, independent of Newton.
    #[test]
    fn newton_agrees_with_logarithm() {
        for d in 1..=6i64 {
            let cd = total_chern_tangent(6, d).unwrap();
            let c = cd.total_chern().clone();
            let x = c.sub(&el(6, &[1])).unwrap();
            let mut log = el(6, &[]);
            let mut xp = el(6, &[1]);
            for k in 1..6u32 {
                xp = xp.mul(&x).unwrap();
                let s = if k % 2 == 1 { frac(1, k as i64) } else { frac(-1, k as i64) };
                log = log.add(&xp.scale(&s)).unwrap();
            }
            let p = cd.power_sums();
            for k in 1..6usize {
                let s = if k % 2 == 1 { rat(1) } else { rat(-1) };
                assert_eq!(&p[k], &(log.coeff(k) * rat(k as i64) * s));
            }
        }
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=5).prop_map(|(a, b)| frac(a, b))
    }

    fn element(n: usize) -> impl Strategy<Value = ChowElement> {
        proptest::collection::vec(small_rat(), n).prop_map(move |c| ChowElement::new(n, c).unwrap())
    }

    fn unit(n: usize) -> impl Strategy<Value = ChowElement> {
        proptest::collection::vec(small_rat(), n - 1).prop_map(move |mut c| {
            c.insert(0, rat(1));
            ChowElement::new(n, c).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn ring_laws(a in element(5), b in element(5), c in element(5)) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
        }

        #[test]
        fn inverse_round_trip(a in unit(5)) {
            let inv = a.invert().unwrap();
            prop_assert_eq!(a.mul(&inv).unwrap(), ChowElement::one(5).unwrap());
            prop_assert_eq!(inv.invert().unwrap(), a);
        }

        #[test]
        fn dual_is_involution(a in element(4)) {
            prop_assert_eq!(dual_character(&dual_character(&a)), a);
        }

        #[test]
        fn rank_one_exponential(c1 in small_rat()) {
            let n = 5;
            let cd = CharacteristicData::new(1, ChowElement::linear(n, rat(1), c1.clone()).unwrap()).unwrap();
            let expected = ChowElement::linear(n, rat(0), c1).unwrap().exp_nilpotent().unwrap();
            prop_assert_eq!(chern_character(&cd), expected);
        }
    }
}
