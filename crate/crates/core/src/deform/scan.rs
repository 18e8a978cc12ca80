//! Evidence that `α` lies in the open set where `ker φ^α` has constant rank:
//! kernel dimensions at sampled points, plus an exhaustive search of
//! `ℙⁿ(F_p)` for common zeros of `q` and the row functionals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::fiber::kernel_fiber;
use super::point::PointSampler;
use super::space::basis_a;
use super::tensor::{MultiIndex, PartialSymTensor, SymTensor};
use crate::error::{Error, Result};
use crate::linalg::solve_particular;
use crate::scalar::{frac, Rational, RingElem};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleResult {
    pub seed_index: usize,
    pub modulus_degree: usize,
    pub kernel_dim: usize,
    pub quotient_dim: usize,
    /// Lines discarded because elimination hit a zero divisor.
    pub resamples: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum PrimeResult {
    Skipped { p: u64, reason: String },
    Scanned { p: u64, points: u64, common_zeros: Vec<Vec<u64>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub expected_quotient_dim: usize,
    pub samples: Vec<SampleResult>,
    pub primes: Vec<PrimeResult>,
    pub warnings: Vec<String>,
}

impl ScanReport {
    /// No rank jump seen in either part. Evidence only.
    pub fn clean(&self) -> bool {
        self.warnings.is_empty()
    }
}

/// A polynomial with coefficients reduced mod `p`.
#[derive(Debug, Clone)]
struct ModPoly {
    terms: Vec<(Vec<u32>, u64)>,
}

fn reduce(c: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = c.denom().mod_floor(&pb);
    if den.is_zero() {
        return None;
    }
    let num = c.numer().mod_floor(&pb).to_u64()?;
    let den = den.to_u64()?;
    Some(num * inv_mod(den, p) % p)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

impl ModPoly {
    fn from_terms<'a>(terms: impl IntoIterator<Item = (&'a MultiIndex, Rational)>, p: u64) -> Option<Self> {
        let mut out = Vec::new();
        for (m, c) in terms {
            let r = reduce(&c, p)?;
            if r != 0 {
                out.push((m.exponents().to_vec(), r));
            }
        }
        Some(ModPoly { terms: out })
    }

    fn eval(&self, x: &[u64], p: u64) -> u64 {
        self.terms.iter().fold(0, |acc, (e, c)| {
            let mono = e
                .iter()
                .zip(x)
                .fold(*c, |m, (&k, &xi)| if k == 0 { m } else { m * pow_mod(xi, k as u64, p) % p });
            (acc + mono) % p
        })
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| !p.is_multiple_of(k))
}

/// The forms `F_i(x) = (q+α)(x, …, x, e_i)` as polynomials.
fn row_polynomials(q: &SymTensor, alpha: &PartialSymTensor) -> Vec<Vec<(MultiIndex, Rational)>> {
    let inv_d = frac(1, q.d() as i64);
    let mut rows: Vec<Vec<(MultiIndex, Rational)>> = vec![Vec::new(); q.n() + 1];
    for (m, c) in q.entries() {
        for (i, row) in rows.iter_mut().enumerate() {
            if let Some(lower) = m.minus_unit(i) {
                let k = Rational::from_integer(BigInt::from(m.exponents()[i]));
                row.push((lower, c * k * &inv_d));
            }
        }
    }
    for ((m, s), c) in alpha.entries() {
        rows[*s].push((m.clone(), c.clone()));
    }
    rows
}

/// Projective points of `ℙⁿ(F_p)`, normalized so the first nonzero
/// coordinate is 1.
fn projective_points(vars: usize, p: u64) -> impl Iterator<Item = Vec<u64>> {
    (0..vars).flat_map(move |lead| {
        let tail = vars - lead - 1;
        let count = p.pow(tail as u32);
        (0..count).map(move |mut k| {
            let mut x = vec![0; vars];
            x[lead] = 1;
            for slot in x.iter_mut().skip(lead + 1) {
                *slot = k % p;
                k /= p;
            }
            x
        })
    })
}

/// Primes whose projective space has more points than this are skipped.
pub const MAX_SCAN_POINTS: u64 = 5_000_000;

/// `|ℙⁿ(F_p)|`, saturating.
pub fn projective_point_count(vars: usize, p: u64) -> u64 {
    (0..vars as u32).fold(0u64, |acc, k| acc.saturating_add(p.saturating_pow(k)))
}

fn reduced_forms(q: &SymTensor, alpha: &PartialSymTensor, p: u64) -> std::result::Result<(ModPoly, Vec<ModPoly>), String> {
    if !is_prime(p) {
        return Err("not a prime".into());
    }
    if projective_point_count(q.n() + 1, p) > MAX_SCAN_POINTS {
        return Err(format!("more than {MAX_SCAN_POINTS} points to enumerate"));
    }
    if (q.d() as u64).is_multiple_of(p) {
        return Err(format!("p divides d = {}", q.d()));
    }
    let bad = || "bad reduction: p divides a denominator".to_string();
    let qp = ModPoly::from_terms(q.entries().iter().map(|(m, c)| (m, c.clone())), p).ok_or_else(bad)?;
    if qp.terms.is_empty() {
        return Err("q vanishes mod p".into());
    }
    let fp = row_polynomials(q, alpha)
        .iter()
        .map(|r| ModPoly::from_terms(r.iter().map(|(m, c)| (m, c.clone())), p))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(bad)?;
    Ok((qp, fp))
}

/// Whether `p` is usable for [`scan_prime`].
pub fn good_reduction(q: &SymTensor, alpha: &PartialSymTensor, p: u64) -> bool {
    reduced_forms(q, alpha, p).is_ok()
}

/// Common zeros of `q` and all `F_i` in `ℙⁿ(F_p)`, or why the prime was
/// skipped.
pub fn scan_prime(q: &SymTensor, alpha: &PartialSymTensor, p: u64) -> PrimeResult {
    let (qp, fp) = match reduced_forms(q, alpha, p) {
        Ok(forms) => forms,
        Err(reason) => return PrimeResult::Skipped { p, reason },
    };
    let mut points = 0;
    let mut common_zeros = Vec::new();
    for x in projective_points(q.n() + 1, p) {
        points += 1;
        if qp.eval(&x, p) == 0 && fp.iter().all(|f| f.eval(&x, p) == 0) {
            common_zeros.push(x);
        }
    }
    PrimeResult::Scanned { p, points, common_zeros }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanConfig {
    pub points: usize,
    pub seed: u64,
    pub retries: usize,
}

/// Both parts of the scan. An empty prime list leaves only the sampled part.
pub fn acirc_scan(q: &SymTensor, alpha: &PartialSymTensor, primes: &[u64], cfg: ScanConfig) -> Result<ScanReport> {
    if !super::space::is_member_a(alpha) {
        return Err(Error::InvalidParameter("alpha is not in the deformation space".into()));
    }
    let expected = q.n() - 1;
    let mut sampler = PointSampler::new(cfg.seed, cfg.retries);
    let mut samples = Vec::with_capacity(cfg.points);
    let mut warnings = Vec::new();
    for seed_index in 0..cfg.points {
        let mut resamples = 0;
        let (pt, fiber) = loop {
            let pt = sampler.next_point(q)?;
            match kernel_fiber(q, alpha, &pt.coords) {
                Ok(f) => break (pt, f),
                Err(Error::ZeroDivisor) if resamples < cfg.retries => resamples += 1,
                Err(Error::ZeroDivisor) => return Err(Error::SamplingExhausted(cfg.retries)),
                Err(e) => return Err(e),
            }
        };
        if fiber.quotient_dim() != expected {
            warnings.push(format!(
                "sample {seed_index}: ker/<u> has dimension {} (expected {expected})",
                fiber.quotient_dim()
            ));
        }
        samples.push(SampleResult {
            seed_index,
            modulus_degree: pt.multiplicity(),
            kernel_dim: fiber.kernel_dim(),
            quotient_dim: fiber.quotient_dim(),
            resamples,
        });
    }
    let mut prime_results = Vec::with_capacity(primes.len());
    for &p in primes {
        let r = scan_prime(q, alpha, p);
        if let PrimeResult::Scanned { common_zeros, .. } = &r {
            if let Some(z) = common_zeros.first() {
                warnings.push(format!(
                    "p = {p}: {} common zero(s) of q and the row forms, e.g. {z:?} (possible rank jump)",
                    common_zeros.len()
                ));
            }
        }
        prime_results.push(r);
    }
    Ok(ScanReport { expected_quotient_dim: expected, samples, primes: prime_results, warnings })
}

/// An `α ∈ 𝒜` with `(q+α)(x0, …, x0, ·) = 0`, so that the functional
/// degenerates at the rational point `x0 ∈ X`; `None` if no such `α` exists.
pub fn degenerating_alpha(q: &SymTensor, x0: &[Rational]) -> Result<Option<PartialSymTensor>> {
    if !RingElem::is_zero(&q.eval(x0)) {
        return Err(Error::InvalidParameter("x0 is not on X".into()));
    }
    let basis = basis_a(q.n(), q.d())?;
    let vars = q.n() + 1;
    let inv_d = frac(1, q.d() as i64);
    let cols: Vec<Vec<Rational>> = basis.iter().map(|b| b.row(x0)).collect();
    let a: Vec<Vec<Rational>> = (0..vars)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    let rhs: Vec<Rational> = (0..vars).map(|i| -(q.partial(i, x0) * &inv_d)).collect();
    let Some(coeffs) = solve_particular(&a, &rhs, &Rational::zero())? else {
        return Ok(None);
    };
    let mut alpha = PartialSymTensor::zero(q.n(), q.d())?;
    for (b, c) in basis.iter().zip(&coeffs) {
        if !Zero::is_zero(c) {
            alpha = alpha.add(&b.scale(c))?;
        }
    }
    Ok(Some(alpha))
}

/// Reduces an integral point mod `p`, normalized projectively.
pub fn reduce_point(x: &[Rational], p: u64) -> Option<Vec<u64>> {
    let mut r: Vec<u64> = x.iter().map(|c| reduce(c, p)).collect::<Option<_>>()?;
    let lead = r.iter().position(|&c| c != 0)?;
    let inv = inv_mod(r[lead], p);
    for c in r.iter_mut() {
        *c = *c * inv % p;
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deform::point::DEFAULT_RETRIES;
    use crate::deform::space::{fermat_tensor, is_member_a};
    use crate::scalar::rat;

    fn cfg(points: usize) -> ScanConfig {
        ScanConfig { points, seed: 7, retries: DEFAULT_RETRIES }
    }

    #[test]
    fn point_counts() {
        assert_eq!(projective_points(5, 3).count(), 121);
        assert_eq!(projective_points(3, 5).count(), 31);
        assert_eq!(projective_point_count(5, 3), 121);
        let pts: Vec<Vec<u64>> = projective_points(2, 2).collect();
        assert_eq!(pts, vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
    }

    #[test]
    fn smooth_fermat_has_no_common_zeros() {
        let q = fermat_tensor(4, 3).unwrap();
        let zero = PartialSymTensor::zero(4, 3).unwrap();
        match scan_prime(&q, &zero, 5) {
            PrimeResult::Scanned { points, common_zeros, .. } => {
                assert_eq!(points, 781);
                assert!(common_zeros.is_empty());
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(scan_prime(&q, &zero, 3), PrimeResult::Skipped { .. }));
        assert!(matches!(scan_prime(&q, &zero, 4), PrimeResult::Skipped { .. }));
        let q4 = fermat_tensor(4, 4).unwrap();
        let zero4 = PartialSymTensor::zero(4, 4).unwrap();
        match scan_prime(&q4, &zero4, 3) {
            PrimeResult::Scanned { points, common_zeros, .. } => {
                assert_eq!(points, 121);
                assert!(common_zeros.is_empty());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn clean_scan_for_zero_alpha() {
        let q = fermat_tensor(4, 3).unwrap();
        let zero = PartialSymTensor::zero(4, 3).unwrap();
        let r = acirc_scan(&q, &zero, &[5, 7], cfg(4)).unwrap();
        assert!(r.clean(), "{:?}", r.warnings);
        assert_eq!(r.samples.len(), 4);
        assert!(r.samples.iter().all(|s| s.quotient_dim == 3));
        let r = acirc_scan(&q, &zero, &[], cfg(2)).unwrap();
        assert!(r.primes.is_empty());
    }

    #[test]
    fn degenerate_alpha_is_flagged() {
        let q = fermat_tensor(4, 3).unwrap();
        let x0 = vec![rat(1), rat(-1), rat(0), rat(0), rat(0)];
        let alpha = degenerating_alpha(&q, &x0).unwrap().expect("solvable");
        assert!(is_member_a(&alpha));
        let row = crate::deform::fiber::phi_row(&q, &alpha, &x0).unwrap();
        assert!(row.iter().all(|c| Zero::is_zero(c)));
        let fiber = kernel_fiber(&q, &alpha, &x0).unwrap();
        assert_eq!(fiber.quotient_dim(), 4);

        let primes: Vec<u64> = [5, 7, 11, 13].into_iter().filter(|&p| good_reduction(&q, &alpha, p)).collect();
        assert!(!primes.is_empty());
        let r = acirc_scan(&q, &alpha, &primes, cfg(2)).unwrap();
        assert!(!r.clean());
        let target = reduce_point(&x0, primes[0]).unwrap();
        match &r.primes[0] {
            PrimeResult::Scanned { common_zeros, .. } => assert!(common_zeros.contains(&target)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_alpha_outside_a() {
        let q = fermat_tensor(4, 3).unwrap();
        let bad = PartialSymTensor::embed(&q);
        assert!(acirc_scan(&q, &bad, &[], cfg(1)).is_err());
    }
}
