//! Points of `X = {q = 0}` with coordinates in `ℚ[t]/(m(t))`.
//!
//! A rational line `p + s·w` meets `X` where `g(s) = q(p + s·w)` vanishes.
//! With `m` the monic squarefree part of `g`, the vector `u = p + t·w` over
//! `ℚ[t]/(m)` is simultaneously every intersection point of the line with
//! `X` (one per root of `m`).

use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::tensor::SymTensor;
use crate::error::{Error, Result};
use crate::poly::{QuotElem, UPoly};
use crate::scalar::{rat, Rational, RingElem};

/// Default number of lines tried before [`sample_point`] gives up.
pub const DEFAULT_RETRIES: usize = 64;

/// Coordinates are drawn from `-COORD_RANGE..=COORD_RANGE`.
const COORD_RANGE: i64 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct PointOnX {
    pub modulus: Arc<UPoly>,
    pub coords: Vec<QuotElem>,
    /// Base point and direction of the line the point was cut from.
    pub line: (Vec<Rational>, Vec<Rational>),
}

impl PointOnX {
    pub fn n(&self) -> usize {
        self.coords.len() - 1
    }

    /// Number of geometric points represented (the degree of the modulus).
    pub fn multiplicity(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }
}

/// The point cut out of `X` by the line `p + s·w`, or `None` when the line
/// misses `X` in the affine chart (`g` constant) or lies on `X`.
pub fn point_on_line(q: &SymTensor, p: &[Rational], w: &[Rational]) -> Result<Option<PointOnX>> {
    let vars = q.n() + 1;
    if p.len() != vars || w.len() != vars {
        return Err(Error::DimensionMismatch { left: vars, right: p.len().max(w.len()) });
    }
    let line: Vec<UPoly> = p
        .iter()
        .zip(w)
        .map(|(a, b)| UPoly::new(vec![a.clone(), b.clone()]))
        .collect();
    let g = q.eval(&line);
    if g.degree().is_none_or(|k| k == 0) {
        return Ok(None);
    }
    let modulus = Arc::new(g.squarefree_part().monic());
    QuotElem::check_modulus(&modulus)?;
    let t = QuotElem::generator(modulus.clone());
    let coords = p
        .iter()
        .zip(w)
        .map(|(a, b)| t.scale(b).add(&QuotElem::constant(modulus.clone(), a.clone())))
        .collect();
    Ok(Some(PointOnX { modulus, coords, line: (p.to_vec(), w.to_vec()) }))
}

pub fn random_vector<R: Rng>(vars: usize, rng: &mut R) -> Vec<Rational> {
    (0..vars).map(|_| rat(rng.gen_range(-COORD_RANGE..=COORD_RANGE))).collect()
}

/// Source of sample points, deterministic in the seed.
#[derive(Debug, Clone)]
pub struct PointSampler {
    rng: ChaCha8Rng,
    pub retries: usize,
}

impl PointSampler {
    pub fn new(seed: u64, retries: usize) -> Self {
        PointSampler { rng: ChaCha8Rng::seed_from_u64(seed), retries }
    }

    /// Draws lines until one cuts `X` properly; fails after `retries` lines.
    pub fn next_point(&mut self, q: &SymTensor) -> Result<PointOnX> {
        if q.is_zero() {
            return Err(Error::InvalidParameter("cannot sample points on the zero form".into()));
        }
        let vars = q.n() + 1;
        for _ in 0..self.retries {
            let p = random_vector(vars, &mut self.rng);
            let w = random_vector(vars, &mut self.rng);
            if w.iter().all(Zero::is_zero) {
                continue;
            }
            if let Some(pt) = point_on_line(q, &p, &w)? {
                return Ok(pt);
            }
        }
        Err(Error::SamplingExhausted(self.retries))
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// One point from a fresh sampler.
pub fn sample_point(q: &SymTensor, seed: u64, retries: usize) -> Result<PointOnX> {
    PointSampler::new(seed, retries).next_point(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deform::space::fermat_tensor;
    use std::collections::BTreeSet;

    fn e(vars: usize, i: usize) -> Vec<Rational> {
        let mut v = vec![rat(0); vars];
        v[i] = rat(1);
        v
    }

    #[test]
    fn fermat_quartic_on_a_coordinate_line() {
        let q = fermat_tensor(4, 4).unwrap();
        let pt = point_on_line(&q, &e(5, 0), &e(5, 1)).unwrap().unwrap();
        assert_eq!(pt.modulus.coeffs(), &[rat(1), rat(0), rat(0), rat(0), rat(1)]);
        assert_eq!(pt.coords[0].rep(), &UPoly::constant(rat(1)));
        assert_eq!(pt.coords[1].rep(), &UPoly::t());
        assert!(pt.coords[2].is_zero());
        assert!(q.eval(&pt.coords).is_zero());
        assert_eq!(pt.multiplicity(), 4);
    }

    #[test]
    fn degenerate_lines_are_rejected() {
        let q = fermat_tensor(4, 3).unwrap();
        // a zero direction gives a constant
        assert!(point_on_line(&q, &e(5, 0), &vec![rat(0); 5]).unwrap().is_none());
        // the line through e0 - e1 and e2 - e3 lies on X
        let p = vec![rat(1), rat(-1), rat(0), rat(0), rat(0)];
        let w = vec![rat(0), rat(0), rat(1), rat(-1), rat(0)];
        assert!(point_on_line(&q, &p, &w).unwrap().is_none());
    }

    #[test]
    fn samples_lie_on_x_and_are_reproducible() {
        let q = fermat_tensor(4, 3).unwrap();
        for seed in 0..10 {
            let a = sample_point(&q, seed, DEFAULT_RETRIES).unwrap();
            assert!(q.eval(&a.coords).is_zero());
            assert_eq!(a, sample_point(&q, seed, DEFAULT_RETRIES).unwrap());
        }
    }

    #[test]
    fn seeds_give_different_moduli() {
        let q = fermat_tensor(4, 4).unwrap();
        let moduli: BTreeSet<String> = (0..20)
            .map(|seed| format!("{:?}", sample_point(&q, seed, DEFAULT_RETRIES).unwrap().modulus.coeffs()))
            .collect();
        assert!(moduli.len() >= 18, "only {} distinct moduli", moduli.len());
    }

    #[test]
    fn zero_form_and_exhaustion() {
        let z = SymTensor::zero(3, 2).unwrap();
        assert!(sample_point(&z, 0, 5).is_err());
        let q = fermat_tensor(3, 2).unwrap();
        assert_eq!(sample_point(&q, 1, 0), Err(Error::SamplingExhausted(0)));
    }
}
