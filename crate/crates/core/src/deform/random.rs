//! Small random inputs for property checks and sampling.

use rand::Rng;

use super::space::combination;
use super::tensor::{MultiIndex, PartialSymTensor, SymTensor};
use crate::error::Result;
use crate::scalar::{frac, rat, Rational};

/// Integers in `-range..=range`.
pub fn small_int<R: Rng>(rng: &mut R, range: i64) -> Rational {
    rat(rng.gen_range(-range..=range))
}

/// A vector with entries `a/b`, `|a| ≤ range`, `1 ≤ b ≤ 3`.
pub fn rational_vector<R: Rng>(vars: usize, rng: &mut R, range: i64) -> Vec<Rational> {
    (0..vars)
        .map(|_| frac(rng.gen_range(-range..=range), rng.gen_range(1..=3)))
        .collect()
}

/// A form with each monomial present with probability `1/2` and small
/// integer coefficient.
pub fn sym_tensor<R: Rng>(n: usize, d: usize, rng: &mut R, range: i64) -> Result<SymTensor> {
    let mut q = SymTensor::zero(n, d)?;
    for m in MultiIndex::all(n + 1, d as u32) {
        if rng.gen_bool(0.5) {
            q.add_term(m, small_int(rng, range))?;
        }
    }
    Ok(q)
}

/// A random element of `Sym^{d-1} V* ⊗ V*`.
pub fn partial_tensor<R: Rng>(n: usize, d: usize, rng: &mut R, range: i64) -> Result<PartialSymTensor> {
    let mut a = PartialSymTensor::zero(n, d)?;
    for m in MultiIndex::all(n + 1, d as u32 - 1) {
        for s in 0..=n {
            if rng.gen_bool(0.3) {
                a.add_term(m.clone(), s, small_int(rng, range))?;
            }
        }
    }
    Ok(a)
}

/// A sparse combination of `basis` with integer coefficients in
/// `-range..=range`; each basis vector is used with probability `density`.
pub fn combination_of<R: Rng>(basis: &[PartialSymTensor], rng: &mut R, range: i64, density: f64) -> Result<PartialSymTensor> {
    let coeffs: Vec<Rational> = basis
        .iter()
        .map(|_| if rng.gen_bool(density) { small_int(rng, range) } else { rat(0) })
        .collect();
    combination(basis, &coeffs)
}
