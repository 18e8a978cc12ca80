//! The space `𝒜 = ker(sym^d) ∩ (Sym^{d-1} V* ⊗ V*)` and its relation to
//! `Sym^d V*`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::tensor::{MultiIndex, PartialSymTensor, SymTensor};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, rank};
use crate::scalar::{Rational, RingElem};

/// Column order for `Sym^{d-1} V* ⊗ V*`: lexicographic in `(monomial, slot)`.
pub fn partial_columns(n: usize, d: usize) -> Vec<(MultiIndex, usize)> {
    MultiIndex::all(n + 1, d as u32 - 1)
        .into_iter()
        .flat_map(|m| (0..=n).map(move |s| (m.clone(), s)))
        .collect()
}

/// `sym^d(α)`, as the polynomial `α(x, …, x, x) = Σ c_{m,s} x^{m+e_s}`.
pub fn symmetrize(alpha: &PartialSymTensor) -> SymTensor {
    let mut out = SymTensor::zero(alpha.n(), alpha.d()).expect("shape already valid");
    for ((m, s), c) in alpha.entries() {
        out.add_term(m.plus_unit(*s), c.clone()).expect("degree d");
    }
    out
}

/// Checks `α(v, …, v, u) + (d-1) α(u, v, …, v) = 0` as a polynomial identity
/// in `(u, v)`.
///
/// The second term is the derivative of `v ↦ α(v, …, v)` in the first `d-1`
/// slots along `u`, so the coefficient of `v^k u_i` collects
/// `c_{k,i}` from the first term and `m_j c_{m,s}` for `k = m - e_j + e_s`,
/// `i = j` from the second.
pub fn is_member_a(alpha: &PartialSymTensor) -> bool {
    let mut g: BTreeMap<(MultiIndex, usize), Rational> = BTreeMap::new();
    for ((m, s), c) in alpha.entries() {
        *g.entry((m.clone(), *s)).or_insert_with(Rational::zero) += c;
        for j in 0..=alpha.n() {
            let mj = m.exponents()[j];
            if mj == 0 {
                continue;
            }
            let k = m.minus_unit(j).expect("m_j > 0").plus_unit(*s);
            *g.entry((k, j)).or_insert_with(Rational::zero) += c * Rational::from_integer(mj.into());
        }
    }
    g.values().all(Zero::is_zero)
}

fn check_nd(n: usize, d: usize) -> Result<()> {
    if n < 1 || d < 2 {
        return Err(Error::InvalidParameter(format!("needs n >= 1 and d >= 2, got n={n}, d={d}")));
    }
    Ok(())
}

/// The 0/1 matrix of `sym^d` from `Sym^{d-1} V* ⊗ V*` (columns as in
/// [`partial_columns`]) to `Sym^d V*` (rows in lexicographic order).
fn symmetrization_matrix(n: usize, d: usize) -> (Vec<Vec<Rational>>, Vec<(MultiIndex, usize)>) {
    let cols = partial_columns(n, d);
    let rows_idx: BTreeMap<MultiIndex, usize> = MultiIndex::all(n + 1, d as u32)
        .into_iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let mut rows = vec![vec![Rational::zero(); cols.len()]; rows_idx.len()];
    for (c, (m, s)) in cols.iter().enumerate() {
        rows[rows_idx[&m.plus_unit(*s)]][c] = Rational::one();
    }
    (rows, cols)
}

fn tensor_from_vector(n: usize, d: usize, cols: &[(MultiIndex, usize)], v: &[Rational]) -> PartialSymTensor {
    PartialSymTensor::from_entries(
        n,
        d,
        cols.iter()
            .zip(v)
            .filter(|(_, c)| !Zero::is_zero(*c))
            .map(|(k, c)| (k.clone(), c.clone())),
    )
    .expect("columns fit the shape")
}

fn tensor_to_vector(alpha: &PartialSymTensor, cols: &[(MultiIndex, usize)]) -> Vec<Rational> {
    cols.iter()
        .map(|k| alpha.entries().get(k).cloned().unwrap_or_else(Rational::zero))
        .collect()
}

/// A basis of `𝒜` as the kernel of the symmetrization matrix, one vector
/// per free column in lexicographic order.
pub fn basis_a(n: usize, d: usize) -> Result<Vec<PartialSymTensor>> {
    check_nd(n, d)?;
    let (rows, cols) = symmetrization_matrix(n, d);
    let kernel = nullspace(rows, cols.len(), &Rational::zero())?;
    Ok(kernel.iter().map(|v| tensor_from_vector(n, d, &cols, v)).collect())
}

/// `dim(span(basis) )` by exact rank.
pub fn span_rank(basis: &[PartialSymTensor]) -> Result<usize> {
    let Some(first) = basis.first() else {
        return Ok(0);
    };
    let cols = partial_columns(first.n(), first.d());
    let rows = basis.iter().map(|a| tensor_to_vector(a, &cols)).collect();
    rank(rows, cols.len())
}

/// `dim(𝒜 ∩ Sym^d V*)` inside `Sym^{d-1} V* ⊗ V*`, via
/// `dim 𝒜 + dim Sym^d - rank[𝒜 | Sym^d]`.
pub fn intersect_symd(n: usize, d: usize) -> Result<usize> {
    check_nd(n, d)?;
    let basis = basis_a(n, d)?;
    let cols = partial_columns(n, d);
    let mut rows: Vec<Vec<Rational>> = basis.iter().map(|a| tensor_to_vector(a, &cols)).collect();
    let sym: Vec<Vec<Rational>> = MultiIndex::all(n + 1, d as u32)
        .into_iter()
        .map(|m| {
            let q = SymTensor::from_entries(n, d, [(m, Rational::one())]).expect("degree d");
            tensor_to_vector(&PartialSymTensor::embed(&q), &cols)
        })
        .collect();
    let dim_a = rank(rows.clone(), cols.len())?;
    let dim_sym = rank(sym.clone(), cols.len())?;
    rows.extend(sym);
    let joint = rank(rows, cols.len())?;
    Ok(dim_a + dim_sym - joint)
}

/// `q = Σ x_i^d`.
pub fn fermat_tensor(n: usize, d: usize) -> Result<SymTensor> {
    SymTensor::from_entries(
        n,
        d,
        (0..=n).map(|i| {
            let mut e = vec![0; n + 1];
            e[i] = d as u32;
            (MultiIndex::new(e), Rational::one())
        }),
    )
}

/// `Σ coeffs[k] · basis[k]`.
pub fn combination(basis: &[PartialSymTensor], coeffs: &[Rational]) -> Result<PartialSymTensor> {
    let Some(first) = basis.first() else {
        return Err(Error::InvalidParameter("empty basis".into()));
    };
    if coeffs.len() != basis.len() {
        return Err(Error::DimensionMismatch { left: basis.len(), right: coeffs.len() });
    }
    let mut acc = PartialSymTensor::zero(first.n(), first.d())?;
    for (b, c) in basis.iter().zip(coeffs) {
        if !RingElem::is_zero(c) {
            acc = acc.add(&b.scale(c))?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::tables::dim_a;
    use num_bigint::BigInt;

    #[test]
    fn basis_sizes() {
        assert_eq!(basis_a(4, 2).unwrap().len(), 10);
        assert_eq!(basis_a(4, 3).unwrap().len(), 40);
        assert_eq!(basis_a(5, 4).unwrap().len(), 210);
    }

    #[test]
    fn basis_is_independent_and_inside_a() {
        for n in 3..=4 {
            for d in 2..=3 {
                let b = basis_a(n, d).unwrap();
                assert_eq!(BigInt::from(span_rank(&b).unwrap()), dim_a(n, d as i64));
                assert!(b.iter().all(is_member_a));
                assert!(b.iter().all(|a| symmetrize(a).is_zero()));
            }
        }
    }

    #[test]
    fn quadratic_kernel_is_antisymmetric() {
        // λ⊗μ - μ⊗λ with λ = e0*, μ = e1*
        let a = PartialSymTensor::from_entries(
            4,
            2,
            [
                ((MultiIndex::unit(5, 0), 1), rat(1)),
                ((MultiIndex::unit(5, 1), 0), rat(-1)),
            ],
        )
        .unwrap();
        assert!(symmetrize(&a).is_zero());
        assert!(is_member_a(&a));
    }

    #[test]
    fn symmetric_tensors_are_not_in_a() {
        let q = fermat_tensor(4, 3).unwrap();
        let e = PartialSymTensor::embed(&q);
        assert_eq!(symmetrize(&e), q);
        assert!(!is_member_a(&e));
        assert!(is_member_a(&PartialSymTensor::zero(4, 3).unwrap()));
    }

    #[test]
    fn trivial_intersection() {
        assert_eq!(intersect_symd(4, 2).unwrap(), 0);
        assert_eq!(intersect_symd(4, 3).unwrap(), 0);
        assert_eq!(intersect_symd(5, 3).unwrap(), 0);
    }

    #[test]
    fn fermat_values() {
        let q = fermat_tensor(4, 3).unwrap();
        assert_eq!(q.eval(&[rat(1), rat(-1), rat(0), rat(0), rat(0)]), rat(0));
        let e0 = vec![rat(1), rat(0), rat(0), rat(0), rat(0)];
        let e1 = vec![rat(0), rat(1), rat(0), rat(0), rat(0)];
        assert_eq!(q.polarized_eval(&[e0.clone(), e0, e1]).unwrap(), rat(0));
    }

    #[test]
    fn combination_checks_lengths() {
        let b = basis_a(3, 2).unwrap();
        assert!(combination(&b, &[rat(1)]).is_err());
        assert!(combination(&[], &[]).is_err());
    }
}
