//! The functional `φ^α_x = (q+α)(u, …, u, ·)` at a point `u` of `X` and its
//! kernel modulo the Euler direction.

use super::tensor::{PartialSymTensor, SymTensor};
use crate::error::{Error, Result};
use crate::linalg::{rank, rref};
use crate::scalar::{FieldElem, RingElem};

fn check_pair(q: &SymTensor, alpha: &PartialSymTensor, u_len: usize) -> Result<()> {
    if (q.n(), q.d()) != (alpha.n(), alpha.d()) {
        return Err(Error::InvalidParameter(format!(
            "q has shape (n={}, d={}) but alpha has (n={}, d={})",
            q.n(),
            q.d(),
            alpha.n(),
            alpha.d()
        )));
    }
    if u_len != q.n() + 1 {
        return Err(Error::DimensionMismatch { left: q.n() + 1, right: u_len });
    }
    Ok(())
}

/// `(q+α)(u, …, u, e_i)` for `i = 0..=n`.
pub fn phi_row<R: RingElem>(q: &SymTensor, alpha: &PartialSymTensor, u: &[R]) -> Result<Vec<R>> {
    check_pair(q, alpha, u.len())?;
    let inv_d = crate::scalar::frac(1, q.d() as i64);
    let a = alpha.row(u);
    Ok((0..=q.n())
        .map(|i| q.partial(i, u).scale(&inv_d).add(&a[i]))
        .collect())
}

/// `(∂_i q(u))_i`.
pub fn jacobian_row<R: RingElem>(q: &SymTensor, u: &[R]) -> Vec<R> {
    (0..=q.n()).map(|i| q.partial(i, u)).collect()
}

fn dot<R: RingElem>(a: &[R], b: &[R]) -> R {
    a.iter().zip(b).fold(a[0].zero_like(), |acc, (x, y)| acc.add(&x.mul(y)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fiber<F> {
    pub row: Vec<F>,
    /// Basis of `ker φ`, one vector per free coordinate.
    pub kernel: Vec<Vec<F>>,
    /// Basis of a complement of `⟨u⟩` in `ker φ`.
    pub quotient: Vec<Vec<F>>,
}

impl<F> Fiber<F> {
    pub fn kernel_dim(&self) -> usize {
        self.kernel.len()
    }

    pub fn quotient_dim(&self) -> usize {
        self.quotient.len()
    }
}

/// `ker φ^α_u` and `ker / ⟨u⟩`.
///
/// Over a quotient ring a row entry may be a nonzero zero divisor; that
/// surfaces as [`Error::ZeroDivisor`] and the caller should resample. A row
/// that vanishes identically gives the full space as kernel, which callers
/// report as a rank jump.
pub fn kernel_fiber<F: FieldElem>(q: &SymTensor, alpha: &PartialSymTensor, u: &[F]) -> Result<Fiber<F>> {
    if !q.eval(u).is_zero() {
        return Err(Error::InvalidParameter("the point is not on X".into()));
    }
    let row = phi_row(q, alpha, u)?;
    let vars = row.len();
    let ech = rref(vec![row.clone()], vars)?;
    let kernel = ech.nullspace(&u[0]);
    if !dot(&row, u).is_zero() {
        return Err(Error::Consistency("u is not in the kernel of phi".into()));
    }
    // u = Σ_f u_f b_f over free columns f; dropping one b_f with u_f a unit
    // leaves a complement of ⟨u⟩
    let free = ech.free_columns();
    let drop = free
        .iter()
        .position(|&f| u[f].try_inv().is_some())
        .ok_or(Error::ZeroDivisor)?;
    let quotient = kernel
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != drop)
        .map(|(_, v)| v.clone())
        .collect();
    Ok(Fiber { row, kernel, quotient })
}

/// True when `ker φ` equals the kernel of the Jacobian row at `u`: both rows
/// have rank one and every kernel vector is killed by the Jacobian.
pub fn kernel_matches_jacobian<F: FieldElem>(q: &SymTensor, u: &[F], fiber: &Fiber<F>) -> Result<bool> {
    let jac = jacobian_row(q, u);
    let vars = jac.len();
    if rank(vec![jac.clone()], vars)? != rank(vec![fiber.row.clone()], vars)? {
        return Ok(false);
    }
    Ok(fiber.kernel.iter().all(|v| dot(&jac, v).is_zero()))
}
