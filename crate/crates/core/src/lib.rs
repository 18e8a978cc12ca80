//! Exact cohomology counts for the tangent bundle of a smooth hypersurface
//! `X ⊂ ℙⁿ` and a computable model of its deformations.
//!
//! - [`chow`]: the Chow ring of `X`, Chern and Todd classes, `χ(End T_X)`.
//! - [`bott`]: `h^i(ℙⁿ, Ω^j(k))`.
//! - [`les`]: dimension propagation through long exact sequences.
//! - [`tables`]: `h^1`, `h^2` of `T_X ⊗ Ω_X` with status and provenance.
//! - [`deform`]: the space `𝒜` and fiberwise checks of the deformed bundle.
//! - [`verify`]: the full reproduction suite.
//!
//! ```
//! use hypersurf::tables::h2_t_omega;
//!
//! assert_eq!(h2_t_omega(4, 4).unwrap().value.to_string(), "45");
//! ```

pub mod bott;
pub mod chow;
pub mod deform;
pub mod error;
pub mod les;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};

// the book's snippets run as doc-tests
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/chow.md")]
    mod chow {}
    #[doc = include_str!("../../../book/src/bott.md")]
    mod bott {}
    #[doc = include_str!("../../../book/src/chases.md")]
    mod chases {}
    #[doc = include_str!("../../../book/src/tables.md")]
    mod tables {}
    #[doc = include_str!("../../../book/src/deformations.md")]
    mod deformations {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
