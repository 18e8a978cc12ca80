//! Deformations of `T_X` through `𝒜 ⊂ Sym^{d-1} V* ⊗ V*`.
//!
//! For `X = {q = 0} ⊂ ℙ(V)` and `α ∈ 𝒜`, the fiber of the deformed bundle at
//! `[u] ∈ X` is the kernel of `v ↦ (q+α)(u, …, u, v)` modulo `u`. At `α = 0`
//! this is `T_u X̂ / ⟨u⟩ = T_{[u]} X`.

pub mod fiber;
pub mod point;
pub mod random;
pub mod scan;
pub mod serial;
pub mod space;
pub mod tensor;

pub use fiber::{jacobian_row, kernel_fiber, kernel_matches_jacobian, phi_row, Fiber};
pub use point::{point_on_line, sample_point, PointOnX, PointSampler, DEFAULT_RETRIES};
pub use scan::{acirc_scan, degenerating_alpha, scan_prime, PrimeResult, ScanConfig, ScanReport};
pub use space::{basis_a, fermat_tensor, intersect_symd, is_member_a, span_rank, symmetrize};
pub use tensor::{MultiIndex, PartialSymTensor, SymTensor};
