//! Singular Hochschild cohomology `HH_sg^n(A, A)` of a finite-dimensional
//! algebra, computed as the stable value of `Hom_D(A, Σ^n σ_{≤-q} P)` for a
//! free resolution `P` of `A` over `A^e`, and its composition product.
//!
//! Everything here works for an arbitrary finite-dimensional algebra `B` and
//! module `M`; the bimodule case takes `B = A^e` and `M = A`.

mod hom;
mod product;
mod resolution;
mod stable;

pub use product::{degree_zero_algebra, hhsg_product, hhsg_product_by_lifting, ClassSpace, SingularClass};
pub use resolution::{
    bar_resolution, bimodule_data, normalized_bar_resolution, resolve_module, FreeResolution, Provenance,
    ResolutionError, ResolutionErrors, CERTIFICATE_PRIME,
};
pub use stable::{
    hhsg_dim, syzygy_identification_check, StabilizationTrace, StabilizationVerdict, SyzygyReport, TraceEntry,
};

use crate::algebra::{AlgebraError, FinDimAlgebra};
use crate::field::Field;

/// Default search depth for the product.
pub const DEFAULT_DEPTH_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TateError {
    #[error("resolution has length {have}, but degree -{needed} is required")]
    ResolutionTooShort { needed: usize, have: usize },
    #[error("component of dimension {dim} exceeds the budget of {budget}")]
    Budget { dim: usize, budget: usize },
    #[error("the normalized bar resolution needs the unit as first basis vector")]
    UnitNotFirst,
    #[error("no lift found up to depth {cap}; last obstruction has rank {obstruction}")]
    DepthCapExhausted { cap: usize, obstruction: usize },
    #[error("maps do not form a chain map (source degree {degree})")]
    NotChainMap { degree: i64 },
    #[error("class of depth {depth} cannot be read at smaller depth {target}")]
    Depth { depth: usize, target: usize },
    #[error("class has degree {got}, expected {expected}")]
    Degree { expected: i64, got: i64 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `A ⊗ A^op`, basis `a_i ⊗ b_j` at `i * dim A + j`; associativity re-validated.
pub fn enveloping<F: Field>(a: &FinDimAlgebra<F>) -> Result<FinDimAlgebra<F>, AlgebraError> {
    let e = a.tensor(&a.opposite());
    FinDimAlgebra::new(e.field().clone(), e.labels().to_vec(), e.structure().to_vec(), e.unit().to_vec())
}
