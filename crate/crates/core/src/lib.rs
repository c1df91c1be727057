//! Verification laboratory for parametrized weighted sum formulas among
//! multiple zeta values.
//!
//! Indices use the increasing convention
//! `ζ(α₁,…,αₙ) = Σ_{0<ℓ₁<⋯<ℓₙ} 1/(ℓ₁^{α₁}⋯ℓₙ^{αₙ})`; an index is admissible
//! when its last entry is at least 2.

pub mod acceptance;
pub mod algebra;
pub mod bigreal;
pub mod error;
pub mod evaluator;
pub mod indices;
pub mod rational;
pub mod report;
pub mod theorems;

pub use algebra::{MzvExpr, ProductExpr};
pub use bigreal::BigReal;
pub use error::{Error, Result};
pub use evaluator::{EvalResult, Evaluator};
pub use indices::{BlockPattern, Composition, Index, Word};
pub use report::VerifyReport;
pub use theorems::{ParamVector, Theorem};
