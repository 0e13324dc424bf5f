//! Exact average coset weight distributions (ACWDs) of combined LDPC matrix ensembles.
//!
//! Base ensembles ([`base`]) have closed-form ACWDs. The [`combinators`] module
//! composes them by stacking, concatenation and row/column shuffles. Every closed form
//! can be checked against the exhaustive enumerators in [`oracle`]. The [`asymptotic`]
//! module gives growth rates and typical coset weights in floating point.

pub mod asymptotic;
pub mod base;
pub mod bits;
pub mod cli;
pub mod combinators;
pub mod error;
pub mod oracle;
pub mod poly;
pub mod tensor;

pub use base::{EnsembleParams, Family};
pub use bits::{BitMatrix, SyndromeVector};
pub use combinators::{Acwd, EnsembleExpr, Evaluator, ExprKind};
pub use error::{Error, Result};
pub use tensor::{AcwdTable, SplitAcwdTensor};
