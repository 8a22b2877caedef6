//! Exact computation of the t-module structure on `Ext¹_τ(Φ, Ψ)` for Anderson
//! t-modules over `F_q[t]`.
//!
//! Coefficients live in a generic twisted function field: every pair
//! `(name, k)` is an independent indeterminate standing for `name^{q^k}`.

pub mod biderivation;
pub mod closed_form;
pub mod display;
pub mod error;
pub mod field;
pub mod io;
pub mod matrix;
pub mod parse;
pub mod reduction;
pub mod skew;
pub mod tmodule;

pub use biderivation::Biderivation;
pub use error::{Error, Hypothesis, Result};
pub use field::{FieldParams, Fq, RationalCoeff, Symbol, TwistedVar, Valuation};
pub use matrix::{KMatrix, SkewMatrix};
pub use parse::{ParseError, Scope};
pub use skew::{Side, SkewPoly};
pub use tmodule::{DrinfeldModule, TModule, TPoly};
