//! The coefficient field: `F_q`, twisted indeterminates, polynomials and
//! reduced fractions.

pub mod fq;
pub mod gcd;
pub mod poly;
pub mod rational;
pub mod symbol;

pub use fq::{FieldParams, Fq};
pub use poly::{MPoly, Monomial};
pub use rational::{RationalCoeff, Valuation};
pub use symbol::{Symbol, TwistedVar};
