use thiserror::Error;

use crate::parse::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Hypotheses of the structure theorems that gate the reduction algorithms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Hypothesis {
    /// `deg Φ > deg Ψ` and the leading matrix of `Φ_t` is invertible.
    StrictlyPure,
    /// Both modules block lower-triangular with Drinfeld diagonal entries and
    /// every diagonal degree of `Φ` exceeding every diagonal degree of `Ψ`.
    CompositionSeries,
    /// `deg Ψ > deg Φ` and the adjoint of `Ψ` is strictly pure on the σ side.
    AdjointStrictlyPure,
    /// Two Drinfeld modules with `rk φ > rk ψ`.
    DrinfeldPair,
}

impl std::fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Hypothesis::StrictlyPure => "strictly pure source of larger degree",
            Hypothesis::CompositionSeries => "triangular Drinfeld composition series with rk σ_i > rk σ̂_j",
            Hypothesis::AdjointStrictlyPure => "strictly pure adjoint target of larger degree",
            Hypothesis::DrinfeldPair => "pair of Drinfeld modules with rk φ > rk ψ",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot combine a τ-polynomial with a σ-polynomial")]
    SideMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("cannot specialize {0}: negative twists have no rational specialization")]
    SpecializationUndefined(String),
    #[error("specialization of {0} overflows the exponent range")]
    SpecializationOverflow(String),
    #[error("valuation at infinity needs a function of theta alone, got {0}")]
    UnsupportedValuation(String),
    #[error("not a t-module: {0}")]
    InvalidModule(String),
    #[error("hypothesis violated ({hypothesis}): {detail}")]
    Hypothesis { hypothesis: Hypothesis, detail: String },
    #[error("no algorithm applies: {0}")]
    Unsupported(String),
    #[error("reserved symbol `{0}` cannot be used here")]
    ReservedSymbol(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("Ext0 split is inconsistent: {0}")]
    Ext0Inconsistent(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn hypothesis(hypothesis: Hypothesis, detail: impl Into<String>) -> Self {
        Error::Hypothesis {
            hypothesis,
            detail: detail.into(),
        }
    }

    pub(crate) fn internal(detail: impl Into<String>) -> Self {
        Error::Internal(detail.into())
    }

    pub fn is_hypothesis(&self) -> bool {
        matches!(self, Error::Hypothesis { .. } | Error::Unsupported(_))
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
