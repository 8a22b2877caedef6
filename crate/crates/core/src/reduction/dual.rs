//! The adjoint route: `Ext¹_τ(Φ, Ψ) ≅ Ext¹_σ(Ψ^σ, Φ^σ)` turns a pair with
//! `deg Ψ > deg Φ` into one the invertible reduction accepts.

use super::{assemble, check_pair, ExtResult, InvertibleRule, Method, ReductionMode};
use crate::error::{Error, Hypothesis, Result};
use crate::skew::Side;
use crate::tmodule::TModule;

/// Runs the invertible reduction in the σ-ring on `(Ψ^σ, Φ^σ)` and returns
/// the resulting t^σ-module.
pub fn extension_dual(phi: &TModule, psi: &TModule, mode: ReductionMode) -> Result<ExtResult> {
    if phi.side() != Side::Tau || psi.side() != Side::Tau {
        return Err(Error::SideMismatch);
    }
    check_pair(psi, phi, Hypothesis::AdjointStrictlyPure)?;
    if phi.dim() > 0 && psi.degree() <= phi.degree() {
        return Err(Error::hypothesis(
            Hypothesis::AdjointStrictlyPure,
            format!(
                "deg Psi = {} must exceed deg Phi = {}",
                psi.degree(),
                phi.degree()
            ),
        ));
    }
    let source = psi.adjoint();
    let target = phi.adjoint();
    if !source.is_strictly_pure() {
        return Err(Error::hypothesis(
            Hypothesis::AdjointStrictlyPure,
            "the leading sigma-matrix of the adjoint of Psi is singular",
        ));
    }
    let rule = InvertibleRule::new(&source, &target)
        .map_err(|e| Error::internal(format!("adjoint pair rejected after its hypotheses were checked: {e}")))?;
    assemble(Method::Dual, &source, &target, &rule, mode)
}
