//! Reduction when the leading matrix of the source is invertible.

use super::{assemble, check_pair, DegreeBounds, ExtResult, Method, ReductionMode, ReductionStep, ReductionTrace, StepRule};
use crate::error::{Error, Hypothesis, Result};
use crate::matrix::{KMatrix, SkewMatrix};
use crate::tmodule::TModule;

/// Subtracts `δ^{(a X^{r'-r} E_{i×j} A^{-1})}`, whose `(i, j)` entry has
/// leading term `a X^{r'}`.
pub struct InvertibleRule {
    bounds: DegreeBounds,
    r: usize,
    a_inv: KMatrix,
    rows: usize,
    cols: usize,
}

impl InvertibleRule {
    pub fn new(source: &TModule, target: &TModule) -> Result<Self> {
        check_pair(source, target, Hypothesis::StrictlyPure)?;
        let r = source.degree();
        if target.dim() > 0 && r <= target.degree() {
            return Err(Error::hypothesis(
                Hypothesis::StrictlyPure,
                format!(
                    "deg Phi = {r} must exceed deg Psi = {}; the adjoint route applies when deg Psi is larger",
                    target.degree()
                ),
            ));
        }
        let a_inv = source.leading_inverse()?.ok_or_else(|| {
            Error::hypothesis(
                Hypothesis::StrictlyPure,
                "the leading matrix of Phi is singular; try the triangular method",
            )
        })?;
        Ok(InvertibleRule {
            bounds: DegreeBounds::uniform(target.dim(), source.dim(), r),
            r,
            a_inv,
            rows: target.dim(),
            cols: source.dim(),
        })
    }

    pub fn leading_inverse(&self) -> &KMatrix {
        &self.a_inv
    }
}

impl StepRule for InvertibleRule {
    fn bounds(&self) -> &DegreeBounds {
        &self.bounds
    }

    fn order(&self) -> Vec<(usize, usize)> {
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .collect()
    }

    fn step(&self, v: &SkewMatrix, i: usize, j: usize, deg: usize) -> Result<ReductionStep> {
        let fq = v.field();
        let mut basis = KMatrix::zeros(fq, self.rows, self.cols);
        for k in 0..self.cols {
            basis.set(i, k, self.a_inv.get(j, k).clone());
        }
        Ok(ReductionStep {
            row: i,
            col: j,
            shift: deg - self.r,
            multiplier: v.get(i, j).coefficient(deg),
            basis,
        })
    }
}

/// Reduces `v` so that every entry has degree below `deg Φ`.
pub fn reduce_invertible(
    v: &SkewMatrix,
    source: &TModule,
    target: &TModule,
    mode: ReductionMode,
) -> Result<(SkewMatrix, ReductionTrace)> {
    let rule = InvertibleRule::new(source, target)?;
    super::reduce_with(v, source, target, &rule, mode)
}

/// `Π_t` for a strictly pure `Φ` with `deg Φ > deg Ψ`.
pub fn extension_invertible(phi: &TModule, psi: &TModule, mode: ReductionMode) -> Result<ExtResult> {
    let rule = InvertibleRule::new(phi, psi)?;
    assemble(Method::Inverse, phi, psi, &rule, mode)
}
