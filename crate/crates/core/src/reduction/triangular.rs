//! Reduction for lower-triangular modules with Drinfeld diagonal entries.

use super::{assemble, check_pair, DegreeBounds, ExtResult, Method, ReductionMode, ReductionStep, ReductionTrace, StepRule};
use crate::error::{Error, Hypothesis, Result};
use crate::field::RationalCoeff;
use crate::matrix::{KMatrix, SkewMatrix};
use crate::tmodule::TModule;

/// Subtracts `δ^{(E_{i×j} a X^{r'-r_j})}` with `a` chosen against the leading
/// coefficient of `Φ[j, j]`. Columns are swept from the right so that the
/// lower-triangular `Φ` only pushes terms into columns not yet visited.
pub struct TriangularRule {
    bounds: DegreeBounds,
    leads: Vec<RationalCoeff>,
    sign: i32,
}

/// Checks the hypotheses of the triangular reduction.
pub fn check_composition_series(source: &TModule, target: &TModule) -> Result<()> {
    check_pair(source, target, Hypothesis::CompositionSeries)?;
    let fail = |detail: String| Err(Error::hypothesis(Hypothesis::CompositionSeries, detail));
    for (name, m) in [("Phi", source), ("Psi", target)] {
        if !m.is_lower_triangular() {
            return fail(format!("{name} is not lower triangular"));
        }
        let theta = RationalCoeff::theta(m.field(), 0);
        for i in 0..m.dim() {
            if m.t_matrix().get(i, i).constant_term() != theta {
                return fail(format!("diagonal entry {} of {name} is not a Drinfeld module", i + 1));
            }
        }
    }
    let deg = |m: &TModule, i: usize| m.t_matrix().get(i, i).degree_or_zero();
    let max_psi = (0..target.dim()).map(|i| deg(target, i)).max();
    if let Some(max_psi) = max_psi {
        if let Some(j) = (0..source.dim()).find(|&j| deg(source, j) <= max_psi) {
            return fail(format!(
                "rank {} of diagonal entry {} of Phi does not exceed every diagonal rank of Psi (max {max_psi})",
                deg(source, j),
                j + 1
            ));
        }
    }
    Ok(())
}

impl TriangularRule {
    pub fn new(source: &TModule, target: &TModule) -> Result<Self> {
        check_composition_series(source, target)?;
        let d = source.dim();
        let mut bounds = DegreeBounds::uniform(target.dim(), d, 0);
        for i in 0..target.dim() {
            for j in 0..d {
                bounds.n[i * d + j] = source.t_matrix().get(j, j).degree_or_zero();
            }
        }
        Ok(TriangularRule {
            bounds,
            leads: (0..d).map(|j| source.t_matrix().get(j, j).leading_coefficient()).collect(),
            sign: source.side().sign(),
        })
    }
}

impl StepRule for TriangularRule {
    fn bounds(&self) -> &DegreeBounds {
        &self.bounds
    }

    fn order(&self) -> Vec<(usize, usize)> {
        let cols = self.bounds.cols;
        (0..self.bounds.rows)
            .flat_map(|i| (0..cols).rev().map(move |j| (i, j)))
            .collect()
    }

    fn step(&self, v: &SkewMatrix, i: usize, j: usize, deg: usize) -> Result<ReductionStep> {
        let r = self.bounds.get(i, j);
        let shift = deg - r;
        let lead = self.leads[j].twist(self.sign * shift as i32);
        let multiplier = v.get(i, j).coefficient(deg).div(&lead)?;
        let mut basis = KMatrix::zeros(v.field(), self.bounds.rows, self.bounds.cols);
        basis.set(i, j, RationalCoeff::one(v.field()));
        Ok(ReductionStep {
            row: i,
            col: j,
            shift,
            multiplier,
            basis,
        })
    }
}

pub fn reduce_triangular(
    v: &SkewMatrix,
    source: &TModule,
    target: &TModule,
    mode: ReductionMode,
) -> Result<(SkewMatrix, ReductionTrace)> {
    let rule = TriangularRule::new(source, target)?;
    super::reduce_with(v, source, target, &rule, mode)
}

/// `Π_t` for triangular `Φ`, `Ψ` with every diagonal rank of `Φ` above every
/// diagonal rank of `Ψ`.
pub fn extension_triangular(phi: &TModule, psi: &TModule, mode: ReductionMode) -> Result<ExtResult> {
    let rule = TriangularRule::new(phi, psi)?;
    assemble(Method::Triangular, phi, psi, &rule, mode)
}
