//! The t-reduction: biderivations are reduced modulo inner biderivations to a
//! degree-bounded normal form, and the action of `t` on that normal form
//! gives the matrix `Π_t`.
//!
//! The working pair is `(source, target)` with biderivations of shape
//! `dim target × dim source`; the source has the larger degree.

mod dual;
mod ext0;
mod invertible;
mod triangular;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use dual::extension_dual;
pub use ext0::{pair_count, split_ext0, Ext0Split};
pub use invertible::{extension_invertible, reduce_invertible, InvertibleRule};
pub use triangular::{check_composition_series, extension_triangular, reduce_triangular, TriangularRule};

use crate::biderivation::inner_matrix;
use crate::error::{Error, Hypothesis, Result};
use crate::field::{MPoly, RationalCoeff, Symbol, TwistedVar};
use crate::matrix::{KMatrix, SkewMatrix};
use crate::skew::{Side, SkewPoly};
use crate::tmodule::TModule;

/// Upper bounds (exclusive) on the degree of each entry of the normal form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeBounds {
    pub rows: usize,
    pub cols: usize,
    pub n: Vec<usize>,
}

impl DegreeBounds {
    pub fn uniform(rows: usize, cols: usize, r: usize) -> Self {
        DegreeBounds {
            rows,
            cols,
            n: vec![r; rows * cols],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.n[i * self.cols + j]
    }

    pub fn total(&self) -> usize {
        self.n.iter().sum()
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// Generators `E_{i×j} c X^k` in the order i, then j, then k.
    pub fn ordering(&self) -> Vec<GeneratorIndex> {
        let mut out = Vec::with_capacity(self.total());
        for i in 0..self.rows {
            for j in 0..self.cols {
                for k in 0..self.get(i, j) {
                    out.push(GeneratorIndex { i, j, k });
                }
            }
        }
        out
    }

    /// Position of coordinate `(i, j, k)` in the flattened order.
    pub fn position(&self, i: usize, j: usize, k: usize) -> usize {
        self.n[..i * self.cols + j].iter().sum::<usize>() + k
    }
}

/// Zero-based generator position `E_{i×j} c X^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorIndex {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

/// One subtraction of an inner biderivation `δ^{(U)}` with
/// `U = (multiplier · X^shift) · basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub row: usize,
    pub col: usize,
    pub shift: usize,
    pub multiplier: RationalCoeff,
    pub basis: KMatrix,
}

impl ReductionStep {
    pub fn u_matrix(&self, side: Side) -> SkewMatrix {
        let p = SkewPoly::monomial(self.multiplier.clone(), self.shift, side);
        SkewMatrix::from_scalars(&self.basis, side)
            .left_mul_poly(&p)
            .expect("same side")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
}

impl ReductionTrace {
    /// `Σ δ^{(U_l)}_t` over the recorded steps.
    pub fn replay(&self, source: &TModule, target: &TModule) -> Result<SkewMatrix> {
        let side = source.side();
        let mut acc = SkewMatrix::zeros(source.field(), side, target.dim(), source.dim());
        for s in &self.steps {
            acc = acc.add(&inner_matrix(&s.u_matrix(side), source, target)?)?;
        }
        Ok(acc)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionMode {
    /// Sweep over all entries until every one is within its bound.
    #[default]
    Fixpoint,
    /// One sweep in the order of the reference pseudo-code. Entries polluted
    /// after their visit keep terms above the bound, which the coefficient
    /// form then skips; see [`ExtResult::discarded`].
    SinglePass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Inverse,
    Triangular,
    Dual,
    ClosedForm,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Inverse => "inverse",
            Method::Triangular => "triangular",
            Method::Dual => "dual",
            Method::ClosedForm => "closed-form",
        })
    }
}

/// The computed t-module on `Ext¹` together with everything needed to audit it.
#[derive(Clone, Debug)]
pub struct ExtResult {
    pub method: Method,
    /// The working pair the reduction ran on.
    pub source: TModule,
    pub target: TModule,
    pub pi: TModule,
    pub bounds: DegreeBounds,
    pub ordering: Vec<GeneratorIndex>,
    /// Reduced biderivation for each generator, before substitution.
    pub reduced: Vec<SkewMatrix>,
    pub traces: Vec<ReductionTrace>,
    /// Terms at or above their bound that a single-pass reduction left behind
    /// and the coefficient form ignored. Always empty in fixpoint mode.
    pub discarded: Vec<Discarded>,
    pub ext0: Option<Ext0Split>,
}

/// The part of a reduced entry that was not read into `Π_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discarded {
    /// Zero-based column of `Π_t`, i.e. the generator position.
    pub column: usize,
    pub i: usize,
    pub j: usize,
    pub terms: SkewPoly,
}

impl ExtResult {
    pub fn side(&self) -> Side {
        self.pi.side()
    }

    /// `Ψ_t · E_{i×j} c X^k`, the biderivation `t * E_{i×j} c X^k`.
    pub fn generator_image(&self, g: GeneratorIndex) -> Result<SkewMatrix> {
        generator_image(&self.target, self.source.dim(), g)
    }
}

/// The generator symbol `c` with twist `k`.
pub fn generator_coeff(fq: crate::field::Fq, k: i32) -> RationalCoeff {
    RationalCoeff::var(fq, TwistedVar::new(Symbol::generator(), k))
}

pub(crate) fn generator_image(target: &TModule, source_dim: usize, g: GeneratorIndex) -> Result<SkewMatrix> {
    let fq = target.field();
    let side = target.side();
    let e = SkewMatrix::unit(
        target.dim(),
        source_dim,
        g.i,
        g.j,
        SkewPoly::monomial(generator_coeff(fq, 0), g.k, side),
    );
    target.t_matrix().mul(&e)
}

/// Lists the coefficients of every entry below its bound, row-major, then by
/// exponent.
pub fn coefficient_form(v: &SkewMatrix, bounds: &DegreeBounds) -> Result<Vec<RationalCoeff>> {
    let mut out = Vec::with_capacity(bounds.total());
    for i in 0..v.rows() {
        for j in 0..v.cols() {
            let p = v.get(i, j);
            let b = bounds.get(i, j);
            if p.degree().is_some_and(|d| d >= b) {
                return Err(Error::internal(format!(
                    "entry ({}, {}) has degree {} but its bound is {}",
                    i + 1,
                    j + 1,
                    p.degree().unwrap_or(0),
                    b
                )));
            }
            out.extend((0..b).map(|k| p.coefficient(k)));
        }
    }
    Ok(out)
}

/// The coefficient form as the reference pseudo-code computes it: only the
/// coefficients below each bound are read and anything above is returned
/// separately.
pub fn coefficient_form_truncated(v: &SkewMatrix, bounds: &DegreeBounds) -> (Vec<RationalCoeff>, Vec<(usize, usize, SkewPoly)>) {
    let mut out = Vec::with_capacity(bounds.total());
    let mut rest = Vec::new();
    for i in 0..v.rows() {
        for j in 0..v.cols() {
            let p = v.get(i, j);
            let b = bounds.get(i, j);
            out.extend((0..b).map(|k| p.coefficient(k)));
            if p.degree().is_some_and(|d| d >= b) {
                let mut high = p.coeffs().to_vec();
                for c in high.iter_mut().take(b) {
                    *c = RationalCoeff::zero(p.field());
                }
                rest.push((i, j, SkewPoly::from_coeffs(p.field(), p.side(), high)));
            }
        }
    }
    (out, rest)
}

/// Rewrites `Σ w_k c^(s·k)` as `Σ w_k X^k`.
pub fn substitute_generator(x: &RationalCoeff, side: Side) -> Result<SkewPoly> {
    let fq = x.field();
    if x.denominator().contains_var(|v| v.name.is_generator()) {
        return Err(Error::internal(format!("denominator of {x} depends on the generator")));
    }
    let mut buckets: std::collections::BTreeMap<usize, Vec<(crate::field::Monomial, u64)>> = Default::default();
    for (m, c) in x.numerator().terms() {
        let gens: Vec<_> = m.factors().iter().filter(|f| f.0.name.is_generator()).collect();
        let [&(v, 1)] = gens.as_slice() else {
            return Err(Error::internal(format!("{x} is not additive in the generator")));
        };
        let k = v.twist * side.sign();
        if k < 0 {
            return Err(Error::internal(format!("{x} contains the generator twist {}", v.twist)));
        }
        let rest = m.div(&crate::field::Monomial::var(v, 1)).expect("factor present");
        buckets.entry(k as usize).or_default().push((rest, *c));
    }
    let len = buckets.keys().next_back().map(|k| k + 1).unwrap_or(0);
    let mut coeffs = vec![RationalCoeff::zero(fq); len];
    for (k, terms) in buckets {
        coeffs[k] = RationalCoeff::new(MPoly::from_terms(fq, terms), x.denominator().clone())?;
    }
    Ok(SkewPoly::from_coeffs(fq, side, coeffs))
}

/// How a reduction chooses its inner biderivations.
pub trait StepRule: Sync {
    fn bounds(&self) -> &DegreeBounds;
    /// Entries in sweep order.
    fn order(&self) -> Vec<(usize, usize)>;
    /// The step cancelling the top coefficient of `v[i, j]`, of degree `deg`.
    fn step(&self, v: &SkewMatrix, i: usize, j: usize, deg: usize) -> Result<ReductionStep>;
}

const MAX_SWEEPS: usize = 10_000;

/// Runs the reduction of `v` under `rule`.
pub fn reduce_with(
    v: &SkewMatrix,
    source: &TModule,
    target: &TModule,
    rule: &dyn StepRule,
    mode: ReductionMode,
) -> Result<(SkewMatrix, ReductionTrace)> {
    let side = source.side();
    let bounds = rule.bounds();
    let mut v = v.clone();
    let mut trace = ReductionTrace::default();
    let order = rule.order();
    for _ in 0..MAX_SWEEPS {
        for &(i, j) in &order {
            let bound = bounds.get(i, j);
            while let Some(deg) = v.get(i, j).degree().filter(|&d| d >= bound) {
                let step = rule.step(&v, i, j, deg)?;
                let delta = inner_matrix(&step.u_matrix(side), source, target)?;
                v = v.sub(&delta)?;
                if v.get(i, j).degree().is_some_and(|d| d >= deg) {
                    return Err(Error::internal(format!(
                        "reduction step did not lower the degree of entry ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
                trace.steps.push(step);
            }
        }
        let done = (0..v.rows()).all(|i| {
            (0..v.cols()).all(|j| v.get(i, j).degree().is_none_or(|d| d < bounds.get(i, j)))
        });
        if done || mode == ReductionMode::SinglePass {
            return Ok((v, trace));
        }
    }
    Err(Error::internal("reduction did not reach the bounds"))
}

/// Builds `Π_t` column by column from the generator images.
pub(crate) fn assemble(
    method: Method,
    source: &TModule,
    target: &TModule,
    rule: &dyn StepRule,
    mode: ReductionMode,
) -> Result<ExtResult> {
    let fq = source.field();
    let side = source.side();
    for (name, m) in [("source", source), ("target", target)] {
        if m.t_matrix().entries().iter().any(|e| e.coeffs().iter().any(|c| c.mentions_generator())) {
            return Err(Error::ReservedSymbol(format!("c (in the {name} module)")));
        }
    }
    let bounds = rule.bounds().clone();
    let ordering = bounds.ordering();
    type Column = (SkewMatrix, ReductionTrace, Vec<SkewPoly>, Vec<(usize, usize, SkewPoly)>);
    let columns: Vec<Column> = ordering
        .par_iter()
        .map(|&g| {
            let v = generator_image(target, source.dim(), g)?;
            let (reduced, trace) = reduce_with(&v, source, target, rule, mode)?;
            let (coords, rest) = match mode {
                ReductionMode::Fixpoint => (coefficient_form(&reduced, &bounds)?, Vec::new()),
                ReductionMode::SinglePass => coefficient_form_truncated(&reduced, &bounds),
            };
            let column = coords
                .iter()
                .map(|x| substitute_generator(x, side))
                .collect::<Result<Vec<_>>>()?;
            Ok((reduced, trace, column, rest))
        })
        .collect::<Result<Vec<_>>>()?;
    let n = ordering.len();
    let mut pi = SkewMatrix::zeros(fq, side, n, n);
    let mut reduced = Vec::with_capacity(n);
    let mut traces = Vec::with_capacity(n);
    let mut discarded = Vec::new();
    for (col, (r, t, column, rest)) in columns.into_iter().enumerate() {
        for (row, entry) in column.into_iter().enumerate() {
            pi.set(row, col, entry);
        }
        reduced.push(r);
        traces.push(t);
        discarded.extend(rest.into_iter().map(|(i, j, terms)| Discarded { column: col, i, j, terms }));
    }
    let pi = TModule::new(pi).map_err(|e| Error::internal(format!("computed matrix is not a t-module: {e}")))?;
    Ok(ExtResult {
        method,
        source: source.clone(),
        target: target.clone(),
        pi,
        bounds,
        ordering,
        reduced,
        traces,
        discarded,
        ext0: None,
    })
}

/// Selects the first applicable route: invertible leading matrix, then
/// triangular composition series, then the adjoint route.
pub fn extension_auto(phi: &TModule, psi: &TModule, mode: ReductionMode) -> Result<ExtResult> {
    let first = match extension_invertible(phi, psi, mode) {
        Err(e) if e.is_hypothesis() => e,
        other => return other,
    };
    let second = match extension_triangular(phi, psi, mode) {
        Err(e) if e.is_hypothesis() => e,
        other => return other,
    };
    let third = match extension_dual(phi, psi, mode) {
        Err(e) if e.is_hypothesis() => e,
        other => return other,
    };
    Err(Error::Unsupported(format!("{first}; {second}; {third}")))
}

pub(crate) fn check_pair(phi: &TModule, psi: &TModule, hypothesis: Hypothesis) -> Result<()> {
    if phi.side() != psi.side() {
        return Err(Error::SideMismatch);
    }
    if phi.field() != psi.field() {
        return Err(Error::FieldMismatch);
    }
    if phi.dim() == 0 {
        return Err(Error::hypothesis(hypothesis, "the source module has dimension 0"));
    }
    Ok(())
}
