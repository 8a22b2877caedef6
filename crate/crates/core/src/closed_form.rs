//! Explicit `Π_t` for a pair of Drinfeld modules `φ_t = θ + Σ a_i τ^i` of rank
//! `n` and `ψ_t = θ + Σ b_j τ^j` of rank `m < n`, without running the reduction.
//!
//! With `r = n − m`, the generators `cτ^i` for `i < r` are already reduced:
//! `t * cτ^i = θcτ^i + Σ b_j c^(j) τ^(i+j)`. For `cτ^(r+l)` the terms of degree
//! `n..=n+l` are removed by one inner biderivation `δ^(U)` with
//! `U = Σ_{k≤l} u_k τ^k`, and each `u_k` is linear in the twists of `c`. The
//! `d`-polynomials record that dependence: `u_k = d_k|_c`, where
//! `(Σ α_j τ^j)|_c = Σ α_j c^(j)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::biderivation::inner_matrix;
use crate::error::{Error, Hypothesis, Result};
use crate::field::{RationalCoeff, Valuation};
use crate::matrix::{KMatrix, SkewMatrix};
use crate::reduction::{
    generator_coeff, DegreeBounds, ExtResult, GeneratorIndex, Method, ReductionStep, ReductionTrace,
};
use crate::skew::{Side, SkewPoly};
use crate::tmodule::{DrinfeldModule, TModule};

/// Two τ-side Drinfeld modules with `rk φ > rk ψ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrinfeldPair {
    phi: DrinfeldModule,
    psi: DrinfeldModule,
}

/// Which recursion produces the `d`-polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DCase {
    /// `m ≤ r`: every `d_i` feeds back only through the coefficients of `φ`.
    NoFeedback,
    /// `m > r`: `ψ` also feeds `d_i` with `i ≥ k + r` back into `d_k`.
    Feedback,
}

impl DCase {
    pub fn for_pair(pair: &DrinfeldPair) -> DCase {
        if pair.m() > pair.r() {
            DCase::Feedback
        } else {
            DCase::NoFeedback
        }
    }
}

impl DrinfeldPair {
    pub fn new(phi: DrinfeldModule, psi: DrinfeldModule) -> Result<Self> {
        if phi.module().side() != Side::Tau || psi.module().side() != Side::Tau {
            return Err(Error::hypothesis(Hypothesis::DrinfeldPair, "both modules must be τ-side"));
        }
        if phi.module().field() != psi.module().field() {
            return Err(Error::FieldMismatch);
        }
        if phi.rank() <= psi.rank() {
            return Err(Error::hypothesis(
                Hypothesis::DrinfeldPair,
                format!("rk φ = {} must exceed rk ψ = {}", phi.rank(), psi.rank()),
            ));
        }
        Ok(DrinfeldPair { phi, psi })
    }

    /// Checks that both t-modules are Drinfeld modules.
    pub fn from_modules(phi: &TModule, psi: &TModule) -> Result<Self> {
        let wrap = |m: &TModule, name: &str| {
            DrinfeldModule::new(m.clone()).map_err(|_| {
                Error::hypothesis(
                    Hypothesis::DrinfeldPair,
                    format!("{name} is not a Drinfeld module (1×1 with constant term theta)"),
                )
            })
        };
        DrinfeldPair::new(wrap(phi, "φ")?, wrap(psi, "ψ")?)
    }

    /// Builds both modules from `a_1..a_n` and `b_1..b_m`.
    pub fn from_coefficients(fq: crate::field::Fq, a: &[RationalCoeff], b: &[RationalCoeff]) -> Result<Self> {
        DrinfeldPair::new(
            DrinfeldModule::from_coefficients(fq, Side::Tau, a)?,
            DrinfeldModule::from_coefficients(fq, Side::Tau, b)?,
        )
    }

    pub fn phi(&self) -> &DrinfeldModule {
        &self.phi
    }

    pub fn psi(&self) -> &DrinfeldModule {
        &self.psi
    }

    pub fn n(&self) -> usize {
        self.phi.rank()
    }

    pub fn m(&self) -> usize {
        self.psi.rank()
    }

    pub fn r(&self) -> usize {
        self.n() - self.m()
    }

    /// `a_i`, zero outside `1..=n`.
    pub fn a(&self, i: usize) -> RationalCoeff {
        if i == 0 {
            return RationalCoeff::zero(self.field());
        }
        self.phi.coefficient(i)
    }

    /// `b_j`, zero outside `1..=m`.
    pub fn b(&self, j: usize) -> RationalCoeff {
        if j == 0 {
            return RationalCoeff::zero(self.field());
        }
        self.psi.coefficient(j)
    }

    pub fn field(&self) -> crate::field::Fq {
        self.phi.module().field()
    }
}

/// `d_{r+l, n+k}` for `k = 0..=l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DPolynomialTable {
    pub l: usize,
    pub case: DCase,
    /// Indexed by `k`.
    pub d: Vec<SkewPoly>,
}

impl DPolynomialTable {
    pub fn get(&self, k: usize) -> &SkewPoly {
        &self.d[k]
    }
}

/// Solves for `d_l, d_{l−1}, …, d_0` downward:
///
/// `a_n^(k) d_k = b_{m−l+k} τ^{m−l+k} − Σ_{i=k+1..l} a_{n+k−i}^(i) d_i
///               + Σ_{i=k+r..l} b_{n+k−i} τ^{n+k−i} d_i`,
///
/// the last sum only in the [`DCase::Feedback`] case.
pub fn d_polys(pair: &DrinfeldPair, l: usize, case: DCase) -> Result<DPolynomialTable> {
    let (n, m, r) = (pair.n(), pair.m(), pair.r());
    if l >= m {
        return Err(Error::DimensionMismatch(format!("l = {l} must be below m = {m}")));
    }
    let fq = pair.field();
    let an = pair.a(n);
    let mut d = vec![SkewPoly::zero(fq, Side::Tau); l + 1];
    for k in (0..=l).rev() {
        let mut acc = SkewPoly::monomial(pair.b(m - l + k), m - l + k, Side::Tau);
        for i in k + 1..=l {
            acc = acc.sub_unchecked(&d[i].scale_left(&pair.a(n + k - i).twist(i as i32)));
        }
        if case == DCase::Feedback {
            for i in k + r..=l {
                let s = n + k - i;
                acc = acc.add_unchecked(&d[i].shift_left(s).scale_left(&pair.b(s)));
            }
        }
        d[k] = acc.scale_left(&an.twist(k as i32).inv()?);
    }
    Ok(DPolynomialTable { l, case, d })
}

/// Column `i` of `Π_t` as operators acting on `c`.
fn column(pair: &DrinfeldPair, i: usize) -> Result<(Vec<SkewPoly>, Vec<SkewPoly>)> {
    let (n, m, r) = (pair.n(), pair.m(), pair.r());
    let fq = pair.field();
    let zero = SkewPoly::zero(fq, Side::Tau);
    let mut col = vec![zero; n];
    col[i] = SkewPoly::constant(RationalCoeff::theta(fq, 0), Side::Tau);
    for j in 1..=m {
        if i + j < n {
            col[i + j] = SkewPoly::monomial(pair.b(j), j, Side::Tau);
        }
    }
    if i < r {
        return Ok((col, Vec::new()));
    }
    let l = i - r;
    let d = d_polys(pair, l, DCase::for_pair(pair))?.d;
    let theta = RationalCoeff::theta(fq, 0);
    for (j, entry) in col.iter_mut().enumerate() {
        let mut e = entry.clone();
        if (1..=l).contains(&j) {
            e = e.add_unchecked(&d[j].scale_left(&theta.sub(&theta.twist(j as i32))));
        }
        for (k, dk) in d.iter().enumerate().take(j) {
            e = e.sub_unchecked(&dk.scale_left(&pair.a(j - k).twist(k as i32)));
            if j - k <= m {
                e = e.add_unchecked(&dk.shift_left(j - k).scale_left(&pair.b(j - k)));
            }
        }
        *entry = e;
    }
    Ok((col, d))
}

/// `Π_t` from the explicit formulas, with the same audit data as the reduction:
/// each column's trace is the single inner biderivation `U = Σ (d_k|_c) τ^k`.
pub fn pi_matrix(pair: &DrinfeldPair) -> Result<ExtResult> {
    let fq = pair.field();
    let n = pair.n();
    let source = pair.phi.module().clone();
    let target = pair.psi.module().clone();
    let c = generator_coeff(fq, 0);
    let bounds = DegreeBounds::uniform(1, 1, n);
    let ordering = bounds.ordering();
    let columns = (0..n)
        .into_par_iter()
        .map(|i| -> Result<(Vec<SkewPoly>, SkewMatrix, ReductionTrace)> {
            let (col, d) = column(pair, i)?;
            let steps: Vec<ReductionStep> = d
                .iter()
                .enumerate()
                .filter(|(_, dk)| !dk.is_zero())
                .map(|(k, dk)| ReductionStep {
                    row: 0,
                    col: 0,
                    shift: k,
                    multiplier: dk.apply_at(&c),
                    basis: KMatrix::identity(fq, 1),
                })
                .collect();
            let trace = ReductionTrace { steps };
            let image = crate::reduction::generator_image(&target, 1, GeneratorIndex { i: 0, j: 0, k: i })?;
            let mut reduced = image;
            for s in &trace.steps {
                reduced = reduced.sub(&inner_matrix(&s.u_matrix(Side::Tau), &source, &target)?)?;
            }
            Ok((col, reduced, trace))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut pi = SkewMatrix::zeros(fq, Side::Tau, n, n);
    let mut reduced = Vec::with_capacity(n);
    let mut traces = Vec::with_capacity(n);
    for (i, (col, red, trace)) in columns.into_iter().enumerate() {
        for (j, e) in col.into_iter().enumerate() {
            pi.set(j, i, e);
        }
        reduced.push(red);
        traces.push(trace);
    }
    let pi = TModule::new(pi).map_err(|e| Error::internal(format!("closed form is not a t-module: {e}")))?;
    Ok(ExtResult {
        method: Method::ClosedForm,
        source,
        target,
        pi,
        bounds,
        ordering,
        reduced,
        traces,
        discarded: Vec::new(),
        ext0: None,
    })
}

/// The stated rank of the extension module: `2m` for `m ≤ r`, `3m` otherwise.
pub fn rank_formula(pair: &DrinfeldPair) -> usize {
    if pair.m() <= pair.r() {
        2 * pair.m()
    } else {
        3 * pair.m()
    }
}

/// A coefficient of `Π_t` with negative valuation at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralityViolation {
    pub row: usize,
    pub col: usize,
    pub power: usize,
    pub valuation: i64,
}

/// Outcome of the integrality conditions and, when they hold, the scan of `Π_t`.
///
/// Integrality means `v_∞ ≥ 0` for every coefficient except the structural
/// `θ` in the constant terms of `φ_t`, `ψ_t` and on the diagonal of `Π_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralityReport {
    /// `v(b_j) ≥ 0` for all `j`.
    pub psi_integral: bool,
    /// `v(a_i) ≥ 0` for `i < n`.
    pub phi_integral: bool,
    /// `v(a_n) < min{v(b_1), q^i v(a_{n−i}), v(b_{m+1−i}) / q^{m−i} : 1 ≤ i ≤ m−1}`.
    pub leading_dominates: bool,
    /// `None` when some condition fails and `Π_t` was not scanned.
    pub violations: Option<Vec<IntegralityViolation>>,
}

impl IntegralityReport {
    pub fn conditions_hold(&self) -> bool {
        self.psi_integral && self.phi_integral && self.leading_dominates
    }

    /// True when the conditions hold and `Π_t` is integral.
    pub fn confirmed(&self) -> bool {
        self.violations.as_ref().is_some_and(|v| v.is_empty())
    }
}

fn at_least_zero(v: Valuation) -> bool {
    v >= Valuation::Finite(0)
}

/// `v · q^e` with infinity absorbing.
fn scaled(v: Valuation, q: u64, e: usize) -> Result<Option<i128>> {
    match v {
        Valuation::Infinite => Ok(None),
        Valuation::Finite(x) => {
            let f = (q as i128)
                .checked_pow(e as u32)
                .and_then(|w| w.checked_mul(x as i128))
                .ok_or_else(|| Error::SpecializationOverflow(format!("q^{e}")))?;
            Ok(Some(f))
        }
    }
}

/// `v(a_n) · q^{e_lhs} < v(x) · q^{e_rhs}`.
fn less(an: Valuation, e_lhs: usize, x: Valuation, e_rhs: usize, q: u64) -> Result<bool> {
    Ok(match (scaled(an, q, e_lhs)?, scaled(x, q, e_rhs)?) {
        (_, None) => an != Valuation::Infinite,
        (None, Some(_)) => false,
        (Some(l), Some(r)) => l < r,
    })
}

/// Checks the integrality conditions on a pair over `F_q(θ)` and, when they
/// hold, scans `Π_t` for coefficients with negative valuation.
pub fn check_integrality(pair: &DrinfeldPair) -> Result<IntegralityReport> {
    let (n, m) = (pair.n(), pair.m());
    let q = pair.field().order();
    let va = (0..=n).map(|i| pair.a(i).specialized_valuation()).collect::<Result<Vec<_>>>()?;
    let vb = (0..=m).map(|j| pair.b(j).specialized_valuation()).collect::<Result<Vec<_>>>()?;
    let psi_integral = (1..=m).all(|j| at_least_zero(vb[j]));
    let phi_integral = (1..n).all(|i| at_least_zero(va[i]));
    let an = va[n];
    let mut leading_dominates = less(an, 0, vb[1], 0, q)?;
    for i in 1..m {
        // q^i v(a_{n−i}) and v(b_{m+1−i}) / q^{m−i}
        leading_dominates &= less(an, 0, va[n - i], i, q)?;
        leading_dominates &= less(an, m - i, vb[m + 1 - i], 0, q)?;
    }
    let mut report = IntegralityReport {
        psi_integral,
        phi_integral,
        leading_dominates,
        violations: None,
    };
    if !report.conditions_hold() {
        return Ok(report);
    }
    let res = pi_matrix(pair)?;
    let t = res.pi.t_matrix();
    let theta = RationalCoeff::theta(pair.field(), 0);
    let mut violations = Vec::new();
    for row in 0..n {
        for col in 0..n {
            for (power, x) in t.get(row, col).coeffs().iter().enumerate() {
                let x = if row == col && power == 0 { x.sub(&theta) } else { x.clone() };
                if let Valuation::Finite(v) = x.specialized_valuation()? {
                    if v < 0 {
                        violations.push(IntegralityViolation { row, col, power, valuation: v });
                    }
                }
            }
        }
    }
    report.violations = Some(violations);
    Ok(report)
}
