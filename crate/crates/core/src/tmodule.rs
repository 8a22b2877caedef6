//! Anderson t-modules given by the matrix `Φ_t`.

use crate::error::{Error, Result};
use crate::field::{Fq, RationalCoeff};
use crate::matrix::{KMatrix, SkewMatrix};
use crate::skew::{Side, SkewPoly};

/// A validated t-module: `Φ_t` has constant term `θI + N` with `N` nilpotent.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TModule {
    t: SkewMatrix,
    nilpotent: KMatrix,
    degree: usize,
}

impl TModule {
    pub fn new(t: SkewMatrix) -> Result<Self> {
        let d = t.rows();
        if t.cols() != d {
            return Err(Error::InvalidModule(format!("{}x{} matrix is not square", d, t.cols())));
        }
        let fq = t.field();
        let c = t.constant_term();
        let theta = RationalCoeff::theta(fq, 0);
        let mut n = c.clone();
        for i in 0..d {
            n.set(i, i, c.get(i, i).sub(&theta));
        }
        for i in 0..d {
            for j in 0..d {
                if c.get(i, j).contains_var(|v| v.name.is_theta() && v.twist != 0) {
                    return Err(Error::InvalidModule(format!(
                        "constant term entry ({}, {}) contains a twisted theta",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        if d > 0 && !n.pow(d)?.is_zero() {
            return Err(Error::InvalidModule(
                "constant term minus theta*I is not nilpotent".into(),
            ));
        }
        let degree = t.degree().unwrap_or(0);
        Ok(TModule {
            t,
            nilpotent: n,
            degree,
        })
    }

    /// The zero t-module of dimension 0.
    pub fn zero(fq: Fq, side: Side) -> Self {
        TModule {
            t: SkewMatrix::zeros(fq, side, 0, 0),
            nilpotent: KMatrix::zeros(fq, 0, 0),
            degree: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.t.rows()
    }

    pub fn t_matrix(&self) -> &SkewMatrix {
        &self.t
    }

    pub fn nilpotent(&self) -> &KMatrix {
        &self.nilpotent
    }

    /// `deg_τ Φ_t`, the largest entry degree.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn side(&self) -> Side {
        self.t.side()
    }

    pub fn field(&self) -> Fq {
        self.t.field()
    }

    /// Coefficients of `τ^{deg}` in every entry.
    pub fn leading_matrix(&self) -> KMatrix {
        self.t.coefficient_matrix(self.degree)
    }

    /// Inverse of the leading matrix when it exists.
    pub fn leading_inverse(&self) -> Result<Option<KMatrix>> {
        self.leading_matrix().inverse()
    }

    pub fn is_strictly_pure(&self) -> bool {
        self.dim() > 0 && matches!(self.leading_inverse(), Ok(Some(_)))
    }

    /// `Φ^σ`: entrywise adjoint, then transpose. Applied to a σ-side module it
    /// is the inverse map back to the τ side.
    pub fn adjoint(&self) -> TModule {
        let t = self.t.adjoint();
        TModule {
            nilpotent: self.nilpotent.transpose(),
            degree: self.degree,
            t,
        }
    }

    /// The same module read in the other ring with all twists negated.
    pub fn mirror(&self) -> TModule {
        TModule::new(self.t.mirror()).expect("mirroring preserves the t-module conditions")
    }

    pub fn is_drinfeld(&self) -> bool {
        self.dim() == 1 && self.nilpotent.is_zero()
    }

    pub fn is_lower_triangular(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (i + 1..d).all(|j| self.t.get(i, j).is_zero()))
    }

    /// `Φ_a = Σ a_k Φ_t^k`.
    pub fn eval(&self, a: &TPoly) -> Result<SkewMatrix> {
        let fq = self.field();
        let mut acc = SkewMatrix::zeros(fq, self.side(), self.dim(), self.dim());
        let mut power = SkewMatrix::identity(fq, self.side(), self.dim());
        for (k, &c) in a.coeffs.iter().enumerate() {
            if k > 0 {
                power = power.mul(&self.t)?;
            }
            if c != 0 {
                let s = SkewPoly::constant(RationalCoeff::constant(fq, c), self.side());
                acc = acc.add(&power.left_mul_poly(&s)?)?;
            }
        }
        Ok(acc)
    }

    /// Block lower-triangular module `[[quotient, 0], [δ_t, sub]]`.
    pub fn assemble_triangular(quotient: &TModule, sub: &TModule, delta_t: &SkewMatrix) -> Result<TModule> {
        if delta_t.shape() != (sub.dim(), quotient.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "biderivation is {}x{}, expected {}x{}",
                delta_t.rows(),
                delta_t.cols(),
                sub.dim(),
                quotient.dim()
            )));
        }
        let t = SkewMatrix::block_lower(&quotient.t, delta_t, &sub.t)?;
        TModule::new(t).map_err(|e| Error::internal(format!("assembled extension is not a t-module: {e}")))
    }

    /// Block diagonal sum; the empty sum is the zero module.
    pub fn direct_sum(fq: Fq, side: Side, parts: &[TModule]) -> Result<TModule> {
        let mut acc = TModule::zero(fq, side);
        for p in parts {
            let zero = SkewMatrix::zeros(fq, side, p.dim(), acc.dim());
            acc = TModule::assemble_triangular(&acc, p, &zero)?;
        }
        Ok(acc)
    }
}

/// Checks `f · source_t = target_t · f`.
pub fn is_morphism(f: &SkewMatrix, source: &TModule, target: &TModule) -> Result<bool> {
    if f.shape() != (target.dim(), source.dim()) {
        return Err(Error::DimensionMismatch(format!(
            "morphism is {}x{}, expected {}x{}",
            f.rows(),
            f.cols(),
            target.dim(),
            source.dim()
        )));
    }
    Ok(f.mul(source.t_matrix())? == target.t_matrix().mul(f)?)
}

/// A one-dimensional t-module with constant term exactly `θ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DrinfeldModule(TModule);

impl DrinfeldModule {
    pub fn new(m: TModule) -> Result<Self> {
        if !m.is_drinfeld() {
            return Err(Error::InvalidModule(
                "a Drinfeld module is 1-dimensional with constant term theta".into(),
            ));
        }
        Ok(DrinfeldModule(m))
    }

    /// `θ + Σ_{i≥1} coeffs[i-1] τ^i`.
    pub fn from_coefficients(fq: Fq, side: Side, coeffs: &[RationalCoeff]) -> Result<Self> {
        let mut all = vec![RationalCoeff::theta(fq, 0)];
        all.extend_from_slice(coeffs);
        let p = SkewPoly::from_coeffs(fq, side, all);
        DrinfeldModule::new(TModule::new(SkewMatrix::from_rows(fq, side, vec![vec![p]])?)?)
    }

    pub fn module(&self) -> &TModule {
        &self.0
    }

    pub fn poly(&self) -> &SkewPoly {
        self.0.t_matrix().get(0, 0)
    }

    /// `deg_τ φ_t`, the rank.
    pub fn rank(&self) -> usize {
        self.0.degree()
    }

    /// The coefficient of `τ^i`; `coefficient(0) = θ`.
    pub fn coefficient(&self, i: usize) -> RationalCoeff {
        self.poly().coefficient(i)
    }
}

/// An element of `F_q[t]`, coefficients constant term first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TPoly {
    pub coeffs: Vec<u64>,
}

impl TPoly {
    pub fn new(fq: Fq, coeffs: &[i64]) -> Self {
        let mut coeffs: Vec<u64> = coeffs.iter().map(|&c| fq.from_i64(c)).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    pub fn t() -> Self {
        TPoly { coeffs: vec![0, 1] }
    }

    pub fn mul(&self, other: &TPoly, fq: Fq) -> TPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return TPoly { coeffs: Vec::new() };
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = fq.add(out[i + j], fq.mul(a, b));
            }
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        TPoly { coeffs: out }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
}
