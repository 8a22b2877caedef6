//! Biderivations `δ ∈ Der(Φ, Ψ)`, stored through `δ_t`.

use crate::error::{Error, Result};
use crate::matrix::SkewMatrix;
use crate::tmodule::{TModule, TPoly};

/// `δ` with `δ(ab) = Ψ_a δ(b) + δ(a) Φ_b`, determined by `δ_t` of shape
/// `dim Ψ × dim Φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biderivation {
    source: TModule,
    target: TModule,
    delta_t: SkewMatrix,
}

impl Biderivation {
    pub fn new(source: &TModule, target: &TModule, delta_t: SkewMatrix) -> Result<Self> {
        if delta_t.shape() != (target.dim(), source.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "biderivation is {}x{}, expected {}x{}",
                delta_t.rows(),
                delta_t.cols(),
                target.dim(),
                source.dim()
            )));
        }
        if delta_t.side() != source.side() || source.side() != target.side() {
            return Err(Error::SideMismatch);
        }
        Ok(Biderivation {
            source: source.clone(),
            target: target.clone(),
            delta_t,
        })
    }

    /// `δ^{(U)}_t = U Φ_t − Ψ_t U`.
    pub fn inner(u: &SkewMatrix, source: &TModule, target: &TModule) -> Result<Self> {
        let delta_t = inner_matrix(u, source, target)?;
        Biderivation::new(source, target, delta_t)
    }

    pub fn delta_t(&self) -> &SkewMatrix {
        &self.delta_t
    }

    pub fn source(&self) -> &TModule {
        &self.source
    }

    pub fn target(&self) -> &TModule {
        &self.target
    }

    /// `δ(a)` from `δ(t^k) = Ψ_t δ(t^{k-1}) + δ_t Φ_{t^{k-1}}`.
    pub fn evaluate(&self, a: &TPoly) -> Result<SkewMatrix> {
        let fq = self.delta_t.field();
        let side = self.delta_t.side();
        let (e, d) = self.delta_t.shape();
        let mut acc = SkewMatrix::zeros(fq, side, e, d);
        let mut delta_k = SkewMatrix::zeros(fq, side, e, d);
        let mut phi_prev = SkewMatrix::identity(fq, side, d);
        for (k, &c) in a.coeffs.iter().enumerate() {
            if k > 0 {
                delta_k = self
                    .target
                    .t_matrix()
                    .mul(&delta_k)?
                    .add(&self.delta_t.mul(&phi_prev)?)?;
                phi_prev = phi_prev.mul(self.source.t_matrix())?;
            }
            if c != 0 && k > 0 {
                let s = crate::skew::SkewPoly::constant(crate::field::RationalCoeff::constant(fq, c), side);
                acc = acc.add(&delta_k.left_mul_poly(&s)?)?;
            }
        }
        Ok(acc)
    }

    /// `δ ∈ Der_0`: every entry of `δ_t` has zero constant term.
    pub fn is_in_der0(&self) -> bool {
        self.delta_t.entries().iter().all(|e| e.constant_term().is_zero())
    }

    /// The middle term `[[Φ, 0], [δ_t, Ψ]]` of the extension `δ` classifies.
    pub fn extension_module(&self) -> Result<TModule> {
        TModule::assemble_triangular(&self.source, &self.target, &self.delta_t)
    }
}

/// `U Φ_t − Ψ_t U`.
pub fn inner_matrix(u: &SkewMatrix, source: &TModule, target: &TModule) -> Result<SkewMatrix> {
    if u.shape() != (target.dim(), source.dim()) {
        return Err(Error::DimensionMismatch(format!(
            "U is {}x{}, expected {}x{}",
            u.rows(),
            u.cols(),
            target.dim(),
            source.dim()
        )));
    }
    u.mul(source.t_matrix())?.sub(&target.t_matrix().mul(u)?)
}
