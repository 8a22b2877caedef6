//! The twisted polynomial rings `K{τ}` (`τu = u^(1)τ`) and `K{σ}`
//! (`σu = u^(-1)σ`).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fq, RationalCoeff};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Tau,
    Sigma,
}

impl Side {
    /// Twist applied when a coefficient moves past one power of the variable.
    pub fn sign(self) -> i32 {
        match self {
            Side::Tau => 1,
            Side::Sigma => -1,
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::Tau => Side::Sigma,
            Side::Sigma => Side::Tau,
        }
    }

    /// The variable name used in the expression grammar.
    pub fn letter(self) -> &'static str {
        match self {
            Side::Tau => "T",
            Side::Sigma => "S",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Tau => "tau",
            Side::Sigma => "sigma",
        })
    }
}

/// `Σ coeffs[i] X^i` with the coefficient on the left. The last coefficient
/// is nonzero; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SkewPoly {
    side: Side,
    fq: Fq,
    coeffs: Vec<RationalCoeff>,
}

impl SkewPoly {
    pub fn zero(fq: Fq, side: Side) -> Self {
        SkewPoly {
            side,
            fq,
            coeffs: Vec::new(),
        }
    }

    pub fn one(fq: Fq, side: Side) -> Self {
        SkewPoly::constant(RationalCoeff::one(fq), side)
    }

    pub fn constant(c: RationalCoeff, side: Side) -> Self {
        SkewPoly::monomial(c, 0, side)
    }

    /// `c X^k`.
    pub fn monomial(c: RationalCoeff, k: usize, side: Side) -> Self {
        let fq = c.field();
        if c.is_zero() {
            return SkewPoly::zero(fq, side);
        }
        let mut coeffs = vec![RationalCoeff::zero(fq); k];
        coeffs.push(c);
        SkewPoly { side, fq, coeffs }
    }

    /// The variable itself, `τ` or `σ`.
    pub fn x(fq: Fq, side: Side) -> Self {
        SkewPoly::monomial(RationalCoeff::one(fq), 1, side)
    }

    pub fn from_coeffs(fq: Fq, side: Side, mut coeffs: Vec<RationalCoeff>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SkewPoly { side, fq, coeffs }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn field(&self) -> Fq {
        self.fq
    }

    pub fn coeffs(&self) -> &[RationalCoeff] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as degree 0, as used for loop
    /// bounds in the reduction.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coefficient(&self, n: usize) -> RationalCoeff {
        self.coeffs
            .get(n)
            .cloned()
            .unwrap_or_else(|| RationalCoeff::zero(self.fq))
    }

    pub fn coefficient_ref(&self, n: usize) -> Option<&RationalCoeff> {
        self.coeffs.get(n)
    }

    pub fn constant_term(&self) -> RationalCoeff {
        self.coefficient(0)
    }

    pub fn leading_coefficient(&self) -> RationalCoeff {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| RationalCoeff::zero(self.fq))
    }

    /// A nonzero polynomial of degree 0, i.e. an element of `K`.
    pub fn as_scalar(&self) -> Option<RationalCoeff> {
        match self.coeffs.len() {
            0 => Some(RationalCoeff::zero(self.fq)),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    fn check_side(&self, other: &SkewPoly) -> Result<()> {
        if self.side != other.side {
            return Err(Error::SideMismatch);
        }
        if self.fq != other.fq {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.check_side(other)?;
        Ok(self.add_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &SkewPoly) -> SkewPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        SkewPoly::from_coeffs(self.fq, self.side, coeffs)
    }

    pub fn neg(&self) -> SkewPoly {
        SkewPoly {
            side: self.side,
            fq: self.fq,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.check_side(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub(crate) fn sub_unchecked(&self, other: &SkewPoly) -> SkewPoly {
        self.add_unchecked(&other.neg())
    }

    /// Product in the skew ring: the coefficient of `X^(i+j)` collects
    /// `f_i · g_j^(s·i)`.
    pub fn mul(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.check_side(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &SkewPoly) -> SkewPoly {
        if self.is_zero() || other.is_zero() {
            return SkewPoly::zero(self.fq, self.side);
        }
        let s = self.side.sign();
        let mut out = vec![RationalCoeff::zero(self.fq); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, f) in self.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for (j, g) in other.coeffs.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                let term = f.mul(&g.twist(s * i as i32));
                out[i + j] = out[i + j].add(&term);
            }
        }
        SkewPoly::from_coeffs(self.fq, self.side, out)
    }

    /// Left multiplication by a scalar.
    pub fn scale_left(&self, c: &RationalCoeff) -> SkewPoly {
        if c.is_zero() {
            return SkewPoly::zero(self.fq, self.side);
        }
        SkewPoly {
            side: self.side,
            fq: self.fq,
            coeffs: self.coeffs.iter().map(|a| c.mul(a)).collect(),
        }
    }

    /// Right multiplication by a scalar: `f·c = Σ f_i c^(s·i) X^i`.
    pub fn scale_right(&self, c: &RationalCoeff) -> SkewPoly {
        if c.is_zero() {
            return SkewPoly::zero(self.fq, self.side);
        }
        let s = self.side.sign();
        SkewPoly {
            side: self.side,
            fq: self.fq,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| a.mul(&c.twist(s * i as i32)))
                .collect(),
        }
    }

    /// `X^k · self`.
    pub fn shift_left(&self, k: usize) -> SkewPoly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let s = self.side.sign() * k as i32;
        let mut coeffs = vec![RationalCoeff::zero(self.fq); k];
        coeffs.extend(self.coeffs.iter().map(|c| c.twist(s)));
        SkewPoly {
            side: self.side,
            fq: self.fq,
            coeffs,
        }
    }

    /// Twists every coefficient by `k`, leaving the exponents alone.
    pub fn twist_coeffs(&self, k: i32) -> SkewPoly {
        SkewPoly {
            side: self.side,
            fq: self.fq,
            coeffs: self.coeffs.iter().map(|c| c.twist(k)).collect(),
        }
    }

    /// `(Σ a_i τ^i)^σ = Σ a_i^(-i) σ^i`.
    pub fn adjoint_to_sigma(&self) -> Result<SkewPoly> {
        if self.side != Side::Tau {
            return Err(Error::SideMismatch);
        }
        Ok(self.switch_side(Side::Sigma))
    }

    /// `(Σ b_i σ^i)^τ = Σ b_i^(i) τ^i`.
    pub fn adjoint_to_tau(&self) -> Result<SkewPoly> {
        if self.side != Side::Sigma {
            return Err(Error::SideMismatch);
        }
        Ok(self.switch_side(Side::Tau))
    }

    /// The adjoint map to the other ring.
    pub fn adjoint(&self) -> SkewPoly {
        self.switch_side(self.side.other())
    }

    fn switch_side(&self, target: Side) -> SkewPoly {
        let s = target.sign();
        SkewPoly {
            side: target,
            fq: self.fq,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| a.twist(s * i as i32))
                .collect(),
        }
    }

    /// Moves to the other ring by relabelling `τ ↔ σ` and negating every
    /// twist index. This is a ring isomorphism `K{τ} → K{σ}`.
    pub fn mirror(&self) -> SkewPoly {
        SkewPoly {
            side: self.side.other(),
            fq: self.fq,
            coeffs: self.coeffs.iter().map(mirror_coeff).collect(),
        }
    }

    /// Evaluates the additive polynomial at `x`: `Σ f_i x^(s·i)`.
    pub fn apply_at(&self, x: &RationalCoeff) -> RationalCoeff {
        let s = self.side.sign();
        self.coeffs
            .iter()
            .enumerate()
            .fold(RationalCoeff::zero(self.fq), |acc, (i, a)| {
                acc.add(&a.mul(&x.twist(s * i as i32)))
            })
    }

    pub fn map_coeffs(&self, f: impl Fn(&RationalCoeff) -> RationalCoeff) -> SkewPoly {
        SkewPoly::from_coeffs(self.fq, self.side, self.coeffs.iter().map(f).collect())
    }
}

/// Negates every twist index of a field element.
pub fn mirror_coeff(c: &RationalCoeff) -> RationalCoeff {
    use crate::field::MPoly;
    let fq = c.field();
    let flip = |p: &MPoly| {
        MPoly::from_terms(
            fq,
            p.terms()
                .iter()
                .map(|(m, k)| {
                    let factors = m
                        .factors()
                        .iter()
                        .map(|&(v, e)| (crate::field::TwistedVar::new(v.name, -v.twist), e))
                        .collect();
                    (crate::field::Monomial::from_factors(factors), *k)
                })
                .collect(),
        )
    };
    RationalCoeff::from_coprime(flip(c.numerator()), flip(c.denominator()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fq() -> Fq {
        Fq::prime(5)
    }

    fn sym(name: &str, k: i32) -> RationalCoeff {
        RationalCoeff::symbol(fq(), name, k)
    }

    #[test]
    fn product_examples() {
        let f = SkewPoly::monomial(sym("a", 0), 1, Side::Tau);
        let g = SkewPoly::monomial(sym("b", 0), 2, Side::Tau);
        let want = SkewPoly::monomial(sym("a", 0).mul(&sym("b", 1)), 3, Side::Tau);
        assert_eq!(f.mul(&g).unwrap(), want);

        let th = RationalCoeff::theta(fq(), 0);
        let f = SkewPoly::constant(th.clone(), Side::Tau).add(&SkewPoly::x(fq(), Side::Tau)).unwrap();
        let prod = f.mul(&SkewPoly::constant(th.clone(), Side::Tau)).unwrap();
        assert_eq!(prod.coeffs(), &[th.mul(&th), RationalCoeff::theta(fq(), 1)]);
        assert_eq!(f.mul(&SkewPoly::one(fq(), Side::Tau)).unwrap(), f);
    }

    #[test]
    fn sigma_commutation() {
        let x = SkewPoly::x(fq(), Side::Sigma);
        let a = SkewPoly::constant(sym("a", 0), Side::Sigma);
        assert_eq!(x.mul(&a).unwrap(), SkewPoly::monomial(sym("a", -1), 1, Side::Sigma));
        assert!(matches!(x.mul(&SkewPoly::x(fq(), Side::Tau)), Err(Error::SideMismatch)));
    }

    #[test]
    fn degree_and_coefficients() {
        let f = SkewPoly::from_coeffs(
            fq(),
            Side::Tau,
            vec![sym("a", 0), RationalCoeff::zero(fq()), RationalCoeff::zero(fq()), RationalCoeff::one(fq())],
        );
        assert_eq!(f.degree(), Some(3));
        assert_eq!(SkewPoly::zero(fq(), Side::Tau).degree(), None);
        let g = SkewPoly::from_coeffs(fq(), Side::Tau, vec![RationalCoeff::zero(fq()), RationalCoeff::one(fq()).neg(), RationalCoeff::one(fq())]);
        assert!(g.constant_term().is_zero());
        assert!(f.coefficient(9).is_zero());
    }

    #[test]
    fn adjoint_examples() {
        let th = RationalCoeff::theta(fq(), 0);
        let f = SkewPoly::from_coeffs(
            fq(),
            Side::Tau,
            vec![th.clone(), sym("a", 0), RationalCoeff::zero(fq()), RationalCoeff::one(fq())],
        );
        let g = f.adjoint_to_sigma().unwrap();
        assert_eq!(g.coeffs()[1], sym("a", -1));
        assert_eq!(g.adjoint_to_tau().unwrap(), f);
        assert_eq!(SkewPoly::constant(th.clone(), Side::Tau).adjoint_to_sigma().unwrap().coeffs(), &[th]);
    }

    #[test]
    fn apply_examples() {
        let c = sym("c", 0);
        let t2 = SkewPoly::monomial(RationalCoeff::one(fq()), 2, Side::Tau);
        assert_eq!(t2.apply_at(&c), sym("c", 2));
        let f = SkewPoly::constant(RationalCoeff::theta(fq(), 0), Side::Tau).add(&SkewPoly::x(fq(), Side::Tau)).unwrap();
        assert!(f.apply_at(&RationalCoeff::zero(fq())).is_zero());
    }
}
