//! Elements of the generic twisted function field `K`.

use std::collections::BTreeMap;

use super::fq::Fq;
use super::gcd::gcd;
use super::poly::{MPoly, Monomial};
use super::symbol::{Symbol, TwistedVar};
use crate::error::{Error, Result};

/// A reduced fraction `num/den` whose denominator has leading coefficient 1
/// in graded-lex order. Zero is `0/1`, so structural equality is equality of
/// values.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalCoeff {
    num: MPoly,
    den: MPoly,
}

/// `v_∞` with `v(1/θ) = 1`; `Infinite` is the valuation of zero.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl std::fmt::Display for Valuation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl RationalCoeff {
    pub fn zero(fq: Fq) -> Self {
        RationalCoeff {
            num: MPoly::zero(fq),
            den: MPoly::one(fq),
        }
    }

    pub fn one(fq: Fq) -> Self {
        RationalCoeff::constant(fq, 1)
    }

    pub fn constant(fq: Fq, c: u64) -> Self {
        RationalCoeff {
            num: MPoly::constant(fq, c),
            den: MPoly::one(fq),
        }
    }

    pub fn from_int(fq: Fq, v: i64) -> Self {
        RationalCoeff::constant(fq, fq.from_i64(v))
    }

    pub fn var(fq: Fq, v: TwistedVar) -> Self {
        RationalCoeff::from_poly(MPoly::var(fq, v))
    }

    pub fn symbol(fq: Fq, name: &str, twist: i32) -> Self {
        RationalCoeff::var(fq, TwistedVar::new(Symbol::new(name), twist))
    }

    /// `θ^(k)`.
    pub fn theta(fq: Fq, twist: i32) -> Self {
        RationalCoeff::var(fq, TwistedVar::theta(twist))
    }

    pub fn from_poly(num: MPoly) -> Self {
        let fq = num.field();
        RationalCoeff {
            num,
            den: MPoly::one(fq),
        }
    }

    /// Reduces `num/den` to canonical form.
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.field() != den.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: MPoly, den: MPoly) -> Self {
        let fq = num.field();
        if num.is_zero() {
            return RationalCoeff::zero(fq);
        }
        let g = gcd(&num, &den);
        if g.is_one() {
            Self::normalized(num, den)
        } else {
            Self::normalized(
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        }
    }

    /// Builds a fraction from a pair already known to be coprime, such as the
    /// image of a reduced fraction under a field automorphism.
    pub(crate) fn from_coprime(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return RationalCoeff::zero(num.field());
        }
        Self::normalized(num, den)
    }

    /// Scales a coprime pair so the denominator is monic.
    fn normalized(num: MPoly, den: MPoly) -> Self {
        let lc = den.leading_coefficient();
        if lc == 1 {
            return RationalCoeff { num, den };
        }
        let inv = num.field().inv(lc).expect("nonzero leading coefficient");
        RationalCoeff {
            num: num.scale(inv),
            den: den.scale(inv),
        }
    }

    pub fn field(&self) -> Fq {
        self.num.field()
    }

    pub fn numerator(&self) -> &MPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The `F_q` value of a constant element.
    pub fn constant_value(&self) -> Option<u64> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn contains_var(&self, pred: impl Fn(&TwistedVar) -> bool + Copy) -> bool {
        self.num.contains_var(pred) || self.den.contains_var(pred)
    }

    pub fn mentions_generator(&self) -> bool {
        self.contains_var(|v| v.name.is_generator())
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            if self.den.is_one() {
                return RationalCoeff::from_poly(num);
            }
            return Self::reduce(num, self.den.clone());
        }
        if self.den.is_one() {
            let num = self.num.mul(&other.den).add(&other.num);
            return RationalCoeff {
                num,
                den: other.den.clone(),
            };
        }
        if other.den.is_one() {
            let num = other.num.mul(&self.den).add(&self.num);
            return RationalCoeff {
                num,
                den: self.den.clone(),
            };
        }
        // b = g b', d = g d': a/b + c/d = (a d' + c b') / (g b' d'), and only
        // g can share factors with the new numerator.
        let g = gcd(&self.den, &other.den);
        let b1 = self.den.exact_div(&g).expect("gcd divides");
        let d1 = other.den.exact_div(&g).expect("gcd divides");
        let num = self.num.mul(&d1).add(&other.num.mul(&b1));
        if num.is_zero() {
            return RationalCoeff::zero(self.field());
        }
        let h = gcd(&num, &g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (num.exact_div(&h).expect("gcd divides"), g.exact_div(&h).expect("gcd divides"))
        };
        Self::normalized(num, g.mul(&b1).mul(&d1))
    }

    pub fn neg(&self) -> Self {
        RationalCoeff {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RationalCoeff::zero(self.field());
        }
        if self.den.is_one() && other.den.is_one() {
            return RationalCoeff::from_poly(self.num.mul(&other.num));
        }
        let (a, d) = cancel(&self.num, &other.den);
        let (c, b) = cancel(&other.num, &self.den);
        Self::normalized(a.mul(&c), b.mul(&d))
    }

    pub fn scale(&self, c: u64) -> Self {
        if c == 0 {
            return RationalCoeff::zero(self.field());
        }
        RationalCoeff {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        Ok(RationalCoeff {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// Frobenius twist by `k`: every `(name, j)` becomes `(name, j + k)`.
    pub fn twist(&self, k: i32) -> Self {
        if k == 0 {
            return self.clone();
        }
        RationalCoeff {
            num: self.num.twist(k),
            den: self.den.twist(k),
        }
    }

    /// Replaces each `x^(k)` by `x^(q^k)`, landing in untwisted indeterminates.
    pub fn specialize(&self) -> Result<Self> {
        let fq = self.field();
        let q = fq.order();
        let mut failure = None;
        let mut map = |v: TwistedVar| -> MPoly {
            if v.twist < 0 {
                failure.get_or_insert_with(|| Error::SpecializationUndefined(v.to_string()));
                return MPoly::zero(fq);
            }
            match q.checked_pow(v.twist as u32).and_then(|e| u32::try_from(e).ok()) {
                Some(e) => MPoly::term(fq, Monomial::var(TwistedVar::new(v.name, 0), e), 1),
                None => {
                    failure.get_or_insert_with(|| Error::SpecializationOverflow(v.to_string()));
                    MPoly::zero(fq)
                }
            }
        };
        let num = self.num.substitute(&mut map);
        let den = self.den.substitute(&mut map);
        if let Some(e) = failure {
            return Err(e);
        }
        RationalCoeff::new(num, den)
    }

    /// `deg_θ(den) − deg_θ(num)` for an element of `F_q(θ)`.
    pub fn valuation_at_infinity(&self) -> Result<Valuation> {
        if self.is_zero() {
            return Ok(Valuation::Infinite);
        }
        let ok = |p: &MPoly| p.vars().iter().all(|v| v.name.is_theta() && v.twist == 0);
        if !ok(&self.num) || !ok(&self.den) {
            return Err(Error::UnsupportedValuation(crate::display::coeff_to_string(self)));
        }
        let t = TwistedVar::theta(0);
        Ok(Valuation::Finite(
            self.den.degree_in(t) as i64 - self.num.degree_in(t) as i64,
        ))
    }

    /// `v_∞` of the specialization, computed without building it. Only `θ`
    /// with nonnegative twists may occur.
    pub fn specialized_valuation(&self) -> Result<Valuation> {
        if self.is_zero() {
            return Ok(Valuation::Infinite);
        }
        let dn = specialized_degree(self, &self.num)?;
        let dd = specialized_degree(self, &self.den)?;
        match (dn, dd) {
            (Some(n), Some(d)) => Ok(Valuation::Finite(
                i64::try_from(d as i128 - n as i128)
                    .map_err(|_| Error::SpecializationOverflow(crate::display::coeff_to_string(self)))?,
            )),
            // The specialization of a nonzero generic element can vanish.
            (None, _) => Ok(Valuation::Infinite),
            (_, None) => Err(Error::DivisionByZero),
        }
    }
}

/// Degree in θ of the specialized polynomial, `None` if it specializes to 0.
fn specialized_degree(owner: &RationalCoeff, p: &MPoly) -> Result<Option<u128>> {
    let fq = p.field();
    let q = fq.order() as u128;
    let mut acc: BTreeMap<u128, u64> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut exp: u128 = 0;
        for &(v, e) in m.factors() {
            if !v.name.is_theta() {
                return Err(Error::UnsupportedValuation(crate::display::coeff_to_string(owner)));
            }
            if v.twist < 0 {
                return Err(Error::SpecializationUndefined(v.to_string()));
            }
            let w = q
                .checked_pow(v.twist as u32)
                .and_then(|w| w.checked_mul(e as u128))
                .ok_or_else(|| Error::SpecializationOverflow(v.to_string()))?;
            exp = exp
                .checked_add(w)
                .ok_or_else(|| Error::SpecializationOverflow(v.to_string()))?;
        }
        let slot = acc.entry(exp).or_insert(0);
        *slot = fq.add(*slot, *c);
    }
    Ok(acc.into_iter().rev().find(|(_, c)| *c != 0).map(|(e, _)| e))
}

/// Removes the common factor of `a` and `b`.
fn cancel(a: &MPoly, b: &MPoly) -> (MPoly, MPoly) {
    if b.is_one() {
        return (a.clone(), b.clone());
    }
    let g = gcd(a, b);
    if g.is_one() {
        (a.clone(), b.clone())
    } else {
        (
            a.exact_div(&g).expect("gcd divides"),
            b.exact_div(&g).expect("gcd divides"),
        )
    }
}
