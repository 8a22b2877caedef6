//! Sparse multivariate polynomials over `F_q` in twisted indeterminates.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use smallvec::SmallVec;

use super::fq::Fq;
use super::symbol::TwistedVar;

/// A power product, variables sorted ascending, exponents positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    degree: u32,
    factors: SmallVec<[(TwistedVar, u32); 4]>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: TwistedVar, exp: u32) -> Self {
        if exp == 0 {
            return Monomial::one();
        }
        let mut factors = SmallVec::new();
        factors.push((v, exp));
        Monomial {
            degree: exp,
            factors,
        }
    }

    pub fn from_factors(mut raw: Vec<(TwistedVar, u32)>) -> Self {
        raw.sort_by(|a, b| a.0.cmp(&b.0));
        let mut factors: SmallVec<[(TwistedVar, u32); 4]> = SmallVec::new();
        for (v, e) in raw {
            if e == 0 {
                continue;
            }
            match factors.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => factors.push((v, e)),
            }
        }
        let degree = factors.iter().map(|f| f.1).sum();
        Monomial { degree, factors }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(TwistedVar, u32)] {
        &self.factors
    }

    pub fn exponent(&self, v: TwistedVar) -> u32 {
        self.factors
            .iter()
            .find(|f| f.0 == v)
            .map(|f| f.1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut factors = SmallVec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    factors.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    factors.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    factors.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        factors.extend_from_slice(&a[i..]);
        factors.extend_from_slice(&b[j..]);
        Monomial {
            degree: self.degree + other.degree,
            factors,
        }
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.degree > self.degree {
            return None;
        }
        let mut factors = SmallVec::with_capacity(self.factors.len());
        let mut j = 0;
        for &(v, e) in self.factors.iter() {
            if j < other.factors.len() && other.factors[j].0 < v {
                return None;
            }
            if j < other.factors.len() && other.factors[j].0 == v {
                let d = other.factors[j].1;
                j += 1;
                match e.cmp(&d) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => factors.push((v, e - d)),
                }
            } else {
                factors.push((v, e));
            }
        }
        if j < other.factors.len() {
            return None;
        }
        Some(Monomial {
            degree: self.degree - other.degree,
            factors,
        })
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut factors = SmallVec::new();
        let mut j = 0;
        for &(v, e) in self.factors.iter() {
            while j < other.factors.len() && other.factors[j].0 < v {
                j += 1;
            }
            if j < other.factors.len() && other.factors[j].0 == v {
                factors.push((v, e.min(other.factors[j].1)));
            }
        }
        let degree = factors.iter().map(|f: &(TwistedVar, u32)| f.1).sum();
        Monomial { degree, factors }
    }

    pub fn twist(&self, k: i32) -> Monomial {
        Monomial {
            degree: self.degree,
            factors: self.factors.iter().map(|&(v, e)| (v.shifted(k), e)).collect(),
        }
    }

    /// Removes `v` and returns its exponent.
    fn split_off(&self, v: TwistedVar) -> (u32, Monomial) {
        let e = self.exponent(v);
        if e == 0 {
            return (0, self.clone());
        }
        let factors: SmallVec<_> = self.factors.iter().copied().filter(|f| f.0 != v).collect();
        (
            e,
            Monomial {
                degree: self.degree - e,
                factors,
            },
        )
    }
}

/// Graded lexicographic order; a variable that sorts earlier is more significant.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => {}
            o => return o,
        }
        let (a, b) = (&self.factors, &other.factors);
        let n = a.len().min(b.len());
        for i in 0..n {
            match a[i].0.cmp(&b[i].0) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match a[i].1.cmp(&b[i].1) {
                    Ordering::Equal => {}
                    o => return o,
                },
            }
        }
        a.len().cmp(&b.len()).reverse()
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Terms are kept sorted by decreasing monomial with nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MPoly {
    fq: Fq,
    terms: Vec<(Monomial, u64)>,
}

impl MPoly {
    pub fn zero(fq: Fq) -> Self {
        MPoly {
            fq,
            terms: Vec::new(),
        }
    }

    pub fn constant(fq: Fq, c: u64) -> Self {
        if c == 0 {
            return MPoly::zero(fq);
        }
        MPoly {
            fq,
            terms: vec![(Monomial::one(), c)],
        }
    }

    pub fn one(fq: Fq) -> Self {
        MPoly::constant(fq, 1)
    }

    pub fn var(fq: Fq, v: TwistedVar) -> Self {
        MPoly::term(fq, Monomial::var(v, 1), 1)
    }

    pub fn term(fq: Fq, m: Monomial, c: u64) -> Self {
        if c == 0 {
            return MPoly::zero(fq);
        }
        MPoly {
            fq,
            terms: vec![(m, c)],
        }
    }

    /// Builds a polynomial from unsorted terms, combining duplicates.
    pub fn from_terms(fq: Fq, mut raw: Vec<(Monomial, u64)>) -> Self {
        raw.sort_by(|a, b| b.0.cmp(&a.0));
        let mut terms: Vec<(Monomial, u64)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            match terms.last_mut() {
                Some(last) if last.0 == m => last.1 = fq.add(last.1, c),
                _ => terms.push((m, c)),
            }
        }
        terms.retain(|t| t.1 != 0);
        MPoly { fq, terms }
    }

    pub fn field(&self) -> Fq {
        self.fq
    }

    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1 == 1
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(m, c)] if m.is_one() => Some(*c),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, u64)> {
        self.terms.first()
    }

    pub fn leading_coefficient(&self) -> u64 {
        self.terms.first().map(|t| t.1).unwrap_or(0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn vars(&self) -> BTreeSet<TwistedVar> {
        self.terms
            .iter()
            .flat_map(|t| t.0.factors().iter().map(|f| f.0))
            .collect()
    }

    pub fn contains_var(&self, pred: impl Fn(&TwistedVar) -> bool) -> bool {
        self.terms
            .iter()
            .any(|t| t.0.factors().iter().any(|f| pred(&f.0)))
    }

    pub fn degree_in(&self, v: TwistedVar) -> u32 {
        self.terms.iter().map(|t| t.0.exponent(v)).max().unwrap_or(0)
    }

    fn merge(&self, other: &MPoly, negate: bool) -> MPoly {
        let fq = self.fq;
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (a, b) = (&self.terms, &other.terms);
        let (mut i, mut j) = (0, 0);
        let sign = |c: u64| if negate { fq.neg(c) } else { c };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    terms.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    terms.push((b[j].0.clone(), sign(b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = fq.add(a[i].1, sign(b[j].1));
                    if c != 0 {
                        terms.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend(a[i..].iter().cloned());
        terms.extend(b[j..].iter().map(|t| (t.0.clone(), sign(t.1))));
        MPoly { fq, terms }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.merge(other, true)
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            fq: self.fq,
            terms: self
                .terms
                .iter()
                .map(|t| (t.0.clone(), self.fq.neg(t.1)))
                .collect(),
        }
    }

    pub fn scale(&self, c: u64) -> MPoly {
        if c == 0 {
            return MPoly::zero(self.fq);
        }
        if c == 1 {
            return self.clone();
        }
        MPoly {
            fq: self.fq,
            terms: self
                .terms
                .iter()
                .map(|t| (t.0.clone(), self.fq.mul(t.1, c)))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: u64) -> MPoly {
        if c == 0 {
            return MPoly::zero(self.fq);
        }
        MPoly {
            fq: self.fq,
            terms: self
                .terms
                .iter()
                .map(|t| (t.0.mul(m), self.fq.mul(t.1, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero(self.fq);
        }
        if let Some(c) = self.constant_value() {
            return other.scale(c);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(c);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, self.terms[0].1);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, other.terms[0].1);
        }
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                raw.push((ma.mul(mb), self.fq.mul(*ca, *cb)));
            }
        }
        MPoly::from_terms(self.fq, raw)
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut acc = MPoly::one(self.fq);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Shifts every twist index by `k`. The monomial order is invariant under
    /// this shift, so the term order is kept as is.
    pub fn twist(&self, k: i32) -> MPoly {
        if k == 0 {
            return self.clone();
        }
        MPoly {
            fq: self.fq,
            terms: self.terms.iter().map(|t| (t.0.twist(k), t.1)).collect(),
        }
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &MPoly) -> Option<MPoly> {
        let (dm, dc) = d.leading()?;
        if let Some(c) = d.constant_value() {
            return Some(self.scale(self.fq.inv(c).ok()?));
        }
        if d.terms.len() == 1 {
            let inv = self.fq.inv(*dc).ok()?;
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                terms.push((m.div(dm)?, self.fq.mul(*c, inv)));
            }
            return Some(MPoly {
                fq: self.fq,
                terms,
            });
        }
        let inv = self.fq.inv(*dc).ok()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(dm)?;
            let qc = self.fq.mul(*rc, inv);
            rem = rem.sub(&d.mul_term(&qm, qc));
            quot.push((qm, qc));
        }
        Some(MPoly {
            fq: self.fq,
            terms: quot,
        })
    }

    /// Coefficients with respect to `v`: `self = Σ out[i] v^i`.
    pub fn to_univariate(&self, v: TwistedVar) -> Vec<MPoly> {
        let mut buckets: Vec<Vec<(Monomial, u64)>> = Vec::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            let e = e as usize;
            if buckets.len() <= e {
                buckets.resize_with(e + 1, Vec::new);
            }
            buckets[e].push((rest, *c));
        }
        buckets
            .into_iter()
            .map(|b| MPoly::from_terms(self.fq, b))
            .collect()
    }

    pub fn from_univariate(fq: Fq, v: TwistedVar, coeffs: &[MPoly]) -> MPoly {
        let mut raw = Vec::new();
        for (i, c) in coeffs.iter().enumerate() {
            let m = Monomial::var(v, i as u32);
            for (cm, cc) in &c.terms {
                raw.push((cm.mul(&m), *cc));
            }
        }
        MPoly::from_terms(fq, raw)
    }

    /// Greatest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        let mut g = first.0.clone();
        for (m, _) in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    /// Makes the leading coefficient 1.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(self.fq.inv(*c).expect("nonzero")),
        }
    }

    /// Replaces each variable via `f`, which returns a polynomial.
    pub fn substitute(&self, f: &mut impl FnMut(TwistedVar) -> MPoly) -> MPoly {
        let mut acc = MPoly::zero(self.fq);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(self.fq, *c);
            for &(v, e) in m.factors() {
                t = t.mul(&f(v).pow(e));
            }
            acc = acc.add(&t);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::symbol::Symbol;

    fn v(name: &str, k: i32) -> TwistedVar {
        TwistedVar::new(Symbol::new(name), k)
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::var(v("a", 0), 1);
        let b = Monomial::var(v("b", 0), 1);
        let a2 = Monomial::var(v("a", 0), 2);
        let ab = a.mul(&b);
        assert!(a > b);
        assert!(ab > a);
        assert!(a2 > ab);
        assert!(Monomial::var(v("a", 0), 1) > Monomial::var(v("a", 1), 1));
    }

    #[test]
    fn exact_division() {
        let fq = Fq::prime(5);
        let x = MPoly::var(fq, v("x", 0));
        let y = MPoly::var(fq, v("y", 1));
        let f = x.add(&y);
        let g = x.sub(&y);
        let prod = f.mul(&g);
        assert_eq!(prod.exact_div(&f).unwrap(), g);
        assert!(prod.exact_div(&x).is_none());
    }

    #[test]
    fn univariate_round_trip() {
        let fq = Fq::prime(3);
        let x = v("x", 0);
        let px = MPoly::var(fq, x);
        let py = MPoly::var(fq, v("y", 0));
        let f = px.pow(3).mul(&py).add(&px).add(&MPoly::constant(fq, 2));
        let coeffs = f.to_univariate(x);
        assert_eq!(coeffs.len(), 4);
        assert_eq!(MPoly::from_univariate(fq, x, &coeffs), f);
    }
}
