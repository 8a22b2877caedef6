//! The constant field `F_q`, `q = p^e`.
//!
//! Elements are packed into a `u64` as base-`p` digits of their coordinates in
//! `F_p[x]/(f)`. For `e = 1` that is simply the residue mod `p`. A field
//! descriptor is interned once and handed around as a `Copy` handle so every
//! coefficient can carry its field without reference counting.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// User-facing description of `F_q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldParams {
    pub p: u64,
    #[serde(default = "one_u32")]
    pub e: u32,
    /// Coefficients (constant term first) of an irreducible polynomial of
    /// degree `e` over `F_p`. Required when `e > 1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
    /// Name under which the class of `x` in `F_p[x]/(f)` may appear in
    /// expressions.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
}

fn one_u32() -> u32 {
    1
}

impl FieldParams {
    pub fn prime(p: u64) -> Self {
        FieldParams {
            p,
            e: 1,
            modulus: None,
            generator: None,
        }
    }

    pub fn extension(p: u64, modulus: Vec<u64>, generator: Option<String>) -> Self {
        FieldParams {
            p,
            e: modulus.len().saturating_sub(1) as u32,
            modulus: Some(modulus),
            generator,
        }
    }
}

#[derive(Debug)]
struct FqData {
    params: FieldParams,
    p: u64,
    e: u32,
    q: u64,
    /// Monic modulus, constant term first, length `e + 1`.
    modulus: Vec<u64>,
    generator: Option<&'static str>,
}

/// Handle to an interned finite field.
#[derive(Clone, Copy)]
pub struct Fq(&'static FqData);

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}

impl Eq for Fq {}

impl std::hash::Hash for Fq {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (self.0 as *const FqData as usize).hash(state)
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.e == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}", self.0.p, self.0.e)
        }
    }
}

fn registry() -> &'static Mutex<HashMap<FieldParams, &'static FqData>> {
    static REGISTRY: OnceLock<Mutex<HashMap<FieldParams, &'static FqData>>> = OnceLock::new();
    REGISTRY.get_or_init(|| Mutex::new(HashMap::new()))
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Fq {
    /// Validates `params` and returns the interned field.
    pub fn new(params: &FieldParams) -> Result<Fq> {
        let p = params.p;
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("p = {p} is not prime")));
        }
        if params.e == 0 {
            return Err(Error::InvalidField("e must be at least 1".into()));
        }
        let q = p
            .checked_pow(params.e)
            .filter(|&q| q < (1 << 31))
            .ok_or_else(|| Error::InvalidField(format!("q = {p}^{} is too large", params.e)))?;
        let modulus = if params.e == 1 {
            vec![0, 1]
        } else {
            let raw = params.modulus.as_ref().ok_or_else(|| {
                Error::InvalidField(format!("e = {} requires an explicit modulus", params.e))
            })?;
            let mut m: Vec<u64> = raw.iter().map(|c| c % p).collect();
            while m.last() == Some(&0) {
                m.pop();
            }
            if m.len() != params.e as usize + 1 {
                return Err(Error::InvalidField(format!(
                    "modulus has degree {} but e = {}",
                    m.len() as i64 - 1,
                    params.e
                )));
            }
            let lead_inv = pow_mod(m[m.len() - 1], p - 2, p);
            for c in m.iter_mut() {
                *c = *c * lead_inv % p;
            }
            if !upoly::is_irreducible(&m, p) {
                return Err(Error::InvalidField(format!(
                    "modulus {:?} is reducible over F_{p}",
                    raw
                )));
            }
            m
        };
        if let Some(g) = &params.generator {
            if params.e == 1 {
                return Err(Error::InvalidField("a generator name needs e > 1".into()));
            }
            crate::parse::check_identifier(g)?;
        }
        let mut key = params.clone();
        if key.e == 1 {
            key.modulus = None;
            key.generator = None;
        }
        let mut reg = registry().lock().expect("field registry poisoned");
        if let Some(data) = reg.get(&key) {
            return Ok(Fq(data));
        }
        let generator = key
            .generator
            .as_ref()
            .map(|g| &*Box::leak(g.clone().into_boxed_str()));
        let data: &'static FqData = Box::leak(Box::new(FqData {
            params: key.clone(),
            p,
            e: key.e,
            q,
            modulus,
            generator,
        }));
        reg.insert(key, data);
        Ok(Fq(data))
    }

    /// Shorthand for the prime field `F_p`; panics if `p` is not prime.
    pub fn prime(p: u64) -> Fq {
        Fq::new(&FieldParams::prime(p)).expect("not a prime")
    }

    pub fn params(&self) -> &FieldParams {
        &self.0.params
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.e
    }

    pub fn order(&self) -> u64 {
        self.0.q
    }

    pub fn generator_name(&self) -> Option<&'static str> {
        self.0.generator
    }

    /// The class of `x` in `F_p[x]/(f)`; `None` for prime fields.
    pub fn generator(&self) -> Option<u64> {
        (self.0.e > 1).then_some(self.0.p)
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.0.p as i64) as u64
    }

    pub fn is_prime_field_element(&self, a: u64) -> bool {
        a < self.0.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        if self.0.e == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        let p = self.0.p;
        if self.0.e == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        if self.0.e == 1 {
            return a * b % p;
        }
        let e = self.0.e as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let m = &self.0.modulus;
        for k in (e..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (t, &mt) in m.iter().take(e).enumerate() {
                prod[k - e + t] = (prod[k - e + t] + (p - c) * mt) % p;
            }
        }
        self.pack(&prod[..e])
    }

    pub fn pow(&self, a: u64, mut exp: u64) -> u64 {
        let mut base = a;
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        if self.0.e == 1 {
            return Ok(pow_mod(a, self.0.p - 2, self.0.p));
        }
        Ok(self.pow(a, self.0.q - 2))
    }

    /// Coordinates of `a` in the power basis, constant first.
    pub fn digits(&self, a: u64) -> Vec<u64> {
        let p = self.0.p;
        let mut a = a;
        (0..self.0.e)
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    pub fn pack(&self, digits: &[u64]) -> u64 {
        let p = self.0.p;
        digits.iter().rev().fold(0, |acc, &d| acc * p + d % p)
    }

    /// Signed representative of a prime-field element (`4 ↦ -1` in `F_5`).
    pub fn signed(&self, a: u64) -> Option<i64> {
        if a >= self.0.p {
            return None;
        }
        let p = self.0.p as i64;
        let a = a as i64;
        Some(if a > p / 2 { a - p } else { a })
    }

    /// Plain-text rendering used by the expression grammar.
    pub fn format(&self, a: u64) -> String {
        if let Some(s) = self.signed(a) {
            return s.to_string();
        }
        let g = self.0.generator.unwrap_or("g");
        let digits = self.digits(a);
        let mut parts = Vec::new();
        for (i, &d) in digits.iter().enumerate().rev() {
            if d == 0 {
                continue;
            }
            let coeff = self.signed(d).unwrap();
            let mono = match i {
                0 => String::new(),
                1 => g.to_string(),
                _ => format!("{g}^{i}"),
            };
            parts.push(match (i, coeff) {
                (0, c) => c.to_string(),
                (_, 1) => mono,
                (_, -1) => format!("-{mono}"),
                (_, c) => format!("{c}*{mono}"),
            });
        }
        let mut out = String::new();
        for (k, part) in parts.iter().enumerate() {
            if k == 0 {
                out.push_str(part);
            } else if let Some(rest) = part.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(part);
            }
        }
        format!("({out})")
    }
}

fn pow_mod(a: u64, mut exp: u64, p: u64) -> u64 {
    let mut base = a % p;
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Dense univariate polynomials over `F_p`, only what the irreducibility
/// test of the modulus needs.
mod upoly {
    use super::pow_mod;

    fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let inv = pow_mod(m[dm], p - 2, p);
        while r.len() > dm {
            let k = r.len() - 1;
            let c = r[k] * inv % p;
            for (t, &mt) in m.iter().enumerate() {
                let idx = k - dm + t;
                r[idx] = (r[idx] + (p - c) * mt % p) % p;
            }
            r = trim(r);
        }
        r
    }

    fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        rem(&prod, m, p)
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Ben-Or: `f` of degree `e` is irreducible iff
    /// `gcd(x^{p^i} - x, f) = 1` for `1 ≤ i ≤ e/2`.
    pub(super) fn is_irreducible(f: &[u64], p: u64) -> bool {
        let e = f.len() - 1;
        if e == 1 {
            return true;
        }
        let x = vec![0, 1];
        let mut power = rem(&x, f, p);
        for _ in 1..=e / 2 {
            let mut acc = vec![1u64];
            let mut base = power.clone();
            let mut exp = p;
            while exp > 0 {
                if exp & 1 == 1 {
                    acc = mulmod(&acc, &base, f, p);
                }
                base = mulmod(&base, &base, f, p);
                exp >>= 1;
            }
            power = acc;
            let mut diff = power.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            let g = gcd(f, &diff, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}
