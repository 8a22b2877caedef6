#![allow(dead_code)]

pub mod golden;

use proptest::prelude::*;
use rand::Rng;
use tmodext::field::{MPoly, Monomial};
use tmodext::{Fq, RationalCoeff, Side, SkewMatrix, SkewPoly, TModule, TwistedVar};

pub const NAMES: [&str; 3] = ["a", "b", "theta"];

pub fn fq(p: u64) -> Fq {
    Fq::prime(p)
}

fn monomial(factors: &[(usize, i32, u32)]) -> Monomial {
    Monomial::from_factors(
        factors
            .iter()
            .map(|&(v, k, e)| {
                let var = if NAMES[v] == "theta" {
                    TwistedVar::theta(k)
                } else {
                    TwistedVar::new(tmodext::Symbol::new(NAMES[v]), k)
                };
                (var, e)
            })
            .collect(),
    )
}

fn poly_from(fq: Fq, terms: &[(u64, Vec<(usize, i32, u32)>)]) -> MPoly {
    MPoly::from_terms(fq, terms.iter().map(|(c, f)| (monomial(f), *c)).collect())
}

fn terms(p: u64, max_terms: usize) -> impl Strategy<Value = Vec<(u64, Vec<(usize, i32, u32)>)>> {
    prop::collection::vec(
        (0..p, prop::collection::vec((0..NAMES.len(), -2i32..=2, 1u32..=2), 0..=2)),
        0..=max_terms,
    )
}

/// Small rational functions in `a`, `b`, `θ` and their twists.
pub fn coeff(fq: Fq) -> impl Strategy<Value = RationalCoeff> {
    let p = fq.characteristic();
    (terms(p, 3), terms(p, 2), any::<bool>()).prop_map(move |(n, d, frac)| {
        let num = poly_from(fq, &n);
        let den = poly_from(fq, &d);
        if frac && !den.is_zero() {
            RationalCoeff::new(num, den).expect("nonzero denominator")
        } else {
            RationalCoeff::from_poly(num)
        }
    })
}

/// Polynomial coefficients only, which keeps products cheap.
pub fn poly_coeff(fq: Fq) -> impl Strategy<Value = RationalCoeff> {
    terms(fq.characteristic(), 3).prop_map(move |n| RationalCoeff::from_poly(poly_from(fq, &n)))
}

pub fn skew(fq: Fq, side: Side, max_deg: usize) -> impl Strategy<Value = SkewPoly> {
    prop::collection::vec(poly_coeff(fq), 0..=max_deg + 1)
        .prop_map(move |c| SkewPoly::from_coeffs(fq, side, c))
}

pub fn skew_rational(fq: Fq, side: Side, max_deg: usize) -> impl Strategy<Value = SkewPoly> {
    prop::collection::vec(coeff(fq), 0..=max_deg + 1)
        .prop_map(move |c| SkewPoly::from_coeffs(fq, side, c))
}

pub fn skew_matrix(fq: Fq, side: Side, rows: usize, cols: usize, max_deg: usize) -> impl Strategy<Value = SkewMatrix> {
    prop::collection::vec(skew(fq, side, max_deg), rows * cols).prop_map(move |e| {
        let rows_v: Vec<Vec<SkewPoly>> = e.chunks(cols).map(|r| r.to_vec()).collect();
        SkewMatrix::from_rows(fq, side, rows_v).expect("shape")
    })
}

// Random instances for the acceptance and structural suites, driven by a
// seeded generator so failures reproduce.

pub fn rand_const<R: Rng>(rng: &mut R, fq: Fq, nonzero: bool) -> RationalCoeff {
    let q = fq.order();
    let lo = u64::from(nonzero);
    RationalCoeff::constant(fq, rng.gen_range(lo..q))
}

/// A constant, a symbol, or a symbol plus a constant.
pub fn rand_symbolic<R: Rng>(rng: &mut R, fq: Fq, symbols: &[&str]) -> RationalCoeff {
    match rng.gen_range(0..4) {
        0 => RationalCoeff::zero(fq),
        1 => rand_const(rng, fq, true),
        _ if symbols.is_empty() => rand_const(rng, fq, true),
        2 => RationalCoeff::symbol(fq, symbols[rng.gen_range(0..symbols.len())], 0),
        _ => RationalCoeff::symbol(fq, symbols[rng.gen_range(0..symbols.len())], 0).add(&rand_const(rng, fq, true)),
    }
}

/// A random invertible constant matrix over `F_q`.
pub fn rand_invertible<R: Rng>(rng: &mut R, fq: Fq, d: usize) -> Vec<Vec<RationalCoeff>> {
    loop {
        let m: Vec<Vec<RationalCoeff>> = (0..d)
            .map(|_| (0..d).map(|_| rand_const(rng, fq, false)).collect())
            .collect();
        let k = tmodext::KMatrix::from_rows(fq, m.clone()).expect("square");
        if !k.determinant().expect("constant").is_zero() {
            return m;
        }
    }
}

/// A strictly lower triangular constant nilpotent part.
pub fn rand_nilpotent<R: Rng>(rng: &mut R, fq: Fq, d: usize, symbols: &[&str]) -> Vec<Vec<RationalCoeff>> {
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if j < i { rand_symbolic(rng, fq, symbols) } else { RationalCoeff::zero(fq) })
                .collect()
        })
        .collect()
}

/// `Φ_t = θI + N + Σ_{1≤k<deg} A_k τ^k + A τ^deg` with `A` invertible.
pub fn rand_strictly_pure<R: Rng>(rng: &mut R, fq: Fq, d: usize, deg: usize, symbols: &[&str]) -> TModule {
    let n = rand_nilpotent(rng, fq, d, symbols);
    let lead = rand_invertible(rng, fq, d);
    let rows: Vec<Vec<SkewPoly>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let mut c = vec![n[i][j].clone()];
                    if i == j {
                        c[0] = c[0].add(&RationalCoeff::theta(fq, 0));
                    }
                    for _ in 1..deg {
                        c.push(if rng.gen_bool(0.4) { rand_symbolic(rng, fq, symbols) } else { RationalCoeff::zero(fq) });
                    }
                    c.push(lead[i][j].clone());
                    SkewPoly::from_coeffs(fq, Side::Tau, c)
                })
                .collect()
        })
        .collect();
    TModule::new(SkewMatrix::from_rows(fq, Side::Tau, rows).expect("square")).expect("valid t-module")
}

/// Any t-module of degree at most `deg` with strictly lower triangular `N`.
pub fn rand_module<R: Rng>(rng: &mut R, fq: Fq, d: usize, deg: usize, symbols: &[&str]) -> TModule {
    let n = rand_nilpotent(rng, fq, d, symbols);
    let rows: Vec<Vec<SkewPoly>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let mut c = vec![n[i][j].clone()];
                    if i == j {
                        c[0] = c[0].add(&RationalCoeff::theta(fq, 0));
                    }
                    for _ in 1..=deg {
                        c.push(if rng.gen_bool(0.5) { rand_symbolic(rng, fq, symbols) } else { RationalCoeff::zero(fq) });
                    }
                    SkewPoly::from_coeffs(fq, Side::Tau, c)
                })
                .collect()
        })
        .collect();
    TModule::new(SkewMatrix::from_rows(fq, Side::Tau, rows).expect("square")).expect("valid t-module")
}

/// `θ + Σ_{1≤i≤deg} c_i τ^i` with a nonzero constant leading coefficient.
pub fn rand_drinfeld_poly<R: Rng>(rng: &mut R, fq: Fq, deg: usize, symbols: &[&str]) -> SkewPoly {
    let mut c = vec![RationalCoeff::theta(fq, 0)];
    for _ in 1..deg {
        c.push(if rng.gen_bool(0.6) { rand_symbolic(rng, fq, symbols) } else { RationalCoeff::zero(fq) });
    }
    c.push(rand_const(rng, fq, true));
    SkewPoly::from_coeffs(fq, Side::Tau, c)
}

/// A block lower triangular module with Drinfeld diagonal entries of the
/// given degrees and random entries below the diagonal.
pub fn rand_triangular<R: Rng>(rng: &mut R, fq: Fq, degs: &[usize], below: usize, symbols: &[&str]) -> TModule {
    let d = degs.len();
    let rows: Vec<Vec<SkewPoly>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    if i == j {
                        rand_drinfeld_poly(rng, fq, degs[i], symbols)
                    } else if j < i {
                        let c: Vec<RationalCoeff> = (0..=below).map(|_| rand_symbolic(rng, fq, symbols)).collect();
                        SkewPoly::from_coeffs(fq, Side::Tau, c)
                    } else {
                        SkewPoly::zero(fq, Side::Tau)
                    }
                })
                .collect()
        })
        .collect();
    TModule::new(SkewMatrix::from_rows(fq, Side::Tau, rows).expect("square")).expect("valid t-module")
}
