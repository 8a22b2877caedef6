//! Multivariate gcd over `F_q` by recursion on variables with a primitive
//! pseudo-remainder sequence. Inputs in this domain are small and sparse, so
//! the trivial and monomial cases are checked first.

use super::poly::MPoly;
use super::symbol::TwistedVar;

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(f: &MPoly, g: &MPoly) -> MPoly {
    let fq = f.field();
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    if f.is_constant() || g.is_constant() {
        return MPoly::one(fq);
    }
    if f == g {
        return f.monic();
    }
    if f.is_monomial() {
        return MPoly::term(fq, f.terms()[0].0.gcd(&g.monomial_content()), 1);
    }
    if g.is_monomial() {
        return MPoly::term(fq, g.terms()[0].0.gcd(&f.monomial_content()), 1);
    }
    // Pull out monomial contents so the recursion sees fewer variables.
    let mf = f.monomial_content();
    let mg = g.monomial_content();
    if !mf.is_one() || !mg.is_one() {
        let m = mf.gcd(&mg);
        let f1 = f.exact_div(&MPoly::term(fq, mf, 1)).expect("content divides");
        let g1 = g.exact_div(&MPoly::term(fq, mg, 1)).expect("content divides");
        return gcd(&f1, &g1).mul_term(&m, 1);
    }
    let fv = f.vars();
    let gv = g.vars();
    let shared: Vec<TwistedVar> = fv.intersection(&gv).copied().collect();
    if shared.is_empty() {
        return MPoly::one(fq);
    }
    // A variable present in only one side can be eliminated through the
    // content with respect to it.
    if let Some(&x) = fv.difference(&gv).next() {
        return gcd(&content(f, x), g);
    }
    if let Some(&x) = gv.difference(&fv).next() {
        return gcd(f, &content(g, x));
    }
    // Main variable: the shared one of least degree keeps remainders small.
    let x = *shared
        .iter()
        .min_by_key(|&&v| (f.degree_in(v).max(g.degree_in(v)), v))
        .expect("nonempty");
    let cf = content(f, x);
    let cg = content(g, x);
    let c = gcd(&cf, &cg);
    let pf = f.exact_div(&cf).expect("content divides");
    let pg = g.exact_div(&cg).expect("content divides");
    let (mut a, mut b) = if pf.degree_in(x) >= pg.degree_in(x) {
        (pf, pg)
    } else {
        (pg, pf)
    };
    loop {
        let r = pseudo_rem(&a, &b, x);
        if r.is_zero() {
            break;
        }
        if r.degree_in(x) == 0 {
            return c;
        }
        a = b;
        b = primitive_part(&r, x);
    }
    primitive_part(&b, x).mul(&c).monic()
}

/// Gcd of the coefficients of `f` viewed as a polynomial in `x`.
pub fn content(f: &MPoly, x: TwistedVar) -> MPoly {
    let coeffs = f.to_univariate(x);
    let mut g = MPoly::zero(f.field());
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part(f: &MPoly, x: TwistedVar) -> MPoly {
    let c = content(f, x);
    f.exact_div(&c).expect("content divides")
}

/// `lc(b)^k a mod b` with respect to `x`.
fn pseudo_rem(a: &MPoly, b: &MPoly, x: TwistedVar) -> MPoly {
    let fq = a.field();
    let bc = b.to_univariate(x);
    let db = bc.len() - 1;
    let lb = &bc[db];
    let mut r = a.to_univariate(x);
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        let shift = dr - db;
        for (i, c) in bc.iter().enumerate() {
            if !c.is_zero() {
                r[i + shift] = r[i + shift].sub(&c.mul(&lr));
            }
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    MPoly::from_univariate(fq, x, &r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::fq::Fq;
    use crate::field::symbol::Symbol;

    fn var(fq: Fq, name: &str, k: i32) -> MPoly {
        MPoly::var(fq, TwistedVar::new(Symbol::new(name), k))
    }

    #[test]
    fn recovers_common_factor() {
        let fq = Fq::prime(7);
        let x = var(fq, "x", 0);
        let y = var(fq, "y", 0);
        let z = var(fq, "z", 1);
        let common = x.mul(&y).add(&z).add(&MPoly::constant(fq, 3));
        let f = common.mul(&x.add(&y));
        let g = common.mul(&z.sub(&x)).mul(&y);
        assert_eq!(gcd(&f, &g), common.monic());
    }

    #[test]
    fn coprime_and_trivial() {
        let fq = Fq::prime(3);
        let x = var(fq, "x", 0);
        let y = var(fq, "y", 0);
        assert!(gcd(&x.add(&y), &x.sub(&y)).is_one());
        assert_eq!(gcd(&MPoly::zero(fq), &x.scale(2)), x);
        assert_eq!(gcd(&x.mul(&y).mul(&y), &y.pow(3).add(&y.mul(&x).mul(&y))), y.pow(2));
    }

    #[test]
    fn univariate_over_f2() {
        let fq = Fq::prime(2);
        let x = var(fq, "x", 0);
        let one = MPoly::one(fq);
        // (x+1)^3 and (x+1)(x^2+x+1)
        let a = x.add(&one).pow(3);
        let b = x.add(&one).mul(&x.pow(2).add(&x).add(&one));
        assert_eq!(gcd(&a, &b), x.add(&one));
    }
}
