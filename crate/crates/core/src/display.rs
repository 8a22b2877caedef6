//! Text and LaTeX rendering. The plain-text form is accepted back by the
//! parser.

use std::fmt;

use crate::field::{MPoly, Monomial, RationalCoeff, TwistedVar};
use crate::matrix::SkewMatrix;
use crate::skew::SkewPoly;

fn var_text(v: &TwistedVar, e: u32) -> String {
    let base = v.to_string();
    if e == 1 {
        base
    } else {
        format!("{base}^{e}")
    }
}

fn monomial_text(m: &Monomial) -> String {
    m.factors()
        .iter()
        .map(|(v, e)| var_text(v, *e))
        .collect::<Vec<_>>()
        .join("*")
}

fn join_signed(parts: Vec<String>) -> String {
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
    out
}

pub fn poly_to_string(p: &MPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let fq = p.field();
    let parts = p
        .terms()
        .iter()
        .map(|(m, c)| {
            if m.is_one() {
                return fq.format(*c);
            }
            let mono = monomial_text(m);
            match fq.signed(*c) {
                Some(1) => mono,
                Some(-1) => format!("-{mono}"),
                _ => format!("{}*{mono}", fq.format(*c)),
            }
        })
        .collect();
    join_signed(parts)
}

fn is_plain_var(p: &MPoly) -> bool {
    matches!(p.terms(), [(m, 1)] if m.factors().len() == 1 && m.factors()[0].1 == 1)
}

pub fn coeff_to_string(x: &RationalCoeff) -> String {
    let num = poly_to_string(x.numerator());
    if x.denominator().is_one() {
        return num;
    }
    let num = if x.numerator().len() == 1 { num } else { format!("({num})") };
    let den = poly_to_string(x.denominator());
    let den = if is_plain_var(x.denominator()) { den } else { format!("({den})") };
    format!("{num}/{den}")
}

pub fn skew_to_string(f: &SkewPoly) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let x = f.side().letter();
    let parts = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let s = coeff_to_string(c);
            if k == 0 {
                return s;
            }
            let power = if k == 1 { x.to_string() } else { format!("{x}^{k}") };
            if c.is_one() {
                power
            } else if c.neg().is_one() {
                format!("-{power}")
            } else if c.denominator().is_one() && c.numerator().len() > 1 {
                format!("({s})*{power}")
            } else {
                format!("{s}*{power}")
            }
        })
        .collect();
    join_signed(parts)
}

/// One row per line, columns aligned.
pub fn matrix_to_pretty(m: &SkewMatrix) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(skew_to_string).collect())
        .collect();
    let widths: Vec<usize> = (0..m.cols())
        .map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &cells {
        out.push('[');
        for (j, c) in row.iter().enumerate() {
            if j > 0 {
                out.push_str(" | ");
            }
            out.push_str(c);
            out.extend(std::iter::repeat(' ').take(widths[j] - c.chars().count()));
        }
        out.push_str("]\n");
    }
    out
}

fn var_latex(v: &TwistedVar, e: u32) -> String {
    let name = if v.name.is_theta() {
        "\\theta".to_string()
    } else {
        v.name.to_string()
    };
    let base = if v.twist == 0 {
        name
    } else {
        format!("{name}^{{({})}}", v.twist)
    };
    match (e, v.twist) {
        (1, _) => base,
        (_, 0) => format!("{base}^{{{e}}}"),
        _ => format!("{{{base}}}^{{{e}}}"),
    }
}

fn poly_latex(p: &MPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let fq = p.field();
    let parts = p
        .terms()
        .iter()
        .map(|(m, c)| {
            if m.is_one() {
                return fq.format(*c);
            }
            let mono: String = m.factors().iter().map(|(v, e)| var_latex(v, *e)).collect::<Vec<_>>().join(" ");
            match fq.signed(*c) {
                Some(1) => mono,
                Some(-1) => format!("-{mono}"),
                _ => format!("{} {mono}", fq.format(*c)),
            }
        })
        .collect();
    join_signed(parts)
}

pub fn coeff_latex(x: &RationalCoeff) -> String {
    if x.denominator().is_one() {
        poly_latex(x.numerator())
    } else {
        format!("\\frac{{{}}}{{{}}}", poly_latex(x.numerator()), poly_latex(x.denominator()))
    }
}

pub fn skew_latex(f: &SkewPoly) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let x = match f.side() {
        crate::skew::Side::Tau => "\\tau",
        crate::skew::Side::Sigma => "\\sigma",
    };
    let parts = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let s = coeff_latex(c);
            if k == 0 {
                return s;
            }
            let power = if k == 1 { x.to_string() } else { format!("{x}^{{{k}}}") };
            if c.is_one() {
                power
            } else if c.neg().is_one() {
                format!("-{power}")
            } else if c.denominator().is_one() && c.numerator().len() > 1 {
                format!("\\left({s}\\right){power}")
            } else {
                format!("{s}{power}")
            }
        })
        .collect();
    join_signed(parts)
}

/// A LaTeX array with a trailing reminder of the twist notation.
pub fn matrix_latex(m: &SkewMatrix) -> String {
    let mut out = format!("\\left(\\begin{{array}}{{{}}}\n", "c".repeat(m.cols().max(1)));
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(skew_latex).collect();
        out.push_str(&row.join(" & "));
        if i + 1 < m.rows() {
            out.push_str(" \\\\");
        }
        out.push('\n');
    }
    out.push_str("\\end{array}\\right)\n% (n) := q^{n}\n");
    out
}

impl fmt::Display for RationalCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&coeff_to_string(self))
    }
}

impl fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&skew_to_string(self))
    }
}

impl fmt::Display for SkewMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&matrix_to_pretty(self))
    }
}
