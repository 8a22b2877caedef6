//! Splitting off the part of `Ext¹` with zero constant term.

use super::{ExtResult, Method};
use crate::error::{Error, Result};
use crate::field::RationalCoeff;
use crate::matrix::KMatrix;
use crate::tmodule::TModule;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ext0Split {
    /// Number of pairs `(i, j)` with `E_{i×j} A^{-1} N_Φ = N_Ψ E_{i×j} A^{-1}`.
    pub s: usize,
    /// Zero-based coordinates removed from `Π_t`.
    pub deleted: Vec<usize>,
    pub pi0: TModule,
}

/// Counts the pairs `(i, j)` for which `E_{i×j} A^{-1}` commutes past the
/// nilpotent parts.
pub fn pair_count(source: &TModule, target: &TModule, a_inv: &KMatrix) -> Result<usize> {
    let fq = source.field();
    let (e, d) = (target.dim(), source.dim());
    let mut s = 0;
    for i in 0..e {
        for j in 0..d {
            let mut u = KMatrix::zeros(fq, e, d);
            for k in 0..d {
                u.set(i, k, a_inv.get(j, k).clone());
            }
            if u.mul(source.nilpotent())? == target.nilpotent().mul(&u)? {
                s += 1;
            }
        }
    }
    Ok(s)
}

/// Removes the coordinates of `Π_t` spanned by the `X^0` generators whose
/// rows are `θ` on the diagonal and zero elsewhere, after checking that
/// their number equals the pair count.
pub fn split_ext0(result: &ExtResult) -> Result<Ext0Split> {
    if result.method == Method::Triangular {
        return Err(Error::Unsupported(
            "the Ext0 split needs an invertible leading matrix".into(),
        ));
    }
    let a_inv = result
        .source
        .leading_inverse()?
        .ok_or_else(|| Error::internal("leading matrix of the source is singular"))?;
    let s = pair_count(&result.source, &result.target, &a_inv)?;
    let pi = result.pi.t_matrix();
    let theta = RationalCoeff::theta(pi.field(), 0);
    let deleted: Vec<usize> = result
        .ordering
        .iter()
        .enumerate()
        .filter(|(_, g)| g.k == 0)
        .map(|(idx, _)| idx)
        .filter(|&idx| {
            (0..pi.cols()).all(|col| {
                let e = pi.get(idx, col);
                if col == idx {
                    e.as_scalar().is_some_and(|x| x == theta) && e.degree() == Some(0)
                } else {
                    e.is_zero()
                }
            })
        })
        .collect();
    if deleted.len() != s {
        return Err(Error::Ext0Inconsistent(format!(
            "the pair count gives s = {s} but {} generator rows are theta-only (positions {:?})",
            deleted.len(),
            deleted.iter().map(|i| i + 1).collect::<Vec<_>>()
        )));
    }
    let pi0 = TModule::new(pi.minor(&deleted))
        .map_err(|e| Error::internal(format!("Ext0 minor is not a t-module: {e}")))?;
    Ok(Ext0Split { s, deleted, pi0 })
}
