//! Matrices over `K` and over the skew rings.

use crate::error::{Error, Result};
use crate::field::{Fq, RationalCoeff};
use crate::skew::{Side, SkewPoly};

/// A dense matrix over `K`, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct KMatrix {
    fq: Fq,
    rows: usize,
    cols: usize,
    data: Vec<RationalCoeff>,
}

impl KMatrix {
    pub fn zeros(fq: Fq, rows: usize, cols: usize) -> Self {
        KMatrix {
            fq,
            rows,
            cols,
            data: vec![RationalCoeff::zero(fq); rows * cols],
        }
    }

    pub fn identity(fq: Fq, n: usize) -> Self {
        let mut m = KMatrix::zeros(fq, n, n);
        for i in 0..n {
            m.set(i, i, RationalCoeff::one(fq));
        }
        m
    }

    pub fn from_rows(fq: Fq, rows: Vec<Vec<RationalCoeff>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(KMatrix {
            fq,
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn field(&self) -> Fq {
        self.fq
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalCoeff {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RationalCoeff) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &KMatrix) -> Result<KMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = KMatrix::zeros(self.fq, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &KMatrix) -> Result<KMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix difference".into()));
        }
        Ok(KMatrix {
            fq: self.fq,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    pub fn transpose(&self) -> KMatrix {
        let mut out = KMatrix::zeros(self.fq, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn twist(&self, k: i32) -> KMatrix {
        KMatrix {
            fq: self.fq,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.twist(k)).collect(),
        }
    }

    pub fn pow(&self, e: usize) -> Result<KMatrix> {
        let mut acc = KMatrix::identity(self.fq, self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Gauss-Jordan inverse, `None` when singular.
    pub fn inverse(&self) -> Result<Option<KMatrix>> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = KMatrix::identity(self.fq, n);
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return Ok(None);
            };
            if piv != col {
                a.swap_rows(piv, col);
                inv.swap_rows(piv, col);
            }
            let p = a.get(col, col).inv()?;
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                a.axpy_row(r, col, &f);
                inv.axpy_row(r, col, &f);
            }
        }
        Ok(Some(inv))
    }

    pub fn determinant(&self) -> Result<RationalCoeff> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = RationalCoeff::one(self.fq);
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return Ok(RationalCoeff::zero(self.fq));
            };
            if piv != col {
                a.swap_rows(piv, col);
                det = det.neg();
            }
            let p = a.get(col, col).clone();
            det = det.mul(&p);
            let pinv = p.inv()?;
            for r in col + 1..n {
                let f = a.get(r, col).mul(&pinv);
                if !f.is_zero() {
                    a.axpy_row(r, col, &f);
                }
            }
        }
        Ok(det)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, f: &RationalCoeff) {
        for j in 0..self.cols {
            let v = self.get(r, j).mul(f);
            self.set(r, j, v);
        }
    }

    /// `row[r] -= f · row[src]`.
    fn axpy_row(&mut self, r: usize, src: usize, f: &RationalCoeff) {
        for j in 0..self.cols {
            let s = self.get(src, j);
            if s.is_zero() {
                continue;
            }
            let v = self.get(r, j).sub(&f.mul(s));
            self.set(r, j, v);
        }
    }
}

/// A matrix whose entries live in one skew ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SkewMatrix {
    side: Side,
    fq: Fq,
    rows: usize,
    cols: usize,
    entries: Vec<SkewPoly>,
}

impl SkewMatrix {
    pub fn zeros(fq: Fq, side: Side, rows: usize, cols: usize) -> Self {
        SkewMatrix {
            side,
            fq,
            rows,
            cols,
            entries: vec![SkewPoly::zero(fq, side); rows * cols],
        }
    }

    pub fn identity(fq: Fq, side: Side, n: usize) -> Self {
        let mut m = SkewMatrix::zeros(fq, side, n, n);
        for i in 0..n {
            m.set(i, i, SkewPoly::one(fq, side));
        }
        m
    }

    /// `E_{i×j} p`: zero except `p` at `(i, j)`.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize, p: SkewPoly) -> Self {
        let mut m = SkewMatrix::zeros(p.field(), p.side(), rows, cols);
        m.set(i, j, p);
        m
    }

    pub fn from_rows(fq: Fq, side: Side, rows: Vec<Vec<SkewPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let entries: Vec<SkewPoly> = rows.into_iter().flatten().collect();
        if entries.iter().any(|e| e.side() != side) {
            return Err(Error::SideMismatch);
        }
        if entries.iter().any(|e| e.field() != fq) {
            return Err(Error::FieldMismatch);
        }
        Ok(SkewMatrix {
            side,
            fq,
            rows: r,
            cols: c,
            entries,
        })
    }

    /// Embeds a matrix over `K` as constant polynomials.
    pub fn from_scalars(m: &KMatrix, side: Side) -> Self {
        SkewMatrix {
            side,
            fq: m.field(),
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows() * m.cols())
                .map(|k| SkewPoly::constant(m.get(k / m.cols(), k % m.cols()).clone(), side))
                .collect(),
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn field(&self) -> Fq {
        self.fq
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &SkewPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: SkewPoly) {
        debug_assert_eq!(p.side(), self.side);
        self.entries[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[SkewPoly] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[SkewPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Largest entry degree; `None` when every entry is zero.
    pub fn degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(|e| e.degree()).max()
    }

    pub fn coefficient_matrix(&self, n: usize) -> KMatrix {
        let mut out = KMatrix::zeros(self.fq, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if let Some(c) = self.get(i, j).coefficient_ref(n) {
                    out.set(i, j, c.clone());
                }
            }
        }
        out
    }

    pub fn constant_term(&self) -> KMatrix {
        self.coefficient_matrix(0)
    }

    fn check(&self, other: &SkewMatrix) -> Result<()> {
        if self.side != other.side {
            return Err(Error::SideMismatch);
        }
        if self.fq != other.fq {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// Matrix product over the skew ring.
    pub fn mul(&self, other: &SkewMatrix) -> Result<SkewMatrix> {
        self.check(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = SkewMatrix::zeros(self.fq, self.side, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = SkewPoly::zero(self.fq, self.side);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add_unchecked(&a.mul_unchecked(b));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    fn zip(&self, other: &SkewMatrix, f: impl Fn(&SkewPoly, &SkewPoly) -> SkewPoly) -> Result<SkewMatrix> {
        self.check(other)?;
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(SkewMatrix {
            side: self.side,
            fq: self.fq,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &SkewMatrix) -> Result<SkewMatrix> {
        self.zip(other, |a, b| a.add_unchecked(b))
    }

    pub fn sub(&self, other: &SkewMatrix) -> Result<SkewMatrix> {
        self.zip(other, |a, b| a.sub_unchecked(b))
    }

    pub fn neg(&self) -> SkewMatrix {
        self.map(|e| e.neg())
    }

    pub fn map(&self, f: impl Fn(&SkewPoly) -> SkewPoly) -> SkewMatrix {
        let entries: Vec<SkewPoly> = self.entries.iter().map(f).collect();
        let side = entries.first().map(|e| e.side()).unwrap_or(self.side);
        SkewMatrix {
            side,
            fq: self.fq,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Every entry multiplied on the left by `p`.
    pub fn left_mul_poly(&self, p: &SkewPoly) -> Result<SkewMatrix> {
        if p.side() != self.side {
            return Err(Error::SideMismatch);
        }
        Ok(self.map(|e| p.mul_unchecked(e)))
    }

    pub fn transpose(&self) -> SkewMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        SkewMatrix {
            side: self.side,
            fq: self.fq,
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Entrywise adjoint followed by transposition.
    pub fn adjoint(&self) -> SkewMatrix {
        let mut m = self.map(|e| e.adjoint()).transpose();
        m.side = self.side.other();
        m
    }

    /// Entrywise `τ ↔ σ` relabelling with negated twists.
    pub fn mirror(&self) -> SkewMatrix {
        let mut m = self.map(|e| e.mirror());
        m.side = self.side.other();
        m
    }

    pub fn pow(&self, e: usize) -> Result<SkewMatrix> {
        let mut acc = SkewMatrix::identity(self.fq, self.side, self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Removes the listed rows and columns (sorted ascending).
    pub fn minor(&self, remove: &[usize]) -> SkewMatrix {
        let keep_r: Vec<usize> = (0..self.rows).filter(|i| !remove.contains(i)).collect();
        let keep_c: Vec<usize> = (0..self.cols).filter(|i| !remove.contains(i)).collect();
        let mut entries = Vec::with_capacity(keep_r.len() * keep_c.len());
        for &i in &keep_r {
            for &j in &keep_c {
                entries.push(self.get(i, j).clone());
            }
        }
        SkewMatrix {
            side: self.side,
            fq: self.fq,
            rows: keep_r.len(),
            cols: keep_c.len(),
            entries,
        }
    }

    /// Places blocks `[[a, 0], [c, d]]`.
    pub fn block_lower(a: &SkewMatrix, c: &SkewMatrix, d: &SkewMatrix) -> Result<SkewMatrix> {
        if c.rows != d.rows || c.cols != a.cols {
            return Err(Error::DimensionMismatch(format!(
                "off-diagonal block is {}x{}, expected {}x{}",
                c.rows, c.cols, d.rows, a.cols
            )));
        }
        a.check(c)?;
        a.check(d)?;
        let n = a.rows + d.rows;
        let m = a.cols + d.cols;
        let mut out = SkewMatrix::zeros(a.fq, a.side, n, m);
        for i in 0..a.rows {
            for j in 0..a.cols {
                out.set(i, j, a.get(i, j).clone());
            }
        }
        for i in 0..c.rows {
            for j in 0..c.cols {
                out.set(a.rows + i, j, c.get(i, j).clone());
            }
            for j in 0..d.cols {
                out.set(a.rows + i, a.cols + j, d.get(i, j).clone());
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_swap() {
        let fq = Fq::prime(3);
        let o = RationalCoeff::one(fq);
        let z = RationalCoeff::zero(fq);
        let m = KMatrix::from_rows(fq, vec![vec![z.clone(), o.clone()], vec![o.clone(), z.clone()]]).unwrap();
        assert_eq!(m.inverse().unwrap().unwrap(), m);
        assert_eq!(m.determinant().unwrap(), o.neg());
        let s = KMatrix::from_rows(fq, vec![vec![o.clone(), z.clone()], vec![z.clone(), z]]).unwrap();
        assert!(s.inverse().unwrap().is_none());
    }

    #[test]
    fn symbolic_inverse() {
        let fq = Fq::prime(5);
        let a = RationalCoeff::symbol(fq, "a", 0);
        let b = RationalCoeff::symbol(fq, "b", 1);
        let o = RationalCoeff::one(fq);
        let m = KMatrix::from_rows(fq, vec![vec![a.clone(), o.clone()], vec![o.clone(), b]]).unwrap();
        let inv = m.inverse().unwrap().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), KMatrix::identity(fq, 2));
    }
}
