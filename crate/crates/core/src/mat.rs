//! Dense matrices over a computable ring.
//!
//! A `p x q` matrix denotes the morphism `D^{1xp} -> D^{1xq}` acting on row
//! vectors by right multiplication, so rows are relations and columns are
//! generators throughout.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::{Ring, RingKind};
use num_rational::BigRational;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl Mat {
    pub fn new(ring: Ring, rows: usize, cols: usize, data: Vec<Poly>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::Dim(format!(
                "entry count {} does not match {rows}x{cols}",
                data.len()
            )));
        }
        let nv = ring.nvars();
        for e in &data {
            if e.nvars() != nv {
                return Err(Error::Ring("entry has wrong variable count".into()));
            }
            if ring.kind() == RingKind::Integers && !e.is_integer() {
                return Err(Error::Ring(format!("entry `{e}` is not an integer")));
            }
        }
        Ok(Mat { ring, rows, cols, data })
    }

    pub fn zero(ring: Ring, rows: usize, cols: usize) -> Mat {
        let z = Poly::zero(ring.nvars());
        Mat { ring, rows, cols, data: vec![z; rows * cols] }
    }

    pub fn identity(ring: Ring, n: usize) -> Mat {
        let mut m = Mat::zero(ring.clone(), n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Poly::one(ring.nvars());
        }
        m
    }

    pub fn from_fn(ring: Ring, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { ring, rows, cols, data }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Poly {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mat(&self, i: usize) -> Mat {
        Mat {
            ring: self.ring.clone(),
            rows: 1,
            cols: self.cols,
            data: self.row(i).to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row(i).iter().all(|e| e.is_zero())
    }

    pub fn same_ring(&self, other: &Mat) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        self.same_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::Dim(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let nv = self.ring.nvars();
        let mut out = Mat::zero(self.ring.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul(b);
                    let cur = out.at(i, j).add(&prod);
                    *out.at_mut(i, j) = cur;
                }
            }
        }
        let _ = nv;
        Ok(out)
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.same_ring(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dim("matrix addition shape mismatch".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(Mat { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Mat {
        Mat {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &Poly) -> Mat {
        Mat {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e.mul(c)).collect(),
        }
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.ring.clone(), self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        self.same_ring(other)?;
        if self.cols != other.cols {
            return Err(Error::Dim("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat { ring: self.ring.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn hstack(&self, other: &Mat) -> Result<Mat> {
        self.same_ring(other)?;
        if self.rows != other.rows {
            return Err(Error::Dim("hstack row mismatch".into()));
        }
        let mut out = Mat::zero(self.ring.clone(), self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(i, j) = self.at(i, j).clone();
            }
            for j in 0..other.cols {
                *out.at_mut(i, self.cols + j) = other.at(i, j).clone();
            }
        }
        Ok(out)
    }

    pub fn vstack_all(ring: &Ring, cols: usize, mats: &[&Mat]) -> Mat {
        let mut out = Mat::zero(ring.clone(), 0, cols);
        for m in mats {
            out = out.vstack(m).expect("vstack_all shape");
        }
        out
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Mat {
        Mat::from_fn(
            self.ring.clone(),
            rows.len(),
            cols.len(),
            |i, j| self.at(rows.start + i, cols.start + j).clone(),
        )
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.ring.clone(), idx.len(), self.cols, |i, j| self.at(idx[i], j).clone())
    }

    pub fn drop_zero_rows(&self) -> Mat {
        let idx: Vec<usize> = (0..self.rows).filter(|&i| !self.row_is_zero(i)).collect();
        self.select_rows(&idx)
    }

    /// Block-diagonal stack of `n` copies of `self`.
    pub fn block_diagonal(mats: &[&Mat], ring: &Ring) -> Mat {
        let rows: usize = mats.iter().map(|m| m.rows).sum();
        let cols: usize = mats.iter().map(|m| m.cols).sum();
        let mut out = Mat::zero(ring.clone(), rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in mats {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    *out.at_mut(r0 + i, c0 + j) = m.at(i, j).clone();
                }
            }
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    /// Kronecker product; used for functor actions on free modules.
    pub fn kronecker(&self, other: &Mat) -> Mat {
        Mat::from_fn(
            self.ring.clone(),
            self.rows * other.rows,
            self.cols * other.cols,
            |i, j| {
                let (i1, i2) = (i / other.rows, i % other.rows);
                let (j1, j2) = (j / other.cols, j % other.cols);
                self.at(i1, j1).mul(other.at(i2, j2))
            },
        )
    }

    /// Rank over the fraction field, by fraction-free (Bareiss) elimination.
    pub fn rank_over_fraction_field(&self) -> usize {
        let mut m = self.clone();
        let nv = self.ring.nvars();
        let mut rank = 0;
        let mut prev_pivot = Poly::one(nv);
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            // find pivot
            let piv = (row..m.rows).find(|&i| !m.at(i, col).is_zero());
            let piv = match piv {
                Some(p) => p,
                None => continue,
            };
            if piv != row {
                for j in 0..m.cols {
                    let a = m.at(row, j).clone();
                    let b = m.at(piv, j).clone();
                    *m.at_mut(row, j) = b;
                    *m.at_mut(piv, j) = a;
                }
            }
            let pivot = m.at(row, col).clone();
            for i in row + 1..m.rows {
                let factor = m.at(i, col).clone();
                for j in 0..m.cols {
                    // Bareiss step: (pivot*a_ij - factor*a_rj) / prev_pivot
                    let v = pivot
                        .mul(m.at(i, j))
                        .sub(&factor.mul(m.at(row, j)));
                    let v = v
                        .div_exact(&prev_pivot)
                        .expect("Bareiss division is exact");
                    *m.at_mut(i, j) = v;
                }
            }
            prev_pivot = pivot;
            row += 1;
            rank += 1;
        }
        rank
    }

    /// Determinant of a square matrix by fraction-free elimination.
    pub fn determinant(&self) -> Poly {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let nv = self.ring.nvars();
        let n = self.rows;
        if n == 0 {
            return Poly::one(nv);
        }
        let mut m = self.clone();
        let mut prev_pivot = Poly::one(nv);
        let mut sign = false;
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                let swap = ((k + 1)..n).find(|&i| !m.at(i, k).is_zero());
                match swap {
                    None => return Poly::zero(nv),
                    Some(s) => {
                        for j in 0..n {
                            let a = m.at(k, j).clone();
                            let b = m.at(s, j).clone();
                            *m.at_mut(k, j) = b;
                            *m.at_mut(s, j) = a;
                        }
                        sign = !sign;
                    }
                }
            }
            let pivot = m.at(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = pivot.mul(m.at(i, j)).sub(&m.at(i, k).mul(m.at(k, j)));
                    let v = v.div_exact(&prev_pivot).expect("Bareiss division is exact");
                    *m.at_mut(i, j) = v;
                }
                *m.at_mut(i, k) = Poly::zero(nv);
            }
            prev_pivot = pivot;
        }
        let det = m.at(n - 1, n - 1).clone();
        if sign {
            det.neg()
        } else {
            det
        }
    }

    /// Evaluate all entries at a rational point (sanity checks only).
    pub fn eval(&self, vals: &[BigRational]) -> Vec<Vec<BigRational>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j).eval(vals)).collect())
            .collect()
    }

    /// Entries rendered with the ring's variable names, row-major.
    pub fn entry_strings(&self) -> Vec<String> {
        self.data.iter().map(|e| e.display(self.ring.vars())).collect()
    }

    /// The paper's comma-matrix display: one row per line, entries padded.
    pub fn display_comma(&self) -> String {
        if self.rows == 0 || self.cols == 0 {
            return format!("(an empty {} x {} matrix)", self.rows, self.cols);
        }
        let strs = self.entry_strings();
        let mut widths = vec![0usize; self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let mut w = strs[i * self.cols + j].len();
                if j + 1 < self.cols || i + 1 < self.rows {
                    w += 1; // trailing comma
                }
                widths[j] = widths[j].max(w);
            }
        }
        let mut out = String::new();
        for i in 0..self.rows {
            let mut line = String::new();
            for j in 0..self.cols {
                let mut cell = strs[i * self.cols + j].clone();
                if j + 1 < self.cols || i + 1 < self.rows {
                    cell.push(',');
                }
                if j + 1 < self.cols {
                    line.push_str(&format!("{:width$}", cell, width = widths[j]));
                } else {
                    line.push_str(&cell);
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_comma())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_matrix;

    #[test]
    fn multiply_and_stack() {
        let r = Ring::parse("QQ[x]").unwrap();
        let a = parse_matrix("[ x, 1, 0, x ]", 2, 2, &r).unwrap();
        let b = parse_matrix("[ 1, 0, 0, 1 ]", 2, 2, &r).unwrap();
        assert_eq!(a.mul(&b).unwrap(), a);
        let v = a.vstack(&b).unwrap();
        assert_eq!(v.rows(), 4);
        assert!(Mat::zero(r, 3, 0).is_zero());
    }

    #[test]
    fn bareiss_rank_and_det() {
        let r = Ring::parse("QQ[x,y]").unwrap();
        let a = parse_matrix("[ x, y, x^2, x*y ]", 2, 2, &r).unwrap();
        assert_eq!(a.rank_over_fraction_field(), 1);
        assert!(a.determinant().is_zero());
        let b = parse_matrix("[ x, y, y, x ]", 2, 2, &r).unwrap();
        assert_eq!(b.rank_over_fraction_field(), 2);
        let d = b.determinant();
        let expect = parse_matrix("[ x^2-y^2 ]", 1, 1, &r).unwrap();
        assert_eq!(&d, expect.at(0, 0));
    }
}
