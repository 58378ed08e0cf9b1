//! Exact Gaussian elimination over the rationals: reduced row echelon form
//! with transformation tracking for witnesses and syzygies.

use crate::mat::Mat;
use crate::poly::Poly;
use crate::ring::Ring;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn to_q(m: &Mat) -> Vec<Vec<BigRational>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| m.at(i, j).as_constant().expect("rational entry"))
                .collect()
        })
        .collect()
}

fn from_q(ring: &Ring, rows: &[Vec<BigRational>], cols: usize) -> Mat {
    let data: Vec<Poly> = rows
        .iter()
        .flat_map(|r| r.iter().map(|c| Poly::constant(0, c.clone())))
        .collect();
    Mat::new(ring.clone(), rows.len(), cols, data).unwrap()
}

pub(crate) struct Rref {
    ring: Ring,
    cols: usize,
    arows: usize,
    /// nonzero RREF rows with their pivot columns, pivots ascending
    echelon: Vec<(usize, Vec<BigRational>)>,
    /// transform rows: `basis = transform * A`
    transform: Vec<Vec<BigRational>>,
    pub(crate) basis: Mat,
    pub(crate) syzygies: Mat,
}

impl Rref {
    pub(crate) fn new(a: &Mat) -> Rref {
        let ring = a.ring().clone();
        let (p, q) = (a.rows(), a.cols());
        let mut w = to_q(a);
        let mut u: Vec<Vec<BigRational>> = (0..p)
            .map(|i| {
                (0..p)
                    .map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let mut row = 0;
        let mut pivots: Vec<usize> = Vec::new();
        for col in 0..q {
            let piv = (row..p).find(|&i| !w[i][col].is_zero());
            let piv = match piv {
                Some(x) => x,
                None => continue,
            };
            w.swap(row, piv);
            u.swap(row, piv);
            let inv = BigRational::one() / &w[row][col];
            for x in w[row].iter_mut() {
                *x *= &inv;
            }
            for x in u[row].iter_mut() {
                *x *= &inv;
            }
            for i in 0..p {
                if i != row && !w[i][col].is_zero() {
                    let f = w[i][col].clone();
                    for j in 0..q {
                        let t = &f * &w[row][j];
                        w[i][j] -= t;
                    }
                    for j in 0..p {
                        let t = &f * &u[row][j];
                        u[i][j] -= t;
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == p {
                break;
            }
        }
        let echelon: Vec<(usize, Vec<BigRational>)> = pivots
            .iter()
            .copied()
            .zip(w[..row].iter().cloned())
            .collect();
        let transform = u[..row].to_vec();
        let basis = from_q(&ring, &w[..row], q);
        let syzygies = from_q(&ring, &u[row..], p);
        Rref { ring, cols: q, arows: p, echelon, transform, basis, syzygies }
    }

    fn nf_row(&self, row: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut v = row.to_vec();
        let mut coeffs = vec![BigRational::zero(); self.echelon.len()];
        for (k, (piv, erow)) in self.echelon.iter().enumerate() {
            if v[*piv].is_zero() {
                continue;
            }
            let f = v[*piv].clone();
            for j in 0..self.cols {
                let t = &f * &erow[j];
                v[j] -= t;
            }
            coeffs[k] = f;
        }
        (v, coeffs)
    }

    pub(crate) fn nf_mat(&self, b: &Mat) -> Mat {
        let rows: Vec<Vec<BigRational>> = to_q(b)
            .iter()
            .map(|r| self.nf_row(r).0)
            .collect();
        from_q(&self.ring, &rows, b.cols())
    }

    pub(crate) fn solve_row(&self, row: &[BigRational]) -> Option<Vec<BigRational>> {
        let (nf, coeffs) = self.nf_row(row);
        if nf.iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut x = vec![BigRational::zero(); self.arows];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..self.arows {
                let t = c * &self.transform[k][j];
                x[j] += t;
            }
        }
        Some(x)
    }

    pub(crate) fn solve_mat(&self, b: &Mat) -> Option<Mat> {
        let mut rows = Vec::with_capacity(b.rows());
        for r in to_q(b) {
            rows.push(self.solve_row(&r)?);
        }
        Some(from_q(&self.ring, &rows, self.arows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_matrix;

    #[test]
    fn rref_basics() {
        let r = Ring::rationals();
        let a = parse_matrix("[ 2, 4, 1, 2 ]", 2, 2, &r).unwrap();
        let d = Rref::new(&a);
        let expect = parse_matrix("[ 1, 2 ]", 1, 2, &r).unwrap();
        assert_eq!(d.basis, expect);
        assert_eq!(d.syzygies.rows(), 1);
        assert!(d.syzygies.mul(&a).unwrap().is_zero());
    }
}
