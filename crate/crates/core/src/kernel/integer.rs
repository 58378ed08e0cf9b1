//! Row Hermite normal form over the integers with transformation tracking,
//! plus Smith normal form (used by tests as an independent homology oracle).

use crate::mat::Mat;
use crate::poly::Poly;
use crate::ring::Ring;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn to_z(m: &Mat) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let c = m.at(i, j).as_constant().expect("integer entry");
                    assert!(c.is_integer());
                    c.to_integer()
                })
                .collect()
        })
        .collect()
}

fn from_z(ring: &Ring, rows: &[Vec<BigInt>], cols: usize) -> Mat {
    let data: Vec<Poly> = rows
        .iter()
        .flat_map(|r| r.iter().map(|c| Poly::constant(0, BigRational::from(c.clone()))))
        .collect();
    Mat::new(ring.clone(), rows.len(), cols, data).unwrap()
}

pub(crate) struct Hnf {
    ring: Ring,
    cols: usize,
    arows: usize,
    /// nonzero HNF rows with their pivot columns, pivots ascending
    echelon: Vec<(usize, Vec<BigInt>)>,
    transform: Vec<Vec<BigInt>>,
    pub(crate) basis: Mat,
    pub(crate) syzygies: Mat,
}

impl Hnf {
    pub(crate) fn new(a: &Mat) -> Hnf {
        let ring = a.ring().clone();
        let (p, q) = (a.rows(), a.cols());
        let mut w = to_z(a);
        let mut u: Vec<Vec<BigInt>> = (0..p)
            .map(|i| {
                (0..p)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        let mut row = 0;
        let mut pivots = Vec::new();
        for col in 0..q {
            loop {
                // smallest nonzero |entry| at or below `row`
                let mut best: Option<usize> = None;
                for i in row..p {
                    if w[i][col].is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some(i),
                        Some(b) => {
                            if w[i][col].abs() < w[b][col].abs() {
                                best = Some(i);
                            }
                        }
                    }
                }
                let b = match best {
                    None => break,
                    Some(b) => b,
                };
                w.swap(row, b);
                u.swap(row, b);
                let mut again = false;
                for i in row + 1..p {
                    if w[i][col].is_zero() {
                        continue;
                    }
                    let qq = w[i][col].div_floor(&w[row][col]);
                    for j in 0..q {
                        let t = &qq * &w[row][j];
                        w[i][j] -= t;
                    }
                    for j in 0..p {
                        let t = &qq * &u[row][j];
                        u[i][j] -= t;
                    }
                    if !w[i][col].is_zero() {
                        again = true;
                    }
                }
                if !again {
                    break;
                }
            }
            if w[row..p].iter().all(|r| r[col].is_zero()) {
                continue;
            }
            // positive pivot
            if w[row][col].is_negative() {
                for x in w[row].iter_mut() {
                    *x = -x.clone();
                }
                for x in u[row].iter_mut() {
                    *x = -x.clone();
                }
            }
            // reduce entries above into [0, pivot)
            for i in 0..row {
                let qq = w[i][col].div_floor(&w[row][col]);
                if qq.is_zero() {
                    continue;
                }
                for j in 0..q {
                    let t = &qq * &w[row][j];
                    w[i][j] -= t;
                }
                for j in 0..p {
                    let t = &qq * &u[row][j];
                    u[i][j] -= t;
                }
            }
            pivots.push(col);
            row += 1;
            if row == p {
                break;
            }
        }
        let echelon: Vec<(usize, Vec<BigInt>)> = pivots
            .iter()
            .copied()
            .zip(w[..row].iter().cloned())
            .collect();
        let transform = u[..row].to_vec();
        let basis = from_z(&ring, &w[..row], q);
        let syzygies = from_z(&ring, &u[row..], p);
        Hnf { ring, cols: q, arows: p, echelon, transform, basis, syzygies }
    }

    fn nf_row(&self, row: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        let mut v = row.to_vec();
        let mut coeffs = vec![BigInt::zero(); self.echelon.len()];
        for (k, (piv, erow)) in self.echelon.iter().enumerate() {
            if v[*piv].is_zero() {
                continue;
            }
            let qq = v[*piv].div_floor(&erow[*piv]);
            if qq.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                let t = &qq * &erow[j];
                v[j] -= t;
            }
            coeffs[k] = qq;
        }
        (v, coeffs)
    }

    pub(crate) fn nf_mat(&self, b: &Mat) -> Mat {
        let rows: Vec<Vec<BigInt>> = to_z(b).iter().map(|r| self.nf_row(r).0).collect();
        from_z(&self.ring, &rows, b.cols())
    }

    pub(crate) fn solve_mat(&self, b: &Mat) -> Option<Mat> {
        let mut rows = Vec::with_capacity(b.rows());
        for r in to_z(b) {
            let (nf, coeffs) = self.nf_row(&r);
            if nf.iter().any(|x| !x.is_zero()) {
                return None;
            }
            let mut x = vec![BigInt::zero(); self.arows];
            for (k, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for j in 0..self.arows {
                    let t = c * &self.transform[k][j];
                    x[j] += t;
                }
            }
            rows.push(x);
        }
        Some(from_z(&self.ring, &rows, self.arows))
    }
}

/// Elementary divisors (nonzero diagonal of the Smith normal form).
pub fn smith_divisors(a: &Mat) -> Vec<BigInt> {
    let mut w = to_z(a);
    let rows = a.rows();
    let cols = a.cols();
    let mut divisors = Vec::new();
    let mut r0 = 0;
    let mut c0 = 0;
    while r0 < rows && c0 < cols {
        // find a nonzero entry of minimal absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in r0..rows {
            for j in c0..cols {
                if w[i][j].is_zero() {
                    continue;
                }
                match &best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if w[i][j].abs() < w[*bi][*bj].abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        let (bi, bj) = match best {
            None => break,
            Some(x) => x,
        };
        w.swap(r0, bi);
        for row in w.iter_mut() {
            row.swap(c0, bj);
        }
        // clear the pivot row and column
        let mut dirty = true;
        while dirty {
            dirty = false;
            for i in r0 + 1..rows {
                if w[i][c0].is_zero() {
                    continue;
                }
                let qq = w[i][c0].div_floor(&w[r0][c0]);
                for j in c0..cols {
                    let t = &qq * &w[r0][j];
                    w[i][j] -= t;
                }
                if !w[i][c0].is_zero() {
                    // remainder smaller than pivot: swap up and restart
                    w.swap(r0, i);
                    dirty = true;
                }
            }
            for j in c0 + 1..cols {
                if w[r0][j].is_zero() {
                    continue;
                }
                let qq = w[r0][j].div_floor(&w[r0][c0]);
                for i in r0..rows {
                    let t = &qq * &w[i][c0];
                    w[i][j] -= t;
                }
                if !w[r0][j].is_zero() {
                    for row in w.iter_mut() {
                        row.swap(c0, j);
                    }
                    dirty = true;
                }
            }
        }
        divisors.push(w[r0][c0].abs());
        r0 += 1;
        c0 += 1;
    }
    // enforce the divisibility chain
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..divisors.len().saturating_sub(1) {
            if !(&divisors[i + 1] % &divisors[i]).is_zero() {
                let g = divisors[i].gcd(&divisors[i + 1]);
                let l = (&divisors[i] * &divisors[i + 1]) / &g;
                divisors[i] = g;
                divisors[i + 1] = l;
                changed = true;
            }
        }
    }
    divisors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_matrix;

    #[test]
    fn hnf_canonical() {
        let r = Ring::integers();
        let a = parse_matrix("[ 4, 6, 2, 3 ]", 2, 2, &r).unwrap();
        let h = Hnf::new(&a);
        // row module of [[4,6],[2,3]] = Z*(2,3)
        let expect = parse_matrix("[ 2, 3 ]", 1, 2, &r).unwrap();
        assert_eq!(h.basis, expect);
        assert!(h.syzygies.mul(&a).unwrap().is_zero());
        assert_eq!(h.syzygies.rows(), 1);
    }

    #[test]
    fn snf_divisors() {
        let r = Ring::integers();
        let a = parse_matrix("[ 2, 0, 0, 3 ]", 2, 2, &r).unwrap();
        let d = smith_divisors(&a);
        assert_eq!(d, vec![BigInt::from(1), BigInt::from(6)]);
        let b = parse_matrix("[ 2, 4, 4, 8 ]", 2, 2, &r).unwrap();
        assert_eq!(smith_divisors(&b), vec![BigInt::from(2)]);
    }
}
