//! The three primitive operations of a computable ring — one-sided division,
//! syzygies, and canonical normal form — plus the canonical row basis, with
//! backends for `QQ` (reduced row echelon form), `ZZ` (row Hermite normal
//! form) and `QQ[x1..xn]` (reduced module Groebner bases).
//!
//! All operations are pure; results for a given matrix are memoized behind an
//! internal synchronized cache, which is semantically transparent.

mod field;
mod groebner;
mod integer;

pub use integer::smith_divisors;

use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::ring::RingKind;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

enum Plain {
    Field(field::Rref),
    Int(integer::Hnf),
    Gb(groebner::PlainGb),
}

enum Ext {
    Field(field::Rref),
    Int(integer::Hnf),
    Gb(groebner::WitnessGb),
}

impl Plain {
    fn basis(&self) -> &Mat {
        match self {
            Plain::Field(d) => &d.basis,
            Plain::Int(d) => &d.basis,
            Plain::Gb(d) => &d.basis,
        }
    }

    fn nf_mat(&self, b: &Mat) -> Mat {
        match self {
            Plain::Field(d) => d.nf_mat(b),
            Plain::Int(d) => d.nf_mat(b),
            Plain::Gb(d) => d.nf_mat(b),
        }
    }
}

impl Ext {
    fn syzygies(&self) -> &Mat {
        match self {
            Ext::Field(d) => &d.syzygies,
            Ext::Int(d) => &d.syzygies,
            Ext::Gb(d) => &d.syzygies,
        }
    }

    fn solve_mat(&self, b: &Mat, ring: &crate::ring::Ring, arows: usize) -> Option<Mat> {
        match self {
            Ext::Field(d) => d.solve_mat(b),
            Ext::Int(d) => d.solve_mat(b),
            Ext::Gb(d) => {
                let mut rows: Vec<Vec<crate::poly::Poly>> = Vec::with_capacity(b.rows());
                for i in 0..b.rows() {
                    rows.push(d.solve_row(b.row(i))?);
                }
                let data: Vec<crate::poly::Poly> = rows.into_iter().flatten().collect();
                Some(Mat::new(ring.clone(), b.rows(), arows, data).unwrap())
            }
        }
    }
}

type PlainCache = Mutex<HashMap<Mat, Arc<Plain>>>;
type ExtCache = Mutex<HashMap<Mat, Arc<Ext>>>;

fn plain_cache() -> &'static PlainCache {
    static CACHE: OnceLock<PlainCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn ext_cache() -> &'static ExtCache {
    static CACHE: OnceLock<ExtCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

const CACHE_LIMIT: usize = 8192;

fn plain_data(a: &Mat) -> Arc<Plain> {
    if let Some(hit) = plain_cache().lock().unwrap().get(a) {
        return hit.clone();
    }
    let data = Arc::new(match a.ring().kind() {
        RingKind::Rationals => Plain::Field(field::Rref::new(a)),
        RingKind::Integers => Plain::Int(integer::Hnf::new(a)),
        RingKind::Polynomials => Plain::Gb(groebner::PlainGb::new(a)),
    });
    let mut cache = plain_cache().lock().unwrap();
    if cache.len() >= CACHE_LIMIT {
        cache.clear();
    }
    cache.insert(a.clone(), data.clone());
    data
}

fn ext_data(a: &Mat) -> Arc<Ext> {
    if let Some(hit) = ext_cache().lock().unwrap().get(a) {
        return hit.clone();
    }
    let data = Arc::new(match a.ring().kind() {
        RingKind::Rationals => Ext::Field(field::Rref::new(a)),
        RingKind::Integers => Ext::Int(integer::Hnf::new(a)),
        RingKind::Polynomials => Ext::Gb(groebner::WitnessGb::new(a)),
    });
    let mut cache = ext_cache().lock().unwrap();
    if cache.len() >= CACHE_LIMIT {
        cache.clear();
    }
    cache.insert(a.clone(), data.clone());
    data
}

/// Canonical reduced generating matrix of the row module of `a`.
///
/// Idempotent, and two matrices have equal row modules exactly when their
/// bases are identical.
pub fn basis_rows(a: &Mat) -> Mat {
    plain_data(a).basis().clone()
}

/// Row-wise canonical normal form of `b` modulo the row module of `a`.
/// A row reduces to zero exactly when it lies in the row module.
pub fn decide_zero_rows(b: &Mat, a: &Mat) -> Result<Mat> {
    b.same_ring(a)?;
    if b.cols() != a.cols() {
        return Err(Error::Dim(format!(
            "decide_zero_rows: {} columns vs {}",
            b.cols(),
            a.cols()
        )));
    }
    if b.rows() == 0 || b.cols() == 0 || a.rows() == 0 {
        return Ok(b.clone());
    }
    Ok(plain_data(a).nf_mat(b))
}

/// A finite generating set for `{x : x * a = 0}`; may have zero rows.
pub fn syzygies_rows(a: &Mat) -> Mat {
    if a.rows() == 0 {
        return Mat::zero(a.ring().clone(), 0, 0);
    }
    if a.cols() == 0 || a.is_zero() {
        return Mat::identity(a.ring().clone(), a.rows());
    }
    ext_data(a).syzygies().clone()
}

/// Solve `x * a = b` exactly; `None` when some row of `b` is outside the
/// row module of `a`.
pub fn solve_left(a: &Mat, b: &Mat) -> Result<Option<Mat>> {
    b.same_ring(a)?;
    if b.cols() != a.cols() {
        return Err(Error::Dim(format!(
            "solve_left: {} columns vs {}",
            b.cols(),
            a.cols()
        )));
    }
    if a.rows() == 0 {
        return Ok(if b.is_zero() {
            Some(Mat::zero(a.ring().clone(), b.rows(), 0))
        } else {
            None
        });
    }
    if b.cols() == 0 {
        return Ok(Some(Mat::zero(a.ring().clone(), b.rows(), a.rows())));
    }
    Ok(ext_data(a).solve_mat(b, a.ring(), a.rows()))
}

/// True when every row of `b` lies in the row module of `a`.
pub fn rows_in_span(b: &Mat, a: &Mat) -> bool {
    decide_zero_rows(b, a).map(|n| n.is_zero()).unwrap_or(false)
}

/// Express each row of `b` over a stack of blocks: returns per-block
/// coefficient matrices `X_k` with `sum_k X_k * blocks_k = b`.
pub fn express_rows(b: &Mat, blocks: &[&Mat]) -> Result<Option<Vec<Mat>>> {
    let ring = b.ring().clone();
    let stacked = Mat::vstack_all(&ring, b.cols(), blocks);
    let x = match solve_left(&stacked, b)? {
        None => return Ok(None),
        Some(x) => x,
    };
    let mut out = Vec::with_capacity(blocks.len());
    let mut r0 = 0;
    for blk in blocks {
        out.push(x.submatrix(0..x.rows(), r0..r0 + blk.rows()));
        r0 += blk.rows();
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_matrix;
    use crate::ring::Ring;

    #[test]
    fn spec_examples_solve_left() {
        // field division
        let q = Ring::rationals();
        let a = parse_matrix("[ 2, 0, 0, 3 ]", 2, 2, &q).unwrap();
        let b = parse_matrix("[ 1, 0 ]", 1, 2, &q).unwrap();
        let x = solve_left(&a, &b).unwrap().unwrap();
        assert_eq!(x, parse_matrix("[ 1/2, 0 ]", 1, 2, &q).unwrap());

        // 2 does not divide 1 in ZZ
        let z = Ring::integers();
        let a = parse_matrix("[ 2 ]", 1, 1, &z).unwrap();
        let b = parse_matrix("[ 1 ]", 1, 1, &z).unwrap();
        assert!(solve_left(&a, &b).unwrap().is_none());

        // exact polynomial division
        let px = Ring::parse("QQ[x]").unwrap();
        let a = parse_matrix("[ x ]", 1, 1, &px).unwrap();
        let b = parse_matrix("[ x^2+x ]", 1, 1, &px).unwrap();
        let x = solve_left(&a, &b).unwrap().unwrap();
        assert_eq!(x, parse_matrix("[ x+1 ]", 1, 1, &px).unwrap());

        // multivariate witness
        let pxy = Ring::parse("QQ[x,y]").unwrap();
        let a = parse_matrix("[ x, y ]", 1, 2, &pxy).unwrap();
        let b = parse_matrix("[ x^2, x*y ]", 1, 2, &pxy).unwrap();
        let x = solve_left(&a, &b).unwrap().unwrap();
        assert_eq!(x.mul(&a).unwrap(), b);
    }

    #[test]
    fn spec_examples_syzygies() {
        let q = Ring::rationals();
        let a = parse_matrix("[ 1, 0 ]", 2, 1, &q).unwrap();
        let s = syzygies_rows(&a);
        assert_eq!(basis_rows(&s), parse_matrix("[ 0, 1 ]", 1, 2, &q).unwrap());

        let pxy = Ring::parse("QQ[x,y]").unwrap();
        let a = parse_matrix("[ x, y ]", 2, 1, &pxy).unwrap();
        let s = syzygies_rows(&a);
        assert!(s.mul(&a).unwrap().is_zero());
        // generated by (y, -x)
        let gen = parse_matrix("[ y, -x ]", 1, 2, &pxy).unwrap();
        assert!(rows_in_span(&gen, &s));
        assert!(rows_in_span(&s, &gen));

        // invertible square over QQ has no syzygies
        let inv = parse_matrix("[ 1, 2, 0, 1 ]", 2, 2, &q).unwrap();
        assert_eq!(syzygies_rows(&inv).rows(), 0);
    }

    #[test]
    fn spec_examples_decide_zero() {
        let q = Ring::rationals();
        let a = parse_matrix("[ 2, 3 ]", 1, 2, &q).unwrap();
        let b = parse_matrix("[ 4, 6 ]", 1, 2, &q).unwrap();
        assert!(decide_zero_rows(&b, &a).unwrap().is_zero());

        let pxy = Ring::parse("QQ[x,y]").unwrap();
        let a = parse_matrix("[ x ]", 1, 1, &pxy).unwrap();
        let b = parse_matrix("[ x*y ]", 1, 1, &pxy).unwrap();
        assert!(decide_zero_rows(&b, &a).unwrap().is_zero());
        let c = parse_matrix("[ y ]", 1, 1, &pxy).unwrap();
        let n = decide_zero_rows(&c, &a).unwrap();
        assert_eq!(n, c);
    }

    #[test]
    fn spec_examples_basis() {
        let q = Ring::rationals();
        let a = parse_matrix("[ 2, 4, 1, 2 ]", 2, 2, &q).unwrap();
        assert_eq!(basis_rows(&a), parse_matrix("[ 1, 2 ]", 1, 2, &q).unwrap());

        let px = Ring::parse("QQ[x]").unwrap();
        let a = parse_matrix("[ x^2, x ]", 2, 1, &px).unwrap();
        assert_eq!(basis_rows(&a), parse_matrix("[ x ]", 1, 1, &px).unwrap());

        let pxy = Ring::parse("QQ[x,y]").unwrap();
        let a = parse_matrix("[ x, y, x+y ]", 3, 1, &pxy).unwrap();
        let b = basis_rows(&a);
        assert_eq!(b, parse_matrix("[ x, y ]", 2, 1, &pxy).unwrap());
        // idempotence
        assert_eq!(basis_rows(&b), b);
    }

    #[test]
    fn solve_and_decide_agree() {
        let px = Ring::parse("QQ[x]").unwrap();
        let a = parse_matrix("[ x, 0, 0, x-1 ]", 2, 2, &px).unwrap();
        let b = parse_matrix("[ x^2, 0, 1, 0 ]", 2, 2, &px).unwrap();
        let n = decide_zero_rows(&b, &a).unwrap();
        assert!(!n.is_zero());
        assert!(solve_left(&a, &b).unwrap().is_none());
        let b1 = b.submatrix(0..1, 0..2);
        assert!(solve_left(&a, &b1).unwrap().is_some());
    }
}
