//! Module Groebner bases over `QQ[x1..xn]` with the degrevlex term order and
//! position-over-term module order (leftmost column dominates).
//!
//! The active arithmetic is fraction-free: vectors carry integer coefficients,
//! reductions scale by positive rational units whose product is divided out at
//! the end, so normal forms stay canonical. Witnesses (expressions of basis
//! elements over the input rows) are carried additively alongside the
//! reduction, which keeps their coefficients at their intrinsic size; the
//! witnesses of S-polynomials that reduce to zero are the Schreyer generators
//! of the syzygy module, already mapped down to the input rows.

use crate::mat::Mat;
use crate::poly::{Mono, Poly};
use crate::ring::Ring;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};

/// Sparse row vector of module terms, sorted strictly descending.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct MVec {
    terms: Vec<(u32, Mono, BigRational)>,
}

/// Position-over-term, leftmost column first, then degrevlex.
fn cmp_term(ac: u32, am: &Mono, bc: u32, bm: &Mono) -> Ordering {
    if ac != bc {
        return if ac < bc { Ordering::Greater } else { Ordering::Less };
    }
    am.cmp_degrevlex(bm)
}

impl MVec {
    fn from_row(row: &[Poly]) -> MVec {
        let mut terms: Vec<(u32, Mono, BigRational)> = Vec::new();
        for (j, p) in row.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push((j as u32, m.clone(), c.clone()));
            }
        }
        terms.sort_by(|a, b| cmp_term(b.0, &b.1, a.0, &a.1));
        MVec { terms }
    }

    fn to_row(&self, nvars: usize, cols: usize) -> Vec<Poly> {
        let mut row = vec![Poly::zero(nvars); cols];
        for (c, m, coef) in self.terms.iter().rev() {
            let t = Poly::monomial(nvars, m.clone(), coef.clone());
            row[*c as usize] = row[*c as usize].add(&t);
        }
        row
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> Option<&(u32, Mono, BigRational)> {
        self.terms.first()
    }

    /// Scale so the leading coefficient is one.
    fn monic(mut self) -> MVec {
        if let Some((_, _, lc)) = self.terms.first() {
            if !lc.is_one() {
                let inv = BigRational::one() / lc.clone();
                for t in &mut self.terms {
                    t.2 = &t.2 * &inv;
                }
            }
        }
        self
    }

    /// `self - b * x^m * g`, merging sorted term lists.
    fn combine(&self, b: &BigRational, m: &Mono, g: &MVec) -> MVec {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() && j < g.terms.len() {
            let (sc, sm, scoef) = &self.terms[i];
            let gt = &g.terms[j];
            let gm = gt.1.mul(m);
            match cmp_term(*sc, sm, gt.0, &gm) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((gt.0, gm, -(b * &gt.2)));
                    j += 1;
                }
                Ordering::Equal => {
                    let coef = scoef - b * &gt.2;
                    if !coef.is_zero() {
                        out.push((*sc, sm.clone(), coef));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        for gt in &g.terms[j..] {
            out.push((gt.0, gt.1.mul(m), -(b * &gt.2)));
        }
        MVec { terms: out }
    }
}

/// Sparse rational row over the input rows, sorted like module terms;
/// updated additively so coefficients stay at their intrinsic size.
#[derive(Clone, Debug, Default)]
pub(crate) struct WVec {
    terms: Vec<(u32, Mono, BigRational)>,
}

impl WVec {
    fn unit(i: u32, nvars: usize, c: BigRational) -> WVec {
        WVec { terms: vec![(i, Mono::one(nvars), c)] }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn scaled(&self, c: &BigRational) -> WVec {
        if c.is_zero() {
            return WVec::default();
        }
        WVec {
            terms: self
                .terms
                .iter()
                .map(|(i, m, co)| (*i, m.clone(), co * c))
                .collect(),
        }
    }

    fn shifted_scaled(&self, m: &Mono, c: &BigRational) -> WVec {
        WVec {
            terms: self
                .terms
                .iter()
                .map(|(i, tm, co)| (*i, tm.mul(m), co * c))
                .collect(),
        }
    }

    /// `self + c * x^m * other`.
    fn add_scaled(&self, c: &BigRational, m: &Mono, other: &WVec) -> WVec {
        if c.is_zero() || other.terms.is_empty() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() && j < other.terms.len() {
            let (sc, sm, scoef) = &self.terms[i];
            let ot = &other.terms[j];
            let om = ot.1.mul(m);
            match cmp_term(*sc, sm, ot.0, &om) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((ot.0, om, c * &ot.2));
                    j += 1;
                }
                Ordering::Equal => {
                    let coef = scoef + c * &ot.2;
                    if !coef.is_zero() {
                        out.push((*sc, sm.clone(), coef));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        for ot in &other.terms[j..] {
            out.push((ot.0, ot.1.mul(m), c * &ot.2));
        }
        WVec { terms: out }
    }

    fn to_row(&self, nvars: usize, cols: usize) -> Vec<Poly> {
        let mut row = vec![Poly::zero(nvars); cols];
        for (i, m, c) in &self.terms {
            let t = Poly::monomial(nvars, m.clone(), c.clone());
            row[*i as usize] = row[*i as usize].add(&t);
        }
        row
    }
}

struct Basis {
    elements: Vec<MVec>,
    witnesses: Vec<WVec>,
    with_witness: bool,
    by_col: HashMap<u32, Vec<usize>>,
}

impl Basis {
    fn index(elements: &[MVec]) -> HashMap<u32, Vec<usize>> {
        let mut by_col: HashMap<u32, Vec<usize>> = HashMap::new();
        for (i, g) in elements.iter().enumerate() {
            if let Some((c, _, _)) = g.lead() {
                by_col.entry(*c).or_default().push(i);
            }
        }
        by_col
    }

    fn find_reducer(&self, col: u32, mono: &Mono) -> Option<usize> {
        let cands = self.by_col.get(&col)?;
        cands
            .iter()
            .copied()
            .find(|&i| self.elements[i].lead().unwrap().1.divides(mono))
    }

    /// Full reduction tracking the accumulated quotients. Basis elements are
    /// monic, so nothing rescales: with `negate_quotients = true` the
    /// invariant is `wt * A = active` (syzygy extraction); with `false` it is
    /// `wt * A + active = initial value` (normal forms and solving).
    fn reduce(&self, v: MVec, wt0: WVec, negate_quotients: bool) -> (MVec, WVec) {
        let mut work = v;
        let mut wt = wt0;
        let mut out: Vec<(u32, Mono, BigRational)> = Vec::new();
        while let Some((col, mono, coef)) = work.lead().cloned() {
            match self.find_reducer(col, &mono) {
                Some(i) => {
                    let g = &self.elements[i];
                    let (_, gm, _) = g.lead().unwrap();
                    let qm = gm.div(&mono);
                    work = work.combine(&coef, &qm, g);
                    if self.with_witness {
                        let q = if negate_quotients { -coef } else { coef };
                        wt = wt.add_scaled(&q, &qm, &self.witnesses[i]);
                    }
                }
                None => {
                    out.push((col, mono, coef));
                    work.terms.remove(0);
                }
            }
        }
        (MVec { terms: out }, wt)
    }
}

fn max_pairs_budget() -> usize {
    std::env::var("SPECSEQ_MAX_PAIRS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(usize::MAX)
}

struct BuchbergerOutput {
    /// reduced basis, integer-primitive, sorted by lead descending
    reduced: Vec<MVec>,
    /// witnesses of the reduced basis over the input rows
    reduced_witnesses: Vec<WVec>,
    /// generating set of the syzygy module of the input rows
    syzygies: Vec<WVec>,
}

/// Buchberger with the normal selection strategy, the chain criterion, and
/// full inter-reduction; optionally tracks witnesses and syzygies.
fn buchberger(nvars: usize, rows: Vec<(MVec, WVec)>, with_witness: bool) -> BuchbergerOutput {
    let trace = std::env::var("SPECSEQ_GB_TRACE").is_ok();
    let t0 = std::time::Instant::now();
    let ngens = rows.len();

    let mut basis = Basis {
        elements: Vec::new(),
        witnesses: Vec::new(),
        with_witness,
        by_col: HashMap::new(),
    };
    let mut syzygies: Vec<WVec> = Vec::new();
    for (v, w) in rows {
        if v.is_zero() {
            // a zero input row is itself a syzygy
            if with_witness && !w.is_zero() {
                syzygies.push(w);
            }
            continue;
        }
        let lc = v.lead().unwrap().2.clone();
        let v = v.monic();
        let w = if with_witness {
            w.scaled(&(BigRational::one() / lc))
        } else {
            w
        };
        basis.elements.push(v);
        basis.witnesses.push(w);
    }
    basis.by_col = Basis::index(&basis.elements);

    let mut pairs: BTreeSet<(u64, usize, usize)> = BTreeSet::new();
    let mut done: HashSet<(usize, usize)> = HashSet::new();
    let add_pairs = |els: &Vec<MVec>, pairs: &mut BTreeSet<(u64, usize, usize)>, j: usize| {
        let (cj, mj) = {
            let (c, m, _) = els[j].lead().unwrap();
            (*c, m.clone())
        };
        for i in 0..j {
            let (ci, mi, _) = els[i].lead().unwrap();
            if *ci == cj {
                let lcm = mi.lcm(&mj);
                pairs.insert((lcm.degree(), i, j));
            }
        }
    };
    for j in 0..basis.elements.len() {
        add_pairs(&basis.elements, &mut pairs, j);
    }

    let budget = max_pairs_budget();
    let mut processed = 0usize;

    while let Some(&(deg, i, j)) = pairs.iter().next() {
        pairs.remove(&(deg, i, j));
        done.insert((i, j));
        processed += 1;
        if processed > budget {
            panic!("Groebner pair budget exceeded (SPECSEQ_MAX_PAIRS={budget})");
        }

        let (ci, mi) = {
            let (c, m, _) = basis.elements[i].lead().unwrap();
            (*c, m.clone())
        };
        let mj = basis.elements[j].lead().unwrap().1.clone();
        let lcm = mi.lcm(&mj);

        // chain criterion
        let mut skip = false;
        if let Some(cands) = basis.by_col.get(&ci) {
            for &k in cands {
                if k == i || k == j {
                    continue;
                }
                let (_, mk, _) = basis.elements[k].lead().unwrap();
                if mk.divides(&lcm) {
                    let p1 = (i.min(k), i.max(k));
                    let p2 = (j.min(k), j.max(k));
                    if done.contains(&p1) && done.contains(&p2) {
                        skip = true;
                        break;
                    }
                }
            }
        }
        if skip {
            continue;
        }

        let (s_active, s_wt) = {
            let gi = &basis.elements[i];
            let gj = &basis.elements[j];
            let ui = mi.div(&lcm);
            let uj = mj.div(&lcm);
            let shifted = MVec {
                terms: gi
                    .terms
                    .iter()
                    .map(|(c, m, co)| (*c, m.mul(&ui), co.clone()))
                    .collect(),
            };
            let active = shifted.combine(&BigRational::one(), &uj, gj);
            let wt = if with_witness {
                let wa = basis.witnesses[i].shifted_scaled(&ui, &BigRational::one());
                wa.add_scaled(&(-BigRational::one()), &uj, &basis.witnesses[j])
            } else {
                WVec::default()
            };
            (active, wt)
        };
        // invariant: s_wt * A = s_active
        let (r, wt) = basis.reduce(s_active, s_wt, true);
        if r.is_zero() {
            if with_witness && !wt.is_zero() {
                syzygies.push(wt);
            }
        } else {
            let lc = r.lead().unwrap().2.clone();
            let r = r.monic();
            // wt * A = r_raw = lc * r
            let w_new = if with_witness {
                wt.scaled(&(BigRational::one() / lc))
            } else {
                WVec::default()
            };
            basis.elements.push(r);
            basis.witnesses.push(w_new);
            let idx = basis.elements.len() - 1;
            let (c0, _, _) = basis.elements[idx].lead().unwrap();
            basis.by_col.entry(*c0).or_default().push(idx);
            add_pairs(&basis.elements, &mut pairs, idx);
        }
    }

    // minimalize: drop elements whose lead is divisible by another lead
    let mut order: Vec<usize> = (0..basis.elements.len()).collect();
    order.sort_by(|&a, &b| {
        let (ca, ma, _) = basis.elements[a].lead().unwrap();
        let (cb, mb, _) = basis.elements[b].lead().unwrap();
        cmp_term(*ca, ma, *cb, mb)
    });
    let mut kept: Vec<usize> = Vec::new();
    for &i in &order {
        let (c, m, _) = basis.elements[i].lead().unwrap();
        let dominated = kept.iter().any(|&k| {
            let (kc, km, _) = basis.elements[k].lead().unwrap();
            kc == c && km.divides(m)
        });
        if !dominated {
            kept.push(i);
        }
    }

    // tail-reduce each kept element against the other kept ones
    let mut reduced: Vec<MVec> = Vec::new();
    let mut reduced_w: Vec<WVec> = Vec::new();
    for &i in &kept {
        let rest: Vec<MVec> = kept
            .iter()
            .filter(|&&k| k != i)
            .map(|&k| basis.elements[k].clone())
            .collect();
        let rest_w: Vec<WVec> = if with_witness {
            kept.iter()
                .filter(|&&k| k != i)
                .map(|&k| basis.witnesses[k].clone())
                .collect()
        } else {
            Vec::new()
        };
        let sub = Basis {
            by_col: Basis::index(&rest),
            elements: rest,
            witnesses: rest_w,
            with_witness,
        };
        // g_i = x * A + nf_raw, so witness(nf) = w_i - x
        let (nf_raw, x) = sub.reduce(basis.elements[i].clone(), WVec::default(), false);
        let lc = nf_raw.lead().map(|t| t.2.clone());
        let nf = nf_raw.monic();
        if with_witness {
            let diff =
                basis.witnesses[i].add_scaled(&(-BigRational::one()), &Mono::one(nvars), &x);
            let factor = match lc {
                Some(lc) => BigRational::one() / lc,
                None => BigRational::one(),
            };
            reduced_w.push(diff.scaled(&factor));
        }
        reduced.push(nf);
    }

    // canonical ordering: leading term descending
    let mut idx: Vec<usize> = (0..reduced.len()).collect();
    idx.sort_by(|&a, &b| {
        let (ac, am, _) = reduced[a].lead().unwrap();
        let (bc, bm, _) = reduced[b].lead().unwrap();
        cmp_term(*bc, bm, *ac, am)
    });
    let reduced_sorted: Vec<MVec> = idx.iter().map(|&i| reduced[i].clone()).collect();
    let reduced_w_sorted: Vec<WVec> = if with_witness {
        idx.iter().map(|&i| reduced_w[i].clone()).collect()
    } else {
        Vec::new()
    };

    if trace {
        eprintln!(
            "[gb] gens={} pairs={} basis={} witness={} time={:?}",
            ngens,
            processed,
            reduced_sorted.len(),
            with_witness,
            t0.elapsed()
        );
    }

    BuchbergerOutput {
        reduced: reduced_sorted,
        reduced_witnesses: reduced_w_sorted,
        syzygies,
    }
}

fn gens_of(a: &Mat, with_witness: bool) -> Vec<(MVec, WVec)> {
    let nv = a.ring().nvars();
    (0..a.rows())
        .map(|i| {
            let v = MVec::from_row(a.row(i));
            let w = if with_witness {
                WVec::unit(i as u32, nv, BigRational::one())
            } else {
                WVec::default()
            };
            (v, w)
        })
        .collect()
}

/// Reduced Groebner basis of the row module of `a`. The exported basis is
/// monic-normalized; internal reduction stays integer.
pub(crate) struct PlainGb {
    ring: Ring,
    cols: usize,
    basis_internal: Basis,
    pub(crate) basis: Mat,
}

impl PlainGb {
    pub(crate) fn new(a: &Mat) -> PlainGb {
        let ring = a.ring().clone();
        let out = buchberger(ring.nvars(), gens_of(a, false), false);
        let nv = ring.nvars();
        let mut data: Vec<Poly> = Vec::with_capacity(out.reduced.len() * a.cols());
        for g in &out.reduced {
            data.extend(g.to_row(nv, a.cols()));
        }
        let basis = Mat::new(ring.clone(), out.reduced.len(), a.cols(), data).unwrap();
        let basis_internal = Basis {
            by_col: Basis::index(&out.reduced),
            elements: out.reduced,
            witnesses: Vec::new(),
            with_witness: false,
        };
        PlainGb { ring, cols: a.cols(), basis_internal, basis }
    }

    pub(crate) fn nf_mat(&self, b: &Mat) -> Mat {
        let nv = self.ring.nvars();
        let mut data = Vec::with_capacity(b.rows() * b.cols());
        for i in 0..b.rows() {
            let v = MVec::from_row(b.row(i));
            let (nf, _) = self.basis_internal.reduce(v, WVec::default(), false);
            data.extend(nf.to_row(nv, self.cols));
        }
        Mat::new(self.ring.clone(), b.rows(), b.cols(), data).unwrap()
    }
}

/// Witness-tracking basis: solves `X * A = B` and generates the syzygies of
/// the rows of `A`.
pub(crate) struct WitnessGb {
    ring: Ring,
    arows: usize,
    basis_internal: Basis,
    pub(crate) syzygies: Mat,
}

impl WitnessGb {
    pub(crate) fn new(a: &Mat) -> WitnessGb {
        let ring = a.ring().clone();
        let nv = ring.nvars();
        let out = buchberger(nv, gens_of(a, true), true);
        let mut syz_rows: Vec<Vec<Poly>> = Vec::new();
        for w in &out.syzygies {
            // normalize the leading coefficient for tidy generators
            let cleared = MVec::from_row(&w.to_row(nv, a.rows())).monic();
            syz_rows.push(cleared.to_row(nv, a.rows()));
        }
        let data: Vec<Poly> = syz_rows.iter().flatten().cloned().collect();
        let syzygies = Mat::new(ring.clone(), syz_rows.len(), a.rows(), data).unwrap();
        let basis_internal = Basis {
            by_col: Basis::index(&out.reduced),
            elements: out.reduced,
            witnesses: out.reduced_witnesses,
            with_witness: true,
        };
        WitnessGb { ring, arows: a.rows(), basis_internal, syzygies }
    }

    /// Solve `x * A = b` for one row; `None` when `b` is not in the row module.
    pub(crate) fn solve_row(&self, b: &[Poly]) -> Option<Vec<Poly>> {
        let nv = self.ring.nvars();
        let v = MVec::from_row(b);
        let (nf, wt) = self.basis_internal.reduce(v, WVec::default(), false);
        if !nf.is_zero() {
            return None;
        }
        Some(wt.to_row(nv, self.arows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_matrix;

    #[test]
    fn ideal_basis_xy() {
        let r = Ring::parse("QQ[x,y]").unwrap();
        let a = parse_matrix("[ x, y, x+y ]", 3, 1, &r).unwrap();
        let gb = PlainGb::new(&a);
        let expect = parse_matrix("[ x, y ]", 2, 1, &r).unwrap();
        assert_eq!(gb.basis, expect);
    }

    #[test]
    fn monic_normalization_of_basis() {
        let r = Ring::parse("QQ[x]").unwrap();
        let a = parse_matrix("[ 2*x+1 ]", 1, 1, &r).unwrap();
        let gb = PlainGb::new(&a);
        let expect = parse_matrix("[ x+1/2 ]", 1, 1, &r).unwrap();
        assert_eq!(gb.basis, expect);
    }

    #[test]
    fn syzygy_of_x_y() {
        let r = Ring::parse("QQ[x,y]").unwrap();
        let a = parse_matrix("[ x, y ]", 2, 1, &r).unwrap();
        let e = WitnessGb::new(&a);
        assert_eq!(e.syzygies.rows(), 1);
        let s = e.syzygies.row_mat(0);
        let prod = s.mul(&a).unwrap();
        assert!(prod.is_zero());
        assert!(!s.is_zero());
    }

    #[test]
    fn koszul_syzygies_complete() {
        let r = Ring::parse("QQ[x,y,z]").unwrap();
        let a = parse_matrix("[ x, y, z ]", 3, 1, &r).unwrap();
        let e = WitnessGb::new(&a);
        assert!(e.syzygies.mul(&a).unwrap().is_zero());
        // the Koszul relations lie in the span of the computed syzygies
        let koszul = parse_matrix("[ y, -x, 0, z, 0, -x, 0, z, -y ]", 3, 3, &r).unwrap();
        let gb = PlainGb::new(&e.syzygies);
        assert!(gb.nf_mat(&koszul).is_zero());
    }

    #[test]
    fn solve_with_witness() {
        let r = Ring::parse("QQ[x,y]").unwrap();
        let a = parse_matrix("[ x, y ]", 1, 2, &r).unwrap();
        let e = WitnessGb::new(&a);
        let b = parse_matrix("[ x^2, x*y ]", 1, 2, &r).unwrap();
        let x = e.solve_row(b.row(0)).unwrap();
        assert_eq!(x.len(), 1);
        assert_eq!(x[0].display(r.vars()), "x");
        let c = parse_matrix("[ y, x ]", 1, 2, &r).unwrap();
        assert!(e.solve_row(c.row(0)).is_none());
    }

    #[test]
    fn rational_coefficients_round_trip() {
        let r = Ring::parse("QQ[x]").unwrap();
        let a = parse_matrix("[ 1/2*x^2+x, 3 ]", 2, 1, &r).unwrap();
        let gb = PlainGb::new(&a);
        let expect = parse_matrix("[ 1 ]", 1, 1, &r).unwrap();
        assert_eq!(gb.basis, expect);
        let e = WitnessGb::new(&a);
        let b = parse_matrix("[ 1/3 ]", 1, 1, &r).unwrap();
        let x = e.solve_row(b.row(0)).unwrap();
        let xm = Mat::new(r.clone(), 1, 2, x).unwrap();
        assert_eq!(xm.mul(&a).unwrap(), b);
    }

    #[test]
    fn duplicate_and_zero_rows_give_syzygies() {
        let r = Ring::parse("QQ[x,y]").unwrap();
        let a = parse_matrix("[ x, x, 0 ]", 3, 1, &r).unwrap();
        let e = WitnessGb::new(&a);
        assert!(e.syzygies.mul(&a).unwrap().is_zero());
        // e_3 (zero row) and e_1 - e_2 (duplicate) must be in the span
        let expect = parse_matrix("[ 0, 0, 1, 1, -1, 0 ]", 2, 3, &r).unwrap();
        let gb = PlainGb::new(&e.syzygies);
        assert!(gb.nf_mat(&expect).is_zero());
    }
}
