//! Constructive Cartan-Eilenberg resolution of a bounded cochain complex,
//! built by iterated horseshoe gluing over the three-step filtration
//! boundaries <= cycles <= object of every spot.
//!
//! Columns resolve the complex objects; the homology of the rows at a fixed
//! resolution level resolves the cohomology of the complex — the property
//! the Grothendieck spectral sequences are built on.

use crate::error::{Error, Result};
use crate::fpmod::{FPModule, ModuleMorphism};
use crate::functors::resolution_tight;
use crate::kernel;
use crate::mat::Mat;
use crate::ring::Ring;

/// A free resolution with an explicit augmentation `P_0 -> module`.
#[derive(Clone, Debug)]
pub struct AugRes {
    pub module: FPModule,
    /// `aug: P_0 -> module` on generators, `rank_0 x ngens`
    pub aug: Mat,
    /// `diffs[i]: P_{i+1} -> P_i`
    pub diffs: Vec<Mat>,
}

impl AugRes {
    pub fn of(m: &FPModule) -> AugRes {
        let res = resolution_tight(m);
        AugRes {
            module: m.clone(),
            aug: Mat::identity(m.ring().clone(), m.ngens()),
            diffs: res.differentials,
        }
    }

    pub fn rank(&self, i: usize) -> usize {
        if i == 0 {
            self.aug.rows()
        } else if i <= self.diffs.len() {
            self.diffs[i - 1].rows()
        } else {
            0
        }
    }

    pub fn len(&self) -> usize {
        let mut l = self.diffs.len();
        while l > 0 && self.diffs[l - 1].rows() == 0 {
            l -= 1;
        }
        l
    }

    /// `d_i` padded with empty matrices past the end.
    pub fn diff(&self, i: usize) -> Mat {
        assert!(i >= 1);
        if i <= self.diffs.len() {
            self.diffs[i - 1].clone()
        } else {
            Mat::zero(self.module.ring().clone(), 0, self.rank(i - 1))
        }
    }
}

/// Horseshoe: combine resolutions of the ends of a short exact sequence
/// `0 -> A --iota--> M --pi--> Q -> 0` into an augmented resolution of `M`
/// whose level-`i` term is `P^A_i (+) P^Q_i` (A block first).
pub fn horseshoe(
    a: &AugRes,
    iota: &ModuleMorphism,
    q: &AugRes,
    pi: &ModuleMorphism,
) -> Result<AugRes> {
    let m = iota.target().clone();
    if pi.source() != &m {
        return Err(Error::Dim("horseshoe middle object mismatch".into()));
    }
    let ring = m.ring().clone();
    // sigma: P^Q_0 -> M lifting the augmentation of Q through pi
    let sigma = kernel::express_rows(&q.aug, &[pi.matrix(), q.module.relations()])?
        .ok_or_else(|| Error::Lift("horseshoe: augmentation does not lift (pi not epi?)".into()))?
        [0]
    .clone();
    let iota0 = a.aug.mul(iota.matrix())?;
    let aug = iota0.vstack(&sigma)?;

    let levels = a.len().max(q.len());
    let mut diffs: Vec<Mat> = Vec::new();
    // theta_i: P^Q_i -> P^A_{i-1}
    let mut theta_prev: Mat; // theta_1 first
    {
        let dq1 = q.diff(1);
        let rhs = dq1.mul(&sigma)?.neg();
        let theta1 = kernel::express_rows(&rhs, &[&iota0, m.relations()])?
            .ok_or_else(|| Error::Lift("horseshoe: theta_1 not solvable".into()))?[0]
            .clone();
        let top = a.diff(1).hstack(&Mat::zero(ring.clone(), a.rank(1), q.rank(0)))?;
        let bot = theta1.hstack(&dq1)?;
        diffs.push(top.vstack(&bot)?);
        theta_prev = theta1;
    }
    for i in 2..=levels {
        let dqi = q.diff(i);
        let rhs = dqi.mul(&theta_prev)?.neg();
        let da_prev = a.diff(i - 1);
        let theta = match kernel::solve_left(&da_prev, &rhs)? {
            Some(t) => t,
            None => {
                return Err(Error::Lift(format!(
                    "horseshoe: theta_{i} not solvable (inexact input resolution?)"
                )))
            }
        };
        let top = a.diff(i).hstack(&Mat::zero(ring.clone(), a.rank(i), q.rank(i - 1)))?;
        let bot = theta.hstack(&dqi)?;
        diffs.push(top.vstack(&bot)?);
        theta_prev = theta;
    }
    Ok(AugRes { module: m, aug, diffs })
}

/// The Cartan-Eilenberg resolution of a cochain complex
/// `Q^0 -> Q^1 -> ... -> Q^t`.
#[derive(Clone, Debug)]
pub struct CartanEilenberg {
    pub ring: Ring,
    /// column resolutions `P(Q^p)`
    pub columns: Vec<AugRes>,
    /// per column `p` and level `i`: widths of the three blocks
    /// (boundaries `B_p`, homology `H_p`, next boundaries `B_{p+1}`)
    pub widths: Vec<Vec<(usize, usize, usize)>>,
    /// horizontal chain maps `H^p_i: P(Q^p)_i -> P(Q^{p+1})_i`
    pub horiz: Vec<Vec<Mat>>,
}

impl CartanEilenberg {
    pub fn column_rank(&self, p: usize, i: usize) -> usize {
        self.columns[p].rank(i)
    }

    pub fn column_len(&self, p: usize) -> usize {
        self.columns[p].len()
    }
}

/// Build the Cartan-Eilenberg resolution. `objects[p]` is `Q^p` and
/// `maps[p]: Q^p -> Q^{p+1}`; the complex condition is validated.
pub fn cartan_eilenberg_cochain(
    objects: &[FPModule],
    maps: &[ModuleMorphism],
) -> Result<CartanEilenberg> {
    let t = objects.len();
    if t == 0 {
        return Err(Error::Dim("empty complex".into()));
    }
    if maps.len() + 1 != t {
        return Err(Error::Dim("cochain map count".into()));
    }
    let ring = objects[0].ring().clone();
    for (p, f) in maps.iter().enumerate() {
        if f.source() != &objects[p] || f.target() != &objects[p + 1] {
            return Err(Error::Dim(format!("cochain map {p} endpoints")));
        }
        if p + 1 < maps.len() && !f.compose(&maps[p + 1])?.is_zero() {
            return Err(Error::NotComplex(format!("composite at {p} nonzero")));
        }
    }

    // kernels Z_p with embeddings, including the trailing full kernel
    let mut zeta: Vec<ModuleMorphism> = Vec::with_capacity(t);
    for p in 0..t {
        if p < maps.len() {
            zeta.push(maps[p].kernel_embedding());
        } else {
            zeta.push(ModuleMorphism::identity(&objects[p]));
        }
    }

    // boundaries B_{p+1} presented as Q^p / Z_p with embedding by delta^p;
    // index b[p] = B_p (so b[0] is the zero piece)
    let mut b_mod: Vec<FPModule> = Vec::with_capacity(t + 1);
    let mut b_emb: Vec<Option<ModuleMorphism>> = Vec::with_capacity(t + 1);
    b_mod.push(FPModule::zero(ring.clone()));
    b_emb.push(None);
    for p in 0..t {
        if p < maps.len() {
            let rels = zeta[p]
                .matrix()
                .vstack(objects[p].relations())?;
            let bp1 = FPModule::new(rels);
            let emb = ModuleMorphism::new(bp1.clone(), objects[p + 1].clone(), maps[p].matrix().clone())?;
            b_mod.push(bp1);
            b_emb.push(Some(emb));
        } else {
            b_mod.push(FPModule::zero(ring.clone()));
            b_emb.push(None);
        }
    }

    // resolutions of the boundary pieces
    let rb: Vec<AugRes> = b_mod.iter().map(AugRes::of).collect();

    let mut columns = Vec::with_capacity(t);
    let mut widths: Vec<Vec<(usize, usize, usize)>> = Vec::with_capacity(t);
    for p in 0..t {
        // beta_p: B_p -> Z_p through the kernel embedding
        let z_mod = zeta[p].source().clone();
        let beta = match &b_emb[p] {
            None => ModuleMorphism::zero(&b_mod[p], &z_mod),
            Some(mu) => mu.lift_through_mono(&zeta[p])?,
        };
        let (h_mod, h_proj) = beta.cokernel_projection();
        let rh = AugRes::of(&h_mod);
        let pz = horseshoe(&rb[p], &beta, &rh, &h_proj)?;
        // Y_p = Q^p / Z_p has the same presentation as B_{p+1}; at the top
        // of the complex the quotient is zero
        let y_mod = b_mod[p + 1].clone();
        let y_matrix = if p < maps.len() {
            Mat::identity(ring.clone(), objects[p].ngens())
        } else {
            Mat::zero(ring.clone(), objects[p].ngens(), y_mod.ngens())
        };
        let y_proj = ModuleMorphism::new(objects[p].clone(), y_mod.clone(), y_matrix)?;
        let pq = horseshoe(&pz, &zeta[p], &rb[p + 1], &y_proj)?;
        let levels = pq.len();
        let mut w = Vec::with_capacity(levels + 1);
        for i in 0..=levels {
            w.push((rb[p].rank(i), rh.rank(i), rb[p + 1].rank(i)));
        }
        widths.push(w);
        columns.push(pq);
    }

    // horizontal chain maps: kill P(Z_p), include the B_{p+1} block
    let mut horiz: Vec<Vec<Mat>> = Vec::with_capacity(t.saturating_sub(1));
    for p in 0..t.saturating_sub(1) {
        let levels = columns[p].len().max(columns[p + 1].len());
        let mut per_level = Vec::with_capacity(levels + 1);
        for i in 0..=levels {
            let src_rank = columns[p].rank(i);
            let tgt_rank = columns[p + 1].rank(i);
            let (wb, wh, wbn) = widths[p]
                .get(i)
                .copied()
                .unwrap_or((0, 0, 0));
            debug_assert_eq!(wb + wh + wbn, src_rank);
            let mut m = Mat::zero(ring.clone(), src_rank, tgt_rank);
            for k in 0..wbn {
                *m.at_mut(wb + wh + k, k) = crate::poly::Poly::one(ring.nvars());
            }
            per_level.push(m);
        }
        horiz.push(per_level);
    }

    Ok(CartanEilenberg { ring, columns, widths, horiz })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_matrix;

    #[test]
    fn single_object_is_plain_resolution() {
        let r = Ring::parse("QQ[x,y,z]").unwrap();
        let m = FPModule::new(parse_matrix("[ x, y, z ]", 3, 1, &r).unwrap());
        let ce = cartan_eilenberg_cochain(&[m.clone()], &[]).unwrap();
        assert_eq!(ce.columns.len(), 1);
        let col = &ce.columns[0];
        assert_eq!(col.len(), 3);
        let ranks: Vec<usize> = (0..=3).map(|i| col.rank(i)).collect();
        assert_eq!(ranks, vec![1, 3, 3, 1]);
    }

    fn check_column_exact(col: &AugRes) {
        // augmentation epi and exact at level 0: ker(aug) = img(d_1)
        let d1 = col.diff(1);
        let ker_gens =
            crate::fpmod::relative_kernel_generators(&col.aug, col.module.relations());
        assert!(kernel::rows_in_span(&ker_gens, &d1));
        assert!(kernel::rows_in_span(&d1, &ker_gens));
        for i in 1..=col.len() {
            let di = col.diff(i);
            let dnext = col.diff(i + 1);
            if dnext.rows() > 0 {
                assert!(dnext.mul(&di).unwrap().is_zero());
            }
            let syz = kernel::syzygies_rows(&di);
            assert!(kernel::rows_in_span(&syz, &dnext));
            assert!(kernel::rows_in_span(&dnext, &syz));
        }
    }

    #[test]
    fn two_spot_complex_columns_and_rows() {
        // D --x--> D over QQ[x] as a cochain complex
        let r = Ring::parse("QQ[x]").unwrap();
        let d = FPModule::free(r.clone(), 1);
        let f = ModuleMorphism::new(d.clone(), d.clone(), parse_matrix("[ x ]", 1, 1, &r).unwrap())
            .unwrap();
        let ce = cartan_eilenberg_cochain(&[d.clone(), d.clone()], &[f]).unwrap();
        assert_eq!(ce.columns.len(), 2);
        for col in &ce.columns {
            check_column_exact(col);
        }
        // horizontal is a chain map: H . d = d . H levelwise
        let h = &ce.horiz[0];
        for i in 1..=ce.columns[0].len().max(ce.columns[1].len()) {
            let lhs = ce.columns[0].diff(i).mul(&h[i - 1]).unwrap();
            let rhs = h
                .get(i)
                .cloned()
                .unwrap_or_else(|| Mat::zero(r.clone(), ce.columns[0].rank(i), ce.columns[1].rank(i)))
                .mul(&ce.columns[1].diff(i))
                .unwrap();
            assert_eq!(lhs, rhs);
        }
        // row homology at level i resolves the cohomology H^p of the complex:
        // here H^0 = ker x = 0 and H^1 = D/<x>
        // level-0 row homology at p=1: coker of H^0_0 inside rank, checked via
        // the middle block width
        let (wb, wh, _) = ce.widths[1][0];
        let _ = wb;
        // H^1 = D/<x> is nonzero, so the middle block is nonempty
        assert!(wh > 0);
    }

    #[test]
    fn horseshoe_of_direct_sum_is_sum() {
        let r = Ring::parse("QQ[x]").unwrap();
        let dx = FPModule::new(parse_matrix("[ x ]", 1, 1, &r).unwrap());
        let sum_rels = parse_matrix("[ x, 0, 0, x ]", 2, 2, &r).unwrap();
        let m = FPModule::new(sum_rels);
        let iota = ModuleMorphism::new(dx.clone(), m.clone(), parse_matrix("[ 1, 0 ]", 1, 2, &r).unwrap()).unwrap();
        let pi = ModuleMorphism::new(m.clone(), dx.clone(), parse_matrix("[ 0, 1 ]", 2, 1, &r).unwrap()).unwrap();
        let a = AugRes::of(&dx);
        let q = AugRes::of(&dx);
        let combined = horseshoe(&a, &iota, &q, &pi).unwrap();
        assert_eq!(combined.rank(0), 2);
        assert_eq!(combined.rank(1), 2);
        assert_eq!(combined.len(), 1);
        check_column_exact(&combined);
    }
}
