//! Grothendieck spectral sequences from the Cartan-Eilenberg resolution, the
//! double-Ext and Tor-Ext spectral sequences with their induced filtrations,
//! the bidualizing route to the purity filtration, higher evaluation maps,
//! purity predicates, and the codegree of purity.

use crate::bicomplex::Bicomplex;
use crate::cartan::cartan_eilenberg_cochain;
use crate::error::{Error, Result};
use crate::fpmod::{FPModule, ModuleMorphism, Submodule};
use crate::functors::{resolution_tight, FunctorSpec};
use crate::genmor::{FiltrationSystem, GeneralizedMorphism};
use crate::mat::Mat;
use crate::spectral::{
    filtration_by_spectral_sequence, spectral_sequence_bicomplex, Orientation,
    SpectralSequence,
};
use std::collections::BTreeMap;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TorExtRoute {
    Grothendieck,
    Bifunctor,
}

#[derive(Clone, Debug)]
pub struct GrothendieckResult {
    pub bicomplex: Bicomplex,
    /// spectral sequence of the bicomplex itself (the transposed display)
    pub first: SpectralSequence,
    /// spectral sequence of the transposed bicomplex, carrying the filtration
    pub second: SpectralSequence,
    pub total_degree: i64,
    pub total_homology: FPModule,
    /// ascending system in internal homological degrees
    pub filtration: FiltrationSystem,
}

impl GrothendieckResult {
    pub fn cohomological(&self) -> bool {
        self.bicomplex.cohomological
    }

    /// Degrees as displayed: identical to the internal ones for homological
    /// sequences, reflected for cohomological ones (descending filtration).
    pub fn display_degrees(&self) -> Vec<i64> {
        if self.cohomological() {
            self.filtration.degrees.iter().map(|&p| -p).collect()
        } else {
            self.filtration.degrees.clone()
        }
    }
}

/// The Grothendieck bicomplex `F(CE(G(P_.)))` for a module `M`.
pub fn grothendieck_bicomplex(
    f: &FunctorSpec,
    g: &FunctorSpec,
    m: &FPModule,
) -> Result<Bicomplex> {
    if !g.contravariant() {
        return Err(Error::FunctorPair(
            "the inner functor must be contravariant".into(),
        ));
    }
    let ring = m.ring().clone();
    let res = resolution_tight(m);
    let t = {
        let mut l = res.differentials.len();
        while l > 0 && res.differentials[l - 1].rows() == 0 {
            l -= 1;
        }
        l
    };
    // the cocomplex Q^p = G(P_p)
    let mut objects = Vec::with_capacity(t + 1);
    let mut maps = Vec::with_capacity(t);
    for p in 0..=t {
        objects.push(g.on_free(&ring, res.rank(p)));
    }
    for p in 0..t {
        let gm = g.on_free_map(&ring, &res.differentials[p]);
        // endpoints agree with objects by construction
        maps.push(ModuleMorphism::new(
            objects[p].clone(),
            objects[p + 1].clone(),
            gm.matrix().clone(),
        )?);
    }
    let ce = cartan_eilenberg_cochain(&objects, &maps)?;

    let sign = |p: usize, mat: &Mat| -> Mat {
        if p % 2 == 1 {
            mat.neg()
        } else {
            mat.clone()
        }
    };

    if f.contravariant() {
        // homological bicomplex in the fourth quadrant
        let mut objs = BTreeMap::new();
        let mut vert = BTreeMap::new();
        let mut horiz = BTreeMap::new();
        for p in 0..=t {
            let col = &ce.columns[p];
            for i in 0..=col.len() {
                if col.rank(i) == 0 {
                    continue;
                }
                let obj = f.on_free(&ring, col.rank(i));
                if obj.is_zero() {
                    continue;
                }
                objs.insert((p as i64, -(i as i64)), obj);
            }
        }
        for p in 0..=t {
            let col = &ce.columns[p];
            for i in 0..=col.len() {
                let q = -(i as i64);
                // vertical: F of the column differential entering level i
                let d = col.diff(i + 1);
                if d.rows() > 0 && col.rank(i) > 0 {
                    let fm = f.on_free_map(&ring, &d);
                    let mat = sign(p, fm.matrix());
                    if objs.contains_key(&(p as i64, q)) && objs.contains_key(&(p as i64, q - 1)) {
                        vert.insert(
                            (p as i64, q),
                            ModuleMorphism::new(
                                objs[&(p as i64, q)].clone(),
                                objs[&(p as i64, q - 1)].clone(),
                                mat,
                            )?,
                        );
                    }
                }
                // horizontal: F of the chain map from column p-1 into column p
                if p > 0 {
                    let h = &ce.horiz[p - 1];
                    if i < h.len() {
                        let hm = &h[i];
                        if hm.rows() > 0 && hm.cols() > 0 {
                            let fm = f.on_free_map(&ring, hm);
                            if objs.contains_key(&(p as i64, q))
                                && objs.contains_key(&((p - 1) as i64, q))
                            {
                                horiz.insert(
                                    (p as i64, q),
                                    ModuleMorphism::new(
                                        objs[&(p as i64, q)].clone(),
                                        objs[&((p - 1) as i64, q)].clone(),
                                        fm.matrix().clone(),
                                    )?,
                                );
                            }
                        }
                    }
                }
            }
        }
        Bicomplex::new(ring, objs, vert, horiz)
    } else {
        // cohomological bicomplex in the fourth quadrant
        let mut objs = BTreeMap::new();
        let mut vert_up = BTreeMap::new();
        let mut horiz_right = BTreeMap::new();
        for p in 0..=t {
            let col = &ce.columns[p];
            for i in 0..=col.len() {
                if col.rank(i) == 0 {
                    continue;
                }
                let obj = f.on_free(&ring, col.rank(i));
                if obj.is_zero() {
                    continue;
                }
                objs.insert((p as i64, -(i as i64)), obj);
            }
        }
        for p in 0..=t {
            let col = &ce.columns[p];
            for i in 0..=col.len() {
                let q = -(i as i64);
                // vertical up: F(d_i: P_i -> P_{i-1}) from level i to i-1
                if i >= 1 {
                    let d = col.diff(i);
                    if d.rows() > 0
                        && objs.contains_key(&(p as i64, q))
                        && objs.contains_key(&(p as i64, q + 1))
                    {
                        let fm = f.on_free_map(&ring, &d);
                        let mat = sign(p, fm.matrix());
                        vert_up.insert(
                            (p as i64, q),
                            ModuleMorphism::new(
                                objs[&(p as i64, q)].clone(),
                                objs[&(p as i64, q + 1)].clone(),
                                mat,
                            )?,
                        );
                    }
                }
                // horizontal right: F(H^p_i)
                if p < t {
                    let h = &ce.horiz[p];
                    if i < h.len() {
                        let hm = &h[i];
                        if hm.rows() > 0
                            && hm.cols() > 0
                            && objs.contains_key(&(p as i64, q))
                            && objs.contains_key(&((p + 1) as i64, q))
                        {
                            let fm = f.on_free_map(&ring, hm);
                            horiz_right.insert(
                                (p as i64, q),
                                ModuleMorphism::new(
                                    objs[&(p as i64, q)].clone(),
                                    objs[&((p + 1) as i64, q)].clone(),
                                    fm.matrix().clone(),
                                )?,
                            );
                        }
                    }
                }
            }
        }
        Bicomplex::new_cohomological(ring, objs, vert_up, horiz_right)
    }
}

/// Both spectral sequences of the Grothendieck bicomplex together with the
/// induced filtration of the total (co)homology at the requested degree.
pub fn grothendieck_spectral_sequence(
    f: &FunctorSpec,
    g: &FunctorSpec,
    m: &FPModule,
    total_degree: i64,
) -> Result<GrothendieckResult> {
    let b = grothendieck_bicomplex(f, g, m)?;
    result_from_bicomplex(b, total_degree)
}

fn result_from_bicomplex(b: Bicomplex, total_degree: i64) -> Result<GrothendieckResult> {
    let first = spectral_sequence_bicomplex(&b, Orientation::First)?;
    let second = spectral_sequence_bicomplex(&b, Orientation::Second)?;
    let internal_degree = if b.cohomological { -total_degree } else { total_degree };
    let (h, filtration) = filtration_by_spectral_sequence(&second, internal_degree)?;
    Ok(GrothendieckResult {
        bicomplex: b,
        first,
        second,
        total_degree,
        total_homology: h,
        filtration,
    })
}

/// Double-Ext spectral sequence `Ext^{-p}(Ext^q(M, D), L) => Tor_{p+q}(L, M)`.
pub fn double_ext_ss(m: &FPModule, l: &FPModule, total_degree: i64) -> Result<GrothendieckResult> {
    grothendieck_spectral_sequence(
        &FunctorSpec::HomInto(l.clone()),
        &FunctorSpec::DualizeToRing,
        m,
        total_degree,
    )
}

/// Tor-Ext spectral sequence `Tor_{-p}(Ext^q(M, D), N) => Ext^{p+q}(M, N)`,
/// via the Grothendieck bicomplex or the bifunctor bicomplex
/// `Hom(P^M, D) (x) P^N`.
pub fn tor_ext_ss(
    m: &FPModule,
    n: &FPModule,
    total_degree: i64,
    route: TorExtRoute,
) -> Result<GrothendieckResult> {
    match route {
        TorExtRoute::Grothendieck => grothendieck_spectral_sequence(
            &FunctorSpec::TensorWith(n.clone()),
            &FunctorSpec::DualizeToRing,
            m,
            total_degree,
        ),
        TorExtRoute::Bifunctor => {
            let ring = m.ring().clone();
            if n.ring() != &ring {
                return Err(Error::RingMismatch("tor_ext_ss arguments".into()));
            }
            let rm = resolution_tight(m);
            let rn = resolution_tight(n);
            let tm = rm.length();
            let tn = rn.length();
            let mut objs = BTreeMap::new();
            let mut vert_up = BTreeMap::new();
            let mut horiz_right = BTreeMap::new();
            for p in 0..=tm as i64 {
                for j in 0..=tn as i64 {
                    let rank = rm.rank(p as usize) * rn.rank(j as usize);
                    if rank == 0 {
                        continue;
                    }
                    objs.insert((p, -j), FPModule::free(ring.clone(), rank));
                }
            }
            for (&(p, q), obj) in &objs {
                let j = (-q) as usize;
                // vertical up: id (x) d^N_j, with the sign trick on column p
                if j >= 1 && objs.contains_key(&(p, q + 1)) {
                    let dn = &rn.differentials[j - 1];
                    let mat = Mat::identity(ring.clone(), rm.rank(p as usize)).kronecker(dn);
                    let mat = if p % 2 == 1 { mat.neg() } else { mat };
                    vert_up.insert(
                        (p, q),
                        ModuleMorphism::new(obj.clone(), objs[&(p, q + 1)].clone(), mat)?,
                    );
                }
                // horizontal right: Hom(d^M_{p+1}, D) (x) id
                if (p as usize) < tm && objs.contains_key(&(p + 1, q)) {
                    let dm = &rm.differentials[p as usize];
                    let mat = dm
                        .transpose()
                        .kronecker(&Mat::identity(ring.clone(), rn.rank(j)));
                    horiz_right.insert(
                        (p, q),
                        ModuleMorphism::new(obj.clone(), objs[&(p + 1, q)].clone(), mat)?,
                    );
                }
            }
            let b = Bicomplex::new_cohomological(ring, objs, vert_up, horiz_right)?;
            result_from_bicomplex(b, total_degree)
        }
    }
}

/// One graded part of a purity filtration.
#[derive(Clone, Debug)]
pub struct PurityPart {
    /// filtration degree `-c` (codimension `c`)
    pub degree: i64,
    pub module: FPModule,
    pub grade: Option<usize>,
    /// higher evaluation map into the page-2 object (the reflexive hull)
    pub higher_evaluation: GeneralizedMorphism,
    /// codegree of purity of the part; `None` encodes infinity
    pub codegree: Option<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct PurityReport {
    pub module: FPModule,
    pub filtration: FiltrationSystem,
    pub parts: Vec<PurityPart>,
    pub is_pure: bool,
    pub is_reflexively_pure: bool,
    pub result: GrothendieckResult,
}

fn iso_as_generalized(e: &GeneralizedMorphism) -> bool {
    e.aid().is_zero() && e.is_generalized_mono() && {
        let id = Mat::identity(e.target().ring().clone(), e.target().ngens());
        crate::kernel::rows_in_span(&id, e.combined_image().basis())
    }
}

/// Fingerprint used for page comparisons: rank plus Fitting ideals 0..2.
fn page_fingerprint(m: &FPModule) -> (usize, Vec<Mat>) {
    let fits = (0..3).map(|i| m.fitting_ideal(i).basis().clone()).collect();
    (m.rank(), fits)
}

/// Codegree of purity from the pages of a bidualizing run at one spot.
fn codegree_from_pages(ss: &SpectralSequence, c: i64) -> Vec<usize> {
    let spot = (-c, c);
    let stable = ss.stable_level().max(2);
    let mut drops = Vec::new();
    for a in 2..stable {
        let cur = ss.object_at(a, spot);
        let next = ss.object_at(a + 1, spot);
        let differ = match (cur.is_zero(), next.is_zero()) {
            (true, true) => false,
            (x, y) if x != y => true,
            _ => page_fingerprint(&cur) != page_fingerprint(&next),
        };
        if differ {
            drops.push(a);
        }
    }
    if drops.is_empty() {
        return vec![0];
    }
    let mut tuple = Vec::with_capacity(drops.len());
    tuple.push(drops[0] - 1);
    for w in drops.windows(2) {
        tuple.push(w[1] - w[0]);
    }
    tuple
}

/// The purity filtration of `M` from the bidualizing spectral sequence,
/// with higher evaluation maps and per-part codegrees.
pub fn purity_filtration(m: &FPModule) -> Result<PurityReport> {
    purity_filtration_inner(m, true)
}

fn purity_filtration_inner(m: &FPModule, with_codegree: bool) -> Result<PurityReport> {
    let ring = m.ring().clone();
    let d = FPModule::free(ring.clone(), 1);
    let result = double_ext_ss(m, &d, 0)?;
    let mut parts = Vec::new();
    let mut nonzero = 0usize;
    for (idx, &p) in result.filtration.degrees.iter().enumerate() {
        let _c = -p;
        let eps = &result.filtration.embeddings[idx];
        let part = eps.source().clone();
        let spot = (p, -p);
        let stable = result.second.stable_level();
        let higher = result
            .second
            .relative_embedding_chain(spot, stable, 2.min(stable))?;
        let grade = crate::functors::grade(&part);
        let codegree = if part.is_zero() {
            Some(vec![0])
        } else if with_codegree {
            codegree_of_purity(&part)?
        } else {
            None
        };
        if !part.is_zero() {
            nonzero += 1;
        }
        parts.push(PurityPart {
            degree: p,
            module: part,
            grade,
            higher_evaluation: higher,
            codegree,
        });
    }
    let is_pure = nonzero <= 1;
    let is_reflexively_pure = if nonzero == 0 {
        true
    } else if !is_pure {
        false
    } else {
        let part = parts.iter().find(|p| !p.module.is_zero()).unwrap();
        iso_as_generalized(&part.higher_evaluation)
    };
    Ok(PurityReport {
        module: m.clone(),
        filtration: result.filtration.clone(),
        parts,
        is_pure,
        is_reflexively_pure,
        result,
    })
}

/// Codegree of purity; `None` encodes infinity (module not pure).
pub fn codegree_of_purity(m: &FPModule) -> Result<Option<Vec<usize>>> {
    if m.is_zero() {
        return Ok(Some(vec![0]));
    }
    let ring = m.ring().clone();
    let d = FPModule::free(ring.clone(), 1);
    let result = double_ext_ss(m, &d, 0)?;
    // count nonzero stable parts
    let mut nonzero_c = None;
    let mut count = 0;
    for &p in &result.filtration.degrees {
        let spot = (p, -p);
        if !result
            .second
            .object_at(result.second.stable_level(), spot)
            .is_zero()
        {
            count += 1;
            nonzero_c = Some(-p);
        }
    }
    if count > 1 {
        return Ok(None);
    }
    let c = match nonzero_c {
        None => return Ok(Some(vec![0])),
        Some(c) => c,
    };
    Ok(Some(codegree_from_pages(&result.second, c)))
}

/// `(is_pure, is_reflexively_pure)`.
pub fn purity_predicates(m: &FPModule) -> Result<(bool, bool)> {
    let report = purity_filtration_inner(m, false)?;
    Ok((report.is_pure, report.is_reflexively_pure))
}

/// The higher evaluation map at codimension `c`.
pub fn higher_evaluation(m: &FPModule, c: usize) -> Result<GeneralizedMorphism> {
    if c > m.ring().global_dimension() {
        return Err(Error::Math(format!("codimension {c} out of range")));
    }
    let report = purity_filtration_inner(m, false)?;
    let part = report
        .parts
        .iter()
        .find(|p| p.degree == -(c as i64))
        .ok_or_else(|| Error::Math("codimension outside the filtration window".into()))?;
    Ok(part.higher_evaluation.clone())
}

/// Convenience: a submodule handle on the free rank-one module for a list of
/// ideal generators.
pub fn principal_ideal(ring: &crate::ring::Ring, gens: &Mat) -> Submodule {
    Submodule::new(&FPModule::free(ring.clone(), 1), gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_matrix;
    use crate::ring::Ring;

    #[test]
    fn bidualizing_of_cyclic_codim3() {
        // D/<x,y,z> is reflexively pure of codimension 3
        let r = Ring::parse("QQ[x,y,z]").unwrap();
        let m = FPModule::new(parse_matrix("[ x, y, z ]", 3, 1, &r).unwrap());
        let report = purity_filtration(&m).unwrap();
        assert!(report.is_pure);
        assert!(report.is_reflexively_pure);
        let viol = report.filtration.validate();
        assert!(viol.is_empty(), "{viol:?}");
        // only the degree -3 part is nonzero and it is M itself
        for part in &report.parts {
            if part.degree == -3 {
                assert!(!part.module.is_zero());
                assert_eq!(part.grade, Some(3));
                assert_eq!(
                    part.module.fitting_ideal(0).basis(),
                    m.fitting_ideal(0).basis()
                );
                assert_eq!(part.codegree, Some(vec![0]));
            } else {
                assert!(part.module.is_zero(), "degree {} part", part.degree);
            }
        }
        assert_eq!(codegree_of_purity(&m).unwrap(), Some(vec![0]));
    }

    #[test]
    fn bidualizing_converges_to_m_for_pid_torsion() {
        let r = Ring::parse("QQ[x]").unwrap();
        let m = FPModule::new(parse_matrix("[ x^2 ]", 1, 1, &r).unwrap());
        let report = purity_filtration(&m).unwrap();
        // total homology at degree 0 is isomorphic to M
        let h = &report.result.total_homology;
        assert_eq!(h.rank(), m.rank());
        assert_eq!(h.fitting_ideal(0).basis(), m.fitting_ideal(0).basis());
        // degree -1 part is everything, degree 0 part zero
        for part in &report.parts {
            match part.degree {
                -1 => {
                    assert!(!part.module.is_zero());
                    assert_eq!(part.grade, Some(1));
                }
                0 => assert!(part.module.is_zero()),
                _ => {}
            }
        }
        assert!(report.is_pure);
    }

    #[test]
    fn free_module_is_reflexively_pure() {
        let r = Ring::parse("QQ[x,y]").unwrap();
        let m = FPModule::free(r.clone(), 2);
        let (pure, refl) = purity_predicates(&m).unwrap();
        assert!(pure && refl);
        assert_eq!(codegree_of_purity(&m).unwrap(), Some(vec![0]));
    }
}
