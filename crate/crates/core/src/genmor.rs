//! Generalized morphisms: pairs of an associated morphism into a quotient of
//! the target and a "morphism aid" submodule of the target. They model maps
//! onto subfactors and admit coarsening, composition, lifting (division), and
//! generalized inverses — the machinery every spectral computation runs on.

use crate::error::{Error, Result};
use crate::fpmod::{FPModule, ModuleMorphism, Submodule};
use crate::kernel;
use crate::mat::Mat;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq)]
pub struct GeneralizedMorphism {
    source: FPModule,
    target: FPModule,
    /// matrix of the associated morphism into `target / aid`
    matrix: Mat,
    aid: Submodule,
}

impl GeneralizedMorphism {
    /// Checked constructor: the source relations must map into the aid plus
    /// the target relations.
    pub fn new(
        source: FPModule,
        target: FPModule,
        matrix: Mat,
        aid: Submodule,
    ) -> Result<GeneralizedMorphism> {
        if aid.ambient() != &target {
            return Err(Error::AmbientMismatch("aid must live in the target".into()));
        }
        if matrix.rows() != source.ngens() || matrix.cols() != target.ngens() {
            return Err(Error::Dim("generalized morphism matrix shape".into()));
        }
        let image_of_relations = source.relations().mul(&matrix)?;
        if !kernel::rows_in_span(&image_of_relations, aid.basis()) {
            return Err(Error::IllDefined(
                "source relations do not vanish modulo aid + target relations".into(),
            ));
        }
        Ok(GeneralizedMorphism { source, target, matrix, aid })
    }

    /// An ordinary morphism viewed with trivial aid.
    pub fn from_morphism(f: &ModuleMorphism) -> GeneralizedMorphism {
        GeneralizedMorphism {
            source: f.source().clone(),
            target: f.target().clone(),
            matrix: f.matrix().clone(),
            aid: Submodule::zero(f.target()),
        }
    }

    pub fn identity(m: &FPModule) -> GeneralizedMorphism {
        GeneralizedMorphism::from_morphism(&ModuleMorphism::identity(m))
    }

    pub fn source(&self) -> &FPModule {
        &self.source
    }

    pub fn target(&self) -> &FPModule {
        &self.target
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn aid(&self) -> &Submodule {
        &self.aid
    }

    pub fn has_zero_aid(&self) -> bool {
        self.aid.is_zero()
    }

    /// The associated morphism, with the quotient `target/aid` materialized.
    pub fn associated(&self) -> ModuleMorphism {
        let (quot, _) = self.aid.quotient();
        ModuleMorphism::new(self.source.clone(), quot, self.matrix.clone())
            .expect("associated morphism is well defined by construction")
    }

    /// As an ordinary morphism into the target, when the aid vanishes there.
    pub fn to_morphism(&self) -> Result<ModuleMorphism> {
        ModuleMorphism::new(self.source.clone(), self.target.clone(), self.matrix.clone())
    }

    /// Combined image: the full preimage in the target of the image of the
    /// associated map; contains the aid.
    pub fn combined_image(&self) -> Submodule {
        let gens = self
            .matrix
            .vstack(self.aid.basis())
            .expect("stack shape");
        Submodule::new(&self.target, &gens)
    }

    /// Kernel of the associated map, embedded in the source.
    pub fn kernel_embedding(&self) -> ModuleMorphism {
        self.associated().kernel_embedding()
    }

    pub fn is_generalized_mono(&self) -> bool {
        self.kernel_embedding().source().is_zero()
    }

    pub fn is_generalized_epi(&self) -> bool {
        let id = Mat::identity(self.target.ring().clone(), self.target.ngens());
        kernel::rows_in_span(&id, self.combined_image().basis())
    }

    pub fn is_generalized_iso(&self) -> bool {
        self.is_generalized_epi() && self.is_generalized_mono()
    }

    /// Enlarge the aid to `l`; errors unless `aid <= l`.
    pub fn coarsen(&self, l: &Submodule) -> Result<GeneralizedMorphism> {
        if l.ambient() != &self.target {
            return Err(Error::AmbientMismatch("coarsening aid ambient".into()));
        }
        if !l.contains(&self.aid) {
            return Err(Error::Math("coarsening must enlarge the aid".into()));
        }
        Ok(GeneralizedMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.clone(),
            aid: l.clone(),
        })
    }

    /// A coarsening is effective when it does not enlarge the image seen
    /// inside the new aid: `Img(self) cap l = aid`.
    pub fn coarsening_is_effective(&self, l: &Submodule) -> Result<bool> {
        let meet = self.combined_image().intersect(l)?;
        Ok(meet.basis() == self.aid.basis())
    }

    /// Composition `self . phi` (first `phi`, then `self`).
    pub fn compose_after(&self, phi: &GeneralizedMorphism) -> Result<GeneralizedMorphism> {
        if phi.target != self.source {
            return Err(Error::Dim("generalized composition chain mismatch".into()));
        }
        let matrix = phi.matrix.mul(&self.matrix)?;
        // aid = psi(aid(phi)) + aid(psi)
        let pushed = phi.aid.basis().mul(&self.matrix)?;
        let gens = pushed.vstack(self.aid.basis())?;
        let aid = Submodule::new(&self.target, &gens);
        GeneralizedMorphism::new(phi.source.clone(), self.target.clone(), matrix, aid)
    }

    /// Sum; requires equal aids.
    pub fn add(&self, other: &GeneralizedMorphism) -> Result<GeneralizedMorphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Dim("sum endpoints mismatch".into()));
        }
        if self.aid.basis() != other.aid.basis() {
            return Err(Error::AidMismatch("summands have different aids".into()));
        }
        Ok(GeneralizedMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.add(&other.matrix)?,
            aid: self.aid.clone(),
        })
    }

    pub fn neg(&self) -> GeneralizedMorphism {
        GeneralizedMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.neg(),
            aid: self.aid.clone(),
        }
    }

    pub fn sub(&self, other: &GeneralizedMorphism) -> Result<GeneralizedMorphism> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Poly) -> GeneralizedMorphism {
        GeneralizedMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.scale(c),
            aid: self.aid.clone(),
        }
    }

    pub fn is_zero_morphism(&self) -> bool {
        kernel::rows_in_span(&self.matrix, self.aid.basis())
    }

    /// Quasi-equality: equality up to effective common coarsening.
    pub fn quasi_equal(&self, other: &GeneralizedMorphism) -> Result<bool> {
        if self.source != other.source || self.target != other.target {
            return Ok(false);
        }
        let l = self.aid.sum(&other.aid)?;
        let diff = self.matrix.sub(&other.matrix)?;
        if !kernel::rows_in_span(&diff, l.basis()) {
            return Ok(false);
        }
        Ok(self.coarsening_is_effective(&l)? && other.coarsening_is_effective(&l)?)
    }
}

/// The lifting condition: does `beta` lift (divide) `gamma`? Both conditions
/// of the definition are checked: (im) the combined image of the common
/// coarsening of `beta` contains that of `gamma`, and (eff) the coarsening of
/// `gamma` is effective.
pub fn lifts(beta: &GeneralizedMorphism, gamma: &GeneralizedMorphism) -> Result<bool> {
    if beta.target != gamma.target {
        return Err(Error::Dim("lifting condition needs a common target".into()));
    }
    let l = beta.aid.sum(&gamma.aid)?;
    let im_beta = beta.combined_image().sum(&l)?;
    let im_gamma = gamma.combined_image().sum(&l)?;
    if !im_beta.contains(&im_gamma) {
        return Ok(false);
    }
    gamma.coarsening_is_effective(&l)
}

/// The unique lift `alpha` of `gamma` along `beta` normalized by
/// `Img(alpha) = assoc(beta)^{-1}(Img(coarsened gamma))` and
/// `aid(alpha) = assoc(beta)^{-1}(common aid)`.
///
/// Only the image condition is required for the construction; the
/// generalized inverse applies this with `gamma = id`, whose coarsening is
/// not effective for a nonzero aid.
pub fn lift(gamma: &GeneralizedMorphism, beta: &GeneralizedMorphism) -> Result<GeneralizedMorphism> {
    if beta.target != gamma.target {
        return Err(Error::Dim("lift needs a common target".into()));
    }
    let l = beta.aid.sum(&gamma.aid)?;
    // express every generator image of gamma over (beta matrix | l-basis)
    let blocks = kernel::express_rows(&gamma.matrix, &[&beta.matrix, l.basis()])?;
    let x = match blocks {
        None => {
            return Err(Error::Lift(
                "combined image of gamma is not contained in that of beta".into(),
            ))
        }
        Some(b) => b[0].clone(),
    };
    // aid(alpha): preimage of l under the matrix of beta
    let pre = crate::fpmod::relative_kernel_generators(&beta.matrix, l.basis());
    let aid = Submodule::new(&beta.source, &pre);
    GeneralizedMorphism::new(gamma.source.clone(), beta.source.clone(), x, aid)
}

/// Generalized inverse of a generalized epimorphism: `psi^{-1} = lift(id, psi)`,
/// satisfying `psi^{-1} . psi = (id_S, ker psi)` and
/// `psi . psi^{-1} = (id_T, aid psi)`.
pub fn generalized_inverse(psi: &GeneralizedMorphism) -> Result<GeneralizedMorphism> {
    if !psi.is_generalized_epi() {
        return Err(Error::NotEpi("generalized inverse needs a generalized epimorphism".into()));
    }
    lift(&GeneralizedMorphism::identity(&psi.target), psi)
}

/// A finite chain of generalized embeddings with common target encoding a
/// filtration by submodules.
#[derive(Clone, Debug)]
pub struct FiltrationSystem {
    pub degrees: Vec<i64>,
    pub embeddings: Vec<GeneralizedMorphism>,
    pub ascending: bool,
    pub target: FPModule,
}

impl FiltrationSystem {
    pub fn len(&self) -> usize {
        self.embeddings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.embeddings.is_empty()
    }

    /// Check the defining conditions; returns human-readable violations.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.degrees.len() != self.embeddings.len() {
            out.push("degree and embedding counts differ".to_string());
            return out;
        }
        for w in self.degrees.windows(2) {
            if w[1] != w[0] + 1 {
                out.push(format!("degrees not consecutive at {} -> {}", w[0], w[1]));
            }
        }
        for (d, e) in self.degrees.iter().zip(&self.embeddings) {
            if e.target() != &self.target {
                out.push(format!("embedding at degree {d} has a different target"));
            }
            if !e.is_generalized_mono() {
                out.push(format!("embedding at degree {d} is not a generalized monomorphism"));
            }
        }
        // orient so that checks read along increasing combined image
        let order: Vec<usize> = if self.ascending {
            (0..self.embeddings.len()).collect()
        } else {
            (0..self.embeddings.len()).rev().collect()
        };
        if let Some(&first) = order.first() {
            if !self.embeddings[first].has_zero_aid() {
                out.push("lowest embedding must be an ordinary monomorphism".to_string());
            }
        }
        if let Some(&last) = order.last() {
            if !self.embeddings[last].is_generalized_epi() {
                out.push("highest embedding must be a generalized isomorphism".to_string());
            }
        }
        for k in 1..order.len() {
            let prev = &self.embeddings[order[k - 1]];
            let cur = &self.embeddings[order[k]];
            if cur.aid().basis() != prev.combined_image().basis() {
                out.push(format!(
                    "aid at step {k} is not the previous combined image"
                ));
            }
        }
        out
    }

    /// Combined images in ascending order — the filtration submodules.
    pub fn filtration_submodules(&self) -> Vec<(i64, Submodule)> {
        self.degrees
            .iter()
            .zip(&self.embeddings)
            .map(|(d, e)| (*d, e.combined_image()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_matrix;
    use crate::ring::Ring;

    fn qx() -> Ring {
        Ring::parse("QQ[x]").unwrap()
    }

    #[test]
    fn geninv_of_natural_epi() {
        // D -> D/<x>: generalized inverse is a generalized iso with aid <x>
        let r = qx();
        let d = FPModule::free(r.clone(), 1);
        let dx = FPModule::new(parse_matrix("[ x ]", 1, 1, &r).unwrap());
        let pi = GeneralizedMorphism::from_morphism(
            &ModuleMorphism::new(d.clone(), dx.clone(), Mat::identity(r.clone(), 1)).unwrap(),
        );
        let inv = generalized_inverse(&pi).unwrap();
        assert_eq!(inv.source(), &dx);
        assert_eq!(inv.target(), &d);
        let x_ideal = Submodule::new(&d, &parse_matrix("[ x ]", 1, 1, &r).unwrap());
        assert_eq!(inv.aid().basis(), x_ideal.basis());
        assert!(inv.is_generalized_iso());

        // psi^{-1} . psi = (id_S, ker psi): here ker pi = <x> in D
        let c1 = inv.compose_after(&pi).unwrap();
        assert_eq!(c1.source(), &d);
        assert_eq!(c1.target(), &d);
        assert_eq!(c1.aid().basis(), x_ideal.basis());
        let d_id = Mat::identity(r.clone(), 1);
        assert!(kernel::rows_in_span(
            &c1.matrix().sub(&d_id).unwrap(),
            c1.aid().basis()
        ));

        // psi . psi^{-1} = (id_T, aid psi) with aid psi = 0
        let c2 = pi.compose_after(&inv).unwrap();
        assert!(c2.aid().is_zero());
        assert!(kernel::rows_in_span(
            &c2.matrix().sub(&Mat::identity(r.clone(), 1)).unwrap(),
            dx.relations()
        ));
    }

    #[test]
    fn lifting_through_identity() {
        let r = qx();
        let d = FPModule::free(r.clone(), 2);
        let id = GeneralizedMorphism::identity(&d);
        let f = GeneralizedMorphism::new(
            FPModule::free(r.clone(), 1),
            d.clone(),
            parse_matrix("[ x, 1 ]", 1, 2, &r).unwrap(),
            Submodule::zero(&d),
        )
        .unwrap();
        assert!(lifts(&id, &f).unwrap());
        let a = lift(&f, &id).unwrap();
        assert!(a.quasi_equal(&f).unwrap() || a.matrix() == f.matrix());
        // zero map lifts nothing nonzero
        let z = GeneralizedMorphism::new(
            FPModule::free(r.clone(), 1),
            d.clone(),
            Mat::zero(r.clone(), 1, 2),
            Submodule::zero(&d),
        )
        .unwrap();
        assert!(!lifts(&z, &f).unwrap());
    }

    #[test]
    fn coarsening_effectiveness() {
        let r = qx();
        let d = FPModule::free(r.clone(), 1);
        // identity D -> D, aid 0, coarsened by <x>: Img cap <x> = <x> != 0
        let id = GeneralizedMorphism::identity(&d);
        let lx = Submodule::new(&d, &parse_matrix("[ x ]", 1, 1, &r).unwrap());
        assert!(!id.coarsening_is_effective(&lx).unwrap());
        let zero = Submodule::zero(&d);
        assert!(id.coarsening_is_effective(&zero).unwrap());
        // coarsen by own aid is always effective
        assert!(id.coarsening_is_effective(id.aid()).unwrap());
        // mult-by-x embedding coarsened by <x^2> is not effective either:
        // Img = <x> and <x> cap <x^2> = <x^2> != 0
        let mx = GeneralizedMorphism::new(
            d.clone(),
            d.clone(),
            parse_matrix("[ x ]", 1, 1, &r).unwrap(),
            Submodule::zero(&d),
        )
        .unwrap();
        let lx2 = Submodule::new(&d, &parse_matrix("[ x^2 ]", 1, 1, &r).unwrap());
        assert!(!mx.coarsening_is_effective(&lx2).unwrap());
    }

    #[test]
    fn add_requires_equal_aids() {
        let r = qx();
        let d = FPModule::free(r.clone(), 1);
        let lx = Submodule::new(&d, &parse_matrix("[ x ]", 1, 1, &r).unwrap());
        let a = GeneralizedMorphism::new(
            d.clone(),
            d.clone(),
            parse_matrix("[ x^2 ]", 1, 1, &r).unwrap(),
            lx.clone(),
        )
        .unwrap();
        let b = GeneralizedMorphism::new(
            d.clone(),
            d.clone(),
            parse_matrix("[ x^3 ]", 1, 1, &r).unwrap(),
            Submodule::zero(&d),
        )
        .unwrap();
        assert!(a.add(&b).is_err());
        let s = a.add(&a.neg()).unwrap();
        assert!(s.is_zero_morphism());
        assert_eq!(s.aid().basis(), lx.basis());
    }

    #[test]
    fn geninv_double_inverse() {
        // geninv(geninv(pi)) quasi-equal to pi for an ordinary epi pi
        let r = qx();
        let d = FPModule::free(r.clone(), 1);
        let dx2 = FPModule::new(parse_matrix("[ x^2 ]", 1, 1, &r).unwrap());
        let pi = GeneralizedMorphism::from_morphism(
            &ModuleMorphism::new(d.clone(), dx2.clone(), Mat::identity(r.clone(), 1)).unwrap(),
        );
        let inv = generalized_inverse(&pi).unwrap();
        let back = generalized_inverse(&inv).unwrap();
        assert!(back.quasi_equal(&pi).unwrap());
    }
}
