//! Finitely presented modules as cokernel presentations, morphisms between
//! presentations, and submodule arithmetic.
//!
//! A module is the cokernel of its relations matrix: `p` relations among `q`
//! generators. Morphisms act on generator rows by right multiplication.

use crate::error::{Error, Result};
use crate::kernel;
use crate::mat::Mat;
use crate::poly::Poly;
use crate::ring::Ring;
use std::sync::Arc;

#[derive(Debug)]
struct FPInner {
    ring: Ring,
    relations: Mat,
    name: Option<String>,
}

/// Finitely presented module `coker(relations)`.
#[derive(Clone, Debug)]
pub struct FPModule(Arc<FPInner>);

impl PartialEq for FPModule {
    fn eq(&self, other: &Self) -> bool {
        self.0.ring == other.0.ring && self.0.relations == other.0.relations
    }
}
impl Eq for FPModule {}

impl FPModule {
    pub fn new(relations: Mat) -> FPModule {
        let ring = relations.ring().clone();
        FPModule(Arc::new(FPInner { ring, relations, name: None }))
    }

    pub fn with_name(relations: Mat, name: impl Into<String>) -> FPModule {
        let ring = relations.ring().clone();
        FPModule(Arc::new(FPInner { ring, relations, name: Some(name.into()) }))
    }

    /// Free module of the given rank.
    pub fn free(ring: Ring, rank: usize) -> FPModule {
        FPModule::new(Mat::zero(ring, 0, rank))
    }

    pub fn zero(ring: Ring) -> FPModule {
        FPModule::new(Mat::zero(ring, 0, 0))
    }

    pub fn ring(&self) -> &Ring {
        &self.0.ring
    }

    pub fn relations(&self) -> &Mat {
        &self.0.relations
    }

    pub fn name(&self) -> Option<&str> {
        self.0.name.as_deref()
    }

    /// Number of generators in this presentation.
    pub fn ngens(&self) -> usize {
        self.0.relations.cols()
    }

    pub fn is_zero(&self) -> bool {
        if self.ngens() == 0 {
            return true;
        }
        let id = Mat::identity(self.0.ring.clone(), self.ngens());
        kernel::rows_in_span(&id, &self.0.relations)
    }

    /// Rank over the fraction field.
    pub fn rank(&self) -> usize {
        self.ngens() - self.0.relations.rank_over_fraction_field()
    }

    /// The `i`-th Fitting ideal: the ideal of `(q - i)`-minors of the
    /// relations matrix, as a submodule of the free rank-one module.
    pub fn fitting_ideal(&self, i: usize) -> Submodule {
        let ring = self.0.ring.clone();
        let ambient = FPModule::free(ring.clone(), 1);
        let q = self.ngens();
        let p = self.0.relations.rows();
        if q <= i {
            // whole ring
            return Submodule::new(&ambient, &Mat::identity(ring, 1));
        }
        let k = q - i;
        if k > p {
            return Submodule::new(&ambient, &Mat::zero(ring, 0, 1));
        }
        let mut minors: Vec<Poly> = Vec::new();
        let rows_choices = combinations(p, k);
        let cols_choices = combinations(q, k);
        for rs in &rows_choices {
            for cs in &cols_choices {
                let sub = Mat::from_fn(ring.clone(), k, k, |a, b| {
                    self.0.relations.at(rs[a], cs[b]).clone()
                });
                let d = sub.determinant();
                if !d.is_zero() {
                    minors.push(d);
                }
            }
        }
        let gens = Mat::new(ring.clone(), minors.len(), 1, minors).unwrap();
        Submodule::new(&ambient, &gens)
    }

    /// Reduce a relations matrix: canonical basis with zero rows dropped.
    pub fn normalized(&self) -> FPModule {
        FPModule::new(kernel::basis_rows(&self.0.relations))
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Morphism of finitely presented modules, given on generators.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMorphism {
    source: FPModule,
    target: FPModule,
    matrix: Mat,
}

impl ModuleMorphism {
    /// Checked constructor: relations of the source must map into relations
    /// of the target.
    pub fn new(source: FPModule, target: FPModule, matrix: Mat) -> Result<ModuleMorphism> {
        if matrix.rows() != source.ngens() || matrix.cols() != target.ngens() {
            return Err(Error::Dim(format!(
                "morphism matrix {}x{} for {} -> {} generators",
                matrix.rows(),
                matrix.cols(),
                source.ngens(),
                target.ngens()
            )));
        }
        if source.ring() != target.ring() {
            return Err(Error::RingMismatch("morphism endpoints".into()));
        }
        let image_of_relations = source.relations().mul(&matrix)?;
        if !kernel::rows_in_span(&image_of_relations, target.relations()) {
            return Err(Error::IllDefined(
                "source relations do not map into target relations".into(),
            ));
        }
        Ok(ModuleMorphism { source, target, matrix })
    }

    pub fn identity(m: &FPModule) -> ModuleMorphism {
        ModuleMorphism {
            source: m.clone(),
            target: m.clone(),
            matrix: Mat::identity(m.ring().clone(), m.ngens()),
        }
    }

    pub fn zero(source: &FPModule, target: &FPModule) -> ModuleMorphism {
        ModuleMorphism {
            source: source.clone(),
            target: target.clone(),
            matrix: Mat::zero(source.ring().clone(), source.ngens(), target.ngens()),
        }
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

    /// `self` then `next`.
    pub fn compose(&self, next: &ModuleMorphism) -> Result<ModuleMorphism> {
        if self.target != next.source {
            return Err(Error::Dim("composition chain mismatch".into()));
        }
        Ok(ModuleMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            matrix: self.matrix.mul(&next.matrix)?,
        })
    }

    pub fn add(&self, other: &ModuleMorphism) -> Result<ModuleMorphism> {
        Ok(ModuleMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.add(&other.matrix)?,
        })
    }

    pub fn neg(&self) -> ModuleMorphism {
        ModuleMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.neg(),
        }
    }

    pub fn is_zero(&self) -> bool {
        kernel::rows_in_span(&self.matrix, self.target.relations())
    }

    pub fn is_mono(&self) -> bool {
        self.kernel_embedding().source().is_zero()
    }

    pub fn is_epi(&self) -> bool {
        let id = Mat::identity(self.target.ring().clone(), self.target.ngens());
        let span = self
            .matrix
            .vstack(self.target.relations())
            .expect("stack shape");
        kernel::rows_in_span(&id, &span)
    }

    pub fn is_iso(&self) -> bool {
        self.is_epi() && self.is_mono()
    }

    /// Monomorphism `K -> source` onto the kernel. The kernel presentation is
    /// computed by two relative-syzygy passes.
    pub fn kernel_embedding(&self) -> ModuleMorphism {
        let gens = relative_kernel_generators(&self.matrix, self.target.relations());
        // reduce generators modulo the source relations and drop zero classes
        let gens = kernel::decide_zero_rows(&gens, self.source.relations())
            .expect("shape")
            .drop_zero_rows();
        let rels = relative_kernel_generators(&gens, self.source.relations());
        let k = FPModule::new(rels);
        ModuleMorphism {
            source: k,
            target: self.source.clone(),
            matrix: gens,
        }
    }

    /// Epi-mono factorization through the image: returns `(pi, mu)` with
    /// `mu . pi = self`, `pi` epi, `mu` mono.
    pub fn image_factorization(&self) -> (ModuleMorphism, ModuleMorphism) {
        let img_rels = relative_kernel_generators(&self.matrix, self.target.relations());
        let img = FPModule::new(img_rels);
        let pi = ModuleMorphism {
            source: self.source.clone(),
            target: img.clone(),
            matrix: Mat::identity(self.source.ring().clone(), self.source.ngens()),
        };
        let mu = ModuleMorphism {
            source: img,
            target: self.target.clone(),
            matrix: self.matrix.clone(),
        };
        (pi, mu)
    }

    /// Cokernel presentation: target relations stacked with the image rows.
    pub fn cokernel(&self) -> FPModule {
        FPModule::new(
            self.matrix
                .vstack(self.target.relations())
                .expect("stack shape"),
        )
    }

    /// Natural epimorphism onto the cokernel.
    pub fn cokernel_projection(&self) -> (FPModule, ModuleMorphism) {
        let c = self.cokernel();
        let proj = ModuleMorphism {
            source: self.target.clone(),
            target: c.clone(),
            matrix: Mat::identity(self.target.ring().clone(), self.target.ngens()),
        };
        (c, proj)
    }

    /// The image as a submodule of the target.
    pub fn image_submodule(&self) -> Submodule {
        Submodule::new(&self.target, &self.matrix)
    }

    /// Factor `self` through a monomorphism `mu` into the same target:
    /// returns `f` with `f . mu = self`.
    pub fn lift_through_mono(&self, mu: &ModuleMorphism) -> Result<ModuleMorphism> {
        if mu.target != self.target {
            return Err(Error::Dim("lift_through_mono target mismatch".into()));
        }
        let blocks = kernel::express_rows(
            &self.matrix,
            &[mu.matrix(), self.target.relations()],
        )?;
        let blocks = blocks.ok_or_else(|| {
            Error::Lift("morphism does not factor through the monomorphism".into())
        })?;
        ModuleMorphism::new(self.source.clone(), mu.source.clone(), blocks[0].clone())
    }
}

/// Generators of `{x : x * m  in  row module of rels}` — the kernel of the
/// induced map on free covers, used for kernels, images, and presentations
/// of subquotients.
pub(crate) fn relative_kernel_generators(m: &Mat, rels: &Mat) -> Mat {
    let stacked = m.vstack(rels).expect("stack shape");
    let syz = kernel::syzygies_rows(&stacked);
    syz.submatrix(0..syz.rows(), 0..m.rows())
}

/// Submodule of a finitely presented module, stored as a canonical basis of
/// generator rows together with the ambient relations.
#[derive(Clone, Debug, PartialEq)]
pub struct Submodule {
    ambient: FPModule,
    /// canonical: `basis_rows(stack(generators, ambient relations))`
    basis: Mat,
}

impl Submodule {
    pub fn new(ambient: &FPModule, generators: &Mat) -> Submodule {
        assert_eq!(generators.cols(), ambient.ngens(), "submodule generator width");
        let stacked = generators
            .vstack(ambient.relations())
            .expect("stack shape");
        Submodule {
            ambient: ambient.clone(),
            basis: kernel::basis_rows(&stacked),
        }
    }

    pub fn zero(ambient: &FPModule) -> Submodule {
        let z = Mat::zero(ambient.ring().clone(), 0, ambient.ngens());
        Submodule::new(ambient, &z)
    }

    pub fn full(ambient: &FPModule) -> Submodule {
        let id = Mat::identity(ambient.ring().clone(), ambient.ngens());
        Submodule::new(ambient, &id)
    }

    pub fn ambient(&self) -> &FPModule {
        &self.ambient
    }

    /// Canonical generator matrix (includes the ambient relations).
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn same_ambient(&self, other: &Submodule) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch("submodules in different ambients".into()));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        kernel::rows_in_span(&self.basis, self.ambient.relations())
    }

    pub fn is_full(&self) -> bool {
        let id = Mat::identity(self.ambient.ring().clone(), self.ambient.ngens());
        kernel::rows_in_span(&id, &self.basis)
    }

    pub fn contains_rows(&self, rows: &Mat) -> bool {
        kernel::rows_in_span(rows, &self.basis)
    }

    pub fn contains(&self, other: &Submodule) -> bool {
        self.contains_rows(&other.basis)
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        self.same_ambient(other)?;
        let gens = self.basis.vstack(&other.basis)?;
        Ok(Submodule::new(&self.ambient, &gens))
    }

    /// Intersection via syzygies of the stacked generator matrices.
    pub fn intersect(&self, other: &Submodule) -> Result<Submodule> {
        self.same_ambient(other)?;
        let stacked = self.basis.vstack(&other.basis)?;
        let syz = kernel::syzygies_rows(&stacked);
        let first = syz.submatrix(0..syz.rows(), 0..self.basis.rows());
        let gens = first.mul(&self.basis)?;
        Ok(Submodule::new(&self.ambient, &gens))
    }

    /// Image `{ f(u) : u in self }` under a morphism out of the ambient.
    pub fn image_under(&self, f: &ModuleMorphism) -> Result<Submodule> {
        if f.source() != &self.ambient {
            return Err(Error::AmbientMismatch("image_under source mismatch".into()));
        }
        let gens = self.basis.mul(f.matrix())?;
        Ok(Submodule::new(f.target(), &gens))
    }

    /// Preimage `{ x : f(x) in self }` under a morphism into the ambient.
    pub fn preimage_under(&self, f: &ModuleMorphism) -> Result<Submodule> {
        if f.target() != &self.ambient {
            return Err(Error::AmbientMismatch("preimage_under target mismatch".into()));
        }
        let gens = relative_kernel_generators(f.matrix(), &self.basis);
        Ok(Submodule::new(f.source(), &gens))
    }

    /// Presentation of `ambient / self` with the natural projection.
    pub fn quotient(&self) -> (FPModule, ModuleMorphism) {
        let q = FPModule::new(self.basis.clone());
        let proj = ModuleMorphism {
            source: self.ambient.clone(),
            target: q.clone(),
            matrix: Mat::identity(self.ambient.ring().clone(), self.ambient.ngens()),
        };
        (q, proj)
    }
}

/// Presentation of the subquotient `span(gens) + B / B` inside the ambient of
/// `B`; returns the module together with its generator rows (reduced modulo
/// `B`) in ambient coordinates.
pub fn subquotient(gens: &Mat, b: &Submodule) -> (FPModule, Mat) {
    let reduced = kernel::decide_zero_rows(gens, b.basis())
        .expect("shape")
        .drop_zero_rows();
    let rels = relative_kernel_generators(&reduced, b.basis());
    (FPModule::new(rels), reduced)
}

/// Iteratively eliminate unit entries from the relations matrix, producing a
/// smaller presentation together with mutually inverse witness morphisms
/// `(iso: M' -> M, inv: M -> M')`.
pub fn smaller_presentation(m: &FPModule) -> (FPModule, ModuleMorphism, ModuleMorphism) {
    let ring = m.ring().clone();
    let mut rels = m.relations().clone();
    // iso: current generators expressed in original generators
    let mut iso = Mat::identity(ring.clone(), m.ngens());
    // inv: original generators expressed in current generators
    let mut inv = Mat::identity(ring.clone(), m.ngens());

    loop {
        rels = rels.drop_zero_rows();
        // leftmost unit in topmost row
        let mut hit = None;
        'scan: for i in 0..rels.rows() {
            for j in 0..rels.cols() {
                if rels.at(i, j).is_unit_constant() {
                    hit = Some((i, j));
                    break 'scan;
                }
            }
        }
        let (i, j) = match hit {
            None => break,
            Some(x) => x,
        };
        let unit = rels.at(i, j).clone();
        let unit_inv = match unit.as_constant() {
            Some(c) => {
                use num_traits::One;
                Poly::constant(ring.nvars(), num_rational::BigRational::one() / c)
            }
            None => unreachable!(),
        };
        // generator j = -unit^{-1} * sum_{c != j} rels[i][c] * gen_c
        let q = rels.cols();
        // substitution matrix on generators: q x (q-1), deleting column j
        let subst = Mat::from_fn(ring.clone(), q, q - 1, |g, c| {
            let cc = if c < j { c } else { c + 1 };
            if g == j {
                rels.at(i, cc).mul(&unit_inv).neg()
            } else if g == cc {
                Poly::one(ring.nvars())
            } else {
                Poly::zero(ring.nvars())
            }
        });
        // new relations: remaining rows with column j eliminated
        let rows: Vec<usize> = (0..rels.rows()).filter(|&r| r != i).collect();
        let remaining = rels.select_rows(&rows);
        rels = remaining.mul(&subst).expect("shape");
        // inclusion of the surviving generators into the previous set
        let include = Mat::from_fn(ring.clone(), q - 1, q, |g, c| {
            let gg = if g < j { g } else { g + 1 };
            if gg == c {
                Poly::one(ring.nvars())
            } else {
                Poly::zero(ring.nvars())
            }
        });
        iso = include.mul(&iso).expect("shape");
        inv = inv.mul(&subst).expect("shape");
    }

    let small = FPModule::new(rels);
    let fwd = ModuleMorphism {
        source: small.clone(),
        target: m.clone(),
        matrix: iso,
    };
    let bwd = ModuleMorphism {
        source: m.clone(),
        target: small.clone(),
        matrix: inv,
    };
    (small, fwd, bwd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_matrix;

    fn qxy() -> Ring {
        Ring::parse("QQ[x,y]").unwrap()
    }

    fn qx() -> Ring {
        Ring::parse("QQ[x]").unwrap()
    }

    #[test]
    fn zero_detection() {
        let r = qx();
        assert!(FPModule::zero(r.clone()).is_zero());
        let unit = FPModule::new(parse_matrix("[ 1 ]", 1, 1, &r).unwrap());
        assert!(unit.is_zero());
        let dx = FPModule::new(parse_matrix("[ x ]", 1, 1, &r).unwrap());
        assert!(!dx.is_zero());
    }

    #[test]
    fn kernel_of_natural_epi() {
        // D -> D/<x> over QQ[x]: kernel is <x> = D, embedding [x]
        let r = qx();
        let d = FPModule::free(r.clone(), 1);
        let dx = FPModule::new(parse_matrix("[ x ]", 1, 1, &r).unwrap());
        let epi = ModuleMorphism::new(d.clone(), dx, Mat::identity(r.clone(), 1)).unwrap();
        let k = epi.kernel_embedding();
        assert_eq!(k.matrix(), &parse_matrix("[ x ]", 1, 1, &r).unwrap());
        assert!(k.source().relations().rows() == 0 || k.source().relations().is_zero());
        // identity has zero kernel
        let id = ModuleMorphism::identity(&d);
        assert!(id.kernel_embedding().source().is_zero());
    }

    #[test]
    fn kernel_of_free_row() {
        // D^1 -> D^2 by [x, y] over QQ[x,y]: kernel 0
        let r = qxy();
        let d1 = FPModule::free(r.clone(), 1);
        let d2 = FPModule::free(r.clone(), 2);
        let f = ModuleMorphism::new(d1, d2, parse_matrix("[ x, y ]", 1, 2, &r).unwrap()).unwrap();
        assert!(f.kernel_embedding().source().is_zero());
    }

    #[test]
    fn image_factorization_splits() {
        let z = Ring::integers();
        let zz = FPModule::free(z.clone(), 1);
        let two = ModuleMorphism::new(zz.clone(), zz.clone(), parse_matrix("[ 2 ]", 1, 1, &z).unwrap()).unwrap();
        let (pi, mu) = two.image_factorization();
        assert!(pi.is_epi());
        assert!(mu.is_mono());
        assert_eq!(pi.compose(&mu).unwrap().matrix(), two.matrix());
        // image of 2: Z -> Z is free of rank 1
        assert_eq!(mu.source().rank(), 1);
    }

    #[test]
    fn submodule_lattice() {
        let r = qxy();
        let d = FPModule::free(r.clone(), 1);
        let ux = Submodule::new(&d, &parse_matrix("[ x ]", 1, 1, &r).unwrap());
        let uy = Submodule::new(&d, &parse_matrix("[ y ]", 1, 1, &r).unwrap());
        let meet = ux.intersect(&uy).unwrap();
        let expect = Submodule::new(&d, &parse_matrix("[ x*y ]", 1, 1, &r).unwrap());
        assert_eq!(meet.basis(), expect.basis());
        let join = ux.sum(&uy).unwrap();
        assert!(join.contains(&ux) && join.contains(&uy));
        assert_eq!(ux.intersect(&ux).unwrap().basis(), ux.basis());
        let zero = Submodule::zero(&d);
        assert_eq!(ux.intersect(&zero).unwrap().basis(), zero.basis());
        assert_eq!(ux.sum(&zero).unwrap().basis(), ux.basis());
    }

    #[test]
    fn modular_law_instance() {
        // (A + B) cap Z = (A cap Z) + B for B <= Z, over ZZ inside Z^2
        let z = Ring::integers();
        let amb = FPModule::free(z.clone(), 2);
        let b = Submodule::new(&amb, &parse_matrix("[ 4, 0 ]", 1, 2, &z).unwrap());
        let zz = Submodule::new(&amb, &parse_matrix("[ 2, 0, 0, 3 ]", 2, 2, &z).unwrap());
        let a = Submodule::new(&amb, &parse_matrix("[ 1, 1 ]", 1, 2, &z).unwrap());
        assert!(zz.contains(&b));
        let lhs = a.sum(&b).unwrap().intersect(&zz).unwrap();
        let rhs = a.intersect(&zz).unwrap().sum(&b).unwrap();
        assert_eq!(lhs.basis(), rhs.basis());
    }

    #[test]
    fn smaller_presentation_unit_elimination() {
        let r = qx();
        // [[2,1],[0,x]]: unit entry eliminates one generator
        let m = FPModule::new(parse_matrix("[ 2, 1, 0, x ]", 2, 2, &r).unwrap());
        let (small, fwd, bwd) = smaller_presentation(&m);
        assert_eq!(small.ngens(), 1);
        // witnesses are mutually inverse
        let a = fwd.compose(&bwd).unwrap();
        let id_small = ModuleMorphism::identity(&small);
        assert!(kernel::rows_in_span(
            &a.matrix().sub(id_small.matrix()).unwrap(),
            small.relations()
        ));
        let b = bwd.compose(&fwd).unwrap();
        assert!(kernel::rows_in_span(
            &b.matrix().sub(&Mat::identity(r.clone(), 2)).unwrap(),
            m.relations()
        ));
        for i in 0..3 {
            assert_eq!(
                m.fitting_ideal(i).basis(),
                small.fitting_ideal(i).basis(),
                "fitting ideal {i}"
            );
        }
        // trivial module
        let t = FPModule::new(parse_matrix("[ 1 ]", 1, 1, &r).unwrap());
        let (ts, _, _) = smaller_presentation(&t);
        assert!(ts.is_zero());
        // already reduced stays put
        let dx = FPModule::new(parse_matrix("[ x ]", 1, 1, &r).unwrap());
        let (ds, _, _) = smaller_presentation(&dx);
        assert_eq!(ds.relations(), dx.relations());
    }

    #[test]
    fn rank_and_fitting() {
        let r = Ring::parse("QQ[x,y,z]").unwrap();
        let free3 = FPModule::free(r.clone(), 3);
        assert_eq!(free3.rank(), 3);
        let dxyz = FPModule::new(parse_matrix("[ x, y, z ]", 3, 1, &r).unwrap());
        assert_eq!(dxyz.rank(), 0);
        let f0 = dxyz.fitting_ideal(0);
        let expect = Submodule::new(
            &FPModule::free(r.clone(), 1),
            &parse_matrix("[ x, y, z ]", 3, 1, &r).unwrap(),
        );
        assert_eq!(f0.basis(), expect.basis());
        // free module: fitting_0 is the zero ideal
        let ff = FPModule::free(r.clone(), 1);
        assert!(ff.fitting_ideal(0).is_zero());
    }

    #[test]
    fn cokernel_examples() {
        let r = qxy();
        let d2 = FPModule::free(r.clone(), 2);
        let d1 = FPModule::free(r.clone(), 1);
        let f = ModuleMorphism::new(d2, d1, parse_matrix("[ x, y ]", 2, 1, &r).unwrap()).unwrap();
        let c = f.cokernel();
        let expect = FPModule::new(parse_matrix("[ x, y ]", 2, 1, &r).unwrap());
        assert_eq!(
            kernel::basis_rows(c.relations()),
            kernel::basis_rows(expect.relations())
        );
    }
}
