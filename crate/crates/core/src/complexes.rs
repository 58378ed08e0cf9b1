//! Chain complexes of finitely presented modules, homology, and the
//! generalized embedding of homology into the chain object.

use crate::error::{Error, Result};
use crate::fpmod::{subquotient, FPModule, ModuleMorphism, Submodule};
use crate::genmor::GeneralizedMorphism;
use std::collections::BTreeMap;

/// Chain complex: differentials lower the degree by one. Cochain complexes
/// are handled by reflecting degrees at the boundary of the API.
#[derive(Clone, Debug)]
pub struct ComplexOfModules {
    ring: crate::ring::Ring,
    objects: BTreeMap<i64, FPModule>,
    diffs: BTreeMap<i64, ModuleMorphism>,
}

impl ComplexOfModules {
    pub fn new(
        ring: crate::ring::Ring,
        objects: BTreeMap<i64, FPModule>,
        diffs: BTreeMap<i64, ModuleMorphism>,
    ) -> Result<ComplexOfModules> {
        let c = ComplexOfModules { ring, objects, diffs };
        for (&n, d) in &c.diffs {
            if d.source() != &c.object(n) || d.target() != &c.object(n - 1) {
                return Err(Error::Dim(format!("differential at {n} has wrong endpoints")));
            }
            if let Some(next) = c.diffs.get(&(n + 1)) {
                if !next.compose(d)?.is_zero() {
                    return Err(Error::NotComplex(format!(
                        "boundary composite at degree {n} is nonzero"
                    )));
                }
            }
        }
        Ok(c)
    }

    pub fn ring(&self) -> &crate::ring::Ring {
        &self.ring
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.objects.keys().copied().collect()
    }

    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let lo = self.objects.keys().next()?;
        let hi = self.objects.keys().last()?;
        Some((*lo, *hi))
    }

    pub fn object(&self, n: i64) -> FPModule {
        self.objects
            .get(&n)
            .cloned()
            .unwrap_or_else(|| FPModule::zero(self.ring.clone()))
    }

    /// `d_n : C_n -> C_{n-1}`, the zero morphism where absent.
    pub fn diff(&self, n: i64) -> ModuleMorphism {
        self.diffs.get(&n).cloned().unwrap_or_else(|| {
            ModuleMorphism::zero(&self.object(n), &self.object(n - 1))
        })
    }

    pub fn homology(&self, n: i64) -> Result<FPModule> {
        crate::functors::homology_at(&self.diff(n + 1), &self.diff(n))
    }

    /// Homology at `n` together with its generalized embedding into `C_n`:
    /// kernel generators aided by the boundary image.
    pub fn homology_embedding(&self, n: i64) -> Result<(FPModule, GeneralizedMorphism)> {
        let kappa = self.diff(n).kernel_embedding();
        let boundaries = self.diff(n + 1).image_submodule();
        let (h, gens) = subquotient(kappa.matrix(), &boundaries);
        let emb = GeneralizedMorphism::new(h.clone(), self.object(n), gens, boundaries)?;
        Ok((h, emb))
    }
}

/// Ascending filtration of a chain complex by subcomplexes, given as
/// monomorphisms `F_p C_n -> C_n` compatible with the boundary.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    pub complex: ComplexOfModules,
    pub p_lo: i64,
    pub p_hi: i64,
    steps: BTreeMap<(i64, i64), ModuleMorphism>,
}

impl FilteredComplex {
    pub fn new(
        complex: ComplexOfModules,
        p_lo: i64,
        p_hi: i64,
        steps: BTreeMap<(i64, i64), ModuleMorphism>,
    ) -> Result<FilteredComplex> {
        let fc = FilteredComplex { complex, p_lo, p_hi, steps };
        let (n_lo, n_hi) = match fc.complex.degree_range() {
            None => return Ok(fc),
            Some(r) => r,
        };
        for n in n_lo..=n_hi {
            let mut prev: Option<Submodule> = None;
            for p in p_lo..=p_hi {
                let cur = fc.step_submodule(p, n);
                if let Some(prev) = &prev {
                    if !cur.contains(prev) {
                        return Err(Error::Filtration(format!(
                            "filtration not ascending at p={p}, n={n}"
                        )));
                    }
                }
                // compatibility with the boundary
                let d = fc.complex.diff(n);
                let image = cur.basis().mul(d.matrix())?;
                let below = fc.step_submodule(p, n - 1);
                if !below.contains_rows(&image) {
                    return Err(Error::Filtration(format!(
                        "boundary does not respect the filtration at p={p}, n={n}"
                    )));
                }
                prev = Some(cur);
            }
            // exhaustive on top
            let top = fc.step_submodule(p_hi, n);
            if !top.is_full() {
                return Err(Error::Filtration(format!("filtration not exhaustive at n={n}")));
            }
        }
        Ok(fc)
    }

    /// `F_p C_n` as a submodule of `C_n`; empty below the window, full above.
    pub fn step_submodule(&self, p: i64, n: i64) -> Submodule {
        let ambient = self.complex.object(n);
        if p < self.p_lo {
            return Submodule::zero(&ambient);
        }
        if p > self.p_hi {
            return Submodule::full(&ambient);
        }
        match self.steps.get(&(p, n)) {
            Some(f) => f.image_submodule(),
            None => Submodule::full(&ambient),
        }
    }

    /// Number of filtration steps.
    pub fn length(&self) -> usize {
        (self.p_hi - self.p_lo + 1) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::Mat;
    use crate::parse::parse_matrix;
    use crate::ring::Ring;

    #[test]
    fn homology_of_multiplication_complex() {
        // 0 -> D --x--> D -> 0 over QQ[x], concentrated in degrees 1, 0
        let r = Ring::parse("QQ[x]").unwrap();
        let d = FPModule::free(r.clone(), 1);
        let mut objects = BTreeMap::new();
        objects.insert(0, d.clone());
        objects.insert(1, d.clone());
        let mut diffs = BTreeMap::new();
        diffs.insert(
            1,
            ModuleMorphism::new(d.clone(), d.clone(), parse_matrix("[ x ]", 1, 1, &r).unwrap())
                .unwrap(),
        );
        let c = ComplexOfModules::new(r.clone(), objects, diffs).unwrap();
        let h0 = c.homology(0).unwrap();
        let dx = FPModule::new(parse_matrix("[ x ]", 1, 1, &r).unwrap());
        assert_eq!(h0.fitting_ideal(0).basis(), dx.fitting_ideal(0).basis());
        assert!(c.homology(1).unwrap().is_zero());
        // embedding of H_0 into C_0 has aid <x>
        let (h, emb) = c.homology_embedding(0).unwrap();
        assert!(!h.is_zero());
        let aid = crate::fpmod::Submodule::new(&d, &parse_matrix("[ x ]", 1, 1, &r).unwrap());
        assert_eq!(emb.aid().basis(), aid.basis());
        assert!(emb.is_generalized_mono());
    }

    #[test]
    fn exact_complex_has_zero_homology() {
        // 0 -> D --1--> D -> 0
        let r = Ring::rationals();
        let d = FPModule::free(r.clone(), 1);
        let mut objects = BTreeMap::new();
        objects.insert(0, d.clone());
        objects.insert(1, d.clone());
        let mut diffs = BTreeMap::new();
        diffs.insert(1, ModuleMorphism::new(d.clone(), d.clone(), Mat::identity(r.clone(), 1)).unwrap());
        let c = ComplexOfModules::new(r, objects, diffs).unwrap();
        assert!(c.homology(0).unwrap().is_zero());
        assert!(c.homology(1).unwrap().is_zero());
    }
}
