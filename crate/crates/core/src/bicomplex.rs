//! Bounded bicomplexes, the total complex with its block layout, the column
//! filtration, and transposition.
//!
//! Storage is always homological (vertical arrows point down, horizontal
//! arrows point left, squares anticommute); cohomological bicomplexes are
//! reflected at the origin on construction and carry a display flag.

use crate::complexes::{ComplexOfModules, FilteredComplex};
use crate::error::{Error, Result};
use crate::fpmod::{FPModule, ModuleMorphism};
use crate::mat::Mat;
use crate::ring::Ring;
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct Bicomplex {
    ring: Ring,
    /// reflect (p,q) -> (-p,-q) when rendering
    pub cohomological: bool,
    objects: BTreeMap<(i64, i64), FPModule>,
    vert: BTreeMap<(i64, i64), ModuleMorphism>,
    horiz: BTreeMap<(i64, i64), ModuleMorphism>,
}

/// Block layout of one total degree: spots with their generator offsets.
#[derive(Clone, Debug)]
pub struct TotalLayout {
    /// per total degree: (p, q, offset, ngens), ordered by increasing p
    pub blocks: BTreeMap<i64, Vec<(i64, i64, usize, usize)>>,
}

impl Bicomplex {
    /// Homological constructor; validates endpoints, `dd = 0` in both
    /// directions, and anticommutativity of every square.
    pub fn new(
        ring: Ring,
        objects: BTreeMap<(i64, i64), FPModule>,
        vert: BTreeMap<(i64, i64), ModuleMorphism>,
        horiz: BTreeMap<(i64, i64), ModuleMorphism>,
    ) -> Result<Bicomplex> {
        let b = Bicomplex { ring, cohomological: false, objects, vert, horiz };
        b.validate()?;
        Ok(b)
    }

    /// Cohomological constructor: spots `(p,q)` with vertical arrows
    /// `(p,q) -> (p,q+1)` and horizontal `(p,q) -> (p+1,q)`; stored reflected.
    pub fn new_cohomological(
        ring: Ring,
        objects: BTreeMap<(i64, i64), FPModule>,
        vert_up: BTreeMap<(i64, i64), ModuleMorphism>,
        horiz_right: BTreeMap<(i64, i64), ModuleMorphism>,
    ) -> Result<Bicomplex> {
        let objects = objects.into_iter().map(|((p, q), m)| ((-p, -q), m)).collect();
        // an up-arrow at (p,q) becomes the down-arrow at (-p,-q)
        let vert = vert_up
            .into_iter()
            .map(|((p, q), f)| ((-p, -q), f))
            .collect();
        let horiz = horiz_right
            .into_iter()
            .map(|((p, q), f)| ((-p, -q), f))
            .collect();
        let mut b = Bicomplex { ring, cohomological: true, objects, vert, horiz };
        b.validate()?;
        b.cohomological = true;
        Ok(b)
    }

    fn validate(&self) -> Result<()> {
        for (&(p, q), f) in &self.vert {
            if f.source() != &self.object(p, q) || f.target() != &self.object(p, q - 1) {
                return Err(Error::Dim(format!("vertical arrow endpoints at ({p},{q})")));
            }
        }
        for (&(p, q), f) in &self.horiz {
            if f.source() != &self.object(p, q) || f.target() != &self.object(p - 1, q) {
                return Err(Error::Dim(format!("horizontal arrow endpoints at ({p},{q})")));
            }
        }
        for &(p, q) in self.objects.keys() {
            if let Ok(c) = self.vertical(p, q).compose(&self.vertical(p, q - 1)) {
                if !c.is_zero() {
                    return Err(Error::NotComplex(format!("vertical composite at ({p},{q})")));
                }
            }
            if let Ok(c) = self.horizontal(p, q).compose(&self.horizontal(p - 1, q)) {
                if !c.is_zero() {
                    return Err(Error::NotComplex(format!("horizontal composite at ({p},{q})")));
                }
            }
            // anticommutativity on the square at (p,q)
            let via_v = self.vertical(p, q).compose(&self.horizontal(p, q - 1))?;
            let via_h = self.horizontal(p, q).compose(&self.vertical(p - 1, q))?;
            if !via_v.add(&via_h)?.is_zero() {
                return Err(Error::Anticommutativity(format!("square at ({p},{q})")));
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Object in internal homological coordinates; zero where absent.
    pub fn object(&self, p: i64, q: i64) -> FPModule {
        self.objects
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| FPModule::zero(self.ring.clone()))
    }

    pub fn vertical(&self, p: i64, q: i64) -> ModuleMorphism {
        self.vert.get(&(p, q)).cloned().unwrap_or_else(|| {
            ModuleMorphism::zero(&self.object(p, q), &self.object(p, q - 1))
        })
    }

    pub fn horizontal(&self, p: i64, q: i64) -> ModuleMorphism {
        self.horiz.get(&(p, q)).cloned().unwrap_or_else(|| {
            ModuleMorphism::zero(&self.object(p, q), &self.object(p - 1, q))
        })
    }

    /// Bounding box `((p_lo, p_hi), (q_lo, q_hi))` of spots with nonzero
    /// objects, in internal coordinates; `None` for the zero bicomplex.
    pub fn window(&self) -> Option<((i64, i64), (i64, i64))> {
        let mut bounds: Option<((i64, i64), (i64, i64))> = None;
        for (&(p, q), m) in &self.objects {
            if m.is_zero() {
                continue;
            }
            bounds = Some(match bounds {
                None => ((p, p), (q, q)),
                Some(((pl, ph), (ql, qh))) => {
                    ((pl.min(p), ph.max(p)), (ql.min(q), qh.max(q)))
                }
            });
        }
        bounds
    }

    /// All spots carried by the storage (including zero objects).
    pub fn spots(&self) -> Vec<(i64, i64)> {
        self.objects.keys().copied().collect()
    }

    /// Transposed bicomplex: swap coordinates and the two arrow families.
    pub fn transpose(&self) -> Bicomplex {
        let objects = self
            .objects
            .iter()
            .map(|(&(p, q), m)| ((q, p), m.clone()))
            .collect();
        let vert = self
            .horiz
            .iter()
            .map(|(&(p, q), f)| ((q, p), f.clone()))
            .collect();
        let horiz = self
            .vert
            .iter()
            .map(|(&(p, q), f)| ((q, p), f.clone()))
            .collect();
        Bicomplex {
            ring: self.ring.clone(),
            cohomological: self.cohomological,
            objects,
            vert,
            horiz,
        }
    }

    /// Total complex with the block layout of each diagonal; blocks are
    /// ordered by increasing filtration (column) degree.
    pub fn total_complex(&self) -> Result<(ComplexOfModules, TotalLayout)> {
        let mut layout: BTreeMap<i64, Vec<(i64, i64, usize, usize)>> = BTreeMap::new();
        let mut totals: BTreeMap<i64, FPModule> = BTreeMap::new();
        let spots = self.spots();
        let mut diag: BTreeMap<i64, Vec<(i64, i64)>> = BTreeMap::new();
        for (p, q) in spots {
            diag.entry(p + q).or_default().push((p, q));
        }
        for (n, mut ps) in diag {
            ps.sort();
            let mut offset = 0;
            let mut blocks = Vec::new();
            let mats: Vec<FPModule> = ps.iter().map(|&(p, q)| self.object(p, q)).collect();
            for (&(p, q), m) in ps.iter().zip(&mats) {
                blocks.push((p, q, offset, m.ngens()));
                offset += m.ngens();
            }
            let rel_refs: Vec<&Mat> = mats.iter().map(|m| m.relations()).collect();
            let rels = Mat::block_diagonal(&rel_refs, &self.ring);
            layout.insert(n, blocks);
            totals.insert(n, FPModule::new(rels));
        }
        // boundary: sum of vertical and horizontal components
        let mut diffs: BTreeMap<i64, ModuleMorphism> = BTreeMap::new();
        let empty: Vec<(i64, i64, usize, usize)> = Vec::new();
        for (&n, blocks) in &layout {
            let src = totals.get(&n).unwrap().clone();
            let tgt = totals
                .get(&(n - 1))
                .cloned()
                .unwrap_or_else(|| FPModule::zero(self.ring.clone()));
            let tgt_blocks = layout.get(&(n - 1)).unwrap_or(&empty);
            let mut m = Mat::zero(self.ring.clone(), src.ngens(), tgt.ngens());
            for &(p, q, off, w) in blocks {
                for &(tp, tq, toff, tw) in tgt_blocks {
                    let part = if tp == p && tq == q - 1 {
                        Some(self.vertical(p, q))
                    } else if tp == p - 1 && tq == q {
                        Some(self.horizontal(p, q))
                    } else {
                        None
                    };
                    if let Some(f) = part {
                        debug_assert_eq!(f.matrix().rows(), w);
                        debug_assert_eq!(f.matrix().cols(), tw);
                        for i in 0..w {
                            for j in 0..tw {
                                *m.at_mut(off + i, toff + j) = f.matrix().at(i, j).clone();
                            }
                        }
                    }
                }
            }
            diffs.insert(n, ModuleMorphism::new(src, tgt, m)?);
        }
        let complex = ComplexOfModules::new(self.ring.clone(), totals, diffs)?;
        Ok((complex, TotalLayout { blocks: layout }))
    }

    /// Column filtration `F_p Tot_n = (+)_{p' <= p} B_{p', n - p'}`.
    pub fn column_filtration(&self) -> Result<(FilteredComplex, TotalLayout)> {
        let (tot, layout) = self.total_complex()?;
        let ((p_lo, p_hi), _) = match self.window() {
            Some(w) => w,
            None => {
                let fc = FilteredComplex::new(tot, 0, 0, BTreeMap::new())?;
                return Ok((fc, layout));
            }
        };
        let mut steps = BTreeMap::new();
        for (&n, blocks) in &layout.blocks {
            let total = tot.object(n);
            for p in p_lo..=p_hi {
                let width: usize = blocks
                    .iter()
                    .filter(|&&(bp, _, _, _)| bp <= p)
                    .map(|&(_, _, _, w)| w)
                    .sum();
                // blocks are ordered by increasing p: the step is a prefix
                let mut m = Mat::zero(self.ring.clone(), width, total.ngens());
                let mut row = 0;
                for &(bp, _, off, w) in blocks {
                    if bp > p {
                        continue;
                    }
                    for i in 0..w {
                        *m.at_mut(row + i, off + i) = crate::poly::Poly::one(self.ring.nvars());
                    }
                    row += w;
                }
                let sub_mods: Vec<FPModule> = blocks
                    .iter()
                    .filter(|&&(bp, _, _, _)| bp <= p)
                    .map(|&(bp, bq, _, _)| self.object(bp, bq))
                    .collect();
                let sub_rels: Vec<&Mat> = sub_mods.iter().map(|m| m.relations()).collect();
                let src = FPModule::new(Mat::block_diagonal(&sub_rels, &self.ring));
                steps.insert((p, n), ModuleMorphism::new(src, total.clone(), m)?);
            }
        }
        let fc = FilteredComplex::new(tot, p_lo, p_hi, steps)?;
        Ok((fc, layout))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_matrix;

    /// The Jordan-form staircase bicomplex over QQ[x] of the given size.
    pub(crate) fn jordan_bicomplex(lambda: &str, size: usize) -> Bicomplex {
        let r = Ring::parse("QQ[x]").unwrap();
        let d = FPModule::free(r.clone(), 1);
        let xl = parse_matrix(&format!("[ x-({lambda}) ]"), 1, 1, &r).unwrap();
        let minus_one = parse_matrix("[ -1 ]", 1, 1, &r).unwrap();
        let mut objects = BTreeMap::new();
        let mut vert = BTreeMap::new();
        let mut horiz = BTreeMap::new();
        for i in 0..size as i64 {
            objects.insert((-i, i), d.clone());
            objects.insert((-i, i + 1), d.clone());
            // vertical at column -i: (-1)^i (x - lambda)
            let vm = if i % 2 == 0 { xl.clone() } else { xl.neg() };
            vert.insert(
                (-i, i + 1),
                ModuleMorphism::new(d.clone(), d.clone(), vm).unwrap(),
            );
            if i + 1 < size as i64 {
                horiz.insert(
                    (-i, i + 1),
                    ModuleMorphism::new(d.clone(), d.clone(), minus_one.clone()).unwrap(),
                );
            }
        }
        Bicomplex::new(r, objects, vert, horiz).unwrap()
    }

    #[test]
    fn jordan_total_complex() {
        let b = jordan_bicomplex("1", 3);
        let (tot, layout) = b.total_complex().unwrap();
        // exactly two nonzero degrees, ranks 3 and 3
        assert_eq!(tot.object(0).ngens(), 3);
        assert_eq!(tot.object(1).ngens(), 3);
        assert!(tot.object(2).ngens() == 0);
        let d1 = tot.diff(1);
        // matrix is x Id - J(1) up to block ordering
        let r = b.ring().clone();
        assert_eq!(d1.matrix().rows(), 3);
        // H_0 = QQ[x]/<(x-1)^3>
        let h0 = tot.homology(0).unwrap();
        let target = FPModule::new(parse_matrix("[ (x-1)^3 ]", 1, 1, &r).unwrap());
        assert_eq!(h0.fitting_ideal(0).basis(), target.fitting_ideal(0).basis());
        assert!(tot.homology(1).unwrap().is_zero());
        assert_eq!(layout.blocks.get(&0).unwrap().len(), 3);
    }

    #[test]
    fn transpose_total_agrees() {
        let b = jordan_bicomplex("1", 3);
        let t = b.transpose();
        let (tot_b, _) = b.total_complex().unwrap();
        let (tot_t, _) = t.total_complex().unwrap();
        for n in 0..2 {
            assert_eq!(tot_b.object(n).ngens(), tot_t.object(n).ngens());
            let hb = tot_b.homology(n).unwrap();
            let ht = tot_t.homology(n).unwrap();
            assert_eq!(hb.fitting_ideal(0).basis(), ht.fitting_ideal(0).basis());
        }
    }

    #[test]
    fn column_filtration_shape() {
        let b = jordan_bicomplex("1", 2);
        let (fc, _) = b.column_filtration().unwrap();
        assert_eq!(fc.p_lo, -1);
        assert_eq!(fc.p_hi, 0);
        assert_eq!(fc.length(), 2);
        // F_{-1} Tot_0 is the single block at (-1, 1)
        let s = fc.step_submodule(-1, 0);
        assert!(!s.is_full());
        let full = fc.step_submodule(0, 0);
        assert!(full.is_full());
    }
}
