//! Finite fragments of the dg category of complexes, packaged as A∞-categories.

use std::collections::BTreeMap;

use crate::category::{AInfCategory, Elem, GenId, ObjId};
use crate::chain::{m2_ch, ChainComplex, HomComplex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graded::GradedMap;

/// The full dg subcategory of complexes on a finite list of named objects.
/// Generators are the elementary matrices of each hom complex, units are identities.
#[derive(Debug, Clone)]
pub struct ChFragment {
    pub cat: AInfCategory,
    pub complexes: Vec<ChainComplex>,
    homs: BTreeMap<(ObjId, ObjId), (HomComplex, Vec<GenId>)>,
}

impl ChFragment {
    pub fn new(field: Field, objects: &[(&str, ChainComplex)]) -> Result<ChFragment> {
        let names: Vec<&str> = objects.iter().map(|(n, _)| *n).collect();
        let mut cat = AInfCategory::new(field, &names);
        let complexes: Vec<ChainComplex> = objects.iter().map(|(_, c)| c.clone()).collect();
        for c in &complexes {
            if c.field() != field {
                return Err(Error::FieldMismatch(format!("{} vs {}", c.field(), field)));
            }
        }
        let mut homs = BTreeMap::new();
        for x in 0..complexes.len() {
            for y in 0..complexes.len() {
                let hc = HomComplex::new(&complexes[x], &complexes[y])?;
                let space = hc.complex.space().clone();
                let mut gens = Vec::new();
                for (deg, label) in space.flat_basis() {
                    gens.push(cat.add_generator(&format!("{}>{}:{}", names[x], names[y], label), x, y, deg)?);
                }
                homs.insert((x, y), (hc, gens));
            }
        }
        let mut frag = ChFragment { cat, complexes, homs };
        frag.fill_tables()?;
        Ok(frag)
    }

    fn fill_tables(&mut self) -> Result<()> {
        let n = self.complexes.len();
        let mut ops: Vec<(Vec<GenId>, Elem)> = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let (hc, gens) = &self.homs[&(x, y)];
                let d = hc.complex.differential().to_flat();
                for (j, &g) in gens.iter().enumerate() {
                    let col = d.column(j);
                    ops.push((vec![g], self.cat.elem_from_coords(&col, gens)));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (_, g1s) = &self.homs[&(x, y)];
                    let (_, g2s) = &self.homs[&(y, z)];
                    for &a in g1s {
                        let fa = self.map_of_basis(a);
                        for &b in g2s {
                            let fb = self.map_of_basis(b);
                            let prod = m2_ch(&fa, &fb)?;
                            ops.push((vec![a, b], self.elem_of_map(x, z, &prod)?));
                        }
                    }
                }
            }
        }
        for (t, v) in ops {
            self.cat.set_op(&t, v)?;
        }
        let units = (0..n)
            .map(|x| self.elem_of_map(x, x, &GradedMap::identity(self.complexes[x].space())))
            .collect::<Result<Vec<_>>>()?;
        self.cat.set_units(units)
    }

    pub fn hom(&self, x: ObjId, y: ObjId) -> &HomComplex {
        &self.homs[&(x, y)].0
    }

    pub fn hom_gens(&self, x: ObjId, y: ObjId) -> &[GenId] {
        &self.homs[&(x, y)].1
    }

    pub fn map_of_basis(&self, g: GenId) -> GradedMap {
        let gen = self.cat.generator(g);
        let (hc, gens) = &self.homs[&(gen.source, gen.target)];
        let idx = gens.iter().position(|&h| h == g).expect("generator of this hom");
        let mut v = vec![self.cat.field().zero(); gens.len()];
        v[idx] = self.cat.field().one();
        hc.map_of(&v, gen.degree)
    }

    /// The map of degree `k` represented by `e` (components of other degrees are ignored).
    pub fn map_of_elem(&self, x: ObjId, y: ObjId, e: &Elem, k: i32) -> GradedMap {
        let (hc, gens) = &self.homs[&(x, y)];
        hc.map_of(&self.cat.coords(e, gens), k)
    }

    pub fn elem_of_map(&self, x: ObjId, y: ObjId, f: &GradedMap) -> Result<Elem> {
        let (hc, gens) = &self.homs[&(x, y)];
        Ok(self.cat.elem_from_coords(&hc.element_of(f)?, gens))
    }
}
