//! Homotopy categories of A∞-categories and quasi-equivalence checks.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::category::{AInfCategory, Elem, GenId, ObjId};
use crate::chain::{ChainComplex, ChainMap, Cohomology};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::functor::AInfFunctor;
use crate::graded::GradedMap;
use crate::linalg::{span_elements, Matrix};
use crate::simplicial::FiniteCategory;

#[derive(Debug, Clone)]
pub struct HoHom {
    pub complex: ChainComplex,
    pub gens: Vec<GenId>,
    pub h0: Cohomology,
}

/// `Ho(A)`: objects of `A`, morphisms `H⁰` of the hom complexes, composition induced by `m²`.
/// Morphisms are coordinate vectors in the chosen basis of representatives.
#[derive(Debug, Clone)]
pub struct HoCategory {
    pub cat: AInfCategory,
    homs: BTreeMap<(ObjId, ObjId), HoHom>,
}

impl HoCategory {
    pub fn new(a: &AInfCategory) -> Result<HoCategory> {
        let n = a.objects().len();
        let mut homs = BTreeMap::new();
        for x in 0..n {
            for y in 0..n {
                let (complex, gens) = a.hom_complex(x, y)?;
                let h0 = complex.cohomology(0);
                homs.insert((x, y), HoHom { complex, gens, h0 });
            }
        }
        Ok(HoCategory { cat: a.clone(), homs })
    }

    pub fn field(&self) -> Field {
        self.cat.field()
    }

    pub fn objects(&self) -> usize {
        self.cat.objects().len()
    }

    pub fn hom(&self, x: ObjId, y: ObjId) -> &HoHom {
        &self.homs[&(x, y)]
    }

    pub fn dim(&self, x: ObjId, y: ObjId) -> usize {
        self.homs[&(x, y)].h0.dim
    }

    /// Flat coordinates of a degree-0 element inside the whole hom complex.
    fn flat(&self, x: ObjId, y: ObjId, e: &Elem) -> Vec<Scalar> {
        let h = &self.homs[&(x, y)];
        let full = self.cat.coords(e, &h.gens);
        let off = h.complex.space().offset(0);
        full[off..off + h.complex.dim(0)].to_vec()
    }

    /// Class of a degree-0 element, or `None` if it is not a cycle.
    pub fn class_of(&self, x: ObjId, y: ObjId, e: &Elem) -> Option<Vec<Scalar>> {
        self.homs[&(x, y)].h0.class_of(&self.flat(x, y, e))
    }

    pub fn representative(&self, x: ObjId, y: ObjId, class: &[Scalar]) -> Elem {
        let h = &self.homs[&(x, y)];
        let gens0 = &h.gens[h.complex.space().offset(0)..h.complex.space().offset(0) + h.complex.dim(0)];
        let mut v = vec![self.field().zero(); gens0.len()];
        for (c, r) in class.iter().zip(&h.h0.reps) {
            for (i, ri) in r.iter().enumerate() {
                v[i] = &v[i] + &(c * ri);
            }
        }
        self.cat.elem_from_coords(&v, gens0)
    }

    /// `v ∘ u` for `u: x → y`, `v: y → z`.
    pub fn compose(&self, x: ObjId, y: ObjId, z: ObjId, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let prod = self.cat.op(&[self.representative(x, y, u), self.representative(y, z, v)]);
        self.class_of(x, z, &prod).expect("product of cycles is a cycle")
    }

    pub fn identity(&self, x: ObjId) -> Result<Vec<Scalar>> {
        let u = self.cat.unit(x).ok_or_else(|| Error::Invalid("missing unit elements".into()))?;
        self.class_of(x, x, u).ok_or_else(|| Error::Invalid("unit is not closed".into()))
    }

    /// Matrix of `v ↦ v ∘ u` from `H⁰(y, z)` to `H⁰(x, z)`.
    pub fn precompose_matrix(&self, x: ObjId, y: ObjId, z: ObjId, u: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim(y, z))
            .map(|i| self.compose(x, y, z, u, &basis_vec(self.field(), self.dim(y, z), i)))
            .collect();
        Matrix::from_columns(self.field(), self.dim(x, z), &cols)
    }

    /// Matrix of `u ↦ v ∘ u` from `H⁰(x, y)` to `H⁰(x, z)`.
    pub fn postcompose_matrix(&self, x: ObjId, y: ObjId, z: ObjId, v: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim(x, y))
            .map(|i| self.compose(x, y, z, &basis_vec(self.field(), self.dim(x, y), i), v))
            .collect();
        Matrix::from_columns(self.field(), self.dim(x, z), &cols)
    }

    /// A two-sided inverse of `u: x → y`, if any.
    pub fn inverse(&self, x: ObjId, y: ObjId, u: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        let id_x = self.identity(x)?;
        let id_y = self.identity(y)?;
        let Some(v) = self.precompose_matrix(x, y, x, u).solve(&id_x) else { return Ok(None) };
        Ok((self.compose(y, x, y, &v, u) == id_y).then_some(v))
    }

    /// Exhaustive search for an isomorphism `x ≅ y`; requires a finite field unless `x = y`.
    pub fn find_iso(&self, x: ObjId, y: ObjId) -> Result<Option<(Vec<Scalar>, Vec<Scalar>)>> {
        if x == y {
            let id = self.identity(x)?;
            return Ok(Some((id.clone(), id)));
        }
        if self.field().order().is_none() {
            return Err(Error::InfiniteField);
        }
        let d = self.dim(x, y);
        let basis: Vec<Vec<Scalar>> = (0..d).map(|i| basis_vec(self.field(), d, i)).collect();
        for u in span_elements(self.field(), d, &basis) {
            if let Some(v) = self.inverse(x, y, &u)? {
                return Ok(Some((u, v)));
            }
        }
        Ok(None)
    }
}

/// `Ho(A)` as a finite category over a finite field, with the `(x, y, class)` of each morphism.
pub fn finite_ho(ho: &HoCategory) -> Result<(FiniteCategory, Vec<(ObjId, ObjId, Vec<Scalar>)>)> {
    let field = ho.field();
    if field.order().is_none() {
        return Err(Error::InfiniteField);
    }
    let n = ho.objects();
    let mut classes = Vec::new();
    let mut morphisms = Vec::new();
    let mut index = HashMap::new();
    for x in 0..n {
        for y in 0..n {
            let d = ho.dim(x, y);
            let basis: Vec<Vec<Scalar>> = (0..d).map(|i| basis_vec(field, d, i)).collect();
            for c in span_elements(field, d, &basis) {
                let name = ho.cat.format_elem(&ho.representative(x, y, &c));
                index.insert((x, y, c.clone()), morphisms.len());
                morphisms.push((name, x, y));
                classes.push((x, y, c));
            }
        }
    }
    let identities = (0..n).map(|x| Ok(index[&(x, x, ho.identity(x)?)])).collect::<Result<Vec<_>>>()?;
    let mut compose = HashMap::new();
    for (f, (x, y, u)) in classes.iter().enumerate() {
        for (g, (y2, z, v)) in classes.iter().enumerate() {
            if y == y2 {
                compose.insert((f, g), index[&(*x, *z, ho.compose(*x, *y, *z, u, v))]);
            }
        }
    }
    let objects = ho.cat.objects().to_vec();
    Ok((FiniteCategory { objects, morphisms, identities, compose }, classes))
}

pub fn basis_vec(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub source: String,
    pub target: String,
    /// `(degree, source dim, target dim, rank)` for each cohomological degree.
    pub degrees: Vec<(i32, usize, usize, usize)>,
    pub quasi_iso: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasiEquivalenceReport {
    pub we2: Vec<PairReport>,
    pub fully_faithful: bool,
    /// For each target object, a source object with an iso in `Ho`, if one exists.
    pub essential_image: Vec<(String, Option<String>)>,
}

impl QuasiEquivalenceReport {
    pub fn we1(&self) -> bool {
        self.fully_faithful && self.essential_image.iter().all(|(_, w)| w.is_some())
    }
    pub fn we2(&self) -> bool {
        self.we2.iter().all(|p| p.quasi_iso)
    }
    pub fn passed(&self) -> bool {
        self.we1() && self.we2()
    }
    /// First failing (we2) pair as `(degree, source dim, target dim)`.
    pub fn we2_witness(&self) -> Option<(String, String, i32, usize, usize)> {
        self.we2.iter().find(|p| !p.quasi_iso).and_then(|p| {
            p.degrees
                .iter()
                .find(|(_, s, t, r)| !(s == t && s == r))
                .map(|&(d, s, t, _)| (p.source.clone(), p.target.clone(), d, s, t))
        })
    }
}

/// `F₁` on `Hom(x, y)` as a chain map between hom complexes.
pub fn first_component(f: &AInfFunctor, x: ObjId, y: ObjId) -> Result<ChainMap> {
    let (cs, gs) = f.source.hom_complex(x, y)?;
    let (ct, gt) = f.target.hom_complex(f.obj(x), f.obj(y))?;
    let (lo_s, hi_s) = cs.space().window();
    let (lo_t, hi_t) = ct.space().window();
    let (lo, hi) = (lo_s.min(lo_t), hi_s.max(hi_t));
    let ss = cs.space().with_window(lo, hi)?;
    let st = ct.space().with_window(lo, hi)?;
    let cs = ChainComplex::from_map(GradedMap::from_flat(ss.clone(), ss.clone(), 1, &cs.differential().to_flat())?)?;
    let ct = ChainComplex::from_map(GradedMap::from_flat(st.clone(), st.clone(), 1, &ct.differential().to_flat())?)?;
    let cols: Vec<Vec<Scalar>> = gs
        .iter()
        .map(|&g| f.target.coords(&f.apply(&[Elem::basis(g, f.source.field())]), &gt))
        .collect();
    let flat = Matrix::from_columns(f.source.field(), gt.len(), &cols);
    ChainMap::new(cs, ct, GradedMap::from_flat(ss, st, 0, &flat)?)
}

pub fn check_quasi_equivalence(f: &AInfFunctor) -> Result<QuasiEquivalenceReport> {
    let ns = f.source.objects().len();
    let mut we2 = Vec::new();
    for x in 0..ns {
        for y in 0..ns {
            let cm = first_component(f, x, y)?;
            let rep = cm.quasi_iso_report();
            we2.push(PairReport {
                source: f.source.objects()[x].clone(),
                target: f.source.objects()[y].clone(),
                degrees: rep.iter().map(|q| (q.degree, q.source_dim, q.target_dim, q.rank)).collect(),
                quasi_iso: rep.iter().all(|q| q.is_iso()),
            });
        }
    }
    let fully_faithful = we2.iter().all(|p| {
        p.degrees.iter().filter(|d| d.0 == 0).all(|&(_, s, t, r)| s == t && s == r)
    });
    let ho = HoCategory::new(&f.target)?;
    let mut essential_image = Vec::new();
    for y in 0..f.target.objects().len() {
        let mut witness = None;
        for x in 0..ns {
            if ho.find_iso(f.obj(x), y)?.is_some() {
                witness = Some(f.source.objects()[x].clone());
                break;
            }
        }
        essential_image.push((f.target.objects()[y].clone(), witness));
    }
    Ok(QuasiEquivalenceReport { we2, fully_faithful, essential_image })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_minus_one_morphism_gives_discrete_ho() {
        let field = Field::Prime(2);
        let mut k = AInfCategory::new(field, &["x", "y"]);
        let ux = k.add_generator("1x", 0, 0, 0).unwrap();
        let uy = k.add_generator("1y", 1, 1, 0).unwrap();
        k.add_generator("g", 0, 1, -1).unwrap();
        k.set_units(vec![Elem::basis(ux, field), Elem::basis(uy, field)]).unwrap();
        k.insert_unit_products().unwrap();
        let ho = HoCategory::new(&k).unwrap();
        assert_eq!(ho.dim(0, 1), 0);
        assert_eq!(ho.dim(0, 0), 1);
        assert!(ho.find_iso(0, 1).unwrap().is_none());
        assert_eq!(ho.identity(0).unwrap(), vec![field.one()]);
        assert!(check_quasi_equivalence(&AInfFunctor::identity(&k)).unwrap().passed());
    }
}
