//! Small named categories and complexes used by the tests, the CLI and the README.

use std::collections::BTreeMap;

use crate::category::{AInfCategory, Elem};
use crate::chain::ChainComplex;
use crate::dg::ChFragment;
use crate::error::Result;
use crate::field::Field;
use crate::functor::AInfFunctor;
use crate::linalg::Matrix;

/// `K` in degree 0.
pub fn point(field: Field, name: &str) -> ChainComplex {
    ChainComplex::from_dims(field, name, &[(0, 1)], BTreeMap::new()).unwrap()
}

/// `K → K` by the identity, from degree -1 to degree 0. Acyclic.
pub fn interval(field: Field, name: &str) -> ChainComplex {
    let d = BTreeMap::from([(-1, Matrix::identity(field, 1))]);
    ChainComplex::from_dims(field, name, &[(-1, 1), (0, 1)], d).unwrap()
}

/// `K ⊕ (K → K)`: a point with an acyclic summand, quasi-isomorphic to `point`.
pub fn padded_point(field: Field, name: &str) -> ChainComplex {
    let mut d = Matrix::zeros(field, 2, 1);
    d.set(1, 0, field.one());
    ChainComplex::from_dims(field, name, &[(-1, 1), (0, 2)], BTreeMap::from([(-1, d)])).unwrap()
}

fn with_units(a: &mut AInfCategory, field: Field) {
    let units = (0..a.objects().len())
        .map(|x| {
            let name = format!("1{}", a.objects()[x]);
            Elem::basis(a.add_generator(&name, x, x, 0).unwrap(), field)
        })
        .collect();
    a.set_units(units).unwrap();
    a.insert_unit_products().unwrap();
}

/// Two objects and one closed morphism `g: x → y` of homological degree -1, which is
/// cohomological degree 1.
pub fn k_category(field: Field) -> AInfCategory {
    let mut k = AInfCategory::new(field, &["x", "y"]);
    k.add_generator("g", 0, 1, 1).unwrap();
    with_units(&mut k, field);
    k
}

/// Two objects and nothing but units.
pub fn k_prime(field: Field) -> AInfCategory {
    let mut k = AInfCategory::new(field, &["x", "y"]);
    with_units(&mut k, field);
    k
}

/// `k_category → k_prime`, identity on objects, `g ↦ 0`.
pub fn k_functor(field: Field) -> AInfFunctor {
    let k = k_category(field);
    let kp = k_prime(field);
    let mut f = AInfFunctor::new(k.clone(), kp.clone(), vec![0, 1]).unwrap();
    for x in ["x", "y"] {
        let u = k.generator_id(&format!("1{x}")).unwrap();
        let v = kp.generator_id(&format!("1{x}")).unwrap();
        f.set_component(&[u], Elem::basis(v, field)).unwrap();
    }
    f
}

/// One object with `1`, `e` in degree 0 and `h` in degree -1; `m²` vanishes off the
/// unit and `m³(e, e, e) = h`. A minimal A∞-category that is not dg.
pub fn triple_product(field: Field) -> AInfCategory {
    let mut a = AInfCategory::new(field, &["o"]);
    let e = a.add_generator("e", 0, 0, 0).unwrap();
    let h = a.add_generator("h", 0, 0, -1).unwrap();
    with_units(&mut a, field);
    a.set_op(&[e, e, e], Elem::basis(h, field)).unwrap();
    a
}

/// Two objects with `Hom(x, y)` spanned by `a` (degree -1), `b` (degree 0), `m¹(a) = b`,
/// `c: y → x` in degree -2 and `c1: y → x` in degree 1. Composites of non-units vanish.
pub fn two_object_dg(field: Field) -> AInfCategory {
    let mut t = AInfCategory::new(field, &["x", "y"]);
    let a = t.add_generator("a", 0, 1, -1).unwrap();
    let b = t.add_generator("b", 0, 1, 0).unwrap();
    t.add_generator("b2", 0, 1, 0).unwrap();
    t.add_generator("c", 1, 0, -2).unwrap();
    t.add_generator("c1", 1, 0, 1).unwrap();
    with_units(&mut t, field);
    t.set_op(&[a], Elem::basis(b, field)).unwrap();
    t
}

/// The fragment on `{P}` and the fragment on `{P, Q}`, where `Q` is `P` plus an acyclic
/// summand, with the inclusion functor between them.
pub fn retract_pair(field: Field) -> Result<(ChFragment, ChFragment, AInfFunctor)> {
    let small = ChFragment::new(field, &[("P", point(field, "p"))])?;
    let big = ChFragment::new(field, &[("P", point(field, "p")), ("Q", padded_point(field, "q"))])?;
    let mut f = AInfFunctor::new(small.cat.clone(), big.cat.clone(), vec![0])?;
    for g in small.cat.hom(0, 0) {
        let label = small.cat.generator(g).label.clone();
        let h = big.cat.generator_id(&label).expect("same labels on the shared object");
        f.set_component(&[g], Elem::basis(h, field))?;
    }
    Ok((small, big, f))
}

/// Named library categories over `field`.
pub fn library(field: Field) -> Result<Vec<(&'static str, AInfCategory)>> {
    let (small, big, _) = retract_pair(field)?;
    Ok(vec![
        ("minimal-2", crate::nerve::minimal_category(field, 2)),
        ("k", k_category(field)),
        ("k-prime", k_prime(field)),
        ("triple-product", triple_product(field)),
        ("two-object-dg", two_object_dg(field)),
        ("point-fragment", small.cat),
        ("retract-fragment", big.cat),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn library_categories_are_valid() {
        for field in [Field::Prime(2), Field::Prime(3), Field::Rational] {
            for (name, a) in library(field).unwrap() {
                assert!(a.check_relations(5).passed(), "{name}");
                assert!(a.check_units().unwrap().passed(), "{name}");
            }
            assert!(k_functor(field).check(3).unwrap().passed());
            let (_, _, f) = retract_pair(field).unwrap();
            assert!(f.check(3).unwrap().passed());
        }
    }
}
