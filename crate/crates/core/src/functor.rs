//! A∞-functors and the functor equation.
//!
//! The equation is evaluated generically: a target only needs to supply its
//! operations `m^r` on some linear value type. This lets the same checker run
//! on functors into finitely presented categories and into module categories.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::category::{AInfCategory, Elem, GenId, ObjId, Residual};
use crate::error::{Error, Result};
use crate::field::Scalar;

/// Values a functor equation can be evaluated in.
pub trait Linear: Clone {
    fn plus(&self, other: &Self) -> Self;
    fn scale(&self, c: &Scalar) -> Self;
    fn is_zero(&self) -> bool;
}

impl Linear for Elem {
    fn plus(&self, other: &Elem) -> Elem {
        Elem::plus(self, other)
    }
    fn scale(&self, c: &Scalar) -> Elem {
        Elem::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        Elem::is_zero(self)
    }
}

/// The operations of a target category. `op` takes its arguments in path order
/// and returns `None` for zero.
pub trait OpTarget {
    type V: Linear;
    fn op(&self, args: &[Self::V]) -> Result<Option<Self::V>>;
    fn describe(&self, v: &Self::V) -> String;
}

impl OpTarget for AInfCategory {
    type V = Elem;
    fn op(&self, args: &[Elem]) -> Result<Option<Elem>> {
        let v = AInfCategory::op(self, args);
        Ok((!v.is_zero()).then_some(v))
    }
    fn describe(&self, v: &Elem) -> String {
        self.format_elem(v)
    }
}

fn acc<V: Linear>(total: &mut Option<V>, v: &V, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    let term = v.scale(c);
    *total = Some(match total.take() {
        Some(t) => t.plus(&term),
        None => term,
    });
}

/// Compositions of `n` into positive parts.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Both sides of the functor equation on one basis tuple (path order):
/// `Σ (-1)^{jk+l} F(1^j ⊗ m_k ⊗ 1^l)` and `Σ (-1)^s m_r(F_{i_1} ⊗ ... ⊗ F_{i_r})`,
/// with tensor products of maps applied with Koszul signs.
pub fn equation_sides<T: OpTarget>(
    source: &AInfCategory,
    target: &T,
    component: &dyn Fn(&[GenId]) -> Result<Option<T::V>>,
    t: &[GenId],
) -> Result<(Option<T::V>, Option<T::V>)> {
    let field = source.field();
    let n = t.len();
    let mut lhs = None;
    for k in 1..=n {
        for l in 0..=n - k {
            let j = n - k - l;
            let Some(inner) = source.op_basis(&t[l..l + k]) else { continue };
            let passed = source.tuple_degree(&t[l + k..]) as i64;
            let sign = field.sign((j * k + l) as i64 + k as i64 * passed);
            for (g, c) in inner.terms() {
                let mut tuple = t[..l].to_vec();
                tuple.push(g);
                tuple.extend_from_slice(&t[l + k..]);
                if let Some(v) = component(&tuple)? {
                    acc(&mut lhs, &v, &(&sign * c));
                }
            }
        }
    }
    let mut rhs = None;
    for parts in compositions(n) {
        // parts[0] = i_1 consumes the last i_1 inputs of the path
        let r = parts.len();
        let mut s = 0i64;
        let mut prefix = 0i64;
        for (u, &iu) in parts.iter().enumerate() {
            prefix += iu as i64;
            if u >= 1 {
                s += (1 - iu as i64) * prefix;
            }
        }
        let mut values = Vec::with_capacity(r);
        let mut end = n;
        let mut left_degree = 0i64;
        let mut koszul = 0i64;
        let mut dead = false;
        for &iu in &parts {
            let block = &t[end - iu..end];
            koszul += (1 - iu as i64) * left_degree;
            left_degree += source.tuple_degree(block) as i64;
            end -= iu;
            match component(block)? {
                Some(v) => values.push(v),
                None => {
                    dead = true;
                    break;
                }
            }
        }
        if dead {
            continue;
        }
        values.reverse();
        if let Some(v) = target.op(&values)? {
            acc(&mut rhs, &v, &field.sign(s + koszul));
        }
    }
    Ok((lhs, rhs))
}

fn difference<V: Linear>(lhs: Option<V>, rhs: Option<V>, minus_one: &Scalar) -> Option<V> {
    match (lhs, rhs) {
        (None, None) => None,
        (Some(a), None) => Some(a),
        (None, Some(b)) => Some(b.scale(minus_one)),
        (Some(a), Some(b)) => Some(a.plus(&b.scale(minus_one))),
    }
    .filter(|v| !v.is_zero())
}

/// Residuals of the functor equation on all composable tuples of length `≤ arity_max`.
pub fn equation_residuals<T: OpTarget>(
    source: &AInfCategory,
    target: &T,
    component: &dyn Fn(&[GenId]) -> Result<Option<T::V>>,
    arity_max: usize,
) -> Result<Vec<Residual>> {
    let minus_one = source.field().int(-1);
    let mut out = Vec::new();
    for n in 1..=arity_max {
        for t in source.composable_tuples(n) {
            let (lhs, rhs) = equation_sides(source, target, component, &t)?;
            if let Some(r) = difference(lhs, rhs, &minus_one) {
                out.push(Residual { arity: n, tuple: source.format_tuple(&t), value: target.describe(&r) });
            }
        }
    }
    Ok(out)
}

/// An A∞-functor between finitely presented categories. Component tuples are in path order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AInfFunctor {
    pub source: AInfCategory,
    pub target: AInfCategory,
    obj_map: Vec<ObjId>,
    components: BTreeMap<Vec<GenId>, Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctorReport {
    pub arity_checked: usize,
    pub residuals: Vec<Residual>,
    pub unit_failures: Vec<String>,
}

impl FunctorReport {
    pub fn passed(&self) -> bool {
        self.residuals.is_empty() && self.unit_failures.is_empty()
    }
}

impl AInfFunctor {
    pub fn new(source: AInfCategory, target: AInfCategory, obj_map: Vec<ObjId>) -> Result<AInfFunctor> {
        if source.field() != target.field() {
            return Err(Error::FieldMismatch(format!("{} vs {}", source.field(), target.field())));
        }
        if obj_map.len() != source.objects().len() || obj_map.iter().any(|&y| y >= target.objects().len()) {
            return Err(Error::Invalid("object map must send every source object to a target object".into()));
        }
        Ok(AInfFunctor { source, target, obj_map, components: BTreeMap::new() })
    }

    pub fn identity(a: &AInfCategory) -> AInfFunctor {
        let mut f = AInfFunctor::new(a.clone(), a.clone(), (0..a.objects().len()).collect()).unwrap();
        for g in 0..a.generators().len() {
            f.components.insert(vec![g], Elem::basis(g, a.field()));
        }
        f
    }

    /// Sets `F_n` on a composable tuple; the value has degree `Σ deg + 1 - n`.
    pub fn set_component(&mut self, inputs: &[GenId], value: Elem) -> Result<()> {
        if inputs.is_empty() {
            return Err(Error::ArityOverflow("F_0 is the object map".into()));
        }
        for w in inputs.windows(2) {
            if self.source.generator(w[0]).target != self.source.generator(w[1]).source {
                return Err(Error::Invalid("component tuple is not composable".into()));
            }
        }
        let x = self.obj_map[self.source.generator(inputs[0]).source];
        let y = self.obj_map[self.source.generator(*inputs.last().unwrap()).target];
        let degree = self.source.tuple_degree(inputs) + 1 - inputs.len() as i32;
        self.target.check_elem(&value, x, y, Some(degree))?;
        if value.is_zero() {
            self.components.remove(inputs);
        } else {
            self.components.insert(inputs.to_vec(), value);
        }
        Ok(())
    }

    pub fn obj(&self, x: ObjId) -> ObjId {
        self.obj_map[x]
    }
    pub fn obj_map(&self) -> &[ObjId] {
        &self.obj_map
    }
    pub fn components(&self) -> &BTreeMap<Vec<GenId>, Elem> {
        &self.components
    }

    pub fn component(&self, t: &[GenId]) -> Option<&Elem> {
        self.components.get(t)
    }

    /// `F_n` extended multilinearly to elements (path order).
    pub fn apply(&self, args: &[Elem]) -> Elem {
        let mut out = Elem::zero();
        let mut tuple = Vec::new();
        self.source.expand(args, 0, &mut tuple, &self.source.field().one(), &mut |t, c| {
            if let Some(v) = self.components.get(t) {
                out.add_scaled(v, c);
            }
        });
        out
    }

    pub fn max_arity(&self) -> usize {
        self.components.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn check(&self, arity_max: usize) -> Result<FunctorReport> {
        let component = |t: &[GenId]| Ok(self.components.get(t).cloned());
        let residuals = equation_residuals(&self.source, &self.target, &component, arity_max)?;
        let mut unit_failures = Vec::new();
        if let (Some(su), Some(tu)) = (self.source.units(), self.target.units()) {
            for (x, u) in su.iter().enumerate() {
                let got = self.apply(&[u.clone()]);
                if got != tu[self.obj_map[x]] {
                    unit_failures.push(format!(
                        "F1(1_{}) = {} but the unit is {}",
                        self.source.objects()[x],
                        self.target.format_elem(&got),
                        self.target.format_elem(&tu[self.obj_map[x]])
                    ));
                }
            }
            for n in 2..=arity_max.min(self.max_arity()) {
                for slot in 0..n {
                    for t in self.source.composable_tuples(n - 1) {
                        let x = if slot == 0 {
                            self.source.generator(t[0]).source
                        } else {
                            self.source.generator(t[slot - 1]).target
                        };
                        let mut args: Vec<Elem> =
                            t.iter().map(|&g| Elem::basis(g, self.source.field())).collect();
                        args.insert(slot, su[x].clone());
                        let got = self.apply(&args);
                        if !got.is_zero() {
                            let mut labels = self.source.format_tuple(&t);
                            labels.insert(slot, format!("1_{}", self.source.objects()[x]));
                            unit_failures.push(format!(
                                "F{n}({}) = {}",
                                labels.join(", "),
                                self.target.format_elem(&got)
                            ));
                        }
                    }
                }
            }
        }
        Ok(FunctorReport { arity_checked: arity_max, residuals, unit_failures })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    /// x --f--> y, both with units, over `field`.
    fn arrow(field: Field) -> AInfCategory {
        let mut a = AInfCategory::new(field, &["x", "y"]);
        let ux = a.add_generator("1x", 0, 0, 0).unwrap();
        let uy = a.add_generator("1y", 1, 1, 0).unwrap();
        a.add_generator("f", 0, 1, 0).unwrap();
        a.set_units(vec![Elem::basis(ux, field), Elem::basis(uy, field)]).unwrap();
        a.insert_unit_products().unwrap();
        a
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(4).len(), 8);
        assert_eq!(compositions(1), vec![vec![1]]);
    }

    #[test]
    fn identity_passes() {
        let a = arrow(Field::Rational);
        assert!(a.check_relations(3).passed());
        assert!(AInfFunctor::identity(&a).check(3).unwrap().passed());
    }

    #[test]
    fn corrupted_component_is_reported() {
        let field = Field::Rational;
        let a = arrow(field);
        let mut f = AInfFunctor::identity(&a);
        let fg = a.generator_id("f").unwrap();
        let ux = a.generator_id("1x").unwrap();
        // F₂(1x, f) = f has degree 0 but must have degree -1
        assert!(f.set_component(&[ux, fg], Elem::basis(fg, field)).is_err());
        // rescaling f alone is a legitimate functor, rescaling 1x is not
        f.set_component(&[fg], Elem::term(fg, field.int(2))).unwrap();
        assert!(f.check(3).unwrap().passed());
        f.set_component(&[ux], Elem::term(ux, field.int(2))).unwrap();
        let rep = f.check(2).unwrap();
        assert!(!rep.passed());
        assert!(rep.residuals.iter().any(|r| r.tuple == vec!["1x", "1x"]));
        assert_eq!(rep.unit_failures.len(), 1);
    }

    #[test]
    fn collapsing_functor_to_a_point() {
        let field = Field::Prime(2);
        let a = arrow(field);
        let mut pt = AInfCategory::new(field, &["p"]);
        let u = pt.add_generator("1", 0, 0, 0).unwrap();
        pt.set_units(vec![Elem::basis(u, field)]).unwrap();
        pt.insert_unit_products().unwrap();
        let mut f = AInfFunctor::new(a.clone(), pt, vec![0, 0]).unwrap();
        for g in 0..3 {
            f.set_component(&[g], Elem::basis(u, field)).unwrap();
        }
        assert!(f.check(3).unwrap().passed());
    }
}
