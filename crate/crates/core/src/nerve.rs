//! The A∞-nerve. An `n`-simplex is a unital A∞-functor `[n]_K → A`, recorded as
//! objects `X_0, ..., X_n` and coefficients `f_I ∈ Hom(X_{min I}, X_{max I})` of
//! degree `2 - |I|` for every `I ⊆ {0..n}` with `|I| ≥ 2`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::category::{AInfCategory, Elem, GenId, ObjId};
use crate::delta::Monotone;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::functor::{compositions, AInfFunctor};
use crate::linalg::{span_elements, Matrix};
use crate::homotopy::{finite_ho, HoCategory};
use crate::simplicial::{homotopy_category_qcat, FiniteCategory, SimplicialMap, SimplicialSet};

/// `[n]_K`: objects `0..n`, one generator `j_ik` for `i < k`, units `1_i`.
pub fn minimal_category(field: Field, n: usize) -> AInfCategory {
    let names: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut a = AInfCategory::new(field, &refs);
    let units: Vec<Elem> =
        (0..=n).map(|i| Elem::basis(a.add_generator(&format!("1_{i}"), i, i, 0).unwrap(), field)).collect();
    let mut j = HashMap::new();
    for i in 0..=n {
        for k in i + 1..=n {
            j.insert((i, k), a.add_generator(&format!("j{i}{k}"), i, k, 0).unwrap());
        }
    }
    for i in 0..=n {
        for k in i + 1..=n {
            for l in k + 1..=n {
                a.set_op(&[j[&(i, k)], j[&(k, l)]], Elem::basis(j[&(i, l)], field)).unwrap();
            }
        }
    }
    a.set_units(units).unwrap();
    a.insert_unit_products().unwrap();
    a
}

/// Subsets of `{0..n}` with at least two elements, by size and then lexicographically.
pub fn subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 2..=n + 1 {
        let mut cur = Vec::new();
        fn go(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == size {
                out.push(cur.clone());
                return;
            }
            for v in start..=n {
                cur.push(v);
                go(n, size, v + 1, cur, out);
                cur.pop();
            }
        }
        go(n, size, 0, &mut cur, &mut out);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NerveSimplex {
    pub objects: Vec<ObjId>,
    /// Nonzero coefficients only.
    pub coeffs: BTreeMap<Vec<usize>, Elem>,
}

impl NerveSimplex {
    pub fn dim(&self) -> usize {
        self.objects.len() - 1
    }

    pub fn coeff(&self, i: &[usize]) -> Elem {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: Vec<usize>, e: Elem) {
        if e.is_zero() {
            self.coeffs.remove(&i);
        } else {
            self.coeffs.insert(i, e);
        }
    }

    pub fn describe(&self, a: &AInfCategory) -> String {
        let objs: Vec<&str> = self.objects.iter().map(|&x| a.objects()[x].as_str()).collect();
        let mut parts = vec![format!("({})", objs.join(","))];
        for (i, e) in &self.coeffs {
            let idx: String = i.iter().map(|v| v.to_string()).collect();
            parts.push(format!("f{idx}={}", a.format_elem(e)));
        }
        parts.join(" ")
    }
}

/// `ε_r(s) = Σ_{k=2..r} (1 - s_k + s_{k-1}) s_{k-1}`.
pub fn epsilon_r(s: &[usize]) -> i64 {
    (1..s.len()).map(|k| (1 - s[k] as i64 + s[k - 1] as i64) * s[k - 1] as i64).sum()
}

/// Right-hand side of the coefficient equation for `I = {i_0 < ... < i_{m+1}}`:
/// `Σ_j (-1)^{j-1} f_{I - i_j} + Σ_j (-1)^{1+(m+1)(j-1)} m²(f_{i_j..i_{m+1}}, f_{i_0..i_j})
///  + Σ_{r>2} Σ_s (-1)^{1+ε_r(s)} m^r(blocks of sizes s)`.
pub fn coefficient_rhs(a: &AInfCategory, coeff: &dyn Fn(&[usize]) -> Elem, i: &[usize]) -> Elem {
    let field = a.field();
    let m = i.len() - 2;
    let mut out = Elem::zero();
    for j in 1..=m {
        let mut face = i.to_vec();
        face.remove(j);
        out.add_scaled(&coeff(&face), &field.sign(j as i64 - 1));
    }
    for j in 1..=m {
        let first = coeff(&i[..=j]);
        let second = coeff(&i[j..]);
        if first.is_zero() || second.is_zero() {
            continue;
        }
        let sign = field.sign(1 + (m as i64 + 1) * (j as i64 - 1));
        out.add_scaled(&a.op(&[first, second]), &sign);
    }
    for s in compositions(m + 1) {
        if s.len() <= 2 || s.len() > a.arity_bound() {
            continue;
        }
        let mut blocks = Vec::with_capacity(s.len());
        let mut start = 0;
        for &len in &s {
            let b = coeff(&i[start..=start + len]);
            if b.is_zero() {
                break;
            }
            blocks.push(b);
            start += len;
        }
        if blocks.len() < s.len() {
            continue;
        }
        out.add_scaled(&a.op(&blocks), &field.sign(1 + epsilon_r(&s)));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplexReport {
    pub residuals: Vec<(String, String)>,
}

impl SimplexReport {
    pub fn passed(&self) -> bool {
        self.residuals.is_empty()
    }
}

/// Checks degrees, ends and the coefficient equation for every `I`.
pub fn simplex_check(a: &AInfCategory, s: &NerveSimplex) -> Result<SimplexReport> {
    let n = s.dim();
    for (i, e) in &s.coeffs {
        if i.len() < 2 || i.iter().any(|&v| v > n) || !i.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("bad index set {i:?}")));
        }
        a.check_elem(e, s.objects[i[0]], s.objects[*i.last().unwrap()], Some(2 - i.len() as i32))?;
    }
    let coeff = |i: &[usize]| s.coeff(i);
    let mut residuals = Vec::new();
    for i in subsets(n) {
        let lhs = a.op(&[s.coeff(&i)]);
        let r = lhs.minus(&coefficient_rhs(a, &coeff, &i));
        if !r.is_zero() {
            let idx: String = i.iter().map(|v| v.to_string()).collect();
            residuals.push((format!("f{idx}"), a.format_elem(&r)));
        }
    }
    Ok(SimplexReport { residuals })
}

/// Prescribed data for a constrained enumeration.
#[derive(Debug, Clone, Default)]
pub struct Constraints {
    pub objects: Option<Vec<ObjId>>,
    pub fixed: BTreeMap<Vec<usize>, Elem>,
}

/// `m¹` on one graded piece, with the generators on both sides and a cycle basis.
struct Piece {
    gens: Vec<GenId>,
    next: Vec<GenId>,
    d: Matrix,
    cycles: Vec<Vec<Scalar>>,
}

struct Enumerator<'a> {
    a: &'a AInfCategory,
    pieces: HashMap<(ObjId, ObjId, i32), Piece>,
}

impl<'a> Enumerator<'a> {
    fn new(a: &'a AInfCategory) -> Enumerator<'a> {
        Enumerator { a, pieces: HashMap::new() }
    }

    fn piece(&mut self, x: ObjId, y: ObjId, deg: i32) -> &Piece {
        let a = self.a;
        self.pieces.entry((x, y, deg)).or_insert_with(|| {
            let gens = a.hom_in_degree(x, y, deg);
            let next = a.hom_in_degree(x, y, deg + 1);
            let cols: Vec<Vec<Scalar>> =
                gens.iter().map(|&g| a.coords(&a.op(&[Elem::basis(g, a.field())]), &next)).collect();
            let d = Matrix::from_columns(a.field(), next.len(), &cols);
            let cycles = if gens.is_empty() { Vec::new() } else { d.kernel() };
            Piece { gens, next, d, cycles }
        })
    }
}

fn object_tuples(count: usize, len: usize) -> Vec<Vec<ObjId>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..count).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// All `n`-simplices satisfying the constraints, in the order of `NerveSimplex`
/// (objects lexicographic, then coefficients).
pub fn nerve_level_constrained(a: &AInfCategory, n: usize, cap: u128, c: &Constraints) -> Result<Vec<NerveSimplex>> {
    let q = a.field().order().ok_or(Error::InfiniteField)? as u128;
    let subs = subsets(n);
    let tuples = match &c.objects {
        Some(o) => vec![o.clone()],
        None => object_tuples(a.objects().len(), n + 1),
    };
    let mut en = Enumerator::new(a);
    // cardinality estimate: Π q^{dim Z} over the free coefficients
    let mut estimate: u128 = 0;
    for t in &tuples {
        let mut e: u128 = 1;
        for i in &subs {
            if c.fixed.contains_key(i) {
                continue;
            }
            let z = en.piece(t[i[0]], t[*i.last().unwrap()], 2 - i.len() as i32).cycles.len() as u32;
            e = e.saturating_mul(q.saturating_pow(z));
        }
        estimate = estimate.saturating_add(e);
    }
    if estimate > cap {
        return Err(Error::CapExceeded { estimate, cap });
    }
    // every equation only involves subsets of its index set with the same or a smaller
    // maximum, so this order prunes as early as possible
    let mut order = subs.clone();
    order.sort_by(|a, b| (a.last(), a.len(), a).cmp(&(b.last(), b.len(), b)));
    let mut out = Vec::new();
    for t in tuples {
        let mut s = NerveSimplex { objects: t, coeffs: BTreeMap::new() };
        extend(&mut en, &order, 0, &mut s, c, &mut out)?;
    }
    out.sort();
    Ok(out)
}

fn extend(
    en: &mut Enumerator,
    subs: &[Vec<usize>],
    p: usize,
    s: &mut NerveSimplex,
    c: &Constraints,
    out: &mut Vec<NerveSimplex>,
) -> Result<()> {
    if p == subs.len() {
        out.push(s.clone());
        return Ok(());
    }
    let a = en.a;
    let field = a.field();
    let i = &subs[p];
    let (x, y) = (s.objects[i[0]], s.objects[*i.last().unwrap()]);
    let rhs = {
        let snap = &*s;
        coefficient_rhs(a, &|j: &[usize]| snap.coeff(j), i)
    };
    let piece = en.piece(x, y, 2 - i.len() as i32);
    if let Some(f) = c.fixed.get(i) {
        if a.op(&[f.clone()]) == rhs {
            s.set(i.clone(), f.clone());
            extend(en, subs, p + 1, s, c, out)?;
            s.coeffs.remove(i);
        }
        return Ok(());
    }
    let target = a.coords(&rhs, &piece.next);
    if piece.gens.is_empty() {
        if rhs.is_zero() {
            extend(en, subs, p + 1, s, c, out)?;
        }
        return Ok(());
    }
    let Some(particular) = piece.d.solve(&target) else { return Ok(()) };
    let gens = piece.gens.clone();
    let choices = span_elements(field, gens.len(), &piece.cycles);
    for z in choices {
        let v: Vec<Scalar> = particular.iter().zip(&z).map(|(p, z)| p + z).collect();
        s.set(i.clone(), a.elem_from_coords(&v, &gens));
        extend(en, subs, p + 1, s, c, out)?;
    }
    s.coeffs.remove(i);
    Ok(())
}

pub fn nerve_level(a: &AInfCategory, n: usize, cap: u128) -> Result<Vec<NerveSimplex>> {
    nerve_level_constrained(a, n, cap, &Constraints::default())
}

/// `g_J = f_{α(J)}` if `α` is injective on `J`; `1` if `J = {j, j'}` with `α(j) = α(j')`; else `0`.
pub fn structure_map(a: &AInfCategory, alpha: &Monotone, s: &NerveSimplex) -> Result<NerveSimplex> {
    let objects: Vec<ObjId> = alpha.values.iter().map(|&v| s.objects[v]).collect();
    let mut out = NerveSimplex { objects, coeffs: BTreeMap::new() };
    for j in subsets(alpha.domain()) {
        let image: Vec<usize> = j.iter().map(|&v| alpha.apply(v)).collect();
        let injective = image.windows(2).all(|w| w[0] < w[1]);
        if injective {
            out.set(j, s.coeff(&image));
        } else if j.len() == 2 {
            let unit = a.unit(s.objects[image[0]]).ok_or_else(|| Error::Invalid("missing unit elements".into()))?;
            out.set(j, unit.clone());
        }
    }
    Ok(out)
}

/// Levels `0..=level` of the nerve with their simplicial structure.
#[derive(Debug, Clone)]
pub struct Nerve {
    pub simplices: Vec<Vec<NerveSimplex>>,
    pub set: SimplicialSet,
}

impl Nerve {
    pub fn index_of(&self, s: &NerveSimplex) -> Option<usize> {
        self.simplices[s.dim()].iter().position(|t| t == s)
    }
}

fn assemble(
    a: &AInfCategory,
    simplices: Vec<Vec<NerveSimplex>>,
    act: &dyn Fn(&Monotone, &NerveSimplex) -> Result<NerveSimplex>,
) -> Result<Nerve> {
    let index: Vec<HashMap<&NerveSimplex, usize>> =
        simplices.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s, i)).collect()).collect();
    let top = simplices.len() - 1;
    let lookup = |alpha: &Monotone, s: &NerveSimplex| -> Result<usize> {
        let t = act(alpha, s)?;
        index[alpha.domain()].get(&t).copied().ok_or_else(|| {
            Error::Invalid(format!(
                "{:?} sends {} to {}, which fails the coefficient equation",
                alpha.values,
                s.describe(a),
                t.describe(a)
            ))
        })
    };
    // faces[n][i][x] = d_i x and degens[n][i][x] = s_i x; other maps act by composition
    let mut faces = vec![Vec::new()];
    for n in 1..=top {
        let per: Result<Vec<Vec<usize>>> = (0..=n)
            .map(|i| simplices[n].iter().map(|s| lookup(&Monotone::coface(n, i), s)).collect())
            .collect();
        faces.push(per?);
    }
    let mut degens = Vec::new();
    for n in 0..top {
        let per: Result<Vec<Vec<usize>>> = (0..=n)
            .map(|i| simplices[n].iter().map(|s| lookup(&Monotone::codegeneracy(n, i), s)).collect())
            .collect();
        degens.push(per?);
    }
    let names = simplices.iter().map(|l| l.iter().map(|s| s.describe(a)).collect()).collect();
    let set = SimplicialSet::from_generators(names, &faces, &degens)?;
    Ok(Nerve { simplices, set })
}

pub fn nerve(a: &AInfCategory, level: usize, cap: u128) -> Result<Nerve> {
    let simplices = (0..=level).map(|n| nerve_level(a, n, cap)).collect::<Result<Vec<_>>>()?;
    assemble(a, simplices, &|alpha, s| structure_map(a, alpha, s))
}

/// `(F∘f)_I = Σ F_r(f_{B_1}, ..., f_{B_r})` over consecutive block decompositions of `I`.
pub fn push_forward(f: &AInfFunctor, s: &NerveSimplex) -> NerveSimplex {
    let objects = s.objects.iter().map(|&x| f.obj(x)).collect();
    let mut out = NerveSimplex { objects, coeffs: BTreeMap::new() };
    for i in subsets(s.dim()) {
        let mut total = Elem::zero();
        for parts in compositions(i.len() - 1) {
            let mut blocks = Vec::new();
            let mut start = 0;
            for &len in &parts {
                blocks.push(s.coeff(&i[start..=start + len]));
                start += len;
            }
            if blocks.iter().any(Elem::is_zero) {
                continue;
            }
            total = total.plus(&f.apply(&blocks));
        }
        out.set(i, total);
    }
    out
}

/// The induced map of nerves, level by level.
pub fn nerve_map(f: &AInfFunctor, source: &Nerve, target: &Nerve) -> Result<SimplicialMap> {
    let mut levels = Vec::new();
    for (n, level) in source.simplices.iter().enumerate() {
        let index: HashMap<&NerveSimplex, usize> = target.simplices[n].iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut row = Vec::new();
        for s in level {
            let t = push_forward(f, s);
            let i = index
                .get(&t)
                .copied()
                .ok_or_else(|| Error::Invalid(format!("image {} is not a simplex", t.describe(&f.target))))?;
            row.push(i);
        }
        levels.push(row);
    }
    Ok(SimplicialMap { levels })
}

/// Constraints selecting `Hom^R(x, y)_n` inside level `n + 1`.
pub fn hom_right_constraints(a: &AInfCategory, x: ObjId, y: ObjId, n: usize) -> Result<Constraints> {
    let unit = a.unit(x).ok_or_else(|| Error::Invalid("missing unit elements".into()))?;
    let mut objects = vec![x; n + 1];
    objects.push(y);
    let mut fixed = BTreeMap::new();
    for i in subsets(n) {
        fixed.insert(i.clone(), if i.len() == 2 { unit.clone() } else { Elem::zero() });
    }
    Ok(Constraints { objects: Some(objects), fixed })
}

/// `Hom^R(x, y)` of the nerve by constrained enumeration, levels `0..=level`.
pub fn hom_right_nerve(a: &AInfCategory, x: ObjId, y: ObjId, level: usize, cap: u128) -> Result<Nerve> {
    let simplices = (0..=level)
        .map(|n| nerve_level_constrained(a, n + 1, cap, &hom_right_constraints(a, x, y, n)?))
        .collect::<Result<Vec<_>>>()?;
    // level n of the mapping space holds (n+1)-simplices; α acts through its extension
    assemble(a, simplices, &|alpha, s| structure_map(a, &alpha.extend_top(), s))
}

/// `Ho` of the nerve against `Ho(A)`, with the exhibited isomorphism.
#[derive(Debug, Clone)]
pub struct HoComparison {
    pub nerve_side: FiniteCategory,
    pub algebra_side: FiniteCategory,
    /// Image of each nerve-side morphism class.
    pub morphism_map: Vec<usize>,
    pub isomorphism: bool,
}

/// An edge `(X_0, X_1; f01)` of the nerve goes to the class of `f01` in `H⁰`.
pub fn compare_ho(a: &AInfCategory, cap: u128) -> Result<HoComparison> {
    let nv = nerve(a, 2, cap)?;
    let qh = homotopy_category_qcat(&nv.set)?;
    let ho = HoCategory::new(a)?;
    let (algebra_side, classes) = finite_ho(&ho)?;
    let index: HashMap<&(ObjId, ObjId, Vec<Scalar>), usize> = classes.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut morphism_map = vec![usize::MAX; qh.category.morphisms.len()];
    for (e, s) in nv.simplices[1].iter().enumerate() {
        let (x, y) = (s.objects[0], s.objects[1]);
        let class = ho.class_of(x, y, &s.coeff(&[0, 1])).ok_or_else(|| Error::Invalid("edge is not a cycle".into()))?;
        let target = index[&(x, y, class)];
        let slot = &mut morphism_map[qh.edge_class[e]];
        if *slot != usize::MAX && *slot != target {
            return Err(Error::Invalid(format!("homotopic edges with different classes: {}", s.describe(a))));
        }
        *slot = target;
    }
    let objects: Vec<usize> = (0..a.objects().len()).collect();
    let isomorphism = qh.category.is_isomorphism(&algebra_side, &objects, &morphism_map);
    Ok(HoComparison { nerve_side: qh.category, algebra_side, morphism_map, isomorphism })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{nerve_cat, validate};

    #[test]
    fn minimal_categories() {
        let f = Field::Prime(2);
        for n in 0..3 {
            let c = minimal_category(f, n);
            assert!(c.check_relations(3).passed());
            assert!(c.check_units().unwrap().passed());
        }
        let c = minimal_category(f, 2);
        let (j01, j12, j02) = (c.generator_id("j01").unwrap(), c.generator_id("j12").unwrap(), c.generator_id("j02").unwrap());
        assert_eq!(c.op(&[Elem::basis(j01, f), Elem::basis(j12, f)]), Elem::basis(j02, f));
    }

    #[test]
    fn signs_and_subsets() {
        assert_eq!(subsets(2), vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1, 2]]);
        // r = 3 with s = (1, 1, 1): ε = (1-1+1)·1 + (1-1+1)·1 = 2
        assert_eq!(epsilon_r(&[1, 1, 1]), 2);
    }

    #[test]
    fn two_simplex_equation_in_a_dg_category() {
        // over Q: m¹(f012) = f02 - m²(f12, f01)
        let f = Field::Rational;
        let c = minimal_category(f, 2);
        let g = |l: &str| c.generator_id(l).unwrap();
        let mut s = NerveSimplex { objects: vec![0, 1, 2], coeffs: BTreeMap::new() };
        s.set(vec![0, 1], Elem::basis(g("j01"), f));
        s.set(vec![1, 2], Elem::basis(g("j12"), f));
        s.set(vec![0, 2], Elem::basis(g("j02"), f));
        assert!(simplex_check(&c, &s).unwrap().passed());
        s.set(vec![0, 2], Elem::zero());
        let rep = simplex_check(&c, &s).unwrap();
        assert_eq!(rep.residuals, vec![("f012".to_string(), "j02".to_string())]);
    }

    /// Underlying ordinary category of a linear category with homs in degree 0 only.
    fn underlying(a: &AInfCategory) -> FiniteCategory {
        let field = a.field();
        let n = a.objects().len();
        let mut morphisms = Vec::new();
        let mut elems = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let gens = a.hom_in_degree(x, y, 0);
                let basis: Vec<Vec<Scalar>> = (0..gens.len()).map(|i| crate::homotopy::basis_vec(field, gens.len(), i)).collect();
                for v in span_elements(field, gens.len(), &basis) {
                    let e = a.elem_from_coords(&v, &gens);
                    morphisms.push((a.format_elem(&e), x, y));
                    elems.push(e);
                }
            }
        }
        let find = |e: &Elem, x: usize, y: usize| {
            (0..elems.len()).find(|&i| elems[i] == *e && morphisms[i].1 == x && morphisms[i].2 == y).unwrap()
        };
        let identities = (0..n).map(|x| find(a.unit(x).unwrap(), x, x)).collect();
        let mut compose = HashMap::new();
        for f in 0..elems.len() {
            for g in 0..elems.len() {
                if morphisms[f].2 == morphisms[g].1 {
                    let h = a.op(&[elems[f].clone(), elems[g].clone()]);
                    compose.insert((f, g), find(&h, morphisms[f].1, morphisms[g].2));
                }
            }
        }
        FiniteCategory { objects: a.objects().to_vec(), morphisms, identities, compose }
    }

    #[test]
    fn nerve_of_minimal_category_is_nerve_of_its_underlying_category() {
        let f = Field::Prime(2);
        let c = minimal_category(f, 2);
        let nv = nerve(&c, 3, 1_000_000).unwrap();
        let cat = underlying(&c);
        cat.validate().unwrap();
        let classical = nerve_cat(&cat, 3).unwrap();
        for n in 0..=3 {
            assert_eq!(nv.set.level(n), classical.level(n));
        }
        assert_eq!(nv.set.level(1), 15);
        assert!(validate(&nv.set).passed());
    }

    #[test]
    fn refusals() {
        let c = minimal_category(Field::Rational, 1);
        assert_eq!(nerve_level(&c, 1, 10).unwrap_err(), Error::InfiniteField);
        let c = minimal_category(Field::Prime(2), 1);
        assert!(matches!(nerve_level(&c, 2, 1), Err(Error::CapExceeded { .. })));
    }
}
