//! Right modules over an A∞-category, pre-natural transformations between them,
//! and the representable modules with the Yoneda functor.
//!
//! A module is a functor `A^op → Ch`, so its components and those of a
//! transformation are indexed by composable tuples of `A^op` in path order. All
//! tables are cut at a fixed depth. Every formula below writes a component of
//! length `d` from components of length at most `d`, so the truncation is exact.
//!
//! `m²_Ch` is always fed its arguments in the order they are applied, whatever
//! order a formula is written in; only the composable order type-checks.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use crate::category::{AInfCategory, Elem, GenId, ObjId, Residual};
use crate::chain::{m1_ch, m2_ch, ChainComplex, ChainMap, QisoDegree};
use crate::dg::ChFragment;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::functor::{equation_residuals, AInfFunctor, Linear, OpTarget};
use crate::graded::GradedMap;
use crate::linalg::Matrix;

/// Which summation ranges to use in `𝔡` and `⋄`.
///
/// `Standard` lets `T⁰` enter every sum. `AsPrinted` uses the literal bounds: the
/// `𝔡` term `m²(T^s, F₁^{d-s})` runs over `s ≥ 1` (its `s = d` term would need the
/// undefined `F⁰` and is dropped), and `⋄` runs over `n ≥ 1` for `d > 0`. With the
/// literal bounds `T ⋄ id ≠ T` and `⋄` is not associative, see the tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Ranges {
    Standard,
    AsPrinted,
}

/// A right module, stored as one complex per object and the components `M_n` for
/// `1 ≤ n ≤ depth` on basis tuples of `A^op`.
#[derive(Debug, Clone)]
pub struct RightModule {
    pub name: String,
    pub complexes: Vec<ChainComplex>,
    maps: BTreeMap<Vec<GenId>, GradedMap>,
}

impl RightModule {
    pub fn map(&self, t: &[GenId]) -> Option<&GradedMap> {
        self.maps.get(t)
    }

    pub fn maps(&self) -> &BTreeMap<Vec<GenId>, GradedMap> {
        &self.maps
    }

    /// The module as an A∞-functor from `A^op` into the Ch fragment on its complexes.
    pub fn functor(&self, a_op: &AInfCategory) -> Result<(ChFragment, AInfFunctor)> {
        let names: Vec<String> = a_op.objects().iter().map(|o| format!("{}({o})", self.name)).collect();
        let objects: Vec<(&str, ChainComplex)> =
            names.iter().map(String::as_str).zip(self.complexes.iter().cloned()).collect();
        let frag = ChFragment::new(a_op.field(), &objects)?;
        let n = a_op.objects().len();
        let mut f = AInfFunctor::new(a_op.clone(), frag.cat.clone(), (0..n).collect())?;
        for (t, m) in &self.maps {
            let x = a_op.generator(t[0]).source;
            let y = a_op.generator(*t.last().unwrap()).target;
            f.set_component(t, frag.elem_of_map(x, y, m)?)?;
        }
        Ok((frag, f))
    }
}

/// A pre-natural transformation of degree `degree` between modules `source` and
/// `target` of a [`ModuleCategory`]. The key `(x₀, t)` holds `T^{|t|}(t)` on the
/// tuple `t` starting at `x₀`; `(x₀, [])` holds `T⁰(x₀)`. Zero components are not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreNat {
    pub source: usize,
    pub target: usize,
    pub degree: i32,
    components: BTreeMap<(ObjId, Vec<GenId>), GradedMap>,
}

impl PreNat {
    pub fn zero(source: usize, target: usize, degree: i32) -> PreNat {
        PreNat { source, target, degree, components: BTreeMap::new() }
    }

    pub fn component(&self, x0: ObjId, t: &[GenId]) -> Option<&GradedMap> {
        self.components.get(&(x0, t.to_vec()))
    }

    pub fn components(&self) -> &BTreeMap<(ObjId, Vec<GenId>), GradedMap> {
        &self.components
    }

    fn add_component(&mut self, x0: ObjId, t: &[GenId], m: GradedMap) -> Result<()> {
        let key = (x0, t.to_vec());
        let next = match self.components.remove(&key) {
            Some(old) => old.add(&m)?,
            None => m,
        };
        if !next.is_zero() {
            self.components.insert(key, next);
        }
        Ok(())
    }
}

impl Linear for PreNat {
    fn plus(&self, other: &PreNat) -> PreNat {
        assert_eq!((self.source, self.target, self.degree), (other.source, other.target, other.degree));
        let mut out = self.clone();
        for ((x, t), m) in &other.components {
            out.add_component(*x, t, m.clone()).expect("same shapes");
        }
        out
    }
    fn scale(&self, c: &Scalar) -> PreNat {
        let components = self
            .components
            .iter()
            .map(|(k, m)| (k.clone(), m.scale(c)))
            .filter(|(_, m)| !m.is_zero())
            .collect();
        PreNat { components, ..self.clone() }
    }
    fn is_zero(&self) -> bool {
        self.components.is_empty()
    }
}

/// Modules over `base` with pre-natural transformations cut at `depth`.
#[derive(Debug, Clone)]
pub struct ModuleCategory {
    pub base: AInfCategory,
    pub base_op: AInfCategory,
    pub modules: Vec<RightModule>,
    pub depth: usize,
    pub ranges: Ranges,
}

impl ModuleCategory {
    /// The representable modules `Rep(x)`, one per object, in object order.
    pub fn representables(a: &AInfCategory, depth: usize, ranges: Ranges) -> Result<ModuleCategory> {
        let modules = (0..a.objects().len()).map(|x| rep_module(a, x, depth)).collect::<Result<Vec<_>>>()?;
        Ok(ModuleCategory { base: a.clone(), base_op: a.opposite(), modules, depth, ranges })
    }

    fn end(&self, x0: ObjId, t: &[GenId]) -> ObjId {
        t.last().map_or(x0, |&g| self.base_op.generator(g).target)
    }

    /// All keys `(x₀, t)` with `|t| ≤ depth`.
    pub fn keys(&self) -> Vec<(ObjId, Vec<GenId>)> {
        let mut out: Vec<(ObjId, Vec<GenId>)> = (0..self.base.objects().len()).map(|x| (x, vec![])).collect();
        for d in 1..=self.depth {
            for t in self.base_op.composable_tuples(d) {
                out.push((self.base_op.generator(t[0]).source, t));
            }
        }
        out
    }

    /// Degree of `T^{|t|}(t)` for a transformation of degree `g`.
    pub fn component_degree(&self, g: i32, t: &[GenId]) -> i32 {
        g - t.len() as i32 + self.base.tuple_degree(t)
    }

    fn zero_map(&self, m: usize, x: ObjId, n: usize, y: ObjId, degree: i32) -> GradedMap {
        GradedMap::zero(
            self.modules[m].complexes[x].space().clone(),
            self.modules[n].complexes[y].space().clone(),
            degree,
        )
    }

    pub fn set(&self, t_nat: &mut PreNat, x0: ObjId, t: &[GenId], m: GradedMap) -> Result<()> {
        let want = self.component_degree(t_nat.degree, t);
        if m.degree() != want {
            return Err(Error::Invalid(format!("component of degree {} where {want} is required", m.degree())));
        }
        if t.len() > self.depth {
            return Err(Error::ArityOverflow(format!("component of length {} beyond depth {}", t.len(), self.depth)));
        }
        let y = self.end(x0, t);
        let shape = self.zero_map(t_nat.source, x0, t_nat.target, y, want);
        if !m.source().same_shape(shape.source()) || !m.target().same_shape(shape.target()) {
            return Err(Error::SpaceMismatch("component between the wrong complexes".into()));
        }
        t_nat.components.remove(&(x0, t.to_vec()));
        t_nat.add_component(x0, t, m)
    }

    pub fn identity(&self, m: usize) -> PreNat {
        let mut t = PreNat::zero(m, m, 0);
        for (x, c) in self.modules[m].complexes.iter().enumerate() {
            t.add_component(x, &[], GradedMap::identity(c.space())).expect("fresh key");
        }
        t
    }

    /// `T` on a linear combination of words of equal length starting at `x₀`.
    fn apply_words(&self, t_nat: &PreNat, x0: ObjId, words: &BTreeMap<Vec<GenId>, Scalar>) -> Result<Option<GradedMap>> {
        let mut out: Option<GradedMap> = None;
        for (w, c) in words {
            if let Some(m) = t_nat.component(x0, w) {
                let v = m.scale(c);
                out = Some(match out {
                    Some(o) => o.add(&v)?,
                    None => v,
                });
            }
        }
        Ok(out)
    }

    /// The differential `𝔡T`.
    pub fn boundary(&self, t_nat: &PreNat) -> Result<PreNat> {
        let field = self.base.field();
        let g = t_nat.degree;
        let (m0, m1) = (&self.modules[t_nat.source], &self.modules[t_nat.target]);
        let mut out = PreNat::zero(t_nat.source, t_nat.target, g + 1);
        for (x0, t) in self.keys() {
            let d = t.len();
            let xd = self.end(x0, &t);
            if let Some(td) = t_nat.component(x0, &t) {
                let k = td.degree();
                out.add_component(x0, &t, m1_ch(td, &m0.complexes[x0], &m1.complexes[xd], k)?)?;
            }
            let low = if self.ranges == Ranges::Standard { 0 } else { 1 };
            for s in low..d {
                if let (Some(ts), Some(f1)) = (t_nat.component(x0, &t[..s]), m1.map(&t[s..])) {
                    out.add_component(x0, &t, m2_ch(ts, f1)?)?;
                }
            }
            for s in 1..=d {
                let xs = self.end(x0, &t[..s]);
                if let (Some(f0), Some(ts)) = (m0.map(&t[..s]), t_nat.component(xs, &t[s..])) {
                    let deg_prime = self.base.tuple_degree(&t[..s]) as i64 + s as i64;
                    let sign = field.sign((g as i64 - 1) * deg_prime);
                    out.add_component(x0, &t, m2_ch(f0, ts)?.scale(&sign))?;
                }
            }
            if d > 0 {
                let mut words = BTreeMap::new();
                for k in 1..=d.min(self.base_op.arity_bound()) {
                    for (w, c) in self.base_op.coderivation(k, &t)? {
                        let e: &mut Scalar = words.entry(w).or_insert_with(|| field.zero());
                        *e = &*e + &c;
                    }
                }
                words.retain(|_, c: &mut Scalar| !c.is_zero());
                if let Some(v) = self.apply_words(t_nat, x0, &words)? {
                    out.add_component(x0, &t, v.scale(&field.sign(g as i64)))?;
                }
            }
        }
        Ok(out)
    }

    /// `T₂ ⋄ T₁`, with `T₁` applied first.
    pub fn product(&self, t2: &PreNat, t1: &PreNat) -> Result<PreNat> {
        if t1.target != t2.source {
            return Err(Error::Invalid(format!(
                "cannot compose: {} is not {}",
                self.modules[t1.target].name, self.modules[t2.source].name
            )));
        }
        let mut out = PreNat::zero(t1.source, t2.target, t1.degree + t2.degree);
        for (x0, t) in self.keys() {
            let d = t.len();
            let low = if self.ranges == Ranges::AsPrinted && d > 0 { 1 } else { 0 };
            for n in low..=d {
                let xn = self.end(x0, &t[..n]);
                if let (Some(a), Some(b)) = (t1.component(x0, &t[..n]), t2.component(xn, &t[n..])) {
                    out.add_component(x0, &t, m2_ch(a, b)?)?;
                }
            }
        }
        Ok(out)
    }

    /// A random transformation of degree `g` with each admissible basis entry
    /// nonzero with probability `density`.
    pub fn sample(&self, rng: &mut impl Rng, source: usize, target: usize, g: i32, density: f64) -> Result<PreNat> {
        let field = self.base.field();
        let values: Vec<Scalar> = match field.elements() {
            Ok(v) => v.into_iter().filter(|c| !c.is_zero()).collect(),
            Err(_) => (-2..=2).filter(|&i| i != 0).map(|i| field.int(i)).collect(),
        };
        let mut out = PreNat::zero(source, target, g);
        for (x0, t) in self.keys() {
            let k = self.component_degree(g, &t);
            let shape = self.zero_map(source, x0, target, self.end(x0, &t), k);
            let (src, tgt) = (shape.source(), shape.target());
            let mut flat = Matrix::zeros(field, tgt.total_dim(), src.total_dim());
            for (j, (dj, _)) in src.flat_basis().into_iter().enumerate() {
                for (i, (di, _)) in tgt.flat_basis().into_iter().enumerate() {
                    if di == dj + k && rng.gen_bool(density) {
                        flat.set(i, j, values[rng.gen_range(0..values.len())].clone());
                    }
                }
            }
            let m = GradedMap::from_flat(src.clone(), tgt.clone(), k, &flat)?;
            out.add_component(x0, &t, m)?;
        }
        Ok(out)
    }

    /// `𝔡² T₁ = 0`, `𝔡(T₂ ⋄ T₁) = 𝔡T₂ ⋄ T₁ + (-1)^{deg T₂} T₂ ⋄ 𝔡T₁` and
    /// `T₃ ⋄ (T₂ ⋄ T₁) = (T₃ ⋄ T₂) ⋄ T₁`, each exactly up to the depth.
    pub fn dg_axioms(&self, t1: &PreNat, t2: &PreNat, t3: &PreNat) -> Result<DgAxioms> {
        let field = self.base.field();
        let d_squared = self.boundary(&self.boundary(t1)?)?.is_zero();
        let lhs = self.boundary(&self.product(t2, t1)?)?;
        let rhs = self
            .product(&self.boundary(t2)?, t1)?
            .plus(&self.product(t2, &self.boundary(t1)?)?.scale(&field.sign(t2.degree as i64)));
        let leibniz = lhs.plus(&rhs.scale(&field.int(-1))).is_zero();
        let associative = self.product(t3, &self.product(t2, t1)?)? == self.product(&self.product(t3, t2)?, t1)?;
        Ok(DgAxioms { d_squared, leibniz, associative })
    }

    pub fn describe_prenat(&self, t_nat: &PreNat) -> String {
        if t_nat.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = t_nat
            .components
            .iter()
            .map(|((x, t), m)| {
                let rows: Vec<String> = m.to_flat().to_string().lines().map(str::to_string).collect();
                format!(
                    "T{}({}; {}) = {}",
                    t.len(),
                    self.base.objects()[*x],
                    self.base_op.format_tuple(t).join(", "),
                    rows.join("")
                )
            })
            .collect();
        parts.join("; ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DgAxioms {
    pub d_squared: bool,
    pub leibniz: bool,
    pub associative: bool,
}

impl DgAxioms {
    pub fn passed(&self) -> bool {
        self.d_squared && self.leibniz && self.associative
    }
}

/// Operations of the dg category of modules, read as an A∞-category the same way
/// as `Ch`: `m¹ = 𝔡`, `m²(T₁, T₂) = (-1)^{deg T₁ (deg T₂ + 1)} T₂ ⋄ T₁`.
impl OpTarget for ModuleCategory {
    type V = PreNat;
    fn op(&self, args: &[PreNat]) -> Result<Option<PreNat>> {
        let v = match args {
            [t] => self.boundary(t)?,
            [t1, t2] => {
                let sign = self.base.field().sign(t1.degree as i64 * (t2.degree as i64 + 1));
                self.product(t2, t1)?.scale(&sign)
            }
            _ => return Ok(None),
        };
        Ok((!v.is_zero()).then_some(v))
    }
    fn describe(&self, v: &PreNat) -> String {
        self.describe_prenat(v)
    }
}

/// `Rep(x)`: complexes `Hom_A(y, x)` and `Rep(x)_n(f_n, ..., f_1)(z) =
/// (-1)^{ε(f)} m^{n+1}(z, f_1, ..., f_n)`, i.e. the path `[f_n, ..., f_1, z]`.
pub fn rep_module(a: &AInfCategory, x: ObjId, depth: usize) -> Result<RightModule> {
    if x >= a.objects().len() {
        return Err(Error::Invalid(format!("no object #{x}")));
    }
    let field = a.field();
    let homs: Vec<(ChainComplex, Vec<GenId>)> =
        (0..a.objects().len()).map(|y| a.hom_complex(y, x)).collect::<Result<_>>()?;
    let a_op = a.opposite();
    let mut maps = BTreeMap::new();
    for n in 1..=depth {
        for t in a_op.composable_tuples(n) {
            let x0 = a_op.generator(t[0]).source;
            let xn = a_op.generator(*t.last().unwrap()).target;
            let (src, src_gens) = &homs[x0];
            let (tgt, tgt_gens) = &homs[xn];
            let sign = field.sign(a.epsilon(&t));
            let degree = a.tuple_degree(&t) + 1 - n as i32;
            let mut path: Vec<Elem> = t.iter().rev().map(|&g| Elem::basis(g, field)).collect();
            path.push(Elem::zero());
            let mut flat = Matrix::zeros(field, tgt_gens.len(), src_gens.len());
            for (j, &z) in src_gens.iter().enumerate() {
                path[n] = Elem::basis(z, field);
                let v = a.op(&path).scale(&sign);
                for (i, c) in a.coords(&v, tgt_gens).into_iter().enumerate() {
                    flat.set(i, j, c);
                }
            }
            if !flat.is_zero() {
                maps.insert(t, GradedMap::from_flat(src.space().clone(), tgt.space().clone(), degree, &flat)?);
            }
        }
    }
    let complexes = homs.into_iter().map(|(c, _)| c).collect();
    Ok(RightModule { name: format!("Rep({})", a.objects()[x]), complexes, maps })
}

/// `Rep_n(f)` for a path `f = [f_1, ..., f_n]` of `A`: the transformation
/// `Rep(x₀) → Rep(x_n)` with `Rep_n(f)_l(c)(z) = (-1)^{†} m_{n+l+1}` on the path
/// `[c_l, ..., c_1, z, f_1, ..., f_n]`, `† = ε(c) + deg′f (deg′c + deg′z)`.
pub fn rep_functor_component(cat: &ModuleCategory, f: &[GenId]) -> Result<PreNat> {
    let a = &cat.base;
    let field = a.field();
    let n = f.len();
    if n == 0 {
        return Err(Error::ArityOverflow("Rep_0 is the object map".into()));
    }
    let x0 = a.generator(f[0]).source;
    let xn = a.generator(f[n - 1]).target;
    let g = a.tuple_degree(f) + 1 - n as i32;
    let deg_f = a.tuple_degree(f) as i64 + n as i64;
    let mut out = PreNat::zero(x0, xn, g);
    for (y0, c) in cat.keys() {
        let l = c.len();
        let yl = cat.end(y0, &c);
        let (src, src_gens) = a.hom_complex(y0, x0)?;
        let (tgt, tgt_gens) = a.hom_complex(yl, xn)?;
        let deg_c = a.tuple_degree(&c) as i64 + l as i64;
        let mut path: Vec<Elem> = c.iter().rev().map(|&h| Elem::basis(h, field)).collect();
        path.push(Elem::zero());
        path.extend(f.iter().map(|&h| Elem::basis(h, field)));
        let mut flat = Matrix::zeros(field, tgt_gens.len(), src_gens.len());
        for (j, &z) in src_gens.iter().enumerate() {
            path[l] = Elem::basis(z, field);
            let deg_z = a.generator(z).degree as i64 + 1;
            let sign = field.sign(a.epsilon(&c) + deg_f * (deg_c + deg_z));
            let v = a.op(&path).scale(&sign);
            for (i, coeff) in a.coords(&v, &tgt_gens).into_iter().enumerate() {
                flat.set(i, j, coeff);
            }
        }
        if !flat.is_zero() {
            let k = cat.component_degree(g, &c);
            let m = GradedMap::from_flat(src.space().clone(), tgt.space().clone(), k, &flat)?;
            cat.set(&mut out, y0, &c, m)?;
        }
    }
    Ok(out)
}

/// Residuals of the functor equation for `Rep: A → Rep(A)` up to `arity_max`.
pub fn check_rep_functor(cat: &ModuleCategory, arity_max: usize) -> Result<Vec<Residual>> {
    let component = |t: &[GenId]| {
        let v = rep_functor_component(cat, t)?;
        Ok((!v.is_zero()).then_some(v))
    };
    equation_residuals(&cat.base, cat, &component, arity_max)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct YonedaPair {
    pub source: String,
    pub target: String,
    /// `(degree, dim H, rank of H(ev ∘ Rep₁))`.
    pub degrees: Vec<(i32, usize, usize)>,
}

impl YonedaPair {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(|&(_, dim, rank)| dim == rank)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepQuasiEquivalenceReport {
    pub depth: usize,
    /// Functor-equation residuals of `Rep` up to arity 2.
    pub functor_residuals: Vec<Residual>,
    pub pairs: Vec<YonedaPair>,
    /// Objects of `Rep(A)` are the `Rep(x)` themselves, so this only fails if two
    /// objects give the same module, which the construction never does.
    pub we1: bool,
}

impl RepQuasiEquivalenceReport {
    pub fn we2(&self) -> bool {
        self.pairs.iter().all(YonedaPair::passed)
    }
    pub fn passed(&self) -> bool {
        self.functor_residuals.is_empty() && self.we1 && self.we2()
    }
    pub fn witness(&self) -> Option<(String, String, i32, usize, usize)> {
        self.pairs.iter().find_map(|p| {
            p.degrees
                .iter()
                .find(|(_, dim, rank)| dim != rank)
                .map(|&(n, dim, rank)| (p.source.clone(), p.target.clone(), n, dim, rank))
        })
    }
}

/// Evaluation at the unit, `T ↦ T⁰(x)(1_x)`, a chain map `Hom(Rep x, Rep y) → Hom_A(x, y)`.
pub fn evaluate_at_unit(cat: &ModuleCategory, t_nat: &PreNat) -> Result<Elem> {
    let a = &cat.base;
    let x = t_nat.source;
    let unit = a.unit(x).ok_or_else(|| Error::Invalid("evaluation at the unit needs units".into()))?;
    let Some(m) = t_nat.component(x, &[]) else { return Ok(Elem::zero()) };
    let (_, src_gens) = a.hom_complex(x, x)?;
    let (_, tgt_gens) = a.hom_complex(x, t_nat.target)?;
    let v = m.to_flat().apply(&a.coords(unit, &src_gens));
    Ok(a.elem_from_coords(&v, &tgt_gens))
}

/// The Yoneda comparison with a caller-supplied `Rep₁`. Per pair `(x, y)` it computes
/// `ev ∘ Rep₁` on `Hom_A(x, y)`, which must be a chain map inducing an isomorphism on
/// cohomology. This makes `H(Rep₁)` injective; the Yoneda lemma (cited, not
/// recomputed) supplies surjectivity.
pub fn check_yoneda(
    cat: &ModuleCategory,
    rep1: &dyn Fn(GenId) -> Result<PreNat>,
) -> Result<Vec<YonedaPair>> {
    let a = &cat.base;
    let field = a.field();
    let n = a.objects().len();
    let mut pairs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let (c, gens) = a.hom_complex(x, y)?;
            let mut flat = Matrix::zeros(field, gens.len(), gens.len());
            for (j, &g) in gens.iter().enumerate() {
                let e = evaluate_at_unit(cat, &rep1(g)?)?;
                for (i, v) in a.coords(&e, &gens).into_iter().enumerate() {
                    flat.set(i, j, v);
                }
            }
            let space = c.space().clone();
            let name = |o: ObjId| a.objects()[o].clone();
            let degrees: Vec<(i32, usize, usize)> = match GradedMap::from_flat(space.clone(), space, 0, &flat)
                .and_then(|m| ChainMap::new(c.clone(), c.clone(), m))
            {
                Ok(cm) => cm
                    .quasi_iso_report()
                    .into_iter()
                    .filter(|q| q.source_dim > 0)
                    .map(|q: QisoDegree| (q.degree, q.source_dim, q.rank))
                    .collect(),
                // not even a degree-0 chain map: report every nonzero cohomology as missed
                Err(_) => c
                    .space()
                    .support()
                    .into_iter()
                    .map(|d| (d, c.cohomology(d).dim, 0))
                    .filter(|&(_, dim, _)| dim > 0)
                    .collect(),
            };
            pairs.push(YonedaPair { source: name(x), target: name(y), degrees });
        }
    }
    Ok(pairs)
}

/// Quasi-equivalence check for `Rep: A → Rep(A)` at the given depth.
pub fn check_rep_quasi_equivalence(a: &AInfCategory, depth: usize) -> Result<RepQuasiEquivalenceReport> {
    let cat = ModuleCategory::representables(a, depth, Ranges::Standard)?;
    let functor_residuals = check_rep_functor(&cat, 2)?;
    let pairs = check_yoneda(&cat, &|g| rep_functor_component(&cat, &[g]))?;
    Ok(RepQuasiEquivalenceReport { depth, functor_residuals, pairs, we1: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::field::Field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// One object, unit `1`, `e` in degree 0 with `e·e = 0` and `h` in degree -1 with `m¹h = e`.
    fn dual_numbers(field: Field) -> AInfCategory {
        let mut a = AInfCategory::new(field, &["o"]);
        let u = a.add_generator("1", 0, 0, 0).unwrap();
        let e = a.add_generator("e", 0, 0, 0).unwrap();
        let h = a.add_generator("h", 0, 0, -1).unwrap();
        a.set_units(vec![Elem::basis(u, field)]).unwrap();
        a.insert_unit_products().unwrap();
        a.set_op(&[h], Elem::basis(e, field)).unwrap();
        a
    }

    #[test]
    fn rep_of_an_algebra_is_the_regular_module() {
        let field = Field::Rational;
        let a = dual_numbers(field);
        let m = rep_module(&a, 0, 2).unwrap();
        assert_eq!(m.complexes[0].space().total_dim(), 3);
        let (e, u) = (a.generator_id("e").unwrap(), a.generator_id("1").unwrap());
        // Rep₁(e)(1) = (-1)^{ε(e)} m²(1, e) = -e
        let rep_e = m.map(&[e]).unwrap().to_flat();
        let (_, gens) = a.hom_complex(0, 0).unwrap();
        let iu = gens.iter().position(|&g| g == u).unwrap();
        let ie = gens.iter().position(|&g| g == e).unwrap();
        assert_eq!(*rep_e.get(ie, iu), field.int(-1));
        // a unit among the inputs kills the higher components
        assert!(m.map(&[u, e]).is_none() && m.map(&[e, u]).is_none());
        // as printed, Rep₁(1) = -id, which is not a unit-preserving functor in odd characteristic
        let (_, f) = m.functor(&a.opposite()).unwrap();
        let rep = f.check(2).unwrap();
        assert!(rep.residuals.iter().any(|r| r.tuple == vec!["1", "1"]));
        let m2 = rep_module(&dual_numbers(Field::Prime(2)), 0, 3).unwrap();
        let (_, f2) = m2.functor(&dual_numbers(Field::Prime(2)).opposite()).unwrap();
        assert!(f2.check(4).unwrap().residuals.is_empty());
    }

    #[test]
    fn boundary_of_the_identity_vanishes() {
        for field in [Field::Prime(2), Field::Prime(3), Field::Rational] {
            let cat = ModuleCategory::representables(&dual_numbers(field), 2, Ranges::Standard).unwrap();
            let id = cat.identity(0);
            assert!(cat.boundary(&id).unwrap().is_zero(), "{field}");
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let t = cat.sample(&mut rng, 0, 0, 0, 0.5).unwrap();
            assert_eq!(cat.product(&t, &id).unwrap(), t);
            // the other side picks up the unit sign of m²_Ch on each component
            let left = cat.product(&id, &t).unwrap();
            for ((x, w), m) in t.components() {
                assert_eq!(left.component(*x, w).unwrap(), &m.scale(&field.sign(m.degree() as i64)));
            }
        }
    }

    fn dg_axioms(cat: &ModuleCategory, seed: u64, rounds: usize) -> Vec<String> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut bad = Vec::new();
        let n = cat.modules.len();
        for r in 0..rounds {
            let (x, y, z, w) = (r % n, (r / n) % n, (r / 3) % n, (r / 5) % n);
            let g: Vec<i32> = (0..3).map(|_| rng.gen_range(-1..=1)).collect();
            let t1 = cat.sample(&mut rng, x, y, g[0], 0.4).unwrap();
            let t2 = cat.sample(&mut rng, y, z, g[1], 0.4).unwrap();
            let t3 = cat.sample(&mut rng, z, w, g[2], 0.4).unwrap();
            let c = cat.dg_axioms(&t1, &t2, &t3).unwrap();
            if !c.passed() {
                bad.push(format!("round {r}: {c:?}"));
            }
        }
        bad
    }

    #[test]
    fn representables_form_a_dg_category_over_f2() {
        for (name, a) in examples::library(Field::Prime(2)).unwrap() {
            if a.objects().len() > 2 || name.contains("fragment") {
                continue;
            }
            let cat = ModuleCategory::representables(&a, 2, Ranges::Standard).unwrap();
            assert_eq!(dg_axioms(&cat, 1, 12), Vec::<String>::new(), "{name}");
        }
    }

    #[test]
    fn printed_ranges_break_the_unit_law() {
        let cat = ModuleCategory::representables(&dual_numbers(Field::Prime(2)), 2, Ranges::AsPrinted).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = cat.sample(&mut rng, 0, 0, 0, 0.8).unwrap();
        assert_eq!(cat.product(&cat.identity(0), &t).unwrap(), t);
        assert_ne!(cat.product(&t, &cat.identity(0)).unwrap(), t);
    }

    #[test]
    fn rep_is_a_functor_and_a_quasi_equivalence_over_f2() {
        let field = Field::Prime(2);
        for a in [dual_numbers(field), examples::k_category(field), examples::triple_product(field)] {
            let rep = check_rep_quasi_equivalence(&a, 2).unwrap();
            assert!(rep.passed(), "{rep:?}");
            let cat = ModuleCategory::representables(&a, 2, Ranges::Standard).unwrap();
            assert!(check_rep_functor(&cat, 3).unwrap().is_empty());
        }
    }

    #[test]
    fn corrupted_rep_fails_the_yoneda_check() {
        let a = dual_numbers(Field::Rational);
        let cat = ModuleCategory::representables(&a, 1, Ranges::Standard).unwrap();
        let u = a.generator_id("1").unwrap();
        let pairs = check_yoneda(&cat, &|g| {
            let v = rep_functor_component(&cat, &[g])?;
            Ok(if g == u { v.scale(&a.field().zero()) } else { v })
        })
        .unwrap();
        assert!(pairs.iter().any(|p| !p.passed()));
    }
}
