//! Shift categories and twisted complexes.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::category::{AInfCategory, Elem, GenId, ObjId};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::functor::AInfFunctor;
use crate::homotopy::{basis_vec, check_quasi_equivalence, HoCategory, QuasiEquivalenceReport};
use crate::linalg::{span_elements, Matrix};

/// `Σ(A)` on the shift range `[lo, hi]`: objects `x[n]`, `Hom(x[n], y[m]) = Hom(x, y)[m - n]`.
#[derive(Debug, Clone)]
pub struct Shifted {
    pub cat: AInfCategory,
    pub lo: i32,
    pub hi: i32,
    objects: BTreeMap<(ObjId, i32), ObjId>,
    lifts: BTreeMap<(GenId, i32, i32), GenId>,
    lowers: Vec<(GenId, i32, i32)>,
}

/// Sign of lifting `m^k` to shifted arguments: moving the shift of each input past the
/// later inputs in suspended degree, `Σ_{i<j} (n_{i-1} - n_i)(deg a_j + 1)` in path order.
fn shift_sign(base: &AInfCategory, t: &[GenId], shifts: &[i32]) -> i64 {
    let mut e = 0i64;
    for i in 0..t.len() {
        let s = (shifts[i] - shifts[i + 1]) as i64;
        for &g in &t[i + 1..] {
            e += s * (base.generator(g).degree as i64 + 1);
        }
    }
    e
}

/// `Σ(A)` with shifts in `[-range, range]`.
pub fn shift_category(a: &AInfCategory, range: i32) -> Result<Shifted> {
    shifted_between(a, -range, range)
}

pub fn shifted_between(a: &AInfCategory, lo: i32, hi: i32) -> Result<Shifted> {
    if lo > hi {
        return Err(Error::Invalid(format!("empty shift range [{lo}, {hi}]")));
    }
    let field = a.field();
    let mut names = Vec::new();
    let mut objects = BTreeMap::new();
    for x in 0..a.objects().len() {
        for n in lo..=hi {
            objects.insert((x, n), names.len());
            names.push(format!("{}[{n}]", a.objects()[x]));
        }
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut cat = AInfCategory::new(field, &refs).with_arity_bound(a.arity_bound());
    let mut lifts = BTreeMap::new();
    let mut lowers = Vec::new();
    for (g, gen) in a.generators().iter().enumerate() {
        for n in lo..=hi {
            for m in lo..=hi {
                let label = format!("{}[{n},{m}]", gen.label);
                let id = cat.add_generator(&label, objects[&(gen.source, n)], objects[&(gen.target, m)], gen.degree + n - m)?;
                lifts.insert((g, n, m), id);
                lowers.push((g, n, m));
            }
        }
    }
    let mut sh = Shifted { cat, lo, hi, objects, lifts, lowers };
    for (t, v) in a.ops() {
        let k = t.len();
        let mut shifts = vec![lo; k + 1];
        loop {
            let sign = field.sign(shift_sign(a, t, &shifts));
            let tuple: Vec<GenId> = (0..k).map(|i| sh.lifts[&(t[i], shifts[i], shifts[i + 1])]).collect();
            let out = sh.lift_elem(v, shifts[0], shifts[k]).scale(&sign);
            sh.cat.set_op(&tuple, out)?;
            let mut i = 0;
            while i <= k && shifts[i] == hi {
                shifts[i] = lo;
                i += 1;
            }
            if i > k {
                break;
            }
            shifts[i] += 1;
        }
    }
    if let Some(units) = a.units() {
        let mut lifted = Vec::new();
        for x in 0..a.objects().len() {
            for n in lo..=hi {
                lifted.push(sh.lift_elem(&units[x], n, n));
            }
        }
        // object order is (x, n) lexicographic, matching `objects`
        sh.cat.set_units(lifted)?;
    }
    Ok(sh)
}

impl Shifted {
    pub fn object(&self, x: ObjId, n: i32) -> Result<ObjId> {
        self.objects
            .get(&(x, n))
            .copied()
            .ok_or_else(|| Error::WindowOverflow(format!("shift {n} outside [{}, {}]", self.lo, self.hi)))
    }

    pub fn lift(&self, g: GenId, n: i32, m: i32) -> Result<GenId> {
        self.lifts
            .get(&(g, n, m))
            .copied()
            .ok_or_else(|| Error::WindowOverflow(format!("shifts {n}, {m} outside [{}, {}]", self.lo, self.hi)))
    }

    pub fn lift_elem(&self, e: &Elem, n: i32, m: i32) -> Elem {
        Elem::from_terms(e.terms().map(|(g, c)| (self.lifts[&(g, n, m)], c.clone())))
    }

    /// `(g, n, m)` for a generator of `Σ(A)`.
    pub fn lower(&self, g: GenId) -> (GenId, i32, i32) {
        self.lowers[g]
    }
}

/// Entries `E_i[n_i]` and a strictly upper-triangular `α_ij ∈ Hom_A(E_i, E_j)^{n_j - n_i + 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedComplex {
    pub name: String,
    pub entries: Vec<(ObjId, i32)>,
    pub alpha: BTreeMap<(usize, usize), Elem>,
}

impl TwistedComplex {
    /// A single object `x[n]` with `α = 0`.
    pub fn object(name: &str, x: ObjId, n: i32) -> TwistedComplex {
        TwistedComplex { name: name.into(), entries: vec![(x, n)], alpha: BTreeMap::new() }
    }

    pub fn validate(&self, a: &AInfCategory) -> Result<()> {
        for &(x, _) in &self.entries {
            if x >= a.objects().len() {
                return Err(Error::Invalid(format!("{}: no object #{x}", self.name)));
            }
        }
        for (&(i, j), e) in &self.alpha {
            if i >= j || j >= self.entries.len() {
                return Err(Error::Invalid(format!("{}: α_{i}{j} is not strictly upper-triangular", self.name)));
            }
            let ((x, n), (y, m)) = (self.entries[i], self.entries[j]);
            a.check_elem(e, x, y, Some(m - n + 1))?;
        }
        Ok(())
    }

    fn shift_window(&self) -> (i32, i32) {
        let lo = self.entries.iter().map(|e| e.1).min().unwrap_or(0);
        let hi = self.entries.iter().map(|e| e.1).max().unwrap_or(0);
        (lo, hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct McReport {
    /// `(i, j, value)` for each nonzero component of `Σ_k m_k(α, ..., α)`.
    pub residuals: Vec<(usize, usize, String)>,
}

impl McReport {
    pub fn passed(&self) -> bool {
        self.residuals.is_empty()
    }
}

/// Chains `i_0 < i_1 < ... < i_k` of entries with every `α` on the way nonzero.
fn alpha_chains(e: &TwistedComplex, k: usize) -> Vec<Vec<usize>> {
    let n = e.entries.len();
    let mut out = Vec::new();
    fn go(e: &TwistedComplex, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k + 1 {
            out.push(cur.clone());
            return;
        }
        let last = *cur.last().unwrap();
        for next in last + 1..n {
            if e.alpha.contains_key(&(last, next)) {
                cur.push(next);
                go(e, n, k, cur, out);
                cur.pop();
            }
        }
    }
    for start in 0..n {
        go(e, n, k, &mut vec![start], &mut out);
    }
    out
}

/// `Σ_k m_k(α, ..., α)` evaluated in `Σ(A)`, where `α` is inserted along every
/// index-compatible chain.
pub fn mc_check(sh: &Shifted, e: &TwistedComplex) -> Result<McReport> {
    let mut total: BTreeMap<(usize, usize), Elem> = BTreeMap::new();
    let max_k = e.entries.len().saturating_sub(1).min(sh.cat.arity_bound());
    for k in 1..=max_k {
        for chain in alpha_chains(e, k) {
            let args = chain
                .windows(2)
                .map(|w| sh.lift_alpha(e, w[0], w[1]))
                .collect::<Result<Vec<_>>>()?;
            let v = sh.cat.op(&args);
            if !v.is_zero() {
                total.entry((chain[0], chain[k])).or_insert_with(Elem::zero).add_scaled(&v, &sh.cat.field().one());
            }
        }
    }
    let residuals = total
        .into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|((i, j), v)| (i, j, sh.cat.format_elem(&v)))
        .collect();
    Ok(McReport { residuals })
}

impl Shifted {
    fn lift_alpha(&self, e: &TwistedComplex, i: usize, j: usize) -> Result<Elem> {
        let (n, m) = (e.entries[i].1, e.entries[j].1);
        self.object(e.entries[i].0, n)?;
        self.object(e.entries[j].0, m)?;
        Ok(self.lift_elem(&e.alpha[&(i, j)], n, m))
    }
}

/// `Cone(f) = (x[1] ⊕ y, α = f)` for a closed degree-0 `f: x → y`.
pub fn cone(a: &AInfCategory, f: &Elem, x: ObjId, y: ObjId) -> Result<TwistedComplex> {
    a.check_elem(f, x, y, Some(0))?;
    if !a.op(&[f.clone()]).is_zero() {
        return Err(Error::Invalid(format!("m¹({}) != 0", a.format_elem(f))));
    }
    let mut alpha = BTreeMap::new();
    if !f.is_zero() {
        alpha.insert((0, 1), f.clone());
    }
    let name = format!("Cone({})", a.format_elem(f));
    Ok(TwistedComplex { name, entries: vec![(x, 1), (y, 0)], alpha })
}

/// The dg category of finitely many twisted complexes over a strict dg category:
/// `Hom(E, F) = ⊕ Hom_{Σ(A)}(E_i[n_i], F_j[m_j])`, `m¹(φ) = m¹φ + m²(α_E, φ) + m²(φ, α_F)`,
/// `m²` entrywise.
#[derive(Debug, Clone)]
pub struct TwCategory {
    pub cat: AInfCategory,
    pub shifted: Shifted,
    pub complexes: Vec<TwistedComplex>,
    index: BTreeMap<(ObjId, ObjId, usize, usize, GenId), GenId>,
}

impl TwCategory {
    pub fn new(a: &AInfCategory, complexes: Vec<TwistedComplex>) -> Result<TwCategory> {
        if !a.is_strict_dg() {
            return Err(Error::Unsupported(
                "compositions of twisted complexes are implemented for strict dg categories only".into(),
            ));
        }
        for e in &complexes {
            e.validate(a)?;
        }
        let lo = complexes.iter().map(|e| e.shift_window().0).min().unwrap_or(0);
        let hi = complexes.iter().map(|e| e.shift_window().1).max().unwrap_or(0);
        let sh = shifted_between(a, lo, hi)?;
        for e in &complexes {
            let mc = mc_check(&sh, e)?;
            if !mc.passed() {
                return Err(Error::Invalid(format!("{} fails Maurer-Cartan: {:?}", e.name, mc.residuals)));
            }
        }
        let field = a.field();
        let names: Vec<&str> = complexes.iter().map(|e| e.name.as_str()).collect();
        let mut cat = AInfCategory::new(field, &names);
        let mut index = BTreeMap::new();
        for (p, e) in complexes.iter().enumerate() {
            for (q, f) in complexes.iter().enumerate() {
                for (i, &(x, n)) in e.entries.iter().enumerate() {
                    for (j, &(y, m)) in f.entries.iter().enumerate() {
                        for h in sh.cat.hom(sh.object(x, n)?, sh.object(y, m)?) {
                            let gen = sh.cat.generator(h);
                            let label = format!("{}>{}:{i}{j}:{}", e.name, f.name, gen.label);
                            index.insert((p, q, i, j, h), cat.add_generator(&label, p, q, gen.degree)?);
                        }
                    }
                }
            }
        }
        let mut tw = TwCategory { cat, shifted: sh, complexes, index };
        tw.fill_tables()?;
        Ok(tw)
    }

    /// `Σ(A)` element placed in slot `(i, j)` of `Hom(E_p, E_q)`.
    fn place(&self, p: ObjId, q: ObjId, i: usize, j: usize, v: &Elem) -> Elem {
        Elem::from_terms(v.terms().map(|(h, c)| (self.index[&(p, q, i, j, h)], c.clone())))
    }

    fn fill_tables(&mut self) -> Result<()> {
        let field = self.cat.field();
        let sh = &self.shifted;
        let mut ops: Vec<(Vec<GenId>, Elem)> = Vec::new();
        let by_hom: BTreeMap<(ObjId, ObjId), Vec<(usize, usize, GenId, GenId)>> =
            self.index.iter().fold(BTreeMap::new(), |mut acc, (&(p, q, i, j, h), &g)| {
                acc.entry((p, q)).or_default().push((i, j, h, g));
                acc
            });
        let n = self.complexes.len();
        for p in 0..n {
            for q in 0..n {
                let (e, f) = (&self.complexes[p], &self.complexes[q]);
                for &(i, j, h, g) in by_hom.get(&(p, q)).map_or(&[][..], Vec::as_slice) {
                    let hb = Elem::basis(h, field);
                    let mut out = self.place(p, q, i, j, &sh.cat.op(&[hb.clone()]));
                    for i2 in 0..i {
                        if e.alpha.contains_key(&(i2, i)) {
                            let v = sh.cat.op(&[sh.lift_alpha(e, i2, i)?, hb.clone()]);
                            out.add_scaled(&self.place(p, q, i2, j, &v), &field.one());
                        }
                    }
                    for j2 in j + 1..f.entries.len() {
                        if f.alpha.contains_key(&(j, j2)) {
                            let v = sh.cat.op(&[hb.clone(), sh.lift_alpha(f, j, j2)?]);
                            out.add_scaled(&self.place(p, q, i, j2, &v), &field.one());
                        }
                    }
                    ops.push((vec![g], out));
                }
            }
        }
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    let first = by_hom.get(&(p, q)).map_or(&[][..], Vec::as_slice);
                    let second = by_hom.get(&(q, r)).map_or(&[][..], Vec::as_slice);
                    for &(i, j, h, g) in first {
                        for &(j2, k, h2, g2) in second {
                            if j != j2 {
                                continue;
                            }
                            let v = sh.cat.op(&[Elem::basis(h, field), Elem::basis(h2, field)]);
                            if !v.is_zero() {
                                ops.push((vec![g, g2], self.place(p, r, i, k, &v)));
                            }
                        }
                    }
                }
            }
        }
        for (t, v) in ops {
            self.cat.set_op(&t, v)?;
        }
        if let Some(units) = sh.cat.units() {
            let mut lifted = Vec::new();
            for (p, e) in self.complexes.iter().enumerate() {
                let mut u = Elem::zero();
                for (i, &(x, n)) in e.entries.iter().enumerate() {
                    u.add_scaled(&self.place(p, p, i, i, &units[sh.object(x, n)?]), &field.one());
                }
                lifted.push(u);
            }
            self.cat.set_units(lifted)?;
        }
        Ok(())
    }

    /// The element of `Hom(E_p, E_q)` with the `A`-element `v` in slot `(i, j)`.
    pub fn embed(&self, p: ObjId, q: ObjId, i: usize, j: usize, v: &Elem) -> Result<Elem> {
        let (e, f) = (&self.complexes[p], &self.complexes[q]);
        let (n, m) = (e.entries[i].1, f.entries[j].1);
        Ok(self.place(p, q, i, j, &self.shifted.lift_elem(v, n, m)))
    }
}

/// Runs the quasi-equivalence check on `A ↪ Σ(A)` with shifts in `[-range, range]`.
pub fn closed_under_shift_check(a: &AInfCategory, range: i32) -> Result<QuasiEquivalenceReport> {
    let sh = shift_category(a, range)?;
    let objects = (0..a.objects().len()).map(|x| sh.object(x, 0)).collect::<Result<Vec<_>>>()?;
    let mut f = AInfFunctor::new(a.clone(), sh.cat.clone(), objects)?;
    for g in 0..a.generators().len() {
        f.set_component(&[g], Elem::basis(sh.lift(g, 0, 0)?, a.field()))?;
    }
    check_quasi_equivalence(&f)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Idempotent {
    pub object: String,
    pub class: Vec<String>,
    /// The object the idempotent splits through, if a splitting was found.
    pub image: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdempotentReport {
    pub idempotents: Vec<Idempotent>,
}

impl IdempotentReport {
    pub fn passed(&self) -> bool {
        self.idempotents.iter().all(|e| e.image.is_some())
    }
    pub fn unsplit(&self) -> Vec<&Idempotent> {
        self.idempotents.iter().filter(|e| e.image.is_none()).collect()
    }
}

fn stack(a: &Matrix, b: &Matrix) -> Matrix {
    let field = a.field();
    let cols: Vec<Vec<Scalar>> = (0..a.cols()).map(|j| [a.column(j), b.column(j)].concat()).collect();
    Matrix::from_columns(field, a.rows() + b.rows(), &cols)
}

/// Enumerates the idempotents of each `H⁰(End(k))` other than `0` and `id` (which always
/// split) and looks for `p: k → im`, `s: im → k` with `s ∘ p = E`, `p ∘ s = id`.
/// Needs a finite field; at most `cap` candidates per enumeration.
pub fn ho_idempotent_check(a: &AInfCategory, cap: u128) -> Result<IdempotentReport> {
    let field = a.field();
    let q = field.order().ok_or(Error::InfiniteField)? as u128;
    let ho = HoCategory::new(a)?;
    let n = ho.objects();
    let count = |d: usize| q.checked_pow(d as u32).unwrap_or(u128::MAX);
    let mut idempotents = Vec::new();
    for k in 0..n {
        let d = ho.dim(k, k);
        if count(d) > cap {
            return Err(Error::CapExceeded { estimate: count(d), cap });
        }
        let id = ho.identity(k)?;
        let basis: Vec<Vec<Scalar>> = (0..d).map(|i| basis_vec(field, d, i)).collect();
        for e in span_elements(field, d, &basis) {
            if e.iter().all(Scalar::is_zero) || e == id || ho.compose(k, k, k, &e, &e) != e {
                continue;
            }
            let mut image = None;
            'objects: for im in 0..n {
                let di = ho.dim(k, im);
                if count(di) > cap {
                    return Err(Error::CapExceeded { estimate: count(di), cap });
                }
                let id_im = ho.identity(im)?;
                let pb: Vec<Vec<Scalar>> = (0..di).map(|i| basis_vec(field, di, i)).collect();
                for p in span_elements(field, di, &pb) {
                    // s ↦ (s ∘ p, p ∘ s) is linear in s
                    let system = stack(&ho.precompose_matrix(k, im, k, &p), &ho.postcompose_matrix(im, k, im, &p));
                    if system.cols() == 0 {
                        if e.iter().all(Scalar::is_zero) && id_im.is_empty() {
                            image = Some(a.objects()[im].clone());
                            break 'objects;
                        }
                        continue;
                    }
                    if system.solve(&[e.clone(), id_im.clone()].concat()).is_some() {
                        image = Some(a.objects()[im].clone());
                        break 'objects;
                    }
                }
            }
            idempotents.push(Idempotent {
                object: a.objects()[k].clone(),
                class: e.iter().map(Scalar::to_string).collect(),
                image,
            });
        }
    }
    Ok(IdempotentReport { idempotents })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::ChainComplex;
    use crate::dg::ChFragment;
    use crate::examples;
    use crate::field::Field;

    fn k_dim(field: Field, name: &str, n: usize) -> ChainComplex {
        ChainComplex::from_dims(field, name, &[(0, n)], BTreeMap::new()).unwrap()
    }

    #[test]
    fn shift_category_is_an_ainfty_category() {
        for field in [Field::Prime(2), Field::Prime(3), Field::Rational] {
            for (name, a) in examples::library(field).unwrap() {
                if name.contains("fragment") {
                    continue;
                }
                let sh = shift_category(&a, 1).unwrap();
                assert!(sh.cat.check_relations(5).passed(), "{name} over {field}");
                assert!(sh.cat.check_units().unwrap().passed(), "{name} over {field}");
                assert_eq!(sh.cat.max_nonzero_arity(), a.max_nonzero_arity());
            }
        }
        let a = examples::k_category(Field::Rational);
        let sh = shift_category(&a, 2).unwrap();
        let g = a.generator_id("g").unwrap();
        assert_eq!(sh.cat.generator(sh.lift(g, 0, 0).unwrap()).degree, 1);
        assert_eq!(sh.cat.generator(sh.lift(g, 1, 0).unwrap()).degree, 2);
        assert!(sh.lift(g, 3, 0).is_err());
    }

    #[test]
    fn shifting_by_one_permutes_hom_tables() {
        let a = examples::two_object_dg(Field::Rational);
        let sh = shift_category(&a, 2).unwrap();
        for g in 0..a.generators().len() {
            for n in -2..2 {
                for m in -2..2 {
                    let d0 = sh.cat.generator(sh.lift(g, n, m).unwrap()).degree;
                    let d1 = sh.cat.generator(sh.lift(g, n + 1, m + 1).unwrap()).degree;
                    assert_eq!(d0, d1);
                }
            }
        }
    }

    #[test]
    fn maurer_cartan_instances() {
        let field = Field::Rational;
        let a = examples::two_object_dg(field);
        let sh = shifted_between(&a, -2, 1).unwrap();
        let (x, y) = (0, 1);
        let b = a.generator_id("b").unwrap();
        let aa = a.generator_id("a").unwrap();
        // α = 0 always holds
        let plain = TwistedComplex { name: "s".into(), entries: vec![(x, 0), (y, 1)], alpha: BTreeMap::new() };
        assert!(mc_check(&sh, &plain).unwrap().passed());
        // closed b in degree 0 gives a cone, the non-closed a does not
        assert!(mc_check(&sh, &cone(&a, &Elem::basis(b, field), x, y).unwrap()).unwrap().passed());
        assert!(cone(&a, &Elem::basis(aa, field), x, y).is_err());
        let bad = TwistedComplex {
            name: "t".into(),
            entries: vec![(x, 0), (y, -2)],
            alpha: BTreeMap::from([((0, 1), Elem::basis(aa, field))]),
        };
        bad.validate(&a).unwrap();
        let rep = mc_check(&sh, &bad).unwrap();
        assert_eq!(rep.residuals.len(), 1);
        assert_eq!((rep.residuals[0].0, rep.residuals[0].1), (0, 1));
    }

    #[test]
    fn cone_of_the_identity_is_contractible() {
        let field = Field::Prime(3);
        let frag = ChFragment::new(field, &[("P", examples::interval(field, "p"))]).unwrap();
        let a = &frag.cat;
        let id = a.unit(0).unwrap().clone();
        let c = cone(a, &id, 0, 0).unwrap();
        let tw = TwCategory::new(a, vec![c]).unwrap();
        assert!(tw.cat.check_relations(3).passed());
        assert!(tw.cat.check_units().unwrap().passed());
        let (end, _) = tw.cat.hom_complex(0, 0).unwrap();
        for n in -3..=3 {
            assert_eq!(end.cohomology(n).dim, 0);
        }
        let frag = ChFragment::new(field, &[("P", examples::point(field, "p"))]).unwrap();
        let c = cone(&frag.cat, frag.cat.unit(0).unwrap(), 0, 0).unwrap();
        let tw = TwCategory::new(&frag.cat, vec![c]).unwrap();
        assert_eq!(HoCategory::new(&tw.cat).unwrap().identity(0).unwrap(), Vec::<Scalar>::new());
    }

    #[test]
    fn rotation_of_a_triangle() {
        let field = Field::Prime(2);
        let frag = ChFragment::new(field, &[("P", examples::point(field, "p"))]).unwrap();
        let a = &frag.cat;
        let u = a.unit(0).unwrap().clone();
        let c = cone(a, &u, 0, 0).unwrap();
        let rot = TwistedComplex {
            name: "rot".into(),
            entries: vec![(0, 1), (0, 1), (0, 0)],
            alpha: BTreeMap::from([((0, 2), u.clone()), ((1, 2), u.clone())]),
        };
        let shifted = TwistedComplex::object("P[1]", 0, 1);
        let tw = TwCategory::new(a, vec![c, rot, shifted]).unwrap();
        assert!(tw.cat.check_relations(3).passed());
        let ho = HoCategory::new(&tw.cat).unwrap();
        assert!(ho.find_iso(1, 2).unwrap().is_some());
        assert!(ho.find_iso(0, 2).unwrap().is_none());
    }

    #[test]
    fn shift_closure() {
        let field = Field::Prime(2);
        let point = ChFragment::new(field, &[("P", examples::point(field, "p"))]).unwrap();
        let rep = closed_under_shift_check(&point.cat, 1).unwrap();
        assert!(rep.we2() && !rep.we1());
        assert!(rep.essential_image.iter().any(|(o, w)| o == "P[1]" && w.is_none()));
        let contractible = ChFragment::new(field, &[("I", examples::interval(field, "i"))]).unwrap();
        assert!(closed_under_shift_check(&contractible.cat, 2).unwrap().passed());
    }

    #[test]
    fn idempotents_split_when_summands_are_present() {
        let field = Field::Prime(2);
        let missing = ChFragment::new(field, &[("V", k_dim(field, "v", 2))]).unwrap();
        let rep = ho_idempotent_check(&missing.cat, 1 << 20).unwrap();
        // the six rank-one projectors of F₂² have nowhere to split
        assert_eq!(rep.unsplit().len(), 6);
        let full = ChFragment::new(field, &[("V", k_dim(field, "v", 2)), ("L", k_dim(field, "l", 1))]).unwrap();
        let rep = ho_idempotent_check(&full.cat, 1 << 20).unwrap();
        assert!(rep.passed() && rep.idempotents.len() == 6);
        assert!(matches!(ho_idempotent_check(&full.cat, 4), Err(Error::CapExceeded { .. })));
    }
}
