//! Finitely presented A∞-categories.
//!
//! Morphism spaces are spanned by named homogeneous generators. The operation
//! `m^d` is a table on composable generator tuples. Tuples are stored in *path
//! order*: the first entry is the first morphism of the path (`a_1` in
//! `m^d(a_d, ..., a_1)`), so `[f, g]` with `f: x → y`, `g: y → z` is the
//! argument list of `m²(g, f)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::chain::ChainComplex;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::graded::{GradedMap, GradedSpace};
use crate::linalg::Matrix;

pub type ObjId = usize;
pub type GenId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub label: String,
    pub source: ObjId,
    pub target: ObjId,
    pub degree: i32,
}

/// A finite linear combination of generators.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem {
    terms: BTreeMap<GenId, Scalar>,
}

impl Elem {
    pub fn zero() -> Elem {
        Elem::default()
    }

    pub fn basis(g: GenId, field: Field) -> Elem {
        Elem::term(g, field.one())
    }

    pub fn term(g: GenId, c: Scalar) -> Elem {
        let mut e = Elem::zero();
        e.add_term(g, &c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (GenId, Scalar)>) -> Elem {
        let mut e = Elem::zero();
        for (g, c) in terms {
            e.add_term(g, &c);
        }
        e
    }

    pub fn add_term(&mut self, g: GenId, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let next = match self.terms.get(&g) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if next.is_zero() {
            self.terms.remove(&g);
        } else {
            self.terms.insert(g, next);
        }
    }

    pub fn add_scaled(&mut self, other: &Elem, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (g, x) in &other.terms {
            self.add_term(*g, &(x * c));
        }
    }

    pub fn plus(&self, other: &Elem) -> Elem {
        let mut e = self.clone();
        for (g, x) in &other.terms {
            e.add_term(*g, x);
        }
        e
    }

    pub fn minus(&self, other: &Elem) -> Elem {
        let mut e = self.clone();
        for (g, x) in &other.terms {
            e.add_term(*g, &(-x));
        }
        e
    }

    pub fn scale(&self, c: &Scalar) -> Elem {
        let mut e = Elem::zero();
        e.add_scaled(self, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (GenId, &Scalar)> {
        self.terms.iter().map(|(g, c)| (*g, c))
    }

    pub fn coeff(&self, g: GenId) -> Option<&Scalar> {
        self.terms.get(&g)
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }
}

/// A unital-or-not A∞-category with operations stored up to `arity_bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AInfCategory {
    field: Field,
    objects: Vec<String>,
    gens: Vec<Generator>,
    ops: BTreeMap<Vec<GenId>, Elem>,
    units: Option<Vec<Elem>>,
    arity_bound: usize,
}

pub const DEFAULT_ARITY_BOUND: usize = 4;

impl AInfCategory {
    pub fn new(field: Field, objects: &[&str]) -> AInfCategory {
        AInfCategory {
            field,
            objects: objects.iter().map(|s| s.to_string()).collect(),
            gens: Vec::new(),
            ops: BTreeMap::new(),
            units: None,
            arity_bound: DEFAULT_ARITY_BOUND,
        }
    }

    pub fn with_arity_bound(mut self, bound: usize) -> AInfCategory {
        self.arity_bound = bound.max(2);
        self
    }

    pub fn add_object(&mut self, name: &str) -> ObjId {
        self.objects.push(name.to_string());
        self.objects.len() - 1
    }

    pub fn add_generator(&mut self, label: &str, source: ObjId, target: ObjId, degree: i32) -> Result<GenId> {
        if source >= self.objects.len() || target >= self.objects.len() {
            return Err(Error::Invalid(format!("generator `{label}` references a missing object")));
        }
        if self.gens.iter().any(|g| g.label == label) {
            return Err(Error::Invalid(format!("duplicate generator label `{label}`")));
        }
        self.gens.push(Generator { label: label.to_string(), source, target, degree });
        Ok(self.gens.len() - 1)
    }

    /// Sets `m^d` on a composable generator tuple (path order).
    pub fn set_op(&mut self, inputs: &[GenId], output: Elem) -> Result<()> {
        let d = inputs.len();
        if d == 0 || d > self.arity_bound {
            return Err(Error::ArityOverflow(format!("m^{d} with arity bound {}", self.arity_bound)));
        }
        let (src, tgt) = self.path_ends(inputs)?;
        let degree = self.tuple_degree(inputs) + 2 - d as i32;
        self.check_elem(&output, src, tgt, Some(degree))?;
        if output.is_zero() {
            self.ops.remove(inputs);
        } else {
            self.ops.insert(inputs.to_vec(), output);
        }
        Ok(())
    }

    /// Declares unit elements, one per object, making the category (claimed) unital.
    pub fn set_units(&mut self, units: Vec<Elem>) -> Result<()> {
        if units.len() != self.objects.len() {
            return Err(Error::Invalid("one unit per object is required".into()));
        }
        for (x, u) in units.iter().enumerate() {
            self.check_elem(u, x, x, Some(0))?;
        }
        self.units = Some(units);
        Ok(())
    }

    /// Fills in `m²(f, 1) = f` and `m²(1, g) = (-1)^{deg g} g` for generator units.
    pub fn insert_unit_products(&mut self) -> Result<()> {
        let units = self.units.clone().ok_or_else(|| Error::Invalid("no units declared".into()))?;
        let field = self.field;
        for (x, u) in units.iter().enumerate() {
            let Some(ug) = single_generator(u, field) else {
                return Err(Error::Invalid("unit products need generator units".into()));
            };
            for g in 0..self.gens.len() {
                let gen = self.gens[g].clone();
                if gen.source == x {
                    self.set_op(&[ug, g], Elem::basis(g, field))?;
                }
                if gen.target == x {
                    self.set_op(&[g, ug], Elem::term(g, field.sign(gen.degree as i64)))?;
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn objects(&self) -> &[String] {
        &self.objects
    }
    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }
    pub fn generator(&self, g: GenId) -> &Generator {
        &self.gens[g]
    }
    pub fn ops(&self) -> &BTreeMap<Vec<GenId>, Elem> {
        &self.ops
    }
    pub fn units(&self) -> Option<&[Elem]> {
        self.units.as_deref()
    }
    pub fn unit(&self, x: ObjId) -> Option<&Elem> {
        self.units.as_ref().map(|u| &u[x])
    }
    pub fn arity_bound(&self) -> usize {
        self.arity_bound
    }

    pub fn object_id(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn generator_id(&self, label: &str) -> Option<GenId> {
        self.gens.iter().position(|g| g.label == label)
    }

    /// Generators of `Hom(x, y)` ordered by degree, then id.
    pub fn hom(&self, x: ObjId, y: ObjId) -> Vec<GenId> {
        let mut v: Vec<GenId> =
            (0..self.gens.len()).filter(|&g| self.gens[g].source == x && self.gens[g].target == y).collect();
        v.sort_by_key(|&g| (self.gens[g].degree, g));
        v
    }

    pub fn hom_in_degree(&self, x: ObjId, y: ObjId, d: i32) -> Vec<GenId> {
        self.hom(x, y).into_iter().filter(|&g| self.gens[g].degree == d).collect()
    }

    pub fn tuple_degree(&self, t: &[GenId]) -> i32 {
        t.iter().map(|&g| self.gens[g].degree).sum()
    }

    fn path_ends(&self, t: &[GenId]) -> Result<(ObjId, ObjId)> {
        for w in t.windows(2) {
            if self.gens[w[0]].target != self.gens[w[1]].source {
                return Err(Error::Invalid(format!(
                    "`{}` and `{}` are not composable",
                    self.gens[w[0]].label, self.gens[w[1]].label
                )));
            }
        }
        Ok((self.gens[t[0]].source, self.gens[*t.last().unwrap()].target))
    }

    /// Checks that `e` lives in `Hom(src, tgt)`, homogeneous of `degree` if given.
    pub fn check_elem(&self, e: &Elem, src: ObjId, tgt: ObjId, degree: Option<i32>) -> Result<()> {
        for (g, c) in e.terms() {
            if !self.field.contains(c) {
                return Err(Error::FieldMismatch(format!("coefficient {c} not in {}", self.field)));
            }
            let gen = self.gens.get(g).ok_or_else(|| Error::UnknownLabel(format!("#{g}")))?;
            if gen.source != src || gen.target != tgt {
                return Err(Error::Invalid(format!("`{}` is not in Hom({}, {})", gen.label, self.objects[src], self.objects[tgt])));
            }
            if let Some(d) = degree {
                if gen.degree != d {
                    return Err(Error::Invalid(format!("`{}` has degree {} but {} is required", gen.label, gen.degree, d)));
                }
            }
        }
        Ok(())
    }

    /// Value of `m^d` on a basis tuple; `None` means zero.
    pub fn op_basis(&self, t: &[GenId]) -> Option<&Elem> {
        self.ops.get(t)
    }

    /// Multilinear evaluation of `m^d` on elements listed in path order.
    pub fn op(&self, args: &[Elem]) -> Elem {
        let mut out = Elem::zero();
        if args.is_empty() || args.len() > self.arity_bound || args.iter().any(Elem::is_zero) {
            return out;
        }
        let mut tuple = Vec::with_capacity(args.len());
        self.expand(args, 0, &mut tuple, &self.field.one(), &mut |t, c| {
            if let Some(v) = self.ops.get(t) {
                out.add_scaled(v, c);
            }
        });
        out
    }

    /// Iterates the basis tuples of a product of elements with their coefficients.
    pub fn expand(
        &self,
        args: &[Elem],
        i: usize,
        tuple: &mut Vec<GenId>,
        coeff: &Scalar,
        visit: &mut dyn FnMut(&[GenId], &Scalar),
    ) {
        if i == args.len() {
            visit(tuple, coeff);
            return;
        }
        for (g, c) in args[i].terms() {
            if let Some(&prev) = tuple.last() {
                if self.gens[prev].target != self.gens[g].source {
                    continue;
                }
            }
            tuple.push(g);
            self.expand(args, i + 1, tuple, &(coeff * c), visit);
            tuple.pop();
        }
    }

    /// Highest arity with a nonzero table entry.
    pub fn max_nonzero_arity(&self) -> usize {
        self.ops.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_strict_dg(&self) -> bool {
        self.max_nonzero_arity() <= 2
    }

    /// All composable generator tuples of length `len`, lexicographic in generator id.
    pub fn composable_tuples(&self, len: usize) -> Vec<Vec<GenId>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.paths(len, &mut cur, &mut out);
        out
    }

    fn paths(&self, len: usize, cur: &mut Vec<GenId>, out: &mut Vec<Vec<GenId>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for g in 0..self.gens.len() {
            if let Some(&prev) = cur.last() {
                if self.gens[prev].target != self.gens[g].source {
                    continue;
                }
            }
            cur.push(g);
            self.paths(len, cur, out);
            cur.pop();
        }
    }

    pub fn format_elem(&self, e: &Elem) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let labels: Vec<String> = e.terms().map(|(g, _)| self.gens[g].label.clone()).collect();
        let coeffs: Vec<Scalar> = e.terms().map(|(_, c)| c.clone()).collect();
        crate::chain::format_combination(&labels, &coeffs)
    }

    pub fn format_tuple(&self, t: &[GenId]) -> Vec<String> {
        t.iter().map(|&g| self.gens[g].label.clone()).collect()
    }

    /// `Hom(x, y)` as a cochain complex with differential `m¹`, with the generator for each flat basis index.
    pub fn hom_complex(&self, x: ObjId, y: ObjId) -> Result<(ChainComplex, Vec<GenId>)> {
        let gens = self.hom(x, y);
        let mut by_degree: BTreeMap<i32, Vec<String>> = BTreeMap::new();
        for &g in &gens {
            by_degree.entry(self.gens[g].degree).or_default().push(self.gens[g].label.clone());
        }
        // the window always contains degrees -1..=1 so H⁰ and its neighbours are addressable
        let (lo, hi) = match (by_degree.keys().next(), by_degree.keys().last()) {
            (Some(&l), Some(&h)) => ((l - 1).min(-1), (h + 1).max(1)),
            _ => (-1, 1),
        };
        let degrees: Vec<(i32, Vec<String>)> =
            (lo..=hi).map(|d| (d, by_degree.get(&d).cloned().unwrap_or_default())).collect();
        let space = GradedSpace::new(self.field, &degrees)?;
        let n = gens.len();
        let index: BTreeMap<GenId, usize> = gens.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let mut flat = Matrix::zeros(self.field, n, n);
        for (j, &g) in gens.iter().enumerate() {
            if let Some(v) = self.ops.get(&vec![g]) {
                for (h, c) in v.terms() {
                    flat.set(index[&h], j, c.clone());
                }
            }
        }
        let d = GradedMap::from_flat(space.clone(), space, 1, &flat)?;
        let complex = ChainComplex::from_map(d)
            .map_err(|_| Error::Invalid(format!("m¹∘m¹ != 0 on Hom({}, {})", self.objects[x], self.objects[y])))?;
        Ok((complex, gens))
    }

    /// Flat coordinates of an element of `Hom(x, y)` in the order of `hom_complex`.
    pub fn coords(&self, e: &Elem, gens: &[GenId]) -> Vec<Scalar> {
        gens.iter().map(|g| e.coeff(*g).cloned().unwrap_or_else(|| self.field.zero())).collect()
    }

    pub fn elem_from_coords(&self, coords: &[Scalar], gens: &[GenId]) -> Elem {
        Elem::from_terms(gens.iter().zip(coords).map(|(g, c)| (*g, c.clone())))
    }

    /// Degree of a nonzero homogeneous element.
    pub fn elem_degree(&self, e: &Elem) -> Option<i32> {
        e.terms().next().map(|(g, _)| self.gens[g].degree)
    }
}

fn single_generator(e: &Elem, field: Field) -> Option<GenId> {
    let mut it = e.terms();
    match (it.next(), it.next()) {
        (Some((g, c)), None) if *c == field.one() => Some(g),
        _ => None,
    }
}

/// One nonzero residual of a relation check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Residual {
    pub arity: usize,
    pub tuple: Vec<String>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub arity_requested: usize,
    pub arity_checked: usize,
    /// Arities above this are provably zero and were skipped.
    pub complete_above: Option<usize>,
    pub tuples_checked: usize,
    pub residuals: Vec<Residual>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.residuals.is_empty()
    }
}

impl AInfCategory {
    /// Left side of the A∞ relation on one basis tuple:
    /// `Σ (-1)^{†_n} m^{d-m+1}(a_d, ..., m^m(a_{n+m}, ..., a_{n+1}), a_n, ..., a_1)`
    /// with `†_n = deg a_1 + ... + deg a_n - n`.
    pub fn relation_residual(&self, t: &[GenId]) -> Elem {
        let d = t.len();
        let mut total = Elem::zero();
        for m in 1..=d.min(self.arity_bound) {
            if d - m + 1 > self.arity_bound {
                continue;
            }
            for n in 0..=d - m {
                let Some(inner) = self.ops.get(&t[n..n + m]) else { continue };
                let dagger = self.tuple_degree(&t[..n]) as i64 - n as i64;
                let mut args: Vec<Elem> = t[..n].iter().map(|&g| Elem::basis(g, self.field)).collect();
                args.push(inner.clone());
                args.extend(t[n + m..].iter().map(|&g| Elem::basis(g, self.field)));
                total.add_scaled(&self.op(&args), &self.field.sign(dagger));
            }
        }
        total
    }

    pub fn check_relations(&self, arity_max: usize) -> RelationReport {
        let d0 = self.max_nonzero_arity();
        let provable = if d0 == 0 { 0 } else { 2 * d0 - 1 };
        let arity_checked = arity_max.min(provable.max(1));
        let mut residuals = Vec::new();
        let mut tuples_checked = 0;
        for d in 1..=arity_checked {
            for t in self.composable_tuples(d) {
                tuples_checked += 1;
                let r = self.relation_residual(&t);
                if !r.is_zero() {
                    residuals.push(Residual { arity: d, tuple: self.format_tuple(&t), value: self.format_elem(&r) });
                }
            }
        }
        RelationReport {
            arity_requested: arity_max,
            arity_checked,
            complete_above: (arity_max > provable).then_some(provable),
            tuples_checked,
            residuals,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitFailure {
    pub law: String,
    pub object: String,
    pub tuple: Vec<String>,
    pub expected: String,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitReport {
    pub failures: Vec<UnitFailure>,
}

impl UnitReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl AInfCategory {
    /// Checks `m²(f, 1_x) = f`, `m²(1_x, g) = (-1)^{deg g} g` and that every `m^n`, `n > 2`,
    /// vanishes with a unit in any slot.
    pub fn check_units(&self) -> Result<UnitReport> {
        let units = self.units.as_ref().ok_or_else(|| Error::Invalid("missing unit elements".into()))?;
        let field = self.field;
        let mut failures = Vec::new();
        for (x, u) in units.iter().enumerate() {
            for g in 0..self.gens.len() {
                let gen = &self.gens[g];
                let ge = Elem::basis(g, field);
                if gen.source == x {
                    // m²(f, 1_x) in right-to-left notation: the unit is applied first
                    let got = self.op(&[u.clone(), ge.clone()]);
                    if got != ge {
                        failures.push(UnitFailure {
                            law: "u1-right".into(),
                            object: self.objects[x].clone(),
                            tuple: vec![format!("1_{}", self.objects[x]), gen.label.clone()],
                            expected: self.format_elem(&ge),
                            found: self.format_elem(&got),
                        });
                    }
                }
                if gen.target == x {
                    let want = ge.scale(&field.sign(gen.degree as i64));
                    let got = self.op(&[ge.clone(), u.clone()]);
                    if got != want {
                        failures.push(UnitFailure {
                            law: "u1-left".into(),
                            object: self.objects[x].clone(),
                            tuple: vec![gen.label.clone(), format!("1_{}", self.objects[x])],
                            expected: self.format_elem(&want),
                            found: self.format_elem(&got),
                        });
                    }
                }
            }
        }
        for n in 3..=self.arity_bound.min(self.max_nonzero_arity()) {
            for slot in 0..n {
                for t in self.composable_tuples(n - 1) {
                    let mut args: Vec<Elem> = t.iter().map(|&g| Elem::basis(g, field)).collect();
                    let x = if slot == 0 { self.gens[t[0]].source } else { self.gens[t[slot - 1]].target };
                    args.insert(slot, units[x].clone());
                    let got = self.op(&args);
                    if !got.is_zero() {
                        let mut tuple = self.format_tuple(&t);
                        tuple.insert(slot, format!("1_{}", self.objects[x]));
                        failures.push(UnitFailure {
                            law: "u2".into(),
                            object: self.objects[x].clone(),
                            tuple,
                            expected: "0".into(),
                            found: self.format_elem(&got),
                        });
                    }
                }
            }
        }
        Ok(UnitReport { failures })
    }

    /// The opposite category: generators reversed, `m^n_op(f_1, ..., f_n) =
    /// (-1)^{ε} m^n(f_n, ..., f_1)` for `n > 1` with
    /// `ε = Σ_{i<j} (deg f_i + 1)(deg f_j + 1) + 1`; `m¹` unchanged.
    pub fn opposite(&self) -> AInfCategory {
        let gens = self
            .gens
            .iter()
            .map(|g| Generator { source: g.target, target: g.source, ..g.clone() })
            .collect();
        let mut ops = BTreeMap::new();
        for (t, v) in &self.ops {
            if t.len() == 1 {
                ops.insert(t.clone(), v.clone());
                continue;
            }
            let rev: Vec<GenId> = t.iter().rev().cloned().collect();
            let sign = self.field.sign(self.epsilon(t));
            ops.insert(rev, v.scale(&sign));
        }
        AInfCategory {
            field: self.field,
            objects: self.objects.clone(),
            gens,
            ops,
            units: self.units.clone(),
            arity_bound: self.arity_bound,
        }
    }

    /// `ε(f_n, ..., f_1) = Σ_{i<j} (deg f_i + 1)(deg f_j + 1) + 1`.
    pub fn epsilon(&self, t: &[GenId]) -> i64 {
        let mut e = 1i64;
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                e += (self.gens[t[i]].degree as i64 + 1) * (self.gens[t[j]].degree as i64 + 1);
            }
        }
        e
    }
}

/// A linear combination of generator words (elements of the tensor coalgebra).
pub type Words = BTreeMap<Vec<GenId>, Scalar>;

fn add_word(words: &mut Words, w: Vec<GenId>, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    let next = match words.get(&w) {
        Some(old) => old + c,
        None => c.clone(),
    };
    if next.is_zero() {
        words.remove(&w);
    } else {
        words.insert(w, next);
    }
}

impl AInfCategory {
    /// `d̂_k(f_n, ..., f_1) = Σ_l (-1)^{†₁} f_n ⊗ ... ⊗ m_k(f_{l+k-1}, ..., f_l) ⊗ ... ⊗ f_1`,
    /// `†₁ = Σ_{i<l} (deg f_i + 1)`. Words are in path order.
    pub fn coderivation(&self, k: usize, word: &[GenId]) -> Result<Words> {
        let n = word.len();
        if k == 0 || k > n {
            return Err(Error::ArityOverflow(format!("d̂_{k} on a word of length {n}")));
        }
        let mut out = Words::new();
        for l in 0..=n - k {
            let Some(v) = self.ops.get(&word[l..l + k]) else { continue };
            let dagger: i64 = word[..l].iter().map(|&g| self.gens[g].degree as i64 + 1).sum();
            let sign = self.field.sign(dagger);
            for (g, c) in v.terms() {
                let mut w = word[..l].to_vec();
                w.push(g);
                w.extend_from_slice(&word[l + k..]);
                add_word(&mut out, w, &(&sign * c));
            }
        }
        Ok(out)
    }

    /// `d̂ = Σ_k d̂_k`, extended linearly to combinations of words.
    pub fn bar_differential(&self, words: &Words) -> Words {
        let mut out = Words::new();
        for (w, c) in words {
            for k in 1..=w.len().min(self.arity_bound) {
                for (w2, c2) in self.coderivation(k, w).expect("k in range") {
                    add_word(&mut out, w2, &(c * &c2));
                }
            }
        }
        out
    }
}

impl fmt::Display for AInfCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.field)?;
        for (i, o) in self.objects.iter().enumerate() {
            writeln!(f, "object {i}: {o}")?;
        }
        for g in &self.gens {
            writeln!(f, "gen {}: {} -> {} (deg {})", g.label, self.objects[g.source], self.objects[g.target], g.degree)?;
        }
        for (t, v) in &self.ops {
            writeln!(f, "m{}({}) = {}", t.len(), self.format_tuple(t).join(", "), self.format_elem(v))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// One object, hom = K·1 in degree 0.
    fn ground(field: Field, unit_square: bool) -> AInfCategory {
        let mut a = AInfCategory::new(field, &["x"]);
        let one = a.add_generator("1", 0, 0, 0).unwrap();
        if unit_square {
            a.set_op(&[one, one], Elem::basis(one, field)).unwrap();
        }
        a.set_units(vec![Elem::basis(one, field)]).unwrap();
        a
    }

    #[test]
    fn unit_examples() {
        let f = Field::Rational;
        assert!(ground(f, true).check_units().unwrap().passed());
        let bad = ground(f, false).check_units().unwrap();
        assert!(!bad.passed());
        assert_eq!(bad.failures[0].tuple, vec!["1_x", "1"]);
        let no_units = AInfCategory::new(f, &["x"]);
        assert!(no_units.check_units().is_err());
    }

    #[test]
    fn degree_bookkeeping_is_enforced() {
        let f = Field::Rational;
        let mut a = AInfCategory::new(f, &["x"]);
        let g = a.add_generator("g", 0, 0, 1).unwrap();
        // m²(g, g) must have degree 2
        assert!(a.set_op(&[g, g], Elem::basis(g, f)).is_err());
        assert!(a.set_op(&[g, g, g, g, g], Elem::zero()).is_err());
    }

    #[test]
    fn d_squared_at_arity_one() {
        let f = Field::Rational;
        let mut a = AInfCategory::new(f, &["x"]);
        let p = a.add_generator("p", 0, 0, 0).unwrap();
        let q = a.add_generator("q", 0, 0, 1).unwrap();
        let r = a.add_generator("r", 0, 0, 2).unwrap();
        a.set_op(&[p], Elem::basis(q, f)).unwrap();
        a.set_op(&[q], Elem::basis(r, f)).unwrap();
        let rep = a.check_relations(1);
        assert!(!rep.passed());
        assert_eq!(rep.residuals[0].tuple, vec!["p"]);
        assert_eq!(rep.residuals[0].value, "r");
    }

    #[test]
    fn opposite_sign_and_involution() {
        let f = Field::Rational;
        let mut a = AInfCategory::new(f, &["x"]);
        let e = a.add_generator("e", 0, 0, 0).unwrap();
        let u = a.add_generator("u", 0, 0, 0).unwrap();
        a.set_op(&[e, u], Elem::basis(u, f)).unwrap();
        let op = a.opposite();
        // all degree 0: ε = (0+1)(0+1) + 1 = 2, so m²_op(u, e) = m²(e, u)
        assert_eq!(op.op_basis(&[u, e]), Some(&Elem::basis(u, f)));
        assert_eq!(op.opposite(), a);

        let f2 = Field::Prime(2);
        let mut c = AInfCategory::new(f2, &["x"]);
        let one = c.add_generator("1", 0, 0, 0).unwrap();
        let t = c.add_generator("t", 0, 0, 0).unwrap();
        c.set_op(&[one, one], Elem::basis(one, f2)).unwrap();
        c.set_op(&[one, t], Elem::basis(t, f2)).unwrap();
        c.set_op(&[t, one], Elem::basis(t, f2)).unwrap();
        c.set_op(&[t, t], Elem::basis(t, f2)).unwrap();
        assert_eq!(c.opposite(), c);
    }

    #[test]
    fn coderivation_small_words() {
        let f = Field::Rational;
        let mut a = AInfCategory::new(f, &["x"]);
        let p = a.add_generator("p", 0, 0, 0).unwrap();
        let q = a.add_generator("q", 0, 0, 1).unwrap();
        a.set_op(&[p], Elem::basis(q, f)).unwrap();
        // d̂₁(f) = m¹(f)
        let w = a.coderivation(1, &[p]).unwrap();
        assert_eq!(w, Words::from([(vec![q], f.one())]));
        // d̂₁(p, p) in path order [p, p]: l = 0 gives q⊗p with sign +,
        // l = 1 gives p⊗q with sign (-1)^{deg p + 1} = -1
        let w = a.coderivation(1, &[p, p]).unwrap();
        assert_eq!(w, Words::from([(vec![q, p], f.one()), (vec![p, q], f.int(-1))]));
        assert!(a.coderivation(3, &[p, p]).is_err());
    }
}
