//! Simplicial modules, normalized chains `N`, the functor `DK`, chain maps out of
//! `N(ZΔⁿ)` and the identification of right mapping spaces of the nerve.
//!
//! Homological degree `n` of the simplicial side is cohomological degree `-n` of the
//! library. This module is the only place where the two indexings meet.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::category::{AInfCategory, Elem, ObjId};
use crate::chain::{format_combination, ChainComplex, ChainMap, HomComplex, QisoDegree};
use crate::delta::{monotone_maps, surjections, Monotone};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::graded::GradedSpace;
use crate::linalg::{span_elements, Matrix};
use crate::nerve::{hom_right_nerve, structure_map, subsets, NerveSimplex};
use crate::simplicial::SimplicialSet;

/// Levels `0..=L` of finite-dimensional spaces; `action[α]` for `α: [m] → [n]` is the
/// matrix `X_n → X_m`.
#[derive(Debug, Clone)]
pub struct SimplicialModule {
    field: Field,
    labels: Vec<Vec<String>>,
    action: HashMap<Monotone, Matrix>,
    composites: RefCell<HashMap<Monotone, Matrix>>,
}

impl PartialEq for SimplicialModule {
    fn eq(&self, other: &SimplicialModule) -> bool {
        self.field == other.field && self.labels == other.labels && self.action == other.action
    }
}

impl Eq for SimplicialModule {}

impl SimplicialModule {
    /// Only cofaces and codegeneracies are evaluated and stored; other maps are
    /// composed from them on demand.
    pub fn from_action(
        field: Field,
        labels: Vec<Vec<String>>,
        act: &mut dyn FnMut(&Monotone) -> Result<Matrix>,
    ) -> Result<SimplicialModule> {
        let top = labels.len() - 1;
        let mut action = HashMap::new();
        let elementary = (1..=top)
            .flat_map(|n| (0..=n).map(move |i| Monotone::coface(n, i)))
            .chain((0..top).flat_map(|n| (0..=n).map(move |i| Monotone::codegeneracy(n, i))));
        for alpha in elementary {
            let a = act(&alpha)?;
            let (m, n) = (alpha.domain(), alpha.codomain);
            if a.rows() != labels[m].len() || a.cols() != labels[n].len() {
                return Err(Error::Invalid(format!("action of {:?} has the wrong shape", alpha.values)));
            }
            action.insert(alpha, a);
        }
        Ok(SimplicialModule { field, labels, action, composites: RefCell::default() })
    }

    /// The free module on a simplicial set.
    pub fn free(x: &SimplicialSet, field: Field) -> Result<SimplicialModule> {
        let labels: Vec<Vec<String>> = (0..=x.top_level()).map(|n| x.names(n).to_vec()).collect();
        let mut act = |alpha: &Monotone| {
            let (m, n) = (alpha.domain(), alpha.codomain);
            let mut a = Matrix::zeros(field, x.level(m), x.level(n));
            for s in 0..x.level(n) {
                a.set(x.apply(alpha, s), s, field.one());
            }
            Ok(a)
        };
        SimplicialModule::from_action(field, labels, &mut act)
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn top_level(&self) -> usize {
        self.labels.len() - 1
    }
    pub fn dim(&self, n: usize) -> usize {
        self.labels[n].len()
    }
    pub fn labels(&self, n: usize) -> &[String] {
        &self.labels[n]
    }
    /// `X(α) = X(e₁) ⋯ X(e_r)` along the elementary factorization `α = e_r ∘ ⋯ ∘ e₁`.
    pub fn action(&self, alpha: &Monotone) -> Matrix {
        if let Some(a) = self.action.get(alpha).or(self.composites.borrow().get(alpha)) {
            return a.clone();
        }
        let factors = alpha.elementary_factors();
        let a = match factors.split_first() {
            None => Matrix::identity(self.field, self.dim(alpha.domain())),
            Some((first, rest)) => rest.iter().fold(self.action[first].clone(), |acc, e| acc.mul(&self.action[e])),
        };
        self.composites.borrow_mut().insert(alpha.clone(), a.clone());
        a
    }
    pub fn face(&self, n: usize, i: usize) -> &Matrix {
        &self.action[&Monotone::coface(n, i)]
    }

    /// Functoriality on composable pairs of cofaces and codegeneracies. These words of
    /// length two carry every cosimplicial identity, so together with the normal-form
    /// definition of `action` this is functoriality on all of `Δ`. Returns violations.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let elementary: Vec<&Monotone> = self.action.keys().collect();
        for e in &elementary {
            for f in &elementary {
                if f.domain() != e.codomain {
                    continue;
                }
                let lhs = self.action(&f.after(e));
                if lhs != self.action[*e].mul(&self.action[*f]) && out.len() < 20 {
                    out.push(format!("{:?} after {:?}", f.values, e.values));
                }
            }
        }
        out.sort();
        out
    }
}

/// `ZΔⁿ` on levels `0..=level`; the generator for `β: [j] → [n]` is `g` followed by its values.
pub fn z_delta(n: usize, level: usize, field: Field) -> Result<SimplicialModule> {
    if n > 9 {
        return Err(Error::Unsupported("z_delta labels assume n ≤ 9".into()));
    }
    let maps: Vec<Vec<Monotone>> = (0..=level).map(|j| monotone_maps(j, n)).collect();
    let labels = maps
        .iter()
        .map(|l| l.iter().map(|b| format!("g{}", b.values.iter().map(|v| v.to_string()).collect::<String>())).collect())
        .collect();
    let index: Vec<HashMap<&Monotone, usize>> =
        maps.iter().map(|l| l.iter().enumerate().map(|(i, b)| (b, i)).collect()).collect();
    let mut act = |alpha: &Monotone| {
        let (m, j) = (alpha.domain(), alpha.codomain);
        let mut a = Matrix::zeros(field, maps[m].len(), maps[j].len());
        for (col, beta) in maps[j].iter().enumerate() {
            a.set(index[m][&beta.after(alpha)], col, field.one());
        }
        Ok(a)
    };
    SimplicialModule::from_action(field, labels, &mut act)
}

/// `N_n = ∩_{i ≥ 1} ker d_i` with differential `d_0`, placed in cohomological degree `-n`.
#[derive(Debug, Clone)]
pub struct Normalized {
    pub complex: ChainComplex,
    /// `bases[n]`: a basis of `N_n` in the coordinates of level `n`.
    pub bases: Vec<Vec<Vec<Scalar>>>,
}

impl Normalized {
    /// Coordinates of `v ∈ N_n` (given in level coordinates) in the chosen basis.
    pub fn coords(&self, n: usize, v: &[Scalar]) -> Option<Vec<Scalar>> {
        Matrix::from_columns(self.complex.field(), v.len(), &self.bases[n]).solve(v)
    }

    /// Generators in degree `n` (homological) as readable combinations.
    pub fn generators(&self, n: usize) -> Vec<String> {
        self.complex.space().labels(-(n as i32)).to_vec()
    }
}

pub fn normalized_chains(x: &SimplicialModule) -> Result<Normalized> {
    let field = x.field();
    let top = x.top_level();
    let mut bases = Vec::new();
    for n in 0..=top {
        let mut rows = Vec::new();
        for i in 1..=n {
            let f = x.face(n, i);
            rows.extend((0..f.rows()).map(|r| f.row(r).to_vec()));
        }
        let stacked = Matrix::from_rows(field, rows.len(), x.dim(n), rows.concat());
        bases.push(if x.dim(n) == 0 { Vec::new() } else { stacked.kernel() });
    }
    let mut seen = std::collections::HashSet::new();
    let mut degrees = Vec::new();
    for (n, basis) in bases.iter().enumerate() {
        let labels: Vec<String> = basis
            .iter()
            .map(|v| {
                let mut l = format_combination(x.labels(n), v);
                let base = l.clone();
                let mut k = 1;
                while !seen.insert(l.clone()) {
                    k += 1;
                    l = format!("{base} #{k}");
                }
                l
            })
            .collect();
        degrees.push((-(n as i32), labels));
    }
    let space = GradedSpace::new(field, &degrees)?;
    let norm = Normalized { complex: ChainComplex::zero(field), bases };
    let mut blocks = BTreeMap::new();
    for n in 1..=top {
        let d0 = x.face(n, 0);
        let cols = norm.bases[n]
            .iter()
            .map(|b| norm.coords(n - 1, &d0.apply(b)).ok_or_else(|| Error::Invalid("d_0 leaves N".into())))
            .collect::<Result<Vec<_>>>()?;
        blocks.insert(-(n as i32), Matrix::from_columns(field, norm.bases[n - 1].len(), &cols));
    }
    Ok(Normalized { complex: ChainComplex::new(space, blocks)?, ..norm })
}

/// A level-wise linear map of simplicial modules.
#[derive(Debug, Clone)]
pub struct ModuleMap {
    pub source: SimplicialModule,
    pub target: SimplicialModule,
    pub levels: Vec<Matrix>,
}

impl ModuleMap {
    /// Naturality against every monotone map; returns violations.
    pub fn check(&self) -> Vec<String> {
        let top = self.levels.len() - 1;
        let mut out = Vec::new();
        for n in 0..=top {
            for m in 0..=top {
                for alpha in monotone_maps(m, n) {
                    let lhs = self.levels[m].mul(&self.source.action(&alpha));
                    let rhs = self.target.action(&alpha).mul(&self.levels[n]);
                    if lhs != rhs && out.len() < 20 {
                        out.push(format!("{:?}", alpha.values));
                    }
                }
            }
        }
        out
    }

    pub fn is_iso(&self) -> bool {
        self.levels.iter().all(|m| m.rows() == m.cols() && m.inverse().is_some())
    }

    /// `N(f)` as a chain map.
    pub fn normalized(&self) -> Result<ChainMap> {
        let ns = normalized_chains(&self.source)?;
        let nt = normalized_chains(&self.target)?;
        let field = self.source.field();
        let mut blocks = BTreeMap::new();
        for (n, m) in self.levels.iter().enumerate() {
            let cols = ns.bases[n]
                .iter()
                .map(|b| nt.coords(n, &m.apply(b)).ok_or_else(|| Error::Invalid("map does not preserve N".into())))
                .collect::<Result<Vec<_>>>()?;
            blocks.insert(-(n as i32), Matrix::from_columns(field, nt.bases[n].len(), &cols));
        }
        let map = crate::graded::GradedMap::new(ns.complex.space().clone(), nt.complex.space().clone(), 0, blocks)?;
        ChainMap::new(ns.complex, nt.complex, map)
    }

    /// Induced maps on homology of normalized chains in homological degrees `0..=max`.
    pub fn homology_report(&self, max: usize) -> Result<Vec<QisoDegree>> {
        if max >= self.levels.len() {
            return Err(Error::LevelOverflow { level: max, bound: self.levels.len() - 1 });
        }
        let cm = self.normalized()?;
        let mut rep: Vec<QisoDegree> =
            cm.quasi_iso_report().into_iter().filter(|q| q.degree <= 0 && q.degree >= -(max as i32)).collect();
        rep.sort_by_key(|q| -q.degree);
        Ok(rep)
    }
}

/// Summands of `DK_n`: each surjection `[n] ↠ [k]` with the offset of its copy of `C_k`.
pub fn dk_layout(dims: &[usize], n: usize) -> Vec<(Monotone, usize)> {
    let mut out = Vec::new();
    let mut off = 0;
    for k in 0..=n.min(dims.len().saturating_sub(1)) {
        for s in surjections(n, k) {
            out.push((s, off));
            off += dims[k];
        }
    }
    out
}

/// Homological dimensions `C_k = C^{-k}` for `k = 0..=level`; errors on positive degrees.
fn homological_dims(c: &ChainComplex, level: usize) -> Result<Vec<usize>> {
    let (lo, hi) = c.space().window();
    for d in 1..=hi.max(0) {
        if c.dim(d) > 0 {
            return Err(Error::Invalid(format!("DK needs a complex concentrated in degrees ≤ 0; degree {d} is nonzero")));
        }
    }
    let _ = lo;
    Ok((0..=level).map(|k| c.dim(-(k as i32))).collect())
}

fn dk_labels(c: &ChainComplex, dims: &[usize], n: usize) -> Vec<String> {
    let mut out = Vec::new();
    for (s, _) in dk_layout(dims, n) {
        let k = s.codomain;
        let tag: String = s.values.iter().map(|v| v.to_string()).collect();
        for l in c.space().labels(-(k as i32)) {
            out.push(format!("{l}@{tag}"));
        }
    }
    out
}

/// `DK(C)` on levels `0..=level`. For `β: [m] → [n]` and a summand `σ: [n] ↠ [k]`,
/// factor `σβ = ισ'`: the summand goes to `σ'` by `1` if `ι = id`, by `d` if `ι` is the
/// coface missing `0`, and to zero otherwise.
pub fn dk(c: &ChainComplex, level: usize) -> Result<SimplicialModule> {
    let field = c.field();
    let dims = homological_dims(c, level)?;
    let labels = (0..=level).map(|n| dk_labels(c, &dims, n)).collect();
    let layouts: Vec<Vec<(Monotone, usize)>> = (0..=level).map(|n| dk_layout(&dims, n)).collect();
    let offsets: Vec<HashMap<Monotone, usize>> = layouts.iter().map(|l| l.iter().cloned().collect()).collect();
    let size = |n: usize| layouts[n].last().map_or(0, |(s, o)| o + dims[s.codomain]);
    let mut act = |beta: &Monotone| {
        let (m, n) = (beta.domain(), beta.codomain);
        let mut a = Matrix::zeros(field, size(m), size(n));
        for (sigma, off) in &layouts[n] {
            let k = sigma.codomain;
            let (sp, iota) = sigma.after(beta).epi_mono();
            let block = if iota.is_identity() {
                Matrix::identity(field, dims[k])
            } else if iota.codomain == iota.domain() + 1 && iota.values[0] == 1 {
                // d: C_k → C_{k-1}, cohomologically degree -k to -k+1
                c.d_block(-(k as i32))
            } else {
                continue;
            };
            let to = offsets[m][&sp];
            for i in 0..block.rows() {
                for j in 0..block.cols() {
                    if !block.get(i, j).is_zero() {
                        a.set(to + i, off + j, block.get(i, j).clone());
                    }
                }
            }
        }
        Ok(a)
    };
    SimplicialModule::from_action(field, labels, &mut act)
}

/// `DK(f)` for a chain map given by homological blocks `f_k: C_k → C'_k`.
pub fn dk_map(c: &ChainComplex, c2: &ChainComplex, blocks: &[Matrix], level: usize) -> Result<ModuleMap> {
    let field = c.field();
    let source = dk(c, level)?;
    let target = dk(c2, level)?;
    let d1 = homological_dims(c, level)?;
    let d2 = homological_dims(c2, level)?;
    let mut levels = Vec::new();
    for n in 0..=level {
        let l1 = dk_layout(&d1, n);
        let l2 = dk_layout(&d2, n);
        let mut a = Matrix::zeros(field, target.dim(n), source.dim(n));
        for ((s, o1), (_, o2)) in l1.iter().zip(&l2) {
            let f = &blocks[s.codomain];
            for i in 0..f.rows() {
                for j in 0..f.cols() {
                    a.set(o2 + i, o1 + j, f.get(i, j).clone());
                }
            }
        }
        levels.push(a);
    }
    Ok(ModuleMap { source, target, levels })
}

fn embed(rows: usize, at: usize, v: &[Scalar], field: Field) -> Vec<Scalar> {
    let mut out = vec![field.zero(); rows];
    for (i, x) in v.iter().enumerate() {
        out[at + i] = x.clone();
    }
    out
}

/// `φ⁻¹_n: C_n → N_n(DK C)`, `c ↦ (id, c)`, in the normalized basis.
fn phi_inverse(c: &ChainComplex, ndk: &Normalized, dims: &[usize], n: usize) -> Result<Matrix> {
    let field = c.field();
    let rows = dk_layout(dims, n).last().map_or(0, |(s, o)| o + dims[s.codomain]);
    let off = dk_layout(dims, n).into_iter().find(|(s, _)| s.is_identity()).map(|(_, o)| o);
    let cols = (0..dims[n])
        .map(|j| {
            let mut e = vec![field.zero(); dims[n]];
            e[j] = field.one();
            let v = embed(rows, off.expect("identity summand"), &e, field);
            ndk.coords(n, &v).ok_or_else(|| Error::Invalid("identity summand not normalized".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(field, ndk.bases[n].len(), &cols))
}

/// `ψ_X: DK(N X) → X`, `(σ, x) ↦ X(σ) x`.
pub fn psi(x: &SimplicialModule) -> Result<ModuleMap> {
    let field = x.field();
    let level = x.top_level();
    let nx = normalized_chains(x)?;
    let source = dk(&nx.complex, level)?;
    let dims: Vec<usize> = (0..=level).map(|k| nx.bases[k].len()).collect();
    let mut levels = Vec::new();
    for n in 0..=level {
        let mut cols = Vec::new();
        for (sigma, _) in dk_layout(&dims, n) {
            for b in &nx.bases[sigma.codomain] {
                cols.push(x.action(&sigma).apply(b));
            }
        }
        levels.push(Matrix::from_columns(field, x.dim(n), &cols));
    }
    Ok(ModuleMap { source, target: x.clone(), levels })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundtripReport {
    /// `(homological degree, dim of the first side, dim of the second, invertible, commutes)`.
    pub degrees: Vec<(usize, usize, usize, bool, bool)>,
    pub triangle: bool,
    pub violations: Vec<String>,
}

impl RoundtripReport {
    pub fn passed(&self) -> bool {
        self.triangle && self.violations.is_empty() && self.degrees.iter().all(|d| d.1 == d.2 && d.3 && d.4)
    }
}

/// `N(DK C) ≅ C` through `φ` (projection to the identity summand), and the triangle
/// `ψ_{DK C} ∘ DK(φ⁻¹) = id`.
pub fn roundtrip_complex(c: &ChainComplex, level: usize) -> Result<RoundtripReport> {
    let field = c.field();
    let dims = homological_dims(c, level)?;
    let (lo, _) = c.space().window();
    if lo < -(level as i32) && (lo..-(level as i32)).any(|d| c.dim(d) > 0) {
        return Err(Error::LevelOverflow { level, bound: (-lo) as usize });
    }
    let x = dk(c, level)?;
    let mut violations: Vec<String> = x.validate().into_iter().map(|v| format!("DK(C) not simplicial: {v}")).collect();
    let ndk = normalized_chains(&x)?;
    let mut inv = Vec::new();
    let mut degrees = Vec::new();
    for n in 0..=level {
        let pi = phi_inverse(c, &ndk, &dims, n)?;
        let invertible = pi.rows() == pi.cols() && (pi.rows() == 0 || pi.inverse().is_some());
        // φ⁻¹ d_C = d_N φ⁻¹ with d lowering homological degree
        let commutes = n == 0 || {
            let lhs = inv_last(&inv).mul(&c.d_block(-(n as i32)));
            let rhs = ndk.complex.d_block(-(n as i32)).mul(&pi);
            lhs == rhs
        };
        degrees.push((n, ndk.bases[n].len(), dims[n], invertible, commutes));
        inv.push(pi);
    }
    // DK(φ⁻¹): DK(C) → DK(N DK C), then ψ_{DK C}
    let up = dk_map(c, &ndk.complex, &inv, level)?;
    let down = psi(&x)?;
    let mut triangle = true;
    for n in 0..=level {
        if down.levels[n].mul(&up.levels[n]) != Matrix::identity(field, x.dim(n)) {
            triangle = false;
            violations.push(format!("triangle fails at level {n}"));
        }
    }
    Ok(RoundtripReport { degrees, triangle, violations })
}

fn inv_last(v: &[Matrix]) -> &Matrix {
    v.last().unwrap()
}

/// `DK(N X) ≅ X` through `ψ`, and the triangle `N(ψ_X) ∘ φ⁻¹_{N X} = id`.
pub fn roundtrip_module(x: &SimplicialModule) -> Result<RoundtripReport> {
    let field = x.field();
    let level = x.top_level();
    let nx = normalized_chains(x)?;
    let p = psi(x)?;
    let mut violations: Vec<String> = p.check().into_iter().map(|v| format!("ψ not natural at {v}")).collect();
    let ndk = normalized_chains(&p.source)?;
    let dims: Vec<usize> = (0..=level).map(|k| nx.bases[k].len()).collect();
    let mut degrees = Vec::new();
    let mut triangle = true;
    for n in 0..=level {
        let m = &p.levels[n];
        degrees.push((n, p.source.dim(n), x.dim(n), m.rows() == m.cols() && (m.rows() == 0 || m.inverse().is_some()), true));
        let pi = phi_inverse(&nx.complex, &ndk, &dims, n)?;
        // N(ψ) on the normalized basis of DK(N X), landing in the basis of N X
        let cols = ndk.bases[n]
            .iter()
            .map(|b| nx.coords(n, &m.apply(b)).ok_or_else(|| Error::Invalid("ψ leaves N".into())))
            .collect::<Result<Vec<_>>>()?;
        let npsi = Matrix::from_columns(field, dims[n], &cols);
        if npsi.mul(&pi) != Matrix::identity(field, dims[n]) {
            triangle = false;
            violations.push(format!("triangle fails in degree {n}"));
        }
    }
    Ok(RoundtripReport { degrees, triangle, violations })
}

/// A family `{f_I}` indexed by `I ⊆ {0..n+1}` with `n+1 ∈ I`, `|I| ≥ 2`, `f_I ∈ M^{2-|I|}`,
/// satisfying `d f_I = Σ_k (-1)^k f_{I - i_k}` (terms with a singleton index dropped).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossSystem {
    pub n: usize,
    pub coeffs: BTreeMap<Vec<usize>, Vec<Scalar>>,
}

/// Index sets of a cross system: `J ∪ {n+1}` for nonempty `J ⊆ {0..n}`.
pub fn cross_indices(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = subsets(n + 1).into_iter().filter(|i| i.last() == Some(&(n + 1))).collect();
    out.sort_by_key(|i| (i.len(), i.clone()));
    out
}

fn cross_degree(i: &[usize]) -> i32 {
    2 - i.len() as i32
}

/// The linear system: unknowns stacked in `cross_indices` order.
pub struct CrossSpace {
    pub n: usize,
    pub indices: Vec<Vec<usize>>,
    pub offsets: Vec<usize>,
    pub constraints: Matrix,
    pub kernel: Vec<Vec<Scalar>>,
}

impl CrossSpace {
    pub fn unknowns(&self) -> usize {
        self.constraints.cols()
    }

    pub fn system_of(&self, m: &ChainComplex, v: &[Scalar]) -> CrossSystem {
        let coeffs = self
            .indices
            .iter()
            .zip(&self.offsets)
            .map(|(i, &o)| (i.clone(), v[o..o + m.dim(cross_degree(i))].to_vec()))
            .collect();
        CrossSystem { n: self.n, coeffs }
    }
}

pub fn cross_space(n: usize, m: &ChainComplex) -> CrossSpace {
    let field = m.field();
    let indices = cross_indices(n);
    let mut offsets = Vec::new();
    let mut total = 0;
    for i in &indices {
        offsets.push(total);
        total += m.dim(cross_degree(i));
    }
    let pos: HashMap<&Vec<usize>, usize> = indices.iter().enumerate().map(|(k, i)| (i, k)).collect();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (k, i) in indices.iter().enumerate() {
        let deg = cross_degree(i);
        let d = m.d_block(deg);
        let mut eqs = vec![vec![field.zero(); total]; m.dim(deg + 1)];
        for (r, eq) in eqs.iter_mut().enumerate() {
            for c in 0..m.dim(deg) {
                eq[offsets[k] + c] = d.get(r, c).clone();
            }
        }
        if i.len() >= 3 {
            for t in 0..i.len() - 1 {
                let mut face = i.clone();
                face.remove(t);
                let j = pos[&face];
                let s = -field.sign(t as i64);
                for (r, eq) in eqs.iter_mut().enumerate() {
                    eq[offsets[j] + r] = &eq[offsets[j] + r] + &s;
                }
            }
        }
        rows.extend(eqs);
    }
    let constraints = Matrix::from_rows(field, rows.len(), total, rows.concat());
    let kernel = if total == 0 { Vec::new() } else { constraints.kernel() };
    CrossSpace { n, indices, offsets, constraints, kernel }
}

/// All cross systems over a finite field, ordered by kernel coordinates.
pub fn solve_cross(n: usize, m: &ChainComplex, cap: u128) -> Result<Vec<CrossSystem>> {
    let q = m.field().order().ok_or(Error::InfiniteField)? as u128;
    let space = cross_space(n, m);
    let estimate = q.saturating_pow(space.kernel.len() as u32);
    if estimate > cap {
        return Err(Error::CapExceeded { estimate, cap });
    }
    Ok(span_elements(m.field(), space.unknowns(), &space.kernel).iter().map(|v| space.system_of(m, v)).collect())
}

/// Violations of the defining condition, by index set.
pub fn verify_cross(m: &ChainComplex, s: &CrossSystem) -> Vec<String> {
    let field = m.field();
    let mut out = Vec::new();
    for i in cross_indices(s.n) {
        let deg = cross_degree(&i);
        let zero = vec![field.zero(); m.dim(deg)];
        let fi = s.coeffs.get(&i).unwrap_or(&zero);
        let mut r = m.d_block(deg).apply(fi);
        if i.len() >= 3 {
            for t in 0..i.len() - 1 {
                let mut face = i.clone();
                face.remove(t);
                let zero = vec![field.zero(); m.dim(deg + 1)];
                let ff = s.coeffs.get(&face).unwrap_or(&zero);
                let sign = field.sign(t as i64);
                for (x, y) in r.iter_mut().zip(ff) {
                    *x = &*x - &(&sign * y);
                }
            }
        }
        if r.iter().any(|x| !x.is_zero()) {
            out.push(format!("{i:?}"));
        }
    }
    out
}

/// The chain map `N(ZΔⁿ) → M` of a cross system: a normalized chain is sent to
/// `Σ_J c_J f_{J ∪ {n+1}}` over its nondegenerate coordinates `c_J`.
pub fn cross_to_chain_map(m: &ChainComplex, s: &CrossSystem) -> Result<Vec<Matrix>> {
    let field = m.field();
    let n = s.n;
    let z = z_delta(n, n + 1, field)?;
    let nz = normalized_chains(&z)?;
    let mut out = Vec::new();
    for p in 0..=n + 1 {
        let gens = monotone_maps(p, n);
        let deg = -(p as i32);
        let cols: Vec<Vec<Scalar>> = nz.bases[p]
            .iter()
            .map(|b| {
                let mut v = vec![field.zero(); m.dim(deg)];
                for (beta, c) in gens.iter().zip(b) {
                    if c.is_zero() || !beta.is_injective() {
                        continue;
                    }
                    let mut i = beta.values.clone();
                    i.push(n + 1);
                    if let Some(f) = s.coeffs.get(&i) {
                        for (x, y) in v.iter_mut().zip(f) {
                            *x = &*x + &(c * y);
                        }
                    }
                }
                v
            })
            .collect();
        out.push(Matrix::from_columns(field, m.dim(deg), &cols));
    }
    // d_M φ_p = φ_{p-1} d_N
    for p in 1..=n + 1 {
        let lhs = m.d_block(-(p as i32)).mul(&out[p]);
        let rhs = out[p - 1].mul(&nz.complex.d_block(-(p as i32)));
        if lhs != rhs {
            return Err(Error::Invalid(format!("not a chain map in degree {p}")));
        }
    }
    Ok(out)
}

/// Dimension of the space of chain maps `N(ZΔⁿ) → M`.
pub fn chain_map_dimension(n: usize, m: &ChainComplex) -> Result<usize> {
    let nz = normalized_chains(&z_delta(n, n + 1, m.field())?)?;
    let hc = HomComplex::new(&nz.complex, m)?;
    let d0 = hc.complex.d_block(0);
    Ok(if hc.complex.dim(0) == 0 { 0 } else { d0.kernel().len() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MappingLevel {
    pub level: usize,
    pub dk_dim: usize,
    pub hom_right_dim: usize,
    pub rank: usize,
    /// `(|DK_n|, |Hom^R_n|)` when enumerated.
    pub counts: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MappingReport {
    pub levels: Vec<MappingLevel>,
    pub invalid_images: Vec<String>,
    pub not_natural: Vec<String>,
    pub enumerated_bijection: Option<bool>,
}

impl MappingReport {
    pub fn passed(&self) -> bool {
        self.invalid_images.is_empty()
            && self.not_natural.is_empty()
            && self.enumerated_bijection != Some(false)
            && self.levels.iter().all(|l| l.dk_dim == l.hom_right_dim && l.rank == l.dk_dim)
    }
}

/// `DK(τ Map(x, y))` together with the pieces needed to land in `A`.
pub struct TruncatedMap {
    pub truncated: ChainComplex,
    pub inclusion: ChainMap,
    pub gens: Vec<crate::category::GenId>,
    pub ambient: ChainComplex,
}

pub fn truncated_map(a: &AInfCategory, x: ObjId, y: ObjId) -> Result<TruncatedMap> {
    let (ambient, gens) = a.hom_complex(x, y)?;
    let (truncated, inclusion) = ambient.truncate_nonpos()?;
    Ok(TruncatedMap { truncated, inclusion, gens, ambient })
}

impl TruncatedMap {
    /// Element of `A` for a vector in degree `deg` of the truncation.
    fn elem(&self, a: &AInfCategory, deg: i32, v: &[Scalar]) -> Elem {
        let w = self.inclusion.map().block(deg).apply(v);
        let off = self.ambient.space().offset(deg);
        let mut full = vec![a.field().zero(); self.gens.len()];
        for (i, x) in w.into_iter().enumerate() {
            full[off + i] = x;
        }
        a.elem_from_coords(&full, &self.gens)
    }
}

/// `Θ_n: DK_n(τM) → Hom^R_n`: `f_{J ∪ {n+1}} = (-1)^{|J|+1} · (identity-summand part of
/// DK(ι_J) b)` with `ι_J` the injection onto `J`; lower `f_I` are units and zeros.
pub fn theta(a: &AInfCategory, x: ObjId, y: ObjId, t: &TruncatedMap, dkm: &SimplicialModule, n: usize, b: &[Scalar]) -> Result<NerveSimplex> {
    let field = a.field();
    let dims: Vec<usize> = (0..=dkm.top_level()).map(|k| t.truncated.dim(-(k as i32))).collect();
    let unit = a.unit(x).ok_or_else(|| Error::Invalid("missing unit elements".into()))?;
    let mut objects = vec![x; n + 1];
    objects.push(y);
    let mut s = NerveSimplex { objects, coeffs: BTreeMap::new() };
    for i in subsets(n) {
        if i.len() == 2 {
            s.set(i, unit.clone());
        }
    }
    for i in cross_indices(n) {
        let j: Vec<usize> = i[..i.len() - 1].to_vec();
        let k = j.len() - 1;
        let iota = Monotone::new(j.clone(), n);
        let w = dkm.action(&iota).apply(b);
        let off = dk_layout(&dims, k).into_iter().find(|(s, _)| s.is_identity()).unwrap().1;
        let part = &w[off..off + dims[k]];
        let e = t.elem(a, -(k as i32), part).scale(&field.sign(j.len() as i64 + 1));
        s.set(i, e);
    }
    Ok(s)
}

/// Builds both sides of the mapping-space identification and compares them:
/// linearly on bases for every level, and by enumeration when `enumerate` is set.
pub fn mapping_space_identify(
    a: &AInfCategory,
    x: ObjId,
    y: ObjId,
    level_max: usize,
    enumerate: Option<u128>,
) -> Result<MappingReport> {
    let field = a.field();
    let t = truncated_map(a, x, y)?;
    let dkm = dk(&t.truncated, level_max)?;
    let mut levels = Vec::new();
    let mut invalid_images = Vec::new();
    let mut images: Vec<Vec<NerveSimplex>> = Vec::new();
    for n in 0..=level_max {
        let basis: Vec<Vec<Scalar>> = (0..dkm.dim(n)).map(|i| crate::homotopy::basis_vec(field, dkm.dim(n), i)).collect();
        let mut imgs = Vec::new();
        let mut cols = Vec::new();
        for b in &basis {
            let s = theta(a, x, y, &t, &dkm, n, b)?;
            let rep = crate::nerve::simplex_check(a, &s)?;
            if !rep.passed() && invalid_images.len() < 20 {
                invalid_images.push(format!("level {n}: {}", s.describe(a)));
            }
            cols.push(hom_right_coords(a, &s, n)?);
            imgs.push(s);
        }
        let space = cross_space(n, &t.ambient);
        let rank = Matrix::from_columns(field, space.unknowns(), &cols).rank();
        levels.push(MappingLevel { level: n, dk_dim: dkm.dim(n), hom_right_dim: space.kernel.len(), rank, counts: None });
        images.push(imgs);
    }
    // naturality on basis vectors: Θ_m(DK(α) b) = α^*(Θ_n b)
    let mut not_natural = Vec::new();
    for n in 0..=level_max {
        for m in 0..=level_max {
            for alpha in monotone_maps(m, n) {
                let act = dkm.action(&alpha);
                for (i, s) in images[n].iter().enumerate() {
                    let lhs = theta(a, x, y, &t, &dkm, m, &act.column(i))?;
                    let rhs = structure_map(a, &alpha.extend_top(), s)?;
                    if lhs != rhs && not_natural.len() < 20 {
                        not_natural.push(format!("{:?} on basis {i} of level {n}", alpha.values));
                    }
                }
            }
        }
    }
    let mut enumerated_bijection = None;
    if let Some(cap) = enumerate {
        let hr = hom_right_nerve(a, x, y, level_max, cap)?;
        let mut ok = true;
        for n in 0..=level_max {
            let q = field.order().ok_or(Error::InfiniteField)? as u128;
            let size = q.saturating_pow(dkm.dim(n) as u32);
            if size > cap {
                return Err(Error::CapExceeded { estimate: size, cap });
            }
            let index: HashMap<&NerveSimplex, usize> = hr.simplices[n].iter().enumerate().map(|(i, s)| (s, i)).collect();
            let mut hit = vec![false; hr.simplices[n].len()];
            let all = span_elements(field, dkm.dim(n), &(0..dkm.dim(n)).map(|i| crate::homotopy::basis_vec(field, dkm.dim(n), i)).collect::<Vec<_>>());
            for b in &all {
                match index.get(&theta(a, x, y, &t, &dkm, n, b)?) {
                    Some(&i) if !hit[i] => hit[i] = true,
                    _ => ok = false,
                }
            }
            ok &= hit.iter().all(|&h| h);
            levels[n].counts = Some((all.len(), hr.simplices[n].len()));
        }
        enumerated_bijection = Some(ok);
    }
    Ok(MappingReport { levels, invalid_images, not_natural, enumerated_bijection })
}

/// Stacked coordinates of the `f_I`, `n+1 ∈ I`, of a mapping-space simplex.
fn hom_right_coords(a: &AInfCategory, s: &NerveSimplex, n: usize) -> Result<Vec<Scalar>> {
    let (x, y) = (s.objects[0], s.objects[n + 1]);
    let mut out = Vec::new();
    for i in cross_indices(n) {
        out.extend(a.coords(&s.coeff(&i), &a.hom_in_degree(x, y, cross_degree(&i))));
    }
    Ok(out)
}

/// The sign relating nerve coefficients to solutions of the cross condition:
/// `c_I = (-1)^{σ(I)} f_I` with `σ(I) = |I| mod 2`.
pub fn sign_change(i: &[usize]) -> usize {
    i.len() % 2
}

/// `DK(τ F₁): DK(τ Hom(x, y)) → DK(τ Hom(Fx, Fy))` for every pair of source objects,
/// the linear model of the induced maps of right mapping spaces.
pub fn functor_mapping_maps(f: &crate::functor::AInfFunctor, level: usize) -> Result<Vec<(String, ModuleMap)>> {
    let (a, b) = (&f.source, &f.target);
    let field = a.field();
    let mut out = Vec::new();
    for x in 0..a.objects().len() {
        for y in 0..a.objects().len() {
            let s = truncated_map(a, x, y)?;
            let t = truncated_map(b, f.obj(x), f.obj(y))?;
            let mut blocks = Vec::new();
            for k in 0..=level {
                let deg = -(k as i32);
                let src_inc = s.inclusion.map().block(deg);
                let tgt_inc = t.inclusion.map().block(deg);
                let src_gens = a.hom_in_degree(x, y, deg);
                let tgt_gens = b.hom_in_degree(f.obj(x), f.obj(y), deg);
                let cols = (0..s.truncated.dim(deg))
                    .map(|j| {
                        let v = src_inc.column(j);
                        let e = a.elem_from_coords(&v, &src_gens);
                        let w = b.coords(&f.apply(&[e]), &tgt_gens);
                        tgt_inc.solve(&w).ok_or_else(|| Error::Invalid("F₁ does not preserve cycles".into()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                blocks.push(Matrix::from_columns(field, t.truncated.dim(deg), &cols));
            }
            let label = format!("{}->{}", a.objects()[x], a.objects()[y]);
            out.push((label, dk_map(&s.truncated, &t.truncated, &blocks, level)?));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::{binomial, injections};

    fn f2() -> Field {
        Field::Prime(2)
    }

    #[test]
    fn corrupted_face_fails_validation() {
        let field = f2();
        let good = z_delta(1, 2, field).unwrap();
        let mut act = |alpha: &Monotone| {
            let a = good.action(alpha);
            // swap the columns of d₀ on level 2
            Ok(if *alpha == Monotone::coface(2, 0) {
                let cols: Vec<_> = (0..a.cols()).rev().map(|j| a.column(j)).collect();
                Matrix::from_columns(field, a.rows(), &cols)
            } else {
                a
            })
        };
        let labels = (0..=2).map(|n| good.labels(n).to_vec()).collect();
        let bad = SimplicialModule::from_action(field, labels, &mut act).unwrap();
        assert!(!bad.validate().is_empty());
        assert!(good.validate().is_empty());
    }

    #[test]
    fn z_delta_levels_and_normalized_chains() {
        let z0 = z_delta(0, 3, f2()).unwrap();
        assert!(z0.validate().is_empty());
        let n0 = normalized_chains(&z0).unwrap();
        assert_eq!(n0.generators(0), vec!["g0"]);
        assert!((1..=3).all(|j| n0.bases[j].is_empty()));
        let q = Field::Rational;
        let z1 = z_delta(1, 3, q).unwrap();
        assert_eq!(z1.labels(1), ["g00", "g01", "g11"]);
        let n1 = normalized_chains(&z1).unwrap();
        assert_eq!(n1.generators(1), vec!["g00 - g01"]);
        // d_0 of the generator is g0 - g1
        let img = z1.face(1, 0).apply(&n1.bases[1][0]);
        assert_eq!(format_combination(z1.labels(0), &img), "g0 - g1");
        for n in 0..=3 {
            let z = z_delta(n, 5, f2()).unwrap();
            let nz = normalized_chains(&z).unwrap();
            for j in 0..=5 {
                assert_eq!(z.dim(j), monotone_maps(j, n).len());
                assert_eq!(nz.bases[j].len(), injections(j, n).len());
                assert_eq!(nz.bases[j].len(), binomial(n + 1, j + 1));
            }
        }
    }

    fn interval(field: Field) -> ChainComplex {
        // C_1 = K → C_0 = K, identity
        let mut d = BTreeMap::new();
        d.insert(-1, Matrix::identity(field, 1));
        ChainComplex::from_dims(field, "c", &[(-1, 1), (0, 1)], d).unwrap()
    }

    #[test]
    fn dk_dimensions_and_functoriality() {
        let k = ChainComplex::from_dims(f2(), "k", &[(0, 1)], BTreeMap::new()).unwrap();
        let x = dk(&k, 3).unwrap();
        assert!((0..=3).all(|n| x.dim(n) == 1));
        let x = dk(&interval(f2()), 3).unwrap();
        assert_eq!((0..=3).map(|n| x.dim(n)).collect::<Vec<_>>(), vec![1, 2, 3, 4]);
        assert!(x.validate().is_empty());
        let pos = ChainComplex::from_dims(f2(), "p", &[(1, 1)], BTreeMap::new()).unwrap();
        assert!(dk(&pos, 2).is_err());
    }

    #[test]
    fn roundtrips() {
        for field in [f2(), Field::Prime(3), Field::Rational] {
            let rep = roundtrip_complex(&interval(field), 3).unwrap();
            assert!(rep.passed(), "{rep:?}");
            let z1 = z_delta(1, 3, field).unwrap();
            let rep = roundtrip_module(&z1).unwrap();
            assert!(rep.passed(), "{rep:?}");
            assert_eq!(rep.degrees.iter().map(|d| d.2).collect::<Vec<_>>(), vec![2, 3, 4, 5]);
        }
    }

    #[test]
    fn cross_systems_match_chain_maps() {
        let field = Field::Prime(3);
        let m = interval(field);
        // n = 0: degree-0 cycles of M
        let s0 = cross_space(0, &m);
        assert_eq!(s0.kernel.len(), m.d_block(0).kernel().len());
        for n in 0..3 {
            let space = cross_space(n, &m);
            assert_eq!(space.kernel.len(), chain_map_dimension(n, &m).unwrap());
            for sys in solve_cross(n, &m, 1000).unwrap() {
                assert!(verify_cross(&m, &sys).is_empty());
                cross_to_chain_map(&m, &sys).unwrap();
            }
        }
        // n = 1 over Q: d f012 = f12 - f02
        let q = Field::Rational;
        let m = interval(q);
        let mut sys = CrossSystem { n: 1, coeffs: BTreeMap::new() };
        sys.coeffs.insert(vec![0, 2], vec![q.one()]);
        sys.coeffs.insert(vec![1, 2], vec![q.zero()]);
        sys.coeffs.insert(vec![0, 1, 2], vec![q.int(-1)]);
        assert!(verify_cross(&m, &sys).is_empty());
        sys.coeffs.insert(vec![0, 1, 2], vec![q.one()]);
        assert_eq!(verify_cross(&m, &sys), vec!["[0, 1, 2]"]);
        assert!(solve_cross(1, &m, 10).is_err());
    }

    #[test]
    fn homology_of_module_maps() {
        let field = f2();
        let c = interval(field);
        let id: Vec<Matrix> = (0..=3).map(|k| Matrix::identity(field, c.dim(-(k as i32)))).collect();
        let f = dk_map(&c, &c, &id, 3).unwrap();
        assert!(f.check().is_empty());
        let rep = f.homology_report(2).unwrap();
        assert_eq!(rep.len(), 3);
        assert!(rep.iter().all(QisoDegree::is_iso));
        assert!(f.homology_report(4).is_err());
    }
}
