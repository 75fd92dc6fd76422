//! Simplicial sets truncated at a finite level, horn filling, quasi-categories,
//! their homotopy categories and right mapping spaces.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::delta::{monotone_maps, Monotone};
use crate::dold_kan::ModuleMap;
use crate::error::{Error, Result};

/// Levels `0..=L` with the action of every monotone map between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialSet {
    names: Vec<Vec<String>>,
    action: HashMap<Monotone, Vec<usize>>,
}

impl SimplicialSet {
    /// Builds the action tables from `act(α, x)`, the image of `x ∈ X_n` under `α: [m] → [n]`.
    pub fn from_action(
        names: Vec<Vec<String>>,
        act: &mut dyn FnMut(&Monotone, usize) -> Result<usize>,
    ) -> Result<SimplicialSet> {
        let top = names.len().saturating_sub(1);
        let mut action = HashMap::new();
        for n in 0..=top {
            for m in 0..=top {
                for alpha in monotone_maps(m, n) {
                    let table = (0..names[n].len()).map(|x| act(&alpha, x)).collect::<Result<Vec<_>>>()?;
                    if table.iter().any(|&y| y >= names[m].len()) {
                        return Err(Error::Invalid(format!("action of {:?} leaves level {m}", alpha.values)));
                    }
                    action.insert(alpha, table);
                }
            }
        }
        Ok(SimplicialSet { names, action })
    }

    /// Builds a set from face tables `faces[n][i][x] = d_i x` (`n ≥ 1`) and degeneracy
    /// tables `degens[n][i][x] = s_i x ∈ X_{n+1}` (`n < L`). Other maps act through their
    /// epi-mono factorization, so inconsistent tables surface in `validate`.
    pub fn from_generators(
        names: Vec<Vec<String>>,
        faces: &[Vec<Vec<usize>>],
        degens: &[Vec<Vec<usize>>],
    ) -> Result<SimplicialSet> {
        let mut act = |alpha: &Monotone, x: usize| -> Result<usize> {
            let (sigma, iota) = alpha.epi_mono();
            let mut cur = x;
            let mut dim = iota.codomain;
            for v in (0..=iota.codomain).rev() {
                if !iota.values.contains(&v) {
                    cur = faces[dim][v][cur];
                    dim -= 1;
                }
            }
            for i in 0..sigma.domain() {
                if sigma.values[i] == sigma.values[i + 1] {
                    cur = degens[dim][i][cur];
                    dim += 1;
                }
            }
            Ok(cur)
        };
        SimplicialSet::from_action(names, &mut act)
    }

    pub fn top_level(&self) -> usize {
        self.names.len() - 1
    }

    pub fn level(&self, n: usize) -> usize {
        self.names[n].len()
    }

    pub fn name(&self, n: usize, x: usize) -> &str {
        &self.names[n][x]
    }

    pub fn names(&self, n: usize) -> &[String] {
        &self.names[n]
    }

    pub fn apply(&self, alpha: &Monotone, x: usize) -> usize {
        self.action[alpha][x]
    }

    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.apply(&Monotone::coface(n, i), x)
    }

    pub fn degeneracy(&self, n: usize, i: usize, x: usize) -> usize {
        self.apply(&Monotone::codegeneracy(n, i), x)
    }

    pub fn vertex(&self, n: usize, x: usize, i: usize) -> usize {
        self.apply(&Monotone::new(vec![i], n), x)
    }

    /// The totally degenerate `n`-simplex on a vertex.
    pub fn constant(&self, n: usize, v: usize) -> usize {
        self.apply(&Monotone::new(vec![0; n + 1], 0), v)
    }

    pub fn is_degenerate(&self, n: usize, x: usize) -> bool {
        n > 0 && (0..n).any(|i| self.degeneracy(n - 1, i, self.face(n, i, x)) == x)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub level: usize,
    pub checked_pairs: usize,
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `X(id) = id` and `X(α∘β) = X(β)∘X(α)` for every composable pair up to the top level.
pub fn validate(x: &SimplicialSet) -> ValidationReport {
    let top = x.top_level();
    let mut violations = Vec::new();
    let mut checked_pairs = 0;
    for n in 0..=top {
        let id = Monotone::identity(n);
        if (0..x.level(n)).any(|s| x.apply(&id, s) != s) {
            violations.push(format!("identity of [{n}] acts nontrivially"));
        }
        for m in 0..=top {
            for alpha in monotone_maps(m, n) {
                for k in 0..=top {
                    for beta in monotone_maps(k, m) {
                        checked_pairs += 1;
                        let ab = &x.action[&alpha.after(&beta)];
                        let (ta, tb) = (&x.action[&alpha], &x.action[&beta]);
                        for s in 0..x.level(n) {
                            let lhs = ab[s];
                            let rhs = tb[ta[s]];
                            if lhs != rhs && violations.len() < 20 {
                                violations.push(format!(
                                    "{:?}∘{:?} on {}: {} vs {}",
                                    alpha.values,
                                    beta.values,
                                    x.name(n, s),
                                    x.name(k, lhs),
                                    x.name(k, rhs)
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    ValidationReport { level: top, checked_pairs, violations }
}

/// `Λⁿ_k`: the faces `d_j`, `j ≠ k`, as simplices of level `n - 1` (`None` at `k`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HornInstance {
    pub n: usize,
    pub k: usize,
    pub faces: Vec<Option<usize>>,
}

/// All simplices of `X_n` whose faces agree with the horn.
pub fn inner_horn_fill(x: &SimplicialSet, h: &HornInstance) -> Result<Vec<usize>> {
    if h.n > x.top_level() {
        return Err(Error::LevelOverflow { level: h.n, bound: x.top_level() });
    }
    Ok((0..x.level(h.n))
        .filter(|&s| (0..=h.n).all(|j| j == h.k || Some(x.face(h.n, j, s)) == h.faces[j]))
        .collect())
}

/// Every compatible family of faces forming `Λⁿ_k`.
pub fn horns(x: &SimplicialSet, n: usize, k: usize) -> Vec<HornInstance> {
    let below = n - 1;
    // index[i][v] = simplices of level n-1 with d_i = v
    let mut index: Vec<HashMap<usize, Vec<usize>>> = vec![HashMap::new(); n];
    if below >= 1 {
        for (i, idx) in index.iter_mut().enumerate() {
            for s in 0..x.level(below) {
                idx.entry(x.face(below, i, s)).or_default().push(s);
            }
        }
    }
    let positions: Vec<usize> = (0..=n).filter(|&j| j != k).collect();
    let mut out = Vec::new();
    let mut chosen: Vec<Option<usize>> = vec![None; n + 1];
    fn go(
        x: &SimplicialSet,
        n: usize,
        k: usize,
        positions: &[usize],
        p: usize,
        chosen: &mut Vec<Option<usize>>,
        index: &[HashMap<usize, Vec<usize>>],
        out: &mut Vec<HornInstance>,
    ) {
        if p == positions.len() {
            out.push(HornInstance { n, k, faces: chosen.clone() });
            return;
        }
        let j = positions[p];
        let below = n - 1;
        // d_i y_j = d_{j-1} y_i for earlier i < j
        let earlier: Vec<usize> = positions[..p].to_vec();
        let candidates: Vec<usize> = match earlier.first() {
            None => (0..x.level(below)).collect(),
            Some(&i0) => {
                let want = x.face(below, j - 1, chosen[i0].unwrap());
                index[i0].get(&want).cloned().unwrap_or_default()
            }
        };
        for c in candidates {
            if earlier.iter().all(|&i| x.face(below, i, c) == x.face(below, j - 1, chosen[i].unwrap())) {
                chosen[j] = Some(c);
                go(x, n, k, positions, p + 1, chosen, index, out);
                chosen[j] = None;
            }
        }
    }
    if n == 1 {
        return Vec::new();
    }
    go(x, n, k, &positions, 0, &mut chosen, &index, &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasiCategoryReport {
    pub level_max: usize,
    /// `(n, k, horns, horns with a filler)`.
    pub counts: Vec<(usize, usize, usize, usize)>,
    pub unfilled: Vec<HornInstance>,
}

impl QuasiCategoryReport {
    pub fn passed(&self) -> bool {
        self.unfilled.is_empty()
    }
}

/// Exhaustive inner-horn filling for `2 ≤ n ≤ level_max`.
pub fn is_quasicategory(x: &SimplicialSet, level_max: usize) -> Result<QuasiCategoryReport> {
    if level_max > x.top_level() {
        return Err(Error::LevelOverflow { level: level_max, bound: x.top_level() });
    }
    let mut counts = Vec::new();
    let mut unfilled = Vec::new();
    for n in 2..=level_max {
        for k in 1..n {
            let mut filled: std::collections::HashSet<Vec<Option<usize>>> = Default::default();
            for s in 0..x.level(n) {
                filled.insert((0..=n).map(|j| (j != k).then(|| x.face(n, j, s))).collect());
            }
            let hs = horns(x, n, k);
            let total = hs.len();
            let mut ok = 0;
            for h in hs {
                if filled.contains(&h.faces) {
                    ok += 1;
                } else if unfilled.len() < 20 {
                    unfilled.push(h);
                }
            }
            counts.push((n, k, total, ok));
        }
    }
    Ok(QuasiCategoryReport { level_max, counts, unfilled })
}

/// A finite ordinary category. `compose[(f, g)]` is `g ∘ f` for `f: x → y`, `g: y → z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<(String, usize, usize)>,
    pub identities: Vec<usize>,
    pub compose: HashMap<(usize, usize), usize>,
}

impl FiniteCategory {
    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.morphisms.len()).filter(|&f| self.morphisms[f].1 == x && self.morphisms[f].2 == y).collect()
    }

    pub fn comp(&self, f: usize, g: usize) -> usize {
        self.compose[&(f, g)]
    }

    /// Identity and associativity laws, and closure of the composition table.
    pub fn validate(&self) -> Result<()> {
        for (f, (_, x, y)) in self.morphisms.iter().enumerate() {
            for (g, (_, y2, z)) in self.morphisms.iter().enumerate() {
                if y != y2 {
                    continue;
                }
                let h = *self.compose.get(&(f, g)).ok_or_else(|| Error::Invalid("composition table incomplete".into()))?;
                if self.morphisms[h].1 != *x || self.morphisms[h].2 != *z {
                    return Err(Error::Invalid("composite has the wrong ends".into()));
                }
            }
            if self.comp(self.identities[*x], f) != f || self.comp(f, self.identities[*y]) != f {
                return Err(Error::Invalid(format!("identity law fails at {}", self.morphisms[f].0)));
            }
        }
        for (f, g) in self.compose.keys() {
            for h in 0..self.morphisms.len() {
                if self.morphisms[*g].2 == self.morphisms[h].1
                    && self.comp(self.comp(*f, *g), h) != self.comp(*f, self.comp(*g, h))
                {
                    return Err(Error::Invalid("composition is not associative".into()));
                }
            }
        }
        Ok(())
    }

    /// The poset `0 → 1 → ... → n`.
    pub fn ordinal(n: usize) -> FiniteCategory {
        let objects = (0..=n).map(|i| i.to_string()).collect();
        let mut morphisms = Vec::new();
        let mut id = HashMap::new();
        for i in 0..=n {
            for j in i..=n {
                id.insert((i, j), morphisms.len());
                morphisms.push((format!("{i}{j}"), i, j));
            }
        }
        let mut compose: HashMap<(usize, usize), usize> = HashMap::new();
        for i in 0..=n {
            for j in i..=n {
                for k in j..=n {
                    compose.insert((id[&(i, j)], id[&(j, k)]), id[&(i, k)]);
                }
            }
        }
        let identities = (0..=n).map(|i| id[&(i, i)]).collect();
        FiniteCategory { objects, morphisms, identities, compose }
    }

    /// Checks that the given object and morphism maps form an isomorphism onto `other`.
    pub fn is_isomorphism(&self, other: &FiniteCategory, obj: &[usize], mor: &[usize]) -> bool {
        let bij = |v: &[usize], n: usize| {
            let mut seen = vec![false; n];
            v.len() == n && v.iter().all(|&i| i < n && !std::mem::replace(&mut seen[i], true))
        };
        if !bij(obj, other.objects.len()) || !bij(mor, other.morphisms.len()) {
            return false;
        }
        for (f, (_, x, y)) in self.morphisms.iter().enumerate() {
            let (_, x2, y2) = &other.morphisms[mor[f]];
            if obj[*x] != *x2 || obj[*y] != *y2 {
                return false;
            }
        }
        if (0..self.objects.len()).any(|x| mor[self.identities[x]] != other.identities[obj[x]]) {
            return false;
        }
        self.compose.iter().all(|(&(f, g), &h)| other.compose.get(&(mor[f], mor[g])) == Some(&mor[h]))
    }
}

/// The nerve of a finite category, levels `0..=level`.
pub fn nerve_cat(c: &FiniteCategory, level: usize) -> Result<SimplicialSet> {
    c.validate()?;
    // level n: chains of n composable morphisms; level 0: objects
    let mut chains: Vec<Vec<Vec<usize>>> = vec![(0..c.objects.len()).map(|x| vec![x]).collect()];
    for n in 1..=level {
        let mut next = Vec::new();
        for ch in &chains[n - 1] {
            let end = if n == 1 { ch[0] } else { c.morphisms[*ch.last().unwrap()].2 };
            for f in 0..c.morphisms.len() {
                if c.morphisms[f].1 == end {
                    let mut v = if n == 1 { Vec::new() } else { ch.clone() };
                    v.push(f);
                    next.push(v);
                }
            }
        }
        chains.push(next);
    }
    let index: Vec<HashMap<Vec<usize>, usize>> =
        chains.iter().map(|l| l.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect()).collect();
    let names = chains
        .iter()
        .enumerate()
        .map(|(n, l)| {
            l.iter()
                .map(|v| {
                    if n == 0 {
                        c.objects[v[0]].clone()
                    } else {
                        v.iter().map(|&f| c.morphisms[f].0.as_str()).collect::<Vec<_>>().join("|")
                    }
                })
                .collect()
        })
        .collect();
    let mut act = |alpha: &Monotone, x: usize| -> Result<usize> {
        let n = alpha.codomain;
        let ch = &chains[n][x];
        let vertex = |i: usize| if n == 0 { ch[0] } else if i == 0 { c.morphisms[ch[0]].1 } else { c.morphisms[ch[i - 1]].2 };
        let m = alpha.domain();
        if m == 0 {
            return Ok(index[0][&vec![vertex(alpha.apply(0))]]);
        }
        let mut out = Vec::new();
        for i in 0..m {
            let (a, b) = (alpha.apply(i), alpha.apply(i + 1));
            let mut f = c.identities[vertex(a)];
            for step in a..b {
                f = c.comp(f, ch[step]);
            }
            out.push(f);
        }
        Ok(index[m][&out])
    };
    SimplicialSet::from_action(names, &mut act)
}

/// Ho of a quasi-category: edges modulo homotopy, composition through `Λ²₁` fillers.
#[derive(Debug, Clone)]
pub struct QcatHo {
    pub category: FiniteCategory,
    /// Class (morphism of `category`) of every edge.
    pub edge_class: Vec<usize>,
}

/// `f ~ g` when some 2-simplex has `d₂ = s₀x`, `d₁ = g`, `d₀ = f`, closed transitively.
pub fn homotopy_category_qcat(x: &SimplicialSet) -> Result<QcatHo> {
    if x.top_level() < 2 {
        return Err(Error::LevelOverflow { level: 2, bound: x.top_level() });
    }
    let ne = x.level(1);
    let mut parent: Vec<usize> = (0..ne).collect();
    fn find(p: &mut Vec<usize>, i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        let mut j = i;
        while p[j] != r {
            let next = p[j];
            p[j] = r;
            j = next;
        }
        r
    }
    for s in 0..x.level(2) {
        let d2 = x.face(2, 2, s);
        let src = x.vertex(1, d2, 0);
        if d2 == x.constant(1, src) {
            let (a, b) = (find(&mut parent, x.face(2, 0, s)), find(&mut parent, x.face(2, 1, s)));
            parent[a] = b;
        }
    }
    let mut class_of_root = BTreeMap::new();
    let mut morphisms: Vec<(String, usize, usize)> = Vec::new();
    let mut edge_class = vec![0; ne];
    for e in 0..ne {
        let r = find(&mut parent, e);
        let next = class_of_root.len();
        let c = *class_of_root.entry(r).or_insert_with(|| {
            morphisms.push((x.name(1, e).to_string(), x.vertex(1, e, 0), x.vertex(1, e, 1)));
            next
        });
        edge_class[e] = c;
    }
    let identities = (0..x.level(0)).map(|v| edge_class[x.constant(1, v)]).collect();
    let mut compose: HashMap<(usize, usize), usize> = HashMap::new();
    for s in 0..x.level(2) {
        let (f, g, h) = (x.face(2, 2, s), x.face(2, 0, s), x.face(2, 1, s));
        let key = (edge_class[f], edge_class[g]);
        match compose.get(&key) {
            Some(&c) if c != edge_class[h] => {
                return Err(Error::Invalid(format!(
                    "composition depends on the filler: {} and {}",
                    morphisms[c].0,
                    x.name(1, h)
                )))
            }
            _ => {
                compose.insert(key, edge_class[h]);
            }
        }
    }
    let category = FiniteCategory {
        objects: x.names(0).to_vec(),
        morphisms,
        identities,
        compose,
    };
    category.validate().map_err(|e| Error::Invalid(format!("not a quasi-category: {e}")))?;
    Ok(QcatHo { category, edge_class })
}

/// `Hom^R(x, y)`: level `n` consists of the `(n+1)`-simplices with last vertex `y`
/// whose restriction to `{0, ..., n}` is the degenerate simplex on `x`.
pub fn hom_right(xs: &SimplicialSet, x: usize, y: usize) -> Result<(SimplicialSet, Vec<Vec<usize>>)> {
    let top = xs.top_level();
    if top == 0 {
        return Err(Error::LevelOverflow { level: 1, bound: 0 });
    }
    let mut members: Vec<Vec<usize>> = Vec::new();
    for n in 0..top {
        let front = Monotone::new((0..=n).collect(), n + 1);
        let last = Monotone::new(vec![n + 1], n + 1);
        let degenerate = xs.constant(n, x);
        members.push(
            (0..xs.level(n + 1))
                .filter(|&s| xs.apply(&last, s) == y && xs.apply(&front, s) == degenerate)
                .collect(),
        );
    }
    let index: Vec<HashMap<usize, usize>> =
        members.iter().map(|l| l.iter().enumerate().map(|(i, &s)| (s, i)).collect()).collect();
    let names = members
        .iter()
        .enumerate()
        .map(|(n, l)| l.iter().map(|&s| xs.name(n + 1, s).to_string()).collect())
        .collect();
    let mut act = |alpha: &Monotone, i: usize| -> Result<usize> {
        let s = members[alpha.codomain][i];
        let t = xs.apply(&alpha.extend_top(), s);
        index[alpha.domain()]
            .get(&t)
            .copied()
            .ok_or_else(|| Error::Invalid("right mapping space is not closed".into()))
    };
    let set = SimplicialSet::from_action(names, &mut act)?;
    Ok((set, members))
}

/// A level-wise map of simplicial sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    pub levels: Vec<Vec<usize>>,
}

impl SimplicialMap {
    pub fn identity(x: &SimplicialSet) -> SimplicialMap {
        SimplicialMap { levels: (0..=x.top_level()).map(|n| (0..x.level(n)).collect()).collect() }
    }

    /// Commutation with every monotone map; returns the violations.
    pub fn check(&self, x: &SimplicialSet, y: &SimplicialSet) -> Vec<String> {
        let top = self.levels.len() - 1;
        let mut out = Vec::new();
        for n in 0..=top {
            for m in 0..=top {
                for alpha in monotone_maps(m, n) {
                    for s in 0..x.level(n) {
                        if self.levels[m][x.apply(&alpha, s)] != y.apply(&alpha, self.levels[n][s]) && out.len() < 20 {
                            out.push(format!("{:?} on {}", alpha.values, x.name(n, s)));
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeakEquivalenceReport {
    pub level_max: usize,
    pub map_violations: Vec<String>,
    pub ho_fully_faithful: bool,
    pub ho_essentially_surjective: bool,
    /// `(pair, degree, source dim, target dim, rank)` of normalized-chain homology.
    pub mapping_spaces: Vec<(String, Vec<(i32, usize, usize, usize)>)>,
}

impl WeakEquivalenceReport {
    pub fn ho_equivalence(&self) -> bool {
        self.ho_fully_faithful && self.ho_essentially_surjective
    }
    pub fn mapping_spaces_ok(&self) -> bool {
        self.mapping_spaces.iter().all(|(_, ds)| ds.iter().all(|&(_, s, t, r)| s == t && s == r))
    }
    pub fn passed(&self) -> bool {
        self.map_violations.is_empty() && self.ho_equivalence() && self.mapping_spaces_ok()
    }
}

/// Finds `u: a → b` in a finite category with a two-sided inverse.
pub fn find_iso(c: &FiniteCategory, a: usize, b: usize) -> Option<(usize, usize)> {
    for u in c.hom(a, b) {
        for v in c.hom(b, a) {
            if c.comp(u, v) == c.identities[a] && c.comp(v, u) == c.identities[b] {
                return Some((u, v));
            }
        }
    }
    None
}

/// Joyal weak-equivalence test. The homotopy categories are compared by finite search;
/// right mapping spaces must come with their linear structure (`mapping`), whose induced
/// maps are tested on normalized-chain homology in degrees `0..level_max`.
pub fn weak_equivalence_check(
    x: &SimplicialSet,
    y: &SimplicialSet,
    f: &SimplicialMap,
    level_max: usize,
    mapping: Option<&[(String, ModuleMap)]>,
) -> Result<WeakEquivalenceReport> {
    let mapping = mapping.ok_or_else(|| {
        Error::Unsupported("mapping spaces without linear structure; homology criterion unavailable".into())
    })?;
    let map_violations = f.check(x, y);
    let hx = homotopy_category_qcat(x)?;
    let hy = homotopy_category_qcat(y)?;
    // Ho(f) on classes; well-defined because f preserves 2-simplices
    let mut class_map = vec![None; hx.category.morphisms.len()];
    let mut well_defined = true;
    for e in 0..x.level(1) {
        let c = hx.edge_class[e];
        let image = hy.edge_class[f.levels[1][e]];
        match class_map[c] {
            None => class_map[c] = Some(image),
            Some(prev) if prev != image => well_defined = false,
            _ => {}
        }
    }
    let obj = &f.levels[0];
    let mut fully_faithful = well_defined;
    for a in 0..x.level(0) {
        for b in 0..x.level(0) {
            let src = hx.category.hom(a, b);
            let tgt = hy.category.hom(obj[a], obj[b]);
            let mut imgs: Vec<usize> = src.iter().map(|&c| class_map[c].unwrap()).collect();
            imgs.sort();
            imgs.dedup();
            if imgs.len() != src.len() || imgs.len() != tgt.len() {
                fully_faithful = false;
            }
        }
    }
    let essentially_surjective =
        (0..y.level(0)).all(|b| (0..x.level(0)).any(|a| find_iso(&hy.category, obj[a], b).is_some()));
    let mut mapping_spaces = Vec::new();
    for (label, m) in mapping {
        let rep = m.homology_report(level_max.saturating_sub(1))?;
        mapping_spaces.push((label.clone(), rep.iter().map(|q| (q.degree, q.source_dim, q.target_dim, q.rank)).collect()));
    }
    Ok(WeakEquivalenceReport {
        level_max,
        map_violations,
        ho_fully_faithful: fully_faithful,
        ho_essentially_surjective: essentially_surjective,
        mapping_spaces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nerve_of_ordinals() {
        let pt = nerve_cat(&FiniteCategory::ordinal(0), 3).unwrap();
        assert!((0..=3).all(|n| pt.level(n) == 1));
        let d1 = nerve_cat(&FiniteCategory::ordinal(1), 3).unwrap();
        // Δ¹: n+2 simplices in level n
        assert_eq!((0..=3).map(|n| d1.level(n)).collect::<Vec<_>>(), vec![2, 3, 4, 5]);
        assert!(validate(&d1).passed());
        let d2 = nerve_cat(&FiniteCategory::ordinal(2), 3).unwrap();
        assert!(d2.names(2).contains(&"01|12".to_string()));
        let q = is_quasicategory(&d2, 3).unwrap();
        assert!(q.passed());
        let h = HornInstance {
            n: 2,
            k: 1,
            faces: vec![Some(d2.names(1).iter().position(|s| s == "12").unwrap()), None, Some(d2.names(1).iter().position(|s| s == "01").unwrap())],
        };
        let fill = inner_horn_fill(&d2, &h).unwrap();
        assert_eq!(fill.len(), 1);
        assert_eq!(d2.name(1, d2.face(2, 1, fill[0])), "02");
    }

    #[test]
    fn planted_face_violation_is_caught() {
        // two vertices, one edge e: 0 → 1, levels 0..=1; swap d₀ and d₁ of the
        // degenerate edge on vertex 0 so that d₀s₀ ≠ id
        let names = vec![vec!["0".into(), "1".into()], vec!["s0".into(), "s1".into(), "e".into()]];
        let faces = vec![vec![], vec![vec![0, 1, 1], vec![1, 1, 0]]];
        let degens = vec![vec![vec![0, 1]]];
        let x = SimplicialSet::from_generators(names.clone(), &faces, &degens).unwrap();
        assert!(!validate(&x).passed());
        let good = vec![vec![], vec![vec![0, 1, 1], vec![0, 1, 0]]];
        let x = SimplicialSet::from_generators(names, &good, &degens).unwrap();
        assert!(validate(&x).passed());
    }

    #[test]
    fn hollow_triangle_is_not_a_quasicategory() {
        // ∂Δ² up to level 2: only degenerate 2-simplices
        let tri = nerve_cat(&FiniteCategory::ordinal(2), 2).unwrap();
        let keep: Vec<usize> = (0..tri.level(2)).filter(|&s| tri.is_degenerate(2, s)).collect();
        let index: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut names = vec![tri.names(0).to_vec(), tri.names(1).to_vec()];
        names.push(keep.iter().map(|&s| tri.name(2, s).to_string()).collect());
        let mut act = |a: &Monotone, x: usize| -> Result<usize> {
            let s = if a.codomain == 2 { keep[x] } else { x };
            let t = tri.apply(a, s);
            Ok(if a.domain() == 2 { index[&t] } else { t })
        };
        let hollow = SimplicialSet::from_action(names, &mut act).unwrap();
        assert!(validate(&hollow).passed());
        let q = is_quasicategory(&hollow, 2).unwrap();
        assert!(!q.passed());
        assert_eq!(q.unfilled.len(), 1);
    }

    #[test]
    fn ho_of_a_nerve_recovers_the_category() {
        let c = FiniteCategory::ordinal(2);
        let x = nerve_cat(&c, 3).unwrap();
        let ho = homotopy_category_qcat(&x).unwrap();
        let obj: Vec<usize> = (0..3).collect();
        // edge index of a morphism f is its level-1 chain [f]
        let mor: Vec<usize> = (0..c.morphisms.len()).map(|f| ho.edge_class[f]).collect();
        assert!(c.is_isomorphism(&ho.category, &obj, &mor));
        let (hr, _) = hom_right(&x, 0, 2).unwrap();
        assert_eq!(hr.level(0), 1);
        assert!((1..=hr.top_level()).all(|n| (0..hr.level(n)).all(|s| hr.is_degenerate(n, s))));
        assert!(validate(&hr).passed());
        assert!(weak_equivalence_check(&x, &x, &SimplicialMap::identity(&x), 3, None).is_err());
    }
}
