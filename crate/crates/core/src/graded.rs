//! Finite-dimensional graded spaces and homogeneous maps between them.
//!
//! Conventions are cohomological: differentials raise degree by one, and the
//! shift is `(V[k])^i = V^{i+k}`. Every space carries an explicit degree
//! window; a map producing a nonzero component outside its target window is
//! rejected instead of truncated.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedSpace {
    field: Field,
    lo: i32,
    /// `basis[d - lo]` lists the labels in degree `d`.
    basis: Vec<Vec<String>>,
    /// Accumulated shift relative to the space the labels came from.
    shift: i32,
}

impl GradedSpace {
    /// Builds a space from `(degree, labels)` pairs. The window is the smallest
    /// interval containing every listed degree.
    pub fn new(field: Field, degrees: &[(i32, Vec<String>)]) -> Result<GradedSpace> {
        let mut seen = std::collections::HashSet::new();
        for (_, labels) in degrees {
            for l in labels {
                if !seen.insert(l.clone()) {
                    return Err(Error::Invalid(format!("duplicate basis label `{l}`")));
                }
            }
        }
        let lo = degrees.iter().map(|(d, _)| *d).min().unwrap_or(0);
        let hi = degrees.iter().map(|(d, _)| *d).max().unwrap_or(-1);
        let mut basis = vec![Vec::new(); (hi - lo + 1).max(0) as usize];
        for (d, labels) in degrees {
            basis[(d - lo) as usize].extend(labels.iter().cloned());
        }
        Ok(GradedSpace { field, lo, basis, shift: 0 })
    }

    pub fn zero(field: Field) -> GradedSpace {
        GradedSpace { field, lo: 0, basis: Vec::new(), shift: 0 }
    }

    /// Same labels as `self` with a wider window `[lo, hi]`.
    pub fn with_window(&self, lo: i32, hi: i32) -> Result<GradedSpace> {
        let (slo, shi) = self.window();
        for d in slo..=shi {
            if self.dim(d) > 0 && (d < lo || d > hi) {
                return Err(Error::WindowOverflow(format!("degree {d} outside [{lo},{hi}]")));
            }
        }
        let basis = (lo..=hi).map(|d| self.labels(d).to_vec()).collect();
        Ok(GradedSpace { field: self.field, lo, basis, shift: self.shift })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn window(&self) -> (i32, i32) {
        (self.lo, self.lo + self.basis.len() as i32 - 1)
    }

    pub fn shift_record(&self) -> i32 {
        self.shift
    }

    pub fn labels(&self, d: i32) -> &[String] {
        let i = d - self.lo;
        if i < 0 || i as usize >= self.basis.len() {
            &[]
        } else {
            &self.basis[i as usize]
        }
    }

    pub fn dim(&self, d: i32) -> usize {
        self.labels(d).len()
    }

    pub fn total_dim(&self) -> usize {
        self.basis.iter().map(Vec::len).sum()
    }

    /// Degrees with nonzero dimension, ascending.
    pub fn support(&self) -> Vec<i32> {
        let (lo, hi) = self.window();
        (lo..=hi).filter(|&d| self.dim(d) > 0).collect()
    }

    /// Flat index of the first basis vector of degree `d`.
    pub fn offset(&self, d: i32) -> usize {
        let (lo, _) = self.window();
        (lo..d).map(|e| self.dim(e)).sum()
    }

    pub fn degree_of(&self, flat: usize) -> i32 {
        let mut acc = 0;
        for (i, b) in self.basis.iter().enumerate() {
            if flat < acc + b.len() {
                return self.lo + i as i32;
            }
            acc += b.len();
        }
        panic!("basis index {flat} out of range")
    }

    /// Flat list of `(degree, label)`.
    pub fn flat_basis(&self) -> Vec<(i32, &str)> {
        let mut out = Vec::with_capacity(self.total_dim());
        for (i, b) in self.basis.iter().enumerate() {
            for l in b {
                out.push((self.lo + i as i32, l.as_str()));
            }
        }
        out
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.flat_basis().iter().position(|(_, l)| *l == label)
    }

    /// `(V[k])^i = V^{i+k}`.
    pub fn shift(&self, k: i32) -> GradedSpace {
        GradedSpace { field: self.field, lo: self.lo - k, basis: self.basis.clone(), shift: self.shift + k }
    }

    /// Tensor product with basis `x⊗y` ordered by degree of `x`, then flat order.
    pub fn tensor(&self, other: &GradedSpace) -> Result<GradedSpace> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        Ok(self.tensor_with_index(other).0)
    }

    fn tensor_with_index(&self, other: &GradedSpace) -> (GradedSpace, HashMap<(usize, usize), usize>) {
        let mut by_degree: BTreeMap<i32, Vec<(usize, usize)>> = BTreeMap::new();
        for (i, (dx, _)) in self.flat_basis().iter().enumerate() {
            for (j, (dy, _)) in other.flat_basis().iter().enumerate() {
                by_degree.entry(dx + dy).or_default().push((i, j));
            }
        }
        let xs = self.flat_basis();
        let ys = other.flat_basis();
        let mut degrees = Vec::new();
        let mut index = HashMap::new();
        let mut flat = 0;
        for (d, pairs) in &by_degree {
            let mut labels = Vec::new();
            for &(i, j) in pairs {
                labels.push(format!("{}⊗{}", xs[i].1, ys[j].1));
                index.insert((i, j), flat);
                flat += 1;
            }
            degrees.push((*d, labels));
        }
        let space = if degrees.is_empty() {
            GradedSpace::zero(self.field)
        } else {
            let lo = degrees[0].0;
            let hi = degrees.last().unwrap().0;
            let mut basis = vec![Vec::new(); (hi - lo + 1) as usize];
            for (d, labels) in degrees {
                basis[(d - lo) as usize] = labels;
            }
            GradedSpace { field: self.field, lo, basis, shift: 0 }
        };
        (space, index)
    }

    pub fn same_shape(&self, other: &GradedSpace) -> bool {
        self.field == other.field && self.support() == other.support()
            && self.support().iter().all(|&d| self.dim(d) == other.dim(d))
    }
}

/// A homogeneous linear map of fixed degree, stored as one block per source degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMap {
    source: GradedSpace,
    target: GradedSpace,
    degree: i32,
    blocks: BTreeMap<i32, Matrix>,
}

impl GradedMap {
    /// `blocks[d]` maps degree `d` of the source into degree `d + degree` of the target.
    pub fn new(
        source: GradedSpace,
        target: GradedSpace,
        degree: i32,
        blocks: BTreeMap<i32, Matrix>,
    ) -> Result<GradedMap> {
        let field = source.field();
        if target.field() != field {
            return Err(Error::FieldMismatch(format!("{} vs {}", field, target.field())));
        }
        let mut clean = BTreeMap::new();
        for (d, m) in blocks {
            if m.cols() != source.dim(d) || m.rows() != target.dim(d + degree) {
                if m.is_zero() && target.dim(d + degree) == 0 {
                    continue;
                }
                return Err(Error::WindowOverflow(format!(
                    "block at degree {d} has shape {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.dim(d + degree),
                    source.dim(d)
                )));
            }
            if !m.is_zero() {
                clean.insert(d, m);
            }
        }
        Ok(GradedMap { source, target, degree, blocks: clean })
    }

    pub fn zero(source: GradedSpace, target: GradedSpace, degree: i32) -> GradedMap {
        GradedMap { source, target, degree, blocks: BTreeMap::new() }
    }

    pub fn identity(space: &GradedSpace) -> GradedMap {
        let blocks = space
            .support()
            .into_iter()
            .map(|d| (d, Matrix::identity(space.field(), space.dim(d))))
            .collect();
        GradedMap { source: space.clone(), target: space.clone(), degree: 0, blocks }
    }

    /// Builds the map from a full matrix in flat bases. Entries crossing degrees
    /// other than `degree` must vanish.
    pub fn from_flat(source: GradedSpace, target: GradedSpace, degree: i32, flat: &Matrix) -> Result<GradedMap> {
        let mut blocks = BTreeMap::new();
        for (j, (dj, _)) in source.flat_basis().into_iter().enumerate() {
            for (i, (di, _)) in target.flat_basis().into_iter().enumerate() {
                let x = flat.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if di != dj + degree {
                    return Err(Error::Invalid(format!("entry ({i},{j}) is not of degree {degree}")));
                }
                let m = blocks.entry(dj).or_insert_with(|| {
                    Matrix::zeros(source.field(), target.dim(dj + degree), source.dim(dj))
                });
                m.set(i - target.offset(di), j - source.offset(dj), x.clone());
            }
        }
        GradedMap::new(source, target, degree, blocks)
    }

    pub fn source(&self) -> &GradedSpace {
        &self.source
    }
    pub fn target(&self) -> &GradedSpace {
        &self.target
    }
    pub fn degree(&self) -> i32 {
        self.degree
    }
    pub fn field(&self) -> Field {
        self.source.field()
    }

    pub fn block(&self, d: i32) -> Matrix {
        self.blocks.get(&d).cloned().unwrap_or_else(|| {
            Matrix::zeros(self.field(), self.target.dim(d + self.degree), self.source.dim(d))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn to_flat(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.target.total_dim(), self.source.total_dim());
        for (d, b) in &self.blocks {
            let (ro, co) = (self.target.offset(d + self.degree), self.source.offset(*d));
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    m.set(ro + i, co + j, b.get(i, j).clone());
                }
            }
        }
        m
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.to_flat().apply(v)
    }

    /// `g ∘ f`, written `compose(g, f)`.
    pub fn compose(g: &GradedMap, f: &GradedMap) -> Result<GradedMap> {
        if f.field() != g.field() {
            return Err(Error::FieldMismatch(format!("{} vs {}", f.field(), g.field())));
        }
        if !f.target.same_shape(&g.source) {
            return Err(Error::SpaceMismatch("target(f) != source(g)".into()));
        }
        let mut blocks = BTreeMap::new();
        for (d, fb) in &f.blocks {
            let gb = g.block(d + f.degree);
            if gb.cols() != fb.rows() {
                return Err(Error::SpaceMismatch(format!("degree {d}")));
            }
            blocks.insert(*d, gb.mul(fb));
        }
        GradedMap::new(f.source.clone(), g.target.clone(), f.degree + g.degree, blocks)
    }

    /// Koszul-signed tensor: `(a⊗b)(x⊗y) = (-1)^{deg b · deg x} a(x)⊗b(y)`.
    pub fn tensor(a: &GradedMap, b: &GradedMap) -> Result<GradedMap> {
        if a.field() != b.field() {
            return Err(Error::FieldMismatch(format!("{} vs {}", a.field(), b.field())));
        }
        let field = a.field();
        let (src, _) = a.source.tensor_with_index(&b.source);
        let (tgt, tidx) = a.target.tensor_with_index(&b.target);
        let (af, bf) = (a.to_flat(), b.to_flat());
        let mut flat = Matrix::zeros(field, tgt.total_dim(), src.total_dim());
        let xs = a.source.flat_basis();
        let ys = b.source.flat_basis();
        let mut col = 0;
        // Source tensor basis order matches `tensor_with_index`: regroup by degree.
        let mut cols: BTreeMap<i32, Vec<(usize, usize)>> = BTreeMap::new();
        for (i, (dx, _)) in xs.iter().enumerate() {
            for (j, (dy, _)) in ys.iter().enumerate() {
                cols.entry(dx + dy).or_default().push((i, j));
            }
        }
        for pairs in cols.values() {
            for &(i, j) in pairs {
                let sign = field.sign((b.degree * xs[i].0) as i64);
                for (p, ap) in af.column(i).iter().enumerate() {
                    if ap.is_zero() {
                        continue;
                    }
                    for (q, bq) in bf.column(j).iter().enumerate() {
                        if bq.is_zero() {
                            continue;
                        }
                        flat.add_to(tidx[&(p, q)], col, &(&sign * &(ap * bq)));
                    }
                }
                col += 1;
            }
        }
        GradedMap::from_flat(src, tgt, a.degree + b.degree, &flat)
    }

    /// The same linear map viewed between shifted spaces; the degree is unchanged
    /// when both sides shift by the same amount.
    pub fn shift(&self, k: i32) -> GradedMap {
        let blocks = self.blocks.iter().map(|(d, m)| (d - k, m.clone())).collect();
        GradedMap { source: self.source.shift(k), target: self.target.shift(k), degree: self.degree, blocks }
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap> {
        if self.degree != other.degree || !self.source.same_shape(&other.source) {
            return Err(Error::SpaceMismatch("cannot add maps of different shape".into()));
        }
        let mut blocks = self.blocks.clone();
        for (d, m) in &other.blocks {
            let e = blocks.entry(*d).or_insert_with(|| Matrix::zeros(m.field(), m.rows(), m.cols()));
            *e = e.add(m);
        }
        GradedMap::new(self.source.clone(), self.target.clone(), self.degree, blocks)
    }

    pub fn scale(&self, c: &Scalar) -> GradedMap {
        let blocks = self.blocks.iter().map(|(d, m)| (*d, m.scale(c))).filter(|(_, m)| !m.is_zero()).collect();
        GradedMap { blocks, ..self.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn labels(prefix: &str, n: usize) -> Vec<String> {
        (0..n).map(|i| format!("{prefix}{i}")).collect()
    }

    fn space(f: Field, prefix: &str, dims: &[(i32, usize)]) -> GradedSpace {
        let degs: Vec<_> = dims.iter().map(|&(d, n)| (d, labels(&format!("{prefix}{d}_"), n))).collect();
        GradedSpace::new(f, &degs).unwrap()
    }

    #[test]
    fn shift_conventions() {
        let f = Field::Rational;
        let v = space(f, "v", &[(0, 2)]);
        assert_eq!(v.shift(0), v);
        assert_eq!(v.shift(1).support(), vec![-1]);
        assert_eq!(v.shift(1).shift(-1), v);
    }

    #[test]
    fn identity_tensor_identity() {
        let f = Field::Rational;
        let v = space(f, "v", &[(0, 1), (1, 2)]);
        let w = space(f, "w", &[(-1, 1), (0, 1)]);
        let t = GradedMap::tensor(&GradedMap::identity(&v), &GradedMap::identity(&w)).unwrap();
        assert_eq!(t.degree(), 0);
        assert_eq!(t.to_flat(), Matrix::identity(f, v.total_dim() * w.total_dim()));
        let zero = GradedMap::zero(v.clone(), v.clone(), 0);
        assert!(GradedMap::tensor(&zero, &GradedMap::identity(&w)).unwrap().is_zero());
    }

    #[test]
    fn koszul_sign_on_odd_maps() {
        // x in degree 1, a: V -> V of degree 1, b of degree 1: sign (-1)^{1·1}.
        let f = Field::Rational;
        let v = space(f, "v", &[(1, 1), (2, 1)]);
        let mut flat = Matrix::zeros(f, 2, 2);
        flat.set(1, 0, f.one());
        let a = GradedMap::from_flat(v.clone(), v.clone(), 1, &flat).unwrap();
        let t = GradedMap::tensor(&a, &a).unwrap();
        // source v1⊗v1 (degree 2) goes to v2⊗v2 (degree 4) with coefficient -1.
        let src_i = t.source().index_of("v1_0⊗v1_0").unwrap();
        let tgt_i = t.target().index_of("v2_0⊗v2_0").unwrap();
        assert_eq!(t.to_flat().get(tgt_i, src_i), &f.int(-1));
    }

    #[test]
    fn compose_scalars_over_f2() {
        let f = Field::Prime(2);
        let v = space(f, "v", &[(0, 1)]);
        let one = GradedMap::from_flat(v.clone(), v.clone(), 0, &Matrix::from_rows(f, 1, 1, vec![f.one()])).unwrap();
        assert_eq!(GradedMap::compose(&one, &one).unwrap(), one);
        let zero = GradedMap::zero(v.clone(), v.clone(), 0);
        assert!(GradedMap::compose(&one, &zero).unwrap().is_zero());
        assert_eq!(GradedMap::compose(&GradedMap::identity(&v), &one).unwrap(), one);
    }

    #[test]
    fn compose_rejects_mismatch() {
        let f = Field::Rational;
        let v = space(f, "v", &[(0, 1)]);
        let w = space(f, "w", &[(0, 2)]);
        let g = GradedMap::identity(&w);
        let fm = GradedMap::identity(&v);
        assert!(matches!(GradedMap::compose(&g, &fm), Err(Error::SpaceMismatch(_))));
    }

    fn arb_map(f: Field, src: GradedSpace, tgt: GradedSpace, deg: i32, seed: Vec<i64>) -> GradedMap {
        let mut flat = Matrix::zeros(f, tgt.total_dim(), src.total_dim());
        let mut k = 0;
        for (j, (dj, _)) in src.flat_basis().into_iter().enumerate() {
            for (i, (di, _)) in tgt.flat_basis().into_iter().enumerate() {
                if di == dj + deg {
                    flat.set(i, j, f.int(seed[k % seed.len()]));
                    k += 1;
                }
            }
        }
        GradedMap::from_flat(src, tgt, deg, &flat).unwrap()
    }

    proptest! {
        #[test]
        fn koszul_interchange(seed in prop::collection::vec(-2i64..3, 8), da in 0i32..2, db in 0i32..2, dc in 0i32..2, dd in 0i32..2) {
            let f = Field::Rational;
            let v = space(f, "v", &[(0, 1), (1, 1), (2, 1)]);
            let w = space(f, "w", &[(0, 1), (1, 1), (2, 1)]);
            let u = v.with_window(-1, 6).unwrap();
            let x = w.with_window(-1, 6).unwrap();
            let c = arb_map(f, v.clone(), u.clone(), dc, seed.clone());
            let d = arb_map(f, w.clone(), x.clone(), dd, seed.iter().rev().cloned().collect());
            let a = arb_map(f, u.clone(), u.clone(), da, seed.iter().map(|s| s + 1).collect());
            let b = arb_map(f, x.clone(), x.clone(), db, seed.iter().map(|s| s - 1).collect());
            let lhs = GradedMap::compose(&GradedMap::tensor(&a, &b).unwrap(), &GradedMap::tensor(&c, &d).unwrap()).unwrap();
            let rhs = GradedMap::tensor(&GradedMap::compose(&a, &c).unwrap(), &GradedMap::compose(&b, &d).unwrap()).unwrap()
                .scale(&f.sign((db * dc) as i64));
            prop_assert_eq!(lhs.to_flat(), rhs.to_flat());
        }

        #[test]
        fn tensor_associative(seed in prop::collection::vec(-2i64..3, 6), da in 0i32..2, db in 0i32..2, dc in 0i32..2) {
            let f = Field::Rational;
            let s1 = space(f, "a", &[(0, 1), (1, 1)]);
            let s2 = space(f, "b", &[(0, 1), (1, 1)]);
            let s3 = space(f, "c", &[(0, 1), (1, 1)]);
            let t1 = s1.with_window(0, 3).unwrap();
            let t2 = s2.with_window(0, 3).unwrap();
            let t3 = s3.with_window(0, 3).unwrap();
            let a = arb_map(f, s1, t1, da, seed.clone());
            let b = arb_map(f, s2, t2, db, seed.iter().map(|s| s * 2).collect());
            let c = arb_map(f, s3, t3, dc, seed.iter().map(|s| s - 1).collect());
            let left = GradedMap::tensor(&GradedMap::tensor(&a, &b).unwrap(), &c).unwrap();
            let right = GradedMap::tensor(&a, &GradedMap::tensor(&b, &c).unwrap()).unwrap();
            // regroup by label: (x⊗y)⊗z and x⊗(y⊗z) print identically
            let (lf, rf) = (left.to_flat(), right.to_flat());
            for (j, (_, lj)) in left.source().flat_basis().iter().enumerate() {
                let rj = right.source().index_of(lj).unwrap();
                for (i, (_, li)) in left.target().flat_basis().iter().enumerate() {
                    let ri = right.target().index_of(li).unwrap();
                    prop_assert_eq!(lf.get(i, j), rf.get(ri, rj));
                }
            }
        }
    }
}
