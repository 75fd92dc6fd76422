//! Bounded cochain complexes, hom complexes and cohomology.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::graded::{GradedMap, GradedSpace};
use crate::linalg::{is_zero_vec, Matrix};

/// A complex with a degree `+1` differential; `d∘d = 0` is checked on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    space: GradedSpace,
    d: GradedMap,
}

impl ChainComplex {
    pub fn new(space: GradedSpace, d_blocks: BTreeMap<i32, Matrix>) -> Result<ChainComplex> {
        let d = GradedMap::new(space.clone(), space.clone(), 1, d_blocks)?;
        ChainComplex::from_map(d)
    }

    pub fn from_map(d: GradedMap) -> Result<ChainComplex> {
        if d.degree() != 1 || d.source() != d.target() {
            return Err(Error::Invalid("differential must be a degree +1 endomorphism".into()));
        }
        if !GradedMap::compose(&d, &d)?.is_zero() {
            return Err(Error::Invalid("d∘d != 0".into()));
        }
        Ok(ChainComplex { space: d.source().clone(), d })
    }

    /// Complex given by `(degree, dimension)` pairs with generated labels `{name}{degree}_{i}`.
    pub fn from_dims(
        field: Field,
        name: &str,
        dims: &[(i32, usize)],
        d_blocks: BTreeMap<i32, Matrix>,
    ) -> Result<ChainComplex> {
        let degs: Vec<_> = dims
            .iter()
            .map(|&(d, n)| (d, (0..n).map(|i| format!("{name}{d}_{i}")).collect()))
            .collect();
        ChainComplex::new(GradedSpace::new(field, &degs)?, d_blocks)
    }

    pub fn zero(field: Field) -> ChainComplex {
        let s = GradedSpace::zero(field);
        ChainComplex { d: GradedMap::zero(s.clone(), s.clone(), 1), space: s }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }
    pub fn differential(&self) -> &GradedMap {
        &self.d
    }
    pub fn field(&self) -> Field {
        self.space.field()
    }
    pub fn dim(&self, n: i32) -> usize {
        self.space.dim(n)
    }

    /// `d: C^n → C^{n+1}` as a matrix.
    pub fn d_block(&self, n: i32) -> Matrix {
        self.d.block(n)
    }

    pub fn cohomology(&self, n: i32) -> Cohomology {
        let field = self.field();
        let cycles = self.d_block(n).kernel();
        let boundaries = self.d_block(n - 1).image();
        let len = self.dim(n);
        let mut chosen: Vec<Vec<Scalar>> = boundaries.clone();
        let mut reps = Vec::new();
        let mut rank = Matrix::from_columns(field, len, &chosen).rank();
        for z in &cycles {
            chosen.push(z.clone());
            let r = Matrix::from_columns(field, len, &chosen).rank();
            if r > rank {
                rank = r;
                reps.push(z.clone());
            } else {
                chosen.pop();
            }
        }
        Cohomology { degree: n, dim: reps.len(), ambient: len, field, reps, boundaries, cycles }
    }

    /// Good truncation at degree 0: keep negative degrees, replace degree 0 by
    /// `ker d⁰`, drop positive degrees. Returns the complex and its inclusion.
    pub fn truncate_nonpos(&self) -> Result<(ChainComplex, ChainMap)> {
        let field = self.field();
        let (lo, _) = self.space.window();
        let z0 = self.d_block(0).kernel();
        let labels0 = self.space.labels(0).to_vec();
        let mut degrees: Vec<(i32, Vec<String>)> =
            (lo.min(0)..0).map(|d| (d, self.space.labels(d).to_vec())).collect();
        degrees.push((0, z0.iter().map(|v| format_combination(&labels0, v)).collect()));
        let space = GradedSpace::new(field, &degrees)?;
        let mut blocks = BTreeMap::new();
        for d in lo.min(0)..-1 {
            blocks.insert(d, self.d_block(d));
        }
        // d^{-1} lands in ker d^0; express it in the kernel basis.
        let dm1 = self.d_block(-1);
        let zmat = Matrix::from_columns(field, self.dim(0), &z0);
        let mut coords = Matrix::zeros(field, z0.len(), self.dim(-1));
        for j in 0..self.dim(-1) {
            let c = zmat.solve(&dm1.column(j)).ok_or_else(|| Error::Invalid("d∘d != 0".into()))?;
            for (i, x) in c.into_iter().enumerate() {
                coords.set(i, j, x);
            }
        }
        blocks.insert(-1, coords);
        let truncated = ChainComplex::new(space.clone(), blocks)?;
        let mut inc = BTreeMap::new();
        for d in lo.min(0)..0 {
            inc.insert(d, Matrix::identity(field, self.dim(d)));
        }
        inc.insert(0, zmat);
        let map = GradedMap::new(space, self.space.clone(), 0, inc)?;
        let inclusion = ChainMap::new(truncated.clone(), self.clone(), map)?;
        Ok((truncated, inclusion))
    }
}

/// `H^n` with chosen representatives (flat vectors in `C^n`).
#[derive(Debug, Clone)]
pub struct Cohomology {
    pub degree: i32,
    pub dim: usize,
    pub ambient: usize,
    pub field: Field,
    pub reps: Vec<Vec<Scalar>>,
    pub boundaries: Vec<Vec<Scalar>>,
    pub cycles: Vec<Vec<Scalar>>,
}

impl Cohomology {
    /// Coordinates of the class of a cycle `z` in the representative basis.
    pub fn class_of(&self, z: &[Scalar]) -> Option<Vec<Scalar>> {
        let cols: Vec<Vec<Scalar>> = self.reps.iter().chain(&self.boundaries).cloned().collect();
        let m = Matrix::from_columns(self.field, self.ambient, &cols);
        let x = m.solve(z)?;
        Some(x[..self.dim].to_vec())
    }

    pub fn is_boundary(&self, z: &[Scalar]) -> bool {
        match self.class_of(z) {
            Some(c) => is_zero_vec(&c),
            None => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    f: GradedMap,
}

/// Per-degree outcome of a quasi-isomorphism test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QisoDegree {
    pub degree: i32,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

impl QisoDegree {
    pub fn is_iso(&self) -> bool {
        self.source_dim == self.target_dim && self.rank == self.source_dim
    }
}

impl ChainMap {
    pub fn new(source: ChainComplex, target: ChainComplex, f: GradedMap) -> Result<ChainMap> {
        if f.degree() != 0 {
            return Err(Error::Invalid("chain maps have degree 0".into()));
        }
        let lhs = GradedMap::compose(&f, source.differential())?;
        let rhs = GradedMap::compose(target.differential(), &f)?;
        if lhs.to_flat() != rhs.to_flat() {
            return Err(Error::Invalid("f∘d != d∘f".into()));
        }
        Ok(ChainMap { source, target, f })
    }

    pub fn identity(c: &ChainComplex) -> ChainMap {
        ChainMap { source: c.clone(), target: c.clone(), f: GradedMap::identity(c.space()) }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }
    pub fn target(&self) -> &ChainComplex {
        &self.target
    }
    pub fn map(&self) -> &GradedMap {
        &self.f
    }

    /// Matrix of `H^n(f)` in the representative bases.
    pub fn induced(&self, n: i32) -> (Cohomology, Cohomology, Matrix) {
        let hs = self.source.cohomology(n);
        let ht = self.target.cohomology(n);
        let block = self.f.block(n);
        let cols: Vec<Vec<Scalar>> = hs
            .reps
            .iter()
            .map(|r| ht.class_of(&block.apply(r)).expect("image of a cycle is a cycle"))
            .collect();
        let m = Matrix::from_columns(self.source.field(), ht.dim, &cols);
        (hs, ht, m)
    }

    pub fn quasi_iso_report(&self) -> Vec<QisoDegree> {
        let (a, b) = self.source.space().window();
        let (c, d) = self.target.space().window();
        (a.min(c)..=b.max(d))
            .map(|n| {
                let (hs, ht, m) = self.induced(n);
                QisoDegree { degree: n, source_dim: hs.dim, target_dim: ht.dim, rank: m.rank() }
            })
            .collect()
    }

    pub fn is_quasi_iso(&self) -> bool {
        self.quasi_iso_report().iter().all(QisoDegree::is_iso)
    }
}

/// `Hom_Ch(X, Y)` with basis the elementary matrices `E(y ← x)` and the differential
/// `m¹(f) = d f + (-1)^{deg f + 1} f d`.
#[derive(Debug, Clone)]
pub struct HomComplex {
    pub source: ChainComplex,
    pub target: ChainComplex,
    pub complex: ChainComplex,
    /// Flat index `(x, y) ↦ basis index`, with `x`, `y` flat indices in the source and target.
    entries: BTreeMap<(usize, usize), usize>,
}

impl HomComplex {
    pub fn new(x: &ChainComplex, y: &ChainComplex) -> Result<HomComplex> {
        if x.field() != y.field() {
            return Err(Error::FieldMismatch(format!("{} vs {}", x.field(), y.field())));
        }
        let field = x.field();
        let xs = x.space().flat_basis();
        let ys = y.space().flat_basis();
        let mut by_degree: BTreeMap<i32, Vec<(usize, usize)>> = BTreeMap::new();
        for (i, (dx, _)) in xs.iter().enumerate() {
            for (j, (dy, _)) in ys.iter().enumerate() {
                by_degree.entry(dy - dx).or_default().push((i, j));
            }
        }
        let mut degrees = Vec::new();
        let mut entries = BTreeMap::new();
        let mut flat = 0;
        for (k, pairs) in &by_degree {
            let mut labels = Vec::new();
            for &(i, j) in pairs {
                labels.push(format!("{}→{}", xs[i].1, ys[j].1));
                entries.insert((i, j), flat);
                flat += 1;
            }
            degrees.push((*k, labels));
        }
        let space = GradedSpace::new(field, &degrees)?;
        let mut hc = HomComplex {
            source: x.clone(),
            target: y.clone(),
            complex: ChainComplex::zero(field),
            entries,
        };
        let n = space.total_dim();
        let mut dflat = Matrix::zeros(field, n, n);
        for (&(i, j), &col) in &hc.entries.clone() {
            let k = ys[j].0 - xs[i].0;
            let e = hc.basis_map(i, j);
            let img = m1_ch(&e, x, y, k)?;
            let v = hc.element_of(&img)?;
            for (row, c) in v.into_iter().enumerate() {
                if !c.is_zero() {
                    dflat.set(row, col, c);
                }
            }
        }
        let d = GradedMap::from_flat(space.clone(), space, 1, &dflat)?;
        hc.complex = ChainComplex::from_map(d)?;
        Ok(hc)
    }

    /// The elementary map sending source basis vector `i` to target basis vector `j`.
    pub fn basis_map(&self, i: usize, j: usize) -> GradedMap {
        let field = self.source.field();
        let xs = self.source.space();
        let ys = self.target.space();
        let mut flat = Matrix::zeros(field, ys.total_dim(), xs.total_dim());
        flat.set(j, i, field.one());
        let k = ys.degree_of(j) - xs.degree_of(i);
        GradedMap::from_flat(xs.clone(), ys.clone(), k, &flat).expect("homogeneous")
    }

    /// Coordinates of a homogeneous map in the hom-complex basis.
    pub fn element_of(&self, f: &GradedMap) -> Result<Vec<Scalar>> {
        let field = self.source.field();
        let flat = f.to_flat();
        let mut v = vec![field.zero(); self.entries.len()];
        for i in 0..flat.cols() {
            for j in 0..flat.rows() {
                let c = flat.get(j, i);
                if c.is_zero() {
                    continue;
                }
                let idx = self
                    .entries
                    .get(&(i, j))
                    .ok_or_else(|| Error::SpaceMismatch("entry outside hom complex".into()))?;
                v[*idx] = c.clone();
            }
        }
        Ok(v)
    }

    /// The homogeneous degree-`k` component of a hom-complex vector as a map.
    pub fn map_of(&self, v: &[Scalar], k: i32) -> GradedMap {
        let field = self.source.field();
        let xs = self.source.space();
        let ys = self.target.space();
        let mut flat = Matrix::zeros(field, ys.total_dim(), xs.total_dim());
        for (&(i, j), &idx) in &self.entries {
            if ys.degree_of(j) - xs.degree_of(i) == k && !v[idx].is_zero() {
                flat.set(j, i, v[idx].clone());
            }
        }
        GradedMap::from_flat(xs.clone(), ys.clone(), k, &flat).expect("homogeneous")
    }
}

/// `m¹(f) = d f + (-1)^{deg f + 1} f d` for `f: X → Y` of degree `k`.
pub fn m1_ch(f: &GradedMap, x: &ChainComplex, y: &ChainComplex, k: i32) -> Result<GradedMap> {
    let df = GradedMap::compose(y.differential(), f)?;
    let fd = GradedMap::compose(f, x.differential())?;
    df.add(&fd.scale(&x.field().sign(k as i64 + 1)))
}

/// Signed composite `m²(f, g) = (-1)^{deg f (deg g + 1)} g∘f`, with `f` applied first.
pub fn m2_ch(f: &GradedMap, g: &GradedMap) -> Result<GradedMap> {
    if !f.target().same_shape(g.source()) {
        return Err(Error::SpaceMismatch("m² arguments are not composable".into()));
    }
    let sign = f.field().sign((f.degree() * (g.degree() + 1)) as i64);
    Ok(GradedMap::compose(g, f)?.scale(&sign))
}

/// Human-readable linear combination such as `g00 - g01`.
pub fn format_combination(labels: &[String], coeffs: &[Scalar]) -> String {
    let mut out = String::new();
    for (l, c) in labels.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = if neg { (-c).to_string() } else { c.to_string() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != "1" {
            out.push_str(&mag);
            out.push(' ');
        }
        out.push_str(l);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A random complex in cohomological degrees `lo..=0`: a sum of points and contractible
/// intervals with up to `max_pieces` of each per degree, conjugated by random invertible
/// matrices so that no basis is adapted.
pub fn random_complex(field: Field, rng: &mut impl rand::Rng, lo: i32, max_pieces: usize, name: &str) -> ChainComplex {
    let degrees: Vec<i32> = (lo..=0).collect();
    let points: Vec<usize> = degrees.iter().map(|_| rng.gen_range(0..=max_pieces)).collect();
    let bars: Vec<usize> = degrees.iter().map(|&n| if n < 0 { rng.gen_range(0..=max_pieces) } else { 0 }).collect();
    let dim = |i: usize| points[i] + bars[i] + if i > 0 { bars[i - 1] } else { 0 };
    let conj: Vec<Matrix> = (0..degrees.len()).map(|i| random_invertible(field, rng, dim(i))).collect();
    let mut d = BTreeMap::new();
    for i in 0..degrees.len() - 1 {
        // sources of the bars starting here sit after the points; their targets come last
        let mut m = Matrix::zeros(field, dim(i + 1), dim(i));
        for b in 0..bars[i] {
            m.set(points[i + 1] + bars[i + 1] + b, points[i] + b, field.one());
        }
        let inv = conj[i].inverse().expect("invertible by construction");
        d.insert(degrees[i], conj[i + 1].mul(&m).mul(&inv));
    }
    let dims: Vec<(i32, usize)> = degrees.iter().enumerate().map(|(i, &n)| (n, dim(i))).collect();
    ChainComplex::from_dims(field, name, &dims, d).expect("d∘d = 0 by construction")
}

fn random_invertible(field: Field, rng: &mut impl rand::Rng, n: usize) -> Matrix {
    loop {
        let data = (0..n * n).map(|_| field.int(rng.gen_range(-2..=2))).collect();
        let m = Matrix::from_rows(field, n, n, data);
        if m.inverse().is_some() {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn interval(field: Field) -> ChainComplex {
        // K --1--> K in degrees 0, 1
        let mut d = BTreeMap::new();
        d.insert(0, Matrix::from_rows(field, 1, 1, vec![field.one()]));
        ChainComplex::from_dims(field, "c", &[(0, 1), (1, 1)], d).unwrap()
    }

    fn point(field: Field) -> ChainComplex {
        ChainComplex::from_dims(field, "p", &[(0, 1)], BTreeMap::new()).unwrap()
    }

    #[test]
    fn rejects_nonzero_square() {
        let f = Field::Rational;
        let mut d = BTreeMap::new();
        d.insert(0, Matrix::from_rows(f, 1, 1, vec![f.one()]));
        d.insert(1, Matrix::from_rows(f, 1, 1, vec![f.one()]));
        assert!(ChainComplex::from_dims(f, "x", &[(0, 1), (1, 1), (2, 1)], d).is_err());
    }

    #[test]
    fn hom_complex_of_points_and_interval() {
        let f = Field::Rational;
        let h = HomComplex::new(&point(f), &point(f)).unwrap();
        assert_eq!(h.complex.space().support(), vec![0]);
        assert!(h.complex.differential().is_zero());

        let c = interval(f);
        let h = HomComplex::new(&c, &c).unwrap();
        assert_eq!(h.complex.dim(0), 2);
        assert_eq!(h.complex.dim(-1), 1);
        assert_eq!(h.complex.dim(1), 1);
        // m¹(id) = d - d = 0
        let id = GradedMap::identity(c.space());
        assert!(m1_ch(&id, &c, &c, 0).unwrap().is_zero());
        // Hand expansion: basis E(c1←c0) of degree 1 is killed (d∘E has nothing to hit,
        // E∘d composes to degree 2). E(c0←c1) of degree -1 maps to d E + E d = E(c0←c0) + E(c1←c1).
        let e = h.basis_map(1, 0);
        let img = h.element_of(&m1_ch(&e, &c, &c, -1).unwrap()).unwrap();
        let i00 = h.complex.space().index_of("c0_0→c0_0").unwrap();
        let i11 = h.complex.space().index_of("c1_0→c1_0").unwrap();
        assert_eq!(img[i00], f.one());
        assert_eq!(img[i11], f.one());
        // H^*(End) of an acyclic complex vanishes
        for n in -1..=1 {
            assert_eq!(h.complex.cohomology(n).dim, 0);
        }
    }

    #[test]
    fn m2_signs() {
        let f = Field::Rational;
        let c = interval(f);
        let h = HomComplex::new(&c, &c).unwrap();
        let id = GradedMap::identity(c.space());
        let up = h.basis_map(0, 1); // degree 1
        assert_eq!(m2_ch(&id, &id).unwrap(), id);
        // deg f = 1, deg g = 0: sign -1
        assert_eq!(m2_ch(&up, &id).unwrap(), up.scale(&f.int(-1)));
        // m²(f, id) = (-1)^{deg f} f ; m²(id, g) = g
        assert_eq!(m2_ch(&id, &up).unwrap(), up);
    }

    #[test]
    fn cohomology_examples() {
        let f = Field::Prime(2);
        let c = interval(f);
        assert_eq!((c.cohomology(0).dim, c.cohomology(1).dim), (0, 0));
        assert_eq!(point(f).cohomology(0).dim, 1);
        let mut d = BTreeMap::new();
        d.insert(0, Matrix::zeros(f, 1, 2));
        let z = ChainComplex::from_dims(f, "z", &[(0, 2), (1, 1)], d).unwrap();
        assert_eq!((z.cohomology(0).dim, z.cohomology(1).dim), (2, 1));
    }

    #[test]
    fn truncation_examples() {
        let f = Field::Rational;
        let (t, _) = point(f).truncate_nonpos().unwrap();
        assert_eq!(t.space().total_dim(), 1);
        let shifted = ChainComplex::from_dims(f, "s", &[(1, 1)], BTreeMap::new()).unwrap();
        assert_eq!(shifted.truncate_nonpos().unwrap().0.space().total_dim(), 0);
        let (t, inc) = interval(f).truncate_nonpos().unwrap();
        assert_eq!(t.space().total_dim(), 0);
        assert!(inc.is_quasi_iso());
    }

    #[test]
    fn truncation_preserves_nonpositive_cohomology() {
        let f = Field::Prime(3);
        let mut d = BTreeMap::new();
        d.insert(-1, Matrix::from_rows(f, 2, 1, vec![f.one(), f.zero()]));
        d.insert(0, Matrix::from_rows(f, 1, 2, vec![f.zero(), f.one()]));
        let c = ChainComplex::from_dims(f, "x", &[(-2, 0), (-1, 1), (0, 2), (1, 1)], d).unwrap();
        let (t, inc) = c.truncate_nonpos().unwrap();
        for n in -2..=0 {
            assert_eq!(t.cohomology(n).dim, c.cohomology(n).dim);
        }
        for row in inc.quasi_iso_report() {
            if row.degree <= 0 {
                assert!(row.is_iso());
            }
        }
    }

    #[test]
    fn quasi_iso_examples() {
        let f = Field::Rational;
        let c = interval(f);
        assert!(ChainMap::identity(&c).is_quasi_iso());
        let zero = ChainComplex::zero(f);
        let to_zero = ChainMap::new(c.clone(), zero.clone(), GradedMap::zero(c.space().clone(), zero.space().clone(), 0)).unwrap();
        assert!(to_zero.is_quasi_iso());
        let p = point(f);
        let z = ChainMap::new(p.clone(), p.clone(), GradedMap::zero(p.space().clone(), p.space().clone(), 0)).unwrap();
        assert!(!z.is_quasi_iso());
    }

    #[test]
    fn combination_format() {
        let f = Field::Rational;
        let labels = vec!["g00".to_string(), "g01".to_string(), "g11".to_string()];
        assert_eq!(format_combination(&labels, &[f.one(), f.int(-1), f.zero()]), "g00 - g01");
        assert_eq!(format_combination(&labels, &[f.zero(), f.int(2), f.zero()]), "2 g01");
    }
}
