#![allow(dead_code)]

//! Shared fixtures: a brute-force family of one-object dg tables and an
//! independent dg-axiom oracle that works on plain integer arrays mod p.

use ainfty::category::{AInfCategory, Elem};
use ainfty::Field;

/// One object, basis `e0..` with the given degrees; `m1[i]` and `m2[i][j]`
/// (path order: `e_i` applied first) are coefficient vectors mod `p`.
#[derive(Clone, Debug)]
pub struct DgTable {
    pub p: i64,
    pub degs: Vec<i32>,
    pub m1: Vec<Vec<i64>>,
    pub m2: Vec<Vec<Vec<i64>>>,
}

/// Positions a table may be nonzero at, given the degree bookkeeping.
#[derive(Clone, Debug)]
pub enum Slot {
    M1 { i: usize, out: usize },
    M2 { i: usize, j: usize, out: usize },
}

pub fn degrees_of(pattern: (usize, usize, usize)) -> Vec<i32> {
    let (a, b, c) = pattern;
    let mut v = vec![-1; a];
    v.extend(vec![0; b]);
    v.extend(vec![1; c]);
    v
}

pub fn slots(degs: &[i32]) -> Vec<Slot> {
    let n = degs.len();
    let mut out = Vec::new();
    for i in 0..n {
        for o in 0..n {
            if degs[o] == degs[i] + 1 {
                out.push(Slot::M1 { i, out: o });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for o in 0..n {
                if degs[o] == degs[i] + degs[j] {
                    out.push(Slot::M2 { i, j, out: o });
                }
            }
        }
    }
    out
}

impl DgTable {
    pub fn zero(p: i64, degs: &[i32]) -> DgTable {
        let n = degs.len();
        DgTable { p, degs: degs.to_vec(), m1: vec![vec![0; n]; n], m2: vec![vec![vec![0; n]; n]; n] }
    }

    pub fn from_values(p: i64, degs: &[i32], slots: &[Slot], values: &[i64]) -> DgTable {
        let mut t = DgTable::zero(p, degs);
        for (s, &v) in slots.iter().zip(values) {
            match *s {
                Slot::M1 { i, out } => t.m1[i][out] = v.rem_euclid(p),
                Slot::M2 { i, j, out } => t.m2[i][j][out] = v.rem_euclid(p),
            }
        }
        t
    }

    fn d(&self, v: &[i64]) -> Vec<i64> {
        let n = self.degs.len();
        let mut out = vec![0; n];
        for i in 0..n {
            for o in 0..n {
                out[o] = (out[o] + v[i] * self.m1[i][o]).rem_euclid(self.p);
            }
        }
        out
    }

    fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let n = self.degs.len();
        let mut out = vec![0; n];
        for i in 0..n {
            for j in 0..n {
                let c = a[i] * b[j] % self.p;
                if c == 0 {
                    continue;
                }
                for o in 0..n {
                    out[o] = (out[o] + c * self.m2[i][j][o]).rem_euclid(self.p);
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.degs.len()];
        v[i] = 1;
        v
    }

    fn sign(&self, e: i32) -> i64 {
        if e.rem_euclid(2) == 0 {
            1
        } else {
            self.p - 1
        }
    }

    /// d² = 0; d(a₂a₁) = -a₂·d(a₁) + (-1)^{|a₁|} d(a₂)·a₁; (a₃a₂)a₁ associativity with
    /// the sign (-1)^{|a₁|}, written right to left (a₁ applied first).
    pub fn oracle_accepts(&self) -> bool {
        let n = self.degs.len();
        let p = self.p;
        let zero = |v: &[i64]| v.iter().all(|&x| x % p == 0);
        for i in 0..n {
            if !zero(&self.d(&self.d(&self.unit(i)))) {
                return false;
            }
        }
        for i in 0..n {
            for j in 0..n {
                let (a1, a2) = (self.unit(i), self.unit(j));
                let lhs = self.d(&self.mul(&a1, &a2));
                let t1 = self.mul(&self.d(&a1), &a2);
                let t2 = self.mul(&a1, &self.d(&a2));
                let s = self.sign(self.degs[i]);
                let res: Vec<i64> = (0..n).map(|o| lhs[o] + t1[o] - s * t2[o]).collect();
                if !zero(&res) {
                    return false;
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (a1, a2, a3) = (self.unit(i), self.unit(j), self.unit(k));
                    let left = self.mul(&self.mul(&a1, &a2), &a3);
                    let right = self.mul(&a1, &self.mul(&a2, &a3));
                    let s = self.sign(self.degs[i]);
                    let res: Vec<i64> = (0..n).map(|o| left[o] - s * right[o]).collect();
                    if !zero(&res) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn category(&self) -> AInfCategory {
        let field = if self.p == 0 { Field::Rational } else { Field::Prime(self.p as u32) };
        let mut a = AInfCategory::new(field, &["x"]);
        let gens: Vec<usize> = self
            .degs
            .iter()
            .enumerate()
            .map(|(i, &d)| a.add_generator(&format!("e{i}"), 0, 0, d).unwrap())
            .collect();
        let n = gens.len();
        let elem = |v: &[i64]| Elem::from_terms((0..n).map(|o| (gens[o], field.int(v[o]))));
        for i in 0..n {
            a.set_op(&[gens[i]], elem(&self.m1[i])).unwrap();
            for j in 0..n {
                a.set_op(&[gens[i], gens[j]], elem(&self.m2[i][j])).unwrap();
            }
        }
        a
    }
}

/// Grading patterns `(dim⁻¹, dim⁰, dim¹)` of total dimension ≤ 4 whose tables
/// have at most `max_bits` free entries.
pub fn small_patterns(max_bits: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for a in 0..=4 {
        for b in 0..=4 {
            for c in 0..=4 {
                if a + b + c == 0 || a + b + c > 4 {
                    continue;
                }
                if slots(&degrees_of((a, b, c))).len() <= max_bits {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}

/// Every F₂ table for a pattern, as category plus oracle verdict.
pub fn f2_family(pattern: (usize, usize, usize)) -> impl Iterator<Item = DgTable> {
    let degs = degrees_of(pattern);
    let sl = slots(&degs);
    let bits = sl.len();
    (0u64..(1u64 << bits)).map(move |mask| {
        let values: Vec<i64> = (0..bits).map(|b| ((mask >> b) & 1) as i64).collect();
        DgTable::from_values(2, &degs, &sl, &values)
    })
}

/// The F₂ tables accepted by the oracle for patterns with at most `max_bits` free entries.
pub fn valid_f2_tables(max_bits: usize) -> Vec<DgTable> {
    small_patterns(max_bits)
        .into_iter()
        .flat_map(f2_family)
        .filter(DgTable::oracle_accepts)
        .collect()
}
