//! The simplex category: monotone maps `[m] → [n]` as value lists.

/// A monotone map `[m] → [n]`, stored as `(α(0), ..., α(m))` together with `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monotone {
    pub values: Vec<usize>,
    pub codomain: usize,
}

impl Monotone {
    pub fn new(values: Vec<usize>, codomain: usize) -> Monotone {
        assert!(values.windows(2).all(|w| w[0] <= w[1]), "not monotone: {values:?}");
        assert!(values.iter().all(|&v| v <= codomain), "value beyond [{codomain}]");
        Monotone { values, codomain }
    }

    pub fn identity(n: usize) -> Monotone {
        Monotone { values: (0..=n).collect(), codomain: n }
    }

    /// The coface `[n-1] → [n]` skipping `i`.
    pub fn coface(n: usize, i: usize) -> Monotone {
        Monotone { values: (0..=n).filter(|&v| v != i).collect(), codomain: n }
    }

    /// The codegeneracy `[n+1] → [n]` hitting `i` twice.
    pub fn codegeneracy(n: usize, i: usize) -> Monotone {
        Monotone { values: (0..=n + 1).map(|v| if v <= i { v } else { v - 1 }).collect(), codomain: n }
    }

    pub fn domain(&self) -> usize {
        self.values.len() - 1
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &Monotone) -> Monotone {
        assert_eq!(other.codomain, self.domain());
        Monotone { values: other.values.iter().map(|&i| self.values[i]).collect(), codomain: self.codomain }
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && *self.values.last().unwrap() == self.codomain
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    pub fn is_identity(&self) -> bool {
        self.domain() == self.codomain && self.is_injective()
    }

    /// `self = ι ∘ σ` with `σ` surjective and `ι` injective.
    pub fn epi_mono(&self) -> (Monotone, Monotone) {
        let mut image: Vec<usize> = self.values.clone();
        image.dedup();
        let k = image.len() - 1;
        let sigma = self.values.iter().map(|v| image.iter().position(|w| w == v).unwrap()).collect();
        (Monotone { values: sigma, codomain: k }, Monotone { values: image, codomain: self.codomain })
    }

    /// Cofaces and codegeneracies `[e₁, ..., e_r]` with `self = e_r ∘ ... ∘ e₁`.
    pub fn elementary_factors(&self) -> Vec<Monotone> {
        let (mut sigma, mut iota) = self.epi_mono();
        let mut out = Vec::new();
        while sigma.domain() > sigma.codomain {
            let d = sigma.domain();
            let i = (0..d).find(|&i| sigma.values[i] == sigma.values[i + 1]).expect("surjection with a repeat");
            out.push(Monotone::codegeneracy(d - 1, i));
            sigma.values.remove(i + 1);
        }
        let mut faces = Vec::new();
        while iota.domain() < iota.codomain {
            let c = iota.codomain;
            let j = (0..=c).rev().find(|j| !iota.values.contains(j)).expect("injection misses a value");
            faces.push(Monotone::coface(c, j));
            iota = Monotone { values: iota.values.iter().map(|&v| if v > j { v - 1 } else { v }).collect(), codomain: c - 1 };
        }
        out.extend(faces.into_iter().rev());
        out
    }

    /// Extends `[m] → [n]` to `[m+1] → [n+1]` by `m+1 ↦ n+1`.
    pub fn extend_top(&self) -> Monotone {
        let mut values = self.values.clone();
        values.push(self.codomain + 1);
        Monotone { values, codomain: self.codomain + 1 }
    }
}

/// All monotone maps `[m] → [n]` in lexicographic order.
pub fn monotone_maps(m: usize, n: usize) -> Vec<Monotone> {
    fn go(m: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Monotone>) {
        if cur.len() == m + 1 {
            out.push(Monotone { values: cur.clone(), codomain: n });
            return;
        }
        for v in start..=n {
            cur.push(v);
            go(m, n, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, n, 0, &mut Vec::new(), &mut out);
    out
}

pub fn surjections(m: usize, k: usize) -> Vec<Monotone> {
    monotone_maps(m, k).into_iter().filter(Monotone::is_surjective).collect()
}

pub fn injections(m: usize, n: usize) -> Vec<Monotone> {
    monotone_maps(m, n).into_iter().filter(Monotone::is_injective).collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    #[test]
    fn elementary_factorizations_recompose() {
        for m in 0..=4 {
            for n in 0..=4 {
                for alpha in monotone_maps(m, n) {
                    let f = alpha.elementary_factors();
                    let whole = f.iter().skip(1).fold(f.first().cloned().unwrap_or(Monotone::identity(m)), |acc, e| e.after(&acc));
                    assert_eq!(whole, alpha);
                    let k = alpha.epi_mono().0.codomain;
                    assert_eq!(f.len(), (m - k) + (n - k));
                    assert!(f.iter().all(|e| e.domain().abs_diff(e.codomain) == 1));
                }
            }
        }
    }

    use super::*;

    #[test]
    fn counts() {
        // monotone [j] → [n]: C(n+j+1, j+1)
        for n in 0..4 {
            for j in 0..4 {
                assert_eq!(monotone_maps(j, n).len(), binomial(n + j + 1, j + 1));
                assert_eq!(injections(j, n).len(), binomial(n + 1, j + 1));
            }
        }
        assert_eq!(surjections(2, 1).len(), 2);
    }

    #[test]
    fn cosimplicial_identities() {
        // d^j d^i = d^i d^{j-1} for i < j
        for n in 2..5 {
            for j in 0..=n {
                for i in 0..j {
                    assert_eq!(
                        Monotone::coface(n, j).after(&Monotone::coface(n - 1, i)),
                        Monotone::coface(n, i).after(&Monotone::coface(n - 1, j - 1))
                    );
                }
            }
        }
        let a = Monotone::new(vec![0, 0, 2, 2], 3);
        let (s, i) = a.epi_mono();
        assert_eq!(i.after(&s), a);
        assert!(s.is_surjective() && i.is_injective());
    }
}
