//! Side-by-side comparison of a functor at the algebraic level and on nerves.

use serde::Serialize;

use crate::dold_kan::functor_mapping_maps;
use crate::error::Result;
use crate::functor::{AInfFunctor, FunctorReport};
use crate::homotopy::{check_quasi_equivalence, QuasiEquivalenceReport};
use crate::nerve::{nerve, nerve_map};
use crate::simplicial::{weak_equivalence_check, WeakEquivalenceReport};

/// One row of the implication table: when `premise` holds, so must `conclusion`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Implication {
    pub premise: String,
    pub conclusion: String,
    pub premise_holds: bool,
    pub conclusion_holds: bool,
}

impl Implication {
    pub fn violated(&self) -> bool {
        self.premise_holds && !self.conclusion_holds
    }
    pub fn status(&self) -> &'static str {
        match (self.premise_holds, self.conclusion_holds) {
            (true, true) => "instance",
            (true, false) => "violated",
            (false, _) => "vacuous",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub functor: FunctorReport,
    pub quasi: QuasiEquivalenceReport,
    pub nerve: WeakEquivalenceReport,
    pub implications: Vec<Implication>,
}

impl Comparison {
    pub fn passed(&self) -> bool {
        self.implications.iter().all(|i| !i.violated())
    }
}

/// Runs the functor, quasi-equivalence and nerve checks. Nerves are enumerated up to
/// `level`, so a finite field is required.
pub fn compare(f: &AInfFunctor, arity: usize, level: usize, cap: u128) -> Result<Comparison> {
    let functor = f.check(arity)?;
    let quasi = check_quasi_equivalence(f)?;
    let ns = nerve(&f.source, level, cap)?;
    let nt = nerve(&f.target, level, cap)?;
    let map = nerve_map(f, &ns, &nt)?;
    let mapping = functor_mapping_maps(f, level)?;
    let we = weak_equivalence_check(&ns.set, &nt.set, &map, level, Some(&mapping))?;
    let row = |p: &str, c: &str, ph: bool, ch: bool| Implication {
        premise: p.into(),
        conclusion: c.into(),
        premise_holds: ph,
        conclusion_holds: ch,
    };
    let implications = vec![
        row(
            "F satisfies the functor equations",
            "N(F) commutes with faces and degeneracies",
            functor.passed(),
            we.map_violations.is_empty(),
        ),
        row("H0(F) is an equivalence (we1)", "Ho(N(F)) is an equivalence", quasi.we1(), we.ho_equivalence()),
        row(
            "F1 is a quasi-isomorphism on every Hom (we2)",
            "right mapping spaces are weakly equivalent",
            quasi.we2(),
            we.mapping_spaces_ok(),
        ),
        row("F is a quasi-equivalence", "N(F) is a Joyal weak equivalence", quasi.passed(), we.passed()),
    ];
    Ok(Comparison { functor, quasi, nerve: we, implications })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{k_functor, retract_pair};
    use crate::field::Field;

    #[test]
    fn retract_inclusion_is_an_equivalence_on_both_sides() {
        let (_, _, f) = retract_pair(Field::Prime(2)).unwrap();
        let c = compare(&f, 3, 2, 1_000_000).unwrap();
        assert!(c.quasi.passed());
        assert!(c.nerve.passed(), "{:?}", c.nerve);
        assert!(c.implications.iter().all(|i| i.status() == "instance"));
    }

    #[test]
    fn collapsing_a_degree_one_class_is_invisible_to_nerves() {
        let c = compare(&k_functor(Field::Prime(2)), 3, 2, 1_000_000).unwrap();
        assert!(c.quasi.we1());
        assert!(!c.quasi.we2());
        // the nerve only sees the truncation, where the collapse is an isomorphism
        assert!(c.nerve.passed());
        assert!(c.passed());
        assert_eq!(c.implications[2].status(), "vacuous");
    }
}
