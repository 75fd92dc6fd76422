mod common;

use std::collections::BTreeMap;

use ainfty::chain::ChainComplex;
use ainfty::dg::ChFragment;
use ainfty::linalg::Matrix;
use ainfty::Field;
use common::{degrees_of, f2_family, slots, small_patterns, DgTable};
use proptest::prelude::*;

#[test]
fn checker_matches_oracle_on_small_f2_patterns() {
    let mut accepted = 0;
    for pattern in small_patterns(11) {
        for t in f2_family(pattern) {
            let oracle = t.oracle_accepts();
            let checker = t.category().check_relations(3).passed();
            assert_eq!(oracle, checker, "pattern {pattern:?}: {t:?}");
            accepted += oracle as usize;
        }
    }
    assert!(accepted > 10);
}

#[test]
fn bar_differential_squares_to_zero_on_valid_tables() {
    for t in common::valid_f2_tables(9).into_iter().take(200) {
        let a = t.category();
        for len in 1..=3 {
            for w in a.composable_tuples(len) {
                let once = a.bar_differential(&BTreeMap::from([(w.clone(), a.field().one())]));
                assert!(a.bar_differential(&once).is_empty(), "{w:?}");
            }
        }
    }
}

fn random_complex(field: Field, dims: &[usize], entries: &[i64]) -> ChainComplex {
    // only d⁰ is nonzero, so d∘d = 0 holds automatically
    let lo = -1;
    let labelled: Vec<(i32, usize)> = dims.iter().enumerate().map(|(i, &n)| (lo + i as i32, n)).collect();
    let mut blocks = BTreeMap::new();
    let (r, c) = (dims[2], dims[1]);
    let data = (0..r * c).map(|k| field.int(entries[k % entries.len()])).collect();
    blocks.insert(0, Matrix::from_rows(field, r, c, data));
    ChainComplex::from_dims(field, "v", &labelled, blocks).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn f3_random_tables_agree_with_oracle(pattern in 0usize..4, values in prop::collection::vec(0i64..3, 40)) {
        let pats = [(0, 1, 1), (1, 1, 0), (1, 1, 1), (0, 2, 0)];
        let degs = degrees_of(pats[pattern]);
        let sl = slots(&degs);
        let t = DgTable::from_values(3, &degs, &sl, &values);
        prop_assert_eq!(t.oracle_accepts(), t.category().check_relations(3).passed());
    }

    #[test]
    fn f3_endomorphism_tables_pass_both(d0 in 0usize..3, d1 in 1usize..3, entries in prop::collection::vec(0i64..3, 1..6)) {
        let field = Field::Prime(3);
        let x = random_complex(field, &[1, d0.max(1), d1], &entries);
        let frag = ChFragment::new(field, &[("X", x)]).unwrap();
        let a = &frag.cat;
        prop_assert!(a.check_relations(3).passed());
        // Re-read the same tables through the oracle.
        let gens: Vec<usize> = (0..a.generators().len()).collect();
        let degs: Vec<i32> = gens.iter().map(|&g| a.generator(g).degree).collect();
        let n = gens.len();
        let mut t = DgTable::zero(3, &degs);
        let coord = |e: Option<&ainfty::category::Elem>, o: usize| -> i64 {
            e.and_then(|e| e.coeff(o)).map(|c| c.to_string().parse::<i64>().unwrap().rem_euclid(3)).unwrap_or(0)
        };
        for i in 0..n {
            for o in 0..n {
                t.m1[i][o] = coord(a.op_basis(&[i]), o);
                for j in 0..n {
                    t.m2[i][j][o] = coord(a.op_basis(&[i, j]), o);
                }
            }
        }
        prop_assert!(t.oracle_accepts());
        // A corrupted product entry is rejected by both.
        if let Some((i, j, o)) = (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |o| (i, j, o))))
            .find(|&(i, j, o)| degs[o] == degs[i] + degs[j] && t.m2[i][j][o] != 0)
        {
            let mut bad = t.clone();
            bad.m2[i][j][o] = (bad.m2[i][j][o] + 1) % 3;
            prop_assert_eq!(bad.oracle_accepts(), bad.category().check_relations(3).passed());
        }
    }
}
