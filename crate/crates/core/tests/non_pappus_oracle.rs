//! Rebuilds the frozen non-Pappus chirotope from rational Pappus coordinates.

use topepair_core::algebra::{self, SimpleMatroid};
use topepair_core::fixtures::{self, NON_PAPPUS_CHIROTOPE, NON_PAPPUS_LINES};
use topepair_core::linalg::RationalMatrix;
use topepair_core::om::{self, chirotope_from_matrix, verify_chirotope_axioms};
use topepair_core::{Chirotope, GroundSet, OrientedMatroid, Sign};

fn pappus() -> Chirotope {
    let m = RationalMatrix::from_columns(&fixtures::pappus_columns());
    chirotope_from_matrix(GroundSet::numbered(9).unwrap(), &m).unwrap()
}

#[test]
fn pappus_has_nine_lines() {
    let chi = pappus();
    assert_eq!(chi.get(&[6, 7, 8]), Sign::Zero);
    let zeros = chi.values().iter().filter(|s| **s == Sign::Zero).count();
    assert_eq!(zeros, 9);
    let m = OrientedMatroid::from_chirotope(&chi).unwrap();
    assert_eq!(algebra::underlying_matroid(&m).unwrap().lines().len(), 9);
}

#[test]
fn regenerated_table_matches_fixture() {
    let mut chi = pappus();
    chi.set_sorted(&[6, 7, 8], Sign::Plus);
    let report = verify_chirotope_axioms(&chi);
    assert!(report.passed(), "{report:?}");
    assert_eq!(chi.table(), NON_PAPPUS_CHIROTOPE);
}

#[test]
fn fixture_shape() {
    let m = fixtures::non_pappus();
    assert_eq!(m.rank(), 3);
    assert_eq!(m.cocircuits().len(), 40);
    assert_eq!(m.topes().len(), 58);
    assert_eq!(om::cocircuits_from_chirotope(&fixtures::non_pappus_chirotope()).unwrap().len(), 40);
    let g = m.tope_graph();
    for i in 0..m.topes().len() {
        let opposite = m.tope_index(&m.topes()[i].negate()).unwrap();
        assert_eq!(g.distances_from(i)[opposite], 9);
    }
    let lines = algebra::underlying_matroid(&m).unwrap();
    let expected = SimpleMatroid::from_lines(
        m.ground().clone(),
        3,
        &NON_PAPPUS_LINES.map(|l| m.ground().mask_of((0..3).map(|k| &l[k..k + 1])).unwrap()),
    )
    .unwrap();
    assert_eq!(lines.lines(), expected.lines());
    assert_eq!(lines.rank_of(m.ground().mask_of(["7", "8", "9"]).unwrap()), 3);
    assert_eq!(algebra::whitney_numbers(&lines), vec![1, 9, 28, 20]);
}

/// Single-basis corruptions of the table. Most break the Grassmann-Plücker
/// relations; the survivors are other oriented matroids: a line made
/// non-collinear, the mutation at 258, and 789 back to 0 (Pappus) or to `-`.
#[test]
fn single_corruptions() {
    let base = fixtures::non_pappus_chirotope();
    let mut survivors = Vec::new();
    let mut failed = 0;
    for i in 0..base.values().len() {
        for s in [Sign::Zero, Sign::Plus, Sign::Minus] {
            if base.values()[i] == s {
                continue;
            }
            let mut v = base.values().to_vec();
            v[i] = s;
            let chi = Chirotope::new(base.ground().clone(), 3, v).unwrap();
            let report = verify_chirotope_axioms(&chi);
            match report.first_failure() {
                Some(f) => {
                    assert!(!f.detail.is_empty());
                    failed += 1;
                }
                None => survivors.push((i, s.as_char())),
            }
        }
    }
    let index = |t: &str| {
        let b: Vec<usize> = t.chars().map(|c| c.to_digit(10).unwrap() as usize - 1).collect();
        topepair_core::subsets::subset_rank(9, &b)
    };
    let mut expected = Vec::new();
    for line in NON_PAPPUS_LINES {
        expected.push((index(line), '+'));
        expected.push((index(line), '-'));
    }
    expected.extend([(index("258"), '0'), (index("258"), '+'), (index("789"), '0'), (index("789"), '-')]);
    expected.sort();
    survivors.sort();
    assert_eq!(survivors, expected);
    assert_eq!(failed, 168 - 20);
}
