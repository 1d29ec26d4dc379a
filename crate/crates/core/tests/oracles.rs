mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{expected_outputs, observed_table};

use starlike_core::bracket::{chi_poly, collapse_to_kauffman, v_st};
use starlike_core::complex::{Diff, StateSpace};
use starlike_core::khovanov::kh_of;
use starlike_core::random::corpus;
use starlike_core::resolution::CircleType;

#[test]
fn classical_bracket_matches_union_find_oracle() {
    for d in corpus(11, 80, 7) {
        let ours = collapse_to_kauffman(&chi_poly(&v_st(&d, 12).unwrap()));
        assert_eq!(ours, common::kauffman_oracle(&d), "{}", d.to_json_string());
    }
}

#[test]
fn khovanov_matches_frobenius_oracle() {
    for d in corpus(12, 60, 5) {
        let sp = StateSpace::new(&d, 12).unwrap();
        let ours: BTreeMap<(i32, i32), usize> = kh_of(&sp, Diff::D)
            .0
            .into_iter()
            .filter(|(_, g)| g.rank > 0)
            .map(|((i, q), g)| ((-i, -q), g.rank))
            .collect();
        assert_eq!(ours, common::khovanov_oracle(&d), "{}", d.to_json_string());
    }
}

#[test]
fn local_differential_table() {
    let table = observed_table();
    for (row, outs) in &table {
        let mut expected = expected_outputs(row);
        // two new circles of equal type are interchangeable
        if row.1.len() == 2 && row.1[0] == row.1[1] {
            let sym: BTreeSet<Vec<bool>> = expected.iter().map(|v| vec![v[1], v[0]]).collect();
            expected.extend(sym);
        }
        let mut outs = outs.clone();
        if row.1.len() == 2 && row.1[0] == row.1[1] {
            let sym: BTreeSet<Vec<bool>> = outs.iter().map(|v| vec![v[1], v[0]]).collect();
            outs.extend(sym);
        }
        assert_eq!(outs, expected, "row {row:?}");
    }
    // every merge and split shape shows up
    let shapes: BTreeSet<(usize, usize)> = table.keys().map(|(o, n)| (o.len(), n.len())).collect();
    assert!(shapes.contains(&(2, 1)) && shapes.contains(&(1, 2)));
    let zero_rows = table.values().filter(|o| o.is_empty()).count();
    let two_term = table.values().filter(|o| o.len() == 2).count();
    assert!(zero_rows > 0 && two_term > 0);
}

#[test]
fn merge_split_type_law() {
    for row in observed_table().keys() {
        let parity = |ts: &mut dyn Iterator<Item = CircleType>| ts.map(|t| t == CircleType::H).fold(false, |a, b| a ^ b);
        assert_eq!(
            parity(&mut row.0.iter().map(|c| c.0)),
            parity(&mut row.1.iter().copied()),
            "row {row:?}"
        );
    }
}
