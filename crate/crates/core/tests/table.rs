use std::collections::BTreeMap;

use vassiliev::jones::{invariants_from_jones, JonesEngine};
use vassiliev::laurent::LaurentPoly;
use vassiliev::table::{bundled_table, compute_all};

const REFERENCE_JONES: &str = include_str!("data/jones_le10.tsv");

fn reference_jones() -> BTreeMap<String, LaurentPoly> {
    REFERENCE_JONES
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let (name, terms) = l.split_once('\t').unwrap();
            let poly = LaurentPoly::from_terms(terms.split_whitespace().map(|t| {
                let (e, c) = t.split_once(':').unwrap();
                (e.parse::<i64>().unwrap(), c.parse::<i64>().unwrap())
            }));
            (name.to_owned(), poly)
        })
        .collect()
}

#[test]
fn bundled_table_shape() {
    let recs = bundled_table();
    assert_eq!(recs.len(), 249);
    for r in &recs {
        assert_eq!(r.diagram.crossing_count() as u32, r.crossing_number, "{}", r.name);
    }
}

#[test]
fn jones_matches_reference_table() {
    let reference = reference_jones();
    let engine = JonesEngine::default();
    let mut mismatched = Vec::new();
    for r in bundled_table() {
        let j = engine.jones(&r.diagram).unwrap();
        if reference[&r.name] != j {
            mismatched.push(r.name.clone());
        }
    }
    assert!(mismatched.is_empty(), "{} mismatches: {mismatched:?}", mismatched.len());
}

#[test]
fn invariants_from_reference_jones_agree() {
    let reference = reference_jones();
    let mut recs = bundled_table();
    assert!(compute_all(&mut recs, &JonesEngine::default()).is_empty());
    for r in &recs {
        let expected = invariants_from_jones(&reference[&r.name]).unwrap();
        assert_eq!(r.invariants, Some(expected), "{}", r.name);
    }
}
