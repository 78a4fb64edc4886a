mod common;

use std::collections::BTreeMap;

use common::{all_words, naive_occurrence};
use revform::formula::{Formula, OccurrenceSearch, VarBounds};
use revform::word::Word;

fn agree_on_all(formula: &str, alphabet: u8, max_len: usize) -> usize {
    let f: Formula = formula.parse().unwrap();
    let mut found = 0;
    for len in 1..=max_len {
        let bounds = VarBounds::uniform(&f, len);
        let caps: BTreeMap<String, usize> = f.variables().iter().map(|v| (v.clone(), len)).collect();
        let search = OccurrenceSearch::new(&f, &bounds).unwrap();
        for w in all_words(alphabet, len) {
            let ours = search.find(&w).0.found().cloned();
            let naive = naive_occurrence(&w, &f, &caps);
            assert_eq!(ours, naive, "{formula} on {}", Word::from_letters(w.clone()).unwrap());
            if let Some(a) = ours {
                assert!(f.is_occurrence(&w, &a));
                found += 1;
            }
        }
    }
    found
}

#[test]
fn squares_agree_with_naive_enumerator() {
    assert!(agree_on_all("xx", 2, 10) > 0);
}

#[test]
fn mirror_pairs_agree_with_naive_enumerator() {
    assert!(agree_on_all("x.x^R", 2, 10) > 0);
}

#[test]
fn undirected_squares_agree_with_naive_enumerator() {
    assert!(agree_on_all("xyx^Uy", 2, 10) > 0);
}

#[test]
fn three_variable_formulas_agree() {
    agree_on_all("xyzx.yz^Uxy.z^R", 2, 8);
    agree_on_all("xyzy^Ux.zy^Uxy^Uz", 2, 8);
    agree_on_all("xyz^Rx.y^Uzy", 3, 5);
}

#[test]
fn tighter_bounds_agree() {
    let f: Formula = "xy^Ux.y^R".parse().unwrap();
    let caps: BTreeMap<String, usize> = [("x".to_string(), 2), ("y".to_string(), 1)].into();
    let bounds = VarBounds::from_pairs(&f, &[("x", 2), ("y", 1)]).unwrap();
    let search = OccurrenceSearch::new(&f, &bounds).unwrap();
    for len in 1..=9 {
        for w in all_words(2, len) {
            assert_eq!(search.find(&w).0.found().cloned(), naive_occurrence(&w, &f, &caps));
        }
    }
}
