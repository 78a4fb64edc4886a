mod common;

use common::{all_words, naive_violation};
use revform::freeness::{is_free, max_exponent_violation, suffix_violation, FreenessSpec};

const SPECS: &[(u64, u64, usize)] = &[(2, 1, 1), (7, 4, 1), (3, 2, 1), (7, 5, 1), (5, 3, 2), (3, 2, 3), (1, 1, 1)];

fn agree(alphabet: u8, max_len: usize) {
    for &(num, den, n) in SPECS {
        let spec = FreenessSpec::new(num, den, n).unwrap();
        for len in 1..=max_len {
            for w in all_words(alphabet, len) {
                let ours = max_exponent_violation(&w, &spec).map(|r| (r.start, r.length, r.period));
                assert_eq!(ours, naive_violation(&w, (num, den), n), "{spec} on {w:?}");
                if let Some(r) = max_exponent_violation(&w, &spec) {
                    assert!(r.holds_in(&w));
                    assert!(spec.exceeds(r.length, r.period));
                }
            }
        }
    }
}

#[test]
fn binary_words_up_to_14() {
    agree(2, 14);
}

#[test]
fn ternary_words_up_to_9() {
    agree(3, 9);
}

#[test]
fn suffix_check_matches_prefix_difference() {
    for &(num, den, n) in SPECS {
        let spec = FreenessSpec::new(num, den, n).unwrap();
        for w in all_words(3, 7) {
            let prefix_free = is_free(&w[..w.len() - 1], &spec);
            if prefix_free {
                assert_eq!(suffix_violation(&w, &spec).is_some(), !is_free(&w, &spec), "{w:?}");
            }
            if let Some(r) = suffix_violation(&w, &spec) {
                assert_eq!(r.start + r.length, w.len());
                assert!(r.holds_in(&w) && spec.exceeds(r.length, r.period));
            }
        }
    }
}
