mod common;

use std::collections::BTreeMap;

use common::{all_words, naive_occurrence};
use revform::formula::{longest_avoiding, longest_avoiding_with, Budget, Formula, LongestAvoiding};
use revform::freeness::FreenessSpec;
use revform::generator::{lex_least_free, EnumerationSpec};
use revform::word::{encode, Alphabet};

fn avoiders(f: &Formula, len: usize) -> Vec<Vec<u8>> {
    let caps: BTreeMap<String, usize> = f.variables().iter().map(|v| (v.clone(), len)).collect();
    all_words(2, len)
        .into_iter()
        .filter(|w| w[0] == 0 && naive_occurrence(w, f, &caps).is_none())
        .collect()
}

#[test]
fn deeper_than_the_split_matches_naive() {
    // Binary words avoiding xyxy^R die out after length 13.
    let f: Formula = "xyxy^R".parse().unwrap();
    let at_13 = avoiders(&f, 13);
    assert!(!at_13.is_empty());
    assert!(avoiders(&f, 14).is_empty());
    let r = longest_avoiding(&f, Alphabet::new(2).unwrap(), 40).unwrap();
    match r {
        LongestAvoiding::Finite { length, witness } => {
            assert_eq!(length, 13);
            assert_eq!(witness.letters(), &at_13[0][..]);
            assert_eq!(encode(witness.letters()), "0001110001100");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn exceeding_witness_is_lex_least() {
    // Square-free ternary words: below length 32 a square is a factor of
    // exponent greater than 31/16.
    let f: Formula = "xx".parse().unwrap();
    let r = longest_avoiding(&f, Alphabet::new(3).unwrap(), 30).unwrap();
    let spec = EnumerationSpec::new(Alphabet::new(3).unwrap(), FreenessSpec::new(31, 16, 1).unwrap(), 30).unwrap();
    let least = lex_least_free(&spec).unwrap();
    assert_eq!(
        r,
        LongestAvoiding::Exceeds {
            max_len: 30,
            witness: least
        }
    );
}

#[test]
fn thread_count_does_not_change_the_outcome() {
    let f: Formula = "xyx^Ry".parse().unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| longest_avoiding_with(&f, Alphabet::new(2).unwrap(), 40, &Budget::unlimited()).unwrap())
    };
    assert_eq!(run(1), run(4));
}
