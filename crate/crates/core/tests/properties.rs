mod common;

use common::{all_words, is_factor};
use proptest::prelude::*;
use revform::bounds::{derive_caps, Rational, Template};
use revform::directed::{directed, is_d_directed};
use revform::formula::{Formula, OccurrenceSearch, VarBounds};
use revform::freeness::{is_free, FreenessSpec};
use revform::morphism::{paper_morphism_21, paper_morphism_9, psi_morphism, UniformMorphism};
use revform::word::{periodic_word, reverse, Alphabet, Word};

fn word_over(size: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..size as u8, 0..=max_len)
        .prop_map(move |l| Word::new(l, Alphabet::new(size).unwrap()).unwrap())
}

fn morphisms() -> Vec<UniformMorphism> {
    vec![paper_morphism_21(), paper_morphism_9()]
}

proptest! {
    #[test]
    fn reverse_is_an_involution(w in word_over(5, 40)) {
        prop_assert_eq!(reverse(&reverse(&w)), w.clone());
        prop_assert_eq!(w.reverse().len(), w.len());
    }

    #[test]
    fn reverse_of_concatenation(u in word_over(3, 20), v in word_over(3, 20)) {
        prop_assert_eq!(u.concat(&v).reverse(), v.reverse().concat(&u.reverse()));
    }

    #[test]
    fn morphisms_are_homomorphisms(u in word_over(4, 12), v in word_over(4, 12)) {
        for m in morphisms() {
            let whole = m.apply(&u.concat(&v)).unwrap();
            let parts = m.apply(&u).unwrap().concat(&m.apply(&v).unwrap());
            prop_assert_eq!(whole.letters(), parts.letters());
            prop_assert_eq!(whole.len(), m.width() * (u.len() + v.len()));
        }
    }

    #[test]
    fn psi_morphisms_are_homomorphisms(k in 3usize..12, u in word_over(3, 10), v in word_over(3, 10)) {
        let m = psi_morphism(k).unwrap();
        let whole = m.apply(&u.concat(&v)).unwrap();
        let parts = m.apply(&u).unwrap().concat(&m.apply(&v).unwrap());
        prop_assert_eq!(whole.letters(), parts.letters());
    }

    #[test]
    fn freeness_is_factor_closed(w in word_over(3, 30), num in 1u64..8, n in 1usize..4) {
        let spec = FreenessSpec::new(num + 4, 4, n).unwrap();
        if is_free(w.letters(), &spec) {
            for i in 0..w.len() {
                for j in i..=w.len() {
                    prop_assert!(is_free(&w.letters()[i..j], &spec));
                }
            }
        }
    }

    #[test]
    fn remark_on_mirror_pairs(w in word_over(3, 24)) {
        // In a d-directed word, u and u^R both factors forces |u| < d.
        let d = (1..=w.len() + 1).find(|&d| directed(w.letters(), d)).unwrap();
        let f: Formula = "x.x^R".parse().unwrap();
        let search = OccurrenceSearch::new(&f, &VarBounds::uniform(&f, w.len().max(1))).unwrap();
        for len in d..=w.len() {
            for u in w.letters().windows(len) {
                let mut r = u.to_vec();
                r.reverse();
                prop_assert!(!is_factor(w.letters(), &r));
            }
        }
        if let Some(a) = search.find(w.letters()).0.found() {
            prop_assert!(a.image("x").unwrap().len() < d);
        }
    }
}

#[test]
fn directedness_is_monotone() {
    for len in 1..=12 {
        for alphabet in 2..=3u8 {
            if alphabet == 3 && len > 9 {
                continue;
            }
            for w in all_words(alphabet, len) {
                for d in 1..=len {
                    if directed(&w, d) {
                        assert!(directed(&w, d + 1), "{w:?} is {d}- but not {}-directed", d + 1);
                    }
                }
            }
        }
    }
}

#[test]
fn directedness_matches_definition() {
    for w in all_words(2, 9) {
        for d in 1..=9 {
            let naive = w.windows(d).all(|f| {
                let mut r = f.to_vec();
                r.reverse();
                !is_factor(&w, &r)
            });
            assert_eq!(is_d_directed(&w, d).is_none(), naive, "{w:?} d={d}");
        }
    }
}

#[test]
fn periodic_words_are_2_directed() {
    for k in 2..=8 {
        for len in 1..=100 {
            let w = periodic_word(k, len).unwrap();
            assert_eq!(w.alphabet().size(), k + 1);
            assert!(directed(w.letters(), 2), "k={k} len={len}");
        }
    }
}

#[test]
fn psi_widths() {
    for k in 3..=30 {
        assert_eq!(psi_morphism(k).unwrap().width(), k + 3);
    }
}

#[test]
fn flattening_removes_decorations_only() {
    for text in ["xyzy^Ux.zy^Uxy^Uz.y^R", "xyzx.yz^Uxy.z^R", "x^Rx^U.y", "xyx"] {
        let f: Formula = text.parse().unwrap();
        let flat = f.flatten();
        assert!(flat.is_classical());
        assert_eq!(flat.fragments().len(), f.fragments().len());
        assert_eq!(flat.variables(), f.variables());
        let stripped = text.replace("^R", "").replace("^U", "");
        assert_eq!(flat.to_string(), stripped);
    }
}

#[test]
fn caps_are_monotone_in_beta_and_d() {
    let betas: Vec<Rational> = ["11/10", "6/5", "5/4", "4/3", "7/5", "131/90", "22/15", "3/2", "8/5", "7/4", "19/10"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    for template in [Template::Thm2, Template::Thm3] {
        for d in 2..12 {
            for pair in betas.windows(2) {
                let lo = derive_caps(template, &pair[0], d).unwrap();
                let hi = derive_caps(template, &pair[1], d).unwrap();
                if let Some(h) = hi.long_var_max {
                    assert!(lo.long_var_max.unwrap() <= h);
                }
                if lo.long_var_max.is_none() {
                    assert!(hi.long_var_max.is_none());
                }
            }
            for beta in &betas {
                let a = derive_caps(template, beta, d).unwrap();
                let b = derive_caps(template, beta, d + 1).unwrap();
                assert!(a.short_var_max < b.short_var_max);
                match (a.long_var_max, b.long_var_max) {
                    (Some(x), Some(y)) => assert!(x <= y),
                    (None, None) => {}
                    other => panic!("finiteness changed with d: {other:?}"),
                }
            }
        }
    }
}
