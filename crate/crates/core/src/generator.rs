//! Backtracking enumeration of `(β⁺, n)`-free words.
//!
//! Words are grown one letter at a time in lexicographic order. Only the
//! repetitions ending at the new last letter are examined, since every
//! shorter prefix was already checked when it was produced.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freeness::{suffix_violation, FreenessSpec};
use crate::word::{Alphabet, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationSpec {
    pub alphabet: Alphabet,
    pub spec: FreenessSpec,
    pub length: usize,
}

impl EnumerationSpec {
    pub fn new(alphabet: Alphabet, spec: FreenessSpec, length: usize) -> Result<Self> {
        if length == 0 {
            return Err(Error::Parameter("enumeration length must be at least 1".into()));
        }
        Ok(EnumerationSpec {
            alphabet,
            spec,
            length,
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationStats {
    pub count: u64,
    pub max_depth_reached: usize,
    pub nodes_visited: u64,
}

impl EnumerationStats {
    pub fn merge(&mut self, other: &EnumerationStats) {
        self.count += other.count;
        self.max_depth_reached = self.max_depth_reached.max(other.max_depth_reached);
        self.nodes_visited += other.nodes_visited;
    }
}

/// Depth-first walk below `prefix`; `prefix` must already be free.
fn walk<F: FnMut(&[u8]) -> bool>(
    es: &EnumerationSpec,
    word: &mut Vec<u8>,
    order: &mut dyn FnMut(usize) -> Vec<u8>,
    stats: &mut EnumerationStats,
    visit: &mut F,
) -> bool {
    stats.max_depth_reached = stats.max_depth_reached.max(word.len());
    if word.len() == es.length {
        stats.count += 1;
        return visit(word);
    }
    for c in order(word.len()) {
        word.push(c);
        stats.nodes_visited += 1;
        let keep_going = if suffix_violation(word, &es.spec).is_none() {
            walk(es, word, order, stats, visit)
        } else {
            true
        };
        word.pop();
        if !keep_going {
            return false;
        }
    }
    true
}

fn lex_order(es: &EnumerationSpec) -> impl FnMut(usize) -> Vec<u8> {
    let letters: Vec<u8> = es.alphabet.letters().collect();
    move |_| letters.clone()
}

/// Visits every free word of length `es.length` in lexicographic order. The
/// visitor returns `false` to stop early.
pub fn enumerate_free<F: FnMut(&[u8]) -> bool>(es: &EnumerationSpec, mut visit: F) -> EnumerationStats {
    let mut stats = EnumerationStats::default();
    let mut word = Vec::with_capacity(es.length);
    walk(es, &mut word, &mut lex_order(es), &mut stats, &mut visit);
    stats
}

/// All free words of the requested length, in lexicographic order.
pub fn collect_free(es: &EnumerationSpec) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    enumerate_free(es, |w| {
        out.push(w.to_vec());
        true
    });
    out
}

/// Free words of length `depth` (at most `es.length`), used as roots of
/// independent subtrees.
pub fn free_prefixes(es: &EnumerationSpec, depth: usize) -> Vec<Vec<u8>> {
    let shallow = EnumerationSpec {
        length: depth.clamp(1, es.length),
        ..*es
    };
    collect_free(&shallow)
}

/// Splits the tree at `split_depth` and walks the subtrees in parallel. The
/// visitor may be called concurrently and out of order; statistics are the
/// same as for the serial walk except `nodes_visited`, which counts the
/// shared top levels once per pass.
pub fn enumerate_free_parallel<F>(es: &EnumerationSpec, split_depth: usize, visit: F) -> EnumerationStats
where
    F: Fn(&[u8]) + Sync,
{
    let roots = free_prefixes(es, split_depth);
    roots
        .par_iter()
        .map(|root| {
            let mut stats = EnumerationStats::default();
            let mut word = root.clone();
            let mut sink = |w: &[u8]| {
                visit(w);
                true
            };
            walk(es, &mut word, &mut lex_order(es), &mut stats, &mut sink);
            stats
        })
        .reduce(EnumerationStats::default, |mut a, b| {
            a.merge(&b);
            a
        })
}

pub fn count_free(es: &EnumerationSpec) -> u64 {
    enumerate_free(es, |_| true).count
}

pub fn lex_least_free(es: &EnumerationSpec) -> Result<Word> {
    let mut found = None;
    enumerate_free(es, |w| {
        found = Some(w.to_vec());
        false
    });
    match found {
        Some(w) => Word::new(w, es.alphabet),
        None => Err(Error::Nonexistent(format!(
            "{} word of length {} over {} letters",
            es.spec,
            es.length,
            es.alphabet.size()
        ))),
    }
}

/// A free word found by backtracking with letters shuffled at every node.
pub fn sample_free<R: Rng>(es: &EnumerationSpec, rng: &mut R) -> Result<Word> {
    let letters: Vec<u8> = es.alphabet.letters().collect();
    let mut order = |_| {
        let mut l = letters.clone();
        l.shuffle(rng);
        l
    };
    let mut stats = EnumerationStats::default();
    let mut word = Vec::with_capacity(es.length);
    let mut found = None;
    walk(es, &mut word, &mut order, &mut stats, &mut |w: &[u8]| {
        found = Some(w.to_vec());
        false
    });
    match found {
        Some(w) => Word::new(w, es.alphabet),
        None => Err(Error::Nonexistent(format!(
            "{} word of length {}",
            es.spec, es.length
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeness::is_free;
    use rand::SeedableRng;

    fn es(alphabet: usize, beta: &str, length: usize) -> EnumerationSpec {
        EnumerationSpec::new(
            Alphabet::new(alphabet).unwrap(),
            FreenessSpec::parse(beta, 1).unwrap(),
            length,
        )
        .unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_free(&es(4, "7/4", 1)), 4);
        assert_eq!(count_free(&es(4, "7/4", 2)), 12);
        assert_eq!(count_free(&es(4, "7/4", 3)), 36);
    }

    #[test]
    fn lex_least_examples() {
        assert_eq!(lex_least_free(&es(4, "7/4", 3)).unwrap().to_string(), "010");
        assert!(matches!(
            lex_least_free(&es(2, "3/2", 100)),
            Err(Error::Nonexistent(_))
        ));
    }

    #[test]
    fn visits_in_lexicographic_order() {
        let words = collect_free(&es(3, "2", 6));
        assert!(words.windows(2).all(|p| p[0] < p[1]));
        assert!(words.iter().all(|w| is_free(w, &FreenessSpec::parse("2", 1).unwrap())));
    }

    #[test]
    fn parallel_walk_matches_serial() {
        let spec = es(4, "7/4", 7);
        let serial = collect_free(&spec);
        let seen = std::sync::Mutex::new(Vec::new());
        let stats = enumerate_free_parallel(&spec, 3, |w| seen.lock().unwrap().push(w.to_vec()));
        let mut seen = seen.into_inner().unwrap();
        seen.sort();
        assert_eq!(seen, serial);
        assert_eq!(stats.count as usize, serial.len());
    }

    #[test]
    fn sampling_is_seeded() {
        let spec = es(3, "7/4", 30);
        let a = sample_free(&spec, &mut rand::rngs::StdRng::seed_from_u64(7)).unwrap();
        let b = sample_free(&spec, &mut rand::rngs::StdRng::seed_from_u64(7)).unwrap();
        assert_eq!(a, b);
        assert!(is_free(a.letters(), &spec.spec));
    }

    #[test]
    fn zero_length_is_rejected() {
        assert!(EnumerationSpec::new(
            Alphabet::new(2).unwrap(),
            FreenessSpec::parse("2", 1).unwrap(),
            0
        )
        .is_err());
    }
}
