//! Longest words avoiding a formula, by depth-first backtracking.
//!
//! Formulas are invariant under renaming letters, so the first letter is
//! fixed to `0`. Each extension only looks for occurrences that are new in
//! the extended word: such an occurrence has a fragment whose image ends at
//! the new last letter.
//!
//! The tree is walked serially down to a fixed depth; the subtrees below
//! are explored in parallel and combined in lexicographic order, so the
//! outcome and witness do not depend on the thread count.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::search::{Budget, OccurrenceSearch, SearchOutcome, SearchStats};
use super::{Formula, VarBounds};
use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

/// Depth at which the walk fans out into parallel subtrees.
const SPLIT_DEPTH: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LongestAvoiding {
    /// Every word longer than `length` contains the formula.
    Finite { length: usize, witness: Word },
    /// `witness` has length `max_len` and avoids the formula.
    Exceeds { max_len: usize, witness: Word },
    /// The node budget ran out; `witness` is the longest avoiding word seen.
    Inconclusive { longest_seen: usize, witness: Word },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LongestSearchStats {
    /// Words examined (tree nodes).
    pub words: u64,
    pub search: SearchStats,
}

impl LongestSearchStats {
    fn merge(&mut self, other: &LongestSearchStats) {
        self.words += other.words;
        self.search.merge(&other.search);
    }
}

pub fn longest_avoiding(f: &Formula, alphabet: Alphabet, max_len: usize) -> Result<LongestAvoiding> {
    Ok(longest_avoiding_with(f, alphabet, max_len, &Budget::unlimited())?.0)
}

/// The witness is the lexicographically least avoiding word of the reported
/// length. Statistics can vary with the thread count when a word of length
/// `max_len` is found, since other subtrees may have started by then.
pub fn longest_avoiding_with(
    f: &Formula,
    alphabet: Alphabet,
    max_len: usize,
    budget: &Budget,
) -> Result<(LongestAvoiding, LongestSearchStats)> {
    if max_len == 0 {
        return Err(Error::Parameter("max_len must be at least 1".into()));
    }
    let search = OccurrenceSearch::new(f, &VarBounds::uniform(f, max_len))?;
    let witness = |letters: Vec<u8>| Word::new(letters, alphabet).expect("letters in alphabet");
    let no_cancel = AtomicUsize::new(usize::MAX);

    let split = max_len > SPLIT_DEPTH;
    let mut top = Walk::new(&search, alphabet, max_len, budget, Vec::new(), &no_cancel, 0);
    if split {
        top.max_len = SPLIT_DEPTH;
        top.frontier = Some(Vec::new());
    }
    let flow = top.extend_with(0);
    let mut stats = top.stats;
    let frontier = top.frontier.take().unwrap_or_default();
    if !split || frontier.is_empty() || matches!(flow, Flow::Exhausted) {
        let result = match flow {
            Flow::Done => LongestAvoiding::Exceeds {
                max_len,
                witness: witness(top.best),
            },
            Flow::Exhausted => LongestAvoiding::Inconclusive {
                longest_seen: top.best.len(),
                witness: witness(top.best),
            },
            Flow::Continue | Flow::Cancelled => LongestAvoiding::Finite {
                length: top.best.len(),
                witness: witness(top.best),
            },
        };
        return Ok((result, stats));
    }

    let first_done = AtomicUsize::new(usize::MAX);
    let subtrees: Vec<(Flow, Vec<u8>, LongestSearchStats)> = frontier
        .into_par_iter()
        .enumerate()
        .map(|(i, prefix)| {
            let mut walk = Walk::new(&search, alphabet, max_len, budget, prefix, &first_done, i);
            let flow = walk.children();
            if matches!(flow, Flow::Done) {
                first_done.fetch_min(i, Ordering::Relaxed);
            }
            (flow, walk.best, walk.stats)
        })
        .collect();
    for (_, _, s) in &subtrees {
        stats.merge(s);
    }
    let longest = |flows: &[(Flow, Vec<u8>, LongestSearchStats)]| {
        let len = flows.iter().map(|(_, b, _)| b.len()).max().unwrap_or(0);
        flows
            .iter()
            .find(|(_, b, _)| b.len() == len)
            .map(|(_, b, _)| b.clone())
            .unwrap_or_default()
    };
    let result = if let Some((_, best, _)) = subtrees.iter().find(|(f, _, _)| matches!(f, Flow::Done)) {
        LongestAvoiding::Exceeds {
            max_len,
            witness: witness(best.clone()),
        }
    } else if subtrees.iter().any(|(f, _, _)| matches!(f, Flow::Exhausted)) {
        let best = longest(&subtrees);
        LongestAvoiding::Inconclusive {
            longest_seen: best.len(),
            witness: witness(best),
        }
    } else {
        let best = longest(&subtrees);
        LongestAvoiding::Finite {
            length: best.len(),
            witness: witness(best),
        }
    };
    Ok((result, stats))
}

enum Flow {
    Continue,
    Done,
    Exhausted,
    /// A subtree earlier in lexicographic order already reached `max_len`.
    Cancelled,
}

struct Walk<'a> {
    search: &'a OccurrenceSearch,
    alphabet: Alphabet,
    max_len: usize,
    budget: &'a Budget,
    word: Vec<u8>,
    best: Vec<u8>,
    stats: LongestSearchStats,
    /// When set, avoiding words of length `max_len` are collected here
    /// instead of ending the walk.
    frontier: Option<Vec<Vec<u8>>>,
    first_done: &'a AtomicUsize,
    index: usize,
}

impl<'a> Walk<'a> {
    fn new(
        search: &'a OccurrenceSearch,
        alphabet: Alphabet,
        max_len: usize,
        budget: &'a Budget,
        word: Vec<u8>,
        first_done: &'a AtomicUsize,
        index: usize,
    ) -> Self {
        Walk {
            search,
            alphabet,
            max_len,
            budget,
            best: word.clone(),
            word,
            stats: LongestSearchStats::default(),
            frontier: None,
            first_done,
            index,
        }
    }

    /// Appends `letter` and explores below it if the word still avoids.
    fn extend_with(&mut self, letter: u8) -> Flow {
        if self.first_done.load(Ordering::Relaxed) < self.index {
            return Flow::Cancelled;
        }
        self.word.push(letter);
        self.stats.words += 1;
        let flow = match self.has_new_occurrence() {
            None => Flow::Exhausted,
            Some(true) => Flow::Continue,
            Some(false) => {
                if self.word.len() > self.best.len() {
                    self.best = self.word.clone();
                }
                if self.word.len() == self.max_len {
                    match &mut self.frontier {
                        Some(words) => {
                            words.push(self.word.clone());
                            Flow::Continue
                        }
                        None => Flow::Done,
                    }
                } else {
                    self.children()
                }
            }
        };
        self.word.pop();
        flow
    }

    fn children(&mut self) -> Flow {
        for c in self.alphabet.letters() {
            let flow = self.extend_with(c);
            if !matches!(flow, Flow::Continue) {
                return flow;
            }
        }
        Flow::Continue
    }

    /// `None` when the budget ran out.
    fn has_new_occurrence(&mut self) -> Option<bool> {
        let (outcome, stats) = self.search.find_ending_at_end(&self.word, self.budget);
        self.stats.search.merge(&stats);
        match outcome {
            SearchOutcome::Found(_) => Some(true),
            SearchOutcome::BudgetExhausted => None,
            SearchOutcome::NotFound => Some(false),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_squares() {
        let f: Formula = "xx".parse().unwrap();
        let r = longest_avoiding(&f, Alphabet::new(2).unwrap(), 10).unwrap();
        assert_eq!(
            r,
            LongestAvoiding::Finite {
                length: 3,
                witness: "010".parse().unwrap()
            }
        );
    }

    #[test]
    fn ternary_squares_exceed() {
        let f: Formula = "xx".parse().unwrap();
        let r = longest_avoiding(&f, Alphabet::new(3).unwrap(), 10).unwrap();
        match r {
            LongestAvoiding::Exceeds { max_len, witness } => {
                assert_eq!(max_len, 10);
                assert_eq!(witness.len(), 10);
                let sq = crate::freeness::FreenessSpec::new(2, 1, 1).unwrap();
                assert!(crate::freeness::max_exponent_violation(witness.letters(), &sq).is_none());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn single_variable_formula_is_unavoidable_at_once() {
        let f: Formula = "x".parse().unwrap();
        let r = longest_avoiding(&f, Alphabet::new(2).unwrap(), 5).unwrap();
        assert!(matches!(r, LongestAvoiding::Finite { length: 0, .. }));
    }
}
