//! Substring membership over a fixed word, backed by a suffix automaton.
//!
//! Besides `contains`, every state carries its end-position set so callers
//! can list the occurrences of a factor without rescanning the word.

#[derive(Debug, Clone)]
struct State {
    len: usize,
    link: Option<usize>,
    next: Vec<(u8, usize)>,
}

impl State {
    #[inline]
    fn get(&self, c: u8) -> Option<usize> {
        self.next.iter().find(|&&(l, _)| l == c).map(|&(_, s)| s)
    }

    fn set(&mut self, c: u8, to: usize) {
        match self.next.iter_mut().find(|(l, _)| *l == c) {
            Some(slot) => slot.1 = to,
            None => self.next.push((c, to)),
        }
    }
}

/// Opaque automaton state handle; `FactorIndex::ROOT` is the empty factor.
pub type StateId = usize;

#[derive(Debug, Clone)]
pub struct FactorIndex {
    text: Vec<u8>,
    states: Vec<State>,
    /// Sorted end positions (index of the last letter) per state.
    end_positions: Vec<Vec<u32>>,
}

impl FactorIndex {
    pub const ROOT: StateId = 0;

    pub fn new(text: &[u8]) -> Self {
        let mut states = vec![State {
            len: 0,
            link: None,
            next: Vec::new(),
        }];
        let mut own_end: Vec<Option<u32>> = vec![None];
        let mut last = 0;
        for (pos, &c) in text.iter().enumerate() {
            let cur = states.len();
            states.push(State {
                len: states[last].len + 1,
                link: None,
                next: Vec::new(),
            });
            own_end.push(Some(pos as u32));
            let mut p = Some(last);
            while let Some(q) = p {
                if states[q].get(c).is_some() {
                    break;
                }
                states[q].set(c, cur);
                p = states[q].link;
            }
            match p {
                None => states[cur].link = Some(0),
                Some(p) => {
                    let q = states[p].get(c).unwrap();
                    if states[p].len + 1 == states[q].len {
                        states[cur].link = Some(q);
                    } else {
                        let clone = states.len();
                        let mut cloned = states[q].clone();
                        cloned.len = states[p].len + 1;
                        states.push(cloned);
                        own_end.push(None);
                        let mut r = Some(p);
                        while let Some(s) = r {
                            if states[s].get(c) != Some(q) {
                                break;
                            }
                            states[s].set(c, clone);
                            r = states[s].link;
                        }
                        states[q].link = Some(clone);
                        states[cur].link = Some(clone);
                    }
                }
            }
            last = cur;
        }

        // endpos(s) = own end position plus endpos of the link-tree children
        let mut order: Vec<usize> = (0..states.len()).collect();
        order.sort_by_key(|&s| std::cmp::Reverse(states[s].len));
        let mut end_positions: Vec<Vec<u32>> = own_end
            .iter()
            .map(|e| e.map(|p| vec![p]).unwrap_or_default())
            .collect();
        for &s in &order {
            if let Some(parent) = states[s].link {
                if parent != 0 {
                    let child = std::mem::take(&mut end_positions[s]);
                    end_positions[parent].extend_from_slice(&child);
                    end_positions[s] = child;
                }
            }
        }
        for e in end_positions.iter_mut() {
            e.sort_unstable();
        }
        end_positions[0] = Vec::new();
        FactorIndex {
            text: text.to_vec(),
            states,
            end_positions,
        }
    }

    pub fn text(&self) -> &[u8] {
        &self.text
    }

    #[inline]
    pub fn step(&self, state: StateId, c: u8) -> Option<StateId> {
        self.states[state].get(c)
    }

    /// Reads `f` from `state`.
    #[inline]
    pub fn walk<I: IntoIterator<Item = u8>>(&self, mut state: StateId, f: I) -> Option<StateId> {
        for c in f {
            state = self.states[state].get(c)?;
        }
        Some(state)
    }

    pub fn state_of(&self, f: &[u8]) -> Option<StateId> {
        self.walk(Self::ROOT, f.iter().copied())
    }

    pub fn contains(&self, f: &[u8]) -> bool {
        self.state_of(f).is_some()
    }

    /// End positions (index of the last letter) of every occurrence of the
    /// factors represented by `state`. Empty for the root.
    pub fn end_positions(&self, state: StateId) -> &[u32] {
        &self.end_positions[state]
    }

    /// Start positions of `f` in increasing order.
    pub fn occurrences(&self, f: &[u8]) -> Vec<usize> {
        if f.is_empty() {
            return (0..=self.text.len()).collect();
        }
        match self.state_of(f) {
            Some(s) => self.end_positions[s]
                .iter()
                .map(|&e| e as usize + 1 - f.len())
                .collect(),
            None => Vec::new(),
        }
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }
}

pub fn build_factor_index(w: &[u8]) -> FactorIndex {
    FactorIndex::new(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{contains_slice, decode};
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let idx = FactorIndex::new(&decode("0110").unwrap());
        assert!(idx.contains(&[1, 1]));
        assert!(!idx.contains(&[0, 0]));
        let idx = FactorIndex::new(&decode("012012").unwrap());
        assert!(idx.contains(&[2, 0]));
        assert!(idx.contains(&[]));
    }

    #[test]
    fn occurrence_lists() {
        let w = decode("0100101001").unwrap();
        let idx = FactorIndex::new(&w);
        assert_eq!(idx.occurrences(&[0, 1]), vec![0, 3, 5, 8]);
        assert_eq!(idx.occurrences(&[0, 1, 0]), vec![0, 3, 5]);
        assert_eq!(idx.occurrences(&[1, 1]), Vec::<usize>::new());
    }

    fn naive_occurrences(w: &[u8], f: &[u8]) -> Vec<usize> {
        (0..=w.len().saturating_sub(f.len()))
            .filter(|&i| i + f.len() <= w.len() && &w[i..i + f.len()] == f)
            .collect()
    }

    proptest! {
        #[test]
        fn agrees_with_naive_search(
            w in proptest::collection::vec(0u8..3, 0..200),
            f in proptest::collection::vec(0u8..3, 1..8),
        ) {
            let idx = FactorIndex::new(&w);
            prop_assert_eq!(idx.contains(&f), contains_slice(&w, &f));
            prop_assert_eq!(idx.occurrences(&f), naive_occurrences(&w, &f));
        }

        #[test]
        fn every_factor_is_found(w in proptest::collection::vec(0u8..2, 1..60)) {
            let idx = FactorIndex::new(&w);
            for i in 0..w.len() {
                for j in i + 1..=w.len() {
                    prop_assert!(idx.contains(&w[i..j]));
                }
            }
        }
    }
}
