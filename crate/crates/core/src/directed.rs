//! `d`-directedness: no factor of length `d` appears together with its
//! mirror image. A palindromic factor of length `d` is a violation on its own.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectednessViolation {
    /// The offending length-`d` factor.
    pub factor: Vec<u8>,
    /// Where `factor` occurs.
    pub position: usize,
    /// Where its reverse occurs.
    pub reverse_position: usize,
}

/// Returns the violation with the smallest factor position (reverse located
/// at its first occurrence), or `None` if `w` is `d`-directed.
pub fn is_d_directed(w: &[u8], d: usize) -> Option<DirectednessViolation> {
    assert!(d >= 1, "directedness needs d >= 1");
    if w.len() < d {
        return None;
    }
    let mut first: HashMap<&[u8], usize> = HashMap::new();
    for (i, f) in w.windows(d).enumerate() {
        first.entry(f).or_insert(i);
    }
    let mut rev = vec![0u8; d];
    for (i, f) in w.windows(d).enumerate() {
        rev.copy_from_slice(f);
        rev.reverse();
        if let Some(&j) = first.get(rev.as_slice()) {
            return Some(DirectednessViolation {
                factor: f.to_vec(),
                position: i,
                reverse_position: j,
            });
        }
    }
    None
}

pub fn directed(w: &[u8], d: usize) -> bool {
    is_d_directed(w, d).is_none()
}

/// Smallest `d` such that every word in `words` is `d`-directed, searching
/// up to `max_d`.
pub fn directedness<'a, I>(words: I, max_d: usize) -> Option<usize>
where
    I: IntoIterator<Item = &'a [u8]> + Clone,
{
    (1..=max_d).find(|&d| words.clone().into_iter().all(|w| directed(w, d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::decode;

    #[test]
    fn examples() {
        assert_eq!(is_d_directed(&decode("012012").unwrap(), 2), None);
        let v = is_d_directed(&decode("0121").unwrap(), 2).unwrap();
        assert_eq!(v.factor, vec![1, 2]);
        assert_eq!((v.position, v.reverse_position), (1, 2));
        let v = is_d_directed(&decode("00").unwrap(), 1).unwrap();
        assert_eq!(v.factor, vec![0]);
    }

    #[test]
    fn palindromes_violate() {
        assert!(is_d_directed(&decode("0120").unwrap(), 3).is_none());
        assert!(is_d_directed(&decode("01210").unwrap(), 3).is_some());
    }

    #[test]
    fn directedness_of_a_set() {
        let a = decode("012012").unwrap();
        let b = decode("0120").unwrap();
        assert_eq!(directedness([a.as_slice(), b.as_slice()], 5), Some(2));
    }
}
