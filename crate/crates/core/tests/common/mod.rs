//! Naive reference implementations shared by the integration tests. They
//! only use slices and loops, nothing from the library's search paths.

#![allow(dead_code)]

use std::collections::BTreeMap;

use revform::formula::{Assignment, Decoration, Formula, Orientation};
use revform::word::Word;

pub fn is_factor(w: &[u8], f: &[u8]) -> bool {
    f.is_empty() || w.windows(f.len()).any(|x| x == f)
}

/// Triple loop over (start, length, period); reports the first violation by
/// smallest start, then smallest period, with the longest length.
pub fn naive_violation(w: &[u8], beta: (u64, u64), min_period: usize) -> Option<(usize, usize, usize)> {
    let n = w.len();
    for start in 0..n {
        for period in min_period.max(1)..=n {
            let mut best = None;
            for len in period..=n - start {
                let has_period = (start..start + len - period).all(|i| w[i] == w[i + period]);
                if has_period && (len as u128) * (beta.1 as u128) > (beta.0 as u128) * (period as u128) {
                    best = Some(len);
                }
            }
            if let Some(len) = best {
                return Some((start, len, period));
            }
        }
    }
    None
}

pub fn all_words(alphabet: u8, len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..alphabet).map(move |c| {
                    let mut x = w.clone();
                    x.push(c);
                    x
                })
            })
            .collect();
    }
    out
}

/// Enumerates assignments over factors and reversed factors of `w` in the
/// canonical order and returns the first occurrence.
pub fn naive_occurrence(w: &[u8], f: &Formula, caps: &BTreeMap<String, usize>) -> Option<Assignment> {
    let mut pool: Vec<Vec<u8>> = Vec::new();
    for i in 0..w.len() {
        for j in i + 1..=w.len() {
            let fw = w[i..j].to_vec();
            let mut bw = fw.clone();
            bw.reverse();
            pool.push(fw);
            pool.push(bw);
        }
    }
    pool.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    pool.dedup();
    let vars = f.variables().to_vec();
    let mut chosen: Vec<Vec<u8>> = Vec::new();
    naive_rec(w, f, &vars, caps, &pool, &mut chosen)
}

fn naive_rec(
    w: &[u8],
    f: &Formula,
    vars: &[String],
    caps: &BTreeMap<String, usize>,
    pool: &[Vec<u8>],
    chosen: &mut Vec<Vec<u8>>,
) -> Option<Assignment> {
    if chosen.len() == vars.len() {
        return check_all(w, f, vars, chosen);
    }
    let cap = caps[&vars[chosen.len()]];
    for img in pool.iter().filter(|p| p.len() <= cap) {
        chosen.push(img.clone());
        if let Some(a) = naive_rec(w, f, vars, caps, pool, chosen) {
            return Some(a);
        }
        chosen.pop();
    }
    None
}

fn check_all(w: &[u8], f: &Formula, vars: &[String], chosen: &[Vec<u8>]) -> Option<Assignment> {
    let image = |name: &str| &chosen[vars.iter().position(|v| v == name).unwrap()];
    let mut orientations = BTreeMap::new();
    for (fi, frag) in f.fragments().iter().enumerate() {
        let occs = frag.occurrences();
        let upos: Vec<usize> = (0..occs.len())
            .filter(|&j| occs[j].decoration == Decoration::Undirected)
            .collect();
        let mut found = None;
        for mask in 0u32..(1 << upos.len()) {
            let back = |j: usize| -> bool {
                match occs[j].decoration {
                    Decoration::Plain => false,
                    Decoration::Reversed => true,
                    Decoration::Undirected => {
                        let k = upos.iter().position(|&p| p == j).unwrap();
                        (mask >> (upos.len() - 1 - k)) & 1 == 1
                    }
                }
            };
            let mut s = Vec::new();
            for (j, o) in occs.iter().enumerate() {
                let mut img = image(&o.variable).clone();
                if back(j) {
                    img.reverse();
                }
                s.extend(img);
            }
            if is_factor(w, &s) {
                found = Some(mask);
                break;
            }
        }
        let mask = found?;
        for (k, &j) in upos.iter().enumerate() {
            let o = if (mask >> (upos.len() - 1 - k)) & 1 == 1 {
                Orientation::Backward
            } else {
                Orientation::Forward
            };
            orientations.insert((fi, j), o);
        }
    }
    let alphabet_size = w.iter().map(|&c| c as usize + 1).max().unwrap_or(1);
    let alphabet = revform::word::Alphabet::new(alphabet_size).unwrap();
    let images = vars
        .iter()
        .zip(chosen)
        .map(|(v, img)| (v.clone(), Word::new(img.clone(), alphabet).unwrap()))
        .collect();
    Some(Assignment {
        images,
        orientations,
    })
}
