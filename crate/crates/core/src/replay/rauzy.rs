//! Rauzy graphs of finite words and the circuit argument for `φ_k`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{phi, Assignment};
use crate::word::Word;

/// Letters of a word, with an arc `u → v` for every factor `uv`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RauzyGraph {
    pub vertices: BTreeSet<u8>,
    pub arcs: BTreeSet<(u8, u8)>,
}

impl RauzyGraph {
    pub fn has_arc(&self, u: u8, v: u8) -> bool {
        self.arcs.contains(&(u, v))
    }

    pub fn successors(&self, u: u8) -> impl Iterator<Item = u8> + '_ {
        self.arcs.range((u, 0)..=(u, u8::MAX)).map(|&(_, v)| v)
    }

    /// Arc count of a shortest path from `u` to every reachable vertex.
    fn distances_from(&self, u: u8) -> BTreeMap<u8, usize> {
        let mut dist = BTreeMap::from([(u, 0)]);
        let mut queue = VecDeque::from([u]);
        while let Some(a) = queue.pop_front() {
            let da = dist[&a];
            for b in self.successors(a) {
                dist.entry(b).or_insert_with(|| {
                    queue.push_back(b);
                    da + 1
                });
            }
        }
        dist
    }
}

pub fn rauzy_graph(w: &Word) -> Result<RauzyGraph> {
    let letters = w.letters();
    if letters.len() < 2 {
        return Err(Error::Parameter(format!(
            "Rauzy graph needs a word of length at least 2, got {}",
            letters.len()
        )));
    }
    Ok(RauzyGraph {
        vertices: letters.iter().copied().collect(),
        arcs: letters.windows(2).map(|p| (p[0], p[1])).collect(),
    })
}

/// Vertices `c_0 … c_{i-1}` with an arc from each to the next, cyclically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circuit {
    pub vertices: Vec<u8>,
}

impl Circuit {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// A circuit of minimum length, lexicographically least among those, or
/// `None` when the graph is acyclic.
pub fn shortest_circuit(g: &RauzyGraph) -> Option<Circuit> {
    let dist: BTreeMap<u8, BTreeMap<u8, usize>> =
        g.vertices.iter().map(|&u| (u, g.distances_from(u))).collect();
    // A shortest circuit through u closes with some arc v → u.
    let girth = g
        .arcs
        .iter()
        .filter_map(|&(v, u)| dist[&u].get(&v).map(|d| d + 1))
        .min()?;
    for &start in &g.vertices {
        let mut path = vec![start];
        if extend_circuit(g, &dist, girth, &mut path) {
            return Some(Circuit { vertices: path });
        }
    }
    None
}

/// Greedy lexicographic completion of `path` into a circuit of `length`.
fn extend_circuit(
    g: &RauzyGraph,
    dist: &BTreeMap<u8, BTreeMap<u8, usize>>,
    length: usize,
    path: &mut Vec<u8>,
) -> bool {
    let start = path[0];
    let last = *path.last().expect("nonempty path");
    if path.len() == length {
        return g.has_arc(last, start);
    }
    let remaining = length - path.len();
    for next in g.successors(last) {
        // `remaining` arcs are left once `next` is placed, counting the closing one.
        if dist[&next].get(&start).is_some_and(|&d| d <= remaining) {
            path.push(next);
            if extend_circuit(g, dist, length, path) {
                return true;
            }
            path.pop();
        }
    }
    false
}

/// Least common multiple of `1, …, b`.
pub fn lcm_upto(b: u64) -> Result<u64> {
    if b == 0 {
        return Err(Error::Parameter("lcm_upto needs b >= 1".into()));
    }
    let mut acc: u64 = 1;
    for i in 2..=b {
        let g = num_integer::gcd(acc, i);
        acc = (acc / g)
            .checked_mul(i)
            .ok_or_else(|| Error::Overflow(format!("lcm of 1..={b}")))?;
    }
    Ok(acc)
}

/// Index `k` of the formula `φ_k` targeted for words over `b` letters.
/// `φ_1` is not defined, so `b = 1` uses `φ_2`.
pub fn phi_index(b: usize) -> Result<usize> {
    let k = lcm_upto(b.max(2) as u64)?;
    usize::try_from(k).map_err(|_| Error::Overflow(format!("lcm of 1..={b}")))
}

/// The occurrence `x_j ↦ c_{j mod i}` of `φ_k` read off a shortest circuit
/// of the Rauzy graph, with `k = lcm(1..b)`. Checked against the direct
/// occurrence test before it is returned.
pub fn construct_phi_occurrence(w: &Word, b: usize) -> Result<Option<Assignment>> {
    let g = rauzy_graph(w)?;
    if g.vertices.len() > b {
        return Err(Error::Parameter(format!(
            "word uses {} letters, more than b = {b}",
            g.vertices.len()
        )));
    }
    let Some(circuit) = shortest_circuit(&g) else {
        return Ok(None);
    };
    let k = phi_index(b)?;
    let f = phi(k)?;
    let i = circuit.len();
    let mut a = Assignment::new();
    for j in 0..k {
        let letter = circuit.vertices[j % i];
        a = a.with_image(&format!("x{j}"), Word::new(vec![letter], w.alphabet())?);
    }
    if !f.is_occurrence(w.letters(), &a) {
        return Err(Error::Parameter(format!(
            "circuit {:?} does not yield an occurrence of phi_{k}",
            circuit.vertices
        )));
    }
    Ok(Some(a))
}
