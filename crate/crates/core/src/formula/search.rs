//! Bounded exhaustive search for occurrences of a formula in a finite word.
//!
//! Variables are assigned in order of first appearance; candidate images
//! for a variable are tried by length, then lexicographically, so the first
//! assignment found is the least one in that order. Undirected occurrences
//! are resolved forward-first, independently per fragment.
//!
//! Candidates are distinct factors of the host word (or of its mirror
//! image). Internally the word `w` is embedded in `T = w # wᴿ`; every
//! candidate image, forward or reversed, is a factor of `T`, and
//! a factor is identified by its length and first position in `T`. A
//! variable whose neighbour in some fragment is already assigned takes its
//! candidates from the letters next to the occurrences of that assigned run.

use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::{Assignment, Decoration, Formula, Orientation, VarBounds};
use crate::error::Result;
use crate::factor_index::FactorIndex;
use crate::word::{Alphabet, Word};

pub const NO_BUDGET: u64 = u64::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Assignment),
    NotFound,
    BudgetExhausted,
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&Assignment> {
        match self {
            SearchOutcome::Found(a) => Some(a),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Candidate images tried.
    pub nodes: u64,
    /// Candidates rejected because some assigned run is not a factor.
    pub pruned: u64,
}

impl SearchStats {
    pub fn merge(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.pruned += other.pruned;
    }
}

/// Node budget shared by every search that holds a reference to it.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
        }
    }

    pub fn unlimited() -> Self {
        Budget::new(NO_BUDGET)
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn exhausted(&self) -> bool {
        self.used() > self.limit
    }

    /// Records `n` nodes; false once the limit is passed.
    fn charge(&self, n: u64) -> bool {
        let before = self.used.fetch_add(n, Ordering::Relaxed);
        before.saturating_add(n) <= self.limit
    }
}

const CHARGE_EVERY: u64 = 1024;

#[derive(Debug, Clone, Copy)]
struct Occ {
    var: usize,
    dec: Decoration,
}

/// A formula compiled against its bounds, reusable across host words.
#[derive(Debug, Clone)]
pub struct OccurrenceSearch {
    vars: Vec<String>,
    frags: Vec<Vec<Occ>>,
    caps: Vec<usize>,
    var_occs: Vec<Vec<(usize, usize)>>,
    /// Distinct fragments containing each variable.
    var_frags: Vec<Vec<usize>>,
    /// Whether each variable is read forward, backward, anywhere.
    orientations: Vec<[bool; 2]>,
    /// Assignment order per suffix-anchored fragment: that fragment's
    /// variables from right to left, then the rest.
    suffix_orders: Vec<Vec<usize>>,
}

impl OccurrenceSearch {
    pub fn new(formula: &Formula, bounds: &VarBounds) -> Result<Self> {
        bounds.validate(formula)?;
        let vars = formula.variables().to_vec();
        let index_of = |name: &str| vars.iter().position(|v| v == name).expect("known variable");
        let frags: Vec<Vec<Occ>> = formula
            .fragments()
            .iter()
            .map(|f| {
                f.occurrences()
                    .iter()
                    .map(|o| Occ {
                        var: index_of(&o.variable),
                        dec: o.decoration,
                    })
                    .collect()
            })
            .collect();
        let caps = vars
            .iter()
            .map(|v| bounds.get(v).expect("validated"))
            .collect();
        let mut var_occs = vec![Vec::new(); vars.len()];
        for (i, f) in frags.iter().enumerate() {
            for (j, o) in f.iter().enumerate() {
                var_occs[o.var].push((i, j));
            }
        }
        let var_frags = var_occs
            .iter()
            .map(|occs| {
                let mut fs: Vec<usize> = occs.iter().map(|&(f, _)| f).collect();
                fs.dedup();
                fs
            })
            .collect();
        let orientations = var_occs
            .iter()
            .map(|occs| {
                let mut o = [false; 2];
                for &(f, j) in occs {
                    match frags[f][j].dec {
                        Decoration::Plain => o[0] = true,
                        Decoration::Reversed => o[1] = true,
                        Decoration::Undirected => o = [true, true],
                    }
                }
                o
            })
            .collect();
        let suffix_orders = frags
            .iter()
            .map(|f| {
                let mut order: Vec<usize> = Vec::new();
                for o in f.iter().rev().chain(frags.iter().flatten()) {
                    if !order.contains(&o.var) {
                        order.push(o.var);
                    }
                }
                order
            })
            .collect();
        Ok(OccurrenceSearch {
            vars,
            frags,
            caps,
            var_occs,
            var_frags,
            orientations,
            suffix_orders,
        })
    }

    pub fn fragment_count(&self) -> usize {
        self.frags.len()
    }

    /// Longest possible fragment image under the caps.
    pub fn max_fragment_len(&self) -> usize {
        self.frags
            .iter()
            .map(|f| f.iter().map(|o| self.caps[o.var]).sum::<usize>())
            .max()
            .unwrap_or(0)
    }

    pub fn find(&self, w: &[u8]) -> (SearchOutcome, SearchStats) {
        self.find_with(w, None, &Budget::unlimited())
    }

    /// `suffix_fragment`: when set, that fragment's image must end at the
    /// last letter of `w`. Variables are then assigned starting from that
    /// fragment's end, so the witness is not the canonical first one.
    pub fn find_with(
        &self,
        w: &[u8],
        suffix_fragment: Option<usize>,
        budget: &Budget,
    ) -> (SearchOutcome, SearchStats) {
        match self.text_for(w) {
            Some(text) => self.run(&text, w, suffix_fragment, budget),
            None => (SearchOutcome::NotFound, SearchStats::default()),
        }
    }

    /// An occurrence in which some fragment's image ends at the last letter
    /// of `w`, trying fragments in order. These are exactly the occurrences
    /// that `w` has and its longest proper prefix lacks.
    pub fn find_ending_at_end(&self, w: &[u8], budget: &Budget) -> (SearchOutcome, SearchStats) {
        let mut stats = SearchStats::default();
        let Some(text) = self.text_for(w) else {
            return (SearchOutcome::NotFound, stats);
        };
        for frag in 0..self.frags.len() {
            let (outcome, s) = self.run(&text, w, Some(frag), budget);
            stats.merge(&s);
            if outcome != SearchOutcome::NotFound {
                return (outcome, stats);
            }
        }
        (SearchOutcome::NotFound, stats)
    }

    fn text_for(&self, w: &[u8]) -> Option<Text> {
        let max_cap = self.caps.iter().copied().max().unwrap_or(0);
        let lmax = max_cap.min(w.len());
        (lmax > 0).then(|| Text::new(w, lmax))
    }

    fn run(
        &self,
        text: &Text,
        w: &[u8],
        suffix_fragment: Option<usize>,
        budget: &Budget,
    ) -> (SearchOutcome, SearchStats) {
        let order = match suffix_fragment {
            Some(f) => self.suffix_orders[f].clone(),
            None => (0..self.vars.len()).collect(),
        };
        let mut run = Run {
            search: self,
            order,
            text,
            suffix_fragment,
            assigned: vec![None; self.vars.len()],
            stats: SearchStats::default(),
            pending: 0,
            budget,
            base: std::cell::OnceCell::new(),
        };
        let outcome = match run.dfs(0) {
            Step::Found => SearchOutcome::Found(run.build_assignment(w)),
            Step::Exhausted => SearchOutcome::BudgetExhausted,
            Step::Continue => SearchOutcome::NotFound,
        };
        budget.charge(run.pending);
        (outcome, run.stats)
    }

    /// Candidate images for each variable before any anchoring: factors of
    /// `w` for plain occurrences, mirror images of factors for reversed ones,
    /// either for undirected ones, intersected over all occurrences.
    fn base_sets(&self, text: &Text) -> Vec<Vec<Img>> {
        let n = text.n;
        let m = text.t.len();
        let collect = |range: std::ops::Range<usize>| -> Vec<u64> {
            let mut keys: Vec<u64> = range
                .flat_map(|i| {
                    let top = text.lmax.min(if i < n { n - i } else { m - i });
                    (1..=top).map(move |l| text.key(i, l))
                })
                .collect();
            keys.sort_unstable();
            keys.dedup();
            keys
        };
        let forward = collect(0..n);
        let backward = collect(n + 1..m);
        let either: Vec<u64> = {
            let mut v = forward.clone();
            v.extend_from_slice(&backward);
            v.sort_unstable();
            v.dedup();
            v
        };
        (0..self.vars.len())
            .map(|v| {
                let mut has = [false; 3];
                for &(f, j) in &self.var_occs[v] {
                    has[self.frags[f][j].dec as usize] = true;
                }
                let mut set: Option<Vec<u64>> = None;
                for (flag, class) in has.iter().zip([&forward, &backward, &either]) {
                    if *flag {
                        set = Some(match set {
                            None => class.clone(),
                            Some(s) => intersect_sorted(&s, class),
                        });
                    }
                }
                let mut imgs: Vec<Img> = set
                    .unwrap_or_default()
                    .into_iter()
                    .map(Img::from_key)
                    .collect();
                imgs.sort_by(|a, b| text.cmp_imgs(a, b));
                imgs
            })
            .collect()
    }
}

fn intersect_sorted(a: &[u64], b: &[u64]) -> Vec<u64> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

const SEPARATOR: u8 = u8::MAX;

/// `T = w # wᴿ` with canonical factor ids and an index over `w`.
struct Text {
    n: usize,
    t: Vec<u8>,
    lmax: usize,
    /// first[i * lmax + l - 1]: first position in T of T[i..i+l]
    first: Vec<u32>,
    /// state[i * lmax + l - 1]: automaton state of T[i..i+l] when it is a
    /// factor of w, else NO_STATE
    state: Vec<u32>,
    index: FactorIndex,
}

const NO_STATE: u32 = u32::MAX;

impl Text {
    fn new(w: &[u8], lmax: usize) -> Self {
        let n = w.len();
        let mut t = Vec::with_capacity(2 * n + 1);
        t.extend_from_slice(w);
        t.push(SEPARATOR);
        t.extend(w.iter().rev());
        let m = t.len();
        let mut first = vec![0u32; m * lmax];
        // lcp rows, i descending: cur[j] = lcp(T[i..], T[j..])
        let mut prev = vec![0u32; m + 1];
        let mut cur = vec![0u32; m + 1];
        for i in (0..m).rev() {
            for j in 0..m {
                cur[j] = if t[i] == t[j] && t[i] != SEPARATOR {
                    prev[j + 1] + 1
                } else {
                    0
                };
            }
            let row = &mut first[i * lmax..(i + 1) * lmax];
            let mut done = 0usize;
            for (j, &c) in cur.iter().enumerate().take(i) {
                let reach = (c as usize).min(lmax);
                while done < reach {
                    row[done] = j as u32;
                    done += 1;
                }
                if done == lmax {
                    break;
                }
            }
            for slot in row.iter_mut().skip(done) {
                *slot = i as u32;
            }
            std::mem::swap(&mut prev, &mut cur);
        }
        let index = FactorIndex::new(w);
        let mut state = vec![NO_STATE; m * lmax];
        for i in 0..m {
            let mut s = FactorIndex::ROOT;
            for (l, &c) in t[i..].iter().take(lmax).enumerate() {
                match index.step(s, c) {
                    Some(next) => s = next,
                    None => break,
                }
                state[i * lmax + l] = s as u32;
            }
        }
        Text {
            n,
            index,
            t,
            lmax,
            first,
            state,
        }
    }

    #[inline]
    fn m(&self) -> usize {
        self.t.len()
    }

    #[inline]
    fn key(&self, i: usize, l: usize) -> u64 {
        ((l as u64) << 32) | self.first[i * self.lmax + l - 1] as u64
    }

    #[inline]
    fn slice(&self, img: &Img) -> &[u8] {
        &self.t[img.start..img.start + img.len]
    }

    fn cmp_imgs(&self, a: &Img, b: &Img) -> std::cmp::Ordering {
        a.len
            .cmp(&b.len)
            .then_with(|| self.slice(a).cmp(self.slice(b)))
    }

    /// End positions (of the last letter) of `img` in `w`, increasing.
    #[inline]
    fn ends(&self, img: &Img) -> &[u32] {
        match self.state[img.start * self.lmax + img.len - 1] {
            NO_STATE => &[],
            st => self.index.end_positions(st as usize),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Img {
    start: usize,
    len: usize,
}

impl Img {
    fn from_key(key: u64) -> Img {
        Img {
            start: (key & 0xffff_ffff) as usize,
            len: (key >> 32) as usize,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Assigned<'a> {
    img: Img,
    /// End positions in w of the image and of its reverse.
    fwd: &'a [u32],
    rev: &'a [u32],
}

enum Step {
    Continue,
    Found,
    Exhausted,
}

struct Run<'a> {
    search: &'a OccurrenceSearch,
    order: Vec<usize>,
    text: &'a Text,
    suffix_fragment: Option<usize>,
    assigned: Vec<Option<Assigned<'a>>>,
    stats: SearchStats,
    pending: u64,
    budget: &'a Budget,
    /// Built on first use: anchored searches rarely need it.
    base: std::cell::OnceCell<Vec<Vec<Img>>>,
}

impl<'a> Run<'a> {
    fn dfs(&mut self, depth: usize) -> Step {
        if depth == self.order.len() {
            return Step::Found;
        }
        let v = self.order[depth];
        let Some(candidates) = self.candidates(v) else {
            return Step::Continue;
        };
        let m = self.text.m();
        for img in candidates {
            self.stats.nodes += 1;
            self.pending += 1;
            if self.pending >= CHARGE_EVERY {
                let n = std::mem::take(&mut self.pending);
                if !self.budget.charge(n) {
                    return Step::Exhausted;
                }
            }
            let [need_fwd, need_rev] = self.search.orientations[v];
            let text: &'a Text = self.text;
            let fwd = if need_fwd { text.ends(&img) } else { &[] };
            let rev = if need_rev {
                let rev_img = Img {
                    start: m - img.start - img.len,
                    len: img.len,
                };
                text.ends(&rev_img)
            } else {
                &[]
            };
            self.assigned[v] = Some(Assigned { img, fwd, rev });
            if self.runs_hold(v) {
                match self.dfs(depth + 1) {
                    Step::Continue => {}
                    other => return other,
                }
            } else {
                self.stats.pruned += 1;
            }
            self.assigned[v] = None;
        }
        Step::Continue
    }

    /// Largest admissible image length for `v`, given the lengths already
    /// fixed in each fragment where it appears.
    fn effective_cap(&self, v: usize) -> usize {
        let n = self.text.n;
        let mut cap = self.search.caps[v].min(self.text.lmax);
        for &frag in &self.search.var_frags[v] {
            let mut used = 0usize;
            let mut count = 0usize;
            for o in &self.search.frags[frag] {
                if o.var == v {
                    count += 1;
                } else {
                    used += self.assigned[o.var].as_ref().map_or(1, |a| a.img.len);
                }
            }
            cap = cap.min(n.saturating_sub(used) / count);
        }
        cap
    }

    fn candidates(&self, v: usize) -> Option<Vec<Img>> {
        let cap = self.effective_cap(v);
        if cap == 0 {
            return None;
        }
        let n = self.text.n;
        let m = self.text.m();

        // pick the anchor with the fewest positions
        let mut best: Option<(usize, Anchor)> = None;
        for &(f, j) in &self.search.var_occs[v] {
            let frag = &self.search.frags[f];
            let dec = frag[j].dec;
            let consider = |anchor: Anchor, best: &mut Option<(usize, Anchor)>| {
                let weight = anchor.positions.len() * if dec == Decoration::Undirected { 2 } else { 1 };
                if best.as_ref().is_none_or(|(w, _)| weight < *w) {
                    *best = Some((weight, anchor));
                }
            };
            let mut a = j;
            while a > 0 && self.assigned[frag[a - 1].var].is_some() {
                a -= 1;
            }
            if a < j {
                let starts = self.run_matches(f, a, j);
                let len = self.run_len(f, a, j);
                let ends = starts.into_iter().map(|p| p + len).collect();
                consider(
                    Anchor {
                        positions: ends,
                        after: true,
                        dec,
                    },
                    &mut best,
                );
            }
            let mut b = j + 1;
            while b < frag.len() && self.assigned[frag[b].var].is_some() {
                b += 1;
            }
            if b > j + 1 {
                let starts = self.run_matches(f, j + 1, b);
                consider(
                    Anchor {
                        positions: starts,
                        after: false,
                        dec,
                    },
                    &mut best,
                );
            } else if self.suffix_fragment == Some(f) && j + 1 == frag.len() {
                consider(
                    Anchor {
                        positions: vec![n],
                        after: false,
                        dec,
                    },
                    &mut best,
                );
            }
        }

        let Some((_, anchor)) = best else {
            let base = &self.base.get_or_init(|| self.search.base_sets(self.text))[v];
            let end = base.partition_point(|img| img.len <= cap);
            return Some(base[..end].to_vec());
        };

        let mut keys: Vec<u64> = Vec::new();
        let (fwd, bwd) = match anchor.dec {
            Decoration::Plain => (true, false),
            Decoration::Reversed => (false, true),
            Decoration::Undirected => (true, true),
        };
        for &p in &anchor.positions {
            if anchor.after {
                // w[p..p+l]
                let top = cap.min(n - p);
                for l in 1..=top {
                    if fwd {
                        keys.push(self.text.key(p, l));
                    }
                    if bwd {
                        keys.push(self.text.key(m - p - l, l));
                    }
                }
            } else {
                // w[p-l..p]
                let top = cap.min(p);
                for l in 1..=top {
                    if fwd {
                        keys.push(self.text.key(p - l, l));
                    }
                    if bwd {
                        keys.push(self.text.key(m - p, l));
                    }
                }
            }
        }
        keys.sort_unstable();
        keys.dedup();
        let mut imgs: Vec<Img> = keys.into_iter().map(Img::from_key).collect();
        // Keys already run by length; only canonical searches need the
        // lexicographic order within a length.
        if self.suffix_fragment.is_none() {
            imgs.sort_by(|a, b| self.text.cmp_imgs(a, b));
        }
        Some(imgs)
    }

    fn run_len(&self, f: usize, a: usize, b: usize) -> usize {
        self.search.frags[f][a..b]
            .iter()
            .map(|o| self.assigned[o.var].as_ref().expect("assigned").img.len)
            .sum()
    }

    /// Start positions in `w` where the assigned run `frag[a..b]` matches,
    /// each undirected piece in either orientation.
    fn run_matches(&self, f: usize, a: usize, b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        self.each_match(f, a, b, |start| {
            out.push(start);
            true
        });
        out.sort_unstable();
        out.dedup();
        out
    }

    fn run_matches_somewhere(&self, f: usize, a: usize, b: usize) -> bool {
        let mut found = false;
        self.each_match(f, a, b, |_| {
            found = true;
            false
        });
        found
    }

    /// Calls `visit` on each match start, possibly with repeats, until it
    /// returns false.
    fn each_match(&self, f: usize, a: usize, b: usize, mut visit: impl FnMut(usize) -> bool) {
        struct Piece<'p> {
            /// End positions of each admissible orientation (the second
            /// one empty unless undirected).
            lists: [&'p [u32]; 2],
            len: usize,
            offset: usize,
        }
        let frag = &self.search.frags[f];
        let mut pieces: SmallVec<[Piece; 8]> = SmallVec::new();
        let mut total = 0usize;
        for o in &frag[a..b] {
            let asg = self.assigned[o.var].expect("assigned");
            let lists = match o.dec {
                Decoration::Plain => [asg.fwd, &[][..]],
                Decoration::Reversed => [asg.rev, &[][..]],
                Decoration::Undirected => [asg.fwd, asg.rev],
            };
            pieces.push(Piece {
                lists,
                len: asg.img.len,
                offset: total,
            });
            total += asg.img.len;
        }
        let matches_at = |start: usize, skip: usize| {
            pieces.iter().enumerate().all(|(i, p)| {
                i == skip || {
                    let at = (start + p.offset + p.len - 1) as u32;
                    p.lists.iter().any(|l| l.binary_search(&at).is_ok())
                }
            })
        };
        if self.suffix_fragment == Some(f) && b == frag.len() {
            // a single candidate start
            let end = self.text.n;
            if end >= total && matches_at(end - total, usize::MAX) {
                visit(end - total);
            }
            return;
        }
        let pivot = (0..pieces.len())
            .min_by_key(|&i| pieces[i].lists[0].len() + pieces[i].lists[1].len())
            .expect("nonempty run");
        let p = &pieces[pivot];
        for list in p.lists {
            for &e in list {
                let q = e as usize + 1 - p.len;
                if q < p.offset {
                    continue;
                }
                let start = q - p.offset;
                if matches_at(start, pivot) && !visit(start) {
                    return;
                }
            }
        }
    }

    /// Every maximal assigned run through an occurrence of `v` must match.
    fn runs_hold(&self, v: usize) -> bool {
        let mut checked: SmallVec<[(usize, usize); 8]> = SmallVec::new();
        for &(f, j) in &self.search.var_occs[v] {
            let frag = &self.search.frags[f];
            let mut a = j;
            while a > 0 && self.assigned[frag[a - 1].var].is_some() {
                a -= 1;
            }
            if checked.contains(&(f, a)) {
                continue;
            }
            checked.push((f, a));
            let mut b = j + 1;
            while b < frag.len() && self.assigned[frag[b].var].is_some() {
                b += 1;
            }
            if !self.run_matches_somewhere(f, a, b) {
                return false;
            }
        }
        true
    }

    fn build_assignment(&self, w: &[u8]) -> Assignment {
        let alphabet = Alphabet::new(
            w.iter().map(|&l| l as usize + 1).max().unwrap_or(1),
        )
        .expect("letters below 36");
        let mut a = Assignment::new();
        for (v, name) in self.search.vars.iter().enumerate() {
            let img = &self.assigned[v].as_ref().expect("complete").img;
            let word = Word::new(self.text.slice(img).to_vec(), alphabet).expect("letters of w");
            a.images.insert(name.clone(), word);
        }
        let n = self.text.n;
        for (f, frag) in self.search.frags.iter().enumerate() {
            let upos: Vec<usize> = (0..frag.len())
                .filter(|&j| frag[j].dec == Decoration::Undirected)
                .collect();
            let anchored_end = self.suffix_fragment == Some(f);
            // forward-first: combination bits read most significant first
            let chosen = (0u64..1 << upos.len()).find(|&mask| {
                let mut buf = Vec::new();
                for (j, o) in frag.iter().enumerate() {
                    let img = self.text.slice(&self.assigned[o.var].as_ref().unwrap().img);
                    let backward = match o.dec {
                        Decoration::Plain => false,
                        Decoration::Reversed => true,
                        Decoration::Undirected => {
                            let k = upos.iter().position(|&p| p == j).unwrap();
                            mask >> (upos.len() - 1 - k) & 1 == 1
                        }
                    };
                    if backward {
                        buf.extend(img.iter().rev());
                    } else {
                        buf.extend_from_slice(img);
                    }
                }
                if anchored_end {
                    buf.len() <= n && w[n - buf.len()..] == buf[..]
                } else {
                    self.text.index.contains(&buf)
                }
            });
            let mask = chosen.expect("every fragment run matched");
            for (k, &j) in upos.iter().enumerate() {
                let o = if mask >> (upos.len() - 1 - k) & 1 == 1 {
                    Orientation::Backward
                } else {
                    Orientation::Forward
                };
                a.orientations.insert((f, j), o);
            }
        }
        a
    }
}

struct Anchor {
    positions: Vec<usize>,
    /// Candidates start at each position (true) or end there (false).
    after: bool,
    dec: Decoration,
}

/// First occurrence of `f` in `w` within `bounds`, in the canonical order.
pub fn find_occurrence(w: &Word, f: &Formula, bounds: &VarBounds) -> Result<Option<Assignment>> {
    let search = OccurrenceSearch::new(f, bounds)?;
    Ok(match search.find(w.letters()).0 {
        SearchOutcome::Found(a) => Some(a),
        _ => None,
    })
}

pub fn avoids(w: &Word, f: &Formula, bounds: &VarBounds) -> Result<bool> {
    Ok(find_occurrence(w, f, bounds)?.is_none())
}
