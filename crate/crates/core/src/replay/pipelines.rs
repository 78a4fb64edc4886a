use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::rauzy::{phi_index, rauzy_graph, shortest_circuit, construct_phi_occurrence};
use super::{Regime, ReplayReport, ReplayStats, Verdict};
use crate::bounds::{derive_caps, Rational, Template};
use crate::directed::{directedness, is_d_directed};
use crate::error::{Error, Result};
use crate::formula::{
    longest_avoiding_with, nonavoid2_formula, phi, psi, thm2_formula, thm3_formula, Assignment, Budget,
    Formula, LongestAvoiding, OccurrenceSearch, SearchOutcome, SearchStats, VarBounds,
};
use crate::freeness::{max_exponent_violation, FreenessSpec, RepetitionWitness};
use crate::generator::{collect_free, EnumerationSpec};
use crate::morphism::{paper_morphism_21, paper_morphism_9, psi_morphism, UniformMorphism};
use crate::word::{encode, periodic_word, Alphabet, Word};

/// Source family of the transfer claims: `(7/4⁺)`-free words.
pub const DEFAULT_SOURCE_SPEC: &str = "7/4";

/// Which variable caps the non-occurrence pipelines search under.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum CapChoice {
    /// The caps stated with the theorem.
    Paper,
    /// The caps recomputed from the inequality chain.
    Derived,
    /// Pointwise maximum of the two.
    #[default]
    Max,
}

/// Bundles the arguments of [`replay_formula_nonoccurrence`].
#[derive(Debug, Clone)]
pub struct NonOccurrenceJob {
    pub pipeline: String,
    pub morphism: UniformMorphism,
    pub formula: Formula,
    pub caps: VarBounds,
    pub source_spec: FreenessSpec,
    pub source_len: usize,
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

fn repetition_json(w: &[u8], r: &RepetitionWitness) -> Value {
    json!({
        "start": r.start,
        "length": r.length,
        "period": r.period,
        "exponent": r.exponent().to_string(),
        "factor": encode(&w[r.start..r.start + r.length]),
    })
}

fn occurrence_json(f: &Formula, host: &[u8], a: &Assignment) -> Value {
    let fragments: Vec<String> = (0..f.fragments().len())
        .map(|i| f.instantiate(i, a).map(|img| encode(&img)).unwrap_or_default())
        .collect();
    json!({
        "assignment": a.to_json(),
        "fragment_images": fragments,
        "verified": f.is_occurrence(host, a),
    })
}

fn source_words(spec: &FreenessSpec, alphabet: Alphabet, len: usize) -> Result<Vec<Vec<u8>>> {
    Ok(collect_free(&EnumerationSpec::new(alphabet, *spec, len)?))
}

/// Checks a single host word for `φ_k`: it must be 2-directed and contain
/// no occurrence with images of length at most `cap`.
pub fn replay_phi_avoidance(w: &Word, k: usize, cap: usize) -> Result<ReplayReport> {
    let start = Instant::now();
    let f = phi(k)?;
    let bounds = VarBounds::uniform(&f, cap.max(1));
    let search = OccurrenceSearch::new(&f, &bounds)?;
    let (outcome, search_stats) = search.find(w.letters());
    let mut witnesses = Vec::new();
    if let Some(v) = is_d_directed(w.letters(), 2) {
        witnesses.push(json!({ "directedness": v }));
    }
    if let SearchOutcome::Found(a) = &outcome {
        witnesses.push(json!({ "occurrence": occurrence_json(&f, w.letters(), a) }));
    }
    let verdict = if witnesses.is_empty() {
        Verdict::Corroborated
    } else {
        Verdict::Violated
    };
    Ok(ReplayReport {
        pipeline: "phi-avoidance".into(),
        params: json!({ "k": k, "word": w.to_string(), "cap": cap }),
        verdict,
        regime: Regime::Desk,
        witnesses,
        stats: ReplayStats {
            words_checked: 1,
            images_checked: 1,
            distinct_images: 1,
            failures: u64::from(verdict == Verdict::Violated),
            nodes: search_stats.nodes,
            pruned: search_stats.pruned,
            wall_time_ms: elapsed_ms(start),
        },
        notes: Vec::new(),
    })
}

/// `φ_k` is avoided by `(ℓ_0 … ℓ_k)^ω`: checked on a prefix.
///
/// On a 2-directed word every image of a variable has length 1, and every
/// length-2 factor of the periodic word already occurs in a prefix of
/// length `k + 2`. So with such a prefix the check covers the infinite word.
pub fn replay_theorem1_upper(k: usize, prefix_len: usize, cap: usize) -> Result<ReplayReport> {
    let w = periodic_word(k, prefix_len)?;
    let mut report = replay_phi_avoidance(&w, k, cap)?;
    report.pipeline = "thm1-upper".into();
    report.params = json!({ "k": k, "prefix_len": prefix_len, "cap": cap });
    report.regime = if prefix_len >= k + 2 {
        Regime::Paper
    } else {
        Regime::Desk
    };
    if report.regime == Regime::Paper {
        report
            .notes
            .push("2-directedness limits images to single letters, so the prefix covers the periodic word".into());
    }
    Ok(report)
}

/// Every word of length `max_len` over `b` letters contains `φ_k` with
/// `k = lcm(1..b)`.
///
/// Words are grown by backtracking, up to renaming of letters. A word whose
/// Rauzy graph has a circuit is certified by the circuit construction; the
/// others are searched for an occurrence ending at their last letter.
pub fn replay_theorem1_lower(b: usize, max_len: usize, budget: &Budget) -> Result<ReplayReport> {
    let start = Instant::now();
    if b == 0 || b > 36 {
        return Err(Error::Parameter(format!("b must be in 1..=36, got {b}")));
    }
    if max_len == 0 {
        return Err(Error::Parameter("max_len must be at least 1".into()));
    }
    let k = phi_index(b)?;
    let f = phi(k)?;
    let search = OccurrenceSearch::new(&f, &VarBounds::uniform(&f, max_len))?;
    let mut walk = LowerWalk {
        b,
        max_len,
        search: &search,
        budget,
        alphabet: Alphabet::new(b)?,
        word: Vec::with_capacity(max_len),
        longest: Vec::new(),
        certified: 0,
        stats: ReplayStats::default(),
    };
    let flow = walk.visit(0)?;
    let longest = encode(&walk.longest);
    let mut stats = walk.stats;
    stats.distinct_images = stats.images_checked;
    stats.wall_time_ms = elapsed_ms(start);
    let mut notes = vec![format!(
        "{} words certified by a Rauzy-graph circuit",
        walk.certified
    )];
    let mut regime = Regime::Desk;
    let (verdict, witnesses) = match flow {
        LowerFlow::Exhausted => {
            notes.push(format!("node budget of {} exhausted", budget.limit()));
            (Verdict::Inconclusive, vec![json!({ "longest_avoiding_seen": longest })])
        }
        LowerFlow::Avoider => {
            stats.failures = 1;
            (Verdict::Violated, vec![json!({ "avoiding_word": longest })])
        }
        LowerFlow::Continue => {
            // An exhausted tree settles the claim for this b outright.
            regime = Regime::Paper;
            notes.push(format!(
                "every word of length {} over {b} letters contains phi_{k}",
                walk.longest.len() + 1
            ));
            (
                Verdict::Corroborated,
                vec![json!({
                    "longest_avoiding": longest,
                    "longest_length": walk.longest.len(),
                    "unavoidable_from": walk.longest.len() + 1,
                })],
            )
        }
    };
    Ok(ReplayReport {
        pipeline: "thm1-lower".into(),
        params: json!({ "b": b, "k": k, "max_len": max_len, "budget": budget.limit() }),
        verdict,
        regime,
        witnesses,
        stats,
        notes,
    })
}

enum LowerFlow {
    Continue,
    Avoider,
    Exhausted,
}

struct LowerWalk<'a> {
    b: usize,
    max_len: usize,
    search: &'a OccurrenceSearch,
    budget: &'a Budget,
    alphabet: Alphabet,
    word: Vec<u8>,
    longest: Vec<u8>,
    certified: u64,
    stats: ReplayStats,
}

impl LowerWalk<'_> {
    fn visit(&mut self, letter: u8) -> Result<LowerFlow> {
        self.word.push(letter);
        self.stats.words_checked += 1;
        let flow = match self.contains_phi()? {
            None => LowerFlow::Exhausted,
            Some(true) => LowerFlow::Continue,
            Some(false) => {
                if self.word.len() > self.longest.len() {
                    self.longest = self.word.clone();
                }
                if self.word.len() == self.max_len {
                    LowerFlow::Avoider
                } else {
                    // Letters beyond the largest one used so far are interchangeable.
                    let fresh = self.word.iter().copied().max().unwrap_or(0) as usize + 2;
                    let mut flow = LowerFlow::Continue;
                    for c in 0..fresh.min(self.b) {
                        flow = self.visit(c as u8)?;
                        if !matches!(flow, LowerFlow::Continue) {
                            break;
                        }
                    }
                    flow
                }
            }
        };
        self.word.pop();
        Ok(flow)
    }

    /// `Some(true)` if the current word contains `φ_k`, `None` if the budget
    /// ran out. The prefix is known to avoid it.
    fn contains_phi(&mut self) -> Result<Option<bool>> {
        if self.word.len() >= 2 {
            let w = Word::new(self.word.clone(), self.alphabet)?;
            let g = rauzy_graph(&w)?;
            if shortest_circuit(&g).is_some() {
                construct_phi_occurrence(&w, self.b)?;
                self.certified += 1;
                return Ok(Some(true));
            }
        }
        self.stats.images_checked += 1;
        let (outcome, s) = self.search.find_ending_at_end(&self.word, self.budget);
        self.stats.nodes += s.nodes;
        self.stats.pruned += s.pruned;
        match outcome {
            SearchOutcome::Found(_) => return Ok(Some(true)),
            SearchOutcome::BudgetExhausted => return Ok(None),
            SearchOutcome::NotFound => {}
        }
        Ok(Some(false))
    }
}

/// Checks that the image of every `source_spec`-free word of length
/// `source_len` is `target_spec`-free and `d`-directed.
pub fn replay_transfer(
    m: &UniformMorphism,
    source_spec: &FreenessSpec,
    source_len: usize,
    target_spec: &FreenessSpec,
    d: usize,
) -> Result<ReplayReport> {
    let start = Instant::now();
    if d == 0 {
        return Err(Error::Parameter("directedness d must be at least 1".into()));
    }
    let sources = source_words(source_spec, m.source_alphabet(), source_len)?;
    let failures: Vec<Option<Value>> = sources
        .par_iter()
        .map(|src| {
            let img = m.apply_letters(src).expect("source over the morphism's alphabet");
            let rep = max_exponent_violation(&img, target_spec);
            let dir = is_d_directed(&img, d);
            if rep.is_none() && dir.is_none() {
                return None;
            }
            let mut w = json!({ "source": encode(src) });
            if let Some(r) = rep {
                w["repetition"] = repetition_json(&img, &r);
            }
            if let Some(v) = dir {
                w["directedness"] = json!({
                    "factor": encode(&v.factor),
                    "position": v.position,
                    "reverse_position": v.reverse_position,
                });
            }
            Some(w)
        })
        .collect();
    let failed: Vec<Value> = failures.into_iter().flatten().collect();
    let n = sources.len() as u64;
    let stats = ReplayStats {
        words_checked: n,
        images_checked: n,
        distinct_images: n,
        failures: failed.len() as u64,
        nodes: 0,
        pruned: 0,
        wall_time_ms: elapsed_ms(start),
    };
    let verdict = if failed.is_empty() {
        Verdict::Corroborated
    } else {
        Verdict::Violated
    };
    let mut notes = vec![format!(
        "source words of length exactly {source_len} only; longer sources are not covered"
    )];
    if sources.is_empty() {
        notes.push("no source word exists at this length".into());
    }
    Ok(ReplayReport {
        pipeline: "transfer".into(),
        params: json!({
            "width": m.width(),
            "source_spec": source_spec.to_string(),
            "source_len": source_len,
            "target_spec": target_spec.to_string(),
            "d": d,
        }),
        verdict,
        regime: Regime::Desk,
        witnesses: failed.into_iter().take(1).collect(),
        stats,
        notes,
    })
}

/// Searches the images of all `source_spec`-free words of length
/// `source_len` for an occurrence of `f` under `caps`.
///
/// Occurrences are at most one fragment image long, so it is enough to
/// search the images of source factors of length `⌈window / width⌉ + 1`,
/// where `window` is the longest fragment image allowed by the caps. Those
/// factors are deduplicated first. When `source_len` reaches that length
/// the run covers the infinite images (`paper` regime).
pub fn replay_formula_nonoccurrence(job: &NonOccurrenceJob, budget: &Budget) -> Result<ReplayReport> {
    let start = Instant::now();
    let m = &job.morphism;
    let search = OccurrenceSearch::new(&job.formula, &job.caps)?;
    let window = search.max_fragment_len();
    let needed = window.div_ceil(m.width()) + 1;
    let regime = if job.source_len >= needed {
        Regime::Paper
    } else {
        Regime::Desk
    };
    let sources = source_words(&job.source_spec, m.source_alphabet(), job.source_len)?;
    let span = needed.min(job.source_len);
    let factors: BTreeSet<&[u8]> = sources.iter().flat_map(|s| s.windows(span)).collect();
    let factors: Vec<&[u8]> = factors.into_iter().collect();
    let results: Vec<(SearchOutcome, SearchStats)> = factors
        .par_iter()
        .map(|src| {
            if budget.exhausted() {
                return (SearchOutcome::BudgetExhausted, SearchStats::default());
            }
            let img = m.apply_letters(src).expect("source over the morphism's alphabet");
            search.find_with(&img, None, budget)
        })
        .collect();

    let mut stats = ReplayStats {
        words_checked: sources.len() as u64,
        distinct_images: factors.len() as u64,
        ..ReplayStats::default()
    };
    let mut witnesses = Vec::new();
    let mut exhausted = false;
    for (src, (outcome, s)) in factors.iter().zip(&results) {
        stats.nodes += s.nodes;
        stats.pruned += s.pruned;
        match outcome {
            SearchOutcome::Found(a) => {
                stats.images_checked += 1;
                stats.failures += 1;
                if witnesses.is_empty() {
                    let img = m.apply_letters(src)?;
                    let mut w = occurrence_json(&job.formula, &img, a);
                    w["source"] = json!(encode(src));
                    witnesses.push(w);
                }
            }
            SearchOutcome::NotFound => stats.images_checked += 1,
            SearchOutcome::BudgetExhausted => exhausted = true,
        }
    }
    stats.wall_time_ms = elapsed_ms(start);
    let mut notes = vec![format!(
        "longest fragment image under the caps is {window}; full coverage needs source length {needed}"
    )];
    let verdict = if !witnesses.is_empty() {
        Verdict::Violated
    } else if exhausted {
        notes.push(format!("node budget of {} exhausted", budget.limit()));
        Verdict::Inconclusive
    } else {
        Verdict::Corroborated
    };
    let caps: serde_json::Map<String, Value> = job.caps.iter().map(|(v, c)| (v.to_string(), json!(c))).collect();
    Ok(ReplayReport {
        pipeline: job.pipeline.clone(),
        params: json!({
            "formula": job.formula.to_string(),
            "width": m.width(),
            "caps": caps,
            "source_spec": job.source_spec.to_string(),
            "source_len": job.source_len,
        }),
        verdict,
        regime,
        witnesses,
        stats,
        notes,
    })
}

fn template_caps(template: Template, choice: CapChoice) -> Result<(usize, usize)> {
    let (beta, d) = match template {
        Template::Thm2 => ("22/15", 11),
        Template::Thm3 => ("131/90", 4),
    };
    let report = derive_caps(template, &beta.parse::<Rational>()?, d)?;
    let paper = report.paper_caps.as_ref().expect("published parameters");
    let derived = report.long_var_max.expect("finite caps");
    let (long, short) = match choice {
        CapChoice::Paper => (paper.long_var_max, paper.short_var_max),
        CapChoice::Derived => (derived, report.short_var_max),
        CapChoice::Max => report.effective_caps().expect("finite caps"),
    };
    Ok((long as usize, short as usize))
}

/// Non-occurrence of `xyzy^Ux.zy^Uxy^Uz.y^R` in images under the 21-uniform
/// morphism, with `|h(x)|, |h(z)|` long and `|h(y)|` short.
pub fn replay_thm2(
    source_len: usize,
    caps: CapChoice,
    source_spec: &FreenessSpec,
    budget: &Budget,
) -> Result<ReplayReport> {
    let f = thm2_formula();
    let (long, short) = template_caps(Template::Thm2, caps)?;
    let job = NonOccurrenceJob {
        pipeline: "thm2".into(),
        morphism: paper_morphism_21(),
        caps: VarBounds::from_pairs(&f, &[("x", long), ("y", short), ("z", long)])?,
        formula: f,
        source_spec: *source_spec,
        source_len,
    };
    replay_formula_nonoccurrence(&job, budget)
}

/// Non-occurrence of `xyzx.yz^Uxy.z^R` in images under the 9-uniform
/// morphism, with `|h(x)|, |h(y)|` long and `|h(z)|` short.
pub fn replay_thm3(
    source_len: usize,
    caps: CapChoice,
    source_spec: &FreenessSpec,
    budget: &Budget,
) -> Result<ReplayReport> {
    let f = thm3_formula();
    let (long, short) = template_caps(Template::Thm3, caps)?;
    let job = NonOccurrenceJob {
        pipeline: "thm3".into(),
        morphism: paper_morphism_9(),
        caps: VarBounds::from_pairs(&f, &[("x", long), ("y", long), ("z", short)])?,
        formula: f,
        source_spec: *source_spec,
        source_len,
    };
    replay_formula_nonoccurrence(&job, budget)
}

/// Exploratory check of `ψ_k` against images of `(7/4⁺)`-free ternary
/// words. The directedness of the images is measured, and the `y_i` are
/// capped at one less than it; `x` is capped at `x_cap`.
pub fn replay_psi(k: usize, source_len: usize, x_cap: usize, budget: &Budget) -> Result<ReplayReport> {
    let start = Instant::now();
    let m = psi_morphism(k)?;
    let f = psi(k)?;
    let spec: FreenessSpec = DEFAULT_SOURCE_SPEC.parse()?;
    let sources = source_words(&spec, m.source_alphabet(), source_len)?;
    let images: Vec<Vec<u8>> = sources
        .iter()
        .map(|s| m.apply_letters(s))
        .collect::<Result<_>>()?;
    let max_d = images.iter().map(Vec::len).max().unwrap_or(0) + 1;
    let d = directedness(images.iter().map(Vec::as_slice), max_d).unwrap_or(max_d);
    let y_cap = d.saturating_sub(1).max(1);
    let mut caps = VarBounds::uniform(&f, y_cap);
    caps.set("x", x_cap);
    let job = NonOccurrenceJob {
        pipeline: "psi".into(),
        morphism: m,
        formula: f,
        caps,
        source_spec: spec,
        source_len,
    };
    let mut report = replay_formula_nonoccurrence(&job, budget)?;
    report.params["k"] = json!(k);
    report.params["x_cap"] = json!(x_cap);
    report.params["measured_d"] = json!(d);
    report.regime = Regime::Desk;
    report.notes.push(format!(
        "exploratory: images measured {d}-directed, y caps set to {y_cap}; this supports a conjecture, it does not prove it"
    ));
    report.stats.wall_time_ms = elapsed_ms(start);
    Ok(report)
}

/// Longest binary word avoiding `xyzy^Ux.zy^Uxy^Uz`: corroborated when the
/// search tree dies out below `max_len`.
pub fn replay_nonavoid2(max_len: usize, budget: &Budget) -> Result<ReplayReport> {
    let start = Instant::now();
    let f = nonavoid2_formula();
    let (result, s) = longest_avoiding_with(&f, Alphabet::new(2)?, max_len, budget)?;
    let mut notes = Vec::new();
    let (verdict, witness) = match &result {
        LongestAvoiding::Finite { length, witness } => {
            notes.push(format!("every binary word of length {} contains the formula", length + 1));
            (Verdict::Corroborated, json!({ "longest_avoiding": witness, "length": length }))
        }
        LongestAvoiding::Exceeds { max_len, witness } => {
            notes.push(format!("an avoiding word of length {max_len} exists; raise --max-len"));
            (Verdict::Inconclusive, json!({ "avoiding_word": witness, "length": max_len }))
        }
        LongestAvoiding::Inconclusive { longest_seen, witness } => {
            notes.push(format!("node budget of {} exhausted", budget.limit()));
            (Verdict::Inconclusive, json!({ "longest_avoiding_seen": witness, "length": longest_seen }))
        }
    };
    Ok(ReplayReport {
        pipeline: "nonavoid2".into(),
        params: json!({ "formula": f.to_string(), "max_len": max_len, "budget": budget.limit() }),
        verdict,
        // a finite longest length settles the claim outright
        regime: if verdict == Verdict::Corroborated {
            Regime::Paper
        } else {
            Regime::Desk
        },
        witnesses: vec![witness],
        stats: ReplayStats {
            words_checked: s.words,
            images_checked: s.words,
            distinct_images: s.words,
            failures: 0,
            nodes: s.search.nodes,
            pruned: s.search.pruned,
            wall_time_ms: elapsed_ms(start),
        },
        notes,
    })
}
