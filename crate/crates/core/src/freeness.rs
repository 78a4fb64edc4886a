//! Fractional repetitions and `(β⁺, n)`-freeness.
//!
//! A factor `u` has period `p` when `u[i] = u[i + p]` wherever both sides are
//! defined; its exponent with respect to `p` is `|u| / p`. A word is
//! `(β⁺, n)`-free when no factor has a period `p >= n` with exponent strictly
//! greater than `β`. Exponent comparisons are done on integers, so a
//! repetition of exponent exactly `β` is allowed.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parse `"p/q"` or `"p"` into a reduced pair.
pub fn parse_ratio(text: &str) -> Result<Ratio<u64>> {
    let text = text.trim();
    let bad = || Error::BadRational(text.to_string());
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (
            p.trim().parse::<u64>().map_err(|_| bad())?,
            q.trim().parse::<u64>().map_err(|_| bad())?,
        ),
        None => (text.parse::<u64>().map_err(|_| bad())?, 1),
    };
    if q == 0 {
        return Err(bad());
    }
    Ok(Ratio::new(p, q))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreenessSpec {
    beta_num: u64,
    beta_den: u64,
    min_period: usize,
}

impl FreenessSpec {
    pub fn new(num: u64, den: u64, min_period: usize) -> Result<Self> {
        if den == 0 {
            return Err(Error::BadFreeness("zero denominator".into()));
        }
        if num < den {
            return Err(Error::BadFreeness(format!("beta {num}/{den} is below 1")));
        }
        if min_period == 0 {
            return Err(Error::BadFreeness("minimum period must be positive".into()));
        }
        let g = num.gcd(&den);
        Ok(FreenessSpec {
            beta_num: num / g,
            beta_den: den / g,
            min_period,
        })
    }

    pub fn from_ratio(beta: Ratio<u64>, min_period: usize) -> Result<Self> {
        FreenessSpec::new(*beta.numer(), *beta.denom(), min_period)
    }

    /// `"22/15"` plus a minimum period.
    pub fn parse(beta: &str, min_period: usize) -> Result<Self> {
        FreenessSpec::from_ratio(parse_ratio(beta)?, min_period)
    }

    pub fn beta(&self) -> Ratio<u64> {
        Ratio::new_raw(self.beta_num, self.beta_den)
    }

    pub fn min_period(&self) -> usize {
        self.min_period
    }

    /// `length / period > beta`, evaluated exactly.
    #[inline]
    pub fn exceeds(&self, length: usize, period: usize) -> bool {
        (length as u128) * (self.beta_den as u128) > (self.beta_num as u128) * (period as u128)
    }
}

impl fmt::Display for FreenessSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}/{}+, {})", self.beta_num, self.beta_den, self.min_period)
    }
}

impl FromStr for FreenessSpec {
    type Err = Error;

    /// Accepts `"p/q"` (minimum period 1) or `"p/q,n"`.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(',') {
            Some((beta, n)) => {
                let n = n
                    .trim()
                    .parse()
                    .map_err(|_| Error::BadFreeness(s.to_string()))?;
                FreenessSpec::parse(beta, n)
            }
            None => FreenessSpec::parse(s, 1),
        }
    }
}

/// A factor `[start, start + length)` with period `period`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepetitionWitness {
    pub start: usize,
    pub length: usize,
    pub period: usize,
}

impl RepetitionWitness {
    pub fn exponent(&self) -> Ratio<u64> {
        Ratio::new(self.length as u64, self.period as u64)
    }

    /// Checks the witness against `w` directly.
    pub fn holds_in(&self, w: &[u8]) -> bool {
        self.period >= 1
            && self.length >= self.period
            && self.start + self.length <= w.len()
            && (self.start..self.start + self.length - self.period)
                .all(|i| w[i] == w[i + self.period])
    }
}

/// Finds a repetition violating `spec`: the one with the smallest start, then
/// the smallest period, extended to its maximal length for that start and
/// period. `None` means `w` is free.
pub fn max_exponent_violation(w: &[u8], spec: &FreenessSpec) -> Option<RepetitionWitness> {
    let n = w.len();
    let mut best: Option<RepetitionWitness> = None;
    // run[i]: number of consecutive j >= i with w[j] == w[j + p]
    let mut run = vec![0usize; n + 1];
    for p in spec.min_period..n {
        let limit = best.map_or(n - p, |b| b.start.min(n - p));
        // the smallest admissible violation needs more than p * beta letters
        run[n - p] = 0;
        for i in (0..n - p).rev() {
            run[i] = if w[i] == w[i + p] { run[i + 1] + 1 } else { 0 };
        }
        if let Some(i) = (0..limit).find(|&i| spec.exceeds(p + run[i], p)) {
            best = Some(RepetitionWitness {
                start: i,
                length: p + run[i],
                period: p,
            });
            if i == 0 {
                // no later period can beat start 0
                break;
            }
        }
    }
    best
}

pub fn is_free(w: &[u8], spec: &FreenessSpec) -> bool {
    max_exponent_violation(w, spec).is_none()
}

/// Looks only at repetitions ending at the last letter of `w`. Used by the
/// incremental generator: if every proper prefix of `w` is free, `w` is free
/// iff this returns `None`.
pub fn suffix_violation(w: &[u8], spec: &FreenessSpec) -> Option<RepetitionWitness> {
    let n = w.len();
    let last = n.checked_sub(1)?;
    for p in spec.min_period..n {
        let mut len = p;
        let mut j = last;
        while j >= p && w[j] == w[j - p] {
            len += 1;
            j -= 1;
        }
        if spec.exceeds(len, p) {
            return Some(RepetitionWitness {
                start: n - len,
                length: len,
                period: p,
            });
        }
    }
    None
}
