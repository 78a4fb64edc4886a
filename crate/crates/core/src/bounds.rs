//! Exact derivation of the image-length caps used by the exhaustive checks.
//!
//! For a repetition `h(x u x)` of period `|h(x u)|` in a `(β⁺, n)`-free word,
//! `|h(xux)| <= β |h(xu)|` rearranges to `|h(x)| <= r |h(u)|` with
//! `r = (β - 1) / (2 - β)`. Two such inequalities with the roles of the long
//! variables swapped give `|h(x)| <= c + r |h(x)|` after substitution, whose
//! least fixed point `c / (1 - r)` caps `|h(x)|` when `r < 1`.
//!
//! The short variable is capped by directedness: a `d`-directed word contains
//! no `h(y)` of length `d` or more when both `h(y)` and its mirror image are
//! factors.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational with arbitrary-precision parts, always reduced.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::BadRational(format!("{num}/0")));
        }
        Ok(Rational(BigRational::new(num.into(), den.into())))
    }

    pub fn integer(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn floor(&self) -> BigInt {
        self.0.numer().div_floor(self.0.denom())
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::BadRational(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<BigInt>().map_err(|_| bad())?,
                d.trim().parse::<BigInt>().map_err(|_| bad())?,
            ),
            None => (s.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rational(BigRational::new(n, d)))
    }
}

impl Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// `(β - 1) / (2 - β)` for `1 < β < 2`.
pub fn amplification_ratio(beta: &Rational) -> Result<Rational> {
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    let b = &beta.0;
    if *b <= one || *b >= two {
        return Err(Error::Parameter(format!(
            "amplification ratio needs 1 < beta < 2, got {beta}"
        )));
    }
    Ok(Rational((b - &one) / (&two - b)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum FixedPoint {
    Finite(Rational),
    /// `r >= 1`: the substitution never closes.
    Unbounded,
}

/// Least `B` with `B = c + r B`, i.e. `c / (1 - r)`.
pub fn solve_symmetric_system(c: &Rational, r: &Rational) -> Result<FixedPoint> {
    if c.0.is_negative() || r.0.is_negative() {
        return Err(Error::Parameter(format!(
            "symmetric system needs c >= 0 and r >= 0, got c={c}, r={r}"
        )));
    }
    let one = BigRational::one();
    if r.0 >= one {
        return Ok(FixedPoint::Unbounded);
    }
    Ok(FixedPoint::Finite(Rational(&c.0 / (&one - &r.0))))
}

/// The two fragment shapes the caps are derived for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Template {
    /// `x y z y x` / `z y x y z`: the short variable `y` sits twice between
    /// the long ones.
    Thm2,
    /// `x y z x` / `y z x y`: the short variable `z` sits once.
    Thm3,
}

impl Template {
    fn short_occurrences(self) -> i64 {
        match self {
            Template::Thm2 => 2,
            Template::Thm3 => 1,
        }
    }

    /// Parameters and values stated for this template in the original
    /// argument: `(beta, d, c, long cap, short cap)`.
    fn published(self) -> (&'static str, usize, &'static str, u64, u64) {
        match self {
            Template::Thm2 => ("22/15", 11, "35/2", 140, 10),
            Template::Thm3 => ("131/90", 4, "129/49", 16, 3),
        }
    }
}

impl FromStr for Template {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "thm2" => Ok(Template::Thm2),
            "thm3" => Ok(Template::Thm3),
            other => Err(Error::Parameter(format!("unknown template {other:?}"))),
        }
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Template::Thm2 => "thm2",
            Template::Thm3 => "thm3",
        })
    }
}

/// Caps as published, kept next to the derived ones when they differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublishedCaps {
    pub c: Rational,
    pub fixed_point: Rational,
    pub long_var_max: u64,
    pub short_var_max: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub template: Template,
    pub beta: Rational,
    pub d: usize,
    pub r: Rational,
    pub c: Rational,
    pub fixed_point: FixedPoint,
    /// `floor(c / (1 - r))`, absent when unbounded.
    pub long_var_max: Option<u64>,
    pub short_var_max: u64,
    pub paper_caps: Option<PublishedCaps>,
}

impl BoundReport {
    /// Pointwise maximum of derived and published caps: `(long, short)`.
    pub fn effective_caps(&self) -> Option<(u64, u64)> {
        let long = self.long_var_max?;
        Some(match &self.paper_caps {
            Some(p) => (long.max(p.long_var_max), self.short_var_max.max(p.short_var_max)),
            None => (long, self.short_var_max),
        })
    }
}

pub fn derive_caps(template: Template, beta: &Rational, d: usize) -> Result<BoundReport> {
    if d < 2 {
        return Err(Error::Parameter(format!("directedness d must be at least 2, got {d}")));
    }
    let r = amplification_ratio(beta)?;
    let short = d as i64 - 1;
    let c = Rational(&r.0 * BigRational::from_integer((template.short_occurrences() * short).into()));
    let fixed_point = solve_symmetric_system(&c, &r)?;
    let long_var_max = match &fixed_point {
        FixedPoint::Finite(b) => Some(
            b.floor()
                .to_u64()
                .ok_or_else(|| Error::Overflow(format!("cap {b}")))?,
        ),
        FixedPoint::Unbounded => None,
    };
    let (pbeta, pd, pc, plong, pshort) = template.published();
    let paper_caps = (*beta == pbeta.parse::<Rational>()? && d == pd).then(|| {
        let c: Rational = pc.parse().expect("constant");
        let fixed_point = match solve_symmetric_system(&c, &r) {
            Ok(FixedPoint::Finite(b)) => b,
            _ => unreachable!("published parameters have r < 1"),
        };
        PublishedCaps {
            c,
            fixed_point,
            long_var_max: plong,
            short_var_max: pshort,
        }
    });
    Ok(BoundReport {
        template,
        beta: beta.clone(),
        d,
        r,
        c,
        fixed_point,
        long_var_max,
        short_var_max: short as u64,
        paper_caps,
    })
}
