//! Formulas with reversal.
//!
//! A formula is a list of fragments separated by dots. Each fragment is a
//! sequence of variable occurrences, optionally decorated `^R` (the image is
//! reversed) or `^U` (the image may be taken forward or reversed, chosen
//! independently for every such occurrence).
//!
//! An occurrence of a formula in a word `w` maps every variable to a nonempty
//! word so that the image of every fragment is a factor of `w`. Fragments are
//! matched independently; nothing ties their positions together.
//!
//! Text grammar:
//!
//! ```text
//! formula  := fragment ('.' fragment)*
//! fragment := varocc+
//! varocc   := var ('^R' | '^U')?
//! var      := ('x' | 'y' | 'z') [0-9]+  |  [a-z]
//! ```
//!
//! `·` is accepted as a separator and whitespace is ignored.

mod longest;
mod search;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::word::{contains_slice, Word};

pub use longest::{longest_avoiding, longest_avoiding_with, LongestAvoiding, LongestSearchStats};
pub use search::{Budget, 
    avoids, find_occurrence, OccurrenceSearch, SearchOutcome, SearchStats, NO_BUDGET,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Decoration {
    Plain,
    Reversed,
    Undirected,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarOccurrence {
    pub variable: String,
    pub decoration: Decoration,
}

impl VarOccurrence {
    pub fn new(variable: impl Into<String>, decoration: Decoration) -> Self {
        VarOccurrence {
            variable: variable.into(),
            decoration,
        }
    }

    pub fn plain(variable: impl Into<String>) -> Self {
        VarOccurrence::new(variable, Decoration::Plain)
    }

    pub fn reversed(variable: impl Into<String>) -> Self {
        VarOccurrence::new(variable, Decoration::Reversed)
    }
}

impl fmt::Display for VarOccurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.variable)?;
        match self.decoration {
            Decoration::Plain => Ok(()),
            Decoration::Reversed => f.write_str("^R"),
            Decoration::Undirected => f.write_str("^U"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fragment(Vec<VarOccurrence>);

impl Fragment {
    pub fn new(occurrences: Vec<VarOccurrence>) -> Result<Self> {
        if occurrences.is_empty() {
            return Err(Error::Parameter("empty fragment".into()));
        }
        Ok(Fragment(occurrences))
    }

    pub fn occurrences(&self) -> &[VarOccurrence] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for occ in &self.0 {
            write!(f, "{occ}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Formula {
    fragments: Vec<Fragment>,
    variables: Vec<String>,
}

impl Formula {
    pub fn new(fragments: Vec<Fragment>) -> Result<Self> {
        if fragments.is_empty() {
            return Err(Error::Parameter("formula without fragments".into()));
        }
        let mut variables: Vec<String> = Vec::new();
        for frag in &fragments {
            if frag.is_empty() {
                return Err(Error::Parameter("empty fragment".into()));
            }
            for occ in frag.occurrences() {
                if !variables.contains(&occ.variable) {
                    variables.push(occ.variable.clone());
                }
            }
        }
        Ok(Formula {
            fragments,
            variables,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_formula(text)
    }

    pub fn fragments(&self) -> &[Fragment] {
        &self.fragments
    }

    /// Variables in order of first appearance.
    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn variable_set(&self) -> BTreeSet<&str> {
        self.variables.iter().map(String::as_str).collect()
    }

    /// Positions `(fragment, position)` of every `^U` occurrence.
    pub fn undirected_positions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, frag) in self.fragments.iter().enumerate() {
            for (j, occ) in frag.occurrences().iter().enumerate() {
                if occ.decoration == Decoration::Undirected {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Same fragments with every decoration dropped.
    pub fn flatten(&self) -> Formula {
        let fragments = self
            .fragments
            .iter()
            .map(|frag| {
                Fragment(
                    frag.occurrences()
                        .iter()
                        .map(|o| VarOccurrence::plain(o.variable.clone()))
                        .collect(),
                )
            })
            .collect();
        Formula {
            fragments,
            variables: self.variables.clone(),
        }
    }

    pub fn is_classical(&self) -> bool {
        self.fragments
            .iter()
            .flat_map(|f| f.occurrences())
            .all(|o| o.decoration == Decoration::Plain)
    }

    /// Image of fragment `index` under `a`.
    pub fn instantiate(&self, index: usize, a: &Assignment) -> Result<Vec<u8>> {
        instantiate_at(&self.fragments[index], index, a)
    }

    /// Direct check, independent of the search: every fragment image is a
    /// factor of `w`, using the orientations recorded in `a`.
    pub fn is_occurrence(&self, w: &[u8], a: &Assignment) -> bool {
        if self.variables.iter().any(|v| a.image(v).is_none_or(|img| img.is_empty())) {
            return false;
        }
        (0..self.fragments.len()).all(|i| match self.instantiate(i, a) {
            Ok(img) => contains_slice(w, &img),
            Err(_) => false,
        })
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, frag) in self.fragments.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{frag}")?;
        }
        Ok(())
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_formula(s)
    }
}

pub fn parse_formula(text: &str) -> Result<Formula> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let syntax = |pos: usize, msg: &str| Error::Syntax {
        pos,
        msg: msg.to_string(),
    };

    let mut fragments = Vec::new();
    let mut current: Vec<VarOccurrence> = Vec::new();
    skip_ws(&mut pos);
    if pos == chars.len() {
        return Err(syntax(pos, "empty formula"));
    }
    loop {
        skip_ws(&mut pos);
        if pos == chars.len() {
            if current.is_empty() {
                return Err(syntax(pos, "empty fragment"));
            }
            fragments.push(Fragment(std::mem::take(&mut current)));
            break;
        }
        let c = chars[pos];
        if c == '.' || c == '·' {
            if current.is_empty() {
                return Err(syntax(pos, "empty fragment"));
            }
            fragments.push(Fragment(std::mem::take(&mut current)));
            pos += 1;
            continue;
        }
        if !c.is_ascii_lowercase() {
            return Err(syntax(pos, &format!("unexpected character {c:?}")));
        }
        let start = pos;
        pos += 1;
        if matches!(c, 'x' | 'y' | 'z') {
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
        } else if pos < chars.len() && chars[pos].is_ascii_digit() {
            return Err(syntax(pos, "only x, y and z take an index"));
        }
        let name: String = chars[start..pos].iter().collect();
        let mut decoration = Decoration::Plain;
        if pos < chars.len() && chars[pos] == '^' {
            decoration = match chars.get(pos + 1) {
                Some('R') => Decoration::Reversed,
                Some('U') => Decoration::Undirected,
                _ => return Err(syntax(pos + 1, "expected R or U after '^'")),
            };
            pos += 2;
        }
        current.push(VarOccurrence::new(name, decoration));
    }
    Formula::new(fragments)
}

fn family_formula(fragments: Vec<Vec<VarOccurrence>>) -> Formula {
    Formula::new(fragments.into_iter().map(Fragment).collect()).expect("nonempty family")
}

/// `x0x1 . x1x2 . … . x(k-1)x0 . x0^R . … . x(k-1)^R`
pub fn phi(k: usize) -> Result<Formula> {
    if k < 2 {
        return Err(Error::Parameter(format!("phi needs k >= 2, got {k}")));
    }
    let var = |j: usize| format!("x{j}");
    let mut fragments: Vec<Vec<VarOccurrence>> = (0..k)
        .map(|j| {
            vec![
                VarOccurrence::plain(var(j)),
                VarOccurrence::plain(var((j + 1) % k)),
            ]
        })
        .collect();
    fragments.extend((0..k).map(|j| vec![VarOccurrence::reversed(var(j))]));
    Ok(family_formula(fragments))
}

/// `x y1 … yk x . y1^R . … . yk^R`
pub fn psi(k: usize) -> Result<Formula> {
    if k < 1 {
        return Err(Error::Parameter(format!("psi needs k >= 1, got {k}")));
    }
    let mut head = vec![VarOccurrence::plain("x")];
    head.extend((1..=k).map(|i| VarOccurrence::plain(format!("y{i}"))));
    head.push(VarOccurrence::plain("x"));
    let mut fragments = vec![head];
    fragments.extend((1..=k).map(|i| vec![VarOccurrence::reversed(format!("y{i}"))]));
    Ok(family_formula(fragments))
}

/// The five 2-avoidable formulas flattening to `xyzyx.zyxyz`, as one formula.
pub const THM2_FORMULA: &str = "xyzy^Ux.zy^Uxy^Uz.y^R";
/// `xyzx.yzxy.z^R` and `xyzx.yz^Rxy` as one formula.
pub const THM3_FORMULA: &str = "xyzx.yz^Uxy.z^R";
/// Not 2-avoidable: the previous family together with `xyzyx.zyxyz`.
pub const NONAVOID2_FORMULA: &str = "xyzy^Ux.zy^Uxy^Uz";

pub fn thm2_formula() -> Formula {
    THM2_FORMULA.parse().expect("valid constant")
}

pub fn thm3_formula() -> Formula {
    THM3_FORMULA.parse().expect("valid constant")
}

pub fn nonavoid2_formula() -> Formula {
    NONAVOID2_FORMULA.parse().expect("valid constant")
}

/// Maximum image length per variable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarBounds(BTreeMap<String, usize>);

impl VarBounds {
    pub fn uniform(f: &Formula, cap: usize) -> Self {
        VarBounds(f.variables().iter().map(|v| (v.clone(), cap)).collect())
    }

    pub fn from_pairs<S: AsRef<str>>(f: &Formula, pairs: &[(S, usize)]) -> Result<Self> {
        let map: BTreeMap<String, usize> = pairs
            .iter()
            .map(|(v, c)| (v.as_ref().to_string(), *c))
            .collect();
        let bounds = VarBounds(map);
        bounds.validate(f)?;
        Ok(bounds)
    }

    pub fn validate(&self, f: &Formula) -> Result<()> {
        for v in f.variables() {
            match self.0.get(v) {
                None => return Err(Error::MissingVariable(v.clone())),
                Some(0) => {
                    return Err(Error::Parameter(format!("bound for {v} must be positive")))
                }
                Some(_) => {}
            }
        }
        Ok(())
    }

    pub fn get(&self, v: &str) -> Option<usize> {
        self.0.get(v).copied()
    }

    pub fn set(&mut self, v: &str, cap: usize) {
        self.0.insert(v.to_string(), cap);
    }

    /// Pointwise maximum.
    pub fn max(&self, other: &VarBounds) -> VarBounds {
        let mut out = self.0.clone();
        for (v, &c) in &other.0 {
            let e = out.entry(v.clone()).or_insert(c);
            *e = (*e).max(c);
        }
        VarBounds(out)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.0.iter().map(|(v, &c)| (v.as_str(), c))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Forward,
    Backward,
}

impl Orientation {
    fn code(self) -> &'static str {
        match self {
            Orientation::Forward => "F",
            Orientation::Backward => "B",
        }
    }
}

/// Variable images plus one orientation per `^U` occurrence, keyed by
/// `(fragment, position)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Assignment {
    pub images: BTreeMap<String, Word>,
    pub orientations: BTreeMap<(usize, usize), Orientation>,
}

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn with_image(mut self, v: &str, w: Word) -> Self {
        self.images.insert(v.to_string(), w);
        self
    }

    pub fn with_orientation(mut self, fragment: usize, position: usize, o: Orientation) -> Self {
        self.orientations.insert((fragment, position), o);
        self
    }

    pub fn image(&self, v: &str) -> Option<&[u8]> {
        self.images.get(v).map(Word::letters)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("assignment serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let bad = |m: &str| Error::Parameter(format!("assignment JSON: {m}"));
        let images = value
            .get("images")
            .and_then(|v| v.as_object())
            .ok_or_else(|| bad("missing images"))?;
        let mut a = Assignment::new();
        for (k, v) in images {
            let text = v.as_str().ok_or_else(|| bad("image is not a string"))?;
            a.images.insert(k.clone(), text.parse()?);
        }
        if let Some(list) = value.get("orientations").and_then(|v| v.as_array()) {
            for item in list {
                let triple = item.as_array().ok_or_else(|| bad("orientation entry"))?;
                let (f, p, o) = match triple.as_slice() {
                    [f, p, o] => (f.as_u64(), p.as_u64(), o.as_str()),
                    _ => return Err(bad("orientation entry")),
                };
                let o = match o {
                    Some("F") => Orientation::Forward,
                    Some("B") => Orientation::Backward,
                    _ => return Err(bad("orientation must be F or B")),
                };
                let (f, p) = f.zip(p).ok_or_else(|| bad("orientation index"))?;
                a.orientations.insert((f as usize, p as usize), o);
            }
        }
        Ok(a)
    }
}

impl Serialize for Assignment {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let orientations: Vec<(usize, usize, &str)> = self
            .orientations
            .iter()
            .map(|(&(f, p), o)| (f, p, o.code()))
            .collect();
        let mut st = s.serialize_struct("Assignment", 2)?;
        st.serialize_field("images", &self.images)?;
        st.serialize_field("orientations", &orientations)?;
        st.end()
    }
}

/// Image of one fragment. `index` is the fragment's position in its formula,
/// used to look up orientations of `^U` occurrences.
pub fn instantiate_at(fragment: &Fragment, index: usize, a: &Assignment) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    for (pos, occ) in fragment.occurrences().iter().enumerate() {
        let img = a
            .image(&occ.variable)
            .ok_or_else(|| Error::MissingVariable(occ.variable.clone()))?;
        let backward = match occ.decoration {
            Decoration::Plain => false,
            Decoration::Reversed => true,
            Decoration::Undirected => match a.orientations.get(&(index, pos)) {
                Some(o) => *o == Orientation::Backward,
                None => {
                    return Err(Error::MissingOrientation {
                        fragment: index,
                        position: pos,
                    })
                }
            },
        };
        if backward {
            out.extend(img.iter().rev());
        } else {
            out.extend_from_slice(img);
        }
    }
    Ok(out)
}

pub fn instantiate(fragment: &Fragment, a: &Assignment) -> Result<Vec<u8>> {
    instantiate_at(fragment, 0, a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn parse_thm3_formula() {
        let f: Formula = "xyzx.yz^Uxy.z^R".parse().unwrap();
        assert_eq!(f.fragments().len(), 3);
        assert_eq!(f.variables(), ["x", "y", "z"]);
        let decorations: Vec<Decoration> = f
            .fragments()
            .iter()
            .flat_map(|fr| fr.occurrences().iter().map(|o| o.decoration))
            .collect();
        assert_eq!(
            decorations.iter().filter(|&&d| d == Decoration::Undirected).count(),
            1
        );
        assert_eq!(
            decorations.iter().filter(|&&d| d == Decoration::Reversed).count(),
            1
        );
        assert_eq!(f.to_string(), "xyzx.yz^Uxy.z^R");
    }

    #[test]
    fn parse_indexed_variables() {
        let f: Formula = "x0x1.x1x0.x0^R.x1^R".parse().unwrap();
        assert_eq!(f, phi(2).unwrap());
        let g: Formula = "x12 y3^U".parse().unwrap();
        assert_eq!(g.variables(), ["x12", "y3"]);
        assert_eq!(g.to_string(), "x12y3^U");
        let h: Formula = "xyzx · yz^Rxy".parse().unwrap();
        assert_eq!(h.to_string(), "xyzx.yz^Rxy");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(
            "x..y".parse::<Formula>().unwrap_err(),
            Error::Syntax {
                pos: 2,
                msg: "empty fragment".into()
            }
        );
        assert!(matches!(".x".parse::<Formula>(), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!("x.".parse::<Formula>(), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!("x^Q".parse::<Formula>(), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!("xY".parse::<Formula>(), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!("a1".parse::<Formula>(), Err(Error::Syntax { pos: 1, .. })));
        assert!("".parse::<Formula>().is_err());
    }

    #[test]
    fn phi_family() {
        assert_eq!(phi(2).unwrap().to_string(), "x0x1.x1x0.x0^R.x1^R");
        assert_eq!(phi(3).unwrap().to_string(), "x0x1.x1x2.x2x0.x0^R.x1^R.x2^R");
        assert_eq!(phi(2).unwrap().variables().len(), 2);
        assert_eq!(phi(2).unwrap().fragments().len(), 4);
        assert!(phi(1).is_err());
    }

    #[test]
    fn psi_family() {
        assert_eq!(psi(1).unwrap().to_string(), "xy1x.y1^R");
        assert_eq!(psi(2).unwrap().to_string(), "xy1y2x.y1^R.y2^R");
        assert_eq!(psi(3).unwrap().fragments().len(), 4);
        assert_eq!(psi(3).unwrap().variables().len(), 4);
        assert!(psi(0).is_err());
    }

    #[test]
    fn round_trip_paper_formulas() {
        let mut all: Vec<Formula> = (2..=8).map(|k| phi(k).unwrap()).collect();
        all.extend((1..=8).map(|k| psi(k).unwrap()));
        all.extend([thm2_formula(), thm3_formula(), nonavoid2_formula()]);
        for f in all {
            let text = f.to_string();
            assert_eq!(text.parse::<Formula>().unwrap(), f, "{text}");
        }
    }

    #[test]
    fn flatten_examples() {
        assert_eq!(thm2_formula().flatten().to_string(), "xyzyx.zyxyz.y");
        assert_eq!("xx".parse::<Formula>().unwrap().flatten().to_string(), "xx");
        assert_eq!("x^R".parse::<Formula>().unwrap().flatten().to_string(), "x");
        assert!(thm2_formula().flatten().is_classical());
    }

    #[test]
    fn instantiate_examples() {
        let f: Formula = "xy^R".parse().unwrap();
        let a = Assignment::new()
            .with_image("x", word("01"))
            .with_image("y", word("01"));
        assert_eq!(f.instantiate(0, &a).unwrap(), vec![0, 1, 1, 0]);

        let f: Formula = "y^U".parse().unwrap();
        let a = Assignment::new()
            .with_image("y", word("001"))
            .with_orientation(0, 0, Orientation::Backward);
        assert_eq!(f.instantiate(0, &a).unwrap(), vec![1, 0, 0]);

        let f: Formula = "x0x1".parse().unwrap();
        let a = Assignment::new()
            .with_image("x0", word("0"))
            .with_image("x1", word("1"));
        assert_eq!(f.instantiate(0, &a).unwrap(), vec![0, 1]);
    }

    #[test]
    fn instantiate_reports_missing_data() {
        let f: Formula = "xy^U".parse().unwrap();
        let a = Assignment::new().with_image("x", word("0"));
        assert_eq!(
            f.instantiate(0, &a),
            Err(Error::MissingVariable("y".into()))
        );
        let a = a.with_image("y", word("1"));
        assert_eq!(
            f.instantiate(0, &a),
            Err(Error::MissingOrientation {
                fragment: 0,
                position: 1
            })
        );
    }

    #[test]
    fn assignment_json_shape() {
        let a = Assignment::new()
            .with_image("x", word("01"))
            .with_image("y", word("1"))
            .with_orientation(1, 2, Orientation::Backward);
        let json = a.to_json();
        assert_eq!(
            json,
            serde_json::json!({"images": {"x": "01", "y": "1"}, "orientations": [[1, 2, "B"]]})
        );
        assert_eq!(Assignment::from_json(&json).unwrap(), a);
    }

    #[test]
    fn bounds_validation() {
        let f = thm3_formula();
        assert!(VarBounds::from_pairs(&f, &[("x", 16), ("y", 16)]).is_err());
        assert!(VarBounds::from_pairs(&f, &[("x", 16), ("y", 16), ("z", 0)]).is_err());
        let a = VarBounds::from_pairs(&f, &[("x", 15), ("y", 15), ("z", 3)]).unwrap();
        let b = VarBounds::from_pairs(&f, &[("x", 16), ("y", 16), ("z", 3)]).unwrap();
        assert_eq!(a.max(&b), b);
    }
}
