//! Uniform morphisms and the three families used in the avoidance proofs.
//!
//! File format: one line per source letter, `<letter> -> <image>`, in
//! source-letter order. Blank lines and lines starting with `#` are skipped.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::word::{char_to_letter, decode, encode, Alphabet, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformMorphism {
    source: Alphabet,
    target: Alphabet,
    images: Vec<Vec<u8>>,
    width: usize,
}

impl UniformMorphism {
    pub fn new(images: Vec<Vec<u8>>, target: Alphabet) -> Result<Self> {
        let source = Alphabet::new(images.len())
            .map_err(|_| Error::Morphism(format!("{} source letters", images.len())))?;
        let width = images.first().map_or(0, Vec::len);
        if width == 0 {
            return Err(Error::Morphism("images must be nonempty".into()));
        }
        for (i, img) in images.iter().enumerate() {
            if img.len() != width {
                return Err(Error::Morphism(format!(
                    "image of {} has length {}, expected {width}",
                    i,
                    img.len()
                )));
            }
            if let Some(&bad) = img.iter().find(|&&c| c as usize >= target.size()) {
                return Err(Error::LetterOutOfRange {
                    letter: bad,
                    size: target.size(),
                });
            }
        }
        Ok(UniformMorphism {
            source,
            target,
            images,
            width,
        })
    }

    /// Target alphabet inferred from the largest image letter.
    pub fn from_texts(images: &[&str]) -> Result<Self> {
        let images: Vec<Vec<u8>> = images.iter().map(|s| decode(s)).collect::<Result<_>>()?;
        let size = images
            .iter()
            .flatten()
            .map(|&c| c as usize + 1)
            .max()
            .unwrap_or(1);
        UniformMorphism::new(images, Alphabet::new(size)?)
    }

    pub fn source_alphabet(&self) -> Alphabet {
        self.source
    }

    pub fn target_alphabet(&self) -> Alphabet {
        self.target
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn image(&self, letter: u8) -> &[u8] {
        &self.images[letter as usize]
    }

    pub fn images(&self) -> &[Vec<u8>] {
        &self.images
    }

    /// Applies the morphism to raw letters.
    pub fn apply_letters(&self, w: &[u8]) -> Result<Vec<u8>> {
        let mut out = Vec::with_capacity(w.len() * self.width);
        for &c in w {
            let img = self.images.get(c as usize).ok_or(Error::LetterOutOfRange {
                letter: c,
                size: self.source.size(),
            })?;
            out.extend_from_slice(img);
        }
        Ok(out)
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        Word::new(self.apply_letters(w.letters())?, self.target)
    }

    pub fn parse_file(text: &str) -> Result<Self> {
        let mut images = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |m: &str| Error::Morphism(format!("line {}: {m}", lineno + 1));
            let (lhs, rhs) = line.split_once("->").ok_or_else(|| bad("expected '->'"))?;
            let mut chars = lhs.trim().chars();
            let letter = match (chars.next(), chars.next()) {
                (Some(c), None) => char_to_letter(c)?,
                _ => return Err(bad("source must be a single letter")),
            };
            if letter as usize != images.len() {
                return Err(bad("source letters must appear in order 0, 1, 2, ..."));
            }
            images.push(decode(rhs.trim())?);
        }
        let refs: Vec<String> = images.iter().map(|i| encode(i)).collect();
        let refs: Vec<&str> = refs.iter().map(String::as_str).collect();
        UniformMorphism::from_texts(&refs)
    }
}

impl fmt::Display for UniformMorphism {
    /// Writes the file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, img) in self.images.iter().enumerate() {
            writeln!(f, "{} -> {}", encode(&[i as u8]), encode(img))?;
        }
        Ok(())
    }
}

impl FromStr for UniformMorphism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        UniformMorphism::parse_file(s)
    }
}

pub fn apply(m: &UniformMorphism, w: &Word) -> Result<Word> {
    m.apply(w)
}

/// The 21-uniform morphism from 4 letters to binary words.
pub fn paper_morphism_21() -> UniformMorphism {
    UniformMorphism::from_texts(&[
        "000010111000111100111",
        "000010110011011110011",
        "000010110001111010011",
        "000010110001001101111",
    ])
    .expect("valid table")
}

/// The 9-uniform morphism from 4 letters to ternary words.
pub fn paper_morphism_9() -> UniformMorphism {
    UniformMorphism::from_texts(&["011122202", "010121202", "001112122", "000101120"])
        .expect("valid table")
}

/// The `(k+3)`-uniform ternary-to-5-letter morphism for `k = 3t + i`,
/// `t >= 1`, `0 <= i <= 2`:
///
/// ```text
/// 0 -> (012)^(t+1-i) (0123)^i
/// 1 -> (013)^(t+1-i) (0134)^i
/// 2 -> (014)^(t+1-i) (0142)^i
/// ```
pub fn psi_morphism(k: usize) -> Result<UniformMorphism> {
    if k < 3 {
        return Err(Error::Parameter(format!("psi_morphism needs k >= 3, got {k}")));
    }
    let i = k % 3;
    let t = k / 3;
    let templates: [(&[u8], &[u8]); 3] = [
        (&[0, 1, 2], &[0, 1, 2, 3]),
        (&[0, 1, 3], &[0, 1, 3, 4]),
        (&[0, 1, 4], &[0, 1, 4, 2]),
    ];
    let images = templates
        .iter()
        .map(|(short, long)| {
            let mut img = short.repeat(t + 1 - i);
            img.extend(long.repeat(i));
            img
        })
        .collect();
    UniformMorphism::new(images, Alphabet::new(5)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables() {
        let m = paper_morphism_21();
        assert_eq!(m.width(), 21);
        assert_eq!(encode(m.image(3)), "000010110001001101111");
        assert_eq!(m.target_alphabet().size(), 2);
        assert_eq!(m.source_alphabet().size(), 4);
        let w: Word = "1".parse().unwrap();
        assert_eq!(m.apply(&w).unwrap().to_string(), "000010110011011110011");

        let m = paper_morphism_9();
        assert_eq!(m.width(), 9);
        assert_eq!(encode(m.image(2)), "001112122");
        assert_eq!(m.target_alphabet().size(), 3);
        assert_eq!(m.apply(&"0".parse().unwrap()).unwrap().to_string(), "011122202");
    }

    #[test]
    fn empty_word_maps_to_empty() {
        let m = paper_morphism_9();
        let e = Word::empty(Alphabet::new(4).unwrap());
        assert!(m.apply(&e).unwrap().is_empty());
    }

    #[test]
    fn letter_outside_source_is_rejected() {
        let m = paper_morphism_9();
        assert!(m.apply_letters(&[0, 4]).is_err());
    }

    #[test]
    fn psi_family() {
        let m = psi_morphism(3).unwrap();
        assert_eq!(encode(m.image(0)), "012012");
        assert_eq!(m.width(), 6);
        let m = psi_morphism(4).unwrap();
        assert_eq!(encode(m.image(0)), "0120123");
        assert_eq!(m.width(), 7);
        let m = psi_morphism(5).unwrap();
        assert_eq!(encode(m.image(1)), "01340134");
        assert_eq!(m.width(), 8);
        for k in 3..=30 {
            assert_eq!(psi_morphism(k).unwrap().width(), k + 3);
        }
        assert!(psi_morphism(2).is_err());
    }

    #[test]
    fn file_format_round_trip() {
        let m = paper_morphism_21();
        let text = format!("# the 21-uniform table\n\n{m}");
        assert_eq!(text.parse::<UniformMorphism>().unwrap(), m);
        assert!("1 -> 01\n0 -> 10\n".parse::<UniformMorphism>().is_err());
        assert!("0 -> 01\n1 -> 1\n".parse::<UniformMorphism>().is_err());
        assert!("0 => 01\n".parse::<UniformMorphism>().is_err());
    }
}
