//! Letters, alphabets and finite words.
//!
//! Letters are small integers `0..size`. In text they are written with the
//! characters `0-9` followed by `a-z`, one character per letter.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_ALPHABET: usize = 36;

/// An alphabet `{0, 1, .., size-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Alphabet(u8);

impl Alphabet {
    pub fn new(size: usize) -> Result<Self> {
        if (1..=MAX_ALPHABET).contains(&size) {
            Ok(Alphabet(size as u8))
        } else {
            Err(Error::AlphabetSize(size))
        }
    }

    pub fn size(self) -> usize {
        self.0 as usize
    }

    pub fn letters(self) -> impl Iterator<Item = u8> + Clone {
        0..self.0
    }
}

pub fn letter_to_char(letter: u8) -> char {
    char::from_digit(letter as u32, 36).expect("letter below 36")
}

pub fn char_to_letter(c: char) -> Result<u8> {
    if c.is_ascii_uppercase() {
        return Err(Error::BadLetterChar(c));
    }
    c.to_digit(36).map(|d| d as u8).ok_or(Error::BadLetterChar(c))
}

/// Render raw letters in the `0-9a-z` encoding.
pub fn encode(letters: &[u8]) -> String {
    letters.iter().map(|&l| letter_to_char(l)).collect()
}

/// Parse the `0-9a-z` encoding into raw letters.
pub fn decode(text: &str) -> Result<Vec<u8>> {
    text.chars().map(char_to_letter).collect()
}

/// A finite word over an [`Alphabet`]. The empty word is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<u8>,
    alphabet: Alphabet,
}

impl Word {
    pub fn new(letters: Vec<u8>, alphabet: Alphabet) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l as usize >= alphabet.size()) {
            return Err(Error::LetterOutOfRange {
                letter: bad,
                size: alphabet.size(),
            });
        }
        Ok(Word { letters, alphabet })
    }

    /// Builds a word over the smallest alphabet containing all its letters
    /// (size 1 for the empty word).
    pub fn from_letters(letters: Vec<u8>) -> Result<Self> {
        let size = letters.iter().map(|&l| l as usize + 1).max().unwrap_or(1);
        let alphabet = Alphabet::new(size)?;
        Word::new(letters, alphabet)
    }

    pub fn parse_over(text: &str, alphabet: Alphabet) -> Result<Self> {
        Word::new(decode(text.trim())?, alphabet)
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Word {
            letters: Vec::new(),
            alphabet,
        }
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.letters
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The mirror image of this word.
    pub fn reverse(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word {
            letters,
            alphabet: self.alphabet,
        }
    }

    /// The factor `[start, end)`.
    pub fn factor(&self, start: usize, end: usize) -> Word {
        Word {
            letters: self.letters[start..end].to_vec(),
            alphabet: self.alphabet,
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word {
            letters,
            alphabet: self.alphabet.max(other.alphabet),
        }
    }

    /// Naive factor test.
    pub fn contains_factor(&self, f: &[u8]) -> bool {
        contains_slice(&self.letters, f)
    }
}

pub fn reverse(w: &Word) -> Word {
    w.reverse()
}

pub(crate) fn contains_slice(haystack: &[u8], needle: &[u8]) -> bool {
    needle.is_empty() || haystack.windows(needle.len()).any(|win| win == needle)
}

/// Prefix of length `length` of `(0 1 .. k)^ω`, a word over `k + 1` letters.
pub fn periodic_word(k: usize, length: usize) -> Result<Word> {
    if k < 1 || length < 1 {
        return Err(Error::Parameter(format!(
            "periodic_word needs k >= 1 and length >= 1, got k={k}, length={length}"
        )));
    }
    let alphabet = Alphabet::new(k + 1)?;
    let letters = (0..length).map(|i| (i % (k + 1)) as u8).collect();
    Ok(Word { letters, alphabet })
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&encode(&self.letters))
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::from_letters(decode(s.trim())?)
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(w("011").reverse().to_string(), "110");
        assert_eq!(w("0").reverse().to_string(), "0");
        assert_eq!(w("012012").reverse().reverse(), w("012012"));
    }

    #[test]
    fn periodic_examples() {
        assert_eq!(periodic_word(2, 7).unwrap().to_string(), "0120120");
        assert_eq!(periodic_word(1, 4).unwrap().to_string(), "0101");
        assert_eq!(periodic_word(4, 5).unwrap().to_string(), "01234");
        assert_eq!(periodic_word(4, 5).unwrap().alphabet().size(), 5);
        assert!(periodic_word(0, 5).is_err());
        assert!(periodic_word(2, 0).is_err());
    }

    #[test]
    fn letter_encoding() {
        assert_eq!(encode(&[0, 9, 10, 35]), "09az");
        assert_eq!(decode("09az").unwrap(), vec![0, 9, 10, 35]);
        assert!(decode("0A").is_err());
        assert!(decode("0-").is_err());
        assert!(Alphabet::new(0).is_err());
        assert!(Alphabet::new(37).is_err());
    }

    #[test]
    fn letters_checked_against_alphabet() {
        let a = Alphabet::new(2).unwrap();
        assert!(Word::parse_over("012", a).is_err());
        assert_eq!(Word::parse_over("0110", a).unwrap().len(), 4);
        assert!(Word::parse_over("", a).unwrap().is_empty());
    }
}
