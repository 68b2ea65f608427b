use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// One letter `g_index^exponent`, generator indices being 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, exponent: i8) -> Letter {
        assert!(generator >= 1, "generator indices are 1-based");
        assert!(exponent == 1 || exponent == -1, "exponent must be ±1");
        Letter {
            generator,
            inverse: exponent < 0,
        }
    }

    pub fn exponent(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Letter {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse word `{input}`: {reason}")]
pub struct WordParseError {
    pub input: String,
    pub reason: String,
}

/// A freely reduced word in a free group.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn generator(index: usize) -> Word {
        Word {
            letters: vec![Letter::new(index, 1)],
        }
    }

    /// Builds a word from `(generator, ±1)` pairs, reducing freely.
    pub fn from_pairs<I: IntoIterator<Item = (usize, i8)>>(pairs: I) -> Word {
        Word::from_letters(pairs.into_iter().map(|(g, e)| Letter::new(g, e)))
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index used, or 0 for the empty word.
    pub fn max_generator(&self) -> usize {
        self.letters.iter().map(|l| l.generator).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Removes matching first/last letters that cancel cyclically.
    pub fn cyclically_reduced(&self) -> Word {
        let mut l = &self.letters[..];
        while l.len() >= 2 && l[0] == l[l.len() - 1].inv() {
            l = &l[1..l.len() - 1];
        }
        Word {
            letters: l.to_vec(),
        }
    }

    /// The rotation `w_k … w_n w_1 … w_{k−1}`.
    pub fn rotated(&self, k: usize) -> Word {
        if self.letters.is_empty() {
            return Word::empty();
        }
        let k = k % self.letters.len();
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        Word { letters }
    }

    /// Lexicographically least rotation; callers should cyclically reduce first.
    pub fn min_rotation(&self) -> Word {
        (0..self.letters.len().max(1))
            .map(|k| self.rotated(k))
            .min()
            .unwrap_or_default()
    }

    /// Parses a word over the given generator names; `names[k]` is generator `k+1`.
    ///
    /// Accepts juxtaposed or space-separated names with optional integer powers
    /// `x^k`, `x^-1` or `x⁻¹`. `1` and the empty string denote the empty word.
    pub fn parse_with<S: AsRef<str>>(input: &str, names: &[S]) -> Result<Word, WordParseError> {
        let err = |reason: String| WordParseError {
            input: input.to_string(),
            reason,
        };
        let trimmed = input.trim();
        if trimmed.is_empty() || trimmed == "1" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        let mut rest = trimmed;
        while !rest.is_empty() {
            rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == '·' || c == '*');
            if rest.is_empty() {
                break;
            }
            let (index, len) = names
                .iter()
                .enumerate()
                .filter(|(_, n)| rest.starts_with(n.as_ref()))
                .map(|(k, n)| (k + 1, n.as_ref().len()))
                .max_by_key(|&(_, len)| len)
                .ok_or_else(|| err(format!("unknown generator at `{rest}`")))?;
            rest = &rest[len..];
            let mut power: i64 = 1;
            if let Some(after) = rest.strip_prefix("⁻¹") {
                power = -1;
                rest = after;
            } else if let Some(after) = rest.strip_prefix('^') {
                let digits = after
                    .char_indices()
                    .take_while(|&(i, c)| c.is_ascii_digit() || (i == 0 && (c == '-' || c == '+')))
                    .map(|(i, c)| i + c.len_utf8())
                    .last()
                    .ok_or_else(|| err("missing exponent after `^`".to_string()))?;
                power = after[..digits]
                    .parse()
                    .map_err(|_| err(format!("bad exponent `{}`", &after[..digits])))?;
                rest = &after[digits..];
            }
            let letter = Letter::new(index, if power < 0 { -1 } else { 1 });
            for _ in 0..power.unsigned_abs() {
                letters.push(letter);
            }
        }
        Ok(Word::from_letters(letters))
    }

    /// Formats with the given generator names, collapsing runs into powers.
    pub fn display_with<S: AsRef<str>>(&self, names: &[S]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut k = 0;
        while k < self.letters.len() {
            let l = self.letters[k];
            let run = self.letters[k..].iter().take_while(|&&m| m == l).count();
            let name = names
                .get(l.generator - 1)
                .map(|n| n.as_ref().to_string())
                .unwrap_or_else(|| format!("g{}", l.generator));
            let exp = run as i64 * i64::from(l.exponent());
            parts.push(if exp == 1 {
                name
            } else {
                format!("{name}^{exp}")
            });
            k += run;
        }
        parts.join(" ")
    }
}

/// Default names `a`, `b`, `c`, … for free-group generators.
pub fn free_generator_names(rank: usize) -> Vec<String> {
    (0..rank)
        .map(|k| {
            if k < 26 {
                char::from(b'a' + k as u8).to_string()
            } else {
                format!("g{}", k + 1)
            }
        })
        .collect()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&free_generator_names(self.max_generator())))
    }
}

impl FromStr for Word {
    type Err = WordParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse_with(s, &free_generator_names(26))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        let w = Word::from_pairs([(1, 1), (2, 1), (2, -1), (1, 1)]);
        assert_eq!(w, Word::from_pairs([(1, 1), (1, 1)]));
        assert!(w.concat(&w.inverse()).is_empty());
    }

    #[test]
    fn parse_and_display() {
        let w: Word = "a b^-1 a".parse().unwrap();
        assert_eq!(w.letters().len(), 3);
        assert_eq!(w.to_string(), "a b^-1 a");
        let v: Word = "ab⁻¹a".parse().unwrap();
        assert_eq!(v, w);
        assert_eq!("a^3".parse::<Word>().unwrap().to_string(), "a^3");
        assert!("1".parse::<Word>().unwrap().is_empty());
        assert!("a ^".parse::<Word>().is_err());
        assert!("a ?".parse::<Word>().is_err());
    }

    #[test]
    fn surface_names() {
        let names = ["a1", "b1", "a2", "b2", "c1"];
        let w = Word::parse_with("a1 b2 c1^-1", &names).unwrap();
        assert_eq!(w, Word::from_pairs([(1, 1), (4, 1), (5, -1)]));
        assert_eq!(w.display_with(&names), "a1 b2 c1^-1");
    }

    #[test]
    fn cyclic_operations() {
        let w: Word = "a b a^-1".parse().unwrap();
        assert_eq!(w.cyclically_reduced(), Word::generator(2));
        let u: Word = "b a".parse().unwrap();
        assert_eq!(u.min_rotation().to_string(), "a b");
    }
}
