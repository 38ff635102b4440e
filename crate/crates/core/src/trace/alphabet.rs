//! Alphabets with a partial commutation relation, and words over them.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite alphabet together with a symmetric, irreflexive commutation
/// relation. Symbols are dense ids `0..n`; display names are kept alongside.
#[derive(Debug, Clone)]
pub struct Alphabet {
    names: Vec<String>,
    /// Flat n*n symmetric matrix; the diagonal is false (a letter never
    /// commutes with itself for the purposes of the dependency order).
    commutes: Vec<bool>,
    index: HashMap<String, usize>,
}

/// File format: symbol names plus the unordered commuting pairs.
#[derive(Serialize, Deserialize)]
struct AlphabetSpec {
    symbols: Vec<String>,
    commuting_pairs: Vec<(String, String)>,
}

impl Alphabet {
    /// Builds an alphabet from display names and commuting id pairs.
    pub fn new(names: Vec<String>, commuting_pairs: &[(usize, usize)]) -> Result<Alphabet> {
        let n = names.len();
        let mut index = HashMap::with_capacity(n);
        for (id, name) in names.iter().enumerate() {
            if index.insert(name.clone(), id).is_some() {
                return Err(Error::DuplicateSymbol { name: name.clone() });
            }
        }
        let mut commutes = vec![false; n * n];
        for &(a, b) in commuting_pairs {
            for id in [a, b] {
                if id >= n {
                    return Err(Error::SymbolOutOfRange { id, len: n });
                }
            }
            if a == b {
                return Err(Error::SelfCommutingPair { name: names[a].clone() });
            }
            commutes[a * n + b] = true;
            commutes[b * n + a] = true;
        }
        Ok(Alphabet { names, commutes, index })
    }

    /// Convenience for tests and the JSON reader: pairs given by name.
    pub fn from_named_pairs<S: AsRef<str>>(
        names: Vec<String>,
        pairs: &[(S, S)],
    ) -> Result<Alphabet> {
        let lookup: HashMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let mut id_pairs = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            let resolve = |name: &str| {
                lookup.get(name).copied().ok_or_else(|| Error::UnknownSymbol {
                    name: name.to_string(),
                })
            };
            id_pairs.push((resolve(a.as_ref())?, resolve(b.as_ref())?));
        }
        Alphabet::new(names, &id_pairs)
    }

    /// Parses the `{"symbols": [...], "commuting_pairs": [[..], ..]}` form.
    pub fn from_json(text: &str) -> Result<Alphabet> {
        let spec: AlphabetSpec = serde_json::from_str(text).map_err(|e| Error::Parse {
            input: text.chars().take(80).collect(),
            reason: e.to_string(),
        })?;
        Alphabet::from_named_pairs(spec.symbols, &spec.commuting_pairs)
    }

    pub fn to_json(&self) -> String {
        let n = self.n();
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if self.commutes(a, b) {
                    pairs.push((self.names[a].clone(), self.names[b].clone()));
                }
            }
        }
        serde_json::to_string(&AlphabetSpec {
            symbols: self.names.clone(),
            commuting_pairs: pairs,
        })
        .expect("alphabet serialization cannot fail")
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.commutes[a * self.n() + b]
    }

    /// Two positions depend on each other when their letters are equal or
    /// non-commuting; this is the relation the word poset is built from.
    pub fn dependent(&self, a: usize, b: usize) -> bool {
        a == b || !self.commutes(a, b)
    }

    pub fn name(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Checks every letter of a word against this alphabet.
    pub fn validate_word(&self, word: &Word) -> Result<()> {
        let n = self.n();
        for &letter in word.letters() {
            if letter >= n {
                return Err(Error::SymbolOutOfRange { id: letter, len: n });
            }
        }
        Ok(())
    }

    /// Parses a word given as symbol names separated by whitespace and/or
    /// commas, e.g. `"a b c d"` or `"s1,s2,s1"`.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for token in text.split(|ch: char| ch == ',' || ch.is_whitespace()) {
            if token.is_empty() {
                continue;
            }
            match self.id_of(token) {
                Some(id) => letters.push(id),
                None => return Err(Error::UnknownSymbol { name: token.to_string() }),
            }
        }
        Ok(Word::new(letters))
    }

    /// Renders a word as space-separated symbol names.
    pub fn format_word(&self, word: &Word) -> String {
        word.letters()
            .iter()
            .map(|&l| self.name(l))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn word_names(&self, word: &Word) -> Vec<String> {
        word.letters().iter().map(|&l| self.name(l).to_string()).collect()
    }
}

/// A word: a finite sequence of symbol ids. Comparison is lexicographic by
/// id, which is the order canonical representatives are chosen in.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<usize>,
}

impl Word {
    pub fn new(letters: Vec<usize>) -> Word {
        Word { letters }
    }

    pub fn empty() -> Word {
        Word { letters: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }
}

impl From<Vec<usize>> for Word {
    fn from(letters: Vec<usize>) -> Word {
        Word::new(letters)
    }
}

impl FromIterator<usize> for Word {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Word {
        Word::new(iter.into_iter().collect())
    }
}
