//! Words over `{a, b}` and tuples of them.
//!
//! A word is stored with its most recently prepended letter leftmost, so the
//! path root → left → right reads `ba`. The empty word prints as `e`.

use std::fmt;

use serde::{Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(String);

impl Word {
    pub fn empty() -> Word {
        Word(String::new())
    }

    /// Parse `e` or a nonempty string over `{a, b}`.
    pub fn parse(s: &str) -> Option<Word> {
        if s == "e" {
            return Some(Word::empty());
        }
        (!s.is_empty() && s.chars().all(|c| c == 'a' || c == 'b')).then(|| Word(s.to_string()))
    }

    pub fn prepend(&self, letter: Letter) -> Word {
        let mut s = String::with_capacity(self.0.len() + 1);
        s.push(letter.as_char());
        s.push_str(&self.0);
        Word(s)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Nonempty and made of `letter` only.
    pub fn is_power_of(&self, letter: Letter) -> bool {
        !self.0.is_empty() && self.0.chars().all(|c| c == letter.as_char())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "e")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An ordered tuple of words, one per leaf.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WordTuple(Vec<Word>);

impl WordTuple {
    pub fn new(words: Vec<Word>) -> Self {
        WordTuple(words)
    }

    pub fn words(&self) -> &[Word] {
        &self.0
    }

    pub fn into_words(self) -> Vec<Word> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &WordTuple) -> WordTuple {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        WordTuple(v)
    }

    /// The tuple with entry `k` moved to position `position_of(k)`, i.e.
    /// `θ(ρ)` for `position_of = ρ`.
    pub fn moved(&self, position_of: impl Fn(usize) -> usize) -> WordTuple {
        let mut out = vec![Word::empty(); self.len()];
        for (k, w) in self.0.iter().enumerate() {
            out[position_of(k)] = w.clone();
        }
        WordTuple(out)
    }

    /// Entries pairwise distinct.
    pub fn all_distinct(&self) -> bool {
        let mut sorted: Vec<&Word> = self.0.iter().collect();
        sorted.sort();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    /// The multiset of entries, as a sorted vector.
    pub fn sorted(&self) -> Vec<Word> {
        let mut v = self.0.clone();
        v.sort();
        v
    }
}

impl fmt::Display for WordTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for WordTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
