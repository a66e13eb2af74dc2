use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    AInv,
    B,
    BInv,
}

impl Letter {
    /// Deterministic enumeration order.
    pub const ALL: [Letter; 4] = [Letter::A, Letter::AInv, Letter::B, Letter::BInv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    fn symbol(self) -> char {
        match self {
            Letter::A => 'A',
            Letter::AInv => 'a',
            Letter::B => 'B',
            Letter::BInv => 'b',
        }
    }
}

/// A freely reduced word in `A, B` and their inverses.
///
/// Written as a string, `A`/`B` are the generators and `a`/`b` their
/// inverses; the empty word prints as `1`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn new(letters: &[Letter]) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
        for &l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        GroupWord { letters: out }
    }

    pub fn letter(l: Letter) -> Self {
        GroupWord { letters: vec![l] }
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

    pub fn multiply(&self, other: &GroupWord) -> GroupWord {
        let mut all = self.letters.clone();
        all.extend_from_slice(&other.letters);
        GroupWord::new(&all)
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Word metric `d(u, v) = |u v^-1|`.
    pub fn distance(&self, other: &GroupWord) -> usize {
        self.multiply(&other.inverse()).len()
    }

    /// All reduced words of length exactly `len`, in deterministic order
    /// (shortlex with letter order `A, a, B, b`).
    pub fn all_of_length(len: usize) -> Vec<GroupWord> {
        let mut layer = vec![GroupWord::identity()];
        for _ in 0..len {
            let mut next = Vec::with_capacity(layer.len() * 3 + 1);
            for w in &layer {
                for l in Letter::ALL {
                    if w.letters.last() == Some(&l.inverse()) {
                        continue;
                    }
                    let mut letters = w.letters.clone();
                    letters.push(l);
                    next.push(GroupWord { letters });
                }
            }
            layer = next;
        }
        layer
    }

    /// All reduced words of length at most `len`, shortest first.
    pub fn all_up_to(len: usize) -> Vec<GroupWord> {
        (0..=len).flat_map(GroupWord::all_of_length).collect()
    }

    /// Number of reduced words of length exactly `len`: `4 * 3^(len - 1)`.
    pub fn count_of_length(len: usize) -> u64 {
        if len == 0 {
            1
        } else {
            4 * 3u64.pow(len as u32 - 1)
        }
    }

    pub fn count_up_to(len: usize) -> u64 {
        (0..=len).map(GroupWord::count_of_length).sum()
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            write!(f, "{}", l.symbol())?;
        }
        Ok(())
    }
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupWord({self})")
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(GroupWord::identity());
        }
        let letters = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .enumerate()
            .map(|(i, c)| match c {
                'A' => Ok(Letter::A),
                'a' => Ok(Letter::AInv),
                'B' => Ok(Letter::B),
                'b' => Ok(Letter::BInv),
                other => Err(Error::Syntax {
                    message: format!("unexpected `{other}` in word (use A, a, B, b)"),
                    line: 1,
                    column: i + 1,
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupWord::new(&letters))
    }
}
