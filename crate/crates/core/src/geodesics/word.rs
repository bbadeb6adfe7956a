//! Words in the generators of a group and their inverses.
//!
//! Letter `2i` is generator `i`, letter `2i + 1` its inverse. Words print
//! with lowercase letters for generators and uppercase for inverses, so the
//! genus-2 generators `a1, b1, a2, b2` read `a b c d` and `aB` is `a1 b1⁻¹`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Letter = u8;

/// Largest generator count a word can address.
pub const MAX_GENERATORS: usize = 26;

#[inline]
pub fn inverse_letter(l: Letter) -> Letter {
    l ^ 1
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(SmallVec<[Letter; 16]>);

impl Word {
    pub fn new() -> Self {
        Word(SmallVec::new())
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Word(SmallVec::from_slice(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn pop(&mut self) -> Option<Letter> {
        self.0.pop()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| inverse_letter(l)).collect())
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[1] != inverse_letter(w[0]))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_freely_reduced()
            && match (self.0.first(), self.0.last()) {
                (Some(&f), Some(&l)) => self.0.len() == 1 || l != inverse_letter(f),
                _ => true,
            }
    }

    pub fn free_reduce(&self) -> Word {
        let mut out: SmallVec<[Letter; 16]> = SmallVec::new();
        for &l in &self.0 {
            if out.last() == Some(&inverse_letter(l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Free reduction followed by cancelling matching first/last letters.
    pub fn cyclic_reduce(&self) -> Word {
        let w = self.free_reduce();
        let s = &w.0;
        let (mut i, mut j) = (0usize, s.len());
        while j - i >= 2 && s[j - 1] == inverse_letter(s[i]) {
            i += 1;
            j -= 1;
        }
        Word::from_letters(&s[i..j])
    }

    /// Lexicographically least rotation.
    pub fn canonical_rotation(&self) -> Word {
        let n = self.0.len();
        if n == 0 {
            return self.clone();
        }
        let best = (0..n)
            .min_by(|&i, &j| {
                for k in 0..n {
                    match self.0[(i + k) % n].cmp(&self.0[(j + k) % n]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            })
            .unwrap_or(0);
        let mut out = SmallVec::with_capacity(n);
        out.extend((0..n).map(|k| self.0[(best + k) % n]));
        Word(out)
    }

    /// Smallest `p` dividing `len` with `w = u^(len/p)`, `|u| = p`.
    pub fn primitive_period(&self) -> usize {
        let n = self.0.len();
        (1..=n)
            .find(|&p| n % p == 0 && (p..n).all(|i| self.0[i] == self.0[i - p]))
            .unwrap_or(n)
    }

    pub fn is_proper_power(&self) -> bool {
        !self.0.is_empty() && self.primitive_period() < self.0.len()
    }
}

/// Ordering used for spectrum tie-breaks: shorter first, then by letters.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.0 {
            let base = if l & 1 == 0 { b'a' } else { b'A' };
            write!(f, "{}", (base + l / 2) as char)?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let mut w = Word::new();
        for ch in s.trim().chars() {
            let l = match ch {
                'a'..='z' => 2 * (ch as u8 - b'a'),
                'A'..='Z' => 2 * (ch as u8 - b'A') + 1,
                _ => return Err(Error::Parse(format!("invalid letter {ch:?} in word {s:?}"))),
            };
            w.push(l);
        }
        Ok(w)
    }
}
