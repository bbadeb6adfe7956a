use super::group::GroupPresentation;
use super::matrix::Mat2;
use super::word::{inverse_letter, Letter, Word};
use crate::error::{Error, Result};
use crate::exec::Execution;

/// Default cap on the number of `(word, matrix)` pairs materialised.
pub const ELEMENT_BUDGET: usize = 16_000_000;

/// Number of freely reduced words of length `1..=max_len` over `2k` letters:
/// `Σ 2k (2k-1)^(n-1)`.
pub fn reduced_word_count(alphabet: usize, max_len: usize) -> u128 {
    let a = alphabet as u128;
    let mut total = 0u128;
    let mut level = a;
    for _ in 0..max_len {
        total = total.saturating_add(level);
        level = level.saturating_mul(a.saturating_sub(1));
    }
    total
}

pub fn enumerate_elements(group: &GroupPresentation, max_len: usize) -> Result<Vec<(Word, Mat2)>> {
    enumerate_elements_with(group, max_len, ELEMENT_BUDGET, Execution::default())
}

/// Every freely reduced word up to `max_len` letters with its matrix, in
/// depth-first order by first letter.
pub fn enumerate_elements_with(
    group: &GroupPresentation,
    max_len: usize,
    budget: usize,
    exec: Execution,
) -> Result<Vec<(Word, Mat2)>> {
    let requested = reduced_word_count(group.alphabet_size(), max_len);
    if requested > budget as u128 {
        return Err(Error::ResourceLimit { requested, budget });
    }
    if max_len == 0 {
        return Ok(Vec::new());
    }
    let letters = group.letter_matrices();
    let firsts: Vec<Letter> = (0..letters.len() as Letter).collect();
    let parts = exec.map(&firsts, |&first| {
        let mut out = Vec::new();
        let mut word = Word::new();
        word.push(first);
        walk_all(&letters, max_len, &mut word, letters[first as usize], &mut out);
        out
    });
    Ok(parts.into_iter().flatten().collect())
}

fn walk_all(letters: &[Mat2], max_len: usize, word: &mut Word, m: Mat2, out: &mut Vec<(Word, Mat2)>) {
    out.push((word.clone(), m));
    if word.len() == max_len {
        return;
    }
    let last = *word.letters().last().expect("non-empty");
    for c in 0..letters.len() as Letter {
        if c == inverse_letter(last) {
            continue;
        }
        word.push(c);
        walk_all(letters, max_len, word, m * letters[c as usize], out);
        word.pop();
    }
}

/// A cyclically reduced necklace (least rotation) with small enough trace.
#[derive(Clone, Debug)]
pub(crate) struct Candidate {
    pub word: Word,
    pub trace: f64,
    /// Aperiodic necklace, i.e. not a proper power of a shorter word.
    pub lyndon: bool,
}

const MAX_DEPTH: usize = 64;

struct NecklaceWalk<'a> {
    letters: &'a [Mat2],
    max_len: usize,
    min_trace: f64,
    max_trace: f64,
    word: [Letter; MAX_DEPTH],
    out: Vec<Candidate>,
}

impl NecklaceWalk<'_> {
    #[inline]
    fn keep(&mut self, n: usize, p: usize, trace: f64) {
        let tr = trace.abs();
        if tr > self.min_trace && tr <= self.max_trace {
            self.out.push(Candidate {
                word: Word::from_letters(&self.word[..n]),
                trace: tr,
                lyndon: p == n,
            });
        }
    }

    /// Visits the prenecklace `word[..n]` with period `p` and product `m`.
    /// Letters below `word[n - p]` cannot extend a prenecklace, so the walk
    /// only ever touches prefixes of least rotations.
    fn visit(&mut self, n: usize, p: usize, m: Mat2) {
        let first = self.word[0];
        if n % p == 0 && (n == 1 || self.word[n - 1] != inverse_letter(first)) {
            self.keep(n, p, m.trace());
        }
        if n == self.max_len {
            return;
        }
        let forbid = inverse_letter(self.word[n - 1]);
        let floor = self.word[n - p];
        let leaf = n + 1 == self.max_len;
        for c in floor..self.letters.len() as Letter {
            if c == forbid {
                continue;
            }
            let np = if c == floor { p } else { n + 1 };
            let g = &self.letters[c as usize];
            if leaf {
                // Only the trace of the child is needed.
                if (n + 1) % np == 0 && c != inverse_letter(first) {
                    let tr = m.a * g.a + m.b * g.c + m.c * g.b + m.d * g.d;
                    self.word[n] = c;
                    self.keep(n + 1, np, tr);
                }
            } else {
                self.word[n] = c;
                self.visit(n + 1, np, m * *g);
            }
        }
    }
}

/// All cyclically reduced necklaces of length `1..=max_len` whose trace lies
/// in `(min_trace, max_trace]`, partitioned by two-letter prefix.
pub(crate) fn necklace_candidates(
    group: &GroupPresentation,
    max_len: usize,
    min_trace: f64,
    max_trace: f64,
    exec: Execution,
) -> Vec<Candidate> {
    if max_len == 0 {
        return Vec::new();
    }
    assert!(max_len < MAX_DEPTH, "word length cutoff {max_len} too large");
    let letters = group.letter_matrices();
    let k = letters.len() as Letter;
    // Prenecklace prefixes of length two: (a, b) with b >= a, b != a⁻¹.
    let mut prefixes: Vec<(Letter, Option<Letter>)> = Vec::new();
    for a in 0..k {
        prefixes.push((a, None));
        if max_len >= 2 {
            for b in a..k {
                if b != inverse_letter(a) {
                    prefixes.push((a, Some(b)));
                }
            }
        }
    }
    let parts = exec.map(&prefixes, |&(a, b)| {
        let mut walk = NecklaceWalk {
            letters: &letters,
            max_len,
            min_trace,
            max_trace,
            word: [0; MAX_DEPTH],
            out: Vec::new(),
        };
        walk.word[0] = a;
        let ma = letters[a as usize];
        match b {
            None => {
                let tr = ma.trace();
                walk.keep(1, 1, tr);
            }
            Some(b) => {
                walk.word[1] = b;
                let p = if b == a { 1 } else { 2 };
                walk.visit(2, p, ma * letters[b as usize]);
            }
        }
        walk.out
    });
    parts.into_iter().flatten().collect()
}
