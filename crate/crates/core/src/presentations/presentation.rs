use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A word in the generators: `+(i+1)` is generator `i`, `-(i+1)` its inverse.
pub type Word = Vec<i32>;

/// Finite presentation `⟨x_0, …, x_{n-1} | relators⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    ngens: usize,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(ngens: usize, relators: Vec<Word>) -> Result<Self> {
        for (k, w) in relators.iter().enumerate() {
            if w.is_empty() {
                return Err(Error::domain(format!("relator {k} is empty")));
            }
            if let Some(&l) = w.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > ngens) {
                return Err(Error::domain(format!("letter {l} out of range in relator {k}")));
            }
        }
        Ok(Presentation { ngens, relators })
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Same presentation with generator `i` renamed to `sigma[i]`.
    pub fn relabel(&self, sigma: &[usize]) -> Result<Presentation> {
        if sigma.len() != self.ngens {
            return Err(Error::domain("relabeling has the wrong length"));
        }
        let relators = self
            .relators
            .iter()
            .map(|w| {
                w.iter()
                    .map(|&l| l.signum() * (sigma[l.unsigned_abs() as usize - 1] as i32 + 1))
                    .collect()
            })
            .collect();
        Presentation::new(self.ngens, relators)
    }

    /// Text form: `gens d`, then one relator per line in letters `a, b, …`
    /// with uppercase for inverses.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "gens {}", self.ngens).unwrap();
        for w in &self.relators {
            writeln!(out, "{}", word_to_letters(w)).unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
        let ngens: usize = header
            .strip_prefix("gens")
            .map(str::trim)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::parse(ln, format!("expected \"gens d\", found {header:?}")))?;
        if ngens > 26 {
            return Err(Error::parse(ln, "at most 26 generators can be written as letters"));
        }
        let mut relators = Vec::new();
        for (ln, line) in lines {
            let mut w = Word::new();
            for ch in line.chars() {
                let (idx, sign) = match ch {
                    'a'..='z' => (ch as i32 - 'a' as i32, 1),
                    'A'..='Z' => (ch as i32 - 'A' as i32, -1),
                    _ => return Err(Error::parse(ln, format!("unexpected character {ch:?}"))),
                };
                if idx as usize >= ngens {
                    return Err(Error::parse(ln, format!("letter {ch:?} beyond {ngens} generators")));
                }
                w.push(sign * (idx + 1));
            }
            relators.push(w);
        }
        Presentation::new(ngens, relators)
    }
}

pub fn word_to_letters(w: &[i32]) -> String {
    w.iter()
        .map(|&l| {
            let base = if l > 0 { b'a' } else { b'A' };
            (base + (l.unsigned_abs() as u8 - 1)) as char
        })
        .collect()
}

pub fn inverse_word(w: &[i32]) -> Word {
    w.iter().rev().map(|&l| -l).collect()
}

/// Cancel adjacent inverse pairs.
pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// `[u, v] = u⁻¹v⁻¹uv`, freely reduced.
pub fn commutator_word(u: &[i32], v: &[i32]) -> Word {
    let mut w = inverse_word(u);
    w.extend(inverse_word(v));
    w.extend_from_slice(u);
    w.extend_from_slice(v);
    free_reduce(&w)
}

/// Left-normed commutator `[g_1, …, g_k] = [[g_1, …, g_{k-1}], g_k]` of
/// generator indices.
pub fn left_normed_commutator(gens: &[usize]) -> Word {
    let mut w: Word = match gens.first() {
        Some(&g) => vec![g as i32 + 1],
        None => return Word::new(),
    };
    for &g in &gens[1..] {
        w = commutator_word(&w, &[g as i32 + 1]);
    }
    w
}
