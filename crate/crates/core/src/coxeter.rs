//! Words in the symmetric group S_r with adjacent transpositions T_1,…,T_{r-1}.
//!
//! A [`Word`] is a sequence of generator indices. [`evaluate`] applies the
//! letters left to right as position swaps, which composes the generators with
//! the leftmost outermost: the word (i_1,…,i_d) evaluates to s_{i_1}∘…∘s_{i_d}.
//! Reducedness has two independent characterizations — no repeated reflection
//! in [`reflection_sequence`], and word length equal to the inversion count of
//! the evaluation — and both are exposed so they can be checked against each
//! other.

use itertools::Itertools;
use std::fmt;

use crate::Error;

/// A permutation of 1..=r in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(r: usize) -> Permutation {
        Permutation { images: (1..=r).collect() }
    }

    /// Build from one-line notation; must be a bijection on 1..=r.
    pub fn from_images(images: Vec<usize>) -> Result<Permutation, Error> {
        let r = images.len();
        let mut seen = vec![false; r];
        for &x in &images {
            if x == 0 || x > r {
                return Err(Error::InvalidWord(format!("image {x} outside 1..={r}")));
            }
            if seen[x - 1] {
                return Err(Error::InvalidWord(format!("image {x} repeated")));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn r(&self) -> usize {
        self.images.len()
    }

    /// Image of k (1-based).
    pub fn image(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// (self ∘ other)(k) = self(other(k)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.r(), other.r());
        Permutation { images: (1..=self.r()).map(|k| self.image(other.image(k))).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.r()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Number of pairs i < j with image(i) > image(j).
    pub fn inversions(&self) -> usize {
        let r = self.r();
        (1..=r)
            .flat_map(|i| (i + 1..=r).map(move |j| (i, j)))
            .filter(|&(i, j)| self.image(i) > self.image(j))
            .count()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.images.iter().join(","))
    }
}

/// A word in the generators: letters i mean T_i (swap positions i, i+1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<usize>,
}

impl Word {
    pub fn new(letters: Vec<usize>) -> Result<Word, Error> {
        if letters.contains(&0) {
            return Err(Error::InvalidWord("generator indices start at 1".into()));
        }
        Ok(Word { letters })
    }

    pub fn empty() -> Word {
        Word { letters: Vec::new() }
    }

    /// Parse a comma-separated letter list, e.g. "1,2,3,1,2,1"; "" or "ε" is
    /// the empty word.
    pub fn parse(text: &str) -> Result<Word, Error> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        for tok in text.split(',') {
            let i: usize = tok
                .trim()
                .parse()
                .map_err(|_| Error::InvalidWord(format!("bad letter {tok:?}")))?;
            letters.push(i);
        }
        Word::new(letters)
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index, or 0 for the empty word.
    pub fn max_letter(&self) -> usize {
        self.letters.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            write!(f, "ε")
        } else {
            write!(f, "{}", self.letters.iter().join(","))
        }
    }
}

fn check_rank(word: &Word, r: usize) -> Result<(), Error> {
    if r == 0 {
        return Err(Error::InvalidWord("rank must be at least 1".into()));
    }
    if word.max_letter() >= r {
        return Err(Error::InvalidWord(format!(
            "letter {} needs rank at least {}, got {r}",
            word.max_letter(),
            word.max_letter() + 1
        )));
    }
    Ok(())
}

/// Evaluate a word by applying its letters left to right as position swaps of
/// the sequence (1,…,r). The result is s_{i_1}∘s_{i_2}∘…∘s_{i_d}.
pub fn evaluate(word: &Word, r: usize) -> Result<Permutation, Error> {
    check_rank(word, r)?;
    let mut seq: Vec<usize> = (1..=r).collect();
    for &i in word.letters() {
        seq.swap(i - 1, i);
    }
    Ok(Permutation { images: seq })
}

/// The reflection of each step: at step t the unordered pair of values sitting
/// in positions i_t, i_t+1 just before the swap.
pub fn reflection_sequence(word: &Word, r: usize) -> Result<Vec<(usize, usize)>, Error> {
    check_rank(word, r)?;
    let mut seq: Vec<usize> = (1..=r).collect();
    let mut reflections = Vec::with_capacity(word.len());
    for &i in word.letters() {
        let (a, b) = (seq[i - 1], seq[i]);
        reflections.push((a.min(b), a.max(b)));
        seq.swap(i - 1, i);
    }
    Ok(reflections)
}

/// Reduced ⟺ no reflection repeats (no pair of wires crosses twice).
pub fn is_reduced(word: &Word, r: usize) -> Result<bool, Error> {
    let refl = reflection_sequence(word, r)?;
    Ok(refl.iter().unique().count() == refl.len())
}

/// Reduced ⟺ the word is as short as possible: length equals the inversion
/// count of its evaluation. Independent of [`is_reduced`]; they always agree.
pub fn is_reduced_by_length(word: &Word, r: usize) -> Result<bool, Error> {
    Ok(word.len() == evaluate(word, r)?.inversions())
}

/// The wiring diagram of a word: r wires, one crossing per letter.
#[derive(Clone, Debug)]
pub struct WiringDiagram {
    r: usize,
    word: Word,
    crossings: Vec<(usize, usize)>,
    final_order: Vec<usize>,
}

impl WiringDiagram {
    pub fn new(word: &Word, r: usize) -> Result<WiringDiagram, Error> {
        let crossings = reflection_sequence(word, r)?;
        let final_order = evaluate(word, r)?.images().to_vec();
        Ok(WiringDiagram { r, word: word.clone(), crossings, final_order })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Wire pairs in crossing order (= the reflection sequence).
    pub fn crossings(&self) -> &[(usize, usize)] {
        &self.crossings
    }

    /// Wire numbers at the right edge, top to bottom (= the evaluation).
    pub fn final_order(&self) -> &[usize] {
        &self.final_order
    }

    /// Wire pairs that cross more than once (nonempty ⟺ word not reduced).
    pub fn double_crossings(&self) -> Vec<(usize, usize)> {
        self.crossings
            .iter()
            .copied()
            .counts()
            .into_iter()
            .filter(|&(_, c)| c > 1)
            .map(|(p, _)| p)
            .sorted()
            .collect()
    }

    /// ASCII picture: r wire rows interleaved with r-1 gap rows; each letter
    /// becomes a `\ /` … `X` … `/ \` crossing at its track.
    pub fn render(&self) -> String {
        let r = self.r;
        let wid = r.to_string().len();
        let mut wire: Vec<String> = (1..=r).map(|j| format!("{j:>wid$} ─")).collect();
        let mut gap: Vec<String> = vec![" ".repeat(wid + 2); r.saturating_sub(1)];
        for &i in self.word.letters() {
            for (j, row) in wire.iter_mut().enumerate() {
                let piece = match j + 1 {
                    t if t == i => "\\ /",
                    t if t == i + 1 => "/ \\",
                    _ => "───",
                };
                row.push_str(piece);
                row.push('─');
            }
            for (g, row) in gap.iter_mut().enumerate() {
                row.push_str(if g + 1 == i { " X " } else { "   " });
                row.push(' ');
            }
        }
        for (j, row) in wire.iter_mut().enumerate() {
            row.push_str(&format!(" {}", self.final_order[j]));
        }
        let mut lines = Vec::with_capacity(2 * r - 1);
        for j in 0..r {
            lines.push(wire[j].clone());
            if j + 1 < r {
                lines.push(gap[j].trim_end().to_string());
            }
        }
        lines.join("\n")
    }
}
