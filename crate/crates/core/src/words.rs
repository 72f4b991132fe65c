//! Finite words over the alphabet `{-1, 0, +1}`.
//!
//! Positions are numbered from 0. The canonical text form writes one
//! character per letter: `+` for 1, `-` for -1 and `0` for 0.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("letter {value} at position {position} is outside {{-1, 0, 1}}")]
    OutOfAlphabet { position: usize, value: i64 },
    #[error("invalid character {ch:?} at position {position}, expected '+', '-' or '0'")]
    InvalidCharacter { position: usize, ch: char },
    #[error("operation requires a nonempty word")]
    EmptyWord,
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("no gapblocks: the word has no zero letter")]
    NoGapblocks,
    #[error("no nonzero letters")]
    NoNonzeroLetters,
}

/// A finite word over `{-1, 0, +1}`, stored as one signed byte per letter.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct TernaryWord {
    letters: Vec<i8>,
}

impl TernaryWord {
    /// Builds a word, rejecting any letter outside the alphabet.
    pub fn new(letters: Vec<i8>) -> Result<Self, WordError> {
        if let Some(position) = letters.iter().position(|&l| !(-1..=1).contains(&l)) {
            return Err(WordError::OutOfAlphabet {
                position,
                value: letters[position] as i64,
            });
        }
        Ok(Self { letters })
    }

    /// Builds a word from arbitrary integers, e.g. coefficients.
    pub fn from_integers<I: IntoIterator<Item = i64>>(values: I) -> Result<Self, WordError> {
        let mut letters = Vec::new();
        for (position, value) in values.into_iter().enumerate() {
            if !(-1..=1).contains(&value) {
                return Err(WordError::OutOfAlphabet { position, value });
            }
            letters.push(value as i8);
        }
        Ok(Self { letters })
    }

    pub(crate) fn from_letters_unchecked(letters: Vec<i8>) -> Self {
        debug_assert!(letters.iter().all(|l| (-1..=1).contains(l)));
        Self { letters }
    }

    /// The empty word ε.
    pub fn empty() -> Self {
        Self::default()
    }

    /// The word `0^n`.
    pub fn zeros(n: usize) -> Self {
        Self {
            letters: vec![0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// True when no letter is nonzero (this includes ε).
    pub fn is_zero(&self) -> bool {
        self.letters.iter().all(|&l| l == 0)
    }

    pub fn letters(&self) -> &[i8] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<i8> {
        self.letters
    }

    pub fn get(&self, position: usize) -> Option<i8> {
        self.letters.get(position).copied()
    }

    /// Sum of all letters.
    pub fn letter_sum(&self) -> i64 {
        self.letters.iter().map(|&l| l as i64).sum()
    }

    /// The subword `u[start..end]` (half-open).
    pub fn slice(&self, start: usize, end: usize) -> TernaryWord {
        Self::from_letters_unchecked(self.letters[start..end].to_vec())
    }

    pub fn concat(&self, other: &TernaryWord) -> TernaryWord {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Self::from_letters_unchecked(letters)
    }

    /// `u^s`, the concatenation of `s` copies; `u^0 = ε`.
    pub fn power(&self, s: usize) -> TernaryWord {
        Self::from_letters_unchecked(self.letters.repeat(s))
    }

    /// The fractional power `u^{k/|u|}`: the length-`k` prefix of `u u u ...`.
    pub fn fractional_power(&self, k: usize) -> Result<TernaryWord, WordError> {
        if self.is_empty() {
            return Err(WordError::EmptyWord);
        }
        let mut letters = Vec::with_capacity(k);
        self.write_fractional_power(k, &mut letters);
        Ok(Self::from_letters_unchecked(letters))
    }

    /// Appends `u^{k/|u|}` to `out`. The word must be nonempty.
    pub(crate) fn write_fractional_power(&self, k: usize, out: &mut Vec<i8>) {
        let n = self.len();
        for _ in 0..k / n {
            out.extend_from_slice(&self.letters);
        }
        out.extend_from_slice(&self.letters[..k % n]);
    }

    /// `σ^s(u)`: result `[j] = u[(j + s) mod |u|]`.
    pub fn rotate_left(&self, s: usize) -> Result<TernaryWord, WordError> {
        if self.is_empty() {
            return Err(WordError::EmptyWord);
        }
        let mut letters = self.letters.clone();
        letters.rotate_left(s % self.len());
        Ok(Self::from_letters_unchecked(letters))
    }

    pub fn reverse(&self) -> TernaryWord {
        let mut letters = self.letters.clone();
        letters.reverse();
        Self::from_letters_unchecked(letters)
    }

    /// Letterwise sum. Fails on a length mismatch or when some position
    /// sums to 2 or -2.
    pub fn add(&self, other: &TernaryWord) -> Result<TernaryWord, WordError> {
        if self.len() != other.len() {
            return Err(WordError::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        let letters = self
            .letters
            .iter()
            .zip(&other.letters)
            .enumerate()
            .map(|(position, (&a, &b))| {
                let value = a + b;
                if value.abs() > 1 {
                    Err(WordError::OutOfAlphabet {
                        position,
                        value: value as i64,
                    })
                } else {
                    Ok(value)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_letters_unchecked(letters))
    }

    /// Positions of the first and last nonzero letters.
    pub fn begin_end(&self) -> Result<(usize, usize), WordError> {
        let begin = self
            .letters
            .iter()
            .position(|&l| l != 0)
            .ok_or(WordError::NoNonzeroLetters)?;
        let end = self.letters.iter().rposition(|&l| l != 0).unwrap();
        Ok((begin, end))
    }

    /// `S_u(j) = u[0] + ... + u[j]` for every `j`.
    pub fn partial_sums(&self) -> Vec<i64> {
        self.letters
            .iter()
            .scan(0i64, |acc, &l| {
                *acc += l as i64;
                Some(*acc)
            })
            .collect()
    }

    /// Zero runs that have a nonzero letter on both sides, in order.
    pub fn interior_gapblocks(&self) -> InteriorGapblocks<'_> {
        InteriorGapblocks {
            letters: &self.letters,
            pos: 0,
            last_nonzero: None,
        }
    }

    /// Unique decomposition `u0 0^k1 u1 0^k2 ... 0^kt ut` with `u0`, `ut`
    /// possibly empty. Leading and trailing zero runs are gapblocks bounded
    /// by the ends of the word.
    pub fn gap_decomposition(&self) -> Result<GapDecomposition, WordError> {
        if !self.letters.contains(&0) {
            return Err(WordError::NoGapblocks);
        }
        let prefix_len = self.letters.iter().take_while(|&&l| l != 0).count();
        let prefix = self.slice(0, prefix_len);
        let mut blocks = Vec::new();
        let mut pos = prefix_len;
        while pos < self.len() {
            let start = pos;
            while pos < self.len() && self.letters[pos] == 0 {
                pos += 1;
            }
            let zeros = pos - start;
            let tail_start = pos;
            while pos < self.len() && self.letters[pos] != 0 {
                pos += 1;
            }
            blocks.push(Gapblock {
                start,
                zeros,
                tail: self.slice(tail_start, pos),
            });
        }
        Ok(GapDecomposition { prefix, blocks })
    }

    /// Gaps (zero-run length + 1) over the zero runs lying strictly between
    /// nonzero letters. The result is empty for words without such a run.
    pub fn gapset(&self) -> Result<Gapset, WordError> {
        if self.is_zero() {
            return Err(WordError::NoNonzeroLetters);
        }
        Ok(Gapset {
            gaps: self.interior_gapblocks().map(|g| g.gap()).collect(),
        })
    }
}

impl fmt::Display for TernaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: String = self
            .letters
            .iter()
            .map(|&l| match l {
                1 => '+',
                -1 => '-',
                _ => '0',
            })
            .collect();
        f.write_str(&text)
    }
}

impl fmt::Debug for TernaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TernaryWord({self})")
    }
}

impl FromStr for TernaryWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s
            .chars()
            .enumerate()
            .map(|(position, ch)| match ch {
                '+' => Ok(1),
                '-' => Ok(-1),
                '0' => Ok(0),
                _ => Err(WordError::InvalidCharacter { position, ch }),
            })
            .collect::<Result<Vec<i8>, _>>()?;
        Ok(Self { letters })
    }
}

/// A zero run `0^zeros` starting at `start`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GapRun {
    pub start: usize,
    pub zeros: usize,
}

impl GapRun {
    pub fn gap(&self) -> usize {
        self.zeros + 1
    }

    /// Index of the last zero of the run.
    pub fn last(&self) -> usize {
        self.start + self.zeros - 1
    }
}

pub struct InteriorGapblocks<'a> {
    letters: &'a [i8],
    pos: usize,
    last_nonzero: Option<usize>,
}

impl Iterator for InteriorGapblocks<'_> {
    type Item = GapRun;

    fn next(&mut self) -> Option<GapRun> {
        while self.pos < self.letters.len() {
            let j = self.pos;
            self.pos += 1;
            if self.letters[j] == 0 {
                continue;
            }
            let prev = self.last_nonzero.replace(j);
            if let Some(prev) = prev {
                if j - prev >= 2 {
                    return Some(GapRun {
                        start: prev + 1,
                        zeros: j - prev - 1,
                    });
                }
            }
        }
        None
    }
}

/// One gapblock together with the nonzero block that follows it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gapblock {
    pub start: usize,
    pub zeros: usize,
    /// Nonzero letters after the zero run; empty only for a trailing run.
    pub tail: TernaryWord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapDecomposition {
    /// Leading nonzero block, possibly empty.
    pub prefix: TernaryWord,
    pub blocks: Vec<Gapblock>,
}

impl GapDecomposition {
    /// Re-concatenates the pieces.
    pub fn to_word(&self) -> TernaryWord {
        let mut letters = self.prefix.letters().to_vec();
        for block in &self.blocks {
            letters.extend(std::iter::repeat_n(0, block.zeros));
            letters.extend_from_slice(block.tail.letters());
        }
        TernaryWord::from_letters_unchecked(letters)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Gapset {
    gaps: BTreeSet<usize>,
}

impl Gapset {
    pub fn from_gaps<I: IntoIterator<Item = usize>>(gaps: I) -> Self {
        Self {
            gaps: gaps.into_iter().collect(),
        }
    }

    pub fn gaps(&self) -> &BTreeSet<usize> {
        &self.gaps
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn contains(&self, gap: usize) -> bool {
        self.gaps.contains(&gap)
    }

    /// First (maximum) gap.
    pub fn g1(&self) -> Option<usize> {
        self.gaps.last().copied()
    }

    /// Second gap: the largest gap below `g1`.
    pub fn g2(&self) -> Option<usize> {
        self.gaps.iter().rev().nth(1).copied()
    }
}
