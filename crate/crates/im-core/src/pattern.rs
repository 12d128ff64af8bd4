//! Activation patterns and the index-bits mapping.
//!
//! A pattern is a length-`n` binary vector of weight `w` marking which
//! antennas (or subcarrier cells) are active. The canonical order over
//! all `C(n, w)` patterns is combinadic: lexicographic over ascending
//! support sets, so rank 0 is `[1,1,..,1,0,..,0]`. A [`PatternSet`]
//! keeps the `2^K` patterns (K = ⌊log2 C(n,w)⌋) actually used for index
//! bits, either the canonical prefix or an explicit override list.

use std::collections::HashMap;

use crate::combin::{binomial, floor_log2};
use crate::{bits_to_index, index_to_bits, ImError};

/// Guard for full enumerations; rank/unrank stay available beyond it.
const ENUMERATION_GUARD: u128 = 1 << 20;

/// The weight-`w` pattern of length `n` at `rank` in combinadic order.
pub fn unrank_pattern(n: usize, w: usize, rank: u128) -> Result<Vec<bool>, ImError> {
    check_weight(n, w)?;
    if rank >= binomial(n, w)? {
        return Err(ImError::RankOutOfRange { n, w, rank });
    }
    let mut pattern = vec![false; n];
    let mut remaining = w;
    let mut r = rank;
    for pos in 0..n {
        if remaining == 0 {
            break;
        }
        // Number of completions that keep position `pos` active.
        let with_pos = binomial(n - pos - 1, remaining - 1)?;
        if r < with_pos {
            pattern[pos] = true;
            remaining -= 1;
        } else {
            r -= with_pos;
        }
    }
    Ok(pattern)
}

/// Inverse of [`unrank_pattern`]: the combinadic rank of a pattern.
pub fn rank_pattern(pattern: &[bool]) -> Result<u128, ImError> {
    let n = pattern.len();
    let w = pattern.iter().filter(|&&b| b).count();
    check_weight(n, w)?;
    let mut rank: u128 = 0;
    let mut remaining = w;
    for pos in 0..n {
        if remaining == 0 {
            break;
        }
        if pattern[pos] {
            remaining -= 1;
        } else {
            rank += binomial(n - pos - 1, remaining - 1)?;
        }
    }
    Ok(rank)
}

/// All `C(n, w)` weight-`w` patterns in canonical combinadic order.
pub fn enumerate_patterns(n: usize, w: usize) -> Result<Vec<Vec<bool>>, ImError> {
    check_weight(n, w)?;
    let count = binomial(n, w)?;
    if count > ENUMERATION_GUARD {
        return Err(ImError::EnumerationTooLarge {
            count,
            max: ENUMERATION_GUARD,
        });
    }
    (0..count).map(|r| unrank_pattern(n, w, r)).collect()
}

fn check_weight(n: usize, w: usize) -> Result<(), ImError> {
    if w < 1 || w > n {
        return Err(ImError::InvalidWeight { n, w });
    }
    Ok(())
}

/// The `2^K` activation patterns used for index bits, with the
/// bits ↔ pattern bijection (bit strings read most significant first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternSet {
    n: usize,
    w: usize,
    index_bits: usize,
    patterns: Vec<Vec<bool>>,
    lookup: HashMap<Vec<bool>, usize>,
}

impl PatternSet {
    /// Canonical set: the first `2^K` patterns in combinadic order.
    pub fn new(n: usize, w: usize) -> Result<Self, ImError> {
        check_weight(n, w)?;
        let index_bits = floor_log2(binomial(n, w)?) as usize;
        let patterns: Vec<Vec<bool>> = (0..1u128 << index_bits)
            .map(|r| unrank_pattern(n, w, r))
            .collect::<Result<_, _>>()?;
        Ok(Self::assemble(n, w, index_bits, patterns))
    }

    /// Set built from an explicit pattern list; the list must hold a
    /// power-of-two count of distinct weight-`w` patterns (the count sets
    /// `K`, so a deliberately smaller codebook than [`PatternSet::new`]'s
    /// is allowed).
    pub fn with_override(n: usize, w: usize, patterns: &[Vec<bool>]) -> Result<Self, ImError> {
        check_weight(n, w)?;
        let max = binomial(n, w)?.min(ENUMERATION_GUARD) as usize;
        let got = patterns.len();
        if got < 1 || !got.is_power_of_two() || got > max {
            return Err(ImError::OverrideSize { max, got });
        }
        let index_bits = got.trailing_zeros() as usize;
        let mut seen = HashMap::new();
        for (index, p) in patterns.iter().enumerate() {
            if p.len() != n || p.iter().filter(|&&b| b).count() != w {
                return Err(ImError::BadOverridePattern { index });
            }
            if seen.insert(p.clone(), index).is_some() {
                return Err(ImError::DuplicatePattern { index });
            }
        }
        Ok(Self::assemble(n, w, index_bits, patterns.to_vec()))
    }

    fn assemble(n: usize, w: usize, index_bits: usize, patterns: Vec<Vec<bool>>) -> Self {
        let lookup = patterns
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        Self {
            n,
            w,
            index_bits,
            patterns,
            lookup,
        }
    }

    /// Pattern length `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Pattern weight `w` (number of active entities).
    pub fn w(&self) -> usize {
        self.w
    }

    /// Number of index bits `K = ⌊log2 C(n, w)⌋`.
    pub fn index_bits(&self) -> usize {
        self.index_bits
    }

    /// Number of patterns, always `2^K`.
    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    /// True only for the degenerate case that cannot occur (`2^K >= 1`).
    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// The pattern at `index` in set order.
    pub fn pattern(&self, index: usize) -> &[bool] {
        &self.patterns[index]
    }

    /// All patterns in set order.
    pub fn patterns(&self) -> &[Vec<bool>] {
        &self.patterns
    }

    /// Maps a `K`-bit string (MSB first) to its pattern.
    pub fn bits_to_pattern(&self, bits: &[bool]) -> Result<&[bool], ImError> {
        if bits.len() != self.index_bits {
            return Err(ImError::BitLength {
                expected: self.index_bits,
                got: bits.len(),
            });
        }
        Ok(&self.patterns[bits_to_index(bits)])
    }

    /// Index of a pattern in this set, if present.
    pub fn index_of(&self, pattern: &[bool]) -> Option<usize> {
        self.lookup.get(pattern).copied()
    }

    /// True if the pattern belongs to the set.
    pub fn contains(&self, pattern: &[bool]) -> bool {
        self.lookup.contains_key(pattern)
    }

    /// Inverse of [`bits_to_pattern`]; rejects supports outside the set.
    pub fn pattern_to_bits(&self, pattern: &[bool]) -> Result<Vec<bool>, ImError> {
        let index = self.index_of(pattern).ok_or(ImError::UnknownPattern)?;
        Ok(index_to_bits(index, self.index_bits))
    }

    /// Active positions of the pattern at `index`, ascending.
    pub fn support(&self, index: usize) -> Vec<usize> {
        support_of(&self.patterns[index])
    }

    /// Serializes the set as one `0`/`1` string per line, first character
    /// = entity 1 (lowest index), in set order.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.patterns.len() * (self.n + 1));
        for p in &self.patterns {
            for &b in p {
                out.push(if b { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    /// Parses the [`to_text`](Self::to_text) format; the line order
    /// becomes the set order (an override set).
    pub fn from_text(text: &str) -> Result<Self, ImError> {
        let mut patterns: Vec<Vec<bool>> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut p = Vec::with_capacity(line.len());
            for c in line.chars() {
                match c {
                    '0' => p.push(false),
                    '1' => p.push(true),
                    _ => {
                        return Err(ImError::PatternText {
                            line: i + 1,
                            reason: format!("unexpected character {c:?}"),
                        })
                    }
                }
            }
            patterns.push(p);
        }
        let first = patterns.first().ok_or(ImError::PatternText {
            line: 1,
            reason: "no patterns".into(),
        })?;
        let n = first.len();
        let w = first.iter().filter(|&&b| b).count();
        Self::with_override(n, w, &patterns)
    }
}

/// Active positions of a pattern, ascending.
pub fn support_of(pattern: &[bool]) -> Vec<usize> {
    pattern
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i))
        .collect()
}
