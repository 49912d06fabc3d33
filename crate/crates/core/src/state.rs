//! Points of the Boolean hypercube.
//!
//! A [`State`] packs coordinate `i` into bit `i` of a 32-bit word. In every
//! human-readable rendering coordinate 0 is the leftmost character, so the
//! state with only coordinate 0 set prints as `100` in dimension 3.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Exhaustive sweeps refuse dimensions above this unless forced.
pub const DEFAULT_MAX_DIM: usize = 24;

/// Largest dimension representable at all (state words are 32 bits wide and
/// the network stores one image word per state).
pub const HARD_MAX_DIM: usize = 30;

/// Checks `n` against the sweep guard.
pub fn check_dim(n: usize, force: bool) -> Result<()> {
    let limit = if force { HARD_MAX_DIM } else { DEFAULT_MAX_DIM };
    if n > limit {
        return Err(Error::DimensionGuard { n, limit });
    }
    Ok(())
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Indices of the set bits of `mask`, ascending.
pub fn mask_indices(mask: u32) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct State {
    dim: u8,
    word: u32,
}

impl State {
    pub fn new(word: u32, dim: usize) -> Result<Self> {
        if dim > HARD_MAX_DIM {
            return Err(Error::InvalidDimension(dim));
        }
        if word & !full_mask(dim) != 0 {
            return Err(Error::StrayBits {
                word: word as u64,
                n: dim,
            });
        }
        Ok(State {
            dim: dim as u8,
            word,
        })
    }

    /// Caller guarantees `word` fits in `dim` bits.
    #[inline]
    pub(crate) fn from_word(word: u32, dim: usize) -> Self {
        debug_assert!(word & !full_mask(dim) == 0);
        State {
            dim: dim as u8,
            word,
        }
    }

    pub fn zero(dim: usize) -> Self {
        State::from_word(0, dim)
    }

    /// The point `e^I`: ones exactly on `indices`.
    pub fn from_indices(dim: usize, indices: &[usize]) -> Result<Self> {
        let mut word = 0u32;
        for &i in indices {
            if i >= dim {
                return Err(Error::IndexOutOfRange { index: i, n: dim });
            }
            word ^= 1 << i;
        }
        State::new(word, dim)
    }

    #[inline]
    pub fn word(&self) -> u32 {
        self.word
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    #[inline]
    pub fn bit(&self, i: usize) -> bool {
        (self.word >> i) & 1 == 1
    }

    /// `x + e^i`.
    pub fn flip(&self, i: usize) -> Result<Self> {
        if i >= self.dim() {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.dim(),
            });
        }
        Ok(State::from_word(self.word ^ (1 << i), self.dim()))
    }

    /// `x + e^I`.
    pub fn flip_all(&self, indices: &[usize]) -> Result<Self> {
        let e = State::from_indices(self.dim(), indices)?;
        Ok(State::from_word(self.word ^ e.word, self.dim()))
    }

    pub fn ones(&self) -> Vec<usize> {
        mask_indices(self.word)
    }

    pub fn antipode(&self) -> Self {
        State::from_word(self.word ^ full_mask(self.dim()), self.dim())
    }

    pub fn hamming(&self, other: &State) -> Result<usize> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok((self.word ^ other.word).count_ones() as usize)
    }

    /// Bitstring with coordinate 0 leftmost.
    pub fn to_bitstring(&self) -> String {
        (0..self.dim())
            .map(|i| if self.bit(i) { '1' } else { '0' })
            .collect()
    }
}

/// Hamming distance between two states of the same dimension.
pub fn hamming(x: &State, y: &State) -> Result<usize> {
    x.hamming(y)
}

pub fn antipode(x: &State) -> State {
    x.antipode()
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bitstring())
    }
}

impl FromStr for State {
    type Err = Error;

    /// Parses a bitstring, coordinate 0 leftmost.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.len() > HARD_MAX_DIM {
            return Err(Error::InvalidDimension(s.len()));
        }
        let mut word = 0u32;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => word |= 1 << i,
                _ => return Err(Error::Format(format!("invalid state bitstring {s:?}"))),
            }
        }
        State::new(word, s.len())
    }
}

impl Serialize for State {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_bitstring())
    }
}

/// A state in JSON output: bitstring plus integer word.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct StateRecord {
    pub bits: String,
    pub word: u32,
}

impl From<&State> for StateRecord {
    fn from(s: &State) -> Self {
        StateRecord {
            bits: s.to_bitstring(),
            word: s.word(),
        }
    }
}
