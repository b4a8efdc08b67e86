//! Binary words: codewords, received words, error indicators, syndromes.

use std::fmt;
use std::str::FromStr;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A fixed-length word over {0,1}. Ordering is lexicographic on the bit
/// string, which is what every tie-break in this crate relies on.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitWord {
    bits: Vec<bool>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("word may only contain '0' and '1', got {0:?}")]
    BadCharacter(char),
    #[error("index {index} out of range for word of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
}

impl BitWord {
    pub fn zero(len: usize) -> Self {
        BitWord {
            bits: vec![false; len],
        }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BitWord { bits }
    }

    pub fn from_support(len: usize, support: &[usize]) -> Result<Self, WordError> {
        let mut w = BitWord::zero(len);
        for &i in support {
            if i >= len {
                return Err(WordError::IndexOutOfRange { index: i, len });
            }
            w.bits[i] = true;
        }
        Ok(w)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn set(&mut self, i: usize, value: bool) {
        self.bits[i] = value;
    }

    pub fn flip(&mut self, i: usize) {
        self.bits[i] = !self.bits[i];
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.bits.len()).filter(|&i| self.bits[i]).collect()
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&b| !b)
    }

    /// Hamming distance; both words must have equal length.
    pub fn dist(&self, other: &BitWord) -> usize {
        assert_eq!(self.len(), other.len(), "dist on words of unequal length");
        self.bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count()
    }

    pub fn xor(&self, other: &BitWord) -> BitWord {
        assert_eq!(self.len(), other.len(), "xor on words of unequal length");
        BitWord {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a != b)
                .collect(),
        }
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, WordError> {
        let mut bits = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => return Err(WordError::BadCharacter(other)),
            }
        }
        Ok(BitWord { bits })
    }
}

impl Serialize for BitWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BitWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(de::Error::custom)
    }
}
