//! Bit-string labels for graph vertices and machine programs.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::LabelError;

/// A finite string over {0,1}. The empty label is legal.
///
/// Labels order by `(length, lexicographic)`, which is the canonical order
/// used everywhere a deterministic enumeration is needed.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitLabel {
    bits: Vec<bool>,
}

impl BitLabel {
    pub fn empty() -> Self {
        Self { bits: Vec::new() }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// The `width`-bit big-endian rendering of `value`.
    ///
    /// Panics if `value` does not fit in `width` bits.
    pub fn from_u64(value: u64, width: usize) -> Self {
        assert!(
            width >= 64 || value >> width == 0,
            "value {value} does not fit in {width} bits"
        );
        let bits = (0..width)
            .rev()
            .map(|shift| shift < 64 && (value >> shift) & 1 == 1)
            .collect();
        Self { bits }
    }

    /// Big-endian numeric value; `None` if the label is longer than 64 bits.
    pub fn to_u64(&self) -> Option<u64> {
        if self.bits.len() > 64 {
            return None;
        }
        Some(self.bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn bit(&self, i: usize) -> bool {
        self.bits[i]
    }

    /// `self · other`.
    pub fn concat(&self, other: &BitLabel) -> BitLabel {
        let mut bits = Vec::with_capacity(self.len() + other.len());
        bits.extend_from_slice(&self.bits);
        bits.extend_from_slice(&other.bits);
        BitLabel { bits }
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    /// First `n` bits, or `None` if the label is shorter than `n`.
    pub fn prefix(&self, n: usize) -> Option<BitLabel> {
        (n <= self.len()).then(|| BitLabel {
            bits: self.bits[..n].to_vec(),
        })
    }

    /// The remainder after stripping `prefix`, if `self` starts with it.
    pub fn strip_prefix(&self, prefix: &BitLabel) -> Option<BitLabel> {
        self.bits.starts_with(&prefix.bits).then(|| BitLabel {
            bits: self.bits[prefix.len()..].to_vec(),
        })
    }

    pub fn starts_with(&self, prefix: &BitLabel) -> bool {
        self.bits.starts_with(&prefix.bits)
    }

    /// All labels of exactly `len` bits in lexicographic order.
    ///
    /// Panics for `len >= 64`; desk-scale universes never get close.
    pub fn all_of_len(len: usize) -> impl Iterator<Item = BitLabel> {
        assert!(len < 64, "cannot enumerate {{0,1}}^{len}");
        (0..1u64 << len).map(move |v| BitLabel::from_u64(v, len))
    }
}

impl Ord for BitLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.bits.cmp(&other.bits))
    }
}

impl PartialOrd for BitLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for BitLabel {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .enumerate()
            .map(|(pos, ch)| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(LabelError::InvalidChar { ch: other, pos }),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BitLabel::from_bits)
    }
}

impl Serialize for BitLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for tests and examples: `bits("0110")`.
///
/// Panics on characters other than `0`/`1`.
pub fn bits(s: &str) -> BitLabel {
    s.parse().expect("bit string literal")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_length_then_lex() {
        let mut v = [bits("10"), bits("1"), bits(""), bits("01"), bits("0")];
        v.sort();
        let s: Vec<String> = v.iter().map(|l| l.to_string()).collect();
        assert_eq!(s, ["", "0", "1", "01", "10"]);
    }

    #[test]
    fn numeric_round_trip() {
        let l = BitLabel::from_u64(5, 4);
        assert_eq!(l.to_string(), "0101");
        assert_eq!(l.to_u64(), Some(5));
        assert_eq!(BitLabel::from_u64(0, 0), BitLabel::empty());
    }

    #[test]
    fn equality_needs_same_length() {
        assert_ne!(bits("0"), bits("00"));
        assert_eq!(bits("0").to_u64(), bits("00").to_u64());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("01a".parse::<BitLabel>().is_err());
        assert_eq!("".parse::<BitLabel>().unwrap(), BitLabel::empty());
    }

    #[test]
    fn prefix_ops() {
        let l = bits("01011");
        assert_eq!(l.prefix(3), Some(bits("010")));
        assert_eq!(l.prefix(6), None);
        assert_eq!(l.strip_prefix(&bits("01")), Some(bits("011")));
        assert_eq!(l.strip_prefix(&bits("1")), None);
    }
}
