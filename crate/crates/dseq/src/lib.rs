//! Number-theoretic pseudorandom bit generators built on d-sequences
//! (digit expansions of 1/p), together with exact period prediction,
//! brute-force period measurement, and unnormalized autocorrelation
//! analysis.
//!
//! The generator family, from simplest to most structured:
//!
//! - [`dsequence`] — the plain d-sequence `(r^i mod p) mod r`;
//! - [`kak_rng`] — XOR combinations of several d-sequences (by shared
//!   index, or by iterated squaring of a seed);
//! - [`recursive_rng`] — a nested-loop generator whose inner residue-sum
//!   sequence (the SeedSet) seeds an outer exponentiation loop, with the
//!   total period predicted exactly from multiplicative orders.
//!
//! All arithmetic is exact: `u64` values with `u128` intermediates, so
//! moduli up to 2^63 are safe without arbitrary precision.

pub mod analysis;
pub mod dsequence;
pub mod encoding;
pub mod kak_rng;
pub mod numtheory;
pub mod recursive_rng;
pub mod verify;

pub use numtheory::{Modulus, OddPrime};

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("{0} is not an odd prime >= 3")]
    InvalidPrime(u64),
    #[error("{value} and {modulus} are not coprime")]
    NotCoprime { value: u64, modulus: u64 },
    #[error("empty input")]
    EmptyInput,
    #[error("binary d-sequence for p = {0} is not maximum length")]
    NotMaximumLength(u64),
    #[error("invalid arguments: {0}")]
    InvalidArguments(String),
    #[error("prime factor {factor} of modulus {modulus} is not congruent to 3 mod 4")]
    BbsRuleViolation { modulus: u64, factor: u64 },
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("undecodable byte 0x{byte:02x} at offset {offset}")]
    Decode { offset: usize, byte: u8 },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Ordered binary output of any generator. Elements are exactly 0 or 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitStream {
    bits: Vec<u8>,
}

impl BitStream {
    /// Builds a stream from raw bits, rejecting anything but 0 and 1.
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidArguments(format!(
                "bit value {bad} is not 0 or 1"
            )));
        }
        Ok(Self { bits })
    }

    /// Internal constructor for generators that produce 0/1 by construction.
    pub(crate) fn from_raw(bits: Vec<u8>) -> Self {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        Self { bits }
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, u8> {
        self.bits.iter()
    }

    pub fn into_vec(self) -> Vec<u8> {
        self.bits
    }
}

impl<'a> IntoIterator for &'a BitStream {
    type Item = &'a u8;
    type IntoIter = std::slice::Iter<'a, u8>;

    fn into_iter(self) -> Self::IntoIter {
        self.bits.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitstream_rejects_non_bits() {
        assert!(BitStream::new(vec![0, 1, 2]).is_err());
        assert_eq!(BitStream::new(vec![0, 1, 1]).unwrap().len(), 3);
    }

    #[test]
    fn bitstream_empty_is_fine() {
        let s = BitStream::new(vec![]).unwrap();
        assert!(s.is_empty());
    }
}
