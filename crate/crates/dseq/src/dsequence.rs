//! Plain d-sequences: the digit stream `(base^i mod p) mod base` for a
//! prime p, with period computation and the structural properties of
//! maximum-length sequences.
//!
//! For base 2 this is the binary d-sequence `a(i) = 2^i mod p mod 2`.
//! When the base is a primitive root of p the sequence has the maximum
//! length p - 1, and the bits in the second half of the period are the
//! complements of those in the first half.

use crate::numtheory::{self, OddPrime};
use crate::{Error, Result};

/// A d-sequence configuration: prime p, base r (default 2), index origin
/// (default 1, the first digit of the expansion).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DSeqConfig {
    prime: OddPrime,
    base: u64,
    start_index: u64,
}

impl DSeqConfig {
    /// Binary d-sequence for p, starting at i = 1.
    pub fn binary(prime: OddPrime) -> Self {
        // p is odd, so p never divides 2.
        DSeqConfig {
            prime,
            base: 2,
            start_index: 1,
        }
    }

    /// General-base d-sequence. The prime must not divide the base.
    pub fn new(prime: OddPrime, base: u64) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidArguments(format!(
                "base must be at least 2, got {base}"
            )));
        }
        if base % prime.get() == 0 {
            return Err(Error::NotCoprime {
                value: base,
                modulus: prime.get(),
            });
        }
        Ok(DSeqConfig {
            prime,
            base,
            start_index: 1,
        })
    }

    pub fn with_start_index(mut self, start_index: u64) -> Result<Self> {
        if start_index == 0 {
            return Err(Error::InvalidArguments(
                "start index must be at least 1".into(),
            ));
        }
        self.start_index = start_index;
        Ok(self)
    }

    pub fn prime(&self) -> OddPrime {
        self.prime
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn start_index(&self) -> u64 {
        self.start_index
    }
}

/// Digit at index i >= 1: (base^i mod p) mod base.
pub fn dseq_digit(i: u64, cfg: &DSeqConfig) -> u64 {
    assert!(i >= 1, "d-sequence indices start at 1");
    numtheory::mod_pow(cfg.base, i, cfg.prime.get()).expect("prime modulus is >= 3") % cfg.base
}

/// Infinite digit cursor. Keeps the running residue base^i mod p and
/// performs one modular multiplication per digit; output is bit-identical
/// to evaluating `dseq_digit` at each index (tested).
#[derive(Debug, Clone)]
pub struct DSeqStream {
    residue: u64,
    base: u64,
    prime: u64,
}

impl DSeqStream {
    pub fn new(cfg: &DSeqConfig) -> Self {
        let prime = cfg.prime.get();
        let residue =
            numtheory::mod_pow(cfg.base, cfg.start_index, prime).expect("prime modulus is >= 3");
        DSeqStream {
            residue,
            base: cfg.base,
            prime,
        }
    }
}

impl Iterator for DSeqStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let digit = self.residue % self.base;
        self.residue = numtheory::mul_mod(self.residue, self.base % self.prime, self.prime);
        Some(digit)
    }
}

/// First `length` digits from the configured start index.
pub fn dseq_stream(cfg: &DSeqConfig, length: usize) -> Vec<u64> {
    DSeqStream::new(cfg).take(length).collect()
}

/// Period of the digit sequence: the multiplicative order of the base
/// modulo p. Maximum length p - 1 exactly when the base is a primitive
/// root of p.
pub fn dseq_period(cfg: &DSeqConfig) -> Result<u64> {
    numtheory::multiplicative_order(cfg.base, cfg.prime.get())
}

/// For maximum-length binary sequences: checks a(i + (p-1)/2) = 1 - a(i)
/// for every i in the first half of the period.
///
/// Errors with `NotMaximumLength` unless base = 2 and 2 is a primitive
/// root of p.
pub fn verify_half_period_complement(cfg: &DSeqConfig) -> Result<bool> {
    let p = cfg.prime.get();
    if cfg.base != 2 || !numtheory::is_primitive_root(2, cfg.prime)? {
        return Err(Error::NotMaximumLength(p));
    }
    let half = (p - 1) / 2;
    for i in 1..=half {
        let a = dseq_digit(i, cfg);
        let b = dseq_digit(i + half, cfg);
        if b != 1 - a {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reports whether digits half a period apart sum to base - 1 across one
/// full period. Requires an even period.
///
/// Under the residue-digit extraction used here the property holds for
/// base 2 always, and in general exactly on the class p = base - 1
/// (mod base); this function measures rather than assumes.
pub fn half_period_digit_sum_holds(cfg: &DSeqConfig) -> Result<bool> {
    let period = dseq_period(cfg)?;
    if period % 2 != 0 {
        return Err(Error::InvalidArguments(format!(
            "period {period} is odd; half-period pairing is undefined"
        )));
    }
    let half = period / 2;
    for i in 1..=half {
        if dseq_digit(i, cfg) + dseq_digit(i + half, cfg) != cfg.base - 1 {
            return Ok(false);
        }
    }
    Ok(true)
}
