//! XOR-combined d-sequence generators: the index generator (low bits of
//! 2^i over several primes, XORed together) and the power-exponent
//! generator (iterated squaring of a seed over one or more moduli).
//!
//! Adding sequences from distinct primes raises the period toward
//! lcm(p_1 - 1, p_2 - 1, ...); the power-exponent form replaces the
//! shared index with the squaring schedule S, S^2, S^4, ...

use crate::numtheory::{self, Modulus, OddPrime};
use crate::{BitStream, Error, Result};

/// Primes feeding the index XOR generator. Nonempty, pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KakIndexConfig {
    primes: Vec<OddPrime>,
}

impl KakIndexConfig {
    pub fn new(primes: Vec<OddPrime>) -> Result<Self> {
        if primes.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut sorted: Vec<u64> = primes.iter().map(|p| p.get()).collect();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArguments(
                "index generator primes must be pairwise distinct".into(),
            ));
        }
        Ok(KakIndexConfig { primes })
    }

    pub fn primes(&self) -> &[OddPrime] {
        &self.primes
    }
}

/// Bit i >= 1: XOR over all primes p of (2^i mod p) mod 2.
pub fn kak_index_bit(i: u64, cfg: &KakIndexConfig) -> u8 {
    assert!(i >= 1, "index generator indices start at 1");
    cfg.primes.iter().fold(0u8, |acc, p| {
        let r = numtheory::mod_pow(2, i, p.get()).expect("prime modulus is >= 3");
        acc ^ (r & 1) as u8
    })
}

/// Running-residue cursor over the index generator, one modular multiply
/// per prime per bit.
#[derive(Debug, Clone)]
pub struct KakIndexStream {
    residues: Vec<u64>,
    primes: Vec<u64>,
}

impl KakIndexStream {
    pub fn new(cfg: &KakIndexConfig) -> Self {
        Self::with_start_index(cfg, 1)
    }

    pub fn with_start_index(cfg: &KakIndexConfig, start_index: u64) -> Self {
        let primes: Vec<u64> = cfg.primes.iter().map(|p| p.get()).collect();
        let residues = primes
            .iter()
            .map(|&p| numtheory::mod_pow(2, start_index, p).expect("prime modulus is >= 3"))
            .collect();
        KakIndexStream { residues, primes }
    }
}

impl Iterator for KakIndexStream {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        let bit = self
            .residues
            .iter()
            .fold(0u8, |acc, &r| acc ^ (r & 1) as u8);
        for (r, &p) in self.residues.iter_mut().zip(&self.primes) {
            *r = numtheory::mul_mod(*r, 2, p);
        }
        Some(bit)
    }
}

/// First `length` bits of the index generator starting at i = 1.
pub fn kak_index_stream(cfg: &KakIndexConfig, length: usize) -> BitStream {
    BitStream::from_raw(KakIndexStream::new(cfg).take(length).collect())
}

/// Period bound for the index generator: lcm of (p - 1) over the primes.
/// The underlying residue-tuple sequence attains the bound exactly when 2
/// is a primitive root of every prime; otherwise its period is a divisor.
pub fn kak_index_period_bound(cfg: &KakIndexConfig) -> Result<(u64, bool)> {
    let minus_one: Vec<u64> = cfg.primes.iter().map(|p| p.get() - 1).collect();
    let bound = numtheory::lcm_many(&minus_one)?;
    let mut exact = true;
    for &p in &cfg.primes {
        if !numtheory::is_primitive_root(2, p)? {
            exact = false;
            break;
        }
    }
    Ok((bound, exact))
}

/// Seed and moduli for the power-exponent generator. The seed must be
/// coprime to every modulus; moduli may be primes or products of primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KakPowerConfig {
    seed: u64,
    moduli: Vec<Modulus>,
    enforce_bbs_rule: bool,
}

impl KakPowerConfig {
    /// With `enforce_bbs_rule`, every prime factor of every modulus must
    /// be congruent to 3 mod 4 (the BBS prime shape); off by default.
    pub fn new(seed: u64, moduli: Vec<Modulus>, enforce_bbs_rule: bool) -> Result<Self> {
        if seed == 0 {
            return Err(Error::InvalidArguments("seed must be at least 1".into()));
        }
        if moduli.is_empty() {
            return Err(Error::EmptyInput);
        }
        for m in &moduli {
            if numtheory::gcd(seed, m.value()) != 1 {
                return Err(Error::NotCoprime {
                    value: seed,
                    modulus: m.value(),
                });
            }
        }
        if enforce_bbs_rule {
            for m in &moduli {
                for (factor, _) in m.factorization() {
                    if factor % 4 != 3 {
                        return Err(Error::BbsRuleViolation {
                            modulus: m.value(),
                            factor,
                        });
                    }
                }
            }
        }
        Ok(KakPowerConfig {
            seed,
            moduli,
            enforce_bbs_rule,
        })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn moduli(&self) -> &[Modulus] {
        &self.moduli
    }

    pub fn enforce_bbs_rule(&self) -> bool {
        self.enforce_bbs_rule
    }
}

/// Squaring cursor: bit j uses exponent 2^j, so state_0 = S mod m and
/// each step squares every residue.
#[derive(Debug, Clone)]
pub struct KakPowerStream {
    residues: Vec<u64>,
    moduli: Vec<u64>,
}

impl KakPowerStream {
    pub fn new(cfg: &KakPowerConfig) -> Self {
        let moduli: Vec<u64> = cfg.moduli.iter().map(|m| m.value()).collect();
        let residues = moduli.iter().map(|&m| cfg.seed % m).collect();
        KakPowerStream { residues, moduli }
    }
}

impl Iterator for KakPowerStream {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        let bit = self
            .residues
            .iter()
            .fold(0u8, |acc, &r| acc ^ (r & 1) as u8);
        for (r, &m) in self.residues.iter_mut().zip(&self.moduli) {
            *r = numtheory::mul_mod(*r, *r, m);
        }
        Some(bit)
    }
}

/// First `length` bits of the power-exponent generator (j = 0, 1, ...).
pub fn kak_power_stream(cfg: &KakPowerConfig, length: usize) -> BitStream {
    BitStream::from_raw(KakPowerStream::new(cfg).take(length).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsequence::{dseq_digit, DSeqConfig};

    fn p(v: u64) -> OddPrime {
        OddPrime::new(v).unwrap()
    }

    fn primes(vs: &[u64]) -> Vec<OddPrime> {
        vs.iter().map(|&v| p(v)).collect()
    }

    #[test]
    fn index_bit_examples() {
        let cfg = KakIndexConfig::new(primes(&[3, 5])).unwrap();
        assert_eq!(kak_index_bit(1, &cfg), 0); // residues 2, 2 -> 0^0
        assert_eq!(kak_index_bit(2, &cfg), 1); // residues 1, 4 -> 1^0
        assert_eq!(kak_index_bit(3, &cfg), 1); // residues 2, 3 -> 0^1
    }

    #[test]
    fn index_config_validation() {
        assert_eq!(KakIndexConfig::new(vec![]), Err(Error::EmptyInput));
        assert!(KakIndexConfig::new(primes(&[3, 3])).is_err());
        assert!(KakIndexConfig::new(primes(&[3])).is_ok());
    }

    #[test]
    fn index_stream_matches_per_bit_definition() {
        let cfg = KakIndexConfig::new(primes(&[3, 5, 7])).unwrap();
        let s = kak_index_stream(&cfg, 64);
        for (j, &b) in s.iter().enumerate() {
            assert_eq!(b, kak_index_bit(1 + j as u64, &cfg));
        }
    }

    #[test]
    fn single_prime_degenerates_to_dseq() {
        // Over one prime the XOR generator is exactly the binary d-sequence.
        for pv in [3u64, 7, 11, 23] {
            let cfg = KakIndexConfig::new(primes(&[pv])).unwrap();
            let dcfg = DSeqConfig::binary(p(pv));
            for i in 1..=40 {
                assert_eq!(kak_index_bit(i, &cfg) as u64, dseq_digit(i, &dcfg));
            }
        }
    }

    #[test]
    fn index_permutation_invariance() {
        let a = KakIndexConfig::new(primes(&[3, 5, 11])).unwrap();
        let b = KakIndexConfig::new(primes(&[11, 3, 5])).unwrap();
        assert_eq!(kak_index_stream(&a, 100), kak_index_stream(&b, 100));
    }

    #[test]
    fn period_bound_examples() {
        let c35 = KakIndexConfig::new(primes(&[3, 5])).unwrap();
        assert_eq!(kak_index_period_bound(&c35).unwrap(), (4, true));
        let c2329 = KakIndexConfig::new(primes(&[23, 29])).unwrap();
        assert_eq!(kak_index_period_bound(&c2329).unwrap(), (308, false));
        let c7 = KakIndexConfig::new(primes(&[7])).unwrap();
        assert_eq!(kak_index_period_bound(&c7).unwrap(), (6, false));
    }

    /// Brute-force period of the residue tuple (2^i mod p_j) starting at i = 1.
    fn tuple_period(ps: &[u64]) -> u64 {
        let init: Vec<u64> = ps.iter().map(|&q| 2 % q).collect();
        let mut cur = init.clone();
        let mut k = 0u64;
        loop {
            for (r, &q) in cur.iter_mut().zip(ps) {
                *r = numtheory::mul_mod(*r, 2, q);
            }
            k += 1;
            if cur == init {
                return k;
            }
        }
    }

    #[test]
    fn residue_tuple_period_divides_bound() {
        let small: Vec<u64> = (3..50).filter(|&n| numtheory::is_prime(n)).collect();
        for (ai, &pa) in small.iter().enumerate() {
            for &pb in &small[ai + 1..] {
                let cfg = KakIndexConfig::new(primes(&[pa, pb])).unwrap();
                let (bound, exact) = kak_index_period_bound(&cfg).unwrap();
                let actual = tuple_period(&[pa, pb]);
                assert_eq!(bound % actual, 0, "{pa},{pb}");
                if exact {
                    assert_eq!(actual, bound, "{pa},{pb}");
                }
            }
        }
    }

    #[test]
    fn power_stream_examples() {
        let m = |v: u64| Modulus::new(v).unwrap();
        let c = KakPowerConfig::new(2, vec![m(3)], false).unwrap();
        assert_eq!(kak_power_stream(&c, 3).bits(), &[0, 1, 1]); // residues 2,1,1

        // S=3 over {7, 11}: exponents 1,2,4,8 give residues 3,2,4,2 mod 7
        // (bits 1,0,0,0) and 3,9,4,5 mod 11 (bits 1,1,0,1); XOR 0,1,0,1.
        let c = KakPowerConfig::new(3, vec![m(7), m(11)], false).unwrap();
        assert_eq!(kak_power_stream(&c, 4).bits(), &[0, 1, 0, 1]);

        // residue pinned at 1
        let c = KakPowerConfig::new(1, vec![m(7)], false).unwrap();
        assert_eq!(kak_power_stream(&c, 2).bits(), &[1, 1]);
    }

    #[test]
    fn power_residues_match_mod_pow() {
        // j-th squaring state must equal S^(2^j) mod m computed directly.
        for m in 3..100u64 {
            let seed = 3u64;
            if numtheory::gcd(seed, m) != 1 {
                continue;
            }
            let cfg = KakPowerConfig::new(seed, vec![Modulus::new(m).unwrap()], false).unwrap();
            let mut cursor = KakPowerStream::new(&cfg);
            for j in 0..=20u32 {
                let direct = numtheory::mod_pow(seed, 1u64 << j, m).unwrap();
                assert_eq!(cursor.residues[0], direct, "m={m} j={j}");
                let bit = cursor.next().unwrap();
                assert_eq!(bit, (direct & 1) as u8, "m={m} j={j}");
            }
        }
    }

    #[test]
    fn power_config_validation() {
        let m = |v: u64| Modulus::new(v).unwrap();
        assert_eq!(
            KakPowerConfig::new(6, vec![m(3)], false),
            Err(Error::NotCoprime {
                value: 6,
                modulus: 3
            })
        );
        assert_eq!(
            KakPowerConfig::new(2, vec![], false),
            Err(Error::EmptyInput)
        );
        assert!(KakPowerConfig::new(0, vec![m(3)], false).is_err());
    }

    #[test]
    fn bbs_rule_enforcement() {
        let m = |v: u64| Modulus::new(v).unwrap();
        // 7 and 11 are both 3 mod 4; 21 = 3 * 7 passes factor-wise
        assert!(KakPowerConfig::new(2, vec![m(7), m(11)], true).is_ok());
        assert!(KakPowerConfig::new(2, vec![m(21)], true).is_ok());
        // 5 is 1 mod 4
        assert_eq!(
            KakPowerConfig::new(2, vec![m(5)], true),
            Err(Error::BbsRuleViolation {
                modulus: 5,
                factor: 5
            })
        );
        // 15 = 3 * 5 fails on the factor 5
        assert_eq!(
            KakPowerConfig::new(2, vec![m(15)], true),
            Err(Error::BbsRuleViolation {
                modulus: 15,
                factor: 5
            })
        );
        // same moduli pass without the rule
        assert!(KakPowerConfig::new(2, vec![m(5), m(15)], false).is_ok());
    }

    #[test]
    fn power_permutation_invariance() {
        let m = |v: u64| Modulus::new(v).unwrap();
        let a = KakPowerConfig::new(3, vec![m(7), m(11), m(13)], false).unwrap();
        let b = KakPowerConfig::new(3, vec![m(13), m(7), m(11)], false).unwrap();
        assert_eq!(kak_power_stream(&a, 64), kak_power_stream(&b, 64));
    }

    #[test]
    fn power_composite_moduli() {
        // n = 21 = 3 * 7, seed 2: squaring runs mod the composite directly.
        let cfg = KakPowerConfig::new(2, vec![Modulus::new(21).unwrap()], false).unwrap();
        let s = kak_power_stream(&cfg, 5);
        // residues 2, 4, 16, 256 mod 21 = 4, 16 -> bits 0,0,0,0,0
        assert_eq!(s.bits(), &[0, 0, 0, 0, 0]);
    }
}
