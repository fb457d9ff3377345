//! Exact integer number theory underpinning every generator: modular
//! exponentiation, multiplicative order, primitive-root testing,
//! deterministic primality, and lcm.
//!
//! All functions are pure and safe to call from any number of threads.

use std::fmt;

use crate::{Error, Result};

/// Greatest common divisor (Euclid).
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// Modular exponentiation: base^exp mod modulus by the binary method.
/// Exponent 0 returns 1 mod modulus. u128 intermediates, so any u64
/// modulus is safe.
pub fn mod_pow(base: u64, exp: u64, modulus: u64) -> Result<u64> {
    if modulus < 2 {
        return Err(Error::InvalidModulus(modulus));
    }
    let m = modulus as u128;
    let mut result = 1u128;
    let mut b = base as u128 % m;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    Ok(result as u64)
}

/// One step of a running power: x * base mod modulus.
pub(crate) fn mul_mod(x: u64, base: u64, modulus: u64) -> u64 {
    (x as u128 * base as u128 % modulus as u128) as u64
}

/// Deterministic Miller-Rabin, exact for all u64 inputs.
/// Witnesses 2..=37 suffice for n < 3.3 * 10^24.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n).expect("n >= 41 here");
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division: (prime, exponent) pairs in
/// increasing prime order. Desk-scale inputs only.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0u32;
        while *n % p == 0 {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut d = 5u64;
    while d as u128 * d as u128 <= n as u128 {
        push(d, &mut n);
        push(d + 2, &mut n);
        d += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All divisors of n in increasing order.
pub fn divisors_sorted(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let prev = divs.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            divs.extend(prev.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    divs
}

/// Least e >= 1 with a^e = 1 (mod m), for gcd(a, m) = 1.
///
/// Exact by construction: for prime m the divisors of m - 1 are tested in
/// increasing order; for composite m a linear search bounded by m.
pub fn multiplicative_order(a: u64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::InvalidModulus(m));
    }
    let r = a % m;
    if r == 0 || gcd(r, m) != 1 {
        return Err(Error::NotCoprime {
            value: a,
            modulus: m,
        });
    }
    if is_prime(m) {
        for d in divisors_sorted(m - 1) {
            if mod_pow(r, d, m)? == 1 {
                return Ok(d);
            }
        }
        unreachable!("order divides m - 1 for prime m");
    }
    let mut x = r;
    let mut e = 1u64;
    while x != 1 {
        x = mul_mod(x, r, m);
        e += 1;
        if e > m {
            unreachable!("order is at most phi(m) < m when gcd(a, m) = 1");
        }
    }
    Ok(e)
}

/// True iff the multiplicative order of a modulo p equals p - 1.
pub fn is_primitive_root(a: u64, p: OddPrime) -> Result<bool> {
    let pv = p.get();
    if a % pv == 0 {
        return Err(Error::NotCoprime {
            value: a,
            modulus: pv,
        });
    }
    // a generates iff a^((p-1)/f) != 1 for every prime factor f of p - 1.
    for (f, _) in factorize(pv - 1) {
        if mod_pow(a, (pv - 1) / f, pv)? == 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Least common multiple of a nonempty list of positive integers.
pub fn lcm_many(values: &[u64]) -> Result<u64> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut acc = 1u64;
    for &v in values {
        if v == 0 {
            return Err(Error::InvalidArguments("lcm over zero".into()));
        }
        let g = gcd(acc, v);
        acc = (acc / g)
            .checked_mul(v)
            .ok_or(Error::Overflow("lcm_many"))?;
    }
    Ok(acc)
}

/// A validated odd prime >= 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OddPrime(u64);

impl OddPrime {
    pub fn new(value: u64) -> Result<Self> {
        if value < 3 || value % 2 == 0 || !is_prime(value) {
            return Err(Error::InvalidPrime(value));
        }
        Ok(OddPrime(value))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for OddPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A modulus >= 3, optionally carrying its prime factorization.
/// Houses composite moduli (products of primes) as well as single primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Modulus {
    value: u64,
    factorization: Option<Vec<(u64, u32)>>,
}

impl Modulus {
    pub fn new(value: u64) -> Result<Self> {
        if value < 3 {
            return Err(Error::InvalidModulus(value));
        }
        Ok(Modulus {
            value,
            factorization: None,
        })
    }

    /// Attaches a factorization, checking that every factor is prime and
    /// that the product multiplies back to the value.
    pub fn with_factorization(value: u64, factorization: Vec<(u64, u32)>) -> Result<Self> {
        if value < 3 {
            return Err(Error::InvalidModulus(value));
        }
        let mut product = 1u128;
        for &(p, e) in &factorization {
            if !is_prime(p) {
                return Err(Error::InvalidPrime(p));
            }
            for _ in 0..e {
                product *= p as u128;
            }
        }
        if product != value as u128 {
            return Err(Error::InvalidArguments(format!(
                "factorization does not multiply back to {value}"
            )));
        }
        Ok(Modulus {
            value,
            factorization: Some(factorization),
        })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// The stored factorization, or one computed by trial division.
    pub fn factorization(&self) -> Vec<(u64, u32)> {
        match &self.factorization {
            Some(f) => f.clone(),
            None => factorize(self.value),
        }
    }
}

impl From<OddPrime> for Modulus {
    fn from(p: OddPrime) -> Self {
        Modulus {
            value: p.get(),
            factorization: Some(vec![(p.get(), 1)]),
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}
