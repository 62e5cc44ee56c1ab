//! Prime-field shadow arithmetic.
//!
//! Probabilistic rank and nonvanishing certificates evaluate polynomials at
//! random points modulo large primes. Everything here is deterministic given
//! a seed: the PRNG is splitmix64 and primality is checked with a
//! Miller-Rabin witness set that is exact for all u64 inputs.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Deterministic seedable PRNG (splitmix64).
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    /// Creates a generator from a seed.
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Next raw value.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `[0, bound)`.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }
}

/// Addition mod p.
pub fn addmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

/// Subtraction mod p.
pub fn submod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + p as u128 - b as u128 % p as u128) % p as u128) as u64
}

/// Multiplication mod p.
pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Power mod p.
pub fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    base %= p;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse mod a prime p; errors when `a == 0 (mod p)`.
pub fn invmod(a: u64, p: u64) -> Result<u64> {
    let a = a % p;
    if a == 0 {
        return Err(Error::PrimeClash(p));
    }
    Ok(powmod(a, p - 2, p))
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Draws a prime strictly above 2^60 (62-bit range).
pub fn random_prime_62(rng: &mut SplitMix64) -> u64 {
    loop {
        let lo = 1u64 << 60;
        let hi = 1u64 << 62;
        let candidate = (lo + rng.below(hi - lo)) | 1;
        if candidate > lo && is_prime_u64(candidate) {
            return candidate;
        }
    }
}

/// Converts a nonnegative BigInt already reduced below 2^64 to u64.
pub fn bigint_to_u64(n: &BigInt) -> u64 {
    n.to_u64().expect("value reduced below the prime")
}

/// Row-reduction rank of a dense matrix over F_p.
pub fn rank_mod_p(rows: &mut [Vec<u64>], p: u64) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(pivot) = (row..nrows).find(|&r| rows[r][col] % p != 0) else {
            continue;
        };
        rows.swap(row, pivot);
        let inv = invmod(rows[row][col], p).expect("pivot nonzero");
        for r in 0..nrows {
            if r == row || rows[r][col] % p == 0 {
                continue;
            }
            let factor = mulmod(rows[r][col], inv, p);
            for c in col..ncols {
                let t = mulmod(factor, rows[row][c], p);
                rows[r][c] = submod(rows[r][c], t, p);
            }
        }
        row += 1;
        rank += 1;
    }
    rank
}
