//! Integer arithmetic: prime tests, factorization, p-adic valuations.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1 << 12;

pub fn is_prime(p: u64) -> bool {
    num_prime::nt_funcs::is_prime64(p)
}

/// Primes in `[lo, hi)`.
pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..hi).filter(|&p| is_prime(p)).collect()
}

/// Exponent of `p` in `n`; `n` must be nonzero.
pub fn valuation(n: &BigInt, p: u64) -> u64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Prime factorization of `|n|`, `n != 0`.
///
/// Small factors are removed by trial division; the remaining cofactor is
/// handed to `num_prime` when it fits in 128 bits.
pub fn factorize(n: &BigInt) -> Result<BTreeMap<u64, u32>> {
    if n.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let mut m: BigUint = n.magnitude().clone();
    let mut out = BTreeMap::new();
    let mut d = 2u64;
    while d < TRIAL_LIMIT {
        let bd = BigUint::from(d);
        if &bd * &bd > m {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = m.div_rem(&bd);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            out.insert(d, e);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m.is_one() {
        return Ok(out);
    }
    let rest = m
        .to_u128()
        .ok_or_else(|| Error::FactorizationTooLarge(m.to_string()))?;
    for (q, e) in num_prime::nt_funcs::factorize128(rest) {
        let q = u64::try_from(q).map_err(|_| Error::FactorizationTooLarge(q.to_string()))?;
        *out.entry(q).or_insert(0) += e as u32;
    }
    Ok(out)
}

/// Prime divisors of `|n|`, ascending.
pub fn prime_divisors(n: &BigInt) -> Result<Vec<u64>> {
    Ok(factorize(n)?.into_keys().collect())
}

/// Number of prime factors of `|n|` counted with multiplicity.
pub fn big_omega(n: &BigInt) -> Result<u64> {
    Ok(factorize(n)?.values().map(|&e| e as u64).sum())
}

/// Ω(n) by plain trial division, for machine-sized `n >= 1`.
pub fn big_omega_u64(mut n: u64) -> u32 {
    let mut count = 0;
    while n.is_multiple_of(2) && n > 0 {
        n /= 2;
        count += 1;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        while n.is_multiple_of(d) {
            n /= d;
            count += 1;
        }
        d += 2;
    }
    if n > 1 {
        count += 1;
    }
    count
}

/// Integer `k` with `base^k = n` when it exists (`n > 0`, `base >= 2`).
pub fn exact_log(n: &BigInt, base: &BigInt) -> Option<u32> {
    if n.sign() != Sign::Plus {
        return None;
    }
    let mut m = n.clone();
    let mut k = 0;
    while !m.is_one() {
        let (q, r) = m.div_rem(base);
        if !r.is_zero() {
            return None;
        }
        m = q;
        k += 1;
    }
    Some(k)
}

pub fn isqrt(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}
