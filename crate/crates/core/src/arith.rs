//! Integer helpers: gcd/lcm, primality, trial-division factorization and
//! prime-power bookkeeping used by the order formulas.

use crate::error::{Error, Result};

/// Largest prime modulus accepted anywhere in the crate.
pub const MAX_PRIME: u64 = 1 << 20;
/// Cap on integers handed to [`factor`], and on `p^d` for order computations.
pub const MAX_ORDER_SPACE: u128 = 1 << 40;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

/// Validates `p` as a supported prime modulus.
pub fn check_prime(p: u64) -> Result<u32> {
    if p > MAX_PRIME || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(p as u32)
}

/// Prime factorization by trial division, ascending primes with exponents.
pub fn factor(mut n: u64) -> Result<Vec<(u64, u32)>> {
    if n as u128 > MAX_ORDER_SPACE {
        return Err(Error::CapExceeded {
            what: "integer to factor",
            value: n as u128,
            cap: MAX_ORDER_SPACE,
        });
    }
    let mut out = Vec::new();
    let mut q = 2u64;
    while q * q <= n {
        if n.is_multiple_of(q) {
            let mut e = 0;
            while n.is_multiple_of(q) {
                n /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    Ok(out)
}

pub fn prime_divisors(n: u64) -> Result<Vec<u64>> {
    Ok(factor(n)?.into_iter().map(|(q, _)| q).collect())
}

/// `p^e` as u128, `None` on overflow.
pub fn checked_pow(p: u64, e: u32) -> Option<u128> {
    (p as u128).checked_pow(e)
}

/// `p^d`, rejecting anything above `cap`.
pub fn space_size(p: u32, d: usize, cap: u128, what: &'static str) -> Result<u64> {
    let size = checked_pow(p as u64, d as u32).filter(|&s| s <= cap);
    match size {
        Some(s) => Ok(s as u64),
        None => Err(Error::CapExceeded {
            what,
            value: checked_pow(p as u64, d as u32).unwrap_or(u128::MAX),
            cap,
        }),
    }
}

/// The p-part `(k)_p`: largest power of `p` dividing `k`.
pub fn p_part(mut k: u64, p: u64) -> u64 {
    let mut part = 1;
    while k.is_multiple_of(p) {
        k /= p;
        part *= p;
    }
    part
}

/// `ceil(log_p(n))` for `n >= 1`: the least `e` with `n <= p^e`.
pub fn ceil_log(n: u64, p: u64) -> u32 {
    let mut e = 0;
    let mut pow = 1u64;
    while pow < n {
        pow *= p;
        e += 1;
    }
    e
}

/// Least `e >= 1` with `m | p^e - 1`; `m` must be coprime to `p`.
pub fn multiplicative_order_mod(p: u64, m: u64) -> u32 {
    if m == 1 {
        return 1;
    }
    let mut e = 1;
    let mut r = p % m;
    while r != 1 {
        r = (r as u128 * p as u128 % m as u128) as u64;
        e += 1;
    }
    e
}

pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % m as u128) as u64;
        }
        base = (base as u128 * base as u128 % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

pub fn mod_inv(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    mod_pow(a as u64, p as u64 - 2, p as u64) as u32
}
