//! Exact integer primitives: gcd, totient, Möbius, valuations, primality
//! and factorization.

mod ecm;
mod factor;
pub(crate) mod montgomery;
mod primality;
mod sieve;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use factor::{factorize, FactorEffort, Factorization};
pub use primality::{certify_prime, deterministic_limit, is_prime, is_prime_u64, primality, Primality};

pub fn gcd<T: Integer + Clone>(x: &T, y: &T) -> T {
    x.gcd(y)
}

/// Prime factorization of a machine-sized index by trial division.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factor_u64(n) {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

pub fn euler_phi(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroArgument("euler_phi"));
    }
    Ok(factor_u64(n)
        .into_iter()
        .fold(1, |acc, (p, e)| acc * (p - 1) * p.pow(e - 1)))
}

pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::ZeroArgument("mobius"));
    }
    let factors = factor_u64(n);
    if factors.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if factors.len() % 2 == 0 { 1 } else { -1 })
}

/// P(n), the largest prime dividing `n`.
pub fn largest_prime_divisor(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::NoPrimeDivisor(n));
    }
    Ok(factor_u64(n).last().map(|&(p, _)| p).unwrap())
}

/// Exponent of the prime `p` in `x`.
pub fn vp(x: &BigUint, p: &BigUint) -> Result<u32> {
    if x.is_zero() {
        return Err(Error::ZeroArgument("vp"));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    let mut e = 0;
    let mut rest = x.clone();
    loop {
        let (q, r) = rest.div_rem(p);
        if !r.is_zero() {
            return Ok(e);
        }
        rest = q;
        e += 1;
    }
}

/// The `p`-part of `x`, i.e. `p^vp(x, p)`, together with the rest.
pub fn split_prime_power(x: &BigUint, p: u64) -> (BigUint, BigUint) {
    let p = BigUint::from(p);
    let mut power = BigUint::one();
    let mut rest = x.clone();
    if rest.is_zero() {
        return (power, rest);
    }
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            return (power, rest);
        }
        rest = q;
        power *= &p;
    }
}
