//! Closed-form p-adic valuations: lifting the exponent for `x^m - y^m` and
//! its cyclotomic refinement for `Φ_n(a, b)`.
//!
//! Nothing here evaluates `Φ_n(a, b)`; the closed forms are meant to be
//! checked against direct factorization.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{factorize, is_prime, vp, FactorEffort};
use crate::cyclotomic::Triple;
use crate::error::{Error, Result};

/// The multiplicative order `k` of `a b^-1` modulo the prime `p`: the least
/// `k >= 1` with `p | a^k - b^k`. Always divides `p - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderContext {
    pub p: BigUint,
    pub a: BigUint,
    pub b: BigUint,
    pub k: BigUint,
}

impl OrderContext {
    pub fn new(p: &BigUint, a: &BigUint, b: &BigUint) -> Result<Self> {
        Ok(OrderContext {
            p: p.clone(),
            a: a.clone(),
            b: b.clone(),
            k: multiplicative_order(p, a, b)?,
        })
    }
}

fn check_unit_pair(p: &BigUint, a: &BigUint, b: &BigUint) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    if (a % p).is_zero() || (b % p).is_zero() {
        return Err(Error::PrimeDividesBase { p: p.clone() });
    }
    Ok(())
}

// a * b^(p-2) mod p
fn ratio_mod(p: &BigUint, a: &BigUint, b: &BigUint) -> BigUint {
    let b_inv = b.modpow(&(p - 2u32), p);
    (a * b_inv) % p
}

/// Order of `a b^-1` modulo `p`, by factoring `p - 1` completely and
/// descending through its divisor lattice.
pub fn multiplicative_order(p: &BigUint, a: &BigUint, b: &BigUint) -> Result<BigUint> {
    check_unit_pair(p, a, b)?;
    if p == &BigUint::from(2u32) {
        return Ok(BigUint::one());
    }
    let x = ratio_mod(p, a, b);
    let group_order = p - 1u32;
    let f = factorize(&group_order, &FactorEffort::default());
    if !f.is_complete() {
        return Err(Error::IncompleteFactorization {
            partial: Box::new(f),
        });
    }
    let mut k = group_order;
    for (q, _) in f.factors() {
        while (&k % q).is_zero() && x.modpow(&(&k / q), p).is_one() {
            k /= q;
        }
    }
    Ok(k)
}

/// The least divisor `d` of `multiple` with `p | a^d - b^d`, or `None` when
/// `p ∤ a^multiple - b^multiple`. Needs no factorization of `p - 1`.
pub fn order_dividing(p: &BigUint, a: &BigUint, b: &BigUint, multiple: u64) -> Result<Option<u64>> {
    check_unit_pair(p, a, b)?;
    let x = ratio_mod(p, a, b);
    if !x.modpow(&BigUint::from(multiple), p).is_one() {
        return Ok(None);
    }
    let mut k = multiple;
    for (q, _) in crate::arith::factor_u64(multiple) {
        while k % q == 0 && x.modpow(&BigUint::from(k / q), p).is_one() {
            k /= q;
        }
    }
    Ok(Some(k))
}

fn vp_signed(x: &BigInt, p: &BigUint) -> Result<u32> {
    vp(x.magnitude(), p)
}

/// `v_p(x^m - y^m)` by lifting the exponent, for `x ≡ y ≢ 0 (mod p)`.
///
/// Odd `p`: `v_p(x - y) + v_p(m)`. For `p = 2`: `v_2(x - y)` when `m` is
/// odd, `v_2(x^2 - y^2) + v_2(m) - 1` when `m` is even.
pub fn lte_valuation(p: &BigUint, x: &BigInt, y: &BigInt, m: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    if m == 0 {
        return Err(Error::ZeroArgument("lte_valuation"));
    }
    let modulus = BigInt::from(p.clone());
    let diff = x - y;
    if !diff.mod_floor(&modulus).is_zero() {
        return Err(Error::LtePrecondition("x and y differ modulo p"));
    }
    if x.mod_floor(&modulus).is_zero() {
        return Err(Error::LtePrecondition("p divides x and y"));
    }
    if diff.is_zero() {
        return Err(Error::LtePrecondition("x = y, valuation is infinite"));
    }
    let vm = vp(&BigUint::from(m), p)?;
    if p != &BigUint::from(2u32) {
        return Ok(vp_signed(&diff, p)? + vm);
    }
    if m.is_odd() {
        return vp_signed(&diff, p);
    }
    let sq_diff = x * x - y * y;
    if sq_diff.is_zero() {
        return Err(Error::LtePrecondition("x = -y, valuation is infinite"));
    }
    Ok(vp_signed(&sq_diff, p)? + vm - 1)
}

/// `v_p(Φ_n(a, b))` from the closed forms.
///
/// For odd `p ∤ ab` with order `k`: `v_p(a^k - b^k)` if `n = k`, `1` if
/// `n = p^β k` with `β >= 1`, else `0`. For `p = 2` and odd `a, b`:
/// `v_2(a - b)` if `n = 1`, `v_2(a + b)` if `n = 2`, `1` if `n = 2^β` with
/// `β >= 2`, else `0`. When exactly one of `a, b` is even every `Φ_n(a, b)`
/// is odd and the result is `0`.
pub fn vp_cyclotomic(p: &BigUint, t: &Triple) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    let (a, b, n) = (t.a(), t.b(), t.n());
    if p == &BigUint::from(2u32) {
        if a.is_even() || b.is_even() {
            return Ok(0);
        }
        return match n {
            1 => vp(&(a - b), p),
            2 => vp(&(a + b), p),
            _ if n.is_power_of_two() => Ok(1),
            _ => Ok(0),
        };
    }
    // k | n is all that matters, so search the divisors of n rather than
    // factoring p - 1.
    let k = match order_dividing(p, a, b, n)? {
        None => return Ok(0),
        Some(k) => k,
    };
    if k == n {
        let e = k as u32;
        return vp(&(a.pow(e) - b.pow(e)), p);
    }
    let mut rest = n / k;
    let small_p = match u64::try_from(p) {
        Ok(sp) => sp,
        // p > n means n / k cannot be a power of p
        Err(_) => return Ok(0),
    };
    while rest % small_p == 0 {
        rest /= small_p;
    }
    Ok(if rest == 1 { 1 } else { 0 })
}
