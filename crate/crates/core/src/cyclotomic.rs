//! Cyclotomic polynomials and their homogeneous two-variable values.
//!
//! Coefficients of `Φ_n(x)` come from exact division of `x^n - 1` by the
//! memoized `Φ_d(x)` for every proper divisor `d`. The value `Φ_n(a, b)` has
//! three independent evaluators (homogenized Horner, Möbius product of
//! binomials, and the prime-power recursion) which must agree.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{divisors, euler_phi, factor_u64, gcd, mobius};
use crate::error::{Error, Result};

/// Dense integer polynomial, `coeffs[k]` is the coefficient of `x^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    /// Drops trailing zero coefficients.
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// `x^n - 1`
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = -1;
        coeffs[n] += 1;
        IntPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> i64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `f(x^p)`
    pub fn compose_power(&self, p: usize) -> Self {
        let mut coeffs = vec![0; self.degree() * p + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs[k * p] = c;
        }
        IntPoly::new(coeffs)
    }

    /// Product, `None` on i64 overflow.
    pub fn checked_mul(&self, other: &IntPoly) -> Option<IntPoly> {
        if self.is_zero() || other.is_zero() {
            return Some(IntPoly::new(Vec::new()));
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].checked_add(x.checked_mul(y)?)?;
            }
        }
        Some(IntPoly::new(coeffs))
    }

    /// Quotient by a monic divisor when the remainder is zero.
    ///
    /// `Ok(None)` means the division is not exact.
    pub fn div_exact(&self, divisor: &IntPoly) -> Result<Option<IntPoly>> {
        assert_eq!(divisor.leading(), 1, "divisor must be monic");
        let d = divisor.degree();
        if self.is_zero() {
            return Ok(Some(self.clone()));
        }
        if self.degree() < d {
            return Ok(None);
        }
        let support: Vec<(usize, i64)> = divisor.coeffs[..d]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| (j, c))
            .collect();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0i64; self.degree() - d + 1];
        for i in (0..quot.len()).rev() {
            let c = rem[i + d];
            quot[i] = c;
            if c == 0 {
                continue;
            }
            for &(j, b) in &support {
                rem[i + j] = c
                    .checked_mul(b)
                    .and_then(|t| rem[i + j].checked_sub(t))
                    .ok_or(Error::CoefficientOverflow)?;
            }
        }
        if rem[..d].iter().any(|&c| c != 0) {
            return Ok(None);
        }
        Ok(Some(IntPoly::new(quot)))
    }
}

/// A validated input `(a, b, n)` with `a > b >= 1`, `gcd(a, b) = 1`, `n >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    a: BigUint,
    b: BigUint,
    n: u64,
}

impl Triple {
    pub fn new(a: impl Into<BigUint>, b: impl Into<BigUint>, n: u64) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        let reason = if b.is_zero() {
            Some("b must be at least 1")
        } else if a <= b {
            Some("a must exceed b")
        } else if !gcd(&a, &b).is_one() {
            Some("a and b must be coprime")
        } else if n == 0 {
            Some("n must be positive")
        } else {
            None
        };
        match reason {
            Some(reason) => Err(Error::InvalidTriple { a, b, n, reason }),
            None => Ok(Triple { a, b, n }),
        }
    }

    pub fn a(&self) -> &BigUint {
        &self.a
    }

    pub fn b(&self) -> &BigUint {
        &self.b
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Same pair, different index.
    pub fn with_n(&self, n: u64) -> Result<Self> {
        Triple::new(self.a.clone(), self.b.clone(), n)
    }

    /// `a^n - b^n`
    pub fn difference_of_powers(&self) -> BigUint {
        let e = self.n as u32;
        self.a.pow(e) - self.b.pow(e)
    }
}

/// Memo of cyclotomic coefficient vectors for indices up to `limit`.
///
/// Entries are written once and never mutated, so concurrent readers see a
/// consistent table.
#[derive(Debug)]
pub struct CyclotomicCache {
    limit: u64,
    table: RwLock<HashMap<u64, Arc<IntPoly>>>,
}

impl CyclotomicCache {
    pub fn new(limit: u64) -> Self {
        CyclotomicCache {
            limit,
            table: RwLock::new(HashMap::new()),
        }
    }

    /// The process-wide cache, memoizing indices up to 10 000.
    pub fn global() -> &'static CyclotomicCache {
        static GLOBAL: OnceLock<CyclotomicCache> = OnceLock::new();
        GLOBAL.get_or_init(|| CyclotomicCache::new(10_000))
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn get(&self, n: u64) -> Result<Arc<IntPoly>> {
        if n == 0 {
            return Err(Error::ZeroArgument("cyclotomic_coeffs"));
        }
        if let Some(poly) = self.table.read().unwrap().get(&n) {
            return Ok(Arc::clone(poly));
        }
        let poly = Arc::new(self.compute(n)?);
        if n <= self.limit {
            let mut table = self.table.write().unwrap();
            // another thread may have won the race; keep the first entry
            return Ok(Arc::clone(table.entry(n).or_insert(poly)));
        }
        Ok(poly)
    }

    fn compute(&self, n: u64) -> Result<IntPoly> {
        let mut poly = IntPoly::x_pow_minus_one(n as usize);
        // largest degrees first keeps the running quotient short
        for &d in divisors(n).iter().rev().skip(1) {
            let phi_d = self.get(d)?;
            poly = poly
                .div_exact(&phi_d)?
                .ok_or(Error::InexactDivision { n })?;
        }
        Ok(poly)
    }
}

/// Exact coefficients of `Φ_n(x)`.
pub fn cyclotomic_coeffs(n: u64) -> Result<Arc<IntPoly>> {
    CyclotomicCache::global().get(n)
}

/// `Φ_n(a, b) = Σ c_k a^k b^(φ(n) - k)`, evaluated by homogenized Horner.
pub fn eval_homogeneous(t: &Triple) -> Result<BigUint> {
    match t.n {
        1 => return Ok(&t.a - &t.b),
        2 => return Ok(&t.a + &t.b),
        _ => {}
    }
    let poly = cyclotomic_coeffs(t.n)?;
    let a = BigInt::from(t.a.clone());
    let b = BigInt::from(t.b.clone());
    let coeffs = poly.coeffs();
    let mut acc = BigInt::from(*coeffs.last().unwrap());
    let mut b_pow = BigInt::one();
    for &c in coeffs.iter().rev().skip(1) {
        b_pow *= &b;
        acc = acc * &a + &b_pow * c;
    }
    to_positive(acc, t.n)
}

fn to_positive(x: BigInt, n: u64) -> Result<BigUint> {
    match x.sign() {
        Sign::Plus => Ok(x.magnitude().clone()),
        // Φ_n(a, b) >= 1 whenever a > b >= 1
        _ => Err(Error::InexactDivision { n }),
    }
}

/// `Φ_n(a, b) = Π_{d | n} (a^(n/d) - b^(n/d))^μ(d)` with one exact division.
pub fn eval_mobius(t: &Triple) -> Result<BigUint> {
    match t.n {
        1 => return Ok(&t.a - &t.b),
        2 => return Ok(&t.a + &t.b),
        _ => {}
    }
    let mut numer = BigUint::one();
    let mut denom = BigUint::one();
    for d in divisors(t.n) {
        let e = (t.n / d) as u32;
        match mobius(d)? {
            1 => numer *= t.a.pow(e) - t.b.pow(e),
            -1 => denom *= t.a.pow(e) - t.b.pow(e),
            _ => {}
        }
    }
    let (q, r) = numer.div_rem(&denom);
    if !r.is_zero() {
        return Err(Error::InexactDivision { n: t.n });
    }
    Ok(q)
}

/// Evaluates by peeling prime powers off the index:
/// `Φ_(p^β k)(a, b) = Φ_(pk)(a^(p^(β-1)), b^(p^(β-1)))` and
/// `Φ_(pk)(a, b) = Φ_k(a^p, b^p) / Φ_k(a, b)` for `p ∤ k`.
pub fn eval_recursive(t: &Triple) -> Result<BigUint> {
    recursive_value(t.n, &t.a, &t.b)
}

fn recursive_value(n: u64, a: &BigUint, b: &BigUint) -> Result<BigUint> {
    match n {
        1 => return Ok(a - b),
        2 => return Ok(a + b),
        _ => {}
    }
    let &(p, beta) = factor_u64(n).last().unwrap();
    let k = n / p.pow(beta);
    let lift = p.pow(beta - 1) as u32;
    let (a1, b1) = (a.pow(lift), b.pow(lift));
    let (ap, bp) = (a1.pow(p as u32), b1.pow(p as u32));
    let numer = recursive_value(k, &ap, &bp)?;
    let denom = recursive_value(k, &a1, &b1)?;
    let (q, r) = numer.div_rem(&denom);
    if !r.is_zero() {
        return Err(Error::InexactDivision { n });
    }
    Ok(q)
}

/// Checks `a^n - b^n = Π_{d | n} Φ_d(a, b)` exactly.
pub fn product_identity_check(t: &Triple) -> Result<bool> {
    let mut product = BigUint::one();
    for d in divisors(t.n) {
        product *= eval_homogeneous(&t.with_n(d)?)?;
    }
    Ok(product == t.difference_of_powers())
}

/// Checks `(a - b)^φ(n) < Φ_n(a, b) < (a + b)^φ(n)`, defined for `n >= 3`.
pub fn bounds_check(t: &Triple) -> Result<bool> {
    if t.n < 3 {
        return Err(Error::IndexTooSmall {
            op: "bounds_check",
            n: t.n,
            min: 3,
        });
    }
    let phi = euler_phi(t.n)? as u32;
    let value = eval_homogeneous(t)?;
    let lower = (&t.a - &t.b).pow(phi);
    let upper = (&t.a + &t.b).pow(phi);
    Ok(lower < value && value < upper)
}
