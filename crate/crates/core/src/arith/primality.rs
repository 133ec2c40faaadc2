//! Primality testing.
//!
//! Below [`deterministic_limit`] (about 3.3e24, comfortably above 2^64) the
//! strong Fermat test with the first 13 primes as witnesses is exact. Above
//! it the first 20 primes are used and the answer is only a probable prime;
//! [`certify_prime`] upgrades such a number to a proven prime with an
//! N-1 certificate (Pocklington, or Brillhart-Lehmer-Selfridge when only a
//! cube root of N-1 is factored).

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::factor::{factorize, FactorEffort};
use super::montgomery::{with_ring, ModRing, RingTask};

const DETERMINISTIC_WITNESSES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const PROBABLE_WITNESSES: [u64; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];
const SMALL_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Exclusive upper bound of the exact regime (the 13-witness pseudoprime bound).
pub fn deterministic_limit() -> &'static BigUint {
    static LIMIT: OnceLock<BigUint> = OnceLock::new();
    LIMIT.get_or_init(|| "3317044064679887385961981".parse().unwrap())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Primality {
    Composite,
    /// Exact answer from the deterministic regime.
    Prime,
    /// Passed the fixed 20-witness schedule above the deterministic limit.
    ProbablePrime,
}

struct StrongFermat<'a> {
    witnesses: &'a [u64],
}

impl RingTask for StrongFermat<'_> {
    type Output = bool;

    fn run<R: ModRing>(self, ring: &R) -> bool {
        let n = ring.modulus();
        let n_minus_1 = n - 1u32;
        let s = n_minus_1.trailing_zeros().unwrap_or(0);
        let d = &n_minus_1 >> s;
        let minus_one = ring.sub(&ring.zero(), &ring.one());
        'witness: for &w in self.witnesses {
            let base = BigUint::from(w) % n;
            if base.is_zero() {
                continue;
            }
            let mut x = ring.pow(&ring.from_uint(&base), &d);
            if x == ring.one() || x == minus_one {
                continue;
            }
            for _ in 1..s {
                x = ring.sqr(&x);
                if x == minus_one {
                    continue 'witness;
                }
                if x == ring.one() {
                    return false;
                }
            }
            return false;
        }
        true
    }
}

/// Classifies `x`, exactly below the deterministic limit.
pub fn primality(x: &BigUint) -> Primality {
    if let Some(small) = x.to_u64() {
        return if is_prime_u64(small) {
            Primality::Prime
        } else {
            Primality::Composite
        };
    }
    for &p in &SMALL_PRIMES {
        if (x % p).is_zero() {
            return Primality::Composite;
        }
    }
    let deterministic = x < deterministic_limit();
    let witnesses: &[u64] = if deterministic {
        &DETERMINISTIC_WITNESSES
    } else {
        &PROBABLE_WITNESSES
    };
    match (with_ring(x, StrongFermat { witnesses }), deterministic) {
        (false, _) => Primality::Composite,
        (true, true) => Primality::Prime,
        (true, false) => Primality::ProbablePrime,
    }
}

pub fn is_prime(x: &BigUint) -> bool {
    primality(x) != Primality::Composite
}

pub fn is_prime_u64(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if x % p == 0 {
            return x == p;
        }
    }
    if x < 97 * 97 {
        return true;
    }
    with_ring(
        &BigUint::from(x),
        StrongFermat {
            witnesses: &DETERMINISTIC_WITNESSES,
        },
    )
}

/// Returns true only when `x` is a proven prime: either in the exact regime
/// or backed by an N-1 certificate found within `effort`.
pub fn certify_prime(x: &BigUint, effort: &FactorEffort) -> bool {
    match primality(x) {
        Primality::Composite => false,
        Primality::Prime => true,
        Primality::ProbablePrime => n_minus_one_certificate(x, effort),
    }
}

struct PocklingtonWitness<'a> {
    exponent_cofactors: &'a [BigUint],
}

impl RingTask for PocklingtonWitness<'_> {
    type Output = bool;

    // For each prime q | F find a base a with a^(N-1) = 1 and
    // gcd(a^((N-1)/q) - 1, N) = 1.
    fn run<R: ModRing>(self, ring: &R) -> bool {
        let n = ring.modulus().clone();
        let n_minus_1 = &n - 1u32;
        'factor: for cofactor in self.exponent_cofactors {
            for &a in &PROBABLE_WITNESSES {
                let base = ring.from_u64(a);
                if ring.pow(&base, &n_minus_1) != ring.one() {
                    return false;
                }
                let t = ring.sub(&ring.pow(&base, cofactor), &ring.one());
                if ring.to_uint(&t).gcd(&n).is_one() {
                    continue 'factor;
                }
            }
            return false;
        }
        true
    }
}

fn n_minus_one_certificate(n: &BigUint, effort: &FactorEffort) -> bool {
    let n_minus_1 = n - 1u32;
    let partial = factorize(&n_minus_1, effort);
    // Every listed factor of a Factorization is itself a proven prime.
    let mut f = BigUint::one();
    for (p, e) in partial.factors() {
        f *= p.pow(*e);
    }
    let f_cubed = &f * &f * &f;
    if &f_cubed < n {
        return false;
    }
    let cofactors: Vec<BigUint> = partial
        .factors()
        .iter()
        .map(|(p, _)| &n_minus_1 / p)
        .collect();
    if !with_ring(
        n,
        PocklingtonWitness {
            exponent_cofactors: &cofactors,
        },
    ) {
        return false;
    }
    if &(&f * &f) > n {
        return true;
    }
    // N^(1/3) <= F < N^(1/2): every prime factor is 1 mod F, so N has at
    // most two; writing N = c2 F^2 + c1 F + 1, N is composite exactly when
    // c1^2 - 4 c2 is a perfect square.
    let r = &n_minus_1 / &f;
    let (c2, c1) = r.div_rem(&f);
    let c1_sq = &c1 * &c1;
    let four_c2 = &c2 * 4u32;
    if c1_sq < four_c2 {
        return true;
    }
    let disc = c1_sq - four_c2;
    let root = disc.sqrt();
    &root * &root != disc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_is_prime(x: u64) -> bool {
        x >= 2 && (2..).take_while(|d| d * d <= x).all(|d| x % d != 0)
    }

    #[test]
    fn matches_trial_division_below_100k() {
        for x in 0..100_000u64 {
            assert_eq!(is_prime_u64(x), trial_division_is_prime(x), "x = {x}");
        }
    }

    #[test]
    fn examples() {
        assert!(!is_prime(&BigUint::from(1u32)));
        assert!(is_prime(&BigUint::from(31u32)));
        assert!(!is_prime(&BigUint::from(57u32)));
    }

    #[test]
    fn strong_pseudoprimes_rejected() {
        // strong pseudoprimes to several small bases
        for x in [
            2047u64,
            1_373_653,
            25_326_001,
            3_215_031_751,
            2_152_302_898_747,
            3_474_749_660_383,
            341_550_071_728_321,
            3_825_123_056_546_413_051,
        ] {
            assert!(!is_prime_u64(x), "{x}");
        }
        // psi_12, a strong pseudoprime to the first 12 prime bases
        let psi12: BigUint = "318665857834031151167461".parse().unwrap();
        assert_eq!(primality(&psi12), Primality::Composite);
    }

    #[test]
    fn large_known_primes() {
        let m89 = (BigUint::one() << 89) - 1u32;
        let m127 = (BigUint::one() << 127) - 1u32;
        assert_eq!(primality(&m89), Primality::ProbablePrime);
        assert!(certify_prime(&m89, &FactorEffort::default()));
        assert!(certify_prime(&m127, &FactorEffort::default()));
        let m67 = (BigUint::one() << 67) - 1u32; // 193707721 * 761838257287
        assert_eq!(primality(&m67), Primality::Composite);
        let m61 = (BigUint::one() << 61) - 1u32;
        assert_eq!(primality(&m61), Primality::Prime);
    }

    #[test]
    fn certificate_rejects_composites() {
        let m101 = (BigUint::one() << 101) - 1u32;
        assert!(!certify_prime(&m101, &FactorEffort::default()));
    }
}
