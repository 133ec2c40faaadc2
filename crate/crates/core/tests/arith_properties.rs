use num_bigint::BigUint;
use num_traits::One;
use proptest::prelude::*;
use zsig_core::arith::{divisors, euler_phi, factorize, gcd, mobius, vp, FactorEffort};

proptest! {
    #[test]
    fn totient_is_multiplicative(m in 1u64..1_000_000, n in 1u64..1_000_000) {
        prop_assume!(gcd(&m, &n) == 1);
        prop_assert_eq!(euler_phi(m * n).unwrap(), euler_phi(m).unwrap() * euler_phi(n).unwrap());
    }

    #[test]
    fn factorization_multiplies_back(x in 1u128..u128::MAX) {
        let x = BigUint::from(x);
        let f = factorize(&x, &FactorEffort::default());
        prop_assert!(f.is_complete());
        let product = f
            .factors()
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e));
        prop_assert_eq!(product, x);
        let primes: Vec<_> = f.primes().cloned().collect();
        prop_assert!(primes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn valuation_is_exact(base in 1u64..1_000_000, e in 0u32..12, p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 101, 65537])) {
        prop_assume!(base % p != 0);
        let x = BigUint::from(base) * BigUint::from(p).pow(e);
        prop_assert_eq!(vp(&x, &BigUint::from(p)).unwrap(), e);
    }
}

#[test]
fn totient_sums_over_divisors() {
    for n in 1..=10_000u64 {
        let total: u64 = divisors(n).iter().map(|&d| euler_phi(d).unwrap()).sum();
        assert_eq!(total, n, "n = {n}");
    }
}

#[test]
fn mobius_sums_over_divisors() {
    for n in 1..=5_000u64 {
        let total: i64 = divisors(n).iter().map(|&d| mobius(d).unwrap() as i64).sum();
        assert_eq!(total, (n == 1) as i64, "n = {n}");
    }
}

#[test]
fn totient_square_root_bound() {
    for n in 1..=1_000_000u64 {
        let phi = euler_phi(n).unwrap();
        assert!(4 * phi * phi >= n, "n = {n}");
    }
}

#[test]
fn gcd_of_zero() {
    assert_eq!(gcd(&0u64, &0u64), 0);
    assert_eq!(gcd(&0u64, &9u64), 9);
}
