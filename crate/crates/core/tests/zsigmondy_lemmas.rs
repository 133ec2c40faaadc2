//! Structural facts about Zsigmondy primes, checked over small ranges.

use num_bigint::BigUint;
use num_traits::Zero;
use proptest::prelude::*;
use zsig_core::arith::{factorize, FactorEffort};
use zsig_core::cyclotomic::{eval_homogeneous, Triple};
use zsig_core::valuation::order_dividing;
use zsig_core::zsigmondy::{
    analyze, classify_exception, classify_prime_divisor, has_large_zsigmondy_fast, sufficiency_check,
    zsigmondy_primes, ExceptionCase,
};

fn triples(a_max: u64, n_max: u64) -> impl Iterator<Item = Triple> {
    (2..=a_max).flat_map(move |a| {
        (1..a).flat_map(move |b| (2..=n_max).filter_map(move |n| Triple::new(a, b, n).ok()))
    })
}

#[test]
fn zsigmondy_primes_divide_the_cyclotomic_value() {
    let effort = FactorEffort::default();
    for t in triples(10, 24) {
        let full = factorize(&t.difference_of_powers(), &effort);
        assert!(full.is_complete());
        let phi = eval_homogeneous(&t).unwrap();
        let from_phi = zsigmondy_primes(&t, &effort).unwrap();
        let mut from_full = Vec::new();
        for (q, e) in full.factors() {
            if order_dividing(q, t.a(), t.b(), t.n()).unwrap() == Some(t.n()) {
                assert!((&phi % q).is_zero(), "{t:?} q={q}");
                from_full.push((q.clone(), *e));
            }
        }
        assert_eq!(from_phi, from_full, "{t:?}");
    }
}

#[test]
fn small_zsigmondy_primes_are_n_plus_one() {
    for t in triples(16, 30) {
        let r = analyze(&t, &FactorEffort::default(), 1).unwrap();
        for (q, e) in &r.zsig_primes {
            if !r.large_zsig_primes.contains(q) {
                assert_eq!(*q, BigUint::from(t.n() + 1), "{t:?}");
                assert_eq!(*e, 1);
            }
        }
    }
}

#[test]
fn every_prime_divisor_is_classified() {
    for t in triples(14, 30) {
        let phi = eval_homogeneous(&t).unwrap();
        let f = factorize(&phi, &FactorEffort::default());
        for p in f.primes() {
            classify_prime_divisor(p, &t).unwrap_or_else(|e| panic!("{t:?} p={p}: {e}"));
        }
    }
}

#[test]
fn decisions_agree_where_factored() {
    for t in triples(16, 30) {
        let r = analyze(&t, &FactorEffort::default(), 1).unwrap();
        assert!(r.factorization_complete, "{t:?}");
        assert_eq!(r.fast.has_large, !r.large_zsig_primes.is_empty(), "{t:?}");
        if t.n() >= 3 && sufficiency_check(&t).unwrap() {
            assert!(r.has_large, "{t:?}");
        }
    }
}

#[test]
fn sufficiency_is_not_necessary() {
    let t = Triple::new(2u32, 1u32, 18).unwrap();
    assert!(!sufficiency_check(&t).unwrap());
    assert!(has_large_zsigmondy_fast(&t).unwrap().zsigmondy_part == BigUint::from(19u32));
    // 2^18 - 1 = 3^3 * 7 * 19 * 73, and 73 has order 9
    assert_eq!(zsigmondy_primes(&t, &FactorEffort::default()).unwrap(), vec![(BigUint::from(19u32), 1)]);
}

#[test]
fn table_misses_two_triples() {
    // Phi_6(5, 1) = 21 = 3 * 7 and Phi_10(3, 2) = 55 = 5 * 11: the only
    // Zsigmondy prime is n + 1 in both, yet neither is tabulated.
    for (a, b, n) in [(5u32, 1u32, 6), (3, 2, 10)] {
        let t = Triple::new(a, b, n).unwrap();
        let r = analyze(&t, &FactorEffort::default(), 1).unwrap();
        assert!(!r.has_large && !r.fast.has_large);
        assert_eq!(r.zsig_primes, vec![(BigUint::from(n + 1), 1)]);
        assert_eq!(classify_exception(&t).unwrap(), ExceptionCase::None);
        assert!(!r.decisions_agree());
    }
}

proptest! {
    #[test]
    fn fast_decision_matches_factorization(a in 2u64..200, b in 1u64..200, n in 2u64..25) {
        let Ok(t) = Triple::new(a, b, n) else { return Ok(()) };
        let r = analyze(&t, &FactorEffort::default(), 1).unwrap();
        prop_assume!(r.factorization_complete);
        prop_assert_eq!(r.fast.has_large, !r.large_zsig_primes.is_empty());
        // the stripped part consists of Zsigmondy primes only
        let zsig_product = r
            .zsig_primes
            .iter()
            .fold(BigUint::from(1u32), |acc, (q, e)| acc * q.pow(*e));
        prop_assert_eq!(zsig_product, r.fast.zsigmondy_part);
    }

    #[test]
    fn n_two_strips_the_whole_two_power(a in 2u64..100_000, b in 1u64..100_000) {
        let Ok(t) = Triple::new(a, b, 2) else { return Ok(()) };
        let d = has_large_zsigmondy_fast(&t).unwrap();
        let sum = BigUint::from(a + b);
        let twos = sum.trailing_zeros().unwrap_or(0) as u32;
        prop_assert_eq!(d.zsigmondy_part, sum >> twos);
        prop_assert_eq!(d.stripped.is_some(), (a + b) % 2 == 0);
    }
}
