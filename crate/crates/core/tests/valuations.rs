use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use proptest::prelude::*;
use zsig_core::arith::{divisors, is_prime_u64, vp};
use zsig_core::cyclotomic::{eval_homogeneous, Triple};
use zsig_core::valuation::{lte_valuation, multiplicative_order, vp_cyclotomic};

fn coprime_triple() -> impl Strategy<Value = Triple> {
    (2u64..40, 1u64..40, 1u64..80).prop_filter_map("coprime, a > b", |(a, b, n)| Triple::new(a, b, n).ok())
}

fn small_prime() -> impl Strategy<Value = u64> {
    (2u64..200).prop_filter("prime", |&p| is_prime_u64(p))
}

fn applies(p: u64, t: &Triple) -> bool {
    let (a, b) = (t.a().to_u64().unwrap(), t.b().to_u64().unwrap());
    if p == 2 {
        a % 2 == 1 && b % 2 == 1
    } else {
        a % p != 0 && b % p != 0
    }
}

proptest! {
    #[test]
    fn closed_form_matches_evaluation(t in coprime_triple(), p in small_prime()) {
        prop_assume!(applies(p, &t));
        let p = BigUint::from(p);
        prop_assert_eq!(vp_cyclotomic(&p, &t).unwrap(), vp(&eval_homogeneous(&t).unwrap(), &p).unwrap());
    }

    // Summing the closed form over d | n recovers v_p(a^n - b^n).
    #[test]
    fn valuations_telescope(t in coprime_triple(), p in small_prime()) {
        prop_assume!(applies(p, &t));
        let big_p = BigUint::from(p);
        let total: u32 = divisors(t.n())
            .into_iter()
            .map(|d| vp_cyclotomic(&big_p, &t.with_n(d).unwrap()).unwrap())
            .sum();
        prop_assert_eq!(total, vp(&t.difference_of_powers(), &big_p).unwrap());
        // and agrees with LTE whenever p | a - b
        let (a, b) = (BigInt::from(t.a().clone()), BigInt::from(t.b().clone()));
        if let Ok(v) = lte_valuation(&big_p, &a, &b, t.n()) {
            prop_assert_eq!(v, total);
        }
    }

    #[test]
    fn order_divides_group_order(p in small_prime(), a in 1u64..1000, b in 1u64..1000) {
        prop_assume!(p > 2 && a % p != 0 && b % p != 0);
        let k = multiplicative_order(&BigUint::from(p), &BigUint::from(a), &BigUint::from(b)).unwrap();
        let k = k.to_u64().unwrap();
        prop_assert_eq!((p - 1) % k, 0);
        let lhs = (BigUint::from(a).pow(k as u32) + BigUint::from(p)) - BigUint::from(b).pow(k as u32) % p;
        prop_assert_eq!(lhs % p, BigUint::from(0u32));
    }
}

#[test]
fn large_prime_order() {
    // 2^61 - 1 is prime; 3 generates a subgroup whose order divides p - 1
    let p = (BigUint::from(1u32) << 61) - 1u32;
    let k = multiplicative_order(&p, &BigUint::from(3u32), &BigUint::from(1u32)).unwrap();
    assert_eq!((&p - 1u32) % &k, BigUint::from(0u32));
    assert_eq!(BigUint::from(3u32).modpow(&k, &p), BigUint::from(1u32));
}
