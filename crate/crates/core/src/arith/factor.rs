//! Integer factorization: trial division, Pollard rho (Brent) and ECM,
//! each bounded by a [`FactorEffort`] budget.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::ecm::EcmCurve;
use super::montgomery::{with_ring, ModRing, RingTask};
use super::primality::{certify_prime, primality, Primality};
use super::sieve::sieve_up_to;

/// Work limits for [`factorize`]. The rho and ECM budgets apply to every
/// composite piece separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorEffort {
    /// Trial division by every prime up to this bound.
    pub trial_bound: u64,
    /// Pollard rho iterations per composite piece.
    pub rho_steps: u64,
    /// ECM curves per composite piece, drawn from an escalating B1 schedule.
    pub ecm_curves: u32,
}

impl Default for FactorEffort {
    fn default() -> Self {
        FactorEffort {
            trial_bound: 1_000_000,
            rho_steps: 1 << 16,
            ecm_curves: 3000,
        }
    }
}

impl FactorEffort {
    /// Trial division only.
    pub fn trial_only(trial_bound: u64) -> Self {
        FactorEffort {
            trial_bound,
            rho_steps: 0,
            ecm_curves: 0,
        }
    }

    // Budget for the N-1 factorizations behind primality certificates.
    pub(crate) fn for_certificate(&self) -> Self {
        FactorEffort {
            trial_bound: self.trial_bound.min(100_000),
            rho_steps: self.rho_steps.min(1 << 14),
            ecm_curves: self.ecm_curves.min(60),
        }
    }
}

/// Prime factorization of `value`, possibly partial.
///
/// `factors` holds proven primes in increasing order. When the budget runs
/// out, the unfactored remainder is kept in `cofactor` and the
/// factorization is incomplete; the cofactor is never reported as prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    value: BigUint,
    factors: Vec<(BigUint, u32)>,
    cofactor: Option<BigUint>,
}

impl Factorization {
    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn cofactor(&self) -> Option<&BigUint> {
        self.cofactor.as_ref()
    }

    pub fn is_complete(&self) -> bool {
        self.cofactor.is_none()
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, e)| *e)
    }

    /// Product of the listed prime powers.
    pub fn factored_part(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
    }
}

// x mod p for p < 2^32 without a 128-bit division.
fn rem_small(digits: &[u64], p: u64, radix_mod_p: u64) -> u64 {
    digits
        .iter()
        .rev()
        .fold(0u64, |r, &d| (r * radix_mod_p + d % p) % p)
}

struct Accumulator {
    found: BTreeMap<BigUint, u32>,
    unresolved: BigUint,
}

impl Accumulator {
    fn add(&mut self, p: BigUint, e: u32) {
        *self.found.entry(p).or_insert(0) += e;
    }
}

/// Strips all prime factors up to `bound` from `m`, returning what is left.
fn trial_divide(m: &mut BigUint, bound: u64, acc: &mut Accumulator) {
    let sieve = sieve_up_to(bound);
    for p in sieve.primes_up_to(bound) {
        if let Some(small) = m.to_u64() {
            if small == 1 {
                return;
            }
            if p.saturating_mul(p) > small {
                // m itself is prime
                acc.add(m.clone(), 1);
                *m = BigUint::one();
                return;
            }
            if small % p == 0 {
                let mut e = 0;
                let mut s = small;
                while s % p == 0 {
                    s /= p;
                    e += 1;
                }
                acc.add(BigUint::from(p), e);
                *m = BigUint::from(s);
            }
            continue;
        }
        let radix_mod_p = (u64::MAX % p + 1) % p;
        let digits = m.to_u64_digits();
        if rem_small(&digits, p, radix_mod_p) == 0 {
            let mut e = 0;
            loop {
                let (q, r) = m.div_rem(&BigUint::from(p));
                if !r.is_zero() {
                    break;
                }
                *m = q;
                e += 1;
            }
            acc.add(BigUint::from(p), e);
            if primality(m) != Primality::Composite {
                return;
            }
        }
    }
}

struct BrentRho {
    c: u64,
    steps: u64,
}

impl RingTask for BrentRho {
    type Output = Option<BigUint>;

    fn run<R: ModRing>(self, ring: &R) -> Option<BigUint> {
        const BATCH: u64 = 128;
        let n = ring.modulus().clone();
        let c = ring.from_u64(self.c);
        let f = |z: &R::Elem| ring.add(&ring.sqr(z), &c);
        let mut y = ring.from_u64(2);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut q = ring.one();
        let mut g = BigUint::one();
        let mut r: u64 = 1;
        let mut used: u64 = 0;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            used += r;
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let len = BATCH.min(r - k);
                for _ in 0..len {
                    y = f(&y);
                    q = ring.mul(&q, &ring.sub(&x, &y));
                }
                g = ring.to_uint(&q).gcd(&n);
                k += BATCH;
                used += len;
            }
            r *= 2;
            if g.is_one() && used >= self.steps {
                return None;
            }
        }
        if g == n {
            // overshot inside the last batch; replay it one step at a time
            loop {
                ys = f(&ys);
                g = ring.to_uint(&ring.sub(&x, &ys)).gcd(&n);
                if !g.is_one() {
                    break;
                }
            }
        }
        (g != n).then_some(g)
    }
}

/// ECM bounds for the i-th curve: (B1, number of curves at that level).
const ECM_SCHEDULE: [(u64, u32); 6] = [
    (2_000, 25),
    (11_000, 90),
    (50_000, 300),
    (250_000, 700),
    (1_000_000, 1800),
    (3_000_000, u32::MAX),
];

fn ecm_bound(curve_index: u32) -> u64 {
    let mut remaining = curve_index;
    for (b1, count) in ECM_SCHEDULE {
        if remaining < count {
            return b1;
        }
        remaining -= count;
    }
    unreachable!("last schedule level is unbounded")
}

fn perfect_power(m: &BigUint) -> Option<(BigUint, u32)> {
    let max_k = m.bits() as u32;
    for k in 2..=max_k {
        let root = m.nth_root(k);
        if root < BigUint::from(2u32) {
            break;
        }
        if &root.pow(k) == m {
            // prefer the largest exponent so the root is not itself a power
            return perfect_power(&root)
                .map(|(r, j)| (r, j * k))
                .or(Some((root, k)));
        }
    }
    None
}

/// Finds a nontrivial divisor of the odd composite `m` within budget.
fn split(m: &BigUint, effort: &FactorEffort) -> Option<BigUint> {
    let mut used = 0;
    let mut c = 1;
    while used < effort.rho_steps {
        let steps = (effort.rho_steps - used).min(1 << 20);
        if let Some(d) = with_ring(m, BrentRho { c, steps }) {
            return Some(d);
        }
        used += steps;
        c += 2;
    }
    for i in 0..effort.ecm_curves {
        let b1 = ecm_bound(i);
        let curve = EcmCurve {
            sigma: 6 + i as u64,
            b1,
            b2: 50 * b1,
        };
        if let Some(d) = with_ring(m, curve) {
            return Some(d);
        }
    }
    None
}

/// Factors `x >= 1` as far as `effort` allows.
///
/// Every prime in the result is proven: small ones by the exact primality
/// test, larger ones by an N-1 certificate. Pieces that cannot be split or
/// certified end up in the cofactor.
///
/// # Panics
///
/// Panics if `x` is zero.
pub fn factorize(x: &BigUint, effort: &FactorEffort) -> Factorization {
    assert!(!x.is_zero(), "factorize: zero has no prime factorization");
    let mut acc = Accumulator {
        found: BTreeMap::new(),
        unresolved: BigUint::one(),
    };
    let mut m = x.clone();
    if let Some(tz) = m.trailing_zeros().filter(|&tz| tz > 0) {
        acc.add(BigUint::from(2u32), tz as u32);
        m >>= tz;
    }
    if primality(&m) == Primality::Composite {
        trial_divide(&mut m, effort.trial_bound.max(3), &mut acc);
    }

    let mut work: Vec<(BigUint, u32)> = vec![(m, 1)];
    while let Some((piece, mult)) = work.pop() {
        if piece.is_one() {
            continue;
        }
        match primality(&piece) {
            Primality::Prime => acc.add(piece, mult),
            Primality::ProbablePrime => {
                if certify_prime(&piece, &effort.for_certificate()) {
                    acc.add(piece, mult);
                } else {
                    acc.unresolved *= piece.pow(mult);
                }
            }
            Primality::Composite => {
                if let Some((root, k)) = perfect_power(&piece) {
                    work.push((root, mult * k));
                } else if let Some(d) = split(&piece, effort) {
                    let other = &piece / &d;
                    work.push((d, mult));
                    work.push((other, mult));
                } else {
                    acc.unresolved *= piece.pow(mult);
                }
            }
        }
    }

    // Split pieces can share primes, so an unresolved part may still hide
    // known ones; divide them out.
    let mut unresolved = std::mem::replace(&mut acc.unresolved, BigUint::one());
    if !unresolved.is_one() {
        let known: Vec<BigUint> = acc.found.keys().cloned().collect();
        for p in known {
            while (&unresolved % &p).is_zero() {
                unresolved /= &p;
                acc.add(p.clone(), 1);
            }
        }
    }
    let cofactor = (!unresolved.is_one()).then_some(unresolved);
    Factorization {
        value: x.clone(),
        factors: acc.found.into_iter().collect(),
        cofactor,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn brute_force(mut x: u64) -> Vec<(BigUint, u32)> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= x {
            let mut e = 0;
            while x % d == 0 {
                x /= d;
                e += 1;
            }
            if e > 0 {
                out.push((big(d), e));
            }
            d += 1;
        }
        if x > 1 {
            out.push((big(x), 1));
        }
        out
    }

    #[test]
    fn small_examples() {
        let f = factorize(&big(63), &FactorEffort::default());
        assert_eq!(f.factors(), &[(big(3), 2), (big(7), 1)]);
        assert!(f.is_complete());
        let one = factorize(&big(1), &FactorEffort::default());
        assert!(one.factors().is_empty() && one.is_complete());
        // 2^18 - 1, frozen from brute_force below
        let f = factorize(&big(262_143), &FactorEffort::default());
        assert_eq!(f.factors(), brute_force(262_143).as_slice());
        assert_eq!(
            f.factors(),
            &[(big(3), 3), (big(7), 1), (big(19), 1), (big(73), 1)]
        );
    }

    #[test]
    fn agrees_with_brute_force() {
        for x in (1..20_000u64).chain([999_983 * 999_979, 2_147_483_647, 4_294_967_297]) {
            let f = factorize(&big(x), &FactorEffort::default());
            assert!(f.is_complete());
            assert_eq!(f.factors(), brute_force(x).as_slice(), "x = {x}");
        }
    }

    #[test]
    fn rho_without_trial_division() {
        let effort = FactorEffort {
            trial_bound: 3,
            rho_steps: 1 << 18,
            ecm_curves: 0,
        };
        let x = big(1_000_003) * big(1_000_033) * big(101);
        let f = factorize(&x, &effort);
        assert!(f.is_complete());
        assert_eq!(f.factored_part(), x);
    }

    #[test]
    fn exhausted_budget_keeps_cofactor() {
        let x = big(1_000_003) * big(1_000_033);
        let f = factorize(&x, &FactorEffort::trial_only(1000));
        assert!(!f.is_complete());
        assert_eq!(f.cofactor(), Some(&x));
        assert!(f.factors().is_empty());
    }

    #[test]
    fn perfect_powers() {
        let p = big(1_000_003);
        let x = p.pow(6) * 5u32;
        let f = factorize(&x, &FactorEffort::trial_only(1000));
        assert_eq!(f.factors(), &[(big(5), 1), (p, 6)]);
    }

    #[test]
    fn mersenne_composites_need_ecm() {
        // 2^128 + 1 = 59649589127497217 * 5704689200685129054721
        let x = (BigUint::one() << 128) + 1u32;
        let f = factorize(&x, &FactorEffort::default());
        assert!(f.is_complete());
        assert_eq!(
            f.factors(),
            &[
                ("59649589127497217".parse().unwrap(), 1),
                ("5704689200685129054721".parse().unwrap(), 1)
            ]
        );
    }
}
