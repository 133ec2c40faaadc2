//! Odd-only Eratosthenes sieve shared by trial division and ECM stage 2.

use std::sync::{Arc, RwLock};

#[derive(Debug)]
pub(crate) struct Sieve {
    limit: u64,
    // bit i set <=> 2i+1 is composite
    composite: Vec<u64>,
}

impl Sieve {
    pub(crate) fn new(limit: u64) -> Self {
        let limit = limit.max(3);
        let len = (limit / 2 + 1) as usize;
        let mut composite = vec![0u64; len / 64 + 1];
        composite[0] |= 1; // 1 is not prime
        let mut i = 1usize;
        loop {
            let p = 2 * i as u64 + 1;
            if p * p > limit {
                break;
            }
            if composite[i / 64] >> (i % 64) & 1 == 0 {
                let mut j = (p * p / 2) as usize;
                while j < len {
                    composite[j / 64] |= 1 << (j % 64);
                    j += p as usize;
                }
            }
            i += 1;
        }
        Sieve { limit, composite }
    }

    pub(crate) fn limit(&self) -> u64 {
        self.limit
    }

    pub(crate) fn is_prime(&self, x: u64) -> bool {
        debug_assert!(x <= self.limit);
        if x < 2 {
            return false;
        }
        if x % 2 == 0 {
            return x == 2;
        }
        let i = (x / 2) as usize;
        self.composite[i / 64] >> (i % 64) & 1 == 0
    }

    /// Primes in `[2, bound]`, ascending.
    pub(crate) fn primes_up_to(&self, bound: u64) -> impl Iterator<Item = u64> + '_ {
        let bound = bound.min(self.limit);
        std::iter::once(2)
            .filter(move |_| bound >= 2)
            .chain((3..=bound).step_by(2).filter(move |&x| self.is_prime(x)))
    }
}

static SHARED: RwLock<Option<Arc<Sieve>>> = RwLock::new(None);

/// A sieve covering at least `limit`, grown on demand and then shared.
pub(crate) fn sieve_up_to(limit: u64) -> Arc<Sieve> {
    if let Some(s) = SHARED.read().unwrap().as_ref() {
        if s.limit() >= limit {
            return Arc::clone(s);
        }
    }
    let mut guard = SHARED.write().unwrap();
    if let Some(s) = guard.as_ref() {
        if s.limit() >= limit {
            return Arc::clone(s);
        }
    }
    let target = limit.max(1 << 20).next_power_of_two();
    let fresh = Arc::new(Sieve::new(target));
    *guard = Some(Arc::clone(&fresh));
    fresh
}
