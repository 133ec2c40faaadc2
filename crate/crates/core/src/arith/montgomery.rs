//! Modular arithmetic backends used by the primality and factoring code.
//!
//! Odd moduli up to 512 bits use Montgomery multiplication over a fixed
//! number of 64-bit limbs; anything else falls back to plain `BigUint`
//! arithmetic. Algorithms are written once against [`ModRing`] and
//! instantiated through [`with_ring`].

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub(crate) trait ModRing {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn modulus(&self) -> &BigUint;
    fn from_uint(&self, x: &BigUint) -> Self::Elem;
    fn to_uint(&self, x: &Self::Elem) -> BigUint;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;

    fn sqr(&self, x: &Self::Elem) -> Self::Elem {
        self.mul(x, x)
    }

    fn from_u64(&self, x: u64) -> Self::Elem {
        self.from_uint(&BigUint::from(x))
    }

    fn is_zero(&self, x: &Self::Elem) -> bool {
        *x == self.zero()
    }

    fn pow(&self, base: &Self::Elem, exp: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..exp.bits()).rev() {
            acc = self.sqr(&acc);
            if exp.bit(i) {
                acc = self.mul(&acc, base);
            }
        }
        acc
    }
}

/// A computation that can run over any modular backend.
pub(crate) trait RingTask {
    type Output;
    fn run<R: ModRing>(self, ring: &R) -> Self::Output;
}

/// Picks the narrowest backend able to hold `modulus` and runs `task` on it.
pub(crate) fn with_ring<T: RingTask>(modulus: &BigUint, task: T) -> T::Output {
    if modulus.bit(0) && *modulus > BigUint::one() {
        match modulus.bits() {
            0..=64 => return task.run(&Mont::<1>::new(modulus)),
            65..=128 => return task.run(&Mont::<2>::new(modulus)),
            129..=192 => return task.run(&Mont::<3>::new(modulus)),
            193..=256 => return task.run(&Mont::<4>::new(modulus)),
            257..=384 => return task.run(&Mont::<6>::new(modulus)),
            385..=512 => return task.run(&Mont::<8>::new(modulus)),
            _ => {}
        }
    }
    task.run(&PlainRing::new(modulus))
}

/// Montgomery representation modulo an odd `n < 2^(64 L)`.
#[derive(Debug, Clone)]
pub(crate) struct Mont<const L: usize> {
    n: [u64; L],
    // -n^{-1} mod 2^64
    n_inv: u64,
    r2: [u64; L],
    one: [u64; L],
    modulus: BigUint,
}

fn to_limbs<const L: usize>(x: &BigUint) -> [u64; L] {
    let mut out = [0u64; L];
    for (slot, digit) in out.iter_mut().zip(x.iter_u64_digits()) {
        *slot = digit;
    }
    out
}

fn from_limbs(x: &[u64]) -> BigUint {
    let mut bytes = Vec::with_capacity(x.len() * 8);
    for limb in x {
        bytes.extend_from_slice(&limb.to_le_bytes());
    }
    BigUint::from_bytes_le(&bytes)
}

impl<const L: usize> Mont<L> {
    pub(crate) fn new(modulus: &BigUint) -> Self {
        assert!(modulus.bit(0), "Montgomery modulus must be odd");
        assert!(modulus.bits() <= 64 * L as u64);
        let n: [u64; L] = to_limbs(modulus);
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(n[0].wrapping_mul(inv)));
        }
        let r = BigUint::one() << (64 * L);
        let one = to_limbs(&(&r % modulus));
        let r2 = to_limbs(&((&r * &r) % modulus));
        Mont {
            n,
            n_inv: inv.wrapping_neg(),
            r2,
            one,
            modulus: modulus.clone(),
        }
    }

    #[inline]
    fn geq_n(&self, t: &[u64; L]) -> bool {
        for i in (0..L).rev() {
            if t[i] != self.n[i] {
                return t[i] > self.n[i];
            }
        }
        true
    }

    #[inline]
    fn sub_n(&self, t: &mut [u64; L]) {
        let mut borrow = false;
        for i in 0..L {
            let (d1, b1) = t[i].overflowing_sub(self.n[i]);
            let (d2, b2) = d1.overflowing_sub(borrow as u64);
            t[i] = d2;
            borrow = b1 | b2;
        }
    }

    // CIOS Montgomery product: a * b * R^{-1} mod n.
    #[inline]
    fn mont_mul(&self, a: &[u64; L], b: &[u64; L]) -> [u64; L] {
        let mut t = [0u64; L];
        let mut t_hi: u64 = 0;
        for i in 0..L {
            let bi = b[i] as u128;
            let mut carry: u64 = 0;
            for j in 0..L {
                let s = t[j] as u128 + (a[j] as u128) * bi + carry as u128;
                t[j] = s as u64;
                carry = (s >> 64) as u64;
            }
            let s = t_hi as u128 + carry as u128;
            t_hi = s as u64;
            let t_top = (s >> 64) as u64;

            let m = t[0].wrapping_mul(self.n_inv) as u128;
            let s = t[0] as u128 + m * self.n[0] as u128;
            let mut carry = (s >> 64) as u64;
            for j in 1..L {
                let s = t[j] as u128 + m * self.n[j] as u128 + carry as u128;
                t[j - 1] = s as u64;
                carry = (s >> 64) as u64;
            }
            let s = t_hi as u128 + carry as u128;
            t[L - 1] = s as u64;
            t_hi = t_top + (s >> 64) as u64;
        }
        if t_hi != 0 || self.geq_n(&t) {
            self.sub_n(&mut t);
        }
        t
    }
}

impl<const L: usize> ModRing for Mont<L> {
    type Elem = [u64; L];

    fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    fn from_uint(&self, x: &BigUint) -> [u64; L] {
        let reduced = if x >= &self.modulus {
            x % &self.modulus
        } else {
            x.clone()
        };
        self.mont_mul(&to_limbs(&reduced), &self.r2)
    }

    fn to_uint(&self, x: &[u64; L]) -> BigUint {
        let mut unit = [0u64; L];
        unit[0] = 1;
        from_limbs(&self.mont_mul(x, &unit))
    }

    fn zero(&self) -> [u64; L] {
        [0u64; L]
    }

    fn one(&self) -> [u64; L] {
        self.one
    }

    #[inline]
    fn add(&self, x: &[u64; L], y: &[u64; L]) -> [u64; L] {
        let mut t = [0u64; L];
        let mut carry = false;
        for i in 0..L {
            let (s1, c1) = x[i].overflowing_add(y[i]);
            let (s2, c2) = s1.overflowing_add(carry as u64);
            t[i] = s2;
            carry = c1 | c2;
        }
        if carry || self.geq_n(&t) {
            self.sub_n(&mut t);
        }
        t
    }

    #[inline]
    fn sub(&self, x: &[u64; L], y: &[u64; L]) -> [u64; L] {
        let mut t = [0u64; L];
        let mut borrow = false;
        for i in 0..L {
            let (d1, b1) = x[i].overflowing_sub(y[i]);
            let (d2, b2) = d1.overflowing_sub(borrow as u64);
            t[i] = d2;
            borrow = b1 | b2;
        }
        if borrow {
            let mut carry = false;
            for i in 0..L {
                let (s1, c1) = t[i].overflowing_add(self.n[i]);
                let (s2, c2) = s1.overflowing_add(carry as u64);
                t[i] = s2;
                carry = c1 | c2;
            }
        }
        t
    }

    #[inline]
    fn mul(&self, x: &[u64; L], y: &[u64; L]) -> [u64; L] {
        self.mont_mul(x, y)
    }

    fn is_zero(&self, x: &[u64; L]) -> bool {
        x.iter().all(|&limb| limb == 0)
    }
}

/// Schoolbook fallback for even or very large moduli.
#[derive(Debug, Clone)]
pub(crate) struct PlainRing {
    modulus: BigUint,
}

impl PlainRing {
    pub(crate) fn new(modulus: &BigUint) -> Self {
        assert!(!modulus.is_zero(), "modulus must be nonzero");
        PlainRing {
            modulus: modulus.clone(),
        }
    }
}

impl ModRing for PlainRing {
    type Elem = BigUint;

    fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    fn from_uint(&self, x: &BigUint) -> BigUint {
        x % &self.modulus
    }

    fn to_uint(&self, x: &BigUint) -> BigUint {
        x.clone()
    }

    fn zero(&self) -> BigUint {
        BigUint::zero()
    }

    fn one(&self) -> BigUint {
        BigUint::one() % &self.modulus
    }

    fn add(&self, x: &BigUint, y: &BigUint) -> BigUint {
        let s = x + y;
        if s >= self.modulus {
            s - &self.modulus
        } else {
            s
        }
    }

    fn sub(&self, x: &BigUint, y: &BigUint) -> BigUint {
        if x >= y {
            x - y
        } else {
            &self.modulus - (y - x)
        }
    }

    fn mul(&self, x: &BigUint, y: &BigUint) -> BigUint {
        (x * y) % &self.modulus
    }

    fn pow(&self, base: &BigUint, exp: &BigUint) -> BigUint {
        base.modpow(exp, &self.modulus)
    }
}
