//! Lenstra's elliptic curve method on Montgomery curves.
//!
//! Curves come from Suyama's parametrisation, points are handled in XZ
//! coordinates. Stage 2 is the standard baby-step/giant-step continuation
//! with `D = 2310`, pairing each prime `m D +/- j` in `(B1, B2]` with a
//! single cross product.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::montgomery::{ModRing, RingTask};
use super::sieve::sieve_up_to;

const STAGE2_D: u64 = 2310;

/// One ECM curve: `sigma` selects the curve, `b1`/`b2` the smoothness bounds.
#[derive(Debug, Clone, Copy)]
pub(crate) struct EcmCurve {
    pub sigma: u64,
    pub b1: u64,
    pub b2: u64,
}

#[derive(Debug, Clone)]
struct Point<E> {
    x: E,
    z: E,
}

struct Curve<'r, R: ModRing> {
    ring: &'r R,
    a24: R::Elem,
}

impl<R: ModRing> Curve<'_, R> {
    fn double(&self, p: &Point<R::Elem>) -> Point<R::Elem> {
        let r = self.ring;
        let s = r.sqr(&r.add(&p.x, &p.z));
        let d = r.sqr(&r.sub(&p.x, &p.z));
        let t = r.sub(&s, &d);
        Point {
            x: r.mul(&s, &d),
            z: r.mul(&t, &r.add(&d, &r.mul(&self.a24, &t))),
        }
    }

    // P + Q given P - Q.
    fn add(&self, p: &Point<R::Elem>, q: &Point<R::Elem>, diff: &Point<R::Elem>) -> Point<R::Elem> {
        let r = self.ring;
        let u = r.mul(&r.sub(&p.x, &p.z), &r.add(&q.x, &q.z));
        let v = r.mul(&r.add(&p.x, &p.z), &r.sub(&q.x, &q.z));
        Point {
            x: r.mul(&diff.z, &r.sqr(&r.add(&u, &v))),
            z: r.mul(&diff.x, &r.sqr(&r.sub(&u, &v))),
        }
    }

    fn multiply(&self, p: &Point<R::Elem>, k: u64) -> Point<R::Elem> {
        if k == 1 {
            return p.clone();
        }
        let mut r0 = p.clone();
        let mut r1 = self.double(p);
        let top = 63 - k.leading_zeros();
        for i in (0..top).rev() {
            if (k >> i) & 1 == 1 {
                r0 = self.add(&r1, &r0, p);
                r1 = self.double(&r1);
            } else {
                r1 = self.add(&r1, &r0, p);
                r0 = self.double(&r0);
            }
        }
        r0
    }
}

/// Inverse of `x` modulo `n`, or the gcd when it is not a unit.
pub(crate) fn mod_inverse(x: &BigUint, n: &BigUint) -> Result<BigUint, BigUint> {
    let x = BigInt::from(x % n);
    let m = BigInt::from(n.clone());
    let ext = x.extended_gcd(&m);
    if !ext.gcd.is_one() {
        return Err(ext.gcd.magnitude().clone());
    }
    let mut inv = ext.x % &m;
    if inv.is_negative() {
        inv += &m;
    }
    Ok(inv.magnitude().clone())
}

fn nontrivial(g: BigUint, n: &BigUint) -> Option<BigUint> {
    (!g.is_one() && !g.is_zero() && &g != n).then_some(g)
}

impl RingTask for EcmCurve {
    type Output = Option<BigUint>;

    fn run<R: ModRing>(self, ring: &R) -> Option<BigUint> {
        let n = ring.modulus().clone();
        let sigma = ring.from_u64(self.sigma);
        let u = ring.sub(&ring.sqr(&sigma), &ring.from_u64(5));
        let v = ring.mul(&ring.from_u64(4), &sigma);
        let u3 = ring.mul(&ring.sqr(&u), &u);
        let v3 = ring.mul(&ring.sqr(&v), &v);
        let vmu = ring.sub(&v, &u);
        let numer = ring.mul(
            &ring.mul(&ring.sqr(&vmu), &vmu),
            &ring.add(&ring.add(&u, &u), &ring.add(&u, &v)),
        );
        let denom = ring.mul(&ring.mul(&ring.from_u64(16), &u3), &v);
        let inv = match mod_inverse(&ring.to_uint(&denom), &n) {
            Ok(inv) => inv,
            Err(g) => return nontrivial(g, &n),
        };
        let curve = Curve {
            ring,
            a24: ring.mul(&numer, &ring.from_uint(&inv)),
        };

        let sieve = sieve_up_to(self.b2 + STAGE2_D);
        let mut q = Point { x: u3, z: v3 };
        for p in sieve.primes_up_to(self.b1) {
            let mut pk = p;
            while pk <= self.b1 / p {
                pk *= p;
            }
            q = curve.multiply(&q, pk);
        }
        let g = ring.to_uint(&q.z).gcd(&n);
        if !g.is_one() {
            return nontrivial(g, &n);
        }
        if self.b2 <= self.b1 {
            return None;
        }

        // Baby steps: [j]Q for odd j < D/2 coprime to D.
        let half = (STAGE2_D / 2) as usize;
        let q2 = curve.double(&q);
        let mut odd_multiples: Vec<Point<R::Elem>> = Vec::with_capacity(half / 2 + 1);
        odd_multiples.push(q.clone());
        odd_multiples.push(curve.add(&q2, &q, &q));
        while odd_multiples.len() * 2 < half {
            let k = odd_multiples.len();
            let next = curve.add(&odd_multiples[k - 1], &q2, &odd_multiples[k - 2]);
            odd_multiples.push(next);
        }
        let baby: Vec<(u64, Point<R::Elem>)> = odd_multiples
            .into_iter()
            .enumerate()
            .map(|(i, pt)| (2 * i as u64 + 1, pt))
            .filter(|(j, _)| j.gcd(&STAGE2_D) == 1)
            .collect();

        let m0 = (self.b1 / STAGE2_D).max(1);
        let step = curve.multiply(&q, STAGE2_D);
        // [0]Q is the point at infinity, so m0 = 1 seeds with a doubling below.
        let mut prev = if m0 > 1 {
            curve.multiply(&q, (m0 - 1) * STAGE2_D)
        } else {
            step.clone()
        };
        let mut cur = curve.multiply(&q, m0 * STAGE2_D);
        let mut acc = ring.one();
        let mut m = m0;
        let mut pending = 0u32;
        loop {
            let centre = m * STAGE2_D;
            if centre > self.b2 + STAGE2_D {
                break;
            }
            for (j, pt) in &baby {
                let lo = centre - j;
                let hi = centre + j;
                let hit = (lo > self.b1 && lo <= self.b2 && sieve.is_prime(lo))
                    || (hi > self.b1 && hi <= self.b2 && sieve.is_prime(hi));
                if hit {
                    let cross = ring.sub(&ring.mul(&cur.x, &pt.z), &ring.mul(&pt.x, &cur.z));
                    acc = ring.mul(&acc, &cross);
                    pending += 1;
                }
            }
            if pending >= 4096 {
                pending = 0;
                if ring.is_zero(&acc) {
                    return None;
                }
            }
            let next = if m == 1 && m0 == 1 {
                curve.double(&step)
            } else {
                curve.add(&cur, &step, &prev)
            };
            prev = cur;
            cur = next;
            m += 1;
        }
        nontrivial(ring.to_uint(&acc).gcd(&n), &n)
    }
}
