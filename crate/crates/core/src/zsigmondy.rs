//! Zsigmondy and large Zsigmondy primes of a coprime triple `(a, b, n)`.
//!
//! A prime `q` is a Zsigmondy prime of `(a, b, n)` when the order of
//! `a b^-1` modulo `q` is exactly `n`; it is large when additionally
//! `q^2 | a^n - b^n` or `q > n + 1`. Zsigmondy primes all divide `Φ_n(a, b)`,
//! so only that (much smaller) number is factored.
//!
//! Whether a large prime exists is decided three ways: from the
//! factorization, from a factorization-free argument on `Φ_n(a, b)`
//! ([`has_large_zsigmondy_fast`]), and from the finite exception table
//! ([`classify_exception`]).

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{factorize, largest_prime_divisor, FactorEffort, Factorization};
use crate::cyclotomic::{eval_homogeneous, Triple};
use crate::error::{Error, Result};
use crate::valuation::{order_dividing, vp_cyclotomic};

/// Which alternative of the prime-divisor trichotomy a prime `p | Φ_n(a, b)`
/// satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DivisorCase {
    /// `p = 2` and `n = 2^β`.
    TwoPower,
    /// `p >= 3` has order exactly `n`.
    Zsigmondy,
    /// `p = P(n) >= 3`, `n = p^β k` with `β >= 1`, and `p || Φ_n(a, b)`.
    LargestPrime,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeDivisorClass {
    pub case: DivisorCase,
    pub p: BigUint,
    /// Order of `a b^-1` modulo `p`.
    pub k: u64,
    /// Exponent of `p` in `n`.
    pub beta: u32,
}

/// Position of a triple in the exception table for large Zsigmondy primes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExceptionCase {
    /// A large Zsigmondy prime exists.
    None,
    /// `n = 2` and `a + b = 2^s`: no Zsigmondy prime at all.
    ZsigClassicN2 { s: u32 },
    /// `(a, b, n) = (2, 1, 6)`: no Zsigmondy prime at all.
    ZsigClassic216,
    /// `n = 2` and `a + b = 2^s 3^t` with `t = 1`.
    CaseIN2 { s: u32, t: u32 },
    /// `n = 4`, `(a, b)` is `(2, 1)` or `(3, 1)`.
    CaseIIN4,
    /// `n = 6`, `(a, b)` is `(3, 1)`, `(3, 2)` or `(5, 4)`.
    CaseIIIN6,
    /// `n` is 10, 12 or 18 and `(a, b) = (2, 1)`.
    CaseIVN10_12_18,
}

impl ExceptionCase {
    pub fn is_exception(&self) -> bool {
        *self != ExceptionCase::None
    }

    /// Stable variant name used in reports.
    pub fn name(&self) -> &'static str {
        match self {
            ExceptionCase::None => "None",
            ExceptionCase::ZsigClassicN2 { .. } => "ZsigClassicN2",
            ExceptionCase::ZsigClassic216 => "ZsigClassic216",
            ExceptionCase::CaseIN2 { .. } => "CaseI_N2",
            ExceptionCase::CaseIIN4 => "CaseII_N4",
            ExceptionCase::CaseIIIN6 => "CaseIII_N6",
            ExceptionCase::CaseIVN10_12_18 => "CaseIV_N10_12_18",
        }
    }

    /// The witnessing parameters, e.g. `a+b=2^3*3^1`.
    pub fn witness(&self, t: &Triple) -> String {
        match self {
            ExceptionCase::None => String::new(),
            ExceptionCase::ZsigClassicN2 { s } => format!("a+b=2^{s}"),
            ExceptionCase::CaseIN2 { s, t: e } => format!("a+b=2^{s}*3^{e}"),
            _ => format!("(a,b)=({},{})", t.a(), t.b()),
        }
    }
}

impl fmt::Display for ExceptionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn require_index(op: &'static str, t: &Triple, min: u64) -> Result<()> {
    if t.n() < min {
        return Err(Error::IndexTooSmall { op, n: t.n(), min });
    }
    Ok(())
}

/// Matches `t` against the exception table. Purely syntactic apart from the
/// odd-part test on `a + b` for `n = 2`.
pub fn classify_exception(t: &Triple) -> Result<ExceptionCase> {
    require_index("classify_exception", t, 2)?;
    let pair = (t.a().to_u64(), t.b().to_u64());
    let is_pair = |a: u64, b: u64| pair == (Some(a), Some(b));
    Ok(match t.n() {
        2 => {
            let sum = t.a() + t.b();
            let s = sum.trailing_zeros().unwrap_or(0) as u32;
            let odd = sum >> s;
            if odd.is_one() {
                ExceptionCase::ZsigClassicN2 { s }
            } else if odd == BigUint::from(3u32) {
                ExceptionCase::CaseIN2 { s, t: 1 }
            } else {
                ExceptionCase::None
            }
        }
        4 if is_pair(2, 1) || is_pair(3, 1) => ExceptionCase::CaseIIN4,
        6 if is_pair(2, 1) => ExceptionCase::ZsigClassic216,
        6 if is_pair(3, 1) || is_pair(3, 2) || is_pair(5, 4) => ExceptionCase::CaseIIIN6,
        10 | 12 | 18 if is_pair(2, 1) => ExceptionCase::CaseIVN10_12_18,
        _ => ExceptionCase::None,
    })
}

/// Zsigmondy primes among the primes of a factorization of `Φ_n(a, b)`,
/// with their exponents.
fn zsigmondy_from_factorization(t: &Triple, f: &Factorization) -> Result<Vec<(BigUint, u32)>> {
    let mut out = Vec::new();
    for (q, e) in f.factors() {
        if order_dividing(q, t.a(), t.b(), t.n())? == Some(t.n()) {
            out.push((q.clone(), *e));
        }
    }
    Ok(out)
}

fn is_large(q: &BigUint, exponent: u32, n: u64, multiplier: u64) -> bool {
    let bound = BigUint::from(multiplier) * n + 1u32;
    exponent >= 2 || q > &bound
}

fn complete_factorization(t: &Triple, effort: &FactorEffort) -> Result<(BigUint, Factorization)> {
    let value = eval_homogeneous(t)?;
    let f = factorize(&value, effort);
    if !f.is_complete() {
        return Err(Error::IncompleteFactorization {
            partial: Box::new(f),
        });
    }
    Ok((value, f))
}

/// Zsigmondy primes `q` of `t`, ascending, each with `v_q(a^n - b^n)`.
///
/// Only `Φ_n(a, b)` is factored. For a Zsigmondy prime every other factor
/// `Φ_d(a, b)`, `d < n`, is prime to `q`, so the exponent read off
/// `Φ_n(a, b)` is the exponent in `a^n - b^n`.
pub fn zsigmondy_primes(t: &Triple, effort: &FactorEffort) -> Result<Vec<(BigUint, u32)>> {
    let (_, f) = complete_factorization(t, effort)?;
    zsigmondy_from_factorization(t, &f)
}

/// Zsigmondy primes with `q^2 | a^n - b^n` or `q > M n + 1`.
pub fn large_zsigmondy_primes(t: &Triple, effort: &FactorEffort, multiplier: u64) -> Result<Vec<BigUint>> {
    Ok(zsigmondy_primes(t, effort)?
        .into_iter()
        .filter(|(q, e)| is_large(q, *e, t.n(), multiplier))
        .map(|(q, _)| q)
        .collect())
}

/// Decides which alternative applies to the prime `p | Φ_n(a, b)`.
///
/// For `n = 1` and `p = 2` the result is `TwoPower` with `β = 0`.
pub fn classify_prime_divisor(p: &BigUint, t: &Triple) -> Result<PrimeDivisorClass> {
    let value = eval_homogeneous(t)?;
    if !(&value % p).is_zero() {
        return Err(Error::NotADivisor { p: p.clone() });
    }
    classify_known_divisor(p, t)
}

fn classify_known_divisor(p: &BigUint, t: &Triple) -> Result<PrimeDivisorClass> {
    let n = t.n();
    let unclassifiable = || Error::Unclassifiable { p: p.clone(), n };
    let k = order_dividing(p, t.a(), t.b(), n)?.ok_or_else(unclassifiable)?;
    let beta = match p.to_u64() {
        Some(sp) if sp >= 2 => {
            let mut m = n;
            let mut e = 0;
            while m % sp == 0 {
                m /= sp;
                e += 1;
            }
            e
        }
        _ => 0,
    };
    if p == &BigUint::from(2u32) {
        if !n.is_power_of_two() {
            return Err(unclassifiable());
        }
        return Ok(PrimeDivisorClass {
            case: DivisorCase::TwoPower,
            p: p.clone(),
            k,
            beta,
        });
    }
    if k == n {
        return Ok(PrimeDivisorClass {
            case: DivisorCase::Zsigmondy,
            p: p.clone(),
            k,
            beta,
        });
    }
    let largest = largest_prime_divisor(n).map_err(|_| unclassifiable())?;
    let cofactor_is_p_power = p.to_u64() == Some(largest)
        && beta >= 1
        && n / largest.pow(beta) == k;
    if cofactor_is_p_power && vp_cyclotomic(p, t)? == 1 {
        return Ok(PrimeDivisorClass {
            case: DivisorCase::LargestPrime,
            p: p.clone(),
            k,
            beta,
        });
    }
    Err(unclassifiable())
}

/// Outcome of the factorization-free decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FastDecision {
    pub phi_value: BigUint,
    /// The at most one non-Zsigmondy prime and the power of it removed.
    pub stripped: Option<(u64, u32)>,
    /// `Φ_n(a, b)` with that prime power removed: a product of Zsigmondy
    /// primes, counted with multiplicity.
    pub zsigmondy_part: BigUint,
    pub has_large: bool,
}

/// Decides whether `t` has a large Zsigmondy prime without factoring.
///
/// Every prime factor of `Φ_n(a, b)` is a Zsigmondy prime except possibly
/// `2` (when `n` is a power of two) or `P(n)`, whose exponents come from the
/// closed-form valuations. Removing that prime power leaves `C'`, a
/// product of Zsigmondy primes, each `≡ 1 (mod n)` and hence `>= n + 1`.
/// `C' = 1` means no Zsigmondy prime, `C' = n + 1` means exactly one, not
/// large, and `C' > n + 1` forces a prime above `n + 1` or a repeated
/// `n + 1`, i.e. `q^2 | a^n - b^n`. So a large prime exists iff
/// `C' > n + 1`.
pub fn has_large_zsigmondy_fast(t: &Triple) -> Result<FastDecision> {
    require_index("has_large_zsigmondy_fast", t, 2)?;
    let n = t.n();
    let phi_value = eval_homogeneous(t)?;
    let special = largest_prime_divisor(n)?;
    let special_big = BigUint::from(special);
    let exponent = if special != 2 && ((t.a() % special).is_zero() || (t.b() % special).is_zero()) {
        // P(n) | ab forces P(n) ∤ Φ_n(a, b)
        0
    } else {
        vp_cyclotomic(&special_big, t)?
    };
    let zsigmondy_part = if exponent == 0 {
        phi_value.clone()
    } else {
        let power = special_big.pow(exponent);
        let (q, r) = phi_value.div_rem(&power);
        if !r.is_zero() {
            return Err(Error::InexactDivision { n });
        }
        q
    };
    let has_large = zsigmondy_part > BigUint::from(n + 1);
    Ok(FastDecision {
        phi_value,
        stripped: (exponent > 0).then_some((special, exponent)),
        zsigmondy_part,
        has_large,
    })
}

/// Sufficient condition `(n + 1) P(n) < Φ_n(a, b)` for a large
/// Zsigmondy prime, defined for `n >= 3`.
pub fn sufficiency_check(t: &Triple) -> Result<bool> {
    require_index("sufficiency_check", t, 3)?;
    let bound = BigUint::from(t.n() + 1) * largest_prime_divisor(t.n())?;
    Ok(bound < eval_homogeneous(t)?)
}

/// Full analysis of one triple.
#[derive(Debug, Clone)]
pub struct ZsigReport {
    pub triple: Triple,
    pub phi_value: BigUint,
    pub factorization: Factorization,
    /// One entry per known prime divisor of `Φ_n(a, b)`, ascending.
    pub classes: Vec<PrimeDivisorClass>,
    /// `(q, v_q(a^n - b^n))`, ascending.
    pub zsig_primes: Vec<(BigUint, u32)>,
    /// Zsigmondy primes with `q^2 | a^n - b^n` or `q > n + 1`.
    pub large_zsig_primes: Vec<BigUint>,
    /// The multiplier `M` behind `m_large_primes`.
    pub multiplier: u64,
    /// Zsigmondy primes with `q^2 | a^n - b^n` or `q > M n + 1`.
    pub m_large_primes: Vec<BigUint>,
    pub has_zsigmondy: bool,
    pub has_large: bool,
    pub fast: FastDecision,
    pub exception: ExceptionCase,
    pub factorization_complete: bool,
}

impl ZsigReport {
    /// Decision from the factorization, when it is complete.
    pub fn factored_decision(&self) -> Option<bool> {
        self.factorization_complete
            .then(|| !self.large_zsig_primes.is_empty())
    }

    /// The factorization, fast and table decisions all agree.
    pub fn decisions_agree(&self) -> bool {
        let table = !self.exception.is_exception();
        self.fast.has_large == table && self.factored_decision().map_or(true, |f| f == table)
    }
}

/// Runs every check on `t` (`n >= 2`).
///
/// An incomplete factorization still yields a report: the prime lists then
/// cover only the primes found, `factorization_complete` is false and
/// `has_large` falls back to the fast decision.
pub fn analyze(t: &Triple, effort: &FactorEffort, multiplier: u64) -> Result<ZsigReport> {
    require_index("analyze", t, 2)?;
    let fast = has_large_zsigmondy_fast(t)?;
    let exception = classify_exception(t)?;
    let phi_value = fast.phi_value.clone();
    let factorization = factorize(&phi_value, effort);
    let classes = factorization
        .primes()
        .map(|p| classify_known_divisor(p, t))
        .collect::<Result<Vec<_>>>()?;
    let zsig_primes: Vec<(BigUint, u32)> = classes
        .iter()
        .filter(|c| c.case == DivisorCase::Zsigmondy)
        .map(|c| (c.p.clone(), factorization.exponent_of(&c.p)))
        .collect();
    let large_of = |m: u64| -> Vec<BigUint> {
        zsig_primes
            .iter()
            .filter(|(q, e)| is_large(q, *e, t.n(), m))
            .map(|(q, _)| q.clone())
            .collect()
    };
    let large_zsig_primes = large_of(1);
    let m_large_primes = large_of(multiplier);
    let factorization_complete = factorization.is_complete();
    let has_large = if factorization_complete {
        !large_zsig_primes.is_empty()
    } else {
        fast.has_large
    };
    Ok(ZsigReport {
        triple: t.clone(),
        phi_value,
        factorization,
        classes,
        has_zsigmondy: !zsig_primes.is_empty() || !factorization_complete && !fast.zsigmondy_part.is_one(),
        zsig_primes,
        large_zsig_primes,
        multiplier,
        m_large_primes,
        has_large,
        fast,
        exception,
        factorization_complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triple(a: u64, b: u64, n: u64) -> Triple {
        Triple::new(a, b, n).unwrap()
    }

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn effort() -> FactorEffort {
        FactorEffort::default()
    }

    #[test]
    fn zsigmondy_prime_examples() {
        assert!(zsigmondy_primes(&triple(2, 1, 6), &effort()).unwrap().is_empty());
        assert_eq!(zsigmondy_primes(&triple(2, 1, 4), &effort()).unwrap(), vec![(big(5), 1)]);
        assert_eq!(zsigmondy_primes(&triple(2, 1, 18), &effort()).unwrap(), vec![(big(19), 1)]);
        assert!(zsigmondy_primes(&triple(5, 3, 2), &effort()).unwrap().is_empty());
    }

    #[test]
    fn large_prime_examples() {
        assert_eq!(large_zsigmondy_primes(&triple(2, 1, 5), &effort(), 1).unwrap(), vec![big(31)]);
        assert!(large_zsigmondy_primes(&triple(2, 1, 4), &effort(), 1).unwrap().is_empty());
        // 7^2 - 2^2 = 45 = 3^2 * 5, and 3 does not divide 7 - 2
        assert_eq!(large_zsigmondy_primes(&triple(7, 2, 2), &effort(), 1).unwrap(), vec![big(3)]);
    }

    #[test]
    fn multiplier_tightens_the_bound() {
        // Φ_5(2, 1) = 31 > 5 + 1 but 31 = 6*5 + 1
        assert_eq!(large_zsigmondy_primes(&triple(2, 1, 5), &effort(), 5).unwrap(), vec![big(31)]);
        assert!(large_zsigmondy_primes(&triple(2, 1, 5), &effort(), 6).unwrap().is_empty());
    }

    #[test]
    fn classification_examples() {
        let c = classify_prime_divisor(&big(2), &triple(3, 1, 4)).unwrap();
        assert_eq!((c.case, c.beta), (DivisorCase::TwoPower, 2));
        let c = classify_prime_divisor(&big(5), &triple(3, 1, 4)).unwrap();
        assert_eq!((c.case, c.k), (DivisorCase::Zsigmondy, 4));
        let c = classify_prime_divisor(&big(3), &triple(2, 1, 18)).unwrap();
        assert_eq!((c.case, c.k, c.beta), (DivisorCase::LargestPrime, 2, 2));
        assert!(matches!(
            classify_prime_divisor(&big(7), &triple(3, 1, 4)),
            Err(Error::NotADivisor { .. })
        ));
        let c = classify_prime_divisor(&big(2), &triple(5, 3, 1)).unwrap();
        assert_eq!((c.case, c.beta), (DivisorCase::TwoPower, 0));
    }

    #[test]
    fn fast_decision_examples() {
        let d = has_large_zsigmondy_fast(&triple(2, 1, 12)).unwrap();
        assert!(!d.has_large);
        assert_eq!(d.stripped, None);
        assert_eq!(d.zsigmondy_part, big(13));
        // 81 - 36 + 16
        let d = has_large_zsigmondy_fast(&triple(3, 2, 12)).unwrap();
        assert_eq!(d.phi_value, big(61));
        assert!(d.has_large);
        let d = has_large_zsigmondy_fast(&triple(5, 1, 2)).unwrap();
        assert_eq!((d.stripped, d.zsigmondy_part.clone(), d.has_large), (Some((2, 1)), big(3), false));
        // both parities for n = 2
        let d = has_large_zsigmondy_fast(&triple(7, 1, 2)).unwrap();
        assert_eq!((d.stripped, d.has_large), (Some((2, 3)), false));
        let d = has_large_zsigmondy_fast(&triple(4, 1, 2)).unwrap();
        assert_eq!((d.stripped, d.has_large), (None, true));
        let d = has_large_zsigmondy_fast(&triple(2, 1, 18)).unwrap();
        assert_eq!((d.stripped, d.zsigmondy_part.clone()), (Some((3, 1)), big(19)));
    }

    #[test]
    fn sufficiency_examples() {
        assert!(sufficiency_check(&triple(2, 1, 7)).unwrap());
        assert!(!sufficiency_check(&triple(2, 1, 18)).unwrap());
        assert!(!sufficiency_check(&triple(2, 1, 6)).unwrap());
        assert!(matches!(
            sufficiency_check(&triple(2, 1, 2)),
            Err(Error::IndexTooSmall { .. })
        ));
    }

    #[test]
    fn exception_examples() {
        assert_eq!(classify_exception(&triple(5, 4, 6)).unwrap(), ExceptionCase::CaseIIIN6);
        assert_eq!(classify_exception(&triple(7, 2, 2)).unwrap(), ExceptionCase::None);
        assert_eq!(classify_exception(&triple(2, 1, 10)).unwrap(), ExceptionCase::CaseIVN10_12_18);
        assert_eq!(classify_exception(&triple(2, 1, 6)).unwrap(), ExceptionCase::ZsigClassic216);
        assert_eq!(classify_exception(&triple(5, 3, 2)).unwrap(), ExceptionCase::ZsigClassicN2 { s: 3 });
        assert_eq!(classify_exception(&triple(2, 1, 2)).unwrap(), ExceptionCase::CaseIN2 { s: 0, t: 1 });
        assert_eq!(classify_exception(&triple(3, 1, 4)).unwrap(), ExceptionCase::CaseIIN4);
        assert!(classify_exception(&triple(2, 1, 1)).is_err());
    }

    #[test]
    fn analyze_examples() {
        let r = analyze(&triple(2, 1, 6), &effort(), 1).unwrap();
        assert!(!r.has_zsigmondy && !r.has_large);
        assert_eq!(r.exception, ExceptionCase::ZsigClassic216);
        assert!(r.decisions_agree());

        // Φ_6(3, 1) = 7 and 3^6 - 1 = 728 = 2^3 * 7 * 13
        let r = analyze(&triple(3, 1, 6), &effort(), 1).unwrap();
        assert_eq!(r.zsig_primes, vec![(big(7), 1)]);
        assert!(r.has_zsigmondy && !r.has_large);
        assert_eq!(r.exception, ExceptionCase::CaseIIIN6);

        let r = analyze(&triple(4, 3, 2), &effort(), 1).unwrap();
        assert_eq!(r.large_zsig_primes, vec![big(7)]);
        assert!(r.has_large);
        assert_eq!(r.exception, ExceptionCase::None);
        assert!(r.decisions_agree());
    }

    #[test]
    fn incomplete_factorization_keeps_fast_decision() {
        // Φ_31(30, 29) has large prime factors; trial division alone stalls
        let t = triple(30, 29, 31);
        let r = analyze(&t, &FactorEffort::trial_only(1000), 1).unwrap();
        assert!(!r.factorization_complete);
        assert!(r.has_large && r.fast.has_large);
        assert!(matches!(
            zsigmondy_primes(&t, &FactorEffort::trial_only(1000)),
            Err(Error::IncompleteFactorization { .. })
        ));
    }
}
