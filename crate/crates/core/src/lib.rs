//! Exact arithmetic for Zsigmondy and large Zsigmondy primes of coprime
//! pairs: cyclotomic values in one and two variables, closed-form p-adic
//! valuations, prime-divisor classification and the exception table for
//! large Zsigmondy primes.

pub mod arith;
pub mod cyclotomic;
pub mod error;
pub mod valuation;
pub mod zsigmondy;

pub use error::{Error, Result};
