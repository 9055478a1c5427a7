//! Places of Q, Legendre symbols and Hilbert symbols.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::int::{factor_rational, is_prime, valuation};
use crate::error::{domain, Error, Result};

/// A place of Q. Finite places sort before the real place.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlaceQ {
    Finite(BigUint),
    Real,
}

impl PlaceQ {
    /// A finite place; fails unless `p` is prime.
    pub fn finite(p: impl Into<BigUint>) -> Result<Self> {
        let p = p.into();
        if !is_prime(&p) {
            return Err(domain(format!("{p} is not prime")));
        }
        Ok(PlaceQ::Finite(p))
    }

    pub fn prime(&self) -> Option<&BigUint> {
        match self {
            PlaceQ::Finite(p) => Some(p),
            PlaceQ::Real => None,
        }
    }
}

impl fmt::Display for PlaceQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceQ::Finite(p) => write!(f, "{p}"),
            PlaceQ::Real => write!(f, "real"),
        }
    }
}

impl FromStr for PlaceQ {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("real") || s.eq_ignore_ascii_case("inf") {
            return Ok(PlaceQ::Real);
        }
        let p: BigUint = s.parse().map_err(|_| Error::Parse(format!("bad place {s:?}")))?;
        PlaceQ::finite(p)
    }
}

impl Serialize for PlaceQ {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PlaceQ {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Legendre symbol `(a / p)` for an odd prime `p`, by Euler's criterion.
pub fn legendre(a: &BigInt, p: &BigUint) -> Result<i8> {
    if p == &BigUint::from(2u32) || !is_prime(p) {
        return Err(domain(format!("{p} is not an odd prime")));
    }
    Ok(legendre_unchecked(a, p))
}

pub(crate) fn legendre_unchecked(a: &BigInt, p: &BigUint) -> i8 {
    let pb = BigInt::from(p.clone());
    let r = a.mod_floor(&pb);
    if r.is_zero() {
        return 0;
    }
    let e = (&pb - 1u32) / 2u32;
    if r.modpow(&e, &pb).is_one() {
        1
    } else {
        -1
    }
}

/// Integer in the same square class as a nonzero rational: `num * den`.
fn class_integer(q: &BigRational) -> BigInt {
    q.numer() * q.denom()
}

fn mod8(u: &BigInt) -> u8 {
    u.mod_floor(&BigInt::from(8)).to_u8().unwrap()
}

/// `(u - 1)/2 mod 2` for odd `u`.
fn eps(u: &BigInt) -> u8 {
    u8::from(mod8(u) % 4 == 3)
}

/// `(u^2 - 1)/8 mod 2` for odd `u`.
fn omega(u: &BigInt) -> u8 {
    u8::from(matches!(mod8(u), 3 | 5))
}

/// Hilbert symbol `(a, b)_v` of nonzero rationals: `+1` iff
/// `z^2 = a x^2 + b y^2` has a nontrivial solution over the completion at `v`.
pub fn hilbert(a: &BigRational, b: &BigRational, v: &PlaceQ) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(domain("Hilbert symbol of zero"));
    }
    let (a, b) = (class_integer(a), class_integer(b));
    match v {
        PlaceQ::Real => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        PlaceQ::Finite(p) => {
            if !is_prime(p) {
                return Err(domain(format!("{p} is not prime")));
            }
            Ok(hilbert_finite(&a, &b, p))
        }
    }
}

fn split_power(n: &BigInt, p: &BigUint) -> (u32, BigInt) {
    let e = valuation(n, p);
    let u = n / BigInt::from(p.pow(e));
    (e, u)
}

fn hilbert_finite(a: &BigInt, b: &BigInt, p: &BigUint) -> i8 {
    let (alpha, u) = split_power(a, p);
    let (beta, w) = split_power(b, p);
    if p == &BigUint::from(2u32) {
        let e = eps(&u) * eps(&w) + (alpha % 2) as u8 * omega(&w) + (beta % 2) as u8 * omega(&u);
        return if e.is_multiple_of(2) { 1 } else { -1 };
    }
    let mut s: i8 = 1;
    let p_is_3_mod_4 = (p % 4u32) == BigUint::from(3u32);
    if alpha % 2 == 1 && beta % 2 == 1 && p_is_3_mod_4 {
        s = -s;
    }
    if beta % 2 == 1 {
        s *= legendre_unchecked(&u, p);
    }
    if alpha % 2 == 1 {
        s *= legendre_unchecked(&w, p);
    }
    s
}

/// The finite set of places outside of which `(a, b)_v = 1`: the real
/// place, 2, and every prime dividing a numerator or denominator of `a` or `b`.
pub fn relevant_places(a: &BigRational, b: &BigRational) -> Result<Vec<PlaceQ>> {
    let fa = factor_rational(a)?;
    let fb = factor_rational(b)?;
    let primes: BTreeSet<BigUint> = fa
        .factors()
        .keys()
        .chain(fb.factors().keys())
        .cloned()
        .chain(std::iter::once(BigUint::from(2u32)))
        .collect();
    let mut out: Vec<PlaceQ> = primes.into_iter().map(PlaceQ::Finite).collect();
    out.push(PlaceQ::Real);
    Ok(out)
}

/// Squarefree integer `t` with `a / t` a rational square.
pub fn square_class_q(a: &BigRational) -> Result<BigInt> {
    if a.is_zero() {
        return Err(domain("square class of zero"));
    }
    Ok(factor_rational(a)?.squarefree_part())
}
