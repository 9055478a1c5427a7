//! Integer primality and factorization.
//!
//! Inputs are desk-scale: trial division up to 10^6 followed by Pollard rho
//! (Brent's cycle detection) on whatever cofactor survives.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Result};

const TRIAL_BOUND: u32 = 1_000_000;
const MR_BASES_64: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const PROBABLE_ROUNDS: usize = 64;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve(TRIAL_BOUND))
}

/// All primes `<= bound`.
pub fn sieve(bound: u32) -> Vec<u32> {
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Iterator over the odd primes `3, 5, 7, ...` in increasing order.
pub fn odd_primes() -> impl Iterator<Item = u64> {
    small_primes()
        .iter()
        .skip(1)
        .map(|&p| p as u64)
        .chain((TRIAL_BOUND as u64 + 1..).filter(|&n| is_prime_u64(n)))
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn miller_rabin_u64(n: u64, a: u64) -> bool {
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic primality test for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES_64 {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    MR_BASES_64.iter().all(|&a| miller_rabin_u64(n, a))
}

/// Outcome of a primality test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Primality {
    /// Proven prime (deterministic base set, n < 2^64).
    Prime,
    /// Passed 64 Miller-Rabin rounds; not proven.
    ProbablePrime,
    Composite,
}

impl Primality {
    pub fn is_prime(self) -> bool {
        !matches!(self, Primality::Composite)
    }
}

fn miller_rabin_big(n: &BigUint, a: &BigUint) -> bool {
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    let mut x = a.modpow(&d, n);
    if x == one || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n1 {
            return true;
        }
    }
    false
}

pub fn primality(n: &BigUint) -> Primality {
    if let Some(small) = n.to_u64() {
        return if is_prime_u64(small) {
            Primality::Prime
        } else {
            Primality::Composite
        };
    }
    if n.is_even() {
        return Primality::Composite;
    }
    let bases = small_primes().iter().take(PROBABLE_ROUNDS);
    for &b in bases {
        if !miller_rabin_big(n, &BigUint::from(b)) {
            return Primality::Composite;
        }
    }
    Primality::ProbablePrime
}

pub fn is_prime(n: &BigUint) -> bool {
    primality(n).is_prime()
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn pollard_brent_u64(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, m) = (2u64, 128usize);
        let (mut g, mut r, mut q) = (1u64, 1usize, 1u64);
        let (mut x, mut ys) = (0u64, 0u64);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn pollard_brent_big(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let m = 128usize;
        let mut y = BigUint::from(2u32);
        let (mut g, mut r, mut q) = (one.clone(), 1usize, one.clone());
        let (mut x, mut ys) = (BigUint::zero(), BigUint::zero());
        let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (&q * diff(&x, &y)) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = diff(&x, &ys).gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

/// Splits `n > 1` (no prime factors below the trial bound) into prime powers.
fn split_large(n: BigUint, out: &mut BTreeMap<BigUint, i64>, probabilistic: &mut bool) {
    if n.is_one() {
        return;
    }
    match primality(&n) {
        Primality::Prime => {
            *out.entry(n).or_insert(0) += 1;
            return;
        }
        Primality::ProbablePrime => {
            *probabilistic = true;
            *out.entry(n).or_insert(0) += 1;
            return;
        }
        Primality::Composite => {}
    }
    let sq = n.sqrt();
    if &sq * &sq == n {
        split_large(sq.clone(), out, probabilistic);
        split_large(sq, out, probabilistic);
        return;
    }
    let d = match n.to_u64() {
        Some(small) => BigUint::from(pollard_brent_u64(small)),
        None => pollard_brent_big(&n),
    };
    let cofactor = &n / &d;
    split_large(d, out, probabilistic);
    split_large(cofactor, out, probabilistic);
}

/// Prime factorization of a positive integer as a sorted map prime -> exponent.
///
/// The flag is set when some factor above 2^64 is only a probable prime.
pub fn factor_biguint(n: &BigUint) -> (BTreeMap<BigUint, i64>, bool) {
    let mut out = BTreeMap::new();
    let mut probabilistic = false;
    if n.is_zero() {
        return (out, false);
    }
    let mut m = n.clone();
    for &p in small_primes() {
        let pb = BigUint::from(p);
        if &pb * &pb > m {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = m.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            out.insert(pb, e);
        }
    }
    if !m.is_one() {
        split_large(m, &mut out, &mut probabilistic);
    }
    (out, probabilistic)
}

/// A nonzero rational number `sign * prod p^e` in factored form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactoredRational {
    sign: i8,
    factors: BTreeMap<BigUint, i64>,
    probabilistic: bool,
}

impl FactoredRational {
    pub fn one() -> Self {
        FactoredRational { sign: 1, factors: BTreeMap::new(), probabilistic: false }
    }

    /// Builds from explicit parts. Every key must be prime; zero exponents are dropped.
    pub fn from_parts(sign: i8, factors: impl IntoIterator<Item = (BigUint, i64)>) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(domain("sign must be +1 or -1"));
        }
        let mut map = BTreeMap::new();
        let mut probabilistic = false;
        for (p, e) in factors {
            match primality(&p) {
                Primality::Composite => {
                    return Err(domain(format!("{p} is not prime")));
                }
                Primality::ProbablePrime => probabilistic = true,
                Primality::Prime => {}
            }
            *map.entry(p).or_insert(0) += e;
        }
        map.retain(|_, e| *e != 0);
        Ok(FactoredRational { sign, factors: map, probabilistic })
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn factors(&self) -> &BTreeMap<BigUint, i64> {
        &self.factors
    }

    /// True when some prime in the factorization is only a probable prime.
    pub fn is_probabilistic(&self) -> bool {
        self.probabilistic
    }

    pub fn valuation(&self, p: &BigUint) -> i64 {
        self.factors.get(p).copied().unwrap_or(0)
    }

    pub fn value(&self) -> BigRational {
        let mut num = BigInt::from(self.sign);
        let mut den = BigInt::one();
        for (p, &e) in &self.factors {
            let pe = BigInt::from(p.pow(e.unsigned_abs() as u32));
            if e > 0 {
                num *= pe;
            } else {
                den *= pe;
            }
        }
        BigRational::new(num, den)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (p, e) in &other.factors {
            *factors.entry(p.clone()).or_insert(0) += e;
        }
        factors.retain(|_, e| *e != 0);
        FactoredRational {
            sign: self.sign * other.sign,
            factors,
            probabilistic: self.probabilistic || other.probabilistic,
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        let factors = if k == 0 {
            BTreeMap::new()
        } else {
            self.factors.iter().map(|(p, e)| (p.clone(), e * k)).collect()
        };
        let sign = if self.sign < 0 && k.rem_euclid(2) == 1 { -1 } else { 1 };
        FactoredRational { sign, factors, probabilistic: self.probabilistic }
    }

    /// Squarefree integer representative of the square class.
    pub fn squarefree_part(&self) -> BigInt {
        let mut acc = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            if e.rem_euclid(2) == 1 {
                acc *= BigInt::from(p.clone());
            }
        }
        acc
    }

    pub fn is_square(&self) -> bool {
        self.sign > 0 && self.factors.values().all(|e| e % 2 == 0)
    }
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Factors a nonzero integer.
pub fn factor_int(n: &BigInt) -> Result<FactoredRational> {
    if n.is_zero() {
        return Err(domain("cannot factor zero"));
    }
    let sign = if n.sign() == Sign::Minus { -1 } else { 1 };
    let (factors, probabilistic) = factor_biguint(n.magnitude());
    Ok(FactoredRational { sign, factors, probabilistic })
}

/// Factors a nonzero rational number (numerator and denominator separately).
pub fn factor_rational(q: &BigRational) -> Result<FactoredRational> {
    if q.is_zero() {
        return Err(domain("cannot factor zero"));
    }
    let num = factor_int(q.numer())?;
    let den = factor_int(q.denom())?;
    Ok(num.mul(&den.pow(-1)))
}

/// Exact valuation `v_p(n)` of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigUint) -> u32 {
    let p = BigInt::from(p.clone());
    let mut m = n.abs();
    let mut e = 0;
    while !m.is_zero() && (&m % &p).is_zero() {
        m /= &p;
        e += 1;
    }
    e
}

/// Integer square root if `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Square root of a rational if it is a rational square.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    let n = exact_sqrt(q.numer())?;
    let d = exact_sqrt(q.denom())?;
    Some(BigRational::new(n, d))
}
