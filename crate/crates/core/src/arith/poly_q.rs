//! Dense univariate polynomials over Q and rational functions in Q(x).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Result};

/// A polynomial with rational coefficients, lowest degree first.
///
/// Trailing zero coefficients are always trimmed, so structural equality is
/// polynomial equality and the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyQ {
    coeffs: Vec<BigRational>,
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^n`
    pub fn monomial(c: BigRational, n: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); n];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; callers must handle zero separately.
    pub(crate) fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.leading().recip();
        self.scale(&inv)
    }

    pub fn eval(&self, at: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division. Fails on a zero divisor.
    pub fn divmod(&self, d: &PolyQ) -> Result<(PolyQ, PolyQ)> {
        if d.is_zero() {
            return Err(domain("polynomial division by zero"));
        }
        let dd = d.deg();
        let lc_inv = d.leading().recip();
        let mut r = self.coeffs.clone();
        if r.len() < d.coeffs.len() {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] = &r[i + j] - &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    pub fn rem(&self, d: &PolyQ) -> Result<PolyQ> {
        Ok(self.divmod(d)?.1)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &PolyQ) -> PolyQ {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn xgcd(a: &PolyQ, b: &PolyQ) -> (PolyQ, PolyQ, PolyQ) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Resultant via the Euclidean remainder sequence.
    pub fn resultant(&self, other: &PolyQ) -> BigRational {
        if self.is_zero() || other.is_zero() {
            return BigRational::zero();
        }
        let mut f = self.clone();
        let mut g = other.clone();
        let mut acc = BigRational::one();
        loop {
            let (m, n) = (f.deg(), g.deg());
            if n == 0 {
                return acc * g.leading().pow(m as i32);
            }
            if m == 0 {
                return acc * f.leading().pow(n as i32);
            }
            // Res(f, g) = (-1)^{mn} Res(g, f) = (-1)^{mn} lc(g)^{m - deg r} Res(g, r)
            let r = f.rem(&g).expect("nonzero divisor");
            if r.is_zero() {
                return BigRational::zero();
            }
            if (m * n) % 2 == 1 {
                acc = -acc;
            }
            acc *= g.leading().pow((m - r.deg()) as i32);
            f = g;
            g = r;
        }
    }

    /// Squarefree decomposition (Yun): monic `a_i` with `self = lc * prod a_i^i`.
    pub fn squarefree_decomposition(&self) -> Vec<(PolyQ, u32)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.divmod(&a0).unwrap().0;
        let mut c = fp.divmod(&a0).unwrap().0;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            b = b.divmod(&a).unwrap().0;
            c = d.divmod(&a).unwrap().0;
            d = &c - &b.derivative();
            if !a.is_constant() {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }

    /// Splits into a positive rational content and a primitive integer
    /// polynomial with positive leading coefficient: `self = content * prim`
    /// up to the sign, which is folded into the content.
    pub fn primitive_integer(&self) -> (BigRational, Vec<BigInt>) {
        if self.is_zero() {
            return (BigRational::zero(), Vec::new());
        }
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &den).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim = ints.iter().map(|c| c / &g).collect();
        (BigRational::new(g, den), prim)
    }

    /// `self(x + shift)`
    pub fn shift(&self, shift: &BigRational) -> PolyQ {
        let lin = PolyQ::new(vec![shift.clone(), BigRational::one()]);
        let mut acc = PolyQ::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &PolyQ::constant(c.clone());
        }
        acc
    }
}

impl Ord for PolyQ {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for PolyQ {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &PolyQ {
    type Output = PolyQ;
    fn add(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyQ::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &PolyQ {
    type Output = PolyQ;
    fn sub(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyQ::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &PolyQ {
    type Output = PolyQ;
    fn mul(self, rhs: &PolyQ) -> PolyQ {
        if self.is_zero() || rhs.is_zero() {
            return PolyQ::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyQ::new(out)
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PolyQ {
            type Output = PolyQ;
            fn $m(self, rhs: PolyQ) -> PolyQ {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

pub(crate) fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Renders `3*x^2-1/2*x+7`; the zero polynomial renders as `0`.
impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if i == 0 {
                write!(f, "{}", fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", fmt_rational(&a))?;
            }
        }
        Ok(())
    }
}

/// A rational function `num / den` in lowest terms with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: PolyQ,
    den: PolyQ,
}

impl RatFunc {
    pub fn new(num: PolyQ, den: PolyQ) -> Result<Self> {
        if den.is_zero() {
            return Err(domain("rational function with zero denominator"));
        }
        if num.is_zero() {
            return Ok(Self::from_poly(PolyQ::zero()));
        }
        let g = num.gcd(&den);
        let num = num.divmod(&g)?.0;
        let den = den.divmod(&g)?.0;
        let lc = den.leading().recip();
        Ok(RatFunc { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn from_poly(p: PolyQ) -> Self {
        RatFunc { num: p, den: PolyQ::one() }
    }

    pub fn num(&self) -> &PolyQ {
        &self.num
    }

    pub fn den(&self) -> &PolyQ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
            .expect("nonzero denominators")
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&(&self.num * &o.den) - &(&o.num * &self.den), &self.den * &o.den)
            .expect("nonzero denominators")
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(domain("division by the zero rational function"));
        }
        Self::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn powi(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { Self::from_poly(PolyQ::one()).div(self)? } else { self.clone() };
        let mut acc = Self::from_poly(PolyQ::one());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl PolyQ {
    fn is_one_poly(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
}
