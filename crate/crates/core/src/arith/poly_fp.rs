//! Polynomials over a prime field F_p, p odd, with Cantor-Zassenhaus
//! factorization.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::int::{is_prime_u64, mul_mod, pow_mod};
use crate::error::{domain, Error, Result};

/// A polynomial over F_p, lowest degree first, coefficients in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyFp {
    p: u64,
    coeffs: Vec<u64>,
}

impl PolyFp {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyFp { p, coeffs }
    }

    pub fn from_i64s(p: u64, coeffs: &[i64]) -> Self {
        let pi = p as i128;
        Self::new(p, coeffs.iter().map(|&c| (c as i128).rem_euclid(pi) as u64).collect())
    }

    pub fn zero(p: u64) -> Self {
        PolyFp { p, coeffs: Vec::new() }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, vec![c])
    }

    pub fn one(p: u64) -> Self {
        Self::constant(p, 1)
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub(crate) fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(self.p, (0..n).map(|i| (self.coeff(i) + o.coeff(i)) % self.p).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(self.p, (0..n).map(|i| (self.coeff(i) + self.p - o.coeff(i)) % self.p).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        Self::new(p, out)
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&a| mul_mod(a, c % self.p, self.p)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.p))
    }

    pub fn eval(&self, at: u64) -> u64 {
        let mut acc = 0;
        for &c in self.coeffs.iter().rev() {
            acc = (mul_mod(acc, at, self.p) + c) % self.p;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p))
                .collect(),
        )
    }

    pub fn divmod(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(domain("polynomial division by zero"));
        }
        let p = self.p;
        if self.coeffs.len() < d.coeffs.len() {
            return Ok((Self::zero(p), self.clone()));
        }
        let dd = d.deg();
        let lc_inv = inv_mod(d.leading(), p);
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = mul_mod(r[i + dd], lc_inv, p);
            if c != 0 {
                for (j, &dc) in d.coeffs.iter().enumerate() {
                    r[i + j] = (r[i + j] + p - mul_mod(c, dc, p)) % p;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Self::new(p, q), Self::new(p, r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divmod(d)?.1)
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g` monic.
    pub fn xgcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let p = a.p;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = inv_mod(r0.leading(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(m).expect("nonzero modulus");
        let base = self.rem(m).expect("nonzero modulus");
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m).unwrap();
            if e.bit(i) {
                acc = acc.mul(&base).rem(m).unwrap();
            }
        }
        acc
    }

    /// Inverse of `self` modulo `m`, if coprime.
    pub fn inv_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = Self::xgcd(&self.rem(m).ok()?, m);
        g.is_one().then(|| s.rem(m).unwrap())
    }

    /// Rabin-style irreducibility test via gcds with `x^(p^i) - x`.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else { return false };
        if d == 0 {
            return false;
        }
        let f = self.monic();
        let x = Self::x(self.p);
        let p = BigUint::from(self.p);
        let mut h = x.clone();
        for i in 1..=d {
            h = h.pow_mod(&p, &f);
            let diff = h.sub(&x);
            if i < d && i <= d / 2 && !f.gcd(&diff).is_one() {
                return false;
            }
            if i == d {
                return diff.rem(&f).unwrap().is_zero();
            }
        }
        unreachable!()
    }

    /// `self^(1/p)` for a polynomial in `x^p` (Frobenius inverse on F_p is the identity).
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        Self::new(self.p, self.coeffs.iter().step_by(p).copied().collect())
    }

    /// Squarefree decomposition of a monic polynomial in characteristic p.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        self.sqf_into(1, &mut out);
        out.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        out
    }

    fn sqf_into(&self, mult: u32, out: &mut Vec<(Self, u32)>) {
        let f = self.monic();
        if f.is_constant() {
            return;
        }
        let fp = f.derivative();
        if fp.is_zero() {
            f.pth_root().sqf_into(mult * self.p as u32, out);
            return;
        }
        let mut c = f.gcd(&fp);
        let mut w = f.divmod(&c).unwrap().0;
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let z = w.divmod(&y).unwrap().0;
            if !z.is_one() {
                out.push((z, i * mult));
            }
            i += 1;
            w = y;
            c = c.divmod(&w).unwrap().0;
        }
        if !c.is_one() {
            c.pth_root().sqf_into(mult * self.p as u32, out);
        }
    }

    /// Distinct-degree factorization of a squarefree monic polynomial.
    pub fn distinct_degree(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        let mut f = self.monic();
        let x = Self::x(self.p);
        let p = BigUint::from(self.p);
        let mut h = x.clone();
        let mut d = 1;
        while f.deg() >= 2 * d {
            h = h.pow_mod(&p, &f);
            let g = f.gcd(&h.sub(&x));
            if !g.is_one() {
                f = f.divmod(&g).unwrap().0;
                h = h.rem(&f).unwrap();
                out.push((g, d));
            }
            d += 1;
        }
        if f.deg() > 0 {
            let deg = f.deg();
            out.push((f, deg));
        }
        out
    }

    /// Splits a squarefree monic product of degree-`d` irreducibles.
    pub fn equal_degree(&self, d: usize, rng: &mut impl Rng) -> Vec<Self> {
        let n = self.deg();
        if n == d {
            return vec![self.monic()];
        }
        let p = self.p;
        let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a = Self::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
            if a.is_constant() {
                continue;
            }
            let g = self.gcd(&a);
            let split = if !g.is_one() {
                g
            } else {
                let b = a.pow_mod(&e, self).sub(&Self::one(p));
                self.gcd(&b)
            };
            if !split.is_one() && split.deg() < n {
                let other = self.divmod(&split).unwrap().0;
                let mut out = split.equal_degree(d, rng);
                out.extend(other.equal_degree(d, rng));
                return out;
            }
        }
    }

    /// Full factorization: leading coefficient and sorted monic irreducible factors.
    pub fn factor(&self) -> Result<(u64, Vec<(Self, u32)>)> {
        if self.is_zero() {
            return Err(domain("cannot factor the zero polynomial"));
        }
        check_odd_prime(self.p)?;
        let unit = self.leading();
        // deterministic: the splitting randomness is seeded by the input
        let seed = self.coeffs.iter().fold(self.p, |h, &c| h.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(c));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        for (part, mult) in self.monic().squarefree_decomposition() {
            for (block, d) in part.distinct_degree() {
                for q in block.equal_degree(d, &mut rng) {
                    out.push((q, mult));
                }
            }
        }
        out.sort();
        Ok((unit, out))
    }
}

pub(crate) fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::Unsupported("characteristic 2".into()));
    }
    if !is_prime_u64(p) {
        return Err(domain(format!("{p} is not an odd prime")));
    }
    Ok(())
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Factors `f` over F_p; see [`PolyFp::factor`].
pub fn factor_poly_fp(f: &PolyFp) -> Result<(u64, Vec<(PolyFp, u32)>)> {
    f.factor()
}

impl Ord for PolyFp {
    fn cmp(&self, other: &Self) -> Ordering {
        self.p
            .cmp(&other.p)
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for PolyFp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}*x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_roots(f: &PolyFp) -> Vec<u64> {
        (0..f.modulus()).filter(|&a| f.eval(a) == 0).collect()
    }

    #[test]
    fn x2_plus_1_mod_5_splits() {
        let f = PolyFp::from_i64s(5, &[1, 0, 1]);
        assert_eq!(brute_roots(&f), vec![2, 3]);
        let (unit, fs) = f.factor().unwrap();
        assert_eq!(unit, 1);
        assert_eq!(
            fs,
            vec![(PolyFp::from_i64s(5, &[2, 1]), 1), (PolyFp::from_i64s(5, &[3, 1]), 1)]
        );
    }

    #[test]
    fn x2_plus_1_mod_3_irreducible() {
        let f = PolyFp::from_i64s(3, &[1, 0, 1]);
        assert!(brute_roots(&f).is_empty());
        let (_, fs) = f.factor().unwrap();
        assert_eq!(fs, vec![(f.clone(), 1)]);
        assert!(f.is_irreducible());
    }

    #[test]
    fn pure_power() {
        let f = PolyFp::from_i64s(7, &[0, 0, 0, 1]);
        let (_, fs) = f.factor().unwrap();
        assert_eq!(fs, vec![(PolyFp::x(7), 3)]);
    }

    #[test]
    fn pth_power_input() {
        // (x+1)^3 (x^2+1)^3 over F_3 has zero derivative
        let a = PolyFp::from_i64s(3, &[1, 1]);
        let b = PolyFp::from_i64s(3, &[1, 0, 1]);
        let f = a.mul(&b).mul(&a.mul(&b)).mul(&a.mul(&b)).scale(2);
        let (unit, fs) = f.factor().unwrap();
        assert_eq!(unit, 2);
        assert_eq!(fs, vec![(a, 3), (b, 3)]);
    }

    #[test]
    fn rejects_char_2_and_zero() {
        assert!(matches!(PolyFp::from_i64s(2, &[1, 1]).factor(), Err(Error::Unsupported(_))));
        assert!(PolyFp::zero(5).factor().is_err());
    }

    proptest::proptest! {
        #[test]
        fn factor_reconstructs(
            p in proptest::sample::select(vec![3u64, 5, 7, 11, 13]),
            c in proptest::collection::vec(0i64..13, 1..10),
        ) {
            let f = PolyFp::from_i64s(p, &c);
            proptest::prop_assume!(!f.is_zero());
            let (unit, fs) = f.factor().unwrap();
            let mut prod = PolyFp::constant(p, unit);
            for (q, m) in &fs {
                proptest::prop_assert!(q.is_monic());
                proptest::prop_assert!(q.is_irreducible());
                for _ in 0..*m {
                    prod = prod.mul(q);
                }
            }
            proptest::prop_assert_eq!(prod, f);
        }
    }
}
