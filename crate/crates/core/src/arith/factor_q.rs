//! Factorization over Q: squarefree decomposition, factorization modulo a
//! good prime, multifactor Hensel lifting and subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::int::odd_primes;
use super::parse::{parse_poly_q, parse_rational};
use super::poly_fp::PolyFp;
use super::poly_q::{fmt_rational, PolyQ};
use super::zmod::{add, divmod_monic, from_fp, inv_mod, mul, reduce, sub, to_fp, trim, ZPoly};
use crate::error::{domain, Error, Result};

/// Default degree cap for factorization over Q.
pub const DEFAULT_MAX_DEGREE: usize = 24;

/// Number of good primes tried when picking the modular factorization.
const PRIME_TRIALS: usize = 6;

/// `unit * prod factor^mult` with monic irreducible factors, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationQ {
    pub unit: BigRational,
    pub factors: Vec<(PolyQ, u32)>,
}

impl FactorizationQ {
    pub fn product(&self) -> PolyQ {
        let mut acc = PolyQ::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }
}

pub fn factor_poly_q(f: &PolyQ) -> Result<FactorizationQ> {
    factor_poly_q_capped(f, DEFAULT_MAX_DEGREE)
}

pub fn factor_poly_q_capped(f: &PolyQ, max_degree: usize) -> Result<FactorizationQ> {
    let Some(deg) = f.degree() else {
        return Err(domain("cannot factor the zero polynomial"));
    };
    if deg > max_degree {
        return Err(Error::Unsupported(format!(
            "degree {deg} exceeds the factorization cap of {max_degree}"
        )));
    }
    let unit = f.leading();
    let mut factors = Vec::new();
    for (part, mult) in f.squarefree_decomposition() {
        let (_, prim) = part.primitive_integer();
        for g in factor_squarefree_z(&prim) {
            factors.push((PolyQ::from_bigints(&g).monic(), mult));
        }
    }
    factors.sort();
    Ok(FactorizationQ { unit, factors })
}

/// True iff `f` is irreducible over Q (nonconstant with a single factor).
pub fn is_irreducible_q(f: &PolyQ) -> Result<bool> {
    if f.is_constant() {
        return Ok(false);
    }
    let fac = factor_poly_q(f)?;
    Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
}

fn inv_mod_big(a: &BigInt, m: &BigInt) -> BigInt {
    inv_mod(a, m).expect("unit modulo m")
}

/// One quadratic Hensel step: from `f = g h (mod m)`, `s g + t h = 1 (mod m)`
/// to the same relations modulo `m^2`. `h` is monic.
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m2: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let e = sub(f, &mul(g, h, m2), m2);
    let (q, r) = divmod_monic(&mul(s, &e, m2), h, m2);
    let g2 = add(&add(g, &mul(t, &e, m2), m2), &mul(&q, g, m2), m2);
    let h2 = add(h, &r, m2);
    let one = vec![BigInt::one()];
    let b = sub(&add(&mul(s, &g2, m2), &mul(t, &h2, m2), m2), &one, m2);
    let (c, d) = divmod_monic(&mul(s, &b, m2), &h2, m2);
    let s2 = sub(s, &d, m2);
    let t2 = sub(&sub(t, &mul(t, &b, m2), m2), &mul(&c, &g2, m2), m2);
    (g2, h2, s2, t2)
}

/// Lifts `f = lc(f) * prod factors (mod p)` to monic factors modulo `p^(2^steps)`.
fn multifactor_lift(f: &[BigInt], factors: &[PolyFp], p: u64, steps: u32) -> Vec<ZPoly> {
    let pb = BigInt::from(p);
    let modulus = (0..steps).fold(pb.clone(), |m, _| &m * &m);
    let lc = f.last().unwrap().clone();
    if factors.len() == 1 {
        let inv = inv_mod_big(&lc, &modulus);
        return vec![reduce(&f.iter().map(|c| c * &inv).collect::<Vec<_>>(), &modulus)];
    }
    let k = factors.len() / 2;
    let lc_p = lc.mod_floor(&pb).to_u64().unwrap();
    let g0 = factors[..k].iter().fold(PolyFp::constant(p, lc_p), |acc, u| acc.mul(u));
    let h0 = factors[k..].iter().fold(PolyFp::one(p), |acc, u| acc.mul(u));
    let (one, s0, t0) = PolyFp::xgcd(&g0, &h0);
    debug_assert!(one.is_one());
    let (mut g, mut h, mut s, mut t) = (from_fp(&g0), from_fp(&h0), from_fp(&s0), from_fp(&t0));
    let mut m = pb;
    for _ in 0..steps {
        m = &m * &m;
        (g, h, s, t) = hensel_step(f, &g, &h, &s, &t, &m);
    }
    let mut out = multifactor_lift(&g, &factors[..k], p, steps);
    out.extend(multifactor_lift(&h, &factors[k..], p, steps));
    out
}

fn symmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    trim(
        a.iter()
            .map(|c| {
                let c = c.mod_floor(m);
                if c > half {
                    c - m
                } else {
                    c
                }
            })
            .collect(),
    )
}

fn primitive(a: ZPoly) -> ZPoly {
    let mut g = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if a.last().is_some_and(Signed::is_negative) {
        g = -g;
    }
    a.into_iter().map(|c| c / &g).collect()
}

/// Exact quotient `f / g` over Z, if `g` divides `f`.
fn exact_div_z(f: &[BigInt], g: &[BigInt]) -> Option<ZPoly> {
    let f0 = &f[0];
    let g0 = &g[0];
    if !g0.is_zero() && !(f0 % g0).is_zero() {
        return None;
    }
    if !(f.last().unwrap() % g.last().unwrap()).is_zero() {
        return None;
    }
    let (q, r) = PolyQ::from_bigints(f).divmod(&PolyQ::from_bigints(g)).ok()?;
    if !r.is_zero() || !q.coeffs().iter().all(|c| c.is_integer()) {
        return None;
    }
    Some(q.coeffs().iter().map(|c| c.to_integer()).collect())
}

/// Coefficient bound `2 |lc| 2^n ||f||_2` for candidate factors scaled by `lc`.
fn coefficient_bound(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + 1;
    BigInt::from(2) * f.last().unwrap().abs() * (BigInt::one() << n) * norm
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Factors a squarefree primitive integer polynomial (positive leading
/// coefficient) into primitive irreducibles.
fn factor_squarefree_z(f: &[BigInt]) -> Vec<ZPoly> {
    let f = trim(f.to_vec());
    if f.len() <= 2 {
        return vec![f];
    }
    let lc = f.last().unwrap().clone();
    let mut best: Option<(u64, Vec<PolyFp>)> = None;
    let mut tried = 0;
    for p in odd_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = to_fp(&f, p);
        if !fp.gcd(&fp.derivative()).is_one() {
            continue;
        }
        let (_, fs) = fp.factor().expect("odd prime, nonzero");
        let fs: Vec<PolyFp> = fs.into_iter().map(|(q, _)| q).collect();
        if fs.len() == 1 {
            return vec![f];
        }
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried >= PRIME_TRIALS {
            break;
        }
    }
    let (p, modular) = best.expect("a good prime exists for squarefree input");

    let bound = coefficient_bound(&f);
    let pb = BigInt::from(p);
    let mut steps = 0;
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus = &modulus * &modulus;
        steps += 1;
    }
    let lifted = multifactor_lift(&reduce(&f, &modulus), &modular, p, steps);

    let mut remaining: Vec<ZPoly> = lifted;
    let mut rest = f;
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let n = remaining.len();
        let mut idx: Vec<usize> = (0..size).collect();
        let mut hit = None;
        loop {
            let lc_rest = rest.last().unwrap().clone();
            let cand = idx
                .iter()
                .fold(vec![lc_rest], |acc, &i| mul(&acc, &remaining[i], &modulus));
            let cand = primitive(symmetric(&cand, &modulus));
            if let Some(q) = exact_div_z(&rest, &cand) {
                hit = Some((cand, q));
                break;
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
        match hit {
            Some((g, q)) => {
                found.push(g);
                rest = q;
                for &i in idx.iter().rev() {
                    remaining.remove(i);
                }
            }
            None => size += 1,
        }
    }
    found.push(primitive(rest));
    found
}

impl Serialize for FactorizationQ {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            unit: String,
            factors: Vec<(String, u32)>,
        }
        Repr {
            unit: fmt_rational(&self.unit),
            factors: self.factors.iter().map(|(f, m)| (f.to_string(), *m)).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for FactorizationQ {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            unit: String,
            factors: Vec<(String, u32)>,
        }
        let r = Repr::deserialize(de)?;
        let unit = parse_rational(&r.unit).map_err(D::Error::custom)?;
        let factors = r
            .factors
            .iter()
            .map(|(f, m)| Ok((parse_poly_q(f).map_err(D::Error::custom)?, *m)))
            .collect::<std::result::Result<_, D::Error>>()?;
        Ok(FactorizationQ { unit, factors })
    }
}
