//! Quaternion classes over F_p(x), p odd.
//!
//! Br(F_q) is trivial, so a 2-torsion class over F_p(x) is determined by its
//! residues at all places, the place at infinity included. Residues are
//! tame symbols pushed through Euler's criterion in the residue field.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;

use crate::arith::int::pow_mod;
use crate::arith::parse::parse_ratfunc_fp;
use crate::arith::poly_fp::{check_odd_prime, inv_mod, PolyFp};
use crate::error::{domain, Error, Result};

/// Largest supported characteristic (exclusive).
pub const MAX_CHARACTERISTIC: u64 = 1 << 31;
/// Largest supported degree of an entry's numerator or denominator.
pub const MAX_DEGREE_FP: usize = 64;

fn check_char(p: u64) -> Result<()> {
    if p >= MAX_CHARACTERISTIC {
        return Err(Error::Unsupported(format!("characteristic {p} exceeds 2^31")));
    }
    check_odd_prime(p)
}

/// A nonzero element of F_p(x) as `constant * prod pi^e`, `pi` monic irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredFuncFp {
    p: u64,
    constant: u64,
    factors: BTreeMap<PolyFp, i64>,
}

impl FactoredFuncFp {
    pub fn from_fraction(num: &PolyFp, den: &PolyFp) -> Result<Self> {
        let p = num.modulus();
        check_char(p)?;
        if den.modulus() != p {
            return Err(domain("numerator and denominator over different fields"));
        }
        if num.is_zero() || den.is_zero() {
            return Err(domain("zero is not an element of F_p(x)^x"));
        }
        for f in [num, den] {
            if f.deg() > MAX_DEGREE_FP {
                return Err(Error::Unsupported(format!("degree {} exceeds {MAX_DEGREE_FP}", f.deg())));
            }
        }
        let (un, fnum) = num.factor()?;
        let (ud, fden) = den.factor()?;
        let mut factors = BTreeMap::new();
        for (f, m) in fnum {
            *factors.entry(f).or_insert(0) += m as i64;
        }
        for (f, m) in fden {
            *factors.entry(f).or_insert(0) -= m as i64;
        }
        factors.retain(|_, e| *e != 0);
        let constant = un * inv_mod(ud, p) % p;
        Ok(FactoredFuncFp { p, constant, factors })
    }

    pub fn parse(s: &str, p: u64) -> Result<Self> {
        check_char(p)?;
        let (num, den) = parse_ratfunc_fp(s, p)?;
        Self::from_fraction(&num, &den)
    }

    /// Accepts a claimed factorization after certifying each factor.
    pub fn from_parts(p: u64, constant: u64, factors: impl IntoIterator<Item = (PolyFp, i64)>) -> Result<Self> {
        check_char(p)?;
        if constant.is_multiple_of(p) {
            return Err(domain("constant must be a unit mod p"));
        }
        let mut map = BTreeMap::new();
        for (f, e) in factors {
            if f.modulus() != p || !f.is_monic() || !f.is_irreducible() {
                return Err(domain(format!("{f} is not monic irreducible over F_{p}")));
            }
            if e != 0 && map.insert(f.clone(), e).is_some() {
                return Err(domain(format!("factor {f} listed twice")));
            }
        }
        Ok(FactoredFuncFp { p, constant: constant % p, factors: map })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn constant(&self) -> u64 {
        self.constant
    }

    pub fn factors(&self) -> &BTreeMap<PolyFp, i64> {
        &self.factors
    }

    pub fn valuation(&self, v: &PlaceFFp) -> i64 {
        match v {
            PlaceFFp::Finite(pi) => self.factors.get(pi).copied().unwrap_or(0),
            PlaceFFp::Infinity => -self.factors.iter().map(|(f, e)| f.deg() as i64 * e).sum::<i64>(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        let mut factors = self.factors.clone();
        for (f, e) in &o.factors {
            *factors.entry(f.clone()).or_insert(0) += e;
        }
        factors.retain(|_, e| *e != 0);
        FactoredFuncFp { p: self.p, constant: self.constant * o.constant % self.p, factors }
    }

    pub fn pow(&self, k: i64) -> Self {
        let c = pow_mod(self.constant, k.unsigned_abs(), self.p);
        let constant = if k < 0 { inv_mod(c, self.p) } else { c };
        let factors = if k == 0 {
            BTreeMap::new()
        } else {
            self.factors.iter().map(|(f, e)| (f.clone(), e * k)).collect()
        };
        FactoredFuncFp { p: self.p, constant, factors }
    }

    /// Numerator and denominator.
    pub fn to_fraction(&self) -> (PolyFp, PolyFp) {
        let mut num = PolyFp::constant(self.p, self.constant);
        let mut den = PolyFp::one(self.p);
        for (f, &e) in &self.factors {
            for _ in 0..e.unsigned_abs() {
                if e > 0 {
                    num = num.mul(f);
                } else {
                    den = den.mul(f);
                }
            }
        }
        (num, den)
    }

    /// Reduction at a place where `self` is a unit, as an element of
    /// `F_p[x]/(pi)` (a constant at infinity).
    fn reduce(&self, v: &PlaceFFp) -> PolyFp {
        debug_assert_eq!(self.valuation(v), 0);
        let c = PolyFp::constant(self.p, self.constant);
        match v {
            // all factors monic: the leading-term ratio is the constant
            PlaceFFp::Infinity => c,
            PlaceFFp::Finite(pi) => {
                let mut acc = c;
                for (f, &e) in &self.factors {
                    if f == pi {
                        continue;
                    }
                    let base = if e < 0 { f.inv_mod(pi).expect("coprime to pi") } else { f.rem(pi).unwrap() };
                    acc = acc.mul(&base.pow_mod(&BigUint::from(e.unsigned_abs()), pi)).rem(pi).unwrap();
                }
                acc
            }
        }
    }
}

impl fmt::Display for FactoredFuncFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.to_fraction();
        if d.is_one() {
            write!(f, "{n}")
        } else {
            write!(f, "({n})/({d})")
        }
    }
}

/// A place of F_p(x): a monic irreducible, or the degree valuation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlaceFFp {
    Finite(PolyFp),
    Infinity,
}

impl PlaceFFp {
    pub fn finite(pi: PolyFp) -> Result<Self> {
        check_char(pi.modulus())?;
        if !pi.is_monic() || !pi.is_irreducible() {
            return Err(domain(format!("{pi} is not monic irreducible over F_{}", pi.modulus())));
        }
        Ok(PlaceFFp::Finite(pi))
    }

    pub fn parse(s: &str, p: u64) -> Result<Self> {
        if s.trim() == "inf" {
            return Ok(PlaceFFp::Infinity);
        }
        Self::finite(crate::arith::parse::parse_poly_fp(s, p)?)
    }

    /// Degree of the residue field over F_p.
    pub fn degree(&self) -> usize {
        match self {
            PlaceFFp::Finite(pi) => pi.deg(),
            PlaceFFp::Infinity => 1,
        }
    }
}

impl fmt::Display for PlaceFFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceFFp::Finite(pi) => write!(f, "{pi}"),
            PlaceFFp::Infinity => write!(f, "inf"),
        }
    }
}

fn same_char(f: &FactoredFuncFp, g: &FactoredFuncFp) -> Result<u64> {
    if f.p != g.p {
        return Err(domain(format!("characteristic mismatch: {} vs {}", f.p, g.p)));
    }
    Ok(f.p)
}

/// Tame symbol `(-1)^{v(f)v(g)} f^{v(g)} g^{-v(f)}` in the residue field at `v`.
pub fn tame_symbol_fp(f: &FactoredFuncFp, g: &FactoredFuncFp, v: &PlaceFFp) -> Result<PolyFp> {
    let p = same_char(f, g)?;
    let (vf, vg) = (f.valuation(v), g.valuation(v));
    let mut t = f.pow(vg).mul(&g.pow(-vf)).reduce(v);
    if (vf * vg).rem_euclid(2) == 1 {
        t = t.neg();
    }
    if t.is_zero() {
        return Err(Error::Internal(format!("tame symbol vanishes at {v} over F_{p}")));
    }
    Ok(t)
}

/// Residue character at `v`: Euler's criterion applied to the tame symbol.
pub fn residue_fp(f: &FactoredFuncFp, g: &FactoredFuncFp, v: &PlaceFFp) -> Result<i8> {
    let p = same_char(f, g)?;
    let t = tame_symbol_fp(f, g, v)?;
    let e = match v {
        PlaceFFp::Infinity => return Ok(if pow_mod(t.coeff(0), (p - 1) / 2, p) == 1 { 1 } else { -1 }),
        PlaceFFp::Finite(pi) => (BigUint::from(p).pow(pi.deg() as u32) - 1u32) / 2u32,
    };
    let PlaceFFp::Finite(pi) = v else { unreachable!() };
    let r = t.pow_mod(&e, pi);
    if r.is_one() {
        Ok(1)
    } else if r == PolyFp::constant(p, p - 1) {
        Ok(-1)
    } else {
        Err(Error::Internal(format!("Euler criterion gave {r} at {v}")))
    }
}

/// A 2-torsion class over F_p(x), stored as its nontrivial residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuatClassFp {
    p: u64,
    residues: BTreeMap<PlaceFFp, i8>,
}

impl QuatClassFp {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Places with residue -1.
    pub fn residues(&self) -> &BTreeMap<PlaceFFp, i8> {
        &self.residues
    }

    pub fn is_zero(&self) -> bool {
        self.residues.is_empty()
    }
}

/// Places where a residue may be nontrivial: divisors of f or g, and infinity.
pub fn candidate_places(f: &FactoredFuncFp, g: &FactoredFuncFp) -> Vec<PlaceFFp> {
    let mut places: Vec<PlaceFFp> = f
        .factors
        .keys()
        .chain(g.factors.keys())
        .cloned()
        .map(PlaceFFp::Finite)
        .collect();
    places.push(PlaceFFp::Infinity);
    places.sort();
    places.dedup();
    places
}

pub fn class_fp(f: &FactoredFuncFp, g: &FactoredFuncFp) -> Result<QuatClassFp> {
    let p = same_char(f, g)?;
    let mut residues = BTreeMap::new();
    for v in candidate_places(f, g) {
        if residue_fp(f, g, &v)? == -1 {
            residues.insert(v, -1);
        }
    }
    if residues.len() % 2 != 0 {
        return Err(Error::Internal(format!("reciprocity fails for ({f}, {g}) over F_{p}")));
    }
    Ok(QuatClassFp { p, residues })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpVerdict {
    pub isomorphic: bool,
    pub class1: QuatClassFp,
    pub class2: QuatClassFp,
    /// First place where the residue vectors differ.
    pub witness: Option<PlaceFFp>,
}

pub fn is_isomorphic_fpx(
    pair1: (&FactoredFuncFp, &FactoredFuncFp),
    pair2: (&FactoredFuncFp, &FactoredFuncFp),
) -> Result<FpVerdict> {
    let p1 = same_char(pair1.0, pair1.1)?;
    let p2 = same_char(pair2.0, pair2.1)?;
    if p1 != p2 {
        return Err(domain(format!("characteristic mismatch: {p1} vs {p2}")));
    }
    let class1 = class_fp(pair1.0, pair1.1)?;
    let class2 = class_fp(pair2.0, pair2.1)?;
    let witness = class1
        .residues
        .keys()
        .chain(class2.residues.keys())
        .filter(|v| class1.residues.get(v) != class2.residues.get(v))
        .min()
        .cloned();
    Ok(FpVerdict { isomorphic: witness.is_none(), class1, class2, witness })
}
