//! Quaternion algebras over Q(x).
//!
//! A class is determined by its residue characters at the finite places of
//! Q(x) together with one specialization to Br(Q). The isomorphism test
//! compares residues at every place dividing an entry, then specializes at
//! a point where all entries are units.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::factor_q::{factor_poly_q, is_irreducible_q};
use crate::arith::int::{factor_rational, FactoredRational};
use crate::arith::parse::parse_ratfunc;
use crate::arith::poly_q::{PolyQ, RatFunc};
use crate::brauer::{class_of_quaternion, BrauerClassQ, QuaternionQ};
use crate::error::{domain, Error, Result};
use crate::local::{
    is_square_in_number_field_with, NumberFieldElem, SquareBudget, SquareClassVerdict,
};

/// A nonzero element of Q(x) as `constant * prod pi^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredFunc {
    constant: FactoredRational,
    factors: BTreeMap<PolyQ, i64>,
}

impl FactoredFunc {
    pub fn from_ratfunc(r: &RatFunc) -> Result<Self> {
        if r.is_zero() {
            return Err(domain("zero is not an element of Q(x)^x"));
        }
        let num = factor_poly_q(r.num())?;
        let den = factor_poly_q(r.den())?;
        let mut factors = BTreeMap::new();
        for (f, m) in num.factors {
            *factors.entry(f).or_insert(0) += m as i64;
        }
        for (f, m) in den.factors {
            *factors.entry(f).or_insert(0) -= m as i64;
        }
        factors.retain(|_, e| *e != 0);
        let constant = factor_rational(&(num.unit / den.unit))?;
        Ok(FactoredFunc { constant, factors })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::from_ratfunc(&parse_ratfunc(s)?)
    }

    pub fn from_rational(c: &BigRational) -> Result<Self> {
        Ok(FactoredFunc { constant: factor_rational(c)?, factors: BTreeMap::new() })
    }

    /// Accepts a claimed factorization after certifying each factor monic,
    /// irreducible and distinct.
    pub fn from_parts(constant: &BigRational, factors: impl IntoIterator<Item = (PolyQ, i64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (f, e) in factors {
            if !f.is_monic() || !is_irreducible_q(&f)? {
                return Err(domain(format!("{f} is not monic irreducible")));
            }
            if e == 0 {
                continue;
            }
            if map.insert(f.clone(), e).is_some() {
                return Err(domain(format!("factor {f} listed twice")));
            }
        }
        Ok(FactoredFunc { constant: factor_rational(constant)?, factors: map })
    }

    pub fn constant(&self) -> &FactoredRational {
        &self.constant
    }

    pub fn factors(&self) -> &BTreeMap<PolyQ, i64> {
        &self.factors
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn valuation(&self, pi: &PolyQ) -> i64 {
        self.factors.get(pi).copied().unwrap_or(0)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (f, e) in &o.factors {
            *factors.entry(f.clone()).or_insert(0) += e;
        }
        factors.retain(|_, e| *e != 0);
        FactoredFunc { constant: self.constant.mul(&o.constant), factors }
    }

    pub fn pow(&self, k: i64) -> Self {
        let factors = if k == 0 {
            BTreeMap::new()
        } else {
            self.factors.iter().map(|(f, e)| (f.clone(), e * k)).collect()
        };
        FactoredFunc { constant: self.constant.pow(k), factors }
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        let mut num = PolyQ::constant(self.constant.value());
        let mut den = PolyQ::one();
        for (f, &e) in &self.factors {
            let fe = f.pow(e.unsigned_abs() as u32);
            if e > 0 {
                num = &num * &fe;
            } else {
                den = &den * &fe;
            }
        }
        RatFunc::new(num, den).expect("nonzero denominator")
    }

    /// Value at `alpha`; fails when `alpha` is a zero or pole.
    pub fn eval(&self, alpha: &BigRational) -> Result<BigRational> {
        let mut acc = self.constant.value();
        for (f, &e) in &self.factors {
            let y = f.eval(alpha);
            if y.is_zero() {
                return Err(domain(format!(
                    "{} at x = {alpha}",
                    if e > 0 { "zero" } else { "pole" }
                )));
            }
            acc *= num_traits::pow::Pow::pow(&y, e as i32);
        }
        Ok(acc)
    }

    /// Reduction into `Q[x]/(pi)`, defined when `pi` does not divide `self`.
    fn reduce(&self, pi: &PolyQ) -> Result<NumberFieldElem> {
        let mut acc = NumberFieldElem::new_unchecked(pi.clone(), PolyQ::constant(self.constant.value()));
        for (f, &e) in &self.factors {
            if f == pi {
                return Err(Error::Internal(format!("{pi} divides the reduced function")));
            }
            let r = NumberFieldElem::new_unchecked(pi.clone(), f.clone());
            acc = acc.mul(&r.powi(e)?);
        }
        Ok(acc)
    }
}

impl fmt::Display for FactoredFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ratfunc())
    }
}

/// A finite place of Q(x), given by a monic irreducible polynomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlaceFFQ {
    pi: PolyQ,
}

impl PlaceFFQ {
    pub fn new(pi: PolyQ) -> Result<Self> {
        if !pi.is_monic() || !is_irreducible_q(&pi)? {
            return Err(domain(format!("{pi} is not monic irreducible over Q")));
        }
        Ok(PlaceFFQ { pi })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }

    pub fn modulus(&self) -> &PolyQ {
        &self.pi
    }
}

impl fmt::Display for PlaceFFQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pi)
    }
}

/// The quaternion algebra `(f, g)` over Q(x).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionFF {
    pub f: FactoredFunc,
    pub g: FactoredFunc,
}

impl QuaternionFF {
    pub fn new(f: FactoredFunc, g: FactoredFunc) -> Self {
        QuaternionFF { f, g }
    }

    pub fn parse(f: &str, g: &str) -> Result<Self> {
        Ok(Self::new(FactoredFunc::parse(f)?, FactoredFunc::parse(g)?))
    }

    pub fn from_constants(q: &QuaternionQ) -> Result<Self> {
        Ok(Self::new(FactoredFunc::from_rational(q.a())?, FactoredFunc::from_rational(q.b())?))
    }

    /// Places where an entry has nonzero valuation.
    pub fn bad_places(&self) -> BTreeSet<PlaceFFQ> {
        self.f
            .factors
            .keys()
            .chain(self.g.factors.keys())
            .map(|pi| PlaceFFQ { pi: pi.clone() })
            .collect()
    }
}

impl fmt::Display for QuaternionFF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f, self.g)
    }
}

/// Residue of a class at a finite place, as the square class of its tame symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueCharacter {
    pub place: PlaceFFQ,
    pub symbol: NumberFieldElem,
    pub trivial: bool,
    pub certificate: SquareClassVerdict,
}

/// Tame symbol `(-1)^{v(f)v(g)} f^{v(g)} g^{-v(f)} mod pi`.
pub fn tame_symbol(d: &QuaternionFF, v: &PlaceFFQ) -> Result<NumberFieldElem> {
    let vf = d.f.valuation(&v.pi);
    let vg = d.g.valuation(&v.pi);
    let mut u = d.f.pow(vg).mul(&d.g.pow(-vf));
    debug_assert_eq!(u.valuation(&v.pi), 0);
    u.factors.remove(&v.pi);
    let mut t = u.reduce(&v.pi)?;
    if (vf * vg).rem_euclid(2) == 1 {
        t = t.mul(&NumberFieldElem::new_unchecked(v.pi.clone(), PolyQ::constant(-BigRational::one())));
    }
    if t.is_zero() {
        return Err(Error::Internal(format!("tame symbol vanishes at {v}")));
    }
    Ok(t)
}

pub fn residue_at(d: &QuaternionFF, v: &PlaceFFQ) -> Result<ResidueCharacter> {
    residue_at_with(d, v, &SquareBudget::default())
}

pub fn residue_at_with(d: &QuaternionFF, v: &PlaceFFQ, budget: &SquareBudget) -> Result<ResidueCharacter> {
    let symbol = tame_symbol(d, v)?;
    let certificate = is_square_in_number_field_with(&symbol, budget)?;
    Ok(ResidueCharacter { place: v.clone(), trivial: certificate.is_square, symbol, certificate })
}

/// Residues at every place dividing an entry; all other residues are trivial.
pub fn residue_table(d: &QuaternionFF, budget: &SquareBudget) -> Result<Vec<ResidueCharacter>> {
    d.bad_places().iter().map(|v| residue_at_with(d, v, budget)).collect()
}

/// Places with nontrivial residue.
pub fn ramification_set(d: &QuaternionFF) -> Result<Vec<ResidueCharacter>> {
    ramification_set_with(d, &SquareBudget::default())
}

pub fn ramification_set_with(d: &QuaternionFF, budget: &SquareBudget) -> Result<Vec<ResidueCharacter>> {
    Ok(residue_table(d, budget)?.into_iter().filter(|r| !r.trivial).collect())
}

/// `(f(alpha), g(alpha))`, defined when both entries are units at `x - alpha`.
pub fn specialize(d: &QuaternionFF, alpha: &BigRational) -> Result<QuaternionQ> {
    let a = d.f.eval(alpha).map_err(|e| domain(format!("first entry has a {}", strip(e))))?;
    let b = d.g.eval(alpha).map_err(|e| domain(format!("second entry has a {}", strip(e))))?;
    QuaternionQ::new(a, b)
}

fn strip(e: Error) -> String {
    match e {
        Error::Domain(m) => m,
        other => other.to_string(),
    }
}

/// 0, 1, -1, 2, -2, ...
fn candidate_points() -> impl Iterator<Item = BigInt> {
    std::iter::once(BigInt::zero()).chain((1i64..).flat_map(|n| [BigInt::from(n), BigInt::from(-n)]))
}

/// Smallest `|alpha|` in Z (ties toward positive) at which every entry is a unit.
pub fn unit_point(algebras: &[&QuaternionFF]) -> BigInt {
    let polys: Vec<&PolyQ> = algebras
        .iter()
        .flat_map(|d| d.f.factors.keys().chain(d.g.factors.keys()))
        .collect();
    candidate_points()
        .find(|a| {
            let a = BigRational::from_integer(a.clone());
            polys.iter().all(|f| !f.eval(&a).is_zero())
        })
        .expect("finitely many roots")
}

/// Evidence that two algebras are not isomorphic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QxWitness {
    /// Residues differ at `place`: `symbol1 / symbol2` is a certified nonsquare.
    Residue {
        place: PlaceFFQ,
        symbol1: NumberFieldElem,
        symbol2: NumberFieldElem,
        ratio: SquareClassVerdict,
    },
    /// Residues agree but the specializations at `alpha` differ by `difference`.
    Constant { alpha: BigInt, difference: BrauerClassQ },
}

impl QxWitness {
    /// Rechecks the witness against the two algebras with exact arithmetic.
    pub fn verify(&self, d1: &QuaternionFF, d2: &QuaternionFF) -> Result<bool> {
        match self {
            QxWitness::Residue { place, symbol1, symbol2, ratio } => {
                let s1 = tame_symbol(d1, place)?;
                let s2 = tame_symbol(d2, place)?;
                let q = s1.mul(&s2.inv()?);
                Ok(&s1 == symbol1 && &s2 == symbol2 && !ratio.is_square && ratio.verify(&q))
            }
            QxWitness::Constant { alpha, difference } => {
                let a = BigRational::from_integer(alpha.clone());
                let c = class_of_quaternion(&specialize(d1, &a)?)?
                    .add(&class_of_quaternion(&specialize(d2, &a)?)?);
                Ok(!c.is_zero() && &c == difference)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QxVerdict {
    pub isomorphic: bool,
    /// Places where residues were compared.
    pub places_checked: Vec<PlaceFFQ>,
    /// Specialization point, when the residue step did not already decide.
    pub alpha: Option<BigInt>,
    pub witness: Option<QxWitness>,
}

pub fn is_isomorphic_qx(d1: &QuaternionFF, d2: &QuaternionFF) -> Result<QxVerdict> {
    is_isomorphic_qx_with(d1, d2, &SquareBudget::default())
}

pub fn is_isomorphic_qx_with(d1: &QuaternionFF, d2: &QuaternionFF, budget: &SquareBudget) -> Result<QxVerdict> {
    let places: Vec<PlaceFFQ> = d1.bad_places().union(&d2.bad_places()).cloned().collect();
    for v in &places {
        let s1 = tame_symbol(d1, v)?;
        let s2 = tame_symbol(d2, v)?;
        let q = s1.mul(&s2.inv()?);
        let ratio = is_square_in_number_field_with(&q, budget)?;
        if !ratio.is_square {
            return Ok(QxVerdict {
                isomorphic: false,
                places_checked: places.clone(),
                alpha: None,
                witness: Some(QxWitness::Residue { place: v.clone(), symbol1: s1, symbol2: s2, ratio }),
            });
        }
    }
    let alpha = unit_point(&[d1, d2]);
    let a = BigRational::from_integer(alpha.clone());
    let difference = class_of_quaternion(&specialize(d1, &a)?)?.add(&class_of_quaternion(&specialize(d2, &a)?)?);
    let isomorphic = difference.is_zero();
    Ok(QxVerdict {
        isomorphic,
        places_checked: places,
        alpha: Some(alpha.clone()),
        witness: (!isomorphic).then_some(QxWitness::Constant { alpha, difference }),
    })
}

/// Why an algebra is a division algebra (or the split certificate if not).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivisionEvidence {
    Ramified(PlaceFFQ),
    ConstantClass { alpha: BigInt, class: BrauerClassQ },
    Split { alpha: BigInt },
}

pub fn division_evidence(d: &QuaternionFF, budget: &SquareBudget) -> Result<DivisionEvidence> {
    for v in d.bad_places() {
        if !residue_at_with(d, &v, budget)?.trivial {
            return Ok(DivisionEvidence::Ramified(v));
        }
    }
    let alpha = unit_point(&[d]);
    let class = class_of_quaternion(&specialize(d, &BigRational::from_integer(alpha.clone()))?)?;
    Ok(if class.is_zero() {
        DivisionEvidence::Split { alpha }
    } else {
        DivisionEvidence::ConstantClass { alpha, class }
    })
}

pub fn is_division_qx(d: &QuaternionFF) -> Result<bool> {
    Ok(!matches!(division_evidence(d, &SquareBudget::default())?, DivisionEvidence::Split { .. }))
}

pub const QX_CITATION: &str =
    "over Q(x), quaternion division algebras with the same maximal subfields are isomorphic";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxSubfieldVerdict {
    pub same: bool,
    pub verdict: QxVerdict,
    pub citation: &'static str,
}

pub fn same_maximal_subfields_qx(d1: &QuaternionFF, d2: &QuaternionFF) -> Result<MaxSubfieldVerdict> {
    same_maximal_subfields_qx_with(d1, d2, &SquareBudget::default())
}

pub fn same_maximal_subfields_qx_with(
    d1: &QuaternionFF,
    d2: &QuaternionFF,
    budget: &SquareBudget,
) -> Result<MaxSubfieldVerdict> {
    for d in [d1, d2] {
        if let DivisionEvidence::Split { alpha } = division_evidence(d, budget)? {
            return Err(domain(format!(
                "{d} is not a division algebra: all residues trivial and the specialization at x = {alpha} splits"
            )));
        }
    }
    let verdict = is_isomorphic_qx_with(d1, d2, budget)?;
    Ok(MaxSubfieldVerdict { same: verdict.isomorphic, verdict, citation: QX_CITATION })
}

/// Checks `a s^2 + b t^2 - a b u^2 = d` exactly in Q(x).
pub fn qform_represents(d_alg: &QuaternionFF, d: &RatFunc, s: &RatFunc, t: &RatFunc, u: &RatFunc) -> Result<bool> {
    if s.is_zero() && t.is_zero() && u.is_zero() {
        return Err(domain("(s, t, u) must be nonzero"));
    }
    let a = d_alg.f.to_ratfunc();
    let b = d_alg.g.to_ratfunc();
    let lhs = a.mul(&s.mul(s)).add(&b.mul(&t.mul(t))).sub(&a.mul(&b).mul(&u.mul(u)));
    Ok(&lhs == d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brauer::QuaternionQ;
    use num_bigint::BigUint;
    use crate::local::PlaceQ;

    fn q(f: &str, g: &str) -> QuaternionFF {
        QuaternionFF::parse(f, g).unwrap()
    }

    fn place(s: &str) -> PlaceFFQ {
        PlaceFFQ::parse(s).unwrap()
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn factored_func_roundtrip() {
        let f = FactoredFunc::parse("(6*x^2-6)/(x^3)").unwrap();
        assert_eq!(f.valuation(&"x".parse().unwrap()), -3);
        assert_eq!(f.valuation(&"x+1".parse().unwrap()), 1);
        assert_eq!(f.to_ratfunc(), parse_ratfunc("(6*x^2-6)/(x^3)").unwrap());
        assert!(FactoredFunc::parse("0").is_err());
        assert!(FactoredFunc::from_parts(&rat(1), [("x^2-1".parse().unwrap(), 1)]).is_err());
        assert!(FactoredFunc::from_parts(&rat(2), [("x^2+1".parse().unwrap(), 1)]).is_ok());
        assert!(PlaceFFQ::parse("x^2-4").is_err());
        assert!(PlaceFFQ::parse("2*x+1").is_err());
    }

    #[test]
    fn residues() {
        let r = residue_at(&q("x", "3"), &place("x")).unwrap();
        assert!(!r.trivial);
        assert_eq!(r.symbol.value(), &PolyQ::constant(BigRational::new(1.into(), 3.into())));
        let r = residue_at(&q("x", "x"), &place("x")).unwrap();
        assert!(!r.trivial);
        assert_eq!(r.symbol.value(), &PolyQ::from_ints(&[-1]));
        assert!(residue_at(&q("5", "7"), &place("x")).unwrap().trivial);
        assert!(residue_at(&q("5", "7"), &place("x^2+1")).unwrap().trivial);
        let r = residue_at(&q("x^2+1", "2"), &place("x^2+1")).unwrap();
        assert!(!r.trivial);
        assert!(r.certificate.verify(&r.symbol));
        // -1 is a square in Q(i): (x^2+1, x^2+1) is unramified there
        assert!(residue_at(&q("x^2+1", "x^2+1"), &place("x^2+1")).unwrap().trivial);
    }

    #[test]
    fn ramification() {
        let places = |d: &QuaternionFF| -> Vec<String> {
            ramification_set(d).unwrap().iter().map(|r| r.place.to_string()).collect()
        };
        assert_eq!(places(&q("x", "3")), ["x"]);
        assert!(places(&q("-1", "-1")).is_empty());
        let r = ramification_set(&q("x", "3*x^2")).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].symbol.value(), &PolyQ::constant(BigRational::new(1.into(), 3.into())));
        assert!(places(&q("x", "x^2")).is_empty());
        assert_eq!(places(&q("x*(x-1)", "2")), ["x-1", "x"]);
    }

    #[test]
    fn specialization() {
        let s = specialize(&q("x+1", "2*x-1"), &rat(1)).unwrap();
        assert_eq!(s, QuaternionQ::from_ints(2, 1).unwrap());
        assert!(class_of_quaternion(&s).unwrap().is_zero());
        assert!(matches!(specialize(&q("x", "3"), &rat(0)), Err(Error::Domain(_))));
        assert!(specialize(&q("3", "1/x"), &rat(0)).is_err());
        assert_eq!(specialize(&q("-1", "-1"), &rat(7)).unwrap(), QuaternionQ::from_ints(-1, -1).unwrap());
        assert_eq!(unit_point(&[&q("x*(x-1)", "x+1")]), BigInt::from(2));
        assert_eq!(unit_point(&[&q("x*(x-1)*(x+1)", "x-2")]), BigInt::from(-2));
    }

    #[test]
    fn isomorphism_examples() {
        let v = is_isomorphic_qx(&q("x", "3"), &q("x", "12")).unwrap();
        assert!(v.isomorphic);
        assert_eq!(v.alpha, Some(BigInt::one()));
        let (d1, d2) = (q("x", "3"), q("x", "5"));
        let v = is_isomorphic_qx(&d1, &d2).unwrap();
        assert!(!v.isomorphic);
        let w = v.witness.unwrap();
        match &w {
            QxWitness::Residue { place, .. } => assert_eq!(place.to_string(), "x"),
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(w.verify(&d1, &d2).unwrap());
        let (d1, d2) = (q("-1", "-1"), q("2", "5"));
        let v = is_isomorphic_qx(&d1, &d2).unwrap();
        assert!(!v.isomorphic);
        let expected = BrauerClassQ::new([
            (PlaceQ::finite(BigUint::from(5u32)).unwrap(), BigRational::new(1.into(), 2.into())),
            (PlaceQ::Real, BigRational::new(1.into(), 2.into())),
        ])
        .unwrap();
        let w = v.witness.unwrap();
        assert_eq!(w, QxWitness::Constant { alpha: BigInt::zero(), difference: expected });
        assert!(w.verify(&d1, &d2).unwrap());
        assert!(is_isomorphic_qx(&q("x^2+1", "x"), &q("x", "x^2+1")).unwrap().isomorphic);
    }

    #[test]
    fn maximal_subfields() {
        assert!(same_maximal_subfields_qx(&q("x", "3"), &q("x", "12")).unwrap().same);
        let v = same_maximal_subfields_qx(&q("x", "3"), &q("x", "5")).unwrap();
        assert!(!v.same);
        assert_eq!(v.citation, QX_CITATION);
        let err = same_maximal_subfields_qx(&q("1", "x"), &q("x", "3")).unwrap_err();
        assert!(err.to_string().contains("not a division algebra"), "{err}");
        assert!(same_maximal_subfields_qx(&q("x", "3"), &q("x^2", "x+5")).is_err());
        assert!(is_division_qx(&q("-1", "-1")).unwrap());
        assert!(!is_division_qx(&q("x", "-x")).unwrap());
    }

    #[test]
    fn quadratic_form_checker() {
        let d = q("x", "3");
        let one = RatFunc::from_poly(PolyQ::one());
        let zero = RatFunc::from_poly(PolyQ::zero());
        let x = RatFunc::from_poly(PolyQ::x());
        let three = RatFunc::from_poly(PolyQ::from_ints(&[3]));
        assert!(qform_represents(&d, &x, &one, &zero, &zero).unwrap());
        assert!(qform_represents(&d, &three, &zero, &one, &zero).unwrap());
        assert!(qform_represents(&d, &parse_ratfunc("x+3").unwrap(), &one, &one, &zero).unwrap());
        assert!(qform_represents(&d, &parse_ratfunc("-3*x").unwrap(), &zero, &zero, &one).unwrap());
        assert!(!qform_represents(&d, &three, &one, &zero, &zero).unwrap());
        assert!(qform_represents(&d, &three, &zero, &zero, &zero).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        const ATOMS: [&str; 8] = ["x", "x+1", "x-2", "x^2+1", "x^2-2", "x^2+x+1", "x^3-2", "2*x+3"];
        const CONSTS: [i64; 9] = [-1, 2, 3, -3, 5, 6, 7, -10, 1];

        fn arb_func() -> impl Strategy<Value = String> {
            (prop::sample::select(CONSTS.to_vec()), prop::collection::vec((prop::sample::select(ATOMS.to_vec()), -2i32..3), 0..3))
                .prop_map(|(c, fs)| {
                    let mut s = format!("({c})");
                    for (f, e) in fs {
                        if e != 0 {
                            s.push_str(&format!("*({f})^({e})"));
                        }
                    }
                    s
                })
        }

        fn ratio_square(a: &NumberFieldElem, b: &NumberFieldElem) -> bool {
            is_square_in_number_field_with(&a.mul(&b.inv().unwrap()), &SquareBudget::default()).unwrap().is_square
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn bimultiplicative(f in arb_func(), g1 in arb_func(), g2 in arb_func(), v in prop::sample::select(ATOMS.to_vec())) {
                let v = place(&v.replace("2*x+3", "x+3/2"));
                let d1 = q(&f, &g1);
                let d2 = q(&f, &g2);
                let d12 = q(&f, &format!("({g1})*({g2})"));
                let prod = tame_symbol(&d1, &v).unwrap().mul(&tame_symbol(&d2, &v).unwrap());
                prop_assert!(ratio_square(&tame_symbol(&d12, &v).unwrap(), &prod));
            }

            #[test]
            fn symmetric(f in arb_func(), g in arb_func(), v in prop::sample::select(ATOMS.to_vec())) {
                let v = place(&v.replace("2*x+3", "x+3/2"));
                let a = tame_symbol(&q(&f, &g), &v).unwrap();
                let b = tame_symbol(&q(&g, &f), &v).unwrap();
                prop_assert!(ratio_square(&a, &b));
            }

            #[test]
            fn constants_unramified(a in prop::sample::select(CONSTS.to_vec()), b in prop::sample::select(CONSTS.to_vec()), v in prop::sample::select(ATOMS.to_vec())) {
                let v = place(&v.replace("2*x+3", "x+3/2"));
                prop_assert!(residue_at(&q(&a.to_string(), &b.to_string()), &v).unwrap().trivial);
            }

            #[test]
            fn square_class_invariance(f in arb_func(), g in arb_func(), h in prop::sample::select(ATOMS.to_vec()), s in 1i64..6) {
                let d1 = q(&f, &g);
                let d2 = q(&f, &format!("({g})*({h})^2*{}", s * s));
                prop_assert!(is_isomorphic_qx(&d1, &d2).unwrap().isomorphic);
            }

            #[test]
            fn isomorphic_implies_equal_specializations(f in arb_func(), g in arb_func(), c in prop::sample::select(CONSTS.to_vec()), alpha in 3i64..9) {
                let d1 = q(&f, &g);
                let d2 = q(&f, &format!("({g})*({c})"));
                let v = is_isomorphic_qx(&d1, &d2).unwrap();
                let a = rat(alpha);
                if let (Ok(s1), Ok(s2)) = (specialize(&d1, &a), specialize(&d2, &a)) {
                    let (c1, c2) = (class_of_quaternion(&s1).unwrap(), class_of_quaternion(&s2).unwrap());
                    if v.isomorphic {
                        prop_assert_eq!(&c1, &c2);
                    }
                    if let Some(w) = &v.witness {
                        prop_assert!(w.verify(&d1, &d2).unwrap());
                    }
                }
            }

            #[test]
            fn specialization_additive(a in prop::sample::select(CONSTS.to_vec()), b in prop::sample::select(CONSTS.to_vec()), c in prop::sample::select(CONSTS.to_vec())) {
                // (a, b) + (a, c) = (a, bc)
                let s = |u: i64, w: i64| class_of_quaternion(&specialize(&q(&u.to_string(), &w.to_string()), &rat(0)).unwrap()).unwrap();
                prop_assert_eq!(s(a, b).add(&s(a, c)), s(a, b * c));
            }
        }
    }
}
