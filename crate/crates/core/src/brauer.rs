//! The Brauer group of Q as finitely supported vectors of local invariants.
//!
//! A class is stored as its nonzero invariants `inv_v in [0, 1)`; the
//! invariants sum to an integer and the real invariant is 0 or 1/2. Over a
//! number field the index of a class equals its exponent, and two division
//! algebras of the same degree have the same maximal subfields exactly when
//! their local indices agree at every place.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::int::sieve;
use crate::arith::parse::parse_rational;
use crate::arith::poly_q::fmt_rational;
use crate::error::{domain, Error, Result};
use crate::local::{hilbert, relevant_places, PlaceQ};

/// Denominators of invariants (and exponents) are capped to keep the group
/// arithmetic in machine integers.
pub const MAX_EXPONENT: u64 = 1 << 40;

/// Candidate budget for [`quaternion_of_class`].
pub const QUATERNION_SEARCH_BUDGET: usize = 100_000;

/// A quaternion algebra `(a, b)` over Q.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuaternionQ {
    a: BigRational,
    b: BigRational,
}

impl QuaternionQ {
    pub fn new(a: BigRational, b: BigRational) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(domain("quaternion algebra with a zero entry"));
        }
        Ok(QuaternionQ { a, b })
    }

    pub fn from_ints(a: i64, b: i64) -> Result<Self> {
        Self::new(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }
}

/// A class in Br(Q).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BrauerClassQ {
    invariants: BTreeMap<PlaceQ, BigRational>,
}

fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

fn order_of(inv: &BigRational) -> u64 {
    inv.denom().to_u64().expect("denominator bounded at construction")
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    a / a.gcd(&b) * b
}

impl BrauerClassQ {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds a class from local invariants (any representatives mod 1).
    ///
    /// Fails unless the invariants sum to 0 mod 1, the real invariant is 0
    /// or 1/2, and the exponent stays below [`MAX_EXPONENT`]. Repeated
    /// places are rejected.
    pub fn new(invariants: impl IntoIterator<Item = (PlaceQ, BigRational)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (v, inv) in invariants {
            if let PlaceQ::Finite(p) = &v {
                PlaceQ::finite(p.clone())?;
            }
            if map.insert(v.clone(), frac(&inv)).is_some() {
                return Err(domain(format!("place {v} listed twice")));
            }
        }
        map.retain(|_, inv| !inv.is_zero());
        let class = BrauerClassQ { invariants: map };
        class.validate()?;
        Ok(class)
    }

    fn validate(&self) -> Result<()> {
        let mut exponent = 1u64;
        for inv in self.invariants.values() {
            let d = inv.denom().to_u64().filter(|d| *d <= MAX_EXPONENT);
            let Some(d) = d else {
                return Err(Error::Unsupported(format!("invariant {inv} has too large a denominator")));
            };
            exponent = lcm_u64(exponent, d);
            if exponent > MAX_EXPONENT {
                return Err(Error::Unsupported("exponent beyond supported range".into()));
            }
        }
        let sum: BigRational = self.invariants.values().sum();
        if !sum.is_integer() {
            return Err(domain(format!("local invariants sum to {sum}, not 0 mod 1")));
        }
        let real = self.invariant(&PlaceQ::Real);
        if !real.is_zero() && real != BigRational::new(1.into(), 2.into()) {
            return Err(domain(format!("real invariant {real} must be 0 or 1/2")));
        }
        Ok(())
    }

    pub fn invariants(&self) -> &BTreeMap<PlaceQ, BigRational> {
        &self.invariants
    }

    pub fn invariant(&self, v: &PlaceQ) -> BigRational {
        self.invariants.get(v).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn support(&self) -> BTreeSet<PlaceQ> {
        self.invariants.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.invariants.is_empty()
    }

    fn from_map(mut invariants: BTreeMap<PlaceQ, BigRational>) -> Self {
        invariants.retain(|_, inv| !inv.is_zero());
        let class = BrauerClassQ { invariants };
        debug_assert!(class.validate().is_ok());
        class
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut map = self.invariants.clone();
        for (v, inv) in &other.invariants {
            let e = map.entry(v.clone()).or_insert_with(BigRational::zero);
            *e = frac(&(&*e + inv));
        }
        Self::from_map(map)
    }

    /// Class of the opposite algebra.
    pub fn neg(&self) -> Self {
        Self::from_map(self.invariants.iter().map(|(v, inv)| (v.clone(), frac(&-inv))).collect())
    }

    /// `m * self`.
    pub fn scale(&self, m: i64) -> Self {
        let m = BigRational::from_integer(m.into());
        Self::from_map(self.invariants.iter().map(|(v, inv)| (v.clone(), frac(&(inv * &m)))).collect())
    }

    /// Order of the class in Br(Q): lcm of the orders of its invariants.
    pub fn exponent(&self) -> u64 {
        self.invariants.values().map(order_of).fold(1, lcm_u64)
    }

    /// Index (degree of the underlying division algebra). Equal to the
    /// exponent over a number field.
    pub fn index(&self) -> u64 {
        self.exponent()
    }

    /// Local index at every place of the support.
    pub fn local_indices(&self) -> BTreeMap<PlaceQ, u64> {
        self.invariants.iter().map(|(v, inv)| (v.clone(), order_of(inv))).collect()
    }
}

/// Class of `(a, b)`: invariant 1/2 exactly where the Hilbert symbol is -1.
pub fn class_of_quaternion(q: &QuaternionQ) -> Result<BrauerClassQ> {
    let half = BigRational::new(1.into(), 2.into());
    let mut map = BTreeMap::new();
    for v in relevant_places(&q.a, &q.b)? {
        if hilbert(&q.a, &q.b, &v)? == -1 {
            map.insert(v, half.clone());
        }
    }
    if map.len() % 2 != 0 {
        return Err(Error::Internal(format!("odd ramification for ({}, {})", q.a, q.b)));
    }
    Ok(BrauerClassQ { invariants: map })
}

/// Whether two division classes of the same degree share all maximal subfields.
///
/// Comparing classes of different index is a category error and is reported
/// as such rather than answered with `false`.
pub fn same_maximal_subfields_q(c1: &BrauerClassQ, c2: &BrauerClassQ) -> Result<bool> {
    if c1.index() != c2.index() {
        return Err(domain(format!(
            "degrees differ: index {} vs index {}",
            c1.index(),
            c2.index()
        )));
    }
    Ok(c1.local_indices() == c2.local_indices())
}

/// Solves `m = r (mod n)` for the system of congruences, if consistent.
fn crt_general(congruences: &[(i128, i128)]) -> Option<(i128, i128)> {
    let mut acc: (i128, i128) = (0, 1);
    for &(r, n) in congruences {
        let (r0, n0) = acc;
        let g = n0.gcd(&n);
        if (r - r0).rem_euclid(g) != 0 {
            return None;
        }
        let l = n0 / g * n;
        // r0 + n0 * t = r (mod n)  =>  t = (r - r0)/g * inv(n0/g) mod n/g
        let ng = n / g;
        let inv = BigInt::from(n0 / g)
            .extended_gcd(&BigInt::from(ng))
            .x
            .mod_floor(&BigInt::from(ng))
            .to_i128()
            .unwrap();
        let t = (((r - r0) / g).rem_euclid(ng) * inv).rem_euclid(ng.max(1));
        acc = ((r0 + n0 * t).rem_euclid(l), l);
    }
    Some(acc)
}

/// Whether `target` lies in the cyclic subgroup generated by `gen`.
pub fn in_subgroup(target: &BrauerClassQ, gen: &BrauerClassQ) -> bool {
    if !target.invariants.keys().all(|v| gen.invariants.contains_key(v)) {
        return false;
    }
    let mut congruences = Vec::new();
    for (v, g) in &gen.invariants {
        let d = order_of(g) as i128;
        let t = target.invariant(v);
        let scaled = &t * BigRational::from_integer(BigInt::from(d));
        if !scaled.is_integer() {
            return false;
        }
        let b = scaled.to_integer().to_i128().unwrap();
        let a = g.numer().to_i128().unwrap();
        // m * a = b (mod d), a invertible mod d
        let a_inv = BigInt::from(a).extended_gcd(&BigInt::from(d)).x.mod_floor(&BigInt::from(d));
        congruences.push(((b * a_inv.to_i128().unwrap()).rem_euclid(d), d));
    }
    crt_general(&congruences).is_some()
}

/// Whether the two classes generate the same cyclic subgroup of Br(Q).
pub fn same_subgroup(c1: &BrauerClassQ, c2: &BrauerClassQ) -> bool {
    in_subgroup(c2, c1) && in_subgroup(c1, c2)
}

/// The two classes with invariants `(1/n, 1/n, -1/n, -1/n)` and
/// `(1/n, -1/n, 1/n, -1/n)` at four finite places.
pub fn four_place_pair(n: u64, places: &[PlaceQ; 4]) -> Result<(BrauerClassQ, BrauerClassQ)> {
    if n < 2 {
        return Err(domain("n must be at least 2"));
    }
    if places.iter().any(|v| matches!(v, PlaceQ::Real)) {
        return Err(domain("the four places must be finite"));
    }
    let distinct: BTreeSet<&PlaceQ> = places.iter().collect();
    if distinct.len() != 4 {
        return Err(domain("the four places must be distinct"));
    }
    let plus = BigRational::new(BigInt::one(), BigInt::from(n));
    let minus = -plus.clone();
    let signs1 = [&plus, &plus, &minus, &minus];
    let signs2 = [&plus, &minus, &plus, &minus];
    let c1 = BrauerClassQ::new(places.iter().cloned().zip(signs1.iter().map(|s| (*s).clone())))?;
    let c2 = BrauerClassQ::new(places.iter().cloned().zip(signs2.iter().map(|s| (*s).clone())))?;
    Ok((c1, c2))
}

/// Predicates reported for a pair of classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairPredicates {
    pub same_maximal_subfields: bool,
    pub same_subgroup: bool,
    pub equal: bool,
}

pub fn compare_classes(c1: &BrauerClassQ, c2: &BrauerClassQ) -> Result<PairPredicates> {
    Ok(PairPredicates {
        same_maximal_subfields: same_maximal_subfields_q(c1, c2)?,
        same_subgroup: same_subgroup(c1, c2),
        equal: c1 == c2,
    })
}

/// `m * c`. When `gcd(m, index(c)) = 1` every local index is preserved, so
/// the scaled class is represented by a division algebra with the same
/// maximal subfields.
pub fn scale_class(c: &BrauerClassQ, m: i64) -> BrauerClassQ {
    c.scale(m)
}

/// Finds `(a, b)` whose class is `c` by seeded random search over products
/// of support primes, 2, and one auxiliary prime. Every candidate is checked
/// exactly; exhaustion is reported, never hidden.
pub fn quaternion_of_class(c: &BrauerClassQ, seed: u64) -> Result<QuaternionQ> {
    if c.exponent() > 2 {
        return Err(domain(format!("class has exponent {} > 2", c.exponent())));
    }
    if !c.invariants.len().is_multiple_of(2) {
        return Err(domain("support of an exponent-2 class must have even size"));
    }
    if c.is_zero() {
        return QuaternionQ::from_ints(1, 1);
    }
    let mut pool: Vec<BigUint> = c.invariants.keys().filter_map(|v| v.prime().cloned()).collect();
    if !pool.contains(&BigUint::from(2u32)) {
        pool.push(BigUint::from(2u32));
    }
    let aux: Vec<u32> = sieve(10_000).into_iter().skip(1).collect();
    let needs_negative = c.invariants.contains_key(&PlaceQ::Real);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = |rng: &mut ChaCha8Rng| -> BigInt {
        let mut x = BigInt::one();
        for p in &pool {
            if rng.gen_bool(0.5) {
                x *= BigInt::from(p.clone());
            }
        }
        x
    };
    for i in 0..QUATERNION_SEARCH_BUDGET {
        let mut a = pick(&mut rng);
        let mut b = pick(&mut rng);
        if rng.gen_bool(0.75) {
            // small auxiliary primes first
            let reach = (8 + i / 16).min(aux.len());
            b *= BigInt::from(*aux[..reach].choose(&mut rng).unwrap());
        }
        if needs_negative || rng.gen_bool(0.5) {
            a = -a;
        }
        if needs_negative || rng.gen_bool(0.5) {
            b = -b;
        }
        let q = QuaternionQ::new(BigRational::from_integer(a), BigRational::from_integer(b))?;
        if &class_of_quaternion(&q)? == c {
            return Ok(q);
        }
    }
    Err(Error::Undecided(format!(
        "no quaternion presentation found within {QUATERNION_SEARCH_BUDGET} candidates"
    )))
}

#[derive(Serialize, Deserialize)]
struct InvariantEntry {
    place: PlaceQ,
    inv: String,
}

#[derive(Serialize, Deserialize)]
struct ClassRepr {
    invariants: Vec<InvariantEntry>,
}

impl Serialize for BrauerClassQ {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ClassRepr {
            invariants: self
                .invariants
                .iter()
                .map(|(v, inv)| InvariantEntry { place: v.clone(), inv: fmt_rational(inv) })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for BrauerClassQ {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let repr = ClassRepr::deserialize(de)?;
        let entries = repr
            .invariants
            .into_iter()
            .map(|e| Ok((e.place, parse_rational(&e.inv).map_err(D::Error::custom)?)))
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        BrauerClassQ::new(entries).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn place(p: u32) -> PlaceQ {
        PlaceQ::finite(BigUint::from(p)).unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn class(entries: &[(PlaceQ, i64, i64)]) -> BrauerClassQ {
        BrauerClassQ::new(entries.iter().map(|(v, n, d)| (v.clone(), r(*n, *d)))).unwrap()
    }

    #[test]
    fn quaternion_classes() {
        let c = class_of_quaternion(&QuaternionQ::from_ints(-1, -1).unwrap()).unwrap();
        assert_eq!(c, class(&[(place(2), 1, 2), (PlaceQ::Real, 1, 2)]));
        assert!(class_of_quaternion(&QuaternionQ::from_ints(1, 7).unwrap()).unwrap().is_zero());
        let c = class_of_quaternion(&QuaternionQ::from_ints(2, 5).unwrap()).unwrap();
        assert_eq!(c, class(&[(place(2), 1, 2), (place(5), 1, 2)]));
        assert!(QuaternionQ::from_ints(0, 1).is_err());
    }

    #[test]
    fn construction_checks() {
        assert!(BrauerClassQ::new([(place(2), r(1, 2))]).is_err());
        assert!(BrauerClassQ::new([(PlaceQ::Real, r(1, 3)), (place(3), r(2, 3))]).is_err());
        assert!(BrauerClassQ::new([(place(2), r(1, 2)), (place(2), r(1, 2))]).is_err());
        assert!(BrauerClassQ::new([(PlaceQ::Finite(BigUint::from(4u32)), r(1, 2)), (place(3), r(1, 2))]).is_err());
        // representatives outside [0, 1) are normalised
        let c = BrauerClassQ::new([(place(2), r(6, 5)), (place(3), r(-1, 5))]).unwrap();
        assert_eq!(c, class(&[(place(2), 1, 5), (place(3), 4, 5)]));
    }

    #[test]
    fn group_law() {
        let c = class(&[(place(2), 1, 5), (place(3), 4, 5)]);
        assert!(c.add(&c.neg()).is_zero());
        let d = class(&[(place(2), 4, 5), (place(3), 1, 5)]);
        assert!(c.add(&d).is_zero());
        let e = class(&[(place(2), 1, 2), (PlaceQ::Real, 1, 2)]);
        assert_eq!(e.neg(), e);
        assert_eq!(e.scale(3), e);
        assert_eq!(c.scale(1), c);
    }

    #[test]
    fn exponent_and_index() {
        assert_eq!(BrauerClassQ::zero().exponent(), 1);
        let e = class(&[(place(2), 1, 2), (PlaceQ::Real, 1, 2)]);
        assert_eq!((e.exponent(), e.index()), (2, 2));
        let f = class(&[(place(2), 1, 5), (place(3), 1, 5), (place(5), 4, 5), (place(7), 4, 5)]);
        assert_eq!((f.exponent(), f.index()), (5, 5));
    }

    #[test]
    fn maximal_subfields_predicate() {
        let a = class(&[(place(2), 1, 5), (place(3), 1, 5), (place(5), 4, 5), (place(7), 4, 5)]);
        let b = class(&[(place(2), 1, 5), (place(3), 4, 5), (place(5), 1, 5), (place(7), 4, 5)]);
        assert!(same_maximal_subfields_q(&a, &b).unwrap());
        assert!(same_maximal_subfields_q(&a, &a).unwrap());
        let c = class(&[(place(2), 1, 2), (place(3), 1, 2)]);
        let d = class(&[(place(2), 1, 2), (place(5), 1, 2)]);
        assert!(!same_maximal_subfields_q(&c, &d).unwrap());
        assert!(matches!(same_maximal_subfields_q(&a, &c), Err(Error::Domain(_))));
    }

    #[test]
    fn subgroups() {
        let (c1, c2) = four_place_pair(5, &[place(2), place(3), place(5), place(7)]).unwrap();
        assert!(!same_subgroup(&c1, &c2));
        assert!(same_subgroup(&c1, &c1.neg()));
        assert!(same_subgroup(&BrauerClassQ::zero(), &BrauerClassQ::zero()));
        assert!(in_subgroup(&c1.scale(3), &c1));
        assert!(!in_subgroup(&c1, &BrauerClassQ::zero()));
    }

    #[test]
    fn four_place_pair_predicates() {
        let places = [place(2), place(3), place(5), place(7)];
        let (c1, c2) = four_place_pair(5, &places).unwrap();
        let p = compare_classes(&c1, &c2).unwrap();
        assert_eq!((p.same_maximal_subfields, p.same_subgroup, p.equal), (true, false, false));
        let (c1, c2) = four_place_pair(2, &places).unwrap();
        assert_eq!(c1, c2);
        // n = 3: subgroup membership exhausted over m in {1, 2}
        let (c1, c2) = four_place_pair(3, &[place(3), place(7), place(11), place(13)]).unwrap();
        for m in 1..3 {
            assert_ne!(c1.scale(m), c2);
            assert_ne!(c2.scale(m), c1);
        }
        let p = compare_classes(&c1, &c2).unwrap();
        assert_eq!((p.same_maximal_subfields, p.same_subgroup, p.equal), (true, false, false));
        assert!(four_place_pair(1, &places).is_err());
        assert!(four_place_pair(3, &[place(2), place(2), place(5), place(7)]).is_err());
        assert!(four_place_pair(3, &[place(2), PlaceQ::Real, place(5), place(7)]).is_err());
    }

    #[test]
    fn scaling_preserves_local_indices() {
        let (c1, _) = four_place_pair(5, &[place(2), place(3), place(5), place(7)]).unwrap();
        let c = scale_class(&c1, 2);
        assert!(same_maximal_subfields_q(&c1, &c).unwrap());
    }

    #[test]
    fn quaternion_search() {
        assert_eq!(quaternion_of_class(&BrauerClassQ::zero(), 0).unwrap(), QuaternionQ::from_ints(1, 1).unwrap());
        let e = class(&[(place(2), 1, 2), (PlaceQ::Real, 1, 2)]);
        let q = quaternion_of_class(&e, 7).unwrap();
        assert_eq!(class_of_quaternion(&q).unwrap(), e);
        let big = class(&[(place(3), 1, 2), (place(5), 1, 2), (place(7), 1, 2), (place(11), 1, 2)]);
        let q = quaternion_of_class(&big, 1).unwrap();
        assert_eq!(class_of_quaternion(&q).unwrap(), big);
        let c5 = class(&[(place(2), 1, 5), (place(3), 4, 5)]);
        assert!(quaternion_of_class(&c5, 0).is_err());
    }

    #[test]
    fn json_schema() {
        let e = class(&[(place(2), 1, 5), (place(3), 4, 5)]);
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"invariants":[{"place":"2","inv":"1/5"},{"place":"3","inv":"4/5"}]}"#);
        let back: BrauerClassQ = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
        let bad = r#"{"invariants":[{"place":"2","inv":"1/5"}]}"#;
        assert!(serde_json::from_str::<BrauerClassQ>(bad).is_err());
        let real = r#"{"invariants":[{"place":"real","inv":"1/2"},{"place":"2","inv":"1/2"}]}"#;
        assert_eq!(serde_json::from_str::<BrauerClassQ>(real).unwrap().support().len(), 2);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_class() -> impl Strategy<Value = BrauerClassQ> {
            let primes = vec![2u32, 3, 5, 7, 11, 13];
            (
                prop::collection::vec((prop::sample::select(primes), 0i64..12), 0..5),
                any::<bool>(),
            )
                .prop_map(|(entries, real)| {
                    let mut map: BTreeMap<PlaceQ, BigRational> = BTreeMap::new();
                    for (p, n) in entries {
                        map.insert(place(p), r(n, 12));
                    }
                    if real {
                        map.insert(PlaceQ::Real, r(1, 2));
                    }
                    let sum: BigRational = map.values().sum();
                    let fix = place(17);
                    map.insert(fix, frac(&-sum));
                    BrauerClassQ::new(map).unwrap()
                })
        }

        proptest! {
            #[test]
            fn group_axioms(a in arb_class(), b in arb_class(), c in arb_class()) {
                prop_assert_eq!(a.add(&b), b.add(&a));
                prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
                prop_assert!(a.add(&a.neg()).is_zero());
                let e = a.exponent();
                prop_assert!(a.scale(e as i64).is_zero());
                for m in 1..e {
                    prop_assert!(!a.scale(m as i64).is_zero());
                }
            }

            #[test]
            fn opposite_has_same_maximal_subfields(a in arb_class()) {
                prop_assert!(same_maximal_subfields_q(&a, &a.neg()).unwrap());
                prop_assert!(same_maximal_subfields_q(&a, &a.clone()).unwrap());
            }

            #[test]
            fn relation_is_equivalence(a in arb_class(), b in arb_class(), c in arb_class()) {
                if a.index() == b.index() && b.index() == c.index() {
                    let ab = same_maximal_subfields_q(&a, &b).unwrap();
                    let ba = same_maximal_subfields_q(&b, &a).unwrap();
                    prop_assert_eq!(ab, ba);
                    if ab && same_maximal_subfields_q(&b, &c).unwrap() {
                        prop_assert!(same_maximal_subfields_q(&a, &c).unwrap());
                    }
                }
            }

            #[test]
            fn subgroup_matches_brute_force(a in arb_class(), b in arb_class()) {
                let brute = (0..a.exponent()).any(|m| a.scale(m as i64) == b);
                prop_assert_eq!(in_subgroup(&b, &a), brute);
            }

            #[test]
            fn quaternion_support_even(x in -60i64..60, y in -60i64..60) {
                prop_assume!(x != 0 && y != 0);
                let c = class_of_quaternion(&QuaternionQ::from_ints(x, y).unwrap()).unwrap();
                prop_assert_eq!(c.support().len() % 2, 0);
                let q = quaternion_of_class(&c, 3).unwrap();
                prop_assert_eq!(class_of_quaternion(&q).unwrap(), c);
            }
        }
    }
}
