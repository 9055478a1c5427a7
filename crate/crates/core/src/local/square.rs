//! Certified square testing in number fields `Q[x]/(pi)`.
//!
//! A Las Vegas procedure with two sides, run prime by prime:
//!
//! * witness search: at an odd prime `p` with `pi mod p` squarefree and `p`
//!   coprime to all denominators, the order `Z_(p)[x]/(pi)` is maximal at `p`,
//!   so a square `c` reduces to a square modulo every irreducible factor of
//!   `pi mod p`. A factor where Euler's criterion gives `-1` proves `c` is not
//!   a square.
//! * root reconstruction: square roots modulo each factor are glued by CRT,
//!   Hensel-lifted to `p^k`, rationally reconstructed and checked by squaring.
//!
//! Every verdict carries a certificate that [`SquareClassVerdict::verify`]
//! rechecks from scratch.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::numfield::NumberFieldElem;
use crate::arith::int::{odd_primes, rational_sqrt};
use crate::arith::parse::reduce_poly_q;
use crate::arith::poly_fp::PolyFp;
use crate::arith::poly_q::PolyQ;
use crate::arith::zmod::{self, ZPoly};
use crate::error::{domain, Error, Result};

/// Limits for [`is_square_in_number_field_with`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareBudget {
    /// Witness primes are searched below this bound.
    pub max_prime: u64,
    /// Number of primes at which root reconstruction is attempted.
    pub lift_primes: usize,
    /// First reconstruction happens at `p^min_precision`.
    pub min_precision: u32,
    /// Precision doubles up to `p^max_precision`.
    pub max_precision: u32,
    /// Primes where `pi` splits into more factors than this are not used for lifting.
    pub max_lift_factors: usize,
}

impl Default for SquareBudget {
    fn default() -> Self {
        SquareBudget {
            max_prime: 100_000,
            lift_primes: 3,
            min_precision: 16,
            max_precision: 1024,
            max_lift_factors: 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareCertificate {
    /// `root^2 = c` in `Q[x]/(pi)`.
    Root(PolyQ),
    /// `image` is `c` reduced modulo `(prime, factor)` and is a non-residue
    /// in `F_p[x]/(factor)`.
    NonResidue { prime: u64, factor: PolyFp, image: PolyFp },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareClassVerdict {
    pub is_square: bool,
    pub certificate: SquareCertificate,
}

impl SquareClassVerdict {
    /// Rechecks the certificate against `c` using exact arithmetic only.
    pub fn verify(&self, c: &NumberFieldElem) -> bool {
        match (&self.certificate, self.is_square) {
            (SquareCertificate::Root(r), true) => {
                let sq = (r * r).rem(c.modulus()).expect("nonzero modulus");
                &sq == c.value()
            }
            (SquareCertificate::NonResidue { prime, factor, image }, false) => {
                verify_witness(c, *prime, factor, image)
            }
            _ => false,
        }
    }
}

/// Reduction of `pi` and `c` at `p`, when `p` is a good prime for `pi`.
fn reduce_at(c: &NumberFieldElem, p: u64) -> Option<(PolyFp, PolyFp)> {
    let pi_bar = reduce_poly_q(c.modulus(), p).ok()?;
    let c_bar = reduce_poly_q(c.value(), p).ok()?;
    if !pi_bar.gcd(&pi_bar.derivative()).is_one() {
        return None;
    }
    Some((pi_bar, c_bar))
}

fn field_order(p: u64, d: usize) -> BigUint {
    BigUint::from(p).pow(d as u32)
}

/// `a^((q-1)/2)` in `F_p[x]/(f)`, `q = p^deg f`.
fn euler(a: &PolyFp, f: &PolyFp) -> PolyFp {
    let e = (field_order(a.modulus(), f.deg()) - 1u32) >> 1;
    a.pow_mod(&e, f)
}

fn is_minus_one(a: &PolyFp) -> bool {
    a.is_constant() && a.coeff(0) == a.modulus() - 1
}

fn verify_witness(c: &NumberFieldElem, p: u64, factor: &PolyFp, image: &PolyFp) -> bool {
    if crate::arith::poly_fp::check_odd_prime(p).is_err() {
        return false;
    }
    let Some((pi_bar, c_bar)) = reduce_at(c, p) else { return false };
    if !factor.is_monic() || !factor.is_irreducible() {
        return false;
    }
    if !pi_bar.rem(factor).unwrap().is_zero() {
        return false;
    }
    let img = c_bar.rem(factor).unwrap();
    &img == image && !img.is_zero() && is_minus_one(&euler(&img, factor))
}

/// Square root in `F_p[x]/(f)` by Tonelli-Shanks; `a` must be a nonzero square.
fn sqrt_in_residue_field(a: &PolyFp, f: &PolyFp, rng: &mut impl Rng) -> PolyFp {
    let p = a.modulus();
    let d = f.deg();
    let q1 = field_order(p, d) - 1u32;
    let s = q1.trailing_zeros().unwrap_or(0);
    let t = &q1 >> s;
    let one = PolyFp::one(p);
    let z = loop {
        let cand = PolyFp::new(p, (0..d).map(|_| rng.gen_range(0..p)).collect());
        if !cand.is_zero() && is_minus_one(&euler(&cand, f)) {
            break cand;
        }
    };
    let mut m = s;
    let mut c = z.pow_mod(&t, f);
    let mut tt = a.pow_mod(&t, f);
    let mut r = a.pow_mod(&((&t + 1u32) >> 1), f);
    while tt != one {
        let mut i = 0;
        let mut probe = tt.clone();
        while probe != one {
            probe = probe.mul(&probe).rem(f).unwrap();
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = b.mul(&b).rem(f).unwrap();
        }
        m = i;
        c = b.mul(&b).rem(f).unwrap();
        tt = tt.mul(&c).rem(f).unwrap();
        r = r.mul(&b).rem(f).unwrap();
    }
    r
}

/// Chinese remaindering of residues modulo pairwise coprime moduli.
fn crt(residues: &[PolyFp], moduli: &[PolyFp]) -> PolyFp {
    let p = moduli[0].modulus();
    let mut acc = PolyFp::zero(p);
    let mut m = PolyFp::one(p);
    for (r, f) in residues.iter().zip(moduli) {
        let inv = m.inv_mod(f).expect("coprime moduli");
        let delta = r.sub(&acc.rem(f).unwrap()).mul(&inv).rem(f).unwrap();
        acc = acc.add(&m.mul(&delta));
        m = m.mul(f);
    }
    acc
}

fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let q = BigRational::new(r1, t1);
    // BigRational::new normalises; check the reduced form still matches
    (zmod::rational_mod(&q, m)? == *u).then_some(q)
}

/// Newton iteration state for a square root modulo `p^e`.
struct Lift {
    root: ZPoly,
    inv2root: ZPoly,
    exp: u32,
}

struct LiftContext<'a> {
    c: &'a NumberFieldElem,
    p: BigInt,
}

impl LiftContext<'_> {
    fn modulus(&self, exp: u32) -> BigInt {
        self.p.pow(exp)
    }

    fn reduce_q(&self, f: &PolyQ, m: &BigInt) -> ZPoly {
        zmod::trim(
            f.coeffs()
                .iter()
                .map(|c| zmod::rational_mod(c, m).expect("p-integral"))
                .collect(),
        )
    }

    /// Doubles the precision of `lift` until it reaches `target`.
    fn advance(&self, lift: &mut Lift, target: u32) {
        while lift.exp < target {
            lift.exp *= 2;
            let m = self.modulus(lift.exp);
            let pi = self.reduce_q(self.c.modulus(), &m);
            let c = self.reduce_q(self.c.value(), &m);
            let red = |a: &[BigInt]| zmod::divmod_monic(a, &pi, &m).1;
            let sq = red(&zmod::mul(&lift.root, &lift.root, &m));
            let err = zmod::sub(&sq, &c, &m);
            let corr = red(&zmod::mul(&lift.inv2root, &err, &m));
            lift.root = zmod::sub(&lift.root, &corr, &m);
            // w <- w (2 - 2 r w)
            let rw = red(&zmod::mul(&lift.root, &lift.inv2root, &m));
            let two = vec![BigInt::from(2)];
            let t = zmod::sub(&two, &zmod::add(&rw, &rw, &m), &m);
            lift.inv2root = red(&zmod::mul(&lift.inv2root, &t, &m));
        }
    }

    fn reconstruct(&self, lift: &Lift) -> Option<PolyQ> {
        let m = self.modulus(lift.exp);
        let coeffs = lift
            .root
            .iter()
            .map(|u| rational_reconstruct(u, &m))
            .collect::<Option<Vec<_>>>()?;
        let r = PolyQ::new(coeffs);
        let sq = (&r * &r).rem(self.c.modulus()).ok()?;
        (&sq == self.c.value()).then_some(r)
    }
}

/// Attempts root reconstruction at `p` given the factorization of `pi mod p`
/// and square roots of `c` modulo each factor.
fn try_lift(
    c: &NumberFieldElem,
    p: u64,
    factors: &[PolyFp],
    roots: &[PolyFp],
    budget: &SquareBudget,
) -> Option<PolyQ> {
    let ctx = LiftContext { c, p: BigInt::from(p) };
    let pi_bar = factors.iter().fold(PolyFp::one(p), |a, f| a.mul(f));
    let patterns = 1usize << (factors.len() - 1);
    let mut lifts: Vec<Lift> = (0..patterns)
        .map(|bits| {
            let signed: Vec<PolyFp> = roots
                .iter()
                .enumerate()
                .map(|(j, r)| if j > 0 && bits >> (j - 1) & 1 == 1 { r.neg() } else { r.clone() })
                .collect();
            let r = crt(&signed, factors);
            let w = r.add(&r).inv_mod(&pi_bar).expect("2r is a unit");
            Lift { root: zmod::from_fp(&r), inv2root: zmod::from_fp(&w), exp: 1 }
        })
        .collect();
    let mut precision = budget.min_precision.max(1);
    loop {
        for lift in lifts.iter_mut() {
            ctx.advance(lift, precision);
            if let Some(r) = ctx.reconstruct(lift) {
                return Some(r);
            }
        }
        if precision >= budget.max_precision {
            return None;
        }
        precision = (precision * 2).min(budget.max_precision);
    }
}

pub fn is_square_in_number_field(c: &NumberFieldElem) -> Result<SquareClassVerdict> {
    is_square_in_number_field_with(c, &SquareBudget::default())
}

pub fn is_square_in_number_field_with(
    c: &NumberFieldElem,
    budget: &SquareBudget,
) -> Result<SquareClassVerdict> {
    if c.is_zero() {
        return Err(domain("square test of zero"));
    }
    if c.value().is_constant() {
        if let Some(r) = rational_sqrt(&c.value().coeff(0)) {
            return Ok(SquareClassVerdict {
                is_square: true,
                certificate: SquareCertificate::Root(PolyQ::constant(r)),
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0f5a_u64);
    let mut lifts_left = budget.lift_primes;
    for p in odd_primes().take_while(|&p| p < budget.max_prime) {
        let Some((pi_bar, c_bar)) = reduce_at(c, p) else { continue };
        let (_, factors) = pi_bar.factor()?;
        let factors: Vec<PolyFp> = factors.into_iter().map(|(f, _)| f).collect();
        let mut all_units = true;
        let mut images = Vec::with_capacity(factors.len());
        for f in &factors {
            let img = c_bar.rem(f).unwrap();
            if img.is_zero() {
                all_units = false;
                images.push(img);
                continue;
            }
            if is_minus_one(&euler(&img, f)) {
                return Ok(SquareClassVerdict {
                    is_square: false,
                    certificate: SquareCertificate::NonResidue { prime: p, factor: f.clone(), image: img },
                });
            }
            images.push(img);
        }
        if !all_units || lifts_left == 0 || factors.len() > budget.max_lift_factors {
            continue;
        }
        lifts_left -= 1;
        let roots: Vec<PolyFp> = images
            .iter()
            .zip(&factors)
            .map(|(a, f)| sqrt_in_residue_field(a, f, &mut rng))
            .collect();
        if let Some(r) = try_lift(c, p, &factors, &roots, budget) {
            return Ok(SquareClassVerdict { is_square: true, certificate: SquareCertificate::Root(r) });
        }
    }
    Err(Error::Undecided(format!(
        "square test for {c} found neither a root nor a witness below {}",
        budget.max_prime
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly_q::rat;

    fn elem(m: &[i64], v: &[i64]) -> NumberFieldElem {
        NumberFieldElem::new(PolyQ::from_ints(m), PolyQ::from_ints(v)).unwrap()
    }

    #[test]
    fn minus_one_is_square_in_gaussian_field() {
        let c = elem(&[1, 0, 1], &[-1]);
        let v = is_square_in_number_field(&c).unwrap();
        assert!(v.is_square);
        assert!(v.verify(&c));
        let SquareCertificate::Root(r) = &v.certificate else { panic!() };
        assert!(r == &PolyQ::x() || r == &PolyQ::from_ints(&[0, -1]));
    }

    #[test]
    fn two_is_not_square_in_gaussian_field() {
        let c = elem(&[1, 0, 1], &[2]);
        let v = is_square_in_number_field(&c).unwrap();
        assert!(!v.is_square);
        assert!(v.verify(&c));
    }

    #[test]
    fn degree_one_residue_field() {
        let c = elem(&[-3, 1], &[9]);
        let v = is_square_in_number_field(&c).unwrap();
        assert_eq!(v.certificate, SquareCertificate::Root(PolyQ::constant(rat(3))));
        let c = elem(&[-3, 1], &[-1]);
        let v = is_square_in_number_field(&c).unwrap();
        assert!(!v.is_square && v.verify(&c));
    }

    #[test]
    fn square_with_rational_root() {
        // (x/3 + 1/2)^2 in Q(cbrt 2)
        let m = PolyQ::from_ints(&[-2, 0, 0, 1]);
        let r = PolyQ::new(vec![BigRational::new(1.into(), 2.into()), BigRational::new(1.into(), 3.into())]);
        let c = NumberFieldElem::new(m, &r * &r).unwrap();
        let v = is_square_in_number_field(&c).unwrap();
        assert!(v.is_square && v.verify(&c));
    }

    #[test]
    fn x4_plus_1_never_inert() {
        // x^4+1 splits modulo every prime, so lifting needs sign patterns
        let m = PolyQ::from_ints(&[1, 0, 0, 0, 1]);
        let r = PolyQ::from_ints(&[3, -1, 2, 5]);
        let c = NumberFieldElem::new(m.clone(), &r * &r).unwrap();
        let v = is_square_in_number_field(&c).unwrap();
        assert!(v.is_square && v.verify(&c));
        let n = NumberFieldElem::new(m, (&r * &r).scale(&rat(3))).unwrap();
        let v = is_square_in_number_field(&n).unwrap();
        assert!(!v.is_square && v.verify(&n));
    }

    #[test]
    fn forged_certificates_rejected() {
        let c = elem(&[1, 0, 1], &[2]);
        let fake = SquareClassVerdict { is_square: true, certificate: SquareCertificate::Root(PolyQ::x()) };
        assert!(!fake.verify(&c));
        // 2 is a square mod (5, x-2): 2 is a non-residue mod 5 though; forge the image
        let fake = SquareClassVerdict {
            is_square: false,
            certificate: SquareCertificate::NonResidue {
                prime: 5,
                factor: PolyFp::from_i64s(5, &[2, 1]),
                image: PolyFp::constant(5, 3),
            },
        };
        assert!(!fake.verify(&c));
    }

    #[test]
    fn zero_rejected_and_budget_exhaustion_reported() {
        let z = NumberFieldElem::new_unchecked(PolyQ::from_ints(&[1, 0, 1]), PolyQ::zero());
        assert!(is_square_in_number_field(&z).is_err());
        let c = elem(&[1, 0, 1], &[2]);
        let tiny = SquareBudget { max_prime: 4, ..SquareBudget::default() };
        assert!(matches!(is_square_in_number_field_with(&c, &tiny), Err(Error::Undecided(_))));
    }
}
