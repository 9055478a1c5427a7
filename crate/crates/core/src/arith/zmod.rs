//! Integer polynomials with coefficients reduced modulo `m`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::poly_fp::PolyFp;

pub(crate) type ZPoly = Vec<BigInt>;

pub(crate) fn trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

pub(crate) fn reduce(a: &[BigInt], m: &BigInt) -> ZPoly {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

pub(crate) fn add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| (a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).mod_floor(m)).collect())
}

pub(crate) fn sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| (a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).mod_floor(m)).collect())
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    reduce(&out, m)
}

/// Division by a monic polynomial modulo `m`.
pub(crate) fn divmod_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let db = b.len() - 1;
    let mut r: ZPoly = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), reduce(&r, m));
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].mod_floor(m);
        if !c.is_zero() {
            for (j, bc) in b.iter().enumerate() {
                r[i + j] = (&r[i + j] - &c * bc).mod_floor(m);
            }
        }
        q[i] = c;
    }
    r.truncate(db);
    (trim(q), reduce(&r, m))
}

pub(crate) fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Image of a rational whose denominator is a unit modulo `m`.
pub(crate) fn rational_mod(c: &BigRational, m: &BigInt) -> Option<BigInt> {
    let inv = inv_mod(c.denom(), m)?;
    Some((c.numer() * inv).mod_floor(m))
}

pub(crate) fn to_fp(a: &[BigInt], p: u64) -> PolyFp {
    let pb = BigInt::from(p);
    PolyFp::new(p, a.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

pub(crate) fn from_fp(a: &PolyFp) -> ZPoly {
    a.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}
