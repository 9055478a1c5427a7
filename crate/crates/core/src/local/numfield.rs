//! Elements of number fields `Q[x]/(pi)`.

use std::fmt;

use crate::arith::factor_q::is_irreducible_q;
use crate::arith::poly_q::PolyQ;
use crate::error::{domain, Result};

/// An element of `Q[x]/(modulus)` with `modulus` monic irreducible and
/// `value` reduced (degree below that of the modulus).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumberFieldElem {
    modulus: PolyQ,
    value: PolyQ,
}

impl NumberFieldElem {
    /// Checks that `modulus` is monic and irreducible over Q, then reduces `value`.
    pub fn new(modulus: PolyQ, value: PolyQ) -> Result<Self> {
        if !modulus.is_monic() || modulus.is_constant() {
            return Err(domain(format!("{modulus} is not a monic nonconstant polynomial")));
        }
        if !is_irreducible_q(&modulus)? {
            return Err(domain(format!("{modulus} is reducible over Q")));
        }
        Ok(Self::new_unchecked(modulus, value))
    }

    /// Caller guarantees `modulus` is monic irreducible.
    pub(crate) fn new_unchecked(modulus: PolyQ, value: PolyQ) -> Self {
        let value = value.rem(&modulus).expect("nonzero modulus");
        NumberFieldElem { modulus, value }
    }

    pub fn modulus(&self) -> &PolyQ {
        &self.modulus
    }

    pub fn value(&self) -> &PolyQ {
        &self.value
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn same_field(&self, v: PolyQ) -> Self {
        Self::new_unchecked(self.modulus.clone(), v)
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        self.same_field(&self.value * &o.value)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(domain("inverse of zero in a number field"));
        }
        let (g, s, _) = PolyQ::xgcd(&self.value, &self.modulus);
        debug_assert!(g.is_constant());
        Ok(self.same_field(s))
    }

    pub fn powi(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.same_field(PolyQ::one());
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        Ok(acc)
    }
}

impl fmt::Display for NumberFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod ({})", self.value, self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_arithmetic() {
        let m = PolyQ::from_ints(&[1, 0, 1]);
        let i = NumberFieldElem::new(m.clone(), PolyQ::x()).unwrap();
        assert_eq!(i.mul(&i).value(), &PolyQ::from_ints(&[-1]));
        assert_eq!(i.inv().unwrap().value(), &PolyQ::from_ints(&[0, -1]));
        assert_eq!(i.powi(4).unwrap().value(), &PolyQ::one());
        assert_eq!(i.powi(-3).unwrap(), i);
    }

    #[test]
    fn rejects_bad_modulus() {
        assert!(NumberFieldElem::new(PolyQ::from_ints(&[-1, 0, 1]), PolyQ::one()).is_err());
        assert!(NumberFieldElem::new(PolyQ::from_ints(&[1, 0, 2]), PolyQ::one()).is_err());
    }
}
