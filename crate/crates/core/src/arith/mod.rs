//! Exact integer, rational and polynomial arithmetic.
//!
//! Rationals are `num_rational::BigRational`; everything else here is built
//! on top of it.

pub mod factor_q;
pub mod int;
pub mod parse;
pub mod poly_fp;
pub mod poly_q;
pub(crate) mod zmod;

pub use factor_q::{factor_poly_q, factor_poly_q_capped, is_irreducible_q, FactorizationQ, DEFAULT_MAX_DEGREE};
pub use int::{factor_int, factor_rational, is_prime, primality, FactoredRational, Primality};
pub use num_rational::BigRational;
pub use parse::{parse_poly_fp, parse_poly_q, parse_ratfunc, parse_rational};
pub use poly_fp::{factor_poly_fp, PolyFp};
pub use poly_q::{PolyQ, RatFunc};
