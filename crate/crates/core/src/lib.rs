//! Decision procedures for quaternion algebras and exponent-2 Brauer
//! classes over Q, Q(x) and F_p(x).

pub mod arith;
pub mod brauer;
pub mod error;
pub mod funcfield_fp;
pub mod funcfield_q;
pub mod local;

pub use error::{Error, Result};
