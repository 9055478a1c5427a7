//! Local computations: Hilbert symbols over Q and square classes in number
//! fields.

pub mod hilbert;
pub mod numfield;
pub mod square;

pub use hilbert::{hilbert, legendre, relevant_places, square_class_q, PlaceQ};
pub use numfield::NumberFieldElem;
pub use square::{
    is_square_in_number_field, is_square_in_number_field_with, SquareBudget, SquareCertificate,
    SquareClassVerdict,
};
