//! Exact algebra over Q and number fields: polynomials, rational functions,
//! factorization, splitting fields, linear algebra and an expression parser.

pub mod error;
pub mod field;
pub mod linalg;
pub mod modp;
pub mod numfield;
pub mod parse;
pub mod polyrat;
pub mod rat;
pub mod upoly;

pub use error::AlgebraError;
pub use field::Field;
pub use numfield::{AlgNumber, NumberField};
pub use polyrat::{MPoly, Mono, RFunc, URFunc};
pub use rat::Rat;
pub use upoly::UPoly;
