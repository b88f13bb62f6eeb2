//! Irreducible factorization over Q and over number fields.

pub mod algebraic;
pub mod multivariate;
pub mod univariate;
pub mod zp;

pub use algebraic::{factor_mpoly_alg, norm};
pub use multivariate::factor_mpoly_q;
