//! Polynomials and rational functions over Q or a number field.

pub mod factor;
pub mod gcd;
mod modgcd;
pub mod mpoly;
pub mod rfunc;

use std::sync::Arc;

pub use gcd::{content_in, gcd, gcd_many, lcm, primitive_in, resultant, squarefree_factor};
pub use mpoly::{MPoly, Mono};
pub use rfunc::{compose, RFunc, URFunc};

use crate::field::Field;
use crate::numfield::{AlgNumber, NumberField};
use crate::rat::Rat;
use crate::upoly::UPoly;

/// `unit · ∏ factor^mult` with monic factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<P, K> {
    pub unit: K,
    pub factors: Vec<(P, u32)>,
}

impl<K: Field> Factorization<MPoly<K>, K> {
    pub fn expand(&self) -> MPoly<K> {
        self.factors.iter().fold(MPoly::constant(self.unit.clone()), |a, (f, k)| a.mul(&f.pow(*k)))
    }
}

impl<K: Field> Factorization<UPoly<K>, K> {
    pub fn expand(&self) -> UPoly<K> {
        self.factors.iter().fold(UPoly::constant(self.unit.clone()), |a, (f, k)| a.mul(&f.pow(*k)))
    }
}

/// Complete factorization of a univariate polynomial over Q.
pub fn factor_upoly_q(p: &UPoly<Rat>) -> Factorization<UPoly<Rat>, Rat> {
    let (unit, factors) = factor::univariate::factor_q(p);
    Factorization { unit, factors }
}

/// Complete factorization over Q.
pub fn factor_irreducible(p: &MPoly<Rat>) -> Factorization<MPoly<Rat>, Rat> {
    let (unit, factors) = factor::factor_mpoly_q(p);
    Factorization { unit, factors }
}

/// Complete factorization over the number field `field`.
pub fn factor_over(p: &MPoly<AlgNumber>, field: &Arc<NumberField>) -> Factorization<MPoly<AlgNumber>, AlgNumber> {
    let (unit, factors) = factor::factor_mpoly_alg(p, field);
    Factorization { unit, factors }
}

/// Embeds a rational polynomial into a number field.
pub fn to_alg_poly(p: &MPoly<Rat>) -> MPoly<AlgNumber> {
    p.map(|c| AlgNumber::rational(c.clone()))
}

pub fn to_alg_rf(r: &RFunc<Rat>) -> RFunc<AlgNumber> {
    RFunc::from_coprime(to_alg_poly(r.num()), to_alg_poly(r.den()))
}

/// Partial derivative `∂_v r`.
pub fn derivative<K: Field>(r: &RFunc<K>, v: usize) -> RFunc<K> {
    r.derivative(v)
}
