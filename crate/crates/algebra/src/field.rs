//! The coefficient-field abstraction shared by polynomials and rational functions.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::rat::{fmt_rat, Rat};

/// A commutative field with exact arithmetic.
///
/// Methods take references so that big coefficients are never moved by accident.
pub trait Field: Clone + PartialEq + Eq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on zero.
    fn inv(&self) -> Self;
    fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }
    fn from_rat(r: &Rat) -> Self;
    fn from_int(n: i64) -> Self {
        Self::from_rat(&crate::rat::int(n))
    }
    /// Some(r) when the element is rational.
    fn to_rat(&self) -> Option<Rat>;
    /// A total order used only for canonical output.
    fn canonical_cmp(&self, o: &Self) -> Ordering;
    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
    /// Text form used by the printers. Atoms print bare, sums come parenthesized.
    fn to_text(&self) -> String;
    /// True when `to_text` is a single token (no top-level sign or sum).
    fn is_atom(&self) -> bool;
}

impl Field for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn to_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }
    fn canonical_cmp(&self, o: &Self) -> Ordering {
        self.cmp(o)
    }
    fn to_text(&self) -> String {
        fmt_rat(self)
    }
    fn is_atom(&self) -> bool {
        self.denom().is_one() && self >= &<Rat as Zero>::zero()
    }
}
