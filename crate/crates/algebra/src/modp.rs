//! Arithmetic modulo the Mersenne prime 2^61 - 1, used for fast consistency checks
//! of linear systems before solving them over Q.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::field::Field;
use crate::rat::Rat;

pub const P: u64 = (1u64 << 61) - 1;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Fp(pub u64);

fn mulmod(a: u64, b: u64) -> u64 {
    let t = (a as u128) * (b as u128);
    let lo = (t as u64) & P;
    let hi = (t >> 61) as u64;
    let s = lo + hi;
    if s >= P {
        s - P
    } else {
        s
    }
}

fn from_big(n: &BigInt) -> u64 {
    let r = n.mod_floor(&BigInt::from(P));
    r.abs().to_u64().unwrap()
}

impl Fp {
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }
    pub fn from_i64(n: i64) -> Self {
        let r = n.rem_euclid(P as i64);
        Fp(r as u64)
    }
    /// None when the denominator vanishes mod P.
    pub fn try_from_rat(r: &Rat) -> Option<Self> {
        let d = from_big(r.denom());
        if d == 0 {
            return None;
        }
        Some(Fp(from_big(r.numer())).mul(&Fp(d).inv()))
    }
}

impl Field for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
    fn sub(&self, o: &Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }
    fn mul(&self, o: &Self) -> Self {
        Fp(mulmod(self.0, o.0))
    }
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero mod p");
        // Fermat
        let mut e = P - 2;
        let mut b = *self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }
    fn from_rat(r: &Rat) -> Self {
        Fp::try_from_rat(r).expect("denominator divisible by p")
    }
    fn to_rat(&self) -> Option<Rat> {
        None
    }
    fn canonical_cmp(&self, o: &Self) -> Ordering {
        self.0.cmp(&o.0)
    }
    fn to_text(&self) -> String {
        format!("{}", self.0)
    }
    fn is_atom(&self) -> bool {
        true
    }
}
