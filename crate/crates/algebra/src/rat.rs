//! Rational number helpers on top of `num_rational::BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn from_bigint(n: BigInt) -> Rat {
    BigRational::from_integer(n)
}

pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    a.lcm(b)
}

/// Least common multiple of the denominators.
pub fn den_lcm<'a, I: IntoIterator<Item = &'a Rat>>(it: I) -> BigInt {
    let mut l = BigInt::one();
    for r in it {
        l = l.lcm(r.denom());
    }
    l
}

/// Gcd of the numerators (nonnegative).
pub fn num_gcd<'a, I: IntoIterator<Item = &'a Rat>>(it: I) -> BigInt {
    let mut g = BigInt::zero();
    for r in it {
        g = g.gcd(r.numer());
    }
    g
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

pub fn to_i64(r: &Rat) -> Option<i64> {
    if is_integer(r) {
        r.numer().to_i64()
    } else {
        None
    }
}

pub fn rat_pow(r: &Rat, e: i64) -> Rat {
    if e >= 0 {
        num_traits::pow(r.clone(), e as usize)
    } else {
        num_traits::pow(r.recip(), (-e) as usize)
    }
}

/// Prints `p` or `p/q`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn abs(r: &Rat) -> Rat {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lcm_of_denominators() {
        let v = [rat(1, 2), rat(3, 4), rat(5, 6)];
        assert_eq!(den_lcm(v.iter()), BigInt::from(12));
        assert_eq!(num_gcd([int(6), rat(9, 2)].iter()), BigInt::from(3));
    }

    #[test]
    fn negative_powers() {
        assert_eq!(rat_pow(&rat(2, 3), -2), rat(9, 4));
        assert_eq!(fmt_rat(&rat(-3, 6)), "-1/2");
    }
}
