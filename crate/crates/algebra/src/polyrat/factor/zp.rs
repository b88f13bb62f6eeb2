//! Dense polynomials over a prime field `Z/pZ` with `p < 2^31`.

use num_bigint::BigUint;
use rand::Rng;

pub type ZpPoly = Vec<u64>;

pub fn trim(mut v: ZpPoly) -> ZpPoly {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn deg(a: &ZpPoly) -> isize {
    a.len() as isize - 1
}

pub fn add(a: &ZpPoly, b: &ZpPoly, p: u64) -> ZpPoly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)) % p).collect())
}

pub fn sub(a: &ZpPoly, b: &ZpPoly, p: u64) -> ZpPoly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).unwrap_or(&0) + p - b.get(i).unwrap_or(&0)) % p).collect())
}

pub fn mul(a: &ZpPoly, b: &ZpPoly, p: u64) -> ZpPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x * y) % p;
        }
    }
    trim(r)
}

pub fn scale(a: &ZpPoly, c: u64, p: u64) -> ZpPoly {
    trim(a.iter().map(|&x| x * c % p).collect())
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn inv(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero mod p");
    pow_mod(a, p - 2, p)
}

pub fn div_rem(a: &ZpPoly, b: &ZpPoly, p: u64) -> (ZpPoly, ZpPoly) {
    assert!(!b.is_empty());
    if a.len() < b.len() {
        return (vec![], a.clone());
    }
    let li = inv(*b.last().unwrap(), p);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = r[k + b.len() - 1] * li % p;
        q[k] = c;
        if c == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - c * bj % p) % p;
        }
    }
    r.truncate(b.len() - 1);
    (trim(q), trim(r))
}

pub fn rem(a: &ZpPoly, b: &ZpPoly, p: u64) -> ZpPoly {
    div_rem(a, b, p).1
}

pub fn monic(a: &ZpPoly, p: u64) -> ZpPoly {
    match a.last() {
        None => vec![],
        Some(&l) => scale(a, inv(l, p), p),
    }
}

pub fn gcd(a: &ZpPoly, b: &ZpPoly, p: u64) -> ZpPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// (g, s, t) with s·a + t·b = g monic.
pub fn xgcd(a: &ZpPoly, b: &ZpPoly, p: u64) -> (ZpPoly, ZpPoly, ZpPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t);
    }
    let li = inv(*r0.last().unwrap(), p);
    (scale(&r0, li, p), scale(&s0, li, p), scale(&t0, li, p))
}

pub fn derivative(a: &ZpPoly, p: u64) -> ZpPoly {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect())
}

/// base^e mod m.
pub fn powmod_poly(base: &ZpPoly, e: &BigUint, m: &ZpPoly, p: u64) -> ZpPoly {
    let mut r = vec![1u64];
    let mut b = rem(base, m, p);
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            r = rem(&mul(&r, &b, p), m, p);
        }
        if i + 1 < bits {
            b = rem(&mul(&b, &b, p), m, p);
        }
    }
    r
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn ddf(f: &ZpPoly, p: u64) -> Vec<(ZpPoly, usize)> {
    let mut out = vec![];
    let mut f = f.clone();
    let x = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0;
    while deg(&f) >= 2 * (d as isize + 1) {
        d += 1;
        h = powmod_poly(&h, &BigUint::from(p), &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if deg(&g) > 0 {
            out.push((g.clone(), d));
            f = div_rem(&f, &g, p).0;
            h = rem(&h, &f, p);
        }
    }
    if deg(&f) > 0 {
        let dd = deg(&f) as usize;
        out.push((f, dd));
    }
    out
}

/// Equal-degree splitting (Cantor–Zassenhaus), p odd.
pub fn edf<R: Rng>(f: &ZpPoly, d: usize, p: u64, rng: &mut R) -> Vec<ZpPoly> {
    let n = deg(f) as usize;
    if n == d {
        return vec![f.clone()];
    }
    loop {
        let a: ZpPoly = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if deg(&a) < 1 {
            continue;
        }
        let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
        let b = sub(&powmod_poly(&a, &e, f, p), &vec![1], p);
        let g = gcd(&b, f, p);
        if deg(&g) > 0 && deg(&g) < n as isize {
            let h = div_rem(f, &g, p).0;
            let mut out = edf(&g, d, p, rng);
            out.extend(edf(&monic(&h, p), d, p, rng));
            return out;
        }
    }
}

/// Irreducible factors of a monic squarefree polynomial over `Z/pZ`.
pub fn factor_sqfree<R: Rng>(f: &ZpPoly, p: u64, rng: &mut R) -> Vec<ZpPoly> {
    let mut out = vec![];
    for (g, d) in ddf(f, p) {
        out.extend(edf(&g, d, p, rng));
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn factors_mod_7() {
        // x^4 - 1 = (x-1)(x+1)(x^2+1) mod 7
        let p = 7;
        let f = vec![6, 0, 0, 0, 1];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let fs = factor_sqfree(&f, p, &mut rng);
        assert_eq!(fs.len(), 3);
        let prod = fs.iter().fold(vec![1], |a, b| mul(&a, b, p));
        assert_eq!(prod, f);
    }

    #[test]
    fn xgcd_mod_p() {
        let p = 11;
        let a = vec![1, 2, 1];
        let b = vec![3, 1];
        let (g, s, t) = xgcd(&a, &b, p);
        assert_eq!(add(&mul(&s, &a, p), &mul(&t, &b, p), p), g);
    }
}
