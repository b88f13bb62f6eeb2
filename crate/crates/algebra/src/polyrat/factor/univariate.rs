//! Univariate factorization over Z: modular factorization, Hensel lifting, recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::zp::{self, ZpPoly};
use crate::field::Field;
use crate::rat::Rat;
use crate::upoly::UPoly;

type BPoly = Vec<BigInt>;

const PRIMES: [u64; 12] = [10007, 10009, 10037, 10039, 10061, 10067, 10069, 10079, 10091, 10093, 10099, 10103];

fn btrim(mut v: BPoly) -> BPoly {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn bmod(v: &[BigInt], m: &BigInt) -> BPoly {
    btrim(v.iter().map(|c| c.mod_floor(m)).collect())
}

fn bsym(v: &[BigInt], m: &BigInt) -> BPoly {
    let half: BigInt = m / 2;
    btrim(
        v.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn badd(a: &[BigInt], b: &[BigInt]) -> BPoly {
    let n = a.len().max(b.len());
    btrim((0..n).map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()).collect())
}

fn bsub(a: &[BigInt], b: &[BigInt]) -> BPoly {
    let n = a.len().max(b.len());
    btrim((0..n).map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default()).collect())
}

fn bmul(a: &[BigInt], b: &[BigInt]) -> BPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    btrim(r)
}

/// Division by a monic polynomial, coefficients reduced mod m.
fn bdivrem_monic(a: &BPoly, b: &BPoly, m: &BigInt) -> (BPoly, BPoly) {
    if a.len() < b.len() {
        return (vec![], bmod(a, m));
    }
    let mut r = bmod(a, m);
    r.resize(a.len(), BigInt::zero());
    let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = r[k + b.len() - 1].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = (&r[k + j] - &c * bj).mod_floor(m);
        }
        q[k] = c;
    }
    r.truncate(b.len() - 1);
    (btrim(q), bmod(&r, m))
}

fn to_zp(a: &[BigInt], p: u64) -> ZpPoly {
    let pb = BigInt::from(p);
    zp::trim(a.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn from_zp(a: &ZpPoly) -> BPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn modinv(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

/// One quadratic Hensel step: f ≡ g·h, s·g + t·h ≡ 1 (mod m), h monic; lifts to m².
#[allow(clippy::too_many_arguments)]
fn hensel_step(f: &BPoly, g: &BPoly, h: &BPoly, s: &BPoly, t: &BPoly, m: &BigInt) -> (BPoly, BPoly, BPoly, BPoly) {
    let m2 = m * m;
    let e = bmod(&bsub(f, &bmul(g, h)), &m2);
    let (q, r) = bdivrem_monic(&bmul(s, &e), h, &m2);
    let g2 = bmod(&badd(&badd(g, &bmul(t, &e)), &bmul(&q, g)), &m2);
    let h2 = bmod(&badd(h, &r), &m2);
    let b = bmod(&bsub(&badd(&bmul(s, &g2), &bmul(t, &h2)), &[BigInt::one()]), &m2);
    let (c, d) = bdivrem_monic(&bmul(s, &b), &h2, &m2);
    let s2 = bmod(&bsub(s, &d), &m2);
    let t2 = bmod(&bsub(&bsub(t, &bmul(t, &b)), &bmul(&c, &g2)), &m2);
    (g2, h2, s2, t2)
}

/// Lifts `f ≡ lc·∏ fs (mod p)` (fs monic) to modulus `p^(2^k) = target`.
fn multi_lift(f: &BPoly, fs: &[ZpPoly], p: u64, steps: u32) -> Vec<BPoly> {
    let pb = BigInt::from(p);
    let big_m = (0..steps).fold(pb.clone(), |m, _| &m * &m);
    if fs.len() == 1 {
        let l = f.last().unwrap();
        let li = modinv(l, &big_m);
        return vec![bmod(&f.iter().map(|c| c * &li).collect::<Vec<_>>(), &big_m)];
    }
    let h0 = fs[0].clone();
    let l = to_zp(&[f.last().unwrap().clone()], p);
    let lc = l.first().copied().unwrap();
    let g0 = fs[1..].iter().fold(vec![lc], |a, b| zp::mul(&a, b, p));
    let (gg, s0, t0) = zp::xgcd(&g0, &h0, p);
    debug_assert_eq!(gg, vec![1]);
    let (mut g, mut h, mut s, mut t) = (from_zp(&g0), from_zp(&h0), from_zp(&s0), from_zp(&t0));
    let mut m = pb;
    for _ in 0..steps {
        let r = hensel_step(&bmod(f, &(&m * &m)), &g, &h, &s, &t, &m);
        g = r.0;
        h = r.1;
        s = r.2;
        t = r.3;
        m = &m * &m;
    }
    let mut out = vec![h];
    out.extend(multi_lift(&g, &fs[1..], p, steps));
    out
}

fn to_rat_poly(v: &BPoly) -> UPoly<Rat> {
    UPoly::new(v.iter().map(|c| Rat::from_integer(c.clone())).collect())
}

fn primitive(v: &BPoly) -> BPoly {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
    }
    if v.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    v.iter().map(|c| c / &g).collect()
}

fn exact_div_z(a: &BPoly, b: &BPoly) -> Option<BPoly> {
    let (q, r) = to_rat_poly(a).div_rem(&to_rat_poly(b));
    if !r.is_zero() {
        return None;
    }
    let mut out = Vec::with_capacity(q.coeffs.len());
    for c in q.coeffs {
        if !c.denom().is_one() {
            return None;
        }
        out.push(c.numer().clone());
    }
    Some(out)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur = vec![];
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Irreducible factors over Z of a primitive squarefree polynomial with positive leading coefficient.
pub fn factor_sqfree_z(f: &BPoly) -> Vec<BPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best: Option<(u64, Vec<ZpPoly>)> = None;
    let mut tried = 0;
    for &p in PRIMES.iter() {
        let fp = to_zp(f, p);
        if zp::deg(&fp) != n as isize {
            continue;
        }
        if zp::deg(&zp::gcd(&fp, &zp::derivative(&fp, p), p)) > 0 {
            continue;
        }
        let fs = zp::factor_sqfree(&zp::monic(&fp, p), p, &mut rng);
        if best.as_ref().is_none_or(|b| fs.len() < b.1.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried >= 4 {
            break;
        }
    }
    let (p, fs) = best.expect("no good prime found");
    if fs.len() == 1 {
        return vec![f.clone()];
    }
    // Mignotte-style bound for coefficients of lc·(factor)
    let maxc = f.iter().map(|c| c.abs()).max().unwrap();
    let lc = f.last().unwrap().abs();
    let bound: BigInt = BigInt::from(2) * &lc * (BigInt::one() << n) * BigInt::from(n as u64 + 1) * &maxc;
    let pb = BigInt::from(p);
    let mut steps = 0;
    let mut m = pb.clone();
    while m <= bound {
        m = &m * &m;
        steps += 1;
    }
    let lifted = multi_lift(f, &fs, p, steps);
    let mut remaining: Vec<BPoly> = lifted;
    let mut cur = f.clone();
    let mut out = vec![];
    let mut k = 1;
    while 2 * k <= remaining.len() {
        let mut found = None;
        for sub in subsets(remaining.len(), k) {
            let l = cur.last().unwrap().clone();
            let mut g = vec![l];
            for &i in &sub {
                g = bmod(&bmul(&g, &remaining[i]), &m);
            }
            let g = primitive(&bsym(&g, &m));
            if let Some(q) = exact_div_z(&cur, &g) {
                found = Some((sub, g, q));
                break;
            }
        }
        match found {
            Some((sub, g, q)) => {
                out.push(g);
                cur = q;
                remaining = remaining.into_iter().enumerate().filter(|(i, _)| !sub.contains(i)).map(|x| x.1).collect();
            }
            None => k += 1,
        }
    }
    if cur.len() > 1 {
        out.push(primitive(&cur));
    }
    out
}

/// Complete factorization over Q: (unit, monic irreducible factors with multiplicities).
pub fn factor_q(p: &UPoly<Rat>) -> (Rat, Vec<(UPoly<Rat>, u32)>) {
    if p.deg() < 1 {
        return (p.lc(), vec![]);
    }
    let unit = p.lc();
    let mut out = vec![];
    for (sf, k) in p.squarefree() {
        let (_, ints) = sf.primitive_int();
        for g in factor_sqfree_z(&ints) {
            out.push((to_rat_poly(&g).monic(), k));
        }
    }
    out.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then_with(|| cmp_upoly(&a.0, &b.0)).then(a.1.cmp(&b.1)));
    (unit, out)
}

pub(crate) fn cmp_upoly<K: Field>(a: &UPoly<K>, b: &UPoly<K>) -> std::cmp::Ordering {
    for i in (0..a.coeffs.len().max(b.coeffs.len())).rev() {
        match a.coeff(i).canonical_cmp(&b.coeff(i)) {
            std::cmp::Ordering::Equal => {}
            c => return c,
        }
    }
    std::cmp::Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(v: &[i64]) -> UPoly<Rat> {
        UPoly::from_ints(v)
    }

    fn check(p: &UPoly<Rat>, nfactors: usize) {
        let (u, fs) = factor_q(p);
        let prod = fs.iter().fold(UPoly::constant(u), |a, (f, k)| a.mul(&f.pow(*k)));
        assert_eq!(&prod, p);
        assert_eq!(fs.len(), nfactors, "{fs:?}");
    }

    #[test]
    fn swinnerton_dyer_four() {
        check(&up(&[1, 0, -10, 0, 1]), 1);
    }

    #[test]
    fn products_split() {
        check(&up(&[-1, 0, 0, 0, 1]), 3);
        check(&up(&[-2, 0, 1]).mul(&up(&[-3, 0, 1])).mul(&up(&[1, 2])), 3);
        check(&up(&[1, 1]).pow(3).mul(&up(&[5, 0, 3])), 2);
    }

    #[test]
    fn cyclotomic_degree_twelve() {
        // x^12 - 1 has 6 cyclotomic factors
        let mut v = vec![0i64; 13];
        v[0] = -1;
        v[12] = 1;
        check(&up(&v), 6);
    }

    #[test]
    fn nonmonic_recombination() {
        // (6x^2 + 5x - 7)(10x^3 - 3x + 1)
        check(&up(&[-7, 5, 6]).mul(&up(&[1, -3, 0, 10])), 2);
    }
}
