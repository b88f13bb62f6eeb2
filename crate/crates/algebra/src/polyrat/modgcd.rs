//! Dense modular gcd over Q: one image modulo 2^61 - 1 computed by recursive
//! evaluation and interpolation, rational reconstruction of the monic result,
//! then exact trial division over Q.

use std::any::Any;
use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::field::Field;
use crate::modp::{Fp, P};
use crate::polyrat::mpoly::{MPoly, Mono};
use crate::rat::Rat;
use crate::upoly::UPoly;

type MP = MPoly<Fp>;
type UP = UPoly<Fp>;

/// Modular gcd for `K = Q`; `None` for other fields or when the image is unusable.
pub(crate) fn try_modular<K: Field>(a: &MPoly<K>, b: &MPoly<K>) -> Option<MPoly<K>> {
    let a = (a as &dyn Any).downcast_ref::<MPoly<Rat>>()?;
    let b = (b as &dyn Any).downcast_ref::<MPoly<Rat>>()?;
    let g = gcd_q(a, b)?;
    let boxed: Box<dyn Any> = Box::new(g);
    boxed.downcast::<MPoly<K>>().ok().map(|g| *g)
}

fn reduce(a: &MPoly<Rat>) -> Option<MP> {
    let mut out = MP::zero();
    for (m, c) in &a.terms {
        let x = Fp::try_from_rat(c)?;
        if x.is_zero() {
            // a vanishing coefficient could hide a degree drop
            return None;
        }
        out.terms.insert(m.clone(), x);
    }
    Some(out)
}

fn gcd_q(a: &MPoly<Rat>, b: &MPoly<Rat>) -> Option<MPoly<Rat>> {
    let (ap, bp) = (reduce(a)?, reduce(b)?);
    let g = gcd_p(&ap, &bp, 0)?.monic();
    let mut out = MPoly::<Rat>::zero();
    for (m, c) in &g.terms {
        out.terms.insert(m.clone(), reconstruct(c.0)?);
    }
    if out.is_constant() {
        return Some(MPoly::one());
    }
    (a.exact_div(&out).is_some() && b.exact_div(&out).is_some()).then_some(out)
}

/// `n/d ≡ x mod P` with `|n|, d < 2^30`.
fn reconstruct(x: u64) -> Option<Rat> {
    let bound: i128 = 1 << 30;
    let (mut r0, mut r1) = (P as i128, x as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 >= bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() >= bound {
        return None;
    }
    let (n, d) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    Some(Rat::new(BigInt::from(n), BigInt::from(d)))
}

fn used_vars(a: &MP, b: &MP) -> Vec<usize> {
    let mut v = a.vars_used();
    v.extend(b.vars_used());
    v.sort();
    v.dedup();
    v
}

/// Coefficients in `Fp[y]` keyed by the monomial in the remaining variables.
fn split(a: &MP, y: usize) -> BTreeMap<Mono, UP> {
    let mut out: BTreeMap<Mono, Vec<Fp>> = BTreeMap::new();
    for (m, c) in &a.terms {
        let e = m.exp(y) as usize;
        let v = out.entry(m.with_exp(y, 0)).or_default();
        if v.len() <= e {
            v.resize(e + 1, Fp(0));
        }
        v[e] = *c;
    }
    out.into_iter().map(|(m, v)| (m, UP::new(v))).collect()
}

fn content_y(a: &MP, y: usize) -> UP {
    let mut g = UP::zero();
    for c in split(a, y).values() {
        g = g.gcd(c);
        if g.deg() == 0 {
            break;
        }
    }
    g
}

fn lc_y(a: &MP, y: usize) -> UP {
    split(a, y).into_iter().next_back().map(|x| x.1).unwrap_or_else(UP::zero)
}

fn gcd_p(a: &MP, b: &MP, depth: u32) -> Option<MP> {
    if a.is_zero() {
        return Some(b.monic());
    }
    if b.is_zero() {
        return Some(a.monic());
    }
    let vars = used_vars(a, b);
    match vars.len() {
        0 => return Some(MP::one()),
        1 => {
            let v = vars[0];
            return Some(MP::from_upoly(&a.to_upoly(v).gcd(&b.to_upoly(v)), v));
        }
        _ => {}
    }
    let y = *vars.last().unwrap();
    let (ca, cb) = (content_y(a, y), content_y(b, y));
    let cg = MP::from_upoly(&ca.gcd(&cb), y);
    let a1 = a.exact_div(&MP::from_upoly(&ca, y))?;
    let b1 = b.exact_div(&MP::from_upoly(&cb, y))?;
    let (la, lb) = (lc_y(&a1, y), lc_y(&b1, y));
    let gamma = la.gcd(&lb);
    let bound = a1.degree_in(y).min(b1.degree_in(y)) as usize + gamma.degree();

    let mut h = MP::zero();
    let mut modulus = UP::one();
    let mut shape: Option<(u32, Mono)> = None;
    let mut count = 0usize;
    let mut y0 = 1u64 + 7919 * depth as u64;
    let mut tries = 0;
    while tries < 4 * bound + 40 {
        tries += 1;
        y0 += 1;
        let v = Fp(y0);
        if la.eval(&v).is_zero() || lb.eval(&v).is_zero() {
            continue;
        }
        let gi = gcd_p(&a1.eval_var(y, &v), &b1.eval_var(y, &v), depth + 1)?;
        if gi.is_constant() {
            return Some(cg);
        }
        let s = (gi.total_degree(), gi.lm().unwrap().clone());
        match &shape {
            Some(cur) if s > *cur => continue,
            Some(cur) if s == *cur => {}
            _ => {
                shape = Some(s);
                h = MP::zero();
                modulus = UP::one();
                count = 0;
            }
        }
        let gi = gi.scale(&gamma.eval(&v));
        // Newton step
        let diff = gi.sub(&h.eval_var(y, &v));
        let mv = modulus.eval(&v);
        if !diff.is_zero() {
            h = h.add(&diff.scale(&mv.inv()).mul(&MP::from_upoly(&modulus, y)));
        }
        modulus = modulus.mul(&UP::new(vec![v.neg(), Fp(1)]));
        count += 1;
        if count > bound {
            let hc = content_y(&h, y);
            let hp = h.exact_div(&MP::from_upoly(&hc, y))?;
            if a1.exact_div(&hp).is_some() && b1.exact_div(&hp).is_some() {
                return Some(cg.mul(&hp).monic());
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::Scope;

    fn p(s: &str) -> MPoly<Rat> {
        Scope::standard(3).parse(s).unwrap().num().clone()
    }

    #[test]
    fn modular_matches_known_gcds() {
        let g = p("x1^2 + 3*x2*x3 - 1/2");
        let a = g.mul(&p("x1 - x2 + 5"));
        let b = g.mul(&p("x1*x3 + x2^2"));
        assert_eq!(gcd_q(&a, &b).unwrap(), g.monic());
        assert_eq!(gcd_q(&p("x1+x2"), &p("x1-x2")).unwrap(), MPoly::one());
        let c = p("(x1^2+x2^2)^3*(x1+x2)");
        let d = p("(x1^2+x2^2)^2*(x1-x2)*x3");
        assert_eq!(gcd_q(&c, &d).unwrap(), p("(x1^2+x2^2)^2"));
    }

    #[test]
    fn reconstruction() {
        let x = Fp::try_from_rat(&Rat::new(BigInt::from(-7), BigInt::from(12))).unwrap();
        assert_eq!(reconstruct(x.0), Some(Rat::new(BigInt::from(-7), BigInt::from(12))));
    }
}
