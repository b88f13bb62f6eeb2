//! Multivariate gcd, content, squarefree decomposition and resultants.

use crate::field::Field;
use crate::polyrat::mpoly::MPoly;
use crate::upoly::UPoly;

/// Monic gcd (leading coefficient 1 in grlex order).
pub fn gcd<K: Field>(a: &MPoly<K>, b: &MPoly<K>) -> MPoly<K> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    if a == b {
        return a.monic();
    }
    let (small, big) = if a.nterms() <= b.nterms() { (a, b) } else { (b, a) };
    if big.exact_div(small).is_some() {
        return small.monic();
    }
    for v in a.vars_used() {
        if !b.uses_var(v) {
            return gcd(&content_in(a, v), b);
        }
    }
    for v in b.vars_used() {
        if !a.uses_var(v) {
            return gcd(a, &content_in(b, v));
        }
    }
    let vars = a.vars_used();
    if vars.len() == 1 {
        let v = vars[0];
        let g = a.to_upoly(v).gcd(&b.to_upoly(v));
        return MPoly::from_upoly(&g, v);
    }
    if let Some(g) = super::modgcd::try_modular(a, b) {
        return g;
    }
    let v = *vars
        .iter()
        .min_by_key(|&&v| (a.degree_in(v).max(b.degree_in(v)), std::cmp::Reverse(v)))
        .unwrap();
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let pa = a.exact_div(&ca).unwrap();
    let pb = b.exact_div(&cb).unwrap();
    let g = prs_gcd(&pa, &pb, v);
    c.mul(&g).monic()
}

pub fn gcd_many<K: Field>(ps: &[MPoly<K>]) -> MPoly<K> {
    let mut g = MPoly::zero();
    for p in ps {
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

pub fn lcm<K: Field>(a: &MPoly<K>, b: &MPoly<K>) -> MPoly<K> {
    if a.is_zero() || b.is_zero() {
        return MPoly::zero();
    }
    let g = gcd(a, b);
    a.exact_div(&g).unwrap().mul(b).monic()
}

/// Gcd of the coefficients with respect to `x_v` (monic).
pub fn content_in<K: Field>(a: &MPoly<K>, v: usize) -> MPoly<K> {
    if !a.uses_var(v) {
        return a.monic();
    }
    let mut cs = a.coeffs_in(v);
    cs.retain(|c| !c.is_zero());
    cs.sort_by_key(|c| c.nterms());
    gcd_many(&cs)
}

pub fn primitive_in<K: Field>(a: &MPoly<K>, v: usize) -> MPoly<K> {
    if a.is_zero() {
        return MPoly::zero();
    }
    a.exact_div(&content_in(a, v)).unwrap()
}

/// Primitive PRS gcd of two polynomials primitive in `x_v`.
fn prs_gcd<K: Field>(a: &MPoly<K>, b: &MPoly<K>, v: usize) -> MPoly<K> {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    loop {
        if b.is_zero() {
            return primitive_in(&a, v);
        }
        if b.degree_in(v) == 0 {
            return MPoly::one();
        }
        let r = a.prem(&b, v);
        a = b;
        b = primitive_in(&r, v);
    }
}

/// Resultant with respect to `x_v` (subresultant algorithm, no content removal).
pub fn resultant<K: Field>(a: &MPoly<K>, b: &MPoly<K>, v: usize) -> MPoly<K> {
    if a.is_zero() || b.is_zero() {
        return MPoly::zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut s = MPoly::<K>::one();
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
        if a.degree_in(v) % 2 == 1 && b.degree_in(v) % 2 == 1 {
            s = s.neg();
        }
    }
    if b.degree_in(v) == 0 {
        return s.mul(&b.pow(a.degree_in(v)));
    }
    let vars = {
        let mut u = a.vars_used();
        u.extend(b.vars_used());
        u.sort();
        u.dedup();
        u
    };
    if vars == [v] {
        let r = a.to_upoly(v).resultant(&b.to_upoly(v));
        return s.mul(&MPoly::constant(r));
    }
    let mut g = MPoly::<K>::one();
    let mut h = MPoly::<K>::one();
    loop {
        let da = a.degree_in(v);
        let db = b.degree_in(v);
        let d = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = s.neg();
        }
        let r = a.prem(&b, v);
        if r.is_zero() {
            return MPoly::zero();
        }
        a = b;
        b = r.exact_div(&g.mul(&h.pow(d))).expect("resultant division");
        g = a.lc_in(v);
        h = if d == 0 { h } else { g.pow(d).exact_div(&h.pow(d - 1)).expect("resultant h") };
        if b.degree_in(v) == 0 {
            let da = a.degree_in(v);
            let hh = if da == 0 {
                h
            } else {
                b.pow(da).exact_div(&h.pow(da - 1)).expect("resultant final")
            };
            return s.mul(&hh);
        }
    }
}

/// Discriminant-free squarefree decomposition: `p = unit·∏ f_k^k`,
/// factors pairwise coprime and squarefree in every variable.
pub fn squarefree_factor<K: Field>(p: &MPoly<K>) -> Vec<(MPoly<K>, u32)> {
    let mut out: Vec<(MPoly<K>, u32)> = Vec::new();
    sqf_rec(p, &mut out);
    out.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.canonical_cmp(&b.0)));
    out
}

fn push_mult<K: Field>(out: &mut Vec<(MPoly<K>, u32)>, f: MPoly<K>, k: u32) {
    if f.is_constant() {
        return;
    }
    if let Some(e) = out.iter_mut().find(|e| e.1 == k) {
        e.0 = e.0.mul(&f).monic();
    } else {
        out.push((f.monic(), k));
    }
}

fn sqf_rec<K: Field>(p: &MPoly<K>, out: &mut Vec<(MPoly<K>, u32)>) {
    if p.is_constant() {
        return;
    }
    let v = *p.vars_used().last().unwrap();
    let c = content_in(p, v);
    let f = p.exact_div(&c).unwrap();
    for (g, k) in yun(&f, v) {
        push_mult(out, g, k);
    }
    sqf_rec(&c, out);
}

/// Yun's algorithm in `x_v` for a polynomial primitive in `x_v`.
pub fn yun<K: Field>(f: &MPoly<K>, v: usize) -> Vec<(MPoly<K>, u32)> {
    let mut out = Vec::new();
    if f.degree_in(v) == 0 {
        return out;
    }
    let df = f.derivative(v);
    let a = gcd(f, &df);
    let mut b = f.exact_div(&a).unwrap();
    let mut c = df.exact_div(&a).unwrap();
    let mut d = c.sub(&b.derivative(v));
    let mut i = 1;
    while !b.is_constant() {
        let g = gcd(&b, &d);
        if !g.is_constant() {
            out.push((g.clone(), i));
        }
        b = b.exact_div(&g).unwrap();
        c = d.exact_div(&g).unwrap();
        d = c.sub(&b.derivative(v));
        i += 1;
    }
    out
}

/// Squarefree decomposition with respect to `x_v` only (content kept as multiplicity-1 cofactor).
pub fn squarefree_in<K: Field>(p: &MPoly<K>, v: usize) -> Vec<(MPoly<K>, u32)> {
    let c = content_in(p, v);
    let f = p.exact_div(&c).unwrap();
    yun(&f, v)
}

pub fn upoly_to_mpoly<K: Field>(p: &UPoly<K>, v: usize) -> MPoly<K> {
    MPoly::from_upoly(p, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, Rat};

    type P = MPoly<Rat>;

    fn x(i: usize) -> P {
        P::var(i)
    }

    #[test]
    fn gcd_examples() {
        let a = x(0).pow(2).sub(&x(1).pow(2));
        let b = x(0).sub(&x(1));
        assert_eq!(gcd(&a, &b), b);
        assert_eq!(gcd(&a, &P::zero()), a.monic());
        let s = x(0).add(&x(1));
        let p = s.pow(2).mul(&x(2));
        let q = s.mul(&x(2).pow(2));
        assert_eq!(gcd(&p, &q), s.mul(&x(2)));
    }

    #[test]
    fn gcd_trivariate_hidden_factor() {
        let f = x(0).mul(&x(1)).add(&x(2).pow(2)).add(&P::one());
        let a = f.mul(&x(0).pow(3).sub(&x(2)));
        let b = f.mul(&x(1).pow(2).add(&x(0).mul(&x(2))));
        assert_eq!(gcd(&a, &b), f.monic());
    }

    #[test]
    fn resultant_examples() {
        // Res_x(x^2-2, x-t) = t^2-2
        let r = resultant(&x(0).pow(2).sub(&P::from_int(2)), &x(0).sub(&x(1)), 0);
        assert_eq!(r, x(1).pow(2).sub(&P::from_int(2)));
        assert_eq!(resultant(&x(0), &x(0).add(&P::one()), 0), P::one());
        // Res_x(x^2-2, 1-2*l*x) = 1-8 l^2
        let r = resultant(&x(0).pow(2).sub(&P::from_int(2)), &P::one().sub(&x(0).mul(&x(1)).scale(&int(2))), 0);
        assert_eq!(r, P::one().sub(&x(1).pow(2).scale(&int(8))));
    }

    #[test]
    fn resultant_antisymmetry() {
        let a = x(0).pow(3).add(&x(1)).add(&P::one());
        let b = x(0).pow(2).sub(&x(1).mul(&x(0)));
        let r1 = resultant(&a, &b, 0);
        let r2 = resultant(&b, &a, 0);
        assert_eq!(r1, r2.scale(&int(1)));
        let c = x(0).sub(&x(1));
        let d = x(0).pow(3).sub(&P::from_int(2));
        assert_eq!(resultant(&c, &d, 0), resultant(&d, &c, 0).neg());
    }

    #[test]
    fn squarefree_example() {
        let a = x(0).sub(&x(1));
        let b = x(0).add(&x(1));
        let p = a.pow(3).mul(&b);
        let sf = squarefree_factor(&p);
        assert_eq!(sf, vec![(b.clone(), 1), (a.clone(), 3)]);
    }
}
