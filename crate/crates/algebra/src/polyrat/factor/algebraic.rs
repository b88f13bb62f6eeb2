//! Factorization over a number field by Trager's norm method.

use std::sync::Arc;

use super::multivariate::factor_mpoly_q;
use crate::field::Field;
use crate::numfield::{AlgNumber, NumberField};
use crate::polyrat::gcd::{gcd, resultant, squarefree_factor};
use crate::polyrat::mpoly::MPoly;
use crate::rat::Rat;

type PA = MPoly<AlgNumber>;
type PQ = MPoly<Rat>;

/// Writes each algebraic coefficient as a polynomial in a fresh variable `x_t`.
pub fn lift_generator(p: &PA, t: usize) -> PQ {
    let mut out = PQ::zero();
    for (m, c) in &p.terms {
        for (i, q) in c.coords().iter().enumerate() {
            out.add_term(m.with_exp(t, m.exp(t) + i as u32), q.clone());
        }
    }
    out
}

/// Inverse of `lift_generator`: substitutes the generator for `x_t`.
pub fn drop_generator(p: &PQ, t: usize, field: &Arc<NumberField>) -> PA {
    let g = field.gen();
    let mut out = PA::zero();
    for (m, c) in &p.terms {
        let e = m.exp(t);
        out.add_term(m.with_exp(t, 0), g.pow(e).mul(&AlgNumber::rational(c.clone())).in_field(field));
    }
    out
}

/// The field of the coefficients, if any coefficient is irrational.
pub fn coefficient_field(p: &PA) -> Option<Arc<NumberField>> {
    p.terms.values().filter_map(|c| c.field().cloned()).find(|f| f.degree() > 1)
}

/// Norm `N_{L/Q}(p)` as a polynomial over Q.
pub fn norm(p: &PA, field: &Arc<NumberField>) -> PQ {
    let t = p.nvars().max(1);
    let lifted = lift_generator(p, t);
    let m = PQ::from_upoly(field.minpoly(), t);
    resultant(&m, &lifted, t)
}

/// (unit, monic irreducible factors over `field` with multiplicities).
pub fn factor_mpoly_alg(p: &PA, field: &Arc<NumberField>) -> (AlgNumber, Vec<(PA, u32)>) {
    if p.is_zero() {
        return (AlgNumber::zero(), vec![]);
    }
    let unit = p.lc();
    let mut out = vec![];
    for (f, k) in squarefree_factor(p) {
        for g in factor_sqfree_alg(&f, field) {
            out.push((g.monic(), k));
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    (unit, out)
}

fn factor_sqfree_alg(f: &PA, field: &Arc<NumberField>) -> Vec<PA> {
    if f.is_constant() {
        return vec![];
    }
    if field.degree() == 1 {
        let q = f.to_rat_poly().unwrap();
        return factor_mpoly_q(&q).1.into_iter().map(|(g, _)| g.map(|c| AlgNumber::rational(c.clone()))).collect();
    }
    let f = f.map(|c| c.in_field(field));
    if f.total_degree() == 1 {
        return vec![f];
    }
    let vars = f.vars_used();
    let alpha = field.gen();
    for s in 0i64..40 {
        let shift = if s % 2 == 0 { s / 2 } else { -(s + 1) / 2 };
        for &v in &vars {
            if shift == 0 && v != vars[0] {
                continue;
            }
            // f(x_v - shift·α)
            let sub = PA::var(v).sub(&PA::constant(alpha.mul(&AlgNumber::from_int(shift))));
            let fs = f.subst(v, &sub);
            let n = norm(&fs, field);
            let sq = squarefree_factor(&n);
            if sq.len() != 1 || sq[0].1 != 1 {
                continue;
            }
            let (_, nf) = factor_mpoly_q(&n);
            if nf.len() == 1 {
                return vec![f.clone()];
            }
            let back = PA::var(v).add(&PA::constant(alpha.mul(&AlgNumber::from_int(shift))));
            let mut out = vec![];
            for (g, _) in nf {
                let ga = g.map(|c| AlgNumber::rational(c.clone()).in_field(field));
                let h = gcd(&ga, &fs);
                if !h.is_constant() {
                    out.push(h.subst(v, &back).monic());
                }
            }
            return out;
        }
    }
    panic!("no squarefree norm found");
}

/// Embeds a rational polynomial into `field`.
pub fn to_alg(p: &PQ, field: &Arc<NumberField>) -> PA {
    p.map(|c| AlgNumber::rational(c.clone()).in_field(field))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::upoly::UPoly;

    #[test]
    fn splits_over_sqrt2() {
        let l = NumberField::new(UPoly::from_ints(&[-2, 0, 1])).unwrap();
        let x = |i| PA::var(i);
        let p = x(0).pow(2).sub(&x(1).pow(2).scale(&AlgNumber::from_int(2)));
        let (u, fs) = factor_mpoly_alg(&p, &l);
        assert_eq!(fs.len(), 2);
        let prod = fs.iter().fold(PA::constant(u), |a, (f, k)| a.mul(&f.pow(*k)));
        assert_eq!(prod, p.map(|c| c.in_field(&l)));
        let s = l.gen();
        assert!(fs.iter().any(|(f, _)| *f == x(0).sub(&x(1).scale(&s))));
    }

    #[test]
    fn univariate_norm() {
        let l = NumberField::new(UPoly::from_ints(&[-2, 0, 1])).unwrap();
        let p = PA::var(0).sub(&PA::constant(l.gen()));
        assert_eq!(norm(&p, &l), PQ::var(0).pow(2).sub(&PQ::from_int(2)));
    }
}
