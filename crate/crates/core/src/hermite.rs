//! Hermite reduction in one variable over the field of the remaining ones, and
//! Rothstein–Trager residues.

use std::sync::Arc;

use hyperint_algebra::numfield::{embed, SplittingField};
use hyperint_algebra::polyrat::{content_in, factor_irreducible, factor_upoly_q, gcd, to_alg_poly};
use hyperint_algebra::rat::int;
use hyperint_algebra::{AlgNumber, Field, MPoly, NumberField, RFunc, Rat, UPoly};

use crate::error::{HyperintError, Result};
use crate::sample::Sampler;

/// `input = ∂_v R + P/Q` with `Q` squarefree in `x_v` and `deg_v P < deg_v Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteResult<K: Field> {
    pub p: MPoly<K>,
    pub q: MPoly<K>,
    pub rational_part: RFunc<K>,
}

fn to_upoly<K: Field>(p: &MPoly<K>, v: usize) -> UPoly<RFunc<K>> {
    UPoly::new(p.coeffs_in(v).into_iter().map(RFunc::from_poly).collect())
}

fn from_upoly<K: Field>(p: &UPoly<RFunc<K>>, v: usize) -> RFunc<K> {
    let x = RFunc::var(v);
    p.coeffs.iter().rev().fold(RFunc::zero(), |acc, c| acc.mul(&x).add(c))
}

fn antiderivative<K: Field>(p: &UPoly<RFunc<K>>) -> UPoly<RFunc<K>> {
    let mut c = vec![RFunc::zero()];
    for (k, a) in p.coeffs.iter().enumerate() {
        c.push(a.scale(&K::from_int(k as i64 + 1).inv()));
    }
    UPoly::new(c)
}

/// Mack's linear-time variant of Hermite reduction. The gcds are taken in
/// `K[x]`; only the diophantine steps run over `K(x without x_v)`.
pub fn hermite_reduce<K: Field>(r: &RFunc<K>, v: usize) -> HermiteResult<K> {
    let cont = content_in(r.den(), v);
    let den = r.den().exact_div(&cont).unwrap();
    let unit = RFunc::from_poly(cont).inv();
    let num = UPoly::new(r.num().coeffs_in(v).into_iter().map(|c| RFunc::from_poly(c).mul(&unit)).collect());
    let (poly, mut a) = num.div_rem(&to_upoly(&den, v));
    let mut g = from_upoly(&antiderivative(&poly), v);
    let mut dminus = gcd(&den, &den.derivative(v));
    let dstar = den.exact_div(&dminus).unwrap();
    while dminus.degree_in(v) > 0 {
        let dminus2 = gcd(&dminus, &dminus.derivative(v));
        let dminusstar = dminus.exact_div(&dminus2).unwrap();
        let coef = dstar.mul(&dminus.derivative(v)).exact_div(&dminus).unwrap().neg();
        let (b, c) = UPoly::diophantine(&to_upoly(&coef, v), &to_upoly(&dminusstar, v), &a);
        let ratio = to_upoly(&dstar.exact_div(&dminusstar).unwrap(), v);
        a = c.sub(&b.derivative().mul(&ratio));
        g = g.add(&from_upoly(&b, v).div(&RFunc::from_poly(dminus.clone())));
        dminus = dminus2;
    }
    let rest = from_upoly(&a, v).div(&RFunc::from_poly(dstar.mul(&dminus)));
    HermiteResult { p: rest.num().clone(), q: rest.den().clone(), rational_part: g }
}

/// Residues of `P/Q` above one irreducible factor `Q_j` of `Q` whose residue
/// polynomial has the irreducible factor `s`.
#[derive(Clone, Debug)]
pub struct ResidueBlock {
    pub factor: MPoly<Rat>,
    /// Irreducible over Q and monic; its roots are residues.
    pub s: UPoly<Rat>,
    /// Mean of the roots of `s`, moved into `A`.
    pub shift: Rat,
    /// `∏ G` over the roots of `s`; carries the shift.
    pub a_factor: MPoly<Rat>,
    /// `(λ − shift, gcd(Q_j, P − λ ∂Q))` for each root `λ`; zero values dropped.
    pub entries: Vec<(AlgNumber, MPoly<AlgNumber>)>,
}

#[derive(Clone, Debug)]
pub struct ResidueData {
    pub blocks: Vec<ResidueBlock>,
    pub field: Arc<NumberField>,
}

/// Polynomial through `(xs_i, ys_i)`.
fn interpolate(xs: &[Rat], ys: &[Rat]) -> UPoly<Rat> {
    let mut out = UPoly::zero();
    let mut basis = UPoly::one();
    for (i, x) in xs.iter().enumerate() {
        let c = (ys[i].clone() - out.eval(x)) / basis.eval(x);
        out = out.add(&basis.scale(&c));
        basis = basis.mul(&UPoly::new(vec![-x.clone(), Rat::one()]));
    }
    out
}

/// `Res_v(q, p − λ·dq)` at one point of the other variables, as a monic polynomial in `λ`.
fn specialized_resultant(q: &MPoly<Rat>, p: &MPoly<Rat>, dq: &MPoly<Rat>, v: usize, pt: &[Rat]) -> Option<UPoly<Rat>> {
    let at = |m: &MPoly<Rat>| {
        let mut m = m.clone();
        for (u, c) in pt.iter().enumerate() {
            if u != v {
                m = m.eval_var(u, c);
            }
        }
        m.to_upoly(v)
    };
    let (qu, pu, du) = (at(q), at(p), at(dq));
    if qu.degree() as u32 != q.degree_in(v) || !qu.is_squarefree() {
        return None;
    }
    let d = qu.degree();
    // with `q` monic, `Res(q, h mod q)` is the product of `h` over the roots of `q`
    let qu = qu.monic();
    let xs: Vec<Rat> = (0..=d as i64).map(int).collect();
    let ys: Vec<Rat> = xs
        .iter()
        .map(|l| {
            let h = pu.sub(&du.scale(l)).div_rem(&qu).1;
            if h.is_zero() { Rat::zero() } else { qu.resultant(&h) }
        })
        .collect();
    let r = interpolate(&xs, &ys);
    (!r.is_zero()).then(|| r.monic())
}

/// Residue polynomials for every irreducible factor of `Q` involving `x_v`.
///
/// The resultant in `λ` is computed at two random points of the other
/// variables; a mismatch means the residues depend on them.
pub fn residue_polys(p: &MPoly<Rat>, q: &MPoly<Rat>, v: usize) -> Result<Vec<ResidueBlock>> {
    let n = p.nvars().max(q.nvars()).max(v + 1);
    let dq = q.derivative(v);
    let mut sampler = Sampler::new(0x7e5_1d0e);
    let mut out = vec![];
    for (qj, _) in factor_irreducible(q).factors {
        if qj.degree_in(v) == 0 {
            continue;
        }
        let others = (0..n).any(|u| u != v && (qj.uses_var(u) || p.uses_var(u) || dq.uses_var(u)));
        let mut found: Vec<UPoly<Rat>> = vec![];
        let mut tries = 0;
        while found.len() < if others { 2 } else { 1 } {
            tries += 1;
            if tries > 200 {
                return Err(HyperintError::InternalInconsistency("no regular specialization for the residues".into()));
            }
            if let Some(r) = specialized_resultant(&qj, p, &dq, v, &sampler.point(n)) {
                found.push(r);
            }
        }
        if found.iter().any(|r| *r != found[0]) {
            return Err(HyperintError::NonConstantResidue);
        }
        for (s, _) in factor_upoly_q(&found[0]).factors {
            let s = s.monic();
            let d = s.degree();
            let shift = -s.coeff(d - 1) / int(d as i64);
            out.push(ResidueBlock { factor: qj.clone(), s, shift, a_factor: MPoly::one(), entries: vec![] });
        }
    }
    Ok(out)
}

/// Fills `entries` and `a_factor` of each block; every `s` must split in `sf`.
pub fn residue_entries(
    p: &MPoly<Rat>,
    q: &MPoly<Rat>,
    v: usize,
    blocks: &mut [ResidueBlock],
    sf: &SplittingField,
) -> Result<()> {
    let field = &sf.field;
    let lift = |m: &MPoly<Rat>| to_alg_poly(m).map(|c: &AlgNumber| c.in_field(field));
    let pa = lift(p);
    let dqa = lift(&q.derivative(v));
    for b in blocks.iter_mut() {
        let qa = lift(&b.factor);
        let shift = AlgNumber::rational(b.shift.clone()).in_field(field);
        let mut prod = MPoly::one();
        b.entries.clear();
        for lam in sf.roots_of(&b.s) {
            let g = gcd(&qa, &pa.sub(&dqa.scale(&lam)));
            prod = prod.mul(&g);
            let l = lam.sub(&shift);
            if !l.is_zero() {
                b.entries.push((l, g));
            }
        }
        b.a_factor = prod
            .to_rat_poly()
            .ok_or_else(|| HyperintError::InternalInconsistency("conjugate gcd product is not rational".into()))?;
    }
    Ok(())
}

/// Moves a polynomial over an older field into the field whose embedding sends
/// the old generator to `img`.
pub fn reembed(p: &MPoly<AlgNumber>, img: &AlgNumber) -> MPoly<AlgNumber> {
    p.map(|c| embed(c, img))
}

/// Residues of `P/Q` in `x_v`, with all of them in one splitting field.
pub fn extract_residues(p: &MPoly<Rat>, q: &MPoly<Rat>, v: usize, field_cap: usize) -> Result<ResidueData> {
    let mut blocks = residue_polys(p, q, v)?;
    let mut sf = SplittingField::rationals(field_cap);
    for b in &blocks {
        sf.adjoin(&b.s)?;
    }
    residue_entries(p, q, v, &mut blocks, &sf)?;
    Ok(ResidueData { blocks, field: sf.field.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperint_algebra::parse::Scope;

    fn p(s: &str) -> RFunc<Rat> {
        Scope::standard(3).parse(s).unwrap()
    }

    fn check(r: &RFunc<Rat>, v: usize) -> HermiteResult<Rat> {
        let h = hermite_reduce(r, v);
        let back = h.rational_part.derivative(v).add(&RFunc::new(h.p.clone(), h.q.clone()));
        assert_eq!(&back, r);
        assert!(h.p.degree_in(v) < h.q.degree_in(v) || h.p.is_zero());
        h
    }

    #[test]
    fn already_reduced() {
        let h = check(&p("1/x1"), 0);
        assert!(h.rational_part.is_zero());
        assert_eq!(RFunc::new(h.p, h.q), p("1/x1"));
    }

    #[test]
    fn double_pole() {
        let h = check(&p("1/x1^2"), 0);
        assert_eq!(h.rational_part, p("-1/x1"));
        assert!(h.p.is_zero());
    }

    #[test]
    fn parameterized_pole() {
        let h = check(&p("x1/x2^2"), 1);
        assert_eq!(h.rational_part, p("-x1/x2"));
        assert!(h.p.is_zero());
    }

    #[test]
    fn mixed_orders_and_polynomial_part() {
        check(&p("(x1^3*x2 + 1)/((x1-x2)^3*(x1+1)*x2^2)"), 0);
        check(&p("(x1^3*x2 + 1)/((x1-x2)^3*(x1+1)*x2^2)"), 1);
        check(&p("x1^2 + 3/(x1^2-2)^2"), 0);
    }

    #[test]
    fn simple_rational_residue() {
        let d = extract_residues(&MPoly::one(), &MPoly::var(0), 0, 24).unwrap();
        assert_eq!(d.blocks.len(), 1);
        assert_eq!(d.blocks[0].shift, int(1));
        assert_eq!(d.blocks[0].a_factor, MPoly::var(0));
        assert!(d.blocks[0].entries.is_empty());
    }

    #[test]
    fn residues_of_inverse_quadratic() {
        let q = p("x1^2-2");
        let d = extract_residues(&MPoly::one(), q.num(), 0, 24).unwrap();
        assert_eq!(d.field.degree(), 2);
        let b = &d.blocks[0];
        assert_eq!(b.shift, int(0));
        assert_eq!(b.entries.len(), 2);
        for (lam, g) in &b.entries {
            // λ = ±√2/4, G = x1 ∓ √2
            assert_eq!(lam.mul(lam), AlgNumber::rational(hyperint_algebra::rat::rat(1, 8)));
            assert_eq!(g.degree_in(0), 1);
            assert_eq!(lam.trace(), int(0));
        }
    }

    #[test]
    fn residues_constant_along_a_parameter() {
        // d/dx1 log((x1-x2)/(x1+x2)) + (1/2)·d/dx1 log(x1^2+x2^2): residues ±1 and 1/2
        let q = p("(x1^2-x2^2)*(x1^2+x2^2)");
        let w = p("1/(x1-x2) - 1/(x1+x2) + x1/(x1^2+x2^2)");
        let num = w.num().mul(&q.num().exact_div(w.den()).unwrap());
        let mut shifts: Vec<Rat> = residue_polys(&num, q.num(), 0).unwrap().iter().map(|b| b.shift.clone()).collect();
        shifts.sort();
        assert_eq!(shifts, vec![int(-1), hyperint_algebra::rat::rat(1, 2), int(1)]);
    }

    #[test]
    fn interpolation_through_points() {
        let xs: Vec<Rat> = (0..4).map(int).collect();
        let f = UPoly::from_ints(&[3, 0, -2, 1]);
        let ys: Vec<Rat> = xs.iter().map(|x| f.eval(x)).collect();
        assert_eq!(interpolate(&xs, &ys), f);
    }

    #[test]
    fn non_constant_residue_is_reported() {
        // x2/x1 has residue x2 at x1 = 0
        let r = extract_residues(&MPoly::var(1), &MPoly::var(0), 0, 24);
        assert_eq!(r.unwrap_err(), HyperintError::NonConstantResidue);
    }
}
