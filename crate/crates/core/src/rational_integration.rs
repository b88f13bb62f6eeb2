//! Elementary representation `e^{F0} A^{1/q} ∏ F_i^{λ_i}` of a hyperexponential
//! function from its logarithmic differential.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use hyperint_algebra::linalg::{hnf, hnf_coords};
use hyperint_algebra::numfield::{embed, SplittingField};
use hyperint_algebra::polyrat::mpoly::default_name;
use hyperint_algebra::rat::{den_lcm, from_bigint};
use hyperint_algebra::{AlgNumber, Field, MPoly, NumberField, RFunc, Rat};

use crate::config::Caps;
use crate::error::{HyperintError, Result};
use crate::forms::{is_closed, OneForm};
use crate::hermite::{hermite_reduce, reembed, residue_entries, residue_polys};

#[derive(Clone, Debug)]
pub struct HyperexpRep {
    pub nvars: usize,
    pub f0: RFunc<Rat>,
    pub a: RFunc<Rat>,
    pub q: u32,
    pub log_terms: Vec<(AlgNumber, RFunc<AlgNumber>)>,
    pub field: Arc<NumberField>,
}

impl PartialEq for HyperexpRep {
    fn eq(&self, o: &Self) -> bool {
        self.nvars == o.nvars
            && self.f0 == o.f0
            && self.a == o.a
            && self.q == o.q
            && self.log_terms == o.log_terms
            && self.field.same(&o.field)
    }
}

impl HyperexpRep {
    pub fn trivial(nvars: usize) -> Self {
        HyperexpRep {
            nvars,
            f0: RFunc::zero(),
            a: RFunc::one(),
            q: 1,
            log_terms: vec![],
            field: NumberField::rationals(),
        }
    }

    /// H is algebraic: no exponential part and no irrational exponents.
    pub fn is_algebraic(&self) -> bool {
        self.f0.is_constant() && self.log_terms.is_empty()
    }

    pub fn text(&self) -> String {
        let name = |i: usize| default_name(i);
        let mut s = format!("F0 = {}\nA = {}\nq = {}\n", self.f0.to_text(&name), self.a.to_text(&name), self.q);
        if self.field.degree() > 1 {
            s += &format!("field: {} = root of {}\n", self.field.name(), self.field.minpoly().to_text(self.field.name()));
        }
        for (lam, f) in &self.log_terms {
            s += &format!("log term: lambda = {}, F = {}\n", lam.to_text(), f.to_text(&name));
        }
        s
    }
}

/// A Z-basis `B` of the module spanned by `vals`, and the integer matrix `M`
/// with `vals_i = Σ_j M_ij B_j`.
pub fn residue_lattice_basis(vals: &[AlgNumber]) -> (Vec<AlgNumber>, Vec<Vec<BigInt>>) {
    let Some(field) = vals.iter().find_map(|v| v.field().cloned()) else {
        let field = NumberField::rationals();
        return residue_lattice_basis(&vals.iter().map(|v| v.in_field(&field)).collect::<Vec<_>>());
    };
    let n = field.degree();
    let coords: Vec<Vec<Rat>> = vals
        .iter()
        .map(|v| {
            let mut c = v.full_coords();
            c.resize(n, Rat::zero());
            c
        })
        .collect();
    let d = den_lcm(coords.iter().flatten());
    let rows: Vec<Vec<BigInt>> =
        coords.iter().map(|c| c.iter().map(|x| (x * from_bigint(d.clone())).to_integer()).collect()).collect();
    let h = hnf(&rows);
    let basis = h
        .iter()
        .map(|r| AlgNumber::from_coords(r.iter().map(|x| Rat::new(x.clone(), d.clone())).collect(), &field))
        .collect();
    let m = rows.iter().map(|r| hnf_coords(&h, r).expect("generator outside its own span")).collect();
    (basis, m)
}

fn sub_log_terms(w: &OneForm, entries: &[(AlgNumber, MPoly<AlgNumber>)]) -> Result<OneForm> {
    let n = w.n();
    let mut out = w.clone();
    for j in 0..n {
        let mut acc: RFunc<AlgNumber> = RFunc::zero();
        for (lam, g) in entries {
            acc = acc.add(&RFunc::new(g.derivative(j), g.clone()).scale(lam));
        }
        let r = acc
            .to_rat_func()
            .ok_or_else(|| HyperintError::InternalInconsistency("logarithmic part is not rational".into()))?;
        out.coeffs[j] = out.coeffs[j].sub(&r);
    }
    Ok(out)
}

/// Computes `(F0, A, q, [(λ_i, F_i)])` with `dF0 + dA/(qA) + Σ λ_i dF_i/F_i = ω`.
pub fn rational_integrate(w: &OneForm, caps: &Caps) -> Result<HyperexpRep> {
    if !is_closed(w) {
        return Err(HyperintError::NotClosed);
    }
    let n = w.n();
    let mut work = w.clone();
    let mut f0 = RFunc::zero();
    let mut a_exps: BTreeMap<MPolyKey, Rat> = BTreeMap::new();
    let mut sf = SplittingField::rationals(caps.field_cap);
    let mut entries: Vec<(AlgNumber, MPoly<AlgNumber>)> = vec![];

    for i in (0..n).rev() {
        if work.coeffs[i].is_zero() {
            continue;
        }
        let h = hermite_reduce(&work.coeffs[i], i);
        if !h.rational_part.is_zero() {
            f0 = f0.add(&h.rational_part);
            work = work.sub(&OneForm::d(&h.rational_part, n));
        }
        let mut blocks = residue_polys(&h.p, &h.q, i)?;
        for b in &blocks {
            if let Some(img) = sf.adjoin(&b.s)? {
                for (lam, g) in entries.iter_mut() {
                    *lam = embed(lam, &img);
                    *g = reembed(g, &img);
                }
            }
        }
        residue_entries(&h.p, &h.q, i, &mut blocks, &sf)?;
        for b in blocks {
            if !b.shift.is_zero() {
                let da = OneForm::d(&RFunc::from_poly(b.a_factor.clone()), n).scale(&RFunc::new(MPoly::one(), b.a_factor.clone()));
                work = work.sub(&da.scale_rat(&b.shift));
                *a_exps.entry(MPolyKey(b.a_factor)).or_insert_with(Rat::zero) += &b.shift;
            }
            work = sub_log_terms(&work, &b.entries)?;
            entries.extend(b.entries);
        }
        if !work.coeffs[i].is_zero() {
            return Err(HyperintError::InternalInconsistency(format!("x{} component survived reduction", i + 1)));
        }
    }
    if !work.is_zero() {
        return Err(HyperintError::InternalInconsistency("residual form after reduction".into()));
    }

    a_exps.retain(|_, e| !e.is_zero());
    let q = a_exps.values().fold(BigInt::from(1), |acc, e| acc.lcm(e.denom()));
    let mut a = RFunc::one();
    for (MPolyKey(p), e) in &a_exps {
        let k = (e * from_bigint(q.clone())).to_integer().to_i64().expect("exponent overflow");
        a = a.mul(&RFunc::from_poly(p.clone()).pow(k));
    }

    let field = sf.field.clone();
    let vals: Vec<AlgNumber> = entries.iter().map(|(l, _)| l.in_field(&field)).collect();
    let mut log_terms = vec![];
    if !vals.is_empty() {
        let (basis, m) = residue_lattice_basis(&vals);
        for (k, b) in basis.into_iter().enumerate() {
            let mut f: RFunc<AlgNumber> = RFunc::one();
            for (row, (_, g)) in m.iter().zip(&entries) {
                let e = row[k].to_i64().expect("exponent overflow");
                if e != 0 {
                    f = f.mul(&RFunc::from_poly(g.clone()).pow(e));
                }
            }
            let (b, f) = normalize_sign(b, f);
            log_terms.push((b, f));
        }
        log_terms.sort_by(|x, y| x.0.canonical_cmp(&y.0).then_with(|| x.1.num().canonical_cmp(y.1.num())));
    }
    Ok(HyperexpRep { nvars: n, f0, a, q: q.to_u32().expect("q overflow"), log_terms, field })
}

/// `λ·dF/F = (−λ)·d(1/F)/(1/F)`; choose the sign whose first nonzero coordinate is positive.
fn normalize_sign(b: AlgNumber, f: RFunc<AlgNumber>) -> (AlgNumber, RFunc<AlgNumber>) {
    let neg = b.full_coords().iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
    if neg {
        (b.neg(), f.inv())
    } else {
        (b, f)
    }
}

/// Orders polynomials canonically so that `A` is assembled deterministically.
#[derive(Clone, PartialEq, Eq)]
struct MPolyKey(MPoly<Rat>);

impl Ord for MPolyKey {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.0.canonical_cmp(&o.0)
    }
}

impl PartialOrd for MPolyKey {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::log_derivative;
    use hyperint_algebra::numfield::splitting_field;
    use hyperint_algebra::parse::Scope;
    use hyperint_algebra::rat::{int, rat};
    use hyperint_algebra::UPoly;

    fn form(s: &str, n: usize) -> OneForm {
        OneForm::new(Scope::standard(n).parse_form(s).unwrap())
    }

    fn p(s: &str) -> RFunc<Rat> {
        Scope::standard(3).parse(s).unwrap()
    }

    fn roundtrip(w: &OneForm) -> HyperexpRep {
        let rep = rational_integrate(w, &Caps::default()).unwrap();
        assert_eq!(&log_derivative(&rep), w);
        for (lam, _) in &rep.log_terms {
            assert_eq!(lam.trace(), int(0));
        }
        rep
    }

    #[test]
    fn zero_form() {
        let rep = roundtrip(&OneForm::zero(2));
        assert_eq!(rep, HyperexpRep::trivial(2));
    }

    #[test]
    fn exponential_times_root() {
        let rep = roundtrip(&form("form(x2, x1, 1/(2*x3))", 3));
        assert_eq!(rep.f0, p("x1*x2"));
        assert_eq!(rep.a, p("x3"));
        assert_eq!(rep.q, 2);
        assert!(rep.log_terms.is_empty());
    }

    #[test]
    fn example_one() {
        let w = form(
            "form((2*x1^3-12*x1^2*x2-3*x1^2+6*x2^2)/(3*x1^2*(x1^2-2*x2^2)), 4*(3*x1-x2)/(3*(x1^2-2*x2^2)), 1/x3)",
            3,
        );
        let rep = roundtrip(&w);
        assert_eq!(rep.f0, p("1/x1"));
        assert_eq!(rep.q, 3);
        assert_eq!(rep.a, p("x3^3*(x1^2-2*x2^2)"));
        assert_eq!(rep.log_terms.len(), 1);
        let lam = &rep.log_terms[0].0;
        assert_eq!(lam.mul(lam), AlgNumber::from_int(2));
    }

    #[test]
    fn lattice_examples() {
        let (f, r) = splitting_field(&UPoly::from_ints(&[-2, 0, 1]), 24).unwrap();
        let s2 = r.iter().find(|x| x.full_coords().iter().any(|c| c.is_positive())).unwrap().clone();
        let bi = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();

        let (b, m) = residue_lattice_basis(&[s2.clone(), s2.neg()]);
        assert_eq!(b.len(), 1);
        assert_eq!(m, vec![bi(&[1]), bi(&[-1])]);

        let half = s2.mul(&AlgNumber::rational(rat(1, 2)).in_field(&f));
        let (b, m) = residue_lattice_basis(&[s2.clone(), half.clone()]);
        assert_eq!(b, vec![half]);
        assert_eq!(m, vec![bi(&[2]), bi(&[1])]);

        let (f, r) = splitting_field(&UPoly::from_ints(&[1, 0, -10, 0, 1]), 24).unwrap();
        // √2 = (r^3 − 9r)/2 and √3 = (11r − r^3)/2 for r = √2+√3
        let g = r[0].clone();
        let half = AlgNumber::rational(rat(1, 2)).in_field(&f);
        let a = g.mul(&g).mul(&g).sub(&g.mul(&AlgNumber::from_int(9))).mul(&half);
        let c = g.mul(&AlgNumber::from_int(11)).sub(&g.mul(&g).mul(&g)).mul(&half);
        assert_eq!(a.mul(&a), AlgNumber::from_int(2));
        assert_eq!(c.mul(&c), AlgNumber::from_int(3));
        let vals = [a.clone(), c.clone(), a.add(&c)];
        let (b, m) = residue_lattice_basis(&vals);
        assert_eq!(b.len(), 2);
        for (v, row) in vals.iter().zip(&m) {
            let mut s = AlgNumber::zero();
            for (bk, e) in b.iter().zip(row) {
                s = s.add(&bk.mul(&AlgNumber::from_rat(&from_bigint(e.clone()))));
            }
            assert_eq!(&s, v);
        }
    }

    #[test]
    fn not_closed_is_rejected() {
        let err = rational_integrate(&form("form(x2, 0)", 2), &Caps::default()).unwrap_err();
        assert_eq!(err, HyperintError::NotClosed);
    }

    #[test]
    fn rational_residues_go_to_a() {
        let rep = roundtrip(&form("form(1/(x1^2-1))", 1));
        assert!(rep.log_terms.is_empty());
        assert_eq!(rep.q, 2);
        assert_eq!(rep.a, p("(x1-1)/(x1+1)"));
    }
}
