//! Kernel and shell of a rational function, the univariate reduction modulo
//! exact twisted forms, and a basis of the twisted cohomology `H·Q[x, 1/(SD)]_n`.

use hyperint_algebra::linalg::solve;
use hyperint_algebra::numfield::SplittingField;
use hyperint_algebra::polyrat::{compose, factor_upoly_q, gcd, resultant, MPoly, Mono};
use hyperint_algebra::rat::{int, is_integer, to_i64};
use hyperint_algebra::{AlgNumber, Field, RFunc, Rat, UPoly, URFunc};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::config::Caps;
use crate::connection::{irreducible_support, solve_tangential_inhom};
use crate::decompose::{express_in_f, hyperexp_decompose};
use crate::error::{HyperintError, Result};
use crate::forms::{is_closed, is_closed_twisted, tangential_derivations, OneForm};

type RF = RFunc<Rat>;
type P = MPoly<Rat>;
type U = UPoly<Rat>;
type UR = URFunc<Rat>;

/// `g = kernel + shell'/shell`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelShell {
    pub kernel: UR,
    pub shell: UR,
}

fn irreducible_factors(p: &U) -> Vec<(U, u32)> {
    if p.deg() < 1 {
        return vec![];
    }
    let mut f = factor_upoly_q(p).factors;
    f.sort_by(|a, b| a.0.coeffs.len().cmp(&b.0.coeffs.len()).then_with(|| cmp_upoly(&a.0, &b.0)));
    f
}

fn cmp_upoly(a: &U, b: &U) -> std::cmp::Ordering {
    for (x, y) in a.coeffs.iter().rev().zip(b.coeffs.iter().rev()) {
        match x.cmp(y) {
            std::cmp::Ordering::Equal => {}
            o => return o,
        }
    }
    a.coeffs.len().cmp(&b.coeffs.len())
}

fn multiplicity(p: &U, q: &U) -> u32 {
    let mut q = q.clone();
    let mut k = 0;
    while !q.is_zero() && q.deg() >= p.deg() {
        match q.exact_div(p) {
            Some(r) => {
                q = r;
                k += 1;
            }
            None => break,
        }
    }
    k
}

/// `g` minus the derivative of a rational function, with squarefree denominator.
fn simple_part(g: &UR) -> UR {
    let mut g = g.clone();
    loop {
        let sq = g.den().squarefree();
        let Some((v, k)) = sq.into_iter().filter(|x| x.1 >= 2).max_by_key(|x| x.1) else { return g };
        let u = g.den().exact_div(&v.pow(k)).unwrap();
        let a = u.mul(&v.derivative()).scale(&int(1 - k as i64));
        let (b, _) = U::diophantine(&a, &v, g.num());
        g = g.sub(&UR::new(b, v.pow(k - 1)).derivative());
    }
}

/// Residue of `g` at the roots of an irreducible factor `p` of its
/// denominator, as a polynomial reduced mod `p`.
fn residue_poly(g: &UR, p: &U) -> U {
    let h = simple_part(g);
    let Some(rest) = h.den().exact_div(p) else { return U::zero() };
    let (_, s, _) = rest.mul(&p.derivative()).xgcd(p);
    h.num().mul(&s).rem(p)
}

fn constant_residue(g: &UR, p: &U) -> Option<Rat> {
    let r = residue_poly(g, p);
    if r.deg() <= 0 {
        Some(r.coeff(0))
    } else {
        None
    }
}

fn log_derivative_u(p: &U) -> UR {
    UR::new(p.derivative(), p.clone())
}

pub fn kernel_shell(g: &UR) -> KernelShell {
    let mut k = g.clone();
    let mut s = UR::one();
    for (p, _) in irreducible_factors(g.den()) {
        if let Some(c) = constant_residue(g, &p) {
            if is_integer(&c) && !c.is_zero() {
                k = k.sub(&log_derivative_u(&p).scale(&c));
                s = s.mul(&UR::from_poly(p.clone()).pow(to_i64(&c).expect("residue overflow")));
            }
        }
    }
    KernelShell { kernel: k, shell: s }
}

/// `(d1, d2)` for `g = g1/g2`.
fn degrees(g: &UR) -> (isize, isize) {
    (g.num().deg(), g.den().deg())
}

fn check_prop3(g: &UR, q: &U, max_deg: isize) -> Result<()> {
    let (d1, d2) = degrees(g);
    if g.is_zero() || d1 - d2 > max_deg {
        return Err(HyperintError::PreconditionViolated(format!("deg g must be at most {max_deg}")));
    }
    if q.is_zero() || !q.is_squarefree() {
        return Err(HyperintError::PreconditionViolated("Q must be squarefree".into()));
    }
    if q.gcd(g.den()).deg() > 0 {
        return Err(HyperintError::PreconditionViolated("Q must be coprime with den(g)".into()));
    }
    Ok(())
}

/// `(z^i/Q)_{i < deg Q}` followed by `(z^i/g2)_{i < d2, i ≠ d1}`.
pub fn prop3_basis(g: &UR, q: &U) -> Result<Vec<UR>> {
    check_prop3(g, q, -1)?;
    let (d1, d2) = degrees(g);
    let mut out = vec![];
    for i in 0..q.degree() {
        out.push(UR::new(U::monomial(Rat::one(), i), q.clone()));
    }
    for i in 0..d2 {
        if i != d1 {
            out.push(UR::new(U::monomial(Rat::one(), i as usize), g.den().clone()));
        }
    }
    Ok(out)
}

/// `f = r' + r·g + Σ coords_k b_k` over the basis of [`prop3_basis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub coords: Vec<Rat>,
    pub r: UR,
}

fn ulcm(a: &U, b: &U) -> U {
    a.mul(b).exact_div(&a.gcd(b)).unwrap().monic()
}

pub fn univariate_reduce(f: &UR, g: &UR, q: &U) -> Result<Reduction> {
    check_prop3(g, q, -2)?;
    let basis = prop3_basis(g, q)?;
    if f.is_zero() {
        return Ok(Reduction { coords: vec![Rat::zero(); basis.len()], r: UR::zero() });
    }
    let g2 = g.den();
    let mut den_r = U::one();
    for (p, m) in irreducible_factors(f.den()) {
        let e = if q.exact_div(&p).is_some() {
            m - 1
        } else {
            let k = multiplicity(&p, g2);
            if k == 0 {
                return Err(HyperintError::PoleOutsideSupport);
            }
            m.saturating_sub(k)
        };
        den_r = den_r.mul(&p.pow(e));
    }
    let df = f.num().deg() - f.den().deg();
    let bound = ((df + 1).max(0) + den_r.deg()) as usize;
    let mut terms: Vec<UR> = (0..=bound)
        .map(|j| {
            let e = UR::new(U::monomial(Rat::one(), j), den_r.clone());
            e.derivative().add(&e.mul(g))
        })
        .collect();
    terms.extend(basis.iter().cloned());
    let l = terms.iter().fold(f.den().clone(), |acc, t| ulcm(&acc, t.den()));
    let polys: Vec<U> = terms.iter().map(|t| t.num().mul(&l.exact_div(t.den()).unwrap())).collect();
    let rhs = f.num().mul(&l.exact_div(f.den()).unwrap());
    let rows = polys.iter().map(|p| p.degree()).chain([rhs.degree()]).max().unwrap() + 1;
    let m: Vec<Vec<Rat>> = (0..rows).map(|i| polys.iter().map(|p| p.coeff(i)).collect()).collect();
    let b: Vec<Rat> = (0..rows).map(|i| rhs.coeff(i)).collect();
    let x = solve(&m, &b, terms.len())
        .ok_or_else(|| HyperintError::InternalInconsistency("univariate reduction system is inconsistent".into()))?;
    let r = UR::new(U::new(x[..=bound].to_vec()), den_r);
    let coords = x[bound + 1..].to_vec();
    let mut check = r.derivative().add(&r.mul(g));
    for (c, bk) in coords.iter().zip(&basis) {
        check = check.add(&bk.scale(c));
    }
    if check != *f {
        return Err(HyperintError::InternalInconsistency("univariate reduction failed certification".into()));
    }
    Ok(Reduction { coords, r })
}

fn divides_radical(p: &P, sd_factors: &[P]) -> bool {
    irreducible_support(&[p]).iter().all(|f| sd_factors.contains(f))
}

fn homography_ok(g: &UR, f: &RF, sd_factors: &[P]) -> bool {
    g.order_at_infinity() >= 2 && !divides_radical(f.den(), sd_factors)
}

/// `(g', F', h)` with `g' = h'·(g∘h)`, `F' = h⁻¹∘F`, `deg g' ≤ −2` and a
/// factor of `den F'` outside `SD`.
pub fn normalize_homography(g: &UR, f: &RF, sd: &P) -> Result<(UR, RF, UR)> {
    let sd_factors = irreducible_support(&[sd]);
    if homography_ok(g, f, &sd_factors) {
        return Ok((g.clone(), f.clone(), UR::z()));
    }
    let zi = UR::z().inv();
    let mzz = UR::z().pow(-2).neg();
    for k in 0..=128i64 {
        let c0 = if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) };
        let c = int(c0);
        if g.den().eval(&c).is_zero() {
            continue;
        }
        let h = UR::constant(c.clone()).add(&zi);
        let g2 = g.compose_u(&h)?.mul(&mzz);
        let fc = f.sub(&RF::constant(c));
        if fc.is_zero() {
            continue;
        }
        let f2 = fc.inv();
        if homography_ok(&g2, &f2, &sd_factors) {
            return Ok((g2, f2, h));
        }
    }
    Err(HyperintError::NoHomographyFound)
}

/// λ-only part of a polynomial in the other variables and `λ = x_lam`.
fn lambda_content(r: &P, lam: usize) -> U {
    let mut groups: std::collections::BTreeMap<Mono, Vec<(u32, Rat)>> = Default::default();
    for (m, c) in &r.terms {
        groups.entry(m.with_exp(lam, 0)).or_default().push((m.exp(lam), c.clone()));
    }
    let mut g = U::zero();
    for cs in groups.values() {
        let mut v = vec![Rat::zero(); cs.iter().map(|x| x.0).max().unwrap() as usize + 1];
        for (e, c) in cs {
            v[*e as usize] = c.clone();
        }
        g = g.gcd(&U::new(v));
    }
    g
}

/// `m(P1, P2)` homogenized: `P2^deg m · m(P1/P2)`.
fn homogenized(m: &U, p1: &P, p2: &P) -> P {
    let d = m.degree();
    let mut acc = P::zero();
    for k in 0..=d {
        let c = m.coeff(k);
        if !c.is_zero() {
            acc = acc.add(&p1.pow(k as u32).mul(&p2.pow((d - k) as u32)).scale(&c));
        }
    }
    acc
}

/// Minimal polynomials of the points of Σ: values `c` with `num(F − c)` dividing a power of `SD`.
pub fn sigma_polys(f: &RF, sd: &P) -> Vec<U> {
    let (p1, p2) = (f.num(), f.den());
    let sd_factors = irreducible_support(&[sd]);
    let lam = f.nvars().max(sd.nvars());
    let pencil = p1.sub(&p2.mul(&P::var(lam)));
    let mut cands: Vec<U> = vec![];
    for p in &sd_factors {
        let Some(v) = p.vars_used().into_iter().next() else { continue };
        let r = resultant(p, &pencil, v);
        if r.is_zero() {
            continue;
        }
        for (m, _) in irreducible_factors(&lambda_content(&r, lam)) {
            cands.push(m.monic());
        }
    }
    if !p2.is_constant() {
        // P1 − c·P2 constant for one c
        let strip = |p: &P| {
            let mut q = p.clone();
            q.terms.remove(&Mono::one());
            q
        };
        let (n1, n2) = (strip(p1), strip(p2));
        let c = n1.lc().div(&n2.lc());
        if n1 == n2.scale(&c) {
            cands.push(U::new(vec![c.neg(), Rat::one()]));
        }
    }
    let mut out: Vec<U> = vec![];
    for m in cands {
        if out.contains(&m) {
            continue;
        }
        let h = homogenized(&m, p1, p2);
        if !h.is_zero() && divides_radical(&h, &sd_factors) {
            out.push(m);
        }
    }
    out.sort_by(cmp_upoly);
    out
}

/// The points of Σ in one splitting field.
pub fn sigma_set(f: &RF, s: &P, d: &P, field_cap: usize) -> Result<Vec<AlgNumber>> {
    let polys = sigma_polys(f, &s.mul(d));
    let mut sf = SplittingField::rationals(field_cap);
    for m in &polys {
        sf.adjoin(m)?;
    }
    let mut out = vec![];
    for m in &polys {
        out.extend(sf.roots_of(m));
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `F^i dF/(T Q(F))`
    OverQ,
    /// `F^i dF/(T g2(F))`
    OverG2,
    /// `F^{deg Q−1} dF/(T Q(F)) − lc(g2) F^{d2−1} dF/(T g2(F))`
    Combined,
}

#[derive(Clone, Debug)]
pub struct CohomBasis {
    pub forms: Vec<OneForm>,
    pub provenance: Vec<(usize, Family)>,
    /// Each form is `u(F) dF / T` for the matching `u`.
    pub u: Vec<UR>,
    pub f: RF,
    pub t: RF,
    pub g: UR,
    pub q: U,
    pub sd: P,
}

impl CohomBasis {
    pub fn dimension(&self) -> usize {
        self.forms.len()
    }

    fn empty(sd: P) -> Self {
        CohomBasis {
            forms: vec![],
            provenance: vec![],
            u: vec![],
            f: RF::zero(),
            t: RF::one(),
            g: UR::zero(),
            q: U::one(),
            sd,
        }
    }

    /// Coordinates of a closed `Hω` on the basis, modulo exact forms.
    pub fn coordinates(&self, eta: &OneForm, w: &OneForm, caps: &Caps) -> Result<Vec<Rat>> {
        if !is_closed_twisted(eta, w)? {
            return Err(HyperintError::NotClosedTwisted);
        }
        if self.forms.is_empty() {
            return Ok(vec![]);
        }
        let n = w.n();
        let (fm, t) = (&self.f, &self.t);
        let r = if n == 1 {
            RF::zero()
        } else {
            let derivs = tangential_derivations(fm, n)?;
            let b: Vec<RF> = derivs.iter().map(|d| t.mul(&d.contract(w))).collect();
            let dw = w.common_den();
            let de = eta.common_den();
            let support = irreducible_support(&[&dw, &de, fm.num(), fm.den(), t.num(), t.den()]);
            let y = solve_tangential_inhom(&derivs, n, &b, &support, caps)?
                .ok_or_else(|| HyperintError::DegreeBoundExceeded("tangential inhomogeneous system".into()))?;
            y.div(t)
        };
        let k = (0..n).rev().find(|&v| fm.uses_var(v)).unwrap();
        let phi = t.mul(&w.coeffs[k].sub(&r.derivative(k)).sub(&r.mul(&eta.coeffs[k]))).div(&fm.derivative(k));
        let f = express_in_f(&phi, fm, caps)?;
        // simple poles of f away from Q·g2 are allowed here and must cancel out
        let mut q = self.q.clone();
        for (p, _) in irreducible_factors(f.den()) {
            if q.exact_div(&p).is_none() && multiplicity(&p, self.g.den()) == 0 {
                q = q.mul(&p);
            }
        }
        let target = univariate_reduce(&f, &self.g, &q)?.coords;
        let cols: Vec<Vec<Rat>> =
            self.u.iter().map(|u| univariate_reduce(u, &self.g, &q).map(|r| r.coords)).collect::<Result<_>>()?;
        let m: Vec<Vec<Rat>> = (0..target.len()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        solve(&m, &target, cols.len())
            .ok_or_else(|| HyperintError::InternalInconsistency("form lies outside the span of the basis".into()))
    }
}

/// Integers `k_j` with `Σ k_j d_j = m`, or `None` when `gcd(d_j) ∤ m`.
fn integer_combination(ds: &[i64], m: i64) -> Option<Vec<i64>> {
    let mut g = 0i64;
    let mut coef: Vec<i64> = vec![0; ds.len()];
    for (j, &d) in ds.iter().enumerate() {
        if g == 0 {
            g = d;
            coef[j] = 1;
            continue;
        }
        let e = BigInt::from(g).extended_gcd(&BigInt::from(d));
        let (x, y) = (e.x.to_i64()?, e.y.to_i64()?);
        for c in coef.iter_mut().take(j) {
            *c *= x;
        }
        coef[j] = y;
        g = e.gcd.to_i64()?;
    }
    if g == 0 || m % g != 0 {
        return None;
    }
    Some(coef.into_iter().map(|c| c * (m / g)).collect())
}

fn ur_at(u: &UR, f: &RF) -> Result<RF> {
    Ok(compose(u, f)?)
}

pub fn cohomology_basis(eta: &OneForm, s: &P, caps: &Caps) -> Result<CohomBasis> {
    let n = eta.n();
    if !is_closed(eta) {
        return Err(HyperintError::EtaNotClosed);
    }
    let d = eta.common_den();
    if !irreducible_support(&[s]).is_empty() && gcd(s, &d).total_degree() > 0 {
        return Err(HyperintError::PreconditionViolated("S must be coprime with the denominator of dH/H".into()));
    }
    let sd = s.mul(&d);
    let Some(pb) = hyperexp_decompose(eta, caps)? else {
        return Ok(CohomBasis::empty(sd));
    };
    let (g, fm, _) = normalize_homography(&pb.g, &pb.f, &sd)?;
    let mut t = pb.t;

    let ks = kernel_shell(&g);
    let mut g = ks.kernel;
    t = t.mul(&ur_at(&ks.shell, &fm)?);

    // rational non-integer residues made positive
    for (p, m) in irreducible_factors(g.den()) {
        if m != 1 {
            continue;
        }
        if let Some(c) = constant_residue(&g, &p) {
            if c.is_negative() {
                let k = (-c.clone()).ceil().to_integer().to_i64().unwrap() + if is_integer(&c) { 1 } else { 0 };
                g = g.add(&log_derivative_u(&p).scale(&int(k)));
                t = t.div(&ur_at(&UR::from_poly(p.clone()), &fm)?.pow(k));
            }
        }
    }

    // cancel the residue at infinity
    let (d1, d2) = degrees(&g);
    if d1 == d2 - 1 {
        let m = g.num().lc().div(&g.den().lc());
        let elig: Vec<U> = irreducible_factors(g.den())
            .into_iter()
            .filter(|(p, k)| *k >= 2 || constant_residue(&g, p).is_none())
            .map(|(p, _)| p)
            .collect();
        let ds: Vec<i64> = elig.iter().map(|p| p.degree() as i64).collect();
        let ks = if is_integer(&m) { integer_combination(&ds, to_i64(&m).unwrap()) } else { None };
        let ks = ks.ok_or(HyperintError::NoShiftPoleAvailable)?;
        for (p, k) in elig.iter().zip(ks) {
            if k != 0 {
                g = g.sub(&log_derivative_u(p).scale(&int(k)));
                t = t.mul(&ur_at(&UR::from_poly(p.clone()), &fm)?.pow(k));
            }
        }
    }
    if g.order_at_infinity() < 2 {
        return Err(HyperintError::InternalInconsistency("residue at infinity survived normalization".into()));
    }

    let g2 = g.den().clone();
    let (d1, d2) = degrees(&g);
    let q = sigma_polys(&fm, &sd).into_iter().filter(|m| g2.gcd(m).deg() == 0).fold(U::one(), |a, m| a.mul(&m));
    let dq = q.degree() as isize;
    let mut us: Vec<(UR, (usize, Family))> = vec![];
    for i in 0..(dq - 1).max(0) {
        us.push((UR::new(U::monomial(Rat::one(), i as usize), q.clone()), (i as usize, Family::OverQ)));
    }
    for i in 0..=(d2 - 2) {
        if i != d1 {
            us.push((UR::new(U::monomial(Rat::one(), i as usize), g2.clone()), (i as usize, Family::OverG2)));
        }
    }
    if dq >= 1 {
        let a = UR::new(U::monomial(Rat::one(), (dq - 1) as usize), q.clone());
        let b = UR::new(U::monomial(g2.lc(), (d2 - 1) as usize), g2.clone());
        us.push((a.sub(&b), ((dq - 1) as usize, Family::Combined)));
    }
    let sd_factors = irreducible_support(&[&sd]);
    let df = OneForm::d(&fm, n);
    let mut forms = vec![];
    for (u, _) in &us {
        let w = df.scale(&ur_at(u, &fm)?.div(&t));
        if !is_closed_twisted(eta, &w)? || !divides_radical(&w.common_den(), &sd_factors) {
            return Err(HyperintError::InternalInconsistency("basis form failed certification".into()));
        }
        forms.push(w);
    }
    Ok(CohomBasis {
        forms,
        provenance: us.iter().map(|(_, p)| *p).collect(),
        u: us.into_iter().map(|(u, _)| u).collect(),
        f: fm,
        t,
        g,
        q,
        sd,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperint_algebra::parse::{parse_urfunc, Scope};

    fn u(s: &str) -> UR {
        parse_urfunc(s).unwrap()
    }

    fn up(s: &str) -> U {
        u(s).num().clone()
    }

    fn form(s: &str, n: usize) -> OneForm {
        OneForm::new(Scope::standard(n).parse_form(s).unwrap())
    }

    fn p(s: &str, n: usize) -> RF {
        Scope::standard(n).parse(s).unwrap()
    }

    #[test]
    fn kernel_shell_examples() {
        assert_eq!(kernel_shell(&u("1/z^2")), KernelShell { kernel: u("1/z^2"), shell: UR::one() });
        assert_eq!(kernel_shell(&u("1/z + 1/z^2")), KernelShell { kernel: u("1/z^2"), shell: u("z") });
        let ks = kernel_shell(&u("2/z + 1/(2*(z-1))"));
        assert_eq!(ks, KernelShell { kernel: u("1/(2*(z-1))"), shell: u("z^2") });
        let g = u("-3/(z^2-2) + 1/z^3 + 5*z/(z^2+1)");
        let ks = kernel_shell(&g);
        assert_eq!(ks.kernel.add(&ks.shell.derivative().div(&ks.shell)), g);
        assert_eq!(kernel_shell(&ks.kernel).shell, UR::one());
    }

    #[test]
    fn prop3_examples() {
        assert_eq!(prop3_basis(&u("-4/(2*z^2-2)"), &up("z")).unwrap(), vec![u("1/z"), u("z/(z^2-1)")]);
        assert_eq!(prop3_basis(&u("-1/z^2"), &U::one()).unwrap(), vec![u("1/z")]);
        assert_eq!(prop3_basis(&u("-(3*z^2-2)/z^3"), &U::one()).unwrap(), vec![u("1/z^3"), u("1/z^2")]);
        assert!(matches!(prop3_basis(&u("1"), &U::one()), Err(HyperintError::PreconditionViolated(_))));
        assert!(matches!(prop3_basis(&u("-1/z^2"), &up("z")), Err(HyperintError::PreconditionViolated(_))));
    }

    #[test]
    fn reduce_examples() {
        let g = u("-1/z^2");
        let r = univariate_reduce(&u("1/z"), &g, &U::one()).unwrap();
        assert_eq!(r, Reduction { coords: vec![int(1)], r: UR::zero() });
        let r = univariate_reduce(&u("1/z^3"), &g, &U::one()).unwrap();
        assert_eq!(r.coords, vec![int(0)]);
        assert_eq!(r.r, u("1 - 1/z"));
        let r = univariate_reduce(&UR::zero(), &g, &U::one()).unwrap();
        assert_eq!(r, Reduction { coords: vec![int(0)], r: UR::zero() });
        assert_eq!(univariate_reduce(&u("1/(z-1)"), &g, &U::one()), Err(HyperintError::PoleOutsideSupport));
    }

    #[test]
    fn homography_examples() {
        let sd = P::one();
        let (g, f, h) = normalize_homography(&UR::one(), &p("x1*x2", 2), &sd).unwrap();
        assert_eq!((g, f, h), (u("-1/z^2"), p("1/(x1*x2)", 2), u("1/z")));
        let (g, _, h) = normalize_homography(&u("-4/(2*z^2-2)"), &p("x1/x2", 2), &sd).unwrap();
        assert_eq!(h, UR::z());
        assert_eq!(g, u("-4/(2*z^2-2)"));
    }

    #[test]
    fn sigma_examples() {
        let x1 = p("x1", 1);
        let s = sigma_set(&x1, p("x1*(x1-1)", 1).num(), &P::one(), 24).unwrap();
        assert_eq!(s, vec![AlgNumber::rational(int(0)), AlgNumber::rational(int(1))]);
        // x1+2x2 carries no constant value of F
        let f = p("(x1^2+x2^2)/(x1+x2)", 2);
        let sd = p("(x1^2+x2^2+x1+x2)*(x1^2+x2^2-x1-x2)*(x1+2*x2)*(x1^2+x2^2)^3", 2);
        let m = sigma_polys(&f, sd.num());
        assert_eq!(m, vec![up("z-1"), up("z"), up("z+1")]);
    }

    #[test]
    fn exponential_of_product_has_no_cohomology() {
        let b = cohomology_basis(&form("form(x2, x1)", 2), &P::one(), &Caps::default()).unwrap();
        assert_eq!(b.dimension(), 0);
    }

    #[test]
    fn one_variable_essential_singularity() {
        let eta = form("form(-1/x1^2)", 1);
        let b = cohomology_basis(&eta, &P::one(), &Caps::default()).unwrap();
        assert_eq!(b.dimension(), 1);
        // the basis form is a nonzero multiple of dx1/x1 modulo exact forms
        let w = form("form(1/x1)", 1);
        let c = b.coordinates(&eta, &w, &Caps::default()).unwrap();
        assert!(!c[0].is_zero());
    }

    fn example4() -> (OneForm, P) {
        let eta = form(
            "form(2*(x1+x2)*(x1^2+2*x1*x2-x2^2)/(x1^2+x2^2)^3, -2*(x1+x2)*(x1^2-2*x1*x2-x2^2)/(x1^2+x2^2)^3)",
            2,
        );
        let s = p("(x1^2+x2^2+x1+x2)*(x1^2+x2^2-x1-x2)*(x1+2*x2)", 2).num().clone();
        (eta, s)
    }

    #[test]
    fn example4_basis() {
        let (eta, s) = example4();
        let caps = Caps::default();
        let b = cohomology_basis(&eta, &s, &caps).unwrap();
        assert_eq!(b.dimension(), 3);
        let bad = p("x1+2*x2", 2).num().clone();
        for w in &b.forms {
            assert!(is_closed_twisted(&eta, w).unwrap());
            assert!(w.common_den().exact_div(&bad).is_none());
        }
        // d(H r) / H + 2 w_0 - w_2
        let r = p("x1/(x1^2+x2^2+x1+x2)", 2);
        let exact = OneForm::d(&r, 2).add(&eta.scale(&r));
        let w = exact.add(&b.forms[0].scale_rat(&int(2))).sub(&b.forms[2]);
        assert_eq!(b.coordinates(&eta, &w, &caps).unwrap(), vec![int(2), int(0), int(-1)]);
    }
}
