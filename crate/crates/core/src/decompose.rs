//! Decomposition of rational functions `G = u∘F` and of hyperexponential
//! functions as `H = T·exp ∫^F g`.

use hyperint_algebra::linalg::{kernel, rref, solve};
use hyperint_algebra::polyrat::{compose, factor_irreducible};
use hyperint_algebra::rat::{is_integer, to_i64};
use hyperint_algebra::{AlgNumber, Field, MPoly, Mono, RFunc, Rat, UPoly, URFunc};

use crate::config::Caps;
use crate::connection::{irreducible_support, order_in, solve_tangential};
use crate::error::{HyperintError, Result};
use crate::forms::{is_closed, tangential_derivations, OneForm, TangentialDerivation};
use crate::rational_integration::{rational_integrate, HyperexpRep};
use crate::sample::Sampler;

type RF = RFunc<Rat>;
type P = MPoly<Rat>;

/// `dH/H = dT/T + g(F) dF`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackDecomp {
    pub f: RF,
    pub t: RF,
    pub g: URFunc<Rat>,
}

impl PullbackDecomp {
    /// `dT/T + g(F) dF`.
    pub fn log_derivative(&self, n: usize) -> Result<OneForm> {
        let gf = compose(&self.g, &self.f)?;
        let dt = OneForm::d(&self.t, n).scale(&self.t.inv());
        Ok(dt.add(&OneForm::along(&gf, &self.f, n)))
    }

    pub fn certify(&self, eta: &OneForm) -> bool {
        self.log_derivative(eta.n()).is_ok_and(|w| &w == eta)
    }
}

pub fn to_urfunc(r: &RF, v: usize) -> URFunc<Rat> {
    URFunc::new(r.num().to_upoly(v), r.den().to_upoly(v))
}

fn nvars_of(fs: &[&RF]) -> usize {
    fs.iter().map(|f| f.nvars()).max().unwrap_or(0).max(1)
}

/// Restriction of `r` to the line `a + t·b`, as a function of `x_1 = t`.
fn on_line(r: &RF, a: &[Rat], b: &[Rat]) -> Result<URFunc<Rat>> {
    let qs: Vec<RF> = a
        .iter()
        .zip(b)
        .map(|(ai, bi)| RF::constant(ai.clone()).add(&RF::var(0).scale(bi)))
        .collect();
    Ok(to_urfunc(&r.compose_all(&qs)?, 0))
}

/// `u` with `u(F) = φ`, or `NotAFunctionOfF`.
///
/// The degree of `u` is read off a generic line; its coefficients come from
/// rational interpolation through sample values `(F(x_j), φ(x_j))` and are then
/// checked by exact composition.
pub fn express_in_f(phi: &RF, f: &RF, caps: &Caps) -> Result<URFunc<Rat>> {
    if f.is_constant() {
        return Err(HyperintError::ConstantF);
    }
    if let Some(c) = phi.constant_value() {
        return Ok(URFunc::constant(c));
    }
    let n = nvars_of(&[phi, f]);
    let mut s = Sampler::new(0xdec0_0001);
    let mut dims = None;
    for _ in 0..8 {
        let a = s.point(n);
        let b = s.point(n);
        let (pl, fl) = (on_line(phi, &a, &b), on_line(f, &a, &b));
        let (Ok(pl), Ok(fl)) = (pl, fl) else { continue };
        if fl.degree() > 0 {
            dims = Some((pl.degree(), fl.degree()));
            break;
        }
    }
    let (dp, df) = dims.ok_or(HyperintError::NotAFunctionOfF)?;
    if dp % df != 0 {
        return Err(HyperintError::NotAFunctionOfF);
    }
    let r = dp / df;
    if r as u32 > caps.max_num_degree {
        return Err(HyperintError::DegreeBoundExceeded(format!("express_in_F needs degree {r}")));
    }
    let need = 2 * r + 2 + 4;
    let mut zs: Vec<Rat> = vec![];
    let mut rows = vec![];
    while rows.len() < need {
        let x = s.regular_point(n, &[phi, f]);
        let z = f.eval(&x).unwrap();
        if zs.contains(&z) {
            continue;
        }
        let w = phi.eval(&x).unwrap();
        let mut row = Vec::with_capacity(2 * r + 2);
        let mut zp = Rat::one();
        let mut pows = vec![];
        for _ in 0..=r {
            pows.push(zp.clone());
            zp = zp.mul(&z);
        }
        row.extend(pows.iter().cloned());
        row.extend(pows.iter().map(|p| p.mul(&w).neg()));
        rows.push(row);
        zs.push(z);
    }
    for v in kernel(&rows, 2 * r + 2) {
        let num = UPoly::new(v[..=r].to_vec());
        let den = UPoly::new(v[r + 1..].to_vec());
        if den.is_zero() {
            continue;
        }
        let u = URFunc::new(num, den);
        if compose(&u, f).is_ok_and(|c| &c == phi) {
            return Ok(u);
        }
    }
    Err(HyperintError::NotAFunctionOfF)
}

/// `(u, F)` with `G = u∘F` and `F` indecomposable.
///
/// The irreducible component through a random point of a level set of `G` is
/// `num(F) − c·den(F)`; two such components span `⟨num F, den F⟩`.
pub fn decompose_rational(g: &RF, caps: &Caps) -> Result<(URFunc<Rat>, RF)> {
    if g.is_constant() {
        return Err(HyperintError::ConstantF);
    }
    let used: Vec<usize> = (0..g.nvars()).filter(|&v| g.uses_var(v)).collect();
    if used.len() == 1 {
        let v = used[0];
        if g.degree_in(v) <= 1 {
            return Ok((URFunc::z(), g.clone()));
        }
        return Ok((to_urfunc(g, v), RF::var(v)));
    }
    let n = g.nvars();
    let mut s = Sampler::with_range(0xdec0_0002, 5);
    let full = g.num().total_degree().max(g.den().total_degree());
    for _attempt in 0..4 {
        let mut comps = vec![];
        while comps.len() < 2 {
            let x = s.regular_point(n, &[g]);
            let c = g.eval(&x).unwrap();
            let level = g.num().sub(&g.den().scale(&c));
            let fz = factor_irreducible(&level);
            let Some((p, _)) = fz.factors.into_iter().find(|(p, _)| p.eval(&x).is_zero())
            else {
                continue;
            };
            if p.total_degree() == full {
                return Ok((URFunc::z(), g.clone()));
            }
            if !comps.contains(&p) {
                comps.push(p);
            }
        }
        let Some(f) = pencil(&comps[0], &comps[1]) else { continue };
        if let Ok(u) = express_in_f(g, &f, caps) {
            return Ok((u, f));
        }
    }
    Ok((URFunc::z(), g.clone()))
}

/// `row1/row2` for the reduced echelon basis of the span of `a` and `b`.
fn pencil(a: &P, b: &P) -> Option<RF> {
    let mut monos: Vec<Mono> = a.terms.keys().chain(b.terms.keys()).cloned().collect();
    monos.sort();
    monos.dedup();
    monos.reverse();
    let row = |p: &P| monos.iter().map(|m| p.terms.get(m).cloned().unwrap_or_else(Rat::zero)).collect::<Vec<_>>();
    let mut m = vec![row(a), row(b)];
    if rref(&mut m, monos.len()).len() < 2 {
        return None;
    }
    let poly = |r: &Vec<Rat>| P::from_terms(monos.iter().cloned().zip(r.iter().cloned()));
    Some(RF::new(poly(&m[0]), poly(&m[1])))
}

/// Galois power sums `Σ_σ σ(F)^m`, the first nonconstant one over `m` and the log terms.
fn power_sum_candidate(rep: &HyperexpRep) -> Result<Option<RF>> {
    let field = &rep.field;
    let imgs: Vec<AlgNumber> = field.automorphisms().iter().map(|c| AlgNumber::from_coords(c.clone(), field)).collect();
    for m in 1..=field.degree() as i64 {
        for (_, fk) in &rep.log_terms {
            let pw = fk.pow(m);
            let mut acc: RFunc<AlgNumber> = RFunc::zero();
            for img in &imgs {
                acc = acc.add(&pw.map(|c| c.apply_map(img).in_field(field)));
            }
            let r = acc
                .to_rat_func()
                .ok_or_else(|| HyperintError::InternalInconsistency("Galois power sum is not rational".into()))?;
            if !r.is_constant() {
                return Ok(Some(r));
            }
        }
    }
    Ok(None)
}

/// `T = ∏ p_k^{e_k}` with integer exponents solving `Σ e_k D_i(p_k)/p_k = a_i`.
fn solve_t_exponents(derivs: &[TangentialDerivation], a: &[RF], cands: &[P], n: usize) -> Option<RF> {
    if a.iter().all(|x| x.is_zero()) {
        return Some(RF::one());
    }
    if cands.is_empty() {
        return None;
    }
    let logs: Vec<Vec<RF>> = derivs
        .iter()
        .map(|d| cands.iter().map(|p| d.apply(&RF::from_poly(p.clone())).div(&RF::from_poly(p.clone()))).collect())
        .collect();
    let mut s = Sampler::new(0xdec0_0003);
    let mut rows = vec![];
    let mut rhs = vec![];
    let mut fs: Vec<&RF> = logs.iter().flatten().collect();
    fs.extend(a.iter());
    while rows.len() < cands.len() + 6 {
        let x = s.regular_point(n, &fs);
        for (li, ai) in logs.iter().zip(a) {
            rows.push(li.iter().map(|l| l.eval(&x).unwrap()).collect::<Vec<_>>());
            rhs.push(ai.eval(&x).unwrap());
        }
    }
    let e = solve(&rows, &rhs, cands.len())?;
    if !e.iter().all(is_integer) {
        return None;
    }
    let mut t = RF::one();
    for (p, ek) in cands.iter().zip(&e) {
        let k = to_i64(ek)?;
        if k != 0 {
            t = t.mul(&RF::from_poly(p.clone()).pow(k));
        }
    }
    derivs.iter().zip(a).all(|(d, ai)| d.apply(&t) == ai.mul(&t)).then_some(t)
}

/// `T / F^m` when that clears every factor of `num F` from `T`.
fn strip_f_power(t: RF, f: &RF) -> RF {
    let mut m: Option<i64> = None;
    for p in irreducible_support(&[f.num()]) {
        let a = order_in(&p, f.num()) as i64;
        let e = order_in(&p, t.num()) as i64 - order_in(&p, t.den()) as i64;
        if e % a != 0 || m.is_some_and(|m| m != e / a) {
            return t;
        }
        m = Some(e / a);
    }
    match m {
        Some(m) if m != 0 => t.div(&f.pow(m)),
        _ => t,
    }
}

/// `H = T·exp ∫^F g`, or `None` when no such decomposition exists.
pub fn hyperexp_decompose(eta: &OneForm, caps: &Caps) -> Result<Option<PullbackDecomp>> {
    if !is_closed(eta) {
        return Err(HyperintError::NotClosed);
    }
    let rep = rational_integrate(eta, caps)?;
    decompose_with_rep(eta, &rep, caps)
}

pub fn decompose_with_rep(eta: &OneForm, rep: &HyperexpRep, caps: &Caps) -> Result<Option<PullbackDecomp>> {
    if rep.is_algebraic() {
        return Err(HyperintError::AlgebraicH);
    }
    let n = eta.n();
    let g0 = if !rep.f0.is_constant() {
        rep.f0.clone()
    } else {
        match power_sum_candidate(rep)? {
            Some(r) => r,
            None => return Ok(None),
        }
    };
    let (_, f) = decompose_rational(&g0, caps)?;
    let derivs = tangential_derivations(&f, n)?;
    let a: Vec<RF> = derivs.iter().map(|d| d.contract(eta)).collect();
    let dh = eta.common_den();
    let cands = irreducible_support(&[&dh, f.num(), f.den()]);
    let den_cands = irreducible_support(&[&dh]);
    let t = match solve_t_exponents(&derivs, &a, &den_cands, n).or_else(|| solve_t_exponents(&derivs, &a, &cands, n)) {
        Some(t) => t,
        None => match solve_tangential(&derivs, n, &a, &cands, caps)? {
            Some(t) => t,
            None => return Ok(None),
        },
    };
    let t = strip_f_power(t, &f);
    let k = (0..n).rev().find(|&v| f.uses_var(v)).unwrap();
    let dkf = f.derivative(k);
    let phi = eta.coeffs[k].sub(&t.derivative(k).div(&t)).div(&dkf);
    let g = match express_in_f(&phi, &f, caps) {
        Ok(g) => g,
        Err(HyperintError::NotAFunctionOfF) => return Ok(None),
        Err(e) => return Err(e),
    };
    let d = PullbackDecomp { f, t, g };
    if !d.certify(eta) {
        return Err(HyperintError::InternalInconsistency("pullback decomposition failed certification".into()));
    }
    Ok(Some(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperint_algebra::parse::{parse_urfunc, Scope};

    fn p(s: &str) -> RF {
        Scope::standard(3).parse(s).unwrap()
    }

    fn u(s: &str) -> URFunc<Rat> {
        parse_urfunc(s).unwrap()
    }

    fn form(s: &str, n: usize) -> OneForm {
        OneForm::new(Scope::standard(n).parse_form(s).unwrap())
    }

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn express_examples() {
        let f = p("x1*x2");
        assert_eq!(express_in_f(&f, &f, &caps()).unwrap(), URFunc::z());
        assert_eq!(express_in_f(&p("(x1*x2)^2+1"), &f, &caps()).unwrap(), u("z^2+1"));
        assert_eq!(express_in_f(&p("x1"), &f, &caps()), Err(HyperintError::NotAFunctionOfF));
        let g = express_in_f(&p("1/(x1*x2+1) + x1*x2"), &f, &caps()).unwrap();
        assert_eq!(compose(&g, &f).unwrap(), p("1/(x1*x2+1) + x1*x2"));
    }

    fn check_decomp(g: &RF) -> (URFunc<Rat>, RF) {
        let (u, f) = decompose_rational(g, &caps()).unwrap();
        assert_eq!(&compose(&u, &f).unwrap(), g);
        let (u2, _) = decompose_rational(&f, &caps()).unwrap();
        assert_eq!(u2.degree(), 1);
        (u, f)
    }

    #[test]
    fn decomposition_examples() {
        let (w, f) = check_decomp(&p("x1+x2"));
        assert_eq!((w, f), (URFunc::z(), p("x1+x2")));
        let (w, f) = check_decomp(&p("(x1*x2)^2 + x1*x2"));
        assert_eq!(w.degree(), 2);
        assert_eq!(f.degree(), 2);
        let (w, _) = check_decomp(&p("((x1+x2)^2-1)/((x1+x2)^2+1)"));
        assert_eq!(w.degree(), 2);
        let (v, f) = check_decomp(&p("1/x1"));
        assert_eq!((v, f), (u("z"), p("1/x1")));
        let (w, _) = check_decomp(&p("(x1^2+x2^2)^3/(x1+x2)^3 - 2*(x1+x2)/(x1^2+x2^2)"));
        assert_eq!(w.degree(), 4);
    }

    #[test]
    fn exponential_of_product() {
        let eta = form("form(x2, x1)", 2);
        let d = hyperexp_decompose(&eta, &caps()).unwrap().unwrap();
        assert!(d.certify(&eta));
        assert!(d.t.is_constant());
    }

    #[test]
    fn algebraic_h_is_rejected() {
        let eta = form("form(1/x1, 1/(2*x2))", 2);
        assert_eq!(hyperexp_decompose(&eta, &caps()), Err(HyperintError::AlgebraicH));
    }

    #[test]
    fn prefactor_outside_the_pencil() {
        // H = x1 e^{x1 x2}
        let eta = form("form(1/x1 + x2, x1)", 2);
        let d = hyperexp_decompose(&eta, &caps()).unwrap().unwrap();
        assert!(d.certify(&eta));
    }
}
