//! Integration of closed forms `Hω` as `∫^F f e^{∫g} + H·R`.

use hyperint_algebra::polyrat::compose;
use hyperint_algebra::{MPoly, RFunc, Rat, URFunc};

use crate::ansatz::{solve_ops, Op};
use crate::config::Caps;
use crate::connection::{irreducible_support, solve_exactness, solve_tangential_inhom};
use crate::decompose::{decompose_with_rep, to_urfunc, PullbackDecomp};
use crate::error::{HyperintError, Result};
use crate::forms::{is_closed, is_closed_twisted, tangential_derivations, OneForm};
use crate::rational_integration::rational_integrate;

type RF = RFunc<Rat>;

/// `Hω = d(HR)` when `exact`; otherwise `T(ω − dR − Rη) = f(F) dF` with
/// `H = T·exp ∫^F g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiouvilleDecomp {
    pub f_map: RF,
    pub r: RF,
    pub t: RF,
    pub f: URFunc<Rat>,
    pub g: URFunc<Rat>,
    pub exact: bool,
}

impl LiouvilleDecomp {
    fn exact(r: RF) -> Self {
        LiouvilleDecomp { f_map: RF::zero(), r, t: RF::one(), f: URFunc::zero(), g: URFunc::zero(), exact: true }
    }

    /// Checks the defining identity against `η = dH/H` and `ω`.
    pub fn certify(&self, eta: &OneForm, w: &OneForm) -> bool {
        let n = w.n();
        let rest = w.sub(&OneForm::d(&self.r, n)).sub(&eta.scale(&self.r));
        if self.exact {
            return rest.is_zero();
        }
        let pb = PullbackDecomp { f: self.f_map.clone(), t: self.t.clone(), g: self.g.clone() };
        if !pb.certify(eta) {
            return false;
        }
        let Ok(ff) = compose(&self.f, &self.f_map) else { return false };
        rest.scale(&self.t) == OneForm::along(&ff, &self.f_map, n)
    }
}

/// Rational `ρ` with `ρ' + ρ·g = f`, i.e. `f e^{∫g} dz = d(ρ e^{∫g})`.
pub fn univariate_exact(f: &URFunc<Rat>, g: &URFunc<Rat>, caps: &Caps) -> Option<URFunc<Rat>> {
    if f.is_zero() {
        return Some(URFunc::zero());
    }
    let fr = f.to_rfunc(0);
    let gr = g.to_rfunc(0);
    let support = irreducible_support(&[fr.den(), gr.den()]);
    let mut den = MPoly::one();
    for p in &support {
        let of = crate::connection::order_in(p, fr.den());
        let og = crate::connection::order_in(p, gr.den());
        let mut e = if og >= 2 { of.saturating_sub(og) } else { of.saturating_sub(1) };
        if og == 1 {
            if let Some(k) = integer_residue(&gr, p) {
                e = e.max(k);
            }
        }
        den = den.mul(&p.pow(e.min(caps.max_den_power)));
    }
    let gamma = g.num().deg() - g.den().deg();
    let df = f.num().deg() - f.den().deg();
    let mut m = (df + 1).max(df - gamma).max(0);
    if gamma == -1 && !g.is_zero() {
        let c = g.num().lc() / g.den().lc();
        if hyperint_algebra::rat::is_integer(&c) {
            m = m.max(-hyperint_algebra::rat::to_i64(&c).unwrap_or(0) as isize);
        }
    }
    let bound = (m + den.total_degree() as isize).max(0) as u32;
    let op = Op { alpha: vec![RF::one()], beta: gr, rhs: fr };
    let rho = solve_ops(&[op], 1, &den, bound.min(caps.max_num_degree), false, 0x110_0001)?;
    Some(to_urfunc(&rho, 0))
}

/// Positive integer residue of the univariate `g` along the simple pole `p`, if any.
fn integer_residue(g: &RF, p: &MPoly<Rat>) -> Option<u32> {
    let pu = p.to_upoly(0);
    let num = g.num().to_upoly(0);
    let rest = g.den().exact_div(p)?.to_upoly(0);
    let (_, s, _) = rest.mul(&pu.derivative()).xgcd(&pu);
    let r = num.mul(&s).rem(&pu);
    if r.deg() > 0 || !hyperint_algebra::rat::is_integer(&r.coeff(0)) {
        return None;
    }
    hyperint_algebra::rat::to_i64(&r.coeff(0)).filter(|&k| k > 0).map(|k| k as u32)
}

pub fn liouville_decompose(eta: &OneForm, w: &OneForm, caps: &Caps) -> Result<LiouvilleDecomp> {
    let n = w.n();
    if !is_closed(eta) {
        return Err(HyperintError::EtaNotClosed);
    }
    if !is_closed_twisted(eta, w)? {
        return Err(HyperintError::NotClosedTwisted);
    }
    match solve_exactness(eta, w, caps) {
        Ok(Some(r)) => return Ok(LiouvilleDecomp::exact(r)),
        Ok(None) | Err(HyperintError::DegreeBoundExceeded(_)) => {}
        Err(e) => return Err(e),
    }
    let rep = rational_integrate(eta, caps)?;
    let pb = decompose_with_rep(eta, &rep, caps)?.ok_or_else(|| {
        HyperintError::InternalInconsistency("no pullback decomposition although Hω is not exact within bounds".into())
    })?;
    let PullbackDecomp { f: fm, t, g } = pb;
    let y = if n == 1 {
        RF::zero()
    } else {
        let derivs = tangential_derivations(&fm, n)?;
        let b: Vec<RF> = derivs.iter().map(|d| t.mul(&d.contract(w))).collect();
        let dw = w.common_den();
        let de = eta.common_den();
        let support = irreducible_support(&[&dw, &de, fm.num(), fm.den(), t.num(), t.den()]);
        solve_tangential_inhom(&derivs, n, &b, &support, caps)?
            .ok_or_else(|| HyperintError::DegreeBoundExceeded("tangential inhomogeneous system".into()))?
    };
    let mut r = y.div(&t);
    let k = (0..n).rev().find(|&v| fm.uses_var(v)).unwrap();
    let phi = t
        .mul(&w.coeffs[k].sub(&r.derivative(k)).sub(&r.mul(&eta.coeffs[k])))
        .div(&fm.derivative(k));
    let mut f = crate::decompose::express_in_f(&phi, &fm, caps)?;
    if let Some(rho) = univariate_exact(&f, &g, caps) {
        r = r.add(&compose(&rho, &fm)?.div(&t));
        return Ok(LiouvilleDecomp::exact(r));
    }
    if f.is_zero() {
        f = URFunc::zero();
    }
    let out = LiouvilleDecomp { f_map: fm, r, t, f, g, exact: false };
    if !out.certify(eta, w) {
        return Err(HyperintError::InternalInconsistency("Liouvillian decomposition failed certification".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperint_algebra::parse::{parse_urfunc, Scope};

    fn p(s: &str) -> RF {
        Scope::standard(2).parse(s).unwrap()
    }

    fn form(s: &str) -> OneForm {
        OneForm::new(Scope::standard(2).parse_form(s).unwrap())
    }

    #[test]
    fn exact_branch() {
        let eta = form("form(x2, x1)");
        let r0 = p("x1*x2");
        let w = OneForm::d(&r0, 2).add(&eta.scale(&r0));
        let d = liouville_decompose(&eta, &w, &Caps::default()).unwrap();
        assert!(d.exact);
        assert_eq!(d.r, r0);
        assert!(d.certify(&eta, &w));
    }

    #[test]
    fn essential_singularity_is_not_exact() {
        let eta = form("form(1/(x1^2*x2), 1/(x1*x2^2))");
        let w = form("form(x2, x1)");
        let d = liouville_decompose(&eta, &w, &Caps::default()).unwrap();
        assert!(!d.exact);
        assert!(d.certify(&eta, &w));
    }

    #[test]
    fn univariate_exactness() {
        let g = parse_urfunc("-1/z^2").unwrap();
        // (1 - 1/z)' + (1 - 1/z)(-1/z^2) = 1/z^3
        let f = parse_urfunc("1/z^3").unwrap();
        let rho = univariate_exact(&f, &g, &Caps::default()).unwrap();
        assert_eq!(rho.derivative().add(&rho.mul(&g)), f);
        assert!(univariate_exact(&URFunc::one(), &g, &Caps::default()).is_none());
    }

    #[test]
    fn not_closed_twisted() {
        let eta = form("form(x2, x1)");
        let w = form("form(1, 0)");
        assert_eq!(liouville_decompose(&eta, &w, &Caps::default()), Err(HyperintError::NotClosedTwisted));
    }
}
