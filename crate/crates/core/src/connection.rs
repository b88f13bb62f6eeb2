//! Rational solutions of the linear systems behind exactness tests and the
//! tangential systems for `T` and `T·J`.

use std::collections::BTreeMap;

use hyperint_algebra::polyrat::factor_irreducible;
use hyperint_algebra::rat::is_integer;
use hyperint_algebra::{Field, MPoly, RFunc, Rat};
use num_traits::ToPrimitive;

use crate::ansatz::{solve_ops, Op};
use crate::config::Caps;
use crate::error::{HyperintError, Result};
use crate::forms::{OneForm, TangentialDerivation};
use crate::rational_integration::{rational_integrate, HyperexpRep};

type RF = RFunc<Rat>;
type P = MPoly<Rat>;

/// Multiplicity of the irreducible `p` in `q`.
pub fn order_in(p: &P, q: &P) -> u32 {
    let mut q = q.clone();
    let mut k = 0;
    while let Some(r) = q.exact_div(p) {
        q = r;
        k += 1;
    }
    k
}

/// Monic irreducible factors of all the given polynomials, without repetition.
pub fn irreducible_support(ps: &[&P]) -> Vec<P> {
    let mut out: Vec<P> = vec![];
    for p in ps {
        if p.is_constant() {
            continue;
        }
        for (f, _) in factor_irreducible(p).factors {
            if !out.contains(&f) {
                out.push(f);
            }
        }
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    out
}

/// Rational residues of `dH/H` along Q-irreducible hypersurfaces, read off `A^{1/q}`.
pub fn rational_residues(rep: &HyperexpRep) -> Vec<(P, Rat)> {
    let mut out = vec![];
    let q = Rat::from_int(rep.q as i64);
    for (part, sign) in [(rep.a.num(), 1i64), (rep.a.den(), -1)] {
        for (f, m) in factor_irreducible(part).factors {
            out.push((f, Rat::from_int(sign * m as i64).div(&q)));
        }
    }
    out
}

fn exactness_ops(eta: &OneForm, w: &OneForm) -> Vec<Op> {
    let n = w.n();
    (0..n)
        .map(|i| {
            let mut alpha = vec![RF::zero(); n];
            alpha[i] = RF::one();
            Op { alpha, beta: eta.coeffs[i].clone(), rhs: w.coeffs[i].clone() }
        })
        .collect()
}

fn den_order(p: &P, f: &RF) -> u32 {
    order_in(p, f.den())
}

/// `R` with `dR + R·η = ω`, so that `Hω = d(HR)`.
///
/// Pole orders of `R` are bounded from the local analysis at each factor, the
/// numerator degree by `deg num(ω) + deg Den + 2`. `Ok(None)` means no solution
/// exists within these bounds; `DegreeBoundExceeded` means the caps cut them.
pub fn solve_exactness(eta: &OneForm, w: &OneForm, caps: &Caps) -> Result<Option<RF>> {
    let n = w.n();
    if w.is_zero() {
        return Ok(Some(RF::zero()));
    }
    let rep = rational_integrate(eta, caps)?;
    let res = rational_residues(&rep);
    let dw = w.common_den();
    let de = eta.common_den();
    let support = irreducible_support(&[&dw, &de]);
    let mut den = P::one();
    let mut capped = false;
    for p in &support {
        let ow = w.coeffs.iter().map(|c| den_order(p, c)).max().unwrap_or(0);
        let oe = eta.coeffs.iter().map(|c| den_order(p, c)).max().unwrap_or(0);
        let mut e = if oe >= 2 { ow.saturating_sub(oe) } else { ow.saturating_sub(1) };
        if oe == 1 {
            if let Some((_, r)) = res.iter().find(|(f, _)| f == p) {
                if is_integer(r) && r.to_integer() > 0.into() {
                    e = e.max(r.to_integer().to_u32().unwrap_or(u32::MAX));
                }
            }
        }
        if e > caps.max_den_power {
            e = caps.max_den_power;
            capped = true;
        }
        den = den.mul(&p.pow(e));
    }
    let numdeg = w.coeffs.iter().map(|c| c.num().total_degree()).max().unwrap_or(0);
    let mut bound = numdeg + den.total_degree() + 2;
    if bound > caps.max_num_degree {
        bound = caps.max_num_degree;
        capped = true;
    }
    let ops = exactness_ops(eta, w);
    match solve_ops(&ops, n, &den, bound, false, 0x5eed_0001) {
        Some(r) => Ok(Some(r)),
        None if capped => Err(HyperintError::DegreeBoundExceeded("exactness ansatz".into())),
        None => Ok(None),
    }
}

/// Candidate denominator factors with their base exponents.
pub type DenCandidates = BTreeMap<usize, (P, u32)>;

fn tangential_ops(derivs: &[TangentialDerivation], n: usize, a: &[RF], b: &[RF]) -> Vec<Op> {
    derivs
        .iter()
        .zip(a.iter().zip(b))
        .map(|(d, (a, b))| Op { alpha: d.coefficients(n), beta: a.neg(), rhs: b.clone() })
        .collect()
}

fn scan_denominators(
    ops: &[Op],
    n: usize,
    factors: &[(P, u32)],
    rhs_deg: u32,
    nonzero: bool,
    caps: &Caps,
    seed: u64,
) -> Result<Option<RF>> {
    let mut capped = false;
    for extra in 0..=caps.max_den_power {
        let den = factors.iter().fold(P::one(), |acc, (p, e)| acc.mul(&p.pow((e + extra).min(caps.max_den_power))));
        let mut bound = rhs_deg + den.total_degree() + 2;
        if bound > caps.max_num_degree {
            bound = caps.max_num_degree;
            capped = true;
        }
        if let Some(y) = solve_ops(ops, n, &den, bound, nonzero, seed + extra as u64) {
            return Ok(Some(y));
        }
    }
    if capped {
        Err(HyperintError::DegreeBoundExceeded("tangential ansatz".into()))
    } else {
        Ok(None)
    }
}

/// A nonzero `T` with `D_i(T) = a_i·T` for every tangential derivation.
pub fn solve_tangential(
    derivs: &[TangentialDerivation],
    n: usize,
    a: &[RF],
    support: &[P],
    caps: &Caps,
) -> Result<Option<RF>> {
    if a.iter().all(|x| x.is_zero()) {
        return Ok(Some(RF::one()));
    }
    let zero = vec![RF::zero(); a.len()];
    let ops = tangential_ops(derivs, n, a, &zero);
    let factors: Vec<(P, u32)> = support.iter().map(|p| (p.clone(), 0)).collect();
    let deg = a.iter().map(|x| x.num().total_degree().max(x.den().total_degree())).max().unwrap_or(0);
    scan_denominators(&ops, n, &factors, deg, true, caps, 0x5eed_0002)
}

/// A particular `Y` with `D_i(Y) = b_i`; free parameters are set to zero.
pub fn solve_tangential_inhom(
    derivs: &[TangentialDerivation],
    n: usize,
    b: &[RF],
    support: &[P],
    caps: &Caps,
) -> Result<Option<RF>> {
    if b.iter().all(|x| x.is_zero()) {
        return Ok(Some(RF::zero()));
    }
    let zero = vec![RF::zero(); b.len()];
    let ops = tangential_ops(derivs, n, &zero, b);
    let factors: Vec<(P, u32)> = support
        .iter()
        .map(|p| (p.clone(), b.iter().map(|x| den_order(p, x)).max().unwrap_or(0)))
        .collect();
    let deg = b.iter().map(|x| x.num().total_degree()).max().unwrap_or(0);
    scan_denominators(&ops, n, &factors, deg, false, caps, 0x5eed_0003)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::tangential_derivations;
    use hyperint_algebra::parse::Scope;

    fn p(s: &str) -> RF {
        Scope::standard(2).parse(s).unwrap()
    }

    fn form(s: &str) -> OneForm {
        OneForm::new(Scope::standard(2).parse_form(s).unwrap())
    }

    fn check_exact(eta: &OneForm, w: &OneForm, r: &RF) {
        assert_eq!(&OneForm::d(r, 2).add(&eta.scale(r)), w);
    }

    #[test]
    fn exactness_of_eta_itself() {
        let eta = form("form(x2, x1)");
        let r = solve_exactness(&eta, &eta, &Caps::default()).unwrap().unwrap();
        assert_eq!(r, RF::one());
    }

    #[test]
    fn exactness_with_polynomial_r() {
        let eta = form("form(x2, x1)");
        let w = form("form((x1*x2+1)*x2, (x1*x2+1)*x1)");
        let r = solve_exactness(&eta, &w, &Caps::default()).unwrap().unwrap();
        check_exact(&eta, &w, &r);
        assert_eq!(r, p("x1*x2"));
    }

    #[test]
    fn exactness_through_integer_residue() {
        // H = x1^2 e^{x2}, R = 1/x1^2
        let eta = form("form(2/x1, 1)");
        let r0 = p("(x2+1)/x1^2");
        let w = OneForm::d(&r0, 2).add(&eta.scale(&r0));
        let r = solve_exactness(&eta, &w, &Caps::default()).unwrap().unwrap();
        check_exact(&eta, &w, &r);
    }

    #[test]
    fn non_exact_essential_singularity() {
        // H = e^{-1/(x1 x2)}, ω = d(x1 x2)
        let eta = form("form(1/(x1^2*x2), 1/(x1*x2^2))");
        let w = form("form(x2, x1)");
        assert_eq!(solve_exactness(&eta, &w, &Caps::default()).unwrap(), None);
    }

    #[test]
    fn tangential_homogeneous() {
        let f = p("x1*x2");
        let ds = tangential_derivations(&f, 2).unwrap();
        // H = x1 e^{x1 x2}: D(H)/H = x1·(1/x1 + x2) − x2·x1 = 1
        let a = vec![RF::one()];
        let t = solve_tangential(&ds, 2, &a, &[], &Caps::default()).unwrap().unwrap();
        assert_eq!(ds[0].apply(&t), t);
        assert_eq!(solve_tangential(&ds, 2, &[RF::zero()], &[], &Caps::default()).unwrap(), Some(RF::one()));
    }

    #[test]
    fn tangential_inhomogeneous() {
        let f = p("x1*x2");
        let ds = tangential_derivations(&f, 2).unwrap();
        let y0 = p("x1^2 + 1/x2");
        let b = vec![ds[0].apply(&y0)];
        let y = solve_tangential_inhom(&ds, 2, &b, &[p("x2").num().clone()], &Caps::default()).unwrap().unwrap();
        assert_eq!(ds[0].apply(&y), b[0]);
        // D(y) = x1 x2 has no rational solution
        let caps = Caps { max_den_power: 2, max_num_degree: 8, ..Caps::default() };
        let r = solve_tangential_inhom(&ds, 2, &[f.clone()], &[], &caps).unwrap();
        assert_eq!(r, None);
    }
}
