//! Multivariate factorization over Q by evaluation, univariate factorization and Hensel lifting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::univariate::factor_q;

use crate::polyrat::gcd::{content_in, squarefree_factor};
use crate::polyrat::mpoly::{MPoly, Mono};
use crate::rat::{int, Rat};
use crate::upoly::UPoly;

type P = MPoly<Rat>;

/// Factors a polynomial over Q: (unit, monic irreducible factors with multiplicities).
pub fn factor_mpoly_q(p: &P) -> (Rat, Vec<(P, u32)>) {
    if p.is_zero() {
        return (int(0), vec![]);
    }
    let unit = p.lc();
    let mut out = vec![];
    for (f, k) in squarefree_factor(p) {
        for g in factor_sqfree(&f) {
            out.push((g.monic(), k));
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    (unit, out)
}

/// Irreducible factors of a squarefree polynomial.
pub fn factor_sqfree(f: &P) -> Vec<P> {
    let vars = f.vars_used();
    if vars.is_empty() {
        return vec![];
    }
    if vars.len() == 1 {
        let v = vars[0];
        let (_, fs) = factor_q(&f.to_upoly(v));
        return fs.iter().map(|(g, _)| P::from_upoly(g, v)).collect();
    }
    // prefer a variable whose leading coefficient is already constant
    let v = vars
        .iter()
        .copied()
        .find(|&v| f.lc_in(v).is_constant())
        .unwrap_or_else(|| *vars.iter().min_by_key(|&&v| f.degree_in(v)).unwrap());
    let c = content_in(f, v);
    let mut out = vec![];
    if !c.is_constant() {
        out.extend(factor_sqfree(&c));
    }
    let pp = f.exact_div(&c).unwrap();
    out.extend(factor_primitive(&pp, v, &vars));
    out
}

/// Factors a polynomial that is primitive and squarefree in `x_v`.
fn factor_primitive(f: &P, v: usize, vars: &[usize]) -> Vec<P> {
    if f.degree_in(v) <= 1 {
        return vec![f.clone()];
    }
    let others: Vec<usize> = vars.iter().copied().filter(|&u| u != v).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0xfac7);
    // shear x_u -> x_u + c_u x_v so that the leading coefficient in x_v is constant
    let mut shear: Vec<(usize, Rat)> = vec![];
    let mut g = f.clone();
    if !f.lc_in(v).is_constant() {
        let mut attempt = 0i64;
        loop {
            attempt += 1;
            let cs: Vec<(usize, Rat)> = others
                .iter()
                .map(|&u| (u, int(if attempt == 1 { 1 } else { rng.gen_range(-(attempt + 2)..=attempt + 2) })))
                .collect();
            let mut h = f.clone();
            for (u, c) in &cs {
                h = h.subst(*u, &P::var(*u).add(&P::var(v).scale(c)));
            }
            if h.lc_in(v).is_constant() {
                shear = cs;
                g = h;
                break;
            }
        }
    }
    let g = g.monic();
    let factors = factor_monic(&g, v, &others, &mut rng);
    factors
        .into_iter()
        .map(|h| {
            let mut h = h;
            for (u, c) in &shear {
                h = h.subst(*u, &P::var(*u).sub(&P::var(v).scale(c)));
            }
            h.monic()
        })
        .collect()
}

/// Homogeneous components of total degree `k` in the variables `ys`.
fn component(p: &P, ys: &[usize], k: u32) -> P {
    P::from_terms(
        p.terms
            .iter()
            .filter(|(m, _)| ys.iter().map(|&y| m.exp(y)).sum::<u32>() == k)
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

fn factor_monic(g: &P, v: usize, others: &[usize], rng: &mut ChaCha8Rng) -> Vec<P> {
    let n = g.degree_in(v);
    let mut radius = 3i64;
    let mut tries = 0;
    let (point, ufs) = loop {
        tries += 1;
        if tries % 8 == 0 {
            radius *= 2;
        }
        let pt: Vec<(usize, Rat)> = others.iter().map(|&u| (u, int(rng.gen_range(-radius..=radius)))).collect();
        let mut e = g.clone();
        for (u, a) in &pt {
            e = e.eval_var(*u, a);
        }
        let ue = e.to_upoly(v);
        if ue.degree() as u32 != n || !ue.is_squarefree() {
            continue;
        }
        let (_, fs) = factor_q(&ue);
        break (pt, fs);
    };
    if ufs.len() == 1 {
        return vec![g.clone()];
    }
    // move the evaluation point to the origin
    let mut h = g.clone();
    for (u, a) in &point {
        h = h.subst(*u, &P::var(*u).add(&P::constant(a.clone())));
    }
    let us: Vec<UPoly<Rat>> = ufs.iter().map(|(f, _)| f.clone()).collect();
    let lifted = hensel_lift(&h, v, others, &us);
    let dmax = others.iter().map(|&u| h.degree_in(u)).sum::<u32>().max(h.total_degree());
    let mut remaining = lifted;
    let mut cur = h.clone();
    let mut found_factors = vec![];
    let mut k = 1;
    while 2 * k <= remaining.len() {
        let mut hit = None;
        for sub in subsets(remaining.len(), k) {
            let mut cand = P::one();
            for &i in &sub {
                cand = truncate(&cand.mul(&remaining[i]), others, dmax);
            }
            if let Some(q) = cur.exact_div(&cand) {
                hit = Some((sub, cand, q));
                break;
            }
        }
        match hit {
            Some((sub, cand, q)) => {
                found_factors.push(cand);
                cur = q;
                remaining = remaining.into_iter().enumerate().filter(|(i, _)| !sub.contains(i)).map(|x| x.1).collect();
            }
            None => k += 1,
        }
    }
    if !cur.is_constant() {
        found_factors.push(cur);
    }
    found_factors
        .into_iter()
        .map(|f| {
            let mut f = f;
            for (u, a) in &point {
                f = f.subst(*u, &P::var(*u).sub(&P::constant(a.clone())));
            }
            f
        })
        .collect()
}

fn truncate(p: &P, ys: &[usize], d: u32) -> P {
    P::from_terms(
        p.terms
            .iter()
            .filter(|(m, _)| ys.iter().map(|&y| m.exp(y)).sum::<u32>() <= d)
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

/// Lifts `h(0, x_v) = ∏ us` to factors of `h` monic in `x_v`, up to full degree in the other variables.
fn hensel_lift(h: &P, v: usize, ys: &[usize], us: &[UPoly<Rat>]) -> Vec<P> {
    let r = us.len();
    // s_i = (∏_{j≠i} u_j)^{-1} mod u_i
    let total = us.iter().fold(UPoly::one(), |a, b| a.mul(b));
    let cof: Vec<UPoly<Rat>> = us.iter().map(|u| total.exact_div(u).unwrap()).collect();
    let s: Vec<UPoly<Rat>> = (0..r)
        .map(|i| {
            let (g, a, _) = cof[i].xgcd(&us[i]);
            assert!(g.is_one());
            a
        })
        .collect();
    let mut fs: Vec<P> = us.iter().map(|u| P::from_upoly(u, v)).collect();
    let dmax = h.total_degree();
    for k in 1..=dmax {
        let prod = fs.iter().fold(P::one(), |a, b| truncate(&a.mul(b), ys, k));
        let e = component(&h.sub(&prod), ys, k);
        if e.is_zero() {
            if truncate(h, ys, dmax) == truncate(&fs.iter().fold(P::one(), |a, b| a.mul(b)), ys, dmax) {
                break;
            }
            continue;
        }
        // group by y-monomial
        let mut groups: std::collections::BTreeMap<Mono, P> = std::collections::BTreeMap::new();
        for (m, c) in &e.terms {
            let ym = m.with_exp(v, 0);
            let xe = m.exp(v);
            groups.entry(ym).or_insert_with(P::zero).add_term(Mono::var(v).pow_mono(xe), c.clone());
        }
        for (ym, cpoly) in groups {
            let c = cpoly.to_upoly(v);
            for i in 0..r {
                let d = c.mul(&s[i]).rem(&us[i]);
                if !d.is_zero() {
                    fs[i] = fs[i].add(&P::from_upoly(&d, v).mul_mono(&ym));
                }
            }
        }
    }
    fs
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
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
    let mut out = vec![];
    rec(0, n, k, &mut vec![], &mut out);
    out
}
