//! Undetermined-coefficient solver for first-order linear operators on a
//! rational unknown `y = N/Den`, with equations obtained by evaluation.

use hyperint_algebra::linalg::{kernel, rank, solve};
use hyperint_algebra::modp::Fp;
use hyperint_algebra::{Field, MPoly, Mono, RFunc, Rat};

use crate::sample::Sampler;

type RF = RFunc<Rat>;

/// `Σ_l alpha[l] ∂_l y + beta·y = rhs`.
#[derive(Clone, Debug)]
pub struct Op {
    pub alpha: Vec<RF>,
    pub beta: RF,
    pub rhs: RF,
}

impl Op {
    pub fn apply(&self, y: &RF) -> RF {
        let mut acc = self.beta.mul(y);
        for (l, a) in self.alpha.iter().enumerate() {
            if !a.is_zero() {
                acc = acc.add(&a.mul(&y.derivative(l)));
            }
        }
        acc
    }

    pub fn holds(&self, y: &RF) -> bool {
        self.apply(y) == self.rhs
    }
}

/// Monomials of total degree `≤ d` in `n` variables, by increasing degree.
pub fn monomials(n: usize, d: u32) -> Vec<Mono> {
    let mut out = vec![Mono::one()];
    let mut layer = vec![Mono::one()];
    for _ in 0..d {
        let mut next = vec![];
        for m in &layer {
            // extend only at or after the last used variable to avoid duplicates
            let start = m.0.len().saturating_sub(1);
            for v in start..n {
                next.push(m.mul(&Mono::var(v)));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

struct Sampled {
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
}

fn sample_rows(ops: &[Op], n: usize, den: &MPoly<Rat>, monos: &[Mono], npts: usize, sampler: &mut Sampler) -> Sampled {
    let mut fs: Vec<&RF> = vec![];
    for op in ops {
        fs.extend(op.alpha.iter());
        fs.push(&op.beta);
        fs.push(&op.rhs);
    }
    let maxe = monos.iter().map(|m| m.total()).max().unwrap_or(0) as usize;
    let dden: Vec<MPoly<Rat>> = (0..n).map(|l| den.derivative(l)).collect();
    let mut rows = vec![];
    let mut rhs = vec![];
    while rows.len() < npts * ops.len() {
        let x = sampler.regular_point(n, &fs);
        let dv = den.eval(&x);
        if dv.is_zero() {
            continue;
        }
        let dinv = dv.inv();
        let ddv: Vec<Rat> = dden.iter().map(|p| p.eval(&x)).collect();
        let mut pw = vec![vec![Rat::one(); maxe + 1]; n];
        for v in 0..n {
            for k in 1..=maxe {
                pw[v][k] = pw[v][k - 1].mul(&x[v]);
            }
        }
        let mval = |m: &Mono| (0..n).fold(Rat::one(), |a, v| a.mul(&pw[v][m.exp(v) as usize]));
        let mvals: Vec<Rat> = monos.iter().map(mval).collect();
        // ∂_l (m/Den) = (∂_l m − m ∂_l Den/Den)/Den
        let dm = |m: &Mono, mv: &Rat, l: usize| -> Rat {
            let e = m.exp(l);
            let dml = if e == 0 {
                Rat::zero()
            } else {
                let mut d = Rat::from_int(e as i64);
                for v in 0..n {
                    let ev = m.exp(v) - if v == l { 1 } else { 0 };
                    d = d.mul(&pw[v][ev as usize]);
                }
                d
            };
            dml.sub(&mv.mul(&ddv[l]).mul(&dinv)).mul(&dinv)
        };
        for op in ops {
            let al: Vec<Rat> = op.alpha.iter().map(|a| a.eval(&x).unwrap()).collect();
            let be = op.beta.eval(&x).unwrap();
            let row: Vec<Rat> = monos
                .iter()
                .zip(&mvals)
                .map(|(m, mv)| {
                    let mut s = be.mul(mv).mul(&dinv);
                    for (l, a) in al.iter().enumerate() {
                        if !a.is_zero() {
                            s = s.add(&a.mul(&dm(m, mv, l)));
                        }
                    }
                    s
                })
                .collect();
            rows.push(row);
            rhs.push(op.rhs.eval(&x).unwrap());
        }
    }
    Sampled { rows, rhs }
}

fn to_fp(v: &[Rat]) -> Option<Vec<Fp>> {
    v.iter().map(Fp::try_from_rat).collect()
}

/// Solution of all `ops` of the form `N/den` with `deg N ≤ d` for the smallest
/// such `d ≤ max_deg`. With `nonzero`, the system must be homogeneous and a
/// nonzero solution is required.
pub fn solve_ops(ops: &[Op], n: usize, den: &MPoly<Rat>, max_deg: u32, nonzero: bool, seed: u64) -> Option<RF> {
    let mut sampler = Sampler::new(seed);
    let all = monomials(n, max_deg);
    let extra = 6;
    let npts = (all.len() + extra).div_ceil(ops.len().max(1)) + 1;
    let s = sample_rows(ops, n, den, &all, npts, &mut sampler);
    let modp: Option<(Vec<Vec<Fp>>, Vec<Fp>)> = (|| {
        let r: Option<Vec<Vec<Fp>>> = s.rows.iter().map(|r| to_fp(r)).collect();
        Some((r?, to_fp(&s.rhs)?))
    })();
    for d in 0..=max_deg {
        let k = all.iter().take_while(|m| m.total() <= d).count();
        let nrows = ((k + extra).div_ceil(ops.len().max(1)) + 1) * ops.len();
        let nrows = nrows.min(s.rows.len());
        if let Some((fr, fb)) = &modp {
            let sub: Vec<Vec<Fp>> = fr[..nrows].iter().map(|r| r[..k].to_vec()).collect();
            let ok = if nonzero {
                rank(&sub, k) < k
            } else {
                solve(&sub, &fb[..nrows], k).is_some()
            };
            if !ok {
                continue;
            }
        }
        let sub: Vec<Vec<Rat>> = s.rows[..nrows].iter().map(|r| r[..k].to_vec()).collect();
        let coeffs = if nonzero {
            kernel(&sub, k).into_iter().next()
        } else {
            solve(&sub, &s.rhs[..nrows], k)
        };
        let Some(c) = coeffs else { continue };
        let num = MPoly::from_terms(all[..k].iter().cloned().zip(c));
        if nonzero && num.is_zero() {
            continue;
        }
        let y = RFunc::new(num, den.clone());
        if ops.iter().all(|op| op.holds(&y)) {
            return Some(y);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperint_algebra::parse::Scope;

    fn p(s: &str) -> RF {
        Scope::standard(2).parse(s).unwrap()
    }

    #[test]
    fn monomial_count() {
        assert_eq!(monomials(2, 3).len(), 10);
        assert_eq!(monomials(3, 2).len(), 10);
        assert_eq!(monomials(1, 4).len(), 5);
    }

    #[test]
    fn recovers_a_primitive() {
        // ∂1 y = 2 x1 x2 / (x1+x2) − x1^2 x2/(x1+x2)^2, ∂2 y = x1^2/(x1+x2) − x1^2 x2/(x1+x2)^2
        let y = p("x1^2*x2/(x1+x2)");
        let ops: Vec<Op> = (0..2)
            .map(|l| {
                let mut alpha = vec![RF::zero(); 2];
                alpha[l] = RF::one();
                Op { alpha, beta: RF::zero(), rhs: y.derivative(l) }
            })
            .collect();
        let den = p("x1+x2").num().clone();
        let sol = solve_ops(&ops, 2, &den, 6, false, 1).unwrap();
        assert!(sol.sub(&y).is_constant());
    }

    #[test]
    fn homogeneous_eigenfunction() {
        // (x1 ∂1 − x2 ∂2) y = y has the solution x1
        let op = Op { alpha: vec![p("x1"), p("-x2")], beta: RF::from_int(-1), rhs: RF::zero() };
        let sol = solve_ops(&[op.clone()], 2, &MPoly::one(), 4, true, 2).unwrap();
        assert!(op.holds(&sol));
        assert!(!sol.is_zero());
    }

    #[test]
    fn no_solution_within_bound() {
        // ∂1 y = 1/x1 has no rational solution
        let op = Op { alpha: vec![RF::one(), RF::zero()], beta: RF::zero(), rhs: p("1/x1") };
        assert!(solve_ops(&[op], 2, p("x1").num(), 5, false, 3).is_none());
    }
}
