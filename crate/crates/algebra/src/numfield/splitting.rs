//! Splitting fields by iterated primitive-element adjunction.

use std::sync::Arc;

use crate::error::AlgebraError;
use crate::field::Field;
use crate::numfield::{embed, AlgNumber, NumberField};
use crate::polyrat::factor::algebraic::{factor_mpoly_alg, lift_generator};
use crate::polyrat::gcd::resultant;
use crate::polyrat::mpoly::MPoly;
use crate::polyrat::factor_upoly_q;
use crate::rat::{int, Rat};
use crate::upoly::UPoly;

/// A Galois field together with the tracked roots it splits.
#[derive(Clone, Debug)]
pub struct SplittingField {
    pub field: Arc<NumberField>,
    /// Distinct roots of all adjoined polynomials.
    pub roots: Vec<AlgNumber>,
    /// Index of the Q-irreducible factor each root belongs to.
    classes: Vec<usize>,
    irreducibles: Vec<UPoly<Rat>>,
    /// The generator as an integer combination of tracked roots.
    combo: Vec<(usize, i64)>,
    cap: usize,
}

impl SplittingField {
    /// The field Q with no tracked roots.
    pub fn rationals(cap: usize) -> Self {
        SplittingField {
            field: NumberField::rationals(),
            roots: vec![],
            classes: vec![],
            irreducibles: vec![],
            combo: vec![],
            cap,
        }
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    /// Roots of `p` (squarefree part), all lying in the current field, sorted canonically.
    pub fn roots_of(&self, p: &UPoly<Rat>) -> Vec<AlgNumber> {
        let mut out: Vec<AlgNumber> = self.roots.iter().filter(|r| p.map(|c| AlgNumber::rational(c.clone())).eval(r).is_zero()).cloned().collect();
        out.sort_by(|a, b| a.canonical_cmp(b));
        out
    }

    /// Extends the field so that `p` splits. Returns the image of the previous
    /// generator when the field changed, for re-embedding older elements.
    pub fn adjoin(&mut self, p: &UPoly<Rat>) -> Result<Option<AlgNumber>, AlgebraError> {
        if p.deg() < 1 {
            return Ok(None);
        }
        let fac = factor_upoly_q(p);
        let mut img: Option<AlgNumber> = None;
        for (f, _) in fac.factors {
            if self.irreducibles.contains(&f) {
                continue;
            }
            self.irreducibles.push(f.clone());
            let class = self.irreducibles.len() - 1;
            loop {
                let fa = MPoly::from_upoly(&f.map(|c| AlgNumber::rational(c.clone()).in_field(&self.field)), 0);
                let (_, parts) = factor_mpoly_alg(&fa, &self.field);
                let mut nonlinear = None;
                let mut lin_roots = vec![];
                for (g, _) in &parts {
                    if g.degree_in(0) == 1 {
                        let gu = g.to_upoly(0);
                        lin_roots.push(gu.coeff(0).neg().div(&gu.coeff(1)).in_field(&self.field));
                    } else if nonlinear.is_none() {
                        nonlinear = Some(g.to_upoly(0));
                    }
                }
                match nonlinear {
                    None => {
                        for r in lin_roots {
                            if !self.roots.contains(&r) {
                                self.roots.push(r);
                                self.classes.push(class);
                            }
                        }
                        break;
                    }
                    Some(h) => {
                        let step = self.extend_by(&h, class)?;
                        img = Some(match img {
                            None => step,
                            Some(prev) => embed(&prev, &step),
                        });
                    }
                }
            }
        }
        if img.is_some() {
            self.compute_automorphisms();
        }
        Ok(img)
    }

    /// Adjoins one root of the irreducible `h ∈ L[y]`; returns the image of the old generator.
    fn extend_by(&mut self, h: &UPoly<AlgNumber>, class: usize) -> Result<AlgNumber, AlgebraError> {
        let n = self.field.degree();
        let e = h.degree();
        if n * e > self.cap {
            return Err(AlgebraError::DegreeCapExceeded(n * e, self.cap));
        }
        let m_t = MPoly::<Rat>::from_upoly(self.field.minpoly(), 1);
        let h_yt = lift_generator(&MPoly::from_upoly(h, 0), 1);
        let mut k = 1i64;
        let (newmin, k) = loop {
            // y := z - k t
            let sub = MPoly::var(0).sub(&MPoly::var(1).scale(&int(k)));
            let hs = h_yt.subst(0, &sub);
            let nz = if n == 1 { hs.eval_var(1, &int(0)) } else { resultant(&m_t, &hs, 1) };
            let nu = nz.to_upoly(0).monic();
            if nu.is_squarefree() {
                break (nu, k);
            }
            k = if k > 0 { -k } else { -k + 1 };
        };
        let newfield = Arc::new(NumberField::new_unchecked(newmin, vec![]));
        let gamma = newfield.gen();
        // old generator α: the common root of m(t) and h(γ - k t)
        let alpha = if n == 1 {
            AlgNumber::zero().in_field(&newfield)
        } else {
            let lift = |p: &UPoly<Rat>| p.map(|c| AlgNumber::rational(c.clone()).in_field(&newfield));
            let m_k = lift(self.field.minpoly());
            let lin = UPoly::new(vec![gamma.clone(), AlgNumber::from_int(-k).in_field(&newfield)]);
            let mut hk = UPoly::<AlgNumber>::zero();
            for (mono, c) in &h_yt.terms {
                let a = mono.exp(0);
                let b = mono.exp(1);
                let term = lin.pow(a).mul(&UPoly::monomial(AlgNumber::rational(c.clone()).in_field(&newfield), b as usize));
                hk = hk.add(&term);
            }
            let g = m_k.gcd(&hk);
            assert_eq!(g.degree(), 1, "primitive element recovery failed");
            g.coeff(0).neg()
        };
        let beta = gamma.sub(&alpha.mul(&AlgNumber::from_int(k)));
        self.roots = self.roots.iter().map(|r| embed(r, &alpha)).collect();
        self.roots.push(beta);
        self.classes.push(class);
        let mut combo: Vec<(usize, i64)> = self.combo.iter().map(|&(i, c)| (i, c * k)).collect();
        combo.push((self.roots.len() - 1, 1));
        self.combo = combo;
        self.field = newfield;
        Ok(alpha)
    }

    fn compute_automorphisms(&mut self) {
        let d = self.field.degree();
        let field = self.field.clone();
        let minp = field.minpoly().map(|c| AlgNumber::rational(c.clone()).in_field(&field));
        let mut found: Vec<AlgNumber> = vec![];
        let idx: Vec<usize> = self.combo.iter().map(|x| x.0).collect();
        let mut assign: Vec<usize> = vec![];
        self.search(&idx, &mut assign, &minp, &mut found, d);
        found.sort_by(|a, b| a.canonical_cmp(b));
        let autos: Vec<Vec<Rat>> = found.iter().map(|a| a.full_coords()).collect();
        let nf = Arc::new(NumberField::new_unchecked(field.minpoly().clone(), autos));
        self.roots = self.roots.iter().map(|r| r.in_field(&nf)).collect();
        self.field = nf;
    }

    fn search(&self, idx: &[usize], assign: &mut Vec<usize>, minp: &UPoly<AlgNumber>, found: &mut Vec<AlgNumber>, d: usize) {
        if found.len() >= d {
            return;
        }
        if assign.len() == idx.len() {
            let mut cand = AlgNumber::zero().in_field(&self.field);
            for (j, &(_, c)) in self.combo.iter().enumerate() {
                cand = cand.add(&self.roots[assign[j]].mul(&AlgNumber::from_int(c)));
            }
            if minp.eval(&cand).is_zero() && !found.contains(&cand) {
                found.push(cand);
            }
            return;
        }
        let i = idx[assign.len()];
        for r in 0..self.roots.len() {
            if self.classes[r] == self.classes[i] && !assign.contains(&r) {
                assign.push(r);
                self.search(idx, assign, minp, found, d);
                assign.pop();
            }
        }
    }
}

/// The splitting field of `p` with all its roots, under a degree cap.
pub fn splitting_field(p: &UPoly<Rat>, cap: usize) -> Result<(Arc<NumberField>, Vec<AlgNumber>), AlgebraError> {
    let mut sf = SplittingField::rationals(cap);
    sf.adjoin(p)?;
    let roots = sf.roots_of(p);
    Ok((sf.field, roots))
}

/// Factorization of a univariate polynomial over `field`.
pub fn factor_over_field(p: &UPoly<AlgNumber>, field: &Arc<NumberField>) -> Vec<(UPoly<AlgNumber>, u32)> {
    let (_, fs) = factor_mpoly_alg(&MPoly::from_upoly(p, 0), field);
    fs.into_iter().map(|(f, k)| (f.to_upoly(0), k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_split(p: &UPoly<Rat>, deg: usize, nroots: usize) {
        let (l, roots) = splitting_field(p, 24).unwrap();
        assert_eq!(l.degree(), deg);
        assert_eq!(roots.len(), nroots);
        let pa = p.map(|c| AlgNumber::rational(c.clone()));
        for r in &roots {
            assert!(pa.eval(r).is_zero());
        }
        assert!(l.is_galois());
        for s in l.automorphisms() {
            let im = l.element(s.clone());
            assert!(l.minpoly().map(|c| AlgNumber::rational(c.clone())).eval(&im).is_zero());
        }
    }

    #[test]
    fn quadratic() {
        check_split(&UPoly::from_ints(&[-2, 0, 1]), 2, 2);
    }

    #[test]
    fn rational_roots() {
        check_split(&UPoly::from_ints(&[-1, 0, 1]), 1, 2);
    }

    #[test]
    fn biquadratic() {
        check_split(&UPoly::from_ints(&[1, 0, -10, 0, 1]), 4, 4);
        check_split(&UPoly::from_ints(&[-2, 0, 1]).mul(&UPoly::from_ints(&[-3, 0, 1])), 4, 4);
    }

    #[test]
    fn cubic_needs_degree_six() {
        check_split(&UPoly::from_ints(&[-2, 0, 0, 1]), 6, 3);
    }

    #[test]
    fn cap_is_enforced() {
        let r = splitting_field(&UPoly::from_ints(&[-2, 0, 0, 1]), 4);
        assert!(matches!(r, Err(AlgebraError::DegreeCapExceeded(6, 4))));
    }

    #[test]
    fn conjugates_of_one_plus_sqrt2() {
        let (l, roots) = splitting_field(&UPoly::from_ints(&[-2, 0, 1]), 24).unwrap();
        let a = roots[1].add(&AlgNumber::one());
        let mut cs = a.galois_conjugates().unwrap();
        cs.sort_by(|x, y| x.canonical_cmp(y));
        let s = roots[1].clone();
        let mut want = vec![AlgNumber::one().add(&s), AlgNumber::one().sub(&s)];
        want.sort_by(|x, y| x.canonical_cmp(y));
        assert_eq!(cs, want);
        let _ = l;
    }
}
