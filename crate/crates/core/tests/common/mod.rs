//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use hyperint::OneForm;
use hyperint_algebra::numfield::splitting_field;
use hyperint_algebra::polyrat::to_alg_poly;
use hyperint_algebra::rat::{int, rat};
use hyperint_algebra::{AlgNumber, Field, MPoly, Mono, RFunc, Rat, UPoly, URFunc};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type RF = RFunc<Rat>;
pub type P = MPoly<Rat>;
pub type UR = URFunc<Rat>;

pub struct Gen {
    pub rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn coef(&mut self) -> Rat {
        loop {
            let c = self.rng.gen_range(-5i64..=5);
            if c != 0 {
                return int(c);
            }
        }
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn mono(&mut self, n: usize, deg: u32) -> Mono {
        let total = self.rng.gen_range(0..=deg);
        let mut e = vec![0u32; n];
        for _ in 0..total {
            e[self.rng.gen_range(0..n)] += 1;
        }
        Mono::new(e)
    }

    /// A polynomial with up to `terms` terms of total degree ≤ `deg`.
    pub fn poly(&mut self, n: usize, deg: u32, terms: usize) -> P {
        let mut p = P::zero();
        for _ in 0..terms {
            let m = self.mono(n, deg);
            p.add_term(m, self.coef());
        }
        p
    }

    pub fn nonconstant_poly(&mut self, n: usize, deg: u32, terms: usize) -> P {
        loop {
            let p = self.poly(n, deg.max(1), terms);
            if p.total_degree() > 0 {
                return p;
            }
        }
    }

    pub fn nonzero_poly(&mut self, n: usize, deg: u32, terms: usize) -> P {
        loop {
            let p = self.poly(n, deg, terms);
            if !p.is_zero() {
                return p;
            }
        }
    }

    pub fn rfunc(&mut self, n: usize, deg: u32) -> RF {
        RF::new(self.poly(n, deg, 3), self.nonzero_poly(n, deg, 2))
    }

    /// A rational function whose denominator is a product of the given factors.
    pub fn rfunc_over(&mut self, n: usize, deg: u32, factors: &[P]) -> RF {
        let mut den = P::one();
        for f in factors {
            for _ in 0..self.range(0, 2) {
                den = den.mul(f);
            }
        }
        RF::new(self.poly(n, deg, 3), den)
    }

    /// Monic univariate polynomial with small integer roots/coefficients and degree `d`.
    pub fn upoly(&mut self, d: usize) -> UPoly<Rat> {
        let mut c: Vec<Rat> = (0..d).map(|_| int(self.range(-4, 4))).collect();
        c.push(Rat::one());
        UPoly::new(c)
    }

    /// `dF0 + Σ c_i dP_i/P_i`, a closed form with rational residues.
    pub fn closed_eta(&mut self, n: usize) -> OneForm {
        let f0 = self.rfunc(n, 2);
        let mut eta = OneForm::d(&f0, n);
        for _ in 0..self.range(0, 2) {
            let p = RF::from_poly(self.nonconstant_poly(n, 2, 3));
            let c = rat(self.range(-4, 4), self.range(1, 3));
            eta = eta.add(&OneForm::d(&p, n).scale(&p.inv()).scale_rat(&c));
        }
        eta
    }

    /// The log-derivative of `exp(F0)·A^{1/q}·((G1+λG2)/(G1−λG2))^λ`, with λ one of 0, √2, √3.
    pub fn rep_form(&mut self, n: usize) -> OneForm {
        let f0 = self.rfunc(n, 2);
        let mut w = OneForm::d(&f0, n);
        if self.rng.gen_bool(0.7) {
            let a = RF::from_poly(self.nonconstant_poly(n, 2, 3));
            let q = self.range(1, 3);
            w = w.add(&OneForm::d(&a, n).scale(&a.inv()).scale_rat(&rat(1, q)));
        }
        let k = self.range(0, 2);
        if k > 0 {
            let (field, roots) = splitting_field(&UPoly::from_ints(&[-(k + 1), 0, 1]), 24).unwrap();
            let s = roots[0].clone();
            let emb = |p: &P| to_alg_poly(p).map(|c: &AlgNumber| c.in_field(&field));
            let (g1, g2) = (self.nonconstant_poly(n, 2, 3), self.nonzero_poly(n, 1, 2));
            let g = RFunc::from_poly(emb(&g1).add(&emb(&g2).scale(&s)));
            let gb = RFunc::from_poly(emb(&g1).sub(&emb(&g2).scale(&s)));
            if !g.is_constant() && !gb.is_constant() {
                let coeffs = (0..n)
                    .map(|i| g.derivative(i).div(&g).sub(&gb.derivative(i).div(&gb)).scale(&s).to_rat_func().unwrap())
                    .collect();
                w = w.add(&OneForm::new(coeffs));
            }
        }
        w
    }
}
