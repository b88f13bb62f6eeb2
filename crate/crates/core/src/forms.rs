//! Rational 1-forms, closedness tests and derivations tangential to level sets.

use std::fmt;

use hyperint_algebra::polyrat::mpoly::default_name;
use hyperint_algebra::{RFunc, Rat};

use crate::error::{HyperintError, Result};
use crate::rational_integration::HyperexpRep;

type RF = RFunc<Rat>;

/// `Σ coeffs[i] dx_{i+1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct OneForm {
    pub coeffs: Vec<RF>,
}

impl OneForm {
    pub fn new(coeffs: Vec<RF>) -> Self {
        OneForm { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        OneForm { coeffs: vec![RF::zero(); n] }
    }

    /// The differential of a function.
    pub fn d(f: &RF, n: usize) -> Self {
        OneForm { coeffs: (0..n).map(|i| f.derivative(i)).collect() }
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        OneForm { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        OneForm { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, f: &RF) -> Self {
        OneForm { coeffs: self.coeffs.iter().map(|a| a.mul(f)).collect() }
    }

    pub fn scale_rat(&self, c: &Rat) -> Self {
        OneForm { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    /// Pullback of `u(z) dz` along `z = F`, i.e. `u(F) dF`, given `u(F)`.
    pub fn along(uf: &RF, f: &RF, n: usize) -> Self {
        OneForm::d(f, n).scale(uf)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn common_den(&self) -> hyperint_algebra::MPoly<Rat> {
        let dens: Vec<_> = self.coeffs.iter().map(|c| c.den().clone()).collect();
        dens.iter().fold(hyperint_algebra::MPoly::one(), |a, b| hyperint_algebra::polyrat::lcm(&a, b))
    }

    pub fn text(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_text(&default_name)).collect();
        format!("form({})", parts.join(", "))
    }
}

impl fmt::Debug for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

/// `∂_i ω_j = ∂_j ω_i` for all `i < j`.
pub fn is_closed(w: &OneForm) -> bool {
    let n = w.n();
    for i in 0..n {
        for j in i + 1..n {
            if w.coeffs[j].derivative(i) != w.coeffs[i].derivative(j) {
                return false;
            }
        }
    }
    true
}

/// Closedness of `H·ω` where `η = dH/H`.
pub fn is_closed_twisted(eta: &OneForm, w: &OneForm) -> Result<bool> {
    if !is_closed(eta) {
        return Err(HyperintError::EtaNotClosed);
    }
    let n = w.n();
    for i in 0..n {
        for j in i + 1..n {
            let l = w.coeffs[j].derivative(i).add(&eta.coeffs[i].mul(&w.coeffs[j]));
            let r = w.coeffs[i].derivative(j).add(&eta.coeffs[j].mul(&w.coeffs[i]));
            if l != r {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `dF0 + dA/(qA) + Σ λ_i dF_i/F_i`, which has rational coefficients.
pub fn log_derivative(rep: &HyperexpRep) -> OneForm {
    let n = rep.nvars;
    let mut out = OneForm::d(&rep.f0, n);
    if !rep.a.is_constant() {
        let qa = rep.a.scale(&Rat::from_integer(rep.q.into()));
        out = out.add(&OneForm { coeffs: (0..n).map(|i| rep.a.derivative(i).div(&qa)).collect() });
    }
    if rep.log_terms.is_empty() {
        return out;
    }
    for i in 0..n {
        let mut acc = RFunc::zero();
        for (lam, f) in &rep.log_terms {
            acc = acc.add(&f.derivative(i).div(f).scale(lam));
        }
        let r = acc.to_rat_func().expect("log terms must sum to a rational form");
        out.coeffs[i] = out.coeffs[i].add(&r);
    }
    out
}

/// `w ↦ ∂_k F · ∂_i w − ∂_i F · ∂_k w`, which annihilates `F`.
#[derive(Clone, Debug)]
pub struct TangentialDerivation {
    pub i: usize,
    pub k: usize,
    pub di_f: RF,
    pub dk_f: RF,
}

impl TangentialDerivation {
    pub fn apply(&self, w: &RF) -> RF {
        self.dk_f.mul(&w.derivative(self.i)).sub(&self.di_f.mul(&w.derivative(self.k)))
    }

    /// Contraction with a 1-form: `∂_k F · ω_i − ∂_i F · ω_k`.
    pub fn contract(&self, w: &OneForm) -> RF {
        self.dk_f.mul(&w.coeffs[self.i]).sub(&self.di_f.mul(&w.coeffs[self.k]))
    }

    /// Coefficients of the derivation on `∂_1..∂_n`.
    pub fn coefficients(&self, n: usize) -> Vec<RF> {
        let mut c = vec![RF::zero(); n];
        c[self.i] = self.dk_f.clone();
        c[self.k] = self.di_f.neg();
        c
    }
}

/// `n − 1` derivations tangential to the level sets of `F`; the eliminated
/// variable is the largest-index variable that `F` depends on.
pub fn tangential_derivations(f: &RF, n: usize) -> Result<Vec<TangentialDerivation>> {
    let k = (0..n).rev().find(|&v| f.uses_var(v)).ok_or(HyperintError::ConstantF)?;
    let dk_f = f.derivative(k);
    Ok((0..n)
        .filter(|&i| i != k)
        .map(|i| TangentialDerivation { i, k, di_f: f.derivative(i), dk_f: dk_f.clone() })
        .collect())
}
