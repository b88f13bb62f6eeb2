//! Normalized multivariate and univariate rational functions.

use std::cmp::Ordering;
use std::fmt;

use crate::error::AlgebraError;
use crate::field::Field;
use crate::polyrat::gcd::gcd;
use crate::polyrat::mpoly::{default_name, MPoly, Mono};
use crate::rat::Rat;
use crate::upoly::UPoly;

/// `num/den` with gcd 1 and `den` monic in grlex order.
#[derive(Clone, PartialEq, Eq)]
pub struct RFunc<K> {
    num: MPoly<K>,
    den: MPoly<K>,
}

impl<K: Field> RFunc<K> {
    pub fn new(num: MPoly<K>, den: MPoly<K>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = gcd(&num, &den);
        let (n, d) = if g.is_one() { (num, den) } else { (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap()) };
        Self::from_coprime(n, d)
    }

    /// Skips the gcd; only rescales the denominator to be monic.
    pub fn from_coprime(num: MPoly<K>, den: MPoly<K>) -> Self {
        let l = den.lc();
        if l.is_one() {
            return RFunc { num, den };
        }
        let li = l.inv();
        RFunc { num: num.scale(&li), den: den.scale(&li) }
    }

    pub fn from_poly(p: MPoly<K>) -> Self {
        RFunc { num: p, den: MPoly::one() }
    }
    pub fn zero() -> Self {
        RFunc { num: MPoly::zero(), den: MPoly::one() }
    }
    pub fn one() -> Self {
        RFunc { num: MPoly::one(), den: MPoly::one() }
    }
    pub fn constant(c: K) -> Self {
        Self::from_poly(MPoly::constant(c))
    }
    pub fn from_int(n: i64) -> Self {
        Self::constant(K::from_int(n))
    }
    pub fn var(i: usize) -> Self {
        Self::from_poly(MPoly::var(i))
    }
    pub fn num(&self) -> &MPoly<K> {
        &self.num
    }
    pub fn den(&self) -> &MPoly<K> {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }
    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }
    pub fn constant_value(&self) -> Option<K> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }
    pub fn nvars(&self) -> usize {
        self.num.nvars().max(self.den.nvars())
    }
    pub fn uses_var(&self, v: usize) -> bool {
        self.num.uses_var(v) || self.den.uses_var(v)
    }
    /// max(deg num, deg den) in total degree.
    pub fn degree(&self) -> u32 {
        self.num.total_degree().max(self.den.total_degree())
    }
    pub fn degree_in(&self, v: usize) -> u32 {
        self.num.degree_in(v).max(self.den.degree_in(v))
    }
    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone());
        }
        if self.den.is_one() {
            return Self::from_coprime(self.num.mul(&o.den).add(&o.num), o.den.clone());
        }
        if o.den.is_one() {
            return Self::from_coprime(o.num.mul(&self.den).add(&self.num), self.den.clone());
        }
        let g = gcd(&self.den, &o.den);
        if g.is_one() {
            let n = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            return Self::from_coprime(n, self.den.mul(&o.den));
        }
        let a = self.den.exact_div(&g).unwrap();
        let b = o.den.exact_div(&g).unwrap();
        let n = self.num.mul(&b).add(&o.num.mul(&a));
        Self::new(n, a.mul(&o.den))
    }
    pub fn neg(&self) -> Self {
        RFunc { num: self.num.neg(), den: self.den.clone() }
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.constant_value() {
            return o.scale(&c);
        }
        if let Some(c) = o.constant_value() {
            return self.scale(&c);
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let (n1, d2) = if g1.is_one() { (self.num.clone(), o.den.clone()) } else { (self.num.exact_div(&g1).unwrap(), o.den.exact_div(&g1).unwrap()) };
        let (n2, d1) = if g2.is_one() { (o.num.clone(), self.den.clone()) } else { (o.num.exact_div(&g2).unwrap(), self.den.exact_div(&g2).unwrap()) };
        Self::from_coprime(n1.mul(&n2), d1.mul(&d2))
    }
    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RFunc { num: self.num.scale(c), den: self.den.clone() }
    }
    pub fn mul_poly(&self, p: &MPoly<K>) -> Self {
        self.mul(&Self::from_poly(p.clone()))
    }
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational function");
        Self::from_coprime(self.den.clone(), self.num.clone())
    }
    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }
    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().pow(-e);
        }
        RFunc { num: self.num.pow(e as u32), den: self.den.pow(e as u32) }
    }
    pub fn derivative(&self, v: usize) -> Self {
        if !self.uses_var(v) {
            return Self::zero();
        }
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative(v));
        }
        let n = self.num.derivative(v).mul(&self.den).sub(&self.num.mul(&self.den.derivative(v)));
        Self::new(n, self.den.mul(&self.den))
    }
    /// Substitutes `x_v := q`.
    pub fn subst(&self, v: usize, q: &Self) -> Self {
        if !self.uses_var(v) {
            return self.clone();
        }
        let n = subst_poly(&self.num, v, q);
        let d = subst_poly(&self.den, v, q);
        n.div(&d)
    }
    /// Substitutes `x_i := qs[i]` for all variables.
    pub fn compose_all(&self, qs: &[Self]) -> Result<Self, AlgebraError> {
        let n = compose_poly(&self.num, qs);
        let d = compose_poly(&self.den, qs);
        if d.is_zero() {
            return Err(AlgebraError::ComposePoleCollision);
        }
        Ok(n.div(&d))
    }
    /// Evaluates at a point; None at a pole.
    pub fn eval(&self, point: &[K]) -> Option<K> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point).div(&d))
    }
    pub fn eval_var(&self, v: usize, a: &K) -> Option<Self> {
        let d = self.den.eval_var(v, a);
        if d.is_zero() {
            return None;
        }
        Some(Self::new(self.num.eval_var(v, a), d))
    }
    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> RFunc<L> {
        RFunc::new(self.num.map(&f), self.den.map(&f))
    }
    pub fn to_rat_func(&self) -> Option<RFunc<Rat>> {
        Some(RFunc { num: self.num.to_rat_poly()?, den: self.den.to_rat_poly()? })
    }
    pub fn to_text(&self, names: &dyn Fn(usize) -> String) -> String {
        let n = self.num.to_text(names);
        if self.den.is_one() {
            return n;
        }
        let nt = if self.num.nterms() > 1 || n.starts_with('-') { format!("({n})") } else { n };
        let d = self.den.to_text(names);
        let dt = if self.den.nterms() > 1 || !self.den.lc().is_one() || self.den.lm().is_some_and(|m| m.0.iter().filter(|&&e| e > 0).count() > 1 || m.total() > 1) {
            format!("({d})")
        } else {
            d
        };
        format!("{nt}/{dt}")
    }
    pub fn text(&self) -> String {
        self.to_text(&default_name)
    }
}

fn subst_poly<K: Field>(p: &MPoly<K>, v: usize, q: &RFunc<K>) -> RFunc<K> {
    let cs = p.coeffs_in(v);
    if q.den.is_one() {
        return RFunc::from_poly(p.subst(v, &q.num));
    }
    // homogenized Horner: p(n/d) = Σ c_i n^i d^(k-i) / d^k
    let k = cs.len().saturating_sub(1);
    let mut acc = MPoly::zero();
    let mut npow = MPoly::one();
    let dpows: Vec<MPoly<K>> = {
        let mut v = vec![MPoly::one()];
        for _ in 0..k {
            let nx = v.last().unwrap().mul(&q.den);
            v.push(nx);
        }
        v
    };
    for (i, c) in cs.iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&c.mul(&npow).mul(&dpows[k - i]));
        }
        if i < k {
            npow = npow.mul(&q.num);
        }
    }
    RFunc::new(acc, dpows[k].clone())
}

fn compose_poly<K: Field>(p: &MPoly<K>, qs: &[RFunc<K>]) -> RFunc<K> {
    if qs.iter().all(|q| q.den.is_one()) {
        let ps: Vec<MPoly<K>> = qs.iter().map(|q| q.num.clone()).collect();
        return RFunc::from_poly(p.compose_all(&ps));
    }
    let mut acc = RFunc::zero();
    for (m, c) in &p.terms {
        let mut t = RFunc::constant(c.clone());
        for (i, &e) in m.0.iter().enumerate() {
            if e > 0 {
                t = t.mul(&qs[i].pow(e as i64));
            }
        }
        acc = acc.add(&t);
    }
    acc
}

impl<K: Field> fmt::Debug for RFunc<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text())
    }
}

impl<K: Field> fmt::Display for RFunc<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text())
    }
}

impl<K: Field> Field for RFunc<K> {
    fn zero() -> Self {
        RFunc::zero()
    }
    fn one() -> Self {
        RFunc::one()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        RFunc::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        RFunc::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RFunc::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RFunc::mul(self, o)
    }
    fn neg(&self) -> Self {
        RFunc::neg(self)
    }
    fn inv(&self) -> Self {
        RFunc::inv(self)
    }
    fn from_rat(r: &Rat) -> Self {
        RFunc::constant(K::from_rat(r))
    }
    fn to_rat(&self) -> Option<Rat> {
        self.constant_value()?.to_rat()
    }
    fn canonical_cmp(&self, o: &Self) -> Ordering {
        self.num.canonical_cmp(&o.num).then_with(|| self.den.canonical_cmp(&o.den))
    }
    fn to_text(&self) -> String {
        self.text()
    }
    fn is_atom(&self) -> bool {
        self.num.nterms() <= 1 && self.den.is_one() && self.constant_value().is_none_or(|c| c.is_atom())
    }
}

/// Univariate rational function in `z`, with the same normalization.
#[derive(Clone, PartialEq, Eq)]
pub struct URFunc<K> {
    num: UPoly<K>,
    den: UPoly<K>,
}

impl<K: Field> URFunc<K> {
    pub fn new(num: UPoly<K>, den: UPoly<K>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (n, d) = if g.is_one() { (num, den) } else { (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap()) };
        let l = d.lc().inv();
        URFunc { num: n.scale(&l), den: d.scale(&l) }
    }
    pub fn from_poly(p: UPoly<K>) -> Self {
        URFunc { num: p, den: UPoly::one() }
    }
    pub fn zero() -> Self {
        URFunc { num: UPoly::zero(), den: UPoly::one() }
    }
    pub fn one() -> Self {
        Self::constant(K::one())
    }
    pub fn constant(c: K) -> Self {
        Self::from_poly(UPoly::constant(c))
    }
    pub fn z() -> Self {
        Self::from_poly(UPoly::x())
    }
    pub fn num(&self) -> &UPoly<K> {
        &self.num
    }
    pub fn den(&self) -> &UPoly<K> {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }
    pub fn constant_value(&self) -> Option<K> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }
    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone());
        }
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
    pub fn neg(&self) -> Self {
        URFunc { num: self.num.neg(), den: self.den.clone() }
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    pub fn scale(&self, c: &K) -> Self {
        Self::new(self.num.scale(c), self.den.clone())
    }
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::new(self.den.clone(), self.num.clone())
    }
    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }
    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().pow(-e);
        }
        URFunc { num: self.num.pow(e as u32), den: self.den.pow(e as u32) }
    }
    pub fn derivative(&self) -> Self {
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        Self::new(n, self.den.mul(&self.den))
    }
    pub fn eval(&self, x: &K) -> Option<K> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x).div(&d))
        }
    }
    /// self(h) for a univariate h.
    pub fn compose_u(&self, h: &Self) -> Result<Self, AlgebraError> {
        let n = homog_eval_u(&self.num, h);
        let d = homog_eval_u(&self.den, h);
        // both carry the same denominator power of h.den up to a shift
        let (pn, pd) = (self.num.degree(), self.den.degree());
        let (n, d) = match pn.cmp(&pd) {
            Ordering::Less => (n.mul(&h.den.pow((pd - pn) as u32)), d),
            Ordering::Greater => (n, d.mul(&h.den.pow((pn - pd) as u32))),
            Ordering::Equal => (n, d),
        };
        if d.is_zero() {
            return Err(AlgebraError::ComposePoleCollision);
        }
        Ok(Self::new(n, d))
    }
    /// Degree as a map: max(deg num, deg den).
    pub fn degree(&self) -> usize {
        self.num.degree().max(self.den.degree())
    }
    /// `deg num - deg den`.
    pub fn order_at_infinity(&self) -> isize {
        self.den.deg() - self.num.deg()
    }
    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> URFunc<L> {
        URFunc::new(self.num.map(&f), self.den.map(&f))
    }
    /// Embeds as a rational function in `x_v`.
    pub fn to_rfunc(&self, v: usize) -> RFunc<K> {
        RFunc::from_coprime(MPoly::from_upoly(&self.num, v), MPoly::from_upoly(&self.den, v))
    }
    pub fn to_text(&self, var: &str) -> String {
        let n = self.num.to_text(var);
        if self.den.is_one() {
            return n;
        }
        let nt = if self.num.coeffs.iter().filter(|c| !c.is_zero()).count() > 1 || n.starts_with('-') {
            format!("({n})")
        } else {
            n
        };
        let d = self.den.to_text(var);
        let dt = if self.den.coeffs.iter().filter(|c| !c.is_zero()).count() > 1 || self.den.degree() > 1 {
            format!("({d})")
        } else {
            d
        };
        format!("{nt}/{dt}")
    }
}

/// p(h) · den(h)^deg p, a polynomial.
fn homog_eval_u<K: Field>(p: &UPoly<K>, h: &URFunc<K>) -> UPoly<K> {
    let k = p.degree();
    let mut acc = UPoly::zero();
    let mut npow = UPoly::one();
    let mut dp = vec![UPoly::one()];
    for _ in 0..k {
        let nx = dp.last().unwrap().mul(&h.den);
        dp.push(nx);
    }
    for i in 0..=k {
        let c = p.coeff(i);
        if !c.is_zero() {
            acc = acc.add(&npow.mul(&dp[k - i]).scale(&c));
        }
        if i < k {
            npow = npow.mul(&h.num);
        }
    }
    acc
}

impl<K: Field> fmt::Debug for URFunc<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text("z"))
    }
}

impl<K: Field> fmt::Display for URFunc<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text("z"))
    }
}

/// `u(F)` for a univariate `u` and multivariate `F`.
pub fn compose<K: Field>(u: &URFunc<K>, f: &RFunc<K>) -> Result<RFunc<K>, AlgebraError> {
    let hom = |p: &UPoly<K>| -> MPoly<K> {
        let k = p.degree();
        let mut acc = MPoly::zero();
        let mut npow = MPoly::one();
        let mut dp = vec![MPoly::one()];
        for _ in 0..k {
            let nx = dp.last().unwrap().mul(f.den());
            dp.push(nx);
        }
        for i in 0..=k {
            let c = p.coeff(i);
            if !c.is_zero() {
                acc = acc.add(&npow.mul(&dp[k - i]).scale(&c));
            }
            if i < k {
                npow = npow.mul(f.num());
            }
        }
        acc
    };
    let (pn, pd) = (u.num.degree(), u.den.degree());
    let mut n = hom(&u.num);
    let mut d = hom(&u.den);
    match pn.cmp(&pd) {
        Ordering::Less => n = n.mul(&f.den().pow((pd - pn) as u32)),
        Ordering::Greater => d = d.mul(&f.den().pow((pn - pd) as u32)),
        Ordering::Equal => {}
    }
    if d.is_zero() {
        return Err(AlgebraError::ComposePoleCollision);
    }
    Ok(RFunc::new(n, d))
}

/// The monomial `x^m` as a rational function.
pub fn mono_rf<K: Field>(m: &Mono) -> RFunc<K> {
    RFunc::from_poly(MPoly::term(m.clone(), K::one()))
}
