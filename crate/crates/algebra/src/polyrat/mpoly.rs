//! Sparse multivariate polynomials with graded lexicographic term order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::field::Field;
use crate::rat::Rat;
use crate::upoly::{push_term, UPoly};

/// Exponent vector without trailing zeros; variable `i` is `x_{i+1}`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn new(mut v: Vec<u32>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        Mono(v)
    }
    pub fn one() -> Self {
        Mono(vec![])
    }
    pub fn var(i: usize) -> Self {
        let mut v = vec![0; i + 1];
        v[i] = 1;
        Mono(v)
    }
    pub fn exp(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }
    pub fn mul(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Mono((0..n).map(|i| self.exp(i) + o.exp(i)).collect())
    }
    pub fn divides(&self, o: &Self) -> bool {
        self.0.len() <= o.0.len() && self.0.iter().enumerate().all(|(i, &e)| e <= o.exp(i))
    }
    /// `o / self`, assuming divisibility.
    pub fn div_of(&self, o: &Self) -> Self {
        Mono::new((0..o.0.len()).map(|i| o.exp(i) - self.exp(i)).collect())
    }
    pub fn with_exp(&self, i: usize, e: u32) -> Self {
        let mut v = self.0.clone();
        if v.len() <= i {
            v.resize(i + 1, 0);
        }
        v[i] = e;
        Mono::new(v)
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        match self.total().cmp(&o.total()) {
            Ordering::Equal => {}
            c => return c,
        }
        let n = self.0.len().max(o.0.len());
        for i in 0..n {
            match self.exp(i).cmp(&o.exp(i)) {
                Ordering::Equal => {}
                c => return c,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Polynomial in `x_1, x_2, ...`; terms sorted ascending, so the leading term is last.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly<K> {
    pub terms: BTreeMap<Mono, K>,
}

impl<K: Field> Default for MPoly<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Field> MPoly<K> {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }
    pub fn one() -> Self {
        Self::constant(K::one())
    }
    pub fn constant(c: K) -> Self {
        let mut t = BTreeMap::new();
        if !c.is_zero() {
            t.insert(Mono::one(), c);
        }
        MPoly { terms: t }
    }
    pub fn from_int(n: i64) -> Self {
        Self::constant(K::from_int(n))
    }
    pub fn from_rat(r: &Rat) -> Self {
        Self::constant(K::from_rat(r))
    }
    pub fn var(i: usize) -> Self {
        Self::term(Mono::var(i), K::one())
    }
    pub fn term(m: Mono, c: K) -> Self {
        let mut t = BTreeMap::new();
        if !c.is_zero() {
            t.insert(m, c);
        }
        MPoly { terms: t }
    }
    pub fn from_terms(it: impl IntoIterator<Item = (Mono, K)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }
    pub fn add_term(&mut self, m: Mono, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                let s = x.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Mono::one()).is_some_and(|c| c.is_one())
    }
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }
    pub fn constant_value(&self) -> Option<K> {
        if self.is_zero() {
            Some(K::zero())
        } else if self.is_constant() {
            Some(self.terms.values().next().unwrap().clone())
        } else {
            None
        }
    }
    pub fn nterms(&self) -> usize {
        self.terms.len()
    }
    /// One past the largest variable index that occurs.
    pub fn nvars(&self) -> usize {
        self.terms.keys().map(|m| m.0.len()).max().unwrap_or(0)
    }
    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }
    pub fn vars_used(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&v| self.uses_var(v)).collect()
    }
    pub fn lm(&self) -> Option<&Mono> {
        self.terms.keys().next_back()
    }
    pub fn lc(&self) -> K {
        self.terms.values().next_back().cloned().unwrap_or_else(K::zero)
    }
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total()).max().unwrap_or(0)
    }
    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }
    /// Lowest power of `v` that occurs.
    pub fn low_degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).min().unwrap_or(0)
    }
    pub fn add(&self, o: &Self) -> Self {
        let (big, small) = if self.terms.len() >= o.terms.len() { (self, o) } else { (o, self) };
        let mut r = big.clone();
        for (m, c) in &small.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }
    pub fn neg(&self) -> Self {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }
    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.neg());
        }
        r
    }
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if let Some(c) = o.constant_value() {
            return self.scale(&c);
        }
        if let Some(c) = self.constant_value() {
            return o.scale(&c);
        }
        let mut acc: BTreeMap<Mono, K> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma.mul(mb);
                let p = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(x) => *x = x.add(&p),
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MPoly { terms: acc }
    }
    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        MPoly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x.mul(c))).collect() }
    }
    pub fn mul_mono(&self, m: &Mono) -> Self {
        MPoly { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }
    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lc().inv())
    }
    pub fn derivative(&self, v: usize) -> Self {
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                r.add_term(m.with_exp(v, e - 1), c.mul(&K::from_int(e as i64)));
            }
        }
        r
    }
    /// Coefficients of `self` as a polynomial in `x_v`, indexed by power.
    pub fn coeffs_in(&self, v: usize) -> Vec<Self> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![Self::zero(); if self.is_zero() { 0 } else { d + 1 }];
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            out[e].terms.insert(m.with_exp(v, 0), c.clone());
        }
        out
    }
    pub fn from_coeffs_in(v: usize, cs: &[Self]) -> Self {
        let mut r = Self::zero();
        for (e, c) in cs.iter().enumerate() {
            for (m, x) in &c.terms {
                r.add_term(m.with_exp(v, m.exp(v) + e as u32), x.clone());
            }
        }
        r
    }
    /// Leading coefficient with respect to `x_v`.
    pub fn lc_in(&self, v: usize) -> Self {
        let d = self.degree_in(v);
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            if m.exp(v) == d {
                r.terms.insert(m.with_exp(v, 0), c.clone());
            }
        }
        r
    }
    /// Substitutes `x_v := value`.
    pub fn eval_var(&self, v: usize, value: &K) -> Self {
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            r.add_term(m.with_exp(v, 0), c.mul(&value.pow(e)));
        }
        r
    }
    /// Substitutes `x_v := q`.
    pub fn subst(&self, v: usize, q: &Self) -> Self {
        if !self.uses_var(v) {
            return self.clone();
        }
        let cs = self.coeffs_in(v);
        let mut acc = Self::zero();
        for c in cs.iter().rev() {
            acc = acc.mul(q).add(c);
        }
        acc
    }
    /// Simultaneous substitution `x_i := qs[i]` for every variable.
    pub fn compose_all(&self, qs: &[Self]) -> Self {
        let mut acc = Self::zero();
        let mut cache: Vec<Vec<Self>> = qs.iter().map(|q| vec![Self::one(), q.clone()]).collect();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pows = &mut cache[i];
                while pows.len() <= e as usize {
                    let nx = pows.last().unwrap().mul(&pows[1]);
                    pows.push(nx);
                }
                t = t.mul(&pows[e as usize]);
            }
            acc = acc.add(&t);
        }
        acc
    }
    /// Evaluates every variable; `point[i]` is the value of `x_{i+1}`.
    pub fn eval(&self, point: &[K]) -> K {
        let mut acc = K::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&point[i].pow(e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }
    /// Renames variables: `x_i` becomes `x_{perm[i]}`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        let n = perm.iter().copied().max().map_or(0, |m| m + 1);
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let mut v = vec![0; n.max(m.0.len())];
            for (i, &e) in m.0.iter().enumerate() {
                v[perm[i]] = e;
            }
            (Mono::new(v), c.clone())
        }))
    }
    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> MPoly<L> {
        MPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }
    pub fn to_rat_poly(&self) -> Option<MPoly<Rat>> {
        let mut t = BTreeMap::new();
        for (m, c) in &self.terms {
            t.insert(m.clone(), c.to_rat()?);
        }
        Some(MPoly { terms: t })
    }
    /// Exact division by the sparse division algorithm; None if `d` does not divide.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.inv()));
        }
        let dl = d.lm().unwrap().clone();
        let dinv = d.lc().inv();
        for v in 0..d.nvars() {
            if d.degree_in(v) > self.degree_in(v) {
                return None;
            }
        }
        let mut r = self.clone();
        let mut q = Self::zero();
        while let Some(m) = r.lm().cloned() {
            if !dl.divides(&m) {
                return None;
            }
            let c = r.lc().mul(&dinv);
            let qm = dl.div_of(&m);
            for (dm, dc) in &d.terms {
                r.add_term(dm.mul(&qm), c.mul(dc).neg());
            }
            q.terms.insert(qm, c);
        }
        Some(q)
    }
    pub fn divides(&self, o: &Self) -> bool {
        o.exact_div(self).is_some()
    }
    /// Pseudo-remainder of `self` by `b` with respect to `x_v`.
    pub fn prem(&self, b: &Self, v: usize) -> Self {
        let db = b.degree_in(v);
        let lb = b.lc_in(v);
        let mut r = self.clone();
        let da = r.degree_in(v);
        if da < db {
            return r;
        }
        let mut e = da - db + 1;
        while !r.is_zero() && r.degree_in(v) >= db {
            let dr = r.degree_in(v);
            let lr = r.lc_in(v);
            let s = lr.mul_mono(&Mono::var(v).pow_mono(dr - db));
            r = r.mul(&lb).sub(&s.mul(b));
            e -= 1;
        }
        r.mul(&lb.pow(e))
    }
    /// Converts to a univariate polynomial in `x_v` (must be the only variable).
    pub fn to_upoly(&self, v: usize) -> UPoly<K> {
        let cs = self.coeffs_in(v);
        UPoly::new(cs.iter().map(|c| c.constant_value().expect("not univariate")).collect())
    }
    pub fn from_upoly(p: &UPoly<K>, v: usize) -> Self {
        Self::from_terms(p.coeffs.iter().enumerate().map(|(i, c)| (Mono::var(v).pow_mono(i as u32), c.clone())))
    }
    /// Text form with the given variable names.
    pub fn to_text(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (m, c) in self.terms.iter().rev() {
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { names(i) } else { format!("{}^{}", names(i), e) })
                .collect();
            push_term(&mut s, c, &mono.join("*"));
        }
        s
    }
    pub fn text(&self) -> String {
        self.to_text(&default_name)
    }
    /// Total order used for canonical sorting.
    pub fn canonical_cmp(&self, o: &Self) -> Ordering {
        let mut a = self.terms.iter().rev();
        let mut b = o.terms.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ma, ca)), Some((mb, cb))) => {
                    match ma.cmp(mb) {
                        Ordering::Equal => {}
                        c => return c,
                    }
                    match ca.canonical_cmp(cb) {
                        Ordering::Equal => {}
                        c => return c,
                    }
                }
            }
        }
    }
}

impl Mono {
    pub fn pow_mono(&self, e: u32) -> Self {
        Mono::new(self.0.iter().map(|x| x * e).collect())
    }
}

pub fn default_name(i: usize) -> String {
    format!("x{}", i + 1)
}

impl<K: Field> fmt::Debug for MPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text())
    }
}

impl<K: Field> fmt::Display for MPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text())
    }
}

impl MPoly<Rat> {
    /// Scales to integer coefficients with gcd 1 and positive leading coefficient.
    /// Returns (content, primitive) with `self = content·primitive`.
    pub fn primitive_int(&self) -> (Rat, Self) {
        use num_traits::Signed;
        if self.is_zero() {
            return (Rat::from_int(0), Self::zero());
        }
        let l = crate::rat::den_lcm(self.terms.values());
        let lr = Rat::from_integer(l.clone());
        let scaled: Vec<_> = self.terms.values().map(|c| c * &lr).collect();
        let mut g = crate::rat::num_gcd(scaled.iter());
        if self.lc().is_negative() {
            g = -g;
        }
        let content = Rat::new(g, l);
        (content.clone(), self.scale(&content.recip()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    type P = MPoly<Rat>;

    fn x(i: usize) -> P {
        P::var(i)
    }

    #[test]
    fn grlex_leading_term() {
        let p = x(0).add(&x(1).pow(2)).add(&x(0).mul(&x(1)));
        // x1*x2 beats x2^2 under grlex (x1 first)
        assert_eq!(p.lm().unwrap(), &Mono(vec![1, 1]));
        assert_eq!(p.total_degree(), 2);
    }

    #[test]
    fn exact_division() {
        let a = x(0).pow(2).sub(&x(1).pow(2));
        let b = x(0).sub(&x(1));
        assert_eq!(a.exact_div(&b).unwrap(), x(0).add(&x(1)));
        assert!(a.exact_div(&x(0).add(&P::one())).is_none());
    }

    #[test]
    fn pseudo_remainder_vanishes_on_multiple() {
        let b = x(1).mul(&x(0)).add(&P::one());
        let a = b.mul(&x(0).add(&x(1)));
        assert!(a.prem(&b, 0).is_zero());
    }

    #[test]
    fn substitution() {
        let p = x(0).pow(2).add(&x(1));
        let q = p.subst(0, &x(1).add(&P::from_int(1)));
        assert_eq!(q, x(1).pow(2).add(&x(1).scale(&int(3))).add(&P::one()));
        assert_eq!(p.eval(&[int(2), int(3)]), int(7));
    }

    #[test]
    fn printing() {
        let p = x(0).pow(2).scale(&int(2)).sub(&x(1)).add(&P::from_rat(&crate::rat::rat(1, 2)));
        assert_eq!(p.text(), "2*x1^2 - x2 + 1/2");
    }
}
