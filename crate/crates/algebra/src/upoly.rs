//! Dense univariate polynomials over a field.

use std::fmt;

use crate::field::Field;
use crate::rat::Rat;

/// Coefficients from degree 0 upward, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly<K> {
    pub coeffs: Vec<K>,
}

impl<K: Field> UPoly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }
    pub fn zero() -> Self {
        UPoly { coeffs: vec![] }
    }
    pub fn one() -> Self {
        UPoly { coeffs: vec![K::one()] }
    }
    pub fn constant(c: K) -> Self {
        Self::new(vec![c])
    }
    /// The monomial `c·z^d`.
    pub fn monomial(c: K, d: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut v = vec![K::zero(); d + 1];
        v[d] = c;
        UPoly { coeffs: v }
    }
    pub fn x() -> Self {
        Self::monomial(K::one(), 1)
    }
    pub fn from_rats(v: &[Rat]) -> Self {
        Self::new(v.iter().map(K::from_rat).collect())
    }
    pub fn from_ints(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&n| K::from_int(n)).collect())
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }
    /// Degree, with -1 for the zero polynomial.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
    pub fn coeff(&self, i: usize) -> K {
        self.coeffs.get(i).cloned().unwrap_or_else(K::zero)
    }
    pub fn lc(&self) -> K {
        self.coeffs.last().cloned().unwrap_or_else(K::zero)
    }
    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                _ => unreachable!(),
            });
        }
        Self::new(v)
    }
    pub fn neg(&self) -> Self {
        UPoly { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![K::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = v[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(v)
    }
    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UPoly { coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect() }
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
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let l = self.lc().inv();
        self.scale(&l)
    }
    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&K::from_int(i as i64)))
            .collect();
        Self::new(v)
    }
    pub fn eval(&self, x: &K) -> K {
        let mut acc = K::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }
    /// self(g)
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Self::constant(c.clone()));
        }
        acc
    }
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.coeffs.len() < d.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let dl = d.coeffs.len();
        let inv = d.lc().inv();
        let mut r = self.coeffs.clone();
        let mut q = vec![K::zero(); r.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let c = r[k + dl - 1].mul(&inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].sub(&c.mul(dc));
            }
            q[k] = c;
        }
        r.truncate(dl - 1);
        (Self::new(q), Self::new(r))
    }
    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }
    /// Exact quotient, None when `d` does not divide.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
    /// Returns (g, s, t) with s·self + t·o = g monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let l = r0.lc().inv();
        (r0.scale(&l), s0.scale(&l), t0.scale(&l))
    }
    /// Solves s·a + t·b = c with deg s < deg b, assuming gcd(a, b) = 1.
    pub fn diophantine(a: &Self, b: &Self, c: &Self) -> (Self, Self) {
        let (g, s, _) = a.xgcd(b);
        debug_assert!(g.is_one());
        let s = s.mul(c).rem(b);
        let t = c.sub(&s.mul(a)).exact_div(b).expect("diophantine");
        (s, t)
    }
    /// Yun's squarefree decomposition: list of (factor, multiplicity), factors monic.
    pub fn squarefree(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.deg() < 1 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.exact_div(&a).unwrap();
        let mut c = df.exact_div(&a).unwrap();
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            if b.is_one() {
                break;
            }
            let g = b.gcd(&d);
            if !g.is_one() {
                out.push((g.clone(), i));
            }
            b = b.exact_div(&g).unwrap();
            c = d.exact_div(&g).unwrap();
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }
    pub fn squarefree_part(&self) -> Self {
        let mut acc = Self::one();
        for (f, _) in self.squarefree() {
            acc = acc.mul(&f);
        }
        acc
    }
    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).deg() <= 0
    }
    /// Resultant via the Euclidean algorithm.
    pub fn resultant(&self, o: &Self) -> K {
        if self.is_zero() || o.is_zero() {
            return K::zero();
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        let mut res = K::one();
        loop {
            let da = a.degree();
            let db = b.degree();
            if db == 0 {
                return res.mul(&b.lc().pow(da as u32));
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return K::zero();
            }
            let dr = r.degree();
            if da % 2 == 1 && db % 2 == 1 {
                res = res.neg();
            }
            res = res.mul(&b.lc().pow((da - dr) as u32));
            a = b;
            b = r;
        }
    }
    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> UPoly<L> {
        UPoly::new(self.coeffs.iter().map(f).collect())
    }
    /// Some(poly over Q) when all coefficients are rational.
    pub fn to_rat_poly(&self) -> Option<UPoly<Rat>> {
        let mut v = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            v.push(c.to_rat()?);
        }
        Some(UPoly::new(v))
    }
    /// Text form in variable `var`, highest degree first.
    pub fn to_text(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            push_term(&mut s, c, &mono);
        }
        s
    }
}

/// Appends `c·mono` to a running sum, handling signs.
pub(crate) fn push_term<K: Field>(s: &mut String, c: &K, mono: &str) {
    let (neg, mag) = match c.to_rat() {
        Some(r) if r < <Rat as num_traits::Zero>::zero() => (true, K::from_rat(&-r)),
        _ => (false, c.clone()),
    };
    if s.is_empty() {
        if neg {
            s.push('-');
        }
    } else {
        s.push_str(if neg { " - " } else { " + " });
    }
    if mono.is_empty() {
        s.push_str(&mag.to_text());
    } else if mag.is_one() {
        s.push_str(mono);
    } else if mag.is_atom() {
        s.push_str(&format!("{}*{}", mag.to_text(), mono));
    } else {
        s.push_str(&format!("({})*{}", mag.to_text(), mono));
    }
}

impl<K: Field> fmt::Debug for UPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text("z"))
    }
}

impl<K: Field> fmt::Display for UPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text("z"))
    }
}

impl UPoly<Rat> {
    /// Integer primitive part with positive leading coefficient, and the rational content.
    pub fn primitive_int(&self) -> (Rat, Vec<num_bigint::BigInt>) {
        use num_traits::Signed;
        if self.is_zero() {
            return (Rat::from_int(0), vec![]);
        }
        let l = crate::rat::den_lcm(self.coeffs.iter());
        let ints: Vec<num_bigint::BigInt> =
            self.coeffs.iter().map(|c| (c * Rat::from_integer(l.clone())).to_integer()).collect();
        let mut g = num_bigint::BigInt::from(0);
        for c in &ints {
            g = num_integer::Integer::gcd(&g, c);
        }
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim: Vec<_> = ints.iter().map(|c| c / &g).collect();
        (Rat::new(g, l), prim)
    }
}
