//! Algebraic number fields `Q[t]/(m(t))` and their elements.

mod splitting;

pub use splitting::{factor_over_field, splitting_field, SplittingField};

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::field::Field;
use crate::linalg;
use crate::rat::{int, Rat};
use crate::upoly::UPoly;

/// `L = Q[t]/(minpoly)`.
#[derive(Clone)]
pub struct NumberField {
    minpoly: UPoly<Rat>,
    /// Images of the generator under each automorphism, as coordinate vectors.
    automorphisms: Vec<Vec<Rat>>,
    name: String,
}

impl NumberField {
    /// Builds a field from a monic irreducible polynomial. Irreducibility is checked.
    pub fn new(minpoly: UPoly<Rat>) -> Result<Arc<Self>, AlgebraError> {
        let m = minpoly.monic();
        if m.deg() < 1 {
            return Err(AlgebraError::InvalidField("constant minimal polynomial".into()));
        }
        let fs = crate::polyrat::factor_upoly_q(&m);
        if fs.factors.len() != 1 || fs.factors[0].1 != 1 {
            return Err(AlgebraError::InvalidField(format!("{} is reducible", m.to_text("t"))));
        }
        Ok(Arc::new(Self::new_unchecked(m, vec![])))
    }

    pub(crate) fn new_unchecked(minpoly: UPoly<Rat>, automorphisms: Vec<Vec<Rat>>) -> Self {
        NumberField { minpoly, automorphisms, name: "t".into() }
    }

    /// The field Q itself, presented as `Q[t]/(t)`.
    pub fn rationals() -> Arc<Self> {
        Arc::new(NumberField {
            minpoly: UPoly::x(),
            automorphisms: vec![vec![]],
            name: "t".into(),
        })
    }

    pub fn with_name(mut self: Arc<Self>, name: &str) -> Arc<Self> {
        Arc::make_mut(&mut self).name = name.to_string();
        self
    }

    pub fn minpoly(&self) -> &UPoly<Rat> {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn automorphisms(&self) -> &[Vec<Rat>] {
        &self.automorphisms
    }

    pub fn is_galois(&self) -> bool {
        self.automorphisms.len() == self.degree()
    }

    pub fn same(&self, o: &Self) -> bool {
        std::ptr::eq(self, o) || self.minpoly == o.minpoly
    }

    /// The generator `t` as an element.
    pub fn gen(self: &Arc<Self>) -> AlgNumber {
        AlgNumber::from_coords(vec![int(0), int(1)], self)
    }

    pub fn element(self: &Arc<Self>, coords: Vec<Rat>) -> AlgNumber {
        AlgNumber::from_coords(coords, self)
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]/({})", self.name, self.minpoly.to_text(&self.name))
    }
}

/// An element of a number field, in the power basis of the generator.
///
/// `field == None` marks a rational number that is not yet attached to a field,
/// which keeps `zero()` and `one()` context free.
#[derive(Clone)]
pub struct AlgNumber {
    coords: Vec<Rat>,
    field: Option<Arc<NumberField>>,
}

fn trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn reduce(v: Vec<Rat>, m: &UPoly<Rat>) -> Vec<Rat> {
    if v.len() < m.coeffs.len() {
        return trim(v);
    }
    UPoly::new(v).rem(m).coeffs
}

impl AlgNumber {
    pub fn rational(r: Rat) -> Self {
        AlgNumber { coords: trim(vec![r]), field: None }
    }

    pub fn from_coords(coords: Vec<Rat>, field: &Arc<NumberField>) -> Self {
        let coords = reduce(coords, &field.minpoly);
        AlgNumber { coords, field: Some(field.clone()) }
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    /// Coordinates padded to the field degree.
    pub fn full_coords(&self) -> Vec<Rat> {
        let n = self.field.as_ref().map_or(1, |f| f.degree());
        let mut v = self.coords.clone();
        v.resize(n.max(v.len()), Rat::zero());
        v
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        self.field.as_ref()
    }

    pub fn is_rational(&self) -> bool {
        self.coords.len() <= 1
    }

    /// Attaches this element to `field` (rational elements only, or same field).
    pub fn in_field(&self, field: &Arc<NumberField>) -> Self {
        if let Some(f) = &self.field {
            if !self.is_rational() {
                assert!(f.same(field), "element of {:?} moved to {:?}", f, field);
            }
        }
        AlgNumber { coords: self.coords.clone(), field: Some(field.clone()) }
    }

    fn merged(&self, o: &Self) -> Option<Arc<NumberField>> {
        match (&self.field, &o.field) {
            (Some(a), Some(b)) => {
                if !self.is_rational() && !o.is_rational() {
                    assert!(a.same(b), "mixing elements of {:?} and {:?}", a, b);
                }
                if self.is_rational() {
                    Some(b.clone())
                } else {
                    Some(a.clone())
                }
            }
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(b.clone()),
            (None, None) => None,
        }
    }

    fn as_poly(&self) -> UPoly<Rat> {
        UPoly { coeffs: self.coords.clone() }
    }

    /// Minimal polynomial over Q, via the first linear relation among powers.
    pub fn minpoly(&self) -> UPoly<Rat> {
        if self.is_rational() {
            return UPoly::new(vec![self.to_rat().unwrap().neg(), Rat::one()]);
        }
        let n = self.field.as_ref().unwrap().degree();
        let mut rows: Vec<Vec<Rat>> = vec![];
        let mut p = AlgNumber::one().in_field(self.field.as_ref().unwrap());
        for _ in 0..=n {
            let mut c = p.full_coords();
            c.resize(n, Rat::zero());
            rows.push(c);
            // columns are powers, rows are coordinates
            let cols = rows.len();
            let mat: Vec<Vec<Rat>> = (0..n).map(|i| (0..cols).map(|j| rows[j][i].clone()).collect()).collect();
            let ker = linalg::kernel(&mat, cols);
            if let Some(v) = ker.into_iter().next() {
                return UPoly::new(v).monic();
            }
            p = p.mul(self);
        }
        unreachable!("minimal polynomial degree exceeds field degree")
    }

    /// The trace used for the traceless test: minus the second-leading coefficient
    /// of the monic minimal polynomial, i.e. the sum of the conjugates of `a`.
    pub fn trace(&self) -> Rat {
        let m = self.minpoly();
        let d = m.degree();
        -m.coeff(d - 1)
    }

    /// The field trace `Tr_{L/Q}`, which is Q-linear.
    pub fn field_trace(&self) -> Rat {
        let Some(f) = &self.field else {
            return self.to_rat().unwrap();
        };
        let n = f.degree();
        let mut tr = Rat::zero();
        let mut basis = AlgNumber::one().in_field(f);
        let g = f.gen();
        for i in 0..n {
            let prod = self.mul(&basis);
            tr += prod.full_coords().get(i).cloned().unwrap_or_else(Rat::zero);
            basis = basis.mul(&g);
        }
        tr
    }

    /// Image of this element under the automorphism sending the generator to `img`.
    pub fn apply_map(&self, img: &AlgNumber) -> AlgNumber {
        let mut acc = AlgNumber::zero();
        for c in self.coords.iter().rev() {
            acc = acc.mul(img).add(&AlgNumber::rational(c.clone()));
        }
        acc
    }

    /// `σ(a)` for every stored automorphism σ.
    pub fn galois_conjugates(&self) -> Result<Vec<AlgNumber>, AlgebraError> {
        let Some(f) = &self.field else {
            return Ok(vec![self.clone()]);
        };
        if !f.is_galois() {
            return Err(AlgebraError::NotGalois);
        }
        Ok(f
            .automorphisms
            .iter()
            .map(|img| {
                let im = AlgNumber::from_coords(img.clone(), f);
                self.apply_map(&im).in_field(f)
            })
            .collect())
    }

    /// Text of the coordinate polynomial in the generator name.
    pub fn poly_text(&self) -> String {
        let name = self.field.as_ref().map_or("t", |f| f.name());
        self.as_poly().to_text(name)
    }

    /// `alg(minpoly; coords)` form.
    pub fn alg_text(&self) -> String {
        match &self.field {
            Some(f) => format!("alg({}; {})", f.minpoly.to_text("t"), self.as_poly().to_text("t")),
            None => self.poly_text(),
        }
    }
}

impl PartialEq for AlgNumber {
    fn eq(&self, o: &Self) -> bool {
        if self.coords != o.coords {
            return false;
        }
        if self.is_rational() {
            return true;
        }
        match (&self.field, &o.field) {
            (Some(a), Some(b)) => a.same(b),
            _ => false,
        }
    }
}

impl Eq for AlgNumber {}

impl fmt::Debug for AlgNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly_text())
    }
}

impl fmt::Display for AlgNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly_text())
    }
}

impl Field for AlgNumber {
    fn zero() -> Self {
        AlgNumber { coords: vec![], field: None }
    }
    fn one() -> Self {
        AlgNumber { coords: vec![Rat::one()], field: None }
    }
    fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }
    fn is_one(&self) -> bool {
        self.coords.len() == 1 && self.coords[0].is_one()
    }
    fn add(&self, o: &Self) -> Self {
        let field = self.merged(o);
        let n = self.coords.len().max(o.coords.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coords.get(i);
            let b = o.coords.get(i);
            v.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                _ => unreachable!(),
            });
        }
        AlgNumber { coords: trim(v), field }
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        let field = self.merged(o);
        if self.is_rational() || o.is_rational() {
            let (r, x) = if self.is_rational() { (self, o) } else { (o, self) };
            let Some(c) = r.coords.first() else {
                return AlgNumber { coords: vec![], field };
            };
            return AlgNumber { coords: x.coords.iter().map(|a| a * c).collect(), field };
        }
        let p = self.as_poly().mul(&o.as_poly());
        let m = &field.as_ref().unwrap().minpoly;
        AlgNumber { coords: reduce(p.coeffs, m), field }
    }
    fn neg(&self) -> Self {
        AlgNumber { coords: self.coords.iter().map(|c| -c).collect(), field: self.field.clone() }
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        if self.is_rational() {
            return AlgNumber { coords: vec![self.coords[0].recip()], field: self.field.clone() };
        }
        let f = self.field.as_ref().unwrap();
        let (g, s, _) = self.as_poly().xgcd(&f.minpoly);
        assert!(g.is_one(), "element not invertible: minimal polynomial is reducible");
        AlgNumber::from_coords(s.coeffs, f)
    }
    fn from_rat(r: &Rat) -> Self {
        AlgNumber::rational(r.clone())
    }
    fn to_rat(&self) -> Option<Rat> {
        match self.coords.len() {
            0 => Some(Rat::zero()),
            1 => Some(self.coords[0].clone()),
            _ => None,
        }
    }
    fn canonical_cmp(&self, o: &Self) -> Ordering {
        let n = self.coords.len().max(o.coords.len());
        for i in (0..n).rev() {
            let a = self.coords.get(i).cloned().unwrap_or_else(Rat::zero);
            let b = o.coords.get(i).cloned().unwrap_or_else(Rat::zero);
            match a.cmp(&b) {
                Ordering::Equal => continue,
                c => return c,
            }
        }
        Ordering::Equal
    }
    fn to_text(&self) -> String {
        self.poly_text()
    }
    fn is_atom(&self) -> bool {
        match self.to_rat() {
            Some(r) => r.is_atom(),
            None => self.coords.iter().filter(|c| !c.is_zero()).count() == 1
                && self.coords.last().unwrap().is_one(),
        }
    }
}

/// Image of `a` (an element of `from`) under the embedding sending the generator of `from` to `img`.
pub fn embed(a: &AlgNumber, img: &AlgNumber) -> AlgNumber {
    let r = a.apply_map(img);
    match img.field() {
        Some(f) => r.in_field(f),
        None => r,
    }
}
