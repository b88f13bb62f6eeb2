//! Rational linearization of planar vector fields with a hyperexponential
//! integrating factor.

use hyperint_algebra::polyrat::compose;
use hyperint_algebra::{RFunc, Rat, URFunc};

use crate::config::Caps;
use crate::error::{HyperintError, Result};
use crate::forms::OneForm;
use crate::liouville::liouville_decompose;

type RF = RFunc<Rat>;

/// Trajectories of the field satisfy `dY/dX = a(X) + b(X)·Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Linearization {
    pub x: RF,
    pub y: RF,
    pub a: URFunc<Rat>,
    pub b: URFunc<Rat>,
}

impl Linearization {
    /// `v(Y) = (a(X) + b(X)Y)·v(X)` for the field `v = p∂x + q∂y`, and a
    /// nonvanishing Jacobian of `(X, Y)`.
    pub fn certify(&self, p: &RF, q: &RF) -> bool {
        let along = |h: &RF| p.mul(&h.derivative(0)).add(&q.mul(&h.derivative(1)));
        let (Ok(ax), Ok(bx)) = (compose(&self.a, &self.x), compose(&self.b, &self.x)) else { return false };
        let lhs = along(&self.y);
        let rhs = ax.add(&bx.mul(&self.y)).mul(&along(&self.x));
        let jac = self.x.derivative(0).mul(&self.y.derivative(1)).sub(&self.x.derivative(1).mul(&self.y.derivative(0)));
        lhs == rhs && !jac.is_zero()
    }
}

/// Linearizes `dy/dx = V(x, y)` given the log-derivative `η` of an
/// integrating factor of `V dx − dy`.
pub fn linearize(v: &RF, eta: &OneForm, caps: &Caps) -> Result<Linearization> {
    linearize_field(&RF::one(), v, eta, caps)
}

/// Same for the field `ẋ = p, ẏ = q`; the integrated form is `q dx − p dy`.
pub fn linearize_field(p: &RF, q: &RF, eta: &OneForm, caps: &Caps) -> Result<Linearization> {
    if eta.n() != 2 {
        return Err(HyperintError::PreconditionViolated("planar fields need two variables".into()));
    }
    let w = OneForm::new(vec![q.clone(), p.neg()]);
    let dec = match liouville_decompose(eta, &w, caps) {
        Err(HyperintError::AlgebraicH) => {
            return Err(HyperintError::FirstIntegralDegenerate("the integrating factor is algebraic".into()))
        }
        r => r?,
    };
    if dec.exact {
        return Err(HyperintError::FirstIntegralDegenerate("H·ω is exact".into()));
    }
    let lin = Linearization { x: dec.f_map, y: dec.r.mul(&dec.t), a: dec.f.neg(), b: dec.g.neg() };
    if !lin.certify(p, q) {
        return Err(HyperintError::InternalInconsistency("linearization failed certification".into()));
    }
    Ok(lin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperint_algebra::parse::Scope;

    fn p(s: &str) -> RF {
        Scope::standard(2).parse(s).unwrap()
    }

    #[test]
    fn exponential_integral_is_degenerate() {
        let eta = OneForm::new(vec![p("-1"), p("0")]);
        let r = linearize(&p("x2"), &eta, &Caps::default());
        assert!(matches!(r, Err(HyperintError::FirstIntegralDegenerate(_))));
    }

    #[test]
    fn pulled_back_linear_equation() {
        // Y' = X + Y/X^2 with X = x1 x2, Y = x1 + x2
        let (xx, yy) = (p("x1*x2"), p("x1+x2"));
        let c = xx.add(&yy.div(&xx.mul(&xx)));
        let theta = OneForm::d(&yy, 2).sub(&OneForm::d(&xx, 2).scale(&c));
        let (fp, fq) = (theta.coeffs[1].clone(), theta.coeffs[0].neg());
        let eta = OneForm::d(&xx.inv(), 2);
        let lin = linearize_field(&fp, &fq, &eta, &Caps::default()).unwrap();
        assert!(lin.certify(&fp, &fq));
    }
}
