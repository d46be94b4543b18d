//! Elements of the function field K(X) = k(x)[y], written a(x) + b(x)·y.
//!
//! Arithmetic reduces y^2 via the curve relation: y^2 = f in odd
//! characteristic, y^2 = h·y + f in characteristic 2.

use crate::algebra::field::FieldElement;
use crate::algebra::poly::Polynomial;
use crate::algebra::ratfun::RatFun;
use crate::curve::model::{HyperellipticModel, ModelForm};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct FunctionRep {
    model: HyperellipticModel,
    a: RatFun,
    b: RatFun,
}

impl std::fmt::Debug for FunctionRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:?}) + ({:?})*y", self.a, self.b)
    }
}

impl FunctionRep {
    pub fn new(model: &HyperellipticModel, a: RatFun, b: RatFun) -> FunctionRep {
        FunctionRep {
            model: model.clone(),
            a,
            b,
        }
    }

    pub fn zero(model: &HyperellipticModel) -> FunctionRep {
        let field = model.field();
        FunctionRep::new(model, RatFun::zero(field), RatFun::zero(field))
    }

    pub fn one(model: &HyperellipticModel) -> FunctionRep {
        let field = model.field();
        FunctionRep::new(model, RatFun::one(field), RatFun::zero(field))
    }

    pub fn constant(model: &HyperellipticModel, c: FieldElement) -> FunctionRep {
        FunctionRep::new(model, RatFun::constant(c), RatFun::zero(model.field()))
    }

    pub fn x(model: &HyperellipticModel) -> FunctionRep {
        FunctionRep::new(model, RatFun::x(model.field()), RatFun::zero(model.field()))
    }

    pub fn y(model: &HyperellipticModel) -> FunctionRep {
        FunctionRep::new(model, RatFun::zero(model.field()), RatFun::one(model.field()))
    }

    pub fn from_x_part(model: &HyperellipticModel, a: RatFun) -> FunctionRep {
        FunctionRep::new(model, a, RatFun::zero(model.field()))
    }

    pub fn model(&self) -> &HyperellipticModel {
        &self.model
    }

    pub fn a_part(&self) -> &RatFun {
        &self.a
    }

    pub fn b_part(&self) -> &RatFun {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, rhs: &FunctionRep) -> FunctionRep {
        debug_assert_eq!(self.model, rhs.model);
        FunctionRep::new(&self.model, &self.a + &rhs.a, &self.b + &rhs.b)
    }

    pub fn sub(&self, rhs: &FunctionRep) -> FunctionRep {
        debug_assert_eq!(self.model, rhs.model);
        FunctionRep::new(&self.model, &self.a - &rhs.a, &self.b - &rhs.b)
    }

    pub fn neg(&self) -> FunctionRep {
        FunctionRep::new(&self.model, -&self.a, -&self.b)
    }

    pub fn scale(&self, c: &FieldElement) -> FunctionRep {
        let cr = RatFun::constant(c.clone());
        FunctionRep::new(&self.model, &self.a * &cr, &self.b * &cr)
    }

    pub fn mul(&self, rhs: &FunctionRep) -> FunctionRep {
        debug_assert_eq!(self.model, rhs.model);
        let (a1, b1, a2, b2) = (&self.a, &self.b, &rhs.a, &rhs.b);
        let fr = RatFun::from_poly(self.model.f().clone());
        match self.model.form() {
            ModelForm::OddChar { .. } => {
                // (a1 + b1 y)(a2 + b2 y) with y^2 = f
                let a = &(a1 * a2) + &(&(b1 * b2) * &fr);
                let b = &(a1 * b2) + &(a2 * b1);
                FunctionRep::new(&self.model, a, b)
            }
            ModelForm::Char2 { h, .. } => {
                // y^2 = h y + f
                let hr = RatFun::from_poly(h.clone());
                let a = &(a1 * a2) + &(&(b1 * b2) * &fr);
                let b = &(&(a1 * b2) + &(a2 * b1)) + &(&(b1 * b2) * &hr);
                FunctionRep::new(&self.model, a, b)
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> FunctionRep {
        let mut base = self.clone();
        let mut acc = FunctionRep::one(&self.model);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// The image under the hyperelliptic involution: y -> -y (odd char),
    /// y -> y - h (characteristic 2, where minus is plus).
    pub fn conjugate(&self) -> FunctionRep {
        match self.model.form() {
            ModelForm::OddChar { .. } => FunctionRep::new(&self.model, self.a.clone(), -&self.b),
            ModelForm::Char2 { h, .. } => {
                let hr = RatFun::from_poly(h.clone());
                FunctionRep::new(&self.model, &self.a + &(&self.b * &hr), self.b.clone())
            }
        }
    }

    /// The norm u * conj(u), an element of k(x).
    pub fn norm(&self) -> RatFun {
        let prod = self.mul(&self.conjugate());
        debug_assert!(prod.b.is_zero(), "norm lands in k(x)");
        prod.a
    }

    pub fn inv(&self) -> Result<FunctionRep> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let n = self.norm();
        let ninv = n.inv()?;
        let conj = self.conjugate();
        Ok(FunctionRep::new(
            &self.model,
            &conj.a * &ninv,
            &conj.b * &ninv,
        ))
    }

    pub fn div(&self, rhs: &FunctionRep) -> Result<FunctionRep> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Substitutes x -> alpha x + beta, y -> lambda y (a field pullback for a
    /// diagonal automorphism; validity is the caller's concern).
    pub fn substitute_diagonal(
        &self,
        alpha: &FieldElement,
        beta: &FieldElement,
        lambda: &FieldElement,
    ) -> FunctionRep {
        let field = self.model.field();
        let inner = Polynomial::new(field, vec![beta.clone(), alpha.clone()]);
        let a = self.a.compose_poly(&inner);
        let b = &self.b.compose_poly(&inner) * &RatFun::constant(lambda.clone());
        FunctionRep::new(&self.model, a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Field;
    use crate::curve::model::HyperellipticModel;

    fn c1() -> HyperellipticModel {
        let f7 = Field::prime(7).unwrap();
        let f = Polynomial::from_ints(&f7, &[-1, 0, 0, 0, 0, 0, 1]);
        HyperellipticModel::new_odd(&f7, f).unwrap()
    }

    fn c2() -> HyperellipticModel {
        let f2 = Field::prime(2).unwrap();
        let h = Polynomial::one(&f2);
        let f = Polynomial::from_ints(&f2, &[0, 0, 0, 0, 0, 1]);
        HyperellipticModel::new_char2(&f2, h, f).unwrap()
    }

    #[test]
    fn y_squared_is_f_odd_char() {
        let m = c1();
        let y = FunctionRep::y(&m);
        let y2 = y.mul(&y);
        assert!(y2.b_part().is_zero());
        assert_eq!(y2.a_part().num(), m.f());
    }

    #[test]
    fn y_squared_char2() {
        let m = c2();
        let y = FunctionRep::y(&m);
        let y2 = y.mul(&y);
        // y^2 = h y + f = y + x^5
        assert_eq!(y2.a_part().num(), m.f());
        assert!(y2.b_part().num().is_one());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = c1();
        let u = FunctionRep::y(&m).add(&FunctionRep::x(&m));
        let ui = u.inv().unwrap();
        assert_eq!(u.mul(&ui), FunctionRep::one(&m));
    }

    #[test]
    fn conjugation_is_involutive_and_multiplicative() {
        for m in [c1(), c2()] {
            let u = FunctionRep::y(&m).add(&FunctionRep::x(&m));
            let w = FunctionRep::y(&m)
                .mul(&FunctionRep::x(&m))
                .add(&FunctionRep::one(&m));
            assert_eq!(u.conjugate().conjugate(), u);
            assert_eq!(
                u.mul(&w).conjugate(),
                u.conjugate().mul(&w.conjugate())
            );
        }
    }
}
