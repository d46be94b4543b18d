//! Rational functions in one variable over GF(q), kept in lowest terms with a
//! monic denominator.

use crate::algebra::field::{Field, FieldElement};
use crate::algebra::poly::{root_multiplicity, Polynomial};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct RatFun {
    num: Polynomial,
    den: Polynomial,
}

impl std::fmt::Debug for RatFun {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.is_one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

impl RatFun {
    pub fn new(num: Polynomial, den: Polynomial) -> RatFun {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RatFun { num, den };
        r.normalize();
        r
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Polynomial::one(self.den.field());
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_one() {
            self.num = self.num.divrem(&g).0;
            self.den = self.den.divrem(&g).0;
        }
        let lc = self.den.leading().unwrap().clone();
        if !lc.is_one() {
            let inv = lc.inv().unwrap();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn from_poly(p: Polynomial) -> RatFun {
        let one = Polynomial::one(p.field());
        RatFun::new(p, one)
    }

    pub fn zero(field: &Field) -> RatFun {
        RatFun::from_poly(Polynomial::zero(field))
    }

    pub fn one(field: &Field) -> RatFun {
        RatFun::from_poly(Polynomial::one(field))
    }

    pub fn constant(c: FieldElement) -> RatFun {
        RatFun::from_poly(Polynomial::constant(c))
    }

    pub fn x(field: &Field) -> RatFun {
        RatFun::from_poly(Polynomial::x(field))
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        Ok(RatFun::new(self.den.clone(), self.num.clone()))
    }

    /// Order of vanishing at x = a (negative at a pole). Errors on zero.
    pub fn val_at(&self, a: &FieldElement) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let up = root_multiplicity(&self.num, a) as i64;
        let down = root_multiplicity(&self.den, a) as i64;
        Ok(up - down)
    }

    /// Order of vanishing at x = infinity: deg den - deg num.
    pub fn val_at_inf(&self) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        Ok(self.den.deg_i64() - self.num.deg_i64())
    }

    /// The value of (x-a)^{-v} * self at a, where v = val_at(a).
    pub fn leading_at(&self, a: &FieldElement) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let lin = Polynomial::x_minus(a);
        let mut n = self.num.clone();
        let mut d = self.den.clone();
        loop {
            let (q, r) = n.divrem(&lin);
            if r.is_zero() {
                n = q;
            } else {
                break;
            }
        }
        loop {
            let (q, r) = d.divrem(&lin);
            if r.is_zero() {
                d = q;
            } else {
                break;
            }
        }
        Ok(&n.eval(a) * &d.eval(a).inv()?)
    }

    /// The value of x^{v} * self at infinity, where v = val_at_inf().
    pub fn leading_at_inf(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        Ok(&self.num.leading().unwrap().clone() * &self.den.leading().unwrap().inv()?)
    }

    /// Plain evaluation; errors at a pole.
    pub fn eval(&self, a: &FieldElement) -> Result<FieldElement> {
        let d = self.den.eval(a);
        if d.is_zero() {
            return Err(Error::ZeroFunction);
        }
        Ok(&self.num.eval(a) * &d.inv()?)
    }

    /// Substitutes a polynomial for x.
    pub fn compose_poly(&self, inner: &Polynomial) -> RatFun {
        RatFun::new(self.num.compose(inner), self.den.compose(inner))
    }
}

impl std::ops::Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        RatFun::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl std::ops::Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        RatFun::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl std::ops::Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl std::ops::Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        RatFun::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl std::ops::Div for &RatFun {
    type Output = RatFun;
    fn div(self, rhs: &RatFun) -> RatFun {
        assert!(!rhs.is_zero(), "division by zero");
        RatFun::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}
