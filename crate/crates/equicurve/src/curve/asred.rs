//! Artin-Schreier reduction of a rational function at a point of the x-line,
//! characteristic 2.
//!
//! For the degree-2 cover z^2 + z = w of the x-line, the local behaviour at a
//! point is read off after replacing w by w + u^2 + u until its valuation is
//! either non-negative (unramified) or a negative odd number -N (ramified with
//! jump N, so delta = N + 1). The substitutions u are rational functions, so
//! the whole reduction is exact.

use crate::algebra::field::FieldElement;
use crate::algebra::poly::Polynomial;
use crate::algebra::ratfun::RatFun;
use crate::error::Result;

/// Where on the x-line the reduction happens.
#[derive(Clone, Debug)]
pub enum XPoint {
    Finite(FieldElement),
    Infinity,
}

/// Outcome of the reduction at one point.
#[derive(Clone, Debug)]
pub struct AsReduction {
    /// Accumulated shift u: the reduced variable is z + u.
    pub shift: RatFun,
    /// w + shift^2 + shift.
    pub reduced: RatFun,
    /// Jump N when ramified (reduced valuation is -N, N odd); None otherwise.
    pub jump: Option<u64>,
}

impl AsReduction {
    pub fn is_ramified(&self) -> bool {
        self.jump.is_some()
    }

    /// delta = N + 1 for a ramified point.
    pub fn delta(&self) -> Option<u64> {
        self.jump.map(|n| n + 1)
    }
}

/// Runs the reduction of w at the given point. Exact; terminates because each
/// substitution strictly increases the local valuation.
pub fn reduce_at(w: &RatFun, at: &XPoint) -> Result<AsReduction> {
    let field = w.field().clone();
    debug_assert_eq!(field.p(), 2);
    let mut cur = w.clone();
    let mut shift = RatFun::zero(&field);
    loop {
        if cur.is_zero() {
            return Ok(AsReduction {
                shift,
                reduced: cur,
                jump: None,
            });
        }
        let v = match at {
            XPoint::Finite(a) => cur.val_at(a)?,
            XPoint::Infinity => cur.val_at_inf()?,
        };
        if v >= 0 {
            return Ok(AsReduction {
                shift,
                reduced: cur,
                jump: None,
            });
        }
        if v % 2 != 0 {
            return Ok(AsReduction {
                shift,
                reduced: cur,
                jump: Some((-v) as u64),
            });
        }
        // Leading term c t^{-2s}; kill it with u = sqrt(c) t^{-s}.
        let s = ((-v) / 2) as usize;
        let c = match at {
            XPoint::Finite(a) => cur.leading_at(a)?,
            XPoint::Infinity => cur.leading_at_inf()?,
        };
        let gamma = c.sqrt().expect("perfect field of characteristic 2");
        let u = match at {
            XPoint::Finite(a) => {
                let lin = Polynomial::x_minus(a).pow(s as u64);
                RatFun::new(Polynomial::constant(gamma), lin)
            }
            XPoint::Infinity => {
                RatFun::from_poly(Polynomial::constant(gamma).shift(s))
            }
        };
        cur = &(&cur + &(&u * &u)) + &u;
        shift = &shift + &u;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Field;

    #[test]
    fn odd_pole_is_already_reduced() {
        let f2 = Field::prime(2).unwrap();
        let w = RatFun::from_poly(Polynomial::from_ints(&f2, &[0, 0, 0, 0, 0, 1])); // x^5
        let r = reduce_at(&w, &XPoint::Infinity).unwrap();
        assert_eq!(r.jump, Some(5));
        assert_eq!(r.delta(), Some(6));
        assert!(r.shift.is_zero());
    }

    #[test]
    fn even_pole_reduces() {
        let f2 = Field::prime(2).unwrap();
        // x^6 + x^5 at infinity: x^6 = (x^3)^2 is absorbed, leaving x^5 + x^3.
        let w = RatFun::from_poly(Polynomial::from_ints(&f2, &[0, 0, 0, 0, 0, 1, 1]));
        let r = reduce_at(&w, &XPoint::Infinity).unwrap();
        assert_eq!(r.jump, Some(5));
        // reduced = w + (x^3)^2 + x^3 = x^5 + x^3
        assert_eq!(
            r.reduced,
            RatFun::from_poly(Polynomial::from_ints(&f2, &[0, 0, 0, 1, 0, 1]))
        );
    }

    #[test]
    fn square_collapses_to_unramified() {
        let f2 = Field::prime(2).unwrap();
        // x^4 reduces to x^2 then to x then stops: v(x) = -1 odd, jump 1.
        let w = RatFun::from_poly(Polynomial::from_ints(&f2, &[0, 0, 0, 0, 1]));
        let r = reduce_at(&w, &XPoint::Infinity).unwrap();
        assert_eq!(r.jump, Some(1));
    }

    #[test]
    fn finite_pole() {
        let f2 = Field::prime(2).unwrap();
        // w = 1/x^2 at 0: reduce once to 1/x; jump 1, delta 2.
        let w = RatFun::new(
            Polynomial::one(&f2),
            Polynomial::from_ints(&f2, &[0, 0, 1]),
        );
        let r = reduce_at(&w, &XPoint::Finite(f2.zero())).unwrap();
        assert_eq!(r.jump, Some(1));
        assert_eq!(r.delta(), Some(2));
    }

    #[test]
    fn regular_point_is_unramified() {
        let f2 = Field::prime(2).unwrap();
        let w = RatFun::from_poly(Polynomial::from_ints(&f2, &[1, 1]));
        let r = reduce_at(&w, &XPoint::Finite(f2.zero())).unwrap();
        assert_eq!(r.jump, None);
    }
}
