//! Truncated power series and Laurent series for local expansions at places.
//!
//! A `PowerSeries` is known modulo t^prec; operations track precision
//! pessimistically (the precision of a product is the min of the operands').

use crate::algebra::field::{Field, FieldElement};
use crate::algebra::poly::Polynomial;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries {
    field: Field,
    /// Exactly `prec` coefficients; coeffs[i] is the t^i coefficient.
    coeffs: Vec<FieldElement>,
}

impl std::fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{} + O(t^{})]",
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| format!("{}t^{}", c, i))
                .collect::<Vec<_>>()
                .join(" + "),
            self.prec()
        )
    }
}

impl PowerSeries {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElement>, prec: usize) -> PowerSeries {
        coeffs.truncate(prec);
        coeffs.resize(prec, field.zero());
        PowerSeries {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Field, prec: usize) -> PowerSeries {
        PowerSeries::new(field, vec![], prec)
    }

    pub fn constant(c: FieldElement, prec: usize) -> PowerSeries {
        let field = c.field().clone();
        PowerSeries::new(&field, vec![c], prec)
    }

    pub fn from_poly(p: &Polynomial, prec: usize) -> PowerSeries {
        PowerSeries::new(p.field(), p.coeffs().to_vec(), prec)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn truncate(&self, prec: usize) -> PowerSeries {
        PowerSeries::new(&self.field, self.coeffs.clone(), prec.min(self.prec()))
    }

    /// Index of the first nonzero coefficient; `None` when the series is zero
    /// to its full known precision (valuation indeterminate).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero_to_prec(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn add(&self, rhs: &PowerSeries) -> PowerSeries {
        let prec = self.prec().min(rhs.prec());
        let coeffs = (0..prec).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        PowerSeries::new(&self.field, coeffs, prec)
    }

    pub fn sub(&self, rhs: &PowerSeries) -> PowerSeries {
        let prec = self.prec().min(rhs.prec());
        let coeffs = (0..prec).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect();
        PowerSeries::new(&self.field, coeffs, prec)
    }

    pub fn neg(&self) -> PowerSeries {
        PowerSeries::new(
            &self.field,
            self.coeffs.iter().map(|c| -c).collect(),
            self.prec(),
        )
    }

    pub fn mul(&self, rhs: &PowerSeries) -> PowerSeries {
        let prec = self.prec().min(rhs.prec());
        let mut coeffs = vec![self.field.zero(); prec];
        for (i, a) in self.coeffs.iter().enumerate().take(prec) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= prec {
                    break;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        PowerSeries::new(&self.field, coeffs, prec)
    }

    pub fn scale(&self, c: &FieldElement) -> PowerSeries {
        PowerSeries::new(
            &self.field,
            self.coeffs.iter().map(|a| a * c).collect(),
            self.prec(),
        )
    }

    /// Multiplies by t^n (precision grows with the shift).
    pub fn shift_up(&self, n: usize) -> PowerSeries {
        let mut coeffs = vec![self.field.zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        let prec = self.prec() + n;
        PowerSeries::new(&self.field, coeffs, prec)
    }

    /// Inverse of a unit series (nonzero constant term).
    pub fn invert(&self) -> Result<PowerSeries> {
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let c0i = c0.inv()?;
        let prec = self.prec();
        let mut inv = vec![self.field.zero(); prec];
        inv[0] = c0i.clone();
        for n in 1..prec {
            // sum_{i=0}^{n} a_i b_{n-i} = 0  =>  b_n = -c0i * sum_{i>=1} a_i b_{n-i}
            let mut s = self.field.zero();
            for i in 1..=n {
                s = &s + &(&self.coeff(i) * &inv[n - i]);
            }
            inv[n] = -&(&c0i * &s);
        }
        Ok(PowerSeries::new(&self.field, inv, prec))
    }

    pub fn pow(&self, mut e: u64) -> PowerSeries {
        let mut base = self.clone();
        let mut acc = PowerSeries::constant(self.field.one(), self.prec());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Composes self with an inner series of positive valuation.
    pub fn compose(&self, inner: &PowerSeries) -> PowerSeries {
        assert!(
            inner.coeff(0).is_zero(),
            "composition requires positive valuation"
        );
        let prec = self.prec().min(inner.prec());
        let mut acc = PowerSeries::zero(&self.field, prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner);
            acc = acc.add(&PowerSeries::constant(c.clone(), prec));
        }
        acc
    }

    /// Evaluates a polynomial on a series argument.
    pub fn eval_poly(p: &Polynomial, arg: &PowerSeries) -> PowerSeries {
        let prec = arg.prec();
        let field = arg.field();
        let mut acc = PowerSeries::zero(field, prec);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(arg);
            acc = acc.add(&PowerSeries::constant(c.clone(), prec));
        }
        acc
    }
}

/// Square root of a series with unit square constant term, in odd
/// characteristic. `init` selects the branch: init^2 = s(0).
pub fn series_sqrt(s: &PowerSeries, init: &FieldElement) -> Result<PowerSeries> {
    let field = s.field().clone();
    assert!(field.p() != 2, "odd characteristic only");
    let c0 = s.coeff(0);
    if c0.is_zero() {
        return Err(Error::NoSimpleRoot);
    }
    if &(init * init) != &c0 {
        return Err(Error::NoSimpleRoot);
    }
    let prec = s.prec();
    let two_init_inv = (&field.from_int(2) * init).inv()?;
    let mut z = vec![field.zero(); prec];
    z[0] = init.clone();
    for n in 1..prec {
        // 2 z0 zn = s_n - sum_{i=1}^{n-1} z_i z_{n-i}
        let mut acc = s.coeff(n);
        for i in 1..n {
            acc = &acc - &(&z[i] * &z[n - i]);
        }
        z[n] = &acc * &two_init_inv;
    }
    Ok(PowerSeries::new(&field, z, prec))
}

/// Unique series root of z^2 - h z = s with residue `init`, characteristic 2.
/// Requires h(0) != 0 so the residue root is simple.
pub fn series_artin_schreier_root(
    s: &PowerSeries,
    h: &PowerSeries,
    init: &FieldElement,
) -> Result<PowerSeries> {
    let field = s.field().clone();
    assert_eq!(field.p(), 2, "characteristic 2 only");
    let h0 = h.coeff(0);
    if h0.is_zero() {
        return Err(Error::NoSimpleRoot);
    }
    if &(&(init * init) - &(&h0 * init)) != &s.coeff(0) {
        return Err(Error::NoSimpleRoot);
    }
    let prec = s.prec().min(h.prec());
    let h0inv = h0.inv()?;
    let mut z = vec![field.zero(); prec];
    z[0] = init.clone();
    for n in 1..prec {
        // In characteristic 2: (z^2)_n = z_{n/2}^2 for even n, else 0, and
        // the coefficient of t^n in h z is sum_j h_j z_{n-j}.
        // From z^2 + h z + s = 0 (signs immaterial):
        //   h_0 z_n = (z^2)_n + sum_{j>=1} h_j z_{n-j} + s_n
        let mut acc = s.coeff(n);
        if n % 2 == 0 {
            let half = &z[n / 2];
            acc = &acc + &(half * half);
        }
        for j in 1..=n.min(h.prec() - 1) {
            acc = &acc + &(&h.coeff(j) * &z[n - j]);
        }
        z[n] = &acc * &h0inv;
    }
    Ok(PowerSeries::new(&field, z, prec))
}

/// Laurent series: t^v0 * (power series). Coefficients are known for
/// exponents in [v0, v0 + prec).
#[derive(Clone, Debug)]
pub struct Laurent {
    pub v0: i64,
    pub ser: PowerSeries,
}

impl Laurent {
    pub fn new(v0: i64, ser: PowerSeries) -> Laurent {
        Laurent { v0, ser }
    }

    pub fn from_series(ser: PowerSeries) -> Laurent {
        Laurent { v0: 0, ser }
    }

    pub fn zero(field: &Field, v0: i64, prec: usize) -> Laurent {
        Laurent {
            v0,
            ser: PowerSeries::zero(field, prec),
        }
    }

    pub fn field(&self) -> &Field {
        self.ser.field()
    }

    /// Absolute precision: coefficients are known for exponents < this.
    pub fn abs_prec(&self) -> i64 {
        self.v0 + self.ser.prec() as i64
    }

    pub fn coeff(&self, e: i64) -> FieldElement {
        if e < self.v0 {
            self.field().zero()
        } else {
            self.ser.coeff((e - self.v0) as usize)
        }
    }

    /// Valuation, or None when no nonzero coefficient is known.
    pub fn valuation(&self) -> Option<i64> {
        self.ser.valuation().map(|i| self.v0 + i as i64)
    }

    pub fn add(&self, rhs: &Laurent) -> Laurent {
        let v0 = self.v0.min(rhs.v0);
        let prec = self.abs_prec().min(rhs.abs_prec()) - v0;
        if prec <= 0 {
            return Laurent::zero(self.field(), v0, 0);
        }
        let coeffs = (0..prec)
            .map(|i| &self.coeff(v0 + i) + &rhs.coeff(v0 + i))
            .collect();
        Laurent::new(v0, PowerSeries::new(self.field(), coeffs, prec as usize))
    }

    pub fn sub(&self, rhs: &Laurent) -> Laurent {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Laurent {
        Laurent::new(self.v0, self.ser.neg())
    }

    pub fn mul(&self, rhs: &Laurent) -> Laurent {
        Laurent::new(self.v0 + rhs.v0, self.ser.mul(&rhs.ser))
    }

    pub fn scale(&self, c: &FieldElement) -> Laurent {
        Laurent::new(self.v0, self.ser.scale(c))
    }

    /// Inverse; requires an exactly-known valuation.
    pub fn invert(&self) -> Result<Laurent> {
        let v = self.valuation().ok_or(Error::PrecisionExhausted(0))?;
        let drop = (v - self.v0) as usize;
        let unit = PowerSeries::new(
            self.field(),
            self.ser.coeffs()[drop..].to_vec(),
            self.ser.prec() - drop,
        );
        Ok(Laurent::new(-v, unit.invert()?))
    }

    pub fn pow(&self, e: u64) -> Laurent {
        Laurent::new(self.v0 * e as i64, self.ser.pow(e))
    }
}
