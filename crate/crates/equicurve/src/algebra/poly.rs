//! Univariate polynomials over GF(q) with exact arithmetic.
//!
//! Coefficients are stored in ascending degree with no trailing zeros; the
//! zero polynomial is the empty vector.

use crate::algebra::field::{Field, FieldElement};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl std::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{}", c),
                1 => format!("{}*x", c),
                _ => format!("{}*x^{}", c, i),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Polynomial {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElement>) -> Polynomial {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Field) -> Polynomial {
        Polynomial {
            field: field.clone(),
            coeffs: vec![],
        }
    }

    pub fn one(field: &Field) -> Polynomial {
        Polynomial::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Polynomial {
        let field = c.field().clone();
        Polynomial::new(&field, vec![c])
    }

    pub fn x(field: &Field) -> Polynomial {
        Polynomial::new(field, vec![field.zero(), field.one()])
    }

    /// x - a
    pub fn x_minus(a: &FieldElement) -> Polynomial {
        let f = a.field().clone();
        Polynomial::new(&f, vec![-a, f.one()])
    }

    /// Builds a polynomial from integer coefficients (ascending degree).
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Polynomial {
        Polynomial::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    /// Builds a polynomial from canonical element encodings (ascending degree).
    pub fn from_encs(field: &Field, encs: &[u64]) -> Polynomial {
        Polynomial::new(field, encs.iter().map(|&c| field.from_enc(c)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree as an i64, with deg 0 = -infinity mapped to a large negative value
    /// is avoided: callers that need it use `degree()`. This returns -1 for zero.
    pub fn deg_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn eval(&self, a: &FieldElement) -> FieldElement {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * a) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero(&self.field);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| {
                let mult = self.field.from_int(i as i64);
                &mult * c
            })
            .collect();
        Polynomial::new(&self.field, coeffs)
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        Polynomial::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                if lc.is_one() {
                    self.clone()
                } else {
                    self.scale(&lc.inv().expect("nonzero leading coefficient"))
                }
            }
        }
    }

    /// Multiply by x^n.
    pub fn shift(&self, n: usize) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial::new(&self.field, coeffs)
    }

    pub fn divrem(&self, rhs: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!rhs.is_zero(), "division by zero polynomial");
        let db = rhs.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return (Polynomial::zero(&self.field), self.clone());
        }
        let lc_inv = rhs.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![self.field.zero(); rem.len() - db];
        while rem.len() > db {
            let c = &rem.last().unwrap().clone() * &lc_inv;
            let shift = rem.len() - 1 - db;
            quo[shift] = c.clone();
            for (i, bi) in rhs.coeffs.iter().enumerate() {
                rem[i + shift] = &rem[i + shift] - &(&c * bi);
            }
            while rem.last().map_or(false, |x| x.is_zero()) {
                rem.pop();
            }
            if rem.is_empty() {
                break;
            }
        }
        (
            Polynomial::new(&self.field, quo),
            Polynomial::new(&self.field, rem),
        )
    }

    pub fn rem(&self, rhs: &Polynomial) -> Polynomial {
        self.divrem(rhs).1
    }

    /// Monic gcd; gcd(0, h) = monic h.
    pub fn gcd(&self, rhs: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    pub fn pow(&self, mut e: u64) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn powmod(&self, mut e: u64, m: &Polynomial) -> Polynomial {
        let mut base = self.rem(m);
        let mut acc = Polynomial::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m);
            }
            base = (&base * &base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Substitutes another polynomial for x.
    pub fn compose(&self, inner: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Polynomial::constant(c.clone());
        }
        acc
    }

    /// True iff the polynomial has no repeated zero over the algebraic closure.
    /// Errors on the zero polynomial.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.coeffs.len() == 1 {
            return Ok(true); // nonzero constant: no zeroes at all
        }
        let d = self.derivative();
        if d.is_zero() {
            // f is a polynomial in x^p, hence every root is repeated.
            return Ok(false);
        }
        Ok(self.gcd(&d).is_one())
    }

    /// True iff irreducible over its coefficient field (Rabin's test).
    pub fn is_irreducible(&self) -> bool {
        let k = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(k) => k as u32,
        };
        let q = self.field.q();
        let x = Polynomial::x(&self.field);
        let mut xq = x.clone();
        for _ in 0..k {
            xq = frobenius_power(&xq, q, self);
        }
        if (&xq - &x).rem(self) != Polynomial::zero(&self.field) {
            return false;
        }
        for r in prime_divisors(k) {
            let mut xe = x.clone();
            for _ in 0..(k / r) {
                xe = frobenius_power(&xe, q, self);
            }
            let g = self.gcd(&(&xe - &x));
            if !g.is_one() {
                return false;
            }
        }
        true
    }
}

fn prime_divisors(mut n: u32) -> Vec<u32> {
    let mut out = vec![];
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// h(x) -> h(x)^q mod m via square-and-multiply on the exponent q.
fn frobenius_power(h: &Polynomial, q: u64, m: &Polynomial) -> Polynomial {
    h.powmod(q, m)
}

/// Distinct-degree splitting: returns (d, product of monic irreducible factors
/// of degree d) for each d that occurs, ascending, multiplicity removed.
pub fn distinct_degree_factor(f: &Polynomial) -> Vec<(usize, Polynomial)> {
    let field = f.field().clone();
    let q = field.q();
    // Work on the squarefree part.
    let mut work = squarefree_part(f);
    let mut out = vec![];
    let mut d = 0usize;
    let x = Polynomial::x(&field);
    let mut xqd = x.rem(&work);
    while work.degree().map_or(false, |dw| dw >= 1) {
        d += 1;
        if 2 * d > work.degree().unwrap() {
            // Remainder is a single irreducible factor.
            out.push((work.degree().unwrap(), work.monic()));
            break;
        }
        xqd = frobenius_power(&xqd, q, &work);
        let g = work.gcd(&(&xqd - &x));
        if !g.is_one() {
            out.push((d, g.clone()));
            work = work.divrem(&g).0;
            xqd = xqd.rem(&work);
        }
    }
    out
}

/// The radical: product of the distinct irreducible factors.
pub fn squarefree_part(f: &Polynomial) -> Polynomial {
    assert!(!f.is_zero());
    let field = f.field().clone();
    if f.degree() == Some(0) {
        return Polynomial::one(&field);
    }
    let d = f.derivative();
    if d.is_zero() {
        // f = g(x^p); every irreducible factor of f divides f with multiplicity
        // >= p. Take p-th "root" coefficient-wise and recurse.
        let p = field.p() as usize;
        let k = field.k();
        let mut coeffs = vec![];
        for (i, c) in f.coeffs().iter().enumerate() {
            if i % p == 0 {
                // c^(p^(k-1)) is the p-th root in GF(p^k).
                let mut r = c.clone();
                for _ in 0..(k - 1) {
                    r = r.pow(p as u64);
                }
                coeffs.push(r);
            } else if !c.is_zero() {
                unreachable!("zero derivative forces p-power gaps");
            }
        }
        return squarefree_part(&Polynomial::new(&field, coeffs));
    }
    let g = f.gcd(&d);
    let rad = f.divrem(&g).0;
    if g.is_one() {
        rad.monic()
    } else {
        // Factors of multiplicity divisible by p survive in g with the same
        // radical; merge via gcd-free combination.
        let rest = squarefree_part(&g);
        let merged = &rad * &rest.divrem(&rad.gcd(&rest)).0;
        merged.monic()
    }
}

/// Smallest d such that all irreducible factors split over GF(q^d): the lcm of
/// the distinct factor degrees.
pub fn splitting_degree(f: &Polynomial) -> u32 {
    let mut l: u64 = 1;
    for (d, _) in distinct_degree_factor(f) {
        l = lcm(l, d as u64);
    }
    l as u32
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd_u64(a, b) * b
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// All roots of f in its coefficient field, each listed once, sorted by
/// canonical encoding. Deterministic.
pub fn roots(f: &Polynomial) -> Vec<FieldElement> {
    assert!(!f.is_zero());
    let field = f.field().clone();
    let q = field.q();
    // Isolate the product of the distinct linear factors: gcd(x^q - x, f).
    let x = Polynomial::x(&field);
    let xq = x.powmod(q, f);
    let lin = f.gcd(&(&xq - &x));
    let mut out = vec![];
    split_linear(&lin, &mut out);
    out.sort_by_key(|r| r.enc());
    out
}

/// Multiplicity of a as a root of f.
pub fn root_multiplicity(f: &Polynomial, a: &FieldElement) -> usize {
    let mut m = 0;
    let lin = Polynomial::x_minus(a);
    let mut work = f.clone();
    loop {
        let (q, r) = work.divrem(&lin);
        if !r.is_zero() {
            return m;
        }
        m += 1;
        work = q;
        if work.is_zero() {
            return m;
        }
    }
}

fn split_linear(g: &Polynomial, out: &mut Vec<FieldElement>) {
    let field = g.field().clone();
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            // monic would be x + c0/c1; root = -c0/c1
            let c1 = g.coeff(1);
            let c0 = g.coeff(0);
            out.push(-&(&c0 * &c1.inv().unwrap()));
        }
        Some(_) => {
            let q = field.q();
            // Deterministic split: sweep delta over the field in encoding order.
            // Characteristic 2 twists multiplicatively (additive shifts change
            // every root's trace by the same amount and never separate).
            for delta_enc in 1..q {
                let delta = field.from_enc(delta_enc);
                let h = if field.p() == 2 {
                    // Trace polynomial of delta*x: T(u) = u + u^2 + ... + u^(q/2).
                    let twisted = Polynomial::new(&field, vec![field.zero(), delta]);
                    let mut acc = twisted.rem(g);
                    let mut pw = acc.clone();
                    let mut e = 2u64;
                    while e <= q / 2 {
                        pw = (&pw * &pw).rem(g);
                        acc = &acc + &pw;
                        e *= 2;
                    }
                    acc
                } else {
                    let shifted = Polynomial::new(&field, vec![delta, field.one()]);
                    let e = (q - 1) / 2;
                    let pe = shifted.powmod(e, g);
                    &pe - &Polynomial::one(&field)
                };
                let d = g.gcd(&h);
                let dd = d.degree().unwrap_or(0);
                if dd > 0 && dd < g.degree().unwrap() {
                    let rest = g.divrem(&d).0;
                    split_linear(&d, out);
                    split_linear(&rest, out);
                    return;
                }
            }
            unreachable!("split of a product of distinct linear factors always succeeds");
        }
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = self.field.zero();
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&z);
                let b = rhs.coeffs.get(i).unwrap_or(&z);
                a + b
            })
            .collect();
        Polynomial::new(&self.field, coeffs)
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = self.field.zero();
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&z);
                let b = rhs.coeffs.get(i).unwrap_or(&z);
                a - b
            })
            .collect();
        Polynomial::new(&self.field, coeffs)
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(&self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Polynomial::new(&self.field, coeffs)
    }
}
