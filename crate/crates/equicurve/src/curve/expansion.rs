//! Local expansions of functions at places, valuations, evaluation, and
//! principal divisors.
//!
//! Valuations at ramified places are exact: in odd characteristic the parity
//! split (the x-part has even valuation, the y-part odd) rules out
//! cancellation, and in characteristic 2 the same split holds after passing to
//! the reduced Artin-Schreier variable. At split places functions are expanded
//! as Laurent series with the doubling precision policy.

use crate::algebra::field::FieldElement;
use crate::algebra::poly::Polynomial;
use crate::algebra::ratfun::RatFun;
use crate::algebra::series::{series_artin_schreier_root, series_sqrt, Laurent, PowerSeries};
use crate::curve::asred::XPoint;
use crate::curve::divisor::Divisor;
use crate::curve::function::FunctionRep;
use crate::curve::model::{HyperellipticModel, InfinityKind, ModelForm};
use crate::curve::place::PlaceKey;
use crate::error::{Error, Result};

/// Solves sum_j coeffs[j] z^j = 0 for a series z(t) with z(0) = 0 by Newton
/// iteration. Requires coeffs[0](0) = 0 and coeffs[1](0) != 0 (simple root).
fn newton_series_root(coeffs: &[PowerSeries]) -> Result<PowerSeries> {
    let field = coeffs[0].field().clone();
    let prec = coeffs[0].prec();
    assert!(coeffs.len() >= 2);
    assert!(coeffs[0].coeff(0).is_zero(), "no constant term");
    assert!(!coeffs[1].coeff(0).is_zero(), "simple root required");
    let dcoeffs: Vec<PowerSeries> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, c)| c.scale(&field.from_int(j as i64)))
        .collect();
    let horner = |cs: &[PowerSeries], z: &PowerSeries| -> PowerSeries {
        let mut acc = PowerSeries::zero(&field, prec);
        for c in cs.iter().rev() {
            acc = acc.mul(z);
            acc = acc.add(c);
        }
        acc
    };
    let mut z = PowerSeries::zero(&field, prec);
    for _ in 0..64 {
        let fz = horner(coeffs, &z);
        if fz.is_zero_to_prec() {
            return Ok(z);
        }
        let fpz = horner(&dcoeffs, &z);
        let corr = fz.mul(&fpz.invert()?);
        z = z.sub(&corr);
    }
    Err(Error::PrecisionExhausted(prec))
}

/// f(a + t) as exact polynomial coefficients in the shifted variable.
fn taylor_shift(f: &Polynomial, a: &FieldElement) -> Vec<FieldElement> {
    let field = f.field();
    let inner = Polynomial::new(field, vec![a.clone(), field.one()]);
    let shifted = f.compose(&inner);
    let mut out = shifted.coeffs().to_vec();
    out.resize(f.coeffs().len().max(1), field.zero());
    out
}

/// r(x(t)) when x(t) = a + t: exact, using polynomial shifts.
fn ratfun_at_finite(r: &RatFun, a: &FieldElement, terms: usize) -> Result<Laurent> {
    let field = r.field().clone();
    if r.is_zero() {
        return Ok(Laurent::zero(&field, 0, terms));
    }
    let num = taylor_shift(r.num(), a);
    let den = taylor_shift(r.den(), a);
    let strip = |v: &[FieldElement]| -> (usize, Vec<FieldElement>) {
        let k = v.iter().position(|c| !c.is_zero()).expect("nonzero poly");
        (k, v[k..].to_vec())
    };
    let (vn, nn) = strip(&num);
    let (vd, dd) = strip(&den);
    let ns = PowerSeries::new(&field, nn, terms);
    let ds = PowerSeries::new(&field, dd, terms);
    Ok(Laurent::new(
        vn as i64 - vd as i64,
        ns.mul(&ds.invert()?),
    ))
}

/// r(x) expanded at infinity in t = 1/x: exact via coefficient reversal.
fn ratfun_at_infinity(r: &RatFun, terms: usize) -> Result<Laurent> {
    let field = r.field().clone();
    if r.is_zero() {
        return Ok(Laurent::zero(&field, 0, terms));
    }
    let rev = |p: &Polynomial| -> Vec<FieldElement> {
        let mut v = p.coeffs().to_vec();
        v.reverse();
        v
    };
    let nn = rev(r.num());
    let dd = rev(r.den());
    let ns = PowerSeries::new(&field, nn, terms);
    let ds = PowerSeries::new(&field, dd, terms);
    // num(1/t) = t^{-deg num} rev_num(t), likewise for den.
    let v0 = r.den().deg_i64() - r.num().deg_i64();
    Ok(Laurent::new(v0, ns.mul(&ds.invert()?)))
}

/// r(x(t)) for a general series x(t) with negative or zero valuation parts:
/// Horner over Laurent arithmetic.
fn ratfun_on_laurent(r: &RatFun, x: &Laurent) -> Result<Laurent> {
    let field = r.field().clone();
    let terms = x.ser.prec();
    if r.is_zero() {
        return Ok(Laurent::zero(&field, 0, terms));
    }
    let horner = |p: &Polynomial| -> Laurent {
        let mut acc = Laurent::zero(&field, 0, terms);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(x);
            acc = acc.add(&Laurent::new(0, PowerSeries::constant(c.clone(), terms)));
        }
        acc
    };
    let num = horner(r.num());
    let den = horner(r.den());
    Ok(num.mul(&den.invert()?))
}

/// Local coordinate data: x(t) and y(t) at a place, to `terms` series terms.
pub struct LocalExpansion {
    pub x: Laurent,
    pub y: Laurent,
    /// True when x(t) is exactly a + t or 1/t (rational-function pullbacks can
    /// then use the exact paths).
    exact_x: ExactX,
}

enum ExactX {
    Finite(FieldElement),
    Inverse,
    Series,
}

impl HyperellipticModel {
    /// Expands the coordinate functions at a place.
    pub fn local_expansion(&self, key: &PlaceKey, terms: usize) -> Result<LocalExpansion> {
        let field = self.field().clone();
        let g = self.genus();
        match (self.form(), key) {
            (_, PlaceKey::Finite { a, y }) => {
                let av = field.from_enc(*a);
                let yv = field.from_enc(*y);
                let place = self.place(key)?;
                if place.e == 1 {
                    // t = x - a; lift y.
                    let xs = Laurent::new(
                        0,
                        PowerSeries::new(&field, vec![av.clone(), field.one()], terms),
                    );
                    let fshift = Polynomial::new(&field, taylor_shift(self.f(), &av));
                    let fser = PowerSeries::from_poly(&fshift, terms);
                    let ys = match self.form() {
                        ModelForm::OddChar { .. } => series_sqrt(&fser, &yv)?,
                        ModelForm::Char2 { h, .. } => {
                            let hshift = Polynomial::new(&field, taylor_shift(h, &av));
                            let hser = PowerSeries::from_poly(&hshift, terms);
                            series_artin_schreier_root(&fser, &hser, &yv)?
                        }
                    };
                    Ok(LocalExpansion {
                        x: xs,
                        y: Laurent::new(0, ys),
                        exact_x: ExactX::Finite(av),
                    })
                } else {
                    match self.form() {
                        ModelForm::OddChar { .. } => {
                            // t = y; x = a + xi(t) with f(a + xi) = t^2.
                            let fs = taylor_shift(self.f(), &av);
                            let mut coeffs: Vec<PowerSeries> = fs
                                .iter()
                                .map(|c| PowerSeries::constant(c.clone(), terms))
                                .collect();
                            let t2 = PowerSeries::new(
                                &field,
                                vec![field.zero(), field.zero(), field.one()],
                                terms,
                            );
                            coeffs[0] = coeffs[0].sub(&t2);
                            let xi = newton_series_root(&coeffs)?;
                            let xs = Laurent::new(
                                0,
                                PowerSeries::constant(av.clone(), terms).add(&xi),
                            );
                            let ys = Laurent::new(
                                0,
                                PowerSeries::new(
                                    &field,
                                    vec![field.zero(), field.one()],
                                    terms,
                                ),
                            );
                            Ok(LocalExpansion {
                                x: xs,
                                y: ys,
                                exact_x: ExactX::Series,
                            })
                        }
                        ModelForm::Char2 { h, .. } => {
                            // t = y - y0; x = a + xi(t) from
                            // f(a+xi) + h(a+xi)(y0+t) + (y0+t)^2 = 0.
                            let fs = taylor_shift(self.f(), &av);
                            let hs = taylor_shift(h, &av);
                            let y0t = PowerSeries::new(
                                &field,
                                vec![yv.clone(), field.one()],
                                terms,
                            );
                            let n = fs.len().max(hs.len());
                            let mut coeffs = Vec::with_capacity(n);
                            for j in 0..n {
                                let mut c = PowerSeries::constant(
                                    fs.get(j).cloned().unwrap_or_else(|| field.zero()),
                                    terms,
                                );
                                if let Some(hj) = hs.get(j) {
                                    c = c.add(&y0t.scale(hj));
                                }
                                coeffs.push(c);
                            }
                            // (y0 + t)^2 = y0^2 + t^2 in characteristic 2.
                            let sq = PowerSeries::new(
                                &field,
                                vec![&yv * &yv, field.zero(), field.one()],
                                terms,
                            );
                            coeffs[0] = coeffs[0].add(&sq);
                            let xi = newton_series_root(&coeffs)?;
                            let xs = Laurent::new(
                                0,
                                PowerSeries::constant(av.clone(), terms).add(&xi),
                            );
                            let ys = Laurent::new(
                                0,
                                PowerSeries::new(&field, vec![yv, field.one()], terms),
                            );
                            Ok(LocalExpansion {
                                x: xs,
                                y: ys,
                                exact_x: ExactX::Series,
                            })
                        }
                    }
                }
            }
            (ModelForm::OddChar { f }, PlaceKey::InfSplit { label }) => {
                // t = 1/x; y = t^{-(g+1)} sqrt(rev f)(t).
                let s = field.from_enc(*label);
                let xs = Laurent::new(-1, PowerSeries::constant(field.one(), terms));
                let mut rev = f.coeffs().to_vec();
                rev.reverse();
                let fser = PowerSeries::new(&field, rev, terms);
                let ys = series_sqrt(&fser, &s)?;
                Ok(LocalExpansion {
                    x: xs,
                    y: Laurent::new(-(g as i64 + 1), ys),
                    exact_x: ExactX::Inverse,
                })
            }
            (ModelForm::OddChar { f }, PlaceKey::InfRam) => {
                // t = y / x^{g+1}; z = 1/x solves z G(z) = t^2 with
                // G(z) = sum f_i z^{2g+1-i}.
                let d = f.degree().unwrap(); // 2g + 1
                let mut coeffs: Vec<PowerSeries> = Vec::with_capacity(d + 2);
                let t2 = PowerSeries::new(
                    &field,
                    vec![field.zero(), field.zero(), field.one()],
                    terms,
                );
                coeffs.push(t2.neg());
                for j in 0..=d {
                    coeffs.push(PowerSeries::constant(f.coeff(d - j), terms));
                }
                let z = newton_series_root(&coeffs)?;
                let xs = Laurent::new(0, z).invert()?;
                let ts = Laurent::new(1, PowerSeries::constant(field.one(), terms));
                let ys = ts.mul(&xs.pow(g + 1));
                Ok(LocalExpansion {
                    x: xs,
                    y: ys,
                    exact_x: ExactX::Series,
                })
            }
            (ModelForm::Char2 { h, .. }, PlaceKey::InfSplit { label }) => {
                // t = 1/x; lift the reduced variable from its residue, then
                // y = h(x) (ztilde + U(x)).
                let data = self.char2_data();
                let zres = field.from_enc(*label);
                let xs = Laurent::new(-1, PowerSeries::constant(field.one(), terms));
                let wser = ratfun_at_infinity(&data.inf.reduced, terms)?;
                debug_assert!(wser.v0 >= 0 || wser.valuation().map_or(true, |v| v >= 0));
                let wpos = PowerSeries::new(
                    &field,
                    (0..terms as i64)
                        .map(|e| wser.coeff(e))
                        .collect::<Vec<_>>(),
                    terms,
                );
                let one = PowerSeries::constant(field.one(), terms);
                let zt = series_artin_schreier_root(&wpos, &one, &zres)?;
                let u_at = ratfun_at_infinity(&data.inf.shift, terms)?;
                let h_at = ratfun_at_infinity(&RatFun::from_poly(h.clone()), terms)?;
                let ys = h_at.mul(&Laurent::new(0, zt).add(&u_at));
                Ok(LocalExpansion {
                    x: xs,
                    y: ys,
                    exact_x: ExactX::Inverse,
                })
            }
            (ModelForm::Char2 { h, .. }, PlaceKey::InfRam) => {
                // z = 1/x from  z rev_num(z) + t z^{(N+1)/2} rev_den(z)
                //             + t^2 rev_den(z) = 0,
                // where wtilde = num/den has valuation -N at infinity.
                let data = self.char2_data();
                let n = data.inf.jump.expect("ramified infinity");
                let wt = &data.inf.reduced;
                let mut nrev = wt.num().coeffs().to_vec();
                nrev.reverse();
                let mut drev = wt.den().coeffs().to_vec();
                drev.reverse();
                let half = ((n + 1) / 2) as usize;
                let t1 = PowerSeries::new(&field, vec![field.zero(), field.one()], terms);
                let t2 = PowerSeries::new(
                    &field,
                    vec![field.zero(), field.zero(), field.one()],
                    terms,
                );
                let deg = 1 + nrev.len().max(half + drev.len()).max(2 + drev.len());
                let mut coeffs = vec![PowerSeries::zero(&field, terms); deg];
                for (i, c) in nrev.iter().enumerate() {
                    coeffs[i + 1] = coeffs[i + 1].add(&PowerSeries::constant(c.clone(), terms));
                }
                for (i, c) in drev.iter().enumerate() {
                    coeffs[i + half] = coeffs[i + half].add(&t1.scale(c));
                    coeffs[i] = coeffs[i].add(&t2.scale(c));
                }
                let z = newton_series_root(&coeffs)?;
                let xs = Laurent::new(0, z).invert()?;
                // ztilde = t x^{(N+1)/2}; y = h(x) (ztilde + U(x)).
                let ts = Laurent::new(1, PowerSeries::constant(field.one(), terms));
                let zt = ts.mul(&xs.pow(((n + 1) / 2) as u64));
                let u_at = ratfun_on_laurent(&data.inf.shift, &xs)?;
                let h_at = ratfun_on_laurent(&RatFun::from_poly(h.clone()), &xs)?;
                let ys = h_at.mul(&zt.add(&u_at));
                Ok(LocalExpansion {
                    x: xs,
                    y: ys,
                    exact_x: ExactX::Series,
                })
            }
        }
    }

    /// Expands a function at a place to roughly `terms` known coefficients.
    pub fn expand_function(
        &self,
        key: &PlaceKey,
        u: &FunctionRep,
        terms: usize,
    ) -> Result<Laurent> {
        let le = self.local_expansion(key, terms)?;
        let a_part = match &le.exact_x {
            ExactX::Finite(a) => ratfun_at_finite(u.a_part(), a, terms)?,
            ExactX::Inverse => ratfun_at_infinity(u.a_part(), terms)?,
            ExactX::Series => ratfun_on_laurent(u.a_part(), &le.x)?,
        };
        let b_part = match &le.exact_x {
            ExactX::Finite(a) => ratfun_at_finite(u.b_part(), a, terms)?,
            ExactX::Inverse => ratfun_at_infinity(u.b_part(), terms)?,
            ExactX::Series => ratfun_on_laurent(u.b_part(), &le.x)?,
        };
        Ok(a_part.add(&b_part.mul(&le.y)))
    }

    /// Exact valuation of a nonzero function at a place.
    pub fn valuation(&self, u: &FunctionRep, key: &PlaceKey) -> Result<i64> {
        if u.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let place = self.place(key)?;
        if place.e == 2 {
            return self.valuation_ramified(u, key);
        }
        // Split place: series with the doubling precision policy. An
        // indeterminate intermediate inversion doubles as well.
        let mut terms = self.default_prec();
        loop {
            match self.expand_function(key, u, terms) {
                Ok(lau) => {
                    if let Some(v) = lau.valuation() {
                        return Ok(v);
                    }
                }
                Err(Error::PrecisionExhausted(_)) => {}
                Err(e) => return Err(e),
            }
            terms *= 2;
            if terms > self.prec_cap() {
                return Err(Error::PrecisionExhausted(self.prec_cap()));
            }
        }
    }

    /// Parity-split valuation at a ramified place: the x-part has even
    /// valuation and the y-part (reduced variable in characteristic 2) odd, so
    /// no cancellation can occur.
    fn valuation_ramified(&self, u: &FunctionRep, key: &PlaceKey) -> Result<i64> {
        match self.form() {
            ModelForm::OddChar { .. } => {
                let (va, vb) = match key {
                    PlaceKey::Finite { a, .. } => {
                        let av = self.field().from_enc(*a);
                        let va = if u.a_part().is_zero() {
                            None
                        } else {
                            Some(2 * u.a_part().val_at(&av)?)
                        };
                        // v(y) = 1 at a finite Weierstrass point.
                        let vb = if u.b_part().is_zero() {
                            None
                        } else {
                            Some(2 * u.b_part().val_at(&av)? + 1)
                        };
                        (va, vb)
                    }
                    PlaceKey::InfRam => {
                        let g = self.genus() as i64;
                        let va = if u.a_part().is_zero() {
                            None
                        } else {
                            Some(2 * u.a_part().val_at_inf()?)
                        };
                        // v(y) = -(2g+1) at a ramified infinity.
                        let vb = if u.b_part().is_zero() {
                            None
                        } else {
                            Some(2 * u.b_part().val_at_inf()? - (2 * g + 1))
                        };
                        (va, vb)
                    }
                    PlaceKey::InfSplit { .. } => unreachable!("split place"),
                };
                Ok(va.into_iter().chain(vb).min().expect("nonzero function"))
            }
            ModelForm::Char2 { h, .. } => {
                let data = self.char2_data();
                let (shift, n, at) = match key {
                    PlaceKey::Finite { a, .. } => {
                        let red = data
                            .finite
                            .get(a)
                            .expect("ramified finite place has reduction data");
                        (
                            &red.shift,
                            red.jump.expect("ramified"),
                            XPoint::Finite(self.field().from_enc(*a)),
                        )
                    }
                    PlaceKey::InfRam => (
                        &data.inf.shift,
                        data.inf.jump.expect("ramified"),
                        XPoint::Infinity,
                    ),
                    PlaceKey::InfSplit { .. } => unreachable!("split place"),
                };
                // u = (a + b h U) + (b h) ztilde with v(ztilde) = -N odd.
                let hr = RatFun::from_poly(h.clone());
                let bh = u.b_part() * &hr;
                let xpart = u.a_part() + &(&bh * shift);
                let val_of = |r: &RatFun| -> Result<Option<i64>> {
                    if r.is_zero() {
                        return Ok(None);
                    }
                    Ok(Some(match &at {
                        XPoint::Finite(a) => 2 * r.val_at(a)?,
                        XPoint::Infinity => 2 * r.val_at_inf()?,
                    }))
                };
                let va = val_of(&xpart)?;
                let vb = val_of(&bh)?.map(|v| v - n as i64);
                Ok(va.into_iter().chain(vb).min().expect("nonzero function"))
            }
        }
    }

    /// Value of a function at a place where it is regular.
    pub fn value_at(&self, u: &FunctionRep, key: &PlaceKey) -> Result<FieldElement> {
        if u.is_zero() {
            return Ok(self.field().zero());
        }
        // Fast path: finite place, denominators regular.
        if let PlaceKey::Finite { a, y } = key {
            let av = self.field().from_enc(*a);
            let yv = self.field().from_enc(*y);
            if !u.a_part().den().eval(&av).is_zero() && !u.b_part().den().eval(&av).is_zero() {
                let va = u.a_part().eval(&av)?;
                let vb = u.b_part().eval(&av)?;
                return Ok(&va + &(&vb * &yv));
            }
        }
        let mut terms = self.default_prec();
        loop {
            match self.expand_function(key, u, terms) {
                Ok(lau) => {
                    if lau.abs_prec() >= 1 {
                        for e in lau.v0..0 {
                            if !lau.coeff(e).is_zero() {
                                return Err(Error::ZeroFunction); // pole
                            }
                        }
                        return Ok(lau.coeff(0));
                    }
                    terms = terms * 2 + (1 - lau.abs_prec()).max(0) as usize;
                }
                Err(Error::PrecisionExhausted(_)) => {
                    terms *= 2;
                }
                Err(e) => return Err(e),
            }
            if terms > self.prec_cap() {
                return Err(Error::PrecisionExhausted(self.prec_cap()));
            }
        }
    }

    /// The divisor of a nonzero function. All candidate support places must be
    /// rational over the working field; otherwise NeedsExtension reports the
    /// minimal degree that rationalizes them.
    pub fn principal_divisor(&self, u: &FunctionRep) -> Result<Divisor> {
        if u.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let norm = u.norm();
        // Candidate finite x-coordinates: zeros of the norm numerator and the
        // representation denominators (the affine curve is smooth, so poles
        // are exactly the denominator zeros).
        let mut cand = &norm.num().clone() * u.a_part().den();
        cand = &cand * u.b_part().den();
        let mut needed: u32 = crate::algebra::poly::splitting_degree(&cand);
        // Infinity: needed when the function is nontrivial there and the
        // infinite places are not rational.
        let inf_rational = match self.infinity_kind() {
            InfinityKind::Ramified => true,
            InfinityKind::Split => self.infinite_labels().is_ok(),
        };
        if !inf_rational && norm.val_at_inf()? != 0 {
            needed = lcm_u32(needed, 2);
        }
        if needed > 1 {
            return Err(Error::NeedsExtension(needed));
        }
        let mut div = Divisor::zero();
        for a in crate::algebra::poly::roots(&cand) {
            for p in self.places_over(&XPoint::Finite(a))? {
                let v = self.valuation(u, &p.key)?;
                div.add_place(p.key, v);
            }
        }
        if inf_rational {
            for p in self.places_over(&XPoint::Infinity)? {
                let v = self.valuation(u, &p.key)?;
                div.add_place(p.key, v);
            }
        }
        debug_assert_eq!(div.degree(), 0, "principal divisors have degree 0");
        Ok(div)
    }
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}
