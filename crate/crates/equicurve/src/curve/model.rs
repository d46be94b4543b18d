//! Hyperelliptic curve models y^2 = f(x) (odd characteristic) and
//! y^2 - h(x) y = f(x) (characteristic 2), with validation, genus, and
//! base change to extension fields.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::field::{Field, FieldElement};
use crate::algebra::poly::{distinct_degree_factor, roots, Polynomial};
use crate::algebra::ratfun::RatFun;
use crate::curve::asred::{reduce_at, AsReduction, XPoint};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ModelForm {
    OddChar { f: Polynomial },
    Char2 { h: Polynomial, f: Polynomial },
}

/// Behaviour of the curve over x = infinity (geometric, field-independent).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfinityKind {
    /// One place, ramification index 2.
    Ramified,
    /// Two places over the algebraic closure (rational over the model's field
    /// or a quadratic extension).
    Split,
}

pub(crate) struct ModelInner {
    field: Field,
    form: ModelForm,
    genus: u64,
    infinity: InfinityKind,
    /// Characteristic 2 only: w = f / h^2 and its reductions.
    char2: Option<Char2Data>,
}

pub(crate) struct Char2Data {
    /// Reduction at infinity.
    pub inf: AsReduction,
    /// Reduction at each root of h rational over the model's field, keyed by
    /// the root's encoding.
    pub finite: BTreeMap<u64, AsReduction>,
}

/// Cheap clonable handle to a validated curve model.
#[derive(Clone)]
pub struct HyperellipticModel(pub(crate) Arc<ModelInner>);

impl PartialEq for HyperellipticModel {
    fn eq(&self, other: &Self) -> bool {
        self.0.field == other.0.field && self.0.form == other.0.form
    }
}
impl Eq for HyperellipticModel {}

impl std::fmt::Debug for HyperellipticModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.form() {
            ModelForm::OddChar { f: ff } => write!(
                f,
                "y^2 = {:?} over GF({}^{}), genus {}",
                ff,
                self.field().p(),
                self.field().k(),
                self.genus()
            ),
            ModelForm::Char2 { h, f: ff } => write!(
                f,
                "y^2 - ({:?})y = {:?} over GF(2^{}), genus {}",
                h,
                ff,
                self.field().k(),
                self.genus()
            ),
        }
    }
}

impl HyperellipticModel {
    /// Validates and constructs an odd-characteristic model y^2 = f(x).
    /// Requires genus >= 2 (deg f >= 5).
    pub fn new_odd(field: &Field, f: Polynomial) -> Result<HyperellipticModel> {
        let g = Self::genus_of_odd(field, &f)?;
        if g < 2 {
            return Err(Error::GenusTooSmall(g as i64));
        }
        let infinity = if f.degree().unwrap() % 2 == 1 {
            InfinityKind::Ramified
        } else {
            InfinityKind::Split
        };
        Ok(HyperellipticModel(Arc::new(ModelInner {
            field: field.clone(),
            form: ModelForm::OddChar { f },
            genus: g,
            infinity,
            char2: None,
        })))
    }

    /// Genus of y^2 = f(x) without the genus >= 2 gate: smoothness plus the
    /// degree formula g = ceil(deg f / 2) - 1.
    pub fn genus_of_odd(field: &Field, f: &Polynomial) -> Result<u64> {
        if field.p() == 2 {
            return Err(Error::WrongCharacteristic);
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !f.is_squarefree()? {
            return Err(Error::NotSmooth("f has a repeated zero".into()));
        }
        let d = f.degree().unwrap() as u64;
        if d < 3 {
            return Ok(0);
        }
        Ok(d.div_ceil(2) - 1)
    }

    /// Validates and constructs a characteristic-2 model y^2 - h(x) y = f(x).
    /// Requires genus >= 2.
    pub fn new_char2(field: &Field, h: Polynomial, f: Polynomial) -> Result<HyperellipticModel> {
        let g = Self::genus_of_char2(field, &h, &f)?;
        if g < 2 {
            return Err(Error::GenusTooSmall(g as i64));
        }
        Self::build_char2(field, h, f, g)
    }

    fn build_char2(
        field: &Field,
        h: Polynomial,
        f: Polynomial,
        g: u64,
    ) -> Result<HyperellipticModel> {
        let w = RatFun::new(f.clone(), &h * &h);
        let inf = reduce_at(&w, &XPoint::Infinity)?;
        let infinity = if inf.is_ramified() {
            InfinityKind::Ramified
        } else {
            InfinityKind::Split
        };
        let mut finite = BTreeMap::new();
        for a in roots(&h) {
            let red = reduce_at(&w, &XPoint::Finite(a.clone()))?;
            debug_assert!(red.is_ramified(), "smooth models ramify at zeros of h");
            finite.insert(a.enc(), red);
        }
        Ok(HyperellipticModel(Arc::new(ModelInner {
            field: field.clone(),
            form: ModelForm::Char2 { h, f },
            genus: g,
            infinity,
            char2: Some(Char2Data { inf, finite }),
        })))
    }

    /// Genus of y^2 - h y = f in characteristic 2 without the genus >= 2 gate.
    ///
    /// Smoothness asks that h'^2 f + f'^2 and h share no zero over the closure
    /// (checked by a gcd, which commutes with base extension). The genus comes
    /// from the degree of the ramification divisor: every zero of h, and
    /// possibly infinity, carries delta = N + 1 with N the odd jump of the
    /// reduced Artin-Schreier equation, and 2g + 2 = deg R.
    pub fn genus_of_char2(field: &Field, h: &Polynomial, f: &Polynomial) -> Result<u64> {
        if field.p() != 2 {
            return Err(Error::WrongCharacteristic);
        }
        if f.is_zero() || h.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        // Smoothness: gcd(h'^2 f + f'^2, h) constant, with gcd(0, h) = h.
        let hp = h.derivative();
        let fp = f.derivative();
        let disc = &(&(&hp * &hp) * f) + &(&fp * &fp);
        let g = disc.gcd(h);
        if g.degree().map_or(h.degree() != Some(0), |d| d > 0) {
            return Err(Error::NotSmooth(
                "h'^2 f + f'^2 and h share a zero".into(),
            ));
        }
        let w = RatFun::new(f.clone(), h * h);
        let mut deg_r: u64 = 0;
        // Finite branch points: the zeros of h over the closure, grouped by
        // the degree of their irreducible factor.
        for (d, part) in distinct_degree_factor(h) {
            if d == 1 {
                for a in roots(&part) {
                    let red = reduce_at(&w, &XPoint::Finite(a))?;
                    let delta = red
                        .delta()
                        .ok_or_else(|| Error::NotSmooth("unramified zero of h".into()))?;
                    deg_r += delta;
                }
            } else {
                let ext = field.extension(d as u32)?;
                let w_ext = embed_ratfun(&w, field, &ext)?;
                let part_ext = embed_poly(&part, field, &ext)?;
                for a in roots(&part_ext) {
                    let red = reduce_at(&w_ext, &XPoint::Finite(a))?;
                    let delta = red
                        .delta()
                        .ok_or_else(|| Error::NotSmooth("unramified zero of h".into()))?;
                    deg_r += delta;
                }
            }
        }
        let inf = reduce_at(&w, &XPoint::Infinity)?;
        if let Some(delta) = inf.delta() {
            deg_r += delta;
        }
        if deg_r % 2 != 0 || deg_r < 2 {
            return Err(Error::HurwitzInconsistent(format!(
                "ramification degree {} is not of the form 2g+2",
                deg_r
            )));
        }
        let g = deg_r / 2 - 1;
        // Standard-form degree bounds.
        if f.degree().unwrap() as u64 > 2 * g + 2 {
            return Err(Error::HurwitzInconsistent(format!(
                "deg f = {} exceeds 2g+2 = {}",
                f.degree().unwrap(),
                2 * g + 2
            )));
        }
        if h.degree().unwrap() as u64 > g + 1 {
            return Err(Error::HurwitzInconsistent(format!(
                "deg h = {} exceeds g+1 = {}",
                h.degree().unwrap(),
                g + 1
            )));
        }
        Ok(g)
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn form(&self) -> &ModelForm {
        &self.0.form
    }

    pub fn genus(&self) -> u64 {
        self.0.genus
    }

    pub fn infinity_kind(&self) -> &InfinityKind {
        &self.0.infinity
    }

    pub fn f(&self) -> &Polynomial {
        match &self.0.form {
            ModelForm::OddChar { f } => f,
            ModelForm::Char2 { f, .. } => f,
        }
    }

    /// h(x) in characteristic 2; None otherwise.
    pub fn h(&self) -> Option<&Polynomial> {
        match &self.0.form {
            ModelForm::OddChar { .. } => None,
            ModelForm::Char2 { h, .. } => Some(h),
        }
    }

    pub fn is_char2(&self) -> bool {
        matches!(self.0.form, ModelForm::Char2 { .. })
    }

    pub(crate) fn char2_data(&self) -> &Char2Data {
        self.0.char2.as_ref().expect("characteristic-2 model")
    }

    /// Default series precision (term count) for local expansions: 4g + 8.
    pub fn default_prec(&self) -> usize {
        (4 * self.0.genus + 8) as usize
    }

    /// Hard cap on series precision: 16 * (4g + 8).
    pub fn prec_cap(&self) -> usize {
        16 * self.default_prec()
    }

    /// The same curve over GF(q^d).
    pub fn base_change(&self, d: u32) -> Result<HyperellipticModel> {
        if d == 1 {
            return Ok(self.clone());
        }
        let ext = self.0.field.extension(d)?;
        let out = match &self.0.form {
            ModelForm::OddChar { f } => {
                HyperellipticModel::new_odd(&ext, embed_poly(f, &self.0.field, &ext)?)?
            }
            ModelForm::Char2 { h, f } => HyperellipticModel::new_char2(
                &ext,
                embed_poly(h, &self.0.field, &ext)?,
                embed_poly(f, &self.0.field, &ext)?,
            )?,
        };
        debug_assert_eq!(out.genus(), self.genus(), "genus is geometric");
        Ok(out)
    }

    /// Reads a curve from its JSON description.
    pub fn from_json(text: &str) -> Result<HyperellipticModel> {
        let dto: CurveJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        dto.build()
    }

    /// Canonical JSON: minimal-length coefficient vectors, entries in [0, q).
    pub fn to_json(&self) -> String {
        let enc = |p: &Polynomial| -> Vec<i64> {
            p.coeffs().iter().map(|c| c.enc() as i64).collect()
        };
        let dto = match &self.0.form {
            ModelForm::OddChar { f } => CurveJson {
                p: self.0.field.p(),
                k: self.0.field.k(),
                model: "odd".into(),
                f: enc(f),
                h: None,
            },
            ModelForm::Char2 { h, f } => CurveJson {
                p: self.0.field.p(),
                k: self.0.field.k(),
                model: "char2".into(),
                f: enc(f),
                h: Some(enc(h)),
            },
        };
        serde_json::to_string(&dto).expect("serializable")
    }
}

#[derive(Serialize, Deserialize)]
pub struct CurveJson {
    pub p: u64,
    #[serde(default = "default_k")]
    pub k: u32,
    pub model: String,
    pub f: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<i64>>,
}

fn default_k() -> u32 {
    1
}

impl CurveJson {
    pub fn build(&self) -> Result<HyperellipticModel> {
        let field = Field::new(self.p, self.k)?;
        let parse_poly = |coeffs: &[i64]| -> Result<Polynomial> {
            if self.k == 1 {
                Ok(Polynomial::from_ints(&field, coeffs))
            } else {
                // Extension coefficients are canonical encodings in [0, q).
                let encs: Result<Vec<u64>> = coeffs
                    .iter()
                    .map(|&c| {
                        u64::try_from(c)
                            .ok()
                            .filter(|&e| e < field.q())
                            .ok_or_else(|| {
                                Error::Parse(format!("coefficient {} out of range", c))
                            })
                    })
                    .collect();
                Ok(Polynomial::from_encs(&field, &encs?))
            }
        };
        let f = parse_poly(&self.f)?;
        match self.model.as_str() {
            "odd" => HyperellipticModel::new_odd(&field, f),
            "char2" => {
                let h = parse_poly(
                    self.h
                        .as_ref()
                        .ok_or_else(|| Error::Parse("char2 model requires h".into()))?,
                )?;
                HyperellipticModel::new_char2(&field, h, f)
            }
            other => Err(Error::Parse(format!("unknown model kind {:?}", other))),
        }
    }
}

pub(crate) fn embed_poly(p: &Polynomial, from: &Field, to: &Field) -> Result<Polynomial> {
    let coeffs: Result<Vec<FieldElement>> =
        p.coeffs().iter().map(|c| from.embed(c, to)).collect();
    Ok(Polynomial::new(to, coeffs?))
}

pub(crate) fn embed_ratfun(r: &RatFun, from: &Field, to: &Field) -> Result<RatFun> {
    Ok(RatFun::new(
        embed_poly(r.num(), from, to)?,
        embed_poly(r.den(), from, to)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c1_genus_two() {
        let f7 = Field::prime(7).unwrap();
        let f = Polynomial::from_ints(&f7, &[-1, 0, 0, 0, 0, 0, 1]);
        let m = HyperellipticModel::new_odd(&f7, f).unwrap();
        assert_eq!(m.genus(), 2);
        assert_eq!(*m.infinity_kind(), InfinityKind::Split);
    }

    #[test]
    fn c2_genus_two() {
        let f2 = Field::prime(2).unwrap();
        let m = HyperellipticModel::new_char2(
            &f2,
            Polynomial::one(&f2),
            Polynomial::from_ints(&f2, &[0, 0, 0, 0, 0, 1]),
        )
        .unwrap();
        assert_eq!(m.genus(), 2);
        assert_eq!(*m.infinity_kind(), InfinityKind::Ramified);
        let data = m.char2_data();
        assert_eq!(data.inf.jump, Some(5));
    }

    #[test]
    fn artin_schreier_genus_sweep() {
        // y^2 - y = x^r has genus (r-1)/2 for odd r.
        let f2 = Field::prime(2).unwrap();
        for r in [3u64, 5, 7, 9, 11] {
            let mut coeffs = vec![0i64; r as usize + 1];
            coeffs[r as usize] = 1;
            let f = Polynomial::from_ints(&f2, &coeffs);
            let g = HyperellipticModel::genus_of_char2(&f2, &Polynomial::one(&f2), &f).unwrap();
            assert_eq!(g, (r - 1) / 2, "r = {}", r);
        }
        // The full constructor rejects r = 3 (genus 1).
        let f3 = Polynomial::from_ints(&f2, &[0, 0, 0, 1]);
        assert_eq!(
            HyperellipticModel::new_char2(&f2, Polynomial::one(&f2), f3).unwrap_err(),
            Error::GenusTooSmall(1)
        );
    }

    #[test]
    fn repeated_zero_not_smooth() {
        let f7 = Field::prime(7).unwrap();
        // (x-1)^2 (x-2)(x-3)(x-4)(x-5)
        let mut f = Polynomial::x_minus(&f7.from_int(1));
        f = &f * &Polynomial::x_minus(&f7.from_int(1));
        for a in 2..=5 {
            f = &f * &Polynomial::x_minus(&f7.from_int(a));
        }
        assert!(matches!(
            HyperellipticModel::new_odd(&f7, f).unwrap_err(),
            Error::NotSmooth(_)
        ));
    }

    #[test]
    fn wrong_characteristic_rejected() {
        let f2 = Field::prime(2).unwrap();
        let f = Polynomial::from_ints(&f2, &[1, 1, 0, 0, 0, 1]);
        assert_eq!(
            HyperellipticModel::new_odd(&f2, f).unwrap_err(),
            Error::WrongCharacteristic
        );
    }

    #[test]
    fn char2_model_with_nontrivial_h() {
        // y^2 - x y = x^5 + x over GF(2): h = x, f = x^5 + x.
        // h'^2 f + f'^2 = f + (x^4+1)^2 = x^5 + x + x^8 + 1; at x=0 this is 1,
        // so no common zero with h = x.
        let f2 = Field::prime(2).unwrap();
        let h = Polynomial::x(&f2);
        let f = Polynomial::from_ints(&f2, &[0, 1, 0, 0, 0, 1]);
        let m = HyperellipticModel::new_char2(&f2, h, f).unwrap();
        // w = (x^5+x)/x^2 has a pole of order 1 at 0 (odd, jump 1, delta 2)
        // and at infinity v(w) = -3 (jump 3, delta 4): deg R = 6, genus 2.
        assert_eq!(m.genus(), 2);
    }

    #[test]
    fn json_roundtrip() {
        let m = HyperellipticModel::from_json(
            r#"{"p":7,"k":1,"model":"odd","f":[-1,0,0,0,0,0,1]}"#,
        )
        .unwrap();
        assert_eq!(m.genus(), 2);
        let canon = m.to_json();
        assert_eq!(canon, r#"{"p":7,"k":1,"model":"odd","f":[6,0,0,0,0,0,1]}"#);
        let m2 = HyperellipticModel::from_json(&canon).unwrap();
        assert_eq!(m, m2);

        let c2 = HyperellipticModel::from_json(
            r#"{"p":2,"k":1,"model":"char2","h":[1],"f":[0,0,0,0,0,1]}"#,
        )
        .unwrap();
        assert_eq!(c2.genus(), 2);
    }

    #[test]
    fn base_change_preserves_genus() {
        let m = HyperellipticModel::from_json(
            r#"{"p":7,"model":"odd","f":[-1,0,0,0,0,0,1]}"#,
        )
        .unwrap();
        let m49 = m.base_change(2).unwrap();
        assert_eq!(m49.genus(), 2);
        assert_eq!(m49.field().q(), 49);
    }
}
