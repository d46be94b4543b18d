//! Places of the function field, resolved as degree-1 points over the model's
//! working field.
//!
//! A place is identified by a `PlaceKey`: finite places by the x-coordinate
//! and a y-label, infinite places by a branch label or the single ramified
//! point. Non-rational places are never materialized; callers base-change the
//! model until the data they need becomes rational (a quadratic extension
//! always suffices for a single split point).

use crate::algebra::field::FieldElement;
use crate::curve::asred::XPoint;
use crate::curve::model::{HyperellipticModel, InfinityKind, ModelForm};
use crate::error::{Error, Result};

/// Stable identity of a place over the model's working field.
///
/// The ordering (finite by (x, y), then split infinite by label, then the
/// ramified infinite place) fixes the canonical evaluation order everywhere.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlaceKey {
    Finite { a: u64, y: u64 },
    InfSplit { label: u64 },
    InfRam,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Place {
    pub key: PlaceKey,
    /// Ramification index over the x-line, 1 or 2.
    pub e: u32,
    /// Residue degree over the working field (always 1 here).
    pub degree: u32,
}

impl Place {
    pub fn is_ramified(&self) -> bool {
        self.e == 2
    }

    pub fn is_infinite(&self) -> bool {
        !matches!(self.key, PlaceKey::Finite { .. })
    }

    /// x-coordinate for finite places.
    pub fn x_of(&self, model: &HyperellipticModel) -> Option<FieldElement> {
        match &self.key {
            PlaceKey::Finite { a, .. } => Some(model.field().from_enc(*a)),
            _ => None,
        }
    }

    /// y-value for finite places.
    pub fn y_of(&self, model: &HyperellipticModel) -> Option<FieldElement> {
        match &self.key {
            PlaceKey::Finite { y, .. } => Some(model.field().from_enc(*y)),
            _ => None,
        }
    }
}

impl HyperellipticModel {
    /// Resolves a key to a place, validating it against the model.
    pub fn place(&self, key: &PlaceKey) -> Result<Place> {
        let field = self.field();
        match key {
            PlaceKey::Finite { a, y } => {
                if *a >= field.q() || *y >= field.q() {
                    return Err(Error::Parse("place coordinate out of range".into()));
                }
                let av = field.from_enc(*a);
                let yv = field.from_enc(*y);
                let fa = self.f().eval(&av);
                match self.form() {
                    ModelForm::OddChar { .. } => {
                        if &yv * &yv != fa {
                            return Err(Error::Parse(format!(
                                "({}, {}) is not on the curve",
                                a, y
                            )));
                        }
                        let e = if yv.is_zero() { 2 } else { 1 };
                        Ok(Place {
                            key: key.clone(),
                            e,
                            degree: 1,
                        })
                    }
                    ModelForm::Char2 { h, .. } => {
                        let ha = h.eval(&av);
                        if &(&(&yv * &yv) - &(&ha * &yv)) != &fa {
                            return Err(Error::Parse(format!(
                                "({}, {}) is not on the curve",
                                a, y
                            )));
                        }
                        let e = if ha.is_zero() { 2 } else { 1 };
                        Ok(Place {
                            key: key.clone(),
                            e,
                            degree: 1,
                        })
                    }
                }
            }
            PlaceKey::InfSplit { label } => {
                if *self.infinity_kind() != InfinityKind::Split {
                    return Err(Error::Parse("infinity is ramified on this curve".into()));
                }
                let labels = self.infinite_labels()?;
                if !labels.iter().any(|l| l.enc() == *label) {
                    return Err(Error::Parse(format!("bad infinite branch label {}", label)));
                }
                Ok(Place {
                    key: key.clone(),
                    e: 1,
                    degree: 1,
                })
            }
            PlaceKey::InfRam => {
                if *self.infinity_kind() != InfinityKind::Ramified {
                    return Err(Error::Parse("infinity splits on this curve".into()));
                }
                Ok(Place {
                    key: key.clone(),
                    e: 2,
                    degree: 1,
                })
            }
        }
    }

    /// The two branch labels at a split infinity, sorted by encoding.
    /// Odd characteristic: the square roots of the leading coefficient of f
    /// (the value of y/x^{g+1}). Characteristic 2: the two residues of the
    /// reduced Artin-Schreier variable. Errors with NeedsExtension(2) when
    /// they are not rational.
    pub fn infinite_labels(&self) -> Result<Vec<FieldElement>> {
        debug_assert_eq!(*self.infinity_kind(), InfinityKind::Split);
        match self.form() {
            ModelForm::OddChar { f } => {
                let lc = f.leading().unwrap().clone();
                match lc.sqrt() {
                    Some(s) => {
                        let mut v = vec![s.clone(), -&s];
                        v.sort_by_key(|e| e.enc());
                        Ok(v)
                    }
                    None => Err(Error::NeedsExtension(2)),
                }
            }
            ModelForm::Char2 { .. } => {
                let data = self.char2_data();
                let wred = &data.inf.reduced;
                let c = if wred.is_zero() || wred.val_at_inf()? > 0 {
                    self.field().zero()
                } else {
                    wred.leading_at_inf()?
                };
                match c.artin_schreier_solve() {
                    Some(z) => {
                        let mut v = vec![z.clone(), &z + &self.field().one()];
                        v.sort_by_key(|e| e.enc());
                        Ok(v)
                    }
                    None => Err(Error::NeedsExtension(2)),
                }
            }
        }
    }

    /// All places over the given point of the projective x-line: one ramified
    /// place, or the two places of a split point. A non-split (inert) point
    /// reports NeedsExtension(2).
    pub fn places_over(&self, at: &XPoint) -> Result<Vec<Place>> {
        let field = self.field();
        match at {
            XPoint::Finite(a) => {
                debug_assert_eq!(a.field(), field);
                let fa = self.f().eval(a);
                match self.form() {
                    ModelForm::OddChar { .. } => {
                        if fa.is_zero() {
                            return Ok(vec![self.place(&PlaceKey::Finite {
                                a: a.enc(),
                                y: 0,
                            })?]);
                        }
                        match fa.sqrt() {
                            None => Err(Error::NeedsExtension(2)),
                            Some(r) => {
                                let mut ys = vec![r.clone(), -&r];
                                ys.sort_by_key(|e| e.enc());
                                ys.iter()
                                    .map(|y| {
                                        self.place(&PlaceKey::Finite {
                                            a: a.enc(),
                                            y: y.enc(),
                                        })
                                    })
                                    .collect()
                            }
                        }
                    }
                    ModelForm::Char2 { h, .. } => {
                        let ha = h.eval(a);
                        if ha.is_zero() {
                            // Ramified: the unique y with y^2 = f(a).
                            let y0 = fa.sqrt().expect("squares always exist in char 2");
                            return Ok(vec![self.place(&PlaceKey::Finite {
                                a: a.enc(),
                                y: y0.enc(),
                            })?]);
                        }
                        // y^2 - h(a) y = f(a): substitute y = h(a) z, solve
                        // z^2 + z = f(a)/h(a)^2.
                        let u = &fa * &(&ha * &ha).inv()?;
                        match u.artin_schreier_solve() {
                            None => Err(Error::NeedsExtension(2)),
                            Some(z) => {
                                let y1 = &ha * &z;
                                let y2 = &y1 + &ha;
                                let mut ys = vec![y1, y2];
                                ys.sort_by_key(|e| e.enc());
                                ys.iter()
                                    .map(|y| {
                                        self.place(&PlaceKey::Finite {
                                            a: a.enc(),
                                            y: y.enc(),
                                        })
                                    })
                                    .collect()
                            }
                        }
                    }
                }
            }
            XPoint::Infinity => match self.infinity_kind() {
                InfinityKind::Ramified => Ok(vec![self.place(&PlaceKey::InfRam)?]),
                InfinityKind::Split => {
                    let labels = self.infinite_labels()?;
                    labels
                        .iter()
                        .map(|l| self.place(&PlaceKey::InfSplit { label: l.enc() }))
                        .collect()
                }
            },
        }
    }

    /// All ramified places that are rational over the working field, sorted.
    pub fn ramified_places(&self) -> Result<Vec<Place>> {
        let mut out = vec![];
        let branch_xs: Vec<FieldElement> = match self.form() {
            ModelForm::OddChar { f } => crate::algebra::poly::roots(f),
            ModelForm::Char2 { h, .. } => crate::algebra::poly::roots(h),
        };
        for a in branch_xs {
            out.extend(self.places_over(&XPoint::Finite(a))?);
        }
        if *self.infinity_kind() == InfinityKind::Ramified {
            out.push(self.place(&PlaceKey::InfRam)?);
        }
        out.sort_by(|p, q| p.key.cmp(&q.key));
        Ok(out)
    }

    /// True when every geometric ramified place is rational over the working
    /// field (the branch polynomial splits).
    pub fn ramification_is_rational(&self) -> bool {
        let branch = match self.form() {
            ModelForm::OddChar { f } => f,
            ModelForm::Char2 { h, .. } => h,
        };
        crate::algebra::poly::splitting_degree(branch) == 1
    }

    /// Complete list of degree-1 places over GF(q^ext), together with the
    /// base-changed model they live on. The count matches a naive enumeration
    /// of affine points plus the rational points at infinity.
    pub fn rational_points(&self, ext: u32) -> Result<(HyperellipticModel, Vec<Place>)> {
        let model = self.base_change(ext)?;
        let xs: Vec<FieldElement> = model.field().elements().collect();
        let collect = |a: &FieldElement| -> Vec<Place> {
            match model.places_over(&XPoint::Finite(a.clone())) {
                Ok(places) => places,
                Err(_) => vec![], // inert points contribute no degree-1 places
            }
        };
        let mut places: Vec<Place> = crate::par::flat_map_collect(&xs, collect);
        if let Ok(inf) = model.places_over(&XPoint::Infinity) {
            places.extend(inf);
        }
        places.sort_by(|p, q| p.key.cmp(&q.key));
        Ok((model, places))
    }
}

/// Canonical textual id of a place: "fin:a=<enc>:y=<enc>", "inf:+", "inf:-",
/// "inf:ram". For split infinities "+" is the branch with the smaller label.
pub fn place_id(model: &HyperellipticModel, key: &PlaceKey) -> Result<String> {
    Ok(match key {
        PlaceKey::Finite { a, y } => format!("fin:a={}:y={}", a, y),
        PlaceKey::InfRam => "inf:ram".into(),
        PlaceKey::InfSplit { label } => {
            let labels = model.infinite_labels()?;
            if labels[0].enc() == *label {
                "inf:+".into()
            } else {
                "inf:-".into()
            }
        }
    })
}

pub fn parse_place_id(model: &HyperellipticModel, id: &str) -> Result<PlaceKey> {
    if id == "inf:ram" {
        return Ok(PlaceKey::InfRam);
    }
    if id == "inf:+" || id == "inf:-" {
        let labels = model.infinite_labels()?;
        let label = if id == "inf:+" {
            labels[0].enc()
        } else {
            labels[1].enc()
        };
        return Ok(PlaceKey::InfSplit { label });
    }
    let rest = id
        .strip_prefix("fin:a=")
        .ok_or_else(|| Error::Parse(format!("bad place id {:?}", id)))?;
    let (a_str, y_str) = rest
        .split_once(":y=")
        .ok_or_else(|| Error::Parse(format!("bad place id {:?}", id)))?;
    let a: u64 = a_str
        .parse()
        .map_err(|_| Error::Parse(format!("bad place id {:?}", id)))?;
    let y: u64 = y_str
        .parse()
        .map_err(|_| Error::Parse(format!("bad place id {:?}", id)))?;
    Ok(PlaceKey::Finite { a, y })
}
