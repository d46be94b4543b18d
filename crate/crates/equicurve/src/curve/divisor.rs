//! Divisors: finite formal sums of places with integer coefficients.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::curve::model::HyperellipticModel;
use crate::curve::place::{parse_place_id, place_id, PlaceKey};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Divisor {
    entries: BTreeMap<PlaceKey, i64>,
}

impl Divisor {
    pub fn zero() -> Divisor {
        Divisor::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (PlaceKey, i64)>) -> Divisor {
        let mut d = Divisor::zero();
        for (k, c) in entries {
            d.add_place(k, c);
        }
        d
    }

    pub fn single(key: PlaceKey, coeff: i64) -> Divisor {
        Divisor::from_entries([(key, coeff)])
    }

    pub fn add_place(&mut self, key: PlaceKey, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.entries.entry(key.clone()).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.entries.remove(&key);
        }
    }

    pub fn coeff(&self, key: &PlaceKey) -> i64 {
        self.entries.get(key).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&PlaceKey, i64)> {
        self.entries.iter().map(|(k, &v)| (k, v))
    }

    pub fn support(&self) -> impl Iterator<Item = &PlaceKey> {
        self.entries.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// All places are degree 1 over the working field, so the degree is the
    /// coefficient sum.
    pub fn degree(&self) -> i64 {
        self.entries.values().sum()
    }

    pub fn add(&self, rhs: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (k, c) in rhs.entries() {
            out.add_place(k.clone(), c);
        }
        out
    }

    pub fn sub(&self, rhs: &Divisor) -> Divisor {
        self.add(&rhs.scale(-1))
    }

    pub fn scale(&self, n: i64) -> Divisor {
        if n == 0 {
            return Divisor::zero();
        }
        Divisor {
            entries: self.entries.iter().map(|(k, c)| (k.clone(), c * n)).collect(),
        }
    }

    pub fn is_effective(&self) -> bool {
        self.entries.values().all(|&c| c >= 0)
    }

    /// The x-coordinates (encodings) in the finite support, deduplicated.
    pub fn finite_x_support(&self) -> Vec<u64> {
        let mut xs: Vec<u64> = self
            .entries
            .keys()
            .filter_map(|k| match k {
                PlaceKey::Finite { a, .. } => Some(*a),
                _ => None,
            })
            .collect();
        xs.sort_unstable();
        xs.dedup();
        xs
    }

    pub fn has_infinite_support(&self) -> bool {
        self.entries
            .keys()
            .any(|k| !matches!(k, PlaceKey::Finite { .. }))
    }

    /// JSON per the divisor wire format: a list of {place, coeff} records with
    /// canonical place ids, in canonical order.
    pub fn to_json(&self, model: &HyperellipticModel) -> Result<String> {
        let recs: Result<Vec<DivisorEntryJson>> = self
            .entries()
            .map(|(k, c)| {
                Ok(DivisorEntryJson {
                    place: place_id(model, k)?,
                    coeff: c,
                })
            })
            .collect();
        serde_json::to_string(&recs?).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json(model: &HyperellipticModel, text: &str) -> Result<Divisor> {
        let recs: Vec<DivisorEntryJson> =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut d = Divisor::zero();
        for r in recs {
            let key = parse_place_id(model, &r.place)?;
            model.place(&key)?; // validate against the curve
            d.add_place(key, r.coeff);
        }
        Ok(d)
    }
}

#[derive(Serialize, Deserialize)]
pub struct DivisorEntryJson {
    pub place: String,
    pub coeff: i64,
}

impl HyperellipticModel {
    /// The pullback of a point of the x-line: x^*([a]).
    pub fn pullback_divisor(&self, at: &crate::curve::asred::XPoint) -> Result<Divisor> {
        let places = self.places_over(at)?;
        let mut d = Divisor::zero();
        for p in places {
            d.add_place(p.key, p.e as i64);
        }
        Ok(d)
    }

    /// D_infinity = x^*([infinity]).
    pub fn d_infinity(&self) -> Result<Divisor> {
        self.pullback_divisor(&crate::curve::asred::XPoint::Infinity)
    }

    /// D_0 = x^*([0]).
    pub fn d_zero(&self) -> Result<Divisor> {
        self.pullback_divisor(&crate::curve::asred::XPoint::Finite(self.field().zero()))
    }

    /// Sum over the infinite places with coefficient 1 each (for a ramified
    /// infinity this is [P_inf], of degree 1, not the pullback).
    pub fn infinite_places_divisor(&self) -> Result<Divisor> {
        let mut d = Divisor::zero();
        for p in self.places_over(&crate::curve::asred::XPoint::Infinity)? {
            d.add_place(p.key, 1);
        }
        Ok(d)
    }

    /// True when the divisor's support is closed under the hyperelliptic
    /// involution with matching coefficients.
    pub fn divisor_is_sigma_invariant(&self, d: &Divisor) -> Result<bool> {
        let sigma = crate::curve::automorphism::CurveAutomorphism::hyperelliptic_involution(self);
        for (k, c) in d.entries() {
            let img = sigma.place_image_key(k)?;
            if d.coeff(&img) != c {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Degree of the pullback of one x-line point (2 for a ramified point and
    /// for a rational split pair).
    pub fn fiber_degree(&self) -> i64 {
        2
    }
}

/// Convenience: e_P for a key without resolving the whole place.
pub fn ram_index(model: &HyperellipticModel, key: &PlaceKey) -> Result<u32> {
    Ok(model.place(key)?.e)
}

/// Builds a divisor supported at infinity: n * D_infinity, split or not.
pub fn n_d_infinity(model: &HyperellipticModel, n: i64) -> Result<Divisor> {
    Ok(model.d_infinity()?.scale(n))
}

impl HyperellipticModel {
    /// Embeds a divisor into a base-changed model (keys re-encode through the
    /// field embedding).
    pub fn embed_divisor(&self, d: &Divisor, target: &HyperellipticModel) -> Result<Divisor> {
        let from = self.field();
        let to = target.field();
        let mut out = Divisor::zero();
        for (k, c) in d.entries() {
            let nk = match k {
                PlaceKey::Finite { a, y } => PlaceKey::Finite {
                    a: from.embed(&from.from_enc(*a), to)?.enc(),
                    y: from.embed(&from.from_enc(*y), to)?.enc(),
                },
                PlaceKey::InfRam => PlaceKey::InfRam,
                PlaceKey::InfSplit { label } => PlaceKey::InfSplit {
                    label: from.embed(&from.from_enc(*label), to)?.enc(),
                },
            };
            target.place(&nk)?;
            out.add_place(nk, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Field;
    use crate::algebra::poly::Polynomial;

    fn c1() -> HyperellipticModel {
        let f7 = Field::prime(7).unwrap();
        HyperellipticModel::new_odd(&f7, Polynomial::from_ints(&f7, &[-1, 0, 0, 0, 0, 0, 1]))
            .unwrap()
    }

    #[test]
    fn d_infinity_degree_two() {
        let m = c1();
        let d = m.d_infinity().unwrap();
        assert_eq!(d.degree(), 2);
        assert_eq!(d.entries().count(), 2);
    }

    #[test]
    fn divisor_json_roundtrip() {
        let m = c1();
        let d = Divisor::from_entries([
            (PlaceKey::Finite { a: 1, y: 0 }, 3),
            (PlaceKey::InfSplit { label: 1 }, -2),
        ]);
        let j = d.to_json(&m).unwrap();
        assert_eq!(Divisor::from_json(&m, &j).unwrap(), d);
        assert!(j.contains("fin:a=1:y=0"));
        assert!(j.contains("inf:+"));
    }

    #[test]
    fn sigma_invariance() {
        let m = c1();
        let di = m.d_infinity().unwrap();
        assert!(m.divisor_is_sigma_invariant(&di).unwrap());
        let one_branch = Divisor::single(PlaceKey::InfSplit { label: 1 }, 1);
        assert!(!m.divisor_is_sigma_invariant(&one_branch).unwrap());
        let w = Divisor::single(PlaceKey::Finite { a: 2, y: 0 }, 5);
        assert!(m.divisor_is_sigma_invariant(&w).unwrap());
    }
}
