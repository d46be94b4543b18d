//! Ramification data of the quotient map pi: X -> Y = X/G.
//!
//! Profiles come in two modes. Abstract profiles carry (n, g_Y, branch data)
//! and drive every closed-form formula without a curve. Concrete profiles are
//! computed from a curve and an automorphism group: ramification indices are
//! stabilizer orders, and the higher ramification filtration at a fixed place
//! comes from the valuations v_P(phi(t) - t) for a local parameter t.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::poly::Polynomial;
use crate::algebra::ratfun::RatFun;
use crate::curve::automorphism::{verify_group, CurveAutomorphism};
use crate::curve::divisor::Divisor;
use crate::curve::function::FunctionRep;
use crate::curve::model::{HyperellipticModel, InfinityKind, ModelForm};
use crate::curve::place::PlaceKey;
use crate::error::{Error, Result};

/// One branch point of Y: ramification index and the orders of the higher
/// ramification groups G_0, G_1, ... (finite support; tame points stop at G_0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchPoint {
    pub e: u64,
    pub filtration: Vec<u64>,
}

impl BranchPoint {
    pub fn tame(e: u64) -> BranchPoint {
        BranchPoint {
            e,
            filtration: vec![e],
        }
    }

    /// delta = sum_j (ord G_j - 1).
    pub fn delta(&self) -> u64 {
        self.filtration.iter().map(|&o| o - 1).sum()
    }

    pub fn is_tame(&self) -> bool {
        self.filtration.len() == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationProfile {
    pub n: u64,
    pub g_y: u64,
    pub branch: Vec<BranchPoint>,
}

impl RamificationProfile {
    pub fn new(n: u64, g_y: u64, branch: Vec<BranchPoint>) -> Result<RamificationProfile> {
        let p = RamificationProfile { n, g_y, branch };
        p.validate()?;
        Ok(p)
    }

    /// Checks filtration well-formedness, Hurwitz integrality, and returns g_X.
    pub fn validate(&self) -> Result<u64> {
        if self.n == 0 {
            return Err(Error::BadFiltration("group order must be positive".into()));
        }
        for b in &self.branch {
            if b.filtration.is_empty() {
                return Err(Error::BadFiltration("empty filtration".into()));
            }
            if b.filtration[0] != b.e {
                return Err(Error::BadFiltration(
                    "ord(G_0) must equal the ramification index".into(),
                ));
            }
            if b.e < 2 {
                return Err(Error::BadFiltration(
                    "branch points have ramification index >= 2".into(),
                ));
            }
            for w in b.filtration.windows(2) {
                if w[1] > w[0] {
                    return Err(Error::BadFiltration(
                        "filtration orders must be non-increasing".into(),
                    ));
                }
            }
            for &o in &b.filtration {
                if o < 1 || self.n % o != 0 {
                    return Err(Error::BadFiltration(format!(
                        "filtration order {} does not divide n = {}",
                        o, self.n
                    )));
                }
            }
        }
        self.genus_x()
    }

    /// deg R = sum over branch points of (n / e_Q) delta_Q.
    pub fn deg_r(&self) -> u64 {
        self.branch
            .iter()
            .map(|b| (self.n / b.e) * b.delta())
            .sum()
    }

    /// g_X from the Hurwitz formula; errors when it is not a non-negative
    /// integer.
    pub fn genus_x(&self) -> Result<u64> {
        let rhs = self.n as i64 * (2 * self.g_y as i64 - 2) + self.deg_r() as i64;
        // 2 g_X - 2 = rhs
        if rhs % 2 != 0 {
            return Err(Error::HurwitzInconsistent(format!(
                "2g-2 = {} is odd",
                rhs
            )));
        }
        let g2 = rhs / 2 + 1;
        if g2 < 0 {
            return Err(Error::HurwitzInconsistent(format!(
                "genus {} is negative",
                g2
            )));
        }
        Ok(g2 as u64)
    }

    /// True when no branch point is wild.
    pub fn is_tame(&self) -> bool {
        self.branch.iter().all(|b| b.is_tame())
    }

    /// The wild correction sum_P sum_{j>=1} (ord G_j(P) - 1), which lowers the
    /// degree hypothesis of the invariant-dimension formula.
    pub fn wild_correction(&self) -> u64 {
        self.branch
            .iter()
            .map(|b| (self.n / b.e) * (b.delta() - (b.e - 1)))
            .sum()
    }

    /// Branch points above which the cover is wildly ramified (the set S).
    pub fn wild_branch(&self) -> impl Iterator<Item = &BranchPoint> {
        self.branch.iter().filter(|b| !b.is_tame())
    }

    pub fn from_json(text: &str) -> Result<RamificationProfile> {
        let dto: ProfileJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        dto.profile()
    }

    pub fn to_json(&self) -> String {
        let dto = ProfileJson {
            n: self.n,
            g_y: self.g_y,
            branch: self
                .branch
                .iter()
                .map(|b| {
                    if b.is_tame() {
                        BranchJson {
                            e: b.e,
                            filtration: None,
                            tame: Some(true),
                        }
                    } else {
                        BranchJson {
                            e: b.e,
                            filtration: Some(b.filtration.clone()),
                            tame: None,
                        }
                    }
                })
                .collect(),
            divisor: None,
        };
        serde_json::to_string(&dto).expect("serializable")
    }
}

/// A G-invariant divisor described by its Y-side data: one coefficient per
/// branch point (aligned with the profile's branch list) plus coefficients on
/// unramified orbits.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct InvariantDivisorSpec {
    pub branch_coeffs: Vec<i64>,
    /// (coefficient, number of orbits with that coefficient)
    pub free_orbits: Vec<(i64, u64)>,
}

impl InvariantDivisorSpec {
    pub fn degree(&self, profile: &RamificationProfile) -> i64 {
        let mut deg: i64 = 0;
        for (b, &c) in profile.branch.iter().zip(&self.branch_coeffs) {
            deg += (profile.n / b.e) as i64 * c;
        }
        for &(c, count) in &self.free_orbits {
            deg += profile.n as i64 * c * count as i64;
        }
        deg
    }

    /// deg floor(pi_* D / n) = sum_Q floor(n_Q / e_Q) (mathematical floor,
    /// also for negative coefficients).
    pub fn floor_pushforward_degree(&self, profile: &RamificationProfile) -> i64 {
        let mut deg: i64 = 0;
        for (b, &c) in profile.branch.iter().zip(&self.branch_coeffs) {
            deg += c.div_euclid(b.e as i64);
        }
        for &(c, count) in &self.free_orbits {
            deg += c * count as i64;
        }
        deg
    }

    /// sum_Q <n_Q / e_Q> as a rational number (numerator, denominator view is
    /// avoided: returns the sum scaled by lcm-free exact arithmetic over
    /// per-branch fractions with denominator e_Q). The value times 1 is
    /// integral iff every e_Q divides n_Q.
    pub fn fractional_part_sum_times(&self, profile: &RamificationProfile, scale: i64) -> i64 {
        // Returns scale * sum_Q <n_Q/e_Q>, exact when every e_Q divides scale.
        let mut acc: i64 = 0;
        for (b, &c) in profile.branch.iter().zip(&self.branch_coeffs) {
            let e = b.e as i64;
            let frac_num = c.rem_euclid(e); // n_Q mod e_Q in [0, e)
            debug_assert_eq!(scale % e, 0, "scale must clear denominators");
            acc += scale / e * frac_num;
        }
        acc
    }
}

/// Per-place ramification data of a concrete cover.
#[derive(Clone, Debug)]
pub struct RamifiedPlaceData {
    pub key: PlaceKey,
    pub e: u64,
    pub delta: u64,
    pub filtration: Vec<u64>,
    /// Index of the branch point (Y-orbit) this place belongs to.
    pub orbit: usize,
}

/// Full concrete ramification picture of (X, G), possibly after an internal
/// base change that makes every ramified place rational.
pub struct ConcreteRamification {
    pub model: HyperellipticModel,
    pub group: Vec<CurveAutomorphism>,
    pub places: Vec<RamifiedPlaceData>,
    pub profile: RamificationProfile,
}

impl ConcreteRamification {
    /// R = sum delta_P [P].
    pub fn ramification_divisor(&self) -> Divisor {
        let mut d = Divisor::zero();
        for p in &self.places {
            d.add_place(p.key.clone(), p.delta as i64);
        }
        d
    }

    /// K_X = pi^*(K_Y) + R with K_Y = -2 [Q_inf] on Y of genus 0, Q_inf the
    /// image of the infinite places. Requires g_Y = 0.
    pub fn canonical_divisor(&self) -> Result<Divisor> {
        if self.profile.g_y != 0 {
            return Err(Error::QuotientNotRational);
        }
        let inf_orbit = self.orbit_of_infinity()?;
        Ok(self.ramification_divisor().sub(&inf_orbit.scale(2)))
    }

    /// pi^*([Q_inf]): each place in the orbit of the infinite places with its
    /// ramification index over Y.
    fn orbit_of_infinity(&self) -> Result<Divisor> {
        let mut seen: BTreeMap<PlaceKey, i64> = BTreeMap::new();
        let start = self
            .model
            .places_over(&crate::curve::asred::XPoint::Infinity)?;
        let mut frontier: Vec<PlaceKey> = start.into_iter().map(|p| p.key).collect();
        while let Some(k) = frontier.pop() {
            if seen.contains_key(&k) {
                continue;
            }
            let stab = self
                .group
                .iter()
                .filter(|phi| phi.place_image_key(&k).ok().as_ref() == Some(&k))
                .count() as i64;
            seen.insert(k.clone(), stab);
            for phi in &self.group {
                let img = phi.place_image_key(&k)?;
                if !seen.contains_key(&img) {
                    frontier.push(img);
                }
            }
        }
        Ok(Divisor::from_entries(seen))
    }

    /// Y-side floor pushforward of a concrete invariant divisor:
    /// one record (orbit representative, e, floor(n_Q / e_Q)) per orbit in the
    /// support, plus the total degree.
    pub fn floor_pushforward(&self, d: &Divisor) -> Result<(Vec<(PlaceKey, u64, i64)>, i64)> {
        self.check_invariant(d)?;
        let mut seen: std::collections::BTreeSet<PlaceKey> = Default::default();
        let mut out = vec![];
        let mut deg = 0i64;
        for (key, coeff) in d.entries() {
            if seen.contains(key) {
                continue;
            }
            // Collect the orbit.
            let mut orbit = vec![];
            for phi in &self.group {
                let img = phi.place_image_key(key)?;
                if !orbit.contains(&img) {
                    orbit.push(img);
                }
            }
            let e = (self.group.len() / orbit.len()) as u64;
            let floor = coeff.div_euclid(e as i64);
            out.push((orbit.iter().min().unwrap().clone(), e, floor));
            deg += floor;
            seen.extend(orbit);
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok((out, deg))
    }

    /// Errors unless the divisor is stable with constant coefficients on
    /// orbits.
    pub fn check_invariant(&self, d: &Divisor) -> Result<()> {
        for (key, coeff) in d.entries() {
            for phi in &self.group {
                let img = phi.place_image_key(key)?;
                if d.coeff(&img) != coeff {
                    return Err(Error::NotInvariant);
                }
            }
        }
        Ok(())
    }

    /// The Y-side spec of a concrete invariant divisor, aligned with the
    /// profile's branch list.
    pub fn divisor_spec(&self, d: &Divisor) -> Result<InvariantDivisorSpec> {
        self.check_invariant(d)?;
        let mut branch_coeffs = vec![0i64; self.profile.branch.len()];
        let ram_keys: BTreeMap<&PlaceKey, usize> =
            self.places.iter().map(|p| (&p.key, p.orbit)).collect();
        let mut free: BTreeMap<i64, u64> = BTreeMap::new();
        let mut seen: std::collections::BTreeSet<PlaceKey> = Default::default();
        for (key, coeff) in d.entries() {
            if seen.contains(key) {
                continue;
            }
            if let Some(&orbit) = ram_keys.get(key) {
                branch_coeffs[orbit] = coeff;
                // mark the whole orbit
                for p in &self.places {
                    if p.orbit == orbit {
                        seen.insert(p.key.clone());
                    }
                }
            } else {
                let mut orbit_keys = vec![];
                for phi in &self.group {
                    let img = phi.place_image_key(key)?;
                    if !orbit_keys.contains(&img) {
                        orbit_keys.push(img);
                    }
                }
                if orbit_keys.len() != self.group.len() {
                    // A partially ramified orbit outside the ramified list
                    // cannot happen; being here means e > 1 but the place was
                    // not detected as ramified.
                    return Err(Error::HurwitzInconsistent(
                        "unexpected short orbit in divisor support".into(),
                    ));
                }
                *free.entry(coeff).or_insert(0) += 1;
                seen.extend(orbit_keys);
            }
        }
        Ok(InvariantDivisorSpec {
            branch_coeffs,
            free_orbits: free.into_iter().collect(),
        })
    }
}

/// Computes the full ramification picture of (model, group). The group must
/// verify as a group; the model is base-changed internally until every
/// ramified place is rational.
pub fn profile_from_curve(
    model: &HyperellipticModel,
    group: &[CurveAutomorphism],
) -> Result<ConcreteRamification> {
    let group = verify_group(group)?;
    let mut model = model.clone();
    let mut group = group;
    loop {
        match try_profile(&model, &group) {
            Ok(c) => return Ok(c),
            Err(Error::NeedsExtension(d)) => {
                model = model.base_change(d)?;
                group = group
                    .iter()
                    .map(|g| g.base_change(&model))
                    .collect::<Result<Vec<_>>>()?;
            }
            Err(e) => return Err(e),
        }
    }
}

fn try_profile(
    model: &HyperellipticModel,
    group: &[CurveAutomorphism],
) -> Result<ConcreteRamification> {
    let n = group.len() as u64;
    // Candidate fixed places of nontrivial elements.
    let mut candidates: std::collections::BTreeSet<PlaceKey> = Default::default();
    for phi in group {
        if phi.is_identity() {
            continue;
        }
        candidates.extend(fixed_place_candidates(model, phi)?);
    }
    // Ramified places: stabilizer bigger than the identity.
    let mut data: Vec<RamifiedPlaceData> = vec![];
    for key in &candidates {
        let stab: Vec<&CurveAutomorphism> = group
            .iter()
            .filter(|phi| phi.place_image_key(key).ok().as_ref() == Some(key))
            .collect();
        if stab.len() <= 1 {
            continue;
        }
        let t = local_parameter(model, key)?;
        let mut jumps: Vec<i64> = vec![];
        for phi in &stab {
            if phi.is_identity() {
                continue;
            }
            let moved = phi.apply(&t).sub(&t);
            if moved.is_zero() {
                return Err(Error::NotFaithful);
            }
            jumps.push(model.valuation(&moved, key)?);
        }
        let delta: i64 = jumps.iter().sum();
        // |G_j| = 1 + #{phi != 1 : i(phi) >= j+1}
        let max_i = *jumps.iter().max().unwrap();
        let filtration: Vec<u64> = (0..max_i)
            .map(|j| 1 + jumps.iter().filter(|&&i| i >= j + 1).count() as u64)
            .collect();
        data.push(RamifiedPlaceData {
            key: key.clone(),
            e: stab.len() as u64,
            delta: delta as u64,
            filtration,
            orbit: usize::MAX,
        });
    }
    data.sort_by(|a, b| a.key.cmp(&b.key));
    // Group into orbits.
    let keyset: BTreeMap<PlaceKey, usize> = data
        .iter()
        .enumerate()
        .map(|(i, d)| (d.key.clone(), i))
        .collect();
    let mut orbit_of: Vec<usize> = vec![usize::MAX; data.len()];
    let mut branch: Vec<BranchPoint> = vec![];
    for i in 0..data.len() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let orbit_index = branch.len();
        let mut members = vec![i];
        for phi in group {
            let img = phi.place_image_key(&data[i].key)?;
            let j = *keyset.get(&img).ok_or_else(|| {
                Error::HurwitzInconsistent("orbit of a ramified place escapes".into())
            })?;
            if !members.contains(&j) {
                members.push(j);
            }
        }
        if members.len() as u64 * data[i].e != n {
            return Err(Error::HurwitzInconsistent(format!(
                "orbit size {} times e {} is not the group order {}",
                members.len(),
                data[i].e,
                n
            )));
        }
        for &j in &members {
            if data[j].filtration != data[i].filtration {
                return Err(Error::HurwitzInconsistent(
                    "conjugate places disagree on filtrations".into(),
                ));
            }
            orbit_of[j] = orbit_index;
        }
        branch.push(BranchPoint {
            e: data[i].e,
            filtration: data[i].filtration.clone(),
        });
    }
    for (d, o) in data.iter_mut().zip(orbit_of) {
        d.orbit = o;
    }
    // g_Y from Hurwitz.
    let deg_r: u64 = data.iter().map(|d| d.delta).sum();
    let g_x = model.genus() as i64;
    // 2 g_X - 2 = n (2 g_Y - 2) + deg R
    let num = 2 * g_x - 2 - deg_r as i64 + 2 * n as i64;
    if num < 0 || num % (2 * n as i64) != 0 {
        return Err(Error::HurwitzInconsistent(format!(
            "no integral quotient genus: 2gX-2 = {}, deg R = {}, n = {}",
            2 * g_x - 2,
            deg_r,
            n
        )));
    }
    let g_y = (num / (2 * n as i64)) as u64;
    let profile = RamificationProfile::new(n, g_y, branch)?;
    debug_assert_eq!(profile.validate()?, model.genus());
    Ok(ConcreteRamification {
        model: model.clone(),
        group: group.to_vec(),
        places: data,
        profile,
    })
}

/// Places that a nontrivial automorphism might fix. Reports NeedsExtension
/// when a genuinely fixed place is not rational over the working field.
fn fixed_place_candidates(
    model: &HyperellipticModel,
    phi: &CurveAutomorphism,
) -> Result<Vec<PlaceKey>> {
    use crate::curve::automorphism::AutKind;
    use crate::curve::asred::XPoint;
    let mut out = vec![];
    let field = model.field();
    match phi.kind() {
        AutKind::Char2Identity => {}
        AutKind::Char2Involution => {
            if !model.ramification_is_rational() {
                let d = crate::algebra::poly::splitting_degree(model.h().unwrap());
                return Err(Error::NeedsExtension(d));
            }
            out.extend(model.ramified_places()?.into_iter().map(|p| p.key));
        }
        AutKind::Diagonal { alpha, beta, lambda } => {
            if alpha.is_one() && beta.is_zero() {
                // x-identity: the involution (lambda = -1).
                if !model.ramification_is_rational() {
                    let d = crate::algebra::poly::splitting_degree(model.f());
                    return Err(Error::NeedsExtension(d));
                }
                out.extend(model.ramified_places()?.into_iter().map(|p| p.key));
            } else {
                if !alpha.is_one() {
                    let a = &beta.clone() * &(&field.one() - alpha).inv().unwrap();
                    let fa = model.f().eval(&a);
                    if fa.is_zero() {
                        out.extend(
                            model
                                .places_over(&XPoint::Finite(a))?
                                .into_iter()
                                .map(|p| p.key),
                        );
                    } else if lambda.is_one() {
                        // Both places over a are fixed; they must be rational.
                        out.extend(
                            model
                                .places_over(&XPoint::Finite(a))?
                                .into_iter()
                                .map(|p| p.key),
                        );
                    }
                }
                match model.infinity_kind() {
                    InfinityKind::Ramified => {
                        out.push(PlaceKey::InfRam);
                    }
                    InfinityKind::Split => {
                        let g = model.genus();
                        let fixes_branches = &alpha.pow(g + 1) == lambda;
                        if fixes_branches {
                            out.extend(
                                model
                                    .places_over(&XPoint::Infinity)?
                                    .into_iter()
                                    .map(|p| p.key),
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// A global function that is a local parameter at the given place.
fn local_parameter(model: &HyperellipticModel, key: &PlaceKey) -> Result<FunctionRep> {
    let field = model.field().clone();
    let place = model.place(key)?;
    Ok(match (key, place.e) {
        (PlaceKey::Finite { a, .. }, 1) => FunctionRep::from_x_part(
            model,
            RatFun::from_poly(Polynomial::x_minus(&field.from_enc(*a))),
        ),
        (PlaceKey::Finite { a: _, y }, _) => match model.form() {
            // t = y at an odd-characteristic Weierstrass point (y0 = 0),
            // t = y - y0 in characteristic 2.
            ModelForm::OddChar { .. } => FunctionRep::y(model),
            ModelForm::Char2 { .. } => FunctionRep::y(model).sub(&FunctionRep::constant(
                model,
                field.from_enc(*y),
            )),
        },
        (PlaceKey::InfSplit { .. }, _) => FunctionRep::from_x_part(
            model,
            RatFun::new(Polynomial::one(&field), Polynomial::x(&field)),
        ),
        (PlaceKey::InfRam, _) => match model.form() {
            ModelForm::OddChar { .. } => {
                // t = y / x^{g+1}
                let g = model.genus();
                let xg = Polynomial::x(&field).pow(g + 1);
                FunctionRep::new(
                    model,
                    RatFun::zero(&field),
                    RatFun::new(Polynomial::one(&field), xg),
                )
            }
            ModelForm::Char2 { h, .. } => {
                // t = (y/h + U) x^{-(N+1)/2}
                let data = model.char2_data();
                let n = data.inf.jump.expect("ramified infinity");
                let xpow = RatFun::new(
                    Polynomial::one(&field),
                    Polynomial::x(&field).pow((n + 1) / 2),
                );
                let a = &data.inf.shift * &xpow;
                let b = &RatFun::new(Polynomial::one(&field), h.clone()) * &xpow;
                FunctionRep::new(model, a, b)
            }
        },
    })
}

// -- JSON DTOs --

#[derive(Serialize, Deserialize)]
pub struct ProfileJson {
    pub n: u64,
    #[serde(rename = "gY")]
    pub g_y: u64,
    pub branch: Vec<BranchJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divisor: Option<DivisorSpecJson>,
}

#[derive(Serialize, Deserialize)]
pub struct BranchJson {
    pub e: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub filtration: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tame: Option<bool>,
}

#[derive(Serialize, Deserialize, Default)]
pub struct DivisorSpecJson {
    #[serde(default)]
    pub branch_coeffs: Vec<i64>,
    #[serde(default)]
    pub free_orbits: Vec<FreeOrbitJson>,
}

#[derive(Serialize, Deserialize)]
pub struct FreeOrbitJson {
    #[serde(rename = "nQ")]
    pub n_q: i64,
    pub count: u64,
}

impl ProfileJson {
    pub fn profile(&self) -> Result<RamificationProfile> {
        let branch: Result<Vec<BranchPoint>> = self
            .branch
            .iter()
            .map(|b| match (&b.filtration, b.tame) {
                (Some(f), _) => Ok(BranchPoint {
                    e: b.e,
                    filtration: f.clone(),
                }),
                (None, Some(true)) => Ok(BranchPoint::tame(b.e)),
                _ => Err(Error::Parse(
                    "branch point needs a filtration or tame:true".into(),
                )),
            })
            .collect();
        RamificationProfile::new(self.n, self.g_y, branch?)
    }

    pub fn divisor_spec(&self) -> Result<InvariantDivisorSpec> {
        let profile = self.profile()?;
        let d = self.divisor.as_ref().ok_or_else(|| {
            Error::Parse("profile JSON carries no divisor spec".into())
        })?;
        if d.branch_coeffs.len() != profile.branch.len() {
            return Err(Error::Parse(format!(
                "divisor has {} branch coefficients for {} branch points",
                d.branch_coeffs.len(),
                profile.branch.len()
            )));
        }
        Ok(InvariantDivisorSpec {
            branch_coeffs: d.branch_coeffs.clone(),
            free_orbits: d.free_orbits.iter().map(|f| (f.n_q, f.count)).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Field;
    use crate::curve::automorphism::generate_group;

    fn c1() -> HyperellipticModel {
        let f7 = Field::prime(7).unwrap();
        HyperellipticModel::new_odd(&f7, Polynomial::from_ints(&f7, &[-1, 0, 0, 0, 0, 0, 1]))
            .unwrap()
    }

    fn c2() -> HyperellipticModel {
        let f2 = Field::prime(2).unwrap();
        HyperellipticModel::new_char2(
            &f2,
            Polynomial::one(&f2),
            Polynomial::from_ints(&f2, &[0, 0, 0, 0, 0, 1]),
        )
        .unwrap()
    }

    fn sigma_group(m: &HyperellipticModel) -> Vec<CurveAutomorphism> {
        vec![
            CurveAutomorphism::identity(m),
            CurveAutomorphism::hyperelliptic_involution(m),
        ]
    }

    #[test]
    fn c1_involution_profile() {
        let m = c1();
        let conc = profile_from_curve(&m, &sigma_group(&m)).unwrap();
        let p = &conc.profile;
        assert_eq!(p.n, 2);
        assert_eq!(p.g_y, 0);
        assert_eq!(p.branch.len(), 6);
        assert!(p.branch.iter().all(|b| b.e == 2 && b.delta() == 1));
        assert_eq!(p.validate().unwrap(), 2); // Hurwitz closes: 2 = 2(-2)+6
        assert_eq!(p.deg_r(), 6);
    }

    #[test]
    fn c2_involution_profile_wild() {
        let m = c2();
        let conc = profile_from_curve(&m, &sigma_group(&m)).unwrap();
        let p = &conc.profile;
        assert_eq!(p.n, 2);
        assert_eq!(p.g_y, 0);
        assert_eq!(p.branch.len(), 1);
        assert_eq!(p.branch[0].e, 2);
        assert_eq!(p.branch[0].delta(), 6);
        assert_eq!(p.branch[0].filtration, vec![2, 2, 2, 2, 2, 2]);
        assert_eq!(p.validate().unwrap(), 2);
    }

    #[test]
    fn trivial_group_profile() {
        let m = c1();
        let conc =
            profile_from_curve(&m, &[CurveAutomorphism::identity(&m)]).unwrap();
        assert_eq!(conc.profile.n, 1);
        assert_eq!(conc.profile.g_y, 2);
        assert!(conc.profile.branch.is_empty());
    }

    #[test]
    fn abstract_profile_validation() {
        // n=2, gY=0, six tame double points: g_X = 2.
        let p = RamificationProfile::new(2, 0, vec![BranchPoint::tame(2); 6]).unwrap();
        assert_eq!(p.validate().unwrap(), 2);
        // Five branch points: 2g-2 = -4+5 odd.
        assert!(matches!(
            RamificationProfile::new(2, 0, vec![BranchPoint::tame(2); 5]).unwrap_err(),
            Error::HurwitzInconsistent(_)
        ));
        // n=3, one branch point with filtration (3,3): g_X = 0.
        let p = RamificationProfile::new(
            3,
            0,
            vec![BranchPoint {
                e: 3,
                filtration: vec![3, 3],
            }],
        )
        .unwrap();
        assert_eq!(p.validate().unwrap(), 0);
    }

    #[test]
    fn canonical_divisor_c1() {
        let m = c1();
        let conc = profile_from_curve(&m, &sigma_group(&m)).unwrap();
        let k = conc.canonical_divisor().unwrap();
        // K_X = R - 2 D_inf = div(dx)
        let mut expected = conc.ramification_divisor();
        expected = expected.sub(&conc.model.d_infinity().unwrap().scale(2));
        assert_eq!(k, expected);
        assert_eq!(k.degree(), 2); // 2g - 2
    }

    #[test]
    fn canonical_divisor_c2() {
        let m = c2();
        let conc = profile_from_curve(&m, &sigma_group(&m)).unwrap();
        let k = conc.canonical_divisor().unwrap();
        // R = 6[P_inf], pi^*([Q_inf]) = 2[P_inf]: K_X = 2[P_inf].
        assert_eq!(k, Divisor::single(PlaceKey::InfRam, 2));
    }

    #[test]
    fn floor_pushforward_examples() {
        let m = c1();
        let conc = profile_from_curve(&m, &sigma_group(&m)).unwrap();
        // D = 2 K_X: coefficient 2 at six branch points, -4 at the split
        // infinite orbit: deg floor = 6*1 + (-4) = 2.
        let k = conc.canonical_divisor().unwrap();
        let (_, deg) = conc.floor_pushforward(&k.scale(2)).unwrap();
        assert_eq!(deg, 2);
        // D = R: floor(1/2) = 0 at each branch point.
        let (_, deg_r) = conc.floor_pushforward(&conc.ramification_divisor()).unwrap();
        assert_eq!(deg_r, 0);
        // Non-invariant divisor errors.
        let bad = Divisor::single(PlaceKey::InfSplit { label: 1 }, 1);
        assert_eq!(
            conc.floor_pushforward(&bad).unwrap_err(),
            Error::NotInvariant
        );
        // C2: D = 2 K_X = 4 [P_inf]: floor(4/2) = 2.
        let m2 = c2();
        let conc2 = profile_from_curve(&m2, &sigma_group(&m2)).unwrap();
        let k2 = conc2.canonical_divisor().unwrap();
        let (_, deg2) = conc2.floor_pushforward(&k2.scale(2)).unwrap();
        assert_eq!(deg2, 2);
    }

    #[test]
    fn char2_delta_is_twice_the_multiplicity() {
        // y^2 - x^2 y = x^5 + x: h = x^2 has a double zero at 0, and the
        // jump there gives delta = 2m = 4 (filtration [2,2,2,2]).
        let f2 = Field::prime(2).unwrap();
        let h = Polynomial::from_ints(&f2, &[0, 0, 1]);
        let f = Polynomial::from_ints(&f2, &[0, 1, 0, 0, 0, 1]);
        let m = HyperellipticModel::new_char2(&f2, h, f).unwrap();
        assert_eq!(m.genus(), 2);
        let conc = profile_from_curve(&m, &sigma_group(&m)).unwrap();
        let finite_branch: Vec<_> = conc
            .places
            .iter()
            .filter(|p| !matches!(p.key, PlaceKey::InfRam | PlaceKey::InfSplit { .. }))
            .collect();
        assert_eq!(finite_branch.len(), 1);
        assert_eq!(finite_branch[0].delta, 4);
        assert_eq!(finite_branch[0].filtration, vec![2, 2, 2, 2]);
    }

    #[test]
    fn profile_json_roundtrip() {
        let text = r#"{"n":2,"gY":0,"branch":[{"e":2,"filtration":[2,2,2,2,2,2]}]}"#;
        let p = RamificationProfile::from_json(text).unwrap();
        assert_eq!(p.validate().unwrap(), 2);
        let p2 = RamificationProfile::from_json(&p.to_json()).unwrap();
        assert_eq!(p, p2);
        let tame = r#"{"n":2,"gY":0,"branch":[{"e":2,"tame":true},{"e":2,"tame":true},{"e":2,"tame":true},{"e":2,"tame":true},{"e":2,"tame":true},{"e":2,"tame":true}]}"#;
        let pt = RamificationProfile::from_json(tame).unwrap();
        assert_eq!(pt.validate().unwrap(), 2);
    }

    #[test]
    fn diagonal_group_profile_on_c1() {
        // G generated by x -> 3x (order 6) and sigma: order 12, quotient P^1.
        let m = c1();
        let f = m.field().clone();
        let phi =
            CurveAutomorphism::diagonal(&m, f.from_int(3), f.zero(), f.one()).unwrap();
        let sigma = CurveAutomorphism::hyperelliptic_involution(&m);
        let group = generate_group(&[phi, sigma]).unwrap();
        assert_eq!(group.len(), 12);
        let conc = profile_from_curve(&m, &group).unwrap();
        assert_eq!(conc.profile.validate().unwrap(), 2);
        // deg R = 2gX - 2 - n(2gY - 2) = 2 + 12*2 - 24 gY...
        // Hurwitz: 2 = 12(2 gY - 2) + deg R, so gY = 0 and deg R = 26.
        assert_eq!(conc.profile.g_y, 0);
        assert_eq!(conc.profile.deg_r(), 26);
    }
}
