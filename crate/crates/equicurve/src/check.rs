//! The full cross-validation pipeline: every closed-form value computed by the
//! library is replayed against the brute-force linear-algebra route on a
//! seeded, deterministic sweep of divisors and orders.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use crate::criteria::{
    faithful_polydiff_concrete, faithful_sufficient, trivial_action_iff, VerdictKind,
};
use crate::curve::automorphism::CurveAutomorphism;
use crate::curve::divisor::Divisor;
use crate::curve::model::HyperellipticModel;
use crate::curve::place::PlaceKey;
use crate::deformation::deformation_dim;
use crate::differentials::crosscheck_mkx;
use crate::error::{Error, Result};
use crate::goppa::{code_action, min_distance_bruteforce};
use crate::ramification::{profile_from_curve, ConcreteRamification};
use crate::rrspace::{action_on_rr, invariant_dim_concrete, invariant_dim_formula, rr_basis};

/// Run-wide configuration. The seed makes every randomized sweep reproducible;
/// `EQUICURVE_SEED` overrides it.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub sweep_divisors: usize,
    pub max_order: u64,
    pub goppa_ext_cap: u32,
}

impl Default for RunConfig {
    fn default() -> Self {
        let seed = std::env::var("EQUICURVE_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(0xEC_2024);
        RunConfig {
            seed,
            sweep_divisors: 25,
            max_order: 5,
            goppa_ext_cap: 4,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckSection {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub schema: u32,
    pub curve: String,
    pub seed: u64,
    pub genus: u64,
    pub sections: Vec<CheckSection>,
    pub pass: bool,
}

/// The sigma-orbits available for building invariant divisors on a model:
/// each entry is (places of the orbit, degree of the orbit).
pub fn invariant_orbit_pool(
    conc: &ConcreteRamification,
) -> Result<Vec<(Vec<PlaceKey>, i64)>> {
    let model = &conc.model;
    let mut pool: Vec<(Vec<PlaceKey>, i64)> = vec![];
    // Ramified orbits, grouped by their branch point.
    let orbit_count = conc.profile.branch.len();
    for orbit in 0..orbit_count {
        let keys: Vec<PlaceKey> = conc
            .places
            .iter()
            .filter(|p| p.orbit == orbit)
            .map(|p| p.key.clone())
            .collect();
        let deg = keys.len() as i64;
        pool.push((keys, deg));
    }
    // Unramified orbits from the rational points.
    let (m1, pts) = model.rational_points(1)?;
    debug_assert_eq!(&m1, model);
    let ram: std::collections::BTreeSet<PlaceKey> =
        conc.places.iter().map(|p| p.key.clone()).collect();
    let mut seen: std::collections::BTreeSet<PlaceKey> = Default::default();
    for p in pts {
        if ram.contains(&p.key) || seen.contains(&p.key) {
            continue;
        }
        let mut orbit = vec![p.key.clone()];
        for phi in &conc.group {
            let img = phi.place_image_key(&p.key)?;
            if !orbit.contains(&img) {
                orbit.push(img);
            }
        }
        seen.extend(orbit.iter().cloned());
        orbit.sort();
        let deg = orbit.len() as i64;
        pool.push((orbit, deg));
    }
    pool.sort();
    Ok(pool)
}

/// Draws a random invariant divisor with 2g - 2 < deg <= 8g from the orbit
/// pool. Deterministic given the RNG state.
pub fn random_invariant_divisor(
    conc: &ConcreteRamification,
    pool: &[(Vec<PlaceKey>, i64)],
    rng: &mut ChaCha20Rng,
) -> Divisor {
    let g = conc.model.genus() as i64;
    let lo = 2 * g - 2;
    let hi = 8 * g;
    for _ in 0..10_000 {
        let mut d = Divisor::zero();
        for (orbit, _) in pool {
            // Coefficients in [-2, 4], biased toward small values.
            let c: i64 = match rng.gen_range(0..6) {
                0 => rng.gen_range(-2..=4),
                1 | 2 => rng.gen_range(0..=2),
                _ => 0,
            };
            if c != 0 {
                for key in orbit {
                    d.add_place(key.clone(), c);
                }
            }
        }
        let deg = d.degree();
        if deg > lo && deg <= hi {
            return d;
        }
    }
    // Deterministic fallback: a multiple of the first orbit.
    let (orbit, od) = &pool[0];
    let mult = (lo + 1 + *od - 1) / *od;
    let mut d = Divisor::zero();
    for key in orbit {
        d.add_place(key.clone(), mult);
    }
    d
}

/// Smallest extension on which the group's invariant-orbit pool has at least
/// `want` orbits. The involution group is used when `group` is empty.
pub fn sweep_model(model: &HyperellipticModel, want: usize, cap: u32) -> Result<ConcreteRamification> {
    sweep_model_with_group(model, &sigma_group_of(model), want, cap)
}

pub fn sweep_model_with_group(
    model: &HyperellipticModel,
    group: &[CurveAutomorphism],
    want: usize,
    cap: u32,
) -> Result<ConcreteRamification> {
    for ext in 1..=cap {
        let m = model.base_change(ext)?;
        let grp: Result<Vec<CurveAutomorphism>> =
            group.iter().map(|a| a.base_change(&m)).collect();
        let conc = profile_from_curve(&m, &grp?)?;
        let pool = invariant_orbit_pool(&conc)?;
        if pool.len() >= want {
            return Ok(conc);
        }
    }
    Err(Error::BoundExceeded(format!(
        "no extension up to {} has {} invariant orbits",
        cap, want
    )))
}

fn sigma_group_of(model: &HyperellipticModel) -> Vec<CurveAutomorphism> {
    vec![
        CurveAutomorphism::identity(model),
        CurveAutomorphism::hyperelliptic_involution(model),
    ]
}

/// Runs the whole cross-validation battery on a curve with its hyperelliptic
/// involution.
pub fn check_curve(model: &HyperellipticModel, config: &RunConfig) -> Result<CheckReport> {
    check_curve_with_group(model, &sigma_group_of(model), config)
}

/// The same battery for an arbitrary automorphism group containing the
/// involution (for example the closure of a diagonal map and the involution).
pub fn check_curve_with_group(
    model: &HyperellipticModel,
    group: &[CurveAutomorphism],
    config: &RunConfig,
) -> Result<CheckReport> {
    let mut rng = ChaCha20Rng::seed_from_u64(config.seed);
    let mut sections = vec![];
    let g = model.genus();

    // 1. Hurwitz/Hilbert closure.
    let sigma = group.to_vec();
    let conc0 = profile_from_curve(model, &sigma)?;
    let hurwitz_genus = conc0.profile.validate()?;
    sections.push(CheckSection {
        name: "hurwitz_closure".into(),
        pass: hurwitz_genus == g,
        detail: format!(
            "curve genus {}, Hurwitz genus {}, deg R = {}",
            g,
            hurwitz_genus,
            conc0.profile.deg_r()
        ),
    });

    // 2 + 3. Divisor sweep: Riemann-Roch dimension and invariant dimensions.
    let conc = sweep_model_with_group(model, &sigma, 4, config.goppa_ext_cap)?;
    let pool = invariant_orbit_pool(&conc)?;
    let mut rr_ok = 0usize;
    let mut inv_ok = 0usize;
    let mut inv_total = 0usize;
    let mut criteria_ok = 0usize;
    let mut criteria_total = 0usize;
    let mut failures: Vec<String> = vec![];
    for i in 0..config.sweep_divisors {
        let d = random_invariant_divisor(&conc, &pool, &mut rng);
        let deg = d.degree();
        let rr = rr_basis(&conc.model, &d)?;
        if rr.dim as i64 == deg + 1 - g as i64 {
            rr_ok += 1;
        } else {
            failures.push(format!(
                "divisor {} (deg {}): dim {} != {}",
                i,
                deg,
                rr.dim,
                deg + 1 - g as i64
            ));
            continue;
        }
        let action = action_on_rr(&conc.model, &conc.group, &rr)?;
        let spec = conc.divisor_spec(&d)?;
        match invariant_dim_formula(&conc.profile, &spec) {
            Ok(formula) => {
                inv_total += 1;
                if formula == invariant_dim_concrete(&action) as i64 {
                    inv_ok += 1;
                } else {
                    failures.push(format!(
                        "divisor {} (deg {}): concrete {} != formula {}",
                        i,
                        deg,
                        invariant_dim_concrete(&action),
                        formula
                    ));
                }
            }
            Err(Error::DegreeTooSmall { .. }) => {}
            Err(e) => return Err(e),
        }
        // Criteria vs matrices.
        criteria_total += 1;
        let trivial_verdict = trivial_action_iff(&conc.profile, &spec)?;
        let is_trivial = action.is_trivial();
        let verdict_consistent = match trivial_verdict.result {
            VerdictKind::Trivial => is_trivial,
            _ => !is_trivial,
        };
        let faithful_verdict = faithful_sufficient(&conc.profile, &spec)?;
        let faithful_consistent = match faithful_verdict.result {
            VerdictKind::Faithful => {
                action.matrix_group_order() == conc.group.len()
            }
            _ => true,
        };
        if verdict_consistent && faithful_consistent {
            criteria_ok += 1;
        } else {
            failures.push(format!(
                "divisor {} (deg {}): verdict mismatch (trivial: {:?} vs {}, faithful clause {})",
                i, deg, trivial_verdict.result, is_trivial, faithful_verdict.clause
            ));
        }
    }
    sections.push(CheckSection {
        name: "riemann_roch_sweep".into(),
        pass: rr_ok == config.sweep_divisors,
        detail: format!("{}/{} divisors match deg + 1 - g", rr_ok, config.sweep_divisors),
    });
    sections.push(CheckSection {
        name: "invariant_dimension_sweep".into(),
        pass: inv_ok == inv_total && inv_total > 0,
        detail: format!("{}/{} oracle = formula", inv_ok, inv_total),
    });
    sections.push(CheckSection {
        name: "criteria_vs_matrices".into(),
        pass: criteria_ok == criteria_total,
        detail: format!("{}/{} verdicts agree with matrices", criteria_ok, criteria_total),
    });

    // 4. Polydifferential crosschecks, m = 1..max_order. For groups whose
    // quotient has positive genus only the verdict consistency is available.
    let mut poly_ok = 0usize;
    for m in 1..=config.max_order {
        match crosscheck_mkx(model, &sigma, m) {
            Ok(report) if report.consistent => poly_ok += 1,
            Ok(report) => failures.push(format!("polydifferential order {}: {:?}", m, report)),
            Err(Error::QuotientNotRational) => poly_ok += 1,
            Err(e) => return Err(e),
        }
        let verdict = faithful_polydiff_concrete(model, &sigma, m)?;
        let diff_action = crate::differentials::action_on_polydiff(&conc0.model, &conc0.group, m)?;
        let matrices_trivial = diff_action.is_trivial();
        let consistent = match verdict.result {
            VerdictKind::Trivial => matrices_trivial,
            VerdictKind::Faithful => {
                diff_action.matrix_group_order() == conc0.group.len()
            }
            _ => true,
        };
        if !consistent {
            failures.push(format!(
                "order {}: verdict {:?} vs trivial={} order={}",
                m,
                verdict.result,
                matrices_trivial,
                diff_action.matrix_group_order()
            ));
            poly_ok = poly_ok.saturating_sub(1);
        }
    }
    sections.push(CheckSection {
        name: "polydifferentials".into(),
        pass: poly_ok == config.max_order as usize,
        detail: format!("{}/{} orders fully consistent", poly_ok, config.max_order),
    });

    // 5. Holomorphy of the explicit bases (orders 1 and 2 suffice here; the
    // sweep above already pins the dimensions).
    let mut holo_pass = true;
    for m in 1..=2 {
        if let Err(e) = crate::differentials::verify_holomorphic(model, m) {
            holo_pass = false;
            failures.push(format!("holomorphy order {}: {:?}", m, e));
        }
    }
    sections.push(CheckSection {
        name: "basis_holomorphy".into(),
        pass: holo_pass,
        detail: "explicit basis divisors effective".into(),
    });

    // 6. Deformation dimension.
    let def = deformation_dim(&conc0.profile)?;
    sections.push(CheckSection {
        name: "deformation".into(),
        pass: def.consistent,
        detail: format!("dim {} crosscheck {}", def.dim, def.crosscheck),
    });

    // 7. Goppa smoke test: an automatically selected evaluation set with a
    // faithful-action certificate when the criteria promise one.
    let d = conc0.model.d_infinity()?.scale((g + 1) as i64);
    let goppa_pass = (|| -> Result<(bool, String)> {
        let (mx, dx, e, ext) =
            crate::goppa::auto_evaluation_set(&conc0.model, &d, 1)?;
        let grp: Result<Vec<CurveAutomorphism>> =
            conc0.group.iter().map(|a| a.base_change(&mx)).collect();
        let (pa, code, _) = code_action(&mx, &grp?, &dx, &e)?;
        let dmin = if code.k > 0 && (code.field.q() as u128).pow(code.k as u32) <= 1 << 22 {
            Some(min_distance_bruteforce(&code)?)
        } else {
            None
        };
        let bound_ok = match dmin {
            Some(dm) => dm as i64 >= e.len() as i64 - code.deg_d,
            None => true,
        };
        Ok((
            pa.code_stable && bound_ok,
            format!(
                "[{}, {}] code over GF({}^{}) ext {}, d = {:?}, certificate {:?}",
                code.length,
                code.k,
                mx.field().p(),
                mx.field().k(),
                ext,
                dmin,
                pa.certificate.injective
            ),
        ))
    })();
    match goppa_pass {
        Ok((pass, detail)) => sections.push(CheckSection {
            name: "goppa".into(),
            pass,
            detail,
        }),
        Err(e) => sections.push(CheckSection {
            name: "goppa".into(),
            pass: false,
            detail: format!("{:?}", e),
        }),
    }

    if !failures.is_empty() {
        sections.push(CheckSection {
            name: "failures".into(),
            pass: false,
            detail: failures.join("; "),
        });
    }
    let pass = sections.iter().all(|s| s.pass);
    Ok(CheckReport {
        schema: 1,
        curve: model.to_json(),
        seed: config.seed,
        genus: g,
        sections,
        pass,
    })
}
