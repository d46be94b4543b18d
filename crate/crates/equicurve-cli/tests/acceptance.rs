//! Acceptance suite: one test per criterion, each printing a pass line and
//! enforcing its time budget. The two reference curves are
//!   C1: y^2 = x^6 - 1 over GF(7)   and   C2: y^2 - y = x^5 over GF(2).

use std::time::Instant;

use equicurve::algebra::{Field, Matrix, Polynomial};
use equicurve::check::{invariant_orbit_pool, random_invariant_divisor, sweep_model, RunConfig};
use equicurve::criteria::{
    divisor_verdict, faithful_polydiff_concrete, faithful_sufficient, trivial_action_iff,
    trivial_deg_ge_2g, VerdictKind,
};
use equicurve::curve::{CurveAutomorphism, Divisor, HyperellipticModel, XPoint};
use equicurve::deformation::{
    check_duality, deformation_dim, inv_coinv_dims, GroupRepresentation,
};
use equicurve::differentials::{
    action_on_polydiff, basis_polydiff, expected_basis_size, verify_holomorphic,
};
use equicurve::goppa::{auto_evaluation_set, code_action, min_distance_bruteforce, EvaluationSet};
use equicurve::ramification::{profile_from_curve, BranchPoint, RamificationProfile};
use equicurve::rrspace::{
    action_on_rr, invariant_dim_concrete, invariant_dim_formula, invariant_dim_polydiff, rr_basis,
};
use equicurve::Error;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn c1() -> HyperellipticModel {
    HyperellipticModel::from_json(r#"{"p":7,"k":1,"model":"odd","f":[-1,0,0,0,0,0,1]}"#).unwrap()
}

fn c2() -> HyperellipticModel {
    HyperellipticModel::from_json(r#"{"p":2,"k":1,"model":"char2","h":[1],"f":[0,0,0,0,0,1]}"#)
        .unwrap()
}

fn sigma_group(m: &HyperellipticModel) -> Vec<CurveAutomorphism> {
    vec![
        CurveAutomorphism::identity(m),
        CurveAutomorphism::hyperelliptic_involution(m),
    ]
}

/// Genus-g models used by the sweeps, odd characteristic and characteristic 2.
fn odd_model(g: u64) -> HyperellipticModel {
    let f7 = Field::prime(7).unwrap();
    let f = match g {
        2 => Polynomial::from_ints(&f7, &[-1, 0, 0, 0, 0, 0, 1]), // x^6 - 1
        3 => Polynomial::from_ints(&f7, &[0, -1, 0, 0, 0, 0, 0, 1]), // x^7 - x
        4 => {
            // (x^7 - x)(x^2 + 1)
            &Polynomial::from_ints(&f7, &[0, -1, 0, 0, 0, 0, 0, 1])
                * &Polynomial::from_ints(&f7, &[1, 0, 1])
        }
        _ => panic!("unsupported genus"),
    };
    HyperellipticModel::new_odd(&f7, f).unwrap()
}

fn char2_model(g: u64) -> HyperellipticModel {
    let f2 = Field::prime(2).unwrap();
    let r = (2 * g + 1) as usize;
    let mut coeffs = vec![0i64; r + 1];
    coeffs[r] = 1;
    HyperellipticModel::new_char2(&f2, Polynomial::one(&f2), Polynomial::from_ints(&f2, &coeffs))
        .unwrap()
}

fn report(criterion: u32, label: &str, start: Instant, budget_secs: f64) {
    let elapsed = start.elapsed().as_secs_f64();
    println!(
        "acceptance criterion {} ({}): PASS ({:.2} s, budget {} s)",
        criterion, label, elapsed, budget_secs
    );
    assert!(
        elapsed < budget_secs,
        "criterion {} exceeded its {} s budget: {:.2} s",
        criterion,
        budget_secs,
        elapsed
    );
}

#[test]
fn criterion_1_genus_bookkeeping() {
    let start = Instant::now();
    // C1 and C2 have genus 2.
    assert_eq!(c1().genus(), 2);
    assert_eq!(c2().genus(), 2);
    // Hurwitz closes exactly: 2 gX - 2 = n (2 gY - 2) + deg R, i.e. 2 = 2(-2) + 6.
    for m in [c1(), c2()] {
        let conc = profile_from_curve(&m, &sigma_group(&m)).unwrap();
        let p = &conc.profile;
        assert_eq!(p.n, 2);
        assert_eq!(p.g_y, 0);
        assert_eq!(p.deg_r(), 6);
        assert_eq!(
            2 * p.validate().unwrap() as i64 - 2,
            p.n as i64 * (2 * p.g_y as i64 - 2) + p.deg_r() as i64
        );
        assert_eq!(p.validate().unwrap(), 2);
    }
    // Artin-Schreier sweep: y^2 - y = x^r has genus (r-1)/2.
    let f2 = Field::prime(2).unwrap();
    for r in [3u64, 5, 7, 9] {
        let mut coeffs = vec![0i64; r as usize + 1];
        coeffs[r as usize] = 1;
        let f = Polynomial::from_ints(&f2, &coeffs);
        let g =
            HyperellipticModel::genus_of_char2(&f2, &Polynomial::one(&f2), &f).unwrap();
        assert_eq!(g, (r - 1) / 2, "r = {}", r);
        if g < 2 {
            // The validated constructor rejects genus below 2.
            assert_eq!(
                HyperellipticModel::new_char2(&f2, Polynomial::one(&f2), f.clone())
                    .unwrap_err(),
                Error::GenusTooSmall(g as i64)
            );
        }
    }
    report(1, "genus bookkeeping", start, 1.0);
}

fn sweep(
    model: &HyperellipticModel,
    count: usize,
    seed: u64,
) -> Vec<(HyperellipticModel, Vec<CurveAutomorphism>, Divisor)> {
    let conc = sweep_model(model, 4, 5).unwrap();
    let pool = invariant_orbit_pool(&conc).unwrap();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let d = random_invariant_divisor(&conc, &pool, &mut rng);
            (conc.model.clone(), conc.group.clone(), d)
        })
        .collect()
}

#[test]
fn criterion_2_oracle_vs_riemann_roch() {
    let start = Instant::now();
    let mut total = 0;
    for (model, count, seed) in [(c1(), 26usize, 0xA1u64), (c2(), 26, 0xA2)] {
        let g = model.genus() as i64;
        for (work, _, d) in sweep(&model, count, seed) {
            let deg = d.degree();
            assert!(deg > 2 * g - 2 && deg <= 8 * g, "degree window: {}", deg);
            let rr = rr_basis(&work, &d).unwrap();
            assert_eq!(
                rr.dim as i64,
                deg + 1 - g,
                "dim L(D) on {:?}, D = {:?}",
                work,
                d
            );
            total += 1;
        }
    }
    assert!(total >= 50);
    report(2, "oracle vs Riemann-Roch dimension", start, 30.0);
}

#[test]
fn criterion_3_oracle_vs_invariant_formula() {
    let start = Instant::now();
    let mut checked = 0;
    let mut wild_checked = 0;
    for (model, count, seed) in [(c1(), 26usize, 0xA1u64), (c2(), 26, 0xA2)] {
        let wild = model.is_char2();
        for (work, group, d) in sweep(&model, count, seed) {
            let conc = profile_from_curve(&work, &group).unwrap();
            let spec = conc.divisor_spec(&d).unwrap();
            let formula = match invariant_dim_formula(&conc.profile, &spec) {
                Ok(v) => v,
                Err(Error::DegreeTooSmall { .. }) => continue,
                Err(e) => panic!("{e:?}"),
            };
            let rr = rr_basis(&work, &d).unwrap();
            let action = action_on_rr(&work, &group, &rr).unwrap();
            assert_eq!(
                invariant_dim_concrete(&action) as i64,
                formula,
                "D = {:?}",
                d
            );
            checked += 1;
            if wild {
                wild_checked += 1;
            }
        }
    }
    assert!(checked >= 40, "only {} divisors within hypothesis", checked);
    assert!(wild_checked > 0, "no wild cases exercised");
    report(3, "oracle vs invariant-dimension formula", start, 60.0);
}

#[test]
fn criterion_4_polydifferential_dimensions() {
    let start = Instant::now();
    for g in [2u64, 3, 4] {
        for model in [odd_model(g), char2_model(g)] {
            assert_eq!(model.genus(), g);
            let group = sigma_group(&model);
            let conc = profile_from_curve(&model, &group).unwrap();
            for m in 1..=5u64 {
                let basis = basis_polydiff(&model, m).unwrap();
                assert_eq!(basis.len(), expected_basis_size(g, m), "g={} m={}", g, m);
                verify_holomorphic(&model, m).unwrap();
                let action = action_on_polydiff(&model, &group, m).unwrap();
                let formula = invariant_dim_polydiff(&conc.profile, m).unwrap();
                assert_eq!(
                    action.invariant_dim() as i64,
                    formula,
                    "invariant dim, g={} m={} char={}",
                    g,
                    m,
                    model.field().p()
                );
            }
        }
    }
    // Pinned reference instances: C1 with m=2 has invariant dimension 3, and
    // C2 with m=1 has invariant dimension 2 = g (trivial action).
    let conc1 = profile_from_curve(&c1(), &sigma_group(&c1())).unwrap();
    assert_eq!(invariant_dim_polydiff(&conc1.profile, 2).unwrap(), 3);
    let conc2 = profile_from_curve(&c2(), &sigma_group(&c2())).unwrap();
    assert_eq!(invariant_dim_polydiff(&conc2.profile, 1).unwrap(), 2);
    report(4, "polydifferential dimensions", start, 60.0);
}

#[test]
fn criterion_5_faithfulness_matrix() {
    let start = Instant::now();
    for g in [2u64, 3, 4] {
        for model in [odd_model(g), char2_model(g)] {
            let p = model.field().p();
            let group = sigma_group(&model);
            for m in 1..=5u64 {
                let verdict = faithful_polydiff_concrete(&model, &group, m).unwrap();
                let expect_nonfaithful = (m == 1 && p == 2) || (m == 2 && g == 2);
                let faithful = verdict.result == VerdictKind::Faithful;
                assert_eq!(
                    faithful, !expect_nonfaithful,
                    "verdict table: g={} m={} p={} got {:?}",
                    g, m, p, verdict
                );
                // Cross-check against the generated matrix group.
                let action = action_on_polydiff(&model, &group, m).unwrap();
                let order = action.matrix_group_order();
                assert_eq!(order == group.len(), faithful, "g={} m={} p={}", g, m, p);
                // n = 2: non-faithful means trivial.
                if expect_nonfaithful {
                    assert_eq!(verdict.result, VerdictKind::Trivial);
                    assert!(action.is_trivial());
                }
            }
        }
    }
    report(5, "faithfulness matrix", start, 60.0);
}

#[test]
fn criterion_6_triviality_criteria() {
    let start = Instant::now();
    let m = c1();
    let group = sigma_group(&m);
    let conc = profile_from_curve(&m, &group).unwrap();

    // D = 2 D_inf: trivial under the exact criterion (4 = 4) and the
    // deg >= 2g criterion; the concrete action is the 3x3 identity.
    let d2 = m.d_infinity().unwrap().scale(2);
    let spec2 = conc.divisor_spec(&d2).unwrap();
    let v_eq = trivial_action_iff(&conc.profile, &spec2).unwrap();
    assert_eq!(v_eq.result, VerdictKind::Trivial);
    let v_2g = trivial_deg_ge_2g(&conc.profile, &spec2).unwrap();
    assert_eq!(v_2g.result, VerdictKind::Trivial);
    let rr2 = rr_basis(&m, &d2).unwrap();
    let action2 = action_on_rr(&m, &group, &rr2).unwrap();
    assert_eq!(action2.dim, 3);
    assert!(action2.matrices.iter().all(|(_, mat)| mat.is_identity()));

    // D = 3 D_inf: faithful by the degree clause, concretely diag(1,1,1,1,-1).
    let d3 = m.d_infinity().unwrap().scale(3);
    let spec3 = conc.divisor_spec(&d3).unwrap();
    let v_f = faithful_sufficient(&conc.profile, &spec3).unwrap();
    assert_eq!(v_f.result, VerdictKind::Faithful);
    assert_eq!(v_f.clause, "trivialD4(a)");
    assert_eq!(
        divisor_verdict(&conc.profile, &spec3).unwrap().result,
        VerdictKind::Faithful
    );
    let rr3 = rr_basis(&m, &d3).unwrap();
    let action3 = action_on_rr(&m, &group, &rr3).unwrap();
    let f = m.field();
    let mut expected = Matrix::identity(f, 5);
    *expected.at_mut(4, 4) = f.from_int(-1);
    assert_eq!(action3.matrices[0].1, expected);
    report(6, "triviality criteria", start, 10.0);
}

#[test]
fn criterion_7_goppa() {
    let start = Instant::now();
    let m = c1();
    let group = sigma_group(&m);

    // The [6,3] code over GF(7): evaluation of L(2 D_inf) at the six
    // Weierstrass points.
    let d = m.d_infinity().unwrap().scale(2);
    let mut pts = vec![];
    for a in 1..=6 {
        pts.extend(m.places_over(&XPoint::Finite(m.field().from_int(a))).unwrap());
    }
    let e = EvaluationSet::new(&m, pts, &d).unwrap();
    let (pa, code, _) = code_action(&m, &group, &d, &e).unwrap();
    assert_eq!((code.length, code.k), (6, 3));
    let dmin = min_distance_bruteforce(&code).unwrap();
    assert_eq!(dmin, 4);
    assert!(dmin as i64 >= e.len() as i64 - d.degree()); // Goppa bound: 4 >= 2
    assert_eq!(pa.permutations[0].1, (0..6).collect::<Vec<_>>());
    assert!(pa.code_stable);

    // Over GF(49): D = 3 D_inf with an automatically selected evaluation set
    // gives an injective G -> Aut_Perm(C) certificate.
    let d3 = m.d_infinity().unwrap().scale(3);
    let (m49, d49, e49, ext) = auto_evaluation_set(&m, &d3, 2).unwrap();
    assert_eq!(ext, 2);
    assert!(e49.len() as i64 > d3.degree());
    let g49 = sigma_group(&m49);
    let (pa49, code49, action49) = code_action(&m49, &g49, &d49, &e49).unwrap();
    assert_eq!(pa49.certificate.injective, Some(true));
    assert!(pa49.certificate.evaluation_injective);
    assert!(pa49.certificate.action_faithful);
    assert_eq!(code49.k, 5);
    assert_eq!(action49.matrix_group_order(), 2);
    report(7, "Goppa codes", start, 120.0);
}

#[test]
fn criterion_8_deformation() {
    let start = Instant::now();
    // deformation dim equals the invariant quadratic-differential dimension.
    for (model, expected) in [(c1(), 3i64), (c2(), 3)] {
        let conc = profile_from_curve(&model, &sigma_group(&model)).unwrap();
        let rep = deformation_dim(&conc.profile).unwrap();
        assert_eq!(rep.dim, expected);
        assert!(rep.consistent);
        assert_eq!(
            rep.crosscheck,
            invariant_dim_polydiff(&conc.profile, 2).unwrap()
        );
    }
    // Tame profile with quotient genus 1 and two branch points: dimension 2.
    let tame = RamificationProfile::new(2, 1, vec![BranchPoint::tame(2); 2]).unwrap();
    let rep = deformation_dim(&tame).unwrap();
    assert_eq!(rep.dim, 2);
    assert!(rep.consistent);

    // The elementary-abelian counterexample: invariants 1, coinvariants 2,
    // and duality still holds.
    let f3 = Field::prime(3).unwrap();
    let g1 = Matrix::from_ints(&f3, &[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    let g2 = Matrix::from_ints(&f3, &[vec![1, 0, 1], vec![0, 1, 0], vec![0, 0, 1]]);
    let rep = GroupRepresentation::new(&f3, 3, vec![g1, g2]).unwrap();
    assert_eq!(inv_coinv_dims(&rep), (1, 2));
    assert!(check_duality(&rep));
    report(8, "deformation dimension", start, 5.0);
}

#[test]
fn criterion_9_determinism() {
    let start = Instant::now();
    let dir = std::env::temp_dir().join(format!("equicurve-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let c1_path = dir.join("C1.json");
    std::fs::write(&c1_path, r#"{"p":7,"k":1,"model":"odd","f":[-1,0,0,0,0,0,1]}"#).unwrap();
    let run = || {
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_equicurve"))
            .args(["check", "--curve", c1_path.to_str().unwrap(), "--sweep", "6"])
            .env("EQUICURVE_SEED", "42")
            .output()
            .expect("binary runs");
        assert!(
            out.status.success(),
            "check failed: {}",
            String::from_utf8_lossy(&out.stdout)
        );
        out.stdout
    };
    let first = run();
    let second = run();
    assert_eq!(first, second, "check reports must be byte-identical");
    std::fs::remove_dir_all(&dir).ok();
    report(9, "deterministic reports", start, 120.0);
}

/// The check pipeline itself passes on both reference curves (backs the
/// acceptance summary with the full cross-validation battery).
#[test]
fn check_pipeline_on_reference_curves() {
    let config = RunConfig {
        seed: 0xEC,
        sweep_divisors: 10,
        max_order: 5,
        goppa_ext_cap: 5,
    };
    for model in [c1(), c2()] {
        let report = equicurve::check::check_curve(&model, &config).unwrap();
        assert!(
            report.pass,
            "{}",
            serde_json::to_string_pretty(&report).unwrap()
        );
    }
}
