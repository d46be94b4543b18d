//! Property tests for the arithmetic foundation and the curve layer.

use proptest::prelude::*;

use equicurve::algebra::{Field, Matrix, Polynomial, PowerSeries};
use equicurve::curve::{Divisor, FunctionRep, HyperellipticModel, PlaceKey};

fn any_field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::new(2, 1).unwrap()),
        Just(Field::new(3, 1).unwrap()),
        Just(Field::new(7, 1).unwrap()),
        Just(Field::new(2, 4).unwrap()),
        Just(Field::new(3, 2).unwrap()),
        Just(Field::new(5, 2).unwrap()),
    ]
}

fn c1() -> HyperellipticModel {
    HyperellipticModel::from_json(r#"{"p":7,"k":1,"model":"odd","f":[-1,0,0,0,0,0,1]}"#).unwrap()
}

fn c2() -> HyperellipticModel {
    HyperellipticModel::from_json(r#"{"p":2,"k":1,"model":"char2","h":[1],"f":[0,0,0,0,0,1]}"#)
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_ring_axioms(field in any_field(), ea in 0u64..1 << 20, eb in 0u64..1 << 20, ec in 0u64..1 << 20) {
        let q = field.q();
        let a = field.from_enc(ea % q);
        let b = field.from_enc(eb % q);
        let c = field.from_enc(ec % q);
        prop_assert_eq!(&(&a + &b), &(&b + &a));
        prop_assert_eq!(&(&a * &b), &(&b * &a));
        prop_assert_eq!(&(&(&a + &b) + &c), &(&a + &(&b + &c)));
        prop_assert_eq!(&(&(&a * &b) * &c), &(&a * &(&b * &c)));
        prop_assert_eq!(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c)));
        if !a.is_zero() {
            let ai = a.inv().unwrap();
            prop_assert!((&a * &ai).is_one());
        }
    }

    #[test]
    fn poly_gcd_divides_both(field in any_field(), ca in prop::collection::vec(0u64..49, 0..6), cb in prop::collection::vec(0u64..49, 0..6)) {
        let q = field.q();
        let a = Polynomial::from_encs(&field, &ca.iter().map(|c| c % q).collect::<Vec<_>>());
        let b = Polynomial::from_encs(&field, &cb.iter().map(|c| c % q).collect::<Vec<_>>());
        if a.is_zero() && b.is_zero() {
            return Ok(());
        }
        let g = a.gcd(&b);
        if !a.is_zero() {
            prop_assert!(a.rem(&g).is_zero());
        }
        if !b.is_zero() {
            prop_assert!(b.rem(&g).is_zero());
        }
        // deg(fg) = deg f + deg g for nonzero polynomials.
        if !a.is_zero() && !b.is_zero() {
            prop_assert_eq!(
                (&a * &b).degree().unwrap(),
                a.degree().unwrap() + b.degree().unwrap()
            );
        }
    }

    #[test]
    fn kernel_vectors_annihilate(rows in 1usize..5, cols in 1usize..5, data in prop::collection::vec(0u64..7, 25)) {
        let field = Field::prime(7).unwrap();
        let entries: Vec<_> = (0..rows * cols).map(|i| field.from_enc(data[i % data.len()] % 7)).collect();
        let m = Matrix::new(&field, rows, cols, entries);
        let kb = m.kernel_basis();
        prop_assert_eq!(m.rank() + kb.len(), cols);
        for v in &kb {
            prop_assert!(m.mul_vec(v).iter().all(|e| e.is_zero()));
        }
    }

    #[test]
    fn series_product_truncation(ca in prop::collection::vec(0i64..7, 1..6), cb in prop::collection::vec(0i64..7, 1..6), pa in 2usize..8, pb in 2usize..8) {
        let field = Field::prime(7).unwrap();
        let fa = Polynomial::from_ints(&field, &ca);
        let fb = Polynomial::from_ints(&field, &cb);
        let sa = PowerSeries::from_poly(&fa, pa);
        let sb = PowerSeries::from_poly(&fb, pb);
        let prod = sa.mul(&sb);
        prop_assert_eq!(prod.prec(), pa.min(pb));
        let exact = PowerSeries::from_poly(&(&fa * &fb), pa.min(pb));
        prop_assert_eq!(prod, exact);
    }

    #[test]
    fn valuation_is_additive(coeffs in prop::collection::vec(0i64..7, 8)) {
        for (model, keys) in [
            (
                c1(),
                vec![
                    PlaceKey::Finite { a: 1, y: 0 },
                    PlaceKey::Finite { a: 4, y: 0 },
                    PlaceKey::InfSplit { label: 1 },
                    PlaceKey::InfSplit { label: 6 },
                ],
            ),
            (
                c2(),
                vec![
                    PlaceKey::InfRam,
                    PlaceKey::Finite { a: 0, y: 0 },
                    PlaceKey::Finite { a: 0, y: 1 },
                ],
            ),
        ] {
            let field = model.field().clone();
            let p = field.p() as i64;
            let mk = |c: &[i64]| {
                let reduced: Vec<i64> = c.iter().map(|v| v % p).collect();
                let a = equicurve::algebra::RatFun::from_poly(Polynomial::from_ints(
                    &field,
                    &reduced[..2],
                ));
                let b = equicurve::algebra::RatFun::from_poly(Polynomial::from_ints(
                    &field,
                    &reduced[2..4],
                ));
                FunctionRep::new(&model, a, b)
            };
            let u = mk(&coeffs[..4]);
            let w = mk(&coeffs[4..]);
            if u.is_zero() || w.is_zero() {
                continue;
            }
            for key in keys {
                let vu = model.valuation(&u, &key).unwrap();
                let vw = model.valuation(&w, &key).unwrap();
                let vuw = model.valuation(&u.mul(&w), &key).unwrap();
                prop_assert_eq!(vuw, vu + vw);
            }
        }
    }

    #[test]
    fn principal_divisors_have_degree_zero(coeffs in prop::collection::vec(0i64..7, 4)) {
        // Over GF(49) every support place of these small functions is
        // rational, so the divisor assembles and must have degree 0.
        let model = c1().base_change(2).unwrap();
        let field = model.field().clone();
        let a = equicurve::algebra::RatFun::from_poly(Polynomial::from_ints(&field, &coeffs[..2]));
        let b = equicurve::algebra::RatFun::from_poly(Polynomial::from_ints(&field, &coeffs[2..]));
        let u = FunctionRep::new(&model, a, b);
        if u.is_zero() {
            return Ok(());
        }
        match model.principal_divisor(&u) {
            Ok(div) => prop_assert_eq!(div.degree(), 0),
            // Zeros may still sit in a larger extension; that is fine.
            Err(equicurve::Error::NeedsExtension(_)) => {}
            Err(e) => return Err(TestCaseError::fail(format!("{e:?}"))),
        }
    }

    #[test]
    fn involution_is_involutive_on_points(ext in 1u32..3) {
        for base in [c1(), c2()] {
            let (model, pts) = base.rational_points(ext).unwrap();
            let sigma = equicurve::curve::CurveAutomorphism::hyperelliptic_involution(&model);
            for p in pts {
                let img = sigma.place_image_key(&p.key).unwrap();
                let back = sigma.place_image_key(&img).unwrap();
                prop_assert_eq!(&back, &p.key);
                // Fixed places are exactly the ramified ones.
                prop_assert_eq!(img == p.key, p.e == 2);
            }
        }
    }

    #[test]
    fn rr_dimension_respects_riemann_roch(ninf in 2i64..8) {
        let model = c1();
        let d = model.d_infinity().unwrap().scale(ninf);
        let rr = equicurve::rrspace::rr_basis(&model, &d).unwrap();
        let g = model.genus() as i64;
        prop_assert_eq!(rr.dim as i64, d.degree() + 1 - g);
    }
}

#[test]
fn divisor_arithmetic_is_a_group() {
    let d1 = Divisor::from_entries([
        (PlaceKey::Finite { a: 1, y: 0 }, 3),
        (PlaceKey::InfRam, -2),
    ]);
    let d2 = Divisor::from_entries([(PlaceKey::Finite { a: 1, y: 0 }, -3)]);
    assert_eq!(d1.add(&d2).coeff(&PlaceKey::Finite { a: 1, y: 0 }), 0);
    assert_eq!(d1.sub(&d1), Divisor::zero());
    assert_eq!(d1.add(&d2).degree(), -2);
}
