//! Explicit bases of the spaces of global holomorphic polydifferentials of
//! order m on hyperelliptic curves, the involution action on them, and the
//! cross-check against L(m K_X) through the rank-1 identification of the
//! m-differentials with functions times omega = dx^m / y^m (odd
//! characteristic) or dx^m / h(x)^m (characteristic 2).

use crate::algebra::ratfun::RatFun;
use crate::curve::automorphism::{AutKind, CurveAutomorphism};
use crate::curve::divisor::Divisor;
use crate::curve::function::FunctionRep;
use crate::curve::model::{HyperellipticModel, ModelForm};
use crate::error::{Error, Result};
use crate::ramification::{profile_from_curve, ConcreteRamification};
use crate::rrspace::{action_on_rr, invariant_dim_polydiff, rr_basis, solve_in_span, ActionOnSpace};

/// A polydifferential of order m, stored as its coefficient against omega.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyDifferential {
    pub m: u64,
    pub coeff: FunctionRep,
    /// Power of x in the defining monomial, for reporting.
    pub x_power: u64,
    /// Whether the defining monomial carries a factor y.
    pub with_y: bool,
}

/// The basis
///   x^i omega            for 0 <= i <= m(g-1),
///   x^i y omega          for 0 <= i <= (m-1)(g-1) - 2   (empty if negative):
/// g elements for m = 1 and (2m-1)(g-1) for m >= 2.
pub fn basis_polydiff(model: &HyperellipticModel, m: u64) -> Result<Vec<PolyDifferential>> {
    if m < 1 {
        return Err(Error::Parse("order m must be >= 1".into()));
    }
    let g = model.genus();
    if g < 2 {
        return Err(Error::GenusTooSmall(g as i64));
    }
    let gm1 = (g - 1) as i64;
    let mut out = vec![];
    for i in 0..=(m as i64 * gm1) {
        let x_pow = FunctionRep::from_x_part(
            model,
            RatFun::from_poly(crate::algebra::poly::Polynomial::x(model.field()).pow(i as u64)),
        );
        out.push(PolyDifferential {
            m,
            coeff: x_pow,
            x_power: i as u64,
            with_y: false,
        });
    }
    let top_y = (m as i64 - 1) * gm1 - 2;
    for i in 0..=top_y {
        let x_pow = FunctionRep::from_x_part(
            model,
            RatFun::from_poly(crate::algebra::poly::Polynomial::x(model.field()).pow(i as u64)),
        );
        out.push(PolyDifferential {
            m,
            coeff: x_pow.mul(&FunctionRep::y(model)),
            x_power: i as u64,
            with_y: true,
        });
    }
    Ok(out)
}

/// Expected basis size: g for m = 1, (2m-1)(g-1) for m >= 2.
pub fn expected_basis_size(g: u64, m: u64) -> usize {
    if m == 1 {
        g as usize
    } else {
        ((2 * m - 1) * (g - 1)) as usize
    }
}

/// div(dx) = R - 2 D_infinity, computed on the (possibly base-changed) model
/// where the ramification of the degree-2 cover is rational.
pub fn divisor_of_dx(conc: &ConcreteRamification) -> Result<Divisor> {
    Ok(conc
        .ramification_divisor()
        .sub(&conc.model.d_infinity()?.scale(2)))
}

/// Cached divisor data of a model, on a base change where div(x), div(y) and
/// div(dx) are all rational: polydifferential divisors reduce to integer
/// combinations of these.
pub struct DivisorCalculus {
    pub model: HyperellipticModel,
    pub div_x: Divisor,
    pub div_y: Divisor,
    pub div_dx: Divisor,
    /// div of the omega denominator: y in odd characteristic, h(x) in
    /// characteristic 2.
    pub div_omega_den: Divisor,
}

impl DivisorCalculus {
    pub fn new(model: &HyperellipticModel) -> Result<DivisorCalculus> {
        let mut work = model.clone();
        loop {
            let attempt = (|| -> Result<DivisorCalculus> {
                let sigma_group = vec![
                    CurveAutomorphism::identity(&work),
                    CurveAutomorphism::hyperelliptic_involution(&work),
                ];
                let conc = profile_from_curve(&work, &sigma_group)?;
                let w = conc.model.clone();
                let div_dx = divisor_of_dx(&conc)?;
                let div_x = w.principal_divisor(&FunctionRep::x(&w))?;
                let div_y = w.principal_divisor(&FunctionRep::y(&w))?;
                let div_omega_den = match w.form() {
                    ModelForm::OddChar { .. } => div_y.clone(),
                    ModelForm::Char2 { h, .. } => w.principal_divisor(
                        &FunctionRep::from_x_part(&w, RatFun::from_poly(h.clone())),
                    )?,
                };
                Ok(DivisorCalculus {
                    model: w,
                    div_x,
                    div_y,
                    div_dx,
                    div_omega_den,
                })
            })();
            match attempt {
                Ok(c) => return Ok(c),
                Err(Error::NeedsExtension(e)) => {
                    work = work.base_change(e)?;
                }
                Err(e) => return Err(e),
            }
        }
    }

    /// div(x^i y^eps omega) = i div(x) + eps div(y) + m (div(dx) - div(den)).
    pub fn polydiff_div(&self, pd: &PolyDifferential) -> Divisor {
        let mut d = self.div_x.scale(pd.x_power as i64);
        if pd.with_y {
            d = d.add(&self.div_y);
        }
        d.add(&self.div_dx.scale(pd.m as i64))
            .sub(&self.div_omega_den.scale(pd.m as i64))
    }
}

/// The divisor of a polydifferential, on the base-changed model where
/// everything splits, together with that model.
pub fn polydiff_divisor(
    model: &HyperellipticModel,
    pd: &PolyDifferential,
) -> Result<(HyperellipticModel, Divisor)> {
    let calc = DivisorCalculus::new(model)?;
    if pd.coeff.b_part().is_zero() || pd.with_y {
        // Monomial coefficients are covered by the cached divisors.
        return Ok((calc.model.clone(), calc.polydiff_div(pd)));
    }
    // General coefficient: fall back to a principal-divisor computation.
    let coeff = embed_function(model, &pd.coeff, &calc.model)?;
    let div_c = calc.model.principal_divisor(&coeff)?;
    Ok((
        calc.model.clone(),
        div_c
            .add(&calc.div_dx.scale(pd.m as i64))
            .sub(&calc.div_omega_den.scale(pd.m as i64)),
    ))
}

/// Checks that every element of the order-m basis is holomorphic, by exact
/// divisor arithmetic.
pub fn verify_holomorphic(model: &HyperellipticModel, m: u64) -> Result<()> {
    let calc = DivisorCalculus::new(model)?;
    for pd in basis_polydiff(model, m)? {
        let div = calc.polydiff_div(&pd);
        if !div.is_effective() {
            return Err(Error::HurwitzInconsistent(format!(
                "basis element x^{}{} omega of order {} is not holomorphic",
                pd.x_power,
                if pd.with_y { " y" } else { "" },
                m
            )));
        }
    }
    Ok(())
}

fn embed_function(
    model: &HyperellipticModel,
    u: &FunctionRep,
    target: &HyperellipticModel,
) -> Result<FunctionRep> {
    if model == target {
        return Ok(u.clone());
    }
    let from = model.field();
    let to = target.field();
    Ok(FunctionRep::new(
        target,
        crate::curve::model::embed_ratfun(u.a_part(), from, to)?,
        crate::curve::model::embed_ratfun(u.b_part(), from, to)?,
    ))
}

/// The pullback of a polydifferential coefficient: phi^*(c omega) =
/// phi^*(c) phi^*(omega). For diagonal maps phi^*(omega) = (alpha/lambda)^m
/// omega; for the characteristic-2 involution omega is fixed.
fn pullback_coefficient(phi: &CurveAutomorphism, pd: &PolyDifferential) -> FunctionRep {
    let base = phi.apply(&pd.coeff);
    match phi.kind() {
        AutKind::Char2Identity | AutKind::Char2Involution => base,
        AutKind::Diagonal { alpha, lambda, .. } => {
            let scale = (&alpha.clone() * &lambda.inv().unwrap()).pow(pd.m);
            base.scale(&scale)
        }
    }
}

/// Matrices of the group acting on the order-m basis.
pub fn action_on_polydiff(
    model: &HyperellipticModel,
    group: &[CurveAutomorphism],
    m: u64,
) -> Result<ActionOnSpace> {
    let basis = basis_polydiff(model, m)?;
    let coeffs: Vec<FunctionRep> = basis.iter().map(|b| b.coeff.clone()).collect();
    let field = model.field().clone();
    let dim = basis.len();
    let mut matrices = vec![];
    for phi in group {
        if phi.is_identity() {
            continue;
        }
        let mut mat = crate::algebra::linalg::Matrix::zero(&field, dim, dim);
        for (k, pd) in basis.iter().enumerate() {
            let image = pullback_coefficient(phi, pd);
            let coords = solve_in_span(model, &coeffs, &image).ok_or_else(|| {
                Error::InvalidAutomorphism(
                    "image of a holomorphic polydifferential escapes the basis".into(),
                )
            })?;
            for (j, c) in coords.into_iter().enumerate() {
                *mat.at_mut(j, k) = c;
            }
        }
        matrices.push((phi.clone(), mat));
    }
    Ok(ActionOnSpace { dim, matrices })
}

/// Cross-validation of the three routes to the order-m dimensions.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CrosscheckReport {
    pub m: u64,
    pub rr_dim: usize,
    pub basis_size: usize,
    pub invariant_rr: usize,
    pub invariant_polydiff: usize,
    pub invariant_formula: i64,
    pub consistent: bool,
}

/// Compares dim L(m K_X) with the explicit basis size, and the invariant
/// dimensions from the L(m K_X) action, the polydifferential action, and the
/// closed-form profile formula. Requires a rational quotient (g_Y = 0).
pub fn crosscheck_mkx(
    model: &HyperellipticModel,
    group: &[CurveAutomorphism],
    m: u64,
) -> Result<CrosscheckReport> {
    let conc = profile_from_curve(model, group)?;
    if conc.profile.g_y != 0 {
        return Err(Error::QuotientNotRational);
    }
    let work = &conc.model;
    let kx = conc.canonical_divisor()?;
    let rr = rr_basis(work, &kx.scale(m as i64))?;
    let rr_action = action_on_rr(work, &conc.group, &rr)?;
    let invariant_rr = rr_action.invariant_dim();
    let diff_action = action_on_polydiff(work, &conc.group, m)?;
    let invariant_polydiff = diff_action.invariant_dim();
    let basis_size = basis_polydiff(work, m)?.len();
    let invariant_formula = invariant_dim_polydiff(&conc.profile, m)?;
    let consistent = rr.dim == basis_size
        && invariant_rr == invariant_polydiff
        && invariant_formula == invariant_rr as i64;
    Ok(CrosscheckReport {
        m,
        rr_dim: rr.dim,
        basis_size,
        invariant_rr,
        invariant_polydiff,
        invariant_formula,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Field;
    use crate::algebra::poly::Polynomial;
    use crate::curve::place::PlaceKey;

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
    fn basis_sizes() {
        let m = c1();
        assert_eq!(basis_polydiff(&m, 1).unwrap().len(), 2); // {w, xw}
        assert_eq!(basis_polydiff(&m, 2).unwrap().len(), 3); // {w, xw, x2w}
        let b3 = basis_polydiff(&m, 3).unwrap();
        assert_eq!(b3.len(), 5); // {w..x3w, yw}
        assert_eq!(b3.iter().filter(|p| p.with_y).count(), 1);
        let m2 = c2();
        assert_eq!(basis_polydiff(&m2, 2).unwrap().len(), 3);
    }

    #[test]
    fn div_identities() {
        // div(x) = D_0 - D_inf and div(y) = R - (g+1) D_inf on C1 (over the
        // extension where x = 0 splits).
        let m = c1().base_change(2).unwrap();
        let conc = profile_from_curve(&m, &sigma_group(&m)).unwrap();
        let x = FunctionRep::x(&m);
        assert_eq!(
            m.principal_divisor(&x).unwrap(),
            m.d_zero().unwrap().sub(&m.d_infinity().unwrap())
        );
        let y = FunctionRep::y(&m);
        let expected = conc
            .ramification_divisor()
            .sub(&m.d_infinity().unwrap().scale(3));
        assert_eq!(m.principal_divisor(&y).unwrap(), expected);

        // div(h) = R - (g+1) D_inf on C2: h = 1 and R = 6[P_inf],
        // D_inf = 2[P_inf], so R - 3 D_inf = 0. Trivially the unit divisor.
        let m2 = c2();
        let conc2 = profile_from_curve(&m2, &sigma_group(&m2)).unwrap();
        let r2 = conc2.ramification_divisor();
        assert_eq!(
            r2.sub(&m2.d_infinity().unwrap().scale(3)),
            Divisor::zero()
        );
    }

    #[test]
    fn all_basis_elements_holomorphic() {
        for m in 1..=4 {
            verify_holomorphic(&c1(), m).unwrap();
            verify_holomorphic(&c2(), m).unwrap();
        }
    }

    #[test]
    fn explicit_divisor_of_x_i_omega() {
        // div(x^i omega) = i D_0 + (m(g-1) - i) D_inf on C1.
        let m = c1();
        let pd = &basis_polydiff(&m, 2).unwrap()[1]; // x omega, m = 2
        let (work, div) = polydiff_divisor(&m, pd).unwrap();
        // i D_0 + (m(g-1) - i) D_inf with m = 2, g = 2, i = 1.
        let expected = work
            .d_zero()
            .unwrap()
            .add(&work.d_infinity().unwrap());
        assert_eq!(div, expected);
    }

    #[test]
    fn sigma_action_matrices_follow_sign_rule() {
        let m = c1();
        let grp = sigma_group(&m);
        // m = 2: identity.
        let a2 = action_on_polydiff(&m, &grp, 2).unwrap();
        assert!(a2.is_trivial());
        assert_eq!(a2.invariant_dim(), 3);
        // m = 3: diag(-1,-1,-1,-1, +1).
        let a3 = action_on_polydiff(&m, &grp, 3).unwrap();
        let mat = &a3.matrices[0].1;
        let f = m.field();
        for i in 0..4 {
            assert_eq!(mat.at(i, i), &f.from_int(-1));
        }
        assert_eq!(mat.at(4, 4), &f.from_int(1));
        assert_eq!(a3.invariant_dim(), 1);
        // m = 1: diag(-1, -1).
        let a1 = action_on_polydiff(&m, &grp, 1).unwrap();
        assert_eq!(a1.invariant_dim(), 0);
        // Involution matrices square to the identity.
        for a in [a1, a2, a3] {
            for (_, mm) in &a.matrices {
                assert!(mm.mul(mm).is_identity());
            }
        }
    }

    #[test]
    fn char2_sigma_action_m1_trivial() {
        let m = c2();
        let a = action_on_polydiff(&m, &sigma_group(&m), 1).unwrap();
        assert!(a.is_trivial());
        assert_eq!(a.invariant_dim(), 2);
    }

    #[test]
    fn crosscheck_examples() {
        let m = c1();
        let grp = sigma_group(&m);
        let r2 = crosscheck_mkx(&m, &grp, 2).unwrap();
        assert!(r2.consistent, "{:?}", r2);
        assert_eq!(
            (r2.rr_dim, r2.basis_size, r2.invariant_formula),
            (3, 3, 3)
        );
        let r1 = crosscheck_mkx(&m, &grp, 1).unwrap();
        assert!(r1.consistent, "{:?}", r1);
        assert_eq!((r1.rr_dim, r1.invariant_formula), (2, 0));

        let m2 = c2();
        let grp2 = sigma_group(&m2);
        let r1b = crosscheck_mkx(&m2, &grp2, 1).unwrap();
        assert!(r1b.consistent, "{:?}", r1b);
        assert_eq!((r1b.rr_dim, r1b.invariant_formula), (2, 2));
    }

    #[test]
    fn fixed_dims_match_closed_form_odd_char() {
        // m even >= 2: m(g-1)+1; m odd >= 3: (m-1)(g-1)-1; m = 1: 0.
        let m = c1();
        let g = m.genus() as i64;
        let grp = sigma_group(&m);
        for order in 1..=5u64 {
            let action = action_on_polydiff(&m, &grp, order).unwrap();
            let expected = if order == 1 {
                0
            } else if order % 2 == 0 {
                order as i64 * (g - 1) + 1
            } else {
                (order as i64 - 1) * (g - 1) - 1
            };
            assert_eq!(action.invariant_dim() as i64, expected, "m = {}", order);
            let conc = profile_from_curve(&m, &grp).unwrap();
            assert_eq!(
                invariant_dim_polydiff(&conc.profile, order).unwrap(),
                expected
            );
        }
    }

    #[test]
    fn char2_action_not_diagonal_but_unipotent() {
        // On C2 with m = 3 the second block mixes: sigma(y) = y + 1 sends
        // x^i y omega to x^i y omega + x^i omega.
        let m = c2();
        let a = action_on_polydiff(&m, &sigma_group(&m), 3).unwrap();
        let mat = &a.matrices[0].1;
        assert!(!mat.is_identity());
        assert!(mat.mul(mat).is_identity());
        // dim 5, invariant: x^i omega fixed (4), y-block contributes none.
        assert_eq!(a.dim, 5);
        assert_eq!(a.invariant_dim(), 4);
        let conc = profile_from_curve(&m, &sigma_group(&m)).unwrap();
        assert_eq!(invariant_dim_polydiff(&conc.profile, 3).unwrap(), 4);
    }

    #[test]
    fn genus_three_and_four_models() {
        let f7 = Field::prime(7).unwrap();
        // g = 3: f = x^7 - x (splits over GF(7)).
        let g3 = HyperellipticModel::new_odd(
            &f7,
            Polynomial::from_ints(&f7, &[0, -1, 0, 0, 0, 0, 0, 1]),
        )
        .unwrap();
        assert_eq!(g3.genus(), 3);
        // g = 4: f = (x^7 - x)(x^2 + 1).
        let f9 = &Polynomial::from_ints(&f7, &[0, -1, 0, 0, 0, 0, 0, 1])
            * &Polynomial::from_ints(&f7, &[1, 0, 1]);
        let g4 = HyperellipticModel::new_odd(&f7, f9).unwrap();
        assert_eq!(g4.genus(), 4);
        for model in [g3, g4] {
            let g = model.genus();
            for order in 1..=3u64 {
                assert_eq!(
                    basis_polydiff(&model, order).unwrap().len(),
                    expected_basis_size(g, order)
                );
            }
            verify_holomorphic(&model, 2).unwrap();
        }
        // Char-2 genus sweep: y^2 - y = x^7 (g=3), x^9 (g=4).
        let f2 = Field::prime(2).unwrap();
        for (r, g) in [(7usize, 3u64), (9, 4)] {
            let mut coeffs = vec![0i64; r + 1];
            coeffs[r] = 1;
            let model = HyperellipticModel::new_char2(
                &f2,
                Polynomial::one(&f2),
                Polynomial::from_ints(&f2, &coeffs),
            )
            .unwrap();
            assert_eq!(model.genus(), g);
            for order in 1..=3u64 {
                assert_eq!(
                    basis_polydiff(&model, order).unwrap().len(),
                    expected_basis_size(g, order)
                );
            }
            verify_holomorphic(&model, 1).unwrap();
        }
    }

    #[test]
    fn canonical_divisor_is_div_dx() {
        let m = c1();
        let conc = profile_from_curve(&m, &sigma_group(&m)).unwrap();
        let dx = divisor_of_dx(&conc).unwrap();
        assert_eq!(dx, conc.canonical_divisor().unwrap());
        assert_eq!(dx.degree(), 2);
        assert_eq!(dx.coeff(&PlaceKey::Finite { a: 1, y: 0 }), 1);
    }
}
