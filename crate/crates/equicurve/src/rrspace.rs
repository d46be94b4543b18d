//! Riemann-Roch spaces L(D) on hyperelliptic curves: a brute-force basis
//! oracle via local expansions and exact kernels, group-action matrices on
//! L(D), and the closed-form invariant-dimension formulas.
//!
//! The oracle decomposes candidates as u = (A(x) + B(x) y) / den(x), where den
//! collects the finite poles allowed by D (the affine model is smooth, so
//! every u in L(D) has this shape), bounds deg A and deg B through the
//! valuations at infinity, and imposes the local conditions of D as exact
//! linear constraints on series coefficients.

use crate::algebra::field::FieldElement;
use crate::algebra::linalg::Matrix;
use crate::algebra::poly::Polynomial;
use crate::algebra::ratfun::RatFun;
use crate::curve::asred::XPoint;
use crate::curve::automorphism::CurveAutomorphism;
use crate::curve::divisor::Divisor;
use crate::curve::function::FunctionRep;
use crate::curve::model::HyperellipticModel;
use crate::curve::place::Place;
use crate::error::{Error, Result};
use crate::ramification::{InvariantDivisorSpec, RamificationProfile};

/// Default cap on deg D for the oracle: 8g + 16.
pub fn rr_degree_cap(model: &HyperellipticModel) -> i64 {
    8 * model.genus() as i64 + 16
}

#[derive(Clone, Debug)]
pub struct RRBasis {
    pub divisor: Divisor,
    pub basis: Vec<FunctionRep>,
    pub dim: usize,
}

/// Deterministic echelonized basis of L(D).
///
/// Requires the support of D (and the infinite places) to be rational over
/// the model's working field; use `base_change` first otherwise.
pub fn rr_basis(model: &HyperellipticModel, d: &Divisor) -> Result<RRBasis> {
    if d.degree() > rr_degree_cap(model) {
        return Err(Error::BoundExceeded(format!(
            "deg D = {} exceeds the oracle cap {}",
            d.degree(),
            rr_degree_cap(model)
        )));
    }
    let field = model.field().clone();

    // Constraint places: everything over the finite x-support, plus infinity.
    let mut constraint_places: Vec<Place> = vec![];
    for a_enc in d.finite_x_support() {
        let a = field.from_enc(a_enc);
        constraint_places.extend(model.places_over(&XPoint::Finite(a))?);
    }
    let inf_places = model.places_over(&XPoint::Infinity)?;
    constraint_places.extend(inf_places.iter().cloned());
    constraint_places.sort_by(|p, q| p.key.cmp(&q.key));
    constraint_places.dedup_by(|p, q| p.key == q.key);

    // Denominator: for each x-coordinate, the smallest power of (x - a)
    // whose pullback dominates the allowed pole orders.
    let mut den = Polynomial::one(&field);
    for a_enc in d.finite_x_support() {
        let a = field.from_enc(a_enc);
        let mut dj: i64 = 0;
        for p in model.places_over(&XPoint::Finite(a.clone()))? {
            let np = d.coeff(&p.key);
            let e = p.e as i64;
            dj = dj.max((np + e - 1).div_euclid(e));
        }
        if dj > 0 {
            den = &den * &Polynomial::x_minus(&a).pow(dj as u64);
        }
    }
    let den_deg = den.deg_i64();

    // Degree caps for A and B from the valuations at infinity.
    let m_inf: i64 = inf_places.iter().map(|p| d.coeff(&p.key)).max().unwrap_or(0).max(0);
    let y = FunctionRep::y(model);
    let mut cap_a = i64::MAX;
    let mut cap_b = i64::MAX;
    for p in &inf_places {
        let e = p.e as i64;
        let w = model.valuation(&y, &p.key)?;
        if model.is_char2() {
            let deg_h = model.h().unwrap().deg_i64();
            let vh = -e * deg_h;
            // v(b h) >= -M and v(a) >= -M - max(0, v(h) - v(y)).
            cap_a = cap_a.min(den_deg + (m_inf + (vh - w).max(0)).div_euclid(e));
            cap_b = cap_b.min(den_deg + m_inf.div_euclid(e) - deg_h);
        } else {
            cap_a = cap_a.min(den_deg + m_inf.div_euclid(e));
            cap_b = cap_b.min(den_deg + (m_inf + w).div_euclid(e));
        }
    }
    let n_a = (cap_a + 1).max(0) as usize;
    let n_b = (cap_b + 1).max(0) as usize;
    let ncols = n_a + n_b;
    if ncols == 0 {
        return Ok(RRBasis {
            divisor: d.clone(),
            basis: vec![],
            dim: 0,
        });
    }

    // Assemble constraint rows.
    let den_rat = RatFun::from_poly(den.clone());
    let mut rows: Vec<Vec<FieldElement>> = vec![];
    for p in &constraint_places {
        let e = p.e as i64;
        let np = d.coeff(&p.key);
        // A-priori valuation floor over all monomials at this place.
        let floor = if p.is_infinite() {
            let w = model.valuation(&y, &p.key)?;
            let fa = e * (den_deg - cap_a.max(0));
            let fb = if n_b > 0 {
                e * (den_deg - cap_b.max(0)) + w
            } else {
                i64::MAX
            };
            fa.min(fb)
        } else {
            -e * den_deg
        };
        if floor >= -np {
            continue; // no condition can be violated here
        }
        // Enough terms to certify the denominator valuation (bounded by
        // -floor) and to read the constraint coefficients below -np.
        let terms = ((-floor) + (-np).max(0) + 4) as usize;
        let terms = terms.max(model.default_prec());
        // Expand 1/den, x, y at this place once; build monomials incrementally.
        let le = model.local_expansion(&p.key, terms)?;
        let den_inv = model
            .expand_function(&p.key, &FunctionRep::from_x_part(model, den_rat.clone()), terms)?
            .invert()?;
        let y_ser = le.y.clone();
        let x_ser = le.x.clone();
        let mut monomials: Vec<crate::algebra::series::Laurent> =
            Vec::with_capacity(ncols);
        let mut xpow = crate::algebra::series::Laurent::new(
            0,
            crate::algebra::series::PowerSeries::constant(field.one(), terms),
        );
        for i in 0..n_a.max(n_b) {
            if i > 0 {
                xpow = xpow.mul(&x_ser);
            }
            if i < n_a {
                monomials.push(xpow.mul(&den_inv));
            }
        }
        // Reorder: first the A monomials (already pushed), then B monomials.
        let mut xpow = crate::algebra::series::Laurent::new(
            0,
            crate::algebra::series::PowerSeries::constant(field.one(), terms),
        );
        for i in 0..n_b {
            if i > 0 {
                xpow = xpow.mul(&x_ser);
            }
            monomials.push(xpow.mul(&y_ser).mul(&den_inv));
        }
        debug_assert_eq!(monomials.len(), ncols);
        for l in floor..-np {
            let row: Vec<FieldElement> = monomials.iter().map(|m| m.coeff(l)).collect();
            if row.iter().all(|c| c.is_zero()) {
                continue;
            }
            rows.push(row);
        }
    }

    let basis_vectors = if rows.is_empty() {
        // No constraints: the whole ansatz space.
        Matrix::zero(&field, 1, ncols).kernel_basis()
    } else {
        Matrix::from_rows(&field, &rows).kernel_basis()
    };

    let basis: Vec<FunctionRep> = basis_vectors
        .iter()
        .map(|v| {
            let a_poly = Polynomial::new(&field, v[..n_a].to_vec());
            let b_poly = Polynomial::new(&field, v[n_a..].to_vec());
            FunctionRep::new(
                model,
                &RatFun::from_poly(a_poly) / &den_rat,
                &RatFun::from_poly(b_poly) / &den_rat,
            )
        })
        .collect();
    let dim = basis.len();
    Ok(RRBasis {
        divisor: d.clone(),
        basis,
        dim,
    })
}

/// Solves sum_j c_j basis[j] = w exactly; None when w is outside the span.
pub fn solve_in_span(
    model: &HyperellipticModel,
    basis: &[FunctionRep],
    w: &FunctionRep,
) -> Option<Vec<FieldElement>> {
    let field = model.field().clone();
    // Common denominator over all parts.
    let mut lcm = Polynomial::one(&field);
    let mut absorb = |r: &RatFun| {
        let g = lcm.gcd(r.den());
        lcm = &lcm * &r.den().divrem(&g).0;
    };
    for u in basis.iter().chain(std::iter::once(w)) {
        absorb(u.a_part());
        absorb(u.b_part());
    }
    let clear = |r: &RatFun| -> Polynomial {
        let (q, rem) = lcm.divrem(r.den());
        debug_assert!(rem.is_zero());
        r.num() * &q
    };
    let mut max_deg = 0usize;
    let cleared: Vec<(Polynomial, Polynomial)> = basis
        .iter()
        .chain(std::iter::once(w))
        .map(|u| {
            let a = clear(u.a_part());
            let b = clear(u.b_part());
            max_deg = max_deg
                .max(a.degree().map_or(0, |d| d + 1))
                .max(b.degree().map_or(0, |d| d + 1));
            (a, b)
        })
        .collect();
    // Rows: coefficients of the a-part then the b-part.
    let nrows = 2 * max_deg.max(1);
    let mut cols: Vec<Vec<FieldElement>> = vec![];
    for (a, b) in &cleared {
        let mut col = Vec::with_capacity(nrows);
        for i in 0..max_deg.max(1) {
            col.push(a.coeff(i));
        }
        for i in 0..max_deg.max(1) {
            col.push(b.coeff(i));
        }
        cols.push(col);
    }
    let target = cols.pop().unwrap();
    let mut data = Vec::with_capacity(nrows * cols.len());
    for r in 0..nrows {
        for c in &cols {
            data.push(c[r].clone());
        }
    }
    let m = Matrix::new(&field, nrows, cols.len(), data);
    m.solve(&target)
}

/// Matrices of group elements acting (by pullback) on a Riemann-Roch basis.
#[derive(Clone, Debug)]
pub struct ActionOnSpace {
    pub dim: usize,
    /// One matrix per non-identity element supplied.
    pub matrices: Vec<(CurveAutomorphism, Matrix)>,
}

impl ActionOnSpace {
    pub fn is_trivial(&self) -> bool {
        self.matrices.iter().all(|(_, m)| m.is_identity())
    }

    /// Order of the matrix group generated by the supplied matrices.
    pub fn matrix_group_order(&self) -> usize {
        let field = match self.matrices.first() {
            Some((_, m)) => m.field().clone(),
            None => return 1,
        };
        let id = Matrix::identity(&field, self.dim);
        let mut group = vec![id];
        let mut frontier = group.clone();
        while let Some(cur) = frontier.pop() {
            for (_, g) in &self.matrices {
                let next = cur.mul(g);
                if !group.contains(&next) {
                    group.push(next.clone());
                    frontier.push(next);
                }
            }
        }
        group.len()
    }

    /// Dimension of the joint fixed subspace: the nullity of the stacked
    /// (M_i - I).
    pub fn invariant_dim(&self) -> usize {
        if self.matrices.is_empty() {
            return self.dim;
        }
        let field = self.matrices[0].1.field().clone();
        let id = Matrix::identity(&field, self.dim);
        let mut stacked: Option<Matrix> = None;
        for (_, m) in &self.matrices {
            let diff = m.sub(&id);
            stacked = Some(match stacked {
                None => diff,
                Some(s) => s.vstack(&diff),
            });
        }
        stacked.unwrap().kernel_basis().len()
    }
}

/// Computes the action matrices of the non-identity elements of `group` on the
/// given basis of L(D). Errors with NotInvariant when some image leaves the
/// span.
pub fn action_on_rr(
    model: &HyperellipticModel,
    group: &[CurveAutomorphism],
    basis: &RRBasis,
) -> Result<ActionOnSpace> {
    let field = model.field().clone();
    let dim = basis.dim;
    let mut matrices = vec![];
    for phi in group {
        if phi.is_identity() {
            continue;
        }
        let mut m = Matrix::zero(&field, dim, dim);
        for (k, u) in basis.basis.iter().enumerate() {
            let image = phi.apply(u);
            let coords = solve_in_span(model, &basis.basis, &image)
                .ok_or(Error::NotInvariant)?;
            for (j, c) in coords.into_iter().enumerate() {
                *m.at_mut(j, k) = c;
            }
        }
        matrices.push((phi.clone(), m));
    }
    Ok(ActionOnSpace { dim, matrices })
}

/// Concrete invariant dimension: fixed subspace of the action matrices.
pub fn invariant_dim_concrete(action: &ActionOnSpace) -> usize {
    action.invariant_dim()
}

/// Closed-form invariant dimension
///   dim L(D)^G = 1 - g_Y + deg(D)/n - sum_Q <n_Q/e_Q>
///              = 1 - g_Y + sum_Q floor(n_Q/e_Q),
/// valid when deg D exceeds 2g_X - 2 minus the wild correction.
pub fn invariant_dim_formula(
    profile: &RamificationProfile,
    dspec: &InvariantDivisorSpec,
) -> Result<i64> {
    let g_x = profile.validate()? as i64;
    let deg = dspec.degree(profile);
    let bound = 2 * g_x - 2 - profile.wild_correction() as i64;
    if deg <= bound {
        return Err(Error::DegreeTooSmall { deg, bound });
    }
    Ok(1 - profile.g_y as i64 + dspec.floor_pushforward_degree(profile))
}

/// Formula value without the degree-hypothesis gate (reported as "outside
/// hypothesis" by callers).
pub fn invariant_dim_formula_unchecked(
    profile: &RamificationProfile,
    dspec: &InvariantDivisorSpec,
) -> i64 {
    1 - profile.g_y as i64 + dspec.floor_pushforward_degree(profile)
}

/// Invariant dimension of the order-m polydifferentials:
///   g_Y                                     if m = 1 and pi is tame,
///   (2m-1)(g_Y - 1) + deg floor(m pi_* R/n) otherwise.
/// For m = 1 the wild case is cross-checked against the equivalent
///   g_Y - 1 + sum_{Q in S} floor(delta_Q / e_Q).
pub fn invariant_dim_polydiff(profile: &RamificationProfile, m: u64) -> Result<i64> {
    assert!(m >= 1);
    let g_x = profile.validate()?;
    if g_x < 2 {
        return Err(Error::GenusTooSmall(g_x as i64));
    }
    let g_y = profile.g_y as i64;
    if m == 1 && profile.is_tame() {
        return Ok(g_y);
    }
    let floor_deg: i64 = profile
        .branch
        .iter()
        .map(|b| ((m * b.delta()) / b.e) as i64)
        .sum();
    let value = (2 * m as i64 - 1) * (g_y - 1) + floor_deg;
    if m == 1 {
        let s_sum: i64 = profile
            .wild_branch()
            .map(|b| (b.delta() / b.e) as i64)
            .sum();
        let alt = g_y - 1 + s_sum;
        debug_assert_eq!(value, alt, "the two m=1 formulas must agree");
    }
    Ok(value)
}
