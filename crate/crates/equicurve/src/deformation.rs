//! Equivariant deformation dimensions and the representation-theoretic side
//! conditions: invariants vs coinvariants, duality, and the
//! normal-subgroup/cyclic-quotient sufficient condition for their equality.

use serde::Serialize;

use crate::algebra::field::Field;
use crate::algebra::linalg::Matrix;
use crate::error::{Error, Result};
use crate::ramification::RamificationProfile;
use crate::rrspace::invariant_dim_polydiff;

/// A matrix representation of a finite group, given by generator matrices.
#[derive(Clone, Debug)]
pub struct GroupRepresentation {
    pub field: Field,
    pub dim: usize,
    pub generators: Vec<Matrix>,
}

impl GroupRepresentation {
    pub fn new(field: &Field, dim: usize, generators: Vec<Matrix>) -> Result<GroupRepresentation> {
        for g in &generators {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::Parse("generator matrix has wrong shape".into()));
            }
            if g.inverse().is_none() {
                return Err(Error::Parse("generator matrix is singular".into()));
            }
        }
        Ok(GroupRepresentation {
            field: field.clone(),
            dim,
            generators,
        })
    }

    /// The dual (contragredient) representation: transpose of the inverse on
    /// each generator.
    pub fn dual(&self) -> GroupRepresentation {
        GroupRepresentation {
            field: self.field.clone(),
            dim: self.dim,
            generators: self
                .generators
                .iter()
                .map(|g| g.inverse().expect("invertible").transpose())
                .collect(),
        }
    }
}

/// (dim M^G, dim M_G): the fixed subspace is the joint kernel of the
/// (g_i - I); the coinvariants are M modulo the span of the images of the
/// (g_i - I).
pub fn inv_coinv_dims(rep: &GroupRepresentation) -> (usize, usize) {
    if rep.generators.is_empty() {
        return (rep.dim, rep.dim);
    }
    let id = Matrix::identity(&rep.field, rep.dim);
    let mut stacked: Option<Matrix> = None; // vertical: kernel = invariants
    let mut joined: Option<Matrix> = None; // horizontal: column space = augmentation image
    for g in &rep.generators {
        let diff = g.sub(&id);
        stacked = Some(match stacked {
            None => diff.clone(),
            Some(s) => s.vstack(&diff),
        });
        joined = Some(match joined {
            None => diff,
            Some(s) => s.hstack(&diff),
        });
    }
    let inv = stacked.unwrap().kernel_basis().len();
    let coinv = rep.dim - joined.unwrap().rank();
    (inv, coinv)
}

/// Checks the canonical isomorphism (M_G)^* = (M^*)^G on dimensions: the
/// coinvariants of M and the invariants of the dual representation always
/// agree. A false return signals a linear-algebra bug.
pub fn check_duality(rep: &GroupRepresentation) -> bool {
    let (_, coinv) = inv_coinv_dims(rep);
    let (dual_inv, _) = inv_coinv_dims(&rep.dual());
    coinv == dual_inv
}

/// The equivariant deformation dimension
///   3 g_Y - 3 + sum_Q floor(2 delta_Q / e_Q)
/// together with the invariant quadratic-differential dimension it must equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformationReport {
    pub dim: i64,
    pub crosscheck: i64,
    pub consistent: bool,
}

pub fn deformation_dim(profile: &RamificationProfile) -> Result<DeformationReport> {
    let g_x = profile.validate()?;
    if g_x < 2 {
        return Err(Error::GenusTooSmall(g_x as i64));
    }
    let floor_sum: i64 = profile
        .branch
        .iter()
        .map(|b| ((2 * b.delta()) / b.e) as i64)
        .sum();
    let dim = 3 * profile.g_y as i64 - 3 + floor_sum;
    let crosscheck = invariant_dim_polydiff(profile, 2)?;
    Ok(DeformationReport {
        dim,
        crosscheck,
        consistent: dim == crosscheck,
    })
}

/// Group-shape metadata: a normal subgroup of the stated order with cyclic
/// quotient. When the characteristic does not divide the normal order, the
/// invariants/coinvariants equality is proved for every module.
#[derive(Clone, Debug, serde::Deserialize, Serialize)]
pub struct GroupShape {
    #[serde(rename = "N")]
    pub normal_order: u64,
    #[serde(rename = "cyclicQuotient")]
    pub cyclic_quotient: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct HypothesisReport {
    /// "proved" when the group shape settles it, else "sampled".
    pub status: String,
    /// Per-sample (dim M^G, dim M_G).
    pub samples: Vec<(usize, usize)>,
    pub all_equal: bool,
}

/// Spot-checks dim M^G = dim M_G on the supplied modules, and upgrades the
/// verdict to "proved" when shape metadata gives the sufficient condition.
pub fn check_groups_hypothesis(
    reps: &[GroupRepresentation],
    shape: Option<&GroupShape>,
) -> HypothesisReport {
    let samples: Vec<(usize, usize)> = reps.iter().map(inv_coinv_dims).collect();
    let all_equal = samples.iter().all(|(a, b)| a == b);
    // Proved when p does not divide |N| (the metadata asserts G/N cyclic).
    let proved = match (shape, reps.first()) {
        (Some(s), Some(r)) => s.normal_order >= 1 && s.normal_order % r.field.p() != 0,
        (Some(s), None) => s.normal_order >= 1,
        _ => false,
    };
    HypothesisReport {
        status: if proved { "proved".into() } else { "sampled".into() },
        samples,
        all_equal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Field;
    use crate::curve::automorphism::CurveAutomorphism;
    use crate::curve::model::HyperellipticModel;
    use crate::ramification::{profile_from_curve, BranchPoint};

    /// The elementary-abelian example: (Z/p)^2 acting on k^3 by
    /// I + a E_12 + b E_13.
    fn elementary_example(p: u64) -> GroupRepresentation {
        let f = Field::prime(p).unwrap();
        let g1 = Matrix::from_ints(&f, &[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let g2 = Matrix::from_ints(&f, &[vec![1, 0, 1], vec![0, 1, 0], vec![0, 0, 1]]);
        GroupRepresentation::new(&f, 3, vec![g1, g2]).unwrap()
    }

    #[test]
    fn elementary_abelian_counterexample() {
        let rep = elementary_example(3);
        assert_eq!(inv_coinv_dims(&rep), (1, 2));
        assert!(check_duality(&rep));
        let report = check_groups_hypothesis(&[rep], None);
        assert!(!report.all_equal);
        assert_eq!(report.status, "sampled");
    }

    #[test]
    fn trivial_rep_dims() {
        let f = Field::prime(5).unwrap();
        let rep = GroupRepresentation::new(&f, 4, vec![Matrix::identity(&f, 4)]).unwrap();
        assert_eq!(inv_coinv_dims(&rep), (4, 4));
        assert!(check_duality(&rep));
    }

    #[test]
    fn sigma_rep_on_l3dinf() {
        // diag(1,1,1,1,-1) over GF(7): invariants = coinvariants = 4.
        let f = Field::prime(7).unwrap();
        let mut m = Matrix::identity(&f, 5);
        *m.at_mut(4, 4) = f.from_int(-1);
        let rep = GroupRepresentation::new(&f, 5, vec![m]).unwrap();
        assert_eq!(inv_coinv_dims(&rep), (4, 4));
        assert!(check_duality(&rep));
    }

    #[test]
    fn unipotent_jordan_blocks() {
        // Cyclic p-group: both dimensions equal the number of Jordan blocks.
        let f = Field::prime(2).unwrap();
        // One 2-block and one 1-block: [[1,1,0],[0,1,0],[0,0,1]].
        let g = Matrix::from_ints(&f, &[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let rep = GroupRepresentation::new(&f, 3, vec![g]).unwrap();
        assert_eq!(inv_coinv_dims(&rep), (2, 2));
        assert!(check_duality(&rep));
    }

    #[test]
    fn random_reps_satisfy_duality() {
        let f = Field::prime(2).unwrap();
        let mut seed: u64 = 7;
        let mut next = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        let mut found = 0;
        while found < 10 {
            let dim = 5;
            let data: Vec<_> = (0..dim * dim).map(|_| f.from_enc(next() % 2)).collect();
            let m = Matrix::new(&f, dim, dim, data);
            if m.inverse().is_none() {
                continue;
            }
            found += 1;
            let rep = GroupRepresentation::new(&f, dim, vec![m]).unwrap();
            assert!(check_duality(&rep));
        }
    }

    #[test]
    fn deformation_dims() {
        let f7 = Field::prime(7).unwrap();
        let c1 = HyperellipticModel::new_odd(
            &f7,
            crate::algebra::poly::Polynomial::from_ints(&f7, &[-1, 0, 0, 0, 0, 0, 1]),
        )
        .unwrap();
        let grp = vec![
            CurveAutomorphism::identity(&c1),
            CurveAutomorphism::hyperelliptic_involution(&c1),
        ];
        let conc = profile_from_curve(&c1, &grp).unwrap();
        let rep = deformation_dim(&conc.profile).unwrap();
        assert_eq!(rep.dim, 3);
        assert!(rep.consistent);

        let f2 = Field::prime(2).unwrap();
        let c2 = HyperellipticModel::new_char2(
            &f2,
            crate::algebra::poly::Polynomial::one(&f2),
            crate::algebra::poly::Polynomial::from_ints(&f2, &[0, 0, 0, 0, 0, 1]),
        )
        .unwrap();
        let grp2 = vec![
            CurveAutomorphism::identity(&c2),
            CurveAutomorphism::hyperelliptic_involution(&c2),
        ];
        let conc2 = profile_from_curve(&c2, &grp2).unwrap();
        let rep2 = deformation_dim(&conc2.profile).unwrap();
        assert_eq!(rep2.dim, 3); // -3 + floor(12/2)
        assert!(rep2.consistent);

        // Tame profile with g_Y = 1, two branch points of delta 1: dim 2.
        let tame = RamificationProfile::new(2, 1, vec![BranchPoint::tame(2); 2]).unwrap();
        assert_eq!(tame.validate().unwrap(), 2);
        let rep3 = deformation_dim(&tame).unwrap();
        assert_eq!(rep3.dim, 2);
        assert!(rep3.consistent);
    }

    #[test]
    fn maschke_case_equal_dims() {
        // p does not divide |G|: invariants = coinvariants on random reps of
        // the order-2 group over GF(7).
        let f = Field::prime(7).unwrap();
        let mut seed: u64 = 99;
        let mut next = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        let mut found = 0;
        while found < 8 {
            let dim = 4;
            let data: Vec<_> = (0..dim * dim).map(|_| f.from_enc(next() % 7)).collect();
            let s = Matrix::new(&f, dim, dim, data);
            // Build an involution by conjugating diag(1,1,-1,-1) when s is
            // invertible.
            let Some(sinv) = s.inverse() else { continue };
            found += 1;
            let mut d = Matrix::identity(&f, dim);
            *d.at_mut(2, 2) = f.from_int(-1);
            *d.at_mut(3, 3) = f.from_int(-1);
            let g = s.mul(&d).mul(&sinv);
            let rep = GroupRepresentation::new(&f, dim, vec![g]).unwrap();
            let (inv, coinv) = inv_coinv_dims(&rep);
            assert_eq!(inv, coinv);
            let report = check_groups_hypothesis(
                &[rep],
                Some(&GroupShape {
                    normal_order: 2,
                    cyclic_quotient: 1,
                }),
            );
            assert_eq!(report.status, "proved");
            assert!(report.all_equal);
        }
    }
}
