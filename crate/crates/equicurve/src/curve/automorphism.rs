//! Curve automorphisms: the hyperelliptic involution in every characteristic,
//! and affine-diagonal maps x -> alpha x + beta, y -> lambda y in odd
//! characteristic.
//!
//! Automorphisms are stored by their pullback on functions. The induced map on
//! places satisfies v_{phi P}(u) = v_P(phi^* u), and the group law is chosen so
//! that (phi psi) P = phi (psi P).

use crate::algebra::field::FieldElement;
use crate::curve::function::FunctionRep;
use crate::curve::model::HyperellipticModel;
use crate::curve::place::PlaceKey;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AutKind {
    /// Characteristic 2: the identity.
    Char2Identity,
    /// Characteristic 2: y -> y - h(x) (equivalently y + h(x)).
    Char2Involution,
    /// Odd characteristic: pullback x -> alpha x + beta, y -> lambda y.
    /// The identity is (1, 0, 1), the involution (1, 0, -1).
    Diagonal {
        alpha: FieldElement,
        beta: FieldElement,
        lambda: FieldElement,
    },
}

#[derive(Clone, PartialEq, Eq)]
pub struct CurveAutomorphism {
    model: HyperellipticModel,
    kind: AutKind,
}

impl std::fmt::Debug for CurveAutomorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.kind {
            AutKind::Char2Identity => write!(f, "id"),
            AutKind::Char2Involution => write!(f, "sigma"),
            AutKind::Diagonal { alpha, beta, lambda } => {
                write!(f, "(x -> {}x+{}, y -> {}y)", alpha, beta, lambda)
            }
        }
    }
}

impl CurveAutomorphism {
    pub fn identity(model: &HyperellipticModel) -> CurveAutomorphism {
        let kind = if model.is_char2() {
            AutKind::Char2Identity
        } else {
            let field = model.field();
            AutKind::Diagonal {
                alpha: field.one(),
                beta: field.zero(),
                lambda: field.one(),
            }
        };
        CurveAutomorphism {
            model: model.clone(),
            kind,
        }
    }

    pub fn hyperelliptic_involution(model: &HyperellipticModel) -> CurveAutomorphism {
        let kind = if model.is_char2() {
            AutKind::Char2Involution
        } else {
            let field = model.field();
            AutKind::Diagonal {
                alpha: field.one(),
                beta: field.zero(),
                lambda: -&field.one(),
            }
        };
        CurveAutomorphism {
            model: model.clone(),
            kind,
        }
    }

    /// Odd characteristic only. Valid iff f(alpha x + beta) = lambda^2 f(x)
    /// identically and alpha is invertible.
    pub fn diagonal(
        model: &HyperellipticModel,
        alpha: FieldElement,
        beta: FieldElement,
        lambda: FieldElement,
    ) -> Result<CurveAutomorphism> {
        if model.is_char2() {
            return Err(Error::InvalidAutomorphism(
                "diagonal automorphisms are supported in odd characteristic only".into(),
            ));
        }
        if alpha.is_zero() || lambda.is_zero() {
            return Err(Error::InvalidAutomorphism("alpha, lambda must be units".into()));
        }
        let field = model.field();
        let inner = crate::algebra::poly::Polynomial::new(
            field,
            vec![beta.clone(), alpha.clone()],
        );
        let lhs = model.f().compose(&inner);
        let rhs = model.f().scale(&(&lambda * &lambda));
        if lhs != rhs {
            return Err(Error::InvalidAutomorphism(
                "f(alpha x + beta) != lambda^2 f(x)".into(),
            ));
        }
        Ok(CurveAutomorphism {
            model: model.clone(),
            kind: AutKind::Diagonal { alpha, beta, lambda },
        })
    }

    pub fn model(&self) -> &HyperellipticModel {
        &self.model
    }

    pub fn kind(&self) -> &AutKind {
        &self.kind
    }

    pub fn is_identity(&self) -> bool {
        match &self.kind {
            AutKind::Char2Identity => true,
            AutKind::Char2Involution => false,
            AutKind::Diagonal { alpha, beta, lambda } => {
                alpha.is_one() && beta.is_zero() && lambda.is_one()
            }
        }
    }

    /// Group law: (self * rhs) acts on places as self after rhs; on functions
    /// the pullback is rhs^* after self^*.
    pub fn compose(&self, rhs: &CurveAutomorphism) -> CurveAutomorphism {
        debug_assert_eq!(self.model, rhs.model);
        let kind = match (&self.kind, &rhs.kind) {
            (AutKind::Char2Identity, k) | (k, AutKind::Char2Identity) => k.clone(),
            (AutKind::Char2Involution, AutKind::Char2Involution) => AutKind::Char2Identity,
            (
                AutKind::Diagonal {
                    alpha: a1,
                    beta: b1,
                    lambda: l1,
                },
                AutKind::Diagonal {
                    alpha: a2,
                    beta: b2,
                    lambda: l2,
                },
            ) => {
                // rhs^*(self^*(x)) = rhs^*(a1 x + b1) = a1(a2 x + b2) + b1.
                AutKind::Diagonal {
                    alpha: a1 * a2,
                    beta: &(a1 * b2) + b1,
                    lambda: l1 * l2,
                }
            }
            _ => unreachable!("mixed-characteristic composition"),
        };
        CurveAutomorphism {
            model: self.model.clone(),
            kind,
        }
    }

    pub fn inverse(&self) -> CurveAutomorphism {
        let kind = match &self.kind {
            AutKind::Char2Identity => AutKind::Char2Identity,
            AutKind::Char2Involution => AutKind::Char2Involution,
            AutKind::Diagonal { alpha, beta, lambda } => {
                let ai = alpha.inv().unwrap();
                AutKind::Diagonal {
                    alpha: ai.clone(),
                    beta: -&(&ai * beta),
                    lambda: lambda.inv().unwrap(),
                }
            }
        };
        CurveAutomorphism {
            model: self.model.clone(),
            kind,
        }
    }

    /// Order in the automorphism group.
    pub fn order(&self) -> u64 {
        let mut n = 1;
        let mut cur = self.clone();
        while !cur.is_identity() {
            cur = cur.compose(self);
            n += 1;
        }
        n
    }

    /// The same automorphism on a base-changed model.
    pub fn base_change(&self, target: &HyperellipticModel) -> Result<CurveAutomorphism> {
        let from = self.model.field();
        let to = target.field();
        let kind = match &self.kind {
            AutKind::Char2Identity => AutKind::Char2Identity,
            AutKind::Char2Involution => AutKind::Char2Involution,
            AutKind::Diagonal { alpha, beta, lambda } => AutKind::Diagonal {
                alpha: from.embed(alpha, to)?,
                beta: from.embed(beta, to)?,
                lambda: from.embed(lambda, to)?,
            },
        };
        Ok(CurveAutomorphism {
            model: target.clone(),
            kind,
        })
    }

    /// Pullback on functions.
    pub fn apply(&self, u: &FunctionRep) -> FunctionRep {
        match &self.kind {
            AutKind::Char2Identity => u.clone(),
            AutKind::Char2Involution => u.conjugate(),
            AutKind::Diagonal { alpha, beta, lambda } => {
                u.substitute_diagonal(alpha, beta, lambda)
            }
        }
    }

    /// Image of a place: the place where pulled-back functions take the
    /// original values.
    pub fn place_image_key(&self, key: &PlaceKey) -> Result<PlaceKey> {
        let model = &self.model;
        let field = model.field();
        let out = match &self.kind {
            AutKind::Char2Identity => key.clone(),
            AutKind::Char2Involution => match key {
                PlaceKey::Finite { a, y } => {
                    let av = field.from_enc(*a);
                    let h = model.h().expect("char2");
                    let ny = &field.from_enc(*y) + &h.eval(&av);
                    PlaceKey::Finite { a: *a, y: ny.enc() }
                }
                PlaceKey::InfRam => PlaceKey::InfRam,
                PlaceKey::InfSplit { label } => {
                    // The reduced variable shifts by 1 between the branches.
                    let nl = &field.from_enc(*label) + &field.one();
                    PlaceKey::InfSplit { label: nl.enc() }
                }
            },
            AutKind::Diagonal { alpha, beta, lambda } => match key {
                PlaceKey::Finite { a, y } => {
                    let na = &(alpha * &field.from_enc(*a)) + beta;
                    let ny = lambda * &field.from_enc(*y);
                    PlaceKey::Finite {
                        a: na.enc(),
                        y: ny.enc(),
                    }
                }
                PlaceKey::InfRam => PlaceKey::InfRam,
                PlaceKey::InfSplit { label } => {
                    // label = value of y / x^{g+1}; pullback scales it by
                    // lambda / alpha^{g+1}.
                    let g = model.genus();
                    let scale = &lambda.clone() * &alpha.pow(g + 1).inv().unwrap();
                    let nl = &scale * &field.from_enc(*label);
                    PlaceKey::InfSplit { label: nl.enc() }
                }
            },
        };
        model.place(&out)?;
        Ok(out)
    }
}

/// Verifies that a list of automorphisms is a group: nonempty, contains the
/// identity, closed under composition, elements pairwise distinct. Returns the
/// list sorted deterministically.
pub fn verify_group(elements: &[CurveAutomorphism]) -> Result<Vec<CurveAutomorphism>> {
    if elements.is_empty() {
        return Err(Error::NotAGroup("empty generator list".into()));
    }
    let model = elements[0].model().clone();
    let mut sorted: Vec<CurveAutomorphism> = elements.to_vec();
    sorted.sort_by_key(aut_sort_key);
    sorted.dedup();
    if sorted.len() != elements.len() {
        return Err(Error::NotFaithful);
    }
    if !sorted.iter().any(|a| a.is_identity()) {
        return Err(Error::NotAGroup("missing identity".into()));
    }
    for a in &sorted {
        if *a.model() != model {
            return Err(Error::NotAGroup("mixed models".into()));
        }
        for b in &sorted {
            let c = a.compose(b);
            if !sorted.contains(&c) {
                return Err(Error::NotAGroup(format!(
                    "{:?} * {:?} escapes the list",
                    a, b
                )));
            }
        }
    }
    Ok(sorted)
}

/// Closes a generator list into a group (bounded; errors past 1024 elements).
pub fn generate_group(gens: &[CurveAutomorphism]) -> Result<Vec<CurveAutomorphism>> {
    if gens.is_empty() {
        return Err(Error::NotAGroup("empty generator list".into()));
    }
    let model = gens[0].model().clone();
    let mut group = vec![CurveAutomorphism::identity(&model)];
    let mut frontier = group.clone();
    while let Some(cur) = frontier.pop() {
        for g in gens {
            let next = cur.compose(g);
            if !group.contains(&next) {
                if group.len() >= 1024 {
                    return Err(Error::BoundExceeded("group order above 1024".into()));
                }
                group.push(next.clone());
                frontier.push(next);
            }
        }
    }
    group.sort_by_key(aut_sort_key);
    Ok(group)
}

fn aut_sort_key(a: &CurveAutomorphism) -> (u64, u64, u64, u64) {
    match a.kind() {
        AutKind::Char2Identity => (0, 0, 0, 0),
        AutKind::Char2Involution => (1, 0, 0, 0),
        AutKind::Diagonal { alpha, beta, lambda } => {
            let id = a.is_identity();
            (
                if id { 0 } else { 2 },
                alpha.enc(),
                beta.enc(),
                lambda.enc(),
            )
        }
    }
}
