//! Geometric Goppa codes C(D, E): evaluation of L(D) at a set of rational
//! points, code parameters, permutation actions of curve automorphisms, and
//! faithfulness certificates for the induced permutation group.

use serde::Serialize;

use crate::algebra::field::{Field, FieldElement};
use crate::algebra::linalg::Matrix;
use crate::curve::automorphism::CurveAutomorphism;
use crate::curve::divisor::Divisor;
use crate::curve::model::HyperellipticModel;
use crate::curve::place::{Place, PlaceKey};
use crate::error::{Error, Result};
use crate::rrspace::{action_on_rr, rr_basis, ActionOnSpace, RRBasis};

/// Default cap on q^k for the brute-force distance search.
pub const MIN_DISTANCE_CAP: u64 = 1 << 22;

/// An ordered list of pairwise-distinct degree-1 places, disjoint from the
/// support of the divisor being evaluated. The canonical order is the place
/// ordering: finite places by (x, y) encodings, infinite places last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvaluationSet {
    pub points: Vec<Place>,
}

impl EvaluationSet {
    pub fn new(model: &HyperellipticModel, mut points: Vec<Place>, d: &Divisor) -> Result<EvaluationSet> {
        points.sort_by(|p, q| p.key.cmp(&q.key));
        points.dedup_by(|p, q| p.key == q.key);
        for p in &points {
            model.place(&p.key)?;
            if d.coeff(&p.key) != 0 {
                return Err(Error::SupportOverlap(format!("{:?}", p.key)));
            }
        }
        Ok(EvaluationSet { points })
    }

    /// All rational points of the model off the support of D.
    pub fn all_points_off_support(
        model: &HyperellipticModel,
        d: &Divisor,
    ) -> Result<EvaluationSet> {
        let (m1, pts) = model.rational_points(1)?;
        debug_assert_eq!(&m1, model);
        let points: Vec<Place> = pts
            .into_iter()
            .filter(|p| d.coeff(&p.key) == 0)
            .collect();
        EvaluationSet::new(model, points, d)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Checks stability under every group element.
    pub fn is_stable(&self, group: &[CurveAutomorphism]) -> Result<bool> {
        let keys: std::collections::BTreeSet<&PlaceKey> =
            self.points.iter().map(|p| &p.key).collect();
        for phi in group {
            for p in &self.points {
                let img = phi.place_image_key(&p.key)?;
                if !keys.contains(&img) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug)]
pub struct GoppaCode {
    pub field: Field,
    pub length: usize,
    /// Rows are the evaluations of the deterministic L(D) basis.
    pub generator: Matrix,
    pub k: usize,
    pub min_distance: Option<usize>,
    pub deg_d: i64,
}

/// Evaluates the L(D) basis at E. The code dimension is the rank of the
/// generator; when |E| > deg D the evaluation map is injective and
/// k = dim L(D).
pub fn goppa_build(
    model: &HyperellipticModel,
    d: &Divisor,
    e: &EvaluationSet,
) -> Result<(GoppaCode, RRBasis)> {
    for p in &e.points {
        if d.coeff(&p.key) != 0 {
            return Err(Error::SupportOverlap(format!("{:?}", p.key)));
        }
    }
    let rr = rr_basis(model, d)?;
    let field = model.field().clone();
    let rows: Result<Vec<Vec<FieldElement>>> = rr
        .basis
        .iter()
        .map(|u| {
            e.points
                .iter()
                .map(|p| model.value_at(u, &p.key))
                .collect()
        })
        .collect();
    let generator = Matrix::from_rows(&field, &rows?);
    let k = generator.rank();
    Ok((
        GoppaCode {
            field,
            length: e.len(),
            generator,
            k,
            min_distance: None,
            deg_d: d.degree(),
        },
        rr,
    ))
}

/// Exact minimum Hamming weight over all nonzero codewords, by exhaustive
/// enumeration of the q^k messages (block-parallel when enabled).
pub fn min_distance_bruteforce(code: &GoppaCode) -> Result<usize> {
    let q = code.field.q();
    let k = code.generator.rows();
    if k == 0 || code.k == 0 {
        return Err(Error::NoCodewords);
    }
    let mut total: u64 = 1;
    for _ in 0..k {
        total = total
            .checked_mul(q)
            .filter(|&t| t <= MIN_DISTANCE_CAP)
            .ok_or_else(|| {
                Error::BoundExceeded(format!("q^k = {}^{} above the search cap", q, k))
            })?;
    }
    let weight_of = |idx: u64| -> u64 {
        // Decode idx into message digits and accumulate the codeword.
        let mut msg = idx;
        let mut word = vec![code.field.zero(); code.length];
        for r in 0..k {
            let digit = msg % q;
            msg /= q;
            if digit == 0 {
                continue;
            }
            let c = code.field.from_enc(digit);
            for (w, g) in word.iter_mut().zip(code.generator.row(r)) {
                *w = &*w + &(&c * g);
            }
        }
        word.iter().filter(|c| !c.is_zero()).count() as u64
    };
    let min = crate::par::range_min_map(1..total, weight_of).ok_or(Error::NoCodewords)?;
    Ok(min as usize)
}

/// Reference sequential scan used to validate the parallel search and as the
/// baseline in benchmarks.
pub fn min_distance_sequential(code: &GoppaCode) -> Result<usize> {
    let q = code.field.q();
    let k = code.generator.rows();
    if k == 0 || code.k == 0 {
        return Err(Error::NoCodewords);
    }
    let mut total: u64 = 1;
    for _ in 0..k {
        total = total
            .checked_mul(q)
            .filter(|&t| t <= MIN_DISTANCE_CAP)
            .ok_or_else(|| {
                Error::BoundExceeded(format!("q^k = {}^{} above the search cap", q, k))
            })?;
    }
    let mut min = usize::MAX;
    for idx in 1..total {
        let mut msg = idx;
        let mut word = vec![code.field.zero(); code.length];
        for r in 0..k {
            let digit = msg % q;
            msg /= q;
            if digit == 0 {
                continue;
            }
            let c = code.field.from_enc(digit);
            for (w, g) in word.iter_mut().zip(code.generator.row(r)) {
                *w = &*w + &(&c * g);
            }
        }
        min = min.min(word.iter().filter(|c| !c.is_zero()).count());
    }
    Ok(min)
}

/// Permutations of E induced by the group elements, with the stability and
/// injectivity analysis.
#[derive(Clone, Debug)]
pub struct PermutationAction {
    /// perm[i] = j means the element maps E[i] to E[j].
    pub permutations: Vec<(CurveAutomorphism, Vec<usize>)>,
    pub code_stable: bool,
    pub certificate: InjectivityCertificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct InjectivityCertificate {
    pub e_size: usize,
    pub deg_d: i64,
    /// |E| > deg D: the evaluation map is injective.
    pub evaluation_injective: bool,
    /// The action on L(D) is faithful (matrix group order equals |G|).
    pub action_faithful: bool,
    /// Some(true): G embeds into the permutation automorphisms of the code.
    /// None: the hypotheses fail and nothing is asserted.
    pub injective: Option<bool>,
}

/// Builds the permutation action of the group on C(D, E) and certifies
/// injectivity of G -> Aut_Perm(C) when |E| > deg D and the L(D) action is
/// faithful.
pub fn code_action(
    model: &HyperellipticModel,
    group: &[CurveAutomorphism],
    d: &Divisor,
    e: &EvaluationSet,
) -> Result<(PermutationAction, GoppaCode, ActionOnSpace)> {
    if !e.is_stable(group)? {
        return Err(Error::NotStable("the group moves E off itself".into()));
    }
    let index_of: std::collections::BTreeMap<&PlaceKey, usize> = e
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| (&p.key, i))
        .collect();
    let (code, rr) = goppa_build(model, d, e)?;
    let action = action_on_rr(model, group, &rr)?;
    let mut permutations = vec![];
    for phi in group {
        if phi.is_identity() {
            continue;
        }
        let perm: Result<Vec<usize>> = e
            .points
            .iter()
            .map(|p| {
                let img = phi.place_image_key(&p.key)?;
                index_of
                    .get(&img)
                    .copied()
                    .ok_or_else(|| Error::NotStable(format!("{:?} escapes E", p.key)))
            })
            .collect();
        permutations.push((phi.clone(), perm?));
    }
    // Stability of the code space under every permutation (rank test).
    let mut code_stable = true;
    for (_, perm) in &permutations {
        let rows: Vec<Vec<FieldElement>> = (0..code.generator.rows())
            .map(|r| {
                let row = code.generator.row(r);
                let mut permuted = vec![code.field.zero(); code.length];
                for (i, &j) in perm.iter().enumerate() {
                    permuted[j] = row[i].clone();
                }
                permuted
            })
            .collect();
        let permuted = Matrix::from_rows(&code.field, &rows);
        if code.generator.vstack(&permuted).rank() != code.k {
            code_stable = false;
        }
    }
    let evaluation_injective = (e.len() as i64) > code.deg_d;
    let action_faithful = action.matrix_group_order() == group.len();
    let injective = if evaluation_injective {
        Some(action_faithful)
    } else {
        None
    };
    let certificate = InjectivityCertificate {
        e_size: e.len(),
        deg_d: code.deg_d,
        evaluation_injective,
        action_faithful,
        injective,
    };
    Ok((
        PermutationAction {
            permutations,
            code_stable,
            certificate,
        },
        code,
        action,
    ))
}

/// Smallest extension degree whose rational points give |E| > deg D off the
/// support, together with the extended model, divisor, and evaluation set.
pub fn auto_evaluation_set(
    model: &HyperellipticModel,
    d: &Divisor,
    min_ext: u32,
) -> Result<(HyperellipticModel, Divisor, EvaluationSet, u32)> {
    let mut ext = min_ext.max(1);
    loop {
        let extended = model.base_change(ext)?;
        let d_ext = model.embed_divisor(d, &extended)?;
        let e = EvaluationSet::all_points_off_support(&extended, &d_ext)?;
        if e.len() as i64 > d.degree() {
            return Ok((extended, d_ext, e, ext));
        }
        ext += 1;
    }
}

/// Generator matrix export: one line "n k q", then k rows of n encodings.
pub fn export_alist(code: &GoppaCode) -> String {
    let mut out = format!("{} {} {}\n", code.length, code.generator.rows(), code.field.q());
    for r in 0..code.generator.rows() {
        let row: Vec<String> = code
            .generator
            .row(r)
            .iter()
            .map(|c| c.enc().to_string())
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
pub struct CodeJson {
    pub schema: u32,
    pub n: usize,
    pub k: usize,
    pub q: u64,
    pub deg_d: i64,
    pub generator: Vec<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_distance: Option<usize>,
}

pub fn export_json(code: &GoppaCode) -> String {
    let generator = (0..code.generator.rows())
        .map(|r| code.generator.row(r).iter().map(|c| c.enc()).collect())
        .collect();
    serde_json::to_string(&CodeJson {
        schema: 1,
        n: code.length,
        k: code.k,
        q: code.field.q(),
        deg_d: code.deg_d,
        generator,
        min_distance: code.min_distance,
    })
    .expect("serializable")
}
