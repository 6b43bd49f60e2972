//! The polytope `Q_α = Conv{y_1, .., y_n, -α y_1, .., -α y_n}` built from a
//! minimal circuit, and its comparison with the Bier sphere of a threshold
//! complex.

use num_traits::Signed;
use serde_json::{json, Value};

use super::{
    face_json, generic_or_violation, require_normalized, require_size, weights_json,
    RealizationError,
};
use crate::exactgeom::linalg::rank;
use crate::exactgeom::{format_rational, parse_rational, PointConfiguration, Rational, Vector};
use crate::metricgraph::vertex_facet_family;
use crate::report::VerificationReport;
use crate::simplicial::{bier_facets, BierFace, BierVertex, FacetFamily, VertexSet};
use crate::threshold::{nudge_quota, threshold_complex, Quota, WeightVector};

/// Vectors `u_1, .., u_n` with `Σ u_i = 0` and every proper subset linearly
/// independent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaleConfiguration {
    vectors: Vec<Vector>,
}

impl GaleConfiguration {
    pub fn new(vectors: Vec<Vector>) -> Result<Self, RealizationError> {
        let n = vectors.len();
        require_size(n, 2)?;
        let dim = vectors[0].dim();
        if vectors.iter().any(|v| v.dim() != dim) {
            return Err(RealizationError::DegenerateCircuit(
                "vectors have different dimensions".into(),
            ));
        }
        let total = vectors
            .iter()
            .skip(1)
            .fold(vectors[0].clone(), |acc, v| acc.add(v));
        if !total.is_zero() {
            return Err(RealizationError::DegenerateCircuit(
                "vectors do not sum to zero".into(),
            ));
        }
        // every (n-1)-subset independent implies every proper subset is
        for skip in 0..n {
            let rest: Vec<Vector> = (0..n)
                .filter(|&i| i != skip)
                .map(|i| vectors[i].clone())
                .collect();
            if rank(&rest) != n - 1 {
                return Err(RealizationError::DegenerateCircuit(format!(
                    "the vectors other than u_{} are linearly dependent",
                    skip + 1
                )));
            }
        }
        Ok(GaleConfiguration { vectors })
    }

    /// Parses rows of rational strings, one row per vector.
    pub fn from_json(rows: &[Vec<String>]) -> Result<Self, RealizationError> {
        let vectors = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vector, _>>()
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| RealizationError::DegenerateCircuit(e.to_string()))?;
        Self::new(vectors)
    }

    pub fn to_json(&self) -> Vec<Vec<String>> {
        self.vectors
            .iter()
            .map(|v| v.iter().map(format_rational).collect())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }
}

/// `u_i = e_{i+1} - e_i` in the sum-zero hyperplane of `R^n`, indices mod n.
pub fn standard_circuit(n: usize) -> Result<GaleConfiguration, RealizationError> {
    require_size(n, 3)?;
    GaleConfiguration::new(
        (0..n)
            .map(|i| Vector::unit(n, (i + 1) % n).sub(&Vector::unit(n, i)))
            .collect(),
    )
}

/// The points `y_i = u_i / l_i`, labelled `Left(i)`, and `-α y_i`, labelled
/// `Right(i)`.
pub fn q_alpha(
    l: &WeightVector,
    alpha: &Rational,
    circuit: &GaleConfiguration,
) -> Result<PointConfiguration<BierVertex>, RealizationError> {
    require_normalized(l)?;
    if !alpha.is_positive() {
        return Err(RealizationError::NonPositiveAlpha);
    }
    if circuit.len() != l.len() {
        return Err(RealizationError::SizeMismatch {
            expected: l.len(),
            found: circuit.len(),
        });
    }
    let mut entries = Vec::with_capacity(2 * l.len());
    for (i, u) in circuit.vectors.iter().enumerate() {
        let y = u.scale(&l.weight(i).recip());
        entries.push((BierVertex::Right(i), y.scale(&-alpha)));
        entries.push((BierVertex::Left(i), y));
    }
    Ok(PointConfiguration::new(entries)?)
}

#[derive(Clone, Debug, Default)]
pub struct QAlphaOptions {
    /// Defaults to [`standard_circuit`].
    pub circuit: Option<GaleConfiguration>,
    /// Replace a non-generic quota by [`nudge_quota`] on the Bier side
    /// instead of refusing.
    pub nudge: bool,
}

/// Compares the facets of `Q_α` with `Bier(T_{μ_L < ν})`, `ν = β/(1+β)`,
/// `β = 1/α`, under `y_i ↔ i` and `-α y_j ↔ j̄`.
///
/// Independently of the comparison every facet `(I, J)` of `Q_α` must satisfy
/// `I ∩ J = ∅`, `∅ ≠ I ∪ J ≠ [n]`, `μ(I) < ν` and `μ(J) < 1/(1+β)`.
pub fn verify_q_alpha(
    l: &WeightVector,
    alpha: &Rational,
    options: &QAlphaOptions,
) -> Result<VerificationReport, RealizationError> {
    const THEOREM: &str = "q_alpha_bier";
    require_normalized(l)?;
    require_size(l.len(), 3)?;
    if !alpha.is_positive() {
        return Err(RealizationError::NonPositiveAlpha);
    }
    let n = l.len();
    let beta = alpha.recip();
    let nu = Quota::from_beta(&beta)?;
    let dual_nu = nu.complement();

    let mut bier_nu = nu.clone();
    for q in [&nu, &dual_nu] {
        if let Some(subset) = generic_or_violation(l, q)? {
            if !options.nudge {
                return Err(RealizationError::NotGeneric {
                    subset,
                    quota: q.to_string(),
                });
            }
            bier_nu = nudge_quota(l, &nu)?;
        }
    }

    let circuit = match &options.circuit {
        Some(c) => c.clone(),
        None => standard_circuit(n)?,
    };
    let mut instance = json!({
        "weights": weights_json(l),
        "alpha": format_rational(alpha),
        "quota": nu.to_string(),
        "circuit": if options.circuit.is_some() { json!(circuit.to_json()) } else { json!("standard") },
    });
    if bier_nu != nu {
        instance["nudged_quota"] = json!(bier_nu.to_string());
    }

    let points = q_alpha(l, alpha, &circuit)?;
    let polytope = vertex_facet_family(&points)?;
    let bier = FacetFamily::from_bier(&bier_facets(&threshold_complex(l, &bier_nu)?)?);

    let full = VertexSet::full(n);
    for facet in polytope.iter() {
        let face = BierFace::from_vertices(facet);
        let violated = if !face.left.is_disjoint(face.right) {
            Some("I and J intersect")
        } else if face.is_empty() || face.left.union(face.right) == full {
            Some("I ∪ J is empty or everything")
        } else if l.measure(face.left) >= *nu.value() {
            Some("μ(I) >= ν")
        } else if l.measure(face.right) >= *dual_nu.value() {
            Some("μ(J) >= 1 - ν")
        } else {
            None
        };
        if let Some(why) = violated {
            let cert = json!({"reason": why, "facet": pair_json(facet)});
            return Ok(VerificationReport::fail(THEOREM, instance, 0, cert));
        }
    }
    Ok(compare_families(THEOREM, instance, &polytope, &bier))
}

fn pair_json(facet: &[BierVertex]) -> Value {
    face_json(&BierFace::from_vertices(facet))
}

/// Pass iff the families coincide; otherwise the certificate lists the
/// facets found on one side only.
pub(super) fn compare_families(
    theorem: &str,
    instance: Value,
    polytope: &FacetFamily<BierVertex>,
    bier: &FacetFamily<BierVertex>,
) -> VerificationReport {
    let matched = polytope.iter().filter(|f| bier.contains(f)).count();
    if polytope == bier {
        return VerificationReport::pass(theorem, instance, matched);
    }
    let only = |a: &FacetFamily<BierVertex>, b: &FacetFamily<BierVertex>| -> Vec<Value> {
        a.iter()
            .filter(|f| !b.contains(f))
            .map(|f| pair_json(f))
            .collect()
    };
    let cert =
        json!({"only_in_polytope": only(polytope, bier), "only_in_bier": only(bier, polytope)});
    VerificationReport::fail(theorem, instance, matched, cert)
}
