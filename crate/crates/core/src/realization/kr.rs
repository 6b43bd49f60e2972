//! The KR polytope of a weighted cycle and its Bier sphere.
//!
//! On the cycle with edge `{i, i+1}` of length `l_i`, the generator
//! `y_i = (e_{i+1} - e_i) / l_i` is labelled `i` and `-y_j` is labelled `j̄`.
//! With every `l_i < 1/2` these `2n` edge generators are exactly the vertices
//! of `KR(d_L)`.

use std::collections::BTreeSet;

use serde_json::json;

use super::gale::compare_families;
use super::{
    generic_or_violation, require_normalized, require_short_bars, require_size, weights_json,
    RealizationError,
};
use crate::exactgeom::extreme_points;
use crate::metricgraph::{
    geodesic_metric, kr_generators, vertex_facet_family, KrLabel, WeightedGraph,
};
use crate::report::VerificationReport;
use crate::simplicial::{bier_facets, BierVertex, FVector, FacetFamily};
use crate::threshold::{short_sets, Permutation, Quota, WeightVector};

/// The Bier label of an edge generator of the `n`-cycle, if it is one.
pub fn cycle_label(n: usize, label: KrLabel) -> Option<BierVertex> {
    if label.from == (label.to + 1) % n {
        Some(BierVertex::Left(label.to))
    } else if label.to == (label.from + 1) % n {
        Some(BierVertex::Right(label.from))
    } else {
        None
    }
}

fn check_weights(l: &WeightVector) -> Result<(), RealizationError> {
    require_normalized(l)?;
    require_size(l.len(), 3)?;
    require_short_bars(l)?;
    let half = Quota::half();
    if let Some(subset) = generic_or_violation(l, &half)? {
        return Err(RealizationError::NotGeneric {
            subset,
            quota: half.to_string(),
        });
    }
    Ok(())
}

fn cycle_facets(
    l: &WeightVector,
) -> Result<(FacetFamily<KrLabel>, BTreeSet<KrLabel>), RealizationError> {
    let generators = kr_generators(&geodesic_metric(&WeightedGraph::cycle(l.weights())?)?)?;
    let vertices = extreme_points(&generators);
    Ok((
        vertex_facet_family(&generators.restrict(&vertices))?,
        vertices,
    ))
}

/// Facets of `KR(d_L)` for the `L`-cycle in Bier labels, computed from the
/// full generator set. Fails if some vertex is not an edge generator.
pub fn kr_bier_family(l: &WeightVector) -> Result<FacetFamily<BierVertex>, RealizationError> {
    let n = l.len();
    let (family, vertices) = cycle_facets(l)?;
    if let Some(bad) = vertices.iter().find(|&&k| cycle_label(n, k).is_none()) {
        return Err(RealizationError::NonEdgeVertex(bad.to_string()));
    }
    Ok(family.map(|&k| cycle_label(n, k).expect("checked above")))
}

/// Compares `∂KR(d_L)` of the `L`-cycle with `Bier(Short(L))` under the
/// cycle labelling, and checks that the vertices are the `2n` edge generators.
pub fn verify_kr_bier(l: &WeightVector) -> Result<VerificationReport, RealizationError> {
    const THEOREM: &str = "kr_bier";
    check_weights(l)?;
    let n = l.len();
    let instance = json!({ "weights": weights_json(l) });
    let (family, vertices) = cycle_facets(l)?;
    let edge_labels: BTreeSet<KrLabel> = (0..n)
        .flat_map(|i| [KrLabel::new((i + 1) % n, i), KrLabel::new(i, (i + 1) % n)])
        .collect();
    if vertices != edge_labels {
        let found: Vec<String> = vertices.iter().map(KrLabel::to_string).collect();
        let cert = json!({"reason": "vertices are not the 2n edge generators", "vertices": found});
        return Ok(VerificationReport::fail(THEOREM, instance, 0, cert));
    }
    let polytope = family.map(|&k| cycle_label(n, k).expect("vertices are edge generators"));
    let bier = FacetFamily::from_bier(&bier_facets(&short_sets(l)?)?);
    Ok(compare_families(THEOREM, instance, &polytope, &bier))
}

/// Compares `∂KR(d_{L^σ})` with the image of `∂KR(d_L)` under the relabelling
/// `i ↦ σ⁻¹(i)`, `j̄ ↦ σ⁻¹(j)̄`, where `L^σ = (l_{σ(1)}, .., l_{σ(n)})`. For a
/// transposition of cyclically adjacent positions the f-vectors are compared
/// as well.
pub fn perm_equivalence(
    l: &WeightVector,
    sigma: &Permutation,
) -> Result<VerificationReport, RealizationError> {
    const THEOREM: &str = "perm_equivalence";
    check_weights(l)?;
    let n = l.len();
    if sigma.len() != n {
        return Err(RealizationError::SizeMismatch {
            expected: n,
            found: sigma.len(),
        });
    }
    let instance = json!({ "weights": weights_json(l), "sigma": sigma.to_labels() });
    let permuted = l.permuted(sigma);
    let base = kr_bier_family(l)?;
    let target = kr_bier_family(&permuted)?;
    let inv = sigma.inverse();
    let image = base.map(|v| match *v {
        BierVertex::Left(i) => BierVertex::Left(inv.apply(i)),
        BierVertex::Right(j) => BierVertex::Right(inv.apply(j)),
    });
    let report = compare_families(THEOREM, instance.clone(), &target, &image);
    if !report.passed() {
        return Ok(report);
    }
    let moved: Vec<usize> = (0..n).filter(|&i| sigma.apply(i) != i).collect();
    if let [a, b] = moved[..] {
        if b - a == 1 || (a == 0 && b == n - 1) {
            let (fa, fb) = (FVector::of_family(&base), FVector::of_family(&target));
            if fa != fb || base.len() != target.len() {
                let cert = json!({"reason": "f-vectors differ", "base": fa.0, "permuted": fb.0});
                return Ok(VerificationReport::fail(
                    THEOREM,
                    instance,
                    report.matched_facets,
                    cert,
                ));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::{int, ratio};
    use crate::realization::{q_alpha, standard_circuit, verify_q_alpha, QAlphaOptions};

    fn weights(ws: &[(i64, i64)]) -> WeightVector {
        WeightVector::new(ws.iter().map(|&(p, q)| ratio(p, q)).collect()).unwrap()
    }

    #[test]
    fn hexagon() {
        let r = verify_kr_bier(&weights(&[(1, 3), (1, 3), (1, 3)])).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.matched_facets, 6);
    }

    #[test]
    fn four_bars() {
        let err = verify_kr_bier(&weights(&[(1, 8), (1, 4), (1, 4), (3, 8)]));
        assert!(matches!(err, Err(RealizationError::NotGeneric { .. })));
        let r = verify_kr_bier(&weights(&[(1, 8), (1, 4), (19, 80), (31, 80)])).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn long_bars_are_refused() {
        let r = verify_kr_bier(&weights(&[(1, 21), (2, 21), (3, 21), (5, 21), (10, 21)])).unwrap();
        assert!(r.passed(), "{r:?}");
        let err = verify_kr_bier(&weights(&[(1, 10), (1, 10), (1, 5), (3, 5)]));
        assert!(matches!(
            err,
            Err(RealizationError::LongBar { index: 4, .. })
        ));
    }

    #[test]
    fn kr_cycle_is_q_one() {
        let l = weights(&[(2, 21), (3, 21), (4, 21), (5, 21), (7, 21)]);
        let n = l.len();
        let q = q_alpha(&l, &int(1), &standard_circuit(n).unwrap()).unwrap();
        let kr =
            kr_generators(&geodesic_metric(&WeightedGraph::cycle(l.weights()).unwrap()).unwrap())
                .unwrap();
        for (label, point) in q.iter() {
            let k = match *label {
                BierVertex::Left(i) => KrLabel::new((i + 1) % n, i),
                BierVertex::Right(j) => KrLabel::new(j, (j + 1) % n),
            };
            assert_eq!(kr.point(&k), Some(point));
        }
        assert!(verify_kr_bier(&l).unwrap().passed());
        assert!(verify_q_alpha(&l, &int(1), &QAlphaOptions::default())
            .unwrap()
            .passed());
    }

    #[test]
    fn permutations() {
        let l = weights(&[(1, 8), (1, 4), (19, 80), (31, 80)]);
        for sigma in ["1,2,3,4", "2,3,4,1", "2,1,3,4", "4,2,3,1", "3,1,4,2"] {
            let r = perm_equivalence(&l, &Permutation::parse(sigma).unwrap()).unwrap();
            assert!(r.passed(), "{sigma}: {r:?}");
        }
        let five = weights(&[(2, 21), (3, 21), (4, 21), (5, 21), (7, 21)]);
        let r = perm_equivalence(&five, &Permutation::parse("1,3,2,4,5").unwrap()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(perm_equivalence(&five, &Permutation::identity(4)).is_err());
    }
}
