//! Weight vectors, their measures and threshold complexes.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactgeom::{
    format_rational, parse_rational, rational_strings, ParseRationalError, Rational,
};
use crate::simplicial::{
    alexander_dual, SimplicialComplex, SimplicialError, VertexSet, MAX_GROUND,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThresholdError {
    #[error("weight vector is empty")]
    Empty,
    #[error("weight {index} is not strictly positive")]
    NonPositive { index: usize },
    #[error("{n} weights exceed the supported maximum of 16")]
    TooLarge { n: usize },
    #[error("weights must sum to 1 (normalize first)")]
    NotNormalized,
    #[error("quota {0} is not in the open interval (0, 1)")]
    QuotaOutOfRange(String),
    #[error("weights are not generic: subset {subset} has measure exactly {quota}")]
    NotGeneric { subset: VertexSet, quota: String },
    #[error("invalid permutation: {0}")]
    BadPermutation(String),
    #[error(transparent)]
    Parse(#[from] ParseRationalError),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
}

/// Strictly positive weights `L = (l_1, .., l_n)` and the measure
/// `μ_L(I) = Σ_{i ∈ I} l_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector {
    weights: Vec<Rational>,
    normalized: bool,
}

/// JSON form: `{"weights": ["1/3", "1/3", "1/3"]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightsJson {
    #[serde(with = "rational_strings")]
    pub weights: Vec<Rational>,
}

impl WeightVector {
    pub fn new(weights: Vec<Rational>) -> Result<Self, ThresholdError> {
        if weights.is_empty() {
            return Err(ThresholdError::Empty);
        }
        if weights.len() > MAX_GROUND {
            return Err(ThresholdError::TooLarge { n: weights.len() });
        }
        if let Some(index) = weights.iter().position(|w| !w.is_positive()) {
            return Err(ThresholdError::NonPositive { index });
        }
        let normalized = weights.iter().sum::<Rational>().is_one();
        Ok(WeightVector {
            weights,
            normalized,
        })
    }

    /// Parses a comma separated list such as `"1/3,1/3,1/3"`.
    pub fn parse(list: &str) -> Result<Self, ThresholdError> {
        let weights = list
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(weights)
    }

    pub fn from_json(json: &WeightsJson) -> Result<Self, ThresholdError> {
        Self::new(json.weights.clone())
    }

    pub fn to_json(&self) -> WeightsJson {
        WeightsJson {
            weights: self.weights.clone(),
        }
    }

    /// Divides by the exact total so the weights sum to one.
    pub fn normalize(&self) -> Self {
        let total: Rational = self.weights.iter().sum();
        WeightVector {
            weights: self.weights.iter().map(|w| w / &total).collect(),
            normalized: true,
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> &Rational {
        &self.weights[i]
    }

    pub fn min_weight(&self) -> &Rational {
        self.weights.iter().min().expect("nonempty")
    }

    pub fn max_weight(&self) -> &Rational {
        self.weights.iter().max().expect("nonempty")
    }

    pub fn measure(&self, set: VertexSet) -> Rational {
        set.iter()
            .fold(Rational::zero(), |acc, i| acc + &self.weights[i])
    }

    /// `L^σ = (l_{σ(1)}, .., l_{σ(n)})`.
    pub fn permuted(&self, sigma: &Permutation) -> Self {
        WeightVector {
            weights: (0..self.len())
                .map(|i| self.weights[sigma.apply(i)].clone())
                .collect(),
            normalized: self.normalized,
        }
    }

    fn require_normalized(&self) -> Result<(), ThresholdError> {
        if self.normalized {
            Ok(())
        } else {
            Err(ThresholdError::NotNormalized)
        }
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A quota `ν` with `0 < ν < 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quota(Rational);

impl Quota {
    pub fn new(value: Rational) -> Result<Self, ThresholdError> {
        if value.is_positive() && value < Rational::one() {
            Ok(Quota(value))
        } else {
            Err(ThresholdError::QuotaOutOfRange(format_rational(&value)))
        }
    }

    pub fn parse(text: &str) -> Result<Self, ThresholdError> {
        Self::new(parse_rational(text)?)
    }

    pub fn half() -> Self {
        Quota(Rational::new(1.into(), 2.into()))
    }

    /// `ν = β / (1 + β)`, the quota matched by the scale `α = 1/β`.
    pub fn from_beta(beta: &Rational) -> Result<Self, ThresholdError> {
        Self::new(beta / (Rational::one() + beta))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    /// `1 - ν`.
    pub fn complement(&self) -> Self {
        Quota(Rational::one() - &self.0)
    }
}

impl fmt::Display for Quota {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

/// `T_{μ_L < ν} = { I : μ_L(I) < ν }`.
pub fn threshold_complex(
    l: &WeightVector,
    nu: &Quota,
) -> Result<SimplicialComplex, ThresholdError> {
    l.require_normalized()?;
    let k = SimplicialComplex::from_predicate(l.len(), |s| l.measure(s) < nu.0)?;
    debug_assert!(k.faces().iter().all(|&f| l.measure(f) < nu.0));
    Ok(k)
}

/// Warning for a quota at or below the smallest weight, where the threshold
/// complex is just `{∅}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThresholdWarning {
    EmptyComplex,
}

pub fn threshold_warning(l: &WeightVector, nu: &Quota) -> Option<ThresholdWarning> {
    (nu.value() <= l.min_weight()).then_some(ThresholdWarning::EmptyComplex)
}

/// `Short(L) = T_{μ_L < 1/2}`.
pub fn short_sets(l: &WeightVector) -> Result<SimplicialComplex, ThresholdError> {
    threshold_complex(l, &Quota::half())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenericityReport {
    Generic,
    /// The first subset in bitmask order whose measure equals the quota.
    Violation(VertexSet),
}

impl GenericityReport {
    pub fn is_generic(&self) -> bool {
        matches!(self, GenericityReport::Generic)
    }
}

pub fn is_generic(l: &WeightVector, nu: &Quota) -> Result<GenericityReport, ThresholdError> {
    l.require_normalized()?;
    Ok(VertexSet::all(l.len())
        .find(|&s| l.measure(s) == nu.0)
        .map_or(GenericityReport::Generic, GenericityReport::Violation))
}

pub(crate) fn require_generic(l: &WeightVector, nu: &Quota) -> Result<(), ThresholdError> {
    match is_generic(l, nu)? {
        GenericityReport::Generic => Ok(()),
        GenericityReport::Violation(subset) => Err(ThresholdError::NotGeneric {
            subset,
            quota: nu.to_string(),
        }),
    }
}

/// Checks `(T_{μ < ν})° = T_{μ < 1-ν}` for generic `(L, ν)`.
pub fn dual_quota_identity_check(l: &WeightVector, nu: &Quota) -> Result<bool, ThresholdError> {
    require_generic(l, nu)?;
    let k = threshold_complex(l, nu)?;
    let dual = alexander_dual(&k)?;
    Ok(dual == threshold_complex(l, &nu.complement())?)
}

/// Replaces `ν` by `ν - ε`, with `ε` half the smallest positive gap
/// `|μ_L(I) - ν|`. The threshold complex is unchanged and the new quota is
/// generic. Generic quotas are returned as they are.
pub fn nudge_quota(l: &WeightVector, nu: &Quota) -> Result<Quota, ThresholdError> {
    if is_generic(l, nu)?.is_generic() {
        return Ok(nu.clone());
    }
    let gap = VertexSet::all(l.len())
        .map(|s| (l.measure(s) - &nu.0).abs())
        .filter(|g| !g.is_zero())
        .min()
        .expect("μ(∅) = 0 differs from a positive quota");
    Quota::new(&nu.0 - gap / Rational::from_integer(2.into()))
}

/// A permutation of `{0, .., n-1}` given by its images.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, ThresholdError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(ThresholdError::BadPermutation(format!(
                    "{images:?} is not a permutation of 0..{n}"
                )));
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Parses 1-based images, e.g. `"2,1,3,4"`.
    pub fn parse(list: &str) -> Result<Self, ThresholdError> {
        let images = list
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .ok()
                    .filter(|&v| v >= 1)
                    .map(|v| v - 1)
                    .ok_or_else(|| ThresholdError::BadPermutation(format!("bad entry {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(images)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &s) in self.0.iter().enumerate() {
            inv[s] = i;
        }
        Permutation(inv)
    }

    pub fn apply_set(&self, s: VertexSet) -> VertexSet {
        s.iter().map(|i| self.0[i]).collect()
    }

    /// 1-based images.
    pub fn to_labels(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::ratio;

    fn weights(ws: &[(i64, i64)]) -> WeightVector {
        WeightVector::new(ws.iter().map(|&(p, q)| ratio(p, q)).collect()).unwrap()
    }

    fn set(labels: &[usize]) -> VertexSet {
        VertexSet::from_labels(labels).unwrap()
    }

    fn facets(k: &SimplicialComplex) -> Vec<Vec<usize>> {
        let mut f = k.to_json().facets;
        f.sort();
        f
    }

    #[test]
    fn measures() {
        let l = weights(&[(1, 3), (1, 3), (1, 3)]);
        assert_eq!(l.measure(set(&[1, 2])), ratio(2, 3));
        assert_eq!(l.measure(VertexSet::EMPTY), ratio(0, 1));
        let l = weights(&[(1, 10), (2, 10), (3, 10), (4, 10)]);
        assert_eq!(l.measure(set(&[1, 3])), ratio(2, 5));
    }

    #[test]
    fn threshold_examples() {
        let l = weights(&[(1, 3), (1, 3), (1, 3)]);
        assert_eq!(
            facets(&short_sets(&l).unwrap()),
            vec![vec![1], vec![2], vec![3]]
        );

        // exhaustive measures over all 16 subsets: {1,2} = 3/10 and {1,3} = 2/5
        // are short, {2,3} = 1/2 and {1,4} = 1/2 are not
        let l = weights(&[(1, 10), (2, 10), (3, 10), (4, 10)]);
        assert_eq!(
            facets(&short_sets(&l).unwrap()),
            vec![vec![1, 2], vec![1, 3], vec![4]]
        );

        // quota above 1 - min l_i: every proper subset is a face
        let nu = Quota::new(ratio(19, 20)).unwrap();
        assert_eq!(
            threshold_complex(&l, &nu).unwrap(),
            SimplicialComplex::simplex_boundary(4)
        );
    }

    #[test]
    fn low_quota_warns_and_gives_empty_face() {
        let l = weights(&[(1, 10), (2, 10), (3, 10), (4, 10)]);
        let nu = Quota::new(ratio(1, 10)).unwrap();
        assert_eq!(
            threshold_complex(&l, &nu).unwrap(),
            SimplicialComplex::empty_face(4)
        );
        assert_eq!(
            threshold_warning(&l, &nu),
            Some(ThresholdWarning::EmptyComplex)
        );
        assert_eq!(threshold_warning(&l, &Quota::half()), None);
    }

    #[test]
    fn unnormalized_weights_are_rejected() {
        let l = WeightVector::new(vec![ratio(1, 1), ratio(2, 1)]).unwrap();
        assert_eq!(short_sets(&l), Err(ThresholdError::NotNormalized));
        let n = l.normalize();
        assert_eq!(n.weights(), &[ratio(1, 3), ratio(2, 3)]);
        assert!(n.is_normalized());
        assert!(matches!(
            WeightVector::parse("1,0,2"),
            Err(ThresholdError::NonPositive { index: 1 })
        ));
        assert!(Quota::parse("1").is_err() && Quota::parse("0").is_err());
    }

    #[test]
    fn genericity() {
        let l = weights(&[(1, 4), (1, 4), (1, 4), (1, 4)]);
        assert_eq!(
            is_generic(&l, &Quota::half()).unwrap(),
            GenericityReport::Violation(set(&[1, 2]))
        );
        let l = weights(&[(1, 3), (1, 3), (1, 3)]);
        assert_eq!(
            is_generic(&l, &Quota::half()).unwrap(),
            GenericityReport::Generic
        );
        // {2,3} precedes {1,4} in bitmask order
        let l = weights(&[(1, 10), (2, 10), (3, 10), (4, 10)]);
        assert_eq!(
            is_generic(&l, &Quota::half()).unwrap(),
            GenericityReport::Violation(set(&[2, 3]))
        );
    }

    #[test]
    fn dual_quota_identity() {
        let l = weights(&[(1, 3), (1, 3), (1, 3)]);
        assert!(dual_quota_identity_check(&l, &Quota::half()).unwrap());
        let l = weights(&[(1, 8), (1, 8), (1, 4), (49, 100), (1, 100)]);
        for nu in [
            ratio(1, 2) + ratio(1, 1000),
            ratio(1, 3),
            ratio(7, 10),
            ratio(1, 20),
        ] {
            let nu = Quota::new(nu).unwrap();
            assert!(is_generic(&l, &nu).unwrap().is_generic());
            assert!(dual_quota_identity_check(&l, &nu).unwrap());
        }
        let l = weights(&[(1, 4), (1, 4), (1, 4), (1, 4)]);
        assert!(matches!(
            dual_quota_identity_check(&l, &Quota::half()),
            Err(ThresholdError::NotGeneric { .. })
        ));
    }

    #[test]
    fn nudge_keeps_the_complex_and_makes_it_generic() {
        let l = weights(&[(1, 4), (1, 4), (1, 4), (1, 4)]);
        let nudged = nudge_quota(&l, &Quota::half()).unwrap();
        assert_eq!(nudged.value(), &ratio(3, 8));
        assert!(is_generic(&l, &nudged).unwrap().is_generic());
        assert_eq!(
            threshold_complex(&l, &nudged).unwrap(),
            short_sets(&l).unwrap()
        );
        assert!(dual_quota_identity_check(&l, &nudged).unwrap());
        let g = weights(&[(1, 3), (1, 3), (1, 3)]);
        assert_eq!(nudge_quota(&g, &Quota::half()).unwrap(), Quota::half());
    }

    #[test]
    fn relabelling_equivariance() {
        let l = weights(&[(1, 10), (2, 10), (3, 10), (4, 10)]);
        let sigma = Permutation::parse("3,1,4,2").unwrap();
        let nu = Quota::new(ratio(9, 20)).unwrap();
        let lhs = threshold_complex(&l.permuted(&sigma), &nu).unwrap();
        let rhs = threshold_complex(&l, &nu)
            .unwrap()
            .relabel(sigma.inverse().images());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn permutations() {
        assert!(Permutation::parse("1,1").is_err());
        assert!(Permutation::parse("0,1").is_err());
        let p = Permutation::parse("2,3,1").unwrap();
        assert_eq!(p.inverse().inverse(), p);
        assert_eq!(p.apply(0), 1);
        assert_eq!(p.to_labels(), vec![2, 3, 1]);
    }
}
