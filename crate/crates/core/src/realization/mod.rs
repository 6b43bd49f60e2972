//! Geometric realizations of Bier spheres and the verifiers that compare them
//! with the combinatorial side.

mod delta;
mod gale;
mod kr;

use serde_json::{json, Value};
use thiserror::Error;

use crate::exactgeom::{format_rational, GeomError};
use crate::metricgraph::MetricError;
use crate::simplicial::{BierFace, SimplicialError, VertexSet};
use crate::threshold::{is_generic, GenericityReport, Quota, ThresholdError, WeightVector};

pub use delta::{
    delta_basis, delta_point, delta_realization, fan_check, fan_structure, star_volume, ChainCell,
    DeltaRealization, FanStructure,
};
pub use gale::{q_alpha, standard_circuit, verify_q_alpha, GaleConfiguration, QAlphaOptions};
pub use kr::{cycle_label, kr_bier_family, perm_equivalence, verify_kr_bier};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizationError {
    #[error("weights must sum to 1 (normalize first)")]
    NotNormalized,
    #[error("weights are not generic: subset {subset} has measure exactly {quota}")]
    NotGeneric { subset: VertexSet, quota: String },
    #[error("bar {index} has length {weight} >= 1/2; every bar must be short")]
    LongBar { index: usize, weight: String },
    #[error("not a minimal circuit: {0}")]
    DegenerateCircuit(String),
    #[error("alpha must be positive")]
    NonPositiveAlpha,
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("need n >= {min}, got {n}")]
    TooSmall { n: usize, min: usize },
    #[error("complex must contain the empty set and not the full ground set")]
    NotProper,
    #[error("rays of facet {0} are linearly dependent")]
    DegenerateCone(BierFace),
    #[error("vertex {0} of the KR polytope is not an edge generator")]
    NonEdgeVertex(String),
    #[error("the facet cones do not form a complete fan")]
    FanCheckFailed,
    #[error(transparent)]
    Threshold(ThresholdError),
    #[error(transparent)]
    Simplicial(SimplicialError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

impl From<ThresholdError> for RealizationError {
    fn from(e: ThresholdError) -> Self {
        match e {
            ThresholdError::NotNormalized => RealizationError::NotNormalized,
            ThresholdError::NotGeneric { subset, quota } => {
                RealizationError::NotGeneric { subset, quota }
            }
            other => RealizationError::Threshold(other),
        }
    }
}

impl From<SimplicialError> for RealizationError {
    fn from(e: SimplicialError) -> Self {
        match e {
            SimplicialError::NotProper => RealizationError::NotProper,
            other => RealizationError::Simplicial(other),
        }
    }
}

fn require_normalized(l: &WeightVector) -> Result<(), RealizationError> {
    if l.is_normalized() {
        Ok(())
    } else {
        Err(RealizationError::NotNormalized)
    }
}

fn require_size(n: usize, min: usize) -> Result<(), RealizationError> {
    if n < min {
        Err(RealizationError::TooSmall { n, min })
    } else {
        Ok(())
    }
}

fn generic_or_violation(
    l: &WeightVector,
    nu: &Quota,
) -> Result<Option<VertexSet>, RealizationError> {
    Ok(match is_generic(l, nu)? {
        GenericityReport::Generic => None,
        GenericityReport::Violation(s) => Some(s),
    })
}

fn require_short_bars(l: &WeightVector) -> Result<(), RealizationError> {
    let half = Quota::half();
    match l.weights().iter().position(|w| w >= half.value()) {
        Some(index) => Err(RealizationError::LongBar {
            index: index + 1,
            weight: format_rational(l.weight(index)),
        }),
        None => Ok(()),
    }
}

fn weights_json(l: &WeightVector) -> Value {
    json!(l.weights().iter().map(format_rational).collect::<Vec<_>>())
}

fn face_json(f: &BierFace) -> Value {
    json!(f.to_json())
}
