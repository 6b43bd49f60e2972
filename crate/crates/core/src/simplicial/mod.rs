//! Abstract simplicial complexes, Alexander duality and Bier spheres.

mod bier;
mod complex;
mod family;
mod set;

use thiserror::Error;

pub use bier::{
    bier_facets, bier_vertices, deleted_join_faces, family_to_json, maximal_faces, BierFace,
    BierFaceJson, BierFamilyJson, BierVertex,
};
pub use complex::{alexander_dual, all_complexes, ComplexJson, SimplicialComplex};
pub use family::{
    isomorphic_under, search_isomorphism, FVector, FacetFamily, MAX_ISOMORPHISM_VERTICES,
};
pub use set::{VertexSet, MAX_GROUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplicialError {
    #[error("ground set of size {n} exceeds the supported maximum of 16")]
    GroundTooLarge { n: usize },
    #[error("face {set} is not a subset of the ground set [{n}]")]
    VertexOutOfRange { set: String, n: usize },
    #[error("the complex is the full simplex; its Alexander dual is void")]
    FullComplex,
    #[error("complex is not proper: need ∅ ∈ K and [n] ∉ K")]
    NotProper,
    #[error("ground sets differ: {left} vs {right}")]
    GroundMismatch { left: usize, right: usize },
    #[error("vertex map is not a bijection onto the target vertices")]
    NotBijective,
    #[error("{vertices} vertices exceed the isomorphism search limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },
}
