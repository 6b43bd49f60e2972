//! Deleted joins and Bier spheres.
//!
//! `Bier(K)` is the deleted join of `K` with its Alexander dual. Its facets
//! are listed directly: `(A, [n] \ (A ∪ {k}))` for `A ∈ K`, `k ∉ A` and
//! `A ∪ {k} ∉ K`. The brute-force deleted join is kept as an oracle.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::complex::SimplicialComplex;
use super::set::VertexSet;
use super::SimplicialError;

/// A vertex of a deleted join: `i` from the left copy of `[n]` or `ī` from
/// the right copy. 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BierVertex {
    Left(usize),
    Right(usize),
}

impl BierVertex {
    /// Flat external label: `i` for the left copy, `-j` for `j̄`, 1-based.
    pub fn flat(self) -> i64 {
        match self {
            BierVertex::Left(i) => i as i64 + 1,
            BierVertex::Right(j) => -(j as i64 + 1),
        }
    }

    pub fn from_flat(label: i64) -> Option<Self> {
        match label {
            0 => None,
            l if l > 0 => Some(BierVertex::Left(l as usize - 1)),
            l => Some(BierVertex::Right((-l) as usize - 1)),
        }
    }

    pub fn swap(self) -> Self {
        match self {
            BierVertex::Left(i) => BierVertex::Right(i),
            BierVertex::Right(j) => BierVertex::Left(j),
        }
    }
}

impl fmt::Display for BierVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BierVertex::Left(i) => write!(f, "{}", i + 1),
            BierVertex::Right(j) => write!(f, "{}'", j + 1),
        }
    }
}

/// A face `(I, J)` of a deleted join with `I ∩ J = ∅`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BierFace {
    pub left: VertexSet,
    pub right: VertexSet,
}

/// JSON form of a face: 1-based `left` and `right` lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BierFaceJson {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// JSON form of a face family: `{"facets": [{"left": [..], "right": [..]}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BierFamilyJson {
    pub facets: Vec<BierFaceJson>,
}

impl BierFace {
    pub fn new(left: VertexSet, right: VertexSet) -> Self {
        debug_assert!(left.is_disjoint(right));
        BierFace { left, right }
    }

    pub fn len(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `|I| + |J| - 1`.
    pub fn dim(&self) -> isize {
        self.len() as isize - 1
    }

    pub fn vertices(&self) -> Vec<BierVertex> {
        self.left
            .iter()
            .map(BierVertex::Left)
            .chain(self.right.iter().map(BierVertex::Right))
            .collect()
    }

    pub fn from_vertices<'a>(vs: impl IntoIterator<Item = &'a BierVertex>) -> Self {
        let mut face = BierFace::new(VertexSet::EMPTY, VertexSet::EMPTY);
        for v in vs {
            match *v {
                BierVertex::Left(i) => face.left = face.left.insert(i),
                BierVertex::Right(j) => face.right = face.right.insert(j),
            }
        }
        face
    }

    pub fn swap(&self) -> Self {
        BierFace {
            left: self.right,
            right: self.left,
        }
    }

    pub fn is_subface_of(&self, other: &BierFace) -> bool {
        self.left.is_subset(other.left) && self.right.is_subset(other.right)
    }

    /// Flat labels, positive for the left copy and negative for the right.
    pub fn flat(&self) -> Vec<i64> {
        self.vertices().into_iter().map(BierVertex::flat).collect()
    }

    pub fn to_json(&self) -> BierFaceJson {
        BierFaceJson {
            left: self.left.to_labels(),
            right: self.right.to_labels(),
        }
    }

    pub fn from_json(json: &BierFaceJson) -> Option<Self> {
        let left = VertexSet::from_labels(&json.left)?;
        let right = VertexSet::from_labels(&json.right)?;
        left.is_disjoint(right).then_some(BierFace { left, right })
    }
}

impl fmt::Display for BierFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.left, self.right)
    }
}

pub fn family_to_json(faces: &[BierFace]) -> BierFamilyJson {
    BierFamilyJson {
        facets: faces.iter().map(BierFace::to_json).collect(),
    }
}

fn require_proper(k: &SimplicialComplex) -> Result<(), SimplicialError> {
    if k.is_proper() {
        Ok(())
    } else {
        Err(SimplicialError::NotProper)
    }
}

/// Facets of `Bier(K) = K *_Δ K°`, sorted.
pub fn bier_facets(k: &SimplicialComplex) -> Result<Vec<BierFace>, SimplicialError> {
    require_proper(k)?;
    let n = k.ground_size();
    let full = VertexSet::full(n);
    let mut out = Vec::new();
    for a in k.faces() {
        for extra in 0..n {
            if a.contains(extra) {
                continue;
            }
            let grown = a.insert(extra);
            if !k.contains(grown) {
                out.push(BierFace::new(a, full.difference(grown)));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Every face `(A, B)` with `A ∈ K`, `B ∈ L` and `A ∩ B = ∅`, sorted.
pub fn deleted_join_faces(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
) -> Result<Vec<BierFace>, SimplicialError> {
    if k.ground_size() != l.ground_size() {
        return Err(SimplicialError::GroundMismatch {
            left: k.ground_size(),
            right: l.ground_size(),
        });
    }
    let right_faces = l.faces();
    let mut out: Vec<BierFace> = k
        .faces()
        .into_iter()
        .flat_map(|a| {
            right_faces
                .iter()
                .filter(move |b| a.is_disjoint(**b))
                .map(move |&b| BierFace::new(a, b))
        })
        .collect();
    out.sort();
    Ok(out)
}

/// The inclusion-maximal members of a face list.
pub fn maximal_faces(faces: &[BierFace]) -> Vec<BierFace> {
    let mut out: Vec<BierFace> = faces
        .iter()
        .filter(|f| !faces.iter().any(|g| g != *f && f.is_subface_of(g)))
        .copied()
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Vertices of `Bier(K)`: `i` when `{i} ∈ K` and `j̄` when `[n] \ {j} ∉ K`.
pub fn bier_vertices(k: &SimplicialComplex) -> Vec<BierVertex> {
    let n = k.ground_size();
    let full = VertexSet::full(n);
    let left = (0..n)
        .filter(|&i| k.contains(VertexSet::singleton(i)))
        .map(BierVertex::Left);
    let right = (0..n)
        .filter(|&j| !k.contains(full.remove(j)))
        .map(BierVertex::Right);
    left.chain(right).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::complex::{alexander_dual, all_complexes, ComplexJson};

    fn cx(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::from_json(&ComplexJson {
            n,
            facets: facets.iter().map(|f| f.to_vec()).collect(),
        })
        .unwrap()
    }

    fn face(left: &[usize], right: &[usize]) -> BierFace {
        BierFace::new(
            VertexSet::from_labels(left).unwrap(),
            VertexSet::from_labels(right).unwrap(),
        )
    }

    #[test]
    fn smallest_bier_sphere_is_two_points() {
        let k = cx(2, &[&[1]]);
        assert_eq!(
            bier_facets(&k).unwrap(),
            vec![face(&[], &[1]), face(&[1], &[])]
        );
    }

    #[test]
    fn hexagon() {
        let k = cx(3, &[&[1], &[2], &[3]]);
        let facets = bier_facets(&k).unwrap();
        assert_eq!(facets.len(), 6);
        for f in &facets {
            assert_eq!((f.left.len(), f.right.len()), (1, 1));
            assert!(f.left.is_disjoint(f.right));
        }
    }

    #[test]
    fn improper_complexes_are_rejected() {
        assert_eq!(
            bier_facets(&SimplicialComplex::simplex(3)),
            Err(SimplicialError::NotProper)
        );
        assert_eq!(
            bier_facets(&SimplicialComplex::void(3)),
            Err(SimplicialError::NotProper)
        );
    }

    #[test]
    fn deleted_join_examples() {
        let e = SimplicialComplex::empty_face(2);
        assert_eq!(deleted_join_faces(&e, &e).unwrap(), vec![face(&[], &[])]);

        let k = cx(2, &[&[1]]);
        let faces = deleted_join_faces(&k, &alexander_dual(&k).unwrap()).unwrap();
        assert_eq!(
            faces,
            vec![face(&[], &[]), face(&[], &[1]), face(&[1], &[])]
        );

        let k = cx(2, &[&[1], &[2]]);
        let faces = deleted_join_faces(&k, &k).unwrap();
        assert_eq!(faces.len(), 7);
        assert!(faces.contains(&face(&[1], &[2])) && faces.contains(&face(&[2], &[1])));

        assert!(matches!(
            deleted_join_faces(&k, &SimplicialComplex::empty_face(3)),
            Err(SimplicialError::GroundMismatch { .. })
        ));
    }

    #[test]
    fn fast_facets_match_deleted_join_oracle() {
        for n in 1..=4 {
            for k in all_complexes(n)
                .into_iter()
                .filter(SimplicialComplex::is_proper)
            {
                let dual = alexander_dual(&k).unwrap();
                let oracle = maximal_faces(&deleted_join_faces(&k, &dual).unwrap());
                let fast = bier_facets(&k).unwrap();
                assert_eq!(fast, oracle, "K = {:?}", k.to_json());
                // purity, facet count formula, swap symmetry, vertex count
                assert!(fast.iter().all(|f| f.len() == n - 1));
                let expected: usize = k
                    .faces()
                    .iter()
                    .map(|a| {
                        (0..n)
                            .filter(|&i| !a.contains(i) && !k.contains(a.insert(i)))
                            .count()
                    })
                    .sum();
                assert_eq!(fast.len(), expected);
                let mut swapped: Vec<BierFace> = fast.iter().map(BierFace::swap).collect();
                swapped.sort();
                assert_eq!(bier_facets(&dual).unwrap(), swapped);
                let mut seen: Vec<BierVertex> = fast.iter().flat_map(BierFace::vertices).collect();
                seen.sort();
                seen.dedup();
                assert_eq!(seen, bier_vertices(&k));
            }
        }
    }

    #[test]
    fn flat_labels() {
        let f = face(&[1, 3], &[2]);
        assert_eq!(f.flat(), vec![1, 3, -2]);
        assert_eq!(BierVertex::from_flat(-2), Some(BierVertex::Right(1)));
        assert_eq!(BierVertex::from_flat(0), None);
        assert_eq!(BierFace::from_json(&f.to_json()), Some(f));
        assert_eq!(
            BierFace::from_json(&BierFaceJson {
                left: vec![1],
                right: vec![1]
            }),
            None
        );
    }
}
