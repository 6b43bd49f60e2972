use serde::{Deserialize, Serialize};

use super::set::{VertexSet, MAX_GROUND};
use super::SimplicialError;

/// An abstract simplicial complex on `{0, .., n-1}`, stored by its facets.
///
/// The void complex (no faces at all) has no facets; the complex `{∅}` has the
/// single facet `∅`. Membership is containment in some facet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<VertexSet>,
}

/// JSON form: `{"n": 3, "facets": [[1], [2], [3]]}` with 1-based vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub n: usize,
    pub facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Builds the complex generated by `generators`, keeping only the
    /// inclusion-maximal ones.
    pub fn new(
        n: usize,
        generators: impl IntoIterator<Item = VertexSet>,
    ) -> Result<Self, SimplicialError> {
        if n > MAX_GROUND {
            return Err(SimplicialError::GroundTooLarge { n });
        }
        let full = VertexSet::full(n);
        let mut gens: Vec<VertexSet> = generators.into_iter().collect();
        if let Some(bad) = gens.iter().find(|g| !g.is_subset(full)) {
            return Err(SimplicialError::VertexOutOfRange {
                set: bad.to_string(),
                n,
            });
        }
        gens.sort();
        gens.dedup();
        let facets = gens
            .iter()
            .filter(|&&g| !gens.iter().any(|&h| h != g && g.is_subset(h)))
            .copied()
            .collect();
        Ok(SimplicialComplex { n, facets })
    }

    pub fn void(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: Vec::new(),
        }
    }

    /// The complex `{∅}`.
    pub fn empty_face(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: vec![VertexSet::EMPTY],
        }
    }

    /// The full simplex `2^[n]`.
    pub fn simplex(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: vec![VertexSet::full(n)],
        }
    }

    /// The boundary of the simplex: every proper subset of `[n]`.
    pub fn simplex_boundary(n: usize) -> Self {
        let full = VertexSet::full(n);
        let facets = if n == 0 {
            Vec::new()
        } else {
            (0..n).rev().map(|i| full.remove(i)).collect()
        };
        let mut k = SimplicialComplex { n, facets };
        k.facets.sort();
        k
    }

    /// The complex of all sets satisfying `is_face`, which must be closed
    /// under taking subsets.
    pub fn from_predicate(
        n: usize,
        is_face: impl Fn(VertexSet) -> bool,
    ) -> Result<Self, SimplicialError> {
        if n > MAX_GROUND {
            return Err(SimplicialError::GroundTooLarge { n });
        }
        let facets = VertexSet::all(n)
            .filter(|&s| {
                is_face(s)
                    && (0..n)
                        .filter(|&k| !s.contains(k))
                        .all(|k| !is_face(s.insert(k)))
            })
            .collect();
        Ok(SimplicialComplex { n, facets })
    }

    pub fn from_json(json: &ComplexJson) -> Result<Self, SimplicialError> {
        let sets = json
            .facets
            .iter()
            .map(|f| {
                if let Some(&bad) = f.iter().find(|&&v| v == 0 || v > json.n) {
                    return Err(SimplicialError::VertexOutOfRange {
                        set: format!("{f:?} (vertex {bad})"),
                        n: json.n,
                    });
                }
                Ok(f.iter().map(|&v| v - 1).collect::<VertexSet>())
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(json.n, sets)
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            n: self.n,
            facets: self.facets.iter().map(|f| f.to_labels()).collect(),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn contains(&self, s: VertexSet) -> bool {
        self.facets.iter().any(|&f| s.is_subset(f))
    }

    /// Every face, in bitmask order.
    pub fn faces(&self) -> Vec<VertexSet> {
        VertexSet::all(self.n)
            .filter(|&s| self.contains(s))
            .collect()
    }

    /// Proper for the Bier construction: `∅` is a face and `[n]` is not.
    pub fn is_proper(&self) -> bool {
        !self.is_void() && !self.contains(VertexSet::full(self.n))
    }

    pub fn minimal_non_faces(&self) -> Vec<VertexSet> {
        VertexSet::all(self.n)
            .filter(|&s| !self.contains(s) && s.iter().all(|i| self.contains(s.remove(i))))
            .collect()
    }

    /// Image under the vertex map `i -> perm[i]` (0-based).
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let gens = self
            .facets
            .iter()
            .map(|f| f.iter().map(|i| perm[i]).collect::<VertexSet>());
        Self::new(self.n, gens).expect("a permutation keeps vertices in range")
    }
}

/// `K° = { [n] \ I : I ∉ K }`.
///
/// The facets of `K°` are the complements of the minimal non-faces of `K`. The
/// full simplex has no non-faces; its dual would be void and is reported as
/// [`SimplicialError::FullComplex`].
pub fn alexander_dual(k: &SimplicialComplex) -> Result<SimplicialComplex, SimplicialError> {
    let n = k.ground_size();
    if k.contains(VertexSet::full(n)) {
        return Err(SimplicialError::FullComplex);
    }
    SimplicialComplex::new(
        n,
        k.minimal_non_faces().into_iter().map(|s| s.complement(n)),
    )
}

/// Every simplicial complex on `{0, .., n-1}`, void and full simplex included.
///
/// Subsets are decided in bitmask order, so every proper subset of a set has
/// been decided before the set itself. Intended for `n <= 5`.
pub fn all_complexes(n: usize) -> Vec<SimplicialComplex> {
    fn extend(n: usize, next: u64, chosen: &mut Vec<bool>, out: &mut Vec<SimplicialComplex>) {
        if next == 1 << n {
            let faces = (0..1u64 << n)
                .filter(|&b| chosen[b as usize])
                .map(|b| VertexSet::from_bits(b as u32));
            out.push(SimplicialComplex::new(n, faces).expect("ground size checked by caller"));
            return;
        }
        let s = VertexSet::from_bits(next as u32);
        let allowed = s.iter().all(|i| chosen[s.remove(i).bits() as usize]);
        chosen.push(false);
        extend(n, next + 1, chosen, out);
        chosen.pop();
        if allowed {
            chosen.push(true);
            extend(n, next + 1, chosen, out);
            chosen.pop();
        }
    }
    assert!(n <= 6, "all_complexes is exhaustive; n = {n} is too large");
    let mut out = Vec::new();
    extend(n, 0, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
        let json = ComplexJson {
            n,
            facets: facets.iter().map(|f| f.to_vec()).collect(),
        };
        SimplicialComplex::from_json(&json).unwrap()
    }

    /// `K°` straight from the definition, as a set of faces.
    fn dual_oracle(k: &SimplicialComplex) -> Vec<VertexSet> {
        let n = k.ground_size();
        let mut faces: Vec<VertexSet> = VertexSet::all(n)
            .filter(|&i| !k.contains(i))
            .map(|i| i.complement(n))
            .collect();
        faces.sort();
        faces
    }

    #[test]
    fn dual_of_vertices_of_triangle() {
        let k = cx(3, &[&[1], &[2], &[3]]);
        assert_eq!(alexander_dual(&k).unwrap(), k);
    }

    #[test]
    fn dual_of_point_in_two_vertices() {
        let k = cx(2, &[&[1]]);
        assert_eq!(alexander_dual(&k).unwrap(), k);
    }

    #[test]
    fn dual_of_simplex_boundary_is_empty_face() {
        for n in 1..=6 {
            let d = alexander_dual(&SimplicialComplex::simplex_boundary(n)).unwrap();
            assert_eq!(d, SimplicialComplex::empty_face(n));
            assert_eq!(
                alexander_dual(&d).unwrap(),
                SimplicialComplex::simplex_boundary(n)
            );
        }
    }

    #[test]
    fn full_simplex_has_no_dual() {
        assert_eq!(
            alexander_dual(&SimplicialComplex::simplex(3)),
            Err(SimplicialError::FullComplex)
        );
        assert_eq!(
            alexander_dual(&SimplicialComplex::void(3)).unwrap(),
            SimplicialComplex::simplex(3)
        );
    }

    #[test]
    fn dual_matches_definition_and_is_an_involution() {
        for n in 0..=4 {
            for k in all_complexes(n) {
                let Ok(d) = alexander_dual(&k) else {
                    assert!(k.contains(VertexSet::full(n)));
                    continue;
                };
                assert_eq!(d.faces(), dual_oracle(&k));
                if k.is_proper() {
                    assert_eq!(alexander_dual(&d).unwrap(), k);
                }
            }
        }
    }

    #[test]
    fn dedekind_counts() {
        // Number of downsets of the Boolean lattice.
        let counts: Vec<usize> = (0..=4).map(|n| all_complexes(n).len()).collect();
        assert_eq!(counts, vec![2, 3, 6, 20, 168]);
    }

    #[test]
    fn void_and_empty_face_differ() {
        let v = SimplicialComplex::void(2);
        let e = SimplicialComplex::empty_face(2);
        assert_ne!(v, e);
        assert!(!v.contains(VertexSet::EMPTY));
        assert!(e.contains(VertexSet::EMPTY));
        assert!(!v.is_proper() && e.is_proper());
    }

    #[test]
    fn generators_are_reduced_to_facets() {
        let k = cx(4, &[&[1, 2], &[1], &[3], &[2, 1]]);
        assert_eq!(k.to_json().facets, vec![vec![1, 2], vec![3]]);
        assert!(SimplicialComplex::from_json(&ComplexJson {
            n: 2,
            facets: vec![vec![3]]
        })
        .is_err());
    }
}
