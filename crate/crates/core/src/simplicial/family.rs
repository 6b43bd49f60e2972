//! Facet families over arbitrary vertex labels, f-vectors and isomorphisms.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::bier::{BierFace, BierVertex};
use super::complex::SimplicialComplex;
use super::SimplicialError;

/// Largest vertex count accepted by [`search_isomorphism`].
pub const MAX_ISOMORPHISM_VERTICES: usize = 14;

/// A set of facets, each a sorted list of vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FacetFamily<V: Ord>(BTreeSet<Vec<V>>);

impl<V: Ord + Clone> FacetFamily<V> {
    pub fn new<I, F>(facets: I) -> Self
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = V>,
    {
        FacetFamily(
            facets
                .into_iter()
                .map(|f| {
                    let mut v: Vec<V> = f.into_iter().collect();
                    v.sort();
                    v.dedup();
                    v
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<V>> {
        self.0.iter()
    }

    pub fn contains(&self, facet: &[V]) -> bool {
        self.0.contains(facet)
    }

    pub fn vertices(&self) -> BTreeSet<V> {
        self.0.iter().flatten().cloned().collect()
    }

    pub fn map<W: Ord + Clone>(&self, f: impl Fn(&V) -> W) -> FacetFamily<W> {
        FacetFamily::new(
            self.0
                .iter()
                .map(|facet| facet.iter().map(&f).collect::<Vec<_>>()),
        )
    }
}

impl FacetFamily<BierVertex> {
    pub fn from_bier(faces: &[BierFace]) -> Self {
        FacetFamily::new(faces.iter().map(BierFace::vertices))
    }

    pub fn to_bier(&self) -> Vec<BierFace> {
        let mut out: Vec<BierFace> = self.0.iter().map(BierFace::from_vertices).collect();
        out.sort();
        out
    }
}

impl FacetFamily<usize> {
    pub fn from_complex(k: &SimplicialComplex) -> Self {
        FacetFamily::new(k.facets().iter().map(|f| f.iter().collect::<Vec<_>>()))
    }
}

/// Face counts by dimension, starting at `f_{-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    /// Counts every face of the complex generated by `facets`.
    pub fn of_family<V: Ord + Clone + std::hash::Hash>(facets: &FacetFamily<V>) -> Self {
        let mut faces: HashSet<Vec<V>> = HashSet::new();
        for facet in facets.iter() {
            assert!(facet.len() < 64, "facet too large to enumerate");
            for mask in 0..1u64 << facet.len() {
                let face: Vec<V> = facet
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .map(|(_, v)| v.clone())
                    .collect();
                faces.insert(face);
            }
        }
        let top = faces.iter().map(Vec::len).max().unwrap_or(0);
        let mut counts = vec![0u64; if faces.is_empty() { 0 } else { top + 1 }];
        for f in &faces {
            counts[f.len()] += 1;
        }
        FVector(counts)
    }

    pub fn of_bier(faces: &[BierFace]) -> Self {
        Self::of_family(&FacetFamily::from_bier(faces))
    }

    pub fn of_complex(k: &SimplicialComplex) -> Self {
        let faces = k.faces();
        let top = faces.iter().map(|f| f.len()).max().unwrap_or(0);
        let mut counts = vec![0u64; if faces.is_empty() { 0 } else { top + 1 }];
        for f in faces {
            counts[f.len()] += 1;
        }
        FVector(counts)
    }

    /// `sum_{i >= 0} (-1)^i f_i`, ignoring the empty face.
    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .skip(1)
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }
}

/// Whether `map` carries the facets of `a` exactly onto the facets of `b`.
///
/// `map` must be injective and defined on every vertex of `a`.
pub fn isomorphic_under<V, W>(
    map: &BTreeMap<V, W>,
    a: &FacetFamily<V>,
    b: &FacetFamily<W>,
) -> Result<bool, SimplicialError>
where
    V: Ord + Clone,
    W: Ord + Clone,
{
    let image: BTreeSet<&W> = map.values().collect();
    if image.len() != map.len() || a.vertices().iter().any(|v| !map.contains_key(v)) {
        return Err(SimplicialError::NotBijective);
    }
    Ok(a.len() == b.len() && a.map(|v| map[v].clone()) == *b)
}

/// Searches for a vertex bijection carrying `a` onto `b` by backtracking.
pub fn search_isomorphism<V, W>(
    a: &FacetFamily<V>,
    b: &FacetFamily<W>,
) -> Result<Option<BTreeMap<V, W>>, SimplicialError>
where
    V: Ord + Clone,
    W: Ord + Clone,
{
    let va: Vec<V> = a.vertices().into_iter().collect();
    let vb: Vec<W> = b.vertices().into_iter().collect();
    let limit = va.len().max(vb.len());
    if limit > MAX_ISOMORPHISM_VERTICES {
        return Err(SimplicialError::TooLarge {
            vertices: limit,
            limit: MAX_ISOMORPHISM_VERTICES,
        });
    }
    if va.len() != vb.len() || a.len() != b.len() {
        return Ok(None);
    }
    let ia = Indexed::new(a, &va);
    let ib = Indexed::new(b, &vb);
    let mut mapping = vec![usize::MAX; va.len()];
    let mut used = vec![false; vb.len()];
    if extend(&ia, &ib, 0, &mut mapping, &mut used) {
        Ok(Some(
            mapping
                .iter()
                .enumerate()
                .map(|(i, &j)| (va[i].clone(), vb[j].clone()))
                .collect(),
        ))
    } else {
        Ok(None)
    }
}

/// Facets as bitmasks over vertex indices, with degree data for pruning.
struct Indexed {
    facets: HashSet<u32>,
    degree: Vec<usize>,
    codegree: Vec<Vec<usize>>,
}

impl Indexed {
    fn new<V: Ord + Clone>(family: &FacetFamily<V>, vertices: &[V]) -> Self {
        let n = vertices.len();
        let index = |v: &V| vertices.binary_search(v).expect("vertex listed");
        let facets: HashSet<u32> = family
            .iter()
            .map(|f| f.iter().fold(0u32, |m, v| m | 1 << index(v)))
            .collect();
        let mut degree = vec![0; n];
        let mut codegree = vec![vec![0; n]; n];
        for &f in &facets {
            for i in (0..n).filter(|&i| f >> i & 1 == 1) {
                degree[i] += 1;
                for j in (0..n).filter(|&j| f >> j & 1 == 1) {
                    codegree[i][j] += 1;
                }
            }
        }
        Indexed {
            facets,
            degree,
            codegree,
        }
    }
}

fn extend(a: &Indexed, b: &Indexed, next: usize, mapping: &mut [usize], used: &mut [bool]) -> bool {
    if next == mapping.len() {
        return a.facets.iter().all(|&f| {
            let image = (0..mapping.len())
                .filter(|&i| f >> i & 1 == 1)
                .fold(0u32, |m, i| m | 1 << mapping[i]);
            b.facets.contains(&image)
        });
    }
    for cand in 0..used.len() {
        if used[cand] || a.degree[next] != b.degree[cand] {
            continue;
        }
        let compatible = (0..next).all(|p| a.codegree[next][p] == b.codegree[cand][mapping[p]]);
        if !compatible {
            continue;
        }
        mapping[next] = cand;
        used[cand] = true;
        if extend(a, b, next + 1, mapping, used) {
            return true;
        }
        used[cand] = false;
    }
    mapping[next] = usize::MAX;
    false
}
