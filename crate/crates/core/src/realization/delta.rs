//! The canonical realization of `Bier(K)` in the sum-zero hyperplane `H_0`.
//!
//! Vertex `i` sits at `δ_i = e_i - u/n` and `j̄` at `-δ_j`, `u = e_1 + .. + e_n`.
//! The facet cones form a complete simplicial fan. The check runs over
//! maximal chains `C_1 ⊂ .. ⊂ C_{n-1}` of proper nonempty subsets (one per
//! permutation of `[n]`). Each chain lies in exactly one facet cell: with
//! `p = max{i : C_i ∈ K}` it lies in the cell of `(C_p, [n] \ C_{p+1})`.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use num_traits::{One, Signed};
use serde_json::json;

use super::{face_json, require_size, RealizationError};
use crate::exactgeom::linalg::{coordinates_in, rank};
use crate::exactgeom::{cone_simplex_volume, Rational, Vector};
use crate::report::VerificationReport;
use crate::simplicial::{bier_facets, BierFace, BierVertex, SimplicialComplex, VertexSet};

/// `δ_i = e_i - u/n` in `R^n`, 0-based.
pub fn delta_point(n: usize, i: usize) -> Vector {
    let shift = Rational::new(1.into(), (n as i64).into());
    (0..n)
        .map(|k| {
            if k == i {
                Rational::one() - &shift
            } else {
                -shift.clone()
            }
        })
        .collect()
}

/// `δ_1, .., δ_{n-1}`, a basis of `H_0`. Volumes are measured in it.
pub fn delta_basis(n: usize) -> Vec<Vector> {
    (0..n.saturating_sub(1))
        .map(|i| delta_point(n, i))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaRealization {
    n: usize,
    facets: Vec<BierFace>,
}

impl DeltaRealization {
    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[BierFace] {
        &self.facets
    }

    pub fn vertex_point(&self, v: BierVertex) -> Vector {
        match v {
            BierVertex::Left(i) => delta_point(self.n, i),
            BierVertex::Right(j) => delta_point(self.n, j).neg(),
        }
    }

    /// Coordinates of a vertex in the basis [`delta_basis`].
    pub fn coordinates(&self, v: BierVertex) -> Vec<Rational> {
        coordinates_in(&delta_basis(self.n), &self.vertex_point(v)).expect("δ-points lie in H_0")
    }

    /// The rays `{δ_i}_{i ∈ S} ∪ {-δ_j}_{j ∈ T}` of a face `(S, T)`.
    pub fn rays(&self, face: &BierFace) -> Vec<Vector> {
        face.vertices()
            .into_iter()
            .map(|v| self.vertex_point(v))
            .collect()
    }
}

/// Places `Bier(K)` and checks that every facet spans a simplicial cone.
pub fn delta_realization(k: &SimplicialComplex) -> Result<DeltaRealization, RealizationError> {
    let n = k.ground_size();
    let facets = bier_facets(k)?;
    require_size(n, 2)?;
    let real = DeltaRealization { n, facets };
    if let Some(bad) = real.facets.iter().find(|f| rank(&real.rays(f)) != n - 1) {
        return Err(RealizationError::DegenerateCone(*bad));
    }
    Ok(real)
}

/// A maximal chain of proper nonempty subsets, stored as the order in which
/// the elements of `[n]` are added.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainCell {
    order: Vec<usize>,
}

impl ChainCell {
    pub fn from_order(order: Vec<usize>) -> Option<Self> {
        let mut sorted = order.clone();
        sorted.sort_unstable();
        (sorted == (0..order.len()).collect::<Vec<_>>()).then_some(ChainCell { order })
    }

    /// `C_0 = ∅ ⊂ C_1 ⊂ .. ⊂ C_n = [n]`; the chain proper is `C_1 .. C_{n-1}`.
    pub fn sets(&self) -> Vec<VertexSet> {
        let mut out = vec![VertexSet::EMPTY];
        for &i in &self.order {
            out.push(out.last().unwrap().insert(i));
        }
        out
    }

    /// The facet `(C_p, [n] \ C_{p+1})`, `p = max{i < n : C_i ∈ K}`.
    pub fn facet_of(&self, k: &SimplicialComplex) -> BierFace {
        let n = self.order.len();
        let sets = self.sets();
        let p = (0..n)
            .rev()
            .find(|&i| k.contains(sets[i]))
            .expect("∅ is a face");
        BierFace::new(sets[p], sets[p + 1].complement(n))
    }

    /// Every maximal chain on `[n]`, by lexicographic order of permutations.
    pub fn all(n: usize) -> impl Iterator<Item = ChainCell> {
        let mut next = Some((0..n).collect::<Vec<_>>());
        std::iter::from_fn(move || {
            let cur = next.take()?;
            next = next_permutation(&cur);
            Some(ChainCell { order: cur })
        })
    }
}

fn next_permutation(p: &[usize]) -> Option<Vec<usize>> {
    let mut p = p.to_vec();
    let i = (1..p.len()).rev().find(|&i| p[i - 1] < p[i])?;
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("p[i] qualifies");
    p.swap(i - 1, j);
    p[i..].reverse();
    Some(p)
}

fn factorial(k: usize) -> BigUint {
    (1..=k).map(BigUint::from).product()
}

/// Chain counts per facet cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanStructure {
    pub chains: usize,
    pub cells: BTreeMap<BierFace, usize>,
}

/// Assigns every maximal chain to its facet cell.
pub fn fan_structure(k: &SimplicialComplex) -> Result<FanStructure, RealizationError> {
    bier_facets(k)?;
    let mut cells = BTreeMap::new();
    let chains = ChainCell::all(k.ground_size())
        .inspect(|c| *cells.entry(c.facet_of(k)).or_insert(0) += 1)
        .count();
    Ok(FanStructure { chains, cells })
}

/// Checks that the facet cones of the δ-realization form a complete fan.
///
/// Combinatorially, every chain must lie in exactly one facet cell, and the
/// facet `(S, T)` must receive exactly its `|S|! |T|!` chains, so the cells
/// partition all `n!` chains. Geometrically, for every chain the shore rays
/// `ν_δ(C_i)` (for `C_i ⊆ S`) and `ν_{-δ}([n] \ C_i)` (for `C_i ⊇ T^c`) must
/// be positive multiples of the barycentric rays `ν_δ(C_i)`, lie in the facet
/// cone, and span `H_0`.
pub fn fan_check(k: &SimplicialComplex) -> Result<VerificationReport, RealizationError> {
    const THEOREM: &str = "complete_fan";
    let real = delta_realization(k)?;
    let n = real.n;
    let instance = json!(k.to_json());
    let facets: HashSet<BierFace> = real.facets.iter().copied().collect();
    let full = VertexSet::full(n);
    let barycenter = |s: VertexSet, sign: &Rational| -> Vector {
        let scale = sign / Rational::from_integer((s.len() as i64).into());
        s.iter()
            .fold(Vector::zeros(n), |acc, i| acc.add(&delta_point(n, i)))
            .scale(&scale)
    };
    let one = Rational::one();
    let minus_one = -Rational::one();

    let mut structure = FanStructure {
        chains: 0,
        cells: BTreeMap::new(),
    };
    for chain in ChainCell::all(n) {
        let sets = chain.sets();
        let chain_labels: Vec<usize> = chain.order.iter().map(|i| i + 1).collect();
        let hits: Vec<usize> = (0..n)
            .filter(|&i| facets.contains(&BierFace::new(sets[i], sets[i + 1].complement(n))))
            .collect();
        let facet = chain.facet_of(k);
        let p = facet.left.len();
        if hits != [p] {
            let cert = json!({"reason": "chain is not in exactly one facet cell", "chain": chain_labels, "cells": hits.len()});
            return Ok(VerificationReport::fail(THEOREM, instance, 0, cert));
        }
        *structure.cells.entry(facet).or_insert(0) += 1;
        structure.chains += 1;

        let facet_rays = real.rays(&facet);
        let mut bary = Vec::with_capacity(n - 1);
        for (i, &c) in sets.iter().enumerate().take(n).skip(1) {
            let b = barycenter(c, &one);
            let shore = if i <= p {
                b.clone()
            } else {
                barycenter(full.difference(c), &minus_one)
            };
            let inside = coordinates_in(&facet_rays, &shore)
                .is_some_and(|cs| cs.iter().all(|x| !x.is_negative()));
            if !shore.is_positive_multiple_of(&b) || !inside {
                let cert = json!({"reason": "shore ray outside the facet cone", "chain": chain_labels, "step": i,
                                  "facet": face_json(&facet)});
                return Ok(VerificationReport::fail(THEOREM, instance, 0, cert));
            }
            bary.push(b);
        }
        if rank(&bary) != n - 1 {
            let cert = json!({"reason": "barycentric rays are dependent", "chain": chain_labels});
            return Ok(VerificationReport::fail(THEOREM, instance, 0, cert));
        }
    }

    let cell_ok = |f: &&BierFace| {
        BigUint::from(structure.cells.get(*f).copied().unwrap_or(0))
            == factorial(f.left.len()) * factorial(f.right.len())
    };
    let matched = real.facets.iter().filter(cell_ok).count();
    if let Some(bad) = real.facets.iter().find(|f| !cell_ok(f)) {
        let cert = json!({"reason": "facet cell count", "facet": face_json(bad),
                          "chains": structure.cells.get(bad).copied().unwrap_or(0)});
        return Ok(VerificationReport::fail(THEOREM, instance, matched, cert));
    }
    if BigUint::from(structure.chains) != factorial(n) || structure.cells.len() != real.facets.len()
    {
        let cert = json!({"reason": "chain total", "chains": structure.chains});
        return Ok(VerificationReport::fail(THEOREM, instance, matched, cert));
    }
    Ok(VerificationReport::pass(THEOREM, instance, matched))
}

/// Volume of the star-shaped body `{λx : x ∈ R_{±δ}(Bier(K)), 0 ≤ λ ≤ 1}`,
/// measured in the δ-basis.
pub fn star_volume(k: &SimplicialComplex) -> Result<Rational, RealizationError> {
    if !fan_check(k)?.passed() {
        return Err(RealizationError::FanCheckFailed);
    }
    let real = delta_realization(k)?;
    let basis = delta_basis(real.n);
    real.facets
        .iter()
        .try_fold(Rational::from_integer(0.into()), |acc, f| {
            Ok(acc + cone_simplex_volume(&real.rays(f), &basis)?)
        })
}
