//! Weighted graphs, finite metrics and Kantorovich-Rubinstein polytopes.
//!
//! `KR(ρ)` is the convex hull of `(e_x - e_y) / ρ(x, y)` over ordered pairs of
//! distinct points. For the geodesic metric of a graph the edge generators
//! already span the same hull.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::exactgeom::{
    extreme_points, facet_enumeration, format_rational, parse_rational, GeomError,
    ParseRationalError, PointConfiguration, Rational, Vector,
};
use crate::report::VerificationReport;
use crate::simplicial::{FacetFamily, VertexSet, MAX_GROUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("graph has no vertices")]
    NoVertices,
    #[error("vertex {vertex} is out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {{{a},{b}}} is listed twice")]
    DuplicateEdge { a: usize, b: usize },
    #[error("edge {{{a},{b}}} has a non-positive weight")]
    NonPositiveWeight { a: usize, b: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("not a metric: {0}")]
    InvalidMetric(MetricViolation),
    #[error("KR generators need at least two points")]
    TooFewPoints,
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("graph is not a tree")]
    NotATree,
    #[error(transparent)]
    Parse(#[from] ParseRationalError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// An undirected edge `{a, b}` with `a < b`, 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub weight: Rational,
}

/// A simple graph on `{0, .., n-1}` with strictly positive edge weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
}

/// JSON form: `{"n": 3, "edges": [[1, 2, "1/2"], ...]}`, 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize, String)>,
}

impl WeightedGraph {
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self, MetricError> {
        if n == 0 {
            return Err(MetricError::NoVertices);
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (i, j, weight) in edges {
            if let Some(vertex) = [i, j].into_iter().find(|&v| v >= n) {
                return Err(MetricError::VertexOutOfRange {
                    vertex: vertex + 1,
                    n,
                });
            }
            if i == j {
                return Err(MetricError::SelfLoop(i + 1));
            }
            let (a, b) = (i.min(j), i.max(j));
            if !seen.insert((a, b)) {
                return Err(MetricError::DuplicateEdge { a: a + 1, b: b + 1 });
            }
            if !weight.is_positive() {
                return Err(MetricError::NonPositiveWeight { a: a + 1, b: b + 1 });
            }
            out.push(Edge { a, b, weight });
        }
        out.sort();
        Ok(WeightedGraph { n, edges: out })
    }

    /// The cycle with edge `{i, i+1}` (indices mod n) of weight `weights[i]`.
    pub fn cycle(weights: &[Rational]) -> Result<Self, MetricError> {
        let n = weights.len();
        if n < 3 {
            return Err(MetricError::HypothesisFailed(format!(
                "a cycle needs at least 3 vertices, got {n}"
            )));
        }
        Self::new(
            n,
            weights
                .iter()
                .enumerate()
                .map(|(i, w)| (i, (i + 1) % n, w.clone())),
        )
    }

    /// The path `0 - 1 - .. - k` with edge `{i, i+1}` of weight `weights[i]`.
    pub fn path(weights: &[Rational]) -> Result<Self, MetricError> {
        Self::new(
            weights.len() + 1,
            weights
                .iter()
                .enumerate()
                .map(|(i, w)| (i, i + 1, w.clone())),
        )
    }

    /// The star with center `0` and edge `{0, i+1}` of weight `weights[i]`.
    pub fn star(weights: &[Rational]) -> Result<Self, MetricError> {
        Self::new(
            weights.len() + 1,
            weights
                .iter()
                .enumerate()
                .map(|(i, w)| (0, i + 1, w.clone())),
        )
    }

    pub fn from_json(json: &GraphJson) -> Result<Self, MetricError> {
        let edges = json
            .edges
            .iter()
            .map(|(i, j, w)| {
                let vertex = if *i == 0 {
                    Some(*i)
                } else if *j == 0 {
                    Some(*j)
                } else {
                    None
                };
                if vertex.is_some() {
                    return Err(MetricError::VertexOutOfRange {
                        vertex: 0,
                        n: json.n,
                    });
                }
                Ok((i - 1, j - 1, parse_rational(w)?))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(json.n, edges)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|e| (e.a + 1, e.b + 1, format_rational(&e.weight)))
                .collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                let other = if e.a == v {
                    e.b
                } else if e.b == v {
                    e.a
                } else {
                    continue;
                };
                if !std::mem::replace(&mut seen[other], true) {
                    stack.push(other);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n && self.is_connected()
    }

    /// The induced subgraph on `keep`, with vertex `keep[k]` renamed `k`.
    pub fn induced(&self, keep: &[usize]) -> Result<Self, MetricError> {
        let index = |v: usize| keep.iter().position(|&k| k == v);
        let edges = self
            .edges
            .iter()
            .filter_map(|e| Some((index(e.a)?, index(e.b)?, e.weight.clone())))
            .collect::<Vec<_>>();
        Self::new(keep.len(), edges)
    }
}

/// First reason a matrix fails to be a metric, with 1-based indices.
///
/// Shape is checked first, then the pairwise conditions for `(i, j)` in
/// lexicographic order, then the triangle inequalities
/// `d(i,k) <= d(i,j) + d(j,k)` for `(i, j, k)` in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MetricViolation {
    NotSquare { row: usize },
    NonzeroDiagonal { i: usize },
    Asymmetric { i: usize, j: usize },
    NonPositive { i: usize, j: usize },
    Triangle { i: usize, j: usize, k: usize },
}

impl fmt::Display for MetricViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricViolation::NotSquare { row } => write!(f, "row {row} has the wrong length"),
            MetricViolation::NonzeroDiagonal { i } => write!(f, "d({i},{i}) != 0"),
            MetricViolation::Asymmetric { i, j } => write!(f, "d({i},{j}) != d({j},{i})"),
            MetricViolation::NonPositive { i, j } => write!(f, "d({i},{j}) <= 0"),
            MetricViolation::Triangle { i, j, k } => {
                write!(f, "d({i},{k}) > d({i},{j}) + d({j},{k})")
            }
        }
    }
}

pub fn validate_metric(d: &[Vec<Rational>]) -> Result<(), MetricViolation> {
    let n = d.len();
    if let Some(row) = d.iter().position(|r| r.len() != n) {
        return Err(MetricViolation::NotSquare { row: row + 1 });
    }
    for i in 0..n {
        for j in 0..n {
            if i == j && !d[i][i].is_zero() {
                return Err(MetricViolation::NonzeroDiagonal { i: i + 1 });
            }
            if d[i][j] != d[j][i] {
                return Err(MetricViolation::Asymmetric { i: i + 1, j: j + 1 });
            }
            if i != j && !d[i][j].is_positive() {
                return Err(MetricViolation::NonPositive { i: i + 1, j: j + 1 });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if d[i][k] > &d[i][j] + &d[j][k] {
                    return Err(MetricViolation::Triangle {
                        i: i + 1,
                        j: j + 1,
                        k: k + 1,
                    });
                }
            }
        }
    }
    Ok(())
}

/// A validated finite metric space on `{0, .., n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMetric(Vec<Vec<Rational>>);

impl FiniteMetric {
    pub fn new(d: Vec<Vec<Rational>>) -> Result<Self, MetricError> {
        validate_metric(&d).map_err(MetricError::InvalidMetric)?;
        Ok(FiniteMetric(d))
    }

    /// Parses a matrix of rational strings.
    pub fn from_json(rows: &[Vec<String>]) -> Result<Self, MetricError> {
        let d = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(d)
    }

    pub fn to_json(&self) -> Vec<Vec<String>> {
        self.0
            .iter()
            .map(|r| r.iter().map(format_rational).collect())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn distance(&self, i: usize, j: usize) -> &Rational {
        &self.0[i][j]
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.0
    }
}

/// Shortest weighted path distances, by Floyd-Warshall.
pub fn geodesic_metric(g: &WeightedGraph) -> Result<FiniteMetric, MetricError> {
    let n = g.n;
    let mut d: Vec<Vec<Option<Rational>>> = vec![vec![None; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Some(Rational::zero());
    }
    for e in &g.edges {
        d[e.a][e.b] = Some(e.weight.clone());
        d[e.b][e.a] = Some(e.weight.clone());
    }
    for k in 0..n {
        for i in 0..n {
            let Some(ik) = d[i][k].clone() else { continue };
            for j in 0..n {
                if let Some(kj) = &d[k][j] {
                    let via = &ik + kj;
                    if d[i][j].as_ref().is_none_or(|cur| via < *cur) {
                        d[i][j] = Some(via);
                    }
                }
            }
        }
    }
    let d = d
        .into_iter()
        .map(|row| row.into_iter().collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>();
    FiniteMetric::new(d.ok_or(MetricError::Disconnected)?)
}

/// Label of the generator `(e_from - e_to) / ρ(from, to)`. The generator of
/// the reversed pair is its negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KrLabel {
    pub from: usize,
    pub to: usize,
}

impl KrLabel {
    pub fn new(from: usize, to: usize) -> Self {
        KrLabel { from, to }
    }

    pub fn reversed(self) -> Self {
        KrLabel {
            from: self.to,
            to: self.from,
        }
    }
}

/// Sign and sorted pair: `+(1,2)` is `e_1 - e_2`, `-(1,2)` is `e_2 - e_1`.
impl fmt::Display for KrLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.from < self.to { '+' } else { '-' };
        write!(
            f,
            "{sign}({},{})",
            self.from.min(self.to) + 1,
            self.from.max(self.to) + 1
        )
    }
}

pub type KrGenerators = PointConfiguration<KrLabel>;

pub fn kr_point(n: usize, label: KrLabel, distance: &Rational) -> Vector {
    Vector::unit(n, label.from)
        .sub(&Vector::unit(n, label.to))
        .scale(&distance.recip())
}

/// All `n(n-1)` generators of `KR(ρ)`.
pub fn kr_generators(m: &FiniteMetric) -> Result<KrGenerators, MetricError> {
    let n = m.len();
    if n < 2 {
        return Err(MetricError::TooFewPoints);
    }
    let entries = (0..n)
        .flat_map(|x| {
            (0..n)
                .filter(move |&y| y != x)
                .map(move |y| KrLabel::new(x, y))
        })
        .map(|l| (l, kr_point(n, l, m.distance(l.from, l.to))))
        .collect();
    Ok(PointConfiguration::new(entries)?)
}

/// Edge generators `±v_{i,j}` of a graph, and the edges left out because a
/// shorter path bypasses them.
#[derive(Clone, Debug)]
pub struct GraphGenerators {
    pub generators: KrGenerators,
    pub non_geodesic: Vec<(usize, usize)>,
}

pub fn kr_generators_graph(g: &WeightedGraph) -> Result<GraphGenerators, MetricError> {
    let m = geodesic_metric(g)?;
    if g.n < 2 {
        return Err(MetricError::TooFewPoints);
    }
    let mut entries = Vec::new();
    let mut non_geodesic = Vec::new();
    for e in &g.edges {
        if &e.weight != m.distance(e.a, e.b) {
            non_geodesic.push((e.a, e.b));
            continue;
        }
        for l in [KrLabel::new(e.a, e.b), KrLabel::new(e.b, e.a)] {
            entries.push((l, kr_point(g.n, l, &e.weight)));
        }
    }
    Ok(GraphGenerators {
        generators: PointConfiguration::new(entries)?,
        non_geodesic,
    })
}

/// Facets of the hull as sets of vertex labels; labels of points that are on
/// the boundary but not vertices are left out.
pub fn vertex_facet_family<L: Ord + Clone>(
    pts: &PointConfiguration<L>,
) -> Result<FacetFamily<L>, GeomError> {
    let vertices = pts.restrict(&extreme_points(pts));
    let facets = facet_enumeration(&vertices)?;
    Ok(FacetFamily::new(
        facets.into_iter().map(|f| f.vertex_labels),
    ))
}

fn label_strings<'a>(labels: impl IntoIterator<Item = &'a KrLabel>) -> Vec<String> {
    labels.into_iter().map(KrLabel::to_string).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuspensionReport {
    /// `|X| - 1`, one suspension per edge of the tree on `X`.
    pub suspensions: usize,
    pub base_facets: usize,
    pub facets: usize,
    pub holds: bool,
}

/// Compares the facets of `KR(d_Γ)` with the iterated suspension of
/// `KR(d_{Γ|X^c ∪ {x}})`, where `Γ|X` is a tree meeting the rest of `Γ` only
/// at `x`. Each suspension adds the pair `±v_e` of one tree edge. Vertices are
/// 0-based.
pub fn suspension_structure(
    g: &WeightedGraph,
    x_set: VertexSet,
    x: usize,
) -> Result<SuspensionReport, MetricError> {
    let n = g.n;
    let fail = |why: &str| Err(MetricError::HypothesisFailed(why.to_owned()));
    if n > MAX_GROUND || !x_set.is_subset(VertexSet::full(n)) {
        return fail("X must be a subset of the vertices");
    }
    if !x_set.contains(x) || x_set.len() < 2 {
        return fail("X must contain x and at least one more vertex");
    }
    let base: Vec<usize> = (0..n).filter(|&v| v == x || !x_set.contains(v)).collect();
    let tree_vertices: Vec<usize> = x_set.iter().collect();
    let base_graph = g.induced(&base)?;
    if !base_graph.is_connected() {
        return fail("the restriction to the complement of X plus x is disconnected");
    }
    if !g.induced(&tree_vertices)?.is_tree() {
        return fail("the restriction to X is not a tree");
    }
    let side = |v: usize| v == x || !x_set.contains(v);
    if g.edges
        .iter()
        .any(|e| x_set.contains(e.a) != x_set.contains(e.b) && !(side(e.a) && side(e.b)))
    {
        return fail("an edge joins X \\ {x} to the complement of X");
    }

    let big = vertex_facet_family(&kr_generators_graph(g)?.generators)?;
    let small: FacetFamily<KrLabel> = if base.len() == 1 {
        FacetFamily::new([Vec::<KrLabel>::new()])
    } else {
        vertex_facet_family(&kr_generators_graph(&base_graph)?.generators)?
            .map(|l| KrLabel::new(base[l.from], base[l.to]))
    };
    let pairs: Vec<KrLabel> = g
        .edges
        .iter()
        .filter(|e| x_set.contains(e.a) && x_set.contains(e.b))
        .map(|e| KrLabel::new(e.a, e.b))
        .collect();
    let mut expected = Vec::new();
    for facet in small.iter() {
        for signs in 0..1u32 << pairs.len() {
            let mut f = facet.clone();
            f.extend(pairs.iter().enumerate().map(|(k, &p)| {
                if signs >> k & 1 == 1 {
                    p.reversed()
                } else {
                    p
                }
            }));
            expected.push(f);
        }
    }
    let expected = FacetFamily::new(expected);
    Ok(SuspensionReport {
        suspensions: pairs.len(),
        base_facets: small.len(),
        facets: big.len(),
        holds: big == expected,
    })
}

/// Checks that `KR(d_T)` of a weighted tree is a cross-polytope: its vertices
/// are the `2(n-1)` edge generators and its facets are exactly the `2^(n-1)`
/// choices of one of `±v_e` for every edge.
pub fn tree_cross_polytope_check(t: &WeightedGraph) -> Result<VerificationReport, MetricError> {
    const THEOREM: &str = "tree_cross_polytope";
    if !t.is_tree() {
        return Err(MetricError::NotATree);
    }
    if t.n < 2 {
        return Err(MetricError::TooFewPoints);
    }
    let instance = json!(t.to_json());
    let generators = kr_generators(&geodesic_metric(t)?)?;
    let edge_labels: BTreeSet<KrLabel> = t
        .edges
        .iter()
        .flat_map(|e| [KrLabel::new(e.a, e.b), KrLabel::new(e.b, e.a)])
        .collect();
    let vertices = extreme_points(&generators);
    if vertices != edge_labels {
        let cert = json!({"reason": "vertex set", "vertices": label_strings(&vertices)});
        return Ok(VerificationReport::fail(THEOREM, instance, 0, cert));
    }
    let facets = vertex_facet_family(&generators)?;
    let is_pattern = |f: &Vec<KrLabel>| {
        f.len() == t.edges.len()
            && t.edges
                .iter()
                .all(|e| f.contains(&KrLabel::new(e.a, e.b)) != f.contains(&KrLabel::new(e.b, e.a)))
    };
    let matched = facets.iter().filter(|f| is_pattern(f)).count();
    if let Some(bad) = facets.iter().find(|f| !is_pattern(f)) {
        let cert = json!({"reason": "facet is not a sign pattern", "facet": label_strings(bad)});
        return Ok(VerificationReport::fail(THEOREM, instance, matched, cert));
    }
    if facets.len() != 1 << t.edges.len() {
        let cert = json!({"reason": "facet count", "facets": facets.len()});
        return Ok(VerificationReport::fail(THEOREM, instance, matched, cert));
    }
    Ok(VerificationReport::pass(THEOREM, instance, matched))
}
