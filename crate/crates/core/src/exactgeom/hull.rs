//! Exact convex hulls of small labeled point sets.
//!
//! Facets are found by exhaustive search over `d`-subsets of the extreme
//! points, where `d` is the affine dimension. Each candidate hyperplane is the
//! integer cross product of the homogenized points, so the side tests are
//! integer sign tests. Configurations that are not full dimensional are handled
//! in a coordinate projection that is injective on their affine hull.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::linalg::{bareiss_i128, integer_cross_product, primitive_integer_vector, rref};
use super::lp::find_feasible;
use super::rational::{Rational, Vector};
use super::GeomError;

/// Labeled points of a common dimension. Labels are pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration<L> {
    labels: Vec<L>,
    points: Vec<Vector>,
}

impl<L: Ord + Clone> PointConfiguration<L> {
    pub fn new(entries: Vec<(L, Vector)>) -> Result<Self, GeomError> {
        let Some(dim) = entries.first().map(|(_, p)| p.dim()) else {
            return Err(GeomError::EmptyConfiguration);
        };
        let mut seen = BTreeSet::new();
        let mut labels = Vec::with_capacity(entries.len());
        let mut points = Vec::with_capacity(entries.len());
        for (index, (label, point)) in entries.into_iter().enumerate() {
            if point.dim() != dim {
                return Err(GeomError::DimensionMismatch {
                    expected: dim,
                    found: point.dim(),
                });
            }
            if !seen.insert(label.clone()) {
                return Err(GeomError::DuplicateLabel { index });
            }
            labels.push(label);
            points.push(point);
        }
        Ok(PointConfiguration { labels, points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn iter(&self) -> impl Iterator<Item = (&L, &Vector)> {
        self.labels.iter().zip(&self.points)
    }

    pub fn point(&self, label: &L) -> Option<&Vector> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| &self.points[i])
    }

    /// The sub-configuration of the given labels, in the original order.
    pub fn restrict(&self, keep: &BTreeSet<L>) -> Self {
        let (labels, points) = self
            .iter()
            .filter(|(l, _)| keep.contains(l))
            .map(|(l, p)| (l.clone(), p.clone()))
            .unzip();
        PointConfiguration { labels, points }
    }

    pub fn map_labels<M: Ord + Clone>(
        &self,
        f: impl Fn(&L) -> M,
    ) -> Result<PointConfiguration<M>, GeomError> {
        PointConfiguration::new(self.iter().map(|(l, p)| (f(l), p.clone())).collect())
    }
}

/// The set `{x : <normal, x> = offset}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hyperplane {
    pub normal: Vector,
    #[serde(with = "super::rational::rational_string")]
    pub offset: Rational,
}

impl Hyperplane {
    pub fn evaluate(&self, x: &Vector) -> Rational {
        self.normal.dot(x) - &self.offset
    }
}

/// One facet of a hull. Every configuration point satisfies
/// `<normal, x> <= offset`, with equality exactly on `vertex_labels`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FacetDescription<L> {
    pub vertex_labels: Vec<L>,
    pub hyperplane: Hyperplane,
}

impl<L: Ord + Clone> FacetDescription<L> {
    pub fn contains(&self, label: &L) -> bool {
        self.vertex_labels.binary_search(label).is_ok()
    }

    pub fn satisfied_by(&self, x: &Vector) -> bool {
        !self.hyperplane.evaluate(x).is_positive()
    }

    /// Re-checks the facet against a configuration: equality on the listed
    /// labels and strict inequality everywhere else.
    pub fn verify(&self, pts: &PointConfiguration<L>) -> bool {
        !self.hyperplane.normal.is_zero()
            && pts.iter().all(|(label, p)| {
                let v = self.hyperplane.evaluate(p);
                if self.contains(label) {
                    v.is_zero()
                } else {
                    v.is_negative()
                }
            })
    }
}

/// A point lies in a full-dimensional polytope iff it satisfies every facet
/// inequality. The point must lie in the affine hull of the configuration.
pub fn polytope_contains<L: Ord + Clone>(facets: &[FacetDescription<L>], x: &Vector) -> bool {
    facets.iter().all(|f| f.satisfied_by(x))
}

/// Coordinates on which the projection restricted to the affine hull of the
/// points is injective.
struct AffineFrame {
    coords: Vec<usize>,
}

impl AffineFrame {
    fn of(points: &[Vector]) -> Self {
        let base = &points[0];
        let mut rows: Vec<Vec<Rational>> =
            points[1..].iter().map(|p| p.sub(base).to_vec()).collect();
        let coords = if rows.is_empty() {
            Vec::new()
        } else {
            rref(&mut rows)
        };
        AffineFrame { coords }
    }

    fn dim(&self) -> usize {
        self.coords.len()
    }

    fn project(&self, p: &Vector) -> Vec<Rational> {
        self.coords.iter().map(|&c| p[c].clone()).collect()
    }
}

pub fn affine_dimension<L: Ord + Clone>(pts: &PointConfiguration<L>) -> usize {
    AffineFrame::of(pts.points()).dim()
}

/// Labels of the points that are vertices of the hull.
///
/// A point is a vertex iff its location is not a convex combination of the
/// other distinct locations; labels sharing a vertex location are all reported.
pub fn extreme_points<L: Ord + Clone>(pts: &PointConfiguration<L>) -> BTreeSet<L> {
    let frame = AffineFrame::of(pts.points());
    let (reps, class_of) = distinct_locations(pts.points());
    let extreme_reps = extreme_representatives(pts.points(), &frame, &reps);
    pts.labels()
        .iter()
        .enumerate()
        .filter(|&(i, _)| extreme_reps.contains(&reps[class_of[i]]))
        .map(|(_, l)| l.clone())
        .collect()
}

/// First index of each distinct location, and the class of every point.
fn distinct_locations(points: &[Vector]) -> (Vec<usize>, Vec<usize>) {
    let mut first: HashMap<&Vector, usize> = HashMap::new();
    let mut reps = Vec::new();
    let mut class_of = Vec::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        let class = *first.entry(p).or_insert_with(|| {
            reps.push(i);
            reps.len() - 1
        });
        class_of.push(class);
    }
    (reps, class_of)
}

fn extreme_representatives(
    points: &[Vector],
    frame: &AffineFrame,
    reps: &[usize],
) -> BTreeSet<usize> {
    let projected: Vec<Vec<Rational>> = reps.iter().map(|&i| frame.project(&points[i])).collect();
    let d = frame.dim();
    let mut extreme = BTreeSet::new();
    for (k, &rep) in reps.iter().enumerate() {
        // lambda >= 0 over the other locations, sum lambda = 1, sum lambda q = q_k.
        let others: Vec<usize> = (0..reps.len()).filter(|&j| j != k).collect();
        let mut a: Vec<Vec<Rational>> = (0..d)
            .map(|c| others.iter().map(|&j| projected[j][c].clone()).collect())
            .collect();
        a.push(vec![Rational::one(); others.len()]);
        let mut b: Vec<Rational> = projected[k].clone();
        b.push(Rational::one());
        if find_feasible(&a, &b).is_none() {
            extreme.insert(rep);
        }
    }
    extreme
}

/// All facets of the convex hull, ordered lexicographically by their sorted
/// vertex label lists.
pub fn facet_enumeration<L: Ord + Clone>(
    pts: &PointConfiguration<L>,
) -> Result<Vec<FacetDescription<L>>, GeomError> {
    let points = pts.points();
    let frame = AffineFrame::of(points);
    let d = frame.dim();
    if d == 0 {
        return Err(GeomError::DegenerateInput);
    }
    let homogeneous: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| {
            let mut h = frame.project(p);
            h.push(Rational::one());
            primitive_integer_vector(&h)
        })
        .collect();
    let small: Option<Vec<Vec<i128>>> = homogeneous
        .iter()
        .map(|h| h.iter().map(|x| x.to_i64().map(i128::from)).collect())
        .collect();
    let (reps, _) = distinct_locations(points);
    let candidates: Vec<usize> = extreme_representatives(points, &frame, &reps)
        .into_iter()
        .collect();

    let mut found: BTreeMap<Vec<usize>, Vec<BigInt>> = BTreeMap::new();
    for subset in Combinations::new(candidates.len(), d) {
        let chosen: Vec<usize> = subset.iter().map(|&k| candidates[k]).collect();
        let Some((normal, on)) = supporting_hyperplane(&chosen, &homogeneous, small.as_deref())
        else {
            continue;
        };
        found.entry(on).or_insert(normal);
    }

    let mut facets: Vec<FacetDescription<L>> = found
        .into_iter()
        .map(|(on, w)| {
            let mut labels: Vec<L> = on.iter().map(|&i| pts.labels()[i].clone()).collect();
            labels.sort();
            let mut normal = Vector::zeros(pts.ambient_dim()).into_inner();
            for (k, &c) in frame.coords.iter().enumerate() {
                normal[c] = Rational::from_integer(w[k].clone());
            }
            FacetDescription {
                vertex_labels: labels,
                hyperplane: Hyperplane {
                    normal: Vector::new(normal),
                    offset: Rational::from_integer(-w[d].clone()),
                },
            }
        })
        .collect();
    facets.sort_by(|a, b| a.vertex_labels.cmp(&b.vertex_labels));
    Ok(facets)
}

/// The hyperplane through the chosen homogenized points if it supports the
/// whole configuration, oriented so every point evaluates to `<= 0`, together
/// with the indices of the points on it.
fn supporting_hyperplane(
    chosen: &[usize],
    homogeneous: &[Vec<BigInt>],
    small: Option<&[Vec<i128>]>,
) -> Option<(Vec<BigInt>, Vec<usize>)> {
    if let Some(small) = small {
        let rows: Vec<&[i128]> = chosen.iter().map(|&i| small[i].as_slice()).collect();
        if let Some(w) = cross_product_i128(&rows) {
            if w.iter().all(|&x| x == 0) {
                return None;
            }
            if let Some(signs) = signs_i128(&w, small) {
                let (flip, on) = classify(&signs)?;
                let w = w
                    .into_iter()
                    .map(|x| BigInt::from(if flip { -x } else { x }))
                    .collect();
                return Some((w, on));
            }
        }
    }
    let rows: Vec<&[BigInt]> = chosen.iter().map(|&i| homogeneous[i].as_slice()).collect();
    let w = integer_cross_product(&rows);
    if w.iter().all(Zero::is_zero) {
        return None;
    }
    let signs: Vec<i8> = homogeneous
        .iter()
        .map(|h| {
            let s: BigInt = h.iter().zip(&w).map(|(a, b)| a * b).sum();
            sign_of(&s)
        })
        .collect();
    let (flip, on) = classify(&signs)?;
    let w = if flip {
        w.into_iter().map(|x| -x).collect()
    } else {
        w
    };
    Some((w, on))
}

/// `None` if points lie strictly on both sides; otherwise whether the normal
/// must be flipped and the indices on the hyperplane.
fn classify(signs: &[i8]) -> Option<(bool, Vec<usize>)> {
    let pos = signs.iter().any(|&s| s > 0);
    let neg = signs.iter().any(|&s| s < 0);
    if pos && neg {
        return None;
    }
    let on = signs
        .iter()
        .enumerate()
        .filter(|&(_, &s)| s == 0)
        .map(|(i, _)| i)
        .collect();
    Some((pos, on))
}

fn sign_of(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn cross_product_i128(rows: &[&[i128]]) -> Option<Vec<i128>> {
    let d = rows.len();
    let mut minor = vec![vec![0i128; d]; d];
    let mut w = Vec::with_capacity(d + 1);
    for skip in 0..=d {
        for (r, row) in rows.iter().enumerate() {
            let mut c = 0;
            for (j, &x) in row.iter().enumerate() {
                if j != skip {
                    minor[r][c] = x;
                    c += 1;
                }
            }
        }
        let det = bareiss_i128(&mut minor)?;
        w.push(if skip % 2 == 0 {
            det
        } else {
            det.checked_neg()?
        });
    }
    Some(w)
}

fn signs_i128(w: &[i128], rows: &[Vec<i128>]) -> Option<Vec<i8>> {
    rows.iter()
        .map(|h| {
            let mut acc = 0i128;
            for (a, b) in h.iter().zip(w) {
                acc = acc.checked_add(a.checked_mul(*b)?)?;
            }
            Some(acc.signum() as i8)
        })
        .collect()
}

/// Lexicographic `k`-subsets of `0..n`.
struct Combinations {
    n: usize,
    current: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            current: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let k = self.current.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] < self.n - k + i {
                self.current[i] += 1;
                for j in i + 1..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rational::int;

    fn config(points: &[&[i64]]) -> PointConfiguration<usize> {
        PointConfiguration::new(
            points
                .iter()
                .enumerate()
                .map(|(i, p)| (i, Vector::from_ints(p)))
                .collect(),
        )
        .unwrap()
    }

    /// Independent brute force: every pair of points spanning a line that
    /// supports a planar configuration, by orientation tests in the plane.
    fn planar_edges_oracle(points: &[&[i64]]) -> BTreeSet<Vec<usize>> {
        let orient = |a: &[i64], b: &[i64], c: &[i64]| {
            (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        };
        let mut out = BTreeSet::new();
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                let s: Vec<i64> = points
                    .iter()
                    .map(|p| orient(points[i], points[j], p).signum())
                    .collect();
                if s.iter().any(|&x| x > 0) && s.iter().any(|&x| x < 0) {
                    continue;
                }
                if points[i] == points[j] {
                    continue;
                }
                out.insert((0..points.len()).filter(|&k| s[k] == 0).collect());
            }
        }
        out
    }

    #[test]
    fn affine_dimension_examples() {
        assert_eq!(affine_dimension(&config(&[&[0, 0]])), 0);
        assert_eq!(affine_dimension(&config(&[&[0, 0], &[1, 0], &[0, 1]])), 2);
        let hexagon_h0 = config(&[
            &[-3, 3, 0],
            &[0, -3, 3],
            &[3, 0, -3],
            &[3, -3, 0],
            &[0, 3, -3],
            &[-3, 0, 3],
        ]);
        assert_eq!(affine_dimension(&hexagon_h0), 2);
    }

    #[test]
    fn square_has_four_edges() {
        let facets = facet_enumeration(&config(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]])).unwrap();
        assert_eq!(facets.len(), 4);
        assert!(facets.iter().all(|f| f.vertex_labels.len() == 2));
    }

    #[test]
    fn hexagon_matches_planar_oracle() {
        let pts: [&[i64]; 6] = [&[1, 0], &[-1, 0], &[0, 1], &[0, -1], &[-1, -1], &[1, 1]];
        let facets = facet_enumeration(&config(&pts)).unwrap();
        let got: BTreeSet<Vec<usize>> = facets.iter().map(|f| f.vertex_labels.clone()).collect();
        assert_eq!(got, planar_edges_oracle(&pts));
        assert_eq!(facets.len(), 6);
    }

    #[test]
    fn hexagon_in_a_plane_of_r3() {
        // +-3(e_{i+1} - e_i): the same oracle run in the coordinates (x_1, x_2),
        // which are injective on H_0.
        let pts: [&[i64]; 6] = [
            &[-3, 3, 0],
            &[0, -3, 3],
            &[3, 0, -3],
            &[3, -3, 0],
            &[0, 3, -3],
            &[-3, 0, 3],
        ];
        let cfg = config(&pts);
        let facets = facet_enumeration(&cfg).unwrap();
        let planar: Vec<[i64; 2]> = pts.iter().map(|p| [p[0], p[1]]).collect();
        let planar_refs: Vec<&[i64]> = planar.iter().map(|p| p.as_slice()).collect();
        let got: BTreeSet<Vec<usize>> = facets.iter().map(|f| f.vertex_labels.clone()).collect();
        assert_eq!(got, planar_edges_oracle(&planar_refs));
        assert_eq!(facets.len(), 6);
        assert!(facets.iter().all(|f| f.verify(&cfg)));
    }

    #[test]
    fn boundary_points_are_listed_but_not_extreme() {
        let cfg = config(&[&[0, 0], &[1, 0], &[2, 0]]);
        assert_eq!(extreme_points(&cfg), BTreeSet::from([0, 2]));
        let facets = facet_enumeration(&cfg).unwrap();
        assert_eq!(facets.len(), 2);
        assert_eq!(facets[0].vertex_labels, vec![0]);
        assert_eq!(facets[1].vertex_labels, vec![2]);

        let square = config(&[&[0, 0], &[2, 0], &[2, 2], &[0, 2], &[1, 0]]);
        assert_eq!(extreme_points(&square), BTreeSet::from([0, 1, 2, 3]));
        let facets = facet_enumeration(&square).unwrap();
        assert!(facets.iter().any(|f| f.vertex_labels == vec![0, 1, 4]));
    }

    #[test]
    fn affinely_independent_points_are_all_extreme() {
        let cfg = config(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(extreme_points(&cfg).len(), 4);
        assert_eq!(facet_enumeration(&cfg).unwrap().len(), 4);
    }

    #[test]
    fn duplicate_locations() {
        let cfg = config(&[&[0, 0], &[1, 0], &[0, 1], &[1, 0]]);
        assert_eq!(extreme_points(&cfg), BTreeSet::from([0, 1, 2, 3]));
        let facets = facet_enumeration(&cfg).unwrap();
        assert_eq!(facets.len(), 3);
        assert!(facets.iter().all(|f| f.verify(&cfg)));
    }

    #[test]
    fn coincident_points_are_degenerate() {
        let cfg = config(&[&[1, 1], &[1, 1]]);
        assert_eq!(facet_enumeration(&cfg), Err(GeomError::DegenerateInput));
    }

    #[test]
    fn cube_facets() {
        let mut pts = Vec::new();
        for x in [0, 1] {
            for y in [0, 1] {
                for z in [0, 1] {
                    pts.push(vec![x, y, z]);
                }
            }
        }
        let refs: Vec<&[i64]> = pts.iter().map(Vec::as_slice).collect();
        let cfg = config(&refs);
        let facets = facet_enumeration(&cfg).unwrap();
        assert_eq!(facets.len(), 6);
        assert!(facets
            .iter()
            .all(|f| f.vertex_labels.len() == 4 && f.verify(&cfg)));
        assert!(polytope_contains(
            &facets,
            &Vector::new(vec![int(1), int(1), int(1)])
        ));
        assert!(!polytope_contains(
            &facets,
            &Vector::new(vec![int(2), int(1), int(1)])
        ));
    }

    #[test]
    fn labels_must_be_distinct() {
        let r = PointConfiguration::new(vec![
            (1, Vector::from_ints(&[0])),
            (1, Vector::from_ints(&[1])),
        ]);
        assert_eq!(r, Err(GeomError::DuplicateLabel { index: 1 }));
    }

    #[test]
    fn combinations_enumerate_binomially() {
        assert_eq!(Combinations::new(6, 3).count(), 20);
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }
}
