//! Seeded random instances. Every draw is exact: integers over a fixed
//! denominator, normalized afterwards where needed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactgeom::{Rational, Vector};
use crate::metricgraph::WeightedGraph;
use crate::simplicial::{SimplicialComplex, VertexSet};
use crate::threshold::{is_generic, Permutation, Quota, WeightVector};

pub const DEFAULT_DENOMINATOR: i64 = 1000;

pub struct Sampler {
    rng: ChaCha8Rng,
    denominator: i64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            denominator: DEFAULT_DENOMINATOR,
        }
    }

    pub fn with_denominator(seed: u64, denominator: i64) -> Self {
        assert!(denominator > 0);
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            denominator,
        }
    }

    fn fraction(&mut self) -> Rational {
        Rational::new(
            self.rng.gen_range(1..=self.denominator).into(),
            self.denominator.into(),
        )
    }

    /// Entries `k / D` with `1 <= k <= D`, normalized to sum 1.
    pub fn weights(&mut self, n: usize) -> WeightVector {
        let raw = (0..n).map(|_| self.fraction()).collect();
        WeightVector::new(raw)
            .expect("positive entries")
            .normalize()
    }

    /// Normalized weights with every `l_i < 1/2`, generic at each quota.
    pub fn generic_short_weights(&mut self, n: usize, quotas: &[Quota]) -> WeightVector {
        let half = Quota::half();
        loop {
            let l = self.weights(n);
            let short = l.weights().iter().all(|w| w < half.value());
            if short
                && quotas
                    .iter()
                    .all(|q| is_generic(&l, q).expect("normalized").is_generic())
            {
                return l;
            }
        }
    }

    /// A proper complex generated by a few random proper subsets; may be
    /// `{∅}` and may miss vertices.
    pub fn proper_complex(&mut self, n: usize) -> SimplicialComplex {
        let full = VertexSet::full(n);
        let count = self.rng.gen_range(0..=2 * n);
        let generators: Vec<VertexSet> = (0..count)
            .map(|_| {
                (0..n)
                    .filter(|_| self.rng.gen_bool(0.5))
                    .collect::<VertexSet>()
            })
            .filter(|&s| s != full)
            .chain(std::iter::once(VertexSet::EMPTY))
            .collect();
        SimplicialComplex::new(n, generators).expect("subsets of the ground set")
    }

    /// A uniformly shuffled random recursive tree with weights `k / D`.
    pub fn tree(&mut self, n: usize) -> WeightedGraph {
        let mut names: Vec<usize> = (0..n).collect();
        names.shuffle(&mut self.rng);
        let edges: Vec<(usize, usize, Rational)> = (1..n)
            .map(|i| {
                let parent = self.rng.gen_range(0..i);
                (names[i], names[parent], self.fraction())
            })
            .collect();
        WeightedGraph::new(n, edges).expect("a tree on distinct vertices")
    }

    pub fn permutation(&mut self, n: usize) -> Permutation {
        let mut images: Vec<usize> = (0..n).collect();
        images.shuffle(&mut self.rng);
        Permutation::new(images).expect("a shuffle is a permutation")
    }

    /// A nonzero point of `V_0 = {x : Σ x_i = 0}` with entries of bounded
    /// height.
    pub fn v0_point(&mut self, n: usize) -> Vector {
        loop {
            let raw: Vec<i64> = (0..n)
                .map(|_| self.rng.gen_range(-self.denominator..=self.denominator))
                .collect();
            let mean = Rational::new(raw.iter().sum::<i64>().into(), (n as i64).into());
            let p: Vector = raw
                .iter()
                .map(|&x| Rational::from_integer(x.into()) - &mean)
                .collect();
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// A fraction in `[lo/D, hi/D]`.
    pub fn fraction_between(&mut self, lo: i64, hi: i64) -> Rational {
        Rational::new(self.rng.gen_range(lo..=hi).into(), self.denominator.into())
    }
}
