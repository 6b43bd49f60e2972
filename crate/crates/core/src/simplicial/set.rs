use std::fmt;

/// Largest supported ground set.
pub const MAX_GROUND: usize = 16;

/// A subset of the 0-based ground set `{0, .., n-1}` as a bitmask.
///
/// Ordered by bitmask value (colexicographic order), which is the order in
/// which subsets are enumerated everywhere in this crate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u32) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// The whole ground set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_GROUND);
        VertexSet(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Self {
        VertexSet(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(self, i: usize) -> Self {
        VertexSet(self.0 | 1 << i)
    }

    pub fn remove(self, i: usize) -> Self {
        VertexSet(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    /// Complement inside `{0, .., n-1}`.
    pub fn complement(self, n: usize) -> Self {
        VertexSet(!self.0 & Self::full(n).0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// Every subset of `{0, .., n-1}` in bitmask order.
    pub fn all(n: usize) -> impl Iterator<Item = VertexSet> {
        (0..1u64 << n).map(|b| VertexSet(b as u32))
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur | !full).wrapping_add(1) & full)
            };
            Some(VertexSet(cur))
        })
    }

    /// 1-based element list, the external representation.
    pub fn to_labels(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    pub fn from_labels(labels: &[usize]) -> Option<Self> {
        labels.iter().try_fold(VertexSet::EMPTY, |acc, &l| {
            (1..=MAX_GROUND).contains(&l).then(|| acc.insert(l - 1))
        })
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(VertexSet::EMPTY, VertexSet::insert)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}
