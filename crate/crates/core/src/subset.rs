use std::cmp::Ordering;
use std::fmt;

/// A subset of a set of relative simple roots, indexed `0..64`.
/// Ordered by bit pattern; see [`Subset::canonical_cmp`] for display order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(u64);

impl Subset {
    pub const MAX_SIZE: usize = 64;

    pub const fn empty() -> Self {
        Subset(0)
    }

    /// The whole set `{0, .., size - 1}`.
    pub fn full(size: usize) -> Self {
        assert!(size <= Self::MAX_SIZE);
        if size == 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << size) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        Subset(indices.into_iter().fold(0, |acc, i| {
            assert!(i < Self::MAX_SIZE);
            acc | (1 << i)
        }))
    }

    pub const fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < Self::MAX_SIZE && self.0 & (1 << i) != 0
    }

    pub fn insert(self, i: usize) -> Self {
        Subset(self.0 | (1 << i))
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    pub fn symmetric_difference(self, other: Subset) -> Self {
        Subset(self.0 ^ other.0)
    }

    /// Complement inside `{0, .., size - 1}`.
    pub fn complement(self, size: usize) -> Self {
        Subset::full(size).difference(self)
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..Self::MAX_SIZE).filter(move |&i| bits & (1 << i) != 0)
    }

    /// All subsets of `{0, .., size - 1}` in increasing bit order.
    pub fn all(size: usize) -> impl Iterator<Item = Subset> {
        assert!(size < Self::MAX_SIZE);
        (0..1u64 << size).map(Subset)
    }

    /// All supersets of `self` inside `{0, .., size - 1}`.
    pub fn supersets(self, size: usize) -> impl Iterator<Item = Subset> {
        let free = self.complement(size);
        subsets_of(free).map(move |s| s.union(self))
    }

    /// Canonical order: by size, then lexicographically on sorted indices.
    pub fn canonical_cmp(&self, other: &Subset) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.indices().cmp(other.indices()))
    }
}

/// Enumerates the subsets of `set` (Gosper-free submask walk, ascending).
pub fn subsets_of(set: Subset) -> impl Iterator<Item = Subset> {
    let mask = set.0;
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            Some(((cur | !mask).wrapping_add(1)) & mask)
        };
        Some(Subset(cur))
    })
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "a{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn submask_walk_is_complete() {
        let s = Subset::from_indices([0, 2, 5]);
        let subs: Vec<_> = subsets_of(s).collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|x| x.is_subset(s)));
        assert_eq!(Subset::empty().supersets(3).count(), 8);
        assert_eq!(Subset::from_indices([1]).supersets(3).count(), 4);
    }

    #[test]
    fn canonical_order() {
        let mut v = vec![
            Subset::from_indices([1, 2]),
            Subset::from_indices([0]),
            Subset::empty(),
            Subset::from_indices([0, 2]),
        ];
        v.sort_by(Subset::canonical_cmp);
        assert_eq!(
            v,
            vec![
                Subset::empty(),
                Subset::from_indices([0]),
                Subset::from_indices([0, 2]),
                Subset::from_indices([1, 2])
            ]
        );
        assert_eq!(Subset::from_indices([0, 2]).to_string(), "{a1,a3}");
    }
}
