use std::fmt;

use fixedbitset::FixedBitSet;

/// A subset of the points `0..n` of a finite space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet(FixedBitSet);

impl PointSet {
    pub fn empty(n: usize) -> Self {
        PointSet(FixedBitSet::with_capacity(n))
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        PointSet(bits)
    }

    pub fn singleton(n: usize, x: usize) -> Self {
        Self::from_indices(n, [x])
    }

    /// Panics if an index is `>= n`.
    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Size of the ambient point set.
    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.0.is_full()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(x)
    }

    pub fn insert(&mut self, x: usize) {
        self.0.insert(x);
    }

    pub fn remove(&mut self, x: usize) {
        self.0.set(x, false);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.minimum()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        let mut s = self.clone();
        s.0.union_with(&other.0);
        s
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        let mut s = self.clone();
        s.0.intersect_with(&other.0);
        s
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        let mut s = self.clone();
        s.0.difference_with(&other.0);
        s
    }

    pub fn complement(&self) -> PointSet {
        let mut s = self.clone();
        s.0.toggle_range(..);
        s
    }

    pub fn union_with(&mut self, other: &PointSet) {
        self.0.union_with(&other.0);
    }

    pub fn intersect_with(&mut self, other: &PointSet) {
        self.0.intersect_with(&other.0);
    }

    /// The image of this set under a point map into a space with `n` points.
    pub fn image(&self, map: &[usize], n: usize) -> PointSet {
        PointSet::from_indices(n, self.iter().map(|x| map[x]))
    }

    /// `{x : map[x] ∈ self}` for a map from a space with `map.len()` points.
    pub fn preimage(&self, map: &[usize]) -> PointSet {
        PointSet::from_indices(
            map.len(),
            map.iter()
                .enumerate()
                .filter(|(_, &y)| self.contains(y))
                .map(|(x, _)| x),
        )
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Universe size first, then lexicographic on increasing member sequences.
impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.universe()
            .cmp(&other.universe())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a = PointSet::from_indices(5, [0, 2]);
        let b = PointSet::from_indices(5, [2, 3]);
        assert_eq!(a.union(&b), PointSet::from_indices(5, [0, 2, 3]));
        assert_eq!(a.intersection(&b), PointSet::singleton(5, 2));
        assert_eq!(a.difference(&b), PointSet::singleton(5, 0));
        assert_eq!(a.complement(), PointSet::from_indices(5, [1, 3, 4]));
        assert!(PointSet::empty(5).is_subset(&a));
        assert!(PointSet::full(5).is_full());
        assert_eq!(PointSet::full(0).len(), 0);
    }

    #[test]
    fn maps() {
        let map = [1, 1, 0];
        let s = PointSet::from_indices(3, [0, 2]);
        assert_eq!(s.image(&map, 2), PointSet::full(2));
        assert_eq!(
            PointSet::singleton(2, 1).preimage(&map),
            PointSet::from_indices(3, [0, 1])
        );
    }

    #[test]
    fn ordering_is_lexicographic() {
        let e = PointSet::empty(3);
        let a = PointSet::from_indices(3, [0, 1]);
        let b = PointSet::singleton(3, 1);
        assert!(e < a && a < b);
    }
}
